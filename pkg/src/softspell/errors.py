"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: usage problems exit 1,
data problems (anything derived from DataError) exit 2, and numeric
divergence during training exits 3.
"""


class SoftspellError(Exception):
    """Base class for all softspell errors."""


class DataError(SoftspellError):
    """Invalid input data (bad encoding, reserved symbols, mismatched lengths...)."""


class InvalidInputError(DataError):
    """Raw input text contains a reserved intermediate code symbol."""


class EncodingError(DataError):
    """A corpus file is not valid UTF-8; carries the offending line number."""

    def __init__(self, path, line_no, cause):
        super().__init__(f"{path}: line {line_no}: not valid UTF-8 ({cause})")
        self.path = path
        self.line_no = line_no


class LengthMismatchError(DataError):
    """Paired sequences do not have equal lengths (one-to-one contract)."""


class EmptyCorpusError(DataError):
    """An operation that needs data was given an empty corpus."""


class SpecTooLargeError(DataError):
    """A split specification asks for more sequences/stories than exist."""


class VocabularyError(DataError):
    """Symbol or index outside the vocabulary where that is not allowed."""


class ShapeMismatchError(SoftspellError):
    """Array arguments have inconsistent shapes."""


class DivergenceError(SoftspellError):
    """Training produced a non-finite loss or gradient."""


class ModelFormatError(SoftspellError):
    """Base class for model file problems; loading never yields a partial model."""


class BadMagicError(ModelFormatError):
    """File does not start with the expected magic bytes."""


class VersionMismatchError(ModelFormatError):
    """File format version is not supported."""


class ChecksumMismatchError(ModelFormatError):
    """Stored checksum does not match the file contents."""
