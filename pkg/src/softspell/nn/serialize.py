"""Model file format.

Layout, all integers little-endian:

    bytes 0-3    magic "ASSC"
    bytes 4-7    format version (u32)
    bytes 8-15   header length in bytes (u64)
    ...          UTF-8 JSON header: model spec, vocabulary symbols,
                 training provenance, and the weight manifest
                 (name + shape, in file order)
    ...          raw float32 weight blobs, C order, in manifest order
    last 8       BLAKE2b-64 checksum of every preceding byte

Loading verifies magic, version and checksum before touching the
payload, so a truncated or corrupted file never yields a partial model.
Weights are stored as float32; float32 -> float64 -> float32 is exact,
so save(load(save(m))) is byte-identical regardless of runtime dtype.
"""

from __future__ import annotations

import hashlib
import json
import os
import struct

import numpy as np

from ..errors import (
    BadMagicError,
    ChecksumMismatchError,
    ModelFormatError,
    VersionMismatchError,
)
from ..vocab import Vocabulary
from .lstm import LstmParams
from .model import BiLayer, BiLstmTranscriber, DenseParams, ModelSpec

MAGIC = b"ASSC"
FORMAT_VERSION = 1


def _checksum(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=8).digest()


def save_model(model: BiLstmTranscriber, path) -> None:
    items = model.param_items()
    header = {
        "model": model.spec.to_dict(),
        "vocabulary": model.vocab.symbols(),
        "provenance": model.provenance,
        "weights": [
            {"name": name, "shape": list(arr.shape)} for name, arr in items
        ],
    }
    header_bytes = json.dumps(header, ensure_ascii=False, sort_keys=True).encode(
        "utf-8"
    )
    body = bytearray()
    body += MAGIC
    body += struct.pack("<I", FORMAT_VERSION)
    body += struct.pack("<Q", len(header_bytes))
    body += header_bytes
    for _, arr in items:
        body += np.ascontiguousarray(arr, dtype="<f4").tobytes()
    body += _checksum(bytes(body))
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(bytes(body))
    os.replace(tmp, path)


def load_model(path, dtype=np.float64) -> BiLstmTranscriber:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 24 or data[:4] != MAGIC:
        raise BadMagicError(f"{path} is not a model file")
    (version,) = struct.unpack_from("<I", data, 4)
    if version != FORMAT_VERSION:
        raise VersionMismatchError(
            f"{path}: format version {version}, expected {FORMAT_VERSION}"
        )
    if _checksum(data[:-8]) != data[-8:]:
        raise ChecksumMismatchError(f"{path}: checksum mismatch (truncated or corrupt)")
    (header_len,) = struct.unpack_from("<Q", data, 8)
    header_end = 16 + header_len
    try:
        header = json.loads(data[16:header_end].decode("utf-8"))
        spec = ModelSpec(**header["model"])
        vocab = Vocabulary(header["vocabulary"])
        manifest = header["weights"]
    except (ValueError, KeyError, TypeError) as exc:
        raise ModelFormatError(f"{path}: bad header ({exc})") from exc

    expected = sum(int(np.prod(w["shape"])) for w in manifest) * 4
    blob = data[header_end:-8]
    if len(blob) != expected:
        raise ModelFormatError(
            f"{path}: weight payload is {len(blob)} bytes, manifest needs {expected}"
        )

    arrays: dict[str, np.ndarray] = {}
    offset = 0
    for w in manifest:
        shape = tuple(w["shape"])
        n = int(np.prod(shape))
        arr = np.frombuffer(blob, dtype="<f4", count=n, offset=offset)
        arrays[w["name"]] = arr.reshape(shape).astype(dtype)
        offset += n * 4

    try:
        layers = []
        for li in range(spec.layers):
            dirs = {}
            for direction in ("fwd", "bwd"):
                prefix = f"layer{li}.{direction}."
                dirs[direction] = LstmParams(
                    W=arrays[prefix + "W"],
                    U=arrays[prefix + "U"],
                    b=arrays[prefix + "b"],
                    v_i=arrays.get(prefix + "v_i"),
                    v_f=arrays.get(prefix + "v_f"),
                    v_o=arrays.get(prefix + "v_o"),
                )
            layers.append(BiLayer(dirs["fwd"], dirs["bwd"]))
        dense = DenseParams(arrays["dense.W"], arrays["dense.b"])
        model = BiLstmTranscriber(spec, vocab, layers, dense, header["provenance"])
    except KeyError as exc:
        raise ModelFormatError(f"{path}: missing weight tensor {exc}") from exc
    _validate_shapes(model)
    return model


def _validate_shapes(model: BiLstmTranscriber) -> None:
    spec = model.spec
    n_in = spec.vocab_size
    for li, layer in enumerate(model.layers):
        for p in (layer.fwd, layer.bwd):
            if p.W.shape != (4 * spec.hidden, n_in) or p.U.shape != (
                4 * spec.hidden,
                spec.hidden,
            ):
                raise ModelFormatError(
                    f"layer {li}: weight shapes inconsistent with the spec"
                )
            if spec.peepholes != p.peepholes:
                raise ModelFormatError("peephole flag inconsistent with weights")
        n_in = 2 * spec.hidden
    if model.dense.W.shape != (spec.vocab_size, n_in):
        raise ModelFormatError("output layer shape inconsistent with the spec")
