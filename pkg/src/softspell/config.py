"""Run configuration: defaults, flat key=value config files, and CLI
override resolution.

Precedence is defaults < config file < explicit command-line flags.
The fully resolved mapping is echoed into every report and into model
provenance so results stay attributable to an exact configuration.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .errors import DataError


@dataclass
class RunConfig:
    approach: str = "inject"
    rate: float = 0.4
    layers: int = 2
    hidden: int = 256
    dropout: float = 0.1
    recurrent_dropout: float = 0.3
    peepholes: bool = True
    batch: int = 64
    max_len: int = 400
    max_epochs: int = 50
    patience: int = 5
    seed: int = 0
    lr: float = 1e-3
    rho: float = 0.9
    epsilon: float = 1e-7
    strip_diacritics: bool = True
    resample_errors: bool = True
    valid_fraction: float = 0.1

    def to_dict(self) -> dict:
        return asdict(self)


_BOOL_VALUES = {
    "true": True, "on": True, "1": True, "yes": True,
    "false": False, "off": False, "0": False, "no": False,
}


def _parse_value(name: str, raw: str, kind: type):
    raw = raw.strip()
    try:
        if kind is bool:
            if raw.lower() not in _BOOL_VALUES:
                raise ValueError(raw)
            return _BOOL_VALUES[raw.lower()]
        return kind(raw)
    except ValueError as exc:
        raise DataError(f"config key {name}: cannot parse {raw!r} as {kind.__name__}") from exc


def load_config_file(path) -> dict:
    """Parse `key=value` lines; '#' starts a comment, blank lines are
    skipped. Keys must be RunConfig fields."""
    by_name = {f.name: f.type for f in fields(RunConfig)}
    kinds = {"str": str, "float": float, "int": int, "bool": bool}
    values: dict = {}
    text = Path(path).read_text(encoding="utf-8")
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DataError(f"{path}: line {line_no}: expected key=value")
        key, _, raw = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in by_name:
            raise DataError(f"{path}: line {line_no}: unknown config key {key!r}")
        kind = kinds[str(by_name[key])] if isinstance(by_name[key], str) else by_name[key]
        values[key] = _parse_value(key, raw, kind)
    return values


def resolve_config(file_path=None, **cli_overrides) -> RunConfig:
    """Merge defaults, optional config file, and explicit CLI values
    (None means "not given")."""
    merged = RunConfig().to_dict()
    if file_path is not None:
        merged.update(load_config_file(file_path))
    merged.update({k: v for k, v in cli_overrides.items() if v is not None})
    return RunConfig(**merged)
