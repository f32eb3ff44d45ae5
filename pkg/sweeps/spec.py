"""Sweep configuration: parsing, validation and canonical serialization.

Config text is ``key = value`` lines (``#`` comments allowed), read with
python-dotenv. Values from the text override the environment layer from
``settings``; explicit overrides (CLI flags) win over both.
"""

import io
import logging
from typing import Callable, Literal, Mapping, Optional, Union

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, ValidationInfo, field_validator, model_validator

from errors import ConfigurationError
from settings import LabSettings, load_settings

logger = logging.getLogger(__name__)

SweepKind = Literal["overlap-dim", "overlap-time", "keyrate"]
SampleMode = Literal["deterministic", "montecarlo"]
OutputFormat = Literal["csv", "json"]
TimeMode = Union[Literal["equal-p"], int]

DEFAULT_P_VALUES: dict[str, list[int]] = {
    # A 1-position cycle is degenerate, so dimension sweeps start at P = 2.
    "overlap-dim": list(range(2, 102)),
    "overlap-time": [101],
    "keyrate": [3, 5, 11, 21, 51],
}
DEFAULT_T_VALUES = list(range(1, 101))
DEFAULT_NOISE = [0.0, 0.15, 0.20]


# ─── Value parsers ────────────────────────────────────────────────

def _parse_int(text: str) -> int:
    value = float(text)
    if not value.is_integer():
        raise ValueError(f"expected an integer, got {text!r}")
    return int(value)


def parse_int_list(text: str) -> list[int]:
    """'2,3,5', '2..101' (inclusive) or '1..100:9' (stepped), comma-combinable."""
    values: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise ValueError(f"empty item in list {text!r}")
        if ".." in part:
            bounds, _, step = part.partition(":")
            start, stop = (p.strip() for p in bounds.split("..", 1))
            step_value = _parse_int(step) if step else 1
            if step_value < 1:
                raise ValueError(f"range step must be >= 1 in {part!r}")
            values.extend(range(_parse_int(start), _parse_int(stop) + 1, step_value))
        else:
            values.append(_parse_int(part))
    return values


def parse_float_list(text: str) -> list[float]:
    items = [p.strip() for p in text.split(",")]
    if any(not p for p in items):
        raise ValueError(f"empty item in list {text!r}")
    return [float(p) for p in items]


def parse_time(text: str) -> TimeMode:
    text = text.strip().lower()
    if text == "equal-p":
        return "equal-p"
    return _parse_int(text)


def parse_n_range(text: str) -> tuple[int, int, int]:
    """'start:stop:factor' -> (start, stop, factor)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected start:stop:factor, got {text!r}")
    start, stop, factor = (_parse_int(p) for p in parts)
    return start, stop, factor


# ─── Model ────────────────────────────────────────────────────────

class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: SweepKind
    p_values: list[int] = Field(default_factory=list)
    time: TimeMode = "equal-p"
    t_values: list[int] = Field(default_factory=list)
    noise: list[float] = Field(default_factory=lambda: list(DEFAULT_NOISE))
    n_start: int = 1000
    n_stop: int = 10_000_000
    n_factor: int = 10
    sample_frac: float = Field(default=0.1, gt=0.0, lt=1.0)
    epsilon: float = Field(default=1e-7, gt=0.0, lt=1.0)
    mode: SampleMode = "deterministic"
    seed: int = 0
    format: OutputFormat = "csv"
    out: Optional[str] = None
    c0: int = Field(default=0, ge=0, le=1)
    x0: int = Field(default=0, ge=0)

    @model_validator(mode="before")
    @classmethod
    def _fill_kind_defaults(cls, data):
        if isinstance(data, dict):
            data = dict(data)
            kind = data.get("kind")
            if not data.get("p_values") and kind in DEFAULT_P_VALUES:
                data["p_values"] = list(DEFAULT_P_VALUES[kind])
            if not data.get("t_values") and kind == "overlap-time":
                data["t_values"] = list(DEFAULT_T_VALUES)
        return data

    @field_validator("p_values")
    @classmethod
    def _check_p(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError("P list must not be empty")
        bad = [p for p in v if p < 2]
        if bad:
            raise ValueError(f"P must be >= 2, got {bad}")
        return v

    @field_validator("time")
    @classmethod
    def _check_time(cls, v: TimeMode) -> TimeMode:
        if isinstance(v, int) and v < 0:
            raise ValueError(f"walk time must be >= 0, got {v}")
        return v

    @field_validator("t_values")
    @classmethod
    def _check_t(cls, v: list[int]) -> list[int]:
        if any(t < 0 for t in v):
            raise ValueError("walk times must be >= 0")
        return v

    @field_validator("noise")
    @classmethod
    def _check_noise(cls, v: list[float]) -> list[float]:
        if not v:
            raise ValueError("noise list must not be empty")
        if any(not 0.0 <= q <= 1.0 for q in v):
            raise ValueError(f"noise values must be in [0, 1], got {v}")
        return v

    @field_validator("n_start")
    @classmethod
    def _check_n_start(cls, v: int) -> int:
        if v < 2:
            raise ValueError(f"N range must start at >= 2, got {v}")
        return v

    @field_validator("n_stop")
    @classmethod
    def _check_n_stop(cls, v: int, info: ValidationInfo) -> int:
        start = info.data.get("n_start")
        if start is not None and v < start:
            raise ValueError(f"N range stop {v} is below start {start}")
        return v

    @field_validator("n_factor")
    @classmethod
    def _check_n_factor(cls, v: int) -> int:
        if v < 2:
            raise ValueError(f"N range factor must be >= 2 for a strictly increasing range, got {v}")
        return v

    @field_validator("x0")
    @classmethod
    def _check_x0(cls, v: int, info: ValidationInfo) -> int:
        ps = info.data.get("p_values")
        if ps and v >= min(ps):
            raise ValueError(f"initial position {v} is outside the smallest cycle P={min(ps)}")
        return v

    @property
    def n_values(self) -> list[int]:
        values, n = [], self.n_start
        while n <= self.n_stop:
            values.append(n)
            n *= self.n_factor
        return values

    def time_for(self, P: int) -> int:
        return P if self.time == "equal-p" else int(self.time)


# ─── Config text <-> SweepSpec ────────────────────────────────────

_CONVERTERS: dict[str, Callable[[str], object]] = {
    "kind": str.strip,
    "p": parse_int_list,
    "time": parse_time,
    "t": parse_int_list,
    "noise": parse_float_list,
    "n_range": parse_n_range,
    "sample_frac": float,
    "epsilon": float,
    "mode": str.strip,
    "seed": _parse_int,
    "format": str.strip,
    "out": str.strip,
    "c0": _parse_int,
    "x0": _parse_int,
}

_FIELD_TO_KEY = {
    "p_values": "p",
    "t_values": "t",
    "n_start": "n_range",
    "n_stop": "n_range",
    "n_factor": "n_range",
}

CONFIG_KEYS = tuple(_CONVERTERS)


def _read_config_text(source: str) -> dict[str, str]:
    for lineno, line in enumerate(source.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, _ = stripped.partition("=")
        if not sep or not key.strip():
            raise ConfigurationError(None, f"Malformed config line {lineno}: {line!r}")

    raw = dotenv_values(stream=io.StringIO(source))
    values: dict[str, str] = {}
    for key, value in raw.items():
        norm = key.strip().lower().replace("-", "_")
        if value is None or not value.strip():
            raise ConfigurationError(norm, "empty value")
        values[norm] = value
    return values


def _convert(key: str, value: str) -> object:
    if key not in _CONVERTERS:
        raise ConfigurationError(key, f"unknown key (expected one of {', '.join(CONFIG_KEYS)})")
    try:
        return _CONVERTERS[key](value)
    except ValueError as e:
        raise ConfigurationError(key, f"invalid value {value!r}: {e}") from e


def _to_fields(values: Mapping[str, object]) -> dict[str, object]:
    fields: dict[str, object] = {}
    for key, value in values.items():
        if key == "n_range":
            fields["n_start"], fields["n_stop"], fields["n_factor"] = value
        elif key in ("p", "t"):
            fields[f"{key}_values"] = value
        else:
            fields[key] = value
    return fields


def parse_spec(
    source: str,
    overrides: Optional[Mapping[str, str]] = None,
    settings: Optional[LabSettings] = None,
    defaults: Optional[Mapping[str, str]] = None,
) -> SweepSpec:
    """Build a validated SweepSpec.

    Precedence, lowest first: settings (env), ``defaults``, config text,
    ``overrides``. ``defaults`` and ``overrides`` use config keys and
    string values, exactly like the text.
    """
    settings = settings or load_settings()
    layered: dict[str, object] = {
        "sample_frac": settings.sample_frac,
        "epsilon": settings.epsilon,
    }
    try:
        layered["n_range"] = parse_n_range(settings.n_range)
    except ValueError as e:
        raise ConfigurationError("n_range", f"invalid QWLAB_N_RANGE {settings.n_range!r}: {e}") from e

    for layer in (defaults or {}, _read_config_text(source), overrides or {}):
        for key, value in layer.items():
            norm = key.strip().lower().replace("-", "_")
            layered[norm] = _convert(norm, value)

    if "kind" not in layered:
        raise ConfigurationError("kind", "missing required key")
    # overlap-time walks the times in t; a fixed time would be dropped
    if layered["kind"] == "overlap-time" and layered.get("time", "equal-p") != "equal-p":
        raise ConfigurationError("time", "has no effect for kind overlap-time; list walk times in t")

    try:
        spec = SweepSpec(**_to_fields(layered))
    except ValidationError as e:
        err = e.errors()[0]
        field = str(err["loc"][0]) if err["loc"] else None
        key = _FIELD_TO_KEY.get(field, field)
        raise ConfigurationError(key, err["msg"]) from e

    logger.debug(f"Parsed sweep spec: {spec.model_dump()}")
    return spec


def _fmt_list(values: list) -> str:
    return ",".join(repr(v) for v in values)


def to_config_text(spec: SweepSpec) -> str:
    """Canonical config text; parse_spec(to_config_text(s)) == s."""
    lines = [
        f"kind = {spec.kind}",
        f"p = {_fmt_list(spec.p_values)}",
        f"time = {spec.time}",
    ]
    if spec.t_values:
        lines.append(f"t = {_fmt_list(spec.t_values)}")
    lines += [
        f"noise = {_fmt_list(spec.noise)}",
        f"n_range = {spec.n_start}:{spec.n_stop}:{spec.n_factor}",
        f"sample_frac = {spec.sample_frac!r}",
        f"epsilon = {spec.epsilon!r}",
        f"mode = {spec.mode}",
        f"seed = {spec.seed}",
        f"format = {spec.format}",
    ]
    if spec.out is not None:
        lines.append(f"out = {spec.out}")
    lines += [f"c0 = {spec.c0}", f"x0 = {spec.x0}"]
    return "\n".join(lines) + "\n"
