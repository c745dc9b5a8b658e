"""
Sweep configuration: ``key = value`` text files.

Example::

    # Markovian dephasing
    channel = dephasing
    tau = 0.1
    u_values = 0, 0.3, 0.6, 0.9
    t = 0, 15.707963267948966, 400
    trigger_b = pi
    outputs = negativity, fidelity_avg_A2B, qfi_thetaA

Angles accept ``pi`` multiples (``pi``, ``pi/2``, ``0.5*pi``). ``tau`` and
``spectral_width`` take a comma-separated list to produce surface data.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .. import constants as C
from ..bqt import BACKENDS, CLOSED_FORM, ProtocolSettings, make_settings
from ..errors import ParseError, ValidationError
from ..noise import CHANNEL_KINDS, DEPHASING

OUTPUTS = (
    "p_of_t",
    "negativity",
    "fidelity_avg_A2B",
    "fidelity_avg_B2A",
    "qfi_thetaA",
    "qfi_thetaB",
)

_SETTING_KEYS = ("theta_a", "phi_a", "theta_b", "phi_b", "trigger_a", "trigger_b")
KEYS = ("channel", "tau", "gamma", "spectral_width", "u_values", "t", "backend", "outputs", "nodes") + _SETTING_KEYS
_ALIASES = {"t_grid": "t"}

_PI_RE = re.compile(r"^(?P<coef>[-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?)?\s*\*?\s*pi\s*(/\s*(?P<den>(\d+(\.\d*)?|\.\d+)))?$")


@dataclass(frozen=True)
class SweepSpec:
    channel: str
    u_values: tuple[float, ...]
    t_grid: tuple[float, float, int]
    tau: tuple[float, ...] = ()
    gamma: float = 1.0
    spectral_width: tuple[float, ...] = ()
    settings: ProtocolSettings = field(default_factory=make_settings)
    backend: str = CLOSED_FORM
    outputs: tuple[str, ...] = OUTPUTS
    nodes: int = C.QUADRATURE_NODES

    def __post_init__(self):
        validate(self)

    @property
    def model_params(self) -> tuple[float, ...]:
        return self.tau if self.channel == DEPHASING else self.spectral_width

    def times(self) -> list[float]:
        t0, t1, n = self.t_grid
        return [t0 + (t1 - t0) * k / (n - 1) for k in range(n)]


def validate(spec: SweepSpec) -> None:
    if spec.channel not in CHANNEL_KINDS:
        raise ValidationError("channel", f"expected one of {CHANNEL_KINDS}, got {spec.channel!r}")
    if spec.channel == DEPHASING:
        if not spec.tau:
            raise ValidationError("tau", "required for the dephasing channel")
        if spec.spectral_width:
            raise ValidationError("spectral_width", "only valid for amplitude_damping")
        if any(not (x > 0 and math.isfinite(x)) for x in spec.tau):
            raise ValidationError("tau", "values must be > 0")
    else:
        if not spec.spectral_width:
            raise ValidationError("spectral_width", "required for the amplitude_damping channel")
        if spec.tau:
            raise ValidationError("tau", "only valid for dephasing")
        if any(not (x > 0 and math.isfinite(x)) for x in spec.spectral_width):
            raise ValidationError("spectral_width", "values must be > 0")
        if not (spec.gamma > 0 and math.isfinite(spec.gamma)):
            raise ValidationError("gamma", "must be > 0")
    if not spec.u_values:
        raise ValidationError("u_values", "at least one value required")
    if any(not (0.0 <= u <= 1.0) for u in spec.u_values):
        raise ValidationError("u_values", "values must lie in [0, 1]")
    if len(spec.t_grid) != 3:
        raise ValidationError("t", "expected t_min, t_max, steps")
    t0, t1, n = spec.t_grid
    if not (0.0 <= t0 < t1 and math.isfinite(t1)):
        raise ValidationError("t", "need 0 <= t_min < t_max")
    if not isinstance(n, int) or n < 2:
        raise ValidationError("t", "steps must be an integer >= 2")
    if spec.backend not in BACKENDS:
        raise ValidationError("backend", f"expected one of {BACKENDS}")
    if not spec.outputs or any(o not in OUTPUTS for o in spec.outputs):
        raise ValidationError("outputs", f"expected a nonempty subset of {OUTPUTS}")
    if len(set(spec.outputs)) != len(spec.outputs):
        raise ValidationError("outputs", "duplicate entries")
    if spec.nodes < C.MIN_QUADRATURE_NODES:
        raise ValidationError("nodes", f"must be >= {C.MIN_QUADRATURE_NODES}")


def parse_number(text: str) -> float:
    text = text.strip()
    m = _PI_RE.match(text)
    if m:
        coef = float(m.group("coef")) if m.group("coef") else 1.0
        den = float(m.group("den")) if m.group("den") else 1.0
        return coef * math.pi / den
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"non-finite number {text!r}")
    return value


def _numbers(lineno: int, text: str, key: str) -> list[float]:
    try:
        return [parse_number(x) for x in text.split(",")]
    except ValueError as exc:
        raise ParseError(lineno, f"{key}: {exc}") from None


def parse_config(text: str) -> SweepSpec:
    """
    Parse a sweep configuration.

    Raises
    ------
    ParseError
        Malformed line, unknown or repeated key, unreadable number.
    ValidationError
        Well-formed input with an out-of-range or inconsistent value.
    """
    raw: dict[str, tuple[int, str]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(lineno, f"expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = _ALIASES.get(key, key)
        if key not in KEYS:
            raise ParseError(lineno, f"unknown key {key!r}")
        if key in raw:
            raise ParseError(lineno, f"duplicate key {key!r}")
        if not value:
            raise ParseError(lineno, f"empty value for {key!r}")
        raw[key] = (lineno, value)

    # syntax first: every number must parse before any field is validated
    nums = {k: _numbers(*raw[k], key=k) for k in ("tau", "spectral_width", "u_values", "gamma") + _SETTING_KEYS if k in raw}
    for k in ("gamma",) + _SETTING_KEYS:
        if k in nums and len(nums[k]) != 1:
            raise ParseError(raw[k][0], f"{k} takes a single value")
    t_grid = _t_grid(*raw["t"]) if "t" in raw else None
    nodes = None
    if "nodes" in raw:
        lineno, v = raw["nodes"]
        try:
            nodes = int(v)
        except ValueError:
            raise ParseError(lineno, f"nodes must be an integer, got {v!r}") from None

    if any(not (0.0 <= u <= 1.0) for u in nums.get("u_values", ())):
        raise ValidationError("u_values", "values must lie in [0, 1]")
    for required in ("channel", "u_values", "t"):
        if required not in raw:
            raise ValidationError(required, "missing")

    kw: dict = {"channel": raw["channel"][1], "t_grid": t_grid}
    for key in ("tau", "spectral_width", "u_values"):
        if key in nums:
            kw[key] = tuple(nums[key])
    if "gamma" in nums:
        kw["gamma"] = nums["gamma"][0]
    if "backend" in raw:
        kw["backend"] = raw["backend"][1]
    if "outputs" in raw:
        kw["outputs"] = tuple(s.strip() for s in raw["outputs"][1].split(","))
    if nodes is not None:
        kw["nodes"] = nodes

    angles = {k: nums[k][0] for k in _SETTING_KEYS if k in nums}
    for k, v in angles.items():
        if not k.startswith("phi") and not (0.0 <= v <= math.pi):
            raise ValidationError(k, f"{v!r} outside [0, pi]")
    kw["settings"] = make_settings(**angles)
    return SweepSpec(**kw)


def _t_grid(lineno: int, text: str) -> tuple[float, float, int]:
    parts = [x.strip() for x in text.split(",")]
    if len(parts) != 3:
        raise ValidationError("t", "expected t_min, t_max, steps")
    t0, t1 = _numbers(lineno, ",".join(parts[:2]), key="t")
    try:
        steps = int(parts[2])
    except ValueError:
        raise ParseError(lineno, f"t: steps must be an integer, got {parts[2]!r}") from None
    return t0, t1, steps


def dump_config(spec: SweepSpec) -> str:
    """Serialize ``spec``; ``parse_config(dump_config(s)) == s`` exactly."""
    s = spec.settings
    lines = [f"channel = {spec.channel}"]
    if spec.channel == DEPHASING:
        lines.append("tau = " + ", ".join(repr(x) for x in spec.tau))
    else:
        lines.append(f"gamma = {spec.gamma!r}")
        lines.append("spectral_width = " + ", ".join(repr(x) for x in spec.spectral_width))
    lines += [
        "u_values = " + ", ".join(repr(x) for x in spec.u_values),
        f"t = {spec.t_grid[0]!r}, {spec.t_grid[1]!r}, {spec.t_grid[2]}",
        f"theta_a = {s.alice_state.theta!r}",
        f"phi_a = {s.alice_state.phi!r}",
        f"theta_b = {s.bob_state.theta!r}",
        f"phi_b = {s.bob_state.phi!r}",
        f"trigger_a = {s.alice_trigger.theta_tilde!r}",
        f"trigger_b = {s.bob_trigger.theta_tilde!r}",
        f"backend = {spec.backend}",
        "outputs = " + ", ".join(spec.outputs),
        f"nodes = {spec.nodes}",
    ]
    return "\n".join(lines) + "\n"

