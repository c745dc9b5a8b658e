"""
Correlated two-use noise channels and their time-dependent decoherence factors.

A channel acting on both halves of a Bell pair is the convex mixture

    X(rho) = (1 - u) * sum_ij K^I_ij rho K^I_ij^dagger + u * sum_k K^c_kk rho K^c_kk^dagger

where ``u`` is the memory strength: with probability ``u`` both qubits see the
same (fully correlated) error, otherwise they are hit independently.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import constants as C
from .errors import CompletenessViolation, DimensionMismatch, RangeError
from .qmath import I2, SIGMA_Z, completeness_error, kraus_sum, tensor

log = logging.getLogger(__name__)

DEPHASING = "dephasing"
AMPLITUDE_DAMPING = "amplitude_damping"
CHANNEL_KINDS = (DEPHASING, AMPLITUDE_DAMPING)

KrausFamily = tuple[tuple[float, np.ndarray], ...]


def check_unit_interval(name: str, x: float) -> float:
    x = float(x)
    if not (0.0 <= x <= 1.0):
        raise RangeError(f"{name} = {x!r} outside [0, 1]")
    return x


def clamp_probability(p: float, what: str = "p") -> float:
    """Absorb round-off just outside [0, 1]; larger excursions are errors."""
    if p < 0.0:
        if p < -C.PROB_CLAMP_TOL:
            raise RangeError(f"{what} = {p!r} below 0")
        return 0.0
    if p > 1.0:
        if p > 1.0 + C.PROB_CLAMP_TOL:
            raise RangeError(f"{what} = {p!r} above 1")
        return 1.0
    return p


def check_channel_kind(kind: str) -> str:
    if kind not in CHANNEL_KINDS:
        raise ValueError(f"unknown channel kind {kind!r}; expected one of {CHANNEL_KINDS}")
    return kind


@dataclass(frozen=True)
class CorrelatedChannel:
    """Two Kraus families on C^2 ⊗ C^2 mixed with memory strength ``memory_u``."""

    kind: str
    p: float
    memory_u: float
    uncorrelated_kraus: KrausFamily
    correlated_kraus: KrausFamily

    def __post_init__(self):
        check_unit_interval("p", self.p)
        check_unit_interval("u", self.memory_u)
        for name, fam in (("uncorrelated", self.uncorrelated_kraus), ("correlated", self.correlated_kraus)):
            err = completeness_error([k for _, k in fam], [w for w, _ in fam])
            if err > C.COMPLETENESS_TOL:
                raise CompletenessViolation(f"{name} family incomplete by {err:.3e}")

    def completeness(self) -> tuple[float, float]:
        """Completeness defects of the (uncorrelated, correlated) families."""
        return (
            completeness_error([k for _, k in self.uncorrelated_kraus], [w for w, _ in self.uncorrelated_kraus]),
            completeness_error([k for _, k in self.correlated_kraus], [w for w, _ in self.correlated_kraus]),
        )

    def descriptor(self) -> dict:
        return {"channel": self.kind, "p": self.p, "u": self.memory_u}

    @classmethod
    def from_descriptor(cls, d: dict) -> "CorrelatedChannel":
        return make_channel(d["channel"], float(d["p"]), float(d["u"]))


II = tensor(I2, I2)
IZ = tensor(I2, SIGMA_Z)
ZI = tensor(SIGMA_Z, I2)
ZZ = tensor(SIGMA_Z, SIGMA_Z)


def dephasing_channel(p: float, u: float) -> CorrelatedChannel:
    """Correlated phase-flip channel with flip probability ``p``."""
    p = check_unit_interval("p", p)
    u = check_unit_interval("u", u)
    q0, q1 = 1.0 - p, p
    unc = ((q0 * q0, II), (q0 * q1, IZ), (q1 * q0, ZI), (q1 * q1, ZZ))
    cor = ((q0, II), (q1, ZZ))
    return CorrelatedChannel(DEPHASING, p, u, unc, cor)


def ad_kraus_single(p: float) -> tuple[np.ndarray, np.ndarray]:
    k0 = np.array([[1, 0], [0, math.sqrt(1.0 - p)]], dtype=complex)
    k1 = np.array([[0, math.sqrt(p)], [0, 0]], dtype=complex)
    return k0, k1


def amplitude_damping_channel(p: float, u: float) -> CorrelatedChannel:
    """Correlated amplitude damping with single-qubit decay probability ``p``."""
    p = check_unit_interval("p", p)
    u = check_unit_interval("u", u)
    k0, k1 = ad_kraus_single(p)
    unc = tuple((1.0, tensor(a, b)) for a in (k0, k1) for b in (k0, k1))
    kc0 = np.diag([1, 1, 1, math.sqrt(1.0 - p)]).astype(complex)
    kc1 = np.zeros((4, 4), dtype=complex)
    kc1[0, 3] = math.sqrt(p)  # |00><11|
    return CorrelatedChannel(AMPLITUDE_DAMPING, p, u, unc, ((1.0, kc0), (1.0, kc1)))


def make_channel(kind: str, p: float, u: float) -> CorrelatedChannel:
    if check_channel_kind(kind) == DEPHASING:
        return dephasing_channel(p, u)
    return amplitude_damping_channel(p, u)


def apply_correlated(ch: CorrelatedChannel, rho) -> np.ndarray:
    """
    Apply both channel uses to a two-qubit state.

    Completeness was checked when ``ch`` was built, so both families are
    applied directly as ``u``-weighted Kraus sums.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DimensionMismatch(f"expected a 4x4 state, got shape {rho.shape}")
    u = ch.memory_u
    fams = ch.uncorrelated_kraus + ch.correlated_kraus
    ws = np.array([(1.0 - u) * w for w, _ in ch.uncorrelated_kraus] + [u * w for w, _ in ch.correlated_kraus])
    return kraus_sum(rho, np.array([k for _, k in fams]), ws)


# -- time models -------------------------------------------------------------


def _check_time(t: float) -> float:
    t = float(t)
    if not t >= 0.0:
        raise RangeError(f"t = {t!r} must be >= 0")
    return t


def _damped_cosh_sinh(rate: float, freq: float, t: float) -> tuple[float, float]:
    """
    ``(e^{-rate t} cosh(freq t), e^{-rate t} sinh(freq t)/freq)`` for ``0 < freq <= rate``.

    Split into decaying exponentials so large ``t`` cannot overflow.
    """
    x = freq * t
    if x < 1.0:
        e = math.exp(-rate * t)
        return e * math.cosh(x), e * math.sinh(x) / freq
    e1 = math.exp(-(rate - freq) * t)
    e2 = math.exp(-(rate + freq) * t)
    return 0.5 * (e1 + e2), 0.5 * (e1 - e2) / freq


@dataclass(frozen=True)
class DephasingTimeModel:
    """
    Colored (random telegraph) dephasing with dimensionless memory time ``tau``.

    ``tau < 1/4`` gives monotone (Markovian) decay, ``tau > 1/4`` damped
    oscillations.
    """

    tau: float

    def __post_init__(self):
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise RangeError(f"tau = {self.tau!r} must be > 0")

    @property
    def markovian(self) -> bool:
        return self.tau < 0.25

    def coherence(self, t: float) -> float:
        """Decoherence function gamma(t); off-diagonals are scaled by it."""
        t = _check_time(t)
        tau = self.tau
        nu = t / (2.0 * tau)
        disc = 1.0 - 16.0 * tau * tau
        if disc > 0.0:
            u = math.sqrt(disc)
            ch, sh = _damped_cosh_sinh(1.0, u, nu)
            return ch + sh
        if disc == 0.0:
            return math.exp(-nu) * (1.0 + nu)
        w = math.sqrt(-disc)
        return math.exp(-nu) * (math.cos(w * nu) + math.sin(w * nu) / w)

    def p(self, t: float) -> float:
        return dephasing_p_of_t(self, t)


def dephasing_p_of_t(model: DephasingTimeModel, t: float) -> float:
    """Phase-flip probability ``(1 - gamma(t))/2`` of the colored-noise model."""
    return clamp_probability(0.5 * (1.0 - model.coherence(t)), "p_D")


@dataclass(frozen=True)
class ADTimeModel:
    """
    Qubit in a lossy cavity with a Lorentzian reservoir.

    ``gamma`` is the qubit coupling strength and ``spectral_width`` the
    reservoir width (both inverse times). Weak coupling (Markovian) when
    ``gamma < spectral_width / 2``.
    """

    gamma: float
    spectral_width: float

    def __post_init__(self):
        for name in ("gamma", "spectral_width"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise RangeError(f"{name} = {v!r} must be > 0")

    @property
    def markovian(self) -> bool:
        return self.gamma < self.spectral_width / 2.0

    @property
    def frequency(self) -> float:
        """``d = sqrt(|Gamma^2 - 2 gamma Gamma|)``; sets the revival period ``2 pi / d``."""
        g, w = self.gamma, self.spectral_width
        return math.sqrt(abs(w * w - 2.0 * g * w))

    def survival_amplitude(self, t: float) -> float:
        """Excited-state amplitude G(t); G(0) = 1."""
        t = _check_time(t)
        g, w = self.gamma, self.spectral_width
        disc = w * w - 2.0 * g * w
        half = 0.5 * t
        if disc > 0.0:
            d = math.sqrt(disc)
            ch, sh = _damped_cosh_sinh(0.5 * w, 0.5 * d, t)
            return ch + w * sh * 0.5
        if disc == 0.0:
            return math.exp(-w * half) * (1.0 + w * half)
        d = math.sqrt(-disc)
        return math.exp(-w * half) * (math.cos(d * half) + (w / d) * math.sin(d * half))

    def p(self, t: float) -> float:
        return ad_p_of_t(self, t)


def ad_p_of_t(model: ADTimeModel, t: float) -> float:
    """Damping probability ``1 - G(t)^2``: zero at t = 0, tends to one."""
    g = model.survival_amplitude(t)
    p = clamp_probability(1.0 - g * g, "p_A")
    if log.isEnabledFor(logging.DEBUG):
        log.debug("t=%r G^2=%r 1-G^2=%r", t, g * g, p)
    return p
