"""
Bidirectional teleportation of single-qubit states over a noisy Bell pair.

Each party holds a payload qubit ``cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>``
and a trigger qubit ``cos(theta~/2)|0> + sin(theta~/2)|1>``. The overlap of
the two sets the probability ``M`` that the party's measurement is sharp.
Alice's state reaches Bob with weight ``M_A (1 - M_B)``; otherwise Bob is
left with the residual state rho_0 (and symmetrically for Bob -> Alice).

Two backends describe what the sharp-measurement step does to the payload:

``closed-form``
    analytic component formulas for the dephasing and amplitude damping
    resources;
``oracle``
    brute-force density-matrix simulation of standard teleportation through
    the same resource.

Both are expressed as an affine map ``n -> R n + c`` on the input Bloch
vector, which is what the fidelity and Fisher-information code consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import constants as C
from .errors import BlochOutOfBall, RangeError
from .metrics.entanglement import negativity_ad, negativity_dephasing
from .noise import AMPLITUDE_DAMPING, DEPHASING, apply_correlated, check_channel_kind, check_unit_interval, make_channel
from .qmath import (
    I2,
    PHI_MINUS,
    PHI_PLUS,
    PSI_MINUS,
    PSI_PLUS,
    SIGMA_X,
    SIGMA_Z,
    bloch_from_density,
    check_density,
    ket_to_density,
)

A_TO_B = "A->B"
B_TO_A = "B->A"
DIRECTIONS = (A_TO_B, B_TO_A)

CLOSED_FORM = "closed-form"
ORACLE = "oracle"
BACKENDS = (CLOSED_FORM, ORACLE)

TWO_PI = 2.0 * math.pi


def check_direction(direction: str) -> str:
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    return direction


def check_backend(backend: str) -> str:
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}, got {backend!r}")
    return backend


@dataclass(frozen=True)
class PureQubit:
    """Payload state; ``phi`` is stored reduced to [0, 2 pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise RangeError(f"theta = {self.theta!r} outside [0, pi]")
        if not math.isfinite(self.phi):
            raise RangeError(f"phi = {self.phi!r} is not finite")
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    @property
    def ket(self) -> np.ndarray:
        return np.array([math.cos(self.theta / 2), np.exp(1j * self.phi) * math.sin(self.theta / 2)])

    @property
    def bloch(self) -> np.ndarray:
        return bloch_direction(self.theta, self.phi)


@dataclass(frozen=True)
class TriggerSetting:
    theta_tilde: float

    def __post_init__(self):
        if not (0.0 <= self.theta_tilde <= math.pi):
            raise RangeError(f"theta_tilde = {self.theta_tilde!r} outside [0, pi]")


@dataclass(frozen=True)
class ProtocolSettings:
    alice_state: PureQubit
    bob_state: PureQubit
    alice_trigger: TriggerSetting
    bob_trigger: TriggerSetting

    @property
    def m_alice(self) -> float:
        return measurement_probability(self.alice_state, self.alice_trigger)

    @property
    def m_bob(self) -> float:
        return measurement_probability(self.bob_state, self.bob_trigger)

    def swapped(self) -> "ProtocolSettings":
        return ProtocolSettings(self.bob_state, self.alice_state, self.bob_trigger, self.alice_trigger)

    def sender(self, direction: str) -> tuple[PureQubit, TriggerSetting]:
        if check_direction(direction) == A_TO_B:
            return self.alice_state, self.alice_trigger
        return self.bob_state, self.bob_trigger

    def receiver(self, direction: str) -> tuple[PureQubit, TriggerSetting]:
        if check_direction(direction) == A_TO_B:
            return self.bob_state, self.bob_trigger
        return self.alice_state, self.alice_trigger

    def weight(self, direction: str) -> float:
        """Probability ``M_send (1 - M_recv)`` that the payload gets through."""
        return measurement_probability(*self.sender(direction)) * (1.0 - measurement_probability(*self.receiver(direction)))


def make_settings(theta_a=0.0, phi_a=0.0, theta_b=0.0, phi_b=0.0, trigger_a=0.0, trigger_b=math.pi) -> ProtocolSettings:
    return ProtocolSettings(PureQubit(theta_a, phi_a), PureQubit(theta_b, phi_b), TriggerSetting(trigger_a), TriggerSetting(trigger_b))


@dataclass(frozen=True)
class TeleportedState:
    direction: str
    bloch: np.ndarray
    residual: np.ndarray
    weight: float


def bloch_direction(theta, phi):
    """Unit Bloch vector(s) of the payload; broadcasts over arrays."""
    st = np.sin(theta)
    return np.stack(np.broadcast_arrays(st * np.cos(phi), st * np.sin(phi), np.cos(theta)), axis=-1)


def overlap_probability(theta, phi, theta_tilde):
    """``|<T|S>|^2 = (1 + n_T . n_S)/2``; broadcasts over arrays."""
    return 0.5 * (1.0 + np.cos(theta) * np.cos(theta_tilde) + np.sin(theta) * np.sin(theta_tilde) * np.cos(phi))


def overlap_probability_dtheta(theta, phi, theta_tilde):
    return 0.5 * (-np.sin(theta) * np.cos(theta_tilde) + np.cos(theta) * np.sin(theta_tilde) * np.cos(phi))


def measurement_probability(state: PureQubit, trigger: TriggerSetting) -> float:
    """Probability ``Tr[rho_T rho_S]`` that the measurement is sharp."""
    m = float(overlap_probability(state.theta, state.phi, trigger.theta_tilde))
    return min(1.0, max(0.0, m))


_PHI_PLUS_DM = ket_to_density(PHI_PLUS)


def resource_state(channel_kind: str, p: float, u: float) -> np.ndarray:
    """Bell pair ``|Phi+>`` after both halves pass through the correlated channel."""
    return apply_correlated(make_channel(channel_kind, p, u), _PHI_PLUS_DM)


def residual_state(channel_kind: str, p: float, u: float) -> np.ndarray:
    """
    Bloch vector of rho_0, the state left behind when teleportation fails.

    It is the single-qubit channel applied to I/2: unchanged by dephasing,
    pushed to ``(0, 0, p)`` by amplitude damping.
    """
    check_unit_interval("p", p)
    check_unit_interval("u", u)
    if check_channel_kind(channel_kind) == DEPHASING:
        return np.zeros(3)
    return np.array([0.0, 0.0, float(p)])


def _check_bloch(v: np.ndarray, what: str) -> np.ndarray:
    norm = float(np.linalg.norm(v))
    if norm > 1.0 + C.BLOCH_TOL:
        raise BlochOutOfBall(f"{what}: |v| = {norm:.12g}")
    return v


def teleported_bloch_dephasing(settings: ProtocolSettings, direction: str, N: float) -> TeleportedState:
    """
    Closed-form output through the dephased resource with negativity ``N``.

    Transverse components shrink by ``sqrt(N)``, the z component only by the
    weight.
    """
    if not (0.0 <= N <= 1.0):
        raise RangeError(f"N = {N!r} outside [0, 1]")
    state, _ = settings.sender(direction)
    w = settings.weight(direction)
    th, ph = state.theta, state.phi
    s = math.sqrt(N)
    v = np.array([w * s * math.cos(ph) * math.sin(th), w * s * math.sin(ph) * math.sin(th), w * math.cos(th)])
    return TeleportedState(direction, v, np.zeros(3), w)


def ad_coefficients(p: float, u: float) -> tuple[float, float, float]:
    """Transverse factor and the z coefficients ``A`` (for |0>) and ``B`` (for |1>)."""
    transverse = negativity_ad(p, u) - (1.0 - u) * (p * p - p)
    a = (1.0 - p) * (1.0 - 2.0 * p + 2.0 * u * p)
    b = (1.0 - u) * (p - 2.0 * p * p - 1.0) - u * (1.0 + p)
    return transverse, a, b


def teleported_bloch_ad(settings: ProtocolSettings, direction: str, p: float, u: float) -> TeleportedState:
    """
    Closed-form output through the amplitude-damped resource.

    Raises
    ------
    BlochOutOfBall
        The closed-form z component ``A cos^2 + B sin^2 + p(1 - W)`` leaves the
        unit ball for large ``p`` and ``theta`` near pi.
    """
    p = check_unit_interval("p", p)
    u = check_unit_interval("u", u)
    state, _ = settings.sender(direction)
    w = settings.weight(direction)
    th, ph = state.theta, state.phi
    tr, a, b = ad_coefficients(p, u)
    z = w * (a * math.cos(th / 2) ** 2 + b * math.sin(th / 2) ** 2) + p * (1.0 - w)
    v = np.array([w * tr * math.cos(ph) * math.sin(th), w * tr * math.sin(ph) * math.sin(th), z])
    _check_bloch(v, "amplitude damping closed form")
    return TeleportedState(direction, v, residual_state(AMPLITUDE_DAMPING, p, u), w)


def teleport_output(m_send: float, m_recv: float, delivered, residual, direction: str = A_TO_B) -> TeleportedState:
    """
    Mix the delivered state with the residual according to the trigger outcomes.

    ``delivered`` is either a :class:`PureQubit` (noiseless link) or the Bloch
    vector produced by the sharp-measurement step.
    """
    for name, m in (("m_send", m_send), ("m_recv", m_recv)):
        check_unit_interval(name, m)
    if isinstance(delivered, PureQubit):
        delivered = delivered.bloch
    w = m_send * (1.0 - m_recv)
    residual = np.asarray(residual, dtype=float)
    v = w * np.asarray(delivered, dtype=float) + (1.0 - w) * residual
    return TeleportedState(check_direction(direction), v, residual, w)


# -- brute-force oracle ------------------------------------------------------

_BELL_CORRECTIONS = (
    (PHI_PLUS, I2),
    (PSI_PLUS, SIGMA_X),
    (PHI_MINUS, SIGMA_Z),
    (PSI_MINUS, SIGMA_X @ SIGMA_Z),
)

_SWAP = np.eye(4)[[0, 2, 1, 3]]


def oracle_teleport(resource, state: PureQubit, direction: str = A_TO_B) -> np.ndarray:
    """
    Teleport ``state`` through ``resource`` by explicit simulation.

    The payload is joined with the two-qubit resource, the sender's pair is
    projected on each Bell state, the matching Pauli correction is applied to
    the receiver's qubit and the four branches are summed.
    """
    resource = check_density(resource, (4,))
    if check_direction(direction) == B_TO_A:
        resource = _SWAP @ resource @ _SWAP
    full = np.kron(ket_to_density(state.ket), resource).reshape((2,) * 6)
    out = np.zeros((2, 2), dtype=complex)
    for bell, fix in _BELL_CORRECTIONS:
        b = bell.reshape(2, 2)
        branch = np.einsum("ab,abkcdl,cd->kl", b.conj(), full, b)
        out += fix @ branch @ fix.conj().T
    return _check_bloch(bloch_from_density(out), "oracle")


_AXIS_STATES = (
    (PureQubit(math.pi / 2, 0.0), PureQubit(math.pi / 2, math.pi)),
    (PureQubit(math.pi / 2, math.pi / 2), PureQubit(math.pi / 2, 3 * math.pi / 2)),
    (PureQubit(0.0), PureQubit(math.pi)),
)


def affine_map_from_oracle(resource, direction: str = A_TO_B) -> tuple[np.ndarray, np.ndarray]:
    """Recover ``(R, c)`` with ``oracle(n) = R n + c`` from the six axis states."""
    R = np.zeros((3, 3))
    c = np.zeros(3)
    for k, (plus, minus) in enumerate(_AXIS_STATES):
        vp = oracle_teleport(resource, plus, direction)
        vm = oracle_teleport(resource, minus, direction)
        R[:, k] = 0.5 * (vp - vm)
        c += 0.5 * (vp + vm) / 3.0
    return R, c


@lru_cache(maxsize=4096)
def _oracle_map(kind: str, p: float, u: float, direction: str):
    R, c = affine_map_from_oracle(resource_state(kind, p, u), direction)
    R.setflags(write=False)
    c.setflags(write=False)
    return R, c


def teleportation_map(backend: str, kind: str, p: float, u: float, direction: str = A_TO_B) -> tuple[np.ndarray, np.ndarray]:
    """
    Affine action ``n -> R n + c`` of the sharp-measurement step.

    For the closed-form backend this is read off the analytic component
    formulas; for the oracle it is measured from the brute-force simulation.
    """
    check_backend(backend)
    kind = check_channel_kind(kind)
    p = check_unit_interval("p", p)
    u = check_unit_interval("u", u)
    if backend == ORACLE:
        return _oracle_map(kind, p, u, check_direction(direction))
    if kind == DEPHASING:
        s = math.sqrt(negativity_dephasing(p, u))
        return np.diag([s, s, 1.0]), np.zeros(3)
    tr, a, b = ad_coefficients(p, u)
    return np.diag([tr, tr, 0.5 * (a - b)]), np.array([0.0, 0.0, 0.5 * (a + b)])


def teleported_state(backend: str, kind: str, settings: ProtocolSettings, direction: str, p: float, u: float) -> TeleportedState:
    """Output state of one direction for either backend."""
    if check_backend(backend) == CLOSED_FORM:
        if check_channel_kind(kind) == DEPHASING:
            return teleported_bloch_dephasing(settings, direction, negativity_dephasing(p, u))
        return teleported_bloch_ad(settings, direction, p, u)
    state, _ = settings.sender(direction)
    delivered = oracle_teleport(resource_state(kind, p, u), state, direction)
    return teleport_output(
        measurement_probability(*settings.sender(direction)),
        measurement_probability(*settings.receiver(direction)),
        delivered,
        residual_state(kind, p, u),
        direction,
    )
