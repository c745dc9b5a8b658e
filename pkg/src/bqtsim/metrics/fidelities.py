"""
Teleportation fidelity, pointwise and averaged over the sender's Bloch sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import constants as C
from ..bqt import (
    CLOSED_FORM,
    PureQubit,
    ProtocolSettings,
    TeleportedState,
    bloch_direction,
    check_backend,
    check_direction,
    measurement_probability,
    overlap_probability,
    residual_state,
    teleportation_map,
)
from ..errors import QuadratureTooCoarse, RangeError
from ..noise import DEPHASING, check_channel_kind, check_unit_interval
from .entanglement import negativity_ad, negativity_dephasing


@dataclass(frozen=True)
class FidelityReport:
    direction: str
    pointwise: float
    averaged: float
    quadrature_nodes: int


def fidelity(state: PureQubit, out) -> float:
    """``<S|rho_out|S> = (1 + n_in . v_out)/2``."""
    v = out.bloch if isinstance(out, TeleportedState) else np.asarray(out, dtype=float)
    return 0.5 * (1.0 + float(np.dot(state.bloch, v)))


def ad_fidelity_coefficients(p: float, u: float) -> tuple[float, float, float]:
    """
    ``(chi, delta, eta)`` weighting ``sin^2 theta``, ``cos^4(theta/2)``, ``sin^4(theta/2)``.

    ``chi`` enters the fidelity as ``chi/2``; see :func:`fidelity_field`.
    """
    n = negativity_ad(p, u)
    sq = math.sqrt(1.0 - p)
    chi = n - (1.0 - u) * (2.0 * p * p - 2.0 * p)
    delta = n + u * (1.0 - p - sq)
    eta = n + (u + 2.0 * p - u * sq)
    return chi, delta, eta


def fidelity_field(kind, settings: ProtocolSettings, direction, p, u, theta, phi, backend=CLOSED_FORM):
    """
    Fidelity as a function of the sender's input angles (arrays broadcast).

    The sender's sharp-measurement probability follows the input through
    its trigger overlap; the partner's probability stays at its configured
    value.

    For amplitude damping the closed-form backend weights ``sin^2 theta`` by
    ``chi/2``: with that factor the expression reduces to the dephasing one at
    ``p = 0`` and agrees with the component formulas' transverse part.
    """
    kind = check_channel_kind(kind)
    check_backend(backend)
    p = check_unit_interval("p", p)
    u = check_unit_interval("u", u)
    _, trig_s = settings.sender(check_direction(direction))
    m_recv = measurement_probability(*settings.receiver(direction))
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    w = np.clip(overlap_probability(theta, phi, trig_s.theta_tilde), 0.0, 1.0) * (1.0 - m_recv)

    if backend == CLOSED_FORM:
        if kind == DEPHASING:
            s = math.sqrt(negativity_dephasing(p, u))
            return -0.5 * w * (1.0 - s) * np.sin(theta) ** 2 + 0.5 * (1.0 + w)
        chi, delta, eta = ad_fidelity_coefficients(p, u)
        c2 = np.cos(theta / 2) ** 2
        s2 = np.sin(theta / 2) ** 2
        return w * (0.5 * chi * np.sin(theta) ** 2 + delta * c2 * c2 + eta * s2 * s2) + 0.5 * (1.0 - w) * (1.0 + p * np.cos(theta))

    R, c = teleportation_map(backend, kind, p, u, direction)
    r0 = residual_state(kind, p, u)
    n = bloch_direction(theta, phi)
    delivered = n @ R.T + c
    v = w[..., None] * delivered + (1.0 - w)[..., None] * r0
    return 0.5 * (1.0 + np.sum(n * v, axis=-1))


def fidelity_closed(kind, settings: ProtocolSettings, direction, p, u) -> float:
    """Closed-form fidelity at the sender's configured input state."""
    state, _ = settings.sender(check_direction(direction))
    return float(fidelity_field(kind, settings, direction, p, u, state.theta, state.phi, CLOSED_FORM))


@lru_cache(maxsize=16)
def _sphere_rule(nodes: int):
    x, wx = np.polynomial.legendre.leggauss(nodes)
    phi = 2.0 * math.pi * np.arange(nodes) / nodes
    theta = np.arccos(x)
    return theta[:, None], phi[None, :], wx


def sphere_average(func, nodes: int) -> float:
    """
    ``(1/4 pi) \\int f sin(theta) dtheta dphi`` with Gauss-Legendre in cos(theta)
    times a uniform rule in phi.
    """
    theta, phi, wx = _sphere_rule(nodes)
    vals = np.broadcast_to(func(theta, phi), (nodes, nodes))
    return 0.5 * float(wx @ vals.mean(axis=1))


def average_fidelity(kind, settings: ProtocolSettings, direction, p, u, nodes: int = C.QUADRATURE_NODES, backend=CLOSED_FORM) -> float:
    """
    Fidelity averaged over all sender inputs.

    Raises
    ------
    QuadratureTooCoarse
        If doubling the node count moves the result by more than
        ``QUADRATURE_DOUBLING_TOL``.
    """
    if nodes < C.MIN_QUADRATURE_NODES:
        raise RangeError(f"nodes = {nodes} < {C.MIN_QUADRATURE_NODES}")

    def f(theta, phi):
        return fidelity_field(kind, settings, direction, p, u, theta, phi, backend)

    coarse = sphere_average(f, nodes)
    fine = sphere_average(f, 2 * nodes)
    if abs(fine - coarse) > C.QUADRATURE_DOUBLING_TOL:
        raise QuadratureTooCoarse(f"{nodes} nodes: {coarse!r}, {2 * nodes} nodes: {fine!r}")
    return coarse


def fidelity_report(kind, settings: ProtocolSettings, direction, p, u, nodes: int = C.QUADRATURE_NODES, backend=CLOSED_FORM) -> FidelityReport:
    state, _ = settings.sender(direction)
    point = float(fidelity_field(kind, settings, direction, p, u, state.theta, state.phi, backend))
    avg = average_fidelity(kind, settings, direction, p, u, nodes, backend)
    return FidelityReport(direction, point, avg, nodes)
