"""Quantum Fisher information of the teleported state with respect to the polar angle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import constants as C
from ..bqt import (
    A_TO_B,
    CLOSED_FORM,
    ProtocolSettings,
    check_direction,
    measurement_probability,
    overlap_probability,
    overlap_probability_dtheta,
    residual_state,
    teleportation_map,
)
from ..errors import BlochOutOfBall, SingularBloch

FD_STEP = 1e-5


@dataclass(frozen=True)
class QfiReport:
    parameter: str
    value: float
    derivative_method: str


def bloch_curve(backend, kind, settings: ProtocolSettings, direction, p, u, theta=None):
    """
    Received Bloch vector ``v`` and its derivative ``dv/dtheta`` of the sender's angle.

    ``theta`` defaults to the sender's configured angle and may lie slightly
    outside [0, pi] (used by finite differences).
    """
    state, trig = settings.sender(check_direction(direction))
    theta = state.theta if theta is None else float(theta)
    phi = state.phi
    m_recv = measurement_probability(*settings.receiver(direction))
    R, c = teleportation_map(backend, kind, p, u, direction)
    r0 = residual_state(kind, p, u)

    w = float(overlap_probability(theta, phi, trig.theta_tilde)) * (1.0 - m_recv)
    dw = float(overlap_probability_dtheta(theta, phi, trig.theta_tilde)) * (1.0 - m_recv)
    n = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    dn = np.array([np.cos(theta) * np.cos(phi), np.cos(theta) * np.sin(phi), -np.sin(theta)])
    delivered = R @ n + c
    v = w * delivered + (1.0 - w) * r0
    dv = dw * (delivered - r0) + w * (R @ dn)
    norm = float(np.linalg.norm(v))
    if norm > 1.0 + C.BLOCH_TOL:
        raise BlochOutOfBall(f"{backend} {kind}: |v| = {norm:.12g} at theta = {theta!r}")
    return v, dv


def bloch_derivative_fd(backend, kind, settings, direction, p, u, theta=None, step=FD_STEP):
    state, _ = settings.sender(direction)
    theta = state.theta if theta is None else float(theta)
    vp, _ = bloch_curve(backend, kind, settings, direction, p, u, theta + step)
    vm, _ = bloch_curve(backend, kind, settings, direction, p, u, theta - step)
    return (vp - vm) / (2.0 * step)


def qfi_from_bloch(v, dv) -> float:
    """
    Fisher information of the qubit family ``(I + v . sigma)/2``.

    ``|dv|^2 + (v . dv)^2 / (1 - |v|^2)`` for mixed states, ``|dv|^2`` on the
    sphere. Within ``QFI_PURE_TOL`` of the sphere the pure-state branch is
    taken, which requires the radial derivative to vanish as well.
    """
    v = np.asarray(v, dtype=float)
    dv = np.asarray(dv, dtype=float)
    slack = 1.0 - float(v @ v)
    radial = float(v @ dv)
    tangent = float(dv @ dv)
    if slack < C.QFI_PURE_TOL:
        if abs(radial) < C.QFI_PURE_TOL:
            return tangent
        raise SingularBloch(f"1 - |v|^2 = {slack:.3e} with v . dv = {radial:.3e}")
    return tangent + radial * radial / slack


def qfi_theta(backend, kind, settings: ProtocolSettings, direction=A_TO_B, p=0.0, u=0.0, method="analytic") -> QfiReport:
    """Fisher information of the sender's polar angle carried by the received state."""
    v, dv = bloch_curve(backend, kind, settings, direction, p, u)
    if method == "finite-difference":
        dv = bloch_derivative_fd(backend, kind, settings, direction, p, u)
    elif method != "analytic":
        raise ValueError(f"unknown derivative method {method!r}")
    param = "theta_A" if direction == A_TO_B else "theta_B"
    return QfiReport(param, qfi_from_bloch(v, dv), method)
