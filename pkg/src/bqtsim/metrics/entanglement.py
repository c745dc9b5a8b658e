"""Negativity of two-qubit states, spectral and closed-form."""

from __future__ import annotations

import math

from ..noise import DEPHASING, check_channel_kind, check_unit_interval
from ..qmath import hermitian_eigenvalues, partial_transpose


def negativity(rho) -> float:
    """Twice the magnitude of the negative part of the partial-transpose spectrum."""
    evs = hermitian_eigenvalues(partial_transpose(rho, "B"))
    return 2.0 * sum(-e for e in evs if e < 0.0)


def negativity_dephasing(p: float, u: float) -> float:
    """Negativity ``1 - 4(1-u)(p - p^2)`` of the dephased Bell pair."""
    p = check_unit_interval("p", p)
    u = check_unit_interval("u", u)
    return 1.0 - 4.0 * (1.0 - u) * (p - p * p)


def negativity_ad(p: float, u: float) -> float:
    """Negativity ``(1-p)^2 (1-u) + u sqrt(1-p)`` of the amplitude-damped Bell pair."""
    p = check_unit_interval("p", p)
    u = check_unit_interval("u", u)
    return max(0.0, (1.0 - p) ** 2 * (1.0 - u) + u * math.sqrt(1.0 - p))


def negativity_closed(kind: str, p: float, u: float) -> float:
    if check_channel_kind(kind) == DEPHASING:
        return negativity_dephasing(p, u)
    return negativity_ad(p, u)
