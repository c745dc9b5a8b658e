"""
Dense complex linear algebra for one- and two-qubit operators.

Matrices are plain ``numpy.ndarray`` objects of shape ``(d, d)`` with complex
dtype, ``d`` in {2, 4} (the teleportation oracle goes up to 8). Bloch vectors
are real arrays of shape ``(3,)``. Functions never modify their inputs.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from . import constants as C
from .errors import (
    BlochOutOfBall,
    CompletenessViolation,
    ConvergenceError,
    DimensionMismatch,
    InvalidDensityMatrix,
    NotHermitian,
)

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
PHI_MINUS = np.array([1, 0, 0, -1], dtype=complex) / math.sqrt(2)
PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2)
PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)


def dag(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


def ket_to_density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product ``a ⊗ b``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    # same result as np.kron for 2-D inputs, without its generic-shape overhead
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def _square(h, dims=None) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {h.shape}")
    if dims is not None and h.shape[0] not in dims:
        raise DimensionMismatch(f"expected dimension in {dims}, got {h.shape[0]}")
    return h


def hermitize(h) -> np.ndarray:
    """Return ``(h + h^dagger)/2``, refusing matrices that are visibly non-Hermitian."""
    h = _square(h)
    asym = float(np.max(np.abs(h - dag(h)))) if h.size else 0.0
    if asym > C.HERMITIZE_TOL:
        raise NotHermitian(f"max |h_ij - conj(h_ji)| = {asym:.3e}")
    return 0.5 * (h + dag(h))


def hermitian_eigenvalues(h) -> list[float]:
    """
    Eigenvalues of a small Hermitian matrix in ascending order.

    Cyclic complex Jacobi: each off-diagonal pair (p, q) is first rotated to a
    real entry by a diagonal phase and then annihilated by a real Givens
    rotation. Sweeps continue until the off-diagonal Frobenius norm drops
    below ``JACOBI_OFFDIAG_TOL`` (relative to ``max(1, ||h||_F)``).

    Raises
    ------
    NotHermitian
        If ``h`` differs from its adjoint by more than ``HERMITIZE_TOL``.
    """
    h = hermitize(h)
    n = h.shape[0]
    a = [[complex(h[i, j]) for j in range(n)] for i in range(n)]
    scale = max(1.0, math.sqrt(sum(abs(x) ** 2 for row in a for x in row)))
    tol = C.JACOBI_OFFDIAG_TOL * scale

    for _ in range(C.JACOBI_MAX_SWEEPS):
        off = math.sqrt(sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                b = abs(apq)
                if b < 1e-300:
                    continue
                phase = apq / b
                theta = (a[q][q].real - a[p][p].real) / (2.0 * b)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # V = diag(1, conj(phase)) @ [[c, s], [-s, c]] in the (p, q) plane
                vpp, vpq = c, s
                vqp, vqq = -s * phase.conjugate(), c * phase.conjugate()
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = akp * vpp + akq * vqp
                    a[k][q] = akp * vpq + akq * vqq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = vpp * apk + vqp.conjugate() * aqk
                    a[q][k] = vpq * apk + vqq.conjugate() * aqk
                a[p][q] = a[q][p] = 0j
                a[p][p] = complex(a[p][p].real, 0.0)
                a[q][q] = complex(a[q][q].real, 0.0)
    else:
        raise ConvergenceError("Jacobi sweeps did not converge")
    return sorted(a[i][i].real for i in range(n))


def check_density(rho, dims=(2, 4)) -> np.ndarray:
    """Validate a density matrix and return it as a complex array."""
    rho = _square(rho, dims)
    asym = float(np.max(np.abs(rho - dag(rho))))
    if asym > C.HERMITIAN_TOL:
        raise InvalidDensityMatrix(f"not Hermitian (asymmetry {asym:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > C.TRACE_TOL:
        raise InvalidDensityMatrix(f"trace {tr} != 1")
    lo = hermitian_eigenvalues(rho)[0]
    if lo < -C.PSD_TOL:
        raise InvalidDensityMatrix(f"negative eigenvalue {lo:.3e}")
    return rho


def completeness_error(kraus: Sequence[np.ndarray], weights: Sequence[float] | None = None) -> float:
    """Max-entry deviation of ``sum_i w_i K_i^dagger K_i`` from the identity."""
    ks = np.asarray(kraus, dtype=complex)
    w = np.ones(len(ks)) if weights is None else np.asarray(weights, dtype=float)
    acc = np.einsum("k,kji,kjl->il", w, ks.conj(), ks)
    return float(np.max(np.abs(acc - np.eye(ks.shape[1]))))


def apply_kraus(rho, kraus: Sequence[np.ndarray], weights: Sequence[float] | None = None) -> np.ndarray:
    """
    Apply the channel ``rho -> sum_i w_i K_i rho K_i^dagger``.

    Parameters
    ----------
    rho : ndarray
        Input density matrix.
    kraus : sequence of ndarray
        Operators ``K_i`` with the same dimension as ``rho``.
    weights : sequence of float, optional
        Nonnegative weights ``w_i``; all ones when omitted.

    Raises
    ------
    CompletenessViolation
        If ``sum_i w_i K_i^dagger K_i`` deviates from the identity by more
        than ``COMPLETENESS_TOL``.
    """
    rho = _square(rho)
    if weights is None:
        weights = [1.0] * len(kraus)
    if len(weights) != len(kraus):
        raise DimensionMismatch("weights and kraus lengths differ")
    if any(w < 0 for w in weights):
        raise CompletenessViolation("negative Kraus weight")
    for k in kraus:
        if np.shape(k) != rho.shape:
            raise DimensionMismatch(f"Kraus operator shape {np.shape(k)} vs state {rho.shape}")
    err = completeness_error(kraus, weights)
    if err > C.COMPLETENESS_TOL:
        raise CompletenessViolation(f"sum w K^dagger K deviates from I by {err:.3e}")
    return kraus_sum(rho, np.asarray(kraus, dtype=complex), np.asarray(weights, dtype=float))


def kraus_sum(rho: np.ndarray, ks: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """``sum_i w_i K_i rho K_i^dagger`` for a stacked ``(n, d, d)`` family, without checks."""
    kr = weights[:, None, None] * (ks @ rho)
    return np.einsum("kij,klj->il", kr, ks.conj())


def _check_subsystem(subsystem: str) -> str:
    s = subsystem.upper()
    if s not in ("A", "B"):
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return s


def partial_transpose(rho, subsystem: str = "B") -> np.ndarray:
    """Partial transpose of a two-qubit operator with respect to ``subsystem``."""
    rho = _square(rho, (4,))
    r = rho.reshape(2, 2, 2, 2)  # (a, b, a', b')
    if _check_subsystem(subsystem) == "A":
        r = r.transpose(2, 1, 0, 3)
    else:
        r = r.transpose(0, 3, 2, 1)
    return r.reshape(4, 4).copy()


def partial_trace(rho, subsystem: str) -> np.ndarray:
    """Trace out ``subsystem`` ('A' or 'B') and return the kept qubit's state."""
    rho = _square(rho, (4,))
    r = rho.reshape(2, 2, 2, 2)
    if _check_subsystem(subsystem) == "A":
        return np.einsum("abad->bd", r)
    return np.einsum("abcb->ac", r)


def bloch_from_density(rho) -> np.ndarray:
    """Bloch vector ``v_k = Tr(rho sigma_k)`` of a qubit state."""
    rho = _square(rho, (2,))
    return np.array([np.trace(rho @ s).real for s in PAULIS])


def density_from_bloch(v) -> np.ndarray:
    """Qubit state ``(I + v . sigma)/2``; rejects vectors outside the unit ball."""
    v = np.asarray(v, dtype=float).reshape(3)
    norm = float(np.linalg.norm(v))
    if norm > 1.0 + C.BLOCH_TOL:
        raise BlochOutOfBall(f"|v| = {norm:.12g} > 1")
    return 0.5 * (I2 + v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z)
