"""
Invariant suite behind ``bqt-sim validate``.

Each check returns a :class:`CheckResult`. Checks marked ``informational``
tabulate known disagreements between the closed forms and the oracle; they
always pass and exist so the numbers are visible in the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import constants as C
from .bqt import (
    A_TO_B,
    B_TO_A,
    CLOSED_FORM,
    DIRECTIONS,
    ORACLE,
    PureQubit,
    make_settings,
    resource_state,
    teleportation_map,
)
from .metrics import negativity, negativity_closed, qfi_theta
from .noise import AMPLITUDE_DAMPING, CHANNEL_KINDS, DEPHASING, ADTimeModel, DephasingTimeModel, make_channel
from .qmath import hermitian_eigenvalues

CLAIMED_REVIVAL_PERIOD = 9 * math.pi


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    informational: bool = False

    def line(self) -> str:
        tag = "INFO" if self.informational else ("PASS" if self.passed else "FAIL")
        return f"[{tag}] {self.name}: {self.detail}"


def _grid(n: int) -> np.ndarray:
    return np.linspace(0.0, 1.0, n)


def check_negativity_grid(n: int = 21) -> CheckResult:
    worst = 0.0
    for kind in CHANNEL_KINDS:
        for p in _grid(n):
            for u in _grid(n):
                err = abs(negativity(resource_state(kind, p, u)) - negativity_closed(kind, p, u))
                worst = max(worst, err)
    return CheckResult("negativity closed form vs spectrum", worst <= 1e-10, f"max error {worst:.2e} on {n}x{n} grid")


def check_cptp(n: int = 21) -> CheckResult:
    worst_c, worst_eig = 0.0, 0.0
    for kind in CHANNEL_KINDS:
        for p in _grid(n):
            for u in _grid(n):
                worst_c = max(worst_c, *make_channel(kind, p, u).completeness())
                worst_eig = min(worst_eig, hermitian_eigenvalues(resource_state(kind, p, u))[0])
    ok = worst_c <= 1e-12 and worst_eig >= -C.PSD_TOL
    return CheckResult("CPTP and resource PSD", ok, f"completeness {worst_c:.2e}, min eigenvalue {worst_eig:.2e}")


def check_ideal_identity(samples: int = 100, seed: int = 1) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        state = PureQubit(math.acos(rng.uniform(-1, 1)), rng.uniform(0, 2 * math.pi))
        for backend in (CLOSED_FORM, ORACLE):
            for direction in DIRECTIONS:
                R, c = teleportation_map(backend, DEPHASING, 0.0, 0.0, direction)
                worst = max(worst, float(np.max(np.abs(R @ state.bloch + c - state.bloch))))
    return CheckResult("ideal teleportation identity", worst <= 1e-12, f"max Bloch error {worst:.2e} over {samples} inputs")


def dephasing_scaling_table(n: int = 21) -> list[tuple[float, float, float, float, float]]:
    """Rows ``(p, u, N, oracle transverse, oracle longitudinal)``."""
    rows = []
    for p in _grid(n):
        for u in _grid(n):
            R, _ = teleportation_map(ORACLE, DEPHASING, float(p), float(u))
            rows.append((float(p), float(u), negativity_closed(DEPHASING, p, u), R[0, 0], R[2, 2]))
    return rows


def check_dephasing_scaling(n: int = 21) -> list[CheckResult]:
    rows = dephasing_scaling_table(n)
    err_t = max(abs(r[3] - r[2]) for r in rows)
    err_z = max(abs(r[4] - 1.0) for r in rows)
    ratios = [math.sqrt(r[2]) / r[2] for r in rows if r[2] > 1e-12]
    return [
        CheckResult("oracle dephasing scaling", err_t <= 1e-10 and err_z <= 1e-10, f"transverse vs N {err_t:.2e}, longitudinal vs 1 {err_z:.2e}"),
        CheckResult(
            "closed-form/oracle transverse ratio sqrt(N)/N",
            True,
            f"ranges over [{min(ratios):.4g}, {max(ratios):.4g}] on the grid (1 only at N = 1)",
            informational=True,
        ),
    ]


def check_ad_offset(n: int = 11) -> CheckResult:
    worst_z, worst_t = 0.0, 0.0
    for p in _grid(n):
        for u in _grid(n):
            Ro, co = teleportation_map(ORACLE, AMPLITUDE_DAMPING, float(p), float(u))
            Rc, cc = teleportation_map(CLOSED_FORM, AMPLITUDE_DAMPING, float(p), float(u))
            worst_t = max(worst_t, abs(Ro[0, 0] - Rc[0, 0]))
            # sharp-point z: closed form sits p below the oracle
            zo = Ro[2, 2] + co[2]
            zc = Rc[2, 2] + cc[2]
            worst_z = max(worst_z, abs(zo - zc - p))
    return CheckResult(
        "amplitude damping closed form vs oracle",
        True,
        f"transverse max diff {worst_t:.2e}; z offset minus p max {worst_z:.2e}",
        informational=True,
    )


def check_continuity() -> CheckResult:
    eps = 1e-9
    worst = 0.0
    for t in (0.5, 2.0, 7.0):
        ref = DephasingTimeModel(0.25).coherence(t)
        for tau in (0.25 - eps, 0.25 + eps):
            worst = max(worst, abs(DephasingTimeModel(tau).coherence(t) - ref))
        ref = ADTimeModel(1.0, 2.0).survival_amplitude(t)
        for w in (2.0 - eps, 2.0 + eps):
            worst = max(worst, abs(ADTimeModel(1.0, w).survival_amplitude(t) - ref))
    return CheckResult("regime boundary continuity", worst <= 1e-6, f"max jump {worst:.2e} at tau = 1/4 and gamma = Gamma/2")


def check_qfi_derivative(points: int = 20, seed: int = 2) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for kind in CHANNEL_KINDS:
        done = 0
        while done < points:
            s = make_settings(*rng.uniform(0.1, math.pi - 0.1, 4) * np.array([1, 2, 1, 2]), *rng.uniform(0, math.pi, 2))
            p, u = rng.uniform(0, 0.9, 2)
            direction = A_TO_B if done % 2 == 0 else B_TO_A
            try:
                a = qfi_theta(CLOSED_FORM, kind, s, direction, p, u).value
                f = qfi_theta(CLOSED_FORM, kind, s, direction, p, u, method="finite-difference").value
            except ValueError:
                continue
            worst = max(worst, abs(a - f) / max(abs(a), 1e-12))
            done += 1
    return CheckResult("QFI analytic vs finite difference", worst <= 1e-6, f"max relative error {worst:.2e}")


def revival_peaks(spectral_width: float = 0.1, gamma: float = 1.0, t_max: float = 20 * math.pi, steps: int = 20001):
    """Local maxima ``(t, N)`` of the u = 0 amplitude-damping negativity."""
    model = ADTimeModel(gamma, spectral_width)
    ts = np.linspace(0.0, t_max, steps)
    ns = np.array([negativity_closed(AMPLITUDE_DAMPING, model.p(t), 0.0) for t in ts])
    idx = [i for i in range(1, steps - 1) if ns[i] > ns[i - 1] and ns[i] >= ns[i + 1]]
    return [(float(ts[i]), float(ns[i])) for i in idx]


def check_revival_period() -> CheckResult:
    peaks = revival_peaks()
    d = ADTimeModel(1.0, 0.1).frequency
    expected = 2 * math.pi / d
    period = float(np.mean(np.diff([t for t, _ in peaks]))) if len(peaks) > 1 else float("nan")
    return CheckResult(
        "amplitude damping revival period",
        True,
        f"{len(peaks)} maxima, period {period:.4f} = {period / math.pi:.3f} pi "
        f"(2 pi/d = {expected:.4f}; claimed 9 pi = {CLAIMED_REVIVAL_PERIOD:.4f})",
        informational=True,
    )


def run_checks() -> list[CheckResult]:
    results = [check_negativity_grid(), check_cptp(), check_ideal_identity()]
    results += check_dephasing_scaling()
    results += [check_ad_offset(), check_continuity(), check_qfi_derivative(), check_revival_period()]
    return results
