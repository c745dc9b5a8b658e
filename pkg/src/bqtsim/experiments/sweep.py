"""Time sweeps over (model parameter, u, t)."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..bqt import A_TO_B, B_TO_A, CLOSED_FORM, resource_state
from ..errors import BQTError
from ..metrics import average_fidelity, negativity, negativity_closed, qfi_theta
from ..noise import ADTimeModel, DEPHASING, DephasingTimeModel
from .config import SweepSpec

log = logging.getLogger(__name__)


class SweepPointError(BQTError):
    """A module error raised while evaluating one (t, u) point."""

    def __init__(self, t: float, u: float, param: float, cause: Exception):
        super().__init__(f"at t={t!r}, u={u!r}, param={param!r}: {type(cause).__name__}: {cause}")
        self.t, self.u, self.param = t, u, param


@dataclass(frozen=True)
class ResultTable:
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows])

    def where(self, **eq) -> "ResultTable":
        idx = {k: self.columns.index(k) for k in eq}
        rows = tuple(r for r in self.rows if all(r[idx[k]] == v for k, v in eq.items()))
        return ResultTable(self.columns, rows)


def param_columns(spec: SweepSpec) -> tuple[str, ...]:
    return ("tau",) if spec.channel == DEPHASING else ("gamma", "spectral_width")


def table_columns(spec: SweepSpec) -> tuple[str, ...]:
    return ("t", "u", "t_star") + param_columns(spec) + tuple(spec.outputs)


def time_model(spec: SweepSpec, param: float):
    if spec.channel == DEPHASING:
        return DephasingTimeModel(param)
    return ADTimeModel(spec.gamma, param)


def compute_row(spec: SweepSpec, param: float, u: float, t: float) -> tuple[float, ...]:
    try:
        model = time_model(spec, param)
        p = model.p(t)
        if spec.channel != DEPHASING and log.isEnabledFor(logging.DEBUG):
            g2 = model.survival_amplitude(t) ** 2
            log.debug("t=%r u=%r: damping p = 1 - G^2 = %r (G^2 = %r)", t, u, p, g2)
        values = []
        for out in spec.outputs:
            values.append(_output(spec, out, p, u))
    except BQTError as exc:
        raise SweepPointError(t, u, param, exc) from exc
    params = (param,) if spec.channel == DEPHASING else (spec.gamma, param)
    return (t, u, t / math.pi) + params + tuple(values)


def _output(spec: SweepSpec, name: str, p: float, u: float) -> float:
    kind, s, backend = spec.channel, spec.settings, spec.backend
    if name == "p_of_t":
        return p
    if name == "negativity":
        if backend == CLOSED_FORM:
            return negativity_closed(kind, p, u)
        return negativity(resource_state(kind, p, u))
    if name.startswith("fidelity_avg_"):
        direction = A_TO_B if name.endswith("A2B") else B_TO_A
        return average_fidelity(kind, s, direction, p, u, spec.nodes, backend)
    direction = A_TO_B if name == "qfi_thetaA" else B_TO_A
    return qfi_theta(backend, kind, s, direction, p, u).value


def _compute_chunk(args):
    spec, points = args
    return [compute_row(spec, *pt) for pt in points]


def run_sweep(spec: SweepSpec, workers: int = 1) -> ResultTable:
    """
    Evaluate every requested output on the (param, u, t) grid.

    Rows come back sorted by (u, param, t) whatever ``workers`` is, so the
    table is bit-identical between serial and parallel runs.
    """
    points = [(param, u, t) for u in spec.u_values for param in spec.model_params for t in spec.times()]
    if workers <= 1:
        rows = [compute_row(spec, *pt) for pt in points]
    else:
        size = max(1, math.ceil(len(points) / (4 * workers)))
        chunks = [(spec, points[i : i + size]) for i in range(0, len(points), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = [r for part in pool.map(_compute_chunk, chunks) for r in part]
    cols = table_columns(spec)
    iu, it = cols.index("u"), cols.index("t")
    ip = len(cols) - len(spec.outputs) - 1
    rows.sort(key=lambda r: (r[iu], r[ip], r[it]))
    return ResultTable(cols, tuple(rows))
