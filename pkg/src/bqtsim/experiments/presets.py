"""Sweep presets reproducing the dephasing (fig2-fig5) and amplitude damping (fig6-fig9) figures."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from ..bqt import make_settings
from .config import OUTPUTS, SweepSpec, dump_config
from .emit import emit_csv, emit_svg
from .sweep import ResultTable, run_sweep

PI = math.pi
U_CURVES = (0.0, 0.3, 0.6, 0.9)
U_SURFACES = (0.0, 0.5)
SURFACE_OUTPUTS = ("p_of_t", "negativity")

# thetaA = thetaB = 0, trigger_A = 0, trigger_B = pi: Alice's payload is
# delivered with weight one, Bob's with weight zero
FIGURE_SETTINGS = make_settings(theta_a=0.0, theta_b=0.0, trigger_a=0.0, trigger_b=PI)


def _grid(lo: float, hi: float, n: int = 50) -> tuple[float, ...]:
    return tuple(float(x) for x in np.linspace(lo, hi, n))


@dataclass(frozen=True)
class FigurePreset:
    id: str
    spec: SweepSpec
    description: str


PRESETS: dict[str, FigurePreset] = {
    p.id: p
    for p in (
        FigurePreset(
            "fig2",
            SweepSpec("dephasing", U_SURFACES, (0.0, 10.0, 50), tau=_grid(0.005, 0.245), settings=FIGURE_SETTINGS, outputs=SURFACE_OUTPUTS),
            "dephasing negativity surface N(t, tau), Markovian tau < 1/4",
        ),
        FigurePreset(
            "fig3",
            SweepSpec("dephasing", U_CURVES, (0.0, 5 * PI, 400), tau=(0.1,), settings=FIGURE_SETTINGS, outputs=OUTPUTS),
            "dephasing curves at tau = 0.1 (Markovian)",
        ),
        FigurePreset(
            "fig4",
            SweepSpec("dephasing", U_SURFACES, (0.0, 10.0, 50), tau=_grid(0.3, 10.0), settings=FIGURE_SETTINGS, outputs=SURFACE_OUTPUTS),
            "dephasing negativity surface N(t, tau), non-Markovian tau > 1/4",
        ),
        FigurePreset(
            "fig5",
            SweepSpec("dephasing", U_CURVES, (0.0, 10 * PI, 800), tau=(7.0,), settings=FIGURE_SETTINGS, outputs=OUTPUTS),
            "dephasing curves at tau = 7 (non-Markovian)",
        ),
        FigurePreset(
            "fig6",
            SweepSpec("amplitude_damping", U_SURFACES, (0.0, 10.0, 50), spectral_width=_grid(2.2, 10.0), settings=FIGURE_SETTINGS, outputs=SURFACE_OUTPUTS),
            "amplitude damping negativity surface N(t, Gamma/gamma), weak coupling Gamma/gamma > 2",
        ),
        FigurePreset(
            "fig7",
            SweepSpec("amplitude_damping", U_CURVES, (0.0, 3 * PI, 300), spectral_width=(5.0,), settings=FIGURE_SETTINGS, outputs=OUTPUTS),
            "amplitude damping curves at Gamma = 5 gamma (Markovian)",
        ),
        FigurePreset(
            "fig8",
            SweepSpec("amplitude_damping", U_SURFACES, (0.0, 30.0, 50), spectral_width=_grid(0.01, 0.49), settings=FIGURE_SETTINGS, outputs=SURFACE_OUTPUTS),
            "amplitude damping negativity surface N(t, Gamma/gamma), Gamma/gamma < 1/2",
        ),
        FigurePreset(
            "fig9",
            SweepSpec("amplitude_damping", U_CURVES, (0.0, 20 * PI, 800), spectral_width=(0.1,), settings=FIGURE_SETTINGS, outputs=OUTPUTS),
            "amplitude damping curves at Gamma = 0.1 gamma (non-Markovian)",
        ),
    )
}


def get_preset(preset_id: str, backend: str | None = None, nodes: int | None = None) -> FigurePreset:
    try:
        preset = PRESETS[preset_id]
    except KeyError:
        raise KeyError(f"unknown preset {preset_id!r}; choose from {sorted(PRESETS)}") from None
    changes = {}
    if backend is not None:
        changes["backend"] = backend
    if nodes is not None:
        changes["nodes"] = nodes
    if changes:
        preset = replace(preset, spec=replace(preset.spec, **changes))
    return preset


def run_preset(preset_id: str, out_dir, backend: str | None = None, nodes: int | None = None, workers: int = 1) -> tuple[ResultTable, list[Path]]:
    """Run a preset and write ``<id>.csv``, ``<id>.cfg`` and one SVG per output column."""
    preset = get_preset(preset_id, backend, nodes)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    table = run_sweep(preset.spec, workers=workers)
    written = [out / f"{preset.id}.csv", out / f"{preset.id}.cfg"]
    emit_csv(table, written[0])
    written[1].write_text(dump_config(preset.spec), encoding="utf-8")
    for col in preset.spec.outputs:
        path = out / f"{preset.id}_{col}.svg"
        emit_svg(table, col, path)
        written.append(path)
    return table, written
