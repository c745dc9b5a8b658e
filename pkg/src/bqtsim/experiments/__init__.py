"""Parameter sweeps, figure presets and file output."""

from .config import OUTPUTS, SweepSpec, dump_config, parse_config
from .emit import EmptyTableError, emit_csv, emit_svg
from .presets import PRESETS, FigurePreset, get_preset, run_preset
from .sweep import ResultTable, SweepPointError, run_sweep

__all__ = [
    "OUTPUTS",
    "PRESETS",
    "EmptyTableError",
    "FigurePreset",
    "ResultTable",
    "SweepPointError",
    "SweepSpec",
    "dump_config",
    "emit_csv",
    "emit_svg",
    "get_preset",
    "parse_config",
    "run_preset",
    "run_sweep",
]
