"""Figures of merit: negativity, teleportation fidelity, quantum Fisher information."""

from .entanglement import negativity, negativity_ad, negativity_closed, negativity_dephasing
from .fidelities import (
    ad_fidelity_coefficients,
    sphere_average,
    FidelityReport,
    average_fidelity,
    fidelity,
    fidelity_closed,
    fidelity_field,
    fidelity_report,
)
from .qfi import QfiReport, bloch_curve, qfi_from_bloch, qfi_theta

__all__ = [
    "FidelityReport",
    "QfiReport",
    "ad_fidelity_coefficients",
    "average_fidelity",
    "bloch_curve",
    "fidelity",
    "fidelity_closed",
    "fidelity_field",
    "fidelity_report",
    "negativity",
    "negativity_ad",
    "negativity_closed",
    "negativity_dephasing",
    "qfi_from_bloch",
    "qfi_theta",
    "sphere_average",
]
