"""Numerical tolerances shared by every module."""

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
BLOCH_TOL = 1e-10
COMPLETENESS_TOL = 1e-10

# asymmetry up to this size is absorbed by (h + h^dagger)/2 before eigensolving
HERMITIZE_TOL = 1e-10
JACOBI_OFFDIAG_TOL = 1e-13
JACOBI_MAX_SWEEPS = 60

# probabilities this far outside [0, 1] are clamped; anything larger is a bug
PROB_CLAMP_TOL = 1e-12

# |v| = 1 branch of the Bloch-form Fisher information
QFI_PURE_TOL = 1e-9

QUADRATURE_NODES = 64
QUADRATURE_DOUBLING_TOL = 1e-8
MIN_QUADRATURE_NODES = 8
