"""Linear stability of pipe Poiseuille flow (Python front end of the C++ core)."""

from ._pipestab import (
    InputError,
    NumericalError,
    bd_spectrum,
    char_roots,
    grid,
    optimal_growth,
    pencil,
    phi0_from_C,
    refine,
    spectrum,
    stokes_omega_i,
    validate_table1,
)

__all__ = [
    "InputError",
    "NumericalError",
    "bd_spectrum",
    "char_roots",
    "grid",
    "optimal_growth",
    "pencil",
    "phi0_from_C",
    "refine",
    "spectrum",
    "stokes_omega_i",
    "validate_table1",
]
