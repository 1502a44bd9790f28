"""Exact matrix-factorization traces and Grothendieck residues."""

try:
    # installed wheel: the extension lives inside the package
    from ._mfcy import (  # noqa: F401
        MfcyBudgetError,
        MfcyParseError,
        MfcyValidationError,
        groebner,
        milnor_number,
        normalize_poly,
        quotient_basis,
        residue,
        run_problem,
        verify,
    )
except ImportError:
    # in-tree build: the extension sits next to the package on PYTHONPATH
    from _mfcy import (  # noqa: F401
        MfcyBudgetError,
        MfcyParseError,
        MfcyValidationError,
        groebner,
        milnor_number,
        normalize_poly,
        quotient_basis,
        residue,
        run_problem,
        verify,
    )

__all__ = [
    "MfcyBudgetError",
    "MfcyParseError",
    "MfcyValidationError",
    "groebner",
    "milnor_number",
    "normalize_poly",
    "quotient_basis",
    "residue",
    "run_problem",
    "verify",
]
