"""ffperm: build permutation families of GF(p^n) from linear translators
and verify every claim with exhaustive exact-arithmetic oracles.

The package is organized around small fields where everything can be
checked by brute force: `field` holds the arithmetic, `tables` the
universal value-table representation and its oracles, `translators` the
search machinery, and `construct` / `inverse` / `special` the permutation
families with their criteria and explicit inverses.  `cli` exposes the
batch front end.
"""

from ._kernels import ACTIVE as _active_backend
from .field import Element, Field, SubfieldView, frobenius, make_field, rel_trace, subfield_view
from .tables import (
    FuncTable,
    LinearizedMap,
    SpectrumRow,
    all_components_balanced,
    component_spectrum,
    compose,
    identity_table,
    is_involution,
    is_permutation,
    t_fold,
    tabulate,
)
from .translators import (
    QuadTraceParams,
    TranslatorWitness,
    find_translators,
    is_translator,
    lucas_dominates,
)

__version__ = "0.1.0"

KERNEL_BACKEND = _active_backend.BACKEND_NAME

__all__ = [
    "Element", "Field", "SubfieldView", "frobenius", "make_field",
    "rel_trace", "subfield_view",
    "FuncTable", "LinearizedMap", "SpectrumRow", "all_components_balanced",
    "component_spectrum", "compose", "identity_table", "is_involution",
    "is_permutation", "t_fold", "tabulate",
    "QuadTraceParams", "TranslatorWitness", "find_translators",
    "is_translator", "lucas_dominates",
    "KERNEL_BACKEND", "__version__",
]
