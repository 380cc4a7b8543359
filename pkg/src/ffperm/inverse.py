"""Repeated composition identities and explicit compositional inverses.

For F(x) = x + gamma h(f(x)) with a 0-translator gamma, the p-fold
composition is the identity and F^(-1) = F_(p-1); composing with a linear
permutation L keeps an explicit inverse.  For nonzero b, scaling h gives
involutions in odd characteristic.  Every inverse returned here is checked
two-sided against the composition oracle before it leaves the function.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    BNonzero,
    GammaConditionFailed,
    LambdaForbidden,
    PreconditionFailed,
)
from .field import Element, rel_trace
from .tables import FuncTable, LinearizedMap, compose, identity_table, is_permutation
from .translators import QuadTraceParams, TranslatorWitness
from .construct import switch_table


def translator_shift_table(w: TranslatorWitness, h: FuncTable,
                           L: LinearizedMap | None = None) -> FuncTable:
    """F(x) = L(x) + L(gamma) h(f(x)) as a table, L defaulting to the
    identity.  No r, k restrictions: this is the raw table, not the
    equivalence criterion."""
    field = w.field
    if L is None:
        L = LinearizedMap.identity(field, w.k)
    return FuncTable(field, switch_table(L, w.gamma, h, w.f))


def double_compose_check(w: TranslatorWitness, h: FuncTable) -> bool:
    """F composed with itself equals
    x + gamma h(f(x)) + gamma h(b h(f(x)) + f(x)), tabulated both ways."""
    field = w.field
    f = w.f
    hf = h.values[h.domain.pos[f.values]]
    g_hf = field.mul_idx(np.int64(w.gamma.index), hf)
    F = FuncTable(field, field.add_idx(field.all_indices(), g_hf))
    inner = field.add_idx(field.mul_idx(np.int64(w.b.index), hf), f.values)
    closed = field.add_idx(
        F.values,
        field.mul_idx(np.int64(w.gamma.index), h.values[h.domain.pos[inner]]),
    )
    from .tables import t_fold
    return np.array_equal(t_fold(F, 2).values, closed)


def inverse_zero_translator(w: TranslatorWitness, h: FuncTable,
                            L: LinearizedMap | None = None) -> FuncTable:
    """Compositional inverse of F(x) = L(x) + L(gamma) h(f(x)) when b = 0.

    F factors as L composed with G0(x) = x + gamma h(f(x)) whose inverse is
    x + (p-1) gamma h(f(x)); the returned table is G0^(-1) after L^(-1) and
    is verified two-sided before returning.
    """
    field = w.field
    if w.b.index != 0:
        raise BNonzero("the explicit inverse needs a 0-translator")
    if L is None:
        L = LinearizedMap.identity(field, w.k)
    f = w.f
    y = L.inverse_table().values
    hf_y = h.values[h.domain.pos[f.values[y]]]
    # (p - 1) gamma = -gamma
    neg_gamma = field.neg_idx(w.gamma.index)
    inv_vals = field.add_idx(y, field.mul_idx(np.int64(neg_gamma), hf_y))
    G = FuncTable(field, inv_vals)
    F = translator_shift_table(w, h, L)
    ident = identity_table(field)
    if compose(G, F) != ident or compose(F, G) != ident:
        raise RuntimeError("explicit inverse failed the composition oracle")
    return G


def odd_quad_trace_family(gamma: Element, i: int, l: int, k: int,
                          L: LinearizedMap | None, h: FuncTable):
    """Permutation F = L(x) + L(gamma) h(T^n_k(x^(p^i + p^(i+lk)))) for odd
    p together with its explicit inverse.

    gamma must satisfy gamma^(p^(2kl) - 1) = -1 and
    T^n_k(gamma^(1 + p^(lk))) = 0, which make it a 0-translator of the
    quadratic trace form.
    """
    field = gamma.field
    if field.p == 2:
        raise PreconditionFailed("this family needs odd characteristic")
    params = QuadTraceParams(field, field.one(), i, l, k)
    cond1 = gamma ** (field.p**(2 * k * l) - 1) == -field.one()
    cond2 = rel_trace(gamma ** (1 + field.p**(l * k)), k).is_zero()
    if not (cond1 and cond2):
        raise GammaConditionFailed(
            "gamma fails the power or trace condition for a 0-translator")
    w = TranslatorWitness(params.f_table(), gamma, field.zero(), k)
    F = translator_shift_table(w, h, L)
    F_inv = inverse_zero_translator(w, h, L)
    if not is_permutation(F):
        raise RuntimeError("constructed table failed the permutation oracle")
    return F, F_inv


def scaled_involution(w: TranslatorWitness, lam: Element) -> FuncTable:
    """F(x) = x + gamma lam f(x) for a b-translator with b != 0, odd p.

    Always a verified permutation for lam outside {0, -b^(-1)}; the choice
    lam = -2 b^(-1) makes F an involution.
    """
    field = w.field
    if field.p == 2:
        raise PreconditionFailed("needs odd characteristic")
    if w.b.index == 0:
        raise PreconditionFailed("needs a witness with b != 0")
    if not field.subfield_view(w.k).contains(lam) or lam.index == 0:
        raise PreconditionFailed(f"lambda must lie in GF({field.p}^{w.k})*")
    if lam == -(w.b.inverse()):
        raise LambdaForbidden("lambda = -b^(-1) degenerates the criterion map")
    coeff = field.mul_idx(w.gamma.index, lam.index)
    vals = field.add_idx(field.all_indices(),
                         field.mul_idx(np.int64(coeff), w.f.values))
    F = FuncTable(field, vals)
    if not is_permutation(F):
        raise RuntimeError("scaled construction failed the permutation oracle")
    return F
