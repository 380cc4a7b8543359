"""Permutation construction from translators.

The core builder assembles F(x) = L(x) + L(gamma) h(f(x)) from a verified
translator witness; F permutes the field exactly when u -> u + b h(u)
permutes the subfield, which is what every recipe records alongside the
brute-force verdict.  Also here: binomial linear maps with their
closed-form permutation/involution predicates, complete-mapping checks,
and the complete trinomial family over GF(2^(3m)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BNotInSubfield,
    DomainMismatch,
    KTooSmall,
    LNotPermutation,
    NuInvalid,
    PreconditionFailed,
    WitnessInvalid,
)
from .field import Element, rel_trace
from .recipes import Recipe
from .tables import (
    FuncTable,
    LinearizedMap,
    from_indices,
    is_permutation,
    subfield_domain,
)
from .translators import QuadTraceParams, TranslatorWitness, f_from_spec, quad_trace_condition
from .errors import ConditionNotMet


def criterion_map(h: FuncTable, b: Element) -> FuncTable:
    """Table of u -> u + b*h(u) on h's own domain.

    Its bijectivity is the exact permutation criterion for the switching
    construction; b = 0 gives the identity regardless of h.
    """
    field = h.field
    if h.domain.kind == "subfield" and not field.subfield_view(h.domain.k).contains(b):
        raise BNotInSubfield(f"b must lie in GF({field.p}^{h.domain.k})")
    vals = field.add_idx(h.domain.indices,
                         field.mul_idx(np.int64(b.index), h.values))
    return FuncTable(field, vals, h.domain, h.codomain)


def _check_h(h: FuncTable, k):
    if h.domain.kind != "subfield" or h.domain.k != k:
        raise DomainMismatch(f"h must be a table on GF({h.field.p}^{k})")
    if not h.field.subfield_view(k).element_mask[h.values].all():
        raise DomainMismatch("h must map the subfield to itself")


def switch_table(L: LinearizedMap, gamma: Element, h: FuncTable, f: FuncTable):
    """Value table of F(x) = L(x) + L(gamma) h(f(x)) over the full field."""
    field = f.field
    hf = h.values[h.domain.pos[f.values]]
    lg = L.eval(gamma)
    return field.add_idx(L.eval_indices(field.all_indices()),
                         field.mul_idx(np.int64(lg.index), hf))


def switching_permutation(L: LinearizedMap, gamma: Element, h: FuncTable,
                          w: TranslatorWitness, f_spec=None):
    """F(x) = L(x) + L(gamma) h(f(x)) from a verified witness, plus its
    recipe.

    The recipe records both the brute-force permutation verdict and the
    predicted one from the subfield criterion; the two must agree, and
    catalog runs count any disagreement as a hard failure.
    """
    field = w.field
    k = w.k
    if gamma != w.gamma:
        raise WitnessInvalid("gamma differs from the witness")
    if L.field != field or L.k != k:
        raise WitnessInvalid("L is not GF(p^k)-linear over the witness field")
    if k <= 1 or field.n // k <= 1:
        raise KTooSmall("the switching construction needs r > 1 and k > 1")
    if not L.is_permutation():
        raise LNotPermutation("L must be a linear permutation")
    _check_h(h, k)

    vals = switch_table(L, gamma, h, w.f)
    table = FuncTable(field, vals)
    predicted = criterion_map(h, w.b).is_bijection()
    recipe = Recipe(
        family="switching",
        field_spec=field.spec_dict(),
        k=k,
        params={
            "L": L.coeff_indices(),
            "gamma": gamma.index,
            "h": h.to_list(),
            "f": f_spec if f_spec is not None else {"kind": "table", "values": w.f.to_list()},
        },
        verified={
            "is_permutation": is_permutation(table),
            "g_is_permutation": predicted,
        },
    )
    return table, recipe


def replay_switching(field, recipe: Recipe):
    p = recipe.params
    k = recipe.k
    f = f_from_spec(field, k, p["f"])
    gamma = field.from_index(p["gamma"])
    # the probe x = 0, u = 1 pins b; witness construction re-verifies it
    b = Element(field, field.sub_idx(int(f.values[gamma.index]), int(f.values[0])))
    w = TranslatorWitness(f, gamma, b, k)
    h = from_indices(field, np.asarray(p["h"], dtype=np.int64),
                     domain=subfield_domain(field, k),
                     codomain=subfield_domain(field, k))
    L = LinearizedMap(field, k, [field.from_index(i) for i in p["L"]])
    table, fresh = switching_permutation(L, gamma, h, w, f_spec=p["f"])
    return table, fresh.verified, {}


# ---------------------------------------------------------------------------
# binomial linear maps on GF(p^(2k))
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearBinomial:
    """L(x) = a x + b x^(p^k) on GF(p^(2k)) with closed-form predicates.

    Permutation: (a b^-1)^(p^k + 1) != 1, i.e. a/b avoids the norm-one
    subgroup.  Involution: T(a) = 0 and b^(p^k + 1) = 1 - a^2.
    """

    a: Element
    b: Element
    k: int
    map: LinearizedMap
    predicted_permutation: bool
    predicted_involution: bool


def linear_binomial(a: Element, b: Element, k: int) -> LinearBinomial:
    field = a.field
    if field.n != 2 * k:
        raise PreconditionFailed("binomial linear maps need n = 2k")
    if a.index == 0 or b.index == 0:
        raise PreconditionFailed("a and b must be nonzero")
    pk = field.p**k
    ratio_norm = (a / b) ** (pk + 1)
    is_perm = ratio_norm != field.one()
    one_minus_a2 = field.one() - a * a
    is_invol = rel_trace(a, k).is_zero() and b ** (pk + 1) == one_minus_a2
    return LinearBinomial(a, b, k, LinearizedMap(field, k, [a, b]), is_perm, is_invol)


# ---------------------------------------------------------------------------
# complete mappings
# ---------------------------------------------------------------------------

def is_b_complete(h: FuncTable, b: Element) -> bool:
    """h is complete w.r.t. b: both h and u -> u + b h(u) are bijective."""
    return h.is_bijection() and criterion_map(h, b).is_bijection()


def complete_b_values(h: FuncTable):
    """All b making u -> u + b h(u) bijective, found by brute force."""
    field = h.field
    dom = h.domain
    out = []
    for idx in dom.indices:
        if criterion_map(h, Element(field, int(idx))).is_bijection():
            out.append(Element(field, int(idx)))
    return out


def complete_trinomial(field, nu: Element):
    """h(x) = x^(2^2m + 1) + x^(2^m + 1) + nu x over GF(2^(3m)), complete
    with respect to every b in GF(2^m) outside {0, nu^(-1)}.

    Returns (h, guaranteed_b) with nu restricted to GF(2^m) minus {0, 1}.
    """
    if field.p != 2 or field.n % 3 != 0:
        raise PreconditionFailed("needs a field GF(2^(3m))")
    m = field.n // 3
    sub = field.subfield_view(m)
    if not sub.contains(nu) or nu.index == 0 or nu == field.one():
        raise NuInvalid("nu must lie in GF(2^m) minus {0, 1}")
    x = field.all_indices()
    vals = field.add_idx(
        field.add_idx(field.pow_vec(x, 2**(2 * m) + 1), field.pow_vec(x, 2**m + 1)),
        field.mul_idx(np.int64(nu.index), x),
    )
    h = FuncTable(field, vals)
    nu_inv = nu.inverse()
    guaranteed = [Element(field, int(i)) for i in sub.element_indices
                  if i != 0 and int(i) != nu_inv.index]
    return h, guaranteed


def replay_trinomial(field, recipe: Recipe):
    nu = field.from_index(recipe.params["nu"])
    h, guaranteed = complete_trinomial(field, nu)
    verified = {
        "is_permutation": h.is_bijection(),
        "g_is_permutation": all(is_b_complete(h, b) for b in guaranteed),
    }
    return h, verified, {"guaranteed_b": [b.index for b in guaranteed]}


# ---------------------------------------------------------------------------
# the quadratic trace switching family (p = 2)
# ---------------------------------------------------------------------------

def quad_trace_switching(beta: Element, gamma: Element, s_idx: int, l: int,
                         k: int, L: LinearizedMap, h: FuncTable):
    """F = L(x) + L(gamma) h(T^n_k(beta x^(2^(sk-1) + 2^((s+l)k-1)))).

    gamma must satisfy the quadratic trace condition; the exponent offset
    i = s k - 1 makes u^(2 p^i) collapse to u, so gamma is a translator for
    b = T^n_k(beta gamma^(2^i + 2^j)) and the subfield criterion applies.
    """
    field = beta.field
    if field.p != 2:
        raise PreconditionFailed("this family lives in characteristic 2")
    r = field.n // k
    if not 0 < s_idx <= r:
        raise PreconditionFailed(f"needs 0 < s <= r = {r}")
    params = QuadTraceParams(field, beta, s_idx * k - 1, l, k)
    if not quad_trace_condition(params, gamma):
        raise ConditionNotMet("gamma does not satisfy the quadratic trace condition")
    b = rel_trace(beta * gamma**params.exponent(), k)
    w = TranslatorWitness(params.f_table(), gamma, b, k)
    f_spec = {"kind": "quad", "beta": beta.index, "i": params.i, "l": l}
    table, recipe = switching_permutation(L, gamma, h, w, f_spec=f_spec)
    recipe.family = "quad-trace"
    recipe.params.update({"beta": beta.index, "s_idx": s_idx, "l": l})
    return table, recipe


def replay_quad_trace(field, recipe: Recipe):
    p = recipe.params
    beta = field.from_index(p["beta"])
    gamma = field.from_index(p["gamma"])
    h = from_indices(field, np.asarray(p["h"], dtype=np.int64),
                     domain=subfield_domain(field, recipe.k),
                     codomain=subfield_domain(field, recipe.k))
    L = LinearizedMap(field, recipe.k, [field.from_index(i) for i in p["L"]])
    table, fresh = quad_trace_switching(beta, gamma, p["s_idx"], p["l"], recipe.k, L, h)
    return table, fresh.verified, {}
