"""The family F(x) = L(x) + (x^(p^k) +- x + delta)^s over GF(p^(2k)).

Bijectivity of F reduces to a map on p^k points: in characteristic 2 to
y -> y + (y+delta)^s + (y+delta)^(2^k s) on the subfield, in odd
characteristic to G(y) = -L(y) + (y+delta)^s - (y+delta)^(p^k s) on the
trace-zero subspace S.  The same coset split yields exact component-sum
identities, kept here as integer residue counts.  Both reductions are
instances of the AGW criterion specialized to x -> x^(p^k) - x, exposed
as :func:`agw_reduction`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DeltaNotInS,
    HNotSubfieldValued,
    ImageEscapesS,
    InvariantViolation,
    PreconditionFailed,
    RhoNotInSubfield,
    ZeroLambda,
)
from .field import Element, Field, rel_trace
from .recipes import Recipe
from .tables import (
    FuncTable,
    LinearizedMap,
    component_spectrum,
    compose,
    from_indices,
    identity_table,
    is_involution,
    is_permutation,
    kernel_domain,
    subfield_domain,
    t_fold,
)
from .translators import TranslatorWitness
from .inverse import inverse_zero_translator, translator_shift_table
from .construct import criterion_map


@dataclass(frozen=True)
class SpecialRecipe:
    """Parameters of F(x) = L(x) + (x^(p^k) sign x + delta)^s with n = 2k.

    L must have coefficients in GF(p^k): that is what lets bijectivity drop
    to the subfield / trace-zero subspace.  Exponentiation follows the
    table convention: s reduced mod p^n - 1 on nonzero bases, 0^s = 0 for
    s > 0 and 0^0 = 1.
    """

    fld: Field
    k: int
    delta: Element
    s: int
    sign: str = "minus"
    L: LinearizedMap | None = None

    def __post_init__(self):
        if self.fld.n != 2 * self.k:
            raise InvariantViolation("needs n = 2k")
        if self.sign not in ("plus", "minus"):
            raise InvariantViolation("sign must be 'plus' or 'minus'")
        if not 0 <= self.s <= self.fld.q - 2:
            raise InvariantViolation(f"s must lie in [0, {self.fld.q - 2}]")
        if self.delta.field != self.fld:
            raise InvariantViolation("delta must belong to the field")
        if self.L is not None:
            sub = self.fld.subfield_view(self.k)
            if self.L.k != self.k or any(not sub.contains(c) for c in self.L.coeffs):
                raise InvariantViolation("L must have coefficients in GF(p^k)")

    def linear_part(self):
        return self.L if self.L is not None else LinearizedMap.identity(self.fld, self.k)

    def inner_values(self):
        """Index table of x^(p^k) sign x + delta."""
        f = self.fld
        x = f.all_indices()
        fx = f.frob_map(self.k)[x]
        base = f.add_idx(fx, x) if self.sign == "plus" else f.sub_idx(fx, x)
        return f.add_idx(base, np.int64(self.delta.index))

    def to_dict(self, verified=None):
        d = {
            "family": "special",
            "sign": self.sign,
            "field": self.fld.spec_dict(),
            "k": self.k,
            "delta": self.delta.index,
            "s": self.s,
            "L": self.linear_part().coeff_indices(),
        }
        if verified is not None:
            d["verified"] = verified
        return d


def build_special(recipe: SpecialRecipe) -> FuncTable:
    """Exhaustive table of F; replaying a recipe is bit-identical."""
    f = recipe.fld
    vals = f.add_idx(recipe.linear_part().eval_indices(f.all_indices()),
                     f.pow_vec(recipe.inner_values(), recipe.s))
    return FuncTable(f, vals)


# ---------------------------------------------------------------------------
# characteristic 2: reduction to the subfield
# ---------------------------------------------------------------------------

def char2_criterion_map(delta: Element, s: int, k: int) -> FuncTable:
    """g(y) = y + (y+delta)^s + (y+delta)^(2^k s) on GF(2^k).

    The two power terms add up to T^(2k)_k((y+delta)^s), so g does map the
    subfield to itself for any delta in the big field.
    """
    f = delta.field
    if f.p != 2 or f.n != 2 * k:
        raise PreconditionFailed("needs characteristic 2 and n = 2k")
    dom = subfield_domain(f, k)
    t = f.add_idx(dom.indices, np.int64(delta.index))
    a = f.pow_vec(t, s)
    vals = f.add_idx(dom.indices, f.add_idx(a, f.frob_map(k)[a]))
    return from_indices(f, vals, domain=dom, codomain=dom)


def char2_permutation_criterion(delta: Element, s: int, k: int) -> bool:
    """Predicted permutation verdict for F(x) = x + (x + x^(2^k) + delta)^s."""
    return char2_criterion_map(delta, s, k).is_bijection()


def char2_spectrum_identity(delta: Element, s: int, k: int, lam: Element):
    """Component sum data for F(x) = x + (x + x^(2^k) + delta)^s.

    Returns (row, rhs): the exact residue counts of Tr(lam F(x)), and for
    lam in GF(2^k)* the predicted signed sum 2^k * sum_y (-1)^(T^k_1(lam g(y)))
    (None when lam is outside the subfield, where the row must be balanced).
    """
    if lam.index == 0:
        raise ZeroLambda("lambda must be nonzero")
    f = delta.field
    F = build_special(SpecialRecipe(f, k, delta, s))
    row = component_spectrum(F, lam)
    if not f.subfield_view(k).contains(lam):
        return row, None
    g = char2_criterion_map(delta, s, k)
    prods = f.mul_idx(np.int64(lam.index), g.values)
    t = f.code_of_index[f.partial_trace_table(k)[prods]]
    rhs = (2**k) * int(np.sum(1 - 2 * t))
    return row, rhs


# ---------------------------------------------------------------------------
# odd characteristic: reduction to the trace-zero subspace S
# ---------------------------------------------------------------------------

def kernel_criterion_map(L: LinearizedMap | None, delta: Element, s: int, k: int) -> FuncTable:
    """G(y) = -L(y) + (y+delta)^s - (y+delta)^(p^k s) restricted to S.

    The image provably stays inside S; if it ever escaped that would be an
    implementation bug, reported as ImageEscapesS.
    """
    f = delta.field
    if f.p == 2:
        raise PreconditionFailed("the subspace reduction is for odd p")
    if f.n != 2 * k:
        raise PreconditionFailed("needs n = 2k")
    if L is None:
        L = LinearizedMap.identity(f, k)
    sub = f.subfield_view(k)
    if L.k != k or any(not sub.contains(c) for c in L.coeffs):
        raise PreconditionFailed("L must have coefficients in GF(p^k)")
    dom = kernel_domain(f, k)
    y = dom.indices
    a = f.pow_vec(f.add_idx(y, np.int64(delta.index)), s)
    vals = f.add_idx(f.neg_idx(L.eval_indices(y)), f.sub_idx(a, f.frob_map(k)[a]))
    if not f.subfield_view(k).kernel_mask[vals].all():
        raise ImageEscapesS("reduction image left the trace-zero subspace")
    return FuncTable(f, vals, dom, dom)


def oddp_permutation_criterion(L: LinearizedMap | None, delta: Element, s: int, k: int) -> bool:
    """Predicted permutation verdict for F(x) = L(x) + (x^(p^k)-x+delta)^s."""
    return kernel_criterion_map(L, delta, s, k).is_bijection()


def oddp_spectrum_identity(L: LinearizedMap | None, delta: Element, s: int,
                           k: int, lam: Element):
    """Component residue counts for F = L(x) + (x^(p^k)-x+delta)^s, odd p.

    Returns (row, rhs_counts): for lam with nonzero relative trace the row
    must be balanced and rhs_counts is None; for trace-zero lam != 0 the
    exact identity row.counts == p^k * rhs_counts holds, where rhs_counts
    are the residue counts of T^k_1(lam G(y)) over the subspace S.  All
    integer arithmetic: the character sum vanishes iff the counts are flat.
    """
    if lam.index == 0:
        raise ZeroLambda("lambda must be nonzero")
    f = delta.field
    F = build_special(SpecialRecipe(f, k, delta, s, "minus", L))
    row = component_spectrum(F, lam)
    if not rel_trace(lam, k).is_zero():
        return row, None
    G = kernel_criterion_map(L, delta, s, k)
    prods = f.mul_idx(np.int64(lam.index), G.values)  # lands in GF(p^k)
    t = f.code_of_index[f.partial_trace_table(k)[prods]]
    rhs = np.bincount(t, minlength=f.p).astype(np.int64)
    return row, tuple(int(c) for c in rhs)


def even_power_inverse(delta: Element, s: int, k: int) -> FuncTable:
    """F_(p-1) as the inverse of F(x) = x + (x^(p^k)-x+delta)^s for even s
    and trace-zero delta; verified two-sided before returning."""
    f = delta.field
    if f.p == 2 or s % 2 != 0:
        raise PreconditionFailed("needs odd p and even s")
    if not rel_trace(delta, k).is_zero():
        raise PreconditionFailed("delta must have zero relative trace")
    F = build_special(SpecialRecipe(f, k, delta, s))
    inv = t_fold(F, f.p - 1)
    ident = identity_table(f)
    if compose(inv, F) != ident or compose(F, inv) != ident:
        raise RuntimeError("F_(p-1) failed the composition oracle")
    return inv


def scaled_kernel_power_check(rho: Element, ell: int, delta: Element, k: int) -> bool:
    """Permutation criterion for F(x) = rho x + (x^(p^k)-x+delta)^(ell(p^k-1)+1).

    For delta in S the inner power collapses to (+-1)(y + delta) on S, so F
    permutes the field iff y -> (rho - 2(-1)^ell) y is a bijection of S.
    The reduction needs rho inside GF(p^k): outside it the subspace is not
    preserved and the criterion provably fails against the oracle.
    """
    f = rho.field
    if f.p == 2:
        raise PreconditionFailed("needs odd characteristic")
    if not 1 <= ell <= f.p**k:
        raise PreconditionFailed(f"needs 1 <= ell <= {f.p ** k}")
    view = f.subfield_view(k)
    if not view.kernel_contains(delta) or delta.index == 0:
        raise DeltaNotInS("delta must lie in S minus {0}")
    if rho.index == 0 or not view.contains(rho):
        raise RhoNotInSubfield("rho must lie in GF(p^k)*")
    c = rho - f.from_int(2 * (-1) ** ell)
    mapped = f.mul_idx(np.int64(c.index), view.kernel_indices)
    dom = kernel_domain(f, k)
    return f.kern.is_bijection(dom.pos[mapped], len(dom))


def scaled_kernel_power_table(rho: Element, ell: int, delta: Element, k: int) -> FuncTable:
    """The table of F(x) = rho x + (x^(p^k)-x+delta)^(ell(p^k-1)+1)."""
    f = rho.field
    s = ell * (f.p**k - 1) + 1
    recipe = SpecialRecipe(f, k, delta, s, "minus", LinearizedMap(f, k, [rho]))
    return build_special(recipe)


# ---------------------------------------------------------------------------
# the plus-sign family F(x) = L(gamma) (x^(p^k)+x+delta)^s + L(x)
# ---------------------------------------------------------------------------

@dataclass
class PlusPowerResult:
    table: FuncTable
    recipe: Recipe
    inverse: FuncTable | None
    inverse_recipe: Recipe | None = None


def plus_power_family(gamma: Element, delta: Element, s: int,
                      L: LinearizedMap | None = None) -> PlusPowerResult:
    """F built from f(x) = x^(p^k) + x + delta with subfield delta.

    gamma is automatically a b-translator of f for b = gamma^(p^k) + gamma.
    With b = 0 the function permutes for every s and the explicit inverse
    x + (p-1) gamma f(x)^s is attached; otherwise the recipe records the
    u -> u + b u^s criterion verdict.
    """
    f = gamma.field
    if f.n % 2 != 0:
        raise PreconditionFailed("needs n = 2k")
    k = f.n // 2
    sub = f.subfield_view(k)
    if not sub.contains(delta):
        raise PreconditionFailed("delta must lie in GF(p^k)")
    if L is None:
        L = LinearizedMap.identity(f, k)

    x = f.all_indices()
    f_vals = f.add_idx(f.add_idx(f.frob_map(k)[x], x), np.int64(delta.index))
    f_table = from_indices(f, f_vals, codomain=subfield_domain(f, k))
    dom = subfield_domain(f, k)
    h = from_indices(f, f.pow_vec(dom.indices, s), domain=dom, codomain=dom)
    b = gamma ** (f.p**k) + gamma
    w = TranslatorWitness(f_table, gamma, b, k)

    table = translator_shift_table(w, h, L)
    predicted = criterion_map(h, b).is_bijection()
    inverse = inverse_zero_translator(w, h, L) if b.is_zero() else None
    recipe = Recipe(
        family="plus-power",
        field_spec=f.spec_dict(),
        k=k,
        params={"gamma": gamma.index, "delta": delta.index, "s": s,
                "L": L.coeff_indices()},
        verified={
            "is_permutation": is_permutation(table),
            "g_is_permutation": predicted,
            "inverse_verified": inverse is not None,
        },
    )
    inverse_recipe = None
    if inverse is not None:
        # with b = 0 the inverse is the same family at (p-1) gamma = -gamma,
        # composed with L^(-1) on the outside; for identity L that is a
        # standalone plus-power recipe tagged with the content id it inverts
        from .recipes import table_digest
        if L.coeff_indices() == [1]:
            inverse_recipe = Recipe(
                family="plus-power",
                field_spec=f.spec_dict(),
                k=k,
                params={"gamma": (-gamma).index, "delta": delta.index, "s": s,
                        "L": L.coeff_indices()},
                verified={"is_permutation": True, "g_is_permutation": True,
                          "inverse_verified": True},
                inverse_of=table_digest(table),
            )
    return PlusPowerResult(table, recipe, inverse, inverse_recipe)


# ---------------------------------------------------------------------------
# the AGW specialization x -> x^(p^k) - x
# ---------------------------------------------------------------------------

def agw_reduction(L_sub: LinearizedMap, g: FuncTable, h: FuncTable) -> bool:
    """Shared permutation verdict of x -> h(x^(p^k)-x) L(x) + g(x^(p^k)-x)
    and of y -> h(y) L(y) + g(y)^(p^k) - g(y) on S.

    Both sides are evaluated by brute force; they agree whenever the
    preconditions hold (L in GF(p^k)[x] with nonzero coefficient sum, h
    nonzero-subfield-valued on S), so a disagreement raises RuntimeError.
    """
    f = L_sub.field
    k = L_sub.k
    sub = f.subfield_view(k)
    if any(not sub.contains(c) for c in L_sub.coeffs):
        raise PreconditionFailed("L must have coefficients in GF(p^k)")
    total = f.zero()
    for c in L_sub.coeffs:
        total = total + c
    if total.is_zero():
        raise PreconditionFailed("L must restrict to a permutation of GF(p^k)")
    kdom = kernel_domain(f, k)
    h_on_s = h.values[kdom.indices]
    if np.any(h_on_s == 0) or not sub.element_mask[h_on_s].all():
        raise HNotSubfieldValued("h must be nonzero subfield-valued on S")

    x = f.all_indices()
    phi = f.sub_idx(f.frob_map(k)[x], x)
    big = f.add_idx(f.mul_idx(h.values[phi], L_sub.eval_indices(x)), g.values[phi])
    lhs = f.kern.is_bijection(big, f.q)

    y = kdom.indices
    gy = g.values[y]
    psi = f.add_idx(f.mul_idx(h_on_s, L_sub.eval_indices(y)),
                    f.sub_idx(f.frob_map(k)[gy], gy))
    rhs_positions = kdom.pos[psi]
    rhs = f.kern.is_bijection(rhs_positions, len(kdom))
    if lhs != rhs:
        raise RuntimeError("the two sides of the reduction disagree")
    return lhs


# ---------------------------------------------------------------------------
# replay hooks
# ---------------------------------------------------------------------------

def special_from_dict(field, d) -> SpecialRecipe:
    L = LinearizedMap(field, d["k"], [field.from_index(i) for i in d["L"]])
    return SpecialRecipe(field, d["k"], field.from_index(d["delta"]),
                         d["s"], d["sign"], L)


def special_oracle_results(recipe: SpecialRecipe, table: FuncTable):
    """Oracle verdicts plus any applicable explicit-inverse verification."""
    f = recipe.fld
    perm = is_permutation(table)
    invol = is_involution(table)
    inverse_ok = None
    ident_L = recipe.L is None or recipe.linear_part().coeff_indices() == [1]
    if perm and ident_L:
        if f.p == 2:
            inverse_ok = invol
        elif recipe.s % 2 == 0 and rel_trace(recipe.delta, recipe.k).is_zero():
            inv = t_fold(table, f.p - 1)
            ident = identity_table(f)
            inverse_ok = compose(inv, table) == ident and compose(table, inv) == ident
    return {"is_permutation": perm, "is_involution": invol,
            "inverse_verified": inverse_ok}


def replay_special(field, d):
    recipe = special_from_dict(field, d)
    table = build_special(recipe)
    if field.p == 2:
        predicted = char2_permutation_criterion(recipe.delta, recipe.s, recipe.k)
    else:
        predicted = oddp_permutation_criterion(recipe.L, recipe.delta, recipe.s, recipe.k)
    verified = {"is_permutation": is_permutation(table), "g_is_permutation": predicted}
    return table, verified, {}


def replay_plus_power(field, d):
    p = d["params"]
    L = LinearizedMap(field, d["k"], [field.from_index(i) for i in p["L"]])
    res = plus_power_family(field.from_index(p["gamma"]),
                            field.from_index(p["delta"]), p["s"], L)
    return res.table, res.recipe.verified, {}


def replay_cr_spe(field, d):
    p = d["params"]
    rho = field.from_index(p["rho"])
    delta = field.from_index(p["delta"])
    table = scaled_kernel_power_table(rho, p["ell"], delta, d["k"])
    predicted = scaled_kernel_power_check(rho, p["ell"], delta, d["k"])
    verified = {"is_permutation": is_permutation(table), "g_is_permutation": predicted}
    return table, verified, {}
