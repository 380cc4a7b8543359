"""Linear translator detection, exhaustive search, and the structural
filters that rule translators in or out for sparse polynomials.

A nonzero gamma is a b-translator of f: GF(p^n) -> GF(p^k) when
f(x + u*gamma) - f(x) = u*b for every x in the field and u in the
subfield.  Everything returned from this module is verified against that
definition by brute force; the algebraic filters only prune.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    BNotInSubfield,
    CodomainViolation,
    ConditionNotMet,
    DomainMismatch,
    GammaZero,
    NotADivisor,
)
from .field import Element, Field, rel_trace
from .tables import FuncTable, from_indices, subfield_domain


# ---------------------------------------------------------------------------
# common f builders
# ---------------------------------------------------------------------------

def trace_affine_table(field, k, beta, shift=None):
    """f(x) = T^n_k(beta * x) + shift, tabulated with subfield codomain."""
    tr = field.trace_table(k)
    vals = tr[field.mul_idx(field.all_indices(), np.int64(beta.index))]
    if shift is not None and shift.index != 0:
        vals = field.add_idx(vals, np.int64(shift.index))
    return from_indices(field, vals, codomain=subfield_domain(field, k))


def monomial_table(field, d, k):
    """f(x) = x^d with subfield codomain (raises if the image escapes)."""
    vals = field.pow_vec(field.all_indices(), d)
    return from_indices(field, vals, codomain=subfield_domain(field, k))


def binomial_table(field, beta, i, j, k):
    """f(x) = beta*x^i + x^j with subfield codomain."""
    x = field.all_indices()
    vals = field.add_idx(
        field.mul_idx(field.pow_vec(x, i), np.int64(beta.index)),
        field.pow_vec(x, j),
    )
    return from_indices(field, vals, codomain=subfield_domain(field, k))


def f_from_spec(field, k, spec):
    """Build a subfield-valued f from its serializable description.

    Kinds: trace {beta, shift}, monomial {d}, quad {beta, i, l},
    table {values}.  Element parameters are enumeration indices.
    """
    kind = spec["kind"]
    if kind == "trace":
        beta = field.from_index(spec.get("beta", 1))
        shift = field.from_index(spec["shift"]) if spec.get("shift") else None
        return trace_affine_table(field, k, beta, shift)
    if kind == "monomial":
        return monomial_table(field, spec["d"], k)
    if kind == "quad":
        params = QuadTraceParams(field, field.from_index(spec.get("beta", 1)),
                                 spec["i"], spec["l"], k)
        return params.f_table()
    if kind == "table":
        return from_indices(field, np.asarray(spec["values"], dtype=np.int64),
                            codomain=subfield_domain(field, k))
    raise ValueError(f"unknown f spec kind {kind!r}")


# ---------------------------------------------------------------------------
# the definition and the exhaustive search
# ---------------------------------------------------------------------------

def _check_f(f: FuncTable, k):
    if f.domain.kind != "full":
        raise DomainMismatch("translator checks need a full-field table")
    mask = f.field.subfield_view(k).element_mask
    if not mask[f.values].all():
        raise CodomainViolation(f"f does not map into GF({f.field.p}^{k})")


def is_translator(f: FuncTable, gamma: Element, b: Element, k: int) -> bool:
    """Exhaustive check of the translator identity over all (x, u) pairs."""
    field = f.field
    if gamma.index == 0:
        raise GammaZero("gamma must be nonzero")
    if not field.subfield_view(k).contains(b):
        raise BNotInSubfield(f"b must lie in GF({field.p}^{k})")
    _check_f(f, k)
    sub_nonzero = [int(i) for i in field.subfield_view(k).element_indices if i != 0]
    return field.kern.verify_translator(f.values, gamma.index, b.index, sub_nonzero)


@dataclass(frozen=True)
class TranslatorWitness:
    """A verified triple (f, gamma, b): construction re-runs the exhaustive
    check and refuses to produce an unverified witness."""

    f: FuncTable
    gamma: Element
    b: Element
    k: int

    def __post_init__(self):
        if not is_translator(self.f, self.gamma, self.b, self.k):
            raise ConditionNotMet(
                f"(gamma={self.gamma!r}, b={self.b!r}) is not a translator pair")

    @property
    def field(self):
        return self.f.field

    def to_dict(self, f_spec=None):
        return {
            "field": self.field.spec_dict(),
            "k": self.k,
            "f": f_spec if f_spec is not None else self.f.to_list(),
            "gamma": self.gamma.index,
            "b": self.b.index,
        }


def find_translators(f: FuncTable, k: int):
    """All translator pairs of f, gamma in enumeration order.

    For fixed gamma the probe x = 0, u = 1 pins the only possible
    b = f(gamma) - f(0); the kernel then verifies just that candidate.
    """
    field = f.field
    _check_f(f, k)
    sub_nonzero = [int(i) for i in field.subfield_view(k).element_indices if i != 0]
    gammas, bs = field.kern.translator_scan(f.values, sub_nonzero)
    return [
        TranslatorWitness(f, Element(field, int(g)), Element(field, int(b)), k)
        for g, b in zip(gammas, bs)
    ]


# ---------------------------------------------------------------------------
# Lucas machinery and the derivative coefficient formula
# ---------------------------------------------------------------------------

def lucas_dominates(t: int, d: int, p: int) -> bool:
    """True iff every base-p digit of t is <= the matching digit of d,
    equivalently binom(d, t) != 0 mod p."""
    if t < 0 or d < 0:
        raise ValueError("t and d must be >= 0")
    while t or d:
        if t % p > d % p:
            return False
        t //= p
        d //= p
    return True


def binom_mod(d: int, t: int, p: int) -> int:
    """binom(d, t) mod p by the digit product."""
    out = 1
    while (t or d) and out:
        td, dd = t % p, d % p
        if td > dd:
            return 0
        num, den = 1, 1
        for j in range(td):
            num = (num * (dd - j)) % p
            den = (den * (j + 1)) % p
        out = (out * num * pow(den, p - 2, p)) % p if td else out
        t //= p
        d //= p
    return out


def derivative_coefficients(field, coeffs, ugamma: Element):
    """Coefficients c_0 .. c_{q-2} of f(x + ugamma) - f(x) from the
    coefficients b_0 .. b_{q-1} of f.

    c_t = sum_{i=t+1}^{q-1} binom(i, t) (ugamma)^(i-t) b_i, with the
    binomials reduced mod p.  Sparse inputs may be shorter than q; they
    are zero-padded.
    """
    q, p = field.q, field.p
    b = [c.index for c in coeffs] + [0] * (q - len(coeffs))
    if len(b) > q:
        raise ValueError("coefficient vector longer than the field order")
    ug_pow = np.empty(q, dtype=np.int64)
    ug_pow[0] = 1
    for m in range(1, q):
        ug_pow[m] = field.mul_idx(int(ug_pow[m - 1]), ugamma.index)
    out = []
    for t in range(q - 1):
        acc = 0
        for i in range(t + 1, q):
            if b[i] == 0:
                continue
            c = binom_mod(i, t, p)
            if c == 0:
                continue
            term = field.mul_idx(int(ug_pow[i - t]), b[i])
            if c > 1:
                term = field.mul_idx(term, int(field.index_of_code[c]))
            acc = field.add_idx(acc, term)
        out.append(Element(field, acc))
    return out


# ---------------------------------------------------------------------------
# structural filters for sparse f
# ---------------------------------------------------------------------------

def subfield_monomial_exponents(p, n, k):
    """The exponents d with x^d mapping GF(p^n) into GF(p^k):
    d = j * (p^n - 1)/(p^k - 1) for j = 1 .. p^k - 1."""
    if k < 1 or n % k != 0:
        raise NotADivisor(f"k={k} does not divide n={n}")
    if n // k <= 1:
        raise ValueError("needs a proper subfield (n/k > 1)")
    step = (p**n - 1) // (p**k - 1)
    return [j * step for j in range(1, p**k)]


class BinomialClass(enum.Enum):
    TRACE_FORM = "trace_form"
    NO_TRANSLATOR = "no_translator"


def classify_binomial(field, beta: Element, i: int, j: int, k: int) -> BinomialClass:
    """Whether beta*x^i + x^j can have a translator: only the relative
    trace itself (n = 2k, beta = 1, exponents {1, p^k}) qualifies.

    The criterion addresses exponent pairs that are not both powers of p;
    p-power twists of the trace like x^(p^m) + x^(p^(m+k)) do admit
    0-translators and are deliberately left to the exhaustive search.
    """
    if i >= j:
        raise ValueError("needs i < j")
    if beta.index == 0:
        raise ValueError("beta must be nonzero")
    if (field.n == 2 * k and beta == field.one()
            and {i, j} == {1, field.p**k}):
        return BinomialClass.TRACE_FORM
    return BinomialClass.NO_TRANSLATOR


def p_weight(d: int, p: int) -> int:
    """Sum of the base-p digits of d."""
    w = 0
    while d:
        w += d % p
        d //= p
    return w


@dataclass(frozen=True)
class TraceMonomialForm:
    """Shape report for exponents passing the weight filter: weight 1 means
    d = p^j; weight 2 means d = p^j (1 + p^i)."""

    weight: int
    i: int | None = None
    j: int = 0


def trace_monomial_weight_filter(d: int, p: int, n: int):
    """Necessary shape for T^n_k(beta x^d) to admit a translator.

    Returns the admissible form, or None when the exponent is ruled out:
    base-p weight above 2, the doubled-power case d = 2 p^j, or the
    conjugate-pair case d = p^j (1 + p^(n/2)).
    """
    if not 1 <= d <= p**n - 1:
        raise ValueError("exponent out of range")
    digits = []
    dd = d
    pos = 0
    while dd:
        r = dd % p
        if r:
            digits.append((pos, r))
        dd //= p
        pos += 1
    weight = sum(r for _, r in digits)
    if weight > 2:
        return None
    if weight == 1:
        return TraceMonomialForm(weight=1, j=digits[0][0])
    if len(digits) == 1:
        # d = 2 p^j: the i = 0 case, always excluded
        return None
    (j1, _), (j2, _) = digits
    i = j2 - j1
    if n % 2 == 0 and i == n // 2:
        return None
    return TraceMonomialForm(weight=2, i=i, j=j1)


# ---------------------------------------------------------------------------
# quadratic trace monomials T^n_k(beta x^(p^i + p^j)), j = i + l k
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadTraceParams:
    """f(x) = T^n_k(beta x^(p^i + p^(i + l k))) with 0 < l < r = n/k."""

    fld: Field
    beta: Element
    i: int
    l: int
    k: int

    def __post_init__(self):
        r = self.fld.n // self.k
        if self.fld.n % self.k:
            raise NotADivisor(f"k={self.k} does not divide n={self.fld.n}")
        if not 0 < self.l < r:
            raise ValueError(f"needs 0 < l < r = {r}")
        if self.beta.index == 0:
            raise ValueError("beta must be nonzero")

    @property
    def r(self):
        return self.fld.n // self.k

    @property
    def j(self):
        return self.i + self.k * self.l

    def exponent(self):
        p = self.fld.p
        return p**self.i + p**self.j

    def f_table(self) -> FuncTable:
        f = self.fld
        tr = f.trace_table(self.k)
        vals = tr[f.mul_idx(f.pow_vec(f.all_indices(), self.exponent()),
                            np.int64(self.beta.index))]
        return from_indices(f, vals, codomain=subfield_domain(f, self.k))


def quad_trace_condition(params: QuadTraceParams, gamma: Element) -> bool:
    """The x-independence condition
    beta * gamma^(p^(i+lk)) + beta^(p^((r-l)k)) * gamma^(p^(i+(r-l)k)) == 0."""
    if gamma.index == 0:
        raise GammaZero("gamma must be nonzero")
    f = params.fld
    p, i, l, k, r = f.p, params.i, params.l, params.k, params.r
    lhs = f.add_idx(
        f.mul_idx(params.beta.index, f.pow_idx(gamma.index, p**(i + l * k))),
        f.mul_idx(f.pow_idx(params.beta.index, p**((r - l) * k)),
                  f.pow_idx(gamma.index, p**(i + (r - l) * k))),
    )
    return lhs == 0


def quad_trace_translator(params: QuadTraceParams, gamma: Element):
    """The verified translator pair for gamma, or None.

    Once the condition holds the derivative collapses to
    u^(2 p^i) * T^n_k(beta gamma^(p^i + p^j)); that is u*b for all u only
    when the trace term vanishes (b = 0) or, for p = 2 with i = s k - 1,
    when u^(2 p^i) = u (b = the trace term).
    """
    if not quad_trace_condition(params, gamma):
        raise ConditionNotMet("gamma does not satisfy the quadratic trace condition")
    f = params.fld
    t = rel_trace(params.beta * gamma**params.exponent(), params.k)
    if t.index == 0:
        b = f.zero()
    elif f.p == 2 and (params.i + 1) % params.k == 0:
        b = t
    else:
        return None
    return TranslatorWitness(params.f_table(), gamma, b, params.k)
