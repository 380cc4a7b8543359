"""Exhaustive function tables and the brute-force oracles.

Every map between (subsets of) a field is represented by its full value
table in enumeration order; permutation, involution and balancedness are
decided by exhaustive checks against these tables.  Each criterion
implemented elsewhere in the package is differentially tested against
these oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainMismatch, CodomainViolation, ZeroLambda
from .field import Element, Field


class Domain:
    """A table domain: the full field, a subfield, or a trace-kernel subspace."""

    def __init__(self, field, kind, k, indices):
        self.field = field
        self.kind = kind
        self.k = k
        indices = np.ascontiguousarray(indices, dtype=np.int64)
        indices.setflags(write=False)
        self.indices = indices
        pos = np.full(field.q, -1, dtype=np.int64)
        pos[indices] = np.arange(len(indices), dtype=np.int64)
        pos.setflags(write=False)
        self.pos = pos

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        return (isinstance(other, Domain)
                and self.field == other.field
                and self.kind == other.kind
                and self.k == other.k)

    def __hash__(self):
        return hash((self.kind, self.k, self.field.p, self.field.n))

    def contains(self, index):
        return bool(self.pos[index] >= 0)

    def elements(self):
        for i in self.indices:
            yield Element(self.field, int(i))

    def __repr__(self):
        if self.kind == "full":
            return f"{self.field!r}"
        if self.kind == "subfield":
            return f"GF({self.field.p}^{self.k})"
        return f"ker T^{self.field.n}_{self.k}"


def full_domain(field):
    return Domain(field, "full", field.n, field.all_indices())


def subfield_domain(field, k):
    return Domain(field, "subfield", k, field.subfield_view(k).element_indices)


def kernel_domain(field, k):
    return Domain(field, "kernel", k, field.subfield_view(k).kernel_indices)


class FuncTable:
    """A map stored as its exhaustive value table, positions in domain order.

    `values[i]` is the field index of the image of the i-th domain element.
    Tables are immutable once built.
    """

    def __init__(self, field: Field, values, domain=None, codomain=None):
        self.field = field
        self.domain = domain if domain is not None else full_domain(field)
        self.codomain = codomain if codomain is not None else full_domain(field)
        values = np.ascontiguousarray(values, dtype=np.int64)
        if len(values) != len(self.domain):
            raise DomainMismatch(
                f"table length {len(values)} != domain size {len(self.domain)}")
        values.setflags(write=False)
        self.values = values

    def __call__(self, x: Element) -> Element:
        pos = int(self.domain.pos[x.index])
        if pos < 0:
            raise DomainMismatch(f"{x!r} outside table domain")
        return Element(self.field, int(self.values[pos]))

    def __eq__(self, other):
        return (isinstance(other, FuncTable)
                and self.field == other.field
                and self.domain == other.domain
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.values.tobytes()))

    def __len__(self):
        return len(self.values)

    def is_bijection(self):
        """True iff the table maps its domain one-to-one onto its codomain."""
        if len(self.domain) != len(self.codomain):
            return False
        positions = self.codomain.pos[self.values]
        return self.field.kern.is_bijection(positions, len(self.codomain))

    def to_list(self):
        return self.values.tolist()

    def __repr__(self):
        return f"<table {self.domain!r} -> {self.codomain!r}, {len(self)} entries>"


def tabulate(field, fn, domain=None, codomain=None):
    """Exhaustive table of `fn` over the domain, in enumeration order.

    Raises CodomainViolation as soon as an output leaves the declared
    codomain.
    """
    domain = domain if domain is not None else full_domain(field)
    codomain = codomain if codomain is not None else full_domain(field)
    values = np.empty(len(domain), dtype=np.int64)
    check = codomain.kind != "full"
    for pos, x in enumerate(domain.elements()):
        y = fn(x)
        if y.field != field:
            raise CodomainViolation("callback returned element of another field")
        if check and not codomain.contains(y.index):
            raise CodomainViolation(f"f({x!r}) = {y!r} escapes {codomain!r}")
        values[pos] = y.index
    return FuncTable(field, values, domain, codomain)


def from_indices(field, values, domain=None, codomain=None):
    """Table from raw index values, validating codomain membership."""
    domain = domain if domain is not None else full_domain(field)
    codomain = codomain if codomain is not None else full_domain(field)
    values = np.ascontiguousarray(values, dtype=np.int64)
    if codomain.kind != "full" and np.any(codomain.pos[values] < 0):
        raise CodomainViolation(f"values escape {codomain!r}")
    return FuncTable(field, values, domain, codomain)


def identity_table(field):
    return FuncTable(field, field.all_indices())


def constant_table(field, c: Element, domain=None):
    domain = domain if domain is not None else full_domain(field)
    return FuncTable(field, np.full(len(domain), c.index, dtype=np.int64), domain)


def tabulate_poly(field, coeffs):
    """Full-field table of a dense polynomial given by Element coefficients."""
    x = field.all_indices()
    acc = np.zeros(field.q, dtype=np.int64)
    for c in reversed(list(coeffs)):
        acc = field.add_idx(field.mul_idx(acc, x), np.full(field.q, c.index, dtype=np.int64))
    return FuncTable(field, acc)


def power_table(field, d, codomain=None):
    """Table of x -> x^d (0^0 = 1)."""
    vals = field.pow_vec(field.all_indices(), d)
    return from_indices(field, vals, codomain=codomain)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def is_permutation(table: FuncTable) -> bool:
    """Brute-force bijectivity over the full field."""
    if table.domain.kind != "full" or table.codomain.kind != "full":
        raise DomainMismatch("permutation oracle needs a full-field table")
    return table.field.kern.is_bijection(table.values, table.field.q)


def compose(f: FuncTable, g: FuncTable) -> FuncTable:
    """(f o g)(x) = f(g(x)); g's values must land inside f's domain."""
    if f.field != g.field:
        raise DomainMismatch("tables over different fields")
    positions = f.domain.pos[g.values]
    if np.any(positions < 0):
        raise DomainMismatch("inner table's values leave outer table's domain")
    return FuncTable(f.field, f.values[positions], g.domain, f.codomain)


def t_fold(f: FuncTable, t: int) -> FuncTable:
    """f composed with itself t times, t >= 1."""
    if t < 1:
        raise ValueError("t must be >= 1")
    out = f
    for _ in range(t - 1):
        out = compose(f, out)
    return out


def is_involution(f: FuncTable) -> bool:
    """True iff f(f(x)) = x for every x in the full field."""
    if f.domain.kind != "full":
        raise DomainMismatch("involution oracle needs a full-field table")
    return f.field.kern.is_involution(f.values)


@dataclass(frozen=True)
class SpectrumRow:
    """Exact residue counts of Tr(lambda * F(x)).

    The character sum with a p-th root of unity vanishes exactly when all
    residue counts are equal, so balancedness is decided over the integers;
    no complex arithmetic is ever involved.
    """

    lam: Element
    counts: tuple

    @property
    def balanced(self):
        return min(self.counts) == max(self.counts)

    def signed_sum(self):
        """counts[0] - counts[1]: the +/-1 character sum (p = 2 only)."""
        if len(self.counts) != 2:
            raise ValueError("signed_sum is defined for p = 2")
        return self.counts[0] - self.counts[1]


def component_spectrum(f: FuncTable, lam: Element) -> SpectrumRow:
    if lam.index == 0:
        raise ZeroLambda("component functions need lambda != 0")
    if f.domain.kind != "full":
        raise DomainMismatch("spectrum oracle needs a full-field table")
    field = f.field
    counts = field.kern.component_counts(f.values, lam.index, field.trace_int_table())
    return SpectrumRow(lam, tuple(int(c) for c in counts))


def all_components_balanced(f: FuncTable) -> bool:
    """Exhaustive balancedness of every component function (lambda != 0)."""
    field = f.field
    return field.kern.balanced_all(f.values, field.trace_int_table())


# ---------------------------------------------------------------------------
# linearized maps
# ---------------------------------------------------------------------------

class LinearizedMap:
    """L(x) = sum_i c_i x^(p^(k i)): a GF(p^k)-linear map given by its
    coefficients c_0 .. c_{r-1} in the parent field."""

    def __init__(self, field, k, coeffs):
        field._require_divisor(k)
        self.field = field
        self.k = int(k)
        self.coeffs = tuple(coeffs)
        for c in self.coeffs:
            if not isinstance(c, Element) or c.field != field:
                raise DomainMismatch("coefficients must be elements of the parent field")
        if len(self.coeffs) > field.n // k:
            raise DomainMismatch("too many coefficients for the given k")

    @classmethod
    def identity(cls, field, k=1):
        return cls(field, k, [field.one()])

    def eval_indices(self, x):
        """Vectorized evaluation over an index array."""
        f = self.field
        acc = np.zeros(np.shape(x), dtype=np.int64)
        for i, c in enumerate(self.coeffs):
            if c.index == 0:
                continue
            xi = f.frob_map((self.k * i) % f.n)[x]
            acc = f.add_idx(acc, f.mul_idx(np.asarray(xi), np.int64(c.index)))
        return acc

    def eval(self, x: Element) -> Element:
        return Element(self.field, int(self.eval_indices(np.asarray([x.index]))[0]))

    def as_table(self) -> FuncTable:
        return FuncTable(self.field, self.eval_indices(self.field.all_indices()))

    def is_permutation(self) -> bool:
        """Kernel test: an additive map is bijective iff its only root is 0."""
        vals = self.eval_indices(self.field.all_indices())
        return int(np.count_nonzero(vals == 0)) == 1

    def inverse_table(self) -> FuncTable:
        vals = self.eval_indices(self.field.all_indices())
        if not self.field.kern.is_bijection(vals, self.field.q):
            raise DomainMismatch("cannot invert a non-bijective linearized map")
        inv = np.empty(self.field.q, dtype=np.int64)
        inv[vals] = self.field.all_indices()
        return FuncTable(self.field, inv)

    def coeff_indices(self):
        return [c.index for c in self.coeffs]

    def __repr__(self):
        return f"<linearized map, k={self.k}, {len(self.coeffs)} coefficients>"
