"""Exact arithmetic in GF(p^n): field construction, Frobenius maps,
relative traces and subfield / trace-kernel enumeration.

An element is a coefficient vector (c0, ..., c_{n-1}) over GF(p),
little-endian in powers of the modulus root.  Internally two integer
encodings are used:

* code  -- the vector packed in base p (c0 least significant);
* index -- the enumeration position: 0 is the zero element, index 1 + t
  is g^t for the fixed primitive element g.

Enumeration by generator powers makes multiplication, inversion and
powering pure index arithmetic; addition goes through the packed codes.
Fields are validated and immutable after construction; every operation
here is pure.
"""

from __future__ import annotations

import json

import numpy as np

from . import _kernels
from .errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    NotADivisor,
    NotPrime,
    ReducibleModulus,
)

SIZE_CAP = 1 << 20


def is_prime(m):
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def _prime_factors(m):
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over GF(p), used only during construction
# ---------------------------------------------------------------------------

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, mod, p):
    n = len(mod) - 1
    prod = [0] * (max(len(a) + len(b) - 1, 1))
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(len(prod) - 1, n - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(n):
                prod[i - n + j] = (prod[i - n + j] - c * mod[j]) % p
    return prod[:n] + [0] * (n - len(prod)) if len(prod) < n else prod[:n]


def _poly_powmod(a, e, mod, p):
    n = len(mod) - 1
    result = [1] + [0] * (n - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            if not a:
                break
            shift = len(a) - len(b)
            c = (a[-1] * inv_lead) % p
            for j in range(len(b)):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            _poly_trim(a)
        a, b = b, a
    return a


def _is_irreducible(mod, p):
    """Monic `mod` of degree n is irreducible over GF(p).

    Checks x^(p^n) == x mod `mod` and gcd(x^(p^d) - x, mod) = 1 for every
    proper divisor d of n; together these force a single degree-n factor.
    """
    n = len(mod) - 1
    if n == 1:
        return True
    x = [0, 1] + [0] * (n - 2)
    divisors = [d for d in range(1, n) if n % d == 0]
    cur = list(x)
    frob_powers = {}
    for d in range(1, n + 1):
        cur = _poly_powmod(cur, p, mod, p)
        if d in divisors:
            frob_powers[d] = list(cur)
    if _poly_trim([(c - xi) % p for c, xi in zip(cur, x)]):
        return False
    for d in divisors:
        diff = [(c - xi) % p for c, xi in zip(frob_powers[d], x)]
        g = _poly_gcd(diff, mod, p)
        if len(g) != 1:
            return False
    return True


def _smallest_irreducible(p, n):
    """Lexicographically smallest monic irreducible of degree n over GF(p),
    comparing coefficient vectors low-to-high (constant term first)."""
    counters = [0] * n
    while True:
        mod = counters + [1]
        if _is_irreducible(mod, p):
            return tuple(mod)
        for i in range(n - 1, -1, -1):
            counters[i] += 1
            if counters[i] < p:
                break
            counters[i] = 0
        else:
            raise RuntimeError("no irreducible polynomial found")


def _digits(code, p, n):
    out = []
    for _ in range(n):
        code, r = divmod(code, p)
        out.append(r)
    return out


class Field:
    """A validated GF(p^n) with a fixed modulus and primitive element.

    Do not call directly; use :func:`make_field`, which caches fields by
    (p, n, modulus).
    """

    def __init__(self, p, n, modulus, backend=None):
        self.p = int(p)
        self.n = int(n)
        self.q = self.p**self.n
        self.modulus = tuple(int(c) for c in modulus)
        self._backend = _kernels.get_backend(backend)

        g_code = self._find_generator()
        exp = self._backend.build_exp(self.p, self.n, list(self.modulus), _digits(g_code, self.p, self.n))
        self.code_of_index = np.concatenate(([0], exp)).astype(np.int64)
        index_of_code = np.empty(self.q, dtype=np.int64)
        index_of_code[self.code_of_index] = np.arange(self.q, dtype=np.int64)
        self.index_of_code = index_of_code
        self.kern = self._backend.FieldKernel(self.p, self.n, self.code_of_index, self.index_of_code)
        # index 0 is the zero element and index 1 + t is g^t, so g sits at
        # index 2 whenever the multiplicative group is nontrivial.
        self.generator = Element(self, 2 if self.q > 2 else 1)
        self._frob_maps = {}
        self._trace_tables = {}
        self._partial_traces = {}
        self._views = {}

    # -- construction helpers ----------------------------------------------

    def _find_generator(self):
        """Smallest packed code with multiplicative order q - 1."""
        p, n, q = self.p, self.n, self.q
        if q == 2:
            return 1
        cofactors = [(q - 1) // r for r in _prime_factors(q - 1)]
        one = [1] + [0] * (n - 1)
        mod = list(self.modulus)
        for code in range(1, q):
            cand = _digits(code, p, n)
            if all(_poly_powmod(cand, e, mod, p) != one for e in cofactors):
                return code
        raise RuntimeError("no primitive element found")

    # -- identity ------------------------------------------------------------

    def spec_dict(self):
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    def to_json(self):
        return json.dumps(self.spec_dict())

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Field)
                and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus))

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    # -- element constructors -------------------------------------------------

    def zero(self):
        return Element(self, 0)

    def one(self):
        return Element(self, 1)

    def from_index(self, i):
        i = int(i)
        if not 0 <= i < self.q:
            raise ValueError(f"index {i} out of range for {self!r}")
        return Element(self, i)

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.n and any(coeffs[self.n:]):
            raise ValueError("coefficient vector too long")
        code = 0
        for i, c in enumerate(coeffs[: self.n]):
            if not 0 <= c < self.p:
                raise ValueError("coefficient out of range")
            code += c * self.p**i
        return Element(self, int(self.index_of_code[code]))

    def from_int(self, value):
        """Constant: the image of a plain integer under GF(p) -> GF(p^n)."""
        return Element(self, int(self.index_of_code[value % self.p]))

    def elements(self):
        for i in range(self.q):
            yield Element(self, i)

    # -- index-space arithmetic (scalars are plain ints) ----------------------

    def add_idx(self, a, b):
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            return self.kern.add_scalar(int(a), int(b))
        return self.kern.add(a, b)

    def neg_idx(self, a):
        if isinstance(a, (int, np.integer)):
            return self.kern.neg_scalar(int(a))
        return self.kern.neg(a)

    def sub_idx(self, a, b):
        return self.add_idx(a, self.neg_idx(b))

    def mul_idx(self, a, b):
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            return self.kern.mul_scalar(int(a), int(b))
        return self.kern.mul(a, b)

    def inv_idx(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 + (self.q - 1 - (a - 1)) % (self.q - 1)

    def pow_idx(self, a, e):
        """a^e with the exponent reduced mod q-1 for nonzero a; 0^0 = 1."""
        e = int(e)
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("negative power of zero")
        return 1 + ((a - 1) * (e % (self.q - 1))) % (self.q - 1)

    def pow_vec(self, a, e):
        """Elementwise pow over an index array with the 0^0 = 1 convention."""
        a = np.asarray(a, dtype=np.int64)
        e = int(e)
        if e < 0 and np.any(a == 0):
            raise DivisionByZero("negative power of zero")
        em = e % (self.q - 1)
        out = 1 + ((a - 1) * em) % (self.q - 1)
        return np.where(a == 0, 0 if e != 0 else 1, out)

    def frob_map(self, j):
        """Cached index table of x -> x^(p^j)."""
        j = int(j) % self.n if self.n > 0 else 0
        tab = self._frob_maps.get(j)
        if tab is None:
            tab = self.kern.frobenius_map(j)
            tab.setflags(write=False)
            self._frob_maps[j] = tab
        return tab

    def all_indices(self):
        return np.arange(self.q, dtype=np.int64)

    # -- traces and subfields --------------------------------------------------

    def _require_divisor(self, k):
        if k < 1 or self.n % k != 0:
            raise NotADivisor(f"k={k} does not divide n={self.n}")

    def trace_table(self, k):
        """Index table of the relative trace onto GF(p^k)."""
        self._require_divisor(k)
        tab = self._trace_tables.get(k)
        if tab is None:
            r = self.n // k
            acc = self.all_indices()
            for i in range(1, r):
                acc = self.kern.add(acc, self.frob_map((k * i) % self.n))
            tab = acc
            tab.setflags(write=False)
            self._trace_tables[k] = tab
        return tab

    def partial_trace_table(self, k):
        """Index table of x -> x + x^p + ... + x^(p^(k-1)).

        Restricted to GF(p^k) this is the absolute trace of the subfield.
        """
        self._require_divisor(k)
        tab = self._partial_traces.get(k)
        if tab is None:
            acc = self.all_indices()
            for i in range(1, k):
                acc = self.kern.add(acc, self.frob_map(i))
            tab = acc
            tab.setflags(write=False)
            self._partial_traces[k] = tab
        return tab

    def trace_int_table(self):
        """Absolute trace per index, as integers in [0, p)."""
        return self.code_of_index[self.trace_table(1)]

    def subfield_view(self, k):
        self._require_divisor(k)
        view = self._views.get(k)
        if view is None:
            fixed = self.frob_map(k) == self.all_indices()
            elements = np.nonzero(fixed)[0].astype(np.int64)
            kernel = np.nonzero(self.trace_table(k) == 0)[0].astype(np.int64)
            view = SubfieldView(self, k, elements, kernel)
            self._views[k] = view
        return view


class Element:
    """One field element; equality is coefficient-vector equality."""

    __slots__ = ("field", "index")

    def __init__(self, field, index):
        self.field = field
        self.index = int(index)

    @property
    def coeffs(self):
        return tuple(_digits(int(self.field.code_of_index[self.index]), self.field.p, self.field.n))

    @property
    def code(self):
        return int(self.field.code_of_index[self.index])

    def is_zero(self):
        return self.index == 0

    def _match(self, other):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if self.field != other.field:
            raise FieldMismatch("operands from different fields")
        return other

    def __add__(self, other):
        other = self._match(other)
        return Element(self.field, self.field.add_idx(self.index, other.index))

    def __sub__(self, other):
        other = self._match(other)
        return Element(self.field, self.field.sub_idx(self.index, other.index))

    def __neg__(self):
        return Element(self.field, self.field.neg_idx(self.index))

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        other = self._match(other)
        return Element(self.field, self.field.mul_idx(self.index, other.index))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._match(other)
        if other.index == 0:
            raise DivisionByZero("division by zero element")
        return Element(self.field, self.field.mul_idx(self.index, self.field.inv_idx(other.index)))

    def __pow__(self, e):
        return Element(self.field, self.field.pow_idx(self.index, e))

    def inverse(self):
        return Element(self.field, self.field.inv_idx(self.index))

    def __eq__(self, other):
        return (isinstance(other, Element)
                and self.index == other.index
                and self.field == other.field)

    def __hash__(self):
        return hash((self.index, self.field.p, self.field.n, self.field.modulus))

    def poly_str(self, sym="a"):
        cs = self.coeffs
        terms = []
        for i in range(len(cs) - 1, -1, -1):
            c = cs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                coef = "" if c == 1 else str(c) + "*"
                terms.append(f"{coef}{sym}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"<{self.poly_str()}>"


class SubfieldView:
    """The subfield GF(p^k) inside GF(p^n) plus the kernel of its trace.

    `element_indices` are the p^k fixed points of x -> x^(p^k); the kernel
    holds the p^(n-k) solutions of the relative trace being zero.  Both are
    in enumeration order and immutable.
    """

    def __init__(self, parent, k, element_indices, kernel_indices):
        self.parent = parent
        self.k = int(k)
        element_indices.setflags(write=False)
        kernel_indices.setflags(write=False)
        self.element_indices = element_indices
        self.kernel_indices = kernel_indices
        mask = np.zeros(parent.q, dtype=bool)
        mask[element_indices] = True
        mask.setflags(write=False)
        self.element_mask = mask
        kmask = np.zeros(parent.q, dtype=bool)
        kmask[kernel_indices] = True
        kmask.setflags(write=False)
        self.kernel_mask = kmask

    @property
    def elements(self):
        return tuple(Element(self.parent, i) for i in self.element_indices)

    @property
    def kernel(self):
        return tuple(Element(self.parent, i) for i in self.kernel_indices)

    def contains(self, x):
        idx = x.index if isinstance(x, Element) else int(x)
        return bool(self.element_mask[idx])

    def kernel_contains(self, x):
        idx = x.index if isinstance(x, Element) else int(x)
        return bool(self.kernel_mask[idx])

    def __repr__(self):
        return f"<GF({self.parent.p}^{self.k}) in {self.parent!r}>"


# ---------------------------------------------------------------------------
# public constructors / operations
# ---------------------------------------------------------------------------

_FIELD_CACHE = {}


def make_field(p, n, modulus=None, *, allow_large=False, backend=None):
    """Validated GF(p^n).

    Without an explicit modulus the lexicographically smallest monic
    irreducible of degree n is selected (coefficients compared low-to-high),
    so fields are reproducible across runs.  Sizes above 2^20 are rejected
    unless allow_large is set: every oracle in this package is exhaustive.
    """
    p = int(p)
    n = int(n)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {n}")
    if p**n > SIZE_CAP and not allow_large:
        raise FieldTooLarge(f"p^n = {p**n} exceeds {SIZE_CAP}; pass allow_large=True")
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise DegreeMismatch(f"modulus must be monic of degree {n}")
        if any(not 0 <= c < p for c in modulus):
            raise DegreeMismatch("modulus coefficients out of range")
        if not _is_irreducible(list(modulus), p):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")
    else:
        modulus = _smallest_irreducible(p, n)

    key = (p, n, modulus, _kernels.get_backend(backend).BACKEND_NAME)
    field = _FIELD_CACHE.get(key)
    if field is None:
        field = Field(p, n, modulus, backend=backend)
        _FIELD_CACHE[key] = field
    return field


def field_from_spec(spec, **kwargs):
    """Rebuild a field from its JSON spec dict {"p", "n", "modulus"}."""
    return make_field(spec["p"], spec["n"], spec["modulus"], **kwargs)


def frobenius(x, j):
    """x^(p^j) for j >= 0; frobenius(x, n) == x."""
    if j < 0:
        raise ValueError("frobenius power must be >= 0")
    f = x.field
    return Element(f, f.pow_idx(x.index, pow(f.p, j, f.q - 1) if x.index else 1))


def rel_trace(x, k):
    """Relative trace of x onto GF(p^k); k must divide n."""
    f = x.field
    return Element(f, int(f.trace_table(k)[x.index]))


def subfield_view(field, k):
    return field.subfield_view(k)
