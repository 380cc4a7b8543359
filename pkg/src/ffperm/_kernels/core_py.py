"""Pure-Python kernel backend (numpy for bulk work, no compiled code).

Elements of GF(p^n) are handled in two integer encodings:

* code  -- the coefficient vector packed in base p, c0 least significant;
* index -- the enumeration position: 0 for the zero element, 1 + t for g^t.

Multiplicative structure is plain arithmetic on indices; addition goes
through the packed codes.  The compiled backend in ``core_c.pyx`` exports
the same names with identical semantics.
"""

import numpy as np

BACKEND_NAME = "py"


def poly_mulmod(a, b, mod, p):
    """Product of two coefficient lists reduced mod (mod, p); mod is monic."""
    n = len(mod) - 1
    prod = [0] * (2 * n - 1 if n > 1 else 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for i in range(len(prod) - 1, n - 1, -1):
        c = prod[i] % p
        prod[i] = 0
        if c:
            for j in range(n):
                prod[i - n + j] -= c * mod[j]
    return [prod[i] % p for i in range(n)]


def build_exp(p, n, mod, g_digits):
    """Packed codes of g^0 .. g^(q-2), multiplying by g one step at a time."""
    q = p**n
    weights = [p**i for i in range(n)]
    cur = [1] + [0] * (n - 1)
    exp = np.empty(q - 1, dtype=np.int64)
    for t in range(q - 1):
        exp[t] = sum(c * w for c, w in zip(cur, weights))
        cur = poly_mulmod(cur, g_digits, mod, p)
    if cur != [1] + [0] * (n - 1):
        raise RuntimeError("generator power cycle did not close")
    return exp


class FieldKernel:
    """Index-space bulk operations for one field, backed by its code tables."""

    def __init__(self, p, n, code_of_index, index_of_code):
        self.p = int(p)
        self.n = int(n)
        self.q = int(p) ** int(n)
        self.code_of_index = np.ascontiguousarray(code_of_index, dtype=np.int64)
        self.index_of_code = np.ascontiguousarray(index_of_code, dtype=np.int64)
        self.minus_one = int(self.index_of_code[p - 1])
        self._all = np.arange(self.q, dtype=np.int64)

    # -- scalar helpers ----------------------------------------------------

    def add_scalar(self, a, b):
        ca = int(self.code_of_index[a])
        cb = int(self.code_of_index[b])
        p = self.p
        if p == 2:
            return int(self.index_of_code[ca ^ cb])
        out, w = 0, 1
        for _ in range(self.n):
            out += ((ca + cb) % p) * w
            ca //= p
            cb //= p
            w *= p
        return int(self.index_of_code[out])

    def mul_scalar(self, a, b):
        if a == 0 or b == 0:
            return 0
        return 1 + (a - 1 + b - 1) % (self.q - 1)

    def neg_scalar(self, a):
        return self.mul_scalar(a, self.minus_one)

    def sub_scalar(self, a, b):
        return self.add_scalar(a, self.neg_scalar(b))

    # -- vector ops --------------------------------------------------------

    def add(self, a, b):
        """Elementwise index-space addition; a, b broadcastable int64 arrays."""
        ca = self.code_of_index[a]
        cb = self.code_of_index[b]
        p = self.p
        if p == 2:
            return self.index_of_code[np.bitwise_xor(ca, cb)]
        out = np.zeros(np.broadcast(ca, cb).shape, dtype=np.int64)
        w = 1
        for _ in range(self.n):
            out += ((ca + cb) % p) * w
            ca = ca // p
            cb = cb // p
            w *= p
        return self.index_of_code[out]

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = 1 + (a + b - 2) % (self.q - 1)
        return np.where((a == 0) | (b == 0), 0, out)

    def neg(self, a):
        return self.mul(a, self.minus_one)

    # -- oracles -----------------------------------------------------------

    def is_bijection(self, positions, size):
        """True iff `positions` hits 0..size-1 exactly once each (-1 = miss)."""
        positions = np.asarray(positions)
        if positions.shape[0] != size or np.any(positions < 0):
            return False
        return bool(np.bincount(positions, minlength=size).max() == 1)

    def is_involution(self, values):
        values = np.asarray(values)
        return bool(np.array_equal(values[values], self._all))

    def verify_translator(self, f_vals, gamma, b, sub_nonzero):
        """Exhaustive check of f(x + u*gamma) - f(x) == u*b over all x, u != 0."""
        for u in sub_nonzero:
            u = int(u)
            shift = self.add(self._all, self.mul_scalar(u, gamma))
            rhs = self.add(f_vals, self.mul_scalar(u, b))
            if not np.array_equal(f_vals[shift], rhs):
                return False
        return True

    def translator_scan(self, f_vals, sub_nonzero):
        """All (gamma, b) passing verify_translator, gamma in index order.

        For fixed gamma only b = f(gamma) - f(0) can work (x = 0, u = 1).
        """
        f0 = int(f_vals[0])
        gammas, bs = [], []
        for gamma in range(1, self.q):
            b = self.sub_scalar(int(f_vals[gamma]), f0)
            if self.verify_translator(f_vals, gamma, b, sub_nonzero):
                gammas.append(gamma)
                bs.append(b)
        return (np.asarray(gammas, dtype=np.int64),
                np.asarray(bs, dtype=np.int64))

    def frobenius_map(self, j):
        """Index-space table of x -> x^(p^j)."""
        e = pow(self.p, j, self.q - 1)
        out = np.zeros(self.q, dtype=np.int64)
        idx = np.arange(1, self.q, dtype=np.int64)
        out[1:] = 1 + ((idx - 1) * e) % (self.q - 1)
        return out

    def add_table(self):
        """Cached q x q index-addition table (desk-scale fields only)."""
        if self.q > 2048:
            raise MemoryError("addition table is limited to q <= 2048")
        tab = getattr(self, "_add_table", None)
        if tab is None:
            tab = self.add(self._all[:, None], self._all[None, :])
            tab.setflags(write=False)
            self._add_table = tab
        return tab

    def binomial_sweep(self, k):
        """Permutation/involution flags of x -> a*x + b*x^(p^k), all a, b != 0.

        Returns two (q-1, q-1) bool arrays indexed by (a_index-1, b_index-1).
        The permutation test counts roots: an additive map is bijective iff
        its only root is 0.
        """
        q = self.q
        x = self._all
        xf = self.frobenius_map(k)
        addt = self.add_table()
        b_col = np.arange(1, q, dtype=np.int64)[:, None]
        bxf = self.mul(b_col, xf[None, :])
        perm = np.empty((q - 1, q - 1), dtype=bool)
        invol = np.empty((q - 1, q - 1), dtype=bool)
        for a in range(1, q):
            ax = self.mul(np.int64(a), x)
            lv = addt[ax[None, :], bxf]
            perm[a - 1] = (lv == 0).sum(axis=1) == 1
            invol[a - 1] = (np.take_along_axis(lv, lv, axis=1) == x).all(axis=1)
        return perm, invol

    def component_counts(self, f_vals, lam, tr1):
        """Residue counts of Tr(lam * F(x)) over the whole domain."""
        t = tr1[self.mul(np.int64(lam), f_vals)]
        return np.bincount(t, minlength=self.p).astype(np.int64)

    def balanced_all(self, f_vals, tr1):
        """True iff Tr(lam * F(x)) is balanced for every lam != 0."""
        target = self.q // self.p
        for lam in range(1, self.q):
            counts = self.component_counts(f_vals, lam, tr1)
            if counts.min() != target or counts.max() != target:
                return False
        return True
