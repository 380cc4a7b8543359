# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Same API and semantics as ``core_py``; the win is tight C loops with
early aborts in the oracles (translator scans, bijection checks,
binomial sweeps, balancedness sweeps) and in exp/log table construction.
"""

import numpy as np

BACKEND_NAME = "c"


def build_exp(int p, int n, mod, g_digits):
    """Packed codes of g^0 .. g^(q-2); multiply by g one step at a time."""
    cdef long long q = 1
    cdef int i, j
    for i in range(n):
        q *= p
    cdef const long long[::1] modv = np.ascontiguousarray(mod, dtype=np.int64)
    cdef const long long[::1] g = np.ascontiguousarray(g_digits, dtype=np.int64)
    out_np = np.empty(q - 1, dtype=np.int64)
    cdef long long[::1] out = out_np
    cdef long long[::1] cur = np.zeros(n, dtype=np.int64)
    cdef long long[::1] prod = np.zeros(2 * n, dtype=np.int64)
    cdef long long[::1] weights = np.empty(n, dtype=np.int64)
    cdef long long w = 1
    for i in range(n):
        weights[i] = w
        w *= p
    cur[0] = 1
    cdef long long t, code, c
    for t in range(q - 1):
        code = 0
        for i in range(n):
            code += cur[i] * weights[i]
        out[t] = code
        for i in range(2 * n):
            prod[i] = 0
        for i in range(n):
            if cur[i] != 0:
                for j in range(n):
                    prod[i + j] = (prod[i + j] + cur[i] * g[j]) % p
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i] % p
            if c != 0:
                prod[i] = 0
                for j in range(n):
                    prod[i - n + j] = (prod[i - n + j] - c * modv[j]) % p
                    if prod[i - n + j] < 0:
                        prod[i - n + j] += p
        for i in range(n):
            cur[i] = prod[i]
    code = 0
    for i in range(n):
        code += cur[i] * weights[i]
    if code != 1:
        raise RuntimeError("generator power cycle did not close")
    return out_np


cdef class FieldKernel:
    """Index-space bulk operations for one field, backed by its code tables."""

    cdef public int p, n
    cdef public long long q, minus_one
    cdef public object code_of_index, index_of_code
    cdef long long[::1] _code
    cdef long long[::1] _idx
    cdef long long qm1
    cdef object _add_table_obj

    def __init__(self, p, n, code_of_index, index_of_code):
        self.p = p
        self.n = n
        cdef long long q = 1
        cdef int i
        for i in range(n):
            q *= p
        self.q = q
        self.qm1 = q - 1
        self.code_of_index = np.ascontiguousarray(code_of_index, dtype=np.int64)
        self.index_of_code = np.ascontiguousarray(index_of_code, dtype=np.int64)
        self._code = self.code_of_index
        self._idx = self.index_of_code
        self.minus_one = self._idx[p - 1]
        self._add_table_obj = None

    # -- scalar core ---------------------------------------------------------

    cdef inline long long c_add(self, long long a, long long b) noexcept:
        cdef long long ca = self._code[a]
        cdef long long cb = self._code[b]
        cdef long long out, w
        cdef int i
        if self.p == 2:
            return self._idx[ca ^ cb]
        out = 0
        w = 1
        for i in range(self.n):
            out += ((ca % self.p) + (cb % self.p)) % self.p * w
            ca //= self.p
            cb //= self.p
            w *= self.p
        return self._idx[out]

    cdef inline long long c_mul(self, long long a, long long b) noexcept:
        if a == 0 or b == 0:
            return 0
        return 1 + (a + b - 2) % self.qm1

    def add_scalar(self, a, b):
        return int(self.c_add(a, b))

    def mul_scalar(self, a, b):
        return int(self.c_mul(a, b))

    def neg_scalar(self, a):
        return int(self.c_mul(a, self.minus_one))

    def sub_scalar(self, a, b):
        return int(self.c_add(a, self.c_mul(b, self.minus_one)))

    # -- vector ops -----------------------------------------------------------

    def add(self, a, b):
        a_arr, b_arr = np.broadcast_arrays(np.asarray(a, dtype=np.int64),
                                           np.asarray(b, dtype=np.int64))
        shape = a_arr.shape
        cdef const long long[::1] af = np.ascontiguousarray(a_arr).ravel()
        cdef const long long[::1] bf = np.ascontiguousarray(b_arr).ravel()
        out_np = np.empty(af.shape[0], dtype=np.int64)
        cdef long long[::1] out = out_np
        cdef Py_ssize_t i
        for i in range(af.shape[0]):
            out[i] = self.c_add(af[i], bf[i])
        return out_np.reshape(shape)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = 1 + (a + b - 2) % self.qm1
        return np.where((a == 0) | (b == 0), 0, out)

    def neg(self, a):
        return self.mul(a, self.minus_one)

    # -- oracles ---------------------------------------------------------------

    def is_bijection(self, positions, size):
        cdef const long long[::1] pos = np.ascontiguousarray(positions, dtype=np.int64)
        cdef long long m = size
        if pos.shape[0] != m:
            return False
        seen_np = np.zeros(m, dtype=np.uint8)
        cdef unsigned char[::1] seen = seen_np
        cdef Py_ssize_t i
        cdef long long v
        for i in range(m):
            v = pos[i]
            if v < 0 or seen[v]:
                return False
            seen[v] = 1
        return True

    def is_involution(self, values):
        cdef const long long[::1] v = np.ascontiguousarray(values, dtype=np.int64)
        cdef Py_ssize_t i
        for i in range(v.shape[0]):
            if v[v[i]] != i:
                return False
        return True

    cdef bint _verify(self, const long long[::1] f, long long gamma, long long b,
                      const long long[::1] subs) noexcept:
        cdef long long u, ug, ub, x
        cdef Py_ssize_t i
        for i in range(subs.shape[0]):
            u = subs[i]
            ug = self.c_mul(u, gamma)
            ub = self.c_mul(u, b)
            for x in range(self.q):
                if f[self.c_add(x, ug)] != self.c_add(f[x], ub):
                    return False
        return True

    def verify_translator(self, f_vals, gamma, b, sub_nonzero):
        cdef const long long[::1] f = np.ascontiguousarray(f_vals, dtype=np.int64)
        cdef const long long[::1] subs = np.ascontiguousarray(sub_nonzero, dtype=np.int64)
        return bool(self._verify(f, gamma, b, subs))

    def translator_scan(self, f_vals, sub_nonzero):
        cdef const long long[::1] f = np.ascontiguousarray(f_vals, dtype=np.int64)
        cdef const long long[::1] subs = np.ascontiguousarray(sub_nonzero, dtype=np.int64)
        cdef long long gamma, b
        cdef long long f0 = f[0]
        gammas = []
        bs = []
        for gamma in range(1, self.q):
            b = self.c_add(f[gamma], self.c_mul(f0, self.minus_one))
            if self._verify(f, gamma, b, subs):
                gammas.append(gamma)
                bs.append(b)
        return (np.asarray(gammas, dtype=np.int64),
                np.asarray(bs, dtype=np.int64))

    def frobenius_map(self, j):
        e = pow(self.p, int(j), int(self.qm1))
        out = np.zeros(self.q, dtype=np.int64)
        idx = np.arange(1, self.q, dtype=np.int64)
        out[1:] = 1 + ((idx - 1) * e) % self.qm1
        return out

    def add_table(self):
        """Cached q x q index-addition table (desk-scale fields only)."""
        if self.q > 2048:
            raise MemoryError("addition table is limited to q <= 2048")
        tab = self._add_table_obj
        if tab is None:
            tab = np.empty((self.q, self.q), dtype=np.int64)
            self._fill_add_table(tab)
            tab.setflags(write=False)
            self._add_table_obj = tab
        return tab

    cdef _fill_add_table(self, long long[:, ::1] tab):
        cdef long long i, j
        for i in range(self.q):
            for j in range(self.q):
                tab[i, j] = self.c_add(i, j)

    def binomial_sweep(self, k):
        """Permutation/involution flags of x -> a*x + b*x^(p^k); the
        permutation check counts roots of the additive map, aborting at
        the second one."""
        cdef long long q = self.q
        cdef long long[::1] xf = np.ascontiguousarray(self.frobenius_map(k))
        cdef const long long[:, ::1] addt = self.add_table()
        perm_np = np.zeros((q - 1, q - 1), dtype=bool)
        invol_np = np.zeros((q - 1, q - 1), dtype=bool)
        cdef unsigned char[:, ::1] perm = perm_np.view(np.uint8)
        cdef unsigned char[:, ::1] invol = invol_np.view(np.uint8)
        cdef long long[::1] lv = np.empty(q, dtype=np.int64)
        cdef long long[::1] ax = np.empty(q, dtype=np.int64)
        cdef long long a, b, x, v, zeros
        cdef bint ok
        for a in range(1, q):
            for x in range(q):
                ax[x] = self.c_mul(a, x)
            for b in range(1, q):
                zeros = 0
                ok = True
                for x in range(q):
                    v = addt[ax[x], self.c_mul(b, xf[x])]
                    lv[x] = v
                    if v == 0:
                        zeros += 1
                        if zeros > 1:
                            ok = False
                            break
                if not ok:
                    continue
                perm[a - 1, b - 1] = 1
                ok = True
                for x in range(q):
                    if lv[lv[x]] != x:
                        ok = False
                        break
                if ok:
                    invol[a - 1, b - 1] = 1
        return perm_np, invol_np

    def component_counts(self, f_vals, lam, tr1):
        cdef const long long[::1] f = np.ascontiguousarray(f_vals, dtype=np.int64)
        cdef const long long[::1] t = np.ascontiguousarray(tr1, dtype=np.int64)
        counts_np = np.zeros(self.p, dtype=np.int64)
        cdef long long[::1] counts = counts_np
        cdef long long lam_ll = lam
        cdef Py_ssize_t x
        for x in range(f.shape[0]):
            counts[t[self.c_mul(lam_ll, f[x])]] += 1
        return counts_np

    def balanced_all(self, f_vals, tr1):
        cdef const long long[::1] f = np.ascontiguousarray(f_vals, dtype=np.int64)
        cdef const long long[::1] t = np.ascontiguousarray(tr1, dtype=np.int64)
        cdef long long target = self.q // self.p
        counts_np = np.zeros(self.p, dtype=np.int64)
        cdef long long[::1] counts = counts_np
        cdef long long lam, c
        cdef Py_ssize_t x
        cdef int i
        cdef bint ok
        for lam in range(1, self.q):
            for i in range(self.p):
                counts[i] = 0
            ok = True
            for x in range(self.q):
                c = t[self.c_mul(lam, f[x])]
                counts[c] += 1
                if counts[c] > target:
                    ok = False
                    break
            if not ok:
                return False
        return True
