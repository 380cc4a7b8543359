import numpy as np
import pytest

from ffperm.errors import CodomainViolation, DomainMismatch, ZeroLambda
from ffperm.field import frobenius, make_field
from ffperm.tables import (
    FuncTable,
    LinearizedMap,
    all_components_balanced,
    component_spectrum,
    compose,
    constant_table,
    from_indices,
    identity_table,
    is_involution,
    is_permutation,
    power_table,
    subfield_domain,
    t_fold,
    tabulate,
    tabulate_poly,
)


def _random_subfield_table(field, k, rng):
    dom = subfield_domain(field, k)
    vals = dom.indices[rng.integers(0, len(dom), size=len(dom))]
    return from_indices(field, vals, domain=dom, codomain=dom)


# ---------------------------------------------------------------------
# tabulation and codomain checks
# ---------------------------------------------------------------------

def test_tabulate_identity():
    f = make_field(2, 2)
    t = tabulate(f, lambda x: x)
    assert t == identity_table(f)
    assert is_permutation(t)


def test_power_map_into_subfield_accepted():
    f = make_field(2, 4)
    t = power_table(f, 5, codomain=subfield_domain(f, 2))
    view = f.subfield_view(2)
    assert all(view.contains(int(v)) for v in t.values)


def test_power_map_escaping_subfield_rejected():
    f = make_field(2, 4)
    with pytest.raises(CodomainViolation):
        power_table(f, 3, codomain=subfield_domain(f, 2))


def test_table_call_and_domain():
    f = make_field(3, 2)
    t = tabulate(f, lambda x: x * x)
    for x in f.elements():
        assert t(x) == x * x
    sub = subfield_domain(f, 1)
    ts = from_indices(f, sub.indices, domain=sub, codomain=sub)
    with pytest.raises(DomainMismatch):
        ts(f.from_coeffs([0, 1]))


def test_tabulate_poly_matches_pointwise_eval():
    f = make_field(2, 3)
    rng = np.random.default_rng(5)
    coeffs = [f.from_index(int(i)) for i in rng.integers(0, f.q, size=6)]
    t = tabulate_poly(f, coeffs)
    for x in f.elements():
        acc = f.zero()
        for c in reversed(coeffs):
            acc = acc * x + c
        assert t(x) == acc


# ---------------------------------------------------------------------
# permutation / involution oracles
# ---------------------------------------------------------------------

def test_is_permutation_examples():
    f16 = make_field(2, 4)
    assert is_permutation(identity_table(f16))
    # x + x^4 kills the subfield: not injective
    assert not is_permutation(LinearizedMap(f16, 2, [f16.one(), f16.one()]).as_table())
    f4 = make_field(2, 2)
    assert not is_permutation(power_table(f4, 3))


def test_t_fold_identities():
    f = make_field(2, 4)
    ident = identity_table(f)
    assert t_fold(ident, 7) == ident
    g = f.generator
    invol = tabulate(f, lambda x: g**3 * frobenius(x, 2))  # (g^3)^5 = 1
    assert is_involution(invol)
    assert t_fold(invol, 2) == ident
    with pytest.raises(ValueError):
        t_fold(ident, 0)


def test_t_fold_is_additive_in_the_fold_count():
    f = make_field(3, 2)
    rng = np.random.default_rng(11)
    perm = FuncTable(f, rng.permutation(f.q))
    for t1 in (1, 2, 3):
        for t2 in (1, 4):
            assert t_fold(perm, t1 + t2) == compose(t_fold(perm, t1), t_fold(perm, t2))


def test_is_involution_translations():
    f16 = make_field(2, 4)
    c = f16.generator
    assert is_involution(tabulate(f16, lambda x: x + c))
    f9 = make_field(3, 2)
    c9 = f9.one()
    assert not is_involution(tabulate(f9, lambda x: x + c9))


def test_compose_domain_mismatch():
    f = make_field(2, 4)
    sub = subfield_domain(f, 2)
    ts = from_indices(f, sub.indices, domain=sub, codomain=sub)
    with pytest.raises(DomainMismatch):
        compose(ts, identity_table(f))  # full-field values leave GF(4)


# ---------------------------------------------------------------------
# component spectra
# ---------------------------------------------------------------------

def test_spectrum_identity_map():
    f = make_field(2, 4)
    row = component_spectrum(identity_table(f), f.generator)
    assert row.counts == (8, 8)
    assert row.balanced
    assert row.signed_sum() == 0


def test_spectrum_constant_map():
    f = make_field(2, 4)
    row = component_spectrum(constant_table(f, f.zero()), f.generator)
    assert row.counts == (16, 0)
    assert not row.balanced


def test_spectrum_zero_lambda_rejected():
    f = make_field(2, 4)
    with pytest.raises(ZeroLambda):
        component_spectrum(identity_table(f), f.zero())


def test_permutation_rows_all_balanced_gf9():
    f = make_field(3, 2)
    rng = np.random.default_rng(2)
    perm = FuncTable(f, rng.permutation(f.q))
    for lam_idx in range(1, f.q):
        row = component_spectrum(perm, f.from_index(lam_idx))
        assert row.counts == (3, 3, 3)


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3)])
def test_permutation_iff_all_components_balanced(p, n):
    f = make_field(p, n)
    rng = np.random.default_rng(17)
    for trial in range(30):
        vals = rng.permutation(f.q) if trial % 2 else rng.integers(0, f.q, size=f.q)
        tab = FuncTable(f, vals)
        assert is_permutation(tab) == all_components_balanced(tab)


# ---------------------------------------------------------------------
# linearized maps
# ---------------------------------------------------------------------

def test_linearized_identity_and_eval():
    f = make_field(2, 4)
    L = LinearizedMap.identity(f, 2)
    assert L.is_permutation()
    for x in f.elements():
        assert L.eval(x) == x


def test_linearized_binomial_permutation_cases():
    f = make_field(2, 4)
    g = f.generator
    assert not LinearizedMap(f, 2, [f.one(), f.one()]).is_permutation()
    L = LinearizedMap(f, 2, [g, f.one()])
    assert L.is_permutation()
    assert is_permutation(L.as_table())


def test_linearized_map_is_subfield_linear():
    f = make_field(2, 4)
    g = f.generator
    L = LinearizedMap(f, 2, [g, g**7])
    view = f.subfield_view(2)
    for x in f.elements():
        for y in f.elements():
            assert L.eval(x + y) == L.eval(x) + L.eval(y)
    for c_idx in view.element_indices:
        c = f.from_index(int(c_idx))
        for x in f.elements():
            assert L.eval(c * x) == c * L.eval(x)


@pytest.mark.parametrize("p,n,k", [(2, 4, 2), (3, 4, 2)])
def test_kernel_test_agrees_with_table_oracle(p, n, k):
    f = make_field(p, n)
    rng = np.random.default_rng(23)
    for _ in range(40):
        coeffs = [f.from_index(int(i)) for i in rng.integers(0, f.q, size=n // k)]
        L = LinearizedMap(f, k, coeffs)
        assert L.is_permutation() == is_permutation(L.as_table())


def test_inverse_table_composes():
    f = make_field(3, 4)
    g = f.generator
    L = LinearizedMap(f, 2, [g, f.one()])
    if not L.is_permutation():
        pytest.skip("sampled map not invertible")
    inv = L.inverse_table()
    assert compose(inv, L.as_table()) == identity_table(f)
    with pytest.raises(DomainMismatch):
        LinearizedMap(f, 2, [f.one(), f.one()]).inverse_table()


def test_norm_one_subgroup_criterion_matches_kernel_oracle():
    # binomial a x + b x^(p^k), n = 2k: bijective iff (a/b)^(p^k+1) != 1
    f = make_field(2, 4)
    pk = 4
    for ai in range(1, f.q):
        for bi in range(1, f.q):
            a, b = f.from_index(ai), f.from_index(bi)
            closed = (a / b) ** (pk + 1) != f.one()
            assert closed == LinearizedMap(f, 2, [a, b]).is_permutation()
