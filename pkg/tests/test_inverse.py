import numpy as np
import pytest

from ffperm.errors import (
    BNonzero,
    GammaConditionFailed,
    LambdaForbidden,
    PreconditionFailed,
)
from ffperm.field import make_field, rel_trace
from ffperm.construct import linear_binomial
from ffperm.inverse import (
    double_compose_check,
    inverse_zero_translator,
    odd_quad_trace_family,
    scaled_involution,
    translator_shift_table,
)
from ffperm.tables import (
    FuncTable,
    LinearizedMap,
    compose,
    from_indices,
    identity_table,
    is_involution,
    is_permutation,
    subfield_domain,
    t_fold,
)
from ffperm.translators import TranslatorWitness, find_translators, trace_affine_table


def _random_h(field, k, rng):
    dom = subfield_domain(field, k)
    vals = dom.indices[rng.integers(0, len(dom), size=len(dom))]
    return from_indices(field, vals, domain=dom, codomain=dom)


def _linear_h(field, k, c):
    dom = subfield_domain(field, k)
    return from_indices(field, field.mul_idx(np.int64(c.index), dom.indices),
                        domain=dom, codomain=dom)


# ---------------------------------------------------------------------
# the two-fold composition identity
# ---------------------------------------------------------------------

@pytest.mark.parametrize("p,n,k", [(3, 2, 1), (3, 4, 2), (2, 6, 3)])
def test_double_compose_closed_form(p, n, k):
    field = make_field(p, n)
    rng = np.random.default_rng(field.q + 1)
    for bi in rng.integers(1, field.q, size=3):
        f = trace_affine_table(field, k, field.from_index(int(bi)))
        for w in find_translators(f, k)[::max(1, field.q // 8)]:
            for _ in range(4):
                h = _random_h(field, k, rng)
                assert double_compose_check(w, h)


def test_double_compose_b_zero_odd_p():
    # F о F = x + 2 gamma h(f(x)) when b = 0
    f9 = make_field(3, 2)
    fw = trace_affine_table(f9, 1, f9.one())
    w = next(w for w in find_translators(fw, 1) if w.b.is_zero())
    rng = np.random.default_rng(7)
    for _ in range(6):
        h = _random_h(f9, 1, rng)
        F = translator_shift_table(w, h)
        hf = h.values[h.domain.pos[w.f.values]]
        two_gamma = f9.mul_idx(w.gamma.index, f9.from_int(2).index)
        closed = FuncTable(f9, f9.add_idx(f9.all_indices(),
                                          f9.mul_idx(np.int64(two_gamma), hf)))
        assert t_fold(F, 2) == closed


# ---------------------------------------------------------------------
# explicit inverses for 0-translators
# ---------------------------------------------------------------------

def test_involution_when_p_two_and_identity_l():
    f16 = make_field(2, 4)
    fw = trace_affine_table(f16, 2, f16.generator)
    rng = np.random.default_rng(5)
    zero_ws = [w for w in find_translators(fw, 2) if w.b.is_zero()]
    assert zero_ws
    for w in zero_ws:
        h = _random_h(f16, 2, rng)
        F = translator_shift_table(w, h)
        G = inverse_zero_translator(w, h)
        assert G == F
        assert is_involution(F)


def test_b_nonzero_rejected():
    f9 = make_field(3, 2)
    fw = trace_affine_table(f9, 1, f9.one())
    w = next(w for w in find_translators(fw, 1) if not w.b.is_zero())
    with pytest.raises(BNonzero):
        inverse_zero_translator(w, _random_h(f9, 1, np.random.default_rng(0)))


def test_p_fold_composition_is_identity():
    for p, n, k in [(3, 2, 1), (3, 4, 2), (2, 6, 2)]:
        field = make_field(p, n)
        rng = np.random.default_rng(n)
        fw = trace_affine_table(field, k, field.generator)
        zero_ws = [w for w in find_translators(fw, k) if w.b.is_zero()]
        ident = identity_table(field)
        for w in zero_ws[:4]:
            for _ in range(3):
                h = _random_h(field, k, rng)
                F = translator_shift_table(w, h)
                assert t_fold(F, p) == ident


def test_power_family_example_gf27():
    # n = 3k, f = T(x) + a, trace-zero gamma:
    # F = x + gamma (T(x)+a)^s inverts to x + 2 gamma (T(x)+a)^s for every s
    f27 = make_field(3, 3)
    view = f27.subfield_view(1)
    a = f27.from_int(2)
    fw = trace_affine_table(f27, 1, f27.one(), shift=a)
    dom = subfield_domain(f27, 1)
    ident = identity_table(f27)
    for gi in view.kernel_indices:
        if gi == 0:
            continue
        gamma = f27.from_index(int(gi))
        w = TranslatorWitness(fw, gamma, f27.zero(), 1)
        for s in (1, 2, 5, 11, 25):
            h = from_indices(f27, f27.pow_vec(dom.indices, s), domain=dom, codomain=dom)
            F = translator_shift_table(w, h)
            G = inverse_zero_translator(w, h)
            two_gamma = f27.mul_idx(gamma.index, f27.from_int(2).index)
            hf = h.values[h.domain.pos[fw.values]]
            closed = FuncTable(f27, f27.add_idx(f27.all_indices(),
                                                f27.mul_idx(np.int64(two_gamma), hf)))
            assert G == closed
            assert compose(G, F) == ident and compose(F, G) == ident


def test_general_linear_part_inverse():
    # the inverse follows the factorization F = L o G0, so the shift
    # coefficient stays gamma, not L(gamma)
    f81 = make_field(3, 4)
    rng = np.random.default_rng(13)
    L = LinearizedMap(f81, 2, [f81.generator, f81.one()])
    assert L.is_permutation()
    fw = trace_affine_table(f81, 2, f81.from_index(7))
    zero_ws = [w for w in find_translators(fw, 2) if w.b.is_zero()]
    ident = identity_table(f81)
    for w in zero_ws[:3]:
        for _ in range(3):
            h = _random_h(f81, 2, rng)
            F = translator_shift_table(w, h, L)
            G = inverse_zero_translator(w, h, L)
            assert compose(G, F) == ident and compose(F, G) == ident


def test_printed_variant_with_l_gamma_is_not_an_inverse():
    """Frozen counterexample: replacing gamma by L(gamma) in the inverse
    formula breaks it whenever L(gamma) != gamma."""
    f9 = make_field(3, 2)
    L = LinearizedMap(f9, 1, [f9.from_int(2)])  # L(x) = 2x
    fw = trace_affine_table(f9, 1, f9.one())
    w = next(w for w in find_translators(fw, 1) if w.b.is_zero())
    dom = subfield_domain(f9, 1)
    h = from_indices(f9, f9.pow_vec(dom.indices, 2), domain=dom, codomain=dom)
    F = translator_shift_table(w, h, L)
    y = L.inverse_table().values
    hf_y = h.values[h.domain.pos[fw.values[y]]]
    lg = L.eval(w.gamma)
    variant = FuncTable(f9, f9.add_idx(
        y, f9.mul_idx(np.int64(f9.neg_idx(lg.index)), hf_y)))
    correct = inverse_zero_translator(w, h, L)
    assert compose(correct, F) == identity_table(f9)
    assert compose(variant, F) != identity_table(f9)


def test_linear_h_with_involutive_binomial_l():
    """All involutive binomial L over GF(16), linear h, trace-zero pairs:
    F = L(x) + L(gamma) h(T(beta x)) is a linear permutation whose inverse
    is L(x) + gamma h(T(beta L(x)))."""
    f16 = make_field(2, 4)
    ident = identity_table(f16)
    view = f16.subfield_view(2)
    involutive = []
    for ai in range(1, 16):
        for bi in range(1, 16):
            lb = linear_binomial(f16.from_index(ai), f16.from_index(bi), 2)
            if lb.predicted_involution:
                involutive.append(lb.map)
    assert involutive
    checked = 0
    for L in involutive:
        for beta_i in (1, 3):
            beta = f16.from_index(beta_i)
            fw = trace_affine_table(f16, 2, beta)
            for w in find_translators(fw, 2):
                if not w.b.is_zero():
                    continue
                for ci in view.element_indices:
                    if ci == 0:
                        continue
                    h = _linear_h(f16, 2, f16.from_index(int(ci)))
                    F = translator_shift_table(w, h, L)
                    assert is_permutation(F)
                    # additivity: F is linear (plus F(0) = 0 here)
                    G = inverse_zero_translator(w, h, L)
                    # closed form: L then the gamma-shift along h(T(beta L(x)))
                    y = L.as_table().values  # L^(-1) = L
                    hf_y = h.values[h.domain.pos[fw.values[y]]]
                    closed = FuncTable(f16, f16.add_idx(
                        y, f16.mul_idx(np.int64(w.gamma.index), hf_y)))
                    assert G == closed
                    assert compose(G, F) == ident
                    checked += 1
    assert checked > 0


# ---------------------------------------------------------------------
# the odd quadratic trace family with known inverse
# ---------------------------------------------------------------------

def test_odd_quad_trace_family_gf81():
    f81 = make_field(3, 4)
    rng = np.random.default_rng(6)
    minus_one = -f81.one()
    ident = identity_table(f81)
    valid = [f81.from_index(g) for g in range(1, 81)
             if f81.from_index(g) ** 8 == minus_one
             and rel_trace(f81.from_index(g) ** 4, 1).is_zero()]
    assert valid, "the gamma set must be nonempty here"
    for gamma in valid:
        h = _random_h(f81, 1, rng)
        F, F_inv = odd_quad_trace_family(gamma, 0, 1, 1, None, h)
        assert is_permutation(F)
        assert compose(F_inv, F) == ident and compose(F, F_inv) == ident


def test_odd_quad_trace_family_with_linear_part():
    f81 = make_field(3, 4)
    rng = np.random.default_rng(16)
    minus_one = -f81.one()
    gamma = next(f81.from_index(g) for g in range(1, 81)
                 if f81.from_index(g) ** 8 == minus_one
                 and rel_trace(f81.from_index(g) ** 4, 1).is_zero())
    L = LinearizedMap(f81, 1, [f81.generator, f81.one()])
    if not L.is_permutation():
        L = LinearizedMap(f81, 1, [f81.generator, f81.generator ** 2])
    h = _random_h(f81, 1, rng)
    F, F_inv = odd_quad_trace_family(gamma, 0, 1, 1, L, h)
    assert compose(F_inv, F) == identity_table(f81)


def test_odd_quad_trace_family_gamma_condition():
    # r / gcd(r, 2l) = 3 odd: no admissible gamma in GF(27)
    f27 = make_field(3, 3)
    h = _random_h(f27, 1, np.random.default_rng(0))
    for g in range(1, 27):
        with pytest.raises(GammaConditionFailed):
            odd_quad_trace_family(f27.from_index(g), 0, 1, 1, None, h)


# ---------------------------------------------------------------------
# scaled involutions for b != 0
# ---------------------------------------------------------------------

def test_scaled_involution_gf9_exhaustive():
    f9 = make_field(3, 2)
    for bi in range(1, 9):
        fw = trace_affine_table(f9, 1, f9.from_index(bi))
        for w in find_translators(fw, 1):
            if w.b.is_zero():
                continue
            lam = f9.from_int(-2) * w.b.inverse()
            F = scaled_involution(w, lam)
            assert is_involution(F)


def test_scaled_involution_lambda_forbidden():
    f9 = make_field(3, 2)
    fw = trace_affine_table(f9, 1, f9.one())
    w = next(w for w in find_translators(fw, 1) if not w.b.is_zero())
    with pytest.raises(LambdaForbidden):
        scaled_involution(w, -(w.b.inverse()))


def test_scaled_involution_needs_odd_p_and_nonzero_b():
    f16 = make_field(2, 4)
    fw = trace_affine_table(f16, 2, f16.one())
    w = next(w for w in find_translators(fw, 2) if not w.b.is_zero())
    with pytest.raises(PreconditionFailed):
        scaled_involution(w, f16.one())
    f9 = make_field(3, 2)
    fw9 = trace_affine_table(f9, 1, f9.one())
    w0 = next(w for w in find_translators(fw9, 1) if w.b.is_zero())
    with pytest.raises(PreconditionFailed):
        scaled_involution(w0, f9.one())


def test_scaled_permutations_all_admissible_lambdas_gf81():
    f81 = make_field(3, 4)
    fw = trace_affine_table(f81, 2, f81.from_index(11))
    sub = f81.subfield_view(2)
    ws = [w for w in find_translators(fw, 2) if not w.b.is_zero()]
    for w in ws[::17]:
        forbidden = -(w.b.inverse())
        invol_lam = f81.from_int(-2) * w.b.inverse()
        for li in sub.element_indices:
            if li == 0:
                continue
            lam = f81.from_index(int(li))
            if lam == forbidden:
                continue
            F = scaled_involution(w, lam)  # verified permutation inside
            if lam == invol_lam:
                assert is_involution(F)
