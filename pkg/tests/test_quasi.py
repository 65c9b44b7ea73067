import itertools

import pytest
from hypothesis import given, settings, strategies as st

from defcms.kfield import K, ONE, ZERO, RatK
from defcms.laurent import LaurentPoly, deformed_power_sum, max_terms, support_members
from defcms.quasi import (
    NotQuasiError,
    QuasiMap,
    cms2_apply,
    commute_check,
    dir_derivative,
    divide_by_difference,
    integral_apply,
    integrals_upto,
    is_quasi_homomorphism,
    is_quasi_invariant,
    moser_apply,
)
from defcms.rootsys import theta_eval
from defcms.spectral import f_chi

from oracles import theta_leading

KINV = RatK.k_power(-1)


def P(terms, n, m):
    return LaurentPoly(terms, (n, m))


def one(n, m):
    return LaurentPoly.constant(ONE, (n, m))


def psum_product(ss, n, m):
    f = one(n, m)
    for s in ss:
        f = f * deformed_power_sum(s, n, m)
    return f


def test_dir_derivative_examples():
    assert dir_derivative(1, P({(0, 1): 1}, 1, 1)) == P({(0, 1): K}, 1, 1)
    assert dir_derivative(0, P({(3, 0): 1}, 1, 1)) == P({(3, 0): 3}, 1, 1)
    for i in range(2):
        assert dir_derivative(i, one(1, 1)).is_zero()


def test_quasi_invariant_examples():
    assert is_quasi_invariant(deformed_power_sum(1, 1, 1))
    assert not is_quasi_invariant(P({(1, 0): 1, (0, 1): 1}, 1, 1))
    assert is_quasi_invariant(one(2, 2))
    # symmetric in each block but x1 x2 alone is not invariant under S_2
    assert not is_quasi_invariant(P({(1, 0, 0): 1}, 2, 1))


def test_divide_by_difference():
    f = P({(2, 0): 1, (0, 2): -1}, 1, 1)  # x1^2 - x2^2
    assert divide_by_difference(f, 0, 1) == P({(1, 0): 1, (0, 1): 1}, 1, 1)
    g = P({(1, -1): 1, (-1, 1): -1}, 1, 1)  # x1/x2 - x2/x1
    q = divide_by_difference(g, 0, 1)
    assert q * P({(1, 0): 1, (0, 1): -1}, 1, 1) == g
    with pytest.raises(NotQuasiError):
        divide_by_difference(P({(1, 0): 1}, 1, 1), 0, 1)


def test_quasi_homomorphism_examples():
    p1 = deformed_power_sum(1, 1, 1)
    assert is_quasi_homomorphism(QuasiMap.constant(p1))
    assert is_quasi_homomorphism(QuasiMap([P({(1, 0): 1}, 1, 1), P({(0, 1): 1}, 1, 1)], (1, 1)))
    assert not is_quasi_homomorphism(QuasiMap([P({(0, 1): 1}, 1, 1), LaurentPoly.zero((1, 1))], (1, 1)))


def test_moser_examples():
    f = psum_product((1, -1), 1, 1)
    psi = moser_apply(QuasiMap.constant(f))
    assert psi.images == [dir_derivative(i, f) for i in range(2)]
    # identity embedding: x1 - x1 and k x2 - k x2
    ident = QuasiMap([P({(1, 0): 1}, 1, 1), P({(0, 1): 1}, 1, 1)], (1, 1))
    assert all(img.is_zero() for img in moser_apply(ident).images)
    zero = QuasiMap([LaurentPoly.zero((1, 1))] * 2, (1, 1))
    assert moser_apply(zero) == zero


def test_moser_rejects_non_quasi():
    bad = QuasiMap([P({(0, 1): 1}, 1, 1), LaurentPoly.zero((1, 1))], (1, 1))
    with pytest.raises(NotQuasiError, match="quasi-homomorphism"):
        moser_apply(bad)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2)])
def test_first_integral_is_euler(n, m):
    for s in (1, -1, 2, -2):
        p = deformed_power_sum(s, n, m)
        assert integral_apply(1, p) == p.scale(s)


def test_first_integral_kills_degree_zero():
    assert integral_apply(1, P({(1, -1): 1, (-1, 1): 1}, 1, 1)).is_zero()


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (0, 2), (2, 0)])
def test_integrals_on_constant(n, m):
    zero = (0,) * (n + m)
    lead = theta_leading(zero, n, m, 3)
    for r, g in enumerate(integrals_upto(3, one(n, m)), start=1):
        assert g == one(n, m).scale(theta_eval(zero, r, n, m))
        assert g == one(n, m).scale(lead[r - 1])
    assert theta_eval(zero, 1, n, m) == ZERO


def test_cms2_examples():
    assert cms2_apply(one(1, 1)).is_zero()
    # (x_i d_i)^2 part gives x1 + x2, the odd pair term subtracts x1 + x2
    assert cms2_apply(deformed_power_sum(1, 1, 1)).is_zero()
    # classical case: (x_i d_i)^2 part x1 + x2, pair term -k (x1 + x2)
    f = P({(1, 0): 1, (0, 1): 1}, 2, 0)
    assert cms2_apply(f) == f.scale(1 - K)


def test_cms2_rejects_non_quasi():
    with pytest.raises(NotQuasiError, match="not quasi-invariant"):
        cms2_apply(P({(1, 0): 1, (0, 1): 1}, 1, 1))


@pytest.mark.parametrize("n,m,ss", [
    (1, 1, (1, -1)), (1, 1, (2, -1)), (2, 1, (1, 1)), (1, 2, (2,)), (2, 2, (1, -1)), (0, 3, (1, 1)),
])
def test_cms2_commutes_with_integrals(n, m, ss):
    f = psum_product(ss, n, m)
    for r in (1, 2, 3):
        assert cms2_apply(integral_apply(r, f)) == integral_apply(r, cms2_apply(f))


def test_commute_examples():
    assert commute_check(1, 2, psum_product((1, -1), 1, 1))
    assert commute_check(2, 3, f_chi((1, 0, 0), 2, 1))
    for r, s in itertools.combinations(range(1, 4), 2):
        assert commute_check(r, s, one(2, 1))


def _maps(n, m):
    out = []
    for ss in [(1,), (1, -1), (2, -1), (1, 1)]:
        phi = QuasiMap.constant(psum_product(ss, n, m))
        for _ in range(3):
            out.append(phi)
            phi = moser_apply(phi)
    return out


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2)])
def test_moser_preserves_quasi_homomorphisms(n, m):
    for phi in _maps(n, m):
        assert is_quasi_homomorphism(phi)
        assert is_quasi_homomorphism(moser_apply(phi))


exps = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=3)


@settings(max_examples=15, deadline=None)
@given(exps, st.sampled_from([(1, 1), (2, 1), (1, 2)]))
def test_integrals_preserve_quasi_and_support(ss, nm):
    n, m = nm
    f = psum_product(ss, n, m)
    sup = support_members(f)
    for g in integrals_upto(4, f):
        assert is_quasi_invariant(g)
        if not g.is_zero():
            assert support_members(g) <= sup


@settings(max_examples=15, deadline=None)
@given(exps, st.sampled_from([(1, 1), (2, 1), (1, 2)]))
def test_leading_coefficient_law(ss, nm):
    n, m = nm
    f = psum_product(ss, n, m)
    tops = max_terms(f)
    if len(tops) != 1:
        return
    chi = tops.pop()
    c = f.coeff(chi)
    lead = theta_leading(chi, n, m, 3)
    for r, g in enumerate(integrals_upto(3, f), start=1):
        assert g.coeff(chi) == lead[r - 1] * c
