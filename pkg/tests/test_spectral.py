import itertools

import pytest

from defcms.kfield import K, ONE, ZERO, RatK
from defcms.laurent import LaurentPoly, deformed_power_sum, lattice_hull, max_terms
from defcms.linalg import mat_power, matmul, nullspace, rank
from defcms.quasi import integrals_upto, is_quasi_invariant
from defcms.spectral import (
    TheoremViolation,
    class_support,
    construction_poly,
    eigenfunction,
    f_chi,
    gen_eigenspace,
    image_algebra,
    operator_matrices,
    power_sum_generation_check,
    quasi_space,
    spectral_split,
    theta_values,
)
from defcms.verify import commute_supports, regular_box

from oracles import brute_quasi_dim, theta_leading

KINV = RatK.k_power(-1)


def P(terms, n, m):
    return LaurentPoly(terms, (n, m))


def one(n, m):
    return LaurentPoly.constant(ONE, (n, m))


def span_rank(polys):
    exps = sorted(set().union(*[set(p.terms) for p in polys]))
    return rank([[p.coeff(e) for e in exps] for p in polys], len(exps))


def test_quasi_space_examples():
    Q = quasi_space(lattice_hull({(1, -1), (-1, 1)}), 1, 1)
    assert Q.leads == [(1, -1), (0, 0)]
    assert Q.basis == [P({(1, -1): 1, (-1, 1): 1}, 1, 1), one(1, 1)]
    Q = quasi_space({(0, 0)}, 1, 1)
    assert Q.basis == [one(1, 1)]
    Q = quasi_space({(1, 0), (0, 1)}, 1, 1)
    assert Q.basis == [deformed_power_sum(1, 1, 1)]


def test_quasi_space_rejects_asymmetric_support():
    with pytest.raises(ValueError, match="not closed"):
        quasi_space({(1, 0, 0)}, 2, 1)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2)])
def test_quasi_space_against_brute_force(n, m):
    for chi, sup in commute_supports(n, m, 1, 30):
        Q = quasi_space(sup, n, m)
        assert Q.dim == brute_quasi_dim(sup, n, m)
        for b, e in zip(Q.basis, Q.leads):
            assert is_quasi_invariant(b)
            assert b.coeff(e) == ONE
            assert all(b.coeff(o) == ZERO for o in Q.leads if o != e)


def test_operator_matrices_reproduce_images():
    Q = quasi_space(lattice_hull(set(itertools.permutations((2, 0, -1)))), 2, 1)
    mats = operator_matrices(Q, 3, verify=True)
    for r, A in enumerate(mats, start=1):
        for j, b in enumerate(Q.basis):
            img = integrals_upto(r, b)[-1]
            assert Q.from_coords([A[i][j] for i in range(Q.dim)]) == img
        # lower triangular, diagonal = eigenvalue on the lead
        # leads are sorted decreasingly and L_r only lowers terms
        for i, j in itertools.product(range(Q.dim), repeat=2):
            if i < j:
                assert A[i][j] == ZERO
        for i, e in enumerate(Q.leads):
            assert A[i][i] == theta_leading(e, 2, 1, r)[-1]
    for A, B in itertools.combinations(mats, 2):
        assert matmul(A, B) == matmul(B, A)


def test_construction_poly():
    for chi, n, m in [((0, 0), 1, 1), ((2, -1), 1, 1), ((1, 0, 0), 2, 1), ((1, 0, 0, -1), 2, 2)]:
        g = construction_poly(chi, n, m)
        assert is_quasi_invariant(g)
        assert max_terms(g) == {chi} and g.coeff(chi) == ONE


def test_f_chi_examples():
    assert f_chi((0, 0), 1, 1) == one(1, 1)
    assert f_chi((1, 0, 0), 2, 1) == deformed_power_sum(1, 2, 1)
    # the constant is fixed by vanishing at the other lead (0, 0) of the class
    assert f_chi((1, -1), 1, 1) == P({(1, -1): 1, (-1, 1): 1}, 1, 1)


def test_theta_values_match_oracle():
    for chi in [(2, 0), (1, -1), (0, -2)]:
        assert list(theta_values(chi, 1, 1, 4)) == theta_leading(chi, 1, 1, 4)


def test_gen_eigenspace_examples():
    G = gen_eigenspace((0, 0), 1, 1)
    assert G.dim == 2 and G.r == 1
    assert span_rank(G.basis + [one(1, 1), P({(1, -1): 1, (-1, 1): 1}, 1, 1)]) == 2
    assert gen_eigenspace((2, 0), 1, 1).dim == 1
    with pytest.raises(ValueError, match="not in X_reg"):
        gen_eigenspace((1, -1), 1, 1)


def _full_generalised_kernel(G):
    """Joint kernel of (A_r - theta_r)^d on the whole space, theta from the oracle."""
    d = G.space.dim
    n, m = G.space.dims
    rows = []
    for A, th in zip(G.all_mats, theta_leading(G.chi_min, n, m, len(G.all_mats))):
        B = [[(x - th) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(A)]
        rows.extend(mat_power(B, d))
    return len(nullspace(rows, d)[0])


@pytest.mark.parametrize("n,m,B", [(1, 1, 2), (2, 1, 1)])
def test_dimensions_against_full_kernel(n, m, B):
    for chi in regular_box(n, m, B):
        G = gen_eigenspace(chi, n, m)
        assert G.dim == 2 ** G.r
        assert _full_generalised_kernel(G) == G.dim
        split = spectral_split(G.space, G.all_mats)
        assert sum(split.values()) == G.space.dim


@pytest.mark.parametrize("n,m,B", [(1, 1, 2), (2, 1, 1)])
def test_support_modes_agree(n, m, B):
    for chi in regular_box(n, m, B):
        G1 = gen_eigenspace(chi, n, m, support_mode="construction")
        G2 = gen_eigenspace(chi, n, m, support_mode="orbit")
        assert G1.dim == G2.dim == span_rank(G1.basis + G2.basis)
        assert eigenfunction(chi, n, m, G=G1) == eigenfunction(chi, n, m, G=G2)


def test_class_support_modes():
    members = [(1, -1), (0, 0)]
    with pytest.raises(ValueError):
        class_support(members, 1, 1, "bogus")
    sup = class_support(members, 1, 1, "orbit")
    Q = quasi_space(sup, 1, 1)
    assert all(w in Q.index for w in members)


def test_image_algebra_r0():
    rep = image_algebra((2, 0), 1, 1)
    assert rep["dimension"] == 1 and rep["r"] == 0
    assert rep["regular_module"]


def test_image_algebra_r1():
    rep = image_algebra((0, 0), 1, 1)
    assert rep["dimension"] == 2 and rep["r"] == 1
    assert rep["nilpotency_index"] == 2 and rep["cotangent_dim"] == 1
    (g,) = rep["square_zero_generators"]
    assert any(x for row in g for x in row)
    assert not any(x for row in matmul(g, g) for x in row)
    assert rep["regular_module"] and rep["local"] and rep["commutative"]


def test_eigenfunction_examples():
    # r = 0: the eigenfunction is the (normalised) triangular element
    assert eigenfunction((2, 0), 1, 1) == f_chi((2, 0), 1, 1)
    # r = 1: the constant is the joint eigenvector of span{1, x1/x2 + x2/x1}
    J = eigenfunction((0, 0), 1, 1)
    assert J == one(1, 1)
    th = theta_values((0, 0), 1, 1, 4)
    for r, img in enumerate(integrals_upto(4, J), start=1):
        assert img == J.scale(th[r - 1])


def test_nontrivial_jordan_block():
    f = P({(1, -1): 1, (-1, 1): 1}, 1, 1)
    th = theta_values((0, 0), 1, 1, 2)
    assert th == theta_values((1, -1), 1, 1, 2)
    g = integrals_upto(2, f)[1] - f.scale(th[1])
    assert set(g.terms) == {(0, 0)} and g.coeff((0, 0)) != ZERO


def test_power_sum_examples():
    assert power_sum_generation_check(lattice_hull({(1, -1), (-1, 1)}), 1, 1)
    assert power_sum_generation_check({(0, 0)}, 1, 1)
    assert power_sum_generation_check(lattice_hull(set(itertools.permutations((2, 0, 0)))), 2, 1)


def _dual_numbers_regular(r):
    """Multiplication by e_1..e_r on C[e]^r in the basis of square-free monomials."""
    subsets = [frozenset(s) for t in range(r + 1) for s in itertools.combinations(range(r), t)]
    idx = {s: i for i, s in enumerate(subsets)}
    mats = []
    for a in range(r):
        M = [[ZERO] * len(subsets) for _ in subsets]
        for s in subsets:
            if a not in s:
                M[idx[s | {a}]][idx[s]] = ONE
        mats.append(M)
    return mats


def test_local_algebra_r3_mixed_generators():
    from defcms.spectral import analyze_local_algebra

    e1, e2, e3 = _dual_numbers_regular(3)

    def comb(*pairs):
        out = [[ZERO] * 8 for _ in range(8)]
        for c, M in pairs:
            out = [[x + c * y for x, y in zip(ro, rm)] for ro, rm in zip(out, M)]
        return out

    # none of these squares to zero, so the generators must be found
    gens = [comb((ONE, e1), (ONE, e2)), comb((ONE, e2), (ONE, e3)), comb((ONE, e1), (K, e3))]
    rep = analyze_local_algebra(gens)
    assert rep["dimension"] == 8 and rep["cotangent_dim"] == 3 and rep["nilpotency_index"] == 4
    gs = rep["square_zero_generators"]
    assert len(gs) == 3
    for g in gs:
        assert not any(x for row in matmul(g, g) for x in row)
    assert rep["regular_module"]
