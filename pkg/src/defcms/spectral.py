"""Finite-dimensional spectral theory of the integrals L_r on spaces of
quasi-invariants with a prescribed support.

Bases are built so that distinct basis elements have distinct lex-leading
exponents (lex order on prefix sums refines the dominance order). With the
basis sorted by decreasing leading exponent, every L_r acts by a lower
triangular matrix whose diagonal entries are theta_chi(L_r) of the leading
weights. Generalised eigenspaces are then exact kernels on the invariant
tail spanned by basis elements below the top member of a class.
"""

import itertools
from functools import lru_cache

from .kfield import K, ONE, ZERO, RatK
from .laurent import (
    LaurentPoly,
    deformed_power_sum,
    dominant_rep,
    is_dominant,
    lattice_hull,
    lex_key,
    max_terms,
    orbit,
    schur_poly,
)
from .linalg import (
    ResourceBoundError,
    check_size,
    echelon_ff,
    identity,
    lcm_den,
    mat_power,
    matmul,
    nullspace,
    rank,
)
from .quasi import integrals_upto

__all__ = [
    "TheoremViolation",
    "QuasiSpace",
    "quasi_space",
    "operator_matrices",
    "construction_poly",
    "theta_values",
    "class_support",
    "GenEigenspace",
    "gen_eigenspace",
    "separating_matrices",
    "eigenspace_for",
    "spectral_split",
    "f_chi",
    "LocalAlgebraReport",
    "analyze_local_algebra",
    "image_algebra",
    "eigenfunction",
    "power_sum_generation_check",
]


class TheoremViolation(AssertionError):
    """A structural statement failed on exact data."""


# quasi-invariant spaces ------------------------------------------------------

class QuasiSpace:
    """Quasi-invariants supported in a fixed symmetric set of exponents.

    basis[t] has leading exponent leads[t] (coefficient 1) and coefficient 0
    at every other lead; leads are sorted by decreasing lex order. The
    coordinates of f in this basis are its coefficients at the leads.
    """

    def __init__(self, support, dims, basis, leads):
        self.support = frozenset(support)
        self.dims = tuple(dims)
        self.basis = basis
        self.leads = leads
        self.index = {e: t for t, e in enumerate(leads)}

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, f: LaurentPoly):
        return [f.coeff(e) for e in self.leads]

    def from_coords(self, y) -> LaurentPoly:
        out = LaurentPoly.zero(self.dims)
        for c, b in zip(y, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def contains(self, f: LaurentPoly) -> bool:
        if not set(f.terms) <= self.support:
            return False
        return self.from_coords(self.coords(f)) == f


def _check_symmetric(support, n, m):
    for e in support:
        for w in orbit(e, n, m):
            if w not in support:
                raise ValueError("support is not closed under S_n x S_m (missing %r)" % (w,))


def quasi_space(support, n: int, m: int) -> QuasiSpace:
    """Basis of {f quasi-invariant : M(f) inside support}, by exact nullspace."""
    support = set(tuple(e) for e in support)
    _check_symmetric(support, n, m)
    reps = sorted({dominant_rep(e, n, m) for e in support}, key=lex_key)  # ascending
    orbits = [sorted(orbit(r, n, m)) for r in reps]
    ncols = len(reps)
    rows = []
    if n and m and ncols:
        i, j = 0, n  # one odd pair suffices for symmetric f
        table = {}
        for c, orb in enumerate(orbits):
            for e in orb:
                w = K * (-e[j]) + e[i] if e[j] else RatK(e[i])
                if not w:
                    continue
                key = e[:i] + (e[i] + e[j],) + e[i + 1:]
                key = key[:j] + (0,) + key[j + 1:]
                row = table.setdefault(key, {})
                row[c] = row[c] + w if c in row else w
        for key in sorted(table):
            row = table[key]
            if any(row.values()):
                rows.append([row.get(c, ZERO) for c in range(ncols)])
    check_size(len(rows) * max(ncols, 1), "quasi-invariance system")
    vecs, free = nullspace(rows, ncols)
    basis = []
    leads = []
    for vec, f in zip(vecs, free):
        terms = {}
        for c, x in enumerate(vec):
            if x:
                for e in orbits[c]:
                    terms[e] = x
        basis.append(LaurentPoly._raw(terms, (n, m)))
        leads.append(reps[f])
    order = sorted(range(len(basis)), key=lambda t: lex_key(leads[t]), reverse=True)
    return QuasiSpace(support, (n, m), [basis[t] for t in order], [leads[t] for t in order])


def operator_matrices(Q: QuasiSpace, R: int, verify: bool = False):
    """Matrices of L_1..L_R on Q.basis; A[r-1][i][j] = coordinate i of L_r basis[j].

    Raises TheoremViolation if an image leaves the support (or, with verify,
    is not reproduced exactly by its coordinates).
    """
    d = Q.dim
    check_size(d * d * R, "operator matrices")
    mats = [[[ZERO] * d for _ in range(d)] for _ in range(R)]
    for j, b in enumerate(Q.basis):
        L = lcm_den(b.terms.values())
        scale = RatK._raw(L, ONE.den)
        bb = b.scale(scale) if not L.is_one() else b
        images = integrals_upto(R, bb)
        for r, img in enumerate(images):
            if not set(img.terms) <= Q.support:
                raise TheoremViolation("L_%d moved a basis element outside its support" % (r + 1))
            col = Q.coords(img)
            if not L.is_one():
                col = [c / scale if c else c for c in col]
            for i in range(d):
                mats[r][i][j] = col[i]
            if verify and Q.from_coords(col) != (img.scale(scale.inverse()) if not L.is_one() else img):
                raise TheoremViolation("L_%d image of a basis element is not in the space" % (r + 1))
    return mats


# construction of quasi-invariants with a prescribed top term ----------------

def construction_poly(chi, n: int, m: int) -> LaurentPoly:
    """A quasi-invariant whose unique maximal term is x^chi (coefficient 1).

    g = prod (x_i - x_{n+j})^2 s_lam s_mu * prod (1/x_i - 1/x_{n+j})^2
        * (x_1..x_n)^c (x_{n+1}..x_{n+m})^d
    with lam_i = a_i - 2m - c, mu_j = b_j + 2n - d and c, d as large as
    possible, which makes lam and mu the smallest partitions that work.
    """
    chi = tuple(chi)
    if not is_dominant(chi, n, m):
        raise ValueError("weight must be dominant")
    dims = (n, m)
    nv = n + m
    a, b = chi[:n], chi[n:]
    c = a[-1] - 2 * m if n else 0
    d = b[-1] + 2 * n if m else 0
    lam = [x - 2 * m - c for x in a]
    mu = [y + 2 * n - d for y in b]
    g = LaurentPoly.constant(ONE, dims)
    for i in range(n):
        for j in range(n, nv):
            ei = [0] * nv
            ei[i] = 1
            ej = [0] * nv
            ej[j] = 1
            diff = LaurentPoly({tuple(ei): 1, tuple(ej): -1}, dims)
            ei = [0] * nv
            ei[i] = -1
            ej = [0] * nv
            ej[j] = -1
            inv = LaurentPoly({tuple(ei): 1, tuple(ej): -1}, dims)
            g = g * diff * diff * inv * inv
    if n:
        g = g * schur_poly(lam, "first", n, m)
    if m:
        g = g * schur_poly(mu, "last", n, m)
    g = g.shift(tuple([c] * n + [d] * m))
    top = g.coeff(chi)
    if not top or max_terms(g) != {chi}:
        raise TheoremViolation("construction did not produce x^chi as the unique top term")
    return g.scale(top.inverse())


def _small_witness(chi, n, m):
    """A quasi-invariant with lex-leading (hence maximal) term x^chi, from the
    hull of the full permutation orbit of chi, or None."""
    pts = set(itertools.permutations(chi))
    if len(pts) > 720:
        return None
    Q = quasi_space(lattice_hull(pts), n, m)
    t = Q.index.get(tuple(chi))
    return Q.basis[t] if t is not None else None


@lru_cache(maxsize=4096)
def _theta_cached(chi, n, m, R):
    f = _small_witness(chi, n, m)
    if f is None:
        f = construction_poly(chi, n, m)
    c0 = f.coeff(chi)
    return tuple(img.coeff(chi) / c0 for img in integrals_upto(R, f))


def theta_values(chi, n: int, m: int, R: int):
    """(theta_chi(L_1), ..., theta_chi(L_R)) via the leading coefficient of
    L_r f for a quasi-invariant f with maximal term x^chi."""
    chi = tuple(chi)
    if not is_dominant(chi, n, m):
        raise ValueError("weight must be dominant")
    return _theta_cached(chi, n, m, R)


# generalised eigenspaces --------------------------------------------------------

def _orbit_support(members, n, m, t, full=False):
    """Lattice hull of the orbits of the members shifted down by up to t
    multiples of each odd root. Orbits are under S_n x S_m, or under
    S_{n+m} when full is set."""
    def orb(v):
        return set(itertools.permutations(v)) if full else orbit(tuple(v), n, m)

    pts = set()
    for chi in members:
        pts |= orb(chi)
        for i in range(n):
            for j in range(n, n + m):
                for s in range(1, t + 1):
                    v = list(chi)
                    v[i] -= s
                    v[j] += s
                    pts |= orb(v)
    return lattice_hull(pts)


def class_support(members, n: int, m: int, mode: str = "construction", max_shift: int = 8):
    """Support used for the generalised eigenspace of a class.

    "construction": lattice hull of the supports of construction_poly over
    all class members. "orbit": the smallest _orbit_support (in t) whose
    quasi-invariants have every class member as a leading weight; much
    smaller in practice. Either way every member is a leading weight, so
    the eigenspace found inside has the full dimension.
    """
    if mode == "construction":
        pts = set()
        for chi in members:
            pts |= set(construction_poly(chi, n, m).terms)
        return lattice_hull(pts)
    if mode != "orbit":
        raise ValueError("unknown support mode %r" % mode)
    for full in (False, True):
        for t in range(max_shift + 1):
            sup = _orbit_support(members, n, m, t, full)
            Q = quasi_space(sup, n, m)
            if all(tuple(c) in Q.index for c in members):
                return sup
    raise TheoremViolation("no orbit support up to shift %d carries the whole class" % max_shift)


class GenEigenspace:
    """A joint generalised eigenspace inside a QuasiSpace."""

    def __init__(self, space, mats, theta, vectors, free_leads, members=None, chi_min=None, r=None):
        self.space = space
        self.mats = mats
        self.theta = theta
        self.vectors = vectors  # coordinate vectors in space.basis
        self.leads = free_leads  # lead exponent of each vector
        self.members = members
        self.chi_min = chi_min
        self.r = r
        self._basis = None
        self._restricted = None

    @property
    def dim(self):
        return len(self.vectors)

    @property
    def basis(self):
        if self._basis is None:
            self._basis = [self.space.from_coords(v) for v in self.vectors]
        return self._basis

    def restricted(self):
        """Matrices of L_r - theta_r on this eigenspace (coordinates = values at leads)."""
        if self._restricted is None:
            pos = [self.space.index[e] for e in self.leads]
            out = []
            for A, th in zip(self.mats, self.theta):
                N = [[ZERO] * self.dim for _ in range(self.dim)]
                for t, v in enumerate(self.vectors):
                    w = [sum((A[i][j] * v[j] for j in range(len(v)) if v[j] and A[i][j]), ZERO)
                         for i in pos]
                    for s in range(self.dim):
                        N[s][t] = w[s] - (th * v[pos[s]] if v[pos[s]] else ZERO)
                out.append(N)
            self._restricted = out
        return self._restricted


def _diag(mats, i):
    return tuple(A[i][i] for A in mats)


def eigenspace_for(Q: QuasiSpace, mats, theta):
    """Joint generalised eigenspace of the matrices for the eigenvalue tuple theta.

    Returns (vectors, leads). Uses the invariant tail below the first
    basis element whose diagonal tuple equals theta; the exponent of each
    kernel is the algebraic multiplicity of theta_r on that tail.
    """
    d = Q.dim
    theta = tuple(theta)
    tops = [i for i in range(d) if _diag(mats, i) == theta]
    if not tops:
        return [], []
    j0 = tops[0]
    idx = list(range(d - 1, j0 - 1, -1))  # tail, lex-ascending
    size = len(idx)
    stacked = []
    for A, th in zip(mats, theta):
        sub = [[A[i][j] for j in idx] for i in idx]
        mult = sum(1 for t in range(size) if sub[t][t] == th)
        B = [[(x - th) if s == t else x for t, x in enumerate(row)] for s, row in enumerate(sub)]
        stacked.extend(mat_power(B, max(mult, 1)))
    vecs, free = nullspace(stacked, size)
    out = []
    leads = []
    for v, f in zip(vecs, free):
        full = [ZERO] * d
        for t, i in enumerate(idx):
            full[i] = v[t]
        out.append(full)
        leads.append(Q.leads[idx[f]])
    return out, leads


def spectral_split(Q: QuasiSpace, mats):
    """Dimensions of all joint generalised eigenspaces, keyed by theta tuple."""
    seen = {}
    for i in range(Q.dim):
        th = _diag(mats, i)
        if th not in seen:
            seen[th] = len(eigenspace_for(Q, mats, th)[0])
    return seen


def _b_signature(chi, n, m, R):
    from .rootsys import b_gen_eval

    return tuple(b_gen_eval(r, chi, n, m) for r in range(1, R + 1))


def separating_matrices(Q: QuasiSpace, chi, n: int, m: int, extra: int = 2, cap=None):
    """(R, mats) with mats the matrices of L_1..L_{R+extra} on Q, where R is
    the least number >= n+m of integrals whose eigenvalues on the leads of Q
    tie with those of chi exactly on the leads with the same Bernoulli
    values b_r, and the tie set does not change for L_{R+1}..L_{R+extra}."""
    chi = tuple(chi)
    if chi not in Q.index:
        raise TheoremViolation("weight %s is not a leading weight of its space" % (chi,))
    cells = max(sum(abs(x) for x in e) for e in Q.leads)
    Rb = 2 * max(cells, 1)
    sig = _b_signature(chi, n, m, Rb)
    target = {i for i, e in enumerate(Q.leads) if _b_signature(e, n, m, Rb) == sig}
    cap = cap or max(4 * (n + m) + 8, Rb + 2)
    base = max(n + m, 1)
    total = base + extra
    c = Q.index[chi]
    while True:
        mats = operator_matrices(Q, total)

        def ties(R):
            th = _diag(mats[:R], c)
            return {i for i in range(Q.dim) if _diag(mats[:R], i) == th}

        for R in range(base, total - extra + 1):
            if all(ties(R + e) == target for e in range(extra + 1)):
                return R, mats
        if total >= cap:
            raise TheoremViolation("integrals L_1..L_%d do not separate the class of %s" % (total, chi))
        total = min(cap, 2 * total)


def gen_eigenspace(chi, n: int, m: int, support_mode=None, extra=2, check=True):
    """Generalised eigenspace of the class of a regular dominant weight."""
    from .diagram import eq_class
    from .rootsys import is_regular

    chi = tuple(chi)
    if not is_regular(chi, n, m):
        raise ValueError("not in X_reg: %s" % (chi,))
    cls = eq_class(chi, n, m)
    if support_mode is None:
        support_mode = "orbit"
    support = class_support(cls.members, n, m, support_mode)
    Q = quasi_space(support, n, m)
    R, mats = separating_matrices(Q, chi, n, m, extra)
    theta = _diag(mats[:R], Q.index[chi])
    vecs, leads = eigenspace_for(Q, mats[:R], theta)
    if extra:
        vecs2, _ = eigenspace_for(Q, mats, _diag(mats, Q.index[chi]))
        if len(vecs2) != len(vecs):
            raise TheoremViolation("eigenspace not stable under adding higher integrals")
    G = GenEigenspace(Q, mats[:R], theta, vecs, leads, cls.members, cls.chi_min, cls.r)
    G.all_mats = mats
    if check and G.dim != 2 ** cls.r:
        raise TheoremViolation("generalised eigenspace has dimension %d, expected %d" % (G.dim, 2 ** cls.r))
    return G


def f_chi(chi, n: int, m: int) -> LaurentPoly:
    """Element of the theta_chi generalised eigenspace inside W(g), g the
    construction polynomial, with unique maximal term x^chi (coefficient 1)
    and coefficient 0 at the other leading weights of that eigenspace."""
    chi = tuple(chi)
    g = construction_poly(chi, n, m)
    if len(g) == 1:
        return g
    Q = quasi_space(lattice_hull(g.terms), n, m)
    R, mats = separating_matrices(Q, chi, n, m)
    theta = _diag(mats[:R], Q.index[chi])
    vecs, leads = eigenspace_for(Q, mats[:R], theta)
    f = Q.from_coords(vecs[leads.index(chi)])
    if max_terms(f) != {chi}:
        raise TheoremViolation("f_chi does not have x^chi as its unique maximal term")
    return f


# the image algebra -------------------------------------------------------------

def _flat(M):
    return [x for row in M for x in row]


def _unflat(v, d):
    return [v[i * d:(i + 1) * d] for i in range(d)]


class _Span:
    """Incrementally grown span of vectors, with exact membership tests."""

    def __init__(self, length):
        self.length = length
        self.vectors = []

    def add(self, v) -> bool:
        if not any(v):
            return False
        if rank(self.vectors + [v], self.length) > len(self.vectors):
            self.vectors.append(v)
            return True
        return False

    def contains(self, v) -> bool:
        return not any(v) or rank(self.vectors + [v], self.length) == len(self.vectors)

    def coords(self, v):
        from .linalg import solve_in_columns

        return solve_in_columns(self.vectors, v)


def _closure(gens, d, seed=()):
    """Span of all nonempty products of the generators (plus the seeds)."""
    S = _Span(d * d)
    frontier = []
    for M in list(seed) + list(gens):
        if S.add(_flat(M)):
            frontier.append(M)
    while frontier:
        new = []
        for X in frontier:
            for G in gens:
                P = matmul(X, G)
                if S.add(_flat(P)):
                    new.append(P)
        frontier = new
    return S


class LocalAlgebraReport(dict):
    """Structural profile of the algebra generated by nilpotent matrices."""


def _ideal_power(m_basis, j, d):
    """Basis of m^j as flattened matrices."""
    cur = _Span(d * d)
    for v in m_basis:
        cur.add(v)
    for _ in range(j - 1):
        nxt = _Span(d * d)
        for v in cur.vectors:
            for w in m_basis:
                nxt.add(_flat(matmul(_unflat(v, d), _unflat(w, d))))
        cur = nxt
        if not cur.vectors:
            break
    return cur


def _sqrt_ratk(x: RatK):
    """Square root in Q(k), or None."""
    from flint import fmpz_poly

    if not x:
        return x
    P = x.num * x.den
    lc = int(P.leading_coefficient())
    if lc < 0:
        return None
    try:
        s = P.sqrt()
    except Exception:
        return None
    if s is None:
        return None
    return RatK(s, x.den)


def _isotropic_directions(Q11, Q12, Q22):
    """Roots (a, b) of Q11 a^2 + 2 Q12 a b + Q22 b^2 = 0 over Q(k)."""
    if not Q11 and not Q22:
        return [(ONE, ZERO), (ZERO, ONE)] if Q12 else None
    if not Q11:
        return [(ONE, ZERO), (Q22, -(Q12 * 2))]
    disc = Q12 * Q12 - Q11 * Q22
    s = _sqrt_ratk(disc)
    if s is None or not disc:
        return None
    return [((-Q12 + s) / Q11, ONE), ((-Q12 - s) / Q11, ONE)]


def _isotropic_general(forms, r):
    """Common isotropic directions of r-variable quadratic forms over Q(k)
    (r >= 3) found with sympy; each form is a dict (i, j) -> coefficient."""
    import sympy

    k = sympy.Symbol("k")
    a = sympy.symbols("a0:%d" % r)

    def to_sym(x: RatK):
        num = sum(int(c) * k ** i for i, c in enumerate(x.num.coeffs()))
        den = sum(int(c) * k ** i for i, c in enumerate(x.den.coeffs()))
        return num / den

    eqs = [sympy.together(sum(to_sym(c) * a[i] * a[j] for (i, j), c in f.items())) for f in forms]
    found = []
    for lead in range(r):
        subs = {a[t]: 0 for t in range(lead)}
        subs[a[lead]] = 1
        sys_ = [sympy.numer(sympy.together(e.subs(subs))) for e in eqs]
        sys_ = [e for e in sys_ if e != 0]
        unknowns = list(a[lead + 1:])
        sols = sympy.solve(sys_, unknowns, dict=True) if sys_ else [{}]
        for sol in sols:
            vec = []
            ok = True
            for t in range(r):
                if t in range(lead):
                    vec.append(ZERO)
                elif t == lead:
                    vec.append(ONE)
                else:
                    val = sympy.together(sol.get(a[t], sympy.Integer(0)))
                    if val.free_symbols - {k}:
                        ok = False
                        break
                    num, den = sympy.fraction(val)
                    try:
                        pn = sympy.Poly(num, k)
                        pd = sympy.Poly(den, k)
                    except sympy.PolynomialError:
                        ok = False
                        break
                    if not all(c.is_rational for c in pn.all_coeffs() + pd.all_coeffs()):
                        ok = False
                        break
                    from fractions import Fraction

                    def conv(p):
                        cs = [Fraction(str(c)) for c in reversed(p.all_coeffs())]
                        dl = 1
                        for c in cs:
                            dl = dl * c.denominator // __import__("math").gcd(dl, c.denominator)
                        return [int(c * dl) for c in cs], dl

                    nc, nd = conv(pn)
                    dc, dd = conv(pd)
                    vec.append(RatK(nc, dc) * RatK(dd) / RatK(nd))
            if ok:
                found.append(vec)
    return found


def analyze_local_algebra(gens, dim_space=None):
    """Profile of the unital algebra generated by commuting nilpotent matrices.

    Reports dimension, nilpotency index of the maximal ideal, dim m/m^2,
    square-zero generators whose square-free products form a basis, a cyclic
    vector and the structure constants in that basis.
    """
    d = dim_space if dim_space is not None else (len(gens[0]) if gens else 1)
    I = identity(d)
    rep = LocalAlgebraReport()
    m_span = _closure(gens, d)
    m_basis = m_span.vectors
    A = _Span(d * d)
    A.add(_flat(I))
    for v in m_basis:
        A.add(v)
    rep["dimension"] = len(A.vectors)
    rep["ideal_dimension"] = len(m_basis)
    rep["commutative"] = all(matmul(X, Y) == matmul(Y, X) for X in gens for Y in gens)
    # nilpotency of m
    j = 1
    powers = {1: m_span}
    while True:
        P = _ideal_power(m_basis, j + 1, d) if m_basis else _Span(d * d)
        powers[j + 1] = P
        if not P.vectors:
            break
        j += 1
        if j > d + 1:
            raise TheoremViolation("maximal ideal is not nilpotent")
    rep["nilpotency_index"] = (j + 1) if m_basis else 1
    m2 = powers.get(2, _Span(d * d))
    cot = len(m_basis) - len(m2.vectors)
    rep["cotangent_dim"] = cot
    rep["local"] = rep["dimension"] == 1 + len(m_basis)
    # square-zero generators
    gens_sq = _square_zero_generators(m_basis, m2, cot, d)
    rep["square_zero_generators"] = gens_sq
    if gens_sq is not None:
        prods = _squarefree_products(gens_sq, d)
        B = _Span(d * d)
        independent = all(B.add(_flat(P)) for _, P in prods)
        rep["squarefree_basis"] = independent and len(B.vectors) == rep["dimension"]
        rep["isomorphism_witness"] = _structure_table(prods, B, d)
        rep["witness_matches_dual_numbers"] = _witness_ok(rep["isomorphism_witness"])
    else:
        rep["squarefree_basis"] = False
        rep["isomorphism_witness"] = None
        rep["witness_matches_dual_numbers"] = False
    # cyclic vector
    rep["cyclic_vector"] = _cyclic_vector([_unflat(v, d) for v in A.vectors], d)
    rep["regular_module"] = rep["cyclic_vector"] is not None and rep["dimension"] == d
    return rep


def _square_zero_generators(m_basis, m2, r, d):
    if r == 0:
        return []
    # lifts of a basis of m / m^2
    lifts = []
    S = _Span(d * d)
    for v in m2.vectors:
        S.add(v)
    for v in m_basis:
        if S.add(v):
            lifts.append(_unflat(v, d))
    if len(lifts) != r:
        return None
    if r == 1:
        cands = [lifts[0]]
    else:
        # quadratic map m/m^2 -> m^2/m^3 in coordinates
        m3 = _ideal_power(m_basis, 3, d)
        quot = _Span(d * d)
        for v in m3.vectors:
            quot.add(v)
        comp = []
        for v in m2.vectors:
            if quot.add(v):
                comp.append(v)
        basis_q = m3.vectors + comp

        def coords_mod(v):
            y = _Span_coords(basis_q, v)
            return y[len(m3.vectors):]

        forms = [{} for _ in comp]
        for i in range(r):
            for j in range(i, r):
                P = _flat(matmul(lifts[i], lifts[j]))
                y = coords_mod(P)
                for l, c in enumerate(y):
                    if c:
                        forms[l][(i, j)] = c if i == j else c * 2
        if r == 2:
            if len(forms) != 1:
                return None
            f = forms[0]
            dirs = _isotropic_directions(f.get((0, 0), ZERO), f.get((0, 1), ZERO) / 2, f.get((1, 1), ZERO))
        else:
            dirs = _isotropic_general(forms, r)
        if not dirs or len(dirs) < r:
            return None
        cands = []
        for vec in dirs[:r] if r == 2 else dirs:
            M = [[ZERO] * d for _ in range(d)]
            for c, L in zip(vec, lifts):
                if c:
                    M = [[x + c * y for x, y in zip(rm, rl)] for rm, rl in zip(M, L)]
            cands.append(M)
    out = []
    for g in cands:
        g = _correct_square_zero(g, m_basis, d)
        if g is None:
            return None
        out.append(g)
    if len(out) != r:
        return None
    return out


def _Span_coords(vectors, v):
    from .linalg import solve_in_columns

    y = solve_in_columns(vectors, v)
    if y is None:
        raise TheoremViolation("vector not in the expected span")
    return y


def _correct_square_zero(g, m_basis, d):
    """Add h in m^2 (order by order) so that (g + h)^2 = 0; None if impossible."""
    sq = matmul(g, g)
    if not any(_flat(sq)):
        return g
    # linear correction in the span of m^2: solve 2 g h + h^2 = -g^2 iteratively
    m2 = _ideal_power(m_basis, 2, d).vectors
    for _ in range(d + 1):
        sq = matmul(g, g)
        if not any(_flat(sq)):
            return g
        cols = [_flat(matmul(g, _unflat(v, d))) for v in m2]
        cols = [[x * 2 for x in c] for c in cols]
        from .linalg import solve_in_columns

        y = solve_in_columns(cols, [-x for x in _flat(sq)])
        if y is None:
            return None
        h = [[ZERO] * d for _ in range(d)]
        for c, v in zip(y, m2):
            if c:
                V = _unflat(v, d)
                h = [[x + c * z for x, z in zip(rh, rv)] for rh, rv in zip(h, V)]
        g = [[x + z for x, z in zip(rg, rh)] for rg, rh in zip(g, h)]
    return g if not any(_flat(matmul(g, g))) else None


def _squarefree_products(gs, d):
    out = []
    for size in range(len(gs) + 1):
        for S in itertools.combinations(range(len(gs)), size):
            P = identity(d)
            for i in S:
                P = matmul(P, gs[i])
            out.append((S, P))
    return out


def _structure_table(prods, B, d):
    """g_S * g_T expressed in the square-free basis: {(S, T): {U: coeff}}."""
    index = [S for S, _ in prods]
    vecs = [_flat(P) for _, P in prods]
    table = {}
    for (S, P), (T, Q) in itertools.product(prods, prods):
        if S > T:
            continue
        y = _Span_coords(vecs, _flat(matmul(P, Q)))
        table[(S, T)] = {index[u]: c for u, c in enumerate(y) if c}
    return table


def _witness_ok(table):
    for (S, T), val in table.items():
        if set(S) & set(T):
            if val:
                return False
        else:
            U = tuple(sorted(set(S) | set(T)))
            if val != {U: ONE}:
                return False
    return True


def _cyclic_vector(alg, d):
    cands = [[ONE if i == j else ZERO for i in range(d)] for j in range(d)]
    cands.append([ONE] * d)
    cands.append([RatK(i + 1) for i in range(d)])
    for v in cands:
        images = [[sum((row[j] * v[j] for j in range(d) if row[j] and v[j]), ZERO) for row in M]
                  for M in alg]
        if rank(images, d) == d:
            return v
    return None


def image_algebra(chi, n: int, m: int, **kw):
    G = gen_eigenspace(chi, n, m, **kw)
    rep = analyze_local_algebra(G.restricted(), G.dim)
    rep["r"] = G.r
    rep["space_dimension"] = G.dim
    return rep


def eigenfunction(chi, n: int, m: int, G=None, **kw) -> LaurentPoly:
    """The joint eigenfunction in the generalised eigenspace, normalised to
    coefficient 1 at its lex-leading term."""
    if G is None:
        G = gen_eigenspace(chi, n, m, **kw)
    stacked = [row for N in G.restricted() for row in N]
    vecs, _ = nullspace(stacked, G.dim) if stacked else ([[ONE]], [0])
    if len(vecs) != 1:
        raise TheoremViolation("joint eigenspace has dimension %d" % len(vecs))
    y = vecs[0]
    f = LaurentPoly.zero((n, m))
    for c, b in zip(y, G.basis):
        if c:
            f = f + b.scale(c)
    top = max(f.terms, key=lex_key)
    return f.scale(f.coeff(top).inverse())


# power sums --------------------------------------------------------------------------

def _multisets(bound_pos, bound_neg):
    """Multisets of nonzero ints with positive part sum <= bound_pos and
    negative part sum >= -bound_neg, as sorted tuples."""

    def parts(total, maxpart):
        if total == 0:
            yield ()
            return
        for p in range(min(total, maxpart), 0, -1):
            for rest in parts(total - p, p):
                yield (p,) + rest

    pos = [lam for t in range(bound_pos + 1) for lam in parts(t, t)]
    neg = [lam for t in range(bound_neg + 1) for lam in parts(t, t)]
    for a in pos:
        for b in neg:
            yield a + tuple(-x for x in b)


def power_sum_generation_check(window, n: int, m: int, slack=None) -> bool:
    """Does the span of products of deformed power sums, intersected with
    the polynomials supported in the window, equal the quasi-invariants
    supported in the window?"""
    window = set(tuple(e) for e in window)
    Q = quasi_space(window, n, m)
    B = max(max(abs(x) for x in e) for e in window)
    extra = B if slack is None else slack
    degrees = {sum(e) for e in window}
    psum = {}
    polys = []
    for ms in _multisets(B + extra, B + extra):
        if sum(ms) not in degrees:
            continue
        f = LaurentPoly.constant(ONE, (n, m))
        for s in ms:
            if s not in psum:
                psum[s] = deformed_power_sum(s, n, m)
            f = f * psum[s]
        polys.append(f)
    if not polys:
        return Q.dim == 0
    exps = sorted(set().union(*[set(p.terms) for p in polys]))
    outside = [e for e in exps if e not in window]
    inside = [e for e in exps if e in window]
    rows = [[p.coeff(e) for p in polys] for e in outside]
    vecs, _ = nullspace(rows, len(polys))
    # polynomials of the span lying in the window, in window coordinates
    combos = [[sum((y[t] * polys[t].coeff(e) for t in range(len(polys)) if y[t]), ZERO) for e in inside]
              for y in vecs]
    # inclusion in the quasi-invariants, then equal dimension
    for row in combos:
        g = LaurentPoly({e: c for e, c in zip(inside, row) if c}, (n, m))
        if not Q.contains(g):
            return False
    dim_p = rank(combos, len(inside)) if combos else 0
    return dim_p == Q.dim
