"""Sparse Laurent polynomials in x_1..x_{n+m} over Q(k).

Exponent vectors are plain tuples of ints. The first n variables form the
even block, the last m the odd block; S_n x S_m permutes within blocks.
"""

import itertools
import json
from fractions import Fraction

from .kfield import ONE, RatK, ZERO, as_ratk, parse_ratk

__all__ = [
    "LaurentPoly",
    "partial_leq",
    "prefix_sums",
    "lex_key",
    "support_members",
    "lattice_hull",
    "max_terms",
    "sym_apply",
    "sym_invariant",
    "deformed_power_sum",
    "schur_poly",
    "orbit",
    "dominant_rep",
    "is_dominant",
    "block_transpositions",
    "monomial_symmetric",
]


class LaurentPoly:
    """Finite map exponent -> RatK with no stored zeros."""

    __slots__ = ("terms", "dims")

    def __init__(self, terms=None, dims=(0, 0)):
        self.dims = (int(dims[0]), int(dims[1]))
        nv = self.dims[0] + self.dims[1]
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nv:
                    raise ValueError("exponent %r has wrong length for dims %r" % (e, self.dims))
                c = as_ratk(c)
                if c:
                    clean[e] = clean[e] + c if e in clean else c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean

    @classmethod
    def _raw(cls, terms, dims):
        obj = object.__new__(cls)
        obj.terms = terms
        obj.dims = dims
        return obj

    @classmethod
    def monomial(cls, exp, dims, coeff=ONE):
        return cls({tuple(exp): coeff}, dims)

    @classmethod
    def constant(cls, c, dims):
        nv = dims[0] + dims[1]
        return cls({(0,) * nv: c}, dims)

    @classmethod
    def zero(cls, dims):
        return cls._raw({}, tuple(dims))

    @property
    def nvars(self):
        return self.dims[0] + self.dims[1]

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, exp) -> RatK:
        return self.terms.get(tuple(exp), ZERO)

    def support(self):
        """M(f): the set of exponents carrying nonzero coefficients."""
        return set(self.terms)

    def items(self):
        """Terms in lexicographic order of exponents."""
        return sorted(self.terms.items())

    # arithmetic -----------------------------------------------------------
    def _check(self, other):
        if self.dims != other.dims:
            raise ValueError("dimension mismatch: %r vs %r" % (self.dims, other.dims))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.dims)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return LaurentPoly._raw(out, self.dims)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.dims)

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.dims)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentPoly":
        c = as_ratk(c)
        if not c:
            return LaurentPoly.zero(self.dims)
        if c == ONE:
            return self
        return LaurentPoly._raw({e: v * c for e, v in self.terms.items()}, self.dims)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, self.dims)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = LaurentPoly.constant(ONE, self.dims)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, exp) -> "LaurentPoly":
        """Multiply by the monomial x^exp."""
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()}, self.dims)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.dims == other.dims and self.terms == other.terms
        if isinstance(other, (int, Fraction, RatK)):
            return self == LaurentPoly.constant(other, self.dims)
        return NotImplemented

    def __hash__(self):
        return hash((self.dims, frozenset(self.terms.items())))

    # text -----------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = " ".join("x%d^%d" % (i + 1, a) if a != 1 else "x%d" % (i + 1)
                            for i, a in enumerate(e) if a != 0)
            cs = "(%s)" % c if not (c.is_polynomial() and c.num.degree() == 0) else str(c)
            parts.append("%s * %s" % (cs, mono) if mono else cs)
        return " + ".join(parts)

    def __repr__(self):
        return "LaurentPoly(%s; dims=%r)" % (self, self.dims)

    def to_json_obj(self):
        return {
            "dims": list(self.dims),
            "terms": [{"exp": list(e), "coeff": c.to_text()} for e, c in self.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj):
        dims = tuple(obj["dims"])
        return cls({tuple(t["exp"]): parse_ratk(t["coeff"]) for t in obj["terms"]}, dims)

    @classmethod
    def from_json(cls, text: str):
        return cls.from_json_obj(json.loads(text))


# order --------------------------------------------------------------------

def prefix_sums(exp):
    return tuple(itertools.accumulate(exp))


def partial_leq(a, b) -> bool:
    """a ⪯ b: every prefix sum of a is at most the matching prefix sum of b."""
    if len(a) != len(b):
        raise ValueError("length mismatch")
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


def lex_key(exp):
    """A total order refining ⪯ (lexicographic on prefix sums)."""
    return prefix_sums(exp)


def max_terms(f: LaurentPoly):
    """The ⪯-maximal exponents of M(f)."""
    if f.is_zero():
        raise ValueError("zero polynomial has no terms")
    pts = sorted(f.terms, key=lex_key, reverse=True)
    out = []
    for p in pts:
        # anything dominating p sorts before it
        if not any(partial_leq(p, q) for q in out):
            out.append(p)
    return set(out)


# convex hull lattice points ------------------------------------------------

def _rref(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def _integer_normal(vectors, d):
    """Integer vector orthogonal to the given d-1 vectors in Q^d."""
    mat, piv = _rref(vectors)
    free = [c for c in range(d) if c not in piv]
    if len(free) != 1:
        return None
    fc = free[0]
    v = [Fraction(0)] * d
    v[fc] = Fraction(1)
    for row, pc in zip(mat, piv):
        v[pc] = -row[fc]
    den = 1
    for x in v:
        den = den * x.denominator // _gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    return tuple(x // g for x in ints)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _facets(points, d):
    """Exact facet inequalities (normal, bound) with normal . x <= bound."""
    if d == 1:
        xs = [p[0] for p in points]
        return [((1,), max(xs)), ((-1,), -min(xs))]
    from scipy.spatial import ConvexHull

    hull = ConvexHull([[float(x) for x in p] for p in points])
    cen = [Fraction(sum(p[i] for p in points), len(points)) for i in range(d)]
    out = set()
    for simplex in hull.simplices:
        verts = [points[i] for i in simplex]
        base = verts[0]
        diffs = [[v[i] - base[i] for i in range(d)] for v in verts[1:]]
        normal = _integer_normal(diffs, d)
        if normal is None:
            continue
        bound = sum(a * b for a, b in zip(normal, base))
        if sum(a * b for a, b in zip(normal, cen)) > bound:
            normal = tuple(-a for a in normal)
            bound = -bound
        # exact check: every point lies on the correct side
        if all(sum(a * b for a, b in zip(normal, p)) <= bound for p in points):
            out.add((normal, bound))
    return sorted(out)


def lattice_hull(points):
    """All lattice points in the convex hull of a finite set of integer vectors."""
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if not pts:
        raise ValueError("empty point set")
    if len(pts) == 1:
        return set(pts)
    base = pts[0]
    diffs = [[p[i] - base[i] for i in range(len(base))] for p in pts[1:]]
    basis, piv = _rref(diffs)
    d = len(piv)
    proj = sorted(set(tuple(p[c] for c in piv) for p in pts))
    facets = _facets(proj, d)
    lo = [min(p[i] for p in proj) for i in range(d)]
    hi = [max(p[i] for p in proj) for i in range(d)]
    out = set()
    for y in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        if any(sum(a * b for a, b in zip(nrm, y)) > bd for nrm, bd in facets):
            continue
        t = [y[i] - base[piv[i]] for i in range(d)]
        x = []
        ok = True
        for j in range(len(base)):
            v = base[j] + sum(t[i] * basis[i][j] for i in range(d))
            if v.denominator != 1:
                ok = False
                break
            x.append(int(v))
        if ok:
            out.add(tuple(x))
    return out


def support_members(f: LaurentPoly):
    """S(f): lattice points of the convex hull of M(f)."""
    if f.is_zero():
        raise ValueError("zero polynomial has empty support")
    return lattice_hull(f.terms.keys())


# symmetry -------------------------------------------------------------------

def sym_apply(w, f: LaurentPoly) -> LaurentPoly:
    """Apply the permutation w (a tuple, w[i] = image of variable index i, 0-based).

    The variable x_i is sent to x_{w[i]}.
    """
    n, m = f.dims
    w = tuple(w)
    if sorted(w[:n]) != list(range(n)) or sorted(w[n:]) != list(range(n, n + m)):
        raise ValueError("permutation must preserve the two blocks")
    out = {}
    for e, c in f.terms.items():
        ne = [0] * len(e)
        for i, a in enumerate(e):
            ne[w[i]] = a
        out[tuple(ne)] = c
    return LaurentPoly._raw(out, f.dims)


def block_transpositions(n, m):
    """Adjacent transpositions generating S_n x S_m, as index tuples."""
    gens = []
    for start, size in ((0, n), (n, m)):
        for i in range(start, start + size - 1):
            w = list(range(n + m))
            w[i], w[i + 1] = w[i + 1], w[i]
            gens.append(tuple(w))
    return gens


def sym_invariant(f: LaurentPoly) -> bool:
    return all(sym_apply(w, f) == f for w in block_transpositions(*f.dims))


def is_dominant(exp, n, m) -> bool:
    a, b = exp[:n], exp[n:]
    return all(a[i] >= a[i + 1] for i in range(n - 1)) and all(b[j] >= b[j + 1] for j in range(m - 1))


def dominant_rep(exp, n, m):
    """Sort each block decreasingly."""
    return tuple(sorted(exp[:n], reverse=True)) + tuple(sorted(exp[n:], reverse=True))


def orbit(exp, n, m):
    """The S_n x S_m orbit of an exponent vector."""
    a = set(itertools.permutations(exp[:n]))
    b = set(itertools.permutations(exp[n:]))
    return {x + y for x in a for y in b}


def monomial_symmetric(exp, dims, coeff=ONE) -> LaurentPoly:
    """Orbit sum of x^exp under S_n x S_m."""
    return LaurentPoly({e: coeff for e in orbit(tuple(exp), *dims)}, dims)


# distinguished polynomials -------------------------------------------------

def deformed_power_sum(s: int, n: int, m: int) -> LaurentPoly:
    """x_1^s + ... + x_n^s + k^-1 (x_{n+1}^s + ... + x_{n+m}^s)."""
    if s == 0:
        raise ValueError("power sum index must be nonzero")
    kinv = RatK.k_power(-1)
    terms = {}
    for i in range(n + m):
        e = [0] * (n + m)
        e[i] = s
        terms[tuple(e)] = ONE if i < n else kinv
    return LaurentPoly(terms, (n, m))


def _complete_homogeneous(d, idx, dims):
    nv = dims[0] + dims[1]
    if d < 0:
        return LaurentPoly.zero(dims)
    terms = {}
    for combo in itertools.combinations_with_replacement(idx, d):
        e = [0] * nv
        for i in combo:
            e[i] += 1
        terms[tuple(e)] = ONE
    return LaurentPoly(terms, dims)


def schur_poly(lam, block: str, n: int, m: int) -> LaurentPoly:
    """Schur polynomial s_lam in the first n ("first") or last m ("last") variables.

    Computed by the Jacobi-Trudi determinant det(h_{lam_i - i + j}).
    """
    lam = [int(x) for x in lam if x != 0]
    dims = (n, m)
    if block == "first":
        idx = list(range(n))
    elif block == "last":
        idx = list(range(n, n + m))
    else:
        raise ValueError("block must be 'first' or 'last'")
    if len(lam) > len(idx):
        raise ValueError("partition %r has more parts than the block has variables" % (lam,))
    ell = len(lam)
    if ell == 0:
        return LaurentPoly.constant(ONE, dims)
    cache = {}

    def h(d):
        if d not in cache:
            cache[d] = _complete_homogeneous(d, idx, dims)
        return cache[d]

    total = LaurentPoly.zero(dims)
    for perm in itertools.permutations(range(ell)):
        sign = _perm_sign(perm)
        term = LaurentPoly.constant(ONE if sign > 0 else -ONE, dims)
        for i in range(ell):
            term = term * h(lam[i] - i + perm[i])
            if term.is_zero():
                break
        total = total + term
    return total


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign
