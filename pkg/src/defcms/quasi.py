"""Quasi-invariants, quasi-homomorphisms, the quantum Moser matrix and the
commuting integrals L_r it produces.

Variables are indexed 0..n+m-1 here; index i is odd (parity 1) when i >= n.
The directional derivative along e_i is k^p(i) x_i d/dx_i.
"""

from .kfield import K, ONE, RatK
from .laurent import LaurentPoly, block_transpositions, sym_apply, sym_invariant

__all__ = [
    "NotQuasiError",
    "parity",
    "dir_derivative",
    "euler_part",
    "divide_by_difference",
    "is_divisible_by_difference",
    "is_quasi_invariant",
    "QuasiMap",
    "is_quasi_homomorphism",
    "moser_apply",
    "integral_apply",
    "integrals_upto",
    "cms2_apply",
    "commute_check",
]

KINV = RatK.k_power(-1)


class NotQuasiError(ValueError):
    """Raised when an exact division required by the construction fails."""


def parity(i: int, n: int) -> int:
    return 0 if i < n else 1


def euler_part(i: int, f: LaurentPoly) -> LaurentPoly:
    """x_i d/dx_i f."""
    out = {}
    for e, c in f.terms.items():
        if e[i]:
            out[e] = c * e[i]
    return LaurentPoly._raw(out, f.dims)


def dir_derivative(i: int, f: LaurentPoly) -> LaurentPoly:
    """k^p(i) x_i d/dx_i f."""
    g = euler_part(i, f)
    return g.scale(K) if parity(i, f.dims[0]) else g


def _groups(f: LaurentPoly, i: int, j: int):
    groups = {}
    for e, c in f.terms.items():
        rest = e[:i] + (0,) + e[i + 1:]
        rest = rest[:j] + (e[i] + e[j],) + rest[j + 1:]
        groups.setdefault(rest, {})[e[i]] = c
    return groups


def is_divisible_by_difference(f: LaurentPoly, i: int, j: int) -> bool:
    """True iff f vanishes under x_j := x_i."""
    sums = {}
    for e, c in f.terms.items():
        key = e[:i] + (e[i] + e[j],) + e[i + 1:]
        key = key[:j] + (0,) + key[j + 1:]
        sums[key] = sums[key] + c if key in sums else c
    return all(not v for v in sums.values())


def divide_by_difference(f: LaurentPoly, i: int, j: int) -> LaurentPoly:
    """Exact quotient f / (x_i - x_j); raises NotQuasiError when not exact."""
    if i == j:
        raise ValueError("need distinct variables")
    out = {}
    for rest, cs in _groups(f, i, j).items():
        s = rest[j]
        ts = sorted(cs)
        total = None
        for t in ts:
            total = cs[t] if total is None else total + cs[t]
        if total:
            raise NotQuasiError("not divisible by x%d - x%d" % (i + 1, j + 1))
        # q_t = sum of c_t' for t' > t, for t in [tmin, tmax - 1]
        acc = None
        for t in range(ts[-1] - 1, ts[0] - 1, -1):
            c = cs.get(t + 1)
            if c is not None:
                acc = c if acc is None else acc + c
            if acc is not None and acc:
                e = list(rest)
                e[i] = t
                e[j] = s - 1 - t
                out[tuple(e)] = acc
    return LaurentPoly._raw(out, f.dims)


def _odd_pairs(n, m):
    return [(i, j) for i in range(n) for j in range(n, n + m)]


def _substitute_test(f: LaurentPoly, i: int, j: int) -> bool:
    """x_i f_i - k x_j f_j vanishes under x_j := x_i."""
    sums = {}
    for e, c in f.terms.items():
        w = c * (K * (-e[j]) + e[i]) if e[j] else (c * e[i] if e[i] else None)
        if w is None or not w:
            continue
        key = e[:i] + (e[i] + e[j],) + e[i + 1:]
        key = key[:j] + (0,) + key[j + 1:]
        sums[key] = sums[key] + w if key in sums else w
    return all(not v for v in sums.values())


def is_quasi_invariant(f: LaurentPoly) -> bool:
    n, m = f.dims
    if not sym_invariant(f):
        return False
    return all(_substitute_test(f, i, j) for i, j in _odd_pairs(n, m))


class QuasiMap:
    """A linear map V -> Laurent polynomials, given by the images of e_1..e_{n+m}."""

    __slots__ = ("images", "dims")

    def __init__(self, images, dims):
        self.dims = tuple(dims)
        self.images = [img for img in images]
        if len(self.images) != self.dims[0] + self.dims[1]:
            raise ValueError("need one image per basis vector")
        for img in self.images:
            if img.dims != self.dims:
                raise ValueError("image dims mismatch")

    @classmethod
    def constant(cls, f: LaurentPoly):
        return cls([f] * f.nvars, f.dims)

    def __call__(self, v):
        """Image of a vector given by coordinates (RatK-compatible)."""
        out = LaurentPoly.zero(self.dims)
        for c, img in zip(v, self.images):
            if c:
                out = out + img.scale(c)
        return out

    def __eq__(self, other):
        return isinstance(other, QuasiMap) and self.dims == other.dims and self.images == other.images

    def contracted(self) -> LaurentPoly:
        """sum_i k^-p(i) phi(e_i)."""
        n = self.dims[0]
        out = LaurentPoly.zero(self.dims)
        for i, img in enumerate(self.images):
            out = out + (img.scale(KINV) if parity(i, n) else img)
        return out


def is_quasi_homomorphism(phi: QuasiMap) -> bool:
    n, m = phi.dims
    nv = n + m
    # equivariance under block transpositions
    for w in block_transpositions(n, m):
        for s in range(nv):
            if sym_apply(w, phi.images[s]) != phi.images[w[s]]:
                return False
    for i, j in _odd_pairs(n, m):
        # b*: phi(alpha) divisible by x_i - x_j
        if not is_divisible_by_difference(phi.images[i] - phi.images[j], i, j):
            return False
        # a*: d_alpha phi(v) divisible for v spanning the orthogonal hyperplane
        span = [phi.images[s] for s in range(nv) if s not in (i, j)]
        span.append(phi.images[i] + phi.images[j].scale(KINV))
        for g in span:
            da = dir_derivative(i, g) - dir_derivative(j, g)
            if not is_divisible_by_difference(da, i, j):
                return False
    return True


def _couple(n, j):
    """k^(1 - p(j))."""
    return K if parity(j, n) == 0 else ONE


def moser_apply(phi: QuasiMap) -> QuasiMap:
    """psi(e_i) = d_i phi(e_i) - sum_{j != i} k^(1-p(j)) x_i (phi(e_i) - phi(e_j)) / (x_i - x_j)."""
    n, m = phi.dims
    nv = n + m
    imgs = phi.images
    out = []
    for i in range(nv):
        acc = dir_derivative(i, imgs[i])
        for j in range(nv):
            if j == i:
                continue
            diff = imgs[i] - imgs[j]
            if diff.is_zero():
                continue
            try:
                q = divide_by_difference(diff, i, j)
            except NotQuasiError:
                raise NotQuasiError("input not a quasi-homomorphism") from None
            step = [0] * nv
            step[i] = 1
            acc = acc - q.shift(step).scale(_couple(n, j))
        out.append(acc)
    return QuasiMap(out, phi.dims)


def integrals_upto(R: int, f: LaurentPoly):
    """[L_1 f, ..., L_R f] computed in one pass of the Moser recursion."""
    phi = QuasiMap.constant(f)
    res = []
    for _ in range(R):
        phi = moser_apply(phi)
        res.append(phi.contracted())
    return res


def integral_apply(r: int, f: LaurentPoly) -> LaurentPoly:
    if r < 1:
        raise ValueError("r must be positive")
    return integrals_upto(r, f)[-1]


def cms2_apply(f: LaurentPoly) -> LaurentPoly:
    """Second order deformed CMS operator written with explicit difference quotients.

    sum_{i<=n} (x_i d_i)^2 + k sum_{j>n} (x_j d_j)^2
    - k sum_{i<j<=n} (x_i+x_j)/(x_i-x_j) (x_i d_i - x_j d_j)
    - sum_{n<i<j} (x_i+x_j)/(x_i-x_j) (x_i d_i - x_j d_j)
    - sum_{i<=n<j} (x_i+x_j)/(x_i-x_j) (x_i d_i - k x_j d_j)
    """
    n, m = f.dims
    nv = n + m
    eul = [euler_part(i, f) for i in range(nv)]
    out = LaurentPoly.zero(f.dims)
    for i in range(nv):
        sq = euler_part(i, eul[i])
        out = out + (sq.scale(K) if i >= n else sq)
    for i in range(nv):
        for j in range(i + 1, nv):
            if j < n:
                h, c = eul[i] - eul[j], K
            elif i >= n:
                h, c = eul[i] - eul[j], ONE
            else:
                h, c = eul[i] - eul[j].scale(K), ONE
            if h.is_zero():
                continue
            try:
                q = divide_by_difference(h, i, j)
            except NotQuasiError:
                raise NotQuasiError("input not quasi-invariant") from None
            ei = [0] * nv
            ei[i] = 1
            ej = [0] * nv
            ej[j] = 1
            out = out - (q.shift(ei) + q.shift(ej)).scale(c)
    return out


def commute_check(r: int, s: int, f: LaurentPoly) -> bool:
    """L_r L_s f == L_s L_r f."""
    R = max(r, s)
    base = integrals_upto(R, f)
    a = integral_apply(r, base[s - 1])
    b = integral_apply(s, base[r - 1])
    return a == b
