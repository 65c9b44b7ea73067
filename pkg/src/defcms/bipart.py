"""Bipartitions in the (n, m) cross and their bijection with dominant weights.

A partition is a tuple of weakly decreasing positive integers. Young lines
use the same conventions as the weight lines of the diagram module: the
vertical unit edge of row [i-1, i] sits at x = lambda_i, so the line runs
from the ray up the y-axis to the ray along y = 0. The point reflection
theta(x, y) = (m - x, n - y) exchanges the corners (0, 0) and (m, n) of the
rectangle in which the two lines must meet.
"""

from .diagram import _decode, _walk, _dedupe
from .laurent import is_dominant

__all__ = [
    "normalize_partition",
    "conjugate",
    "in_hook",
    "in_cross",
    "hook_pairs",
    "extremal_pair",
    "f_map",
    "pi_map",
    "YoungLine",
    "young_line",
    "theta_flip",
    "line_intersections",
    "sigma_map",
    "pi_inverse",
    "partitions_upto",
]


def normalize_partition(lam):
    lam = [int(x) for x in lam]
    if any(x < 0 for x in lam) or any(x < y for x, y in zip(lam, lam[1:])):
        raise ValueError("not a partition: %r" % (lam,))
    while lam and lam[-1] == 0:
        lam.pop()
    return tuple(lam)


def _part(lam, i):
    """lambda_i (1-based), zero beyond the length."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def conjugate(lam):
    lam = normalize_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1))


def in_hook(lam, n: int, m: int) -> bool:
    """lambda in H(n, m): lambda_{n+1} <= m."""
    if n < 0 or m < 0:
        return False
    return _part(normalize_partition(lam), n + 1) <= m


def hook_pairs(lam, mu, n: int, m: int):
    """H(lambda, mu) = {(i, j) : lambda in H(i, m-j), mu in H(n-i, j)}."""
    return [(i, j) for i in range(n + 1) for j in range(m + 1)
            if in_hook(lam, i, m - j) and in_hook(mu, n - i, j)]


def in_cross(lam, mu, n: int, m: int) -> bool:
    return bool(hook_pairs(lam, mu, n, m))


def extremal_pair(lam, mu, n: int, m: int):
    H = hook_pairs(lam, mu, n, m)
    if not H:
        raise ValueError("bipartition not in the (%d,%d) cross" % (n, m))
    p = max(i for i, _ in H)
    s = max(j for i, j in H if i == p)
    return p, s


def f_map(lam, mu, n: int, m: int):
    """(lam~, mu~, n~, m~): subtract lambda_{n+1} from the first n rows of
    lambda and mu'_{m+1} from the first m columns of mu."""
    lam = normalize_partition(lam)
    mu = normalize_partition(mu)
    if not in_cross(lam, mu, n, m):
        raise ValueError("bipartition not in the (%d,%d) cross" % (n, m))
    ln1 = _part(lam, n + 1)
    mc = conjugate(mu)
    mm1 = _part(mc, m + 1)
    lt = normalize_partition([_part(lam, i) - ln1 for i in range(1, n + 1)])
    mct = normalize_partition([_part(mc, j) - mm1 for j in range(1, m + 1)])
    return lt, conjugate(mct), n - mm1, m - ln1


def pi_map(lam, mu, n: int, m: int):
    """(lam_1..lam_p, m-mu_q..m-mu_1 | lam'_1-n..lam'_r-n, -mu'_s..-mu'_1)
    with (p, s) the extremal pair, q = n-p, r = m-s."""
    lam = normalize_partition(lam)
    mu = normalize_partition(mu)
    p, s = extremal_pair(lam, mu, n, m)
    q, r = n - p, m - s
    lc, mc = conjugate(lam), conjugate(mu)
    a = [_part(lam, i) for i in range(1, p + 1)] + [m - _part(mu, i) for i in range(q, 0, -1)]
    b = [_part(lc, j) - n for j in range(1, r + 1)] + [-_part(mc, j) for j in range(s, 0, -1)]
    chi = tuple(a + b)
    if not is_dominant(chi, n, m):
        raise AssertionError("pi produced a non-dominant weight")
    return chi


# Young lines ------------------------------------------------------------------------

class YoungLine:
    """Lattice points of a Young line inside a box, in decreasing order
    (higher y first, then smaller x)."""

    def __init__(self, points):
        self.points = list(points)

    def __eq__(self, other):
        return isinstance(other, YoungLine) and self.points == other.points

    def __contains__(self, p):
        return p in set(self.points)


def young_line(lam, box) -> YoungLine:
    """Y_lambda clipped to box = (xmin, xmax, ymin, ymax); the box must
    contain the diagram corner points."""
    lam = normalize_partition(lam)
    xmin, xmax, ymin, ymax = box
    L = len(lam)
    if L > ymax or (lam and lam[0] > xmax):
        raise ValueError("box too small for the partition")
    corners = [(0, ymax), (0, L)]
    for i in range(L, 0, -1):
        corners.append((lam[i - 1], i))
        corners.append((lam[i - 1], i - 1))
    corners.append((xmax, 0))
    return YoungLine(_dedupe(_walk(_dedupe(corners))))


def theta_flip(n: int, m: int, line: YoungLine) -> YoungLine:
    """Image under (x, y) -> (m - x, n - y); the order reverses."""
    return YoungLine([(m - x, n - y) for x, y in reversed(line.points)])


def _flip_box(n, m, box):
    xmin, xmax, ymin, ymax = box
    return (m - xmax, m - xmin, n - ymax, n - ymin)


def _common_box(lam, mu, n, m):
    xs = [0, m, _part(lam, 1), m - _part(mu, 1)]
    ys = [0, n, len(lam), n - len(mu)]
    return (min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1)


def _key(p):
    return (p[1], -p[0])  # larger means greater in the order


def line_intersections(lam, mu, n: int, m: int, box=None):
    """Intersection points of Y_lambda and theta(Y_mu), decreasing."""
    box = box or _common_box(lam, mu, n, m)
    Y = young_line(lam, box)
    T = theta_flip(n, m, young_line(mu, _flip_box(n, m, box)))
    common = set(Y.points) & set(T.points)
    return sorted(common, key=_key, reverse=True), Y, T


def sigma_map(lam, mu, n: int, m: int):
    """Weight read off by splitting both lines at their maximal intersection M."""
    lam = normalize_partition(lam)
    mu = normalize_partition(mu)
    pts, Y, T = line_intersections(lam, mu, n, m)
    if not pts:
        raise ValueError("not in cross")
    M = pts[0]
    iy, it = Y.points.index(M), T.points.index(M)
    gamma_a = T.points[:it] + Y.points[iy:]
    gamma_b = Y.points[:iy] + T.points[it:]
    chi = _decode(gamma_a, gamma_b, n, m)
    if chi is None or not is_dominant(chi, n, m):
        raise AssertionError("sigma did not produce a dominant weight")
    return chi


def _decode_young(points, box):
    """Partition whose clipped Young line is exactly points, or None."""
    xmin, xmax, ymin, ymax = box
    rows = {}
    for p, q in zip(points, points[1:]):
        if p[0] == q[0]:
            lo = min(p[1], q[1])
            if lo < 0:
                return None
            rows[lo] = p[0]
    lam = []
    for i in range(ymax):
        x = rows.get(i)
        if x is None or x < 0:
            return None
        lam.append(x)
    try:
        lam = normalize_partition(lam)
    except ValueError:
        return None
    if young_line(lam, box).points != list(points):
        return None
    return lam


def pi_inverse(chi, n: int, m: int):
    """Bipartition (lambda, mu) in Cr(n, m) with pi_map = chi."""
    from .diagram import _box, gamma_lines

    chi = tuple(int(x) for x in chi)
    if not is_dominant(chi, n, m):
        raise ValueError("weight is not dominant")
    box = _box(chi, n, m)
    ga, gb = gamma_lines(chi, n, m, box)
    A, B = ga.points, gb.points
    cands = sorted(set(A) & set(B), key=_key, reverse=True)
    for M in cands:
        ia, ib = A.index(M), B.index(M)
        y_pts = B[:ib] + A[ia:]
        t_pts = A[:ia] + B[ib:]
        lam = _decode_young(y_pts, box)
        if lam is None:
            continue
        mu_pts = [(m - x, n - y) for x, y in reversed(t_pts)]
        mu = _decode_young(mu_pts, _flip_box(n, m, box))
        if mu is None:
            continue
        if not in_cross(lam, mu, n, m):
            continue
        if pi_map(lam, mu, n, m) == chi:
            return lam, mu
    raise AssertionError("no preimage found for %s" % (chi,))


def partitions_upto(N: int):
    """All partitions of size <= N."""
    out = [()]

    def rec(rest, maxpart, cur):
        for p in range(min(rest, maxpart), 0, -1):
            nxt = cur + (p,)
            out.append(nxt)
            rec(rest - p, p, nxt)

    rec(N, N, ())
    return out
