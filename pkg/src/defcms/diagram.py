"""Lattice-path geometry of dominant weights.

A weight (a_1..a_n | b_1..b_m) gives two staircase lines in the plane:
Gamma_a has its vertical unit edge of row [i-1, i] at x = a_i, with rays
along y = 0 (to the right) and y = n (to the left); the transposed line
hat Gamma_b has its horizontal unit edge of column [j-1, j] at
y = n + b_j, with rays along x = 0 (up) and x = m (down). Lines are kept
as lists of lattice points inside a finite box, sorted decreasingly in
the order (higher y first, then smaller x first).

Squares are named by their lower-left vertex (x, y).
"""

import itertools
from collections import deque
from dataclasses import dataclass, field

from .kfield import K, ONE, ZERO, RatK, as_ratk
from .laurent import is_dominant
from .rootsys import affine_reflect, inner, l_minus, l_plus, odd_positive_roots, root_vector, singular_minus

__all__ = [
    "PolyLine",
    "gamma_lines",
    "regions",
    "c_weight",
    "b_gen_geo",
    "union_line_key",
    "eta",
    "eta_inv",
    "eq_class",
    "r_chi",
    "EqClassReport",
    "render_ascii",
    "class_report",
    "product_criterion",
    "edge_components",
    "nu_row_col_lengths",
]


def _check(chi, n, m):
    chi = tuple(int(x) for x in chi)
    if len(chi) != n + m:
        raise ValueError("weight has %d entries, expected %d" % (len(chi), n + m))
    if not is_dominant(chi, n, m):
        raise ValueError("weight is not dominant: %s" % (chi,))
    return chi


def _box(chi, n, m):
    """(xmin, xmax, ymin, ymax): bounding box of all vertices, the corners
    (0,0), (m,n), expanded by one."""
    xs = [0, m] + list(chi[:n])
    ys = [0, n] + [n + b for b in chi[n:]]
    return min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1


@dataclass
class PolyLine:
    """Finite vertices plus two rays; points lists all lattice points on the
    line inside the box, in decreasing order."""

    vertices: list
    rays: tuple  # ((start, direction), (start, direction))
    points: list = field(default_factory=list)

    def edges(self):
        return {frozenset((p, q)) for p, q in zip(self.points, self.points[1:])}


def _walk(corners):
    """Lattice points along consecutive axis-parallel corners."""
    out = [corners[0]]
    for p, q in zip(corners, corners[1:]):
        dx = (q[0] > p[0]) - (q[0] < p[0])
        dy = (q[1] > p[1]) - (q[1] < p[1])
        if dx and dy:
            raise ValueError("corners not axis aligned")
        x, y = p
        while (x, y) != q:
            x += dx
            y += dy
            out.append((x, y))
    return out


def _gamma_a_points(a, n, box):
    xmin, xmax, _, _ = box
    if n == 0:
        return _walk([(xmin, 0), (xmax, 0)])
    corners = [(xmin, n)]
    for i in range(n, 0, -1):
        corners.append((a[i - 1], i))
        corners.append((a[i - 1], i - 1))
    corners.append((xmax, 0))
    return _dedupe(_walk(_dedupe(corners)))


def _gamma_b_points(b, n, m, box):
    _, _, ymin, ymax = box
    if m == 0:
        return _walk([(0, ymax), (0, ymin)])
    corners = [(0, ymax)]
    for j in range(1, m + 1):
        corners.append((j - 1, n + b[j - 1]))
        corners.append((j, n + b[j - 1]))
    corners.append((m, ymin))
    return _dedupe(_walk(_dedupe(corners)))


def _dedupe(seq):
    out = []
    for p in seq:
        if not out or out[-1] != p:
            out.append(p)
    return out


def gamma_lines(chi, n: int, m: int, box=None):
    """(Gamma_a, hat Gamma_b) for a dominant weight."""
    chi = _check(chi, n, m)
    a, b = chi[:n], chi[n:]
    box = box or _box(chi, n, m)
    va = []
    for i in range(1, n + 1):
        va += [(a[i - 1], i - 1), (a[i - 1], i)]
    vb = []
    for j in range(1, m + 1):
        vb += [(j - 1, n + b[j - 1]), (j, n + b[j - 1])]
    ga = PolyLine(va, (((a[0] if n else 0, 0), "+x"), ((a[-1] if n else 0, n), "-x")),
                  _gamma_a_points(a, n, box))
    gb = PolyLine(vb, (((0, n + b[0] if m else 0), "+y"), ((m, n + b[-1] if m else 0), "-y")),
                  _gamma_b_points(b, n, m, box))
    return ga, gb


# regions and the geometric Bernoulli formula ------------------------------------

def regions(chi, n: int, m: int):
    """(D+, D-) as sets of squares: D+ = D+_a u hat D+_b, D- = D-_a u hat D-_b."""
    chi = _check(chi, n, m)
    plus, minus = set(), set()
    for i in range(1, n + 1):
        a = chi[i - 1]
        for x in range(0, a):
            plus.add((x, i - 1))
        for x in range(a, 0):
            minus.add((x, i - 1))
    for j in range(1, m + 1):
        b = chi[n + j - 1]
        for y in range(n, n + b):
            plus.add((j - 1, y))
        for y in range(n + b, n):
            minus.add((j - 1, y))
    return plus, minus


def c_weight(square, k=None) -> RatK:
    """x + k y for the lower-left vertex (x, y); k defaults to the generic k."""
    x, y = square
    kk = K if k is None else as_ratk(k)
    return kk * y + x if y else RatK(x)


def b_gen_geo(r: int, chi, n: int, m: int) -> RatK:
    """r [sum over D+ minus D- of c^(r-1) - sum over D- minus D+ of c^(r-1)]."""
    if r < 1:
        raise ValueError("r must be positive")
    plus, minus = regions(chi, n, m)
    acc = ZERO
    for sq in plus - minus:
        acc = acc + c_weight(sq) ** (r - 1)
    for sq in minus - plus:
        acc = acc - c_weight(sq) ** (r - 1)
    return acc * r


# canonical key of Gamma_a u hat Gamma_b ------------------------------------------

def _union_graph(chi, n, m, box=None):
    ga, gb = gamma_lines(chi, n, m, box)
    edges = ga.edges() | gb.edges()
    return ga, gb, edges


def union_line_key(chi, n: int, m: int):
    """Canonical finite encoding of the union of the two lines.

    Outside the bounding box of its singular points (degree != 2 or a turn)
    the union is a set of straight rays, each continuing an edge that
    crosses the box expanded by one; the key lists the unit edges inside
    that expanded box.
    """
    chi = _check(chi, n, m)
    box = _box(chi, n, m)
    _, _, edges = _union_graph(chi, n, m, box)
    xmin, xmax, ymin, ymax = box
    nbr = {}
    for e in edges:
        p, q = tuple(e)
        nbr.setdefault(p, []).append(q)
        nbr.setdefault(q, []).append(p)
    sing = []
    for p, qs in nbr.items():
        if p[0] in (xmin, xmax) or p[1] in (ymin, ymax):
            continue
        if len(qs) != 2:
            sing.append(p)
            continue
        (q1, q2) = qs
        if (q1[0] - p[0], q1[1] - p[1]) != (p[0] - q2[0], p[1] - q2[1]):
            sing.append(p)
    if not sing:
        return ((), ())
    x0 = min(p[0] for p in sing) - 1
    x1 = max(p[0] for p in sing) + 1
    y0 = min(p[1] for p in sing) - 1
    y1 = max(p[1] for p in sing) + 1

    def inside(p):
        return x0 <= p[0] <= x1 and y0 <= p[1] <= y1

    key = sorted(tuple(sorted(e)) for e in edges if all(inside(p) for p in e))
    return ((x0, x1, y0, y1), tuple(key))


# the bijection eta ---------------------------------------------------------------

def eta(alpha, n: int, m: int):
    """Odd positive root e_i - e_{n+j} (0-based pair (i-1, n+j-1)) -> the
    square with upper-right vertex (j, i), i.e. lower-left (j-1, i-1)."""
    i, j = alpha
    if not (0 <= i < n <= j < n + m):
        raise ValueError("not an odd positive root: %r" % (alpha,))
    return (j - n, i)


def eta_inv(square, n: int, m: int):
    x, y = square
    if not (0 <= x < m and 0 <= y < n):
        raise ValueError("square %r outside the rectangle [0,%d]x[0,%d]" % (square, m, n))
    return (y, n + x)


# equivalence classes -----------------------------------------------------------

def _order_key(p):
    """Sort key realising the decreasing order: higher y first, then smaller x."""
    return (-p[1], p[0])


def _components(ga_pts, gb_pts):
    on_b = set(gb_pts)
    gb_edges = {frozenset(e) for e in zip(gb_pts, gb_pts[1:])}
    comps = []
    cur = []
    for p in ga_pts:
        if p in on_b:
            if cur and frozenset((cur[-1], p)) in gb_edges:
                cur.append(p)
            else:
                if cur:
                    comps.append(cur)
                cur = [p]
        else:
            if cur:
                comps.append(cur)
            cur = []
    if cur:
        comps.append(cur)
    return comps  # each a run of points in decreasing order


def _segment(pts, p, q):
    i, j = pts.index(p), pts.index(q)
    return pts[i:j + 1]


def _enclosed(path1, path2):
    """Unit squares inside the closed polygon path1 + reversed(path2)."""
    poly = path1 + path2[::-1][1:-1]
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    out = set()
    edges = list(zip(poly, poly[1:] + poly[:1]))
    for x in range(min(xs), max(xs)):
        for y in range(min(ys), max(ys)):
            # ray from the centre (x+1/2, y+1/2) to the right; doubled coordinates
            cx, cy = 2 * x + 1, 2 * y + 1
            inside = False
            for (x1, y1), (x2, y2) in edges:
                if x1 != x2:
                    continue  # horizontal edges never cross a horizontal ray at odd height
                lo, hi = 2 * min(y1, y2), 2 * max(y1, y2)
                if lo < cy < hi and 2 * x1 > cx:
                    inside = not inside
            if inside:
                out.add((x, y))
    return out


def _decode(a_pts, b_pts, n, m):
    """Weight read from Gamma-like point lists: a_i = x of the vertical edge
    in row [i-1, i]; b_j = (y of the horizontal edge in column [j-1, j]) - n."""
    a = [None] * n
    for p, q in zip(a_pts, a_pts[1:]):
        if p[0] == q[0]:
            lo = min(p[1], q[1])
            if 0 <= lo < n:
                if a[lo] is not None:
                    return None
                a[lo] = p[0]
    b = [None] * m
    for p, q in zip(b_pts, b_pts[1:]):
        if p[1] == q[1]:
            lo = min(p[0], q[0])
            if 0 <= lo < m:
                if b[lo] is not None:
                    return None
                b[lo] = p[1] - n
    if None in a or None in b:
        return None
    return tuple(a + b)


@dataclass
class Gap:
    start: tuple  # Q_i
    end: tuple  # P_{i+1}
    lower: list
    upper: list
    lower_on_a: bool
    squares: set


@dataclass
class EqClassReport:
    chi: tuple
    n: int
    m: int
    members: list
    chi_min: tuple
    r: int
    gaps: list
    intersections: list  # (P_i, Q_i) in decreasing order
    components: list = field(default_factory=list)  # filled at chi_min by r_chi

    def to_json_obj(self):
        from .rootsys import format_weight

        return {
            "weight": format_weight(self.chi, self.n),
            "class": [format_weight(c, self.n) for c in self.members],
            "chi_min": format_weight(self.chi_min, self.n),
            "r": self.r,
            "intersections": [[list(p), list(q)] for p, q in self.intersections],
            "components": [
                {
                    "P": list(c["P"]),
                    "Q": list(c["Q"]),
                    "nu": sorted(list(s) for s in c["nu"]),
                    "roots": [[a[0] + 1, a[1] + 1] for a in c["roots"]],
                    "beta": [int(x) for x in c["beta"]],
                    "chain": [[a[0] + 1, a[1] + 1] for a in c["chain"]],
                }
                for c in self.components
            ],
        }


def eq_class(chi, n: int, m: int) -> EqClassReport:
    """Equivalence class of a dominant weight via the path swaps between
    consecutive components of Gamma_a n hat Gamma_b."""
    chi = _check(chi, n, m)
    box = _box(chi, n, m)
    ga, gb = gamma_lines(chi, n, m, box)
    A, B = ga.points, gb.points
    comps = _components(A, B)
    inter = [(c[0], c[-1]) for c in comps]
    gaps = []
    for (p1, q1), (p2, q2) in zip(inter, inter[1:]):
        sa = _segment(A, q1, p2)
        sb = _segment(B, q1, p2)
        a_lower = sum(x + y for x, y in sa) < sum(x + y for x, y in sb)
        lower, upper = (sa, sb) if a_lower else (sb, sa)
        gaps.append(Gap(q1, p2, lower, upper, a_lower, _enclosed(lower, upper)))
    r = len(gaps)
    members = []
    chi_min = None
    for choice in itertools.product((0, 1), repeat=r):
        a_pts, b_pts = list(A), list(B)
        for flip, g in zip(choice, gaps):
            if flip:
                sa = _segment(a_pts, g.start, g.end)
                sb = _segment(b_pts, g.start, g.end)
                ia, ib = a_pts.index(g.start), b_pts.index(g.start)
                a_pts = a_pts[:ia] + sb + a_pts[ia + len(sa):]
                b_pts = b_pts[:ib] + sa + b_pts[ib + len(sb):]
        w = _decode(a_pts, b_pts, n, m)
        if w is None or not is_dominant(w, n, m):
            raise AssertionError("path swap did not decode to a dominant weight")
        ga2, gb2 = gamma_lines(w, n, m, box)
        if ga2.points != a_pts or gb2.points != b_pts:
            raise AssertionError("decoded weight does not re-encode to the swapped lines")
        members.append(w)
        if all((g.lower_on_a != bool(f)) for f, g in zip(choice, gaps)):
            chi_min = w
    return EqClassReport(chi, n, m, sorted(set(members), reverse=True), chi_min, r, gaps, inter)


# root-theoretic description at chi_min ------------------------------------------------

def _chain_reachable(chi, n, m):
    """Odd positive roots that occur in some sequence with
    (chi + rho + a_1 + ... + a_{i-1}, a_i) + (a_i, a_i)/2 = 0 (distinct roots)."""
    roots = odd_positive_roots(n, m)
    N = n + m
    seen = {frozenset()}
    queue = deque([(frozenset(), tuple(chi))])
    used = set()
    while queue:
        S, v = queue.popleft()
        for al in roots:
            if al in S:
                continue
            if not l_minus(v, al, n, m):
                used.add(al)
                S2 = S | {al}
                if S2 not in seen:
                    seen.add(S2)
                    rv = root_vector(al, N)
                    queue.append((S2, tuple(x + y for x, y in zip(v, rv))))
    return used


def _orth_components(roots, n):
    roots = sorted(roots)
    N = None
    parent = {a: a for a in roots}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in itertools.combinations(roots, 2):
        N = N or (max(max(x) for x in roots) + 1)
        if inner(root_vector(a, N), root_vector(b, N), n):
            parent[find(a)] = find(b)
    groups = {}
    for a in roots:
        groups.setdefault(find(a), []).append(a)
    return sorted(groups.values())


def _chain_order(chi, comp, n, m):
    """An ordering a_1..a_N of comp with the chain condition, greedy."""
    rest = set(comp)
    v = tuple(chi)
    order = []
    N = n + m
    while rest:
        for al in sorted(rest):
            if not l_minus(v, al, n, m):
                order.append(al)
                rest.discard(al)
                v = tuple(x + y for x, y in zip(v, root_vector(al, N)))
                break
        else:
            return None
    return order


def _apply_chain(order, v, n, m):
    for al in order:
        v = affine_reflect(al, v, n, m)
    return v


def r_chi(chi_min, n: int, m: int):
    """(R(chi), orthogonal components, beta vectors, chain orders) at chi_min.

    R(chi) is computed from the chain condition directly and compared with
    eta^-1(nu)."""
    rep = eq_class(chi_min, n, m)
    if tuple(chi_min) != rep.chi_min:
        raise ValueError("weight is not the minimal representative of its class")
    R = _chain_reachable(tuple(chi_min), n, m)
    comps = _orth_components(R, n) if R else []
    N = n + m
    out = []
    for comp in comps:
        beta = [0] * N
        for al in comp:
            for t, x in enumerate(root_vector(al, N)):
                beta[t] += x
        order = _chain_order(tuple(chi_min), comp, n, m)
        out.append({"roots": comp, "beta": tuple(beta), "chain": order})
    return R, out


def _attach_components(rep: EqClassReport):
    n, m = rep.n, rep.m
    R, comps = r_chi(rep.chi_min, n, m)
    by_square = {}
    for t, g in enumerate(rep.gaps):
        for sq in g.squares:
            by_square[sq] = t
    for c in comps:
        sqs = {eta(a, n, m) for a in c["roots"]}
        ts = {by_square.get(s) for s in sqs}
        t = ts.pop() if len(ts) == 1 else None
        c["nu"] = sqs
        c["gap"] = t
        g = rep.gaps[t] if t is not None else None
        c["P"] = g.end if g else None
        c["Q"] = g.start if g else None
    comps.sort(key=lambda c: (c["gap"] is None, c["gap"]))
    rep.components = comps
    return R


def class_report(chi, n: int, m: int) -> EqClassReport:
    """eq_class plus the root data of its minimal member."""
    rep = eq_class(chi, n, m)
    _attach_components(rep)
    return rep


def nu_row_col_lengths(squares):
    """Row lengths d_i (by row index i = y+1) and column lengths (by j = x+1)."""
    rows, cols = {}, {}
    for x, y in squares:
        rows[y + 1] = rows.get(y + 1, 0) + 1
        cols[x + 1] = cols.get(x + 1, 0) + 1
    return rows, cols


def product_criterion(chi, n: int, m: int) -> bool:
    """prod over odd positive roots of (chi + rho, a) - (a, a)/2 is nonzero."""
    return all(l_plus(chi, a, n, m) for a in odd_positive_roots(n, m))


def edge_components(squares):
    """Connected components of a square set under edge adjacency."""
    squares = set(squares)
    comps = []
    while squares:
        s = squares.pop()
        comp = {s}
        stack = [s]
        while stack:
            x, y = stack.pop()
            for d in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                q = (x + d[0], y + d[1])
                if q in squares:
                    squares.discard(q)
                    comp.add(q)
                    stack.append(q)
        comps.append(comp)
    return comps


# ASCII rendering --------------------------------------------------------------------

def render_ascii(chi, n: int, m: int) -> str:
    """Plain-text drawing of Gamma_a (a-only edges '-' '|'), hat Gamma_b
    (b-only '~' ':'), shared edges ('=' '#') and the squares of nu ('*')."""
    chi = _check(chi, n, m)
    box = _box(chi, n, m)
    rep = eq_class(chi, n, m)
    ga, gb = gamma_lines(chi, n, m, box)
    ea, eb = ga.edges(), gb.edges()
    nu = set().union(*[g.squares for g in rep.gaps]) if rep.gaps else set()
    xmin, xmax, ymin, ymax = box
    W = 2 * (xmax - xmin) + 1
    H = 2 * (ymax - ymin) + 1
    grid = [[" "] * W for _ in range(H)]

    def at(x2, y2, ch):
        grid[(2 * ymax) - y2][x2 - 2 * xmin] = ch

    for x in range(xmin, xmax + 1):
        for y in range(ymin, ymax + 1):
            at(2 * x, 2 * y, ".")
    for e in ea | eb:
        p, q = sorted(e)
        both = e in ea and e in eb
        if p[1] == q[1]:
            ch = "=" if both else ("-" if e in ea else "~")
        else:
            ch = "#" if both else ("|" if e in ea else ":")
        at(p[0] + q[0], p[1] + q[1], ch)
        at(2 * p[0], 2 * p[1], "+")
        at(2 * q[0], 2 * q[1], "+")
    for x, y in nu:
        at(2 * x + 1, 2 * y + 1, "*")
    lines = ["".join(row).rstrip() for row in grid]
    return "\n".join(lines)
