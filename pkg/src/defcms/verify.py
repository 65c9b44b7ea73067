"""Exact verification sweeps over finite boxes of weights, bipartitions and
supports. Each check returns a dict with keys "property", "pass",
"checked" and "counterexample" (None on success)."""

import itertools

from .kfield import ONE, ZERO, ratk_eval
from .laurent import is_dominant, lattice_hull
from .linalg import matmul

__all__ = [
    "dominant_box",
    "regular_box",
    "commute_supports",
    "check_commute",
    "check_invariance",
    "check_bernoulli",
    "check_equivalence",
    "check_classes",
    "check_bijection",
    "check_spectral",
    "check_algebra",
    "check_eigenfunction",
    "check_power_sums",
    "power_sum_windows",
]


def _result(prop, ok, checked, counterexample=None, **extra):
    out = {"property": prop, "pass": bool(ok), "checked": checked, "counterexample": counterexample}
    out.update(extra)
    return out


def dominant_box(n: int, m: int, B: int):
    """Dominant weights with all |chi_i| <= B, in a fixed order."""
    return [chi for chi in itertools.product(range(B, -B - 1, -1), repeat=n + m) if is_dominant(chi, n, m)]


def regular_box(n: int, m: int, B: int):
    from .rootsys import is_regular

    return [chi for chi in dominant_box(n, m, B) if is_regular(chi, n, m)]


def _fmt(chi, n):
    from .rootsys import format_weight

    return format_weight(chi, n)


# commutation and invariance --------------------------------------------------------

def commute_supports(n: int, m: int, B: int = 1, max_size: int = 60):
    """Lattice hulls of full permutation orbits of dominant weights in the
    box, keeping those with at most max_size points (deduplicated)."""
    seen = []
    keys = set()
    for chi in dominant_box(n, m, B):
        sup = frozenset(lattice_hull(set(itertools.permutations(chi))))
        if len(sup) <= max_size and sup not in keys:
            keys.add(sup)
            seen.append((chi, sup))
    return seen


def check_commute(n: int, m: int, B: int = 1, rmax: int = 3, max_size: int = 60, k_sample=None):
    from .quasi import integrals_upto, integral_apply
    from .spectral import quasi_space

    checked = 0
    screen_ok = True
    for chi, sup in commute_supports(n, m, B, max_size):
        Q = quasi_space(sup, n, m)
        for f in Q.basis:
            imgs = integrals_upto(rmax, f)
            for r, s in itertools.combinations(range(1, rmax + 1), 2):
                a = integral_apply(r, imgs[s - 1])
                b = integral_apply(s, imgs[r - 1])
                d = a - b
                if k_sample is not None:
                    screen_ok &= all(ratk_eval(c, k_sample) == 0 for c in d.terms.values())
                checked += 1
                if not d.is_zero():
                    return _result("commutation [L_r, L_s] f = 0", False, checked,
                                   {"support_of": _fmt(chi, n), "r": r, "s": s, "f": str(f)})
    extra = {"k_sample_screen": screen_ok} if k_sample is not None else {}
    return _result("commutation [L_r, L_s] f = 0", True, checked, **extra)


def check_invariance(n: int, m: int, B: int = 1, rmax: int = 3, max_size: int = 60):
    from .quasi import integrals_upto, is_quasi_invariant
    from .spectral import quasi_space

    checked = 0
    for chi, sup in commute_supports(n, m, B, max_size):
        Q = quasi_space(sup, n, m)
        for f in Q.basis:
            if not is_quasi_invariant(f):
                return _result("invariance and support", False, checked,
                               {"support_of": _fmt(chi, n), "reason": "basis element not quasi-invariant"})
            own = set(lattice_hull(f.terms))
            for r, g in enumerate(integrals_upto(rmax, f), start=1):
                checked += 1
                if not set(g.terms) <= own:
                    return _result("invariance and support", False, checked,
                                   {"support_of": _fmt(chi, n), "r": r, "reason": "support grew"})
                if not Q.contains(g):
                    return _result("invariance and support", False, checked,
                                   {"support_of": _fmt(chi, n), "r": r, "reason": "image left the space"})
    return _result("invariance and support", True, checked)


# Bernoulli values, equivalence and classes ------------------------------------------------

def check_bernoulli(n: int, m: int, B: int = 3, rmax: int = 6, k_sample=None):
    from .diagram import b_gen_geo
    from .rootsys import b_gen_eval

    checked = 0
    screen_ok = True
    for chi in dominant_box(n, m, B):
        for r in range(1, rmax + 1):
            x, y = b_gen_eval(r, chi, n, m), b_gen_geo(r, chi, n, m)
            if k_sample is not None:
                screen_ok &= ratk_eval(x, k_sample) == ratk_eval(y, k_sample)
            checked += 1
            if x != y:
                return _result("b_r algebraic = geometric", False, checked,
                               {"weight": _fmt(chi, n), "r": r, "algebraic": str(x), "geometric": str(y)})
    extra = {"k_sample_screen": screen_ok} if k_sample is not None else {}
    return _result("b_r algebraic = geometric", True, checked, **extra)


def check_equivalence(n: int, m: int, B: int = 3):
    """union_line_key equality <=> equality of b_1..b_Rmax, Rmax = 2 (n+m) B."""
    from .diagram import union_line_key
    from .rootsys import b_gen_eval

    W = dominant_box(n, m, B)
    Rmax = 2 * (n + m) * B
    bsig = {chi: tuple(b_gen_eval(r, chi, n, m) for r in range(1, Rmax + 1)) for chi in W}
    keys = {chi: union_line_key(chi, n, m) for chi in W}
    checked = 0
    for x, y in itertools.combinations(W, 2):
        checked += 1
        if (bsig[x] == bsig[y]) != (keys[x] == keys[y]):
            return _result("line union <=> b_r equality", False, checked,
                           {"weights": [_fmt(x, n), _fmt(y, n)]}, r_max=Rmax)
    return _result("line union <=> b_r equality", True, checked, r_max=Rmax)


def check_classes(n: int, m: int, B: int = 3):
    """Class size, eta(R) = nu, components, beta decomposition, chi_min
    criterion and the affine group elements, for every class meeting the box."""
    from .diagram import class_report, edge_components, eta, nu_row_col_lengths, product_criterion
    from .rootsys import affine_reflect, singular_minus

    done = set()
    checked = 0
    for chi in dominant_box(n, m, B):
        rep = class_report(chi, n, m)
        if rep.chi_min in done:
            continue
        done.add(rep.chi_min)
        checked += 1

        def fail(reason):
            return _result("class structure", False, checked, {"weight": _fmt(chi, n), "reason": reason})

        cmin = rep.chi_min
        if len(rep.members) != 2 ** len(singular_minus(cmin, n, m)) or len(rep.members) != 2 ** rep.r:
            return fail("class size")
        if any(not is_dominant(w, n, m) for w in rep.members):
            return fail("member not dominant")
        nu = set().union(*[g.squares for g in rep.gaps]) if rep.gaps else set()
        R = [a for c in rep.components for a in c["roots"]]
        if {eta(a, n, m) for a in R} != nu or len(R) != len(nu):
            return fail("eta(R) != nu")
        comp_sq = sorted(sorted(c["nu"]) for c in rep.components)
        if len(rep.components) != rep.r or comp_sq != sorted(sorted(c) for c in edge_components(nu)):
            return fail("orthogonal components != connected components")
        if comp_sq != sorted(sorted(g.squares) for g in rep.gaps):
            return fail("components != regions between lower and upper paths")
        for c in rep.components:
            rows, cols = nu_row_col_lengths(c["nu"])
            beta = [0] * (n + m)
            for i, d in rows.items():
                beta[i - 1] += d
            for j, d in cols.items():
                beta[n + j - 1] -= d
            if tuple(beta) != tuple(c["beta"]):
                return fail("beta != row/column lengths of nu_t")
        sums = set()
        for flags in itertools.product((0, 1), repeat=rep.r):
            v = list(cmin)
            for f, c in zip(flags, rep.components):
                if f:
                    v = [x + y for x, y in zip(v, c["beta"])]
            sums.add(tuple(v))
        if sums != set(rep.members):
            return fail("class != chi_min + sums of betas")
        if [w for w in rep.members if product_criterion(w, n, m)] != [cmin]:
            return fail("product criterion does not single out chi_min")
        # affine group elements
        gs = []
        for c in rep.components:
            if c["chain"] is None:
                return fail("no chain ordering")
            gs.append(c["chain"])
            v = cmin
            for al in c["chain"]:
                v = affine_reflect(al, v, n, m)
            if tuple(v) != tuple(x + y for x, y in zip(cmin, c["beta"])):
                return fail("g_t(chi_min) != chi_min + beta_t")
        for s, t in itertools.combinations(range(len(gs)), 2):
            for w in rep.members:
                v1 = w
                for al in gs[s] + gs[t]:
                    v1 = affine_reflect(al, v1, n, m)
                v2 = w
                for al in gs[t] + gs[s]:
                    v2 = affine_reflect(al, v2, n, m)
                if tuple(v1) != tuple(v2):
                    return fail("g_s and g_t do not commute")
    return _result("class structure", True, checked)


# bijection ------------------------------------------------------------------------

def check_bijection(n: int, m: int, size: int = 6):
    """sigma = pi, pi_inverse o pi = id, injectivity, and the image equals the
    set of dominant weights whose preimage lies in the size box."""
    from .bipart import in_cross, line_intersections, partitions_upto, pi_inverse, pi_map, sigma_map

    P = partitions_upto(size)
    images = {}
    checked = 0
    for lam in P:
        for mu in P:
            if not in_cross(lam, mu, n, m):
                if line_intersections(lam, mu, n, m)[0]:
                    return _result("pi = sigma bijection", False, checked,
                                   {"bipartition": [list(lam), list(mu)], "reason": "cross criterion"})
                continue
            checked += 1
            chi = pi_map(lam, mu, n, m)
            if sigma_map(lam, mu, n, m) != chi:
                return _result("pi = sigma bijection", False, checked,
                               {"bipartition": [list(lam), list(mu)], "reason": "sigma != pi"})
            if pi_inverse(chi, n, m) != (lam, mu):
                return _result("pi = sigma bijection", False, checked,
                               {"bipartition": [list(lam), list(mu)], "reason": "pi_inverse o pi != id"})
            if chi in images:
                return _result("pi = sigma bijection", False, checked,
                               {"bipartition": [list(lam), list(mu)], "reason": "not injective"})
            images[chi] = (lam, mu)
    # every dominant weight whose preimage is in the size box is hit
    bound = size + max(n, m)
    for chi in dominant_box(n, m, bound):
        lam, mu = pi_inverse(chi, n, m)
        inside = sum(lam) <= size and sum(mu) <= size
        if inside != (chi in images):
            return _result("pi = sigma bijection", False, checked,
                           {"weight": _fmt(chi, n), "reason": "image does not match the dominant box"})
    return _result("pi = sigma bijection", True, checked, image_size=len(images))


# spectral ------------------------------------------------------------------------

def check_spectral(n: int, m: int, weights, support_mode=None):
    """dim = 2^r for each weight's class and the split of W into generalised
    eigenspaces adds up."""
    from .spectral import gen_eigenspace, spectral_split

    checked = 0
    rows = []
    for chi in weights:
        G = gen_eigenspace(chi, n, m, support_mode=support_mode, check=False)
        checked += 1
        split = spectral_split(G.space, G.all_mats)
        rows.append({"weight": _fmt(chi, n), "r": G.r, "dim": G.dim, "space_dim": G.space.dim,
                     "split": sorted(split.values(), reverse=True)})
        if G.dim != 2 ** G.r:
            return _result("dim = 2^r", False, checked, {"weight": _fmt(chi, n), "dim": G.dim, "r": G.r})
        if sum(split.values()) != G.space.dim:
            return _result("direct sum adds up", False, checked, {"weight": _fmt(chi, n)})
        # matrices commute
        for A, B in itertools.combinations(G.all_mats, 2):
            if matmul(A, B) != matmul(B, A):
                return _result("matrices commute", False, checked, {"weight": _fmt(chi, n)})
    return _result("spectral dimensions", True, checked, rows=rows)


def check_algebra(n: int, m: int, chi, support_mode=None):
    from .spectral import gen_eigenspace, analyze_local_algebra

    G = gen_eigenspace(chi, n, m, support_mode=support_mode)
    rep = analyze_local_algebra(G.restricted(), G.dim)
    r = G.r
    gens = rep["square_zero_generators"]
    checks = {
        "dimension": rep["dimension"] == 2 ** r,
        "commutative": rep["commutative"],
        "local": rep["local"],
        "cotangent_dim": rep["cotangent_dim"] == r,
        "nilpotent": rep["nilpotency_index"] <= r + 1,
        "generators": gens is not None and len(gens) == r,
        "generators_commute": gens is not None and all(
            matmul(a, b) == matmul(b, a) for a, b in itertools.combinations(gens, 2)),
        "generators_square_zero": gens is not None and all(
            not any(x for row in matmul(g, g) for x in row) for g in gens),
        "squarefree_basis": rep["squarefree_basis"],
        "witness": rep["witness_matches_dual_numbers"],
        "cyclic_vector": rep["regular_module"],
    }
    ok = all(checks.values())
    bad = [k for k, v in checks.items() if not v]
    return _result("image algebra = C[e]^r", ok, 1, None if ok else {"weight": _fmt(chi, n), "failed": bad},
                   r=r, report=rep, checks=checks)


def check_eigenfunction(n: int, m: int, chi, rmax: int = 4, support_mode=None):
    from .quasi import integrals_upto
    from .spectral import eigenfunction, gen_eigenspace, theta_values

    G = gen_eigenspace(chi, n, m, support_mode=support_mode)
    J = eigenfunction(chi, n, m, G=G)
    theta = theta_values(tuple(chi), n, m, rmax)
    for r, img in enumerate(integrals_upto(rmax, J), start=1):
        if img != J.scale(theta[r - 1]):
            return _result("L_r J = theta J", False, r, {"weight": _fmt(chi, n), "r": r})
    return _result("L_r J = theta J", True, rmax, eigenfunction=J)


# power sums ------------------------------------------------------------------------

def power_sum_windows(n: int, m: int, count: int = 5):
    """Symmetric windows: hulls of permutation orbits of small weights."""
    cands = [tuple([0] * (n + m))]
    for B in (1, 2):
        for chi in dominant_box(n, m, B):
            if chi not in cands:
                cands.append(chi)
    out = []
    seen = set()
    for chi in sorted(cands, key=lambda c: (sum(abs(x) for x in c), c)):
        w = frozenset(lattice_hull(set(itertools.permutations(chi))))
        if w not in seen and len(w) <= 40:
            seen.add(w)
            out.append((chi, w))
        if len(out) >= count:
            break
    return out


def check_power_sums(n: int, m: int, count: int = 5):
    from .spectral import power_sum_generation_check

    checked = 0
    for chi, w in power_sum_windows(n, m, count):
        checked += 1
        if not power_sum_generation_check(w, n, m):
            return _result("power sums span quasi-invariants", False, checked, {"window_of": _fmt(chi, n)})
    return _result("power sums span quasi-invariants", checked >= count, checked)
