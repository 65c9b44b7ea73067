"""Deformed root system data: the bilinear form, rho, reflections and the
affine action, singularity tests, the Bernoulli generators b_r and the
eigenvalues theta_chi(L_r).

Vectors are tuples of RatK (or ints) in the basis e_1..e_{n+m}. Weights are
integer tuples (a_1..a_n | b_1..b_m). A root is a pair (i, j) of 0-based
indices standing for e_i - e_j; the odd positive roots are (i, j) with
i < n <= j.
"""

import re
from functools import lru_cache

from flint import fmpq, fmpq_poly, fmpz_poly

from .kfield import K, ONE, ZERO, RatK, as_ratk
from .laurent import is_dominant

__all__ = [
    "parse_weight",
    "format_weight",
    "inner",
    "form_diag",
    "rho",
    "root_vector",
    "odd_positive_roots",
    "even_positive_roots",
    "reflect",
    "affine_reflect",
    "l_plus",
    "l_minus",
    "singular_minus",
    "singular_plus",
    "bernoulli_poly",
    "b_gen_eval",
    "theta_eval",
    "is_dominant",
    "is_regular",
]

HALF = RatK.from_fraction(1) / 2
_WEIGHT = re.compile(r"^\s*\(\s*([^|]*?)\s*\|\s*([^|]*?)\s*\)\s*$")


def parse_weight(text: str):
    """"(a1,...,an|b1,...,bm)" -> (tuple of ints, n, m)."""
    mt = _WEIGHT.match(text)
    if mt is None:
        raise ValueError("weight must look like (a1,...,an|b1,...,bm), got %r" % text)

    def ints(s):
        s = s.strip()
        if not s:
            return []
        return [int(x) for x in s.split(",")]

    try:
        a, b = ints(mt.group(1)), ints(mt.group(2))
    except ValueError:
        raise ValueError("weight entries must be integers: %r" % text) from None
    return tuple(a + b), len(a), len(b)


def format_weight(chi, n: int) -> str:
    a = ",".join(str(int(x)) for x in chi[:n])
    b = ",".join(str(int(x)) for x in chi[n:])
    return "(%s|%s)" % (a, b)


def form_diag(n: int, m: int):
    """(e_i, e_i) = k^p(i)."""
    return tuple([ONE] * n + [K] * m)


def inner(u, v, n: int) -> RatK:
    """Deformed form sum u_i v_i k^p(i)."""
    if len(u) != len(v):
        raise ValueError("length mismatch")
    acc = ZERO
    for i, (x, y) in enumerate(zip(u, v)):
        if x and y:
            t = as_ratk(x) * as_ratk(y)
            acc = acc + (t * K if i >= n else t)
    return acc


@lru_cache(maxsize=None)
def rho(n: int, m: int):
    kinv = RatK.k_power(-1)
    out = []
    for i in range(1, n + 1):
        out.append((K * (2 * i - n - 1) - m) * HALF)
    for j in range(1, m + 1):
        out.append((kinv * (2 * j - m - 1) + n) * HALF)
    return tuple(out)


def root_vector(alpha, N: int):
    i, j = alpha
    v = [0] * N
    v[i] += 1
    v[j] -= 1
    return tuple(v)


def odd_positive_roots(n: int, m: int):
    return [(i, j) for i in range(n) for j in range(n, n + m)]


def even_positive_roots(n: int, m: int):
    out = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out += [(i, j) for i in range(n, n + m) for j in range(i + 1, n + m)]
    return out


def _vec(v):
    return tuple(as_ratk(x) for x in v)


def reflect(alpha, v, n: int):
    """s_alpha(v) = v - 2 (v, alpha)/(alpha, alpha) alpha."""
    v = _vec(v)
    a = root_vector(alpha, len(v))
    c = inner(v, a, n) * 2 / inner(a, a, n)
    return tuple(x - c * y if y else x for x, y in zip(v, a))


def affine_reflect(alpha, v, n: int, m: int):
    """s_alpha o v = s_alpha(v + rho) - rho."""
    r = rho(n, m)
    w = reflect(alpha, tuple(as_ratk(x) + y for x, y in zip(v, r)), n)
    return tuple(x - y for x, y in zip(w, r))


def _shifted_pairing(chi, alpha, n, m):
    r = rho(n, m)
    a = root_vector(alpha, n + m)
    return inner(tuple(as_ratk(x) + y for x, y in zip(chi, r)), a, n), inner(a, a, n)


def l_plus(chi, alpha, n: int, m: int) -> RatK:
    """(chi + rho, alpha) - (alpha, alpha)/2."""
    p, aa = _shifted_pairing(chi, alpha, n, m)
    return p - aa * HALF


def l_minus(chi, alpha, n: int, m: int) -> RatK:
    """(chi + rho, alpha) + (alpha, alpha)/2."""
    p, aa = _shifted_pairing(chi, alpha, n, m)
    return p + aa * HALF


def singular_minus(chi, n: int, m: int):
    """Odd positive roots with (chi + rho, alpha) + (alpha, alpha)/2 = 0."""
    return [a for a in odd_positive_roots(n, m) if not l_minus(chi, a, n, m)]


def singular_plus(chi, n: int, m: int):
    """Odd positive roots with (chi + rho, alpha) - (alpha, alpha)/2 = 0."""
    return [a for a in odd_positive_roots(n, m) if not l_plus(chi, a, n, m)]


def is_regular(chi, n: int, m: int) -> bool:
    return is_dominant(chi, n, m) and not singular_plus(chi, n, m)


# Bernoulli generators --------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_numbers(r: int):
    """B_0..B_r with B_1 = -1/2."""
    from fractions import Fraction
    from math import comb

    B = [Fraction(1)]
    for s in range(1, r + 1):
        B.append(-sum(comb(s + 1, j) * B[j] for j in range(s)) / (s + 1))
    return tuple(B)


@lru_cache(maxsize=None)
def bernoulli_poly(r: int) -> fmpq_poly:
    """B_r(x) = sum_j C(r, j) B_j x^(r-j)."""
    from math import comb

    if r < 0:
        raise ValueError("r must be nonnegative")
    B = _bernoulli_numbers(r)
    coeffs = [fmpq(0)] * (r + 1)
    for j in range(r + 1):
        coeffs[r - j] = fmpq(comb(r, j) * B[j].numerator, B[j].denominator)
    return fmpq_poly(coeffs)


def _poly_at(p: fmpq_poly, x: RatK) -> RatK:
    """p(x) for a rational function x, by homogenised Horner."""
    N = fmpq_poly(x.num)
    if x.den.is_one():
        return RatK.from_fmpq_poly(p(N))
    D = fmpq_poly(x.den)
    deg = p.degree()
    if deg < 0:
        return ZERO
    acc = fmpq_poly([p[deg]])
    Dpow = fmpq_poly([1])
    for i in range(deg - 1, -1, -1):
        Dpow = Dpow * D
        acc = acc * N + Dpow * p[i]
    # acc / D^deg
    return RatK(acc.numer(), fmpz_poly(x.den ** deg) * int(acc.denom()))


def _block_sum(r, xs, step: RatK, h) -> RatK:
    """sum_i B_r(x_i + step (i-1) + h) - B_r(step (i-1) + h)."""
    B = bernoulli_poly(r)
    h = as_ratk(h)
    acc = ZERO
    for i, x in enumerate(xs):
        base = step * i + h
        x = as_ratk(x)
        if not x:
            continue
        acc = acc + _poly_at(B, base + x) - _poly_at(B, base)
    return acc


def b_gen_eval(r: int, chi, n: int, m: int) -> RatK:
    """b_r(chi_1..chi_n; k, 0) + k^(r-1) b_r(chi_{n+1}..; 1/k, n)."""
    if r < 1:
        raise ValueError("r must be positive")
    first = _block_sum(r, chi[:n], K, 0)
    second = _block_sum(r, chi[n:], RatK.k_power(-1), n)
    return first + RatK.k_power(r - 1) * second


def theta_eval(chi, r: int, n: int, m: int) -> RatK:
    """theta_chi(L_r), read off as the leading coefficient of L_r applied to a
    quasi-invariant whose unique maximal term is x^chi."""
    from .spectral import theta_values

    return theta_values(tuple(chi), n, m, r)[r - 1]
