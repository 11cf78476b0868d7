"""The three baby-step giant-step searches.

Balanced: p = m*p_msb + j with gcd(j, m) = 1. The rank-3 lattice spanned by
N, f, f^2 for f(x) = x + j/m (mod N) yields a second reduced vector whose
polynomial g has g(p_msb) = i*p with |i| < k, so alpha^(m^2 i) collides mod p
with alpha^(m^2 g(p_msb)), an exponent that is computable from j alone.

With modulo information the residue class of p mod mn is known up to j, and
the unknown size of p is covered by a ladder of bounds X_i.

For N = p^r q the lattice vector x*(x + M_j)^r is written down directly.
"""

from dataclasses import dataclass
from decimal import Decimal, getcontext
from fractions import Fraction
from math import gcd

from . import intpoly
from .arith import int_root_ceil, int_root_floor, iroot, mod_inv, mod_pow
from .bsgs import find_collisions, sort_match
from .coppersmith import integer_roots
from .counters import ensure
from .errors import SearchExhausted
from .lattice import (
    build_balanced_basis,
    build_mod_basis,
    build_power_rows,
    lll_reduce,
    second_vector,
)


@dataclass
class BalancedParams:
    N: int
    beta: Fraction
    c: Fraction
    m: int
    m_inv: int
    X: int
    k: int
    alpha: int


@dataclass
class ModParams:
    N: int
    r: int
    n: int
    m: int
    s: int
    m_inv_mod_n: int
    n_inv_mod_m: int
    k: int
    alpha: int
    X_seq: list


@dataclass
class PowerParams:
    N: int
    r: int
    c1: Fraction
    c2: Fraction
    m: int
    k: int
    alpha: int
    j_max: int


def balanced_k(N, c, m):
    """ceil(2 * 3^(5/4) * N^(1/2) / (c * m^(3/2))), exactly."""
    c = Fraction(c)
    return int_root_ceil(3888 * N * N * c.denominator ** 4, c.numerator ** 4 * m ** 6, 1, 4)


def mod_k(N, mn):
    """ceil(4 * 3^(5/4) * N^(1/2) / (mn)^(3/2)), exactly."""
    return int_root_ceil(62208 * N * N, mn ** 6, 1, 4)


def power_k(m, r):
    """ceil(2 e m sqrt(r))."""
    getcontext().prec = 60
    value = 2 * Decimal(1).exp() * m * Decimal(r).sqrt()
    return int(value.to_integral_value(rounding="ROUND_CEILING"))


def balanced_params(N, beta, c, m, alpha):
    beta = Fraction(beta)
    X = int_root_floor(N ** beta.numerator, m ** beta.denominator, 1, beta.denominator)
    return BalancedParams(
        N=N,
        beta=beta,
        c=Fraction(c),
        m=m,
        m_inv=mod_inv(m, N),
        X=X,
        k=balanced_k(N, c, m),
        alpha=alpha,
    )


def mod_ladder(N, mn):
    """X_i = floor(2^i N^(3/10) / (mn)) for i = 0..ceil(log N / 5)."""
    top = -(-N.bit_length() // 5)
    return [int_root_floor(2 ** (10 * i) * N ** 3, mn ** 10, 1, 10) for i in range(top + 1)]


def mod_params(N, r, n, m, alpha):
    mn = m * n
    return ModParams(
        N=N,
        r=r % n,
        n=n,
        m=m,
        s=mod_inv(mn, N),
        m_inv_mod_n=pow(m, -1, n) if n > 1 else 0,
        n_inv_mod_m=pow(n, -1, m) if m > 1 else 0,
        k=mod_k(N, mn),
        alpha=alpha,
        X_seq=mod_ladder(N, mn),
    )


def power_params(N, r, c1, c2, m, alpha):
    c1 = Fraction(c1)
    # floor(N^(1/2r) / (X c1^(1/r))) = floor((N / (X^2r c1^2))^(1/2r))
    j_max = int_root_floor(N * c1.denominator ** 2, m ** (2 * r) * c1.numerator ** 2, 1, 2 * r)
    return PowerParams(
        N=N, r=r, c1=c1, c2=Fraction(c2), m=m, k=power_k(m, r), alpha=alpha, j_max=j_max
    )


def crt_residue(r, n, j, m, m_inv_mod_n, n_inv_mod_m):
    """The residue mod mn that is r mod n and j mod m."""
    return (r * m * m_inv_mod_n + j * n * n_inv_mod_m) % (m * n)


def _giant_pair(N, alpha, exponent, tag, giants):
    x = mod_pow(alpha, exponent, N)
    giants.append((x, (tag, 1)))
    giants.append((mod_inv(x, N), (tag, -1)))


def _solve_quadratic(sv, base, shift, sign, i, N):
    """Positive p with c*base^2 + b*base*(p - shift) + a*(p - shift)^2 = sign*i*base^2*p."""
    poly = intpoly.taylor_shift([sv.c * base * base, sv.b * base, sv.a], -shift)
    poly += [0] * (3 - len(poly))
    for p in integer_roots(poly, rhs_form=(sign * i * base * base, 1)):
        if 1 < p < N and N % p == 0:
            return p
    return None


def _collide(N, kappa, gamma, giants, matched, counters):
    rest = [x for x, tag in giants if tag not in matched]
    return find_collisions(N, kappa, gamma, rest, counters)


def _ordered(p, N):
    q = N // p
    return (p, q) if p <= q else (q, p)


def main_search(params, counters=None, trace=None):
    """Factor N = p*q with c N^beta < p <= N^beta; returns (p, q) with p <= q.

    trace, when a dict, receives the giant-step records under "giants":
    j -> (SecondVector, exponent, x_j, ReducedBasis).
    """
    counters = ensure(counters)
    N, m, X, k, alpha = params.N, params.m, params.X, params.k, params.alpha
    gamma = pow(alpha, m * m, N)
    babies = []
    x = 1
    for i in range(k):
        babies.append((x, i))
        x = x * gamma % N
    counters.baby_steps += k

    giants = []
    vectors = {}
    for j in range(1, m + 1):
        if gcd(j, m) != 1:
            continue
        rb = lll_reduce(build_balanced_basis(N, params.m_inv, j, X))
        counters.lll_calls += 1
        sv = second_vector(rb, X)
        exponent = sv.c * m * m + sv.b * m * (1 - j) + sv.a * (1 - j) ** 2
        vectors[j] = sv
        _giant_pair(N, alpha, exponent, j, giants)
        counters.giant_steps += 1
        if trace is not None:
            trace.setdefault("giants", {})[j] = (sv, exponent, giants[-2][0], rb)

    matched = set()
    for i, (j, sign) in sort_match(babies, giants):
        matched.add((j, sign))
        p = _solve_quadratic(vectors[j], m, j, sign, i, N)
        if p is not None:
            return _ordered(p, N)
    hit = _collide(N, k, gamma, giants, matched, counters)
    if hit is not None:
        return _ordered(hit[0], N)
    raise SearchExhausted(
        "no collision between baby and giant steps",
        {"N": N, "m": m, "k": k, "alpha": alpha, "giants": len(giants) // 2},
    )


def main_search_mod(params, counters=None):
    """Factor N = p*q with N^(1/3) < p < N^(1/2) and p = r (mod n)."""
    counters = ensure(counters)
    N, m, n, k, alpha = params.N, params.m, params.n, params.k, params.alpha
    mn = m * n
    gamma = pow(alpha, mn * mn, N)
    babies = []
    x = 1
    for i in range(k):
        babies.append((x, i))
        x = x * gamma % N
    counters.baby_steps += k

    giants = []
    vectors = {}
    for step, X in enumerate(params.X_seq):
        if X < 1:
            continue
        for j in range(1, m + 1):
            if gcd(j, m) != 1:
                continue
            mj = crt_residue(params.r, n, j, m, params.m_inv_mod_n, params.n_inv_mod_m)
            rb = lll_reduce(build_mod_basis(N, mj * params.s, X), with_transform=False)
            counters.lll_calls += 1
            sv = second_vector(rb, X)
            exponent = sv.c * mn * mn + sv.b * mn * (1 - mj) + sv.a * (1 - mj) ** 2
            vectors[(step, j)] = (sv, mj)
            _giant_pair(N, alpha, exponent, (step, j), giants)
            counters.giant_steps += 1

    matched = set()
    for sigma, (tag, sign) in sort_match(babies, giants):
        matched.add((tag, sign))
        sv, mj = vectors[tag]
        p = _solve_quadratic(sv, mn, mj, sign, sigma, N)
        if p is not None:
            return _ordered(p, N)
    hit = _collide(N, k, gamma, giants, matched, counters)
    if hit is not None:
        return _ordered(hit[0], N)
    raise SearchExhausted(
        "no collision between baby and giant steps",
        {"N": N, "m": m, "n": n, "k": k, "alpha": alpha},
    )


def split_prq(N, r, g):
    """(p, q) with p^r q = N from any proper divisor g of N = p^r q."""
    for d in (g, N // g):
        rest = N // d
        root = iroot(rest, r)
        if root > 1 and root ** r == rest:
            return root, d
        for a in range(1, r + 1):
            root = iroot(d, a)
            if root > 1 and root ** a == d and N % root ** r == 0:
                return root, N // root ** r
    raise SearchExhausted("divisor does not split N as p^r q", {"N": N, "r": r, "g": g})


def power_vector_poly(M, X, r):
    """Coefficients v^0..v^(r+1) of g_j(x) = x (x + M)^r."""
    _, v = build_power_rows(M, X, r)
    return [v[t] // X ** t for t in range(r + 2)]


def main_search_power(params, counters=None):
    """Factor N = p^r q with c1 N^(1/2) < q < c2 N^(1/2); returns (p, q)."""
    counters = ensure(counters)
    N, r, m, k, alpha = params.N, params.r, params.m, params.k, params.alpha
    X = m
    babies = []
    x = 1
    for i in range(k):
        if i:
            counters.gcd_calls += 1
            g = gcd(x - 1, N)
            if g > 1:
                if g == N:
                    raise SearchExhausted("order of alpha is below k", {"N": N, "i": i})
                return split_prq(N, r, g)
        babies.append((x, i))
        x = x * alpha % N
    counters.baby_steps += k

    giants = []
    polys = {}
    for j in range(params.j_max + 1):
        M = m * j
        g_poly = power_vector_poly(M, X, r)
        polys[j] = g_poly
        exponent = intpoly.evaluate(g_poly, 1 - M)
        giants.append((mod_pow(alpha, exponent, N), j))
        counters.giant_steps += 1

    matched = set()
    for i, j in sort_match(babies, giants):
        matched.add(j)
        shifted = intpoly.taylor_shift(polys[j], -m * j)
        for p in integer_roots(shifted, rhs_form=(i, r)):
            if p > 1 and N % p ** r == 0 and N // p ** r > 1:
                return p, N // p ** r
    rest = [x for x, j in giants if j not in matched]
    hit = find_collisions(N, k, alpha, rest, counters)
    if hit is not None:
        return split_prq(N, r, hit[0])
    raise SearchExhausted(
        "no collision between baby and giant steps",
        {"N": N, "r": r, "m": m, "k": k, "alpha": alpha, "j_max": params.j_max},
    )


__all__ = [
    "BalancedParams",
    "ModParams",
    "PowerParams",
    "balanced_k",
    "mod_k",
    "power_k",
    "balanced_params",
    "mod_params",
    "power_params",
    "mod_ladder",
    "crt_residue",
    "main_search",
    "main_search_mod",
    "main_search_power",
    "split_prq",
    "power_vector_poly",
]
