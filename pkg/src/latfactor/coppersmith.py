"""Small roots modulo an unknown divisor, and the r-power divisor sweep.

Given a monic f of degree delta and N with an unknown divisor b >= N^beta,
small_roots finds every x0 in a window with f(x0) = 0 mod b. The lattice is
spanned by x^j N^(m-i) f^i(xX) (i < m, j < delta) and x^i f^m(xX), one row
per degree 0..n-1, so it is lower triangular with determinant
N^(delta m (m+1)/2) * X^(n (n-1)/2).
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from . import intpoly
from .arith import int_root_ceil, int_root_floor, is_prime, mod_inv
from .counters import ensure
from .errors import NoShortEnoughVector, SharedFactor
from .lattice import lll_reduce

# Intervals holding at most this many candidates are stepped directly; one
# lattice reduction costs far more than a few dozen divisibility checks.
EXHAUSTIVE_LIMIT = 64


@dataclass
class HintInstance:
    N: int
    beta: Fraction
    delta_deg: int
    c: Fraction
    f: list
    # Optional overrides: an exact lower bound on the divisor and an explicit
    # root radius. The halving sweep knows both as integers.
    b_min: int | None = None
    radius: int | None = None

    def divisor_floor(self):
        if self.b_min is not None:
            return self.b_min
        beta = Fraction(self.beta)
        return int_root_ceil(self.N, 1, beta.numerator, beta.denominator)

    def root_radius(self):
        if self.radius is not None:
            return self.radius
        beta, c = Fraction(self.beta), Fraction(self.c)
        e = beta.denominator ** 2 * self.delta_deg
        return int_root_floor(
            self.N ** (beta.numerator ** 2) * c.numerator ** e, c.denominator ** e, 1, e
        )


def full_dimension(N):
    """n = ceil(log2 N + 1)."""
    return (N - 1).bit_length() + 1


def guaranteed_X(N, beta, delta):
    """X = 1/2 N^(beta^2/delta - 1/log N) = N^(beta^2/delta) / 4."""
    beta = Fraction(beta)
    e = beta.denominator ** 2 * delta
    return int_root_floor(N ** (beta.numerator ** 2), 4 ** e, 1, e)


def short_vector_bound_holds(N, b_min, delta, mult, dim, X):
    """Exact form of 2^((n-1)/4) det^(1/n) < b^m / sqrt(n) for the lattice."""
    lhs = 2 ** (dim * (dim - 1)) * N ** (2 * delta * mult * (mult + 1))
    lhs *= X ** (2 * dim * (dim - 1)) * dim ** (2 * dim)
    return lhs < b_min ** (4 * dim * mult)


def _log2_max_X(N, b_min, delta, mult, dim):
    logN, logb = math.log2(N), math.log2(b_min)
    num = 4 * dim * mult * logb - dim * (dim - 1)
    num -= 2 * delta * mult * (mult + 1) * logN + 2 * dim * math.log2(dim)
    return num / (2 * dim * (dim - 1))


def _max_X(N, b_min, delta, mult, dim):
    est = _log2_max_X(N, b_min, delta, mult, dim)
    if est < 0:
        return 0
    hi = int(2 ** min(est, 4000)) + 2
    if short_vector_bound_holds(N, b_min, delta, mult, dim, hi):
        return hi
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if short_vector_bound_holds(N, b_min, delta, mult, dim, mid):
            lo = mid
        else:
            hi = mid
    return lo


def choose_lattice(N, b_min, delta, target, max_dim):
    """Smallest lattice (mult, dim, X) whose guaranteed root bound reaches target.

    Returns the best lattice up to max_dim when no size reaches the target.
    """
    best = (1, delta + 1, 0)
    for dim in range(delta + 1, max_dim + 1):
        for mult in range(1, (dim - 1) // delta + 1):
            X = _max_X(N, b_min, delta, mult, dim)
            if X >= target:
                return mult, dim, target
            if X > best[2]:
                best = (mult, dim, X)
    return best


def hint_lattice(N, g, delta, mult, dim, X):
    """Rows of the shift-polynomial lattice for the monic g."""
    powers = [[1]]
    for _ in range(mult):
        powers.append(intpoly.mul(powers[-1], g))
    polys = []
    for i in range(mult):
        base = [c * N ** (mult - i) for c in powers[i]]
        for j in range(delta):
            polys.append([0] * j + base)
    for i in range(dim - delta * mult):
        polys.append([0] * i + powers[mult])
    rows = []
    for P in polys:
        P = P + [0] * (dim - len(P))
        rows.append([P[k] * X ** k for k in range(dim)])
    return rows


def lattice_det(N, delta, mult, dim, X):
    return N ** (delta * mult * (mult + 1) // 2) * X ** (dim * (dim - 1) // 2)


def _centered(f, tau, N):
    return [c % N for c in intpoly.taylor_shift(f, tau)]


def lattice_plan(inst):
    """(mult, dim, X) for the instance: the lattice that covers the root
    radius with the least total reduction cost over all windows.

    When no lattice fits, the one with the largest X is returned; X < 1 then
    means nothing up to the size cap fits the divisor bound.
    """
    N = inst.N
    delta = len(inst.f) - 1
    b_min = inst.divisor_floor()
    radius = inst.root_radius()
    plan = cheapest_lattice(N, b_min, delta, radius, math.inf)
    if plan is not None:
        return plan
    return choose_lattice(N, b_min, delta, radius + 1, full_dimension(N))


def window_count(radius, X):
    """Number of translated windows of half-width X - 1 covering [-radius, radius]."""
    if X < 1:
        return 0
    reach = X - 1
    if radius <= reach:
        return 1
    return -(-(2 * radius + 1) // (2 * reach + 1))


# Rough cost of one window, in units of one stepped candidate: a fixed
# overhead plus the exact integral LLL, which grows like dim^4 times the
# entry size mult * log N.
WINDOW_OVERHEAD = 1000
LLL_COST_UNIT = 0.025


def reduction_cost(N, mult, dim):
    return WINDOW_OVERHEAD + LLL_COST_UNIT * dim ** 4 * mult * N.bit_length()


def cheapest_lattice(N, b_min, delta, radius, budget):
    """The (mult, dim, X) covering [-radius, radius] at least cost, or None.

    Cost is the window count times reduction_cost; None means no lattice up
    to the size cap beats `budget`, the cost of stepping every candidate.
    """
    best, best_cost = None, budget
    for dim in range(delta + 1, full_dimension(N) + 1):
        if reduction_cost(N, 1, dim) >= best_cost:
            break
        for mult in range(1, (dim - 1) // delta + 1):
            cost = reduction_cost(N, mult, dim)
            if cost >= best_cost:
                break
            est = _log2_max_X(N, b_min, delta, mult, dim)
            if est < 0:
                continue
            windows = window_count(radius, int(2 ** min(est, 4000)))
            if windows and windows * cost < best_cost:
                best, best_cost = (mult, dim), windows * cost
    if best is None:
        return None
    mult, dim = best
    X = min(_max_X(N, b_min, delta, mult, dim), radius + 1)
    if X < 1 or window_count(radius, X) * reduction_cost(N, mult, dim) >= budget:
        return None
    return mult, dim, X


def small_roots(inst, counters=None, plan=None):
    """Integer roots x0, |x0| <= radius, of f modulo a nontrivial divisor of N.

    Every root modulo a divisor b >= b_min is guaranteed to be present; roots
    modulo smaller divisors are kept when the lattice happens to expose them.
    """
    counters = ensure(counters)
    N, f = inst.N, [c % inst.N for c in inst.f]
    delta = len(f) - 1
    if delta < 1 or f[-1] != 1:
        raise ValueError("f must be monic of degree at least 1")
    b_min = inst.divisor_floor()
    R = inst.root_radius()
    mult, dim, X = plan if plan is not None else lattice_plan(inst)
    if X < 1:
        raise NoShortEnoughVector(f"no lattice up to dimension {full_dimension(N)} fits b >= {b_min}")

    found = set()
    reach = X - 1
    tau = 0 if R <= reach else -R + reach
    while True:
        g = _centered(f, tau, N)
        rows = hint_lattice(N, g, delta, mult, dim, X)
        red = lll_reduce(rows, with_transform=False)
        counters.lll_calls += 1
        short = red.rows[0]
        if sum(v * v for v in short) * dim >= b_min ** (2 * mult):
            raise NoShortEnoughVector(f"first vector too long at dim={dim}, X={X}")
        h = [short[k] // X ** k for k in range(dim)]
        if any(h):
            for y in intpoly.integer_roots(h, -reach, reach):
                x0 = y + tau
                if abs(x0) <= R and gcd(intpoly.evaluate(f, x0) % N, N) > 1:
                    found.add(x0)
        if tau + reach >= R:
            break
        tau += 2 * reach + 1
    return sorted(found)


def sweep_plan(N, r):
    """X_0 = floor(N^(1/r)), X_(i+1) = X_i // 2, for k = floor(log N / r) steps."""
    X = [int_root_floor(N, 1, 1, r)]
    for _ in range(N.bit_length() // r):
        X.append(X[-1] // 2)
    return X


def _step_range(N, r, s, m, lo, hi):
    first = max(lo, 2)
    first += (s - first) % m
    return [p for p in range(first, hi + 1, m) if N % p ** r == 0]


def rpower_divisors_congruence(N, r, s, m, counters=None, exhaustive_limit=EXHAUSTIVE_LIMIT):
    """Every p >= 2 with p = s (mod m) and p^r | N, ascending."""
    counters = ensure(counters)
    g = gcd(m, N)
    if g != 1:
        raise SharedFactor(g)
    if N < 2:
        return []
    s %= m
    t = mod_inv(m, N) if N > 1 else 0
    plan = sweep_plan(N, r)
    found = set()
    for i in range(len(plan) - 1):
        hi, lo = plan[i], plan[i + 1]
        x_lo = max(0, -(-(max(lo, 2) - s) // m))
        x_hi = (hi - s) // m
        if x_hi < x_lo:
            continue
        if x_hi - x_lo + 1 <= exhaustive_limit:
            found.update(_step_range(N, r, s, m, lo, hi))
            continue
        xc = (x_lo + x_hi) // 2
        radius = max(xc - x_lo, x_hi - xc)
        base = (s * t + xc) % N
        f = [comb(r, k) * base ** (r - k) % N for k in range(r + 1)]
        inst = HintInstance(
            N=N,
            beta=Fraction(math.log2(max(lo, 2) ** r) / math.log2(N)).limit_denominator(1000),
            delta_deg=r,
            c=Fraction(1),
            f=f,
            b_min=max(lo, 2) ** r,
            radius=radius,
        )
        plan_i = cheapest_lattice(N, inst.b_min, r, radius, x_hi - x_lo + 1)
        # Step directly when no lattice is cheaper than stepping.
        if plan_i is None:
            found.update(_step_range(N, r, s, m, lo, hi))
            continue
        try:
            roots = small_roots(inst, counters, plan_i)
        except NoShortEnoughVector:
            found.update(_step_range(N, r, s, m, lo, hi))
            continue
        for y in roots:
            p = m * (xc + y) + s
            if lo <= p <= hi and N % p ** r == 0:
                found.add(p)
    found.update(_step_range(N, r, s, m, 0, plan[-1]))
    return sorted(found)


def factor_with_congruence(N, s, m, counters=None):
    """All primes p = s (mod m) dividing N."""
    return [
        p for p in rpower_divisors_congruence(N, 1, s, m, counters) if is_prime(p)
    ]


def integer_roots(g, rhs_form=None):
    """Positive integer roots of the integer polynomial g (low to high).

    rhs_form = (i, r) subtracts i*p^r first, turning an equation
    g(p) = i*p^r into a root-finding problem.
    """
    g = list(g)
    if rhs_form is not None:
        i, r = rhs_form
        g += [0] * (r + 1 - len(g))
        g[r] -= i
    g = intpoly.trim(g)
    if not g:
        return []
    return [p for p in intpoly.integer_roots(g, lo=1) if p > 0]
