"""Top-level factoring entry points.

Each driver picks parameters from N, finds a suitable base, runs one of the
searches and returns the prime factorization with a trace of what it did.
Parameter formulas use bit length for log N and the bit length of that for
log log N, so every quantity stays an exact integer.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .arith import (
    int_root_ceil,
    int_root_floor,
    iroot,
    is_prime,
    log2_surrogate,
    loglog2_surrogate,
    mod_inv,
    small_factor_sweep,
    trial_factor,
)
from .coppersmith import factor_with_congruence, rpower_divisors_congruence
from .counters import Counters, ensure
from .errors import (
    NotOfForm,
    NotSemiprime,
    PromiseViolated,
    SearchExhausted,
)
from .order import ElementFound, FactorFound, Prime, find_alpha, order_find_or_factor
from .primesel import coprime_shift, prime_product
from .search import (
    balanced_k,
    balanced_params,
    main_search,
    main_search_mod,
    main_search_power,
    mod_k,
    mod_params,
    power_k,
    power_params,
    split_prq,
)

# Below this many ring elements a modulus is too small for the lattice
# searches; the searches need m (or mn) above it.
MIN_MODULUS = 72


@dataclass
class FactorizationResult:
    factors: list
    method_trace: list = field(default_factory=list)

    def value(self):
        out = 1
        for p, e in self.factors:
            out *= p ** e
        return out

    def primes(self):
        return [p for p, _ in self.factors]


def _merge(pairs):
    acc = {}
    for p, e in pairs:
        acc[p] = acc.get(p, 0) + e
    return sorted(acc.items())


def _stage(trace, name, params, counters=None):
    trace.append((name, dict(params), counters.as_dict() if counters else {}))


def _split_known(N, g):
    """Prime factorization of N with at most two prime factors, given a proper divisor."""
    a, b = g, N // g
    pairs = []
    for d in (a, b):
        if is_prime(d):
            pairs.append((d, 1))
        else:
            root = isqrt(d)
            if root * root != d or not is_prime(root):
                raise NotSemiprime(f"{d} is neither prime nor a prime square", [a, b])
            pairs.append((root, 2))
    return _merge(pairs)


def _strassen_fallback(N, trace, reason):
    counters = Counters()
    factors, rest = small_factor_sweep(N, max(2, isqrt(N)))
    if rest > 1:
        factors.append((rest, 1))
    _stage(trace, "pollard_strassen", {"reason": reason, "bound": isqrt(N)}, counters)
    return _merge(factors)


def balanced_x(N):
    """x = floor(N^(1/5) (log log N)^(2/5) / (log N)^(2/5))."""
    L, LL = log2_surrogate(N), loglog2_surrogate(N)
    return int_root_floor(N * LL * LL, L * L, 1, 5)


def balanced_feasible(N, beta, m):
    """72 < m < N^((1 - beta)/2) / 2, exactly."""
    beta = Fraction(beta)
    num, den = beta.numerator, beta.denominator
    return m > MIN_MODULUS and (2 * m) ** (2 * den) < N ** (den - num)


def factor_balanced(N, beta=Fraction(1, 2), c=Fraction(1, 2), counters=None, instrument=None):
    """Factor a semiprime N = p q with c N^beta < p <= N^beta.

    instrument, when a dict, receives m, k, the base alpha (when one was
    found) and the main search's giant-step records.
    """
    counters = ensure(counters)
    beta, c = Fraction(beta), Fraction(c)
    trace = []
    if N < 4:
        raise NotSemiprime(f"{N} is not a semiprime")
    if is_prime(N):
        raise NotSemiprime(f"{N} is prime", [N])
    x = balanced_x(N)
    if x < 3:
        return FactorizationResult(_strassen_fallback(N, trace, "x below 3"), trace)
    pp = prime_product(x)
    m = pp.m
    _stage(trace, "prime_product", {"x": x, "m": m, "phi_m": pp.phi_m})
    g = gcd(N, m)
    if g not in (1, N):
        _stage(trace, "gcd_with_m", {"g": g})
        return FactorizationResult(_split_known(N, g), trace)
    if not balanced_feasible(N, beta, m):
        return FactorizationResult(_strassen_fallback(N, trace, "m outside (72, N^((1-beta)/2)/2)"), trace)
    root = isqrt(N)
    if root * root == N:
        return FactorizationResult(_split_known(N, root), trace)
    k = balanced_k(N, c, m)
    found = find_alpha(N, k, m, [(p, 1) for p in pp.primes], counters)
    _stage(trace, "find_alpha", {"k": k, "outcome": type(found).__name__}, counters)
    if instrument is not None:
        instrument.update(m=m, k=k, X=balanced_params(N, beta, c, m, 1).X, found=found)
    if isinstance(found, FactorFound):
        return FactorizationResult(_split_known(N, found.g), trace)
    if isinstance(found, Prime):
        raise NotSemiprime(f"{N} is prime", [N])
    params = balanced_params(N, beta, c, m, found.a)
    # The search keeps its own counts so baby_steps reads exactly k.
    search_counters = Counters()
    try:
        p, q = main_search(params, search_counters, instrument)
    except SearchExhausted as exc:
        raise NotSemiprime(f"search failed: {exc}", []) from exc
    finally:
        counters.merge(search_counters)
    _stage(
        trace,
        "main_search",
        {"m": m, "phi_m": pp.phi_m, "k": k, "X": params.X, "alpha": params.alpha, "beta": str(beta)},
        search_counters,
    )
    return FactorizationResult(_split_known(N, p), trace)


def reduce_to_semiprime(N):
    """(removed, core): every prime up to N^(1/3) is stripped from N.

    What remains has at most two prime factors. A prime core is moved into
    removed, so core ends up 1 or composite, unless N itself is prime.
    """
    if N < 2:
        return [], N
    if is_prime(N):
        return [], N
    removed, core = small_factor_sweep(N, max(2, iroot(N, 3)))
    if core > 1 and is_prime(core):
        removed = _merge(removed + [(core, 1)])
        core = 1
    return removed, core


def _check_promise(pairs, n, r):
    for p, _ in pairs:
        if p % n != r % n:
            raise PromiseViolated(f"prime {p} is not {r % n} mod {n}")


def modinfo_m0(N, n):
    """ceil(N^(1/5) / ((log N)^(4/5) n^(3/5)))."""
    L = log2_surrogate(N)
    return int_root_ceil(N, L ** 4 * n ** 3, 1, 5)


def _factor_core_mod(core, n, r, trace, counters):
    """Prime factorization of a core with exactly two prime factors, both
    above core^(1/3)."""
    g = gcd(n, core)
    if g > 1:
        _stage(trace, "gcd_with_n", {"g": g})
        if g < core:
            return _split_known(core, g)
        return _strassen_fallback(core, trace, "core divides n")
    root = isqrt(core)
    if root * root == core:
        return _split_known(core, root)
    if n ** 4 >= core:
        primes = factor_with_congruence(core, r % n, n, counters)
        _stage(trace, "congruence_sweep", {"n": n, "r": r % n}, counters)
        if not primes:
            raise PromiseViolated(f"no prime factor of {core} is {r % n} mod {n}")
        return _split_known(core, primes[0])
    m = coprime_shift(max(1, modinfo_m0(core, n)), n)
    mn = m * n
    if mn <= MIN_MODULUS or (2 * mn) ** 4 >= core:
        return _strassen_fallback(core, trace, "mn outside (72, N^(1/4)/2)")
    k = mod_k(core, mn)
    found = find_alpha(core, k, mn, None, counters)
    _stage(trace, "find_alpha", {"k": k, "outcome": type(found).__name__}, counters)
    if isinstance(found, FactorFound):
        return _split_known(core, found.g)
    if isinstance(found, Prime):
        return [(core, 1)]
    params = mod_params(core, r, n, m, found.a)
    search_counters = Counters()
    try:
        p, _ = main_search_mod(params, search_counters)
    finally:
        counters.merge(search_counters)
    _stage(
        trace,
        "main_search_mod",
        {"m": m, "n": n, "k": k, "ladder": len(params.X_seq), "alpha": found.a},
        search_counters,
    )
    return _split_known(core, p)


def factor_with_modinfo(N, n, r, counters=None):
    """Complete factorization of N when every prime factor is r mod n."""
    counters = ensure(counters)
    if N < 1 or n < 1:
        raise ValueError("N and n must be positive")
    trace = []
    if N == 1:
        return FactorizationResult([], trace)
    removed, core = reduce_to_semiprime(N)
    _stage(trace, "reduce_to_semiprime", {"removed": len(removed), "core": core})
    if not removed and core == N and is_prime(N):
        pairs = [(N, 1)]
    else:
        pairs = list(removed)
        if core > 1:
            pairs += _factor_core_mod(core, n, r, trace, counters)
    pairs = _merge(pairs)
    _check_promise(pairs, n, r)
    return FactorizationResult(pairs, trace)


def find_exponent(a, b, N):
    """(n, sign) with N = a^n + sign b^n, scanning n up to 2 log N."""
    limit = 2 * N.bit_length() + 2
    for n in range(1, limit + 1):
        an, bn = a ** n, b ** n
        if an - bn == N:
            return n, -1
        if an + bn == N:
            return n, 1
        if an - bn > N:
            break
    raise NotOfForm(f"{N} is not {a}^n +- {b}^n")


def _divisors(n):
    divs = [1]
    for p, e in trial_factor(n):
        divs = [d * p ** t for d in divs for t in range(e + 1)]
    return sorted(divs)


def factor_anbn(a, b, N, counters=None):
    """Prime factorization of N = a^n +- b^n with gcd(a, b) = 1 and a > b >= 1.

    Every odd prime p | N has ord_p(a/b) in D = {2d : d | n} for a sum and
    {d : d | n} for a difference, and p = 1 mod that order. Walking D upward,
    G_j = gcd((a/b)^(d_j) - 1, N_j) collects exactly the primes of order d_j.
    """
    counters = ensure(counters)
    if not (a > b >= 1) or gcd(a, b) != 1:
        raise ValueError("need a > b >= 1 with gcd(a, b) = 1")
    n, sign = find_exponent(a, b, N)
    divs = _divisors(n)
    D = [2 * d for d in divs] if sign > 0 else divs
    trace = [("exponent", {"n": n, "sign": sign, "D": D}, {})]
    pairs = []
    rest = N
    e = 0
    while rest % 2 == 0:
        rest //= 2
        e += 1
    if e:
        pairs.append((2, e))
    ratio = a * mod_inv(b, rest) % rest if rest > 1 else 0
    for d in D:
        if rest == 1:
            break
        G = gcd(pow(ratio, d, rest) - 1, rest)
        if G == 1:
            continue
        sub = factor_with_modinfo(G, d, 1, counters)
        trace.append(("order_class", {"d": d, "G": G}, {}))
        trace.extend(sub.method_trace)
        for p, _ in sub.factors:
            mult = 0
            while rest % p == 0:
                rest //= p
                mult += 1
            pairs.append((p, mult))
    if rest != 1:
        raise SearchExhausted("cofactor left after all order classes", {"N": N, "rest": rest})
    return FactorizationResult(_merge(pairs), trace)


def rpower_m(N, r):
    """Nearest integer to r^(-1/4) N^(1/4r) (log N)^(1/2)."""
    L = log2_surrogate(N)
    twice = int_root_floor(N * L ** (2 * r) * 2 ** (4 * r), r ** r, 1, 4 * r)
    return (twice + 1) // 2


def rpower_delta(N, r):
    """N^(1/4r) (log N)^8, rounded down."""
    L = log2_surrogate(N)
    return int_root_floor(N * L ** (32 * r), 1, 1, 4 * r)


def enumeration_branch(N, r):
    """r > log N / (32 log log N)."""
    return 32 * r * loglog2_surrogate(N) > log2_surrogate(N)


def _rpower_result(N, r, p, q):
    if p < 2 or q < 1 or p ** r * q != N or not is_prime(p) or (q > 1 and not is_prime(q)):
        raise PromiseViolated(f"{N} is not p^{r} q with p, q prime")
    return _merge([(p, r)] + ([(q, 1)] if q > 1 else []))


def factor_rpower(N, r, c1, c2, counters=None):
    """(p, q) with N = p^r q and c1 N^(1/2) < q < c2 N^(1/2), as a factorization."""
    counters = ensure(counters)
    c1, c2 = Fraction(c1), Fraction(c2)
    L = log2_surrogate(N)
    trace = []
    if enumeration_branch(N, r):
        for i in range(2, min(L, iroot(N, r)) + 1):
            if N % i ** r == 0 and is_prime(i):
                _stage(trace, "enumerate", {"p": i})
                return FactorizationResult(_rpower_result(N, r, i, N // i ** r), trace)
    # m < p / r, with p > (N^(1/2) / c2)^(1/r)
    p_lower = int_root_ceil(N * c2.denominator ** 2, c2.numerator ** 2, 1, 2 * r)
    m = max(1, min(rpower_m(N, r), (p_lower - 1) // r))
    k = power_k(m, r)
    found = order_find_or_factor(N, r, k, counters)
    _stage(trace, "order_find_or_factor", {"delta": k, "outcome": type(found).__name__}, counters)
    if isinstance(found, FactorFound):
        try:
            p, q = split_prq(N, r, found.g)
        except SearchExhausted as exc:
            raise PromiseViolated(str(exc)) from exc
        return FactorizationResult(_rpower_result(N, r, p, q), trace)
    if not isinstance(found, ElementFound):
        raise PromiseViolated(f"{N} has no prime p with p^{r} | N")
    params = power_params(N, r, c1, c2, m, found.a)
    try:
        p, q = main_search_power(params, counters)
    except SearchExhausted as exc:
        raise PromiseViolated(f"search failed: {exc}") from exc
    _stage(
        trace,
        "main_search_power",
        {"m": m, "k": k, "r": r, "j_max": params.j_max, "alpha": found.a},
        counters,
    )
    return FactorizationResult(_rpower_result(N, r, p, q), trace)


def factor_rpower_scan(N, r, counters=None):
    """factor_rpower over widening brackets c1 = 2^-t, c2 = 2^t."""
    for t in range(1, log2_surrogate(N) + 1):
        try:
            return factor_rpower(N, r, Fraction(1, 2 ** t), Fraction(2 ** t), counters)
        except PromiseViolated:
            continue
    raise PromiseViolated(f"{N} is not p^{r} q for any bracket")


def _class_sweep(args):
    N, r, classes, m = args
    out = []
    for s in classes:
        out.extend(rpower_divisors_congruence(N, r, s, m))
    return out


def rpower_all(N, r, threads=1):
    """All primes p with p^r | N, ascending."""
    if r < 1:
        raise ValueError("r must be positive")
    if N < 2:
        return []
    x = int_root_ceil(N, 1, 1, 4 * r)
    if x < 3:
        m, support = 1, ()
    else:
        pp = prime_product(x)
        m, support = pp.m, pp.primes
    found = set()
    rest = N
    for ell in support:
        e = 0
        while rest % ell == 0:
            rest //= ell
            e += 1
        if e >= r:
            found.add(ell)
    if rest > 1:
        classes = [s for s in range(m) if gcd(s, m) == 1] if m > 1 else [0]
        if threads > 1 and len(classes) > 1:
            chunks = [classes[i::threads] for i in range(threads)]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                parts = pool.map(_class_sweep, [(rest, r, c, m) for c in chunks if c])
                candidates = [p for part in parts for p in part]
        else:
            candidates = _class_sweep((rest, r, classes, m))
        found.update(p for p in candidates if is_prime(p))
    return sorted(found)


__all__ = [
    "FactorizationResult",
    "balanced_x",
    "balanced_feasible",
    "factor_balanced",
    "reduce_to_semiprime",
    "modinfo_m0",
    "factor_with_modinfo",
    "find_exponent",
    "factor_anbn",
    "rpower_m",
    "rpower_delta",
    "enumeration_branch",
    "factor_rpower",
    "factor_rpower_scan",
    "rpower_all",
]
