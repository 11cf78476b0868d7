"""Acceptance criteria 1 to 11.

Each criterion is a plain function returning (ok, detail). Under pytest every
one becomes test_criterion_N and the terminal summary prints one line per
criterion; run as a script it prints the same lines directly.

Set LATFACTOR_FULL_ORDER_GRID=1 to run the order check of criterion 10 over
every pair (N, a) with N <= 10^4 instead of the default reduced grid.
"""

import functools
import os
import random
import sys
import time
from fractions import Fraction
from math import gcd, isqrt

sys.path.insert(0, os.path.dirname(__file__))

from helpers import (  # noqa: E402
    brute_collision_factors,
    carmichael,
    horner,
    is_prime_naive,
    naive_order,
    naive_product,
    order_by_reduction,
    random_prime,
    random_prime_in,
    sieve,
)

from latfactor import coppersmith as cs  # noqa: E402
from latfactor.arith import int_root_floor, mod_inv  # noqa: E402
from latfactor.bsgs import find_collisions  # noqa: E402
from latfactor.cli import run_bench  # noqa: E402
from latfactor.drivers import factor_anbn, factor_balanced, factor_rpower, rpower_all  # noqa: E402
from latfactor.lattice import (  # noqa: E402
    build_balanced_basis,
    enum_shortest_dim3,
    lll_reduce,
    second_vector,
)
from latfactor.order import (  # noqa: E402
    ElementFound,
    ExceedsBound,
    FactorFound,
    Order,
    order_bounded,
)
from latfactor.primesel import prime_product  # noqa: E402
from latfactor.search import balanced_k  # noqa: E402
from latfactor.znpoly import ZnPoly, eval_geometric, product_tree  # noqa: E402

HALF = Fraction(1, 2)


def _verdict(failures, detail):
    if failures:
        return False, f"{detail}; {len(failures)} failing, first: {failures[0]}"
    return True, detail


# -- criterion 1: balanced semiprimes, shared with criteria 3 and 10 ---------


@functools.lru_cache(maxsize=None)
def balanced_runs():
    rng = random.Random(101)
    runs = []
    for _ in range(200):
        p = random_prime_in(rng, 2 ** 27, 2 ** 28)
        q = random_prime_in(rng, 2 ** 27, 2 ** 28)
        while q == p:
            q = random_prime_in(rng, 2 ** 27, 2 ** 28)
        info = {}
        started = time.perf_counter()
        try:
            result = factor_balanced(p * q, HALF, HALF, instrument=info)
            primes = result.primes()
        except Exception as exc:  # recorded as a failure of this instance
            primes = repr(exc)
        seconds = time.perf_counter() - started
        runs.append({"p": min(p, q), "q": max(p, q), "primes": primes, "seconds": seconds, "info": info})
    return runs


def criterion_1():
    runs = balanced_runs()
    failures = []
    for r in runs:
        if r["primes"] != [r["p"], r["q"]]:
            failures.append(f"N={r['p'] * r['q']} gave {r['primes']}")
        elif r["seconds"] > 10:
            failures.append(f"N={r['p'] * r['q']} took {r['seconds']:.1f}s")
    slowest = max(r["seconds"] for r in runs)
    return _verdict(failures, f"{len(runs) - len(failures)}/{len(runs)} exact, slowest {slowest:.2f}s")


# -- criterion 2: the short first vector and a usable second vector ----------


def criterion_2():
    rng = random.Random(202)
    betas = [Fraction(1, 2), Fraction(2, 5), Fraction(1, 3), Fraction(3, 7)]
    failures = []
    for _ in range(100):
        beta = rng.choice(betas)
        num, den = beta.numerator, beta.denominator
        bits = rng.randrange(40, 64)
        while True:
            N = rng.randrange(2 ** (bits - 1), 2 ** bits)
            # floor(N^((1 - beta)/2) / 2)
            hi = int_root_floor(N, 2 ** (2 * den), den - num, 2 * den)
            if hi > 74:
                break
        while True:
            m = rng.randrange(73, hi)
            if gcd(m, N) == 1 and (2 * m) ** (2 * den) < N ** (den - num):
                break
        while True:
            j = rng.randrange(1, m + 1)
            if gcd(j, m) == 1:
                break
        X = int_root_floor(N ** num, m ** den, 1, den)
        assert (m * X) ** den <= N ** num < (m * (X + 1)) ** den
        basis = build_balanced_basis(N, mod_inv(m, N), j, X)
        rb = lll_reduce(basis)
        target = [j, m * X, 0]
        signed = (target, [-v for v in target])
        norm2 = sum(v * v for v in target)
        shortest = enum_shortest_dim3(basis, isqrt(norm2) + 1)
        if rb.rows[0] not in signed:
            failures.append(f"first vector {rb.rows[0]} for N={N} m={m} j={j} beta={beta}")
            continue
        if not shortest or shortest[0] not in signed:
            failures.append(f"enumeration disagrees for N={N} m={m} j={j} beta={beta}")
            continue
        if second_vector(rb, X).a == 0:
            failures.append(f"a = 0 for N={N} m={m} j={j} beta={beta}")
    return _verdict(failures, f"{100 - len(failures)}/100 tuples, first vector = +-(j, mX, 0) and a != 0")


# -- criterion 3: a collision exists for the known p --------------------------


def _giant_for(N, m, X, j, alpha):
    rb = lll_reduce(build_balanced_basis(N, mod_inv(m, N), j, X))
    sv = second_vector(rb, X)
    exponent = sv.c * m * m + sv.b * m * (1 - j) + sv.a * (1 - j) ** 2
    return sv, pow(alpha, exponent, N)


def criterion_3():
    failures = []
    direct = 0
    for r in balanced_runs():
        p, q, info = r["p"], r["q"], r["info"]
        N = p * q
        m, k, X = info["m"], info["k"], info["X"]
        if k != balanced_k(N, HALF, m):
            failures.append(f"k mismatch for N={N}")
            continue
        j = p % m
        if isinstance(info["found"], ElementFound) and j in info.get("giants", {}):
            alpha = info["found"].a
            sv, _, x_j, _ = info["giants"][j]
        else:
            # the base search split N before any giant step; the chain holds for any unit
            alpha = 2
            sv, x_j = _giant_for(N, m, X, j, alpha)
            direct += 1
        p_msb = p // m
        value = sv.c + sv.b * p_msb + sv.a * p_msb ** 2
        if value % p:
            failures.append(f"g(p_msb) not divisible by p for N={N}")
            continue
        i = value // p
        if not abs(i) < k:
            failures.append(f"|i|={abs(i)} >= k={k} for N={N}")
        elif pow(alpha, m * m * i, p) != x_j % p:
            failures.append(f"alpha^(m^2 i) != x_j mod p for N={N}")
    n = len(balanced_runs())
    return _verdict(failures, f"{n - len(failures)}/{n} instances ({direct} with a directly built giant, base 2)")


# -- criterion 4: polynomial layer against naive oracles ---------------------


def criterion_4():
    rng = random.Random(404)
    failures = []
    cases = 10_000
    for t in range(cases):
        bits = rng.randrange(16, 65)
        N = rng.randrange(2 ** (bits - 1), 2 ** bits)
        # mostly small degrees, a tail up to 2^12
        roll = rng.random()
        if t < 4:
            deg = 2 ** 12
        elif roll < 0.97:
            deg = rng.randrange(1, 33)
        elif roll < 0.995:
            deg = rng.randrange(33, 257)
        else:
            deg = rng.randrange(257, 1025)
        if t % 2 == 0:
            points = [rng.randrange(N) for _ in range(deg)]
            got = product_tree(points, N).coeffs
            if got != naive_product(points, N):
                failures.append(f"product_tree deg={deg} N={N}")
        else:
            f = [rng.randrange(N) for _ in range(deg + 1)]
            alpha = rng.randrange(1, N)
            while gcd(alpha, N) != 1:
                alpha = rng.randrange(1, N)
            count = rng.randrange(1, 9) if deg > 256 else rng.randrange(1, 65)
            got = eval_geometric(ZnPoly(f, N), alpha, count)
            want = [horner(f, pow(alpha, i, N), N) for i in range(count)]
            if got != want:
                failures.append(f"eval_geometric deg={deg} m={count} N={N}")
    return _verdict(failures, f"{cases - len(failures)}/{cases} cases exact")


# -- criterion 5: collision search against the double gcd loop --------------


def criterion_5():
    rng = random.Random(505)
    failures = []
    hits = 0
    cases = 200
    for _ in range(cases):
        p = random_prime(rng, rng.randrange(6, 20))
        q = random_prime(rng, rng.randrange(6, 20))
        while q == p:
            q = random_prime(rng, rng.randrange(6, 20))
        N = p * q
        gamma = rng.randrange(2, N)
        while gcd(gamma, N) != 1:
            gamma = rng.randrange(2, N)
        n = rng.randrange(1, 65)
        kappa = rng.randrange(1, (1 << 16) // n + 1)
        vs = [rng.randrange(N) for _ in range(n)]
        if rng.random() < 0.5:
            # plant a collision modulo one prime
            i = rng.randrange(kappa)
            target = pow(gamma, i, p)
            vs[rng.randrange(n)] = target + p * rng.randrange(q)
        got = find_collisions(N, kappa, gamma, vs, block=rng.choice([16, 256, 1 << 16]))
        got = set(got) if got is not None else set()
        found = brute_collision_factors(N, kappa, gamma, vs)
        want = {g for g in found} | {N // g for g in found}
        hits += bool(want)
        if got != want:
            failures.append(f"N={N} kappa={kappa} n={n}: {got} vs {want}")
    return _verdict(failures, f"{cases - len(failures)}/{cases} instances equal ({hits} with a collision)")


# -- criterion 6: planted Coppersmith roots and exact determinants ----------


def criterion_6():
    rng = random.Random(606)
    built = []
    original = cs.hint_lattice

    def spy(N, g, delta, mult, dim, X):
        rows = original(N, g, delta, mult, dim, X)
        det = 1
        for i in range(dim):
            det *= rows[i][i]
        triangular = all(rows[i][k] == 0 for i in range(dim) for k in range(i + 1, dim))
        built.append(triangular and det == cs.lattice_det(N, delta, mult, dim, X))
        return rows

    cs.hint_lattice = spy
    failures = []
    try:
        for bits in [20] * 30 + [24] * 40 + [28] * 30:
            p, q = random_prime(rng, bits), random_prime(rng, bits)
            while q == p:
                q = random_prime(rng, bits)
            p, q = max(p, q), min(p, q)
            N = p * q
            root4 = int_root_floor(N, 1, 1, 4)
            m = rng.randrange(root4 + 1, 2 * root4 + 2)
            while gcd(m, N) != 1:
                m += 1
            assert m ** 4 >= N
            s = p % m
            inst = cs.HintInstance(N=N, beta=HALF, delta_deg=1, c=Fraction(2), f=[s * mod_inv(m, N) % N, 1])
            if (p - s) // m not in cs.small_roots(inst):
                failures.append(f"root missing for N={N} m={m}")
    finally:
        cs.hint_lattice = original
    bad_det = built.count(False)
    if bad_det:
        failures.append(f"{bad_det} lattices with a wrong determinant")
    return _verdict(failures, f"{100 - len(failures)}/100 roots recovered, {len(built)} lattices with exact determinant")


# -- criterion 7: r-power sweeps --------------------------------------------

PRIMES_2_20 = None


def _brute_rpower(N, r):
    global PRIMES_2_20
    if PRIMES_2_20 is None:
        PRIMES_2_20 = sieve(1 << 20)
    out = []
    for p in PRIMES_2_20:
        if p ** r > N:
            break
        if N % p ** r == 0:
            out.append(p)
    return out


def criterion_7():
    rng = random.Random(707)
    failures = []
    nonempty = 0
    for t in range(500):
        r = (2, 3, 4)[t % 3]
        N = 1
        if rng.random() < 0.6:
            # plant an r-th power of a prime up to the largest that fits
            top = int_root_floor(2 ** 40, 1, 1, r)
            p = random_prime_in(rng, 2, max(3, min(top, 2 ** rng.randrange(2, 21))))
            if p ** r <= 2 ** 40:
                N = p ** r
        N *= rng.randrange(1, 2 ** 40 // N + 1)
        N = max(N, 2)
        want = _brute_rpower(N, r)
        nonempty += bool(want)
        got = rpower_all(N, r)
        if got != want:
            failures.append(f"rpower_all({N}, {r}) = {got}, want {want}")
    for t in range(50):
        r = (2, 3)[t % 2]
        lo, hi = (100, 3000) if r == 2 else (30, 300)
        while True:
            p = random_prime_in(rng, lo, hi)
            q = random_prime_in(rng, max(2, p ** r // 3), 3 * p ** r)
            N = p ** r * q
            # 1/2 N^(1/2) < q < 2 N^(1/2)
            if q != p and 4 * q * q > N and q * q < 4 * N:
                break
        try:
            result = factor_rpower(N, r, HALF, Fraction(2))
            got = result.factors
        except Exception as exc:
            got = repr(exc)
        if got != sorted([(p, r), (q, 1)]):
            failures.append(f"factor_rpower({N}, {r}) = {got}")
    return _verdict(failures, f"rpower_all 500 N ({nonempty} with a hit) and factor_rpower 50 N; {550 - len(failures)}/550 exact")


# -- criterion 8: scaling of the baby-step counter --------------------------


def criterion_8():
    rows, fit = run_bench(40, 64, 4, 5, 0)
    failures = []
    searched = [r for r in rows if r["k"] != ""]
    for r in searched:
        if r["giant_steps"] != r["phi_m"]:
            failures.append(f"giant_steps {r['giant_steps']} != phi(m) {r['phi_m']} at N={r['N']}")
    if fit is None or not 0.17 <= fit["exponent"] <= 0.23:
        failures.append(f"fitted exponent {fit and fit['exponent']} outside [0.17, 0.23]")
    exponent = fit["exponent"] if fit else None
    return _verdict(failures, f"exponent {exponent} over {len(searched)} searched instances, giant_steps = phi(m) on all")


# -- criterion 9: sums and differences of powers ----------------------------


@functools.lru_cache(maxsize=1)
def _primes_2_24():
    return sieve(1 << 24)


def _trial_factor_fast(n):
    out = []
    for p in _primes_2_24():
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    if n > 1:
        out.append((n, 1))
    return out


def criterion_9():
    failures = []
    count = 0
    for a in range(2, 6):
        for b in range(1, a):
            if gcd(a, b) != 1:
                continue
            for n in range(1, 31):
                for N in (a ** n - b ** n, a ** n + b ** n):
                    if N < 2 or N > 2 ** 48:
                        continue
                    count += 1
                    try:
                        got = factor_anbn(a, b, N).factors
                    except Exception as exc:
                        got = repr(exc)
                    if got != _trial_factor_fast(N):
                        failures.append(f"a={a} b={b} N={N}: {got}")
    if factor_anbn(2, 1, 2 ** 11 - 1).factors != [(23, 1), (89, 1)]:
        failures.append("2^11 - 1 did not give {23, 89}")
    return _verdict(failures, f"{count - len(failures)}/{count} grid values exact, 2047 -> [23, 89]")


# -- criterion 10: order machinery ------------------------------------------


def criterion_10():
    full = os.environ.get("LATFACTOR_FULL_ORDER_GRID") == "1"
    limit = 10 ** 4 if full else 1000
    failures = []
    pairs = 0
    for N in range(2, limit + 1):
        lam = carmichael(N)
        sequential = N <= 200
        for a in range(1, N):
            g = gcd(a, N)
            if g != 1:
                if order_bounded(N, a, N) != FactorFound(g):
                    failures.append(f"N={N} a={a}: expected FactorFound({g})")
                continue
            d = naive_order(N, a) if sequential else order_by_reduction(N, a, lam)
            pairs += 1
            if order_bounded(N, a, d) != Order(d) or order_bounded(N, a, d - 1) != ExceedsBound(d - 1):
                failures.append(f"N={N} a={a} d={d}")
    sampled = 0
    if not full:
        rng = random.Random(1010)
        for N in range(limit + 1, 10 ** 4 + 1):
            lam = carmichael(N)
            bases = {2, 3, N - 1, rng.randrange(1, N), rng.randrange(1, N)}
            for a in bases:
                if gcd(a, N) != 1:
                    continue
                d = order_by_reduction(N, a, lam)
                sampled += 1
                if order_bounded(N, a, d) != Order(d) or order_bounded(N, a, d - 1) != ExceedsBound(d - 1):
                    failures.append(f"N={N} a={a} d={d}")

    certified = 0
    for r in balanced_runs():
        info = r["info"]
        found = info["found"]
        if not isinstance(found, ElementFound):
            continue
        N, m, k = r["p"] * r["q"], info["m"], info["k"]
        beta = pow(found.a, m * m, N)
        blocks = isqrt(k - 1) + 1
        x = 1
        for i in range(1, blocks * blocks + 1):
            x = x * beta % N
            if gcd(x - 1, N) != 1:
                failures.append(f"alpha={found.a} fails at i={i} for N={N}")
                break
        certified += 1
    scope = "every pair N <= 10^4" if full else f"every pair N <= {limit}, {sampled} sampled pairs up to 10^4"
    return _verdict(failures, f"order_bounded on {pairs} pairs ({scope}); {certified} bases certified over full blocks")


# -- criterion 11: prime products -------------------------------------------


def criterion_11():
    rng = random.Random(1111)
    failures = []
    for _ in range(1000):
        x = rng.randrange(10 ** 3, 10 ** 9 + 1)
        pp = prime_product(x)
        prod, phi = 1, 1
        for p in pp.primes:
            if not is_prime_naive(p):
                failures.append(f"x={x}: {p} is not prime")
            prod *= p
            phi *= p - 1
        if prod != pp.m or not (Fraction(x, 2) < pp.m < 2 * x):
            failures.append(f"x={x}: m={pp.m}")
        if Fraction(pp.phi_m, pp.m) != Fraction(phi, prod) or pp.ratio != Fraction(phi, prod):
            failures.append(f"x={x}: phi(m)/m mismatch")
    ratios = [prime_product(2 ** e).ratio for e in range(10, 31)]
    inversions = sum(1 for u, v in zip(ratios, ratios[1:]) if v > u)
    if inversions > 1:
        failures.append(f"{inversions} inversions over x = 2^10..2^30")
    return _verdict(failures, f"1000 x exact, {inversions} inversion(s) over x = 2^10..2^30")


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
]


def _run(check, record_property):
    ok, detail = check()
    record_property("detail", detail)
    assert ok, detail


def test_criterion_1(record_property):
    _run(criterion_1, record_property)


def test_criterion_2(record_property):
    _run(criterion_2, record_property)


def test_criterion_3(record_property):
    _run(criterion_3, record_property)


def test_criterion_4(record_property):
    _run(criterion_4, record_property)


def test_criterion_5(record_property):
    _run(criterion_5, record_property)


def test_criterion_6(record_property):
    _run(criterion_6, record_property)


def test_criterion_7(record_property):
    _run(criterion_7, record_property)


def test_criterion_8(record_property):
    _run(criterion_8, record_property)


def test_criterion_9(record_property):
    _run(criterion_9, record_property)


def test_criterion_10(record_property):
    _run(criterion_10, record_property)


def test_criterion_11(record_property):
    _run(criterion_11, record_property)


if __name__ == "__main__":
    failed = 0
    for number, check in enumerate(CRITERIA, 1):
        started = time.perf_counter()
        try:
            ok, detail = check()
        except Exception as exc:
            ok, detail = False, f"raised {exc!r}"
        failed += not ok
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail} ({time.perf_counter() - started:.1f}s)", flush=True)
    sys.exit(1 if failed else 0)
