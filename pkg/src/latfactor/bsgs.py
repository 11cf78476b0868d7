"""Collision machinery: sort-and-match and the product-tree collision finder."""

from bisect import bisect_left
from math import gcd

from .counters import ensure
from .znpoly import eval_geometric_coeffs, product_coeffs, scale_arg

# Evaluation points and polynomial roots are processed in tiles of this size.
BLOCK_SIZE = 1 << 16


def sort_match(babies, giants):
    """All (baby index, giant tag) pairs with equal residues.

    babies is a list of (residue, index), giants a list of (residue, tag).
    Both lists are sorted by residue and merged; the result is ordered by
    baby index, then tag.
    """
    table = sorted(babies)
    keys = [res for res, _ in table]
    pairs = []
    for res, tag in sorted(giants, key=lambda g: g[0]):
        pos = bisect_left(keys, res)
        while pos < len(keys) and keys[pos] == res:
            pairs.append((table[pos][1], tag))
            pos += 1
    pairs.sort()
    return pairs


def _block_polys(vs, N, block):
    return [product_coeffs(vs[i:i + block], N) for i in range(0, len(vs), block)]


def find_collisions(N, kappa, gamma, vs, counters=None, block=BLOCK_SIZE):
    """(g, N // g) for the first i < kappa where prod_h (gamma^i - v_h) shares
    a proper factor g with N, or None when no collision exists.

    The values f(gamma^i) of f = prod (x - v_h) come from geometric
    evaluation, tiled over i and over the v_h. When the full product is
    0 mod N, the v_h are checked one by one; a v_h equal to gamma^i mod N
    is skipped since it gives no split. Ties resolve to the smallest i, then
    the smallest h.
    """
    counters = ensure(counters)
    vs = [v % N for v in vs]
    if not vs or kappa < 1:
        return None
    polys = _block_polys(vs, N, block)
    base = 1
    step = pow(gamma, block, N)
    for start in range(0, kappa, block):
        count = min(block, kappa - start)
        values = [1] * count
        for f in polys:
            # f(base * gamma^t) = f_scaled(gamma^t)
            part = eval_geometric_coeffs(scale_arg(f, base, N), gamma, count, N)
            values = [x * y % N for x, y in zip(values, part)]
        point = base
        for t, y in enumerate(values):
            counters.collisions_checked += 1
            counters.gcd_calls += 1
            g = gcd(N, y)
            if 1 < g < N:
                return g, N // g
            if g == N:
                for v in vs:
                    counters.gcd_calls += 1
                    h = gcd(N, v - point)
                    if 1 < h < N:
                        return h, N // h
            point = point * gamma % N
        base = base * step % N
    return None
