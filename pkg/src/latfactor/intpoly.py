"""Integer polynomials (low-to-high coefficient lists) and exact root finding."""

from functools import reduce
from math import comb, gcd, isqrt


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def content(p):
    return reduce(gcd, p, 0)


def primitive(p):
    """Divide out the content and make the leading coefficient positive."""
    p = trim(p)
    if not p:
        return p
    c = content(p)
    if p[-1] < 0:
        c = -c
    return [x // c for x in p]


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return [i * c for i, c in enumerate(p)][1:]


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def power(p, e):
    out = [1]
    for _ in range(e):
        out = mul(out, p)
    return out


def taylor_shift(p, t):
    """Coefficients of p(x + t)."""
    out = [0] * len(p)
    for k, c in enumerate(p):
        if c:
            for i in range(k + 1):
                out[i] += c * comb(k, i) * t ** (k - i)
    return out


def pseudo_rem(a, b):
    """Remainder of |lc(b)|^(da-db+1) * a by b; the sign of a is preserved."""
    a, b = trim(a), trim(b)
    db = len(b) - 1
    lc = b[-1]
    scale = abs(lc)
    sign = 1 if lc > 0 else -1
    r = list(a)
    steps = len(a) - len(b) + 1
    for _ in range(max(0, steps)):
        if len(r) - 1 < db:
            r = [x * scale for x in r]
            continue
        lead = r[-1]
        r = [x * scale for x in r]
        shift = len(r) - 1 - db
        factor = sign * lead
        for i, y in enumerate(b):
            r[shift + i] -= factor * y
        r.pop()
        r = trim(r)
    return trim(r)


def poly_gcd(a, b):
    a, b = primitive(a), primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, primitive(pseudo_rem(a, b))
    return a


def exact_div(a, b):
    """a / b over Z, assuming b divides a exactly."""
    a, b = trim(a), trim(b)
    q = [0] * (len(a) - len(b) + 1)
    r = list(a)
    for k in range(len(q) - 1, -1, -1):
        coef, rem = divmod(r[k + len(b) - 1], b[-1])
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[k] = coef
        for i, y in enumerate(b):
            r[k + i] -= coef * y
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return q


def squarefree_part(p):
    p = primitive(p)
    if len(p) <= 2:
        return p
    g = poly_gcd(p, derivative(p))
    if len(g) <= 1:
        return p
    return primitive(exact_div(p, g))


def _shrink(p):
    # divide by the positive content, keeping the sign
    c = content(p)
    return [x // c for x in p] if c > 1 else list(p)


def sturm_chain(p):
    chain = [p, _shrink(derivative(p))]
    while len(chain[-1]) > 1:
        r = pseudo_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in _shrink(r)])
    return chain


def _variations(chain, x):
    signs = [v > 0 for v in (evaluate(q, x) for q in chain) if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def cauchy_bound(p):
    lead = abs(p[-1])
    return 2 + max(abs(c) for c in p[:-1]) // lead if len(p) > 1 else 0


def integer_roots(p, lo=None, hi=None):
    """All integer roots of p (within [lo, hi] if given), ascending.

    Degrees one and two are solved directly; higher degrees go through the
    square-free part and Sturm-sequence bisection over integer intervals.
    """
    p = trim(p)
    if not p:
        raise ValueError("the zero polynomial has every integer as a root")
    roots = set()
    if p[0] == 0:
        roots.add(0)
        while p[0] == 0:
            p = p[1:]
    p = primitive(p)
    deg = len(p) - 1
    if deg == 1:
        q, r = divmod(-p[0], p[1])
        if r == 0:
            roots.add(q)
    elif deg == 2:
        c, b, a = p
        disc = b * b - 4 * a * c
        if disc >= 0:
            s = isqrt(disc)
            if s * s == disc:
                for num in (-b + s, -b - s):
                    if num % (2 * a) == 0:
                        roots.add(num // (2 * a))
    elif deg > 2:
        sq = squarefree_part(p)
        bound = cauchy_bound(sq)
        left = -bound - 1 if lo is None else max(lo - 1, -bound - 1)
        right = bound if hi is None else min(hi, bound)
        if left < right:
            chain = sturm_chain(sq)
            stack = [(left, right, _variations(chain, left), _variations(chain, right))]
            while stack:
                a, b, va, vb = stack.pop()
                if va - vb <= 0:
                    continue
                if b - a == 1:
                    if evaluate(sq, b) == 0:
                        roots.add(b)
                    continue
                mid = (a + b) // 2
                vm = _variations(chain, mid)
                stack.append((a, mid, va, vm))
                stack.append((mid, b, vm, vb))
    out = sorted(roots)
    if lo is not None:
        out = [x for x in out if x >= lo]
    if hi is not None:
        out = [x for x in out if x <= hi]
    return out
