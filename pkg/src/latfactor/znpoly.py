"""Polynomials over Z_N: products, product trees, geometric evaluation.

Coefficient lists are little-endian (index = degree). Multiplication packs
coefficients into one big integer (Kronecker substitution) and lets GMP do
the work.
"""

from dataclasses import dataclass, field

import gmpy2

from .arith import mod_inv
from .errors import ModulusMismatch

SCHOOLBOOK_CUTOFF = 16


@dataclass
class ZnPoly:
    coeffs: list = field(default_factory=list)
    modulus: int = 2

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        c = [x % self.modulus for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.modulus
        return acc


def _schoolbook(a, b, N):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [v % N for v in out]


def mul(a, b, N):
    """Product of two coefficient lists with entries in [0, N)."""
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    if min(la, lb) <= SCHOOLBOOK_CUTOFF:
        return _schoolbook(a, b, N)
    width = (2 * N.bit_length() + min(la, lb).bit_length() + 7) // 8
    pa = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in a), "little")
    pb = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in b), "little")
    n_out = la + lb - 1
    raw = int(gmpy2.mpz(pa) * gmpy2.mpz(pb)).to_bytes(width * n_out, "little")
    view = memoryview(raw)
    return [
        int.from_bytes(view[i:i + width], "little") % N
        for i in range(0, width * n_out, width)
    ]


def poly_mul(a, b):
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"{a.modulus} != {b.modulus}")
    return ZnPoly(mul(a.coeffs, b.coeffs, a.modulus), a.modulus)


def tree_levels(points, N):
    """All levels of the product tree, leaves first."""
    if not points:
        raise ValueError("product tree needs at least one point")
    level = [[(-v) % N, 1] for v in points]
    levels = [level]
    while len(level) > 1:
        nxt = [mul(level[i], level[i + 1], N) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
        levels.append(level)
    return levels


def product_coeffs(points, N):
    return tree_levels(points, N)[-1][0]


def product_tree(points, modulus):
    """prod (x - v) over the points, as a monic ZnPoly."""
    return ZnPoly(product_coeffs(points, modulus), modulus)


def eval_geometric_coeffs(f, alpha, m, N):
    """[f(alpha^0), ..., f(alpha^(m-1))] mod N via a single chirp product.

    Uses i*j = T(i+j) - T(i) - T(j) with T(t) = t(t-1)/2, so that
    f(alpha^i) = alpha^-T(i) * sum_j f_j alpha^-T(j) * alpha^T(i+j).
    """
    if m < 1:
        raise ValueError("m must be positive")
    inv = mod_inv(alpha % N, N)
    if not f:
        return [0] * m
    n = len(f) - 1
    if n == 0:
        return [f[0] % N] * m

    chirp = [1] * (n + m)
    step = 1
    for t in range(1, n + m):
        chirp[t] = chirp[t - 1] * step % N
        step = step * alpha % N
    span = max(n + 1, m)
    unchirp = [1] * span
    step = 1
    for t in range(1, span):
        unchirp[t] = unchirp[t - 1] * step % N
        step = step * inv % N

    weighted = [f[j] * unchirp[j] % N for j in range(n, -1, -1)]
    prod = mul(weighted, chirp, N)
    return [unchirp[i] * prod[n + i] % N for i in range(m)]


def eval_geometric(f, alpha, m):
    return eval_geometric_coeffs(f.coeffs, alpha, m, f.modulus)


def scale_arg(f, c, N):
    """Coefficients of f(c*x)."""
    out = []
    power = 1
    for coeff in f:
        out.append(coeff * power % N)
        power = power * c % N
    return out


def horner(f, x, N):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % N
    return acc


def _inverse_series(b, k, N):
    """Power series inverse of b (with b[0] == 1) modulo x^k."""
    g = [1]
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        e = mul(b[:prec], g, N)[:prec]
        e = [(-c) % N for c in e]
        e[0] = (e[0] + 2) % N
        g = mul(g, e, N)[:prec]
    return g


def divmod_monic(a, b, N, inv_rev=None):
    """Quotient and remainder of a by the monic polynomial b."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return [], list(a)
    k = da - db + 1
    if inv_rev is None or len(inv_rev) < k:
        inv_rev = _inverse_series(b[::-1], k, N)
    q = mul(a[::-1][:k], inv_rev[:k], N)[:k]
    q += [0] * (k - len(q))
    q.reverse()
    qb = mul(q, b, N)
    r = [(a[i] - qb[i]) % N for i in range(db)]
    return q, r


def multipoint_eval(f, points, N):
    """Evaluate f at arbitrary points with a remainder tree."""
    levels = tree_levels(points, N)
    rems = [divmod_monic(f, levels[-1][0], N)[1]]
    for depth in range(len(levels) - 2, -1, -1):
        level = levels[depth]
        nxt = []
        for idx, r in enumerate(rems):
            left = 2 * idx
            for child in (left, left + 1):
                if child < len(level):
                    nxt.append(divmod_monic(r, level[child], N)[1])
        rems = nxt
    return [r[0] if r else 0 for r in rems]
