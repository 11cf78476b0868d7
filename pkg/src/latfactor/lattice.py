"""Exact LLL reduction and the rank-3 bases used by the searches."""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .errors import BoundTooLarge, DependentRows, NonDivisibleCoordinates


@dataclass
class ReducedBasis:
    rows: list
    transform: list | None


@dataclass(frozen=True)
class SecondVector:
    c: int
    b: int
    a: int
    X: int

    def poly(self):
        """Coefficients (low to high) of c + b*x + a*x^2."""
        return [self.c, self.b, self.a]


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def lll_reduce(basis, delta=Fraction(3, 4), with_transform=True):
    """LLL-reduce the rows of `basis` using integral Gram-Schmidt data.

    All quantities are exact integers (the d_i are Gram determinants and the
    lambda_{k,j} = d_{j+1} * mu_{k,j}), so no rational arithmetic is needed.
    A swap happens only when the Lovasz condition fails strictly.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    dn, dd = delta.numerator, delta.denominator
    b = [list(r) for r in basis]
    n = len(b)
    H = [[int(i == j) for j in range(n)] for i in range(n)] if with_transform else None
    if n == 0:
        return ReducedBasis([], H)

    # D[i] = d_{i-1} in 1-based notation: D[0] = 1, D[k+1] = Gram det of rows 0..k.
    D = [1] + [0] * n
    lam = [[0] * n for _ in range(n)]

    def red(k, l):
        two_l = 2 * lam[k][l]
        dl = D[l + 1]
        if two_l > dl or -two_l > dl:
            q = (two_l + dl) // (2 * dl)
            bk, bl = b[k], b[l]
            for t in range(len(bk)):
                bk[t] -= q * bl[t]
            if H is not None:
                hk, hl = H[k], H[l]
                for t in range(n):
                    hk[t] -= q * hl[t]
            lam[k][l] -= q * dl
            lk, ll = lam[k], lam[l]
            for i in range(l):
                lk[i] -= q * ll[i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        if H is not None:
            H[k], H[k - 1] = H[k - 1], H[k]
        lk, lk1 = lam[k], lam[k - 1]
        for j in range(k - 1):
            lk[j], lk1[j] = lk1[j], lk[j]
        lm = lk[k - 1]
        B = (D[k - 1] * D[k + 1] + lm * lm) // D[k]
        for i in range(k + 1, kmax + 1):
            li = lam[i]
            t = li[k]
            li[k] = (D[k + 1] * li[k - 1] - lm * t) // D[k]
            li[k - 1] = (B * t + lm * li[k]) // D[k + 1]
        D[k] = B

    def add_row(k):
        for j in range(k + 1):
            u = _dot(b[k], b[j])
            lk, lj = lam[k], lam[j]
            for i in range(j):
                u = (D[i + 1] * u - lk[i] * lj[i]) // D[i]
            if j < k:
                lk[j] = u
            else:
                if u == 0:
                    raise DependentRows(f"row {k} is dependent on earlier rows")
                D[k + 1] = u

    kmax = 0
    add_row(0)
    k = 1
    while k < n:
        if k > kmax:
            kmax = k
            add_row(k)
        red(k, k - 1)
        lm = lam[k][k - 1]
        if dd * D[k + 1] * D[k - 1] < dn * D[k] * D[k] - dd * lm * lm:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return ReducedBasis(b, H)


def gram_schmidt(rows):
    """Exact Gram-Schmidt: returns (mu, squared norms of b*_i) as Fractions."""
    n = len(rows)
    star = []
    norms = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i, r in enumerate(rows):
        v = [Fraction(x) for x in r]
        for j in range(i):
            mu[i][j] = Fraction(_dot(r, star[j])) / norms[j] if norms[j] else Fraction(0)
            v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
        star.append(v)
        norms.append(sum(x * x for x in v))
    return mu, norms


def build_balanced_basis(N, m_inv, j, X):
    """Rows for N, f(xX), f(xX)^2 with f(x) = x + j*m_inv mod N."""
    e = j * m_inv % N
    return [
        [N, 0, 0],
        [e, X, 0],
        [e * e % N, 2 * e * X, X * X],
    ]


def build_mod_basis(N, mj_s, X):
    e = mj_s % N
    return [
        [N, 0, 0],
        [e, X, 0],
        [e * e % N, 2 * e * X, X * X],
    ]


def build_power_rows(M, X, r):
    """Second row u and difference vector v of the r-power basis.

    u holds the coefficients of (xX + M)^r, v those of xX * (xX + M)^r.
    """
    u = [comb(r, i) * M ** (r - i) * X ** i for i in range(r + 1)] + [0]
    v = [0] + [comb(r, i) * M ** (r - i) * X ** (i + 1) for i in range(r + 1)]
    return u, v


def second_vector(rb, X):
    c, bx, ax2 = rb.rows[1][:3]
    if bx % X or ax2 % (X * X):
        raise NonDivisibleCoordinates(f"row {rb.rows[1]} not scaled by X={X}")
    b, a = bx // X, ax2 // (X * X)
    if a < 0:
        c, b, a = -c, -b, -a
    return SecondVector(c, b, a, X)


def enum_shortest_dim3(basis, bound, budget=2_000_000):
    """All nonzero vectors of the rank-3 lattice with norm <= bound.

    Plain Fincke-Pohst enumeration over integer coefficient vectors with exact
    rational Gram-Schmidt bounds; the result is sorted by (squared norm,
    vector) so it is deterministic.
    """
    if len(basis) != 3:
        raise ValueError("enumeration oracle is for rank-3 lattices")
    basis = greedy_reduce(basis)
    mu, norms = gram_schmidt(basis)
    if any(nrm == 0 for nrm in norms):
        raise DependentRows("basis is not of rank 3")
    R2 = bound * bound
    found = []
    steps = 0

    def span(center, room, norm):
        # integers x with (x + center)^2 * norm <= room
        if room < 0:
            return range(0)
        q = room / norm
        rad = isqrt(q.numerator // q.denominator) + 1
        lo = int(-center - rad) - 1
        hi = int(-center + rad) + 1
        xs = [x for x in range(lo, hi + 1) if (x + center) ** 2 * norm <= room]
        return xs

    for x2 in span(Fraction(0), Fraction(R2), norms[2]):
        room2 = R2 - x2 * x2 * norms[2]
        c1 = x2 * mu[2][1]
        for x1 in span(c1, room2, norms[1]):
            room1 = room2 - (x1 + c1) ** 2 * norms[1]
            c0 = x2 * mu[2][0] + x1 * mu[1][0]
            for x0 in span(c0, room1, norms[0]):
                steps += 1
                if steps > budget:
                    raise BoundTooLarge(f"enumeration exceeded {budget} steps")
                if x0 == x1 == x2 == 0:
                    continue
                v = [x0 * p + x1 * q + x2 * r for p, q, r in zip(*basis)]
                n2 = _dot(v, v)
                if n2 <= R2:
                    found.append((n2, v))
    found.sort()
    return [v for _, v in found]


def greedy_reduce(basis):
    """Pairwise Gauss-style reduction, independent of lll_reduce.

    Repeatedly subtracts the nearest-integer multiple of one row from another
    while that strictly shortens it. The lattice is unchanged, which is all
    the enumeration oracle needs; the point is only to tame skewed bases.
    """
    rows = [list(r) for r in basis]
    changed = True
    while changed:
        changed = False
        rows.sort(key=lambda v: (_dot(v, v), v))
        for k in range(len(rows)):
            for i in range(len(rows)):
                if i == k:
                    continue
                bi, bk = rows[i], rows[k]
                ni = _dot(bi, bi)
                if ni == 0:
                    raise DependentRows("zero row in basis")
                q = (2 * _dot(bk, bi) + ni) // (2 * ni)
                if q:
                    cand = [x - q * y for x, y in zip(bk, bi)]
                    if _dot(cand, cand) < _dot(bk, bk):
                        rows[k] = cand
                        changed = True
    return rows


def _rank(vectors):
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def successive_minima_dim3(basis, count=3, budget=2_000_000):
    """Squared successive minima of a rank-3 lattice with witness vectors.

    Bounds come from Minkowski's second theorem (product of the minima is
    below 3^{3/2} det), so each stage enumerates a ball that is certain to
    contain the next witness.
    """
    gram_det = 1
    _, norms = gram_schmidt(basis)
    g = Fraction(1)
    for nrm in norms:
        g *= nrm
    gram_det = g  # det^2 as an exact rational (integral for integer bases)

    def ball(r2):
        return enum_shortest_dim3(basis, isqrt(int(r2)) + 1, budget)

    # lambda1^6 <= lambda1 lambda2 lambda3 ^2 < 27 det^2
    r2 = _root_ceil(27 * gram_det, 3)
    vecs = ball(r2)
    lam = [_dot(vecs[0], vecs[0])]
    witnesses = [vecs[0]]
    if count >= 2:
        # lambda1 * lambda2^2 < 3^{3/2} det  =>  lambda2^4 < 27 det^2 / lambda1^2
        r2 = _root_ceil(27 * gram_det / lam[0], 2)
        for v in ball(r2):
            if _rank(witnesses + [v]) == 2:
                lam.append(_dot(v, v))
                witnesses.append(v)
                break
    if count >= 3:
        r2 = Fraction(27) * gram_det / (lam[0] * lam[1])
        for v in ball(int(r2) + 1):
            if _rank(witnesses + [v]) == 3:
                lam.append(_dot(v, v))
                witnesses.append(v)
                break
    return lam, witnesses


def _root_ceil(q, k):
    """An integer >= q**(1/k) for a nonnegative rational q."""
    q = Fraction(q)
    n = -(-q.numerator // q.denominator)
    r = 1
    while r ** k < n:
        r *= 2
    lo, hi = r // 2, r
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k >= n:
            hi = mid
        else:
            lo = mid + 1
    return lo
