"""Tabulated arithmetic for the small finite fields F_q, q <= 9.

Elements are canonical integers 0..q-1.  For prime q these are residues
mod q; for q in {4, 8, 9} an element's base-p digits are the coefficients
of its polynomial representative, reduced by a fixed Conway polynomial so
that results are bit-stable across runs.
"""

from __future__ import annotations

from functools import lru_cache

# Conway polynomials, written as the monic relation x^k = <lower terms>.
# Keyed by q; values are the coefficients (c_0, ..., c_{k-1}) of the
# reduction x^k = c_{k-1} x^{k-1} + ... + c_0 over F_p.
_CONWAY_REDUCTION = {
    4: (1, 1),      # x^2 = x + 1          over F_2
    8: (1, 1, 0),   # x^3 = x + 1          over F_2
    9: (1, 1),      # x^2 = x + 1 ... see below; C(3,2) = x^2 + 2x + 2
}
# For q = 9 the Conway polynomial is x^2 + 2x + 2, i.e. x^2 = x + 1 in F_3
# (since -2 = 1 and -2 = 1 mod 3).


def prime_power(q):
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(c for c in range(2, q + 1) if q % c == 0)
    m, k = q, 0
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


class GF:
    """Arithmetic context for F_q.  Elements are ints in range(q)."""

    def __init__(self, q):
        pk = prime_power(q)
        if pk is None:
            raise ValueError("q = %r is not a prime power" % (q,))
        self.q = q
        self.p, self.k = pk
        if self.k == 1:
            self._mul_table = None
        else:
            self._mul_table = self._build_mul_table()
        self._inv_table = self._build_inv_table()

    # polynomial representation helpers (extension fields only)

    def _digits(self, a):
        p = self.p
        return [(a // p**i) % p for i in range(self.k)]

    def _undigits(self, coeffs):
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def _build_mul_table(self):
        p, k, q = self.p, self.k, self.q
        red = _CONWAY_REDUCTION[q]
        table = [[0] * q for _ in range(q)]
        for a in range(q):
            da = self._digits(a)
            for b in range(q):
                db = self._digits(b)
                prod = [0] * (2 * k - 1)
                for i, ca in enumerate(da):
                    if ca:
                        for j, cb in enumerate(db):
                            prod[i + j] = (prod[i + j] + ca * cb) % p
                for deg in range(2 * k - 2, k - 1, -1):
                    c = prod[deg]
                    if c:
                        prod[deg] = 0
                        for i, r in enumerate(red):
                            prod[deg - k + i] = (prod[deg - k + i] + c * r) % p
                table[a][b] = self._undigits(prod[:k])
        return table

    def _build_inv_table(self):
        inv = [0] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if self.mul(a, b) == 1:
                    inv[a] = b
                    break
            else:
                raise AssertionError("no inverse for %d in F_%d" % (a, self.q))
        return inv

    # field operations

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        return self._undigits(
            [(x + y) % p for x, y in zip(self._digits(a), self._digits(b))]
        )

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        return self._undigits([(-x) % p for x in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        return self._mul_table[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.q)
        return self._inv_table[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    @property
    def elements(self):
        return range(self.q)

    def __repr__(self):
        return "GF(%d)" % self.q


@lru_cache(maxsize=None)
def gf(q):
    """Shared GF(q) instance."""
    return GF(q)


# --- dense linear algebra over F_q (rows are tuples of ints) ---


def rref(rows, field):
    """Reduced row echelon form; returns (rows_tuple, pivot_columns)."""
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        scale = field.inv(work[r][c])
        work[r] = [field.mul(scale, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [
                    field.sub(x, field.mul(f, y)) for x, y in zip(work[i], work[r])
                ]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    out = tuple(tuple(row) for row in work[:r])
    return out, tuple(pivots)


def rank(rows, field):
    return len(rref(rows, field)[0])


def nullspace(rows, field):
    """Canonical RREF basis of {x : rows . x = 0}."""
    if not rows:
        raise ValueError("nullspace needs an ambient dimension; pass nonempty rows")
    ncols = len(rows[0])
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = field.neg(red[r][fc])
        basis.append(tuple(vec))
    return rref(basis, field)[0]


def mat_mul(a, b, field):
    n, mid, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = 0
            for t in range(mid):
                s = field.add(s, field.mul(a[i][t], b[t][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v, field):
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            s = field.add(s, field.mul(x, y))
        out.append(s)
    return tuple(out)


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_inv(a, field):
    """Inverse of a square matrix via [A | I] elimination."""
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug, field)
    if list(pivots)[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def solve(a, b, field):
    """One solution x of a . x = b, or None.  a is a list of rows."""
    if not a:
        return None
    ncols = len(a[0])
    aug = [list(row) + [val] for row, val in zip(a, b)]
    red, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return tuple(x)
