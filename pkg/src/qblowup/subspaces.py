"""Rational linear subspaces of P^d(F_q) in canonical echelon form.

A subspace is stored as the reduced-row-echelon basis of its cone of
point coordinate vectors, so equal subspaces compare equal and sort
deterministically.  Counting is done with exact Gaussian binomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fields import gf, nullspace, rank, rref

DEFAULT_ENUMERATION_BUDGET = 10**7


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would exceed the configured budget."""


def gaussian_binomial(n, k, q):
    """Number of k-dimensional linear subspaces of F_q^n, exactly."""
    if k < 0 or k > n:
        raise ValueError("need 0 <= k <= n, got k=%r n=%r" % (k, n))
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def gaussian_multinomial(blocks, q):
    """Number of flags with successive quotient dimensions `blocks`."""
    total = sum(blocks)
    out = 1
    for b in blocks:
        out *= gaussian_binomial(total, b, q)
        total -= b
    return out


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of P^{ncols-1}(F_q), as an RREF row basis.

    ``rows`` span the cone of the subspace; ``projective_dim`` is
    len(rows) - 1, so a projective point has one row.
    """

    rows: tuple
    ncols: int
    q: int

    @property
    def projective_dim(self):
        return len(self.rows) - 1

    def key(self):
        return (len(self.rows), self.rows)

    def contains(self, other):
        """True iff other <= self as subspaces."""
        field = gf(self.q)
        base = rank(self.rows, field)
        return rank(self.rows + other.rows, field) == base

    def to_json(self):
        return [list(r) for r in self.rows]

    def __repr__(self):
        return "Subspace(%s)" % (",".join("".join(map(str, r)) for r in self.rows),)


def subspace_from_rows(rows, ncols, q):
    """Canonicalize a spanning set of coordinate vectors."""
    field = gf(q)
    red, _ = rref(rows, field)
    if any(len(r) != ncols for r in rows):
        raise ValueError("row length does not match ncols")
    return Subspace(rows=red, ncols=ncols, q=q)


def subspace_sum(a, b):
    """Smallest subspace containing both (linear join of the cones)."""
    assert a.ncols == b.ncols and a.q == b.q
    return subspace_from_rows(a.rows + b.rows, a.ncols, a.q)


def subspace_intersection(a, b):
    """Intersection of subspaces; rows may be empty."""
    assert a.ncols == b.ncols and a.q == b.q
    field = gf(a.q)
    ann_a = nullspace(a.rows, field)
    ann_b = nullspace(b.rows, field)
    combined, _ = rref(ann_a + ann_b, field)
    if len(combined) == a.ncols:
        return Subspace(rows=(), ncols=a.ncols, q=a.q)
    rows = nullspace(combined, field) if combined else rref(
        [tuple(1 if i == j else 0 for j in range(a.ncols)) for i in range(a.ncols)],
        field,
    )[0]
    return Subspace(rows=rows, ncols=a.ncols, q=a.q)


def annihilator(s):
    """The subspace of functionals vanishing on s (rows in RREF)."""
    field = gf(s.q)
    if not s.rows:
        rows = rref(
            [tuple(1 if i == j else 0 for j in range(s.ncols)) for i in range(s.ncols)],
            field,
        )[0]
        return Subspace(rows=rows, ncols=s.ncols, q=s.q)
    return Subspace(rows=nullspace(s.rows, field), ncols=s.ncols, q=s.q)


def enumerate_subspaces(d, q, j, budget=DEFAULT_ENUMERATION_BUDGET):
    """All j-dimensional rational linear subvarieties of P^d(F_q).

    Deterministic order: lexicographic on the flattened echelon matrix.
    """
    if not (0 <= j <= d - 1):
        raise ValueError("need 0 <= j <= d-1, got j=%r d=%r" % (j, d))
    if q ** ((j + 1) * (d + 1)) > budget:
        raise BudgetExceededError(
            "enumeration of %d-dim subspaces in P^%d over F_%d exceeds budget %d"
            % (j, d, q, budget)
        )
    ncols = d + 1
    nrows = j + 1
    out = []
    for pivots in itertools.combinations(range(ncols), nrows):
        free_cells = [
            (r, c)
            for r in range(nrows)
            for c in range(ncols)
            if c > pivots[r] and c not in pivots
        ]
        for values in itertools.product(range(q), repeat=len(free_cells)):
            mat = [[0] * ncols for _ in range(nrows)]
            for r, p in enumerate(pivots):
                mat[r][p] = 1
            for (r, c), v in zip(free_cells, values):
                mat[r][c] = v
            out.append(
                Subspace(rows=tuple(tuple(r) for r in mat), ncols=ncols, q=q)
            )
    out.sort(key=lambda s: s.rows)
    assert len(out) == gaussian_binomial(d + 1, j + 1, q)
    return out


def all_proper_subspaces(d, q, budget=DEFAULT_ENUMERATION_BUDGET):
    """All elements of the component set: dimensions 0 .. d-1, ordered."""
    out = []
    for j in range(d):
        out.extend(enumerate_subspaces(d, q, j, budget=budget))
    return out
