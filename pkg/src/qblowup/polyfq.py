"""Dense-exponent multivariate polynomial arithmetic over F_q.

Monomials are exponent tuples; coefficients are canonical field
integers.  Everything is exact; substitution supports affine-linear
changes of variables, which is all the valuation and invariance
computations need.
"""

from __future__ import annotations

import itertools

from .fields import gf


class Poly:
    """Polynomial in ``nvars`` variables over F_q."""

    __slots__ = ("terms", "nvars", "q")

    def __init__(self, terms, nvars, q):
        self.nvars = nvars
        self.q = q
        clean = {}
        for expo, c in terms.items():
            if not 0 <= c < q:
                raise ValueError("coefficients must be canonical elements of F_q")
            if c:
                clean[tuple(expo)] = c
        self.terms = clean

    # construction helpers

    @staticmethod
    def zero(nvars, q):
        return Poly({}, nvars, q)

    @staticmethod
    def constant(c, nvars, q):
        return Poly({(0,) * nvars: c}, nvars, q)

    @staticmethod
    def variable(i, nvars, q):
        e = [0] * nvars
        e[i] = 1
        return Poly({tuple(e): 1}, nvars, q)

    @staticmethod
    def linear(coeffs, q, constant=0):
        nvars = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * nvars
                e[i] = 1
                terms[tuple(e)] = c
        if constant:
            terms[(0,) * nvars] = constant
        return Poly(terms, nvars, q)

    # ring operations

    def _binop(self, other, fn):
        field = gf(self.q)
        out = dict(self.terms)
        for e, c in other.terms.items():
            new = fn(out.get(e, 0), c, field)
            if new:
                out[e] = new
            else:
                out.pop(e, None)
        return Poly(out, self.nvars, self.q)

    def __add__(self, other):
        return self._binop(other, lambda a, b, f: f.add(a, b))

    def __sub__(self, other):
        return self._binop(other, lambda a, b, f: f.sub(a, b))

    def __neg__(self):
        field = gf(self.q)
        return Poly({e: field.neg(c) for e, c in self.terms.items()}, self.nvars, self.q)

    def scale(self, k):
        field = gf(self.q)
        if k == 0:
            return Poly.zero(self.nvars, self.q)
        return Poly(
            {e: field.mul(k, c) for e, c in self.terms.items()}, self.nvars, self.q
        )

    def __mul__(self, other):
        field = gf(self.q)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = field.add(out.get(e, 0), field.mul(c1, c2))
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly(out, self.nvars, self.q)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.constant(1, self.nvars, self.q)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.q == other.q
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.q, tuple(sorted(self.terms.items()))))

    # structure

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def min_total_degree(self):
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, deg):
        return Poly(
            {e: c for e, c in self.terms.items() if sum(e) == deg}, self.nvars, self.q
        )

    def min_exponent_of(self, i):
        if not self.terms:
            raise ValueError("zero polynomial")
        return min(e[i] for e in self.terms)

    def evaluate(self, point):
        field = gf(self.q)
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v = field.mul(v, field.pow(x, k))
            total = field.add(total, v)
        return total

    def substitute(self, images):
        """Substitute variable i by images[i] (all Polys over the same field)."""
        assert len(images) == self.nvars
        nv = images[0].nvars if images else self.nvars
        out = Poly.zero(nv, self.q)
        for e, c in self.terms.items():
            term = Poly.constant(c, nv, self.q)
            for i, k in enumerate(e):
                if k:
                    term = term * (images[i] ** k)
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                "x%d^%d" % (i, k) if k > 1 else "x%d" % i
                for i, k in enumerate(e)
                if k
            )
            bits.append("%d%s" % (c, "*" + mono if mono else ""))
        return "Poly(%s)" % " + ".join(bits)


def homogenize(p, extra_at=0):
    """Homogenize an affine polynomial with a new variable at index ``extra_at``."""
    deg = p.total_degree() if p.terms else 0
    out = {}
    for e, c in p.terms.items():
        h = deg - sum(e)
        new = list(e)
        new.insert(extra_at, h)
        out[tuple(new)] = c
    return Poly(out, p.nvars + 1, p.q)


def binary_divide(g, lin, q):
    """Exact division of a binary form by a linear binary form.

    Returns the quotient; raises if the division is not exact.
    """
    field = gf(q)
    a, b = lin
    # lin = a*s + b*t; divide in the s- or t-leading sense
    if a == 0 and b == 0:
        raise ZeroDivisionError("division by zero form")
    g = dict(g.terms)
    nv = 2
    out = {}
    if a == 0:
        inv = field.inv(b)
        for (i, j), c in g.items():
            if j == 0:
                raise ValueError("binary division is not exact")
            out[(i, j - 1)] = field.mul(c, inv)
    elif b == 0:
        inv = field.inv(a)
        for (i, j), c in g.items():
            if i == 0:
                raise ValueError("binary division is not exact")
            out[(i - 1, j)] = field.mul(c, inv)
    else:
        inv = field.inv(a)
        # eliminate the lexicographically largest monomial repeatedly
        while g:
            (i, j) = max(g)
            c = g[(i, j)]
            if i == 0:
                raise ValueError("binary division is not exact")
            qc = field.mul(c, inv)
            out[(i - 1, j)] = qc
            for (di, dj), lc in (((i, j), a), ((i - 1, j + 1), b)):
                new = field.sub(g.get((di, dj), 0), field.mul(qc, lc))
                if new:
                    g[(di, dj)] = new
                else:
                    g.pop((di, dj), None)
    return Poly(out, nv, q)


def binary_ord_at(g, point, q):
    """Vanishing order of a binary form at a projective point of P^1."""
    if g.is_zero():
        raise ValueError("zero form")
    alpha, beta = point
    field = gf(q)
    lin = (beta, field.neg(alpha))  # vanishes at (alpha : beta)
    order = 0
    while True:
        if g.evaluate(point) != 0:
            return order
        g = binary_divide(g, lin, q)
        order += 1


def monomials_of_degree(nvars, deg):
    """Exponent tuples of total degree deg, lexicographic order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort()
    return out
