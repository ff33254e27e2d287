"""Independent brute-force cohomology on the blown-up plane, d <= 2.

For d = 2 the blow-up of P^2 at every rational point is a rational
surface with Picard basis H, {E_P}.  Exact h^0 comes from counting
degree-a forms with prescribed multiplicities at the rational points,
h^2 from Serre duality, and h^1 from the Riemann-Roch difference
h^0 + h^2 - chi.  Vanishing orders are read off by coefficient
extraction after an affine translation, never by derivatives, so the
computation is correct in small characteristic.  For d = 1 the blow-up
is P^1 itself and the closed form for line bundles on P^1 applies.

This module is the trust anchor for the recursive engine: it never
shares code paths with the certificate recursion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field

from .divisors import Divisor
from .fields import gf, nullspace
from .polyfq import Poly, homogenize, monomials_of_degree
from .subspaces import Subspace


def rational_points(d, q):
    """Normalized coordinate tuples of the points of P^d(F_q)."""
    out = []
    for raw in itertools.product(range(q), repeat=d + 1):
        if all(x == 0 for x in raw):
            continue
        pivot = next(i for i, x in enumerate(raw) if x)
        if raw[pivot] != 1:
            continue
        out.append(raw)
    out.sort()
    return out


def point_tuple(s):
    """The normalized coordinate tuple of a 0-dimensional subspace."""
    if s.projective_dim != 0:
        raise ValueError("not a point: %r" % (s,))
    return s.rows[0]


def points_on(s, q):
    """Rational points of a positive-dimensional subspace."""
    field = gf(q)
    out = set()
    rows = s.rows
    for coeffs in itertools.product(range(q), repeat=len(rows)):
        vec = [0] * s.ncols
        for c, row in zip(coeffs, rows):
            for i, x in enumerate(row):
                vec[i] = field.add(vec[i], field.mul(c, x))
        if all(x == 0 for x in vec):
            continue
        pivot = next(i for i, x in enumerate(vec) if x)
        scale = field.inv(vec[pivot])
        out.add(tuple(field.mul(scale, x) for x in vec))
    return sorted(out)


@dataclass(frozen=True)
class PicClass:
    """Class a . H + sum over P of c[P] . E_P on the blown-up plane."""

    a: int
    c: dict
    q: int
    d: int = 2

    def coefficient(self, point):
        return self.c.get(point, 0)

    def to_json(self):
        return {
            "a": self.a,
            "c": [
                {"point": list(p), "mult": m} for p, m in sorted(self.c.items())
            ],
        }


def pic_class(div, d, q):
    """Picard class of a boundary divisor, d <= 2."""
    if d not in (1, 2):
        raise ValueError("the surface oracle only covers d <= 2")
    if d == 1:
        deg = sum(div.support.values())
        return PicClass(a=deg, c={}, q=q, d=1)
    a = 0
    c = {}
    for s, m in div.support.items():
        if s.projective_dim == 1:
            a += m
            for p in points_on(s, q):
                c[p] = c.get(p, 0) - m
        elif s.projective_dim == 0:
            p = point_tuple(s)
            c[p] = c.get(p, 0) + m
        else:
            raise ValueError("unexpected component dimension")
    return PicClass(a=a, c={p: m for p, m in c.items() if m}, q=q, d=2)


def exceptional_class(point, q):
    return PicClass(a=0, c={point: 1}, q=q, d=2)


def line_class(line_subspace, q):
    pts = points_on(line_subspace, q)
    return PicClass(a=1, c={p: -1 for p in pts}, q=q, d=2)


def component_class(s, q):
    if s.projective_dim == 0:
        return exceptional_class(point_tuple(s), q)
    if s.projective_dim == 1:
        return line_class(s, q)
    raise ValueError("unsupported component type")


def canonical_class(q):
    return PicClass(
        a=-3, c={p: 1 for p in rational_points(2, q)}, q=q, d=2
    )


def pic_pair(c1, c2):
    """Intersection pairing: H.H = 1, E_P.E_P = -1, mixed terms 0."""
    total = c1.a * c2.a
    for p, m in c1.c.items():
        total -= m * c2.c.get(p, 0)
    return total


def pic_add(c1, c2, scale=1):
    c = dict(c1.c)
    for p, m in c2.c.items():
        c[p] = c.get(p, 0) + scale * m
    return PicClass(
        a=c1.a + scale * c2.a,
        c={p: m for p, m in c.items() if m},
        q=c1.q,
        d=c1.d,
    )


# --- multiplicity conditions and section spaces ---


def chart_translate(form, point, q):
    """Rewrite a homogeneous form in affine chart coordinates centred at point.

    The chart sets the pivot coordinate of the point to 1 and translates
    the remaining coordinates so that the point sits at the origin; the
    result is a polynomial in the d chart variables.
    """
    nv = form.nvars
    pivot = next(i for i, x in enumerate(point) if x)
    assert point[pivot] == 1
    images = []
    j = 0
    others = [i for i in range(nv) if i != pivot]
    for i in range(nv):
        if i == pivot:
            images.append(Poly.constant(1, nv - 1, q))
        else:
            var = Poly.variable(others.index(i), nv - 1, q)
            images.append(var + Poly.constant(point[i], nv - 1, q))
            j += 1
    return form.substitute(images)


def multiplicity_at(form, point, q):
    """Vanishing order of a homogeneous form at a rational point."""
    if form.is_zero():
        raise ValueError("zero form")
    local = chart_translate(form, point, q)
    if local.is_zero():
        raise AssertionError("form vanishes identically in a chart")
    return local.min_total_degree()


def hyperplane_order(form, functional, q):
    """Order of divisibility of a homogeneous form by a linear form."""
    if form.is_zero():
        raise ValueError("zero form")
    nv = form.nvars
    field = gf(q)
    pivot = next(i for i, x in enumerate(functional) if x)
    inv = field.inv(functional[pivot])
    # invertible substitution sending the hyperplane to {y_pivot = 0}
    images = []
    for i in range(nv):
        if i != pivot:
            images.append(Poly.variable(i, nv, q))
        else:
            coeffs = [
                field.neg(field.mul(inv, functional[j])) if j != pivot else inv
                for j in range(nv)
            ]
            images.append(Poly.linear(coeffs, q))
    moved = form.substitute(images)
    return moved.min_exponent_of(pivot)


def valuation_of_poly(form, component, q, d):
    """Vanishing order of a form along a boundary component, d <= 2.

    ``form`` must be homogeneous in d+1 variables; affine inputs in the
    d chart variables are homogenized against the 0-th coordinate first.
    """
    if form.is_zero():
        raise ValueError("zero polynomial has no valuation")
    if form.nvars == d:
        form = homogenize(form, extra_at=0)
    if form.nvars != d + 1 or not form.is_homogeneous():
        raise ValueError("expected a homogeneous form in d+1 variables")
    if component.projective_dim == 0 and d >= 2:
        return multiplicity_at(form, point_tuple(component), q)
    if component.projective_dim == d - 1:
        field = gf(q)
        eqs = nullspace(component.rows, field)
        assert len(eqs) == 1
        return hyperplane_order(form, eqs[0], q)
    raise ValueError("unsupported component type for the oracle")


def valuation_of_fraction(num, den, component, q, d):
    return valuation_of_poly(num, component, q, d) - valuation_of_poly(
        den, component, q, d
    )


def h0_basis(c):
    """Basis of {degree-a forms with mult_P >= -c_P}, as Poly objects."""
    q, a = c.q, c.a
    if a < 0:
        return []
    field = gf(q)
    monos = monomials_of_degree(3, a)
    conditions = []
    for p, m in sorted(c.c.items()):
        need = -m
        if need <= 0:
            continue
        locals_ = [chart_translate(Poly({e: 1}, 3, q), p, q) for e in monos]
        low = [e for deg in range(need) for e in monomials_of_degree(2, deg)]
        for e in low:
            conditions.append(tuple(lp.terms.get(e, 0) for lp in locals_))
    if not conditions:
        basis_vectors = [
            tuple(1 if i == j else 0 for j in range(len(monos)))
            for i in range(len(monos))
        ]
    else:
        basis_vectors = nullspace(conditions, field)
    out = []
    for vec in basis_vectors:
        out.append(Poly({e: v for e, v in zip(monos, vec) if v}, 3, q))
    return out


def h_all(c):
    """(h0, h1, h2) of the class, exactly."""
    if c.d == 1:
        return (max(0, c.a + 1), max(0, -c.a - 1), 0)
    h0 = len(h0_basis(c))
    k = canonical_class(c.q)
    h2 = len(h0_basis(pic_add(k, c, scale=-1)))
    two_chi = 2 + pic_pair(c, pic_add(c, k, scale=-1))
    assert two_chi % 2 == 0
    chi = two_chi // 2
    h1 = h0 + h2 - chi
    assert h1 >= 0, "negative h1 from Riemann-Roch: %r" % (c,)
    return (h0, h1, h2)


def h_on_curve(c, component):
    """(h0, h1) of the class restricted to a boundary curve."""
    deg = pic_pair(c, component_class(component, c.q))
    return (max(0, deg + 1), max(0, -deg - 1))


def h_all_divisor(div, d, q):
    return h_all(pic_class(div, d, q))


def gamma_fraction(j, q, d):
    """gamma_j as a homogeneous fraction (numerator, denominator).

    The product of all monic linear forms Xi_j + a_{j-1} Xi_{j-1} + ...
    + a_0 Xi_0 over tuples in F_q^j, divided by Xi_0^(q^j).
    """
    num = Poly.constant(1, d + 1, q)
    for coeffs in itertools.product(range(q), repeat=j):
        lin = [0] * (d + 1)
        lin[j] = 1
        for i, a in enumerate(coeffs):
            lin[i] = a
        num = num * Poly.linear(lin, q)
    den = Poly.variable(0, d + 1, q) ** (q**j)
    return num, den
