"""Divisors supported on the boundary components of the blow-up.

A divisor is a finitely supported integer map keyed by the canonical
subspace of each component.  The parametric family D(abar, n, m) puts
the coefficient m_{|sigma|} + b_sigma(abar) on every component of the
orbit of V_sigma when 0 is not in sigma, and n_{|sigma|} + b_sigma(abar)
when it is, where b_sigma(abar) = -sum_{j in sigma} abar_j and
abar_0 = -sum_{j>=1} abar_j is always derived.

Restriction to a component V_tau uses the product structure
V_tau = Y^tau x Y^{tau^c}: a neighbouring component cuts V_tau in a
factor component, and the coefficient of V_tau itself contributes the
self-intersection twist -c.(D(0,1,0)^tau x Y + Y x D(0,0,1)^{tau^c}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .components import (
    act,
    complement,
    component_of,
    coordinate_subspace,
    enumerate_u_tau,
    enumerate_u_tau_b,
    proper_nonempty_subsets,
)
from .fields import gf, nullspace
from .subspaces import Subspace, subspace_from_rows


@dataclass(frozen=True)
class DivisorSpec:
    """Parameters (abar, n, m) of the structured divisor family."""

    abar: tuple
    n: tuple
    m: tuple

    def __post_init__(self):
        if not (len(self.abar) == len(self.n) == len(self.m)):
            raise ValueError("abar, n, m must all have length d")

    @property
    def d(self):
        return len(self.abar)

    @property
    def abar0(self):
        return -sum(self.abar)

    def to_json(self):
        return {"abar": list(self.abar), "n": list(self.n), "m": list(self.m)}


def zero_spec(d):
    z = (0,) * d
    return DivisorSpec(z, z, z)


def b_sigma(abar, sigma):
    """-sum over sigma of the extended vector (abar_0, abar_1, ...)."""
    abar0 = -sum(abar)
    return -sum(abar0 if j == 0 else abar[j - 1] for j in sigma)


class Divisor:
    """Finitely supported integer combination of components."""

    def __init__(self, support=None, ncols=None, q=None):
        self.support = {}
        self.ncols = ncols
        self.q = q
        if support:
            for s, c in support.items():
                self.add_component(s, c)

    def add_component(self, s, c):
        if self.ncols is None:
            self.ncols, self.q = s.ncols, s.q
        assert s.ncols == self.ncols and s.q == self.q
        new = self.support.get(s, 0) + c
        if new:
            self.support[s] = new
        else:
            self.support.pop(s, None)

    def coefficient(self, s):
        return self.support.get(s, 0)

    def __add__(self, other):
        out = Divisor(dict(self.support), self.ncols, self.q)
        for s, c in other.support.items():
            out.add_component(s, c)
        return out

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, k):
        return Divisor({s: k * c for s, c in self.support.items()}, self.ncols, self.q)

    def __eq__(self, other):
        return (
            isinstance(other, Divisor)
            and self.support == other.support
        )

    def __bool__(self):
        return bool(self.support)

    def items_sorted(self):
        return sorted(self.support.items(), key=lambda sc: sc[0].key())

    def to_json(self):
        return [
            {"subspace": s.to_json(), "multiplicity": c}
            for s, c in self.items_sorted()
        ]

    def __repr__(self):
        if not self.support:
            return "Divisor(0)"
        return "Divisor(%s)" % (
            " + ".join("%d*%r" % (c, s) for s, c in self.items_sorted())
        )


def orbit_sum_divisor(sigma, q, d, coefficient=1):
    """coefficient times the U_sigma-orbit sum of V_sigma."""
    div = Divisor(ncols=d + 1, q=q)
    if coefficient == 0:
        return div
    for u in enumerate_u_tau(sigma, q, d):
        div.add_component(component_of(sigma, u, q, d), coefficient)
    return div


def build_divisor(spec, q):
    """The divisor D(abar, n, m) on the blow-up of P^d."""
    d = spec.d
    div = Divisor(ncols=d + 1, q=q)
    for sigma in proper_nonempty_subsets(d):
        base = spec.n[len(sigma) - 1] if 0 in sigma else spec.m[len(sigma) - 1]
        c = base + b_sigma(spec.abar, sigma)
        if c:
            div += orbit_sum_divisor(sigma, q, d, c)
    return div


def pullback_hyperplane(b, d, q):
    """Total transform of the coordinate hyperplane {Xi_b = 0}."""
    if not (0 <= b <= d):
        raise ValueError("coordinate index out of range")
    div = Divisor(ncols=d + 1, q=q)
    for tau in proper_nonempty_subsets(d):
        if b not in tau:
            continue
        for u in enumerate_u_tau_b(tau, b, q, d):
            div.add_component(component_of(tau, u, q, d), 1)
    return div


def principal_ratio_divisor(j, d, q):
    """Divisor of the rational coordinate ratio Xi_0 / Xi_j."""
    if not (1 <= j <= d):
        raise ValueError("need 1 <= j <= d")
    return pullback_hyperplane(0, d, q) - pullback_hyperplane(j, d, q)


def ladder_divisors(spec, j, k, q):
    """The k-th ladder stage and its hatted companion for direction j.

    D_k removes, from the orbits through each tau of size at most k
    containing j, exactly the translates whose column j is not yet
    trivial; the hatted divisor removes whole orbits one size earlier.
    """
    d = spec.d
    if not (1 <= k <= d):
        raise ValueError("need 1 <= k <= d")
    if not (1 <= j <= d):
        raise ValueError("need 1 <= j <= d")
    base = build_divisor(spec, q)
    d_k = base
    for tau in proper_nonempty_subsets(d):
        if j not in tau or len(tau) > k:
            continue
        partial = set(enumerate_u_tau_b(tau, j, q, d))
        for u in enumerate_u_tau(tau, q, d):
            if u not in partial:
                d_k.add_component(component_of(tau, u, q, d), -1)
    d_hat = build_divisor(spec, q)
    for sigma in proper_nonempty_subsets(d):
        if j not in sigma or len(sigma) > k - 1:
            continue
        d_hat -= orbit_sum_divisor(sigma, q, d, 1)
    return d_k, d_hat


GAMMA_ZERO_ORDER = "zeros positive"


def gamma_divisor(j, d, q):
    """Zero-pole divisor of the product polynomial gamma_j (zeros positive)."""
    if not (1 <= j <= d):
        raise ValueError("need 1 <= j <= d")
    div = Divisor(ncols=d + 1, q=q)
    for sigma in proper_nonempty_subsets(d):
        low = len([i for i in sigma if i <= j - 1])
        if j in sigma and 0 not in sigma:
            c = q**low
        elif j in sigma and 0 in sigma:
            c = q**low - q**j
        elif j not in sigma and 0 in sigma:
            c = -(q**j)
        else:
            c = 0
        if c:
            div += orbit_sum_divisor(sigma, q, d, c)
    return div


def divisor_set(components):
    """D_S: the reduced divisor of a set of components."""
    div = None
    for s in components:
        if div is None:
            div = Divisor(ncols=s.ncols, q=s.q)
        div.add_component(s, 1)
    if div is None:
        raise ValueError("need at least one component to infer the ambient space")
    return div


# --- restriction to a component ---


def upper_factor_subspace(s, tau, q):
    """Image in Y^tau of a component whose subspace strictly contains V_tau.

    The equations of s lie in the span of the coordinates indexed by tau;
    rewriting them in those coordinates cuts the factor subspace.
    """
    field = gf(q)
    eqs = nullspace(s.rows, field)
    for row in eqs:
        if any(row[i] != 0 for i in range(s.ncols) if i not in tau):
            raise ValueError("component does not contain V_tau")
    contracted = [tuple(row[i] for i in tau) for row in eqs]
    points = nullspace(contracted, field)
    return Subspace(rows=points, ncols=len(tau), q=q)


def lower_factor_subspace(s, tau, q):
    """Image in Y^{tau^c} of a component strictly inside V_tau."""
    keep = [i for i in range(s.ncols) if i not in tau]
    for row in s.rows:
        if any(row[i] != 0 for i in tau):
            raise ValueError("component does not lie inside V_tau")
    rows = tuple(tuple(row[i] for i in keep) for row in s.rows)
    return subspace_from_rows(rows, len(keep), q)


def restrict_support(div, tau, d):
    """Restrict a boundary divisor to V_tau = Y^tau x Y^{tau^c}.

    Returns the pair of divisors (on Y^tau and on Y^{tau^c}) whose box
    product realizes the restricted line bundle.  Components disjoint
    from V_tau are dropped; the coefficient of V_tau itself is folded in
    through the self-intersection twist.
    """
    q = div.q
    tau = tuple(sorted(tau))
    tau_c = complement(tau, d)
    v_tau = coordinate_subspace(tau, q, d)
    k = len(tau)
    a_side = Divisor(ncols=k, q=q)
    b_side = Divisor(ncols=d + 1 - k, q=q)
    for s, c in div.support.items():
        if s == v_tau:
            a_side -= _first_min_divisor(k - 1, q).scaled(c)
            b_side -= _last_rest_divisor(d - k, q).scaled(c)
        elif s.contains(v_tau):
            a_side.add_component(upper_factor_subspace(s, tau, q), c)
        elif v_tau.contains(s):
            b_side.add_component(lower_factor_subspace(s, tau, q), c)
    return a_side, b_side


def _first_min_divisor(d_rel, q):
    """D(0, 1, 0) in relative dimension d_rel: orbits through the minimum."""
    if d_rel == 0:
        return Divisor(ncols=1, q=q)
    ones = (1,) * d_rel
    zero = (0,) * d_rel
    return build_divisor(DivisorSpec(zero, ones, zero), q)


def _last_rest_divisor(d_rel, q):
    """D(0, 0, 1) in relative dimension d_rel: orbits avoiding the minimum."""
    if d_rel == 0:
        return Divisor(ncols=1, q=q)
    ones = (1,) * d_rel
    zero = (0,) * d_rel
    return build_divisor(DivisorSpec(zero, zero, ones), q)


def _restrict_vector(values, tau, d):
    """abar restricted to tau: entries indexed by tau, minus its head."""
    abar0 = -sum(values)
    ext = (abar0,) + tuple(values)
    members = tuple(sorted(tau))
    return tuple(ext[i] for i in members[1:])


class UnstructuredDivisorError(ValueError):
    """The divisor is not in the structured family the rules cover."""


def restrict_structured(spec, tau, d, j=None):
    """Closed-form restriction of the (possibly laddered) structured family.

    Restricts D(abar, n, m) to V_tau when j is None, and the hatted
    ladder divisor for direction j in tau when j is given.  Returns the
    factor specs (spec_on_tau, spec_on_complement).
    """
    tau = tuple(sorted(tau))
    if j is not None and j not in tau:
        raise ValueError("ladder direction must lie in tau")
    k = len(tau)
    n, m = spec.n, spec.m
    shift = 1 if j is not None else 0
    if 0 not in tau:
        n_prime = tuple(m[i - 1] - m[k - 1] - shift for i in range(1, k))
        m_second = tuple(m[k + i - 1] - m[k - 1] for i in range(1, d - k + 1))
    else:
        n_prime = tuple(n[i - 1] - n[k - 1] - shift for i in range(1, k))
        m_second = tuple(n[k + i - 1] - n[k - 1] for i in range(1, d - k + 1))
    m_prime = tuple(m[i - 1] for i in range(1, k))
    n_second = tuple(n[k + i - 1] for i in range(1, d - k + 1))
    abar_tau = list(_restrict_vector(spec.abar, tau, d))
    if j is not None:
        members = tuple(sorted(tau))
        pos = members.index(j)
        if pos > 0:
            abar_tau[pos - 1] += 1
    abar_tau_c = _restrict_vector(spec.abar, complement(tau, d), d)
    return (
        DivisorSpec(tuple(abar_tau), n_prime, m_prime),
        DivisorSpec(abar_tau_c, n_second, m_second),
    )


# --- linear equivalence inside the coordinate-ratio lattice ---


def linear_equivalence_witness(d1, d2, d, q):
    """Integer coefficients c with d1 - d2 = sum c_j div(Xi_0/Xi_j), or None."""
    ratios = [principal_ratio_divisor(j, d, q) for j in range(1, d + 1)]
    diff = d1 - d2
    keys = set(diff.support)
    for r in ratios:
        keys.update(r.support)
    keys = sorted(keys, key=lambda s: s.key())
    rows = [[Fraction(r.coefficient(s)) for r in ratios] + [Fraction(diff.coefficient(s))] for s in keys]
    coeffs = _solve_exact(rows, d)
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        return None
    combo = Divisor(ncols=d + 1, q=q)
    for c, r in zip(coeffs, ratios):
        combo += r.scaled(int(c))
    if combo == diff:
        return tuple(int(c) for c in coeffs)
    return None


def _solve_exact(aug_rows, nvars):
    rows = [list(r) for r in aug_rows]
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for row in rows[r:]:
        if row[nvars] != 0:
            return None
    sol = [Fraction(0)] * nvars
    for rr, c in enumerate(pivots):
        sol[c] = rows[rr][nvars]
    return sol


def atau_spec(tau, d):
    """DivisorSpec (abar(tau), 0, 0) with abar(tau)_i = -1 exactly on tau."""
    abar = tuple(-1 if i in tau else 0 for i in range(1, d + 1))
    zero = (0,) * d
    return DivisorSpec(abar, zero, zero)


def translate_divisor(div, g, d):
    """Push a divisor forward along g (componentwise action)."""
    out = Divisor(ncols=div.ncols, q=div.q)
    for s, c in div.support.items():
        out.add_component(act(g, s), c)
    return out
