"""Boundary components of the iterated blow-up of P^d(F_q).

The component set is indexed by pairs (tau, u): tau a nonempty proper
subset of {0, ..., d} and u a unipotent upper triangular matrix whose
free entries sit in rows outside tau and columns inside tau.  The pair
names the translate u.V_tau of the coordinate subspace V_tau (the common
zero set of the coordinates indexed by tau); the map to geometric
subspaces is a bijection, and we key everything downstream by the
canonical echelon form of the subspace so that distinct names of the
same component always collide.

Matrix/point conventions: points transform as x -> (g^T)^{-1} x, so a
subspace spanned (as a cone) by rows R maps to the row space of
R . g^{-1}.  With this convention u.V_tau is the row space of the rows
of u^{-1} indexed by the complement of tau.
"""

from __future__ import annotations

import itertools

from .fields import gf, identity_matrix, mat_inv, mat_mul, rref
from .subspaces import Subspace, subspace_from_rows, subspace_sum


def upsilon(d):
    return tuple(range(d + 1))


def proper_nonempty_subsets(d):
    """The index set of component orbits: nonempty proper subsets of Upsilon."""
    full = upsilon(d)
    out = []
    for r in range(1, d + 1):
        out.extend(itertools.combinations(full, r))
    return out


def complement(tau, d):
    return tuple(i for i in range(d + 1) if i not in tau)


def _check_tau(tau, d):
    tau = tuple(sorted(tau))
    if not tau or len(tau) > d or any(i < 0 or i > d for i in tau):
        raise ValueError("tau must satisfy empty != tau != Upsilon, got %r" % (tau,))
    if len(set(tau)) != len(tau):
        raise ValueError("tau has repeated entries: %r" % (tau,))
    return tau


# --- unipotent groups ---


def free_entries_u_tau(tau, d):
    """Free entries (i, j) of U_tau: i < j, j in tau, i not in tau."""
    ts = set(tau)
    return [(i, j) for j in tau for i in range(j) if i not in ts]


def free_entries_u_tau_sigma(tau, sigma, d):
    """Free entries of U_tau^sigma: additionally the row i lies in sigma."""
    ss = set(sigma)
    return [(i, j) for (i, j) in free_entries_u_tau(tau, d) if i in ss]


def free_entries_u_of_tau(tau, d):
    """Free entries of U(tau): i < j and j in tau (any row above)."""
    return [(i, j) for j in tau for i in range(j)]


def _matrices_from_entries(entries, q, d):
    n = d + 1
    for values in itertools.product(range(q), repeat=len(entries)):
        mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), v in zip(entries, values):
            mat[i][j] = v
        yield tuple(tuple(r) for r in mat)


def enumerate_u_tau(tau, q, d):
    tau = _check_tau(tau, d)
    return list(_matrices_from_entries(free_entries_u_tau(tau, d), q, d))


def enumerate_u_tau_sigma(tau, sigma, q, d):
    """All of U_tau^sigma, deterministically ordered; needs tau <= sigma."""
    tau = tuple(sorted(tau))
    sigma = tuple(sorted(sigma))
    if not set(tau) <= set(sigma):
        raise ValueError("tau must be contained in sigma")
    return list(_matrices_from_entries(free_entries_u_tau_sigma(tau, sigma, d), q, d))


def enumerate_u_tau_b(tau, b, q, d):
    """U_tau^{b} = U_{tau - b}^{complement of b}, for b in tau."""
    tau = _check_tau(tau, d)
    if b not in tau:
        raise ValueError("b must lie in tau")
    entries = [(i, j) for (i, j) in free_entries_u_tau(tau, d) if j != b]
    return list(_matrices_from_entries(entries, q, d))


def enumerate_u_of_tau(tau, q, d):
    """U(tau) from the log-form basis; size q^(sum of tau)."""
    return list(_matrices_from_entries(free_entries_u_of_tau(tau, d), q, d))


def u_tau_sigma_order(tau, sigma, q, d):
    """|U_tau^sigma| by the counting formula (exponent per element of tau)."""
    tau = tuple(sorted(tau))
    sigma_c = set(range(d + 1)) - set(sigma)
    exp = 0
    for i, a in enumerate(tau):
        exp += a - len([s for s in sigma_c if s <= a]) - i
    return q**exp


def count_free_entries(tau, sigma, d):
    return len(free_entries_u_tau_sigma(tau, sigma, d))


# --- the bijection between names and geometric components ---


def act(g, s):
    """Left action of g in GL_{d+1}(F_q) on a subspace."""
    field = gf(s.q)
    ginv = mat_inv(g, field)
    rows = mat_mul(s.rows, ginv, field) if s.rows else ()
    return subspace_from_rows(rows, s.ncols, s.q)


def component_of(tau, u, q, d):
    """The subspace u.V_tau named by (tau, u)."""
    tau = _check_tau(tau, d)
    field = gf(q)
    uinv = mat_inv(u, field)
    rows = tuple(uinv[i] for i in range(d + 1) if i not in tau)
    red, _ = rref(rows, field)
    return Subspace(rows=red, ncols=d + 1, q=q)


def coordinate_subspace(tau, q, d):
    """V_tau itself: zero set of the coordinates indexed by tau."""
    return component_of(tau, identity_matrix(d + 1), q, d)


def index_of(s):
    """Inverse of component_of: the unique (tau, u) with u.V_tau = s."""
    d = s.ncols - 1
    if not (0 <= s.projective_dim <= d - 1):
        raise ValueError("component must be proper and nonempty")
    pivots = []
    for row in s.rows:
        pivots.append(next(c for c, x in enumerate(row) if x != 0))
    tau = tuple(c for c in range(d + 1) if c not in pivots)
    field = gf(s.q)
    w = [[1 if i == j else 0 for j in range(d + 1)] for i in range(d + 1)]
    for row, p in zip(s.rows, pivots):
        for c in range(d + 1):
            if c != p:
                w[p][c] = row[c]
    u = mat_inv(tuple(tuple(r) for r in w), field)
    return tau, u


def all_components(d, q):
    """Every component, as the bijection dict {subspace: (tau, u)}."""
    out = {}
    for tau in proper_nonempty_subsets(d):
        for u in enumerate_u_tau(tau, q, d):
            s = component_of(tau, u, q, d)
            assert s not in out, "component named twice: %r" % (s,)
            out[s] = (tau, u)
    return out


# --- joins and stable subsets ---


def join(v, w):
    """Minimal component containing both, or None if only P^d contains them."""
    d = v.ncols - 1
    for s in (v, w):
        if not (0 <= s.projective_dim <= d - 1):
            raise ValueError("join arguments must be components of the boundary")
    total = subspace_sum(v, w)
    if total.projective_dim > d - 1:
        return None
    return total


def is_stable(subset):
    """Closed under joins, all of which must be defined."""
    items = list(subset)
    for a, b in itertools.combinations(items, 2):
        j = join(a, b)
        if j is None or j not in subset:
            return False
    return True


def comparable(v, w):
    return v.contains(w) or w.contains(v)


# --- neighbour analysis of a fixed component ---


def component_neighbors(sigma, q, d):
    """Components meeting V_sigma properly (strictly comparable with it)."""
    vs = coordinate_subspace(sigma, q, d)
    out = []
    for s in all_components(d, q):
        if s != vs and comparable(s, vs):
            out.append(s)
    return out


def split_component_neighbors(sigma, q, d):
    """The two-sided parametrization of the neighbours of V_sigma.

    Returns (upper, lower, mapping): ``upper`` lists (tau, u) with tau a
    nonempty proper subset of sigma and u in U_tau^sigma, naming u.V_tau;
    ``lower`` lists (tau, u) with tau inside the complement, naming
    u.V_{tau union sigma}; ``mapping`` sends each name to its subspace.
    The two images are disjoint and jointly cover the neighbours.
    """
    sigma = _check_tau(sigma, d)
    sigma_c = complement(sigma, d)
    upper = []
    for r in range(1, len(sigma)):
        for tau in itertools.combinations(sigma, r):
            for u in enumerate_u_tau_sigma(tau, sigma, q, d):
                upper.append((tau, u))
    lower = []
    for r in range(1, len(sigma_c)):
        for tau in itertools.combinations(sigma_c, r):
            for u in enumerate_u_tau_sigma(tau, sigma_c, q, d):
                lower.append((tau, u))
    mapping = {}
    for tau, u in upper:
        mapping[(tau, u)] = component_of(tau, u, q, d)
    for tau, u in lower:
        mapping[(tau, u)] = component_of(tuple(sorted(set(tau) | set(sigma))), u, q, d)
    return upper, lower, mapping
