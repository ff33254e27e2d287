"""Component naming, orbit partition, joins, and neighbour analysis."""

import itertools
import random

import pytest

from qblowup.components import (
    act,
    all_components,
    comparable,
    component_of,
    coordinate_subspace,
    enumerate_u_tau,
    enumerate_u_tau_sigma,
    index_of,
    is_stable,
    join,
    proper_nonempty_subsets,
    split_component_neighbors,
    u_tau_sigma_order,
    upsilon,
)
from qblowup.fields import identity_matrix
from qblowup.subspaces import all_proper_subspaces, gaussian_binomial


def test_u_tau_sigma_counting_lemma_small():
    # |U_tau^sigma| equals the exponent formula, all tau <= sigma, d <= 4
    for d in (1, 2, 3, 4):
        for q in (2, 3):
            for sigma in proper_nonempty_subsets(d):
                for r in range(1, len(sigma) + 1):
                    for tau in itertools.combinations(sigma, r):
                        got = len(enumerate_u_tau_sigma(tau, sigma, q, d))
                        assert got == u_tau_sigma_order(tau, sigma, q, d)


def test_u_tau_sigma_examples():
    assert len(enumerate_u_tau_sigma((0,), upsilon(2), 2, 2)) == 1
    assert len(enumerate_u_tau_sigma((1,), upsilon(2), 2, 2)) == 2
    assert len(enumerate_u_tau_sigma((2,), upsilon(2), 2, 2)) == 4


def test_u_tau_sigma_requires_containment():
    with pytest.raises(ValueError):
        enumerate_u_tau_sigma((1,), (0, 2), 2, 2)


def test_component_of_basic():
    # tau = {1, 2} with the identity names the point [1:0:0]
    s = coordinate_subspace((1, 2), 2, 2)
    assert s.rows == ((1, 0, 0),)
    line = coordinate_subspace((1,), 2, 2)
    assert line.rows == ((1, 0, 0), (0, 0, 1))  # zero set of Xi_1


def test_component_bijection_d2_q2():
    comps = all_components(2, 2)
    assert len(comps) == 14  # 7 points + 7 lines
    assert set(comps) == set(all_proper_subspaces(2, 2))


@pytest.mark.parametrize("d,q", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_orbit_partition(d, q):
    comps = all_components(d, q)
    assert len(comps) == sum(
        gaussian_binomial(d + 1, r, q) for r in range(1, d + 1)
    )
    # round trip through index_of
    for s, (tau, u) in comps.items():
        tau2, u2 = index_of(s)
        assert tau2 == tau
        assert component_of(tau2, u2, q, d) == s


def test_equivariance_under_sampled_unipotents():
    rng = random.Random(7)
    d, q = 2, 3
    for _ in range(25):
        tau = random.Random(rng.random()).choice(proper_nonempty_subsets(d))
        us = enumerate_u_tau(tau, q, d)
        u = us[rng.randrange(len(us))]
        # u' ranges over full upper unitriangular samples
        uprime = [[1 if i == j else 0 for j in range(d + 1)] for i in range(d + 1)]
        for i in range(d + 1):
            for j in range(i + 1, d + 1):
                uprime[i][j] = rng.randrange(q)
        uprime = tuple(tuple(r) for r in uprime)
        from qblowup.fields import mat_mul
        from qblowup.fields import gf

        lhs = component_of(tau, mat_mul(uprime, u, gf(q)), q, d)
        rhs = act(uprime, component_of(tau, u, q, d))
        assert lhs == rhs


def test_join_examples():
    pts = [s for s in all_proper_subspaces(2, 2) if s.projective_dim == 0]
    lines = [s for s in all_proper_subspaces(2, 2) if s.projective_dim == 1]
    p, r = pts[0], pts[1]
    j = join(p, r)
    assert j is not None and j.projective_dim == 1
    assert join(lines[0], lines[1]) is None
    # point off a line in P^3 spans a plane
    pts3 = [s for s in all_proper_subspaces(3, 2) if s.projective_dim == 0]
    lines3 = [s for s in all_proper_subspaces(3, 2) if s.projective_dim == 1]
    line = lines3[0]
    p3 = next(s for s in pts3 if not line.contains(s))
    plane = join(p3, line)
    assert plane is not None and plane.projective_dim == 2


def test_join_commutative_associative_where_defined():
    comps = list(all_components(3, 2))
    rng = random.Random(11)
    for _ in range(60):
        a, b, c = (comps[rng.randrange(len(comps))] for _ in range(3))
        ab = join(a, b)
        assert ab == join(b, a)
        if ab is not None:
            abc1 = join(ab, c)
            bc = join(b, c)
            if bc is not None:
                abc2 = join(a, bc)
                assert abc1 == abc2


def test_stability_examples():
    comps = list(all_components(2, 2))
    assert is_stable(set())
    pt = next(s for s in comps if s.projective_dim == 0)
    assert is_stable({pt})
    lines = [s for s in comps if s.projective_dim == 1]
    assert not is_stable({lines[0], lines[1]})
    line = next(s for s in lines if s.contains(pt))
    assert is_stable({pt, line})


@pytest.mark.parametrize("d,q,sigma", [(2, 2, (1, 2)), (2, 2, (2,)), (3, 2, (1, 2))])
def test_split_component_neighbors(d, q, sigma):
    upper, lower, mapping = split_component_neighbors(sigma, q, d)
    images = list(mapping.values())
    assert len(set(images)) == len(images)  # joint injectivity
    v_sigma = coordinate_subspace(sigma, q, d)
    expected = {
        s
        for s in all_components(d, q)
        if s != v_sigma and comparable(s, v_sigma)
    }
    assert set(images) == expected
    # the two sides are disjoint
    upper_imgs = {mapping[k] for k in upper}
    lower_imgs = {mapping[k] for k in lower}
    assert not (upper_imgs & lower_imgs)


def test_relative_stability_spot_check_d3():
    # stability of S implies stability of the part below V_sigma, d = 3
    comps = list(all_components(3, 2))
    pts = [s for s in comps if s.projective_dim == 0]
    lines = [s for s in comps if s.projective_dim == 1]
    p = pts[0]
    line = next(s for s in lines if s.contains(p))
    plane = next(s for s in comps if s.projective_dim == 2 and s.contains(line))
    s_set = {p, line, plane}
    assert is_stable(s_set)
    sigma = (1,)
    v_sigma = coordinate_subspace(sigma, 2, 3)
    below = {x for x in s_set if v_sigma.contains(x) and x != v_sigma}
    assert is_stable(below)
