"""Divisor construction, restriction, ladders, coordinate-ratio relations."""

import itertools

import pytest

from qblowup.components import (
    all_components,
    coordinate_subspace,
    enumerate_u_tau,
    proper_nonempty_subsets,
)
from qblowup.divisors import (
    Divisor,
    DivisorSpec,
    atau_spec,
    b_sigma,
    build_divisor,
    divisor_set,
    gamma_divisor,
    ladder_divisors,
    linear_equivalence_witness,
    orbit_sum_divisor,
    principal_ratio_divisor,
    pullback_hyperplane,
    restrict_structured,
    restrict_support,
    zero_spec,
)


def test_build_divisor_zero():
    assert not build_divisor(zero_spec(2), 2)


def test_build_divisor_atau_example():
    # abar = abar({1}) on d=2: coefficients per orbit
    spec = atau_spec({1}, 2)
    div = build_divisor(spec, 2)
    by_tau = {}
    for s, c in div.support.items():
        from qblowup.components import index_of

        tau, _ = index_of(s)
        by_tau.setdefault(tau, set()).add(c)
    assert by_tau == {
        (1,): {1},
        (1, 2): {1},
        (0,): {-1},
        (0, 2): {-1},
    }


def test_build_divisor_d011_is_min_orbit_sum():
    # D(0, 1, 0) is the sum over orbits through the minimal element 0
    d, q = 2, 2
    spec = DivisorSpec((0, 0), (1, 1), (0, 0))
    div = build_divisor(spec, q)
    expect = Divisor(ncols=d + 1, q=q)
    for sigma in proper_nonempty_subsets(d):
        if 0 in sigma:
            expect += orbit_sum_divisor(sigma, q, d, 1)
    assert div == expect
    assert div == pullback_hyperplane(0, d, q)


def test_orbit_multiplicity_constant():
    spec = DivisorSpec((1, -2), (0, 1), (2, 0))
    div = build_divisor(spec, 2)
    from qblowup.components import index_of

    per_orbit = {}
    for s, c in div.support.items():
        tau, _ = index_of(s)
        per_orbit.setdefault(tau, set()).add(c)
    for tau, cs in per_orbit.items():
        assert len(cs) == 1
    # spot check a coefficient against the defining formula
    got = per_orbit[(1, 2)].pop()
    assert got == spec.m[1] + b_sigma(spec.abar, (1, 2))


def test_principal_ratio_divisor_d1():
    div = principal_ratio_divisor(1, 1, 2)
    pt0 = coordinate_subspace((0,), 2, 1)
    pt1 = coordinate_subspace((1,), 2, 1)
    assert div.coefficient(pt0) == 1
    assert div.coefficient(pt1) == -1
    assert len(div.support) == 2


def test_pullback_formula_against_direct_total_transform():
    # pullback of {Xi_b = 0} = strict transform + exceptional pieces over
    # every rational subspace inside the hyperplane
    d, q = 2, 2
    for b in range(d + 1):
        div = pullback_hyperplane(b, d, q)
        hyper = coordinate_subspace((b,), q, d)
        expect = Divisor(ncols=d + 1, q=q)
        for s in all_components(d, q):
            if hyper.contains(s):
                expect.add_component(s, 1)
        assert div == expect


def test_ladder_divisors_endpoints():
    d, q, j = 2, 2, 1
    spec = atau_spec({1}, d)
    d0 = build_divisor(spec, q)
    d_d, _ = ladder_divisors(spec, j, d, q)
    # D_d is linearly equivalent to the spec with abar incremented at j
    bumped = DivisorSpec((spec.abar[0] + 1, spec.abar[1]), spec.n, spec.m)
    target = build_divisor(bumped, q)
    witness = linear_equivalence_witness(d_d, target, d, q)
    assert witness is not None
    # trivial stage: k with no matching translates keeps D_0
    dk, _ = ladder_divisors(DivisorSpec((0, 0), (0, 0), (0, 0)), 2, 1, q)
    assert dk == build_divisor(zero_spec(2), q) - _partial_orbit(q)


def _partial_orbit(q):
    # the size-1 stage for j=2 removes U_tau - U_tau^{2} translates
    from qblowup.components import component_of, enumerate_u_tau, enumerate_u_tau_b

    d = 2
    out = Divisor(ncols=3, q=q)
    tau = (2,)
    partial = set(enumerate_u_tau_b(tau, 2, q, d))
    for u in enumerate_u_tau(tau, q, d):
        if u not in partial:
            out.add_component(component_of(tau, u, q, d), 1)
    return out


def test_hatted_ladder_is_orbit_sums():
    d, q, j, k = 2, 2, 1, 2
    spec = atau_spec({1, 2}, d)
    _, dhat = ladder_divisors(spec, j, k, q)
    diff = build_divisor(spec, q) - dhat
    from qblowup.components import index_of

    for s, c in diff.support.items():
        tau, _ = index_of(s)
        assert j in tau and len(tau) <= k - 1
        assert c == 1


def test_gamma_divisor_d1():
    div = gamma_divisor(1, 1, 2)
    pt0 = coordinate_subspace((0,), 2, 1)
    assert div.coefficient(pt0) == -2
    for u in enumerate_u_tau((1,), 2, 1):
        from qblowup.components import component_of

        assert div.coefficient(component_of((1,), u, 2, 1)) == 1


def test_gamma_divisor_degree_zero_under_pic(
):
    # checked properly in oracle tests; here: coefficients match the stated
    # case analysis for d = 2, q = 2, j = 2
    div = gamma_divisor(2, 2, 2)
    from qblowup.components import index_of

    per_orbit = {}
    for s, c in div.support.items():
        tau, _ = index_of(s)
        per_orbit.setdefault(tau, set()).add(c)
    q = 2
    assert per_orbit[(1, 2)] == {q}  # |{1,2} cap [0,1]| = 1
    assert per_orbit[(2,)] == {1}  # |{2} cap [0,1]| = 0
    assert per_orbit[(0, 2)] == {q - q**2}
    assert per_orbit[(0,)] == {-(q**2)}
    assert per_orbit[(0, 1)] == {-(q**2)}
    assert (1,) not in per_orbit


@pytest.mark.parametrize("q", [2, 3])
def test_restriction_closed_form_matches_support_restriction(q):
    # D(abar, n, m) restricted to V_tau: (tepro)-style specs vs geometry
    d = 2
    specs = [
        zero_spec(d),
        atau_spec({1}, d),
        atau_spec({1, 2}, d),
        DivisorSpec((0, 0), (-1, -1), (0, 0)),
        DivisorSpec((-1, 0), (0, 0), (0, 1)),
        DivisorSpec((0, -2), (-2, -1), (0, 1)),
    ]
    for spec in specs:
        div = build_divisor(spec, q)
        for tau in proper_nonempty_subsets(d):
            a_spec, b_spec = restrict_structured(spec, tau, d)
            a_geo, b_geo = restrict_support(div, tau, d)
            assert build_divisor_rel(a_spec, q) == a_geo, (spec, tau)
            assert build_divisor_rel(b_spec, q) == b_geo, (spec, tau)


def build_divisor_rel(spec, q):
    if spec.d == 0:
        return Divisor(ncols=1, q=q)
    return build_divisor(spec, q)


@pytest.mark.parametrize("q", [2])
def test_laddered_restriction_matches_support(q):
    d = 3
    spec = DivisorSpec((-1, 0, 0), (0, 0, 0), (0, 0, 0))
    j = 1
    for tau in proper_nonempty_subsets(d):
        if j not in tau:
            continue
        k = len(tau)
        _, dhat = ladder_divisors(spec, j, k, q)
        a_spec, b_spec = restrict_structured(spec, tau, d, j=j)
        a_geo, b_geo = restrict_support(dhat, tau, d)
        assert build_divisor_rel(a_spec, q) == a_geo, tau
        assert build_divisor_rel(b_spec, q) == b_geo, tau


def test_restriction_of_minus_v_sigma_is_twist():
    # restricting -V_sigma alone reproduces the self-intersection divisor
    d, q = 2, 2
    sigma = (1, 2)
    vs = coordinate_subspace(sigma, q, d)
    div = Divisor(ncols=d + 1, q=q)
    div.add_component(vs, -1)
    a_side, b_side = restrict_support(div, sigma, d)
    from qblowup.divisors import _first_min_divisor, _last_rest_divisor

    assert a_side == _first_min_divisor(len(sigma) - 1, q)
    assert b_side == _last_rest_divisor(d - len(sigma), q)


def test_zero_divisor_restricts_to_zero():
    d, q = 2, 2
    div = build_divisor(zero_spec(d), q)
    a_side, b_side = restrict_support(div, (1,), d)
    assert not a_side and not b_side


def test_divisor_json_round_trip_sorted():
    spec = atau_spec({1}, 2)
    div = build_divisor(spec, 2)
    data = div.to_json()
    keys = [tuple(map(tuple, e["subspace"])) for e in data]
    assert keys == sorted(keys, key=lambda rows: (len(rows), rows))


def test_divisor_set_requires_component():
    with pytest.raises(ValueError):
        divisor_set([])
