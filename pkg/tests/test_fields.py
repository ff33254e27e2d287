"""Field axioms, exhaustively for q <= 9."""

import pytest

from qblowup.fields import GF, gf, mat_inv, nullspace, prime_power, rank, rref

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9]


def test_prime_power_recognition():
    assert prime_power(2) == (2, 1)
    assert prime_power(9) == (3, 2)
    assert prime_power(8) == (2, 3)
    assert prime_power(6) is None
    assert prime_power(12) is None
    assert prime_power(1) is None


@pytest.mark.parametrize("q", [6, 10, 12, 15, 1, 0])
def test_non_prime_power_rejected(q):
    with pytest.raises(ValueError):
        GF(q)


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_field_axioms_exhaustive(q):
    k = gf(q)
    els = list(k.elements)
    for a in els:
        assert k.add(a, 0) == a
        assert k.mul(a, 1) == a
        assert k.add(a, k.neg(a)) == 0
        if a != 0:
            assert k.mul(a, k.inv(a)) == 1
    for a in els:
        for b in els:
            assert k.add(a, b) == k.add(b, a)
            assert k.mul(a, b) == k.mul(b, a)
            for c in els:
                assert k.add(k.add(a, b), c) == k.add(a, k.add(b, c))
                assert k.mul(k.mul(a, b), c) == k.mul(a, k.mul(b, c))
                assert k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c))


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_multiplicative_group_order(q):
    k = gf(q)
    for a in range(1, q):
        assert k.pow(a, q - 1) == 1


def test_rref_idempotent_on_seeded_random_bases():
    import random

    rng = random.Random(20240811)
    for q in (2, 3, 4):
        field = gf(q)
        for _ in range(50):
            rows = [
                tuple(rng.randrange(q) for _ in range(5))
                for _ in range(rng.randrange(1, 4))
            ]
            once, piv1 = rref(rows, field)
            twice, piv2 = rref(once, field)
            assert once == twice
            assert piv1 == piv2


def test_nullspace_orthogonality():
    field = gf(3)
    rows = [(1, 2, 0, 1), (0, 1, 1, 1)]
    ns = nullspace(rows, field)
    assert len(ns) == 2
    for v in ns:
        for r in rows:
            s = 0
            for x, y in zip(r, v):
                s = field.add(s, field.mul(x, y))
            assert s == 0


def test_mat_inv_round_trip():
    field = gf(5)
    a = ((1, 2, 0), (0, 1, 4), (0, 0, 1))
    inv = mat_inv(a, field)
    from qblowup.fields import mat_mul

    assert mat_mul(a, inv, field) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_rank_small():
    field = gf(2)
    assert rank([(1, 0), (0, 1)], field) == 2
    assert rank([(1, 1), (1, 1)], field) == 1
