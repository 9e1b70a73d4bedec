import random

import pytest

from ineqfact.errors import DomainError
from ineqfact.group_algebra import (AlgebraElement, ga_invert, ga_multiply, jm_elementary_check,
                                    projection_check, projection_example, signature_sum, specialize_q_to_u,
                                    verify_qidentity, verify_uidentity)
from ineqfact.perm import all_perms

ID2, T = (1, 2), (2, 1)


def el2(d, bound=4):
    return AlgebraElement.from_dict(2, (1,), bound, d)


def test_s2_product():
    a = el2({ID2: {(0,): 1}, T: {(1,): 1}})
    b = el2({ID2: {(0,): 1}, T: {(1,): -1}})
    assert a * b == el2({ID2: {(0,): 1, (2,): -1}})


def test_s2_inverse_is_geometric():
    a = el2({ID2: {(0,): 1}, T: {(1,): 1}})
    assert ga_invert(a) == el2({ID2: {(0,): 1, (2,): 1, (4,): 1}, T: {(1,): -1, (3,): -1}})


def test_identity_and_errors():
    one = AlgebraElement.identity(3, (1, 2), 4)
    assert ga_invert(one) == one
    with pytest.raises(DomainError):
        ga_invert(el2({T: {(0,): 1}}))
    with pytest.raises(DomainError):
        ga_multiply(one, AlgebraElement.identity(3, (1, 2), 3))


def _random_element(rng, n=3, bound=4):
    d = {}
    for p in all_perms(n):
        poly = {}
        for _ in range(2):
            e = (rng.randint(0, 2), rng.randint(0, 1))
            if e != (0, 0):
                poly[e] = rng.randint(-3, 3)
        d[p.images] = poly
    d[tuple(range(1, n + 1))][(0, 0)] = rng.choice([1, 2, -1])
    return AlgebraElement.from_dict(n, (1, 2), bound, d)


@pytest.mark.parametrize("seed", range(5))
def test_associativity_and_two_sided_inverse(seed):
    rng = random.Random(seed)
    a, b, c = (_random_element(rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    one = AlgebraElement.identity(3, (1, 2), 4)
    ai = ga_invert(a)
    assert a * ai == one and ai * a == one
    assert a * one == a


@pytest.mark.parametrize("n,deg", [(2, 4), (2, 6), (3, 4), (3, 6), (4, 4)])
def test_qidentity(n, deg):
    rep = verify_qidentity(n, deg)
    assert rep.ok, rep.failures


@pytest.mark.parametrize("n,deg", [(2, 6), (3, 6), (4, 4)])
def test_uidentity(n, deg):
    rep = verify_uidentity(n, deg)
    assert rep.ok, rep.failures


def test_uidentity_s2_is_powers_of_transposition():
    inv = specialize_q_to_u(ga_invert(signature_sum(2, 5)))
    assert inv == AlgebraElement.from_dict(2, (1,), 5, {ID2: {(0,): 1, (2,): 1, (4,): 1},
                                                         T: {(1,): 1, (3,): 1, (5,): 1}})


@pytest.mark.parametrize("n", range(1, 6))
def test_jucys_murphy(n):
    assert jm_elementary_check(n).ok


def test_projection():
    assert projection_check(3, 4).ok
    ex = projection_example()
    assert ex["count"] == 5 and ex["signed_sum"] == -1


def test_bounds():
    with pytest.raises(DomainError):
        verify_qidentity(5, 2)
