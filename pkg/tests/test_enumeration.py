import pytest

from ineqfact.enumeration import (EnumSpec, count_all, count_all_direct, count_inequivalent,
                                  count_inequivalent_dedup, count_monotone, count_ordinary_cycle, count_proper,
                                  count_transpositions, enumerate_factorizations, inequivalent_table,
                                  inequivalent_table_dfs, verify_connections)
from ineqfact.errors import DomainError, ResourceBoundError
from ineqfact.factorization import evaluate, genus, signature
from ineqfact.perm import Permutation, Signature, compositions, full_cycle, representative

B = Signature.from_mapping


def test_full_cycle_n3_transpositions_exact_list():
    spec = EnumSpec(full_cycle(3), factor_kind="transpositions", depth=2, transitive_only=True, genus=0)
    got = sorted(str(f) for f in enumerate_factorizations(spec))
    assert got == ["(1 2)·(2 3)", "(1 3)·(1 2)", "(2 3)·(1 3)"]


def test_empty_in_s1():
    spec = EnumSpec(Permutation.identity(1), factor_kind="arbitrary", length=0)
    assert [len(f) for f in enumerate_factorizations(spec)] == [0]


def test_hurwitz_21():
    spec = EnumSpec(representative((2, 1)), factor_kind="transpositions", signature=B({2: 3}),
                    transitive_only=True)
    fs = list(enumerate_factorizations(spec))
    assert len(fs) == 8
    assert all(evaluate(f) == representative((2, 1)) and genus(f) == 0 for f in fs)


def test_jobs_do_not_change_output():
    spec = EnumSpec(representative((2, 2)), signature=B({2: 4}), transitive_only=True)
    a = [str(f) for f in enumerate_factorizations(spec)]
    b = [str(f) for f in enumerate_factorizations(spec, jobs=2)]
    assert a == b and len(a) > 0


def test_spec_validation():
    with pytest.raises(DomainError):
        EnumSpec(full_cycle(3))
    with pytest.raises(DomainError):
        EnumSpec(full_cycle(3), depth=2, genus=0)
    with pytest.raises(DomainError):
        EnumSpec(full_cycle(3), depth=4, transitive_only=True, genus=0)
    with pytest.raises(DomainError):
        EnumSpec(full_cycle(3), factor_kind="cycles", depth=2, monotone_only=True)


def test_resource_bound():
    with pytest.raises(ResourceBoundError):
        list(enumerate_factorizations(EnumSpec(full_cycle(7), depth=6)))


@pytest.mark.parametrize("alpha,beta,expected", [
    ((3,), {2: 2}, 3), ((4,), {2: 3}, 12), ((2, 1), {2: 3}, 8), ((3,), {3: 1}, 1)])
def test_count_inequivalent(alpha, beta, expected):
    assert count_inequivalent(alpha, B(beta)) == expected
    assert count_inequivalent_dedup(alpha, B(beta)) == expected


@pytest.mark.parametrize("alpha,beta,expected", [((3,), {2: 2}, 3), ((4,), {2: 1, 3: 1}, 8),
                                                 ((1, 1, 1), {2: 4}, 24)])
def test_count_ordinary(alpha, beta, expected):
    assert count_ordinary_cycle(alpha, B(beta)) == expected


def test_small_counts():
    assert count_monotone((3,)) == 2
    assert count_monotone((1,)) == 1
    assert count_monotone((2, 1)) == 4
    assert count_transpositions((2, 1)) == 8
    assert count_proper((3,), 2) == 3
    assert count_all((3,), 2) == 5
    assert count_all((3,), -1) == 2


@pytest.mark.parametrize("alpha", [a for n in range(1, 5) for a in compositions(n)])
def test_dp_matches_dfs(alpha):
    for g in (0, 1):
        if sum(alpha) + len(alpha) - 2 + 2 * g <= 5:
            assert inequivalent_table(alpha, g) == inequivalent_table_dfs(alpha, g)


@pytest.mark.parametrize("alpha,r", [((3,), 2), ((2, 1), 3), ((1, 1), 2), ((2, 2), 1)])
def test_count_all_polynomial_matches_direct(alpha, r):
    assert count_all(alpha, r) == count_all_direct(alpha, r)


def test_verify_connections_genus_one():
    rep = verify_connections((2, 1), 1)
    assert rep.ok, rep.failures


def test_enumerated_signatures():
    spec = EnumSpec(full_cycle(4), signature=B({2: 1, 3: 1}), transitive_only=True, genus=0)
    fs = list(enumerate_factorizations(spec))
    assert len(fs) == 8
    assert {signature(f) for f in fs} == {B({2: 1, 3: 1})}
