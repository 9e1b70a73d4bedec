from ineqfact.canonical import canonical_form, class_size, equivalent, is_monotone, monotone_involution
from ineqfact.factorization import CycleFactorization, GeneralFactorization, evaluate, genus, is_transitive
from ineqfact.factorization import signature_and_depth
from ineqfact.perm import Permutation, Signature, cycle_type


def P(cycles, n):
    return Permutation.from_cycles(cycles, n)


WORKED = GeneralFactorization(6, (P([[1, 2, 3], [4, 6]], 6), P([[2, 4, 6, 5]], 6), P([[1, 4], [2, 3], [5, 6]], 6)))


def test_worked_example():
    target = evaluate(WORKED)
    assert target == P([[1, 4, 2], [3, 6]], 6)
    assert cycle_type(target) == (3, 2, 1)
    assert signature_and_depth(WORKED) == (Signature((4, 1, 1)), 9)
    assert is_transitive(WORKED)
    assert genus(WORKED) == 1


def test_invariant_subset_blocks_transitivity():
    f = GeneralFactorization(6, (P([[1, 3, 2], [5, 6]], 6), P([[2, 4], [1, 3]], 6), P([[1, 4], [5, 6]], 6)))
    assert not is_transitive(f)


def test_empty_factorization_in_s1_is_transitive():
    assert is_transitive(CycleFactorization(1, ()))


def test_commutation_example(C):
    f = C(5, (3, 4, 5), (1, 2), (2, 3, 5), (1, 4))
    assert canonical_form(f) == C(5, (1, 2), (3, 4, 5), (1, 4), (2, 3, 5))
    assert equivalent(f, canonical_form(f))
    assert class_size(C(6, (1, 2), (3, 4), (5, 6))) == 6


def test_monotone_examples(C):
    f = C(5, (2, 3), (3, 4), (1, 4), (3, 4), (4, 5))
    assert is_monotone(f)
    assert evaluate(f) == P([[1, 2, 3], [4, 5]], 5)
    assert monotone_involution(f) == f
    assert monotone_involution(C(3, (1, 3, 2))) == C(3, (2, 3), (1, 2))
    assert not is_monotone(C(3, (1, 3), (1, 2)))
