import itertools

import pytest
from hypothesis import given, strategies as st

from ineqfact.canonical import (canonical_form, class_size, commutation_closure, equivalent, is_canonical,
                                is_monotone, monotone_involution)
from ineqfact.factorization import CycleFactorization, evaluate
from ineqfact.perm import all_cycles


def words(n, max_len):
    return st.lists(st.sampled_from(all_cycles(n)), max_size=max_len).map(
        lambda fs: CycleFactorization(n, tuple(fs)))


def test_commuting_pair(C):
    f = C(4, (3, 4), (1, 2))
    assert canonical_form(f) == C(4, (1, 2), (3, 4))
    assert equivalent(f, C(4, (1, 2), (3, 4)))
    assert class_size(f) == 2


def test_noncommuting_pair_is_its_own_class(C):
    f = C(3, (2, 3), (1, 2))
    assert is_canonical(f)
    assert class_size(f) == 1
    assert not equivalent(f, C(3, (1, 2), (2, 3)))


def test_projection_example_class(C):
    # three pairwise non-overlapping placements except (1 5),(3 5)
    f = C(5, (1, 5), (2, 4), (3, 5))
    assert class_size(f) == 3
    assert len(commutation_closure(f)) == 3


@given(words(4, 5))
def test_canonical_is_idempotent_and_class_invariant(f):
    g = canonical_form(f)
    assert canonical_form(g) == g
    assert evaluate(g) == evaluate(f)
    closure = commutation_closure(f)
    assert len(closure) == class_size(f)
    assert g == min(closure, key=lambda h: h.trace())
    assert all(canonical_form(h) == g for h in closure)


def test_involution_on_all_small_canonical_forms():
    cyc = all_cycles(4)
    seen = 0
    for r in range(0, 4):
        for fs in itertools.product(cyc, repeat=r):
            f = CycleFactorization(4, fs)
            if not is_canonical(f) or sum(len(c) - 1 for c in fs) > 4:
                continue
            g = monotone_involution(f)
            seen += 1
            assert monotone_involution(g) == f
            assert evaluate(g) == evaluate(f)
            if is_monotone(f):
                assert g == f
            else:
                assert (len(g) - len(f)) in (1, -1)
    assert seen > 1000
