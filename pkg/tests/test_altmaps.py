import itertools

import pytest

from ineqfact.altmaps import (AlternatingMap, build_map, faces, map_stats, reachability_matches_order, serialize,
                              verify_bijection, verify_bijection_grid)
from ineqfact.canonical import canonical_form, commutation_closure
from ineqfact.errors import StructuralError
from ineqfact.factorization import CycleFactorization, genus, is_transitive
from ineqfact.perm import Signature, all_cycles

B = Signature.from_mapping


def test_small_maps(C):
    st = map_stats(build_map(C(3, (1, 2), (2, 3))))
    assert (st.vertex_count, st.edge_count, st.face_count, st.genus, st.acyclic) == (8, 7, 1, 0, True)
    st = map_stats(build_map(C(2, (1, 2))))
    assert (st.vertex_count, st.edge_count) == (5, 4)
    st = map_stats(build_map(C(2, (1, 2), (1, 2))))
    assert (st.face_count, st.genus) == (2, 0)


def test_three_face_genus_zero_instance(C):
    # class (4,2,1), six transpositions and one 3-cycle
    f = C(7, (5, 6), (4, 5), (3, 7), (2, 7), (4, 5), (3, 7), (1, 3, 4))
    st = map_stats(build_map(f))
    assert (st.genus, st.face_count, st.acyclic) == (0, 3, True)
    assert sorted(len(fc["sources"]) for fc in st.faces) == [1, 2, 4]


def test_rotation_alternates(C):
    m = build_map(C(4, (1, 3, 2, 4), (2, 3)))
    for v, darts in m.rotation:
        if v[0] == "internal":
            dirs = [m.dart_direction(d) for d in darts]
            assert dirs == ["out", "in"] * (len(darts) // 2)


def test_broken_rotation_is_rejected(C):
    m = build_map(C(3, (1, 2), (2, 3)))
    rot = list(m.rotation)
    v, darts = rot[0]
    rot[0] = (v, ())
    with pytest.raises(StructuralError):
        map_stats(AlternatingMap(m.n, m.vertices, m.edges, tuple(rot)))


def _words(n, max_depth):
    cyc = all_cycles(n)
    for r in range(1, max_depth + 1):
        for fs in itertools.product(cyc, repeat=r):
            if sum(len(c) - 1 for c in fs) <= max_depth:
                yield CycleFactorization(n, fs)


@pytest.mark.parametrize("n,depth", [(3, 4), (4, 4)])
def test_map_determines_class(n, depth):
    by_map, by_class = {}, {}
    for f in _words(n, depth):
        key = serialize(build_map(f))
        cls = canonical_form(f)
        by_map.setdefault(key, set()).add(cls)
        by_class.setdefault(cls, set()).add(key)
        assert reachability_matches_order(f)
        st = map_stats(build_map(f))
        assert st.acyclic and st.alternating
        assert all(len(fc["sources"]) == len(fc["sinks"]) >= 1 for fc in st.faces)
        if is_transitive(f):
            assert st.genus == genus(f)
    assert all(len(v) == 1 for v in by_map.values())
    assert all(len(v) == 1 for v in by_class.values())


def test_equivalent_inputs_give_equal_maps(C):
    f = C(5, (3, 4, 5), (1, 2), (2, 3, 5), (1, 4))
    maps = {build_map(g) for g in commutation_closure(f)}
    assert len(maps) == 1


@pytest.mark.parametrize("alpha,beta,maps", [((3,), {2: 2}, 3), ((4,), {4: 1}, 1), ((2, 1), {2: 3}, 8)])
def test_bijection_examples(alpha, beta, maps):
    rep = verify_bijection(alpha, B(beta), 0)
    assert rep.ok
    assert rep.cases[-1]["maps"] == maps


def test_faces_follow_target_cycles(C):
    m = build_map(C(4, (1, 2), (3, 4), (2, 3)))
    st = map_stats(m)
    assert len(faces(m)) == st.face_count


def test_dot_dump(C):
    text = build_map(C(3, (1, 2), (2, 3))).to_dot()
    assert text.startswith("digraph") and "rotation v0: out1 in1 out2 in2" in text


def test_grid_small():
    assert verify_bijection_grid(3, 4).ok
