"""Alternating maps of cycle factorizations.

Each symbol i contributes a directed path from a source leaf through the
vertices of the factors that move i (rightmost factor first) to a sink leaf.
A factor (i1 ... ik) becomes one internal vertex whose darts, read
counter-clockwise, are out i1, in i1, out i2, in i2, ...

Darts are pairs (edge index, end) with end 0 at the tail and 1 at the head.
Faces are the orbits of rotation-after-edge-flip on darts.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .canonical import DependenceDag
from .enumeration import EnumSpec, enumerate_factorizations, count_inequivalent, genus_depth
from .errors import StructuralError
from .factorization import CycleFactorization
from .perm import Signature, representative, signatures_of_depth, compositions
from .report import Report

OUT, IN = "out", "in"


def source(i: int) -> tuple:
    return ("source", i)


def sink(i: int) -> tuple:
    return ("sink", i)


@dataclass(frozen=True)
class AlternatingMap:
    n: int
    vertices: tuple            # ("source", i), ("sink", i), ("internal", j)
    edges: tuple               # (tail, head, label)
    rotation: tuple            # ((vertex, (dart, ...)), ...) counter-clockwise
    factor_of: tuple = field(default=(), compare=False)  # internal j -> input factor index

    def rotation_at(self, v) -> tuple:
        return dict(self.rotation)[v]

    @property
    def internal(self) -> tuple:
        return tuple(v for v in self.vertices if v[0] == "internal")

    def dart_vertex(self, d) -> tuple:
        e, end = d
        return self.edges[e][end]

    def dart_direction(self, d) -> str:
        return OUT if d[1] == 0 else IN

    def to_dot(self) -> str:
        prefix = {"source": "src", "sink": "snk", "internal": "v"}
        names = {v: f"{prefix[v[0]]}{v[1]}" for v in self.vertices}
        lines = ["digraph map {"]
        for v in self.vertices:
            shape = "circle" if v[0] == "internal" else "box"
            lines.append(f'  {names[v]} [shape={shape}];')
        for e, (t, h, lab) in enumerate(self.edges):
            lines.append(f'  {names[t]} -> {names[h]} [label="{lab}"];')
        for v, darts in self.rotation:
            if v[0] == "internal":
                seq = " ".join(f"{self.dart_direction(d)}{self.edges[d[0]][2]}" for d in darts)
                lines.append(f"  // rotation {names[v]}: {seq}")
        lines.append("}")
        return "\n".join(lines)


def _raw_paths(f: CycleFactorization) -> list:
    """paths[i-1] = factor indices moving i, in application order (right to left)."""
    paths = [[] for _ in range(f.n)]
    for idx in reversed(range(len(f.factors))):
        for s in f.factors[idx]:
            paths[s - 1].append(idx)
    return paths


def _relabel(n: int, paths: list, cycles: list) -> dict:
    """Breadth-first numbering of internal vertices, seeded at sources in label order.

    A vertex is entered through a dart; its neighbours are explored in
    rotation order starting from that dart, so the numbering only depends on
    the labelled map.
    """
    # position of each factor on each path, and its ccw dart list as (dir, label)
    order: dict = {}
    seen_src = set()
    queue: deque = deque()

    def neighbour(idx, direction, label):
        p = paths[label - 1]
        k = p.index(idx)
        if direction == OUT:
            return ("f", p[k + 1]) if k + 1 < len(p) else ("sink", label)
        return ("f", p[k - 1]) if k > 0 else ("source", label)

    def visit(node, entry_label=None, entry_dir=None):
        if node[0] != "f":
            if node[0] == "source" and node[1] not in seen_src:
                seen_src.add(node[1])
                p = paths[node[1] - 1]
                if p:
                    enter(p[0], node[1], IN)
            return
        return

    def enter(idx, label, direction):
        if idx in order:
            return
        order[idx] = len(order)
        queue.append((idx, label, direction))

    seeds = list(range(1, n + 1))
    for s in seeds:
        visit(("source", s))
        while queue:
            idx, label, direction = queue.popleft()
            darts = []
            for x in cycles[idx]:
                darts += [(OUT, x), (IN, x)]
            start = darts.index((direction, label))
            for d, lab in darts[start:] + darts[:start]:
                nb = neighbour(idx, d, lab)
                if nb[0] == "f":
                    enter(nb[1], lab, IN if d == OUT else OUT)
                else:
                    visit(nb)
    return order


def build_map(f: CycleFactorization) -> AlternatingMap:
    """The alternating map of ``f``; equivalent factorizations give equal maps."""
    n = f.n
    cycles = [tuple(c) for c in f.factors]
    paths = _raw_paths(f)
    order = _relabel(n, paths, cycles)
    inv = sorted(order, key=order.get)
    vid = {idx: ("internal", order[idx]) for idx in order}

    edges = []
    for i in range(1, n + 1):
        chain = [source(i)] + [vid[idx] for idx in paths[i - 1]] + [sink(i)]
        for a, b in zip(chain, chain[1:]):
            edges.append((a, b, i))
    edges.sort()
    eindex = {}
    for e, (t, h, lab) in enumerate(edges):
        eindex[(t, lab, 0)] = e  # out-dart of label lab at t
        eindex[(h, lab, 1)] = e  # in-dart of label lab at h

    rotation = []
    for i in range(1, n + 1):
        rotation.append((source(i), ((eindex[(source(i), i, 0)], 0),)))
        rotation.append((sink(i), ((eindex[(sink(i), i, 1)], 1),)))
    for idx in inv:
        v = vid[idx]
        darts = []
        for x in cycles[idx]:
            darts += [(eindex[(v, x, 0)], 0), (eindex[(v, x, 1)], 1)]
        k = darts.index(min(darts))
        k -= k % 2  # keep the rotation starting at an out-dart
        rotation.append((v, tuple(darts[k:] + darts[:k])))
    rotation.sort()
    vertices = tuple(sorted({v for v, _ in rotation}))
    return AlternatingMap(n, vertices, tuple(edges), tuple(rotation), tuple(inv))


def serialize(m: AlternatingMap) -> tuple:
    """Canonical serialization; equal for isomorphic labelled maps."""
    return (m.n, m.edges, tuple((v, tuple(m.edges[d[0]][2] * (1 if d[1] == 0 else -1) for d in ds))
                                for v, ds in m.rotation))


@dataclass(frozen=True)
class MapStats:
    vertex_count: int
    edge_count: int
    face_count: int
    genus: int
    acyclic: bool
    alternating: bool
    faces: tuple  # ({"sources": [...], "sinks": [...], "length": L}, ...)

    def to_json(self) -> dict:
        return {"vertex_count": self.vertex_count, "edge_count": self.edge_count,
                "face_count": self.face_count, "genus": self.genus, "acyclic": self.acyclic,
                "alternating": self.alternating, "faces": [dict(f) for f in self.faces]}


def _check_rotation(m: AlternatingMap) -> bool:
    rot = dict(m.rotation)
    used = [0] * (2 * len(m.edges))
    for v, darts in m.rotation:
        for d in darts:
            if m.dart_vertex(d) != v:
                raise StructuralError(f"dart {d} listed at {v} belongs to {m.dart_vertex(d)}")
            used[2 * d[0] + d[1]] += 1
    if any(u != 1 for u in used) or set(rot) != set(m.vertices):
        raise StructuralError("rotation system does not list every dart exactly once")
    ok = True
    for v, darts in m.rotation:
        if v[0] == "internal":
            dirs = [d[1] for d in darts]
            labels = [m.edges[d[0]][2] for d in darts]
            ok &= len(darts) % 2 == 0 and all(dirs[i] != dirs[(i + 1) % len(dirs)] for i in range(len(dirs)))
            ok &= all(labels[i] == labels[i + 1] for i in range(0, len(labels), 2))
        else:
            ok &= len(darts) == 1
    return ok


def faces(m: AlternatingMap) -> list:
    """Boundary walks as dart lists, in order of first dart."""
    succ = {}
    for v, darts in m.rotation:
        for i, d in enumerate(darts):
            succ[d] = darts[(i + 1) % len(darts)]
    seen, out = set(), []
    for e in range(len(m.edges)):
        for end in (0, 1):
            d = (e, end)
            if d in seen:
                continue
            walk = []
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = succ[(d[0], 1 - d[1])]
            out.append(walk)
    return out


def _acyclic(m: AlternatingMap) -> bool:
    adj: dict = {v: [] for v in m.vertices}
    for t, h, _ in m.edges:
        adj[t].append(h)
    state: dict = {}
    for root in m.vertices:
        if root in state:
            continue
        stack = [(root, iter(adj[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                state[v] = 2
                stack.pop()
            elif state.get(w) == 1:
                return False
            elif w not in state:
                state[w] = 1
                stack.append((w, iter(adj[w])))
    return True


def map_stats(m: AlternatingMap) -> MapStats:
    alternating = _check_rotation(m)
    fs = faces(m)
    V, E, F = len(m.vertices), len(m.edges), len(fs)
    comps = _components(m)
    twice = 2 * comps - V + E - F
    if twice % 2:
        raise StructuralError("odd Euler characteristic")
    info = []
    for walk in fs:
        leaves = [m.dart_vertex(d) for d in walk]
        srcs = [v[1] for v in leaves if v[0] == "source"]
        snks = [v[1] for v in leaves if v[0] == "sink"]
        info.append({"sources": srcs, "sinks": snks, "length": len(walk)})
    info.sort(key=lambda f: min(f["sources"] + f["sinks"], default=0))
    return MapStats(V, E, F, twice // 2, _acyclic(m), alternating, tuple(info))


def _components(m: AlternatingMap) -> int:
    parent = {v: v for v in m.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t, h, _ in m.edges:
        parent[find(t)] = find(h)
    return len({find(v) for v in m.vertices})


def internal_reachability(m: AlternatingMap) -> set:
    """Pairs (a, b) of input factor indices with a directed path from a's vertex to b's."""
    adj: dict = {}
    for t, h, _ in m.edges:
        adj.setdefault(t, set()).add(h)
    idx = {("internal", j): m.factor_of[j] for j in range(len(m.factor_of))}
    out = set()
    for v in idx:
        stack, seen = [v], set()
        while stack:
            for w in adj.get(stack.pop(), ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out |= {(idx[v], idx[w]) for w in seen if w in idx}
    return out


def reachability_matches_order(f: CycleFactorization) -> bool:
    """Directed paths run from each factor to every factor forced to lie to its left."""
    dag = DependenceDag.of(f)
    reach = dag.reachable()
    forced = {(j, i) for i in range(len(f.factors)) for j in reach[i]}
    return internal_reachability(build_map(f)) == forced


def verify_bijection(alpha, beta: Signature, g: int = 0, force: bool = False) -> Report:
    alpha = tuple(alpha)
    target = representative(alpha)
    n = target.n
    rep = Report(f"maps alpha={list(alpha)} beta={beta} g={g}")
    if beta.depth != genus_depth(alpha, g):
        rep.check("depth", False, detail="signature depth does not match the genus")
        return rep
    spec = EnumSpec(target, signature=beta, transitive_only=True, genus=g, canonical_only=True)
    cycles = sorted(target.cycles(include_fixed=True), key=min)
    seen: dict = {}
    for f in enumerate_factorizations(spec, force=force):
        m = build_map(f)
        st = map_stats(m)
        key = serialize(m)
        witness = str(f)
        if key in seen:
            rep.check("distinct maps", False, witness=witness, clash=seen[key])
        seen[key] = witness
        face_sources = sorted(tuple(sorted(fc["sources"])) for fc in st.faces)
        ok = (st.alternating and st.acyclic and st.genus == g and st.face_count == len(alpha)
              and face_sources == sorted(tuple(sorted(c)) for c in cycles)
              and all(len(fc["sources"]) == len(fc["sinks"]) for fc in st.faces))
        if not ok:
            rep.check("map properties", False, witness=witness, stats=st.to_json())
    expected = count_inequivalent(alpha, beta, g, force=force)
    rep.check("map count", len(seen) == expected, maps=len(seen), inequivalent=expected)
    return rep


def verify_bijection_grid(max_n: int = 4, max_depth: int = 5, force: bool = False) -> Report:
    rep = Report(f"maps |alpha|<={max_n} depth<={max_depth}")
    for n in range(1, max_n + 1):
        for alpha in compositions(n):
            g = 0
            while genus_depth(alpha, g) <= max_depth:
                for beta in signatures_of_depth(genus_depth(alpha, g), n):
                    sub = verify_bijection(alpha, beta, g, force)
                    rep.merge(sub)
                g += 1
    return rep
