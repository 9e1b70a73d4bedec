"""Commutation classes of cycle factorizations.

Two cycle factorizations are equivalent when one is reached from the other
by swapping adjacent disjoint factors.  Each class is represented by its
member whose trace (sequence of factor maxima) is lexicographically least.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import AmbientSizeError, ConsistencyError, DomainError
from .factorization import CycleFactorization
from .perm import Cycle


@dataclass(frozen=True)
class DependenceDag:
    """Edge i -> j whenever i < j and factors i, j share a symbol."""

    nodes: tuple[int, ...]
    edges: frozenset

    @classmethod
    def of(cls, f: CycleFactorization) -> "DependenceDag":
        supp = [c.support for c in f.factors]
        edges = set()
        for j in range(len(supp)):
            for i in range(j):
                if supp[i] & supp[j]:
                    edges.add((i, j))
        return cls(tuple(range(len(supp))), frozenset(edges))

    def predecessors(self) -> list[int]:
        """Bitmask of direct predecessors for each node."""
        pred = [0] * len(self.nodes)
        for i, j in self.edges:
            pred[j] |= 1 << i
        return pred

    def reachable(self) -> list[set]:
        """reach[i] = nodes j with a directed path i -> j."""
        r = len(self.nodes)
        succ = [[] for _ in range(r)]
        for i, j in self.edges:
            succ[i].append(j)
        reach = [set() for _ in range(r)]
        for i in reversed(range(r)):
            for j in succ[i]:
                reach[i].add(j)
                reach[i] |= reach[j]
        return reach


@dataclass(frozen=True)
class InequivalentClass:
    canonical: CycleFactorization

    @classmethod
    def of(cls, f: CycleFactorization) -> "InequivalentClass":
        return cls(canonical_form(f))


def canonical_form(f: CycleFactorization) -> CycleFactorization:
    """Trace-minimal member of the commutation class of ``f``.

    Greedy: among factors whose dependence predecessors are all placed,
    emit the one with the smallest maximum symbol.
    """
    r = len(f.factors)
    if r <= 1:
        return f
    pred = DependenceDag.of(f).predecessors()
    maxes = [c.max for c in f.factors]
    placed = 0
    order = []
    for _ in range(r):
        best = -1
        for i in range(r):
            if placed >> i & 1 or pred[i] & ~placed:
                continue
            if best < 0 or maxes[i] < maxes[best]:
                best = i
            elif maxes[i] == maxes[best]:
                raise ConsistencyError(f"available factors share maximum {maxes[i]} in {f}")
        order.append(best)
        placed |= 1 << best
    return CycleFactorization(f.n, tuple(f.factors[i] for i in order))


def is_canonical(f: CycleFactorization) -> bool:
    return canonical_form(f) == f


def equivalent(f: CycleFactorization, g: CycleFactorization) -> bool:
    if f.n != g.n:
        raise AmbientSizeError("comparing factorizations of different degree")
    return canonical_form(f) == canonical_form(g)


def class_size(f: CycleFactorization) -> int:
    """Number of linear extensions of the dependence order of ``f``."""
    r = len(f.factors)
    pred = DependenceDag.of(f).predecessors()

    @lru_cache(maxsize=None)
    def count(placed: int) -> int:
        if placed == (1 << r) - 1:
            return 1
        total = 0
        for i in range(r):
            if not placed >> i & 1 and not pred[i] & ~placed:
                total += count(placed | 1 << i)
        return total

    return count(0)


def commutation_closure(f: CycleFactorization) -> set[CycleFactorization]:
    """All members of the class of ``f`` by breadth-first adjacent swaps.

    Exponential; intended as a test oracle for small factorizations.
    """
    seen = {f}
    queue = deque([f])
    while queue:
        g = queue.popleft()
        fs = g.factors
        for i in range(len(fs) - 1):
            if fs[i].disjoint(fs[i + 1]):
                h = CycleFactorization(g.n, fs[:i] + (fs[i + 1], fs[i]) + fs[i + 2:])
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
    return seen


def is_monotone(f: CycleFactorization) -> bool:
    """Transposition factors whose maxima weakly increase left to right."""
    prev = 0
    for c in f.factors:
        if len(c) != 2 or c.max < prev:
            return False
        prev = c.max
    return True


def monotone_involution(f: CycleFactorization) -> CycleFactorization:
    """Sign-reversing involution on canonical forms whose fixed points are monotone.

    Locate the leftmost factor that is either not a transposition or whose
    maximum exceeds that of the next factor.  If it is a transposition
    (a m), merge it with the next factor (a b1..bk) into (a b1..bk m);
    otherwise split (a b1..bk m) into (a m)(a b1..bk).
    """
    if not is_canonical(f):
        raise DomainError(f"{f} is not in canonical form")
    if is_monotone(f):
        return f
    fs = f.factors
    tr = f.trace()
    i = next(j for j, c in enumerate(fs)
             if len(c) > 2 or (j + 1 < len(fs) and tr[j] > tr[j + 1]))
    m = tr[i]
    sigma = fs[i]
    if len(sigma) == 2:
        a = sigma.symbols[0]
        nxt = fs[i + 1]
        if a not in nxt or m in nxt:
            raise ConsistencyError(f"merge step has no valid partner in {f}")
        k = nxt.symbols.index(a)
        rest = nxt.symbols[k:] + nxt.symbols[:k]  # (a b1 .. bk)
        merged = Cycle(rest + (m,))
        new = fs[:i] + (merged,) + fs[i + 2:]
    else:
        seq = sigma.rotated_to_end(m)  # (a b1 .. bk m)
        a = seq[0]
        new = fs[:i] + (Cycle((a, m)), Cycle(seq[:-1])) + fs[i + 1:]
    g = CycleFactorization(f.n, new)
    h = canonical_form(g)
    if h != g:
        raise ConsistencyError(f"involution image {g} of {f} is not trace-minimal")
    return h
