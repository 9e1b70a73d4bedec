"""Factorization values and their observables (target, signature, depth, transitivity, genus).

Factors are stored in the order they are written; the product is taken
right to left, so ``evaluate(f) == f.factors[0] * f.factors[1] * ...``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import AmbientSizeError, ConsistencyError, DomainError
from .perm import Cycle, Permutation, Signature, compose


@dataclass(frozen=True)
class CycleFactorization:
    n: int
    factors: tuple[Cycle, ...] = ()

    def __post_init__(self):
        fs = tuple(c if isinstance(c, Cycle) else Cycle(tuple(c)) for c in self.factors)
        for c in fs:
            if c.max > self.n:
                raise AmbientSizeError(f"factor {c} does not fit in S_{self.n}")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def of(cls, n: int, *cycles: Sequence[int]) -> "CycleFactorization":
        """``CycleFactorization.of(3, (1, 2), (2, 3))`` is (1 2)*(2 3)."""
        return cls(n, tuple(Cycle(tuple(c)) for c in cycles))

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __add__(self, other: "CycleFactorization") -> "CycleFactorization":
        if self.n != other.n:
            raise AmbientSizeError("concatenating factorizations of different degree")
        return CycleFactorization(self.n, self.factors + other.factors)

    def perms(self) -> list[Permutation]:
        return [c.to_perm(self.n) for c in self.factors]

    def trace(self) -> tuple[int, ...]:
        """Sequence of factor maxima."""
        return tuple(c.max for c in self.factors)

    def to_general(self) -> "GeneralFactorization":
        return GeneralFactorization(self.n, tuple(self.perms()))

    def to_json(self) -> dict:
        return {"n": self.n, "factors": [[list(c.symbols)] for c in self.factors]}

    def __str__(self):
        if not self.factors:
            return "1"
        return "·".join(str(c) for c in self.factors)

    def __repr__(self):
        return f"CycleFactorization({self}, n={self.n})"


@dataclass(frozen=True)
class GeneralFactorization:
    """Factorization into arbitrary permutations; identity factors are allowed."""

    n: int
    factors: tuple[Permutation, ...] = ()

    def __post_init__(self):
        fs = tuple(self.factors)
        for p in fs:
            if p.n != self.n:
                raise AmbientSizeError(f"factor {p!r} is not in S_{self.n}")
        object.__setattr__(self, "factors", fs)

    def __len__(self):
        return len(self.factors)

    def is_proper(self) -> bool:
        return not any(p.is_identity() for p in self.factors)

    def cycle_word(self) -> CycleFactorization:
        """Concatenate the disjoint cycles of each factor (least element order)."""
        out = []
        for p in self.factors:
            out.extend(p.cycle_factors())
        return CycleFactorization(self.n, tuple(out))

    def to_json(self) -> dict:
        return {"n": self.n, "factors": [p.to_json() for p in self.factors]}

    def __str__(self):
        if not self.factors:
            return "1"
        return "·".join(str(p) for p in self.factors)


Factorization = Union[CycleFactorization, GeneralFactorization]


def _factor_perms(f: Factorization) -> list[Permutation]:
    if isinstance(f, CycleFactorization):
        return f.perms()
    return list(f.factors)


def _factor_cycles(f: Factorization) -> list[tuple[int, ...]]:
    if isinstance(f, CycleFactorization):
        return [c.symbols for c in f.factors]
    out = []
    for p in f.factors:
        out.extend(p.cycles())
    return out


def evaluate(f: Factorization) -> Permutation:
    """Right-to-left product of the factors (identity when empty)."""
    result = Permutation.identity(f.n)
    for p in _factor_perms(f):
        result = compose(result, p)
    return result


def signature(f: Factorization) -> Signature:
    return Signature.of_lengths(len(c) for c in _factor_cycles(f))


def depth(f: Factorization) -> int:
    return sum(len(c) - 1 for c in _factor_cycles(f))


def signature_and_depth(f: Factorization) -> tuple[Signature, int]:
    beta = signature(f)
    return beta, beta.depth


def orbits(f: Factorization) -> list[frozenset]:
    """Orbits of the group generated by the factors (union-find over cycle supports)."""
    parent = list(range(f.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in _factor_cycles(f):
        r = find(c[0])
        for x in c[1:]:
            parent[find(x)] = r
    blocks: dict[int, set] = {}
    for i in range(1, f.n + 1):
        blocks.setdefault(find(i), set()).add(i)
    return [frozenset(b) for b in blocks.values()]


def is_transitive(f: Factorization) -> bool:
    return len(orbits(f)) == 1


def genus(f: Factorization) -> int:
    """The g with depth = n + ell(target) - 2 + 2g; transitive input only."""
    if not is_transitive(f):
        raise DomainError(f"genus is undefined for the non-transitive factorization {f}")
    twice = depth(f) - f.n - evaluate(f).num_cycles() + 2
    if twice < 0 or twice % 2:
        raise ConsistencyError(f"non-integral or negative genus {twice}/2 for {f}")
    return twice // 2


def from_json(obj) -> Factorization:
    """Parse ``{"n": 6, "factors": [[[1,2,3],[4,6]], ...]}``.

    Returns a CycleFactorization when every factor is a single nontrivial
    cycle, otherwise a GeneralFactorization.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    n = int(obj["n"])
    factors = obj["factors"]
    if all(len(fac) == 1 and len(fac[0]) >= 2 for fac in factors):
        return CycleFactorization(n, tuple(Cycle(tuple(fac[0])) for fac in factors))
    return GeneralFactorization(n, tuple(Permutation.from_cycles(fac, n) for fac in factors))
