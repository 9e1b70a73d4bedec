"""Permutations and cycles on the symbols 1..n.

Products are evaluated right to left: ``compose(p, q)(i) == p(q(i))``.
Every object carries its ambient size ``n`` explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itperms
from typing import Iterable, Iterator, Sequence

from .errors import AmbientSizeError, DomainError

CycleType = tuple  # composition (alpha_1, ..., alpha_m) of n


@dataclass(frozen=True, order=True)
class Cycle:
    """A nontrivial cycle, stored with its least symbol first."""

    symbols: tuple[int, ...]

    def __post_init__(self):
        s = tuple(int(x) for x in self.symbols)
        if len(s) < 2:
            raise DomainError(f"cycle {s} must have length >= 2")
        if len(set(s)) != len(s):
            raise DomainError(f"cycle {s} repeats a symbol")
        if min(s) < 1:
            raise DomainError(f"cycle {s} has a symbol below 1")
        k = s.index(min(s))
        object.__setattr__(self, "symbols", s[k:] + s[:k])

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, x):
        return x in self.symbols

    def __str__(self):
        return "(" + " ".join(map(str, self.symbols)) + ")"

    @property
    def max(self) -> int:
        return max(self.symbols)

    @property
    def support(self) -> frozenset:
        return frozenset(self.symbols)

    def rotated_to_end(self, x: int) -> tuple[int, ...]:
        """Symbols listed cyclically so that ``x`` comes last."""
        k = self.symbols.index(x)
        return self.symbols[k + 1:] + self.symbols[:k + 1]

    def disjoint(self, other: "Cycle") -> bool:
        return not (set(self.symbols) & set(other.symbols))

    def to_perm(self, n: int) -> "Permutation":
        if self.max > n:
            raise AmbientSizeError(f"cycle {self} does not fit in S_{n}")
        img = list(range(1, n + 1))
        s = self.symbols
        for a, b in zip(s, s[1:] + s[:1]):
            img[a - 1] = b
        return Permutation(tuple(img))


class Permutation:
    """Bijection of {1..n} given by its one-line form ``images[i-1] = p(i)``."""

    __slots__ = ("images", "_cycles")

    def __init__(self, images: Sequence[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(1, len(images) + 1)):
            raise DomainError(f"{images} is not a permutation of 1..{len(images)}")
        self.images = images
        self._cycles = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]], n: int) -> "Permutation":
        """Build from disjoint cycles, e.g. ``from_cycles([[1, 4, 2], [3, 6]], 6)``."""
        img = list(range(1, n + 1))
        seen = set()
        for c in cycles:
            c = list(c)
            if not c:
                continue
            if seen & set(c):
                raise DomainError(f"cycles {cycles} are not disjoint")
            seen |= set(c)
            if max(c) > n or min(c) < 1:
                raise AmbientSizeError(f"cycle {c} does not fit in S_{n}")
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b
        return cls(tuple(img), check=False)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(tuple(inv), check=False)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles ordered by least element (each starting at its least element)."""
        if self._cycles is None:
            seen = [False] * (self.n + 1)
            out = []
            for i in range(1, self.n + 1):
                if seen[i]:
                    continue
                c = [i]
                seen[i] = True
                j = self.images[i - 1]
                while j != i:
                    c.append(j)
                    seen[j] = True
                    j = self.images[j - 1]
                out.append(tuple(c))
            self._cycles = out
        if include_fixed:
            return list(self._cycles)
        return [c for c in self._cycles if len(c) > 1]

    def cycle_factors(self) -> list[Cycle]:
        return [Cycle(c) for c in self.cycles()]

    def num_cycles(self) -> int:
        return len(self.cycles(include_fixed=True))

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.cycles()]

    def __str__(self):
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)

    def __repr__(self):
        return f"Permutation({str(self)}, n={self.n})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Right-to-left product: the result maps i to p(q(i))."""
    if p.n != q.n:
        raise AmbientSizeError(f"cannot compose S_{p.n} with S_{q.n}")
    pi = p.images
    return Permutation(tuple(pi[j - 1] for j in q.images), check=False)


def cycle_type(p: Permutation, order: Sequence[int] | None = None) -> CycleType:
    """Cycle lengths of ``p`` including fixed points, weakly decreasing.

    ``order`` may supply a composition to check against; it is returned as
    given when it is a reordering of the actual cycle lengths.
    """
    parts = sorted((len(c) for c in p.cycles(include_fixed=True)), reverse=True)
    if order is not None:
        if sorted(order, reverse=True) != parts:
            raise DomainError(f"{tuple(order)} is not a reordering of {tuple(parts)}")
        return tuple(order)
    return tuple(parts)


def perm_depth(p: Permutation) -> int:
    """n minus the number of cycles (fixed points included)."""
    return p.n - p.num_cycles()


def representative(alpha: Sequence[int]) -> Permutation:
    """The permutation (1..a1)(a1+1..a1+a2)... of cycle type ``alpha``.

    Its cycles, ordered by least element, appear in the order of ``alpha``.
    """
    alpha = tuple(int(a) for a in alpha)
    if not alpha or min(alpha) < 1:
        raise DomainError(f"{alpha} is not a composition")
    cycles, start = [], 1
    for a in alpha:
        cycles.append(list(range(start, start + a)))
        start += a
    return Permutation.from_cycles(cycles, sum(alpha))


def full_cycle(n: int) -> Permutation:
    return representative((n,))


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Permutation, ...]:
    """All of S_n in lexicographic one-line order."""
    return tuple(Permutation(p, check=False) for p in _itperms(range(1, n + 1)))


@lru_cache(maxsize=None)
def all_cycles(n: int, length: int | None = None) -> tuple[Cycle, ...]:
    """All nontrivial cycles in S_n (optionally of one length), sorted."""
    out = []
    lengths = range(2, n + 1) if length is None else [length]
    from itertools import combinations
    for k in lengths:
        for subset in combinations(range(1, n + 1), k):
            first, rest = subset[0], subset[1:]
            for arr in _itperms(rest):
                out.append(Cycle((first,) + arr))
    return tuple(sorted(out, key=lambda c: c.symbols))


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All compositions of n, in lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of n as weakly decreasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class Signature:
    """Counts beta_k of k-cycles, k >= 2; stored as (beta_2, beta_3, ...) without trailing zeros."""

    beta: tuple[int, ...] = ()

    def __post_init__(self):
        b = list(int(x) for x in self.beta)
        if any(x < 0 for x in b):
            raise DomainError(f"signature {tuple(b)} has a negative entry")
        while b and b[-1] == 0:
            b.pop()
        object.__setattr__(self, "beta", tuple(b))

    @classmethod
    def from_mapping(cls, counts: dict) -> "Signature":
        if not counts:
            return cls(())
        kmax = max(int(k) for k in counts)
        if kmax >= 2 and min(int(k) for k in counts) < 2:
            raise DomainError("signature indices start at 2")
        b = [0] * (kmax - 1)
        for k, v in counts.items():
            b[int(k) - 2] += int(v)
        return cls(tuple(b))

    @classmethod
    def of_lengths(cls, lengths: Iterable[int]) -> "Signature":
        counts: dict[int, int] = {}
        for k in lengths:
            if k >= 2:
                counts[k] = counts.get(k, 0) + 1
        return cls.from_mapping(counts)

    def __getitem__(self, k: int) -> int:
        i = k - 2
        return self.beta[i] if 0 <= i < len(self.beta) else 0

    def __add__(self, other: "Signature") -> "Signature":
        L = max(len(self.beta), len(other.beta))
        a = self.beta + (0,) * (L - len(self.beta))
        b = other.beta + (0,) * (L - len(other.beta))
        return Signature(tuple(x + y for x, y in zip(a, b)))

    @property
    def depth(self) -> int:
        return sum((k - 1) * v for k, v in self.items())

    @property
    def length(self) -> int:
        """|beta|, the number of factors of a cycle factorization with this signature."""
        return sum(self.beta)

    def items(self):
        return [(k + 2, v) for k, v in enumerate(self.beta) if v]

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    def padded(self, K: int) -> tuple[int, ...]:
        """(beta_2, ..., beta_K); raises if a longer cycle is present."""
        if len(self.beta) > K - 1:
            raise DomainError(f"signature {self} has cycles longer than {K}")
        return self.beta + (0,) * (K - 1 - len(self.beta))

    def __str__(self):
        return "{" + ", ".join(f"{k}:{v}" for k, v in self.items()) + "}"


def signatures_of_depth(d: int, kmax: int | None = None) -> Iterator[Signature]:
    """All signatures of depth exactly d using cycles of length <= kmax."""
    if kmax is None:
        kmax = d + 1

    def rec(rem, k):
        if rem == 0:
            yield {}
            return
        if k < 2:
            return
        for c in range(rem // (k - 1), -1, -1):
            for rest in rec(rem - c * (k - 1), k - 1):
                out = dict(rest)
                if c:
                    out[k] = c
                yield out

    for m in rec(d, min(kmax, d + 1)):
        yield Signature.from_mapping(m)
