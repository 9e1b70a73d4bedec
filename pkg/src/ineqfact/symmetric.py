"""Symmetric polynomials over any commutative ring of Python values, and randomized checks of three identities.

The helpers only use ``+`` and ``*``, so they accept Fractions as well as
XSeries elements.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from math import prod

from .report import Report


def h(k: int, xs: list):
    """Complete homogeneous symmetric polynomial h_k(xs); zero for k < 0."""
    if k < 0:
        return 0
    # row[j] = h_j of the variables seen so far
    row = [1] + [0] * k
    for x in xs:
        for j in range(1, k + 1):
            row[j] = row[j] + x * row[j - 1]
    return row[k]


def e(k: int, xs: list):
    """Elementary symmetric polynomial e_k(xs)."""
    if k < 0 or k > len(xs):
        return 0
    row = [1] + [0] * k
    for x in xs:
        for j in range(k, 0, -1):
            row[j] = row[j] + x * row[j - 1]
    return row[k]


def schur_two_row(a: int, b: int, xs: list):
    """s_{(a,b)}(xs) = h_a h_b - h_{a+1} h_{b-1}; zero unless a >= b >= 0."""
    if b < 0 or a < b:
        return 0
    return h(a, xs) * h(b, xs) - h(a + 1, xs) * h(b - 1, xs)


def det(rows: list[list]):
    """Leibniz expansion; fine for the 3x3 and 4x4 matrices used here."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        total += sign * prod((rows[i][perm[i]] for i in range(n)), start=Fraction(1))
    return total


def vandermonde(xs: list):
    return prod((xs[i] - xs[j] for i in range(len(xs)) for j in range(i + 1, len(xs))), start=Fraction(1))


class Dual:
    """a + b*eps with eps^2 = 0, for exact first derivatives."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a, self.b = Fraction(a), Fraction(b)

    @staticmethod
    def lift(x):
        return x if isinstance(x, Dual) else Dual(x)

    def __add__(self, o):
        o = Dual.lift(o)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = Dual.lift(o)
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return Dual.lift(o) - self

    def __mul__(self, o):
        o = Dual.lift(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Dual.lift(o)
        return Dual(self.a / o.a, (self.b * o.a - self.a * o.b) / (o.a * o.a))

    def __pow__(self, k: int):
        if k < 0:
            return Dual(1) / self ** (-k)
        out = Dual(1)
        for _ in range(k):
            out = out * self
        return out


def _rand_q(rng: random.Random, lo=-9, hi=9) -> Fraction:
    while True:
        v = Fraction(rng.randint(lo, hi), rng.randint(1, 6))
        if v:
            return v


def _distinct(rng, m):
    while True:
        xs = [_rand_q(rng) for _ in range(m)]
        if len(set(xs)) == m:
            return xs


def umbral_sides(a: dict, s: int, xs: list):
    """Both sides of the h-sum / divided-difference identity for A(t) = sum a_i t^(i-1)."""
    m = len(xs)
    lhs = sum((c * h(i - m + s, xs) for i, c in a.items()), Fraction(0))
    rhs = Fraction(0)
    for i in range(m):
        den = prod((xs[i] - xs[j] for j in range(m) if j != i), start=Fraction(1))
        rhs += sum((c * xs[i] ** (s + j - 1) for j, c in a.items()), Fraction(0)) / den
    return lhs, rhs


def umbral_confluent_sides(a: dict, s: int, xs: list):
    """LHS at x_m = x_1 versus d/dx_1 of the (m-1)-variable right side."""
    m = len(xs) + 1
    lhs = sum((c * h(i - m + s, xs + [xs[0]]) for i, c in a.items()), Fraction(0))
    duals = [Dual(xs[0], 1)] + [Dual(x) for x in xs[1:]]
    rhs = Dual(0)
    for i in range(m - 1):
        # s >= 2 - d keeps every exponent s + j - 1 positive
        num = sum((c * duals[i] ** (s + j - 1) for j, c in a.items()), Dual(0))
        den = Dual(1)
        for j in range(m - 1):
            if j != i:
                den = den * (duals[i] - duals[j])
        rhs = rhs + num / den
    return lhs, rhs.b


def det_sides(p: int, q: int, xs: list):
    m = len(xs)
    rows = [[x ** p for x in xs], [x ** q for x in xs]] + [[x ** r for x in xs] for r in range(m - 3, -1, -1)]
    return det(rows) / vandermonde(xs), schur_two_row(p + 1 - m, q + 2 - m, xs)


def three_case_sides(a: list, b: list, z: list):
    lhs = Fraction(0)
    for i in range(3):
        t = 1 / z[i]
        for j in range(3):
            if j != i:
                t *= (z[i] - z[j]) / ((a[i] - a[j]) * (b[i] - b[j]))
        lhs += t
    Ma = det([[a[i] * z[i] for i in range(3)], z, [1, 1, 1]])
    Mb = det([[b[i] * z[i] for i in range(3)], z, [1, 1, 1]])
    rhs = Ma * Mb / (z[0] * z[1] * z[2] * vandermonde(a) * vandermonde(b))
    return lhs, rhs


def verify_appendix(instances: int = 100, seed: int = 0, max_m: int = 4) -> Report:
    """Randomized exact checks of the h-sum, determinant and three-term identities."""
    rng = random.Random(seed)
    rep = Report("appendix identities")
    for t in range(instances):
        m = rng.randint(1, max_m)
        d = rng.randint(-1, 2)
        a = {i: _rand_q(rng) for i in range(d, d + rng.randint(1, 4))}
        s = rng.randint(1 - d, 3 - d)
        xs = _distinct(rng, m)
        lhs, rhs = umbral_sides(a, s, xs)
        rep.check({"lemma": "umbral", "instance": t, "m": m}, lhs == rhs, lhs=lhs, rhs=rhs)
    for t in range(instances):
        m = rng.randint(2, max_m)
        d = rng.randint(-1, 2)
        a = {i: _rand_q(rng) for i in range(d, d + rng.randint(1, 4))}
        s = rng.randint(2 - d, 4 - d)
        xs = _distinct(rng, m - 1)
        lhs, rhs = umbral_confluent_sides(a, s, xs)
        rep.check({"lemma": "umbral-confluent", "instance": t, "m": m}, lhs == rhs, lhs=lhs, rhs=rhs)
    for t in range(instances):
        m = rng.randint(2, max_m)
        q = rng.randint(max(m - 2, 0), m + 2)
        p = rng.randint(q + 1, q + 4)
        xs = _distinct(rng, m)
        lhs, rhs = det_sides(p, q, xs)
        rep.check({"lemma": "det", "instance": t, "m": m, "p": p, "q": q}, lhs == rhs, lhs=lhs, rhs=rhs)
    for t in range(instances):
        a, b, z = _distinct(rng, 3), _distinct(rng, 3), _distinct(rng, 3)
        lhs, rhs = three_case_sides(a, b, z)
        rep.check({"lemma": "3case", "instance": t}, lhs == rhs, lhs=lhs, rhs=rhs)
    return rep
