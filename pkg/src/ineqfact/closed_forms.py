"""Closed counting formulas, evaluated exactly.

Negative-index factorials follow the usual conventions
``x_(-k) = 1 / (x+k)_(k)`` (falling) and ``x^(-k) = 1 / (x-k)^(k)`` (rising).
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, prod
from typing import Sequence

from .errors import ConsistencyError, DomainError
from .perm import Signature


def falling(x, k: int) -> Fraction:
    """x (x-1) ... (x-k+1), extended to k < 0 by 1/(x+|k|)_(|k|)."""
    x = Fraction(x)
    if k >= 0:
        return prod((x - i for i in range(k)), start=Fraction(1))
    den = falling(x - k, -k)
    if den == 0:
        raise DomainError(f"falling factorial ({x})_({k}) has a zero denominator")
    return 1 / den


def rising(x, k: int) -> Fraction:
    """x (x+1) ... (x+k-1), extended to k < 0 by 1/(x-|k|)^(|k|)."""
    x = Fraction(x)
    if k >= 0:
        return prod((x + i for i in range(k)), start=Fraction(1))
    den = rising(x + k, -k)
    if den == 0:
        raise DomainError(f"rising factorial ({x})^({k}) has a zero denominator")
    return 1 / den


def gbinom(x, k: int) -> Fraction:
    """Binomial coefficient with arbitrary (rational) upper index."""
    if k < 0:
        return Fraction(0)
    return falling(x, k) / factorial(k)


def _integral(v: Fraction, what: str) -> int:
    if v.denominator != 1:
        raise ConsistencyError(f"{what} evaluated to the non-integer {v}")
    return v.numerator


def _alpha(alpha: Sequence[int]) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if not alpha or min(alpha) < 1:
        raise DomainError(f"{alpha} is not a composition")
    return alpha


def hurwitz(alpha: Sequence[int]) -> int:
    """Minimal transitive transposition factorizations of a class-alpha permutation."""
    alpha = _alpha(alpha)
    n, m = sum(alpha), len(alpha)
    v = Fraction(n) ** (m - 3) * factorial(n + m - 2)
    for a in alpha:
        v *= Fraction(a ** a, factorial(a - 1))
    return _integral(v, f"hurwitz{alpha}")


def _check_full_cycle(n: int, beta: Signature):
    if beta.depth != n - 1:
        raise DomainError(f"signature {beta} has depth {beta.depth}, expected {n - 1}")


def fullcycle_signature(n: int, beta: Signature) -> int:
    """Minimal transitive cycle factorizations of an n-cycle with signature beta."""
    _check_full_cycle(n, beta)
    ell = beta.length
    v = Fraction(n) ** (ell - 1) * factorial(ell)
    for _, b in beta.items():
        v /= factorial(b)
    return _integral(v, f"fullcycle({n}, {beta})")


def springer(n: int, beta: Signature) -> int:
    """Inequivalent minimal transitive cycle factorizations of an n-cycle with signature beta."""
    _check_full_cycle(n, beta)
    ell = beta.length
    v = Fraction(factorial(2 * n + ell - 2), factorial(2 * n - 1))
    for _, b in beta.items():
        v /= factorial(b)
    return _integral(v, f"springer({n}, {beta})")


def eidswick_longyear(n: int) -> int:
    if n < 2:
        raise DomainError("needs n >= 2")
    return _integral(Fraction(comb(3 * n - 3, n - 2), n - 1), f"eidswick_longyear({n})")


def two_part_transpositions(n: int, m: int) -> int:
    """Inequivalent minimal transitive transposition factorizations of class (n, m)."""
    if n < 1 or m < 1:
        raise DomainError("needs n, m >= 1")
    s = sum(comb(3 * n, n - 1 - k) * comb(3 * m, m - 1 - k) for k in range(min(n, m)))
    return _integral(Fraction(2 * n * m, n + m) * s, f"two_part({n}, {m})")


def _pmul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    while len(b) > 1 and b[-1] == 0:
        b = b[:-1]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    return q, a[:len(b) - 1]


def _peval(a: list, r) -> Fraction:
    v = Fraction(0)
    for c in reversed(a):
        v = v * r + c
    return v


def constellation_rational(alpha: Sequence[int]) -> tuple[list, list]:
    """(numerator, denominator) coefficient lists in r, lowest degree first."""
    alpha = _alpha(alpha)
    n, m = sum(alpha), len(alpha)
    num, den = [Fraction(0), Fraction(1)], [Fraction(1)]  # r
    x0 = [Fraction(-n - 1), Fraction(n)]  # (r - 1) n - 1
    if m >= 3:
        for i in range(m - 3):
            num = _pmul(num, [x0[0] - i, x0[1]])
    else:
        for i in range(1, 3 - m + 1):
            den = _pmul(den, [x0[0] + i, x0[1]])
    for a in alpha:
        # a * binom(r a - 1, a)
        num = _pmul(num, [Fraction(a, factorial(a))])
        for i in range(a):
            num = _pmul(num, [Fraction(-1 - i), Fraction(a)])
    return num, den


def constellation_polynomial(alpha: Sequence[int]) -> list:
    """Coefficients in r of the constellation count after cancelling the denominator."""
    num, den = constellation_rational(alpha)
    q, rem = _pdivmod(num, den)
    if any(rem):
        raise ConsistencyError(f"constellation count for {tuple(alpha)} is not a polynomial in r")
    return q


def constellation(alpha: Sequence[int], r: int) -> Fraction:
    """Genus 0 factorizations of a class-alpha permutation into r arbitrary factors.

    The printed expression is a rational function of r whose denominator
    cancels, so the value is taken from the reduced polynomial and every
    integer r is allowed.
    """
    num, den = constellation_rational(alpha)
    q, rem = _pdivmod(num, den)
    if any(rem) and _peval(den, r) == 0:
        raise DomainError(f"constellation{tuple(alpha)} has a pole at r={r}")
    if any(rem):
        return _peval(num, r) / _peval(den, r)
    return _peval(q, r)


def goulden_monotone(alpha: Sequence[int]) -> int:
    """Genus 0 monotone transposition factorizations of a class-alpha permutation."""
    alpha = _alpha(alpha)
    n, m = sum(alpha), len(alpha)
    v = rising(2 * n + 1, m - 3)
    for a in alpha:
        v *= a * comb(2 * a, a)
    return _integral(v, f"goulden_monotone{alpha}")


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


FORMULAS = {
    "hurwitz": hurwitz,
    "fullcycle": fullcycle_signature,
    "springer": springer,
    "eidswick-longyear": eidswick_longyear,
    "two-part": two_part_transpositions,
    "constellation": constellation,
    "goulden": goulden_monotone,
}
