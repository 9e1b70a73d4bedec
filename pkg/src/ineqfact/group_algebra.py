"""Truncated group algebra Q S_n [[q]] and exact checks of the q- and u-identities.

An element maps permutations (one-line image tuples) to polynomials stored
as {exponent tuple: coefficient}.  Each variable has a weight; terms whose
weighted degree exceeds ``bound`` are dropped.  For q_2..q_n the weight of
q_k is k-1, so the weighted degree is the depth.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .canonical import canonical_form
from .enumeration import _group, factor_table
from .errors import DomainError
from .factorization import GeneralFactorization
from .perm import Cycle, Permutation, all_perms
from .report import Report


def _poly_mul(a: dict, b: dict, weights: tuple, bound: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        wa = sum(w * e for w, e in zip(weights, ea))
        for eb, cb in b.items():
            if wa + sum(w * e for w, e in zip(weights, eb)) > bound:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _poly_add_into(target: dict, src: dict, scale=1):
    for e, c in src.items():
        v = target.get(e, 0) + c * scale
        if v:
            target[e] = v
        else:
            target.pop(e, None)


def _compose(p: tuple, q: tuple) -> tuple:
    return tuple(p[j - 1] for j in q)


@dataclass(frozen=True)
class AlgebraElement:
    n: int
    weights: tuple  # weight of each polynomial variable
    bound: int
    coeffs: tuple  # sorted ((images, ((exps), coeff), ...)), ...)

    @classmethod
    def from_dict(cls, n: int, weights: tuple, bound: int, d: dict) -> "AlgebraElement":
        items = []
        for perm, poly in d.items():
            poly = {e: c for e, c in poly.items()
                    if c and sum(w * x for w, x in zip(weights, e)) <= bound}
            if poly:
                items.append((tuple(perm), tuple(sorted(poly.items()))))
        return cls(n, tuple(weights), bound, tuple(sorted(items)))

    @classmethod
    def identity(cls, n: int, weights: tuple = (), bound: int = 0) -> "AlgebraElement":
        zero = tuple(0 for _ in weights)
        return cls.from_dict(n, weights, bound, {tuple(range(1, n + 1)): {zero: 1}})

    def as_dict(self) -> dict:
        return {p: dict(poly) for p, poly in self.coeffs}

    def coefficient(self, perm: Permutation | tuple) -> dict:
        key = perm.images if isinstance(perm, Permutation) else tuple(perm)
        return self.as_dict().get(key, {})

    def _check(self, other: "AlgebraElement"):
        if self.n != other.n or self.weights != other.weights or self.bound != other.bound:
            raise DomainError("algebra elements differ in n, variables or truncation")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        d = self.as_dict()
        for p, poly in other.coeffs:
            _poly_add_into(d.setdefault(p, {}), dict(poly))
        return AlgebraElement.from_dict(self.n, self.weights, self.bound, d)

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement.from_dict(self.n, self.weights, self.bound,
                                        {p: {e: v * c for e, v in poly} for p, poly in self.coeffs})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return ga_multiply(self, other)

    def is_zero(self) -> bool:
        return not self.coeffs

    def first_difference(self, other: "AlgebraElement"):
        """(permutation, monomial, self coeff, other coeff) of the first mismatch, or None."""
        a, b = self.as_dict(), other.as_dict()
        for p in sorted(set(a) | set(b)):
            pa, pb = a.get(p, {}), b.get(p, {})
            for e in sorted(set(pa) | set(pb)):
                if pa.get(e, 0) != pb.get(e, 0):
                    return (str(Permutation(p, check=False)), list(e), pa.get(e, 0), pb.get(e, 0))
        return None


def ga_multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._check(b)
    out: dict = {}
    for p, pa in a.coeffs:
        for q, pb in b.coeffs:
            prod_poly = _poly_mul(dict(pa), dict(pb), a.weights, a.bound)
            if prod_poly:
                _poly_add_into(out.setdefault(_compose(p, q), {}), prod_poly)
    return AlgebraElement.from_dict(a.n, a.weights, a.bound, out)


def ga_invert(a: AlgebraElement) -> AlgebraElement:
    """Inverse modulo the truncation; the weight-0 part must be c times the identity, c != 0."""
    ident = tuple(range(1, a.n + 1))
    zero = tuple(0 for _ in a.weights)
    c = 0
    rest: dict = {}
    for p, poly in a.coeffs:
        for e, v in poly:
            if sum(w * x for w, x in zip(a.weights, e)) == 0:
                if p != ident or e != zero:
                    raise DomainError("the weight-0 part is not a multiple of the identity")
                c = v
            else:
                rest.setdefault(p, {})[e] = v
    if c == 0:
        raise DomainError("the identity coefficient has no invertible constant term")
    inv_c = Fraction(1) / Fraction(c)
    # a = c (1 + r) with r = rest / c;  a^-1 = c^-1 sum_k (-r)^k
    minus_r = AlgebraElement.from_dict(a.n, a.weights, a.bound,
                                       {p: {e: -v * inv_c for e, v in poly.items()} for p, poly in rest.items()})
    one = AlgebraElement.identity(a.n, a.weights, a.bound)
    out, term = one, one
    if min(a.weights, default=0) <= 0 and rest:
        raise DomainError("inversion needs positive variable weights")
    for _ in range(a.bound):
        term = term * minus_r
        if term.is_zero():
            break
        out = out + term
    return out.scale(inv_c)


# ---------------------------------------------------------------------------
# word enumeration shared by the identity checks

def _q_weights(n: int) -> tuple:
    return tuple(range(1, n))  # q_2 .. q_n


def _words(n: int, kind: str, bound: int, canonical: bool = False, monotone: bool = False) -> Counter:
    """Counter {(product images, length, signature, transitive): count} over words of depth <= bound."""
    G = _group(n)
    factors = factor_table(n, kind)
    out: Counter = Counter()
    sig0 = (0,) * max(n - 1, 0)

    def rec(prod0, B, length, sig, part, sufmax, last):
        prod1 = tuple(x + 1 for x in prod0)
        out[(prod1, length, sig, max(part, default=0) == 0)] += 1
        for f in factors:
            if f.depth > B or (monotone and f.max < last):
                continue
            if canonical:
                (c,) = f.cycles
                if min(sufmax[x] for x in c) >= f.max:
                    continue
                nsuf = tuple(0 if f.mask >> x & 1 else max(v, f.max) for x, v in enumerate(sufmax))
            else:
                nsuf = sufmax
            nprod = tuple(prod0[j] for j in f.perm)  # prod0 * f
            rec(nprod, B - f.depth, length + 1, tuple(a + b for a, b in zip(sig, f.sig)),
                G.join(part, f.cycles), nsuf, f.max)

    rec(tuple(range(n)), bound, 0, sig0, tuple(range(n)), (0,) * n, 0)
    return out


def _genus(n: int, perm: tuple, depth: int) -> int:
    ncyc = Permutation(perm, check=False).num_cycles()
    twice = depth - n - ncyc + 2
    return twice // 2


def _sig_depth(sig: tuple) -> int:
    return sum((k + 1) * b for k, b in enumerate(sig))


def _element_from_words(n: int, words: Counter, bound: int, weight: str,
                        transitive_genus: int | None = None) -> AlgebraElement:
    """Sum of sign * monomial * product over the recorded words.

    ``weight="q"``: (-1)^len q^sig.  ``weight="u-ineq"``: (-1)^len (-u)^depth.
    ``weight="u-mono"``: u^len.
    """
    if weight == "q":
        weights = _q_weights(n)
    else:
        weights = (1,)
    d: dict = {}
    for (perm, length, sig, trans), cnt in words.items():
        depth = _sig_depth(sig)
        if transitive_genus is not None:
            if not trans or _genus(n, perm, depth) != transitive_genus:
                continue
        if weight == "q":
            e, c = sig, (-1) ** length
        elif weight == "u-ineq":
            e, c = (depth,), (-1) ** length * (-1) ** depth
        else:
            e, c = (length,), 1
        poly = d.setdefault(perm, {})
        poly[e] = poly.get(e, 0) + c * cnt
    return AlgebraElement.from_dict(n, weights, bound, d)


def signature_sum(n: int, bound: int) -> AlgebraElement:
    """sum over sigma in S_n of q^{beta(sigma)} sigma."""
    d = {}
    for p in all_perms(n):
        b = [0] * max(n - 1, 0)
        for c in p.cycles():
            b[len(c) - 2] += 1
        d[p.images] = {tuple(b): 1}
    return AlgebraElement.from_dict(n, _q_weights(n), bound, d)


def specialize_q_to_u(a: AlgebraElement) -> AlgebraElement:
    """Substitute q_k = (-u)^(k-1)."""
    d = {}
    for p, poly in a.coeffs:
        out = d.setdefault(p, {})
        for e, c in poly:
            depth = sum(w * x for w, x in zip(a.weights, e))
            out[(depth,)] = out.get((depth,), 0) + c * (-1) ** depth
    return AlgebraElement.from_dict(a.n, (1,), a.bound, d)


def _max_genus(n: int, bound: int) -> int:
    return max(0, bound // 2)


def verify_qidentity(n: int, degree_bound: int) -> Report:
    """Inverse of the signature sum versus the signed proper and inequivalent sums."""
    if n > 4:
        raise DomainError("verify_qidentity is bounded to n <= 4")
    rep = Report(f"q-identity n={n} degree<={degree_bound}")
    inv = ga_invert(signature_sum(n, degree_bound))
    proper_words = _words(n, "arbitrary-non-identity", degree_bound)
    ineq_words = _words(n, "cycles", degree_bound, canonical=True)
    proper = _element_from_words(n, proper_words, degree_bound, "q")
    ineq = _element_from_words(n, ineq_words, degree_bound, "q")
    one = AlgebraElement.identity(n, inv.weights, degree_bound)
    sig = signature_sum(n, degree_bound)
    rep.check("two-sided inverse", (sig * inv) == one and (inv * sig) == one)
    rep.check("inverse = proper", inv == proper, first_difference=inv.first_difference(proper))
    rep.check("proper = inequivalent", proper == ineq, first_difference=proper.first_difference(ineq))
    ident = tuple(range(1, n + 1))
    zero = tuple(0 for _ in inv.weights)
    rep.check("identity constant term", inv.coefficient(ident).get(zero) == proper.coefficient(ident).get(zero)
              == ineq.coefficient(ident).get(zero) == 1)
    for g in range(_max_genus(n, degree_bound) + 1):
        pg = _element_from_words(n, proper_words, degree_bound, "q", g)
        ig = _element_from_words(n, ineq_words, degree_bound, "q", g)
        rep.check({"restricted": "transitive", "genus": g}, pg == ig, first_difference=pg.first_difference(ig))
    return rep


def verify_uidentity(n: int, degree_bound: int) -> Report:
    """Signed monotone sum versus the signed inequivalent sum in Q S_n[[u]]."""
    if n > 4:
        raise DomainError("verify_uidentity is bounded to n <= 4")
    rep = Report(f"u-identity n={n} degree<={degree_bound}")
    mono_words = _words(n, "transpositions", degree_bound, monotone=True)
    ineq_words = _words(n, "cycles", degree_bound, canonical=True)
    lhs = _element_from_words(n, mono_words, degree_bound, "u-mono")
    rhs = _element_from_words(n, ineq_words, degree_bound, "u-ineq")
    rep.check("monotone = inequivalent", lhs == rhs, first_difference=lhs.first_difference(rhs))
    inv_u = specialize_q_to_u(ga_invert(signature_sum(n, degree_bound)))
    rep.check("q-inverse specialized at q_k=(-u)^(k-1)", inv_u == rhs, first_difference=inv_u.first_difference(rhs))
    for g in range(_max_genus(n, degree_bound) + 1):
        lg = _element_from_words(n, mono_words, degree_bound, "u-mono", g)
        rg = _element_from_words(n, ineq_words, degree_bound, "u-ineq", g)
        rep.check({"restricted": "transitive", "genus": g}, lg == rg, first_difference=lg.first_difference(rg))
    return rep


def jucys_murphy(n: int, k: int) -> AlgebraElement:
    d = {}
    for i in range(1, k):
        d[Cycle((i, k)).to_perm(n).images] = {(): 1}
    return AlgebraElement.from_dict(n, (), 0, d)


def jm_elementary_check(n: int) -> Report:
    """e_k(J_2, ..., J_n) equals the sum of all permutations of depth k."""
    if n > 5:
        raise DomainError("jm_elementary_check is bounded to n <= 5")
    rep = Report(f"Jucys-Murphy n={n}")
    one = AlgebraElement.identity(n)
    zero = AlgebraElement.from_dict(n, (), 0, {})
    # row[k] = e_k of the J's processed so far
    row = [one] + [zero] * (n - 1)
    for j in range(2, n + 1):
        J = jucys_murphy(n, j)
        for k in range(n - 1, 0, -1):
            row[k] = row[k] + row[k - 1] * J
    for k in range(n):
        expected = AlgebraElement.from_dict(
            n, (), 0, {p.images: {(): 1} for p in all_perms(n) if p.n - p.num_cycles() == k})
        rep.check({"n": n, "k": k}, row[k] == expected, first_difference=row[k].first_difference(expected))
    return rep


def projection_check(n: int, degree_bound: int) -> Report:
    """Signed proper factorizations projecting to each inequivalent class sum to the class sign."""
    rep = Report(f"projection n={n} degree<={degree_bound}")
    sums: Counter = Counter()
    members: Counter = Counter()
    for f in _proper_factorizations(n, degree_bound):
        key = canonical_form(f.cycle_word())
        sums[key] += (-1) ** len(f)
        members[key] += 1
    for cls in sorted(sums, key=lambda c: (len(c), str(c))):
        rep.check(str(cls), sums[cls] == (-1) ** len(cls), signed_sum=sums[cls], proper_members=members[cls])
    return rep


def _proper_factorizations(n: int, bound: int) -> Iterable[GeneralFactorization]:
    factors = factor_table(n, "arbitrary-non-identity")
    word: list = []

    def rec(B):
        yield GeneralFactorization(n, tuple(f.obj for f in word))
        for f in factors:
            if f.depth <= B:
                word.append(f)
                yield from rec(B - f.depth)
                word.pop()

    yield from rec(bound)


def projection_example() -> dict:
    """The five proper factorizations projecting to (1 5)(2 4)(3 5) in S_5 and their signed sum."""
    from .factorization import CycleFactorization
    target = CycleFactorization.of(5, (1, 5), (2, 4), (3, 5))
    key = canonical_form(target)
    found = []
    for f in _proper_factorizations(5, 3):
        if f.factors and len(f.cycle_word()) == 3 and canonical_form(f.cycle_word()) == key:
            found.append(f)
    return {"members": [str(f) for f in found], "count": len(found),
            "signed_sum": sum((-1) ** len(f) for f in found)}
