"""Exhaustive factorization search and the counting functions built on it.

Factors are placed left to right.  The search keeps the residual
``(s_1 ... s_j)^{-1} * target`` and the orbit partition of the factors
placed so far, and prunes with two facts: a residual rho needs at least
``depth(rho)`` more depth (with matching parity), and joining ``c`` blocks
of ``partition v cycles(rho)`` costs ``2(c - 1)`` more.

Internally permutations are 0-based image tuples.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as _itperms
from math import comb, factorial
from typing import Iterator, Sequence

from .canonical import canonical_form
from .errors import DomainError, ResourceBoundError
from .factorization import CycleFactorization, GeneralFactorization
from .perm import (Cycle, Permutation, Signature, all_cycles, compositions,
                   representative)
from .report import Report

FACTOR_KINDS = ("cycles", "transpositions", "k-cycles", "arbitrary-non-identity", "arbitrary")

# n above these needs force=True
MAX_N = {"cycles": 6, "transpositions": 6, "k-cycles": 6,
         "arbitrary-non-identity": 5, "arbitrary": 5}


# ---------------------------------------------------------------------------
# small-group tables

def _cycles0(p: tuple) -> tuple:
    n = len(p)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        c = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            c.append(j)
            seen[j] = True
            j = p[j]
        out.append(tuple(c))
    return tuple(out)


def _inverse0(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _canon_labels(lab) -> tuple:
    seen: dict = {}
    return tuple(seen.setdefault(v, len(seen)) for v in lab)


@dataclass(frozen=True)
class _Factor:
    key: tuple          # ordering / serialization key
    perm: tuple         # 0-based images
    inv: tuple
    depth: int
    cycles: tuple       # nontrivial 0-based cycles
    sig: tuple          # (beta_2, ..., beta_n)
    mask: int           # support bitmask
    max: int            # largest moved symbol, 1-based (0 for identity)
    obj: object         # Cycle or Permutation


class _Group:
    """Lookup tables for S_n shared by all searches of that degree."""

    def __init__(self, n: int):
        self.n = n
        self.identity = tuple(range(n))
        self._depth: dict = {}
        self._cyc: dict = {}
        self._join: dict = {}
        self._ncomp: dict = {}

    def depth(self, p: tuple) -> int:
        d = self._depth.get(p)
        if d is None:
            cs = _cycles0(p)
            self._cyc[p] = tuple(c for c in cs if len(c) > 1)
            d = self._depth[p] = self.n - len(cs)
        return d

    def cycles(self, p: tuple) -> tuple:
        if p not in self._cyc:
            self.depth(p)
        return self._cyc[p]

    def join(self, part: tuple, cycles: tuple) -> tuple:
        key = (part, cycles)
        out = self._join.get(key)
        if out is None:
            lab = list(part)
            for c in cycles:
                t = lab[c[0]]
                for x in c[1:]:
                    s = lab[x]
                    if s != t:
                        lab = [t if v == s else v for v in lab]
            out = self._join[key] = _canon_labels(lab)
        return out

    def components(self, part: tuple, rho: tuple) -> int:
        """Number of blocks of ``part`` joined with the cycles of ``rho``."""
        key = (part, rho)
        c = self._ncomp.get(key)
        if c is None:
            c = self._ncomp[key] = max(self.join(part, self.cycles(rho))) + 1
        return c


@lru_cache(maxsize=None)
def _group(n: int) -> _Group:
    return _Group(n)


def _sig_of_lengths(lengths, n) -> tuple:
    b = [0] * max(n - 1, 0)
    for L in lengths:
        if L >= 2:
            b[L - 2] += 1
    return tuple(b)


@lru_cache(maxsize=None)
def factor_table(n: int, kind: str, k: int | None = None) -> tuple:
    """Allowed factors for ``kind``, sorted by serialization."""
    if kind not in FACTOR_KINDS:
        raise DomainError(f"unknown factor kind {kind!r}")
    out = []
    if kind in ("cycles", "transpositions", "k-cycles"):
        length = {"cycles": None, "transpositions": 2, "k-cycles": k}[kind]
        if kind == "k-cycles" and (k is None or k < 2):
            raise DomainError("k-cycles needs k >= 2")
        if length is not None and length > n:
            return ()
        for c in all_cycles(n, length):
            p = c.to_perm(n)
            perm = tuple(x - 1 for x in p.images)
            cyc0 = tuple(x - 1 for x in c.symbols)
            out.append(_Factor(key=(c.symbols,), perm=perm, inv=_inverse0(perm),
                               depth=len(c) - 1, cycles=(cyc0,),
                               sig=_sig_of_lengths([len(c)], n),
                               mask=sum(1 << x for x in cyc0), max=c.max, obj=c))
    else:
        for images in _itperms(range(n)):
            p = Permutation(tuple(x + 1 for x in images), check=False)
            if kind == "arbitrary-non-identity" and p.is_identity():
                continue
            cyc = tuple(tuple(x - 1 for x in c) for c in p.cycles())
            out.append(_Factor(key=tuple(p.cycles()), perm=tuple(images),
                               inv=_inverse0(tuple(images)),
                               depth=sum(len(c) - 1 for c in cyc), cycles=cyc,
                               sig=_sig_of_lengths([len(c) for c in cyc], n),
                               mask=sum(1 << x for c in cyc for x in c),
                               max=max((x + 1 for c in cyc for x in c), default=0), obj=p))
    out.sort(key=lambda f: f.key)
    return tuple(out)


# ---------------------------------------------------------------------------
# search specification

@dataclass(frozen=True)
class EnumSpec:
    """What to enumerate.

    Exactly one of ``signature``, ``depth``, ``length`` constrains the
    factorizations.  A genus constraint requires ``transitive_only``.
    """

    target: Permutation
    factor_kind: str = "cycles"
    signature: Signature | None = None
    depth: int | None = None
    length: int | None = None
    transitive_only: bool = False
    genus: int | None = None
    k: int | None = None
    canonical_only: bool = False
    monotone_only: bool = False

    def __post_init__(self):
        if self.factor_kind not in FACTOR_KINDS:
            raise DomainError(f"unknown factor kind {self.factor_kind!r}")
        given = [x is not None for x in (self.signature, self.depth, self.length)]
        if sum(given) != 1:
            raise DomainError("exactly one of signature, depth, length must be given")
        if self.genus is not None:
            if not self.transitive_only:
                raise DomainError("a genus constraint requires transitive_only")
            if self.genus < 0:
                raise DomainError("genus must be nonnegative")
            d = self.genus_depth
            if self.depth is not None and self.depth != d:
                raise DomainError(f"depth {self.depth} is inconsistent with genus {self.genus}")
            if self.signature is not None and self.signature.depth != d:
                raise DomainError(f"signature {self.signature} is inconsistent with genus {self.genus}")
        if self.signature is not None and self.factor_kind in ("arbitrary", "arbitrary-non-identity"):
            raise DomainError("signature constraints apply to cycle factor kinds")
        if self.factor_kind == "arbitrary" and self.length is None:
            raise DomainError("factorizations allowing identity factors need a length constraint")
        if self.canonical_only and self.factor_kind in ("arbitrary", "arbitrary-non-identity"):
            raise DomainError("canonical forms are defined for cycle factorizations")
        if self.monotone_only and self.factor_kind != "transpositions":
            raise DomainError("monotone factorizations are transposition factorizations")

    @property
    def n(self) -> int:
        return self.target.n

    @property
    def genus_depth(self) -> int | None:
        if self.genus is None:
            return None
        return self.n + self.target.num_cycles() - 2 + 2 * self.genus

    @property
    def exact_depth(self) -> int | None:
        if self.depth is not None:
            return self.depth
        if self.signature is not None:
            return self.signature.depth
        return self.genus_depth


def check_bounds(n: int, kind: str, force: bool = False):
    if not force and n > MAX_N[kind]:
        raise ResourceBoundError(f"n={n} exceeds the desk-scale bound {MAX_N[kind]} for {kind} factors")


class _Search:
    def __init__(self, spec: EnumSpec):
        self.spec = spec
        n = self.n = spec.n
        self.G = _group(n)
        self.factors = factor_table(n, spec.factor_kind, spec.k)
        self.target = tuple(x - 1 for x in spec.target.images)
        self.D = spec.exact_depth
        self.R = spec.length
        self.sig = None
        self.impossible = False
        if spec.signature is not None:
            if len(spec.signature.beta) > max(n - 1, 0):
                self.impossible = True
            else:
                self.sig = spec.signature.padded(n) if n >= 2 else ()
        self.maxdepth = max((f.depth for f in self.factors), default=0)
        self.mindepth = min((f.depth for f in self.factors), default=0)
        self.trans = spec.transitive_only
        self.start_part = tuple(range(n))

    def feasible(self, rho, part, B, rlen) -> bool:
        G = self.G
        d = G.depth(rho)
        need = d
        if self.trans:
            need += 2 * (G.components(part, rho) - 1)
        if B is not None:
            if B < need or (B - d) & 1:
                return False
            if rlen is not None and (rlen * self.maxdepth < B or rlen * self.mindepth > B):
                return False
        elif rlen is not None and rlen * self.maxdepth < need:
            return False
        return True

    def done(self, rho, part, B, rlen) -> bool:
        if B not in (None, 0) or rlen not in (None, 0):
            return False
        if rho != self.G.identity:
            return False
        return not self.trans or self.n == 0 or max(part) == 0

    def run(self, first: int | None = None) -> Iterator[tuple]:
        """Yield tuples of _Factor.  ``first`` pins the first factor's index."""
        if self.impossible:
            return
        spec = self.spec
        G = self.G
        factors = self.factors
        canonical = spec.canonical_only
        monotone = spec.monotone_only
        word: list = []
        masks: list = []
        maxes: list = []
        sig = list(self.sig) if self.sig is not None else None

        def ok_canonical(f) -> bool:
            # trace-minimal words are prefix closed; reject f if some factor after the
            # last one meeting f is disjoint from f and has a larger maximum
            for j in range(len(masks) - 1, -1, -1):
                if masks[j] & f.mask:
                    return True
                if maxes[j] > f.max:
                    return False
            return True

        def rec(rho, part, B, rlen):
            if self.done(rho, part, B, rlen):
                yield tuple(word)
            if rlen == 0 or B == 0 and spec.factor_kind != "arbitrary":
                return
            if B is None and rlen is None:
                return
            choices = factors if not (first is not None and not word) else (factors[first],)
            for f in choices:
                if B is not None and f.depth > B:
                    continue
                if sig is not None and any(s > r for s, r in zip(f.sig, sig)):
                    continue
                if canonical and not ok_canonical(f):
                    continue
                if monotone and maxes and f.max < maxes[-1]:
                    continue
                nrho = tuple(f.inv[x] for x in rho)
                npart = G.join(part, f.cycles) if self.trans else part
                nB = None if B is None else B - f.depth
                nr = None if rlen is None else rlen - 1
                if not self.feasible(nrho, npart, nB, nr):
                    continue
                word.append(f)
                masks.append(f.mask)
                maxes.append(f.max)
                if sig is not None:
                    for i, s in enumerate(f.sig):
                        sig[i] -= s
                yield from rec(nrho, npart, nB, nr)
                if sig is not None:
                    for i, s in enumerate(f.sig):
                        sig[i] += s
                word.pop()
                masks.pop()
                maxes.pop()

        if not self.feasible(self.target, self.start_part, self.D, self.R):
            return
        yield from rec(self.target, self.start_part, self.D, self.R)

    def wrap(self, word):
        n = self.n
        if self.spec.factor_kind in ("arbitrary", "arbitrary-non-identity"):
            return GeneralFactorization(n, tuple(f.obj for f in word))
        return CycleFactorization(n, tuple(f.obj for f in word))


def _run_chunk(args):
    spec, first = args
    s = _Search(spec)
    return [s.wrap(w) for w in s.run(first)]


def enumerate_factorizations(spec: EnumSpec, force: bool = False, jobs: int = 1):
    """Stream every factorization matching ``spec`` once, in lexicographic order.

    With ``jobs > 1`` the search is split by first factor across processes;
    the output order and content do not depend on ``jobs``.
    """
    check_bounds(spec.n, spec.factor_kind, force)
    s = _Search(spec)
    if jobs <= 1 or not s.factors:
        for w in s.run():
            yield s.wrap(w)
        return
    # the empty factorization sorts first
    if s.done(s.target, s.start_part, s.D, s.R):
        yield s.wrap(())
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for chunk in ex.map(_run_chunk, [(spec, i) for i in range(len(s.factors))]):
            yield from (f for f in chunk if len(f) > 0)


def count_words(spec: EnumSpec, force: bool = False) -> Counter:
    """Counter {(length, signature tuple): count} over the words of ``spec``."""
    check_bounds(spec.n, spec.factor_kind, force)
    s = _Search(spec)
    out: Counter = Counter()
    n = s.n
    for w in s.run():
        sig = [0] * max(n - 1, 0)
        for f in w:
            for i, v in enumerate(f.sig):
                sig[i] += v
        out[(len(w), tuple(sig))] += 1
    return out


# ---------------------------------------------------------------------------
# memoized transfer counts (ordinary and proper factorizations)

class _TransferCounter:
    """Counts factorizations by dynamic programming over (residual, partition, budget).

    ``track`` selects the key of the returned counters: "signature" keys by
    (beta_2, ..., beta_n), "length" keys by number of factors.
    """

    def __init__(self, n: int, kind: str, track: str, transitive: bool,
                 monotone: bool = False, k: int | None = None, canonical: bool = False):
        self.n = n
        self.canonical = canonical
        self.G = _group(n)
        self.factors = factor_table(n, kind, k)
        self.track = track
        self.trans = transitive
        self.monotone = monotone
        self.memo: dict = {}
        zero = (0,) * max(n - 1, 0)
        self.unit = Counter({zero if track == "signature" else 0: 1})

    def count(self, rho: tuple, part: tuple, B: int, last=0) -> Counter:
        # ``last`` is the previous maximum (monotone) or the suffix-maximum
        # vector (canonical): for each symbol, the largest factor maximum
        # placed after the last factor moving that symbol
        key = (rho, part, B, last)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        G = self.G
        out: Counter = Counter()
        if B == 0:
            if rho == G.identity and (not self.trans or max(part, default=0) == 0):
                out = self.unit
        else:
            for f in self.factors:
                if f.depth > B or (self.monotone and f.max < last):
                    continue
                if self.canonical:
                    (c,) = f.cycles
                    if min(last[x] for x in c) > f.max:
                        continue
                nrho = tuple(f.inv[x] for x in rho)
                nB = B - f.depth
                d = G.depth(nrho)
                if nB < d or (nB - d) & 1:
                    continue
                npart = G.join(part, f.cycles) if self.trans else part
                if self.trans and nB < d + 2 * (G.components(npart, nrho) - 1):
                    continue
                if self.monotone:
                    nlast = f.max
                elif self.canonical:
                    m, mask = f.max, f.mask
                    nlast = tuple(0 if mask >> x & 1 else (v if v > m else m)
                                  for x, v in enumerate(last))
                else:
                    nlast = 0
                sub = self.count(nrho, npart, nB, nlast)
                if not sub:
                    continue
                if self.track == "signature":
                    fs = f.sig
                    for key2, v in sub.items():
                        out[tuple(a + b for a, b in zip(key2, fs))] += v
                else:
                    for key2, v in sub.items():
                        out[key2 + 1] += v
        self.memo[key] = out
        return out

    def table(self, target: Permutation, depth: int) -> Counter:
        rho = tuple(x - 1 for x in target.images)
        start = (0,) * self.n if self.canonical else 0
        return self.count(rho, tuple(range(self.n)), depth, start)


@lru_cache(maxsize=None)
def _transfer(n: int, kind: str, track: str, transitive: bool, monotone: bool = False,
              k: int | None = None, canonical: bool = False) -> _TransferCounter:
    return _TransferCounter(n, kind, track, transitive, monotone, k, canonical)


def genus_depth(alpha: Sequence[int], g: int) -> int:
    return sum(alpha) + len(alpha) - 2 + 2 * g


def _check_alpha(alpha, kind, force):
    alpha = tuple(int(a) for a in alpha)
    if not alpha or min(alpha) < 1:
        raise DomainError(f"{alpha} is not a composition")
    check_bounds(sum(alpha), kind, force)
    return alpha


@lru_cache(maxsize=None)
def ordinary_table(alpha: tuple, g: int, kind: str = "cycles", k: int | None = None,
                   force: bool = False) -> Counter:
    """{signature tuple: number of genus g factorizations of the class-alpha representative}."""
    alpha = _check_alpha(alpha, kind, force)
    n = sum(alpha)
    tc = _transfer(n, kind, "signature", True, False, k)
    return Counter(tc.table(representative(alpha), genus_depth(alpha, g)))


@lru_cache(maxsize=None)
def proper_table(alpha: tuple, g: int, force: bool = False) -> Counter:
    """{length r: P_g(alpha, r)}."""
    alpha = _check_alpha(alpha, "arbitrary-non-identity", force)
    tc = _transfer(sum(alpha), "arbitrary-non-identity", "length", True)
    return Counter(tc.table(representative(alpha), genus_depth(alpha, g)))


@lru_cache(maxsize=None)
def inequivalent_table(alpha: tuple, g: int, kind: str = "cycles", k: int | None = None,
                       force: bool = False) -> Counter:
    """{(length, signature tuple): number of inequivalent genus g factorizations}.

    Counts trace-minimal words, so each class is met exactly once.
    """
    alpha = _check_alpha(alpha, kind, force)
    tc = _transfer(sum(alpha), kind, "signature", True, False, k, canonical=True)
    tab = tc.table(representative(alpha), genus_depth(alpha, g))
    return Counter({(sum(sig), sig): v for sig, v in tab.items()})


@lru_cache(maxsize=None)
def inequivalent_table_dfs(alpha: tuple, g: int, kind: str = "cycles", k: int | None = None,
                           force: bool = False) -> Counter:
    """Same table by streaming every trace-minimal word (slow; a test oracle)."""
    alpha = _check_alpha(alpha, kind, force)
    spec = EnumSpec(representative(alpha), kind, depth=genus_depth(alpha, g),
                    transitive_only=True, genus=g, k=k, canonical_only=True)
    return count_words(spec, force=True)


def _sig_key(beta: Signature, n: int) -> tuple | None:
    if len(beta.beta) > max(n - 1, 0):
        return None
    return beta.padded(n) if n >= 2 else ()


def count_inequivalent(alpha, beta: Signature, g: int = 0, force: bool = False) -> int:
    """Number of inequivalent genus g cycle factorizations with signature beta of a class-alpha permutation."""
    alpha = tuple(alpha)
    if beta.depth != genus_depth(alpha, g):
        return 0
    key = _sig_key(beta, sum(alpha))
    if key is None:
        return 0
    tab = inequivalent_table(alpha, g, force=force)
    return tab.get((beta.length, key), 0)


def count_inequivalent_dedup(alpha, beta: Signature, g: int = 0, force: bool = False) -> int:
    """Same count by enumerating ordinary factorizations and hashing canonical forms."""
    alpha = _check_alpha(alpha, "cycles", force)
    if beta.depth != genus_depth(alpha, g):
        return 0
    spec = EnumSpec(representative(alpha), "cycles", signature=beta, transitive_only=True, genus=g)
    return len({canonical_form(f) for f in enumerate_factorizations(spec, force=force)})


def count_ordinary_cycle(alpha, beta: Signature, g: int = 0, force: bool = False) -> int:
    alpha = tuple(alpha)
    if beta.depth != genus_depth(alpha, g):
        return 0
    key = _sig_key(beta, sum(alpha))
    if key is None:
        return 0
    return ordinary_table(alpha, g, force=force).get(key, 0)


def count_transpositions(alpha, g: int = 0, force: bool = False) -> int:
    """Genus g transposition factorizations of a class-alpha permutation."""
    alpha = tuple(alpha)
    n = sum(alpha)
    d = genus_depth(alpha, g)
    return count_ordinary_cycle(alpha, Signature((d,)) if n >= 2 else Signature(), g, force)


@lru_cache(maxsize=None)
def count_monotone(alpha, g: int = 0, force: bool = False) -> int:
    """Genus g monotone transposition factorizations of a class-alpha permutation."""
    alpha = _check_alpha(alpha, "transpositions", force)
    n = sum(alpha)
    tc = _transfer(n, "transpositions", "length", True, monotone=True)
    return sum(tc.table(representative(alpha), genus_depth(alpha, g)).values())


def count_proper(alpha, r: int, g: int = 0, force: bool = False) -> int:
    """P_g(alpha, r): genus g factorizations of length r with no identity factor."""
    return proper_table(tuple(alpha), g, force).get(r, 0)


def _binom(r: int, k: int) -> Fraction:
    """Generalized binomial r(r-1)...(r-k+1)/k! for any integer r."""
    num = 1
    for i in range(k):
        num *= r - i
    return Fraction(num, factorial(k))


def count_all(alpha, r: int, g: int = 0, force: bool = False) -> Fraction:
    """C_g(alpha, r) = sum_k binom(r, k) P_g(alpha, k), valid for every integer r."""
    alpha = tuple(alpha)
    kmax = genus_depth(alpha, g)
    tab = proper_table(alpha, g, force)
    return sum((_binom(r, k) * tab.get(k, 0) for k in range(kmax + 1)), Fraction(0))


def count_all_direct(alpha, r: int, g: int = 0, force: bool = False) -> int:
    """C_g(alpha, r) for r >= 0 by enumerating factorizations with identity factors allowed."""
    if r < 0:
        raise DomainError("direct enumeration needs r >= 0")
    spec = EnumSpec(representative(alpha), "arbitrary", length=r, transitive_only=True, genus=g)
    return sum(1 for _ in enumerate_factorizations(spec, force=force))


def verify_connections(alpha, g: int = 0, force: bool = False) -> Report:
    """Compare the four quantities linking monotone, inequivalent, proper and all factorizations."""
    alpha = tuple(alpha)
    n, m = sum(alpha), len(alpha)
    mono = (-1) ** (n + m) * count_monotone(alpha, g, force)
    itab = inequivalent_table(alpha, g, force=force)
    ineq = sum((-1) ** r * v for (r, _), v in itab.items())
    prop = sum((-1) ** r * v for r, v in proper_table(alpha, g, force).items())
    poly = count_all(alpha, -1, g, force)
    rep = Report(f"connections alpha={alpha} g={g}")
    rep.check({"alpha": list(alpha), "g": g}, mono == ineq == prop == poly,
              monotone=mono, inequivalent=ineq, proper=prop, polynomial=poly)
    return rep


def verify_connections_grid(max_n: int, g: int = 0, force: bool = False) -> Report:
    rep = Report(f"connections |alpha|<={max_n} g={g}")
    for n in range(1, max_n + 1):
        for alpha in compositions(n):
            rep.merge(verify_connections(alpha, g, force))
    return rep
