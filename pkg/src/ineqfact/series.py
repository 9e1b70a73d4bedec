"""Truncated power series in x_1..x_m with polynomial coefficients in q_2..q_K.

Terms are stored under packed integer keys (8 bits per exponent) so that
monomial multiplication is integer addition, and grouped by total
x-degree.  A series carries a precision ``N``: every coefficient of total
x-degree at most ``N`` is exact, nothing above ``N`` is stored.
Coefficients are ``int`` or ``Fraction``; floats never appear.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Sequence

from .errors import ArithmeticDomainError, DomainError
from .perm import Signature

BITS = 8
MASK = (1 << BITS) - 1
EXACT = 1 << 20  # precision of polynomials


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class Ring:
    """Variables x_1..x_m followed by the symbolic q_k for k in ``qvars``."""

    m: int
    qvars: tuple[int, ...] = ()

    @property
    def nvars(self) -> int:
        return self.m + len(self.qvars)

    def encode(self, xexp: Sequence[int], qexp: dict | Sequence[int] = ()) -> int:
        key = 0
        for i, e in enumerate(xexp):
            if not 0 <= e <= MASK:
                raise DomainError(f"exponent {e} out of range")
            key |= e << (BITS * i)
        if isinstance(qexp, dict):
            qexp = [qexp.get(k, 0) for k in self.qvars]
        for j, e in enumerate(qexp):
            if e:
                key |= e << (BITS * (self.m + j))
        return key

    def decode(self, key: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        ex = [(key >> (BITS * v)) & MASK for v in range(self.nvars)]
        return tuple(ex[:self.m]), tuple(ex[self.m:])

    def xexp(self, key: int, i: int) -> int:
        return (key >> (BITS * i)) & MASK

    def qdepth(self, key: int) -> int:
        return sum((k - 1) * ((key >> (BITS * (self.m + j))) & MASK)
                   for j, k in enumerate(self.qvars))


@dataclass(frozen=True)
class QPoly:
    """Sparse polynomial in q_k (k in ``qvars``) with exact coefficients."""

    qvars: tuple[int, ...]
    terms: tuple  # sorted ((exponent tuple), coeff)

    @classmethod
    def of(cls, qvars, mapping: dict) -> "QPoly":
        return cls(tuple(qvars), tuple(sorted((k, _norm(v)) for k, v in mapping.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, beta: Signature | None = None):
        """Coefficient of q^beta; with ``beta=None`` the whole (q-free) value."""
        d = self.as_dict()
        if beta is None:
            if any(any(e) for e in d):
                raise DomainError("series has q-dependence; give a signature")
            return d.get(tuple(0 for _ in self.qvars), 0)
        exp = []
        for k in self.qvars:
            exp.append(beta[k])
        if any(beta[k] for k, _ in beta.items() if k not in self.qvars):
            return 0
        return d.get(tuple(exp), 0)

    def signatures(self):
        """[(Signature, coeff)] for every stored monomial."""
        out = []
        for exp, c in self.terms:
            out.append((Signature.from_mapping({k: e for k, e in zip(self.qvars, exp) if e}), c))
        return out

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.terms:
            mono = "*".join(f"q{k}^{e}" if e > 1 else f"q{k}" for k, e in zip(self.qvars, exp) if e)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


class XSeries:
    __slots__ = ("ring", "N", "comps")

    def __init__(self, ring: Ring, N: int, comps: dict | None = None):
        self.ring = ring
        self.N = N
        self.comps: dict[int, dict[int, object]] = {}
        if comps:
            for d, comp in comps.items():
                if d <= N:
                    c = {k: _norm(v) for k, v in comp.items() if v}
                    if c:
                        self.comps[d] = c

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, ring: Ring, c, N: int = EXACT) -> "XSeries":
        return cls(ring, N, {0: {0: c}})

    @classmethod
    def xvar(cls, ring: Ring, i: int, N: int = EXACT) -> "XSeries":
        return cls(ring, N, {1: {1 << (BITS * i): 1}})

    @classmethod
    def qvar(cls, ring: Ring, k: int, N: int = EXACT) -> "XSeries":
        j = ring.qvars.index(k)
        return cls(ring, N, {0: {1 << (BITS * (ring.m + j)): 1}})

    @classmethod
    def from_terms(cls, ring: Ring, N: int, terms: Iterable[tuple]) -> "XSeries":
        """``terms`` yields (xexp, qexp, coeff)."""
        comps: dict = {}
        for xe, qe, c in terms:
            d = sum(xe)
            if d > N:
                continue
            comp = comps.setdefault(d, {})
            key = ring.encode(xe, qe)
            comp[key] = comp.get(key, 0) + c
        return cls(ring, N, comps)

    def _like(self, N, comps) -> "XSeries":
        return XSeries(self.ring, N, comps)

    def _coerce(self, other) -> "XSeries":
        if isinstance(other, XSeries):
            if other.ring != self.ring:
                raise DomainError("series over different rings")
            return other
        return XSeries.constant(self.ring, other)

    # -- basic arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        N = min(self.N, other.N)
        comps = {d: dict(c) for d, c in self.comps.items() if d <= N}
        for d, c in other.comps.items():
            if d > N:
                continue
            t = comps.setdefault(d, {})
            for k, v in c.items():
                t[k] = t.get(k, 0) + v
        return self._like(N, comps)

    __radd__ = __add__

    def __neg__(self):
        return self._like(self.N, {d: {k: -v for k, v in c.items()} for d, c in self.comps.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "XSeries":
        if c == 0:
            return self._like(self.N, {})
        return self._like(self.N, {d: {k: v * c for k, v in comp.items()} for d, comp in self.comps.items()})

    def __mul__(self, other):
        if not isinstance(other, XSeries):
            return self.scale(other)
        other = self._coerce(other)
        N = min(self.N, other.N)
        out: dict = {}
        for da, A in self.comps.items():
            for db, B in other.comps.items():
                d = da + db
                if d > N:
                    continue
                t = out.setdefault(d, {})
                get = t.get
                for ka, ca in A.items():
                    for kb, cb in B.items():
                        k = ka + kb
                        t[k] = get(k, 0) + ca * cb
        return self._like(N, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = XSeries.constant(self.ring, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, XSeries):
            return self * other.inverse()
        return self.scale(Fraction(1) / Fraction(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def truncate(self, N: int) -> "XSeries":
        if N > self.N:
            raise DomainError(f"cannot raise precision from {self.N} to {N}")
        return self._like(N, self.comps)

    # -- inspection ---------------------------------------------------------
    def valuation(self) -> int | None:
        return min(self.comps) if self.comps else None

    def constant_term(self):
        c = self.comps.get(0, {})
        if any(k for k in c):
            raise ArithmeticDomainError("constant term depends on q")
        return c.get(0, 0)

    def coeff(self, xexp: Sequence[int]) -> QPoly:
        if sum(xexp) > self.N:
            raise DomainError(f"coefficient of degree {sum(xexp)} beyond precision {self.N}")
        ring = self.ring
        base = ring.encode(xexp)
        xmask = (1 << (BITS * ring.m)) - 1
        out = {}
        for k, v in self.comps.get(sum(xexp), {}).items():
            if k & xmask == base:
                out[ring.decode(k)[1]] = v
        return QPoly.of(ring.qvars, out)

    def terms(self):
        """Yield (xexp, qexp, coeff) in increasing degree, deterministic order."""
        for d in sorted(self.comps):
            for k in sorted(self.comps[d]):
                xe, qe = self.ring.decode(k)
                yield xe, qe, self.comps[d][k]

    def is_zero(self) -> bool:
        return not self.comps

    def agrees(self, other: "XSeries", N: int | None = None) -> bool:
        """Equal on every coefficient of degree <= N (default: common precision)."""
        other = self._coerce(other)
        if N is None:
            N = min(self.N, other.N)
        diff = (self - other)
        return all(d > N for d in diff.comps)

    def __eq__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        return self.N == other.N and self.agrees(other)

    __hash__ = None

    def __repr__(self):
        return f"XSeries(m={self.ring.m}, N={self.N}, terms={sum(map(len, self.comps.values()))})"

    # -- analytic operations ------------------------------------------------
    def inverse(self) -> "XSeries":
        c0 = self.constant_term()
        if c0 == 0:
            raise ArithmeticDomainError("inverse needs a nonzero constant term")
        inv0 = Fraction(1) / Fraction(c0)
        rest = self - c0
        N = self.N
        # b = inv0 * sum_k (-inv0 * rest)^k
        r = rest.scale(-inv0)
        out = XSeries.constant(self.ring, 1, N)
        term = XSeries.constant(self.ring, 1, N)
        v = r.valuation()
        if v is not None:
            for _ in range(N // max(v, 1)):
                term = term * r
                if term.is_zero():
                    break
                out = out + term
        return out.scale(inv0)

    def map_degrees(self, f: Callable[[int], object]) -> "XSeries":
        """Multiply the degree-d component by f(d)."""
        return self._like(self.N, {d: {k: v * f(d) for k, v in c.items()} for d, c in self.comps.items()})

    def D(self) -> "XSeries":
        """Total-degree operator sum_i x_i d/dx_i."""
        return self.map_degrees(lambda d: d)

    def divide_degrees(self, f: Callable[[int], int]) -> "XSeries":
        """Divide the degree-d component by f(d); a zero divisor on a nonzero component is an error."""
        out = {}
        for d, c in self.comps.items():
            den = f(d)
            if den == 0:
                raise ArithmeticDomainError(f"cannot divide the degree-{d} component by 0")
            out[d] = {k: Fraction(v) / den for k, v in c.items()}
        return self._like(self.N, out)

    def partial(self, i: int) -> "XSeries":
        """d/dx_i (precision drops by one)."""
        sh = BITS * i
        out: dict = {}
        for d, c in self.comps.items():
            if d == 0:
                continue
            t = out.setdefault(d - 1, {})
            for k, v in c.items():
                e = (k >> sh) & MASK
                if e:
                    nk = k - (1 << sh)
                    t[nk] = t.get(nk, 0) + v * e
        return self._like(self.N - 1, out)

    def log(self) -> "XSeries":
        if self.constant_term() != 1 or set(self.comps.get(0, {})) != {0}:
            raise ArithmeticDomainError("log needs constant term 1")
        a = self - 1
        out = XSeries(self.ring, self.N)
        term = XSeries.constant(self.ring, 1, self.N)
        for k in range(1, self.N + 1):
            term = term * a
            if term.is_zero():
                break
            out = out + term.scale(Fraction((-1) ** (k + 1), k))
        return out

    def exp(self) -> "XSeries":
        if self.comps.get(0):
            raise ArithmeticDomainError("exp needs constant term 0")
        out = XSeries.constant(self.ring, 1, self.N)
        term = XSeries.constant(self.ring, 1, self.N)
        for k in range(1, self.N + 1):
            term = (term * self).scale(Fraction(1, k))
            if term.is_zero():
                break
            out = out + term
        return out

    def div_linear(self, i: int, j: int) -> "XSeries":
        """Exact quotient by (x_i - x_j); precision drops by one."""
        si, sj = BITS * i, BITS * j
        out: dict = {}
        for d, comp in self.comps.items():
            groups: dict = {}
            for k, v in comp.items():
                ei, ej = (k >> si) & MASK, (k >> sj) & MASK
                base = k - (ei << si) - (ej << sj)
                groups.setdefault((base, ei + ej), {})[ei] = v
            t = {}
            for (base, e), p in groups.items():
                if e == 0:
                    raise ArithmeticDomainError(f"not divisible by x{i + 1}-x{j + 1}")
                c = 0
                for a in range(e, 0, -1):  # c_{a-1} = p_a + c_a
                    c = p.get(a, 0) + c
                    if c:
                        t[base + ((a - 1) << si) + ((e - a) << sj)] = c
                if p.get(0, 0) + c != 0:
                    raise ArithmeticDomainError(f"not divisible by x{i + 1}-x{j + 1}")
            if t:
                out[d - 1] = t
        return self._like(self.N - 1, out)

    def div_vandermonde(self, idx: Sequence[int] | None = None) -> "XSeries":
        """Exact quotient by prod_{a<b} (x_a - x_b) over the variables ``idx``."""
        idx = list(range(self.ring.m)) if idx is None else list(idx)
        out = self
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                out = out.div_linear(idx[a], idx[b])
        return out

    def permute(self, perm: Sequence[int]) -> "XSeries":
        """Rename x_i to x_{perm[i]} (0-based)."""
        ring = self.ring
        out = {}
        for d, comp in self.comps.items():
            t = {}
            for k, v in comp.items():
                xe, qe = ring.decode(k)
                ne = [0] * ring.m
                for i, e in enumerate(xe):
                    ne[perm[i]] = e
                t[ring.encode(ne, qe)] = v
            out[d] = t
        return self._like(self.N, out)

    # -- univariate helpers (ring.m == 1) -----------------------------------
    def lift(self, ring: Ring, i: int) -> "XSeries":
        """Embed a univariate series into ``ring`` as a series in x_i."""
        if self.ring.m != 1 or self.ring.qvars != ring.qvars:
            raise DomainError("lift needs a univariate series over the same q variables")
        sh = BITS * i
        qshift = BITS * (ring.m - 1)
        out = {}
        for d, comp in self.comps.items():
            out[d] = {((k >> BITS) << (BITS + qshift)) | (d << sh): v for k, v in comp.items()}
        return XSeries(ring, self.N, out)

    def divided_difference(self, ring: Ring, i: int, j: int) -> "XSeries":
        """(f(x_i) - f(x_j)) / (x_i - x_j) for univariate f; precision drops by one."""
        if self.ring.m != 1 or self.ring.qvars != ring.qvars:
            raise DomainError("divided difference needs a univariate series over the same q variables")
        si, sj = BITS * i, BITS * j
        qshift = BITS * (ring.m - 1)
        out: dict = {}
        for d, comp in self.comps.items():
            if d == 0:
                continue
            t = out.setdefault(d - 1, {})
            for k, v in comp.items():
                qk = (k >> BITS) << (BITS + qshift)
                for a in range(d):
                    key = qk | (a << si) | ((d - 1 - a) << sj)
                    t[key] = t.get(key, 0) + v
        return XSeries(ring, self.N - 1, out)

    def compose_poly(self, coeffs: dict) -> "XSeries":
        """sum_p c_p * self^p for a finite {power: constant or series} map."""
        if not coeffs:
            return XSeries(self.ring, self.N)
        top = max(coeffs)
        out = self._coerce(coeffs.get(top, 0))
        for p in range(top - 1, -1, -1):
            out = out * self + coeffs.get(p, 0)
        return out


# ---------------------------------------------------------------------------
# q-parameters and the two functional equations

@dataclass(frozen=True)
class QSpec:
    """Values of q_2..q_K: symbolic (None) or numbers.

    ``values`` maps k to a number; every k in 2..K absent from ``values``
    stays symbolic unless ``others_zero`` is set.
    """

    K: int
    values: tuple = ()
    others_zero: bool = False

    @classmethod
    def symbolic(cls, K: int) -> "QSpec":
        return cls(K)

    @classmethod
    def kcycles(cls, k: int, K: int) -> "QSpec":
        return cls(K, ((k, 1),) if k <= K else (), others_zero=True)

    @classmethod
    def monotone(cls, K: int) -> "QSpec":
        return cls(K, tuple((k, (-1) ** k) for k in range(2, K + 1)), others_zero=True)

    @property
    def qvars(self) -> tuple[int, ...]:
        if self.others_zero:
            return ()
        fixed = dict(self.values)
        return tuple(k for k in range(2, self.K + 1) if k not in fixed)

    def ring(self, m: int) -> Ring:
        return Ring(m, self.qvars)

    def coefficient(self, ring: Ring, k: int):
        fixed = dict(self.values)
        if k in fixed:
            return fixed[k]
        if self.others_zero:
            return 0
        return XSeries.qvar(ring, k)


def Q_of(z: XSeries, spec: QSpec) -> XSeries:
    """Q(z) = sum_k q_k z^(k-1)."""
    return z.compose_poly({k - 1: spec.coefficient(z.ring, k) for k in range(2, spec.K + 1)})


def Qprime_of(z: XSeries, spec: QSpec) -> XSeries:
    return z.compose_poly({k - 2: _mulc(spec.coefficient(z.ring, k), k - 1) for k in range(2, spec.K + 1)})


def _mulc(c, s):
    return c * s if not isinstance(c, XSeries) else c.scale(s)


@lru_cache(maxsize=None)
def solve_phi(N: int, spec: QSpec) -> XSeries:
    """phi = x (1 - Q(phi))^(-2), to precision N, by N fixed-point steps from 0."""
    ring = spec.ring(1)
    x = XSeries.xvar(ring, 0, N)
    phi = XSeries(ring, N)
    for _ in range(N):
        phi = x * (1 - Q_of(phi, spec)).inverse() ** 2
    return phi


@lru_cache(maxsize=None)
def solve_w(N: int, spec: QSpec) -> XSeries:
    """w = x exp(Q(w)), to precision N, by N fixed-point steps from 0."""
    ring = spec.ring(1)
    x = XSeries.xvar(ring, 0, N)
    w = XSeries(ring, N)
    for _ in range(N):
        w = x * Q_of(w, spec).exp()
    return w


def phi_parts(N: int, spec: QSpec) -> dict:
    """phi, Q(phi), S, P and Q'(phi) as univariate series."""
    phi = solve_phi(N, spec)
    Q = Q_of(phi, spec)
    Qp = Qprime_of(phi, spec)
    S = 1 - Q
    P = S - (phi * Qp).scale(2)
    return {"phi": phi, "Q": Q, "Qp": Qp, "S": S, "P": P}


def w_parts(N: int, spec: QSpec) -> dict:
    w = solve_w(N, spec)
    Q = Q_of(w, spec)
    Qp = Qprime_of(w, spec)
    T = 1 - w * Qp
    return {"w": w, "Q": Q, "Qp": Qp, "T": T}
