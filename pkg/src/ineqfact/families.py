"""Generating series families built on the series engine, and coefficient-to-count conversion.

Normalizations: the inequivalent series carry x^alpha / prod(alpha_i); the
ordered series carry an extra 1/|beta|!.  Families whose closed form is
stated for D applied to the series are returned in that D-form and flagged
``dform``; undoing D divides the x^alpha coefficient by |alpha|.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from .closed_forms import rising
from .errors import ConsistencyError, DomainError
from .perm import Signature
from .report import Report
from .series import QSpec, Ring, XSeries, phi_parts, solve_phi, w_parts
from .symmetric import h, schur_two_row

FAMILIES = ("icgs", "icgs4_transpositions", "ocgs", "ocgs3_conjecture", "monotone", "pgs",
            "hurwitz", "kcycle")


@dataclass(frozen=True)
class SeriesFamily:
    name: str
    m: int
    k: int | None = None
    qvalues: tuple = ()  # optional numeric q_k values, ((k, v), ...)

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise DomainError(f"unknown series family {self.name!r}")
        if self.m < 1:
            raise DomainError("m must be positive")
        limits = {"icgs": 3, "icgs4_transpositions": 4, "ocgs": 2, "ocgs3_conjecture": 3,
                  "monotone": 3, "kcycle": 3}
        if self.name == "icgs4_transpositions" and self.m != 4:
            raise DomainError("icgs4_transpositions is the m=4 family")
        if self.name == "ocgs3_conjecture" and self.m != 3:
            raise DomainError("ocgs3_conjecture is the m=3 family")
        if self.name in limits and self.m > limits[self.name]:
            raise DomainError(f"{self.name} is available for m <= {limits[self.name]}")
        if self.name == "kcycle" and (self.k is None or self.k < 2):
            raise DomainError("kcycle needs k >= 2")


@dataclass
class BuiltSeries:
    family: SeriesFamily
    series: XSeries
    N: int
    dform: bool
    ordered: bool
    meta: dict = field(default_factory=dict)

    def coefficient(self, alpha: Sequence[int]):
        return self.series.coeff(tuple(alpha))


def _qspec(family: SeriesFamily, K: int) -> QSpec:
    if family.name in ("monotone", "pgs"):
        return QSpec.monotone(K)
    if family.name in ("kcycle",):
        return QSpec.kcycles(family.k, K)
    if family.name in ("icgs4_transpositions", "hurwitz"):
        return QSpec.kcycles(2, K)
    if family.qvalues:
        return QSpec(K, tuple(sorted(family.qvalues)))
    return QSpec.symbolic(K)


def _lifts(parts: dict, ring: Ring, m: int) -> list[dict]:
    return [{name: s.lift(ring, i) for name, s in parts.items()} for i in range(m)]


def _alternating_sum(ring: Ring, terms: list[XSeries]) -> XSeries:
    """sum_i terms[i] / prod_{j != i} (x_i - x_j), via one exact Vandermonde division."""
    m = ring.m
    total = None
    for i, t in enumerate(terms):
        others = [a for a in range(m) if a != i]
        num = t if i % 2 == 0 else -t
        for a in range(len(others)):
            for b in range(a + 1, len(others)):
                num = num * (XSeries.xvar(ring, others[a]) - XSeries.xvar(ring, others[b]))
        total = num if total is None else total + num
    return total.div_vandermonde()


def _icgs(m: int, U: int, spec: QSpec) -> tuple[XSeries, bool]:
    parts = phi_parts(U, spec)
    ring = spec.ring(m)
    if m == 1:
        return (parts["phi"] * parts["S"]).lift(ring, 0), True
    phiS = parts["phi"] * parts["S"]
    A = parts["S"] / parts["P"]
    L = _lifts(parts, ring, m)
    if m == 2:
        dd = lambda f: f.divided_difference(ring, 0, 1)
        val = L[0]["phi"] * L[1]["phi"] * dd(A) * dd(parts["Q"]) / (dd(parts["phi"]) * dd(phiS))
        return val, True
    R = {}
    for i in range(3):
        for j in range(i + 1, 3):
            R[i, j] = R[j, i] = (parts["Q"].divided_difference(ring, i, j)
                                 / (parts["phi"].divided_difference(ring, i, j)
                                    * phiS.divided_difference(ring, i, j)))
    terms = []
    for i in range(3):
        t = L[i]["P"].inverse()
        for j in range(3):
            if j != i:
                t = t * R[i, j]
        terms.append(t)
    val = _alternating_sum(ring, terms) * L[0]["phi"] * L[1]["phi"] * L[2]["phi"]
    return val.scale(2), False


def _ocgs(m: int, U: int, spec: QSpec) -> tuple[XSeries, bool]:
    parts = w_parts(U, spec)
    ring = spec.ring(m)
    if m == 1:
        return parts["w"].lift(ring, 0), True
    invT = parts["T"].inverse()
    L = _lifts(parts, ring, m)
    if m == 2:
        dd = lambda f: f.divided_difference(ring, 0, 1)
        val = L[0]["w"] * L[1]["w"] * dd(invT) * dd(parts["Q"]) / dd(parts["w"]) ** 2
        return val, True
    R = {}
    for i in range(3):
        for j in range(i + 1, 3):
            # (Q_i - Q_j)/(w_i - w_j)^2 = DD(Q) / (DD(w)^2 (x_i - x_j))
            R[i, j] = R[j, i] = (parts["Q"].divided_difference(ring, i, j)
                                 / parts["w"].divided_difference(ring, i, j) ** 2)
    terms = []
    for i in range(3):
        t = invT.lift(ring, i)
        for j in range(3):
            if j != i:
                t = t * R[i, j]
        terms.append(t)
    val = _alternating_sum(ring, terms) * L[0]["w"] * L[1]["w"] * L[2]["w"]
    return val, False


def _icgs4_transpositions(U: int, spec: QSpec) -> XSeries:
    ring = spec.ring(4)
    phi = solve_phi(U, spec)
    P = [phi.lift(ring, i) for i in range(4)]
    one = XSeries.constant(ring, 1)
    inv3 = [(one - p.scale(3)).inverse() for p in P]
    pair = {}
    for i in range(4):
        for j in range(i + 1, 4):
            pair[i, j] = pair[j, i] = (one - P[i] - P[j]).inverse()
    dd = {}
    for i in range(4):
        for j in range(i + 1, 4):
            dd[i, j] = dd[j, i] = phi.divided_difference(ring, i, j).inverse()
    terms = []
    for i in range(4):
        t = P[i] * inv3[i]
        for j in range(4):
            if j != i:
                t = t * P[j] * dd[i, j] * pair[i, j]
        terms.append(t)
    first = _alternating_sum(ring, terms)
    first = (first.D() + first).scale(6)
    e1 = P[0] + P[1] + P[2] + P[3]
    e2 = sum((P[i] * P[j] for i in range(4) for j in range(i + 1, 4)), XSeries(ring, first.N + 6))
    e4 = P[0] * P[1] * P[2] * P[3]
    second = e4 * (4 - e1.scale(4) + e2.scale(3))
    for i in range(4):
        second = second * inv3[i]
    for i in range(4):
        for j in range(i + 1, 4):
            second = second * pair[i, j]
    return first + second.scale(12)


def _hurwitz(m: int, U: int, spec: QSpec) -> XSeries:
    ring = spec.ring(m)
    w = w_parts(U, spec)["w"]
    f = w / (1 - w)
    val = XSeries.constant(ring, 1)
    for i in range(m):
        val = val * f.lift(ring, i)
    if m >= 3:
        for _ in range(m - 3):
            val = val.D()
        return val
    return val.divide_degrees(lambda d: d ** (3 - m))


def _pgs(m: int, U: int, spec: QSpec) -> XSeries:
    ring = spec.ring(m)
    phi = solve_phi(U, spec)
    f = (phi / (1 - phi)).scale(2)
    val = XSeries.constant(ring, 1)
    for i in range(m):
        val = val * f.lift(ring, i)
    # (2D+1)^{(m-3)} acts on the degree-d part as the rising factorial at 2d+1
    if m >= 3:
        return val.map_degrees(lambda d: rising(2 * d + 1, m - 3))
    return val.divide_degrees(lambda d: 1 / rising(2 * d + 1, m - 3))


def build_series(family: SeriesFamily, N: int) -> BuiltSeries:
    """Construct ``family`` exactly to total x-degree N."""
    if N < 1:
        raise DomainError("order must be at least 1")
    m = family.m
    loss = m * (m - 1) // 2
    U = N + loss + 2
    spec = _qspec(family, N)
    name = family.name
    dform, ordered = False, False
    if name in ("icgs", "monotone", "kcycle"):
        val, dform = _icgs(m, U, spec)
    elif name in ("ocgs", "ocgs3_conjecture"):
        val, dform = _ocgs(m, U, spec)
        ordered = True
    elif name == "icgs4_transpositions":
        val = _icgs4_transpositions(U, spec)
    elif name == "hurwitz":
        val = _hurwitz(m, U, spec)
        ordered = True
    else:
        val = _pgs(m, U, spec)
    if val.N < N:
        raise ConsistencyError(f"{name} lost precision: reached {val.N} < {N}")
    return BuiltSeries(family, val.truncate(N), N, dform, ordered,
                       {"qvars": list(spec.qvars), "K": spec.K, "dform": dform, "ordered": ordered})


def coeff_to_count(built: BuiltSeries, alpha: Sequence[int], beta: Signature | None = None) -> int:
    """Undo the series normalization at x^alpha (and q^beta when q is symbolic)."""
    alpha = tuple(alpha)
    if len(alpha) != built.family.m:
        raise DomainError(f"alpha {alpha} has {len(alpha)} parts, series has m={built.family.m}")
    qp = built.coefficient(alpha)
    if built.series.ring.qvars:
        if beta is None:
            raise DomainError("a signature is needed for a series in q")
        c = Fraction(qp.coefficient(beta))
    else:
        c = Fraction(qp.coefficient(None))
    c *= prod(alpha)
    if built.dform:
        c /= sum(alpha)
    if built.ordered:
        if beta is not None:
            ell = beta.length
        elif built.family.name == "hurwitz":
            ell = sum(alpha) + len(alpha) - 2
        else:
            raise DomainError("ordered coefficients need a signature")
        c *= factorial(ell)
    if c.denominator != 1:
        raise ConsistencyError(f"non-integral count {c} at alpha={alpha}, beta={beta}")
    return c.numerator


def coefficient_table(built: BuiltSeries) -> list[dict]:
    """Rows {alpha, beta, coefficient, count} for every stored monomial with all parts positive."""
    rows = []
    ring = built.series.ring
    for xe, qe, c in built.series.terms():
        if min(xe) == 0:
            continue
        beta = Signature.from_mapping({k: e for k, e in zip(ring.qvars, qe) if e}) if ring.qvars else None
        row = {"alpha": list(xe), "coefficient": Fraction(c)}
        if beta is not None:
            row["beta"] = beta.as_dict()
        try:
            row["count"] = coeff_to_count(built, xe, beta)
        except (ConsistencyError, DomainError):
            pass
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# k-cycle specializations and the printed closed forms

def printed_kcycle_form(m: int, k: int, N: int, variant: str = "general") -> BuiltSeries:
    """The printed closed forms for k-cycle series.

    ``variant="general"`` evaluates the general-k forms, ``"transpositions"``
    the k=2 forms.
    """
    if m not in (1, 2, 3):
        raise DomainError("printed k-cycle forms exist for m <= 3")
    U = N + 2
    spec = QSpec.kcycles(k, N)
    phi = solve_phi(U, spec)
    ring = spec.ring(m)
    P = [phi.lift(ring, i) for i in range(m)]
    one = XSeries.constant(ring, 1)
    if variant == "transpositions":
        if k != 2:
            raise DomainError("the transposition forms are for k=2")
        if m == 1:
            val, dform = P[0] * (1 - P[0]), True
        elif m == 2:
            val = (P[0] * P[1]).scale(2) / ((1 - P[0].scale(3)) * (1 - P[1].scale(3)) * (1 - P[0] - P[1]))
            dform = True
        else:
            e1 = P[0] + P[1] + P[2]
            num = (P[0] * P[1] * P[2] * (4 - e1.scale(3))).scale(6)
            den = one
            for i in range(3):
                den = den * (1 - P[i].scale(3))
            for i in range(3):
                for j in range(i + 1, 3):
                    den = den * (1 - P[i] - P[j])
            val, dform = num / den, False
    else:
        pk = [p ** (k - 1) for p in P]
        den1 = one
        for i in range(m):
            den1 = den1 * (1 - pk[i].scale(2 * k - 1))
        if m == 1:
            val, dform = P[0] * (1 - P[0]), True
        elif m == 2:
            h2 = h(k - 2, P)
            val = (P[0] * P[1] * h2 * h2).scale(2 * (k - 1)) / (den1 * (1 - h(k - 1, P)))
            dform = True
        else:
            G = schur_two_row(k - 3, 0, P) - schur_two_row(k - 2, k - 2, P) * (2 * k - 1)
            Gp = schur_two_row(k - 2, k - 2, P) - schur_two_row(2 * k - 3, k - 2, P) * (2 * k - 1)
            den = den1
            for i in range(3):
                for j in range(i + 1, 3):
                    den = den * (1 - h(k - 1, [P[i], P[j]]))
            val, dform = (P[0] * P[1] * P[2] * G * (G + Gp)).scale(2) / den, False
    fam = SeriesFamily("kcycle", m, k)
    return BuiltSeries(fam, val.truncate(N), N, dform, False, {"printed": variant})


def kcycle_specialize(m: int, k: int, N: int, variants: Sequence[str] | None = None):
    """Specialize the m-variable inequivalent series to k-cycles and compare with the printed forms.

    Returns (series, report).  Disagreements are recorded in the report,
    never raised; the specialization itself is treated as authoritative.
    """
    built = build_series(SeriesFamily("kcycle", m, k), N)
    if variants is None:
        variants = ["general"] + (["transpositions"] if k == 2 else [])
    rep = Report(f"k-cycle forms m={m} k={k} N={N}")
    for v in variants:
        printed = printed_kcycle_form(m, k, N, v)
        diffs = []
        for xe, _, c in (built.series - printed.series).terms():
            diffs.append({"alpha": list(xe),
                          "specialized": built.series.coeff(xe).coefficient(None),
                          "printed": printed.series.coeff(xe).coefficient(None)})
        rep.check({"printed_form": v}, not diffs, discrepancies=diffs[:10])
    return built, rep


# ---------------------------------------------------------------------------
# identities among the series themselves

def verify_series_identities(N: int = 6) -> Report:
    """Functional-equation residuals, implicit derivatives, the logarithmic m=2 form,
    variable symmetry, and agreement of the two monotone constructions."""
    rep = Report(f"series identities N={N}")
    spec = QSpec.symbolic(N)
    ring1 = spec.ring(1)
    x = XSeries.xvar(ring1, 0)
    pp = phi_parts(N, spec)
    phi, S, P = pp["phi"], pp["S"], pp["P"]
    rep.check("phi residual", (phi - x * (1 - pp["Q"]).inverse() ** 2).agrees(0))
    wp = w_parts(N, spec)
    w, T = wp["w"], wp["T"]
    rep.check("w residual", (w - x * wp["Q"].exp()).agrees(0))
    rep.check("x dphi/dx = phi S / P", phi.D().agrees(phi * S / P))
    rep.check("x dw/dx = w / T", w.D().agrees(w / T))

    ring2 = spec.ring(2)
    phiS = phi * S
    dd = lambda f: f.divided_difference(ring2, 0, 1)
    log_form = (dd(phiS) ** 2 / dd(phi)).log().D()
    m2 = build_series(SeriesFamily("icgs", 2), N).series
    rep.check("log form of the m=2 series", log_form.agrees(m2, N - 1))

    for name, m in (("icgs", 2), ("icgs", 3), ("ocgs", 2), ("ocgs3_conjecture", 3)):
        b = build_series(SeriesFamily(name, m), min(N, 5)).series
        sym = all(b.permute(p).agrees(b) for p in _perms(m))
        full = all(min(xe) > 0 for xe, _, _ in b.terms())
        rep.check(f"{name} m={m} symmetric", sym and full, symmetric=sym, all_parts_positive=full)
    b4 = build_series(SeriesFamily("icgs4_transpositions", 4), 5).series
    rep.check("icgs4_transpositions symmetric",
              all(b4.permute(p).agrees(b4) for p in _perms(4)) and all(min(xe) > 0 for xe, _, _ in b4.terms()))

    for m in (1, 2, 3):
        mono = build_series(SeriesFamily("monotone", m), N)
        pgs = build_series(SeriesFamily("pgs", m), N)
        lhs = pgs.series.D() if mono.dform else pgs.series
        rep.check(f"monotone specialization vs product form m={m}", lhs.agrees(mono.series))
    return rep


def _perms(m):
    from itertools import permutations
    return list(permutations(range(m)))
