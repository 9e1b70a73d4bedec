"""Acceptance checks, one test per criterion.  Each prints a PASS/FAIL line."""
import itertools
from fractions import Fraction

import pytest

from ineqfact.altmaps import build_map, serialize, verify_bijection_grid
from ineqfact.canonical import canonical_form
from ineqfact.closed_forms import (catalan, constellation, eidswick_longyear, fullcycle_signature, goulden_monotone,
                                   hurwitz, springer)
from ineqfact.enumeration import (count_all, count_all_direct, count_inequivalent, count_monotone,
                                  count_ordinary_cycle, inequivalent_table, ordinary_table, verify_connections_grid)
from ineqfact.families import SeriesFamily, build_series, coeff_to_count, coefficient_table, kcycle_specialize
from ineqfact.factorization import CycleFactorization
from ineqfact.group_algebra import jm_elementary_check, verify_qidentity, verify_uidentity
from ineqfact.perm import Signature, all_cycles, compositions, signatures_of_depth
from ineqfact.symmetric import verify_appendix

B = Signature.from_mapping
RESULTS = {}


def record(num, title, ok, detail=""):
    line = f"CRITERION {num:2d}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    RESULTS[num] = line
    print(line)
    assert ok, line


def comps(max_n, parts=None):
    for n in range(1, max_n + 1):
        for a in compositions(n):
            if parts is None or len(a) in parts:
                yield a


def test_criterion_01_closed_form_grid():
    bad = []
    for a in list(comps(5)) + [(6,)]:
        n, m = sum(a), len(a)
        if hurwitz(a) != count_ordinary_cycle(a, B({2: n + m - 2}) if n + m > 2 else B({})):
            bad.append(a)
    denes = all(hurwitz((n,)) == Fraction(n) ** (n - 2) for n in range(1, 7))
    enum6 = count_ordinary_cycle((6,), B({2: 5}))
    record(1, "Hurwitz formula vs brute force, |alpha|<=5 and (6); n^(n-2) diagonal",
           not bad and denes and enum6 == 1296, f"mismatches={bad}, n=6 enumeration={enum6}")


def test_criterion_02_full_cycle_signatures():
    bad, checked = [], 0
    for n in range(1, 6):
        for beta in signatures_of_depth(n - 1, n):
            checked += 1
            if n == 1:
                continue
            if fullcycle_signature(n, beta) != count_ordinary_cycle((n,), beta):
                bad.append(("ordinary", n, str(beta)))
            if springer(n, beta) != count_inequivalent((n,), beta):
                bad.append(("inequivalent", n, str(beta)))
    el = [(n, eidswick_longyear(n), count_inequivalent((n,), B({2: n - 1}))) for n in range(2, 7)]
    el_ok = all(x == y for _, x, y in el) and el[-1][1] == 273
    record(2, "full-cycle signature formulas vs brute force n<=5; transposition diagonal n<=6",
           not bad and el_ok, f"signatures={checked}, mismatches={bad}, diagonal={el}")


def test_criterion_03_connections():
    r0 = verify_connections_grid(5, 0)
    r1 = verify_connections_grid(4, 1)
    record(3, "four-way identity (monotone, inequivalent, proper, polynomial at -1)", r0.ok and r1.ok,
           f"g=0 cases={len(r0.cases)}, g=1 cases={len(r1.cases)}, failures={r0.failures + r1.failures}")


def _compare_series_with_table(built, alpha, table, kind_len=False):
    """Every brute-force (alpha, beta) count equals the scaled coefficient, and vice versa."""
    bad = []
    for (length, sig), cnt in table.items():
        got = coeff_to_count(built, alpha, Signature(sig))
        if got != cnt:
            bad.append((alpha, sig, got, cnt))
    for row in coefficient_table(built):
        if tuple(row["alpha"]) == alpha:
            beta = B(row["beta"])
            key = (beta.length, beta.padded(sum(alpha)) if sum(alpha) > 1 else ())
            if row.get("count") != table.get(key, 0):
                bad.append((alpha, row["beta"], row.get("count"), table.get(key, 0)))
    return bad


def test_criterion_04_inequivalent_series():
    built = {m: build_series(SeriesFamily("icgs", m), 5) for m in (1, 2, 3)}
    bad, n_alpha = [], 0
    for a in comps(5, parts=(1, 2, 3)):
        n_alpha += 1
        bad += _compare_series_with_table(built[len(a)], a, inequivalent_table(a, 0))
    ex1 = coeff_to_count(built[2], (2, 1), B({2: 3}))
    ex2 = coeff_to_count(built[3], (1, 1, 1), B({2: 4}))
    record(4, "inequivalent series m=1,2,3 vs brute force, |alpha|<=5", not bad and ex1 == 8 and ex2 == 24,
           f"alphas={n_alpha}, mismatches={bad[:5]}, (2,1)->{ex1}, (1,1,1)->{ex2}")


def test_criterion_05_four_part_transpositions():
    built = build_series(SeriesFamily("icgs4_transpositions", 4), 5)
    bad = []
    alphas = [(1, 1, 1, 1)] + sorted(set(itertools.permutations((2, 1, 1, 1))))
    for a in alphas:
        tab = inequivalent_table(a, 0, "transpositions")
        brute = sum(tab.values())
        got = coeff_to_count(built, a)
        if got != brute:
            bad.append((a, got, brute))
    record(5, "four-part transposition series vs brute force, (1,1,1,1) and (2,1,1,1)", not bad,
           f"alphas={len(alphas)}, mismatches={bad}")


def test_criterion_06_algebra_identities():
    reps = [verify_qidentity(2, 6), verify_qidentity(3, 6), verify_qidentity(4, 4),
            verify_uidentity(2, 6), verify_uidentity(3, 6), verify_uidentity(4, 4)]
    reps += [jm_elementary_check(n) for n in range(1, 6)]
    fails = [f for r in reps for f in r.failures]
    record(6, "group algebra q- and u-identities (with genus restrictions); Jucys-Murphy n<=5", not fails,
           f"reports={len(reps)}, cases={sum(len(r.cases) for r in reps)}, failures={fails[:3]}")


def test_criterion_07_map_model():
    grid = verify_bijection_grid(4, 5)
    # maps separate classes, and every member of a class gives the same map
    clashes = 0
    for n in (2, 3, 4):
        by_map, by_class = {}, {}
        cyc = all_cycles(n)
        for r in range(1, 5):
            for fs in itertools.product(cyc, repeat=r):
                if sum(len(c) - 1 for c in fs) > 4:
                    continue
                f = CycleFactorization(n, fs)
                key, cls = serialize(build_map(f)), canonical_form(f)
                by_map.setdefault(key, set()).add(cls)
                by_class.setdefault(cls, set()).add(key)
        clashes += sum(len(v) > 1 for v in by_map.values()) + sum(len(v) > 1 for v in by_class.values())
    record(7, "alternating maps: properties, distinctness and counts, |alpha|<=4, depth<=5",
           grid.ok and clashes == 0, f"(alpha,beta,g) cases={len(grid.cases)}, clashes={clashes}, "
                                     f"failures={grid.failures[:3]}")


def test_criterion_08_ordinary_series_and_conjecture():
    bad = []
    for m in (1, 2):
        built = build_series(SeriesFamily("ocgs", m), 5)
        for a in comps(5, parts=(m,)):
            tab = ordinary_table(a, 0)
            for sig, cnt in tab.items():
                if coeff_to_count(built, a, Signature(sig)) != cnt:
                    bad.append(("ocgs", a, sig))
    conj = build_series(SeriesFamily("ocgs3_conjecture", 3), 5)
    conj_bad = []
    for a in comps(5, parts=(3,)):
        for sig, cnt in ordinary_table(a, 0).items():
            if coeff_to_count(conj, a, Signature(sig)) != cnt:
                conj_bad.append((a, sig))
    record(8, "ordinary series m=1,2 vs brute force; three-part conjecture "
              + ("conjecture-consistent" if not conj_bad else "INCONSISTENT"),
           not bad and not conj_bad, f"mismatches={bad[:3]}, conjecture mismatches={conj_bad[:3]}")


def test_criterion_09_monotone():
    spec = {m: build_series(SeriesFamily("monotone", m), 5) for m in (1, 2, 3)}
    pgs = {m: build_series(SeriesFamily("pgs", m), 5) for m in (1, 2, 3)}
    bad = []
    for a in comps(5):
        brute = count_monotone(a)
        vals = [brute, goulden_monotone(a)]
        if len(a) <= 3:
            vals += [coeff_to_count(spec[len(a)], a), coeff_to_count(pgs[len(a)], a)]
        if len(set(vals)) != 1:
            bad.append((a, vals))
    cat_series = build_series(SeriesFamily("monotone", 1), 7)
    cat = [(catalan(n - 1), goulden_monotone((n,)), coeff_to_count(cat_series, (n,))) for n in range(1, 8)]
    cat_ok = all(len(set(t)) == 1 for t in cat) and all(
        count_monotone((n,)) == catalan(n - 1) for n in range(1, 7))
    record(9, "monotone: specialization, product formula, closed form, brute force; Catalan n<=7",
           not bad and cat_ok, f"mismatches={bad[:3]}, catalan={[t[0] for t in cat]}")


def test_criterion_10_constellation():
    bad = []
    for a in comps(4):
        n, m = sum(a), len(a)
        for r in range(-1, n + m - 1):
            if constellation(a, r) != count_all(a, r):
                bad.append((a, r))
        if (-1) ** (n + m) * count_monotone(a) != constellation(a, -1):
            bad.append((a, "monotone at -1"))
    direct = all(constellation(a, r) == count_all_direct(a, r) for a in comps(3) for r in range(0, 4))
    record(10, "constellation polynomial vs brute force 0<=r<=n+m-2 and at r=-1, |alpha|<=4",
           not bad and direct, f"mismatches={bad[:5]}")


def test_criterion_11_appendix():
    rep = verify_appendix(100, seed=0, max_m=4)
    record(11, "symmetric-function lemmas on 100 random rational instances each", rep.ok and len(rep.cases) == 400,
           f"cases={len(rep.cases)}, failures={rep.failures[:2]}")


def test_criterion_12_kcycle_discrepancy_report():
    built, rep = kcycle_specialize(1, 3, 4, variants=["general"])
    spec_x3 = built.series.coeff((3,)).coefficient()
    brute = count_inequivalent((3,), B({3: 1}))
    diffs = rep.failures[0]["discrepancies"] if rep.failures else []
    printed_x3 = next((d["printed"] for d in diffs if d["alpha"] == [3]), None)
    ok = spec_x3 == 1 == brute and not rep.ok and printed_x3 == 2
    record(12, "3-cycle single-part specialization [x^3]=1 matches brute force; printed form disagreement recorded",
           ok, f"specialized={spec_x3}, brute={brute}, printed={printed_x3}")


@pytest.mark.xfail(strict=True, reason="printed single-part k-cycle form phi(1-phi) disagrees with the "
                                       "specialization at k=3 ([x^3] 2 vs 1)")
def test_printed_kcycle_form_matches_specialization():
    _, rep = kcycle_specialize(1, 3, 4, variants=["general"])
    assert rep.ok
