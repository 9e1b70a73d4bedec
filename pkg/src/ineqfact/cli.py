"""Command-line entry point.  Every path prints one JSON document.

Exit codes: 0 success, 1 verification mismatch, 2 usage or resource error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import altmaps, closed_forms, enumeration, families, group_algebra, symmetric
from .errors import (AmbientSizeError, ArithmeticDomainError, ConsistencyError, DomainError,
                     ResourceBoundError, StructuralError)
from .factorization import CycleFactorization
from .perm import Signature, representative
from .report import Report, jsonable

MAX_N = 5
MAX_ORDER = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _class(text: str) -> tuple:
    try:
        alpha = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad --class {text!r}; expected a comma list such as 3,2,1")
    if not alpha or min(alpha) < 1:
        raise UsageError(f"bad --class {text!r}")
    return alpha


def _signature(items) -> Signature | None:
    if not items:
        return None
    counts: dict = {}
    for it in items:
        try:
            k, c = (int(x) for x in it.split(":"))
        except ValueError:
            raise UsageError(f"bad --signature {it!r}; expected k:count")
        if k < 2 or c < 0:
            raise UsageError(f"bad --signature {it!r}")
        counts[k] = counts.get(k, 0) + c
    return Signature.from_mapping(counts)


def _qspec(items) -> tuple:
    out = []
    for it in items or ():
        name, _, val = it.partition("=")
        if not name.startswith("q") or not val:
            raise UsageError(f"bad --spec {it!r}; expected qk=value")
        try:
            out.append((int(name[1:]), Fraction(val)))
        except ValueError:
            raise UsageError(f"bad --spec {it!r}")
    return tuple(sorted(out))


def _bound_n(n: int, force: bool):
    if n > MAX_N and not force:
        raise ResourceBoundError(f"n={n} exceeds the default bound {MAX_N}; pass --force")


def _bound_order(N: int, force: bool):
    if N > MAX_ORDER and not force:
        raise ResourceBoundError(f"order {N} exceeds the default bound {MAX_ORDER}; pass --force")


# ---------------------------------------------------------------------------

def cmd_count(a) -> tuple[dict, int]:
    beta = _signature(a.signature)
    out = {"genus": a.genus}
    if a.formula:
        return _formula(a, beta), 0
    if not a.class_:
        raise UsageError("--class is required")
    alpha = _class(a.class_)
    n = sum(alpha)
    _bound_n(n, a.force)
    out.update({"mode": a.mode, "class": list(alpha)})
    if beta is not None:
        out["signature"] = beta.as_dict()
    mode = a.mode
    if mode in ("inequivalent", "ordinary"):
        if beta is None:
            raise UsageError(f"--mode {mode} needs --signature")
        fn = enumeration.count_inequivalent if mode == "inequivalent" else enumeration.count_ordinary_cycle
        out["count"] = fn(alpha, beta, a.genus, force=a.force)
    elif mode == "transpositions":
        out["count"] = enumeration.count_transpositions(alpha, a.genus, force=a.force)
    elif mode == "monotone":
        out["count"] = enumeration.count_monotone(alpha, a.genus, force=a.force)
    elif mode in ("proper", "all"):
        if a.r is None:
            raise UsageError(f"--mode {mode} needs --r")
        out["r"] = a.r
        if mode == "proper":
            out["count"] = enumeration.count_proper(alpha, a.r, a.genus, force=a.force)
        else:
            out["count"] = enumeration.count_all(alpha, a.r, a.genus, force=a.force)
    elif mode == "connections":
        rep = enumeration.verify_connections(alpha, a.genus, force=a.force)
        return rep.to_json(), (0 if rep.ok else 1)
    return out, 0


def _formula(a, beta) -> dict:
    name = a.formula
    alpha = _class(a.class_) if a.class_ else None
    out = {"formula": name}
    if name in ("hurwitz", "goulden", "constellation"):
        if alpha is None:
            raise UsageError(f"--formula {name} needs --class")
        out["class"] = list(alpha)
        if name == "constellation":
            if a.r is None:
                raise UsageError("--formula constellation needs --r")
            out["r"] = a.r
            out["count"] = closed_forms.constellation(alpha, a.r)
        else:
            out["count"] = closed_forms.FORMULAS[name](alpha)
    elif name in ("fullcycle", "springer"):
        if alpha is None or len(alpha) != 1 or beta is None:
            raise UsageError(f"--formula {name} needs --class n and --signature")
        out.update({"class": list(alpha), "signature": beta.as_dict()})
        out["count"] = closed_forms.FORMULAS[name](alpha[0], beta)
    elif name == "eidswick-longyear":
        if alpha is None or len(alpha) != 1:
            raise UsageError("--formula eidswick-longyear needs --class n")
        out.update({"class": list(alpha), "count": closed_forms.eidswick_longyear(alpha[0])})
    elif name == "two-part":
        if alpha is None or len(alpha) != 2:
            raise UsageError("--formula two-part needs --class n,m")
        out.update({"class": list(alpha), "count": closed_forms.two_part_transpositions(*alpha)})
    return out


def cmd_enumerate(a) -> tuple[dict, int]:
    alpha = _class(a.class_)
    _bound_n(sum(alpha), a.force)
    spec = enumeration.EnumSpec(
        representative(alpha), factor_kind=a.kind, signature=_signature(a.signature), depth=a.depth,
        length=a.length, transitive_only=a.transitive or a.genus is not None, genus=a.genus, k=a.k,
        canonical_only=a.canonical, monotone_only=a.monotone)
    items = []
    total = 0
    for f in enumeration.enumerate_factorizations(spec, force=a.force, jobs=a.jobs):
        total += 1
        if a.limit is None or len(items) < a.limit:
            items.append({"text": str(f), **f.to_json()})
    return {"class": list(alpha), "target": str(spec.target), "count": total, "factorizations": items}, 0


def cmd_series(a) -> tuple[dict, int]:
    _bound_order(a.order, a.force)
    fam = families.SeriesFamily(a.family, a.m, a.k, _qspec(a.spec))
    built = families.build_series(fam, a.order)
    return {"family": a.family, "m": a.m, "k": a.k, "order": a.order, "meta": built.meta,
            "rows": families.coefficient_table(built)}, 0


def _parse_factor(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", ",").split(",") if x)
    except ValueError:
        raise UsageError(f"bad --factor {text!r}; expected a comma list such as 1,2,3")


def cmd_map(a) -> tuple[dict, int]:
    _bound_n(a.n, a.force)
    f = CycleFactorization.of(a.n, *[_parse_factor(t) for t in a.factor or ()])
    m = altmaps.build_map(f)
    out = {"factorization": str(f), **altmaps.map_stats(m).to_json()}
    if a.dot:
        out["dot"] = m.to_dot()
    return out, 0


def cmd_verify(a) -> tuple[dict, int]:
    suite = a.suite
    max_n = a.max_n
    if suite == "connections":
        _bound_n(max_n or 5, a.force)
        rep = enumeration.verify_connections_grid(max_n or 5, a.genus, force=a.force)
    elif suite in ("cartier-foata", "monotone"):
        n = max_n or 3
        deg = a.degree if a.degree is not None else (6 if n <= 3 else 4)
        fn = group_algebra.verify_qidentity if suite == "cartier-foata" else group_algebra.verify_uidentity
        rep = fn(n, deg)
    elif suite == "jm":
        rep = Report("Jucys-Murphy")
        for n in range(1, (max_n or 5) + 1):
            rep.merge(group_algebra.jm_elementary_check(n))
    elif suite == "bijection":
        rep = altmaps.verify_bijection_grid(max_n or 4, a.degree if a.degree is not None else 5, force=a.force)
    elif suite == "appendix":
        rep = symmetric.verify_appendix(a.instances, a.seed)
    elif suite == "series":
        _bound_order(a.order, a.force)
        rep = families.verify_series_identities(a.order)
    else:  # kcycle
        _bound_order(a.order, a.force)
        _, rep = families.kcycle_specialize(a.m, a.k, a.order)
    return rep.to_json(), (0 if rep.ok else 1)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ineqfact", description="Counting and verifying inequivalent permutation factorizations")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--force", action="store_true", help="lift the default size bounds")
        sp.add_argument("--out", help="also write the JSON document to this file")

    c = sub.add_parser("count")
    c.add_argument("--mode", default="inequivalent",
                   choices=["inequivalent", "ordinary", "transpositions", "monotone", "proper", "all",
                            "connections"])
    c.add_argument("--class", dest="class_")
    c.add_argument("--signature", action="append", metavar="K:COUNT")
    c.add_argument("--genus", type=int, default=0)
    c.add_argument("--r", type=int)
    c.add_argument("--formula", choices=sorted(closed_forms.FORMULAS))
    common(c)

    e = sub.add_parser("enumerate")
    e.add_argument("--class", dest="class_", required=True)
    e.add_argument("--kind", default="cycles", choices=enumeration.FACTOR_KINDS)
    e.add_argument("--signature", action="append", metavar="K:COUNT")
    e.add_argument("--depth", type=int)
    e.add_argument("--length", type=int)
    e.add_argument("--k", type=int)
    e.add_argument("--transitive", action="store_true")
    e.add_argument("--genus", type=int)
    e.add_argument("--canonical", action="store_true")
    e.add_argument("--monotone", action="store_true")
    e.add_argument("--limit", type=int)
    e.add_argument("--jobs", type=int, default=1)
    common(e)

    s = sub.add_parser("series")
    s.add_argument("--family", required=True, choices=families.FAMILIES)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--order", type=int, default=5)
    s.add_argument("--k", type=int)
    s.add_argument("--spec", action="append", metavar="qK=VALUE")
    common(s)

    m = sub.add_parser("map")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--factor", action="append", metavar="I,J,...",
                   help="a cycle factor; repeat in left-to-right order")
    m.add_argument("--dot", action="store_true")
    common(m)

    v = sub.add_parser("verify")
    v.add_argument("--suite", required=True,
                   choices=["connections", "cartier-foata", "monotone", "jm", "bijection", "appendix",
                            "series", "kcycle"])
    v.add_argument("--max-n", type=int)
    v.add_argument("--genus", type=int, default=0)
    v.add_argument("--degree", type=int)
    v.add_argument("--order", type=int, default=6)
    v.add_argument("--m", type=int, default=1)
    v.add_argument("--k", type=int, default=2)
    v.add_argument("--instances", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    common(v)
    return p


COMMANDS = {"count": cmd_count, "enumerate": cmd_enumerate, "series": cmd_series, "map": cmd_map,
            "verify": cmd_verify}


def run(argv=None) -> tuple[dict, int]:
    """Parse ``argv`` and return (JSON document, exit code)."""
    try:
        a = build_parser().parse_args(argv)
        if a.command is None:
            raise UsageError("a subcommand is required: " + ", ".join(COMMANDS))
        doc, code = COMMANDS[a.command](a)
    except UsageError as exc:
        return {"status": "error", "error": "usage", "message": str(exc)}, 2
    except (ResourceBoundError, DomainError, AmbientSizeError, ArithmeticDomainError, StructuralError) as exc:
        return {"status": "error", "error": type(exc).__name__, "message": str(exc)}, 2
    except ConsistencyError as exc:
        return {"status": "mismatch", "error": "ConsistencyError", "message": str(exc)}, 1
    return jsonable(doc), code


def main(argv=None) -> int:
    doc, code = run(argv)
    text = json.dumps(doc, sort_keys=True)
    print(text)
    out = _out_path(argv)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    return code


def _out_path(argv) -> str | None:
    argv = list(sys.argv[1:] if argv is None else argv)
    for i, x in enumerate(argv):
        if x == "--out" and i + 1 < len(argv):
            return argv[i + 1]
        if x.startswith("--out="):
            return x[len("--out="):]
    return None


if __name__ == "__main__":
    sys.exit(main())
