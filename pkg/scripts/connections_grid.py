"""Tabulate monotone, inequivalent, proper and polynomial values over all compositions."""
from dataclasses import dataclass

from _common import Timer, emit, parse_config
from ineqfact.enumeration import count_monotone, inequivalent_table, proper_table, count_all
from ineqfact.perm import compositions


@dataclass
class Config:
    max_n: int = 5
    genus: int = 0
    out: str = ""


def main(cfg: Config):
    rows = []
    with Timer() as t:
        for n in range(1, cfg.max_n + 1):
            for a in compositions(n):
                m = len(a)
                itab = inequivalent_table(a, cfg.genus)
                rows.append({
                    "alpha": list(a),
                    "monotone_signed": (-1) ** (n + m) * count_monotone(a, cfg.genus),
                    "inequivalent_signed": sum((-1) ** r * v for (r, _), v in itab.items()),
                    "proper_signed": sum((-1) ** r * v for r, v in proper_table(a, cfg.genus).items()),
                    "polynomial_at_minus_one": count_all(a, -1, cfg.genus),
                    "inequivalent_total": sum(itab.values()),
                })
    agree = all(len({r["monotone_signed"], r["inequivalent_signed"], r["proper_signed"],
                     r["polynomial_at_minus_one"]}) == 1 for r in rows)
    emit(cfg, {"all_agree": agree, "seconds": t.seconds, "rows": rows}, cfg.out or None)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
