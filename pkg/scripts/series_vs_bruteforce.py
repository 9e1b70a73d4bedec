"""Compare scaled series coefficients with brute-force counts for one family."""
from dataclasses import dataclass

from _common import Timer, emit, parse_config
from ineqfact.enumeration import inequivalent_table, ordinary_table
from ineqfact.families import SeriesFamily, build_series, coefficient_table
from ineqfact.perm import Signature


@dataclass
class Config:
    family: str = "icgs"
    m: int = 2
    order: int = 5
    out: str = ""


def main(cfg: Config):
    with Timer() as t:
        built = build_series(SeriesFamily(cfg.family, cfg.m), cfg.order)
        rows = []
        ordered = built.ordered
        for row in coefficient_table(built):
            alpha = tuple(row["alpha"])
            beta = Signature.from_mapping(row.get("beta", {}))
            n = sum(alpha)
            key = beta.padded(n) if n > 1 else ()
            if ordered:
                brute = ordinary_table(alpha, 0).get(key, 0)
            else:
                brute = inequivalent_table(alpha, 0).get((beta.length, key), 0)
            rows.append({**row, "brute_force": brute, "agree": row.get("count") == brute})
    emit(cfg, {"seconds": t.seconds, "all_agree": all(r["agree"] for r in rows), "rows": rows},
         cfg.out or None)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
