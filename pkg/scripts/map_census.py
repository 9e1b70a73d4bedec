"""Count alternating maps per (class, signature, genus) and check them against inequivalent counts."""
from dataclasses import dataclass

from _common import Timer, emit, parse_config
from ineqfact.altmaps import verify_bijection_grid


@dataclass
class Config:
    max_n: int = 4
    max_depth: int = 5
    out: str = ""


def main(cfg: Config):
    with Timer() as t:
        rep = verify_bijection_grid(cfg.max_n, cfg.max_depth)
    rows = [{"case": c["case"], "maps": c.get("maps"), "inequivalent": c.get("inequivalent")}
            for c in rep.cases if "maps" in c]
    emit(cfg, {"seconds": t.seconds, "ok": rep.ok, "failures": rep.failures, "rows": rows}, cfg.out or None)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
