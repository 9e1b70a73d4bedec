"""List coefficients where the printed k-cycle closed forms disagree with the specialized series."""
from dataclasses import dataclass

from _common import Timer, emit, parse_config
from ineqfact.families import kcycle_specialize


@dataclass
class Config:
    max_k: int = 4
    order: int = 6
    out: str = ""


def main(cfg: Config):
    results = []
    with Timer() as t:
        for m in (1, 2, 3):
            for k in range(2, cfg.max_k + 1):
                _, rep = kcycle_specialize(m, k, cfg.order)
                for case in rep.cases:
                    results.append({"m": m, "k": k, "printed_form": case["case"]["printed_form"],
                                    "agrees": case["ok"], "discrepancies": case["discrepancies"]})
    emit(cfg, {"seconds": t.seconds, "results": results}, cfg.out or None)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
