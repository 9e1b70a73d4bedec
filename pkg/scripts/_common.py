import argparse
import json
import time
from dataclasses import asdict, fields

from ineqfact.report import jsonable


def parse_config(cls, description):
    """Build an argparse parser from a dataclass and return a filled instance."""
    p = argparse.ArgumentParser(description=description)
    for f in fields(cls):
        flag = "--" + f.name.replace("_", "-")
        if f.type in ("bool", bool):
            p.add_argument(flag, action="store_true", default=f.default)
        else:
            typ = {"int": int, "str": str}.get(f.type, f.type if callable(f.type) else str)
            p.add_argument(flag, type=typ, default=f.default)
    return cls(**vars(p.parse_args()))


def emit(config, payload, out=None):
    doc = {"config": asdict(config), **jsonable(payload)}
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")


class Timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = round(time.perf_counter() - self.t, 3)
