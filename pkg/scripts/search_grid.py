"""Dimensions of bounded-degree Laurent invariant spaces over an (m, n) x (s, t) grid.

    python scripts/search_grid.py --mn-max 5 --st-max 2
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from rank2cluster.dvector import classify
from rank2cluster.invariants import search_laurent_invariants


@dataclass(frozen=True)
class GridConfig:
    mn_max: int = 5
    st_max: int = 2
    show_basis: bool = False


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--mn-max", type=int, default=GridConfig.mn_max)
    ap.add_argument("--st-max", type=int, default=GridConfig.st_max)
    ap.add_argument("--show-basis", action="store_true")
    cfg = GridConfig(**vars(ap.parse_args()))

    boxes = [(s, t) for s in range(1, cfg.st_max + 1) for t in range(1, cfg.st_max + 1)]
    print(f"{'(m,n)':>7} {'type':>11} " + " ".join(f"{f'{s},{t}':>5}" for s, t in boxes))
    for m in range(1, cfg.mn_max + 1):
        for n in range(1, cfg.mn_max + 1):
            bases = [search_laurent_invariants(m, n, s, t) for s, t in boxes]
            dims = " ".join(f"{len(b):>5}" for b in bases)
            print(f"{f'({m},{n})':>7} {str(classify(m, n)):>11} {dims}")
            if cfg.show_basis and bases[-1]:
                for cand in bases[-1]:
                    print(f"{'':>20}{cand.value}")


if __name__ == "__main__":
    main()
