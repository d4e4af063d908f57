"""Size and time of exact cluster variables along the alternating walk.

Prints one row per step: term count, coefficient bit length and the
cumulative wall time.  Stops at the step budget or the time budget.

    python scripts/growth_profile.py --m 2 --n 3 --steps 10 --seconds 60
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from rank2cluster.cluster import Seed, mutate_seed


@dataclass(frozen=True)
class GrowthConfig:
    m: int = 2
    n: int = 3
    steps: int = 10
    seconds: float = 60.0


def profile(cfg: GrowthConfig):
    seed = Seed.initial(cfg.m, cfg.n)
    start = time.perf_counter()
    for step in range(1, cfg.steps + 1):
        d = 1 if step % 2 else 2
        seed = mutate_seed(seed, d)
        fresh = seed.var1 if d == 1 else seed.var2
        num = fresh.numerator
        bits = max(abs(int(c)).bit_length() for c in num.terms.values())
        elapsed = time.perf_counter() - start
        yield step, fresh.dvector, len(num), bits, elapsed
        if elapsed > cfg.seconds:
            break


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--m", type=int, default=GrowthConfig.m)
    ap.add_argument("--n", type=int, default=GrowthConfig.n)
    ap.add_argument("--steps", type=int, default=GrowthConfig.steps)
    ap.add_argument("--seconds", type=float, default=GrowthConfig.seconds)
    cfg = GrowthConfig(**vars(ap.parse_args()))
    print(f"{'step':>4} {'d-vector':>12} {'terms':>10} {'bits':>6} {'time/s':>9}")
    for step, dvec, terms, bits, elapsed in profile(cfg):
        print(f"{step:>4} {str(dvec):>12} {terms:>10} {bits:>6} {elapsed:>9.2f}")


if __name__ == "__main__":
    main()
