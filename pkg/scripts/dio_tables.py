"""Orbit against brute force for every preset equation.

    python scripts/dio_tables.py --bound 2000 --threads 1
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from rank2cluster.diophantine import PRESET_NAMES, certify_completeness, preset


@dataclass(frozen=True)
class DioConfig:
    bound: int = 2000
    threads: int = 1
    list_pairs: bool = False


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--bound", type=int, default=DioConfig.bound)
    ap.add_argument("--threads", type=int, default=DioConfig.threads)
    ap.add_argument("--list-pairs", action="store_true")
    cfg = DioConfig(**vars(ap.parse_args()))

    print(f"{'preset':>6} {'(m,n)':>6} {'level':>6} {'orbit':>6} {'brute':>6} {'closed':>7} {'verdict':>22} {'time/s':>7}")
    for name in PRESET_NAMES:
        eq = preset(name)
        start = time.perf_counter()
        cert = certify_completeness(eq, cfg.bound, cfg.threads)
        elapsed = time.perf_counter() - start
        print(
            f"{name:>6} {f'({eq.m},{eq.n})':>6} {str(eq.level):>6} {len(cert.orbit.nodes):>6} {len(cert.brute):>6}"
            f" {str(cert.orbit.closed):>7} {cert.verdict:>22} {elapsed:>7.2f}"
        )
        if cfg.list_pairs:
            print("        " + " ".join(f"({a},{b})" for a, b in (n.pair for n in cert.orbit.nodes)))


if __name__ == "__main__":
    main()
