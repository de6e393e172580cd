"""Closed form against the growth estimate for one matrix per case.

    python scripts/entropy_table.py --n-max 40 --t 0 1 2
"""

import argparse
import csv
import sys
from dataclasses import dataclass, field

from mukai_entropy import FMMatrix, entropy_closed, entropy_estimate, shift_drift


@dataclass
class TableConfig:
    n_max: int = 40
    t_values: list[float] = field(default_factory=lambda: [0.0, 1.0, 2.0])
    cases: list[tuple[str, tuple[int, int, int, int], int]] = field(
        default_factory=lambda: [
            ("b=0", (1, 0, 3, 1), 1),
            ("b>0 hyperbolic", (2, 1, 1, 1), 1),
            ("b>0 tr=2", (2, 1, -1, 0), 1),
            ("b>0 tr=1", (1, 1, -1, 0), 1),
            ("b>0 tr=0", (0, 1, -1, 0), 1),
            ("b<0 hyperbolic", (2, -1, -1, 1), 1),
            ("b<0 tr=1", (1, -1, 1, 0), 1),
            ("b<0 tr=0", (0, -1, 1, 0), 1),
            ("b>0 hyperbolic D=2", (3, 1, 4, 3), 2),
        ]
    )


def run(cfg: TableConfig, out=sys.stdout) -> None:
    w = csv.writer(out)
    w.writerow(["case", "matrix", "D", "t", "closed", "estimate", "drift", "abs_error"])
    for name, entries, D in cfg.cases:
        A = FMMatrix(*entries, D)
        h = entropy_closed(A)
        drift = shift_drift(A)
        for t in cfg.t_values:
            closed = h(t)
            if abs(A.trace) == 2:
                # polynomial growth; the ratio decays like 2/n
                est = float("nan")
            else:
                est = entropy_estimate(A, t, cfg.n_max)
            w.writerow([name, ",".join(map(str, entries)), D, t, f"{closed:.12g}", f"{est:.12g}", drift, f"{abs(est - closed):.3g}"])


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--t", type=float, nargs="+", default=[0.0, 1.0, 2.0])
    args = p.parse_args()
    run(TableConfig(n_max=args.n_max, t_values=args.t))


if __name__ == "__main__":
    main()
