"""Ratio estimates log(delta(n+1)/delta(n)) as a function of n.

Hyperbolic matrices converge geometrically to log rho; the parabolic one
decays like 2/n.  Writes CSV to stdout, or a PNG with --plot.
"""

import argparse
import csv
import math
import sys
from dataclasses import dataclass, field

from mukai_entropy import FMMatrix, choose_twist, delta0_sequence, entropy_closed


@dataclass
class ConvergenceConfig:
    n_max: int = 60
    matrices: list[tuple[tuple[int, int, int, int], int]] = field(
        default_factory=lambda: [((2, 1, 1, 1), 1), ((2, -1, -1, 1), 1), ((3, 1, 4, 3), 2), ((2, 1, -1, 0), 1)]
    )


def rows(cfg: ConvergenceConfig):
    for entries, D in cfg.matrices:
        A = FMMatrix(*entries, D)
        m = choose_twist(A) if A.b and A.trace > 2 else 1
        seq = delta0_sequence(A, m, cfg.n_max)
        target = entropy_closed(A).h0
        for n, r in enumerate(seq.ratio_estimates):
            yield ",".join(map(str, entries)), D, n, r, abs(r - target) if not math.isnan(r) else math.nan


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--plot", default=None, help="write a log-scale error plot to this path")
    args = p.parse_args()
    data = list(rows(ConvergenceConfig(n_max=args.n_max)))
    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots()
        for key in dict.fromkeys((mat, D) for mat, D, *_ in data):
            pts = [(n, err) for mat, D, n, _, err in data if (mat, D) == key and err > 0]
            ax.semilogy(*zip(*pts), label=f"A=({key[0]}), D={key[1]}")
        ax.set_xlabel("n")
        ax.set_ylabel("|ratio - log rho|")
        ax.legend()
        fig.savefig(args.plot, dpi=120)
        return
    w = csv.writer(sys.stdout)
    w.writerow(["matrix", "D", "n", "ratio", "abs_error"])
    for mat, D, n, r, err in data:
        w.writerow([mat, D, n, f"{r:.15g}", f"{err:.3g}"])


if __name__ == "__main__":
    main()
