"""Command-line front end.

Examples::

    mukai-entropy --D 1 --matrix 2,1,1,1 --mode closed --t 0:2:5
    mukai-entropy --D 1 --matrix 2,-1,-1,1 --mode estimate --format json
    mukai-entropy --mode verify

Documents go to stdout, diagnostics to stderr.  Exit status is 0 on
success, 1 when a verification check fails and 2 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .entropy import (
    choose_twist,
    delta0_sequence,
    entropy_closed,
    entropy_estimate,
    kt_check,
    mass_growth_estimate,
    shift_drift,
    slope_fixed_point,
)
from .errors import MukaiError
from .exact_arith import to_float
from .fm_group import (
    FMMatrix,
    factor_isotropic_pair,
    ghat_act,
    make_fm,
    power,
    power_closed,
    random_fm,
)
from .mukai_lattice import MukaiVector, b_form, iota, lemma_d_search, pairing
from .sympow import ppav_entropy, sym_power

log = logging.getLogger("mukai_entropy")

MODES = ("closed", "estimate", "sequence", "verify", "sympow", "lemma-d", "factor")
CSV_COLUMNS = ("t", "h_t", "rho_exact", "slope")
THREADS_ENV = "MUKAI_ENTROPY_THREADS"

JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["mode", "D", "matrix", "rows", "summary"],
    "properties": {
        "mode": {"enum": list(MODES)},
        "D": {"type": "integer", "minimum": 1},
        "matrix": {
            "oneOf": [
                {"type": "null"},
                {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4},
            ]
        },
        "rows": {"type": "array", "items": {"type": "object"}},
        "summary": {"type": "object"},
    },
    "additionalProperties": False,
}


@dataclass
class RunConfig:
    D: int = 1
    matrix: tuple[int, int, int, int] = (2, 1, 1, 1)
    mode: str = "closed"
    t_min: float = 0.0
    t_max: float = 2.0
    t_steps: int = 5
    n_max: int = 40
    m: int | None = None
    sym_d: int | None = None
    output_format: str = "csv"
    seed: int | None = 0
    k: int = 0
    lemma_m: int = 1
    bound: int = 30
    v1: tuple[int, int, int] | None = None
    v2: tuple[int, int, int] | None = None
    random_cases: int = 20
    isometry_cases: int = 1000

    def validate(self) -> None:
        if self.mode not in MODES:
            raise MukaiError(f"unknown mode {self.mode!r}")
        if self.t_steps < 1:
            raise MukaiError("t_steps must be >= 1")
        if self.mode in ("estimate", "sequence") and self.n_max < 2:
            raise MukaiError("n_max must be >= 2")
        if self.mode == "factor" and (self.v1 is None or self.v2 is None):
            raise MukaiError("factor mode needs --v1 and --v2")

    @property
    def t_grid(self) -> list[float]:
        if self.t_steps == 1:
            return [self.t_min]
        step = (self.t_max - self.t_min) / (self.t_steps - 1)
        return [self.t_min + i * step for i in range(self.t_steps)]


@dataclass
class Document:
    mode: str
    D: int
    matrix: list[int] | None
    rows: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    columns: Sequence[str] = CSV_COLUMNS
    failed: bool = False

    def to_json(self) -> str:
        body = {"mode": self.mode, "D": self.D, "matrix": self.matrix, "rows": self.rows, "summary": self.summary}
        return json.dumps(body, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(self.columns), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row)
        return buf.getvalue()


def fmt(x: float) -> str:
    return f"{x:.15g}"


def _ints(text: str, n: int, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise MukaiError(f"{what} must be {n} comma-separated integers, got {text!r}") from None
    if len(vals) != n:
        raise MukaiError(f"{what} must be {n} comma-separated integers, got {text!r}")
    return vals


def _grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            t = float(parts[0])
            return t, t, 1
        if len(parts) == 3:
            return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        pass
    raise MukaiError(f"t-grid must be 'min:max:steps' or a single value, got {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MukaiError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="mukai-entropy",
        description="Categorical entropy of Fourier-Mukai transforms on abelian surfaces",
    )
    p.add_argument("--D", type=int, default=1, help="half the self-intersection (H^2)/2")
    p.add_argument("--matrix", default="2,1,1,1", help="a,b,c,d of [[a, b sqrt(D)], [c sqrt(D), d]]; plain 2x2 row-major in sympow mode")
    p.add_argument("--mode", choices=MODES, default="closed")
    p.add_argument("--t", dest="t_grid", default="0:2:5", help="t grid as min:max:steps")
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--m", type=int, default=None, help="twist override for the generators")
    p.add_argument("--sym-d", type=int, default=None, help="symmetric power degree (sympow mode)")
    p.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=0, help="base twist for lemma-d")
    p.add_argument("--lemma-m", type=int, default=1, help="step for lemma-d")
    p.add_argument("--bound", type=int, default=30, help="box bound for lemma-d")
    p.add_argument("--v1", default=None, help="r,d,a of v(Phi(O)) for factor mode")
    p.add_argument("--v2", default=None, help="r,d,a of v(Phi(point)) for factor mode")
    p.add_argument("--random-cases", type=int, default=20)
    p.add_argument("--isometry-cases", type=int, default=1000)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


_LIST_FLAGS = ("--matrix", "--v1", "--v2", "--t")


def _glue_negative_lists(argv: Sequence[str]) -> list[str]:
    # argparse takes "-2,-1,-1,-1" for an option; rewrite to "--matrix=-2,..."
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _LIST_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def config_from_args(argv: Sequence[str] | None = None) -> tuple[RunConfig, bool]:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_lists(argv))
    t_min, t_max, t_steps = _grid(args.t_grid)
    cfg = RunConfig(
        D=args.D,
        matrix=_ints(args.matrix, 4, "--matrix"),
        mode=args.mode,
        t_min=t_min,
        t_max=t_max,
        t_steps=t_steps,
        n_max=args.n_max,
        m=args.m,
        sym_d=args.sym_d,
        output_format=args.output_format,
        seed=args.seed,
        k=args.k,
        lemma_m=args.lemma_m,
        bound=args.bound,
        v1=_ints(args.v1, 3, "--v1") if args.v1 else None,
        v2=_ints(args.v2, 3, "--v2") if args.v2 else None,
        random_cases=args.random_cases,
        isometry_cases=args.isometry_cases,
    )
    return cfg, args.verbose


# mode handlers


def _matrix(cfg: RunConfig) -> FMMatrix:
    A = make_fm(*cfg.matrix, cfg.D)
    if A.negated:
        log.warning("matrix negated to reach tr >= 0: %s", A)
    return A


def _closed_rows(A: FMMatrix, grid: list[float]) -> tuple[list[dict], dict]:
    h = entropy_closed(A)
    rho_exact = str(h.rho)
    rows = [{"t": fmt(t), "h_t": fmt(h(t)), "rho_exact": rho_exact, "slope": str(h.slope)} for t in grid]
    summary = {
        "rho_exact": rho_exact,
        "rho": fmt(to_float(h.rho)),
        "h0": fmt(h.h0),
        "slope": str(h.slope),
        "formula": h.describe(),
        "trace": A.trace,
        "negated": A.negated,
    }
    return rows, summary


def run_closed(cfg: RunConfig) -> Document:
    A = _matrix(cfg)
    rows, summary = _closed_rows(A, cfg.t_grid)
    return Document("closed", cfg.D, list(A.entries), rows, summary)


def _twist(cfg: RunConfig, A: FMMatrix) -> int:
    if cfg.m is None:
        return choose_twist(A) if A.b != 0 and A.trace >= 2 else 1
    if cfg.m < 1:
        raise MukaiError("--m must be positive")
    if A.b != 0 and A.trace >= 2 and cfg.m <= abs(slope_fixed_point(A)) + 1:
        log.warning("twist m=%d does not exceed |s|+1; shifts may not stabilize", cfg.m)
    return cfg.m


def run_estimate(cfg: RunConfig) -> Document:
    A = _matrix(cfg)
    closed = entropy_closed(A)
    m = _twist(cfg, A)
    rows = []
    for t in cfg.t_grid:
        est = entropy_estimate(A, t, cfg.n_max, m=m)
        rows.append({
            "t": fmt(t),
            "h_t": fmt(est),
            "rho_exact": str(closed.rho),
            "slope": str(shift_drift(A)),
            "h_t_closed": fmt(closed(t)),
            "abs_error": fmt(abs(est - closed(t))),
        })
    summary = {"m": m, "n_max": cfg.n_max, "drift": str(shift_drift(A))}
    if abs(A.trace) > 1:
        seq = delta0_sequence(A, m, cfg.n_max)
        tail = seq.ratio_estimates[-3:]
        summary["last_ratio_estimates"] = [fmt(r) for r in tail]
        summary["ratio_change"] = fmt(abs(tail[-1] - tail[-2]))
    doc = Document("estimate", cfg.D, list(A.entries), rows, summary)
    doc.columns = CSV_COLUMNS + ("h_t_closed", "abs_error")
    return doc


def run_sequence(cfg: RunConfig) -> Document:
    A = _matrix(cfg)
    m = _twist(cfg, A)
    seq = delta0_sequence(A, m, cfg.n_max)
    rows = []
    for n, delta in zip(seq.n_values, seq.delta_values):
        ratio = seq.ratio_estimates[n] if n < len(seq.ratio_estimates) else math.nan
        rows.append({"n": n, "delta": str(delta), "ratio": "" if math.isnan(ratio) else fmt(ratio)})
    doc = Document("sequence", cfg.D, list(A.entries), rows, {"m": m, "n_max": cfg.n_max})
    doc.columns = ("n", "delta", "ratio")
    return doc


def run_sympow(cfg: RunConfig) -> Document:
    M = [list(cfg.matrix[:2]), list(cfg.matrix[2:])]
    d = cfg.sym_d or 2
    rep = sym_power(M, d)
    rows = [{"row": i, "entries": list(r)} for i, r in enumerate(rep.matrix)]
    summary: dict = {"d": d}
    tr = M[0][0] + M[1][1]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if det == 1 and tr < -2:
        summary["entropy"] = [{"t": fmt(t), "h_t": fmt(ppav_entropy(M, d, t))} for t in cfg.t_grid]
    else:
        summary["entropy"] = None
        log.warning("entropy formula only covers det 1 and tr < -2; matrix only")
    doc = Document("sympow", cfg.D, list(cfg.matrix), rows, summary)
    doc.columns = ("row", "entries")
    return doc


def run_lemma_d(cfg: RunConfig) -> Document:
    hit = lemma_d_search(cfg.D, cfg.k, cfg.lemma_m, cfg.bound)
    summary = {
        "k": cfg.k,
        "m": cfg.lemma_m,
        "bound": cfg.bound,
        "counterexample": None if hit is None else list(hit),
    }
    doc = Document("lemma-d", cfg.D, None, [], summary, columns=("k", "m", "bound", "counterexample"))
    doc.rows = [dict(summary, counterexample="" if hit is None else ",".join(map(str, hit)))]
    doc.failed = hit is not None
    return doc


def run_factor(cfg: RunConfig) -> Document:
    v1, v2 = MukaiVector(*cfg.v1), MukaiVector(*cfg.v2)
    g = factor_isotropic_pair(v1, v2, cfg.D)
    row = {"p1": g.p1, "q1": g.q1, "p2": g.p2, "q2": g.q2, "r1": g.r1, "r2": g.r2}
    doc = Document("factor", cfg.D, None, [row], {"v1": list(v1), "v2": list(v2)})
    doc.columns = tuple(row)
    return doc


# verify


def _check_closed_vs_estimate(A: FMMatrix, cfg: RunConfig) -> tuple[bool, str]:
    closed = entropy_closed(A)
    if abs(A.trace) == 2:
        # polynomial growth: exact constancy of second differences means rate 0
        seq = delta0_sequence(A, _twist(cfg, A), max(cfg.n_max, 10))
        d = seq.delta_values
        second = {d[n + 2] - 2 * d[n + 1] + d[n] for n in range(len(d) - 2)}
        drift_ok = shift_drift(A) == closed.slope
        return len(second) == 1 and closed.rho_is_one and drift_ok, f"second differences {sorted(second)}"
    worst = 0.0
    for t in cfg.t_grid:
        worst = max(worst, abs(entropy_estimate(A, t, cfg.n_max, m=_twist(cfg, A)) - closed(t)))
    return worst < 1e-6, f"max |estimate - closed| = {worst:.3e}"


def _check_kt(A: FMMatrix, cfg: RunConfig) -> tuple[bool, str]:
    if abs(A.trace) <= 2:
        return True, "skipped: not hyperbolic"
    rep = kt_check(A, cfg.n_max, 1e-6)
    return rep.passed, f"|h0 - log rho| = {rep.difference:.3e}"


def _check_random_kt(cfg: RunConfig) -> tuple[bool, str]:
    rng = random.Random(cfg.seed)
    worst = 0.0
    for _ in range(cfg.random_cases):
        A = random_fm(rng, rng.choice((1, 2, 3, 6)))
        worst = max(worst, kt_check(A, cfg.n_max, 1e-6).difference)
    return worst < 1e-6, f"{cfg.random_cases} random hyperbolic, worst {worst:.3e}"


def _check_power(A: FMMatrix) -> tuple[bool, str]:
    tr = abs(A.trace)
    top = 50 if tr > 2 else 1000 if tr == 2 else (4 if tr == 0 else 6) * 100
    Pn = power(A, 0)
    for n in range(top + 1):
        if power_closed(A, n) != Pn:
            return False, f"power_closed != power at n={n}"
        Pn = Pn @ A
    return True, f"n <= {top}"


def _check_isometry(A: FMMatrix, cfg: RunConfig) -> tuple[bool, str]:
    rng = random.Random(cfg.seed)
    fails = 0
    for i in range(cfg.isometry_cases):
        if i % 2:
            D = rng.randint(1, 12)
            B = random_fm(rng, D, min_trace=0)
        else:
            B = A
        v = MukaiVector(*(rng.randint(-20, 20) for _ in range(3)))
        w = MukaiVector(*(rng.randint(-20, 20) for _ in range(3)))
        lhs = b_form(ghat_act(B, iota(v)), ghat_act(B, iota(w)), B.D)
        fails += lhs != pairing(v, w, B.D)
    return fails == 0, f"{cfg.isometry_cases} cases, {fails} failures"


def _check_drift(A: FMMatrix) -> tuple[bool, str]:
    d, s = shift_drift(A), entropy_closed(A).slope
    return d == s, f"drift {d}, closed slope {s}"


def _check_mass(A: FMMatrix, cfg: RunConfig) -> tuple[bool, str]:
    if abs(A.trace) <= 2:
        return True, "skipped: not hyperbolic"
    m = _twist(cfg, A)
    diff = abs(mass_growth_estimate(A, 1j, m, cfg.n_max) - entropy_estimate(A, 0.0, cfg.n_max, m=m))
    return diff < 1e-6, f"|mass - delta| = {diff:.3e}"


def run_verify(cfg: RunConfig) -> Document:
    A = _matrix(cfg)
    checks: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
        ("closed_vs_estimate", lambda: _check_closed_vs_estimate(A, cfg)),
        ("kt_check", lambda: _check_kt(A, cfg)),
        ("kt_random", lambda: _check_random_kt(cfg)),
        ("power_oracle", lambda: _check_power(A)),
        ("isometry", lambda: _check_isometry(A, cfg)),
        ("drift_matches_slope", lambda: _check_drift(A)),
        ("mass_growth", lambda: _check_mass(A, cfg)),
    ]
    threads = max(1, int(os.environ.get(THREADS_ENV, "1") or 1))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda item: item[1](), checks))
    rows = [
        {"check": name, "passed": ok, "detail": detail}
        for (name, _), (ok, detail) in zip(checks, results)
    ]
    failed = not all(r["passed"] for r in rows)
    doc = Document("verify", cfg.D, list(A.entries), rows, {"passed": not failed, "seed": cfg.seed})
    doc.columns = ("check", "passed", "detail")
    doc.failed = failed
    return doc


HANDLERS = {
    "closed": run_closed,
    "estimate": run_estimate,
    "sequence": run_sequence,
    "verify": run_verify,
    "sympow": run_sympow,
    "lemma-d": run_lemma_d,
    "factor": run_factor,
}


def run(cfg: RunConfig) -> tuple[int, Document]:
    cfg.validate()
    doc = HANDLERS[cfg.mode](cfg)
    return (1 if doc.failed else 0), doc


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        cfg, verbose = config_from_args(argv)
        if verbose:
            log.setLevel(logging.INFO)
        code, doc = run(cfg)
    except MukaiError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    out = doc.to_json() if cfg.output_format == "json" else doc.to_csv()
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
