"""Command-line interface.

Subcommands:
  table1         lower-bound table for the block-transpose maps over a range
                 of ancilla dimensions (CSV or JSON output)
  discriminate   success-probability lower bound for one discrimination game
  structure      decompose an operator from a matrix file, or report none
  reversibility  the five-indicator reversibility report for a Choi matrix

Exit codes: 0 success, 1 compute failure, 2 usage or parse error. Every
command is deterministic given its full flag set including the seed.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import __version__
from .channels import LinearMapRep, gamma_channel, is_channel, psi_map
from .io import (
    MatrixFileError,
    TableRow,
    load_matrix,
    rows_to_csv,
    rows_to_json,
)
from .norms_opt import (
    OptConfig,
    discrimination_value,
    induced_trace_norm_hermitian_lb,
    induced_trace_norm_lb,
)
from .structure import extract_structure, reversibility_check

__all__ = ["main", "run_table1"]


def _add_opt_flags(p: argparse.ArgumentParser, starts_default: int = 1000) -> None:
    p.add_argument("--starts", type=int, default=starts_default,
                   help=f"number of random starts (default {starts_default}; use 50 as a fast CI profile)")
    p.add_argument("--tol", type=float, default=1e-5, help="stopping tolerance (default 1e-5)")
    p.add_argument("--seed", type=int, default=0, help="base seed; start s uses sub-seed (seed, s)")
    p.add_argument("--workers", type=int, default=1,
                   help="worker processes over starts (same results for any value)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cbnorm", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"cbnorm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table1", help="induced trace-norm lower-bound table")
    t.add_argument("--n", type=int, required=True, help="local dimension (>= 2)")
    t.add_argument("--m-min", type=int, default=None, help="smallest ancilla dimension (default n)")
    t.add_argument("--m-max", type=int, default=None, help="largest ancilla dimension (default n^2)")
    _add_opt_flags(t)
    t.add_argument("--out", default="-", help="output path, or - for stdout (default)")
    t.add_argument("--format", choices=("csv", "json"), default="csv")

    d = sub.add_parser("discriminate", help="discrimination success-probability lower bound")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--m", type=int, required=True, help="ancilla dimension")
    d.add_argument("--lam", type=float, required=True, help="prior probability of channel 0")
    _add_opt_flags(d)

    s = sub.add_parser("structure", help="decompose a unit-trace-norm operator")
    s.add_argument("input", help="matrix file (JSON) holding the operator")
    s.add_argument("--n", type=int, required=True, help="first subsystem dimension")
    s.add_argument("--m", type=int, required=True, help="second subsystem dimension")
    s.add_argument("--tol", type=float, default=1e-6)

    r = sub.add_parser("reversibility", help="reversibility report for a channel Choi matrix")
    r.add_argument("choi", help="matrix file (JSON) holding the Choi matrix")
    r.add_argument("--dim-in", type=int, required=True)
    r.add_argument("--dim-out", type=int, required=True)
    r.add_argument("--samples", type=int, default=20)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--tol", type=float, default=1e-6)

    return parser


def run_table1(n: int, m_min: int, m_max: int, starts: int, tol: float, seed: int,
               workers: int = 1, progress=None) -> list[TableRow]:
    """Compute one TableRow per ancilla dimension m for the k=2 map family."""
    target = psi_map(n, 2)
    rows = []
    for m in range(m_min, m_max + 1):
        cfg = OptConfig(num_starts=starts, stop_tol=tol, max_iters=10000, seed=seed)
        t0 = time.perf_counter()
        general = induced_trace_norm_lb(target, m, cfg, workers=workers)
        hermitian = induced_trace_norm_hermitian_lb(target, m, cfg, workers=workers)
        elapsed_ms = int(round((time.perf_counter() - t0) * 1000))
        rows.append(TableRow(n=n, m=m, value=general.value, value_hermitian=hermitian.value,
                             starts=starts, tol=tol, seed=seed, wall_time_ms=elapsed_ms))
        if progress is not None:
            progress(rows[-1])
    return rows


def _cmd_table1(args) -> int:
    if args.n < 2:
        return _usage_error("--n must be at least 2")
    m_min = args.n if args.m_min is None else args.m_min
    m_max = args.n * args.n if args.m_max is None else args.m_max
    if not args.n <= m_min <= m_max <= args.n * args.n:
        return _usage_error(f"need n <= m-min <= m-max <= n^2, got n={args.n}, "
                            f"m-min={m_min}, m-max={m_max}")
    if args.starts < 1 or args.tol <= 0:
        return _usage_error("--starts must be >= 1 and --tol positive")

    def progress(row: TableRow) -> None:
        print(f"m={row.m}: value={row.value:.6f} hermitian={row.value_hermitian:.6f} "
              f"({row.wall_time_ms} ms)", file=sys.stderr)

    rows = run_table1(args.n, m_min, m_max, args.starts, args.tol, args.seed,
                      workers=args.workers, progress=progress)
    text = rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _cmd_discriminate(args) -> int:
    if args.n < 2 or args.k < 1 or args.m < 1:
        return _usage_error("need n >= 2, k >= 1, m >= 1")
    if not 0.0 <= args.lam <= 1.0:
        return _usage_error("--lam must lie in [0, 1]")
    cfg = OptConfig(num_starts=args.starts, stop_tol=args.tol, max_iters=10000, seed=args.seed)
    value = discrimination_value(
        gamma_channel(args.n, args.k, 0),
        gamma_channel(args.n, args.k, 1),
        args.lam,
        args.m,
        cfg,
        workers=args.workers,
    )
    print(f"success probability lower bound: {value:.10f}")
    return 0


def _cmd_structure(args) -> int:
    try:
        x = load_matrix(args.input)
    except MatrixFileError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: cannot read {args.input}: {e}", file=sys.stderr)
        return 1
    side = args.n * args.m
    if x.shape != (side, side):
        print(f"error: matrix is {x.shape[0]}x{x.shape[1]}, expected {side}x{side}",
              file=sys.stderr)
        return 2
    dec = extract_structure(x, args.n, args.m, tol=args.tol)
    if dec is None:
        print("none")
    else:
        spectrum = ", ".join(repr(float(s.real)) for s in np.diagonal(dec.sigma))
        print(f"r = {dec.r}")
        print(f"sigma spectrum: {spectrum}")
        print(f"residual = {dec.residual:.3e}")
    return 0


def _cmd_reversibility(args) -> int:
    try:
        choi = load_matrix(args.choi)
    except MatrixFileError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: cannot read {args.choi}: {e}", file=sys.stderr)
        return 1
    side = args.dim_in * args.dim_out
    if choi.shape != (side, side):
        print(f"error: Choi matrix is {choi.shape[0]}x{choi.shape[1]}, expected {side}x{side}",
              file=sys.stderr)
        return 2
    m = LinearMapRep(args.dim_in, args.dim_out, choi)
    if not is_channel(m, tol=args.tol):
        herm = np.abs(choi - choi.conj().T).max()
        eigs = np.linalg.eigvalsh((choi + choi.conj().T) / 2)
        from .tensor_ops import partial_trace

        tp_defect = np.abs(
            partial_trace(choi, (args.dim_in, args.dim_out), keep=1) - np.eye(args.dim_in)
        ).max()
        print(
            "error: not a channel within tolerance "
            f"(hermiticity defect {herm:.2e}, min Choi eigenvalue {eigs.min():.2e}, "
            f"trace-preservation defect {tp_defect:.2e})",
            file=sys.stderr,
        )
        return 2
    report = reversibility_check(m, samples=args.samples, seed=args.seed, tol=args.tol)
    found = "found" if report.structure is not None else "none"
    extra = f" (r={report.structure.r})" if report.structure is not None else ""
    print(f"structure: {found}{extra}")
    if report.structure is not None:
        spectrum = ", ".join(repr(float(s.real)) for s in np.diagonal(report.structure.sigma))
        print(f"sigma spectrum: {spectrum}")
    print(f"trace_norm_preserving: {str(report.trace_norm_preserving).lower()}")
    print(f"fidelity_preserving: {str(report.fidelity_preserving).lower()}")
    print(f"complement_constant: {str(report.complement_constant).lower()}")
    print(f"left_inverse: {'verified' if report.left_inverse is not None else 'none'}")
    print(f"verdict: {'reversible' if report.verdict else 'not reversible'}")
    if not report.consistent:
        print("warning: indicators disagree; internal inconsistency", file=sys.stderr)
    return 0


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "table1": _cmd_table1,
        "discriminate": _cmd_discriminate,
        "structure": _cmd_structure,
        "reversibility": _cmd_reversibility,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, np.linalg.LinAlgError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
