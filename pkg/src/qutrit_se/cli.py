"""Command-line front end.

Commands
--------
curves      CSV survival curves (s, fidelity, negativity) over a1*t
threshold   crossing times and the preservation verdict for one parameter set
compare     qubit-vs-qutrit verdict grid over the rate ratios (A2/A1, A3/A1)
haar        second-moment report for Haar-random pure states
validate    self-check suite with measured defects; exit 1 on any failure

All times are reported in the dimensionless combination a1*t. CSV numbers
carry at most 9 significant digits with '.' as the decimal separator and LF
line endings; reports are key=value lines. Exit codes: 0 success, 1 failed
validation, 2 bad usage.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import analysis, channels, states, su
from .channels import ChannelParams
from .linalg import random_density_matrix

__all__ = ["RunConfig", "main"]

_GENERATOR_NAME = "PCG64"


@dataclass(frozen=True)
class RunConfig:
    """Validated bundle of every CLI knob (defaults match the figures)."""

    command: str
    a1: float = 1.0
    a2: float = 1.0
    a3: float = 1.0
    p: float = 1.0
    q: float = 0.5
    t_max: float = 5.0
    steps: int = 500
    samples: int = 200_000
    seed: int = 42
    output: Optional[str] = None

    def __post_init__(self) -> None:
        if min(self.a1, self.a2, self.a3) <= 0:
            raise ValueError("decay rates a1, a2, a3 must be positive")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError("q must lie in [0, 1]")
        if self.t_max <= 0:
            raise ValueError("t-max must be positive")
        if self.steps < 2:
            raise ValueError("steps must be >= 2")
        if self.samples < 100:
            raise ValueError("samples must be >= 100")

    @property
    def params(self) -> ChannelParams:
        return ChannelParams(a1=self.a1, a2=self.a2, a3=self.a3, q=self.q)


def _fmt(x: float, digits: int = 9) -> str:
    return format(float(x), f".{digits}g")


@contextmanager
def _out_stream(path: Optional[str]):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def run_curves(cfg: RunConfig, out) -> int:
    report = analysis.separability_report(
        cfg.p, cfg.params, t_max=cfg.t_max, steps=cfg.steps
    )
    out.write("t,s_qubit,s_qutrit,F_qubit,F_qutrit,neg_qubit,neg_qutrit\n")
    for row in report.rows:
        out.write(",".join(_fmt(x) for x in row) + "\n")
    return 0


def run_threshold(cfg: RunConfig, out) -> int:
    report = analysis.separability_report(cfg.p, cfg.params, steps=2)

    def cross_line(key: str, value: Optional[float]) -> str:
        return f"{key}={_fmt(value) if value is not None else 'separable_at_t0'}\n"

    out.write(f"p={_fmt(cfg.p)}\n")
    out.write(f"a21={_fmt(cfg.a2 / cfg.a1)}\n")
    out.write(f"a31={_fmt(cfg.a3 / cfg.a1)}\n")
    out.write(cross_line("t_cross_qubit", report.t_cross_qubit))
    out.write(cross_line("t_cross_qutrit", report.t_cross_qutrit))
    if cfg.p > analysis.QUBIT_SEP_THRESHOLD:
        closed = analysis.qubit_crossing_closed(cfg.p, cfg.a1) * cfg.a1
        out.write(f"t_qubit_closed={_fmt(closed)}\n")
    else:
        out.write("t_qubit_closed=separable_at_t0\n")
    if cfg.p > 0:
        verdict = analysis.preservation_inequality(
            cfg.p, cfg.a2 / cfg.a1, cfg.a3 / cfg.a1
        )
        out.write(f"preservation_inequality={str(verdict).lower()}\n")
    else:
        out.write("preservation_inequality=undefined\n")
    out.write(f"qutrit_preserves_longer={str(report.qutrit_preserves_longer).lower()}\n")
    return 0


def run_compare(cfg: RunConfig, out) -> int:
    grid = np.linspace(0.2, 5.0, 10)
    out.write("a21,a31,t_qubit,t_qutrit,inequality,agree\n")
    t_qb = analysis.crossing_time(
        lambda t: analysis.s_qubit_closed(cfg.p, ChannelParams(t=t)),
        analysis.QUBIT_SEP_THRESHOLD,
    )
    for a21 in grid:
        for a31 in grid:
            par = ChannelParams(a1=1.0, a2=a21, a3=a31)
            t_qt = analysis.crossing_time(
                lambda t: analysis.s_qutrit_closed(cfg.p, par.with_time(t)),
                analysis.QUTRIT_SEP_THRESHOLD,
            )
            verdict = analysis.preservation_inequality(cfg.p, a21, a31)
            agree = verdict == (t_qt >= t_qb)
            out.write(
                f"{_fmt(a21)},{_fmt(a31)},{_fmt(t_qb)},{_fmt(t_qt)},"
                f"{str(verdict).lower()},{str(agree).lower()}\n"
            )
    return 0


def run_haar(cfg: RunConfig, out) -> int:
    out.write(f"generator={_GENERATOR_NAME}\n")
    out.write(f"seed={cfg.seed}\n")
    for d, samples, target, quantum in (
        (2, cfg.samples // 2, 1.0 / 3.0, 1.0),
        (3, cfg.samples, 1.0 / 8.0, 0.5),
    ):
        name = "qubit" if d == 2 else "qutrit"
        m = analysis.haar_moment_check(d, samples, cfg.seed)
        diag_dev = np.max(np.abs(np.diag(m) - target))
        off_dev = np.max(np.abs(m - np.diag(np.diag(m))))
        ratio = np.mean(np.diag(m)) / quantum
        out.write(f"{name}_samples={samples}\n")
        out.write(f"{name}_mean_diag={_fmt(np.mean(np.diag(m)), 17)}\n")
        out.write(f"{name}_max_diag_dev={_fmt(diag_dev, 17)}\n")
        out.write(f"{name}_max_offdiag_dev={_fmt(off_dev, 17)}\n")
        out.write(f"{name}_classical_quantum_ratio={_fmt(ratio, 17)}\n")
    return 0


def _validate_checks(cfg: RunConfig):
    """Yield (name, measured_defect, tolerance) for every self-check."""
    rng = np.random.default_rng(cfg.seed)
    rate_pairs = ((1.0, 1.0), (2.0, 1.0), (0.5, 3.0))
    times = (0.0, 0.1, 1.0, 10.0)

    defect = 0.0
    for a2, a3 in rate_pairs:
        for t in times:
            par = ChannelParams(a1=a2, a2=a2, a3=a3, t=t)
            defect = max(defect, channels.se_kraus_qubit(par).completeness_defect())
    yield "kraus_completeness_qubit", defect, 1e-12

    defect = 0.0
    for a2, a3 in rate_pairs:
        for t in times:
            par = ChannelParams(a2=a2, a3=a3, t=t)
            defect = max(defect, channels.se_kraus_qutrit(par).completeness_defect())
    yield "kraus_completeness_qutrit", defect, 1e-12

    par = ChannelParams(a2=1.0, a3=0.7)
    defect = 0.0
    for _ in range(5):
        rho = random_density_matrix(3, rng)
        n0 = su.density_to_bloch(rho)
        for t in (0.3, 1.0, 2.5):
            at = par.with_time(t)
            via_kraus = channels.apply_kraus(rho, channels.se_kraus_qutrit(at))
            via_affine = su.bloch_to_density(channels.se_affine_map(at).apply(n0))
            defect = max(defect, float(np.max(np.abs(via_kraus - via_affine))))
    yield "kraus_vs_affine", defect, 1e-10

    defect = 0.0
    for _ in range(2):
        rho = random_density_matrix(3, rng)
        at = par.with_time(0.7)
        via_kraus = channels.apply_kraus(rho, channels.se_kraus_qutrit(at))
        via_ode = channels.lindblad_evolve(rho, at, steps=700)
        defect = max(defect, float(np.max(np.abs(via_kraus - via_ode))))
    yield "kraus_vs_lindblad", defect, 1e-6

    defect = 0.0
    for d in (2, 3):
        for _ in range(20):
            rho = random_density_matrix(d, rng)
            back = su.bloch_to_density(su.density_to_bloch(rho))
            defect = max(defect, float(np.max(np.abs(back - rho))))
    yield "bloch_round_trip", defect, 1e-12

    blochs = analysis.haar_bloch_vectors(3, 200, cfg.seed)
    defect = 0.0
    for n in blochs:
        defect = max(defect, abs(n @ n - 1.0))
        defect = max(defect, float(np.max(np.abs(su.star_product(n, n) - n))))
    yield "pure_state_conditions", defect, 1e-10

    yield "ppt_threshold_qubit", abs(analysis.ppt_threshold(2) - 1.0 / 3.0), 1e-4
    yield "ppt_threshold_qutrit", abs(analysis.ppt_threshold(3) - 0.25), 1e-4

    m2 = analysis.haar_moment_check(2, 20_000, cfg.seed)
    yield "haar_moments_qubit", float(np.max(np.abs(m2 - np.eye(3) / 3.0))), 0.02
    m3 = analysis.haar_moment_check(3, 20_000, cfg.seed)
    yield "haar_moments_qutrit", float(np.max(np.abs(m3 - np.eye(8) / 8.0))), 0.02

    par = ChannelParams(a2=1.3, a3=0.4)
    m_a = channels.se_affine_map(par.with_time(0.6))
    m_b = channels.se_affine_map(par.with_time(1.1))
    m_ab = channels.se_affine_map(par.with_time(1.7))
    defect = max(
        float(np.max(np.abs(m_b.damping @ m_a.damping - m_ab.damping))),
        float(np.max(np.abs(m_b.damping @ m_a.shift + m_b.shift - m_ab.shift))),
    )
    yield "affine_semigroup", defect, 1e-12

    at = ChannelParams(t=1.0)
    rho3 = channels.bipartite_channel(
        states.werner(3, 1.0), channels.se_kraus_qutrit(at), "symmetric", 0.5
    )
    defect = abs(analysis.fidelity_from_state(rho3, 3) - analysis.fidelity_closed(3, at))
    yield "fidelity_closed_vs_state", defect, 1e-10

    t_closed = analysis.qubit_crossing_closed(1.0)
    t_bisect = analysis.crossing_time(
        lambda t: analysis.s_qubit_closed(1.0, ChannelParams(t=t)),
        analysis.QUBIT_SEP_THRESHOLD,
    )
    yield "qubit_crossing_closed_vs_bisection", abs(t_closed - t_bisect), 1e-8


def run_validate(cfg: RunConfig, out) -> int:
    failed = 0
    total = 0
    for name, defect, tol in _validate_checks(cfg):
        ok = defect <= tol
        failed += 0 if ok else 1
        total += 1
        out.write(
            f"check={name} defect={format(defect, '.3e')} "
            f"tol={format(tol, '.0e')} pass={str(ok).lower()}\n"
        )
    out.write(f"result={'pass' if failed == 0 else 'fail'} checks={total} failed={failed}\n")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qutrit-se",
        description="Spontaneous-emission channel curves, thresholds and self-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_rates(sp):
        sp.add_argument("--a1", type=float, default=1.0, help="qubit decay rate")
        sp.add_argument("--a2", type=float, default=1.0, help="first qutrit decay rate")
        sp.add_argument("--a3", type=float, default=1.0, help="second qutrit decay rate")

    def add_output(sp):
        sp.add_argument("--output", default=None, help="write to file instead of stdout")

    sp = sub.add_parser("curves", help="survival-curve CSV over a1*t")
    add_rates(sp)
    sp.add_argument("--p", type=float, default=1.0, help="Werner weight")
    sp.add_argument("--q", type=float, default=0.5, help="two-sided mixing weight")
    sp.add_argument("--t-max", type=float, default=5.0, help="max a1*t")
    sp.add_argument("--steps", type=int, default=500, help="grid intervals")
    add_output(sp)

    sp = sub.add_parser("threshold", help="crossing times and preservation verdict")
    add_rates(sp)
    sp.add_argument("--p", type=float, default=1.0, help="Werner weight")
    add_output(sp)

    sp = sub.add_parser("compare", help="verdict grid over (a2/a1, a3/a1)")
    sp.add_argument("--p", type=float, default=1.0, help="Werner weight")
    add_output(sp)

    sp = sub.add_parser("haar", help="Haar second-moment report")
    sp.add_argument("--samples", type=int, default=200_000, help="qutrit sample count")
    sp.add_argument("--seed", type=int, default=42, help="RNG seed")
    add_output(sp)

    sp = sub.add_parser("validate", help="run the self-check suite")
    sp.add_argument("--seed", type=int, default=42, help="RNG seed")
    add_output(sp)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fields = ("a1", "a2", "a3", "p", "q", "t_max", "steps", "samples", "seed", "output")
    kwargs = {k: getattr(args, k) for k in fields if hasattr(args, k)}
    try:
        cfg = RunConfig(command=args.command, **kwargs)
        if cfg.command == "compare" and cfg.p <= analysis.QUBIT_SEP_THRESHOLD:
            raise ValueError("compare requires p > 1/3 (qubit entangled at t=0)")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    handler = {
        "curves": run_curves,
        "threshold": run_threshold,
        "compare": run_compare,
        "haar": run_haar,
        "validate": run_validate,
    }[cfg.command]
    with _out_stream(cfg.output) as out:
        return handler(cfg, out)


if __name__ == "__main__":
    sys.exit(main())
