"""Command-line front end: runs verification suites and emits reports.

One JSON object per check on stdout (or a markdown table with --format
markdown), deterministic for a fixed configuration and seed; wall-clock
timings are only included with --timings, keeping default output
byte-reproducible.  Exit status is 0 iff every selected check passed.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import dynsym, ladder, reptheory, spectrum
from .exact import Q
from .reports import (
    STATUS_EXACT,
    STATUS_FAIL,
    VerificationReport,
    render_json_lines,
    render_markdown,
)

ALL_CHECKS = (
    "lemma1",
    "lemma2",
    "commutators",
    "quadratic",
    "hamiltonian",
    "spectrum",
    "degeneracy",
    "branch",
    "ladder",
    "expectation",
)

GRID_N = (1, 2)
GRID_MU = ("0", "1/2", "-1/2", "1", "-1", "3/2", "-3/2")


@dataclass
class RunConfig:
    n_values: tuple = (1,)
    mu_values: tuple = ("0",)
    imax: int = 3
    kmax: int = 8
    battery_size: int = 20
    seed: int = 7
    fmt: str = "json"
    checks: tuple = ALL_CHECKS
    jobs: int = 1
    timings: bool = False

    def grid(self):
        return [(n, mu) for n in self.n_values for mu in self.mu_values]


# ---------------------------------------------------------------------------
# check implementations (each returns a list of reports)
# ---------------------------------------------------------------------------

def _check_lemma1(cfg, n, mu):
    return [dynsym.verify_lemma1(n, Q(mu), size=cfg.battery_size, seed=cfg.seed)]


def _check_lemma2(cfg, n, mu):
    return [dynsym.verify_lemma2(n, Q(mu), size=cfg.battery_size, seed=cfg.seed)]


def _check_commutators(cfg, n, mu):
    rep, _ = dynsym.verify_theorem(n, Q(mu), size=cfg.battery_size, seed=cfg.seed)
    return [rep]


def _check_quadratic(cfg, n, mu):
    return [dynsym.verify_quadratic(n, Q(mu), size=cfg.battery_size, seed=cfg.seed)]


def _check_theorem(cfg, n, mu):
    rc, rq = dynsym.verify_theorem(n, Q(mu), size=cfg.battery_size, seed=cfg.seed)
    return [rc, rq]


def _check_hamiltonian(cfg, n, mu):
    return ladder.hamiltonian_tower_reports(n, Q(mu), min(cfg.imax, 4))


def _check_spectrum(cfg, n, mu):
    mu = Q(mu)
    out = []
    rows = reptheory.degeneracy_table(n, mu, cfg.imax)
    for I, energy, dim in rows:
        out.append(
            VerificationReport(
                check="spectrum",
                n=n,
                mu=mu,
                params={"I": I},
                battery="closed-form spectrum",
                seed=cfg.seed,
                status=STATUS_EXACT,
                detail=f"E={energy};dim={dim}",
            )
        )
    # radial solutions: eigenvalue equation and twisted orthonormality
    bad = []
    for k in range(1, cfg.kmax + 1):
        for l in range(0, min(cfg.imax, 6) + 1):
            if not spectrum.radial_ode_residual(k, l, n, mu).is_zero():
                bad.append((k, l))
    gram_bad = []
    for k in range(1, cfg.kmax + 1):
        for kp in range(k, cfg.kmax + 1):
            want = Q(1) if k == kp else Q(0)
            if spectrum.twisted_radial_gram(k, kp, 0, n, mu) != want:
                gram_bad.append((k, kp))
    out.append(
        VerificationReport(
            check="radial",
            n=n,
            mu=mu,
            params={"kmax": cfg.kmax, "lmax": min(cfg.imax, 6)},
            battery="radial eigenfunctions",
            seed=cfg.seed,
            status=STATUS_FAIL if (bad or gram_bad) else STATUS_EXACT,
            residual_terms=len(bad) + len(gram_bad),
            detail=f"ode_failures={bad};gram_failures={gram_bad}" if (bad or gram_bad) else "",
        )
    )
    return out


def _check_degeneracy(cfg, n, mu):
    mu = Q(mu)
    try:
        rows = reptheory.degeneracy_table(n, mu, cfg.imax)
        status, detail = STATUS_EXACT, ";".join(
            f"I={I}:dim={dim}" for I, _e, dim in rows
        )
    except reptheory.MismatchError as exc:
        status, detail = STATUS_FAIL, str(exc)
    return [
        VerificationReport(
            check="degeneracy",
            n=n,
            mu=mu,
            params={"imax": cfg.imax},
            battery="two-way dimension count",
            seed=cfg.seed,
            status=status,
            detail=detail,
        )
    ]


def _check_branch(cfg, n, mu):
    mu = Q(mu)
    failures = []
    for l in range(cfg.imax + 1):
        wB = reptheory.Weight("B", tuple([l + abs(mu)] + [abs(mu)] * (n - 1)))
        parts = reptheory.branch_B_to_D(wB)
        if sum(reptheory.weyl_dim(w) for w in parts) != reptheory.weyl_dim(wB):
            failures.append(f"B-dim@l={l}")
        target = reptheory.Weight("D", tuple([abs(mu)] * (n - 1) + [mu]))
        if sum(1 for w in parts if w == target) != 1:
            failures.append(f"frobenius@l={l}")
    for I in range(cfg.imax + 1):
        wD = reptheory.Weight(
            "D", tuple([I + abs(mu)] + [abs(mu)] * (n - 1) + [mu])
        )
        parts = reptheory.branch_D_to_B(wD)
        if sum(reptheory.weyl_dim(w) for w in parts) != reptheory.weyl_dim(wD):
            failures.append(f"D-dim@I={I}")
        special = sorted(
            w.comps[0] - abs(mu)
            for w in parts
            if all(c == abs(mu) for c in w.comps[1:])
        )
        if special != [Q(l) for l in range(I + 1)]:
            failures.append(f"interlace@I={I}")
    reports = [
        VerificationReport(
            check="branch",
            n=n,
            mu=mu,
            params={"imax": cfg.imax},
            battery="interlacing branching",
            seed=cfg.seed,
            status=STATUS_FAIL if failures else STATUS_EXACT,
            residual_terms=len(failures),
            detail=";".join(failures),
        ),
        ladder.module_weight_report(n, mu),
    ]
    return reports


def _check_ladder(cfg, n, mu):
    mu = Q(mu)
    out = []
    if not ladder.ladder_closure_holds(n, mu):
        return out
    for I in range(min(cfg.imax, 4) + 1):
        out.append(ladder.tower_report(I, n, mu, steps=5))
    out.append(ladder.hermiticity_report(0, n, mu, steps=3))
    out.append(ladder.norm_preservation_report(0, n, mu))
    return out


def _check_expectation(cfg, n, mu):
    mu = Q(mu)
    return [ladder.expectation_report(I, n, mu) for I in range(cfg.imax + 1)]


CHECK_TABLE = {
    "lemma1": _check_lemma1,
    "lemma2": _check_lemma2,
    "commutators": _check_commutators,
    "quadratic": _check_quadratic,
    "hamiltonian": _check_hamiltonian,
    "spectrum": _check_spectrum,
    "degeneracy": _check_degeneracy,
    "branch": _check_branch,
    "ladder": _check_ladder,
    "expectation": _check_expectation,
}


def _run_unit(args):
    cfg, check, n, mu = args
    if check == "commutators+quadratic":
        return _check_theorem(cfg, n, mu)
    return CHECK_TABLE[check](cfg, n, mu)


def run(cfg):
    """Execute the configured checks; returns (exit_status, reports)."""
    units = []
    for n, mu in cfg.grid():
        selected = list(cfg.checks)
        # the two theorem suites share their generator pair table
        if "commutators" in selected and "quadratic" in selected:
            selected = [c for c in selected if c not in ("commutators", "quadratic")]
            selected.append("commutators+quadratic")
        for check in selected:
            units.append((cfg, check, n, mu))
    if cfg.jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_unit, units))
    else:
        results = [_run_unit(u) for u in units]
    reports = [rep for chunk in results for rep in chunk]
    reports.sort(key=VerificationReport.sort_key)
    status = 0 if all(r.passed() for r in reports) else 1
    return status, reports


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--n", type=int, choices=(1, 2), action="append", dest="n_values")
    p.add_argument("--mu", type=str, action="append", dest="mu_values")
    p.add_argument("--grid", action="store_true", help="run the full (n, mu) grid")
    p.add_argument("--imax", type=int, default=3)
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--battery-size", type=int, default=20)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("MICZLAB_JOBS", "1")),
        help="parallel worker bound (default: MICZLAB_JOBS or 1)",
    )
    p.add_argument("--timings", action="store_true", help="include elapsed_ms")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="miczlab",
        description=(
            "Exact-arithmetic verification suites for the hidden so(2,2n+2) "
            "symmetry of odd-dimensional monopole-Kepler systems"
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", help="run identity verification suites")
    p.add_argument(
        "checks",
        nargs="*",
        choices=ALL_CHECKS + tuple(),
        default=list(ALL_CHECKS),
        help="subset of checks (default: all)",
    )
    _add_common(p)
    for name, descr in (
        ("spectrum", "energy/degeneracy table and radial checks"),
        ("degeneracy", "two-way level dimension check"),
        ("branch", "branching and module weight checks"),
        ("ladder", "tower, hermiticity and norm checks"),
        ("expectation", "axial Runge-Lenz expectation values"),
    ):
        q = sub.add_parser(name, help=descr)
        _add_common(q)
    return ap


def config_from_args(args):
    if getattr(args, "grid", False):
        n_values, mu_values = GRID_N, GRID_MU
    else:
        n_values = tuple(args.n_values) if args.n_values else (1,)
        mu_values = tuple(args.mu_values) if args.mu_values else ("0",)
    for mu in mu_values:
        v = Q(mu)
        if abs(v) > Q(3, 2) or 2 * v != int(2 * v):
            raise SystemExit(f"mu must be a half integer with |mu| <= 3/2, got {mu}")
    checks = tuple(args.checks) if getattr(args, "checks", None) else (args.command,)
    return RunConfig(
        n_values=n_values,
        mu_values=mu_values,
        imax=args.imax,
        kmax=args.kmax,
        battery_size=args.battery_size,
        seed=args.seed,
        fmt=args.format,
        checks=checks,
        jobs=max(1, args.jobs),
        timings=args.timings,
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    status, reports = run(cfg)
    if cfg.fmt == "markdown":
        out = render_markdown(reports, with_timings=cfg.timings)
    else:
        out = render_json_lines(reports, with_timings=cfg.timings)
    if out:
        print(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
