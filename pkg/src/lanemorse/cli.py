"""Command-line driver: solve / spectrum / morse / sweep / limit-check.

Output is machine-readable JSON (or CSV for sweeps) with a fixed schema:
one top-level object carrying schema_version, config, results and checks.
Floats are always rendered with 15 significant digits in insertion order, so
identical configurations produce byte-identical files. Every emitted record
carries an `anchor` string naming the quantity it reports.

Exit codes: 0 success, 1 solver failure, 2 check failure, 3 bad config.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from .errors import CheckError, ConfigError, LaneMorseError
from .limits import REFERENCE_ELL, limit_constants, verification_battery
from .profile import analyze_fp, scales
from .radial import solve_nodal
from .spectral import (
    MorseConfig,
    auto_grid_size,
    auto_inner_radius,
    build_problem,
    morse_index,
    weighted_radial_eigs,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_SOLVER = 1
EXIT_CHECK = 2
EXIT_CONFIG = 3

# column order is the CSV contract; do not reorder
SWEEP_COLUMNS = [
    "p", "u0", "r_p", "s_p", "eps_plus", "eps_minus", "ell_hat",
    "max_plus", "max_minus", "beta1", "beta2", "m_rad", "morse_total",
]

ANCHORS = {
    "u0": "central value u(0) (sup norm)",
    "r_p": "interior nodal radius",
    "s_p": "negative minimum radius",
    "u_min": "negative extremum value",
    "eps_plus": "blow-up scale of the positive region",
    "eps_minus": "blow-up scale of the negative region",
    "ell_hat": "scale ratio s_p/eps_minus (reference 7.1979)",
    "max_plus": "peak of the weighted potential, positive region (limit 2)",
    "max_minus": "peak of the weighted potential, negative region (limit ell^2+2)",
    "beta1": "first weighted radial eigenvalue (limit -(ell^2+2)/2)",
    "beta2": "second weighted radial eigenvalue (bounded below by -(N-1))",
    "m_rad": "radial Morse index (= 2)",
    "morse_total": "Morse index (12 for large p, N=2)",
    "residual_sup": "normalized interpolated ODE residual",
    "betas": "ascending weighted radial eigenvalues",
    "neg_count": "negative count by matrix inertia",
    "ledger": "per-mode contributions beta_i + lambda_k < 0",
}


@dataclass
class RunConfig:
    """Parsed CLI parameters for one run."""

    command: str
    p_list: list[float] = field(default_factory=list)
    N: int = 2
    grid_M: int | None = None
    inner_rule: str = "auto"
    tol_shoot: float = 1e-9
    tol_eig: float = 1e-8
    ell: float = REFERENCE_ELL
    fmt: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.command in ("solve", "spectrum", "morse", "sweep") and not self.p_list:
            raise ConfigError(f"command {self.command!r} needs at least one p value")
        if any(p <= 1 for p in self.p_list):
            raise ConfigError("exponents must satisfy p > 1")
        if self.tol_shoot <= 0 or self.tol_eig <= 0:
            raise ConfigError("tolerances must be positive")
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.fmt == "csv" and self.command != "sweep":
            raise ConfigError("csv output is only defined for sweep")

    def inner_for(self, sol) -> float:
        if self.inner_rule == "auto":
            return auto_inner_radius(sol)
        try:
            inner = float(self.inner_rule)
        except ValueError as exc:
            raise ConfigError(f"bad --inner-rule {self.inner_rule!r}") from exc
        if not (0.0 < inner < 1.0):
            raise ConfigError("explicit inner radius must lie in (0, 1)")
        return inner


def format_float(x: float) -> str:
    """15-significant-digit rendering; CSV cells keep nan/inf spellings."""
    return format(x, ".15g")


def _json_float(x: float) -> str:
    # strict JSON has no literal for non-finite floats
    if x != x or x in (float("inf"), float("-inf")):
        return "null"
    return format_float(x)


def dumps(obj, indent: int = 0) -> str:
    """Deterministic JSON: insertion-ordered keys, floats at 15 digits."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{k}": {dumps(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        flat = all(not isinstance(v, (dict, list, tuple)) for v in obj)
        if flat:
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = ",\n".join(f"{pad}  {dumps(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _json_float(obj)
    if obj is None:
        return "null"
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _solution_record(sol, cfg: RunConfig) -> dict:
    sc = scales(sol)
    fp = analyze_fp(sol)
    return {
        "p": sol.p, "N": sol.N,
        "u0": sol.u0, "r_p": sol.r_p, "s_p": sol.s_p, "u_min": sol.u_min,
        "eps_plus": sc.eps_plus, "eps_minus": sc.eps_minus,
        "ell_hat": sc.ell_hat,
        "ratio_plus": sc.ratio_plus, "ratio_minus": sc.ratio_minus,
        "max_plus": fp.max_plus, "max_minus": fp.max_minus, "sup_f": fp.sup_f,
        "residual_sup": sol.residual_sup(),
        "anchors": {k: ANCHORS[k] for k in
                    ("u0", "r_p", "s_p", "eps_plus", "eps_minus", "ell_hat",
                     "max_plus", "max_minus", "residual_sup")},
    }


def _spectrum_record(sol, cfg: RunConfig) -> dict:
    inner = cfg.inner_for(sol)
    M = cfg.grid_M or auto_grid_size(inner)
    tol = min(cfg.tol_eig, 1e-12)
    spec1 = weighted_radial_eigs(build_problem(sol, inner, M), 3,
                                 want_vector=False, tol=tol)
    spec2 = weighted_radial_eigs(build_problem(sol, inner, 2 * M), 3,
                                 want_vector=False, tol=tol)
    extrap = (4.0 * spec2.betas - spec1.betas) / 3.0
    return {
        "p": sol.p, "N": sol.N, "inner": inner, "M": M,
        "betas": [float(b) for b in extrap],
        "betas_raw": [float(b) for b in spec1.betas],
        "refinement_delta": [float(b2 - b1) for b1, b2
                             in zip(spec1.betas, spec2.betas)],
        "neg_count": spec1.neg_count,
        "anchors": {k: ANCHORS[k] for k in ("betas", "neg_count")},
    }


def _morse_record(sol, cfg: RunConfig) -> dict:
    mcfg = MorseConfig(
        inner=None if cfg.inner_rule == "auto" else cfg.inner_for(sol),
        M=cfg.grid_M,
    )
    rep = morse_index(sol, mcfg)
    return {
        "p": rep.p, "N": rep.N,
        "beta1": rep.beta1, "beta2": rep.beta2, "beta3": rep.beta3,
        "m_rad": rep.m_rad,
        "total": rep.total,
        "ledger": rep.contributions,
        "ledger_detail": [
            {"i": e.i, "k": e.k, "lambda": e.lam, "mult": e.mult,
             "sum": e.total_eig, "contributes": e.contributes}
            for e in rep.ledger
        ],
        "inner": rep.inner, "M": rep.M,
        "stable": rep.stable,
        "stability_totals": list(rep.stability_totals),
        "anchors": {k: ANCHORS[k] for k in
                    ("beta1", "beta2", "m_rad", "morse_total", "ledger")},
    }


def _sweep_row(p: float, cfg: RunConfig) -> dict:
    # each row is an independent pure pipeline (identical alone or in a sweep)
    try:
        sol = solve_nodal(p, N=cfg.N, tol=cfg.tol_shoot)
        sc = scales(sol)
        fp = analyze_fp(sol)
        rep = morse_index(sol, MorseConfig(M=cfg.grid_M))
        row = {
            "p": p, "u0": sol.u0, "r_p": sol.r_p, "s_p": sol.s_p,
            "eps_plus": sc.eps_plus, "eps_minus": sc.eps_minus,
            "ell_hat": sc.ell_hat, "max_plus": fp.max_plus,
            "max_minus": fp.max_minus, "beta1": rep.beta1, "beta2": rep.beta2,
            "m_rad": rep.m_rad, "morse_total": rep.total,
            "status": "ok" if rep.stable else "unstable",
        }
    except LaneMorseError as exc:
        row = {c: float("nan") for c in SWEEP_COLUMNS}
        row["p"] = p
        row["status"] = f"error: {exc}"
    return row


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit_code, rendered artifact)."""
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": config.command,
        "config": {
            "p": config.p_list, "N": config.N,
            "grid_M": config.grid_M, "inner_rule": config.inner_rule,
            "tol_shoot": config.tol_shoot, "tol_eig": config.tol_eig,
            "ell": config.ell, "format": config.fmt,
        },
        "results": {},
        "checks": [],
    }
    code = EXIT_OK

    if config.command in ("solve", "spectrum", "morse"):
        builders = {"solve": _solution_record, "spectrum": _spectrum_record,
                    "morse": _morse_record}
        records = []
        for p in config.p_list:
            sol = solve_nodal(p, N=config.N, tol=config.tol_shoot)
            records.append(builders[config.command](sol, config))
        payload["results"][config.command] = records
        if config.command == "morse" and any(not r["stable"] for r in records):
            code = EXIT_CHECK
    elif config.command == "sweep":
        rows = [_sweep_row(p, config) for p in config.p_list]
        payload["results"]["sweep"] = rows
        if any(row["status"].startswith("error") for row in rows):
            code = EXIT_SOLVER
        if config.fmt == "csv":
            return code, _render_csv(rows)
    elif config.command == "limit-check":
        checks = verification_battery(N=config.N, ell=config.ell)
        payload["checks"] = [
            {"name": c.name, "anchor": c.anchor, "value": c.value,
             "expected": c.expected, "tol": c.tol,
             "status": "pass" if c.passed else "fail"}
            for c in checks
        ]
        k = limit_constants(config.ell)
        payload["results"]["constants"] = {
            "ell": k.ell, "gamma": k.gamma, "delta": k.delta, "H": k.H,
            "morse_Z": k.morse_Z, "kernel_Z": k.kernel_Z,
        }
        if not all(c.passed for c in checks):
            code = EXIT_CHECK
    else:
        raise ConfigError(f"unknown command {config.command!r}")

    return code, dumps(payload) + "\n"


def _render_csv(rows: list[dict]) -> str:
    lines = [",".join(SWEEP_COLUMNS + ["status"])]
    for row in rows:
        cells = []
        for c in SWEEP_COLUMNS:
            v = row[c]
            cells.append(str(v) if isinstance(v, int) else format_float(float(v)))
        cells.append(row["status"])
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def parse_args(argv: list[str]) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="lanemorse",
        description="Nodal radial Lane-Emden solutions and their Morse index",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve", "spectrum", "morse", "sweep", "limit-check"):
        sp = sub.add_parser(name)
        if name != "limit-check":
            sp.add_argument("--p", required=True,
                            help="exponent, or comma-separated list for sweeps")
        sp.add_argument("--N", type=int, default=2)
        sp.add_argument("--grid-M", type=int, default=None)
        sp.add_argument("--inner-rule", default="auto",
                        help="'auto' (min(eps_plus^2, r_p/10)) or an explicit radius")
        sp.add_argument("--tol-shoot", type=float, default=1e-9)
        sp.add_argument("--tol-eig", type=float, default=1e-8)
        sp.add_argument("--ell", type=float, default=REFERENCE_ELL)
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"),
                        default="json")
        sp.add_argument("--out", default=None)
    ns = parser.parse_args(argv)
    p_list = []
    if getattr(ns, "p", None):
        try:
            p_list = [float(tok) for tok in str(ns.p).split(",") if tok.strip()]
        except ValueError as exc:
            raise ConfigError(f"bad --p value {ns.p!r}") from exc
    return RunConfig(
        command=ns.command, p_list=p_list, N=ns.N, grid_M=ns.grid_M,
        inner_rule=ns.inner_rule, tol_shoot=ns.tol_shoot, tol_eig=ns.tol_eig,
        ell=ns.ell, fmt=ns.fmt, out=ns.out,
    )


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_args(argv)
        code, text = run(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CheckError as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except LaneMorseError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except SystemExit as exc:  # argparse errors
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK

    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
