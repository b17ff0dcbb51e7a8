"""Command-line front end.

Subcommands: ``cycle`` (single-point evaluation, JSON), ``sweep`` (generic
coupling sweep), ``figure`` (named datasets fig3/fig5/fig6/fig7a/fig7b),
``optimize`` (work maximization), ``sample`` (Monte Carlo engine sweep)
and ``verify`` (brute-force oracle suite).

All output is deterministic for a fixed configuration and seed.  CSV is
UTF-8, comma-separated with '\\n' line endings and a mandatory header
row; numbers carry 17 significant digits; figures of merit outside their
regime serialize as empty fields, never 0.  Exit codes: 0 ok, 2 config
error, 3 domain error, 4 verification failure.  The environment variable
``OTTO_THREADS`` caps row-evaluation parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cycle import CycleResult, Regime, evaluate_cycle
from .errors import ConfigError, DomainError, OttoPairError
from .medium import BathPair, MediumKind, standard_cycle
from .optimize import SearchDomain, max_coupled_work, max_uncoupled_work, sample_engine_points
from .oracle import run_verification

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4


@dataclass
class RunConfig:
    """Merged command-line / config-file settings for one invocation."""

    command: str
    medium: Optional[str] = None
    model: str = "xx"
    omega: Optional[float] = None
    omega_prime: Optional[float] = None
    lam: Optional[float] = None
    jx: Optional[float] = None
    jy: Optional[float] = None
    lx: Optional[float] = None
    lp: Optional[float] = None
    th: Optional[float] = None
    tc: Optional[float] = None
    seed: int = 0
    n: int = 100000
    out: Optional[str] = None
    format: str = "csv"
    sweep: Optional[str] = None
    figure: Optional[str] = None
    level: str = "quick"
    domain_max: float = 10.0
    resolution: int = 60


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (Regime, MediumKind)):
        return value.value
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _write_rows(cfg: RunConfig, header: list[str], rows: list[list]) -> None:
    if cfg.format == "json":
        doc = [
            {k: (v.value if isinstance(v, (Regime, MediumKind)) else v) for k, v in zip(header, row)}
            for row in rows
        ]
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [",".join(header)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_doc(cfg: RunConfig, doc: dict) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _worker_count() -> int:
    raw = os.environ.get("OTTO_THREADS", "")
    if raw:
        try:
            cap = int(raw)
        except ValueError as exc:
            raise ConfigError(f"OTTO_THREADS must be an integer, got {raw!r}") from exc
        return max(1, cap)
    return os.cpu_count() or 1


def _ordered_map(fn, items):
    workers = _worker_count()
    if workers <= 1 or len(items) < 32:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# config plumbing


def _require(cfg: RunConfig, field: str):
    value = getattr(cfg, field)
    if value is None:
        raise ConfigError(f"missing required option --{field.replace('_', '-')}")
    return value


def _medium_kind(cfg: RunConfig) -> MediumKind:
    name = _require(cfg, "medium")
    try:
        return MediumKind(name)
    except ValueError:
        raise ConfigError(f"--medium must be 'osc' or 'spin', got {name!r}") from None


def _baths(cfg: RunConfig) -> BathPair:
    th = float(_require(cfg, "th"))
    tc = float(_require(cfg, "tc"))
    if not th > tc > 0:
        raise ConfigError(f"--th/--tc must satisfy th > tc > 0, got th={th}, tc={tc}")
    return BathPair(t_h=th, t_c=tc)


def _coupling_value(cfg: RunConfig, kind: MediumKind):
    """Scalar lam for xx/xy, (cx, cy) pair for general."""
    if cfg.model in ("xx", "xy"):
        if cfg.lam is not None:
            return float(cfg.lam)
        raise ConfigError(f"model {cfg.model!r} needs --lam")
    if cfg.model == "general":
        if kind is MediumKind.SPIN:
            if cfg.jx is None or cfg.jy is None:
                raise ConfigError("model 'general' with --medium spin needs --jx and --jy")
            return float(cfg.jx), float(cfg.jy)
        if cfg.lx is None or cfg.lp is None:
            raise ConfigError("model 'general' with --medium osc needs --lx and --lp")
        return float(cfg.lx), float(cfg.lp)
    raise ConfigError(f"--model must be 'xx', 'xy' or 'general', got {cfg.model!r}")


def _parse_sweep(text: str) -> np.ndarray:
    try:
        lo, hi, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise ConfigError(f"--sweep must be LO:HI:STEP, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise ConfigError(f"--sweep needs step > 0 and hi >= lo, got {text!r}")
    count = int(round((hi - lo) / step))
    return lo + step * np.arange(count + 1)


# ---------------------------------------------------------------------------
# subcommands


def _mode_doc(mode) -> dict:
    return {
        "omega_hot": mode.omega_hot,
        "omega_cold": mode.omega_cold,
        "q_h": mode.q_h,
        "q_c": mode.q_c,
        "w": mode.w,
        "regime": mode.regime.value,
        "at_boundary": mode.at_boundary,
        "figure_of_merit": mode.figure_of_merit,
    }


def _result_doc(result: CycleResult) -> dict:
    return {
        "modes": {"A": _mode_doc(result.mode_a), "B": _mode_doc(result.mode_b)},
        "totals": {
            "q_h": result.q_h_total,
            "q_c": result.q_c_total,
            "w": result.w_total,
        },
        "global": {
            "regime": result.regime.value,
            "at_boundary": result.at_boundary,
            "figure_of_merit": result.global_figure,
            "weight": result.weight,
            "bounds": list(result.bounds) if result.bounds else None,
        },
    }


def cmd_cycle(cfg: RunConfig) -> int:
    kind = _medium_kind(cfg)
    baths = _baths(cfg)
    omega = float(_require(cfg, "omega"))
    omega_prime = float(_require(cfg, "omega_prime"))
    coupling = _coupling_value(cfg, kind)
    spec = standard_cycle(kind, cfg.model, omega, omega_prime, coupling, baths)
    result = evaluate_cycle(spec)
    doc = {
        "medium": kind.value,
        "model": cfg.model,
        "omega": omega,
        "omega_prime": omega_prime,
        "t_h": baths.t_h,
        "t_c": baths.t_c,
        **_result_doc(result),
    }
    _write_doc(cfg, doc)
    return EXIT_OK


_SWEEP_HEADER = [
    "lambda",
    "omega_a_hot", "omega_a_cold", "omega_b_hot", "omega_b_cold",
    "q_h_a", "q_c_a", "w_a", "regime_a", "fom_a",
    "q_h_b", "q_c_b", "w_b", "regime_b", "fom_b",
    "q_h_total", "q_c_total", "w_total", "regime", "global_fom",
    "bound_lower", "bound_upper",
]


def _sweep_row(kind, model, omega, omega_prime, coupling, baths, lam):
    try:
        if model == "general":
            cx, cy = coupling
            spec = standard_cycle(
                kind, model, omega, omega_prime, (cx * lam, cy * lam), baths
            )
        else:
            spec = standard_cycle(kind, model, omega, omega_prime, lam, baths)
        r = evaluate_cycle(spec)
    except DomainError:
        return [lam] + [None] * (len(_SWEEP_HEADER) - 1)
    a, b = r.mode_a, r.mode_b
    bounds = r.bounds if r.bounds else (None, None)
    return [
        lam,
        a.omega_hot, a.omega_cold, b.omega_hot, b.omega_cold,
        a.q_h, a.q_c, a.w, a.regime, a.figure_of_merit,
        b.q_h, b.q_c, b.w, b.regime, b.figure_of_merit,
        r.q_h_total, r.q_c_total, r.w_total, r.regime, r.global_figure,
        bounds[0], bounds[1],
    ]


def cmd_sweep(cfg: RunConfig) -> int:
    kind = _medium_kind(cfg)
    baths = _baths(cfg)
    omega = float(_require(cfg, "omega"))
    omega_prime = float(_require(cfg, "omega_prime"))
    if cfg.sweep is None:
        raise ConfigError("missing required option --sweep LO:HI:STEP")
    grid = _parse_sweep(cfg.sweep)
    if cfg.model == "general":
        coupling = _coupling_value(cfg, kind)  # direction scaled by the sweep value
    else:
        coupling = None
    rows = _ordered_map(
        lambda lam: _sweep_row(kind, cfg.model, omega, omega_prime, coupling, baths, float(lam)),
        list(grid),
    )
    _write_rows(cfg, _SWEEP_HEADER, rows)
    return EXIT_OK


# figure presets: bath pair, frequency pair and sweep grid per named dataset
_FIGURE_DEFAULTS = {
    "fig3": {"th": 2.0, "tc": 1.0, "omega": 4.0, "omega_prime": 3.0, "sweep": "0:3:0.01"},
    "fig5": {"th": 2.0, "tc": 1.0},
    "fig6": {"th": 2.0, "tc": 1.0, "omega": 5.0, "omega_prime": 2.0, "sweep": "0:1.99:0.01"},
    "fig7a": {"th": 2.0, "tc": 1.0, "omega": 4.0, "omega_prime": 3.0, "sweep": "0:2.5:0.01"},
    "fig7b": {"th": 2.0, "tc": 1.0, "omega": 5.0, "omega_prime": 2.0, "sweep": "0:1.9:0.01"},
}


def figure_rows(name: str, cfg: RunConfig) -> tuple[list[str], list[list]]:
    """Dataset rows for one named figure; shared by the CLI and the tests."""
    if name not in _FIGURE_DEFAULTS:
        raise ConfigError(
            f"unknown figure {name!r}; choose from {sorted(_FIGURE_DEFAULTS)}"
        )
    preset = dict(_FIGURE_DEFAULTS[name])
    th = cfg.th if cfg.th is not None else preset["th"]
    tc = cfg.tc if cfg.tc is not None else preset["tc"]
    baths = BathPair(t_h=float(th), t_c=float(tc))

    if name == "fig5":
        domain = SearchDomain(
            omega=(0.0, cfg.domain_max),
            omega_prime=(0.0, cfg.domain_max),
            coupling=(0.0, cfg.domain_max),
        )
        records = sample_engine_points(int(cfg.seed), int(cfg.n), domain, baths)
        header = ["W", "C_h", "C_c", "omega", "omega_prime", "lambda_J"]
        rows = [
            [r.w_total, r.c_h, r.c_c, r.omega, r.omega_prime, r.lam] for r in records
        ]
        return header, rows

    omega = float(cfg.omega if cfg.omega is not None else preset["omega"])
    omega_prime = float(
        cfg.omega_prime if cfg.omega_prime is not None else preset["omega_prime"]
    )
    grid = _parse_sweep(cfg.sweep if cfg.sweep is not None else preset["sweep"])

    def both_media(model, lam):
        out = {}
        for kind in (MediumKind.OSCILLATOR, MediumKind.SPIN):
            try:
                out[kind] = evaluate_cycle(
                    standard_cycle(kind, model, omega, omega_prime, lam, baths)
                )
            except DomainError:
                out[kind] = None
        return out

    want = Regime.ENGINE if name in ("fig3", "fig7a") else Regime.REFRIGERATOR

    def gated(result, mode=None):
        # figure-of-merit columns are empty outside the figure's regime
        if result is None:
            return None
        if mode is None:
            return result.global_figure if result.regime is want else None
        item = getattr(result, f"mode_{mode}")
        return item.figure_of_merit if item.regime is want else None

    if name in ("fig3", "fig6"):
        carnot = baths.carnot_efficiency if want is Regime.ENGINE else baths.carnot_cop
        header = (
            ["lambda_J", "eta_A", "eta_B", "eta_os", "eta_sp", "eta_carnot"]
            if want is Regime.ENGINE
            else ["lambda_J", "zeta_A", "zeta_B", "zeta_os", "zeta_sp", "zeta_carnot"]
        )

        def row(lam):
            res = both_media("xx", float(lam))
            osc, spn = res[MediumKind.OSCILLATOR], res[MediumKind.SPIN]
            ref = spn or osc
            return [float(lam), gated(ref, "a"), gated(ref, "b"), gated(osc), gated(spn), carnot]

    else:  # fig7a / fig7b
        header = (
            ["lambda_J", "eta_os", "eta_sp", "eta_uncoupled"]
            if want is Regime.ENGINE
            else ["lambda_J", "zeta_os", "zeta_sp", "zeta_uncoupled"]
        )
        uncoupled = (
            1.0 - omega_prime / omega
            if want is Regime.ENGINE
            else omega_prime / (omega - omega_prime)
        )

        def row(lam):
            res = both_media("xy", float(lam))
            return [
                float(lam),
                gated(res[MediumKind.OSCILLATOR]),
                gated(res[MediumKind.SPIN]),
                uncoupled,
            ]

    return header, _ordered_map(row, list(grid))


def cmd_figure(cfg: RunConfig) -> int:
    header, rows = figure_rows(cfg.figure, cfg)
    _write_rows(cfg, header, rows)
    return EXIT_OK


def cmd_optimize(cfg: RunConfig) -> int:
    kind = _medium_kind(cfg)
    baths = _baths(cfg)
    domain = SearchDomain(
        omega=(0.0, cfg.domain_max),
        omega_prime=(0.0, cfg.domain_max),
        coupling=(0.0, cfg.domain_max),
    )
    w_star, wp_star, w_single = max_uncoupled_work(
        kind, baths, domain, max(int(cfg.resolution), 200)
    )
    params, w_max = max_coupled_work(kind, cfg.model, baths, domain, int(cfg.resolution))
    # both searches estimate their optima from below, so the better of the
    # two is the tighter valid estimate of the uncoupled-pair optimum
    w_pair = max(2.0 * w_single, w_max)
    doc = {
        "medium": kind.value,
        "model": cfg.model,
        "t_h": baths.t_h,
        "t_c": baths.t_c,
        "domain_max": cfg.domain_max,
        "resolution": cfg.resolution,
        "uncoupled": {
            "omega": w_star,
            "omega_prime": wp_star,
            "w_single_max": w_single,
            "w_pair_max": w_pair,
        },
        "coupled": {
            "params": list(params),
            "w_max": w_max,
            "bound_margin": w_pair - w_max,
            "bound_saturated": w_pair - w_max <= 1e-9,
        },
    }
    _write_doc(cfg, doc)
    return EXIT_OK


def cmd_sample(cfg: RunConfig) -> int:
    baths = _baths(cfg)
    domain = SearchDomain(
        omega=(0.0, cfg.domain_max),
        omega_prime=(0.0, cfg.domain_max),
        coupling=(0.0, cfg.domain_max),
    )
    records = sample_engine_points(int(cfg.seed), int(cfg.n), domain, baths)
    header = [
        "omega", "omega_prime", "lambda_J", "W_total", "C_h", "C_c",
        "regime_A", "regime_B",
    ]
    rows = [
        [r.omega, r.omega_prime, r.lam, r.w_total, r.c_h, r.c_c, r.regime_a, r.regime_b]
        for r in records
    ]
    _write_rows(cfg, header, rows)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.level not in ("quick", "full"):
        raise ConfigError(f"--level must be 'quick' or 'full', got {cfg.level!r}")
    report = run_verification(cfg.level, seed=int(cfg.seed))
    sys.stdout.write(report.format_table() + "\n")
    return EXIT_OK if report.ok else EXIT_VERIFY


_COMMANDS = {
    "cycle": cmd_cycle,
    "sweep": cmd_sweep,
    "figure": cmd_figure,
    "optimize": cmd_optimize,
    "sample": cmd_sample,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--medium", choices=["osc", "spin"], default=None)
    p.add_argument("--model", choices=["xx", "xy", "general"], default=None)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--omega-prime", dest="omega_prime", type=float, default=None)
    p.add_argument("--lam", type=float, default=None, help="scalar coupling for xx/xy")
    p.add_argument("--jx", type=float, default=None)
    p.add_argument("--jy", type=float, default=None)
    p.add_argument("--lx", type=float, default=None)
    p.add_argument("--lp", type=float, default=None)
    p.add_argument("--th", type=float, default=None)
    p.add_argument("--tc", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--config", default=None, help="JSON config file; flags override it")
    p.add_argument("--sweep", default=None, help="coupling grid LO:HI:STEP")
    p.add_argument("--domain-max", dest="domain_max", type=float, default=None)
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--level", choices=["quick", "full"], default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ottopair",
        description="Quantum Otto cycles for coupled oscillator and spin pairs",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("cycle", "evaluate a single cycle and print JSON"),
        ("sweep", "sweep the coupling and emit a CSV/JSON dataset"),
        ("figure", "emit a named figure dataset"),
        ("optimize", "maximize extractable work"),
        ("sample", "Monte Carlo engine sampling with concurrences"),
        ("verify", "run the brute-force oracle suite"),
    ]:
        p = sub.add_parser(name, help=help_text)
        if name == "figure":
            p.add_argument("figure", choices=sorted(_FIGURE_DEFAULTS))
        _add_common(p)
    return parser


_DEFAULTS = RunConfig(command="")


def _merge_config(args: argparse.Namespace) -> RunConfig:
    file_values = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_values = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read --config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--config is not valid JSON: {exc}") from exc
        if not isinstance(file_values, dict):
            raise ConfigError("--config must contain a JSON object")
    cfg = RunConfig(command=args.command)
    for field in vars(cfg):
        if field == "command":
            continue
        flag = getattr(args, field, None)
        if flag is not None:
            setattr(cfg, field, flag)
        elif field in file_values:
            setattr(cfg, field, file_values[field])
        else:
            setattr(cfg, field, getattr(_DEFAULTS, field))
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _merge_config(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OttoPairError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
