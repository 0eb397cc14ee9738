"""Command-line interface: ``exind {logreturns,estimate,simulate,bench}``.

Randomised commands take ``--seed`` or fall back to the ``EXIND_SEED``
environment variable.  Outputs are CSV with a header row, written to
``--output`` or standard output.
"""

import argparse
import contextlib
import csv
import json
import logging
import os
import sys

from exind import bench
from exind.comparators import BlockConfig, ferro_segers_at_level, northrop
from exind.core import EstimatorConfig, estimate_theta
from exind.errors import InvalidInputError, UnsupportedModelError
from exind.io import log_returns, read_series, write_series
from exind.sim import MODELS, make_model, simulate

__all__ = [
    "main",
    "build_parser",
    "estimate_grid",
    "load_bench_config",
    "FIGURE_QUANTILES",
    "ESTIMATE_COLUMNS",
]

log = logging.getLogger("exind")

# Quantile sweep 0.40, 0.41, ..., 0.99.
FIGURE_QUANTILES = tuple(round(0.40 + 0.01 * i, 2) for i in range(60))
ESTIMATE_COLUMNS = ("method", "tuning", "estimate", "error")


class ConfigError(InvalidInputError):
    """Malformed command-line or configuration input."""


def _resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get("EXIND_SEED")
    if env is None:
        raise ConfigError("a seed is required: pass --seed or set EXIND_SEED")
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"EXIND_SEED must be an integer, got {env!r}") from None


def _parse_params(text):
    """``--params`` as a JSON object or ``key=value[,key=value]`` pairs."""
    if not text:
        return {}
    text = text.strip()
    if text.startswith("{"):
        try:
            params = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--params: {exc}") from None
        if not isinstance(params, dict):
            raise ConfigError("--params must be a JSON object")
        return params
    params = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--params: expected key=value, got {item!r}")
        try:
            params[key.strip()] = json.loads(value)
        except json.JSONDecodeError:
            raise ConfigError(f"--params: cannot parse value for {key.strip()!r}: {value!r}") from None
    return params


@contextlib.contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def estimate_grid(series, method, grid, M=100, seed=0, mode="sliding"):
    """Evaluate one estimator over a tuning grid.

    Returns a list of ``(method, tuning, estimate, error)`` rows; a failing grid
    point yields ``estimate=None`` and the error message, and the sweep goes on.
    """
    rows = []
    for t in grid:
        try:
            if method == "new":
                est = estimate_theta(series, EstimatorConfig(r=int(t), M=M, seed=seed)).theta
            elif method == "northrop":
                est = northrop(series, BlockConfig(b=int(t), mode=mode))
            elif method == "ferro_segers":
                est = ferro_segers_at_level(series, float(t))
            else:
                raise ConfigError(f"unknown method {method!r}")
            rows.append((method, t, est, ""))
        except ConfigError:
            raise
        except InvalidInputError as exc:
            rows.append((method, t, None, str(exc)))
    return rows


def _cmd_logreturns(args):
    prices = read_series(args.input)
    returns = log_returns(prices, source=args.input)
    with _open_out(args.output) as fh:
        write_series(returns, fh, header="logreturn")
    return 0


def _cmd_estimate(args):
    series = read_series(args.input)
    if args.logreturns:
        series = log_returns(series, source=args.input)
    if args.method == "new":
        grid = args.r or list(bench.BLOCK_LENGTHS)
        seed = _resolve_seed(args.seed)
    elif args.method == "northrop":
        grid = args.b or args.r or list(bench.BLOCK_LENGTHS)
        seed = None
    else:
        grid = args.quantile or list(FIGURE_QUANTILES)
        seed = None
    rows = estimate_grid(series, args.method, grid, M=args.M, seed=seed, mode=args.mode)
    with _open_out(args.output) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(ESTIMATE_COLUMNS)
        for method, t, est, err in rows:
            w.writerow([method, t, "" if est is None else repr(float(est)), err])
    failed = [r for r in rows if r[2] is None]
    for _, t, _, err in failed:
        log.error("tuning %s: %s", t, err)
    return 1 if failed else 0


def _cmd_simulate(args):
    spec = make_model(args.model, **_parse_params(args.params))
    x = simulate(spec, args.n, _resolve_seed(args.seed))
    with _open_out(args.output) as fh:
        write_series(x, fh, header="value")
    return 0


def _cell_from_dict(d, defaults, where):
    d = {**defaults, **d}
    try:
        model = make_model(d["model"], **d.get("params", {}))
        return bench.BenchCell(
            model=model,
            estimator=d["estimator"],
            tuning=d["tuning"],
            n=int(d["n"]),
            K=int(d.get("K", 100)),
            M=int(d.get("M", 100)),
            master_seed=int(d["seed"]),
        )
    except KeyError as exc:
        raise ConfigError(f"{where}: missing key {exc.args[0]!r}") from None
    except (InvalidInputError, TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def load_bench_config(text, source="<config>", seed=None):
    """Parse a JSON study description into a list of :class:`~exind.bench.BenchCell`.

    Top-level keys ``n``, ``K``, ``M`` and ``seed`` are defaults for every
    cell.  ``grid`` expands to the full comparison grid (optionally
    restricted via ``models``, ``block_lengths``, ``quantiles``) and
    ``cells`` lists individual cells.  ``seed`` is used when the file names
    none.
    """
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(cfg, dict):
        raise ConfigError(f"{source}: top level must be a JSON object")
    defaults = {k: cfg[k] for k in ("n", "K", "M", "seed") if k in cfg}
    if "seed" not in defaults:
        defaults["seed"] = _resolve_seed(seed)
    cells = []
    grid = cfg.get("grid")
    if grid:
        if grid is True:
            grid = {}
        if "n" not in defaults:
            raise ConfigError(f"{source}: 'grid' needs a top-level 'n'")
        try:
            models = [make_model(m) for m in grid.get("models", [m.name for m in bench.PAPER_MODELS])]
        except InvalidInputError as exc:
            raise ConfigError(f"{source}: grid: {exc}") from None
        cells += bench.table_grid(
            n=int(defaults["n"]),
            K=int(defaults.get("K", 100)),
            M=int(defaults.get("M", 100)),
            master_seed=int(defaults["seed"]),
            models=models,
            block_lengths=grid.get("block_lengths", bench.BLOCK_LENGTHS),
            quantiles=grid.get("quantiles", bench.QUANTILE_LEVELS),
        )
    for i, d in enumerate(cfg.get("cells", [])):
        cells.append(_cell_from_dict(d, defaults, f"{source}: cells[{i}]"))
    if not cells:
        raise ConfigError(f"{source}: the study declares no cells")
    for c in cells:
        try:
            c.validate()
        except InvalidInputError as exc:
            raise ConfigError(f"{source}: {c.label}: {exc}") from None
    return cells


def _cmd_bench(args):
    with open(args.config, encoding="utf-8") as fh:
        cells = load_bench_config(fh.read(), source=args.config, seed=args.seed)
    results = bench.run_study(cells, workers=args.workers)
    with _open_out(args.output) as fh:
        bench.write_summary_csv(results, fh)
    if args.raw:
        with _open_out(args.raw) as fh:
            bench.write_raw_csv(results, fh)
    if args.table:
        print(bench.format_table(results, "rmse"), file=sys.stderr)
        print(bench.format_table(results, "abias"), file=sys.stderr)
    failed = [r for r in results if r.error]
    for r in failed:
        log.error("cell %s: %s", r.cell.label, r.error)
    return 1 if failed else 0


def build_parser():
    p = argparse.ArgumentParser(prog="exind", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    lr = sub.add_parser("logreturns", help="convert a price series to log-returns")
    lr.add_argument("--input", required=True)
    lr.add_argument("--output")
    lr.set_defaults(func=_cmd_logreturns)

    est = sub.add_parser("estimate", help="estimate the extremal index over a tuning grid")
    est.add_argument("--input", required=True)
    est.add_argument("--method", choices=bench.ESTIMATORS, default="new")
    est.add_argument("--r", type=int, nargs="+", help="block lengths for the new estimator")
    est.add_argument("--b", type=int, nargs="+", help="block lengths for northrop")
    est.add_argument("--mode", choices=("sliding", "disjoint"), default="sliding")
    est.add_argument("--quantile", type=float, nargs="+", help="threshold quantile levels for ferro_segers")
    est.add_argument("--M", type=int, default=100)
    est.add_argument("--seed", type=int)
    est.add_argument("--logreturns", action="store_true", help="treat the input as prices")
    est.add_argument("--output")
    est.set_defaults(func=_cmd_estimate)

    sim = sub.add_parser("simulate", help="simulate one of the benchmark processes")
    sim.add_argument("--model", required=True, choices=sorted(MODELS))
    sim.add_argument("--params", help='JSON object or key=value pairs, e.g. "rho=-0.6"')
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--seed", type=int)
    sim.add_argument("--output")
    sim.set_defaults(func=_cmd_simulate)

    be = sub.add_parser("bench", help="run a Monte Carlo study from a JSON config")
    be.add_argument("--config", required=True)
    be.add_argument("--seed", type=int, help="master seed when the config names none")
    be.add_argument("--output", help="summary CSV (default stdout)")
    be.add_argument("--raw", help="per-replicate CSV")
    be.add_argument("--workers", type=int, default=1)
    be.add_argument("--table", action="store_true", help="also print rmse/abias tables to stderr")
    be.set_defaults(func=_cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidInputError, UnsupportedModelError) as exc:
        print(f"exind: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"exind: error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
