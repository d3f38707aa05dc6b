"""Command line: ``approxsp {gen,asp,knn,ccsim,hopset-verify}``.

Exit status is 0 when every checked bound held, 1 on a contract violation
and 2 on usage, configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields
from pathlib import Path

from .core import GraphError, format_graph
from .experiments import ExperimentConfig, load_graph, run_experiment, write_report

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


def _coerce(name: str, raw: str):
    ftype = {f.name: f.type for f in fields(ExperimentConfig)}[name]
    text = str(ftype)
    if raw.lower() in ("none", ""):
        return None
    if "bool" in text:
        if raw.lower() in ("1", "true", "yes"):
            return True
        if raw.lower() in ("0", "false", "no"):
            return False
        raise ConfigError(f"{name}: expected a boolean, got {raw!r}")
    if "int" in text:
        return int(raw)
    if "float" in text:
        return float(raw)
    return raw


def read_config(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment; keys are ExperimentConfig fields."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in ExperimentConfig.keys():
            raise ConfigError(f"{path}:{no}: bad config line {line!r}")
        try:
            out[key] = _coerce(key, val.strip().strip('"'))
        except ValueError as exc:
            raise ConfigError(f"{path}:{no}: {exc}") from exc
    return out


def _common(p: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    p.add_argument("--config", default=S, help="key=value file; flags override it")
    p.add_argument("--graph", default=S, help="graph file (n m directed / u v w lines)")
    p.add_argument("--kind", choices=["gnp", "grid", "cycle"], default=S)
    p.add_argument("--n", type=int, default=S)
    p.add_argument("--p", type=float, default=S)
    p.add_argument("--rows", type=int, default=S)
    p.add_argument("--max-weight", dest="max_weight", type=int, default=S)
    p.add_argument("--directed", action="store_true", default=S)
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--out", default=S, help="per-row CSV output")
    p.add_argument("--summary", default=S, help="summary CSV output (stdout if omitted)")


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    parser = argparse.ArgumentParser(prog="approxsp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated graph")
    _common(g)

    a = sub.add_parser("asp", help="multi-source approximate shortest paths")
    _common(a)
    a.add_argument("--sources", default=S, help="file of source ids, or a count")
    a.add_argument("--eps", type=float, default=S)
    a.add_argument("--kappa", type=int, default=S)
    a.add_argument("--hopset", default=S, help="precomputed hopset file")
    a.add_argument("--check-paths", dest="check_paths", action="store_true", default=S)

    k = sub.add_parser("knn", help="distances to k nearest neighbors")
    _common(k)
    k.add_argument("--k", type=int, default=S)
    k.add_argument("--eps", type=float, default=S)
    k.add_argument("--exact", action="store_true", default=S)
    k.add_argument("--exclude-self", dest="exclude_self", action="store_true", default=S)
    k.add_argument("--check-paths", dest="check_paths", action="store_true", default=S)

    c = sub.add_parser("ccsim", help="congested clique simulation and round calculator")
    c.add_argument("mode", choices=["product", "asp", "calc"])
    c.add_argument("--sources", default=S, help="file of source ids, or a count (asp mode)")
    _common(c)
    c.add_argument("--r", type=float, default=S, help="sources / rows = n^r")
    c.add_argument("--eps", type=float, default=S)
    c.add_argument("--kappa", type=int, default=S)
    c.add_argument("--bilinear", choices=["naive", "strassen"], default=S)
    c.add_argument("--omega-table", dest="omega_table", default=S)
    c.add_argument("--bandwidth", type=int, default=S)
    c.add_argument("--transcript", default=S, help="dump one line per message: round src dst words")

    h = sub.add_parser("hopset-verify", help="build or load a hopset and measure its stretch")
    _common(h)
    h.add_argument("--eps", type=float, default=S)
    h.add_argument("--kappa", type=int, default=S)
    h.add_argument("--hopset", default=S)
    h.add_argument("--write-hopset", dest="write_hopset", default=S)
    return parser


def make_config(args: argparse.Namespace) -> ExperimentConfig:
    values = {}
    if getattr(args, "config", None):
        values.update(read_config(args.config))
    for key in ExperimentConfig.keys():
        if key in vars(args):
            values[key] = getattr(args, key)
    src = values.get("sources")
    if isinstance(src, str):
        if Path(src).is_file():
            values["sources"], values["source_file"] = None, src
        else:
            try:
                values["sources"] = int(src)
            except ValueError:
                raise ConfigError(f"--sources: {src!r} is neither a file nor a count") from None
    values["algorithm"] = args.command
    return ExperimentConfig(**values)


def _run(args) -> int:
    cfg = make_config(args)
    if args.command == "gen":
        text = format_graph(load_graph(cfg))
        if cfg.out:
            Path(cfg.out).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    rep = run_experiment(cfg)
    write_report(rep, cfg)
    if not cfg.summary:
        sys.stdout.write(rep.summary_csv())
    for v in rep.violations[:20]:
        print(f"violation: {v}", file=sys.stderr)
    return EXIT_VIOLATION if rep.violations else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _run(args)
    except (ConfigError, GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
