"""Command-line front end: CSV in, regime reports / barcodes / anonymized
tables out.

Subcommands: sweep, check, anonymize, barcode, lattice-sweep.  Exit codes:
0 success, 1 input error, 2 the requested k is infeasible.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .anonymity import (OBJECTIVE_MAX_CLASSES, OBJECTIVE_SMALLEST_EPS, Regime,
                        check_k_anonymity, compute_regimes, generalize_table,
                        minimal_epsilon, regime_report)
from .categorical import (STRATEGY_EXHAUSTIVE, STRATEGY_LOWER_THEN_UPPER,
                          build_lattice, chain_report_json, chain_sweep,
                          lattice_search, load_trees, lower_chain,
                          upper_chain)
from .complexes import build_filtration
from .errors import (ContractViolation, IngestionError, InfeasibleError,
                     TreeDefinitionError)
from .geometry import (ROLE_IDENTIFIER, ROLE_QUASI, ROLE_SENSITIVE, Column,
                       NumericTable, normalize_dataset)
from .homology import (barcode, barcode_json, boundary_matrix, reduce_matrix,
                       weighted_h0_barcode)
from .svg import render_barcode_svg

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INFEASIBLE = 2


@dataclass
class RunConfig:
    input: str = ""
    quasi: list[str] = field(default_factory=list)
    identifiers: list[str] = field(default_factory=list)
    sensitive: list[str] = field(default_factory=list)
    k: list[int] = field(default_factory=lambda: [2])
    eps: float | None = None
    mode: str = "numeric"                   # numeric | categorical
    grid: list[float] | None = None         # optional fixed radii sweep
    dim_cap: int = 2
    objective: str = OBJECTIVE_MAX_CLASSES
    trees: str | None = None
    strategy: str = STRATEGY_LOWER_THEN_UPPER
    out: str = "."
    formats: list[str] = field(default_factory=lambda: ["json"])

    def validate(self):
        if not self.quasi:
            raise IngestionError("quasi-identifier column set is empty")
        if any(k < 1 for k in self.k):
            raise IngestionError("k must be >= 1")
        if self.grid is not None:
            if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
                raise IngestionError("grid values must be strictly increasing")
        if self.objective not in (OBJECTIVE_MAX_CLASSES,
                                  OBJECTIVE_SMALLEST_EPS):
            raise IngestionError(f"unknown objective {self.objective!r}")


def max_workers() -> int:
    cap = os.environ.get("ANONYTOPE_THREADS")
    if cap:
        return max(1, int(cap))
    return min(8, os.cpu_count() or 1)


def ingest_csv(path, config: RunConfig):
    """Parse the CSV into a typed table (numeric mode) or a list of
    string tuples over the quasi columns (categorical mode)."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise IngestionError(f"{path}: empty file, no header row")
            header = [h.strip() for h in reader.fieldnames]
            raw_rows = [dict(zip(header, (v.strip() for v in row.values())))
                        for row in reader]
    except OSError as exc:
        raise IngestionError(f"cannot read {path}: {exc}") from None
    if not raw_rows:
        raise IngestionError(f"{path}: no data rows")
    for name in config.quasi + config.identifiers + config.sensitive:
        if name not in header:
            raise IngestionError(f"column {name!r} not found in {path}")

    if config.mode == "categorical":
        return [tuple(row[name] for name in config.quasi)
                for row in raw_rows]

    roles = {name: ROLE_QUASI for name in config.quasi}
    roles.update({name: ROLE_IDENTIFIER for name in config.identifiers})
    roles.update({name: ROLE_SENSITIVE for name in config.sensitive})
    columns = [Column(name, roles.get(name, ROLE_SENSITIVE))
               for name in header]
    rows = []
    for i, row in enumerate(raw_rows, start=1):
        typed = dict(row)
        for name in config.quasi:
            try:
                typed[name] = float(row[name])
            except ValueError:
                raise IngestionError(
                    f"row {i}, column {name!r}: cannot parse "
                    f"{row[name]!r} as a number") from None
        rows.append(typed)
    return NumericTable(columns=columns, rows=rows)


def _fmt_value(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def _fmt_interval(lo: float, hi: float) -> str:
    if lo == hi:
        return _fmt_value(lo)
    return f"[{_fmt_value(lo)}-{_fmt_value(hi)}]"


def _grid_regimes(data, k: int, grid: list[float]) -> list[Regime]:
    """Fixed-radii fallback: verdicts at the grid points only, regimes as
    maximal runs of anonymous points with a constant partition."""
    regimes = []
    run_start = None
    run_classes = None
    for i, eps in enumerate(grid):
        verdict = check_k_anonymity(data, eps, k)
        classes = verdict.classes if verdict.achieved else None
        if classes is not None and classes == run_classes:
            continue
        if run_classes is not None:
            regimes.append(Regime(eps_lo=run_start, eps_hi=eps,
                                  classes=run_classes))
        run_start, run_classes = (eps, classes) if classes else (None, None)
    if run_classes is not None:
        regimes.append(Regime(eps_lo=run_start, eps_hi=None,
                              classes=run_classes))
    return regimes


def _write(out_dir: Path, name: str, text: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    target = out_dir / name
    target.write_text(text, encoding="utf-8")
    return target


def cmd_sweep(config: RunConfig) -> int:
    table = ingest_csv(config.input, config)
    data = normalize_dataset(table)
    out_dir = Path(config.out)

    def one_k(k: int):
        if config.grid is not None:
            return k, _grid_regimes(data, k, config.grid)
        return k, compute_regimes(data, k)

    with ThreadPoolExecutor(max_workers=max_workers()) as pool:
        results = list(pool.map(one_k, config.k))

    weighted = weighted_h0_barcode(data)
    filt = build_filtration(data, config.dim_cap)
    bars = barcode(reduce_matrix(boundary_matrix(filt)), filt)
    bc_json = barcode_json(bars, weighted, data.n_points)

    status = EXIT_OK
    for k, regimes in results:
        report = regime_report(k, regimes)
        if "json" in config.formats:
            path = _write(out_dir, f"regimes_k{k}.json",
                          json.dumps(report, indent=2) + "\n")
            print(f"wrote {path}")
        if "svg" in config.formats:
            svg = render_barcode_svg(bars, weighted, regimes, k)
            path = _write(out_dir, f"barcode_k{k}.svg", svg)
            print(f"wrote {path}")
        if not regimes:
            print(f"k={k}: no feasible generalization", file=sys.stderr)
            status = EXIT_INFEASIBLE
        else:
            spans = ", ".join(
                f"[{r.eps_lo:.6g}, "
                f"{'inf' if r.eps_hi is None else format(r.eps_hi, '.6g')})"
                f" with {r.n_classes} classes" for r in regimes)
            print(f"k={k}: {len(regimes)} regime(s): {spans}")
    if "json" in config.formats:
        path = _write(out_dir, "barcode.json",
                      json.dumps(bc_json, indent=2) + "\n")
        print(f"wrote {path}")
    return status


def cmd_check(config: RunConfig) -> int:
    table = ingest_csv(config.input, config)
    data = normalize_dataset(table)
    if config.eps is None:
        raise IngestionError("check requires --eps")
    k = config.k[0]
    if k > data.n_points:
        print(f"k exceeds row count ({k} > {data.n_points})",
              file=sys.stderr)
        return EXIT_INFEASIBLE
    verdict = check_k_anonymity(data, config.eps, k)
    if verdict.achieved:
        print(f"{k}-anonymous at eps={config.eps:.6g} with "
              f"{len(verdict.classes)} classes: "
              + " ".join(str(list(c)) for c in verdict.classes))
        return EXIT_OK
    reason = verdict.failure_reason
    print(f"not {k}-anonymous at eps={config.eps:.6g}: {reason.kind} "
          f"{list(reason.component)}", file=sys.stderr)
    return EXIT_INFEASIBLE


def cmd_anonymize(config: RunConfig) -> int:
    table = ingest_csv(config.input, config)
    data = normalize_dataset(table)
    k = config.k[0]
    try:
        eps, regime = minimal_epsilon(data, k, config.objective)
    except InfeasibleError as exc:
        print(str(exc), file=sys.stderr)
        for k_near in range(min(k - 1, data.n_points), 0, -1):
            near = compute_regimes(data, k_near)
            if near:
                r = near[0]
                print(f"nearest achievable: {k_near}-anonymity at "
                      f"eps >= {r.eps_lo:.6g} with {r.n_classes} classes",
                      file=sys.stderr)
                break
        return EXIT_INFEASIBLE
    gen = generalize_table(table, data, regime)
    lines = [",".join(gen.qi_names)]
    for row in gen.rows:
        lines.append(",".join(_fmt_interval(lo, hi) for lo, hi in row))
    text = "\n".join(lines) + "\n"
    path = _write(Path(config.out), f"anonymized_k{k}.csv", text)
    print(f"wrote {path} (eps={eps:.6g}, {regime.n_classes} classes)")
    return EXIT_OK


def cmd_barcode(config: RunConfig) -> int:
    table = ingest_csv(config.input, config)
    data = normalize_dataset(table)
    weighted = weighted_h0_barcode(data)
    filt = build_filtration(data, config.dim_cap)
    bars = barcode(reduce_matrix(boundary_matrix(filt)), filt)
    out_dir = Path(config.out)
    if "json" in config.formats:
        path = _write(out_dir, "barcode.json",
                      json.dumps(barcode_json(bars, weighted, data.n_points),
                                 indent=2) + "\n")
        print(f"wrote {path}")
    if "svg" in config.formats:
        svg = render_barcode_svg(bars, weighted, None, None)
        path = _write(out_dir, "barcode.svg", svg)
        print(f"wrote {path}")
    return EXIT_OK


def cmd_lattice_sweep(config: RunConfig) -> int:
    if not config.trees:
        raise IngestionError("lattice-sweep requires --trees")
    trees = load_trees(config.trees)
    config.mode = "categorical"
    rows = ingest_csv(config.input, config)
    k = config.k[0]
    result = lattice_search(rows, trees, k, config.strategy)
    out_dir = Path(config.out)
    payload = {
        "k": k,
        "strategy": result.strategy,
        "nodes": [list(n) for n in result.nodes],
        "conclusive": result.conclusive,
        "upper_chain_skipped": result.upper_chain_skipped,
        "note": result.note,
        "chains": [chain_report_json(r) for r in result.reports],
    }
    path = _write(out_dir, f"lattice_k{k}.json",
                  json.dumps(payload, indent=2) + "\n")
    print(f"wrote {path}")
    if result.nodes:
        print(f"k={k}: achieved at levels "
              + ", ".join(str(list(n)) for n in result.nodes))
        return EXIT_OK
    print(result.note, file=sys.stderr)
    return EXIT_INFEASIBLE


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="anonytope",
        description="k-anonymity tradeoff analysis via anonymity complexes")
    p.add_argument("--config", help="YAML file mirroring all flags")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", help="input CSV path")
        sp.add_argument("--quasi", nargs="+",
                        help="quasi-identifier column names")
        sp.add_argument("--identifiers", nargs="*", default=None)
        sp.add_argument("--sensitive", nargs="*", default=None)
        sp.add_argument("--k", nargs="+", type=int)
        sp.add_argument("--eps", type=float)
        sp.add_argument("--grid", nargs="+", type=float,
                        help="fixed radii instead of the exact sweep")
        sp.add_argument("--dim-cap", type=int, dest="dim_cap")
        sp.add_argument("--objective",
                        choices=[OBJECTIVE_MAX_CLASSES,
                                 OBJECTIVE_SMALLEST_EPS])
        sp.add_argument("--trees", help="tree definition YAML")
        sp.add_argument("--strategy",
                        choices=[STRATEGY_LOWER_THEN_UPPER,
                                 STRATEGY_EXHAUSTIVE])
        sp.add_argument("--out", help="output directory")
        sp.add_argument("--format", nargs="+", dest="formats",
                        choices=["json", "csv", "svg"])

    for name in ("sweep", "check", "anonymize", "barcode", "lattice-sweep"):
        common(sub.add_parser(name))
    return p


_COMMANDS = {
    "sweep": cmd_sweep,
    "check": cmd_check,
    "anonymize": cmd_anonymize,
    "barcode": cmd_barcode,
    "lattice-sweep": cmd_lattice_sweep,
}


def build_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig()
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            file_cfg = yaml.safe_load(fh) or {}
        for key, value in file_cfg.items():
            key = key.replace("-", "_")
            if not hasattr(config, key):
                raise IngestionError(f"unknown config key {key!r}")
            setattr(config, key, value)
    overrides = {k: v for k, v in vars(args).items()
                 if k not in ("config", "command") and v is not None}
    for key, value in overrides.items():
        setattr(config, key, value)
    if isinstance(config.k, int):
        config.k = [config.k]
    if not config.input:
        raise IngestionError("no input file given (--input)")
    config.validate()
    return config


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = build_config(args)
        return _COMMANDS[args.command](config)
    except (IngestionError, ContractViolation, TreeDefinitionError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
