"""
Command-line surface of the Heterophily Gauge.

Subcommands: convert, metrics, metapaths, split, stats, generate, table.
Results go to stdout (and to ``--output`` files); logs and progress bars go
to stderr. Exit codes: 0 success, 1 usage error, 2 data error, 3 degenerate
computation.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from .config import RunConfig, build_run_config
from .core.gauge import HeterophilyGauge, load_graph
from .errors import DataError, HeterophilyGaugeError, UsageError
from .ingest.cache import save_cache
from .ingest.writer import write_bundle
from .metrics.report import MetricReport, render_metapath_rows, render_table
from .splits import SplitMasks
from .stats import render_stats
from .synth import PlantedConfig, generate_planted

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


class GaugeArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose errors become UsageError (exit code 1)."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _common_flags() -> argparse.ArgumentParser:
    common = GaugeArgumentParser(add_help=False)
    common.add_argument("--graph", help="Bundle manifest (.json) or binary cache")
    common.add_argument("--target", help="Target node type (default: the labeled type)")
    common.add_argument("--lengths", type=_int_list, help="Metapath lengths, e.g. 1,2")
    common.add_argument("--agg", choices=["mean", "max"], help="Aggregation over metapaths")
    common.add_argument("--seed", type=int, help="Seed for random splits, sampling and null models")
    common.add_argument("--threads", type=int, help="Worker threads (default: $HGAUGE_THREADS or all cores)")
    common.add_argument("--output", help="Output file or directory")
    common.add_argument("--config", help="Per-run JSON config file")
    common.add_argument("--profile", choices=["default", "custom"], help="Reproducibility profile")
    common.add_argument("--count-multiplicity", action="store_true", default=None, help="Weight induced edges by walk count")
    common.add_argument("--keep-self-loops", action="store_true", default=None, help="Keep u-u edges in induced graphs")
    common.add_argument("--directed", action="store_true", default=None, help="Skip symmetrization (needs --profile custom)")
    common.add_argument("--verbose", action="store_true", help="Debug logging")
    common.add_argument("--quiet", action="store_true", default=None, help="Warnings only, no progress bars")
    return common


def build_parser() -> GaugeArgumentParser:
    common = _common_flags()
    parser = GaugeArgumentParser(prog="heterophily-gauge", description="Heterophily analysis for heterogeneous graphs")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=GaugeArgumentParser)

    sub.add_parser("convert", parents=[common], help="CSV bundle -> binary cache")

    metrics = sub.add_parser("metrics", parents=[common], help="Metric report for one dataset")
    metrics.add_argument("--metapath", dest="metapaths", action="append", help="Explicit metapath (repeatable)")
    metrics.add_argument("--expectation", choices=["approximate", "exact"], help="Configuration-model expectation form")
    metrics.add_argument("--sample-size", type=int, help="Also estimate H_edge from this many sampled edges")
    metrics.add_argument("--null-trials", type=int, help="Configuration-model trials per metapath")

    metapaths = sub.add_parser("metapaths", parents=[common], help="List the metapath set")
    metapaths.add_argument("--metapath", dest="metapaths", action="append", help="Explicit metapath (repeatable)")
    metapaths.add_argument("--materialize", action="store_true", default=None, help="Induce and count edges")

    split = sub.add_parser("split", parents=[common], help="Train/val/test masks")
    split.add_argument("--strategy", choices=["temporal", "random"], help="Split strategy")
    split.add_argument("--ratios", type=_float_list, help="Train,val,test fractions")
    split.add_argument("--boundaries", type=_int_list, help="Temporal cut timestamps t1,t2")
    split.add_argument("--csv-dir", help="Also export train/val/test CSVs here")

    stats = sub.add_parser("stats", parents=[common], help="Dataset statistics")
    stats.add_argument("--masks", help="Mask document from 'split' to include")

    generate = sub.add_parser("generate", parents=[common], help="Planted-mixing synthetic bundle")
    generate.add_argument("--classes", type=int, default=2)
    generate.add_argument("--nodes-per-class", type=int, default=1000)
    generate.add_argument("--mean-degree", type=float, default=10.0)
    generate.add_argument("--mixing", type=float, default=0.5)
    generate.add_argument("--hubs", type=int, default=0)
    generate.add_argument("--fan-in", type=int, default=5)
    generate.add_argument("--fan-out", type=int, default=5)
    generate.add_argument("--independent-labels", action="store_true")
    generate.add_argument("--timestamps", action="store_true")
    generate.add_argument("--cache", help="Also write a binary cache here")

    table = sub.add_parser("table", parents=[common], help="Merge saved reports into one table")
    table.add_argument("reports", nargs="+", help="JSON reports written by 'metrics --output'")
    return parser


CONFIG_KEYS = (
    "graph", "output", "target", "lengths", "agg", "count_multiplicity", "keep_self_loops", "directed", "profile",
    "expectation", "seed", "threads", "strategy", "ratios", "boundaries", "sample_size", "null_trials",
    "materialize", "metapaths", "quiet",
)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides: Dict[str, Any] = {key: getattr(args, key, None) for key in CONFIG_KEYS}
    overrides["subcommand"] = args.subcommand
    return build_run_config(overrides, args.config)


def _gauge(config: RunConfig) -> HeterophilyGauge:
    if not config.graph:
        raise UsageError("--graph is required")
    return HeterophilyGauge.from_path(config.graph, config)


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def cmd_convert(config: RunConfig) -> None:
    if not config.graph or not config.output:
        raise UsageError("convert needs --graph <bundle.json> and --output <cache>")
    graph, labels = load_graph(config.graph, threads=config.threads)
    save_cache(graph, labels, config.output)
    nodes = ", ".join(f"{t}={n}" for t, n in zip(graph.schema.node_types, graph.node_counts))
    edges = ", ".join(f"{rel.key}={graph.forward[r].nnz}" for r, rel in enumerate(graph.schema.relations))
    print(f"✅ {config.output}: {len(graph.node_counts)} type(s) [{nodes}]; {len(graph.forward)} relation(s) [{edges}]")


def cmd_metrics(config: RunConfig) -> None:
    gauge = _gauge(config)
    report = gauge.compute_metrics()
    print(render_table([(report.dataset, report)]))
    print()
    print(render_metapath_rows(report))
    print()
    print("Configuration: " + json.dumps(report.config, sort_keys=True))
    if config.output:
        _write_text(config.output, report.to_json())


def cmd_metapaths(config: RunConfig) -> None:
    listing = _gauge(config).list_metapaths()
    print(f"{len(listing.metapaths)} metapaths (target '{listing.target_type}', lengths {listing.lengths})")
    for entry in listing.metapaths:
        line = f"  {entry.metapath}    [{entry.compact}]"
        if entry.edges is not None:
            line += f"  |E|={entry.edges:g} non-isolated={entry.non_isolated}"
        print(line)
    if config.output:
        _write_text(config.output, listing.model_dump_json(indent=2))


def cmd_split(config: RunConfig, csv_dir: Optional[str] = None) -> None:
    masks = _gauge(config).split()
    sizes = masks.sizes()
    print(
        f"✅ {masks.descriptor.strategy} split of '{masks.target_type}': "
        f"train={sizes['train']} val={sizes['val']} test={sizes['test']}"
        + (f" boundaries={masks.descriptor.boundaries}" if masks.descriptor.boundaries else "")
    )
    if config.output:
        masks.write_json(config.output, config=config.echo())
    if csv_dir:
        masks.write_csvs(csv_dir)


def cmd_stats(config: RunConfig, masks_path: Optional[str] = None) -> None:
    gauge = _gauge(config)
    masks = SplitMasks.from_file(masks_path) if masks_path else None
    if masks is not None and len(masks.train) != len(gauge.labels):
        raise DataError(f"{masks_path}: masks cover {len(masks.train)} nodes, graph has {len(gauge.labels)}")
    stats = gauge.stats(masks)
    print(render_stats(stats))
    if config.output:
        _write_text(config.output, stats.model_dump_json(indent=2))


def cmd_generate(config: RunConfig, args: argparse.Namespace) -> None:
    if not config.output:
        raise UsageError("generate needs --output <directory>")
    try:
        cfg = PlantedConfig(
            num_classes=args.classes,
            nodes_per_class=args.nodes_per_class,
            mean_degree=args.mean_degree,
            mixing=args.mixing,
            num_hubs=args.hubs,
            fan_in=args.fan_in,
            fan_out=args.fan_out,
            independent_labels=args.independent_labels,
            with_timestamps=args.timestamps,
            seed=config.seed,
        )
    except ValidationError as e:
        raise UsageError(f"invalid generator parameters: {e}")
    graph, labels = generate_planted(cfg)
    manifest = write_bundle(graph, labels, config.output)
    if args.cache:
        save_cache(graph, labels, args.cache)
    print(f"✅ {manifest}: {cfg.num_items} item(s), {cfg.num_hubs} hub(s), mixing {cfg.mixing}")
    print("Configuration: " + json.dumps({**config.echo(), "generator": cfg.model_dump()}, sort_keys=True))


def cmd_table(report_paths: Sequence[str]) -> None:
    columns = []
    for path in report_paths:
        try:
            report = MetricReport.model_validate_json(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValidationError) as e:
            raise DataError(f"{path}: cannot read metric report: {e}")
        columns.append((report.dataset, report))
    print(render_table(columns))


def run(args: argparse.Namespace) -> None:
    if args.subcommand == "table":
        cmd_table(args.reports)
        return
    config = config_from_args(args)
    if args.subcommand == "generate":
        cmd_generate(config, args)
    elif args.subcommand == "convert":
        cmd_convert(config)
    elif args.subcommand == "metrics":
        cmd_metrics(config)
    elif args.subcommand == "metapaths":
        cmd_metapaths(config)
    elif args.subcommand == "split":
        cmd_split(config, csv_dir=args.csv_dir)
    elif args.subcommand == "stats":
        cmd_stats(config, masks_path=args.masks)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and map failures to exit codes.

    Args:
        argv: Arguments without the program name (default: ``sys.argv[1:]``)

    Returns:
        Process exit code
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"❌ {e}", file=sys.stderr)
        return e.exit_code
    configure_logging(verbose=args.verbose, quiet=bool(args.quiet))
    try:
        run(args)
    except HeterophilyGaugeError as e:
        print(f"❌ {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"❌ {e}", file=sys.stderr)
        return DataError.exit_code
    return 0
