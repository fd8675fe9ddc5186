"""The rcplan command line."""
import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from rcplan import RcPlanError, bench, convert, paths, serialise, settings
from rcplan.dataset import (
    DEPTHS,
    PER_DEPTH,
    Dataset,
    generate_dataset,
    import_scramble_file,
)
from rcplan.filetypes import pddl, plan as plan_files
from rcplan.heuristics import HeuristicConfig, make_heuristic
from rcplan.moves import ActionSet, format_moves
from rcplan.oracle import classify_lengths, plan_length, validate_plan
from rcplan.pdb import (
    get_pdb,
    load_pdb,
    manual_patterns,
    maximal_patterns,
    systematic_patterns,
)
from rcplan.render import render_state, render_trace
from rcplan.scramble import import_scramble
from rcplan.search import SEARCHES, SearchLimits

log = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s: %(message)s"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def depth_range(text: str) -> range:
    """
    Read a depth or an inclusive range of depths.

    >>> depth_range("3-5")
    range(3, 6)
    >>> depth_range("7")
    range(7, 8)
    """
    low, _, high = text.partition("-")
    try:
        return range(int(low), int(high or low) + 1)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a depth range: {text}") from e


def action_set(text: str) -> ActionSet:
    try:
        return ActionSet.from_name(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def limits_from(args) -> SearchLimits:
    limits = SearchLimits.long() if args.long_budget else SearchLimits.desk()
    return SearchLimits(
        wall_time=limits.wall_time if args.time_limit is None else args.time_limit,
        max_stored_nodes=(
            limits.max_stored_nodes if args.max_nodes is None else args.max_nodes
        ),
        max_expansions=args.max_expansions,
    )


def add_limit_arguments(parser):
    parser.add_argument(
        "--paper-budget",
        "--long-budget",
        dest="long_budget",
        action="store_true",
        help="use the long time and memory budget instead of the desk one",
    )
    parser.add_argument(
        "--time", "--time-limit", dest="time_limit", type=float, help="seconds"
    )
    parser.add_argument("--max-nodes", type=int, help="stored nodes")
    parser.add_argument("--max-expansions", type=int)


def add_state_arguments(parser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--scramble", help="moves applied to the solved cube")
    source.add_argument("--problem", type=Path, help="a PDDL problem file")
    source.add_argument("--dataset", type=Path, help="a dataset file")
    parser.add_argument("--instance", help="instance id, with --dataset")


def load_state(args, model: ActionSet):
    """Get (name, state) from the state arguments."""
    if args.scramble is not None:
        instance = import_scramble(args.scramble, model, instance_id="scramble")
        return instance.id, instance.state
    if args.problem is not None:
        return pddl.read_problem(args.problem.read_text(encoding="utf-8"))
    if args.instance is None:
        raise RcPlanError("--instance is needed with --dataset")
    instances = Dataset.load(args.dataset).by_id()
    if args.instance not in instances:
        raise RcPlanError(f"no instance {args.instance} in {args.dataset}")
    return args.instance, instances[args.instance].state


def command_gen(args) -> int:
    if args.import_file is not None:
        dataset = import_scramble_file(args.import_file, args.action_set, args.name)
    else:
        dataset = generate_dataset(
            args.action_set,
            args.seed,
            depths=args.depths,
            per_depth=args.per_depth,
            name=args.name,
            allow_any_depth=args.allow_any_depth,
        )
    output = args.output or Path(f"{args.action_set.dataset}.json")
    dataset.save(output)
    log.info("wrote %d instances to %s", len(dataset), output)
    return EXIT_OK


def command_pddl(args) -> int:
    if args.dataset is None:
        sys.stdout.write(pddl.emit_domain(args.model or ActionSet.QUARTER_12))
        return EXIT_OK
    dataset = Dataset.load(args.dataset)
    model = args.model or dataset.action_set
    written = pddl.export_dataset(dataset, args.output, model)
    print(f"wrote {len(written)} files to {args.output}")
    return EXIT_OK


def command_solve(args) -> int:
    config = HeuristicConfig.from_name(args.heuristic, args.model)
    heuristic = make_heuristic(config)
    if args.dataset is not None and args.instance is None:
        targets = [(i.id, i.state) for i in Dataset.load(args.dataset)]
    else:
        targets = [load_state(args, args.model)]
    failed = False
    for name, state in targets:
        result = SEARCHES[args.search](state, heuristic, args.model, limits_from(args))
        print(
            f"{name}: {result.status.value} length {len(result.plan)}"
            f" expansions {result.expansions} time {result.wall_time:.2f}s"
        )
        if result.solved:
            print(format_moves(result.plan))
            if args.plans is not None:
                args.plans.mkdir(parents=True, exist_ok=True)
                plan_files.save(result.plan, args.plans / f"{name}.plan")
        failed = failed or not result.solved
    return EXIT_FAILED if failed else EXIT_OK


def _one_of(option, positional, name: str):
    if option is None and positional is None:
        raise RcPlanError(f"{name} is needed")
    if option is not None and positional is not None:
        raise RcPlanError(f"give {name} once")
    return positional if option is None else option


def command_validate(args) -> int:
    _, state = load_state(args, args.model)
    plan = plan_files.load(_one_of(args.plan, args.plan_file, "--plan"))
    verdict = validate_plan(state, plan, args.model)
    print(verdict.value)
    return EXIT_OK if verdict.valid else EXIT_FAILED


def _lengths_from_results(filename: Path) -> dict:
    by_config = {}
    for row in bench.read_results(filename):
        length = int(row["plan_len"]) if row["plan_len"] else None
        by_config.setdefault(row["config"], []).append((row["instance"], length))
    return by_config


def _lengths_from_plans(directory: Path, dataset: Dataset) -> dict:
    instances = dataset.by_id()
    lengths = []
    for name, plan in plan_files.load_directory(directory).items():
        if name not in instances:
            log.warning("%s matches no instance in the dataset", name)
            continue
        verdict = validate_plan(instances[name].state, plan, ActionSet.FULL_18)
        if not verdict.valid:
            log.warning("%s: plan is not a solution (%s)", name, verdict.value)
            lengths.append((name, None))
            continue
        lengths.append((name, plan_length(plan, dataset.action_set)))
    return {directory.name: lengths}


def command_optcheck(args) -> int:
    dataset = Dataset.load(args.dataset)
    states = {instance.id: instance.state for instance in dataset}
    if args.results is not None:
        by_config = _lengths_from_results(args.results)
    else:
        by_config = _lengths_from_plans(args.plans, dataset)
    budget = SearchLimits(wall_time=args.budget)
    known = serialise.load(args.known) if args.known and args.known.is_file() else {}
    for config, lengths in by_config.items():
        unknown = sorted({name for name, _ in lengths} - set(states))
        if unknown:
            raise RcPlanError(
                f"{config}: instances not in {args.dataset}: {', '.join(unknown)}"
            )
        summary = classify_lengths(
            ((name, states[name], length) for name, length in lengths),
            dataset.action_set,
            budget,
            known,
        )
        print(f"{config}: {summary.describe()}")
        if args.verbose_reports:
            for report in summary.reports:
                print(serialise.dumps(report.save_data))
    if args.known is not None:
        serialise.dump(known, args.known, readable=True)
    return EXIT_OK


def command_bench(args) -> int:
    config = bench.load_config(_one_of(args.config, args.config_file, "--config"))
    rows, records = bench.run_bench(config)
    text, csv_text = bench.report_table(rows)
    print(text)
    config.results_path.with_suffix(".summary.csv").write_text(
        csv_text, encoding="utf-8"
    )
    if args.html is not None:
        args.html.write_text(bench.report_html(rows), encoding="utf-8")
    if args.pairs is not None:
        pairs = config.results_path.with_suffix(".pairs.csv")
        pairs.write_text(bench.report_pairs(records, args.pairs), encoding="utf-8")
    return EXIT_OK


def command_render(args) -> int:
    _, state = load_state(args, args.model)
    if args.plan is None:
        print(render_state(state))
        return EXIT_OK
    frames = render_trace(state, plan_files.load(args.plan), args.model)
    print("\n\n".join(frames))
    return EXIT_OK


def command_convert(args) -> int:
    if args.footprint:
        for kind, size in convert.representation_footprint().items():
            print(f"{kind}: {size} bytes")
        return EXIT_OK
    if args.input is None or args.source is None or args.target is None:
        raise RcPlanError("convert needs an input file, --from and --to")
    text = sys.stdin.read() if str(args.input) == "-" else args.input.read_text()
    sys.stdout.write(convert.convert(text, args.source, args.target, args.name))
    return EXIT_OK


def _patterns(name: str):
    if name == "manual":
        return manual_patterns()
    if name.startswith("sys"):
        return maximal_patterns(systematic_patterns(int(name[3:] or 3)))
    raise RcPlanError(f"unknown pattern set {name}")


def command_pdb(args) -> int:
    if args.pdb_command == "inspect":
        pdb = load_pdb(args.file)
        print(f"pattern {pdb.pattern.key}, {pdb.action_set.name}")
        print(f"{pdb.table.size} entries, {pdb.table.nbytes} bytes")
        for value, count in pdb.histogram().items():
            print(f"{value:3d}: {count}")
        return EXIT_OK
    patterns = _patterns(args.patterns)
    total = 0
    for number, pattern in enumerate(patterns, start=1):
        pdb = get_pdb(pattern, args.model, args.directory, args.memory_cap)
        total += pdb.table.nbytes
        log.info("[%d/%d] %s ready", number, len(patterns), pattern.key)
    directory = args.directory or paths.pdb_cache()
    print(f"{len(patterns)} tables, {total} bytes, in {directory}")
    return EXIT_OK


def command_settings(args) -> int:
    current = settings.current()
    print(serialise.dumps(dataclasses.asdict(current), readable=True))
    if args.save is not None:
        current.save(args.save)
        log.info("settings saved to %s", args.save)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcplan", description="Plan solutions to the Rubik's Cube."
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="generate or import a dataset")
    gen.add_argument(
        "--actions",
        "--action-set",
        dest="action_set",
        type=action_set,
        default=ActionSet.QUARTER_12,
        help="12 or 18",
    )
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--depths", type=depth_range, default=DEPTHS)
    gen.add_argument("--per-depth", type=int, default=PER_DEPTH)
    gen.add_argument("--allow-any-depth", action="store_true")
    gen.add_argument("--name")
    gen.add_argument(
        "--import", dest="import_file", type=Path, help="one scramble per line"
    )
    gen.add_argument(
        "-o",
        "--out",
        "--output",
        dest="output",
        type=Path,
        help="default d1.json or d2.json",
    )
    gen.set_defaults(handler=command_gen)

    pddl_parser = commands.add_parser(
        "pddl", help="write the domain, or a dataset as problems"
    )
    pddl_parser.add_argument("--model", type=action_set)
    pddl_parser.add_argument("--dataset", type=Path)
    pddl_parser.add_argument(
        "-o", "--out-dir", "--output", dest="output", type=Path, default=Path("pddl")
    )
    pddl_parser.set_defaults(handler=command_pddl)

    solve = commands.add_parser("solve", help="search for plans")
    add_state_arguments(solve)
    solve.add_argument(
        "--model", "--actions", type=action_set, default=ActionSet.QUARTER_12
    )
    solve.add_argument("--heuristic", default="pdb-man")
    solve.add_argument("--search", choices=sorted(SEARCHES), default="astar")
    solve.add_argument("--plans", type=Path, help="directory to save plans in")
    add_limit_arguments(solve)
    solve.set_defaults(handler=command_solve)

    validate = commands.add_parser("validate", help="check that a plan solves")
    add_state_arguments(validate)
    validate.add_argument(
        "--actions",
        "--model",
        dest="model",
        type=action_set,
        default=ActionSet.QUARTER_12,
    )
    validate.add_argument("--plan", type=Path)
    validate.add_argument("plan_file", type=Path, nargs="?", metavar="PLAN")
    validate.set_defaults(handler=command_validate)

    optcheck = commands.add_parser("optcheck", help="compare plans with the optimum")
    optcheck.add_argument("--dataset", type=Path, required=True)
    lengths = optcheck.add_mutually_exclusive_group(required=True)
    lengths.add_argument("--results", type=Path, help="a bench results CSV")
    lengths.add_argument("--plans", type=Path, help="a directory of plan files")
    optcheck.add_argument("--budget", type=float, default=60.0, help="seconds each")
    optcheck.add_argument("--known", type=Path, help="JSON cache of optimal lengths")
    optcheck.add_argument("--reports", dest="verbose_reports", action="store_true")
    optcheck.set_defaults(handler=command_optcheck)

    bench_parser = commands.add_parser("bench", help="run a configuration matrix")
    bench_parser.add_argument("--config", type=Path)
    bench_parser.add_argument("config_file", type=Path, nargs="?", metavar="CONFIG")
    bench_parser.add_argument("--html", type=Path, help="also write an HTML table")
    bench_parser.add_argument("--pairs", metavar="BASELINE", help="compare with")
    bench_parser.set_defaults(handler=command_bench)

    render = commands.add_parser("render", help="draw a state or step through a plan")
    add_state_arguments(render)
    render.add_argument(
        "--model", "--actions", type=action_set, default=ActionSet.QUARTER_12
    )
    render.add_argument("--plan", type=Path)
    render.set_defaults(handler=command_render)

    convert_parser = commands.add_parser("convert", help="change representation")
    convert_parser.add_argument("input", type=Path, nargs="?", help="file, or -")
    convert_parser.add_argument(
        "--from", dest="source", choices=convert.REPRESENTATIONS
    )
    convert_parser.add_argument("--to", dest="target", choices=convert.REPRESENTATIONS)
    convert_parser.add_argument("--name", default="converted")
    convert_parser.add_argument("--footprint", action="store_true")
    convert_parser.set_defaults(handler=command_convert)

    pdb_parser = commands.add_parser("pdb", help="build or inspect pattern databases")
    pdb_commands = pdb_parser.add_subparsers(dest="pdb_command", required=True)
    build = pdb_commands.add_parser("build")
    build.add_argument("--model", type=action_set, default=ActionSet.QUARTER_12)
    build.add_argument("--patterns", default="manual", help="manual or sysN")
    build.add_argument("--directory", type=Path)
    build.add_argument("--memory-cap", type=int, help="entries per table")
    inspect = pdb_commands.add_parser("inspect")
    inspect.add_argument("file", type=Path)
    pdb_parser.set_defaults(handler=command_pdb)

    settings_parser = commands.add_parser("settings", help="show settings in effect")
    settings_parser.add_argument(
        "--save",
        type=Path,
        nargs="?",
        const=paths.SETTINGS,
        metavar="FILE",
        help="write them to a file, by default the settings file",
    )
    settings_parser.set_defaults(handler=command_settings)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT)
    try:
        return args.handler(args)
    except (RcPlanError, OSError, ValueError) as e:
        log.error("%s", e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
