"""
Run configuration matrices over a dataset and report on them.

A bench configuration is a JSON document:

    {
        "version": 1,
        "dataset": "d1.json",
        "entries": [
            {"search": "astar", "heuristic": "pdb-man"},
            {"search": "astar", "heuristic": "ff", "model": "m2", "cross": true}
        ],
        "limits": "desk",
        "oracle_limits": {"wall_time": 60},
        "max_depth": 9,
        "workers": 4,
        "results": "results.csv",
        "log": "results.jsonl"
    }

"limits" is "desk", "long" or a mapping of SearchLimits fields. An
entry's model defaults to the dataset's action set; using another
needs "cross": true. Paths are relative to the configuration file.

Every finished instance is appended to the log at once, so a run that
is stopped can be started again and will skip what is done.
"""
import csv
import io
import logging
import multiprocessing
import os
import platform
import statistics
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

from rcplan import RcPlanError, number_formats, serialise, settings
from rcplan.dataset import Dataset
from rcplan.heuristics import HeuristicConfig, make_heuristic
from rcplan.moves import ActionSet, parse_move
from rcplan.oracle import (
    OptimalityReport,
    OptimalitySummary,
    optimal_length,
    plan_length,
    validate_plan,
)
from rcplan.search import SEARCHES, SearchLimits

log = logging.getLogger(__name__)

CONFIG_VERSION = 1
CSV_SCHEMA = 1
RESULT_COLUMNS = (
    "config",
    "instance",
    "depth",
    "status",
    "plan_len",
    "optimal_len",
    "is_optimal",
    "expansions",
    "generated",
    "peak_nodes",
    "wall_s",
)
CONFIG_KEYS = {
    "version",
    "dataset",
    "entries",
    "limits",
    "oracle_limits",
    "max_depth",
    "workers",
    "results",
    "log",
    "pdb_directory",
}
ENTRY_KEYS = {"search", "heuristic", "model", "cross"}


class ConfigError(RcPlanError):
    pass


@dataclass(frozen=True)
class BenchEntry:
    """One configuration: a search with a heuristic over a model."""

    search: str
    heuristic: HeuristicConfig
    dataset_action_set: ActionSet

    @property
    def model(self) -> ActionSet:
        return self.heuristic.action_set

    @property
    def label(self) -> str:
        """
        Name the cell of the matrix this entry fills.

        >>> BenchEntry("astar", HeuristicConfig.from_name("ff", ActionSet.QUARTER_12),
        ...            ActionSet.FULL_18).label
        'd2/m1/ff'
        """
        label = f"{self.dataset_action_set.dataset}/{self.model.model}"
        label += f"/{self.heuristic.label}"
        return label if self.search == "astar" else f"{label}/{self.search}"


@dataclass(frozen=True)
class BenchConfig:
    dataset_path: Path
    entries: tuple
    limits: SearchLimits
    oracle_limits: SearchLimits
    results_path: Path
    log_path: Path
    workers: int = 1
    max_depth: Optional[int] = None
    pdb_directory: Optional[Path] = None


def _limits(value, name) -> SearchLimits:
    if value is None or value == "desk":
        return SearchLimits.desk()
    if value == "long":
        return SearchLimits.long()
    if isinstance(value, dict):
        unknown = set(value) - {f.name for f in fields(SearchLimits)}
        if unknown:
            raise ConfigError(f"{name}: unknown keys {sorted(unknown)}")
        defaults = SearchLimits.desk()
        try:
            return replace(defaults, **value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{name}: {e}") from e
    raise ConfigError(f"{name} must be 'desk', 'long' or a mapping")


def parse_config(data: dict, base: Path, dataset_action_set: ActionSet = None):
    """
    Check a configuration document and resolve its paths.

    The dataset's action set is read from the dataset file unless given.
    """
    if not isinstance(data, dict) or "version" not in data:
        raise ConfigError("a bench configuration needs a version")
    if data["version"] != CONFIG_VERSION:
        raise ConfigError(f"unsupported configuration version {data['version']}")
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys {sorted(unknown)}")
    for required in ("dataset", "entries"):
        if required not in data:
            raise ConfigError(f"the configuration has no {required}")
    base = Path(base)
    dataset_path = base / data["dataset"]
    if dataset_action_set is None:
        dataset_action_set = Dataset.load(dataset_path).action_set

    entries = []
    for number, entry in enumerate(data["entries"], start=1):
        unknown = set(entry) - ENTRY_KEYS
        if unknown:
            raise ConfigError(f"entry {number}: unknown keys {sorted(unknown)}")
        search = entry.get("search", "astar")
        if search not in SEARCHES:
            raise ConfigError(f"entry {number}: unknown search {search!r}")
        try:
            model = ActionSet.from_name(entry.get("model", dataset_action_set))
            heuristic = HeuristicConfig.from_name(entry.get("heuristic", ""), model)
        except ValueError as e:
            raise ConfigError(f"entry {number}: {e}") from e
        if model is not dataset_action_set and not entry.get("cross", False):
            raise ConfigError(
                f"entry {number}: model {model.model} does not match dataset"
                f" {dataset_action_set.dataset}; set \"cross\": true to allow it"
            )
        entries.append(BenchEntry(search, heuristic, dataset_action_set))
    if not entries:
        raise ConfigError("the configuration has no entries")

    workers = data.get("workers", settings.current().workers)
    if not isinstance(workers, int) or workers < 1:
        raise ConfigError(f"workers must be a positive integer, not {workers!r}")
    return BenchConfig(
        dataset_path=dataset_path,
        entries=tuple(entries),
        limits=_limits(data.get("limits"), "limits"),
        oracle_limits=_limits(data.get("oracle_limits"), "oracle_limits"),
        results_path=base / data.get("results", "results.csv"),
        log_path=base / data.get("log", "results.jsonl"),
        workers=workers,
        max_depth=data.get("max_depth"),
        pdb_directory=(
            base / data["pdb_directory"] if "pdb_directory" in data else None
        ),
    )


def load_config(filename: Path) -> BenchConfig:
    filename = Path(filename)
    try:
        data = serialise.load(filename)
    except ValueError as e:
        raise ConfigError(f"{filename} is not valid JSON: {e}") from e
    return parse_config(data, filename.parent)


@dataclass(frozen=True)
class ResultRecord:
    """The outcome of one configuration on one instance."""

    config: str
    instance: str
    depth: int
    status: str
    plan: tuple
    expansions: int
    generated: int
    peak_stored: int
    wall_time: float
    heuristic_initial: float

    @property
    def solved(self) -> bool:
        return self.status == "SOLVED"

    @property
    def save_data(self):
        return {
            "kind": "result",
            "config": self.config,
            "instance": self.instance,
            "depth": self.depth,
            "status": self.status,
            "plan": [move.name for move in self.plan],
            "expansions": self.expansions,
            "generated": self.generated,
            "peak_stored": self.peak_stored,
            "wall_time": self.wall_time,
            "heuristic_initial": self.heuristic_initial,
        }

    @classmethod
    def from_data(cls, data):
        data = {key: value for key, value in data.items() if key != "kind"}
        data["plan"] = tuple(parse_move(name) for name in data["plan"])
        return cls(**data)


# Heuristics built in this process, shared by its searches
_HEURISTICS = {}


def _heuristic(config: HeuristicConfig, pdb_directory):
    if config not in _HEURISTICS:
        _HEURISTICS[config] = make_heuristic(config, pdb_directory)
    return _HEURISTICS[config]


def solve_task(task) -> ResultRecord:
    """Solve one instance with one entry; run in worker processes."""
    entry, instance, limits, pdb_directory = task
    heuristic = _heuristic(entry.heuristic, pdb_directory)
    result = SEARCHES[entry.search](instance.state, heuristic, entry.model, limits)
    if result.solved:
        verdict = validate_plan(instance.state, result.plan, entry.model)
        if not verdict.valid:
            raise RuntimeError(
                f"{entry.label} returned a bad plan for {instance.id}: {verdict.value}"
            )
    return ResultRecord(
        config=entry.label,
        instance=instance.id,
        depth=instance.depth_n,
        status=result.status.value,
        plan=result.plan,
        expansions=result.expansions,
        generated=result.generated,
        peak_stored=result.peak_stored,
        wall_time=result.wall_time,
        heuristic_initial=result.heuristic_initial,
    )


def read_log(filename: Path) -> tuple:
    """Read a log, giving result records and known optimal lengths."""
    records = {}
    optimal = {}
    if not Path(filename).is_file():
        return records, optimal
    with open(filename, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            data = serialise.loads(line)
            if data.get("kind") == "result":
                record = ResultRecord.from_data(data)
                records[(record.config, record.instance)] = record
            elif data.get("kind") == "optimal":
                optimal[data["instance"]] = data["optimal_len"]
    return records, optimal


def _append(sink, data):
    sink.write(serialise.dumps(data) + "\n")
    sink.flush()


def machine_metadata() -> dict:
    return {
        "kind": "machine",
        "platform": platform.platform(),
        "python": platform.python_version(),
        "processor": platform.processor(),
        "cpus": os.cpu_count(),
    }


@dataclass(frozen=True)
class BenchRow:
    """The summary of one configuration, as in a table of results."""

    label: str
    total: int
    solved: int
    optimal_percentage: Optional[float]
    optimal_percentage_all: Optional[float]
    unknown: int
    mean_expansions: Optional[float]
    median_expansions: Optional[float]
    mean_wall_time: Optional[float]
    timeouts: int
    memouts: int
    mean_peak_stored: Optional[float]
    max_optimal_solved: Optional[int]

    @property
    def save_data(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_csv(cls, row: dict):
        values = {}
        for f in fields(cls):
            text = row[f.name]
            if f.name == "label":
                values[f.name] = text
            elif text == "":
                values[f.name] = None
            elif f.name in {"total", "solved", "unknown", "timeouts", "memouts"}:
                values[f.name] = int(text)
            elif f.name == "max_optimal_solved":
                values[f.name] = int(text)
            else:
                values[f.name] = float(text)
        return cls(**values)


def _mean(values) -> Optional[float]:
    return statistics.mean(values) if values else None


def optimality(records, optimal: dict, metric: ActionSet) -> OptimalitySummary:
    """Classify records against the optimal lengths known so far."""
    return OptimalitySummary(
        tuple(
            OptimalityReport(
                r.instance,
                plan_length(r.plan, metric) if r.solved else None,
                optimal.get(r.instance),
                metric,
            )
            for r in records
        )
    )


def summarise(label: str, records, optimal: dict, metric: ActionSet) -> BenchRow:
    """Aggregate one configuration's records into a BenchRow."""
    records = list(records)
    solved = [r for r in records if r.solved]
    summary = optimality(records, optimal, metric)
    optimal_solved = [
        report.optimal_length for report in summary.reports if report.is_optimal
    ]
    return BenchRow(
        label=label,
        total=len(records),
        solved=len(solved),
        optimal_percentage=summary.percentage,
        optimal_percentage_all=summary.percentage_of_all,
        unknown=summary.unknown,
        mean_expansions=_mean([r.expansions for r in solved]),
        median_expansions=(
            statistics.median([r.expansions for r in solved]) if solved else None
        ),
        mean_wall_time=_mean([r.wall_time for r in solved]),
        timeouts=sum(1 for r in records if r.status == "TIMEOUT"),
        memouts=sum(1 for r in records if r.status == "MEMOUT"),
        mean_peak_stored=_mean([r.peak_stored for r in solved]),
        max_optimal_solved=max(optimal_solved, default=None),
    )


def find_optimal_lengths(records, states: dict, metric, limits, known: dict, sink):
    """
    Run the oracle on solved instances whose optimal length is unknown.

    New lengths go into known and, as they are found, into the log.
    """
    wanted = sorted({r.instance for r in records if r.solved} - set(known))
    if wanted:
        log.info("finding optimal lengths for %d instances", len(wanted))
    for instance_id in wanted:
        found = optimal_length(states[instance_id], metric, limits)
        if found is None:
            log.info("%s: optimal length unknown within the oracle budget", instance_id)
            continue
        known[instance_id] = found
        _append(
            sink, {"kind": "optimal", "instance": instance_id, "optimal_len": found}
        )
    for record in records:
        if not record.solved or record.instance not in known:
            continue
        length = plan_length(record.plan, metric)
        if length < known[record.instance]:
            raise RuntimeError(
                f"{record.config} on {record.instance}: plan of {length}"
                f" beats the optimal {known[record.instance]}"
            )


def result_rows(records, optimal: dict, metric: ActionSet) -> list:
    """Make the rows of the results CSV."""
    rows = []
    for record in records:
        length = plan_length(record.plan, metric) if record.solved else None
        known = optimal.get(record.instance) if record.solved else None
        rows.append(
            {
                "config": record.config,
                "instance": record.instance,
                "depth": record.depth,
                "status": record.status,
                "plan_len": "" if length is None else length,
                "optimal_len": "" if known is None else known,
                "is_optimal": "" if known is None else str(length == known).lower(),
                "expansions": record.expansions,
                "generated": record.generated,
                "peak_nodes": record.peak_stored,
                "wall_s": f"{record.wall_time:.3f}",
            }
        )
    return rows


def write_results(filename: Path, rows):
    with open(filename, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=RESULT_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)


def read_results(filename: Path) -> list:
    with open(filename, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def run_bench(config: BenchConfig) -> tuple:
    """
    Run every entry on every instance, resuming from the log.

    Returns the BenchRows (in entry order) and the result records.
    """
    dataset = Dataset.load(config.dataset_path)
    instances = [
        instance
        for instance in dataset
        if config.max_depth is None or instance.depth_n <= config.max_depth
    ]
    states = {instance.id: instance.state for instance in instances}
    done, optimal = read_log(config.log_path)
    if done:
        log.info("resuming: %d results already in %s", len(done), config.log_path)
    tasks = [
        (entry, instance, config.limits, config.pdb_directory)
        for entry in config.entries
        for instance in instances
        if (entry.label, instance.id) not in done
    ]
    config.log_path.parent.mkdir(parents=True, exist_ok=True)
    fresh = not config.log_path.is_file()
    with open(config.log_path, "a", encoding="utf-8") as sink:
        if fresh:
            _append(sink, machine_metadata())
        if config.workers > 1 and len(tasks) > 1:
            with multiprocessing.Pool(config.workers) as pool:
                _collect(pool.imap(solve_task, tasks), tasks, done, sink)
        else:
            _collect(map(solve_task, tasks), tasks, done, sink)

        records = [
            done[(entry.label, instance.id)]
            for entry in config.entries
            for instance in instances
        ]
        find_optimal_lengths(
            records,
            states,
            dataset.action_set,
            config.oracle_limits,
            optimal,
            sink,
        )

    rows = [
        summarise(
            entry.label,
            [r for r in records if r.config == entry.label],
            optimal,
            dataset.action_set,
        )
        for entry in config.entries
    ]
    config.results_path.parent.mkdir(parents=True, exist_ok=True)
    write_results(
        config.results_path, result_rows(records, optimal, dataset.action_set)
    )
    return rows, records


def _collect(results, tasks, done, sink):
    for number, record in enumerate(results, start=1):
        done[(record.config, record.instance)] = record
        _append(sink, record.save_data)
        log.info(
            "[%d/%d] %s %s: %s, %d expansions, %.2fs",
            number,
            len(tasks),
            record.config,
            record.instance,
            record.status,
            record.expansions,
            record.wall_time,
        )


def _format(value) -> str:
    if value is None:
        return "-"
    return number_formats.default_as_string(value)


TABLE_COLUMNS = (
    ("config", lambda r: r.label),
    ("solved", lambda r: number_formats.solved_cell(r.solved, r.optimal_percentage)),
    ("opt. of all", lambda r: number_formats.percentage(r.optimal_percentage_all)),
    ("unknown", lambda r: str(r.unknown)),
    ("mean exp.", lambda r: _format(r.mean_expansions)),
    ("median exp.", lambda r: _format(r.median_expansions)),
    ("mean time (s)", lambda r: _format(r.mean_wall_time)),
    ("timeouts", lambda r: str(r.timeouts)),
    ("memouts", lambda r: str(r.memouts)),
    ("mean peak", lambda r: _format(r.mean_peak_stored)),
    ("max opt. solved", lambda r: _format(r.max_optimal_solved)),
)


def _cells(rows) -> list:
    return [[name for name, _ in TABLE_COLUMNS]] + [
        [cell(row) for _, cell in TABLE_COLUMNS] for row in rows
    ]


def format_table(rows) -> str:
    """Lay the rows out as aligned text."""
    cells = _cells(rows)
    widths = [max(len(line[i]) for line in cells) for i in range(len(TABLE_COLUMNS))]
    return "\n".join(
        "  ".join(
            cell.ljust(width) if i == 0 else cell.rjust(width)
            for i, (cell, width) in enumerate(zip(line, widths))
        ).rstrip()
        for line in cells
    )


def rows_csv(rows) -> str:
    """Write rows as CSV, starting with a schema version line."""
    output = io.StringIO()
    output.write(f"#schema={CSV_SCHEMA}\n")
    writer = csv.DictWriter(
        output, fieldnames=[f.name for f in fields(BenchRow)], lineterminator="\n"
    )
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if v is None else v for k, v in row.save_data.items()})
    return output.getvalue()


def load_rows(text: str) -> list:
    """Read rows written by rows_csv."""
    lines = text.splitlines()
    if not lines or lines[0] != f"#schema={CSV_SCHEMA}":
        raise ValueError("not a results table of a supported schema")
    return [BenchRow.from_csv(row) for row in csv.DictReader(lines[1:])]


def report_table(rows) -> tuple:
    """Give the table as text and as CSV."""
    if not rows:
        raise ValueError("no rows to report")
    return format_table(rows), rows_csv(rows)


def report_markdown(rows) -> str:
    cells = _cells(rows)
    lines = ["| " + " | ".join(cells[0]) + " |"]
    lines.append("|" + "|".join(" --- " for _ in TABLE_COLUMNS) + "|")
    lines.extend("| " + " | ".join(line) + " |" for line in cells[1:])
    return "\n".join(lines)


def report_html(rows) -> str:
    """Render the table to HTML through Markdown."""
    import markdown

    return markdown.markdown(report_markdown(rows), extensions=["tables"])


def report_pairs(records, baseline_label: str) -> str:
    """
    Compare each configuration's expansions with a baseline's.

    Gives CSV with a row per instance and configuration; an unsolved
    side is written as "unsolved".
    """
    records = list(records)
    baseline = {r.instance: r for r in records if r.config == baseline_label}
    if not baseline:
        raise ValueError(f"no results for baseline {baseline_label}")

    def expansions(record):
        return record.expansions if record is not None and record.solved else "unsolved"

    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(["instance", "depth", "config", "expansions", "baseline"])
    for record in records:
        if record.config == baseline_label:
            continue
        writer.writerow(
            [
                record.instance,
                record.depth,
                record.config,
                expansions(record),
                expansions(baseline.get(record.instance)),
            ]
        )
    return output.getvalue()
