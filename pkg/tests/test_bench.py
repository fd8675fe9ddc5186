import statistics
from dataclasses import replace

import pytest

from rcplan import serialise
from rcplan.bench import (
    RESULT_COLUMNS,
    BenchEntry,
    ConfigError,
    ResultRecord,
    load_config,
    load_rows,
    parse_config,
    read_log,
    read_results,
    report_html,
    report_pairs,
    report_table,
    run_bench,
)
from rcplan.dataset import generate_dataset
from rcplan.heuristics import HeuristicConfig
from rcplan.moves import ActionSet, parse_moves
from rcplan.search import SearchLimits

QTM = ActionSet.QUARTER_12


def config_data(**changes):
    data = {
        "version": 1,
        "dataset": "d1.json",
        "entries": [{"heuristic": "blind"}, {"heuristic": "ff"}],
        "limits": {"wall_time": 60, "max_expansions": 100000},
        "workers": 1,
    }
    data.update(changes)
    return data


def test_entry_labels():
    entry = BenchEntry("idastar", HeuristicConfig.from_name("pdb-man", QTM), QTM)
    assert entry.label == "d1/m1/pdb-man/idastar"
    assert entry.model is QTM


def test_parse_config(tmp_path):
    config = parse_config(config_data(), tmp_path, QTM)
    assert config.dataset_path == tmp_path / "d1.json"
    assert config.results_path == tmp_path / "results.csv"
    assert [e.label for e in config.entries] == ["d1/m1/blind", "d1/m1/ff"]
    assert config.limits.max_expansions == 100000
    assert config.oracle_limits == SearchLimits.desk()


@pytest.mark.parametrize(
    "changes",
    [
        {"version": 2},
        {"colour": "red"},
        {"entries": []},
        {"entries": [{"heuristic": "lm-cut"}]},
        {"entries": [{"search": "bfs", "heuristic": "blind"}]},
        {"entries": [{"heuristic": "blind", "model": "m2"}]},
        {"limits": "fast"},
        {"limits": {"wall_time": -1}},
        {"limits": {"wall": 5}},
        {"workers": 0},
    ],
)
def test_bad_configs(tmp_path, changes):
    with pytest.raises(ConfigError):
        parse_config(config_data(**changes), tmp_path, QTM)


def test_cross_model(tmp_path):
    entries = [{"heuristic": "blind", "model": "m2", "cross": True}]
    config = parse_config(config_data(entries=entries), tmp_path, QTM)
    assert config.entries[0].label == "d1/m2/blind"


def test_config_needs_a_version(tmp_path):
    data = config_data()
    del data["version"]
    with pytest.raises(ConfigError):
        parse_config(data, tmp_path, QTM)


def test_config_file_is_not_json(tmp_path):
    path = tmp_path / "bench.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(path)


@pytest.fixture
def bench_config(tmp_path):
    dataset = generate_dataset(QTM, 5, depths=range(1, 3), per_depth=2)
    dataset.save(tmp_path / "d1.json")
    path = tmp_path / "bench.json"
    serialise.dump(config_data(), path)
    return load_config(path)


def test_run_bench(manual_pdbs, bench_config):
    rows, records = run_bench(bench_config)
    assert [row.label for row in rows] == ["d1/m1/blind", "d1/m1/ff"]
    assert len(records) == 8
    blind = rows[0]
    assert (blind.total, blind.solved) == (4, 4)
    assert blind.optimal_percentage == 100
    assert blind.max_optimal_solved == 2

    results = read_results(bench_config.results_path)
    assert tuple(results[0]) == RESULT_COLUMNS
    assert len(results) == 8
    logged, optimal = read_log(bench_config.log_path)
    assert len(logged) == 8
    assert sorted(optimal.values()) == [1, 1, 2, 2]


def test_run_bench_resumes(manual_pdbs, bench_config):
    first_rows, _ = run_bench(bench_config)
    lines = bench_config.log_path.read_text().splitlines()
    rows, records = run_bench(bench_config)
    assert bench_config.log_path.read_text().splitlines() == lines
    assert rows == first_rows
    assert len(records) == 8


@pytest.mark.slow
def test_run_bench_in_parallel(manual_pdbs, bench_config):
    serial, _ = run_bench(bench_config)
    parallel_config = replace(
        bench_config,
        workers=2,
        log_path=bench_config.log_path.with_name("parallel.jsonl"),
    )
    parallel, _ = run_bench(parallel_config)
    assert [row.solved for row in parallel] == [row.solved for row in serial]


def test_report_table(manual_pdbs, bench_config):
    rows, _ = run_bench(bench_config)
    text, csv = report_table(rows)
    assert text.splitlines()[0].startswith("config")
    assert "d1/m1/blind" in text
    assert csv.startswith("#schema=1\n")
    assert load_rows(csv) == rows
    with pytest.raises(ValueError):
        report_table([])
    with pytest.raises(ValueError):
        load_rows("#schema=0\nlabel\n")


def test_report_html(manual_pdbs, bench_config):
    pytest.importorskip("markdown")
    rows, _ = run_bench(bench_config)
    html = report_html(rows)
    assert "<table>" in html
    assert "d1/m1/ff" in html


def record(config, instance, status="SOLVED", expansions=3):
    return ResultRecord(
        config=config,
        instance=instance,
        depth=1,
        status=status,
        plan=tuple(parse_moves("F")) if status == "SOLVED" else (),
        expansions=expansions,
        generated=expansions * 12,
        peak_stored=expansions * 12,
        wall_time=0.01,
        heuristic_initial=1,
    )


def test_report_pairs():
    records = [
        record("base", "a", expansions=10),
        record("base", "b", status="TIMEOUT"),
        record("new", "a", expansions=4),
        record("new", "b", expansions=7),
    ]
    lines = report_pairs(records, "base").splitlines()
    assert lines == [
        "instance,depth,config,expansions,baseline",
        "a,1,new,4,10",
        "b,1,new,7,unsolved",
    ]
    with pytest.raises(ValueError):
        report_pairs(records, "missing")


def test_records_read_back():
    original = record("base", "a")
    assert ResultRecord.from_data(original.save_data) == original


def run_heuristics(tmp_path, depths, per_depth, names, limits):
    dataset = generate_dataset(QTM, 9, depths=depths, per_depth=per_depth)
    dataset.save(tmp_path / "d1.json")
    entries = [{"heuristic": name} for name in names]
    data = config_data(entries=entries, limits=limits, oracle_limits=limits)
    config = parse_config(data, tmp_path, QTM)
    rows, records = run_bench(config)
    by_name = {row.label.split("/")[-1]: row for row in rows}
    medians = {
        name: statistics.median(
            r.expansions for r in records if r.config == by_name[name].label
        )
        for name in names
    }
    return by_name, medians


def test_heuristic_ordering(manual_pdbs, tmp_path):
    limits = {"wall_time": 120, "max_expansions": 200000}
    rows, medians = run_heuristics(
        tmp_path, range(1, 5), 2, ["pdb-man", "gc", "blind"], limits
    )
    # pdb-man against gc only separates on deeper instances
    assert medians["pdb-man"] < medians["blind"]
    assert medians["gc"] < medians["blind"]
    assert rows["pdb-man"].solved >= rows["blind"].solved
    assert rows["pdb-man"].optimal_percentage == 100


@pytest.mark.slow
def test_heuristic_ordering_to_depth_nine(manual_pdbs, tmp_path):
    limits = {"wall_time": 60, "max_expansions": 1000000}
    rows, medians = run_heuristics(
        tmp_path, range(1, 10), 10, ["pdb-man", "gc", "blind", "ff"], limits
    )
    assert medians["pdb-man"] < medians["gc"] < medians["blind"]
    assert rows["pdb-man"].solved >= rows["blind"].solved
    assert rows["ff"].solved > 0
