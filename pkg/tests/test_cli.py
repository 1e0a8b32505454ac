"""Command-line interface: artifacts, exit codes, determinism."""

import pytest

from cloudsched import GeneratorSpec, generate, write_scenario
from cloudsched.cli import main

FCFS_GOLDEN = """\
cloudlet_id,datacenter_id,vm_id,cpu_time,start,finish
1,2,1,80.00,0.00,80.00
2,2,2,10.00,0.00,10.00
3,2,3,80.00,0.00,80.00
4,3,4,20.00,0.00,20.00
5,3,5,40.00,0.00,40.00
6,2,1,80.00,80.00,160.00
7,2,2,10.00,10.00,20.00
8,2,3,80.00,80.00,160.00
9,3,4,20.00,20.00,40.00
10,3,5,40.00,40.00,80.00
11,2,1,80.00,160.00,240.00
12,2,2,10.00,20.00,30.00
mean,,,45.83,,
"""


def test_run_writes_the_golden_fcfs_table(tmp_path):
    code = main(["run", "--builtin", "paper12-fcfs", "--policy", "fcfs",
                 "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "fcfs.csv").read_text() == FCFS_GOLDEN


def test_run_defaults_to_all_three_policies(tmp_path):
    code = main(["run", "--builtin", "paper12-gpa", "--out", str(tmp_path)])
    assert code == 0
    for policy in ("fcfs", "rr", "gpa"):
        assert (tmp_path / f"{policy}.csv").exists()
    gpa_lines = (tmp_path / "gpa.csv").read_text().splitlines()
    assert gpa_lines[-1] == "mean,,,30.00,,"


def test_run_gpa_builtin_mean_row(tmp_path):
    code = main(["run", "--builtin", "paper12-gpa", "--policy", "gpa",
                 "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "gpa.csv").read_text().splitlines()[-1] == "mean,,,30.00,,"


def test_run_unknown_builtin_names_it(tmp_path, capsys):
    code = main(["run", "--builtin", "paper13", "--out", str(tmp_path)])
    assert code == 1
    assert "paper13" in capsys.readouterr().err


def test_run_rejects_duplicate_policies(tmp_path, capsys):
    code = main(["run", "--builtin", "paper12-fcfs",
                 "--policy", "fcfs,fcfs", "--out", str(tmp_path)])
    assert code == 1
    assert "duplicate" in capsys.readouterr().err


def test_run_rejects_unknown_policy(tmp_path, capsys):
    code = main(["run", "--builtin", "paper12-fcfs", "--policy", "sjf",
                 "--out", str(tmp_path)])
    assert code == 1
    assert "sjf" in capsys.readouterr().err


def test_run_needs_exactly_one_source(tmp_path, capsys):
    assert main(["run", "--out", str(tmp_path)]) == 1
    assert main(["run", "--builtin", "paper12-fcfs", "--generate", "5",
                 "--out", str(tmp_path)]) == 1
    assert "exactly one" in capsys.readouterr().err


def test_run_multiple_builtins_use_their_own_policies(tmp_path):
    code = main(["run", "--builtin", "paper12-fcfs,paper12-rr,paper12-gpa",
                 "--out", str(tmp_path)])
    assert code == 0
    for policy in ("fcfs", "rr", "gpa"):
        assert (tmp_path / f"{policy}.csv").exists()
    assert (tmp_path / "fcfs.csv").read_text() == FCFS_GOLDEN


def test_run_multiple_builtins_refuse_policy_flag(tmp_path, capsys):
    code = main(["run", "--builtin", "paper12-fcfs,paper12-rr",
                 "--policy", "fcfs", "--out", str(tmp_path)])
    assert code == 1
    assert "multiple builtins" in capsys.readouterr().err


def test_run_missing_scenario_file_is_an_io_error(tmp_path, capsys):
    code = main(["run", "--scenario", str(tmp_path / "nope.json"),
                 "--out", str(tmp_path)])
    assert code == 2
    assert "nope.json" in capsys.readouterr().err


def test_run_malformed_scenario_is_a_validation_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code = main(["run", "--scenario", str(bad), "--out", str(tmp_path)])
    assert code == 1
    assert "parse error" in capsys.readouterr().err


def test_run_scenario_file_roundtrip(tmp_path):
    scenario = generate(GeneratorSpec(n_tasks=9, seed=3))
    path = tmp_path / "scenario.json"
    write_scenario(scenario, path)
    code = main(["run", "--scenario", str(path), "--policy", "gpa",
                 "--out", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "gpa.csv").read_text().splitlines()
    assert len(lines) == 1 + 9 + 1              # header + rows + mean


def test_run_generated_scenario(tmp_path):
    code = main(["run", "--generate", "20", "--seed", "7",
                 "--out", str(tmp_path)])
    assert code == 0
    for policy in ("fcfs", "rr", "gpa"):
        lines = (tmp_path / f"{policy}.csv").read_text().splitlines()
        assert len(lines) == 22


def test_run_rejects_bad_generate_and_seed(tmp_path, capsys):
    assert main(["run", "--generate", "0", "--out", str(tmp_path)]) == 1
    assert main(["run", "--generate", "5", "--seed", "-1",
                 "--out", str(tmp_path)]) == 1
    assert main(["run", "--generate", "5", "--seed", str(2 ** 64),
                 "--out", str(tmp_path)]) == 1


def test_run_tsv_format(tmp_path):
    code = main(["run", "--builtin", "paper12-fcfs", "--policy", "fcfs",
                 "--format", "tsv", "--out", str(tmp_path)])
    assert code == 0
    assert not (tmp_path / "fcfs.csv").exists()
    text = (tmp_path / "fcfs.tsv").read_text()
    assert text == FCFS_GOLDEN.replace(",", "\t")


def test_run_pretty_format_prints_only(tmp_path, capsys):
    code = main(["run", "--builtin", "paper12-fcfs", "--policy", "fcfs",
                 "--format", "pretty", "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "cloudlet_id" in out and "45.83" in out
    assert not (tmp_path / "fcfs.csv").exists()


def test_run_unknown_format(tmp_path, capsys):
    code = main(["run", "--builtin", "paper12-fcfs", "--format", "yaml",
                 "--out", str(tmp_path)])
    assert code == 1
    assert "yaml" in capsys.readouterr().err


def test_out_dir_defaults_to_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("CLOUDSCHED_OUT", str(tmp_path))
    code = main(["run", "--builtin", "paper12-fcfs", "--policy", "fcfs"])
    assert code == 0
    assert (tmp_path / "fcfs.csv").read_text() == FCFS_GOLDEN


def test_compare_all_three_builtins(tmp_path):
    code = main(["compare", "--builtin",
                 "paper12-fcfs,paper12-rr,paper12-gpa", "--out", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "compare.csv").read_text().splitlines()
    assert lines[0].startswith("policy,mode,n_cloudlets,mean_cpu_time")
    assert lines[1].startswith("fcfs,space_shared,12,45.83,")
    assert lines[2].startswith("rr,time_shared,12,126.67,")
    assert lines[3].startswith("gpa,space_shared,12,30.00,")
    dat = (tmp_path / "compare.dat").read_text().splitlines()
    assert dat[0].startswith("#")
    assert dat[1:] == ["fcfs 45.83 240.00", "rr 126.67 240.00",
                       "gpa 30.00 80.00"]


def test_compare_matches_run_numbers(tmp_path):
    assert main(["run", "--builtin", "paper12-fcfs", "--out",
                 str(tmp_path / "runs")]) == 0
    assert main(["compare", "--builtin", "paper12-fcfs", "--out",
                 str(tmp_path / "cmp")]) == 0
    compare_rows = (tmp_path / "cmp" / "compare.csv").read_text().splitlines()[1:]
    for row in compare_rows:
        policy, _, _, mean_cpu = row.split(",")[:4]
        run_mean = (tmp_path / "runs" / f"{policy}.csv") \
            .read_text().splitlines()[-1].split(",")[3]
        assert mean_cpu == run_mean


def test_compare_needs_two_policies(tmp_path, capsys):
    code = main(["compare", "--builtin", "paper12-fcfs", "--policy", "fcfs",
                 "--out", str(tmp_path)])
    assert code == 1
    assert "2 policies" in capsys.readouterr().err


def test_compare_duplicate_policies_show_zero_improvement(tmp_path):
    code = main(["compare", "--builtin", "paper12-fcfs",
                 "--policy", "fcfs,fcfs", "--out", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "compare.csv").read_text().splitlines()
    assert lines[1].endswith("0.0")
    assert lines[2].endswith("0.0")


def test_sweep_row_count_and_timing_sidecar(tmp_path):
    code = main(["sweep", "--counts", "10,20", "--seed", "3",
                 "--out", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "sweep.csv").read_text().splitlines()
    assert lines[0] == "n,policy,mean_cpu_time,makespan"
    assert len(lines) == 1 + 2 * 3
    assert [line.split(",")[0] for line in lines[1:]] == \
        ["10", "10", "10", "20", "20", "20"]
    timing = (tmp_path / "sweep_timing.csv").read_text().splitlines()
    assert timing[0] == "n,policy,wall_clock_ms"
    assert len(timing) == len(lines)
    assert [t.split(",")[:2] for t in timing[1:]] == \
        [line.split(",")[:2] for line in lines[1:]]


def test_sweep_is_byte_deterministic(tmp_path):
    for sub in ("a", "b"):
        assert main(["sweep", "--counts", "100,200", "--seed", "11",
                     "--out", str(tmp_path / sub)]) == 0
    assert (tmp_path / "a" / "sweep.csv").read_bytes() == \
        (tmp_path / "b" / "sweep.csv").read_bytes()


def test_sweep_seed_changes_the_workload(tmp_path):
    for sub, seed in (("a", "1"), ("b", "2")):
        assert main(["sweep", "--counts", "50", "--seed", seed,
                     "--out", str(tmp_path / sub)]) == 0
    assert (tmp_path / "a" / "sweep.csv").read_text() != \
        (tmp_path / "b" / "sweep.csv").read_text()


def test_sweep_rejects_empty_and_bad_counts(tmp_path, capsys):
    assert main(["sweep", "--counts", "", "--out", str(tmp_path)]) == 1
    assert main(["sweep", "--counts", "0,10", "--out", str(tmp_path)]) == 1


def test_sweep_gpa_never_loses_to_fcfs_on_mean(tmp_path):
    assert main(["sweep", "--counts", "12,60", "--seed", "2",
                 "--out", str(tmp_path)]) == 0
    means = {}
    for line in (tmp_path / "sweep.csv").read_text().splitlines()[1:]:
        n, policy, mean_cpu, _ = line.split(",")
        means[(n, policy)] = float(mean_cpu)
    for n in ("12", "60"):
        assert means[(n, "gpa")] <= means[(n, "fcfs")]


def test_missing_subcommand_exits_via_argparse():
    with pytest.raises(SystemExit):
        main([])


def test_sweep_requires_counts_flag():
    with pytest.raises(SystemExit):
        main(["sweep"])
