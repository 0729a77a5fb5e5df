import json
import shutil
import subprocess
import sys

import pytest

from sigmethod.cli import main
from sigmethod.dataset import toy_dataset_path


def write_config(tmp_path, out_name="features.csv", **extra):
    lines = [
        "version: 1",
        "input:",
        f"  path: {toy_dataset_path()}",
        "pipeline:",
        "  depth: 2",
        '  augmentation: "time,basepoint"',
        "  window: dyadic(2)",
        "output:",
        f"  path: {tmp_path / out_name}",
    ]
    for block in extra.values():
        lines.append(block)
    path = tmp_path / "run.yaml"
    path.write_text("\n".join(lines) + "\n")
    return path


def test_extract_toy(tmp_path, capsys):
    config = write_config(tmp_path)
    assert main(["extract", "--config", str(config)]) == 0
    out = capsys.readouterr().out
    assert "samples=8 d=2 p=1 w=3 per_branch=12 width=36" in out
    text = (tmp_path / "features.csv").read_text()
    header = text.splitlines()[0]
    assert header.startswith("a1|w1|sig(1),a1|w1|sig(2),a1|w1|sig(3)")
    assert len(text.splitlines()) == 1 + 8


def test_extract_is_deterministic(tmp_path):
    config = write_config(tmp_path)
    assert main(["extract", "--config", str(config)]) == 0
    first = (tmp_path / "features.csv").read_bytes()
    assert main(["extract", "--config", str(config)]) == 0
    assert (tmp_path / "features.csv").read_bytes() == first


def test_dry_run_never_opens_data(tmp_path, capsys):
    config = write_config(tmp_path)
    code = main(
        [
            "extract",
            "--config",
            str(config),
            "--dry-run",
            "--input.path",
            str(tmp_path / "absent.ts"),
            "--input.dimension",
            "2",
            "--input.length",
            "16",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "width=36" in out and "within feature limit" in out
    assert not (tmp_path / "features.csv").exists()


def test_dry_run_width_matches_real_run(tmp_path, capsys):
    config = write_config(tmp_path)
    main(["extract", "--config", str(config), "--dry-run",
          "--input.dimension", "2", "--input.length", "16"])
    predicted = capsys.readouterr().out.split("width=")[1].split()[0]
    main(["extract", "--config", str(config)])
    realized = capsys.readouterr().out.split("width=")[1].split()[0]
    assert predicted == realized == "36"


def test_dry_run_requires_shape_hints(tmp_path, capsys):
    config = write_config(tmp_path)
    assert main(["extract", "--config", str(config), "--dry-run"]) == 2
    assert "input.dimension" in capsys.readouterr().err


def test_bad_config_exits_2(tmp_path, capsys):
    config = tmp_path / "bad.yaml"
    config.write_text("version: 1\ninput:\n  path: x.ts\n  nope: 1\n"
                      "pipeline:\n  depth: 2\noutput:\n  path: y.csv\n")
    assert main(["extract", "--config", str(config)]) == 2
    assert "config error" in capsys.readouterr().err
    config.write_text("version: 9\ninput:\n  path: x.ts\n"
                      "pipeline:\n  depth: 2\noutput:\n  path: y.csv\n")
    assert main(["extract", "--config", str(config)]) == 2


def test_missing_dataset_exits_3(tmp_path, capsys):
    config = write_config(tmp_path)
    code = main(["extract", "--config", str(config),
                 "--input.path", str(tmp_path / "absent.ts")])
    assert code == 3
    assert "parse error" in capsys.readouterr().err


def test_feature_budget_exits_4(tmp_path, capsys):
    config = write_config(tmp_path)
    code = main(["extract", "--config", str(config), "--pipeline.feature_limit", "10"])
    assert code == 4
    err = capsys.readouterr().err
    assert "36" in err and "10" in err
    assert not (tmp_path / "features.csv").exists()


def test_override_flags_change_the_run(tmp_path, capsys):
    config = write_config(tmp_path)
    code = main(
        [
            "extract",
            "--config",
            str(config),
            "--pipeline.transform",
            "logsignature",
            "--pipeline.window",
            "global",
            "--pipeline.augmentation",
            "",
        ]
    )
    assert code == 0
    assert "width=3" in capsys.readouterr().out  # logsig of d=2 depth 2 over one window
    header = (tmp_path / "features.csv").read_text().splitlines()[0]
    assert "logsig[1]" in header


def test_normalization_fit_save_then_load(tmp_path, capsys):
    train = tmp_path / "toy_TRAIN.ts"
    test = tmp_path / "toy_TEST.ts"
    shutil.copy(toy_dataset_path(), train)
    shutil.copy(toy_dataset_path(), test)
    stats = tmp_path / "stats.json"
    config = write_config(
        tmp_path,
        norm=f"normalization:\n  enabled: true\n  stats_path: {stats}",
    )

    assert main(["extract", "--config", str(config), "--input.path", str(train)]) == 0
    saved = json.loads(stats.read_text())
    assert saved["fitted_on"] == "train"

    # the second run must reuse the saved statistics, not refit on test data
    assert main(["extract", "--config", str(config), "--input.path", str(test)]) == 0
    assert json.loads(stats.read_text()) == saved

    # without saved statistics, fitting on a test split is refused
    stats.unlink()
    capsys.readouterr()
    code = main(["extract", "--config", str(config), "--input.path", str(test)])
    assert code == 2
    assert "test split" in capsys.readouterr().err


def test_ndjson_output(tmp_path):
    config = write_config(tmp_path, out_name="features.ndjson")
    assert main(["extract", "--config", str(config),
                 "--output.format", "ndjson"]) == 0
    lines = (tmp_path / "features.ndjson").read_text().splitlines()
    assert len(lines) == 8
    row = json.loads(lines[0])
    assert set(row) == {"features", "label"}
    assert len(row["features"]) == 36
    assert row["label"] in ("cw", "ccw")


def test_inspect_toy(capsys):
    assert main(["inspect", str(toy_dataset_path())]) == 0
    out = capsys.readouterr().out
    assert "samples: 8" in out
    assert "dimension: 2" in out
    assert "length: 16..16" in out
    assert "classes: ccw=4 cw=4" in out
    assert "sampling: regular (step 1)" in out


def test_inspect_errors(tmp_path, capsys):
    assert main(["inspect", str(tmp_path / "absent.ts")]) == 3
    assert main(["inspect", str(tmp_path / "data.dat")]) == 2
    err = capsys.readouterr().err
    assert "parse error" in err and "config error" in err


def test_selftest_quick(capsys):
    assert main(["selftest", "--quick"]) == 0
    out = capsys.readouterr().out
    assert "chen-identity: 4/4 ok" in out
    assert "selftest passed" in out


def test_selftest_inject_fault(capsys):
    assert main(["selftest", "--quick", "--inject-fault"]) == 1
    out = capsys.readouterr().out
    assert "injected-fault: 0/1 FAIL" in out
    assert "selftest FAILED" in out


def test_module_entry_point(tmp_path):
    config = write_config(tmp_path)
    proc = subprocess.run(
        [sys.executable, "-m", "sigmethod", "extract", "--config", str(config)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "width=36" in proc.stdout
    in_process = tmp_path / "inproc.csv"
    assert main(["extract", "--config", str(config),
                 "--output.path", str(in_process)]) == 0
    assert in_process.read_bytes() == (tmp_path / "features.csv").read_bytes()


def test_workers_two_matches_single_worker(tmp_path):
    config = write_config(tmp_path)
    assert main(["extract", "--config", str(config)]) == 0
    single = (tmp_path / "features.csv").read_bytes()
    code = main(["extract", "--config", str(config), "--parallelism.workers", "2"])
    assert code == 0
    assert (tmp_path / "features.csv").read_bytes() == single
