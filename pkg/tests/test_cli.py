import csv
import io
import json
import os
import signal
import time

from click.testing import CliRunner
import pytest

from src.checks import verifier
from src.errors import UnstableConfiguration
from src.ncspectra import cli
from src.spectra import identical
from src.spectra.result import build_spectrum


def invoke(args, tmp_path, name="out"):
    """Run the CLI writing its report to a file; return (exit code, text)."""
    out = os.path.join(tmp_path, name)
    result = CliRunner().invoke(cli, args + ["--output", out])
    text = None
    if os.path.exists(out):
        with open(out, newline="") as file:
            text = file.read()
    return result.exit_code, text


def write_config(tmp_path, document, name="config.json"):
    path = os.path.join(tmp_path, name)
    with open(path, "w") as file:
        json.dump(document, file)
    return path


def identical_config(**overrides):
    document = {
        "topology": "identical-N",
        "particles": [{"mass": 1, "omega": 1}],
        "N": 2,
        "k": 1.0,
    }
    document.update(overrides)
    return document


@pytest.mark.parametrize("command, config, fmt, golden_name", [
    ("spectrum", "spectrum_identical.json", "json", "spectrum_identical.json"),
    ("spectrum", "spectrum_identical.json", "csv", "spectrum_identical.csv"),
    ("sweep", "sweep_k.json", "csv", "sweep_k.csv"),
    ("verify", "verify_single.json", "json", "verify_single.json"),
    ("limits", "limits_identical.json", "json", "limits_identical.json"),
])
def test_golden_output(
    command, config, fmt, golden_name, tmp_path, data_path, golden,
):
    code, text = invoke(
        [command, "--config", data_path(config), "--format", fmt], tmp_path,
    )
    assert code == 0
    golden(golden_name, text)


def test_format_from_config_and_override(tmp_path, data_path):
    args = ["sweep", "--config", data_path("sweep_k.json")]
    code, text = invoke(args, tmp_path, "from_config")
    assert code == 0
    assert text.startswith("axis,value,")

    code, text = invoke(args + ["--format", "json"], tmp_path, "override")
    assert code == 0
    assert json.loads(text)["axis"] == "k"


def test_output_is_deterministic(tmp_path, data_path):
    args = ["verify", "--config", data_path("nc_identical.json")]
    first = invoke(args, tmp_path, "first")
    second = invoke(args, tmp_path, "second")
    assert first[0] == 0
    assert first == second


def test_spectrum_values(tmp_path):
    config = write_config(tmp_path, identical_config())
    code, text = invoke(["spectrum", "--config", config], tmp_path)
    assert code == 0
    report = json.loads(text)
    assert report["frequencies"] == pytest.approx([1.0, 2.2360680], rel=1e-7)

    config = write_config(tmp_path, {
        "topology": "pair",
        "particles": [{"mass": 1, "omega": 1}, {"mass": 2, "omega": 0.5}],
        "k": 0.3,
    })
    code, text = invoke(["spectrum", "--config", config], tmp_path)
    assert code == 0
    report = json.loads(text)
    assert report["frequencies"] == pytest.approx(
        [0.6324555, 1.3228757], rel=1e-7,
    )
    assert report["modes"][0]["label"] == "center-of-mass"


def test_spectrum_to_stdout(data_path):
    result = CliRunner().invoke(
        cli,
        ["spectrum", "--config", data_path("spectrum_identical.json"),
         "--format", "csv"],
    )
    assert result.exit_code == 0
    assert result.output.startswith(
        "axis,value,mode_index,frequency,field_shift,ground_energy\n"
    )


def test_moments_given_directly(tmp_path):
    config = write_config(tmp_path, identical_config(
        particles=[{"mass": 1, "omega": 1, "theta2": 0.06, "eta2": 0.12}],
    ))
    code, text = invoke(["spectrum", "--config", config], tmp_path)
    assert code == 0
    assert json.loads(text)["frequencies"] == pytest.approx(
        [1.0302 ** 0.5, 5.271 ** 0.5], rel=1e-12,
    )


@pytest.mark.parametrize("config", [
    "pair_heterogeneous.json",
    "quark_triple.json",
    "nc_identical.json",
])
def test_verify_families(config, tmp_path, data_path):
    code, text = invoke(["verify", "--config", data_path(config)], tmp_path)
    assert code == 0
    report = json.loads(text)
    assert report["passed"] is True
    assert report["max_deviation"] <= 1e-10


def test_limits_on_noncommutative_config(tmp_path, data_path):
    code, text = invoke(
        ["limits", "--config", data_path("nc_identical.json"),
         "--format", "csv"],
        tmp_path,
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 9
    assert all(row["passed"] == "true" for row in rows)


def test_sweep_row_count(tmp_path, data_path):
    code, text = invoke(
        ["sweep", "--config", data_path("nc_identical.json"),
         "--format", "csv"],
        tmp_path,
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 3 * 3
    assert {row["axis"] for row in rows} == {"c_theta"}


def test_sweep_free_particle_c_eta(tmp_path):
    config = write_config(tmp_path, {
        "topology": "free",
        "particles": [{"mass": 1}],
        "N": 1,
        "command": {
            "sweep": {"axis": "c_eta", "start": 0, "stop": 2, "steps": 2},
        },
    })
    code, text = invoke(
        ["sweep", "--config", config, "--format", "csv"], tmp_path,
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [float(row["frequency"]) for row in rows] == pytest.approx(
        [0.0, 1.0], abs=1e-14,
    )


def test_sweep_particle_number(tmp_path):
    config = write_config(tmp_path, identical_config(
        command={"sweep": {"axis": "N", "values": [2, 3, 4]}},
    ))
    code, text = invoke(
        ["sweep", "--config", config, "--format", "csv"], tmp_path,
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 2 + 3 + 4
    assert [row["value"] for row in rows[:2]] == ["2", "2"]
    relative = [
        float(row["frequency"]) for row in rows if row["mode_index"] == "1"
    ]
    assert relative == sorted(relative)
    assert len(set(relative)) == 3


def test_sweep_is_all_or_nothing(tmp_path):
    config = write_config(tmp_path, {
        "topology": "ho-interaction",
        "particles": [{"mass": 1}],
        "N": 2,
        "k": 1.0,
        "command": {"sweep": {"axis": "kappa", "values": [0, 1]}},
    })
    code, text = invoke(["sweep", "--config", config], tmp_path)
    assert code == 3
    assert text is None


@pytest.mark.parametrize("document", [
    identical_config(k=-1.0),
    identical_config(particles=[{"mass": 0}]),
    identical_config(N=None),
    identical_config(topology="ring"),
    identical_config(extra=1),
    identical_config(particles=[{"mass": 1, "c_theta": 0.1, "theta2": 0.1}]),
    {"topology": "free", "particles": [{"mass": 1, "omega": 1}], "N": 2},
    {"topology": "coordinate-nc-triple",
     "particles": [{"mass": 1, "c_eta": 0.1}, {"mass": 1}], "k": 1},
    identical_config(command={"sweep": {"axis": "k", "values": [1]}}),
    identical_config(command={"sweep": {"axis": "spin", "values": [1, 2]}}),
])
def test_config_errors_exit_2(document, tmp_path):
    document = {key: value for key, value in document.items()
                if value is not None}
    config = write_config(tmp_path, document)
    code, text = invoke(["sweep", "--config", config], tmp_path)
    assert code == 2
    assert text is None


def test_bad_topology_exits_2(tmp_path, data_path):
    result = CliRunner().invoke(
        cli, ["spectrum", "--config", data_path("bad_topology.json")],
    )
    assert result.exit_code == 2
    assert "expects 2 particle species" in result.output


def test_unreadable_config_exits_2(tmp_path):
    code, _ = invoke(
        ["spectrum", "--config", os.path.join(tmp_path, "missing.json")],
        tmp_path,
    )
    assert code == 2

    path = os.path.join(tmp_path, "broken.json")
    with open(path, "w") as file:
        file.write("{not json")
    code, _ = invoke(["spectrum", "--config", path], tmp_path)
    assert code == 2


def test_usage_error_exits_2():
    assert CliRunner().invoke(cli, ["spectrum"]).exit_code == 2
    assert CliRunner().invoke(
        cli, ["spectrum", "--config", "x.json", "--format", "xml"],
    ).exit_code == 2


def test_field_shift_undefined_exits_3(tmp_path, data_path):
    result = CliRunner().invoke(
        cli, ["spectrum", "--config", data_path("free_field.json")],
    )
    assert result.exit_code == 3
    assert "field shift undefined" in result.output


def test_coordinate_only_field_exits_3(tmp_path):
    config = write_config(tmp_path, {
        "topology": "coordinate-nc-triple",
        "particles": [{"mass": 1, "c_theta": 0.1}, {"mass": 2, "c_theta": 0.05}],
        "k": 1.0,
        "kappa": 0.5,
    })
    code, text = invoke(["spectrum", "--config", config], tmp_path)
    assert code == 3
    assert text is None


def test_unstable_configuration_exits_3(tmp_path, monkeypatch):
    def unstable(*args, **kwargs):
        raise UnstableConfiguration("omega^2 = -1.0")

    monkeypatch.setattr(identical, "spectrum_identical", unstable)
    config = write_config(tmp_path, identical_config())
    result = CliRunner().invoke(cli, ["spectrum", "--config", config])
    assert result.exit_code == 3
    assert "unstable configuration" in result.output


def test_corrupted_formula_fails_verification(tmp_path, monkeypatch):
    original = identical.spectrum_identical

    def corrupted(*args):
        exact = original(*args)
        return build_spectrum(
            com=[exact.frequencies()[0]],
            relative=[f * 1.01 for f in exact.frequencies()[1:]],
            field_shift=exact.field_shift,
            offset=exact.offset,
            hbar=exact.hbar,
        )

    monkeypatch.setattr(identical, "spectrum_identical", corrupted)
    config = write_config(tmp_path, identical_config(
        command={"verify": {"draws": 2}},
    ))
    code, text = invoke(["verify", "--config", config], tmp_path)
    assert code == 1
    assert json.loads(text)["branch"] == "failed"


@pytest.mark.parametrize("block", [
    {"seed": -1},
    {"draws": -1},
    {"workers": -2},
    {"lambdas": [0.05, 0.1]},
    {"lambdas": [0.1]},
])
def test_verify_config_errors_exit_2(block, tmp_path):
    config = write_config(tmp_path, identical_config(command={"verify": block}))
    result = CliRunner().invoke(cli, ["verify", "--config", config])
    assert result.exit_code == 2
    assert "config error" in result.output


def test_interrupt_exits_130(tmp_path, monkeypatch):
    def interrupted(spec):
        os.kill(os.getpid(), signal.SIGINT)
        time.sleep(5)
        return 0.0

    monkeypatch.setattr(verifier, "_oracle_deviation", interrupted)
    config = write_config(tmp_path, identical_config(
        command={"verify": {"draws": 1}},
    ))
    code, text = invoke(["verify", "--config", config], tmp_path)
    assert code == 130
    assert text is None
