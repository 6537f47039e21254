import json

import pytest

from reedylab.cli import main
from reedylab.dot import crown_dot, export_dot, semilattice_dot
from reedylab.obstruction import crown
from reedylab.semilattice import interval, product, terminal
from reedylab.suites import SUITES, SuiteConfig, run_suite


def test_every_suite_registered():
    assert set(SUITES) == {
        "reedy-axioms",
        "pre-elegance",
        "elegant-core",
        "relative-elegance",
        "presheaf-ez",
        "cell-presentation",
        "idempotent-completion",
        "triangulation",
        "obstruction-u",
        "crown-winding",
        "sieve-chain",
        "hom-counts",
    }


def test_unknown_suite_raises():
    from reedylab.errors import UnknownSuite

    with pytest.raises(UnknownSuite):
        run_suite(SuiteConfig(suite="nope"))


def test_cli_suite_exit_codes(capsys):
    assert main(["obstruction-u"]) == 0
    out = capsys.readouterr().out
    blob = json.loads(out)
    assert blob["suite"] == "obstruction-u"
    assert all(c["status"] == "pass" for c in blob["checks"])


def test_cli_markdown_format(capsys):
    assert main(["sieve-chain", "--format", "markdown"]) == 0
    out = capsys.readouterr().out
    assert "| check | status |" in out


def test_cli_failing_suite_exits_one(capsys):
    # the presheaf-ez suite carries the honest red verdict-coverage check
    assert main(["presheaf-ez", "--corpus-count", "25"]) == 1
    blob = json.loads(capsys.readouterr().out)
    failing = [c for c in blob["checks"] if c["status"] == "fail"]
    assert [c["id"] for c in failing] == ["both-verdicts-occur-in-corpus"]


def test_cli_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["definitely-not-a-command"])
    assert exc.value.code == 2


def test_cli_cube_and_obstruct(capsys):
    assert main(["cube", "homcount", "--m", "3", "--n", "1"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["formula"] == blob["enumerated"] == 9
    assert main(["cube", "triangulate", "--n", "1", "--dim", "2"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["levels"] == [2, 3, 4]
    assert main(["obstruct", "crown", "--m", "3", "--n", "4"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["count"] == 304 and blob["windings"] == {"0": 304}
    assert main(["obstruct", "sieve-chain", "--n", "3"]) == 0
    capsys.readouterr()


def test_cli_export_dot(tmp_path, capsys):
    P, _, _ = product(interval(), interval())
    src = tmp_path / "square.json"
    src.write_text(json.dumps(P.to_json()))
    assert main(["export-dot", "--input", str(src)]) == 0
    out = capsys.readouterr().out
    assert out.count("->") == 4 and out.count("label=") == 4
    src2 = tmp_path / "crown.json"
    src2.write_text(json.dumps({"crown": 4}))
    dest = tmp_path / "crown.dot"
    assert main(["export-dot", "--input", str(src2), "--out", str(dest)]) == 0
    text = dest.read_text()
    assert text.count("->") == 8


def test_dot_shapes_directly():
    assert semilattice_dot(terminal()).count("->") == 0
    P, _, _ = product(interval(), interval())
    dot = export_dot(P)
    assert dot.count("->") == 4
    assert crown_dot(crown(4)).count("->") == 8


def test_suite_output_file(tmp_path):
    dest = tmp_path / "cert.json"
    assert main(["hom-counts", "--out", str(dest)]) == 0
    blob = json.loads(dest.read_text())
    assert blob["suite"] == "hom-counts"


def test_certificates_echo_config():
    cert = run_suite(SuiteConfig(suite="sieve-chain", seed=5))
    assert cert.config["seed"] == 5
    assert cert.config["suite"] == "sieve-chain"


def test_budget_overrun_becomes_skipped(monkeypatch):
    cert = run_suite(SuiteConfig(suite="sieve-chain", budget=1))
    # the exhaustive steps run under explicit small caps; a microscopic
    # budget must surface as skips or passes, never a crash
    assert all(c.status in ("pass", "skipped") for c in cert.checks)


def test_jobs_flag_is_deterministic():
    a = run_suite(SuiteConfig(suite="hom-counts", jobs=1)).json_text(False)
    b = run_suite(SuiteConfig(suite="hom-counts", jobs=4)).json_text(False)
    assert a == b


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("REEDYLAB_BUDGET", "12345")
    cfg = SuiteConfig(suite="hom-counts")
    assert cfg.budget == 12345
    monkeypatch.delenv("REEDYLAB_BUDGET")
    assert SuiteConfig(suite="hom-counts").budget == 10**7
