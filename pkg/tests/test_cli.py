import json

import pytest

from conftest import FIXTURES, certificate, fixture_matrices
from quadweb.cli import InputError, format_contracted_table, load_web_file, main, run_search, trial_rng
from quadweb.webquadrics import random_web_matrices
from quadweb.webquadrics.certificate import exit_code


def write(tmp_path, obj, name="web.json"):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def test_enum_contracted_is_deterministic(capsys):
    assert main(["enum-contracted"]) == 0
    first = capsys.readouterr().out
    assert main(["enum-contracted"]) == 0
    assert capsys.readouterr().out == first == format_contracted_table()
    assert first.count("\n(") == 4


def test_malformed_json_reports_position(tmp_path, capsys):
    path = write(tmp_path, '{"matrices": [1, 2,]}')
    assert main(["analyze", path]) == 1
    assert f"{path}:1:" in capsys.readouterr().err


def test_bad_entries_report_their_index(tmp_path, example_5_5):
    mats = json.loads(json.dumps(example_5_5))
    mats[2][3][1] = 1.5
    with pytest.raises(InputError, match=r"matrices\[2\]\[3\]\[1\]"):
        load_web_file(write(tmp_path, {"matrices": mats}))
    mats[2][3][1] = 1 << 64
    with pytest.raises(InputError, match="64-bit"):
        load_web_file(write(tmp_path, {"matrices": mats}))
    mats[2][3][1] = 7
    with pytest.raises(InputError, match="not symmetric"):
        load_web_file(write(tmp_path, {"matrices": mats}))
    with pytest.raises(InputError, match="field"):
        load_web_file(write(tmp_path, {"matrices": example_5_5, "field": "complex"}))


def test_missing_file_and_bad_arguments(tmp_path):
    assert main(["analyze", str(tmp_path / "nope.json")]) == 1
    assert main(["analyze", str(FIXTURES / "example_5_5.json"), "--prime", "15"]) == 1
    assert main(["frobnicate"]) == 1


def test_fixture_files_load():
    for name in ("example_2_1", "example_5_5", "searched_all_nodal"):
        doc = load_web_file(FIXTURES / f"{name}.json")
        assert doc["matrices"] == fixture_matrices(name)


def test_fiber_command(capsys):
    path = str(FIXTURES / "example_5_5.json")
    assert main(["fiber", path, "--y", "1,0,0,0"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("type a (rank Q = 5, rank B = 2)")
    assert "[3]" in out
    assert main(["fiber", path, "--y", "0,0,0,0"]) == 1
    assert main(["fiber", path, "--y", "1,2"]) == 1


def test_tiny_timeout_is_inconclusive(tmp_path):
    out = tmp_path / "cert.json"
    code = main(["analyze", str(FIXTURES / "example_5_5.json"), "--timeout", "0.001", "--out", str(out)])
    assert code == 3
    assert json.loads(out.read_text())["schema_version"] == 1


@pytest.mark.slow
def test_exit_codes_from_certificates():
    assert exit_code(certificate("example_2_1")) == 2
    assert exit_code(certificate("example_5_5")) == 0


def test_search_rejects_zero_trials(tmp_path):
    assert main(["search", "--trials", "0", "--out-dir", str(tmp_path)]) == 1


def test_search_records_cheap_rejections(tmp_path):
    def degenerate(rng, bound):
        # B_i all zero: the plane meets every quadric in a positive-dimensional singular locus
        mats = random_web_matrices(rng, bound)
        for M in mats:
            for i in range(5, 8):
                for j in range(5):
                    M[i][j] = M[j][i] = 0
        return mats

    summary = run_search(3, tmp_path, seed=2, sampler=degenerate)
    assert summary["found"] == []
    assert sum(summary["rejected"].values()) == 3
    assert (tmp_path / "search-summary-s2.json").exists()


@pytest.mark.slow
def test_search_persists_verified_webs(tmp_path, example_5_5):
    summary = run_search(1, tmp_path, seed=0, sampler=lambda rng, bound: json.loads(json.dumps(example_5_5)))
    [found] = summary["found"]
    assert found["singular_points"] == 90 and not found["all_A1"]
    assert json.loads(open(found["file"]).read())["matrices"] == example_5_5
    assert not list(tmp_path.glob("*.tmp"))


def test_searched_fixture_is_reproducible():
    doc = json.loads((FIXTURES / "searched_all_nodal.json").read_text())
    s = doc["search"]
    assert random_web_matrices(trial_rng(s["seed"], s["trial"]), s["entry_bound"]) == doc["matrices"]
