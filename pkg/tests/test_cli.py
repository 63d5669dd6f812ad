import csv
import io
import json

import pytest

from rgwsplit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_hurwitz_commuting_pairs(capsys):
    code, obj = run_json(capsys, "hurwitz", "--d", "2", "--genus", "1", "--profiles", "[]")
    assert code == 0
    assert obj["value"] == {"num": 2, "den": 1}
    assert obj["chi_forced"] == 0
    assert set(obj) == {"query", "chi_forced", "value", "method", "elapsed_ms"}


def test_hurwitz_methods_agree(capsys):
    values = set()
    for method in ("enum", "char", "both"):
        code, obj = run_json(capsys, "hurwitz", "--d", "3", "--genus", "0", "--profiles", "[[2,1],[2,1]]",
                             "--method", method)
        assert code == 0
        values.add((obj["value"]["num"], obj["value"]["den"]))
    assert values == {(1, 2)}


def test_hurwitz_ordered(capsys):
    code, obj = run_json(capsys, "hurwitz", "--d", "3", "--genus", "0", "--profiles",
                         "[[1,1,1],[1,1,1]]", "--ordered", "--no-timing")
    assert obj["value"] == {"num": 6, "den": 1}


def test_budget_exceeded_exit_three(capsys):
    code, obj = run_json(capsys, "hurwitz", "--d", "6", "--genus", "2", "--method", "enum", "--budget", "1000")
    assert code == 3
    assert obj["error"] == "enumeration-too-large"
    assert obj["report"]["query"]["d"] == 6


def test_budget_exceeded_in_sweep_keeps_finished_cases(capsys):
    code, obj = run_json(capsys, "split-check", "--half-genus", "1", "--max-d", "4", "--method", "enum",
                         "--budget", "100")
    assert code == 3
    assert len(obj["report"]) >= 1
    assert all(case["match"] for case in obj["report"])


def test_invalid_input_is_error_object(capsys):
    code, obj = run_json(capsys, "hurwitz", "--d", "2", "--genus", "0", "--profiles", "[[3]]")
    assert code == 1
    assert obj["error"] == "invalid-profile"


@pytest.mark.parametrize("argv", [
    ["chain", "--d", "0"],
    ["signs", "--ell", "-1"],
    ["hurwitz", "--d", "2"],
    ["hurwitz", "--d", "2", "--genus", "0", "--bogus"],
    ["hurwitz", "--d", "2", "--genus", "0", "--profiles", "[[2"],
    ["chain", "--d", "2", "--budget", "0"],
    ["split-check", "--half-genus", "1"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as err:
        main(argv)
    assert err.value.code == 2


def test_chain_degree_three(capsys):
    code, obj = run_json(capsys, "chain", "--d", "3")
    assert code == 0
    rows = obj["rows"]
    assert [r["lambda"] for r in rows] == [[3], [2, 1], [1, 1, 1]]
    assert [(r["c_split"], r["deg_phi"], r["deg_q0"]) for r in rows] == [
        ({"num": 3, "den": 1}, 1, 3),
        ({"num": 2, "den": 1}, 1, 2),
        ({"num": 1, "den": 6}, 6, 1),
    ]


def test_chain_csv_header(capsys):
    code, out = run(capsys, "chain", "--d", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["lambda", "c_split_num", "c_split_den", "deg_phi", "deg_q0", "holds"]
    assert rows[2] == ["[1,1]", "1", "2", "2", "1", "True"]


def test_signs_main(capsys):
    code, obj = run_json(capsys, "signs", "--ell", "1", "--chain", "main")
    assert code == 0
    assert obj["sign"] == 1
    assert [s["sign"] for s in obj["steps"]] == [-1, -1, 1]
    assert [s["running"] for s in obj["steps"]] == [-1, 1, 1]


def test_signs_comsign(capsys):
    code, obj = run_json(capsys, "signs", "--ell", "5", "--chain", "comsign")
    assert obj["sign"] == -1


def test_split_check_single(capsys):
    code, obj = run_json(capsys, "split-check", "--d", "3", "--half-genus", "1", "--profiles", "[]",
                         "--method", "both")
    assert code == 0
    (case,) = obj["cases"]
    assert case["smoothing"] == case["split"] == {"num": 3, "den": 1}


def test_split_check_sweep_and_series(capsys, tmp_path):
    code, obj = run_json(capsys, "split-check", "--half-genus", "2", "--max-d", "3",
                         "--write-tables", str(tmp_path))
    assert code == 0 and obj["all_match"]
    assert len(obj["cases"]) == 7
    code, smooth = run_json(capsys, "series", "--table", str(tmp_path / "smoothing-d3-g2.json"))
    code, split = run_json(capsys, "series", "--table", str(tmp_path / "normalization-d3-g2.json"), "--split")
    assert code == 0
    assert smooth["series"][0]["terms"] == split["series"][0]["terms"]
    assert split["series"][0]["split"] is True


def test_series_from_handwritten_table(capsys, tmp_path):
    table = {
        "target": {"kind": "doublet", "genus": 0},
        "entries": [{"d": 1, "chi": 4, "profile": [], "num": 3, "den": 2}],
    }
    path = tmp_path / "t.json"
    path.write_text(json.dumps(table))
    code, obj = run_json(capsys, "series", "--table", str(path))
    assert obj["series"] == [{"d": 1, "profile": [], "terms": [{"t2": -4, "u": 0, "num": 3, "den": 2}]}]
    code, out = run(capsys, "series", "--table", str(path), "--level", "1", "--format", "csv")
    assert out.splitlines() == ["d,profile,t2,u,num,den", "1,[],-6,1,3,2"]


def test_series_bad_table(capsys, tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"target": {"kind": "doublet", "genus": 1, "marked_pairs": 1},
                                "entries": [{"d": 2, "chi": -1, "profile": [[2]], "num": 1, "den": 1}]}))
    code, obj = run_json(capsys, "series", "--table", str(path))
    assert code == 1 and obj["error"] == "inconsistent-table"
    code, obj = run_json(capsys, "series", "--table", str(tmp_path / "missing.json"))
    assert code == 1


def test_output_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, out = run(capsys, "split-check", "--half-genus", "1", "--max-d", "3", "--no-timing",
                        "--output", str(path))
        assert code == 0 and out == ""
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.json"
    main(["hurwitz", "--d", "4", "--genus", "1", "--no-timing", "--output", str(c)])
    main(["hurwitz", "--d", "4", "--genus", "1", "--no-timing", "--output", str(a)])
    assert a.read_bytes() == c.read_bytes()
    assert "elapsed_ms" not in json.loads(c.read_text())


def test_cache_dir_flag_writes_cache(capsys, tmp_path, fresh_characters):
    code, _ = run(capsys, "hurwitz", "--d", "5", "--genus", "1", "--cache-dir", str(tmp_path))
    assert (tmp_path / "characters-d5.bin").exists()


def test_cache_env_var(capsys, tmp_path, monkeypatch, fresh_characters):
    monkeypatch.setenv("RGWSPLIT_CACHE_DIR", str(tmp_path))
    run(capsys, "hurwitz", "--d", "4", "--genus", "0")
    assert (tmp_path / "characters-d4.bin").exists()


def test_suite_subset_text(capsys):
    code, out = run(capsys, "suite", "--only", "4", "7", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split()[:3] == ["criterion", "name", "passed"]
    assert len(lines) == 3 and all("PASS" in line for line in lines[1:])


def test_suite_failure_is_fail_fast(capsys, monkeypatch):
    from rgwsplit import acceptance
    from rgwsplit.acceptance import CriterionResult

    def broken(cache_dir=None):
        return CriterionResult(4, "coefficient chain", False, 1, "forced failure")

    monkeypatch.setattr(acceptance, "CRITERIA", acceptance.CRITERIA[:3] + (broken,) + acceptance.CRITERIA[4:])
    code, obj = run_json(capsys, "suite", "--only", "4", "7", "--no-timing")
    assert code == 1
    assert obj["error"] == "check-failed"
    assert [c["criterion"] for c in obj["report"]["criteria"]] == [4]
