"""Command line behavior: exit codes, JSON output, determinism."""

import json

import pytest

from prior_forge import SCHEMA, dumps_canonical, lp
from prior_forge.cli import main


@pytest.fixture()
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


@pytest.fixture()
def spath(fixture_path):
    return lambda name: str(fixture_path(name))


def write_json(tmp_path, name, doc):
    target = tmp_path / name
    target.write_text(json.dumps(doc), encoding="utf-8")
    return str(target)


# -- check -------------------------------------------------------------------


def test_check_ok(run, spath):
    code, out, _ = run("check", spath("intro"))
    assert code == 0
    assert out.startswith("ok: 5 states, 2 players")


def test_check_json(run, spath):
    code, out, _ = run("check", "--json", spath("pl"))
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    assert doc["ok"] is True and doc["states"] == 3


def test_missing_file_is_input_error(run):
    code, _, err = run("check", "/nonexistent/s.json")
    assert code == 2
    assert "error:" in err


def test_float_rejected(run, tmp_path):
    target = tmp_path / "s.json"
    target.write_text('{"states": ["a"], "players": ["P"], "partitions": [[["a"]]], "types": [[[0.5]]]}')
    code, _, err = run("check", str(target))
    assert code == 2
    assert "float" in err


def test_wrong_schema_tag(run, tmp_path, spath):
    doc = json.loads(open(spath("pl")).read())
    doc["schema"] = "prior-forge/99"
    code, _, err = run("check", write_json(tmp_path, "s.json", doc))
    assert code == 2


def test_invalid_structure(run, tmp_path):
    doc = {
        "states": ["a", "b"],
        "players": ["P1"],
        "partitions": [[["a"]]],  # does not cover b
        "types": [[[1, 0]]],
    }
    code, _, err = run("check", write_json(tmp_path, "s.json", doc))
    assert code == 2


# -- components ----------------------------------------------------------------


def test_components(run, spath):
    code, out, _ = run("components", spath("ex_pl1"))
    assert code == 0
    assert "minimal:" in out and "{w1}" in out and "{w4}" in out


def test_components_all_json(run, spath):
    code, out, _ = run("components", "--all", "--json", spath("ex_pl1"))
    assert code == 0
    doc = json.loads(out)
    assert doc["minimal"] == [["w1"], ["w4"]]
    assert len(doc["all"]) == 4


# -- prior ---------------------------------------------------------------------


def test_prior_present(run, spath):
    code, out, _ = run("prior", "--kind", "common", spath("intro"))
    assert code == 0
    assert "common prior: present" in out


def test_prior_absent_with_refutation(run, spath):
    code, out, _ = run("prior", "--kind", "common", "--json", spath("ex_pl2"))
    assert code == 3
    doc = json.loads(out)
    assert doc["holds"] is False
    assert doc["refutation"] is not None


def test_prior_strong_witness(run, spath):
    code, out, _ = run("prior", "--kind", "strong", "--json", spath("ex_plbet4"))
    assert code == 0
    doc = json.loads(out)
    assert doc["witness"]["prior"] == ["1/4", "1/4", "1/4", "1/4"]


def test_prior_check_mode(run, spath, tmp_path):
    p = write_json(tmp_path, "p.json", {"dist": ["1/6", "1/6", "1/6", "1/4", "1/4"]})
    code, out, _ = run("prior", "--kind", "common", "--check", p, spath("intro"))
    assert code == 3
    assert "is not a common prior" in out
    u = write_json(tmp_path, "u.json", {"dist": ["1/5", "1/5", "1/5", "1/5", "1/5"]})
    code, out, _ = run("prior", "--kind", "strong", "--check", u, spath("intro"))
    assert code == 0


# -- trade ---------------------------------------------------------------------


def test_trade_exit_codes(run, spath):
    code, out, _ = run("trade", "--kind", "agreeable", spath("ex_pl2"))
    assert code == 0 and "present" in out
    code, out, _ = run("trade", "--kind", "agreeable", spath("intro"))
    assert code == 3 and "absent" in out
    code, out, _ = run("trade", "--kind", "weak", spath("pl4"))
    assert code == 0
    code, out, _ = run("trade", "--kind", "acceptable", spath("ex_plbet4"))
    assert code == 3


# -- pump ----------------------------------------------------------------------


def test_pump_found(run, spath, tmp_path):
    p = write_json(tmp_path, "p.json", {"dist": [0, 0, 1, 0]})
    code, out, _ = run("pump", "--dist", p, spath("pl4"))
    assert code == 0
    assert "money pump: plain" in out


def test_pump_grade_required(run, spath, tmp_path):
    p = write_json(tmp_path, "p.json", {"dist": [0, 0, 1, 0]})
    code, out, _ = run("pump", "--dist", p, "--require", "maximal", spath("pl4"))
    assert code == 3
    assert "only plain" in out


def test_pump_strong_grade(run, spath, tmp_path):
    p = write_json(tmp_path, "p.json", {"dist": ["1/4", "1/4", "1/4", "1/4"]})
    code, out, _ = run("pump", "--dist", p, "--require", "strong", spath("ex_pl2"))
    assert code == 0
    assert "money pump: strong" in out


def test_pump_absent_for_prior(run, spath, tmp_path):
    p = write_json(tmp_path, "p.json", {"dist": ["1/2", 0, 0, "1/2"]})
    code, out, _ = run("pump", "--dist", p, spath("ex_pl1"))
    assert code == 3
    assert "no pump" in out


# -- classify --------------------------------------------------------------------


def test_classify_trade(run, spath, tmp_path):
    f = write_json(tmp_path, "f.json", {"payoffs": [[0, 1, 1, 0], [0, -1, -1, 0]]})
    code, out, _ = run("classify", "--trade", f, spath("ex_pl1"))
    assert code == 0
    assert "acceptable" in out and "weakly agreeable" not in out


def test_classify_dist(run, spath, tmp_path):
    p = write_json(tmp_path, "p.json", {"dist": ["1/4", "1/4", "1/4", "1/4"]})
    code, out, _ = run("classify", "--dist", p, spath("pl4"))
    assert code == 0
    assert "money_pump" in out and "strong_money_pump" in out


# -- report ----------------------------------------------------------------------


def test_report_text(run, spath):
    code, out, _ = run("report", spath("ex_pl1"))
    assert code == 0
    assert "common prior" in out and "strong" in out


def test_report_json_byte_identical(run, spath, tmp_path):
    p = write_json(tmp_path, "p.json", {"dist": ["1/4", "1/4", "1/4", "1/4"]})
    args = ("report", "--json", "--all-components", "--dist", p, spath("pl4"))
    code1, out1, _ = run(*args)
    code2, out2, _ = run(*args)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert out1 == dumps_canonical(doc)
    assert doc["schema"] == SCHEMA


# -- fuzz ------------------------------------------------------------------------


def test_fuzz_jsonl(run):
    code, out, _ = run("fuzz", "--seeds", "0..5")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 5
    for k, line in enumerate(lines):
        doc = json.loads(line)
        assert doc["seed"] == k
        assert doc["failures"] == []


def test_fuzz_bad_range(run):
    code, _, err = run("fuzz", "--seeds", "5")
    assert code == 2
    assert "a..b" in err


# -- plumbing --------------------------------------------------------------------


def test_dump_lp_flag(run, tmp_path):
    # A structure no other test touches, so the prior solve is not cached.
    doc = {
        "states": ["a", "b", "c"],
        "players": ["P1"],
        "partitions": [[["a", "c"], ["b"]]],
        "types": [[["1/3", 0, "2/3"], [0, 1, 0]]],
    }
    try:
        code, _, err = run(
            "--dump-lp", "prior", "--kind", "common", write_json(tmp_path, "s.json", doc)
        )
        assert code == 0
        assert "maximize" in err and "subject to" in err
    finally:
        lp.DUMP = None


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["classify", "structure.json"])  # missing --trade/--dist
    assert exc.value.code == 2
