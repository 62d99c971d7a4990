import json

import pytest

from substratum.cli import main

PD = {"alphabet": ["a", "b"], "length": 2, "rules": {"a": "ab", "b": "aa"}, "seed": ["a", "a"]}
BIGDIAG = {
    "alphabet": ["a", "b", "c"],
    "length": 3,
    "rules": {"a": "acb", "b": "baa", "c": "bba"},
    "seed": ["b", "a"],
}
THUE_MORSE = {"alphabet": ["a", "b"], "length": 2, "rules": {"a": "ab", "b": "ba"}, "seed": ["b", "a"]}


@pytest.fixture
def sub_file(tmp_path):
    def write(data, name="sub.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write


def test_validate_ok(sub_file, capsys):
    assert main(["validate", sub_file(PD)]) == 0
    out = capsys.readouterr().out
    assert "ok:" in out


def test_validate_bad_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["validate", str(path)]) == 1


def test_validate_bad_rules(sub_file, capsys):
    bad = {"alphabet": ["a", "b"], "length": 2, "rules": {"a": "ab", "b": "a"}}
    assert main(["validate", sub_file(bad)]) == 1


def test_simplify(sub_file, capsys):
    assert main(["simplify", sub_file(PD)]) == 0
    out = capsys.readouterr().out
    assert "exponent: 2" in out
    assert "a->abaa, b->abab" in out


def test_fixed_point(sub_file, capsys):
    assert main(["fixed-point", sub_file(BIGDIAG), "--range", "0..8"]) == 0
    assert capsys.readouterr().out.strip() == "acbbbabaa"


def test_fixed_point_negative_range(sub_file, capsys):
    assert main(["fixed-point", sub_file(BIGDIAG), "--range=-1..0"]) == 0
    assert capsys.readouterr().out.strip() == "ba"


def test_automaton_dot(sub_file, capsys):
    assert main(["automaton", sub_file(BIGDIAG), "--reading", "direct", "--format", "dot"]) == 0
    out = capsys.readouterr().out
    for edge in (
        '"a" -> "a" [label="0"]',
        '"a" -> "c" [label="1"]',
        '"a" -> "b" [label="2"]',
        '"b" -> "b" [label="0"]',
        '"b" -> "a" [label="1,2"]',
        '"c" -> "b" [label="0,1"]',
        '"c" -> "a" [label="2"]',
    ):
        assert edge in out


def test_automaton_json_parses(sub_file, capsys):
    assert main(["automaton", sub_file(PD), "--reading", "reverse", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["reading"] == "reverse"
    assert data["ell"] == 2


def test_kernel_table(sub_file, capsys):
    assert main(["kernel", sub_file(PD), "--depth", "4"]) == 0
    out = capsys.readouterr().out
    assert "kernel size: 4" in out
    assert "brute-force count at depth 4: 4" in out


def test_semigroup(sub_file, capsys):
    assert main(["semigroup", sub_file(PD)]) == 0
    out = capsys.readouterr().out
    assert "stabilizing exponent: 2" in out
    assert "(a,a)^T" in out and "(b,b)^T" in out


def test_toeplitz_summary(sub_file, capsys):
    assert main(["toeplitz", sub_file(PD), "--range=-100..100"]) == 0
    out = capsys.readouterr().out
    assert "Aper ∩ [-100,100] = {-1}" in out


def test_toeplitz_refusal_exit_code(sub_file, capsys):
    assert main(["toeplitz", sub_file(THUE_MORSE), "--range=-5..5"]) == 2


def test_reduced_graph_dot(sub_file, capsys):
    assert main(["reduced-graph", sub_file(PD), "--format", "dot"]) == 0
    out = capsys.readouterr().out
    assert "digraph reduced" in out


def test_check_passes(sub_file, capsys):
    assert main(["check", sub_file(PD)]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out


def test_deterministic_output(sub_file, capsys):
    path = sub_file(BIGDIAG)
    main(["toeplitz", path, "--range=-20..20"])
    first = capsys.readouterr().out
    main(["toeplitz", path, "--range=-20..20"])
    second = capsys.readouterr().out
    assert first == second


def test_missing_seed_for_fixed_point(sub_file, capsys):
    bare = {"alphabet": ["a", "b"], "length": 2, "rules": {"a": "ab", "b": "aa"}}
    assert main(["fixed-point", sub_file(bare), "--range", "0..3"]) == 1
