"""Command-line surface: parsing, reports, exit codes."""

import json

import pytest

from pairlin.cli import (
    format_matrix_text,
    parse_matrix_text,
    run_command,
)

RANK_GAP = """\
# sign-pair counterexample fixture
pair sign
rows 3
cols 4
1 1 -1 1
1 -1 1 1
-1 1 1 1
"""

ST_FIX = """\
pair supertropical
rows 2
cols 2
2 0
1 3
"""


@pytest.fixture
def rank_gap_file(tmp_path):
    f = tmp_path / "rank_gap.txt"
    f.write_text(RANK_GAP)
    return str(f)


@pytest.fixture
def st_file(tmp_path):
    f = tmp_path / "st.txt"
    f.write_text(ST_FIX)
    return str(f)


def kv(out):
    d = {}
    for line in out.strip().splitlines():
        k, _, v = line.partition(": ")
        d[k] = v
    return d


class TestParsing:
    def test_round_trip_canonical_form(self):
        alg, a = parse_matrix_text(RANK_GAP)
        text = format_matrix_text(a)
        alg2, b = parse_matrix_text(text)
        assert a.entries == b.entries
        assert format_matrix_text(b) == text

    def test_comments_and_blank_lines_ignored(self):
        alg, a = parse_matrix_text("# lead\n\npair sign\nrows 1\ncols 1\n1 # trail\n")
        assert a.rows == 1

    def test_bad_header(self):
        from pairlin.cli import ParseFailure

        with pytest.raises(ParseFailure):
            parse_matrix_text("rows 1\ncols 1\npair sign\n1\n")


class TestCommands:
    def test_pairs_list(self, capsys):
        assert run_command(["pairs", "list"]) == 0
        out = capsys.readouterr().out
        assert "sign" in out and "supertropical" in out

    def test_det_square(self, st_file, capsys):
        assert run_command(["det", st_file]) == 0
        d = kv(capsys.readouterr().out)
        assert d["det_plus"] == "5"
        assert d["det_minus"] == "1"
        assert d["singular"] == "false"

    def test_det_nonsquare_prints_minor_verdicts(self, rank_gap_file, capsys):
        assert run_command(["det", rank_gap_file]) == 0
        out = capsys.readouterr().out
        assert out.count("singular: true") == 4  # all four 3x3 minors

    def test_rank_report(self, rank_gap_file, capsys):
        assert run_command(["rank", rank_gap_file]) == 0
        d = kv(capsys.readouterr().out)
        assert d["row_rank"] == "3"
        assert d["submatrix_rank"] == "2"
        assert d["a2"] == "FAILS"

    def test_check_a2_fails_exit_1(self, rank_gap_file, capsys):
        assert run_command(["check", "a2", rank_gap_file]) == 1
        assert kv(capsys.readouterr().out)["a2"] == "FAILS"

    def test_check_a1_holds_exit_0(self, rank_gap_file, capsys):
        assert run_command(["check", "a1", rank_gap_file]) == 0

    def test_solve_cramer(self, st_file, capsys):
        assert run_command(["solve", "cramer", st_file, "--rhs", "4,4"]) == 0
        d = kv(capsys.readouterr().out)
        assert d["x"] == "2,1"
        assert d["balance_verified"] == "true"

    def test_solve_jacobi(self, st_file, capsys):
        assert run_command(["solve", "jacobi", st_file, "--rhs", "4,4"]) == 0
        d = kv(capsys.readouterr().out)
        assert d["stabilized_at"] == "1"
        assert d["x"] == "2,1"
        assert d["mu_verified"] == "true"

    def test_audit(self, capsys):
        assert run_command(["audit", "sign"]) == 0
        d = kv(capsys.readouterr().out)
        assert d["strict_second_kind"] == "true"
        assert d["a0_bipotent"] == "true"

    def test_example_pass(self, capsys):
        assert run_command(["example", "sign-a2-counterexample"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out

    def test_unknown_example_exit_2(self, capsys):
        assert run_command(["example", "not-a-thing"]) == 2

    def test_missing_file_exit_2(self, capsys):
        assert run_command(["det", "/nonexistent/file.txt"]) == 2

    def test_bad_specifier_exit_2(self, tmp_path, capsys):
        f = tmp_path / "bad.txt"
        f.write_text("pair mystery\nrows 1\ncols 1\n1\n")
        assert run_command(["det", str(f)]) == 2

    def test_cap_exit_3(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("PAIRLIN_CAP_N", "1")
        f = tmp_path / "two.txt"
        f.write_text("pair supertropical\nrows 2\ncols 2\n0 0\n0 0\n")
        assert run_command(["det", str(f)]) == 3

    def test_json_lines_format(self, st_file, capsys):
        assert run_command(["--format", "json-lines", "det", st_file]) == 0
        for line in capsys.readouterr().out.strip().splitlines():
            rec = json.loads(line)
            assert set(rec) == {"key", "value"}

    def test_rank_domain_flag(self, st_file, capsys):
        assert run_command(["rank", st_file, "--domain", "heuristic:2"]) == 0
        d = kv(capsys.readouterr().out)
        assert d["domain"] == "heuristic"


class TestDoubledLiterals:
    def test_doubled_boolean_matrix_file(self, tmp_path, capsys):
        f = tmp_path / "db.txt"
        f.write_text(
            "pair doubled:boolean\nrows 4\ncols 4\n"
            "1|0 0|0 0|0 1|0\n0|0 1|0 1|0 0|0\n1|0 0|0 1|0 0|0\n0|0 0|1 0|0 1|0\n"
        )
        assert run_command(["det", str(f)]) == 0
        d = kv(capsys.readouterr().out)
        assert d["permanent"] == "1|1"
        assert d["singular"] == "false"  # tracks have opposite parity

    def test_hyper_vector_literals(self, tmp_path, capsys):
        f = tmp_path / "kr.txt"
        f.write_text("pair krasner:5:4\nrows 2\ncols 2\nc1 c1\nc1 c1\n")
        assert run_command(["det", str(f)]) == 0
        d = kv(capsys.readouterr().out)
        assert d["singular"] == "true"
