"""CLI surface: output schemas, exit codes, determinism."""

import json

import pytest

from oapoly.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPartitions:
    def test_list_s4(self, capsys):
        code, out, _ = run_cli(capsys, "partitions", "list", "--s", "4")
        assert code == 0
        payload = json.loads(out)
        assert payload == {"s": 4, "partitions": [[1, 1, 1, 1], [2, 1, 1]]}

    def test_check_complete(self, capsys):
        code, out, _ = run_cli(capsys, "partitions", "check", "--s", "4", "--parts", "2,1,1")
        assert code == 0
        payload = json.loads(out)
        assert payload["complete"] is True
        assert payload["weights"] == ["1/2", "1/4", "1/4"]

    def test_check_incomplete(self, capsys):
        code, out, _ = run_cli(capsys, "partitions", "check", "--s", "4", "--parts", "1,3")
        assert code == 0
        assert json.loads(out)["complete"] is False

    def test_bad_parts_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "partitions", "check", "--s", "4", "--parts", "a,b")
        assert code == 2
        assert "--parts" in err


class TestMeans:
    @pytest.fixture
    def vectors_file(self, tmp_path):
        path = tmp_path / "vectors.json"
        path.write_text(json.dumps([[1.0], [3.0]]))
        return str(path)

    def test_hm_closed(self, capsys, vectors_file):
        code, out, _ = run_cli(capsys, "means", "eval", "--mean", "hm",
                               "--method", "closed", "--inputs", vectors_file)
        assert code == 0
        payload = json.loads(out)
        assert payload["value"] == [1.5]
        assert payload["method"] == "closed_form"
        assert payload["residual_bound"] is None

    def test_hm_lagrange_matches_closed(self, capsys, vectors_file):
        code, out, _ = run_cli(capsys, "means", "eval", "--mean", "hm",
                               "--method", "lagrange", "--s", "2",
                               "--inputs", vectors_file)
        assert code == 0
        assert json.loads(out)["value"] == [pytest.approx(1.5, rel=1e-12)]

    def test_grid_reports_bound(self, capsys, vectors_file):
        code, out, _ = run_cli(capsys, "means", "eval", "--mean", "hm",
                               "--method", "grid", "--resolution", "32",
                               "--inputs", vectors_file)
        assert code == 0
        payload = json.loads(out)
        assert payload["residual_bound"] > 0

    def test_wgm(self, capsys, tmp_path):
        path = tmp_path / "v.json"
        path.write_text(json.dumps([[16.0], [1.0], [1.0]]))
        code, out, _ = run_cli(capsys, "means", "eval", "--mean", "wgm",
                               "--weights", "2,1,1", "--inputs", str(path))
        assert code == 0
        assert json.loads(out)["value"] == [pytest.approx(4.0, rel=1e-12)]

    def test_rmp_requires_s(self, capsys, vectors_file):
        code, _, err = run_cli(capsys, "means", "eval", "--mean", "rmp",
                               "--inputs", vectors_file)
        assert code == 2 and "--s" in err

    def test_arity_cross_check(self, capsys, vectors_file):
        code, _, err = run_cli(capsys, "means", "eval", "--mean", "hm", "--s", "3",
                               "--inputs", vectors_file)
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "means", "eval", "--mean", "hm",
                               "--inputs", "/nonexistent.json")
        assert code == 2 and "not found" in err

    def test_malformed_vector_diagnostic_names_offender(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps([[1.0], "oops"]))
        code, _, err = run_cli(capsys, "means", "eval", "--mean", "hm",
                               "--inputs", str(path))
        assert code == 2
        assert "vector #1" in err

    def test_exact_vectors_round_trip(self, capsys, tmp_path):
        path = tmp_path / "exact.json"
        path.write_text(json.dumps([["1/1"], ["3/1"]]))
        code, out, _ = run_cli(capsys, "means", "eval", "--mean", "hm",
                               "--inputs", str(path))
        assert code == 0
        assert json.loads(out)["value"] == ["3/2"]


class TestPoly:
    @pytest.fixture
    def poly_file(self, tmp_path):
        path = tmp_path / "poly.json"
        path.write_text(json.dumps({"s": 2, "diagonal": [[1.0], [1.0]]}))
        return str(path)

    @pytest.fixture
    def mixed_poly_file(self, tmp_path):
        path = tmp_path / "mixed.json"
        path.write_text(json.dumps({
            "s": 2, "n": 2, "d": 1,
            "terms": [
                {"key": [0, 0], "coeff": [1.0]},
                {"key": [0, 1], "coeff": [1.0]},
                {"key": [1, 1], "coeff": [1.0]},
            ],
        }))
        return str(path)

    def test_eval(self, capsys, poly_file, tmp_path):
        vpath = tmp_path / "v.json"
        vpath.write_text(json.dumps([3.0, 4.0]))
        code, out, _ = run_cli(capsys, "poly", "eval", "--poly", poly_file,
                               "--input", str(vpath))
        assert code == 0
        assert json.loads(out)["value"] == [25.0]

    def test_multilinear(self, capsys, poly_file, tmp_path):
        vpath = tmp_path / "vs.json"
        vpath.write_text(json.dumps([[1.0, 2.0], [3.0, 6.0]]))
        code, out, _ = run_cli(capsys, "poly", "multilinear", "--poly", poly_file,
                               "--inputs", str(vpath))
        assert code == 0
        assert json.loads(out)["value"] == [15.0]

    def test_oa_check_pass_and_fail(self, capsys, poly_file, mixed_poly_file):
        code, out, _ = run_cli(capsys, "poly", "oa-check", "--poly", poly_file,
                               "--trials", "32", "--seed", "1", "--exhaustive")
        assert code == 0 and json.loads(out)["passed"] is True
        code, out, _ = run_cli(capsys, "poly", "oa-check", "--poly", mixed_poly_file,
                               "--trials", "32", "--seed", "1", "--exhaustive")
        assert code == 1 and json.loads(out)["passed"] is False

    def test_malformed_poly_names_field(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text(json.dumps({"n": 2, "d": 1, "terms": []}))
        code, _, err = run_cli(capsys, "poly", "eval", "--poly", str(path),
                               "--input", str(path))
        assert code == 2 and "'s'" in err


class TestVerify:
    def test_single_claim(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "schur", "--s", "3", "--n", "3",
                               "--trials", "20", "--seed", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["claim_id"] == "SCHUR" and payload["passed"] is True

    def test_all_json(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "all", "--s", "2", "--n", "3",
                               "--trials", "5", "--seed", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["all_passed"] is True
        assert len(payload["reports"]) == 8

    def test_all_csv(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "all", "--s", "2", "--n", "3",
                               "--trials", "5", "--seed", "3", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "claim_id,trials,max_residual,tolerance,passed"
        assert len(lines) == 9

    def test_determinism_byte_identical(self, capsys):
        args = ["verify", "all", "--s", "3", "--n", "4", "--trials", "25", "--seed", "7"]
        code1, out1, _ = run_cli(capsys, *args)
        code2, out2, _ = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_failing_poly_exit_one(self, capsys, tmp_path):
        path = tmp_path / "mixed.json"
        path.write_text(json.dumps({
            "s": 2, "n": 2, "d": 1,
            "terms": [{"key": [0, 0], "coeff": [1.0]},
                      {"key": [0, 1], "coeff": [1.0]},
                      {"key": [1, 1], "coeff": [1.0]}],
        }))
        code, out, _ = run_cli(capsys, "verify", "hm", "--s", "2", "--n", "2",
                               "--trials", "5", "--seed", "0", "--poly", str(path))
        assert code == 1
        assert json.loads(out)["passed"] is False

    def test_falsify_witness_exit_zero(self, capsys, tmp_path):
        path = tmp_path / "mixed.json"
        path.write_text(json.dumps({
            "s": 2, "n": 2, "d": 1,
            "terms": [{"key": [0, 0], "coeff": [1.0]},
                      {"key": [0, 1], "coeff": [1.0]},
                      {"key": [1, 1], "coeff": [1.0]}],
        }))
        code, out, _ = run_cli(capsys, "verify", "falsify", "--claim", "hm",
                               "--poly", str(path), "--budget", "500", "--seed", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True and payload["kind"] == "falsify"

    def test_falsify_inconclusive_exit_three(self, capsys, tmp_path):
        path = tmp_path / "threeway.json"
        path.write_text(json.dumps({
            "s": 3, "n": 3, "d": 1,
            "terms": [{"key": [0, 1, 2], "coeff": [1.0]},
                      {"key": [0, 0, 0], "coeff": [1.0]}],
        }))
        code, out, _ = run_cli(capsys, "verify", "falsify", "--claim", "hm",
                               "--poly", str(path), "--budget", "2", "--seed", "2")
        assert code == 3
        assert json.loads(out)["inconclusive"] is True

    def test_usage_error(self, capsys):
        assert run_cli(capsys, "verify", "nonsense")[0] == 2
        assert run_cli(capsys, "verify", "falsify")[0] == 2
