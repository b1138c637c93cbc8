import itertools
import json

import numpy as np
import pytest

from spinhv import HermitianOperator, SpinValue, expectation, quantum_bound, spin_operators
from spinhv.cli import main
from spinhv.matrices import EXAMPLE1


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def strip_timestamp(text: str) -> str:
    return "\n".join(line for line in text.splitlines() if '"timestamp"' not in line)


class TestFeasibilityCommand:
    def test_three_halves(self, capsys):
        code, report = run_cli(capsys, "feasibility", "--spin-doubled", "3")
        assert code == 0
        results = report["results"]
        assert results["feasible_by_formula"] is False
        assert results["feasible_by_enumeration"] is False
        assert results["agreement"] is True
        table = {row["squared_sum"]: row["count"] for row in results["squared_magnitude_classes"]}
        assert table == {"27/4": 8, "19/4": 24, "11/4": 24, "3/4": 8}
        assert "15/4" not in table

    def test_spin_twelve(self, capsys):
        code, report = run_cli(capsys, "feasibility", "--spin-doubled", "24")
        assert code == 0
        assert report["results"]["feasible_by_formula"] is False
        assert report["results"]["agreement"] is True

    def test_spin_one(self, capsys):
        code, report = run_cli(capsys, "feasibility", "--spin-doubled", "2")
        assert code == 0
        assert report["results"]["feasible_by_formula"] is True
        assert report["results"]["constrained_assignments"] == 12

    def test_large_spin_skips_oracle(self, capsys):
        code, report = run_cli(capsys, "feasibility", "--spin-doubled", "1999")
        assert code == 0
        assert report["results"]["feasible_by_enumeration"] is None
        assert report["results"]["agreement"] is None

    def test_out_of_range(self, capsys):
        assert run_cli(capsys, "feasibility", "--spin-doubled", "0")[0] == 2
        assert run_cli(capsys, "feasibility", "--spin-doubled", "2001")[0] == 2


class TestBoundsCommand:
    def test_example1(self, capsys):
        code, report = run_cli(capsys, "bounds", "--matrix", "example1", "--spin-doubled", "2")
        assert code == 0
        results = report["results"]
        assert results["beta_constrained"] == -2.0
        assert results["beta_unconstrained"] == -3.0
        assert results["beta_quantum"] == pytest.approx(-2.5616, abs=5e-4)
        assert results["violates_constrained"] is True
        assert results["violates_unconstrained"] is False

    def test_example3(self, capsys):
        code, report = run_cli(capsys, "bounds", "--matrix", "example3", "--spin-doubled", "4")
        assert code == 0
        results = report["results"]
        assert results["beta_constrained"] == pytest.approx(-20.0, abs=1e-9)
        assert results["beta_unconstrained"] == pytest.approx(-34.0, abs=1e-9)
        assert results["beta_quantum"] == pytest.approx(-20.1897, abs=5e-4)

    def test_zero_matrix_from_file(self, capsys, tmp_path):
        path = tmp_path / "zero.txt"
        path.write_text("# all zero\n0 0 0\n0 0 0\n0 0 0\n")
        code, report = run_cli(capsys, "bounds", "--matrix", str(path), "--spin-doubled", "2")
        assert code == 0
        results = report["results"]
        assert results["beta_constrained"] == 0.0
        assert results["beta_unconstrained"] == 0.0
        assert results["beta_quantum"] == pytest.approx(0.0, abs=1e-12)

    def test_fraction_entries(self, capsys, tmp_path):
        path = tmp_path / "ex3.txt"
        path.write_text("5/2 2 -1\n5/2 -2 -1\n-3/2 0 -3\n")
        code, report = run_cli(capsys, "bounds", "--matrix", str(path), "--spin-doubled", "4")
        assert code == 0
        assert report["results"]["beta_constrained"] == pytest.approx(-20.0, abs=1e-9)

    def test_infeasible_spin_reported(self, capsys):
        code, report = run_cli(capsys, "bounds", "--matrix", "identity", "--spin-doubled", "3")
        assert code == 0
        assert report["results"]["constrained_infeasible"] is True
        assert report["results"]["beta_constrained"] is None

    def test_unknown_matrix(self, capsys):
        assert run_cli(capsys, "bounds", "--matrix", "nosuch", "--spin-doubled", "2")[0] == 2

    def test_bad_file(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1 2 3\n4 5\n")
        assert run_cli(capsys, "bounds", "--matrix", str(path), "--spin-doubled", "2")[0] == 2

    def test_unparseable_token(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("a b c d e f g h i\n")
        assert run_cli(capsys, "bounds", "--matrix", str(path), "--spin-doubled", "2")[0] == 2

    def test_spin_out_of_quantum_range(self, capsys):
        assert run_cli(capsys, "bounds", "--matrix", "identity", "--spin-doubled", "22")[0] == 2


class TestTable1Command:
    def test_targets_pass(self, capsys):
        code, report = run_cli(capsys, "table1", "--max-spin-doubled", "8")
        assert code == 0
        results = report["results"]
        assert results["all_targets_passed"] is True
        rows = {row["spin_doubled"]: row for row in results["rows"]}
        assert len(rows) == 8
        assert rows[3]["beta_constrained"] is None  # infeasible half-integer spin
        assert rows[1]["beta_constrained"] == pytest.approx(rows[1]["beta_unconstrained"])
        for doubled in (2, 4, 6, 8):
            assert all(rows[doubled]["passed"].values())

    def test_out_of_range(self, capsys):
        assert run_cli(capsys, "table1", "--max-spin-doubled", "40")[0] == 2

    def test_target_mismatch_exits_3(self, capsys, monkeypatch):
        import spinhv.cli as cli_module

        broken = dict(cli_module.TABLE1_TARGETS)
        broken[2] = (broken[2][0], broken[2][1], -5.0)  # wrong quantum value
        monkeypatch.setattr(cli_module, "TABLE1_TARGETS", broken)
        code, report = run_cli(capsys, "table1", "--max-spin-doubled", "2")
        assert code == 3
        assert report["results"]["all_targets_passed"] is False


class TestMembershipCommand:
    @pytest.fixture
    def quantum_point_file(self, tmp_path):
        s = SpinValue(2)
        _, state = quantum_bound(EXAMPLE1, s)
        ops = [op.entries for op in spin_operators(s)]
        entries = np.zeros((3, 3))
        for k, l in itertools.product(range(3), repeat=2):
            entries[k, l] = expectation(state, HermitianOperator(np.kron(ops[k], ops[l])))
        path = tmp_path / "point.txt"
        path.write_text("\n".join(" ".join(repr(float(v)) for v in row) for row in entries))
        return path

    def test_quantum_point_outside_conserving(self, capsys, quantum_point_file):
        code, report = run_cli(
            capsys, "membership", "--point", str(quantum_point_file),
            "--spin-doubled", "2", "--constrained",
        )
        assert code == 0
        results = report["results"]
        assert results["inside"] is False
        assert results["functional_value_at_point"] < results["functional_bound"]

    def test_quantum_point_inside_standard(self, capsys, quantum_point_file):
        code, report = run_cli(
            capsys, "membership", "--point", str(quantum_point_file), "--spin-doubled", "2",
        )
        assert code == 0
        results = report["results"]
        assert results["inside"] is True
        assert results["reconstruction_residual"] <= 1e-7
        total = sum(w["weight"] for w in results["weights"])
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_vertex_echoed_back(self, capsys, tmp_path):
        path = tmp_path / "vertex.txt"
        path.write_text("1 1 0\n1 1 0\n0 0 0\n")  # (1,1,0) (x) (1,1,0)
        code, report = run_cli(
            capsys, "membership", "--point", str(path), "--spin-doubled", "2", "--constrained",
        )
        assert code == 0
        assert report["results"]["inside"] is True

    def test_infeasible_spin_is_input_error(self, capsys, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("0 0 0 0 0 0 0 0 0\n")
        code, _ = run_cli(
            capsys, "membership", "--point", str(path), "--spin-doubled", "3", "--constrained",
        )
        assert code == 2

    def test_missing_file(self, capsys):
        code, _ = run_cli(capsys, "membership", "--point", "/nonexistent", "--spin-doubled", "2")
        assert code == 2

    def test_unconstrained_spin_cap(self, capsys, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("0 0 0 0 0 0 0 0 0\n")
        code, _ = run_cli(capsys, "membership", "--point", str(path), "--spin-doubled", "10")
        assert code == 2


class TestReportShape:
    def test_deterministic_output(self, capsys):
        code1 = main(["bounds", "--matrix", "example2", "--spin-doubled", "2"])
        out1 = capsys.readouterr().out
        code2 = main(["bounds", "--matrix", "example2", "--spin-doubled", "2"])
        out2 = capsys.readouterr().out
        assert code1 == code2 == 0
        assert strip_timestamp(out1) == strip_timestamp(out2)

    def test_threads_do_not_change_results(self, capsys):
        main(["--threads", "1", "bounds", "--matrix", "example3", "--spin-doubled", "4"])
        out1 = capsys.readouterr().out
        main(["--threads", "4", "bounds", "--matrix", "example3", "--spin-doubled", "4"])
        out2 = capsys.readouterr().out
        r1 = json.loads(strip_timestamp(out1))
        r2 = json.loads(strip_timestamp(out2))
        assert r1["results"] == r2["results"]

    def test_field_order(self, capsys):
        _, report = run_cli(capsys, "feasibility", "--spin-doubled", "2")
        assert list(report) == ["command", "version", "timestamp", "inputs", "tolerances", "results"]

    def test_tolerance_override_reflected(self, capsys, monkeypatch):
        monkeypatch.setenv("SPINHV_TOLERANCE_OVERRIDE", "1e-5")
        _, report = run_cli(capsys, "table1", "--max-spin-doubled", "2")
        assert report["tolerances"]["classical_target"] == 1e-5
        assert report["tolerances"]["quantum_target"] == 1e-5

    def test_invalid_tolerance_override(self, capsys, monkeypatch):
        monkeypatch.setenv("SPINHV_TOLERANCE_OVERRIDE", "not-a-float")
        code, _ = run_cli(capsys, "table1", "--max-spin-doubled", "2")
        assert code == 2
