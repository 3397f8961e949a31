import json
from fractions import Fraction

import jsonschema
import pytest

import hopfzero as hz
from hopfzero import PrincipalPartError

from conftest import FAMILY37, FAMILY38


class TestNormalizePrincipalPart:
    def test_identity_scalings(self):
        field = hz.parse_system("dx = -2*y\ndy = 2*x\ndz = x^2 + y^2\n").to_field()
        normalized, scalings = hz.normalize_principal_part(field)
        assert normalized == field
        assert scalings.time_factor == 1 and scalings.z_factor == 1

    def test_unit_rotation_rescaled(self):
        field = hz.parse_system("dx = -y\ndy = x\ndz = x^2 + y^2\n").to_field()
        normalized, scalings = hz.normalize_principal_part(field)
        assert scalings.time_factor == 2
        assert scalings.z_factor == 2
        assert normalized.component(0) == hz.principal_part(())

    def test_random_admissible_scalings(self, rng):
        for _ in range(8):
            omega = Fraction(rng.randint(1, 9), rng.randint(1, 4))
            delta = Fraction(rng.randint(1, 9), rng.randint(1, 4))
            if rng.random() < 0.5:
                omega = -omega
            text = (f"params a\n"
                    f"dx = {-omega}*y + a*z\n"
                    f"dy = {omega}*x\n"
                    f"dz = {delta}*x^2 + {delta}*y^2 + a*x*z\n")
            field = hz.parse_system(text).to_field()
            normalized, _ = hz.normalize_principal_part(field)
            assert normalized.component(0) == hz.principal_part(("a",))

    def test_scaling_propagates_to_higher_terms(self):
        # dz feed z term picks up the z rescaling exactly
        field = hz.parse_system("params a\ndx = -y + a*z\ndy = x\ndz = x^2 + y^2\n").to_field()
        normalized, scalings = hz.normalize_principal_part(field)
        a = hz.ParamPolynomial.variable("a", ("a",))
        # dx coefficient of z becomes time_factor * z_factor * a = 4a
        assert normalized.fx.coefficient((0, 0, 1)) == a.scale(4)

    def test_cross_term_rejected(self):
        field = hz.parse_system("dx = -2*y\ndy = 2*x\ndz = x^2 + 2*x*y + y^2\n").to_field()
        with pytest.raises(PrincipalPartError) as err:
            hz.normalize_principal_part(field)
        assert "x*y" in str(err.value)

    def test_unbalanced_quadratic_rejected(self):
        field = hz.parse_system("dx = -2*y\ndy = 2*x\ndz = x^2 + 3*y^2\n").to_field()
        with pytest.raises(PrincipalPartError):
            hz.normalize_principal_part(field)

    def test_degenerate_z_dynamics_rejected(self):
        field = hz.parse_system("dx = -2*y\ndy = 2*x\ndz = z\n").to_field()
        with pytest.raises(PrincipalPartError):
            hz.normalize_principal_part(field)

    def test_diagonal_linear_part_rejected(self):
        field = hz.parse_system("dx = -2*y + x\ndy = 2*x\ndz = x^2 + y^2\n").to_field()
        with pytest.raises(PrincipalPartError) as err:
            hz.normalize_principal_part(field)
        assert "dx" in str(err.value)


@pytest.fixture
def family37_file(tmp_path):
    path = tmp_path / "family37.hz"
    path.write_text(FAMILY37, encoding="utf-8")
    return str(path)


@pytest.fixture
def family38_file(tmp_path):
    path = tmp_path / "family38.hz"
    path.write_text(FAMILY38, encoding="utf-8")
    return str(path)


class TestCli:
    def test_analyze_integrable_point_json(self, family37_file):
        code, out = hz.run_cli([
            "analyze", family37_file, "--param", "a001=0", "--param", "b200=1",
            "--param", "c030=0", "--max-degree", "6", "--json"])
        assert code == 0
        report = json.loads(out)
        jsonschema.validate(report, hz.REPORT_SCHEMA)
        assert report["classification"]["case"] == "NO_OBSTRUCTION_UP_TO"
        assert report["classification"]["max_index"] == 6

    def test_analyze_not_integrable_point(self, family37_file):
        code, out = hz.run_cli([
            "analyze", family37_file, "--param", "a001=1", "--param", "b200=0",
            "--param", "c030=0", "--max-degree", "8", "--json"])
        assert code == 0
        report = json.loads(out)
        jsonschema.validate(report, hz.REPORT_SCHEMA)
        c = report["classification"]
        assert c["case"] == "NOT_INTEGRABLE"
        assert c["witness_method"] == "JACOBI_H2"
        assert c["witness_index"] == 7
        assert c["witness_degree"] == 14

    def test_normal_form_text(self, family38_file):
        code, out = hz.run_cli(["normal-form", family38_file, "--max-degree", "2"])
        assert code == 0
        assert "a_1 = " in out and "b_1 = " in out
        assert "a001" in out and "c011" in out

    def test_normal_form_json_strings_reparse(self, family38_file):
        code, out = hz.run_cli(["normal-form", family38_file, "--max-degree", "1",
                                "--json"])
        assert code == 0
        report = json.loads(out)
        jsonschema.validate(report, hz.REPORT_SCHEMA)
        params = ("a001", "c101", "c011")
        a1 = hz.parse_polynomial(report["normal_form"]["a"]["1"], params)
        a001 = hz.ParamPolynomial.variable("a001", params)
        c011 = hz.ParamPolynomial.variable("c011", params)
        assert a1 == (a001 * (a001 + c011)).scale(Fraction(-1, 4))

    def test_obstructions_with_constraint(self, family37_file):
        code, out = hz.run_cli([
            "obstructions", family37_file, "--mode", "JACOBI_H2",
            "--max-degree", "8",
            "--constraint", "18*a001^2 - 18*a001*b200 + 5*b200^2",
            "--eliminate", "a001", "--json"])
        assert code == 0
        report = json.loads(out)
        jsonschema.validate(report, hz.REPORT_SCHEMA)
        seq = report["obstructions"][0]
        assert seq["method"] == "JACOBI_H2"
        assert seq["entries"]["3"] == "0"
        assert seq["reduced_entries"]["8"] == "0"

    def test_reduce_subcommand(self, family37_file):
        code, out = hz.run_cli(["reduce", family37_file, "--max-degree", "2",
                                "--param", "a001=1", "--param", "b200=0",
                                "--param", "c030=0", "--json"])
        assert code == 0
        report = json.loads(out)
        jsonschema.validate(report, hz.REPORT_SCHEMA)
        assert report["planar_reduction"]["du"] == "v + 1/4*u^2"
        assert report["planar_reduction"]["dv"] == "-1/2*u*v"

    def test_missing_file_is_analysis_error(self):
        code, out = hz.run_cli(["analyze", "missingfile.hz"])
        assert code == 1
        assert "cannot read input" in out

    def test_unknown_flag_is_usage_error(self, family37_file):
        code, out = hz.run_cli(["analyze", family37_file, "--wat"])
        assert code == 2

    def test_syntax_error_is_exit_two(self, tmp_path):
        path = tmp_path / "bad.hz"
        path.write_text("dx = x/y\ndy = 2*x\ndz = x^2 + y^2\n", encoding="utf-8")
        code, out = hz.run_cli(["analyze", str(path)])
        assert code == 2
        assert "division by variable" in out

    def test_bad_principal_part_is_exit_one(self, tmp_path):
        path = tmp_path / "bad.hz"
        path.write_text("dx = -2*y\ndy = 2*x\ndz = x^2 + 2*x*y + y^2\n",
                        encoding="utf-8")
        code, out = hz.run_cli(["analyze", str(path)])
        assert code == 1

    def test_invalid_param_binding(self, family37_file):
        code, out = hz.run_cli(["analyze", family37_file, "--param", "a001"])
        assert code == 2

    def test_symbolic_analyze_reports_sequences(self, family38_file):
        code, out = hz.run_cli(["analyze", family38_file, "--max-degree", "3",
                                "--json"])
        assert code == 0
        report = json.loads(out)
        jsonschema.validate(report, hz.REPORT_SCHEMA)
        assert report["classification"]["case"] == "SYMBOLIC"
        methods = {seq["method"] for seq in report["obstructions"]}
        assert methods == {"JACOBI_H", "JACOBI_H2"}

    def test_text_report_carries_both_indices(self, family37_file):
        code, out = hz.run_cli(["obstructions", family37_file, "--mode",
                                "JACOBI_H2", "--max-degree", "4"])
        assert code == 0
        assert "z^3 (quasi-homogeneous degree 6)" in out
