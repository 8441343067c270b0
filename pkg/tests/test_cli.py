"""Tests for the command-line interface."""

import json

import pytest

from harmonic_eigenpoints.constructor import base_m_d2, lift, zonal
from harmonic_eigenpoints.poly_core import HomogeneousPolynomial
from harmonic_eigenpoints.schemas import ConstructionDocument
from harmonic_eigenpoints.tensor_bridge import poly_to_tensor
from tests.utils import run_cli, write_json


@pytest.fixture(scope="module")
def m33_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("construct") / "m33.json"
    result = run_cli("construct", "--d", "3", "--n", "3", "--out", str(path))
    assert result.exit_code == 0, result.stderr
    return path


class TestConstructCommand:
    """Tests for `construct`."""

    def test_writes_certified_levels(self, m33_path):
        """The output holds levels 2 and 3 with 6 and 14 certified points."""
        document = json.loads(m33_path.read_text())
        assert document["kind"] == "construction"
        assert [level["certificate"]["count"] for level in document["levels"]] == [6, 14]

    def test_output_reparses_identically(self, m33_path):
        """The canonical serialization round-trips bit-identically."""
        text = m33_path.read_text().rstrip("\n")
        assert ConstructionDocument.model_validate_json(text).model_dump_json(indent=2) == text

    def test_degree_one(self):
        """--d 1 gives x_n with two critical points."""
        result = run_cli("construct", "--d", "1", "--n", "4")
        assert result.exit_code == 0, result.stderr
        document = json.loads(result.stdout)
        level = document["levels"][-1]
        assert level["polynomial"]["terms"] == [{"exps": [0, 0, 0, 1], "coef": 1.0}]
        assert level["certificate"]["count"] == 2

    def test_invalid_degree(self):
        """--d 0 is bad input."""
        result = run_cli("construct", "--d", "0", "--n", "3")
        assert result.exit_code == 2
        assert "--d" in result.stderr

    def test_floor_above_start(self):
        """An inverted epsilon schedule is bad input."""
        result = run_cli("construct", "--d", "3", "--n", "3", "--eps-start", "1e-3", "--eps-floor", "1e-2")
        assert result.exit_code == 2

    def test_exhausted_schedule(self):
        """An epsilon far below tolerance exits 1 with diagnostics."""
        result = run_cli("construct", "--d", "3", "--n", "3", "--eps-start", "1e-14", "--eps-floor", "1e-14")
        assert result.exit_code == 1
        assert "diagnostics" in result.stderr

    def test_missing_flags(self):
        """argparse usage errors map to exit code 2."""
        assert run_cli("construct", "--d", "3").exit_code == 2


class TestVerifyCommand:
    """Tests for `verify` and `eigen`."""

    def test_construction_verifies_with_other_seed(self, m33_path):
        """Re-certification with a new seed reports 14/14."""
        result = run_cli("verify", str(m33_path), "--seed", "7")
        assert result.exit_code == 0, result.stderr
        assert "14/14 certified" in result.stdout
        assert "euler sum 2" in result.stdout

    def test_zonal_only_fails(self, tmp_path):
        """An unperturbed zonal harmonic is not Morse."""
        path = write_json(tmp_path / "zonal.json", zonal(3, 3).to_document())
        result = run_cli("verify", str(path))
        assert result.exit_code == 1
        assert "degenerate continuum suspected" in result.stdout + result.stderr

    def test_malformed_file(self, tmp_path):
        """Unparseable input exits 2."""
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert run_cli("verify", str(path)).exit_code == 2

    def test_missing_file(self, tmp_path):
        """A missing file exits 2."""
        assert run_cli("verify", str(tmp_path / "nope.json")).exit_code == 2

    def test_non_finite_coefficient(self, tmp_path):
        """NaN in a polynomial document is bad input."""
        document = base_m_d2(3).to_document().model_dump()
        document["terms"][0]["coef"] = float("nan")
        path = write_json(tmp_path / "nan.json", document)
        result = run_cli("verify", str(path))
        assert result.exit_code == 2
        assert "not a valid polynomial document" in result.stderr

    def test_infinite_tensor_entry(self, tmp_path):
        """Infinity in a tensor document is bad input."""
        document = poly_to_tensor(base_m_d2(3)).to_document().model_dump()
        document["entries"][0]["value"] = float("inf")
        path = write_json(tmp_path / "inf.json", document)
        assert run_cli("rank1", str(path)).exit_code == 2

    def test_shape_detection_without_kind(self, tmp_path):
        """Documents without a kind are read by shape."""
        document = base_m_d2(3).to_document().model_dump()
        del document["kind"]
        path = write_json(tmp_path / "cubic.json", document)
        result = run_cli("verify", str(path))
        assert result.exit_code == 0, result.stderr
        assert "6/6 certified" in result.stdout

    def test_tensor_document(self, tmp_path):
        """Tensor documents verify like polynomials."""
        path = write_json(tmp_path / "tensor.json", poly_to_tensor(lift(base_m_d2(3), 0.1)).to_document())
        result = run_cli("verify", str(path), "--out", str(tmp_path / "report.json"))
        assert result.exit_code == 0, result.stderr
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["kind"] == "report"
        assert report["found_count"] == 14

    def test_eigen_lists_pairs(self, m33_path):
        """eigen prints one line per eigenpair."""
        result = run_cli("eigen", str(m33_path))
        assert result.exit_code == 0, result.stderr
        assert sum(1 for line in result.stdout.splitlines() if line.startswith("lambda=")) == 14


class TestRank1Command:
    """Tests for `rank1`."""

    def test_diagonal_quadratic(self, tmp_path):
        """3 x1^2 + x2^2: lambda* = 3, dist = 1."""
        f = HomogeneousPolynomial(2, 2, {(2, 0): 3.0, (0, 2): 1.0})
        result = run_cli("rank1", str(write_json(tmp_path / "q.json", f.to_document())))
        assert result.exit_code == 0, result.stderr
        values = _fields(result.stdout)
        assert float(values["lambda*"]) == pytest.approx(3.0, abs=1e-10)
        assert float(values["dist"]) == pytest.approx(1.0, abs=1e-10)

    def test_cubic_sum(self, tmp_path):
        """x1^3 + x2^3: lambda* = 1, dist = 1."""
        f = HomogeneousPolynomial(2, 3, {(3, 0): 1.0, (0, 3): 1.0})
        result = run_cli("rank1", str(write_json(tmp_path / "c.json", f.to_document())), "--grid-points", "100000")
        assert result.exit_code == 0, result.stderr
        values = _fields(result.stdout)
        assert float(values["lambda*"]) == pytest.approx(1.0, abs=1e-10)
        assert float(values["dist"]) == pytest.approx(1.0, abs=1e-10)
        assert float(values["dist grid"]) == pytest.approx(1.0, abs=1e-3)

    def test_construction_distances_agree(self, m33_path):
        """Closed-form and direct distances agree on the d = n = 3 construction."""
        result = run_cli("rank1", str(m33_path))
        assert result.exit_code == 0, result.stderr
        values = _fields(result.stdout)
        dist, direct = float(values["dist"]), float(values["dist direct"])
        assert dist**2 == pytest.approx(direct**2, rel=1e-10, abs=1e-12)

    def test_uncertified_input(self, tmp_path):
        """rank1 refuses tensors without a certified eigenpair set."""
        path = write_json(tmp_path / "zonal.json", zonal(3, 3).to_document())
        assert run_cli("rank1", str(path)).exit_code == 2


class TestPlotDataCommand:
    """Tests for `plotdata`."""

    def test_zonal_grid_is_axially_symmetric(self, tmp_path):
        """Rows with equal theta have equal |f|."""
        path = write_json(tmp_path / "zonal.json", zonal(3, 3).to_document())
        out = tmp_path / "zonal.csv"
        result = run_cli("plotdata", str(path), "--grid", "90", "--out", str(out))
        assert result.exit_code == 0, result.stderr

        grid, _ = _split_plot(out.read_text())
        assert grid[0] == "theta,phi,abs_value"
        rows = [tuple(map(float, line.split(","))) for line in grid[1:]]
        assert len(rows) == 90 * 180
        by_theta: dict[float, list[float]] = {}
        for theta, _, value in rows:
            by_theta.setdefault(theta, []).append(value)
        for values in by_theta.values():
            assert max(values) - min(values) <= 1e-12

    def test_construction_markers(self, m33_path, tmp_path):
        """The d = n = 3 construction has 14 marker rows."""
        out = tmp_path / "m33.csv"
        result = run_cli("plotdata", str(m33_path), "--grid", "30", "--out", str(out))
        assert result.exit_code == 0, result.stderr
        _, markers = _split_plot(out.read_text())
        assert len(markers) - 1 == 14

    def test_zero_grid(self, m33_path):
        """--grid 0 is bad input."""
        assert run_cli("plotdata", str(m33_path), "--grid", "0").exit_code == 2

    def test_not_two_sphere(self, tmp_path):
        """Only n = 3 can be plotted."""
        path = write_json(tmp_path / "circle.json", base_m_d2(3).to_document())
        result = run_cli("plotdata", str(path))
        assert result.exit_code == 2
        assert "n = 3" in result.stderr


def _fields(stdout: str) -> dict[str, str]:
    """Parse 'name value' lines of rank1 output."""
    fields = {}
    for line in stdout.splitlines():
        for name in ("lambda*", "dist grid", "dist direct", "dist"):
            if line.startswith(name + " "):
                fields.setdefault(name, line[len(name) + 1 :].strip())
                break
    return fields


def _split_plot(text: str) -> tuple[list[str], list[str]]:
    """Grid lines and marker lines (marker header included)."""
    lines = text.splitlines()
    marker = lines.index("# critical points")
    return lines[:marker], lines[marker + 1 :]
