"""End-to-end tests of the isph command line."""

import io
import json
import time

import numpy as np
import pytest

from src.cli import cli

pytestmark = pytest.mark.integration


def _invoke(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


def _matrix(text):
    return np.loadtxt(io.StringIO(text), ndmin=2)


class TestDiagramCommand:
    """Test the diagram command."""

    def test_fig1_red(self, cli_runner):
        """Test the diagram of the red reference function."""
        result = _invoke(cli_runner, "diagram", "--synth", "fig1-red")

        assert result.exit_code == 0
        assert result.stdout == (
            "0.0\t4.0\t8\t-\t1\n1.0\t2.0\t16\t12\t0\n3.0\t4.0\t0\t4\t0\n"
        )

    def test_both_reference_functions_share_points(self, cli_runner):
        """Test that red and blue have the same (birth, death) points."""
        red = _invoke(cli_runner, "diagram", "--synth", "fig1-red").stdout
        blue = _invoke(cli_runner, "diagram", "--synth", "fig1-blue").stdout

        def points(text):
            return [line.split("\t")[:2] for line in text.splitlines()]

        assert points(red) == points(blue)
        assert red != blue

    def test_output_file(self, cli_runner, tmp_path):
        """Test that --output writes the file and leaves stdout empty."""
        target = tmp_path / "pairs.tsv"

        result = _invoke(
            cli_runner, "diagram", "--synth", "fig1-blue", "--output", str(target)
        )

        assert result.exit_code == 0
        assert result.stdout == ""
        assert target.read_text().count("\n") == 3


class TestHierarchyCommand:
    """Test the hierarchy command."""

    def test_red_isph_is_a_star(self, cli_runner):
        """Test that every finite pair of red hangs off the root."""
        result = _invoke(
            cli_runner, "hierarchy", "--synth", "fig1-red", "--format", "json"
        )

        document = json.loads(result.stdout)
        root = document["parent"].index(None)
        assert document["variant"] == "isph"
        assert sorted(p for p in document["parent"] if p is not None) == [root, root]

    def test_blue_isph_is_a_chain(self, cli_runner):
        """Test that blue's hierarchy nests one finite pair under the other."""
        result = _invoke(
            cli_runner, "hierarchy", "--synth", "fig1-blue", "--format", "json"
        )

        document = json.loads(result.stdout)
        parent = document["parent"]
        root = parent.index(None)
        middle = [i for i, p in enumerate(parent) if p == root]
        assert len(middle) == 1
        assert parent.count(middle[0]) == 1

    def test_dot_is_the_default(self, cli_runner):
        """Test that hierarchies are written as DOT unless asked otherwise."""
        result = _invoke(
            cli_runner, "hierarchy", "--synth", "fig1-red", "--variant", "regular"
        )

        assert result.stdout.startswith('digraph "regular" {')
        assert result.stdout.count("->") == 2

    def test_superlevel_values_keep_their_sign(self, cli_runner):
        """Test that superlevel hierarchies report values in the field's range."""
        result = _invoke(
            cli_runner,
            "hierarchy",
            "--synth",
            "reeb-1",
            "--mode",
            "superlevel",
            "--format",
            "json",
        )

        values = [
            v
            for node in json.loads(result.stdout)["nodes"]
            for v in (node["birth"], node["death"])
        ]
        assert min(values) == 1.0
        assert max(values) == 6.0


class TestAnalyzeCommand:
    """Test the analyze command."""

    def test_fig1_blue(self, cli_runner):
        """Test ranks and stabilities of the blue chain."""
        result = _invoke(cli_runner, "analyze", "--synth", "fig1-blue")

        assert result.stdout == (
            "0.0\t4.0\t2\t2.0\n1.0\t2.0\t1\t1.0\n3.0\t4.0\t0\t1.0\n"
        )

    def test_three_peaks_rows_per_mode(self, cli_runner):
        """Test that peaks give four superlevel rows and one sublevel row."""
        flags = ["--synth", "three-peaks", "--resolution", "60x20"]

        superlevel = _invoke(cli_runner, "analyze", *flags, "--mode", "superlevel")
        sublevel = _invoke(cli_runner, "analyze", *flags)

        assert len(superlevel.stdout.splitlines()) == 4
        assert sublevel.stdout.startswith("0.0\t")
        assert len(sublevel.stdout.splitlines()) == 1


class TestDistmatCommand:
    """Test the distmat command."""

    def test_reference_pair_under_both_measures(self, cli_runner):
        """Test that only the hierarchy distance separates red and blue."""
        sources = ["--synth", "fig1-red", "--synth", "fig1-blue"]

        ted = _invoke(cli_runner, "distmat", *sources)
        wd = _invoke(cli_runner, "distmat", *sources, "--measure", "wasserstein")

        np.testing.assert_allclose(_matrix(ted.stdout), [[0.0, 2.0], [2.0, 0.0]])
        np.testing.assert_array_equal(_matrix(wd.stdout), np.zeros((2, 2)))

    def test_triplets(self, cli_runner):
        """Test the triplet layout."""
        result = _invoke(
            cli_runner,
            "distmat",
            "--synth",
            "reeb-1",
            "--synth",
            "reeb-2",
            "--mode",
            "superlevel",
            "--layout",
            "triplets",
        )

        assert result.stdout.splitlines()[1] == "0\t1\t2.0"

    def test_oscillating_series_is_periodic(self, cli_runner):
        """Test that fields a period apart are closer than half a period apart."""
        result = _invoke(
            cli_runner,
            "distmat",
            "--series",
            "oscillate:12:4",
            "--resolution",
            "40x10",
            "--mode",
            "superlevel",
            "--workers",
            "2",
        )

        matrix = _matrix(result.stdout)
        assert matrix.shape == (12, 12)
        full = np.mean([matrix[t, t + 4] for t in range(8)])
        half = np.mean([matrix[t, t + 2] for t in range(10)])
        assert full < half

    def test_oscillating_series_under_wasserstein(self, cli_runner):
        """Test that the diagram baseline is symmetric with a zero diagonal."""
        result = _invoke(
            cli_runner,
            "distmat",
            "--series",
            "oscillate:12:4",
            "--measure",
            "wasserstein",
            "--resolution",
            "40x10",
            "--mode",
            "superlevel",
        )

        matrix = _matrix(result.stdout)
        assert result.exit_code == 0
        assert matrix.shape == (12, 12)
        np.testing.assert_allclose(matrix, matrix.T)
        np.testing.assert_array_equal(np.diag(matrix), np.zeros(12))
        assert matrix[0, 4] == 0.0
        assert matrix[0, 2] > 0.0


class TestGenerateCommand:
    """Test generate and reading the generated files back."""

    def test_grid_round_trip(self, cli_runner, tmp_path):
        """Test that a generated VTK file gives the synthetic diagram."""
        target = tmp_path / "peaks.vtk"
        flags = ["--resolution", "30x10"]

        _invoke(
            cli_runner, "generate", "--synth", "three-peaks", *flags, "-o", str(target)
        )
        from_file = _invoke(cli_runner, "diagram", "--input", str(target))
        direct = _invoke(cli_runner, "diagram", "--synth", "three-peaks", *flags)

        assert target.read_text().startswith("# vtk DataFile")
        assert from_file.stdout == direct.stdout

    def test_chain_round_trip(self, cli_runner, tmp_path):
        """Test that a generated 1D file gives the synthetic diagram."""
        target = tmp_path / "red.txt"

        _invoke(cli_runner, "generate", "--synth", "fig1-red", "-o", str(target))
        from_file = _invoke(cli_runner, "diagram", "--input", str(target))
        direct = _invoke(cli_runner, "diagram", "--synth", "fig1-red")

        assert from_file.stdout == direct.stdout


class TestPerturbCommand:
    """Test the perturbation experiment."""

    def test_only_the_unstable_pairing_changes(self, cli_runner):
        """Test that raising y changes the unstable function's pairing only."""
        result = _invoke(cli_runner, "perturb", "--seed", "7")

        rows = [line.split("\t") for line in result.stdout.splitlines()]
        assert [row[0] for row in rows] == ["stable", "unstable"]
        assert all(float(row[2]) == 1.0 for row in rows)
        assert all(float(row[1]) > 1.0 for row in rows)
        assert [row[3] for row in rows] == ["0", "1"]


class TestErrors:
    """Test exit statuses and error messages."""

    def test_missing_source_is_a_usage_error(self, cli_runner):
        """Test that a command without sources exits with status 2."""
        result = _invoke(cli_runner, "diagram")

        assert result.exit_code == 2
        assert "exactly one of --input or --synth" in result.stderr
        assert result.stdout == ""

    def test_bad_format(self, cli_runner):
        """Test that an output format the command cannot write is rejected."""
        result = _invoke(
            cli_runner, "diagram", "--synth", "fig1-red", "--format", "dot"
        )

        assert result.exit_code == 2

    def test_missing_file(self, cli_runner, tmp_path):
        """Test that an unreadable input exits with status 1."""
        result = _invoke(cli_runner, "diagram", "--input", str(tmp_path / "none.vtk"))

        assert result.exit_code == 1
        assert "Error: " in result.stderr
        assert "none.vtk" in result.stderr

    def test_binary_input(self, cli_runner, tmp_path):
        """Test that an input that is not UTF-8 text exits with status 1."""
        path = tmp_path / "field.txt"
        path.write_bytes(b"\xff\xfe\x00\x01")

        result = _invoke(cli_runner, "diagram", "--input", str(path))

        assert result.exit_code == 1
        assert "not UTF-8" in result.stderr
        assert "unexpected error" not in result.stderr

    def test_unknown_case(self, cli_runner):
        """Test that an unknown synthetic case exits with status 1."""
        result = _invoke(cli_runner, "diagram", "--synth", "four-peaks")

        assert result.exit_code == 1
        assert "Unknown synthetic case" in result.stderr

    def test_invalid_settings_file(self, cli_runner, tmp_path):
        """Test that invalid settings exit with status 2."""
        env_file = tmp_path / "bad.env"
        env_file.write_text("CONNECTIVITY=6\n")

        result = _invoke(
            cli_runner, "--env-file", str(env_file), "diagram", "--synth", "fig1-red"
        )

        assert result.exit_code == 2
        assert "Invalid settings" in result.stderr

    def test_failed_run_writes_no_output(self, cli_runner, tmp_path):
        """Test that a failing command leaves no output file behind."""
        target = tmp_path / "out.tsv"

        _invoke(cli_runner, "diagram", "--synth", "nope", "--output", str(target))

        assert not target.exists()


@pytest.mark.stress
class TestStress:
    """Test run time at the default grid resolution."""

    def test_default_resolution(self, cli_runner):
        """Test that a 100x50 diagram and hierarchy finish within seconds."""
        start = time.perf_counter()

        diagram = _invoke(cli_runner, "diagram", "--synth", "three-peaks")
        hierarchy = _invoke(cli_runner, "hierarchy", "--synth", "three-peaks")

        assert diagram.exit_code == hierarchy.exit_code == 0
        assert time.perf_counter() - start < 10.0
