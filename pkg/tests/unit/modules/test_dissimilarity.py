"""Unit tests for tree edit distance, Wasserstein distance and distance matrices."""

import itertools

import numpy as np
import pytest

from src.errors import ConfigurationError
from src.errors import EmptyHierarchyError
from src.errors import FieldComputationError
from src.errors import FormatError
from src.models.hierarchy import PersistenceHierarchy
from src.models.persistence import PersistenceDiagram
from src.models.persistence import PersistencePair
from src.modules.dissimilarity import Measure
from src.modules.dissimilarity import distance_matrix
from src.modules.dissimilarity import summarize
from src.modules.dissimilarity import to_dense_tsv
from src.modules.dissimilarity import to_triplets
from src.modules.dissimilarity import tree_edit_distance
from src.modules.dissimilarity import wasserstein
from src.modules.filtration import compute_pairs
from src.modules.hierarchy import build_hierarchy
from src.modules.synthetic import synth_case
from tests.oracles import edit_mapping_distance
from tests.oracles import matching_distance
from tests.oracles import random_diagram
from tests.oracles import random_hierarchy


def _tree(points, parent):
    nodes = tuple(
        PersistencePair(i, None, float(b), float(d), i == 0)
        for i, (b, d) in enumerate(points)
    )
    return PersistenceHierarchy(nodes=nodes, parent=tuple(parent))


def _diagram(points):
    pairs = [
        PersistencePair(i, i, float(b), float(d)) for i, (b, d) in enumerate(points)
    ]
    return PersistenceDiagram(tuple(pairs))


def _isph(name):
    return build_hierarchy(synth_case(name))[2]


class TestTreeEditDistance:
    """Test the ordered tree edit distance between hierarchies."""

    def test_identity(self):
        """Test that a hierarchy has distance 0 to itself."""
        h = _isph("fig1-blue")

        assert tree_edit_distance(h, h) == 0.0

    def test_fig1_star_against_chain(self):
        """Test that the red star and blue chain are 2 apart."""
        red, blue = _isph("fig1-red"), _isph("fig1-blue")

        assert tree_edit_distance(red, blue) == pytest.approx(2.0)
        assert tree_edit_distance(blue, red) == pytest.approx(2.0)

    def test_single_leaf_insertion(self):
        """Test that adding a leaf costs its persistence."""
        root = _tree([(0, 4)], [None])
        with_leaf = _tree([(0, 4), (1, 2)], [None, 0])

        assert tree_edit_distance(root, with_leaf) == pytest.approx(1.0)

    def test_relabel_uses_linf(self):
        """Test that relabeling costs the L-infinity distance."""
        first = _tree([(0, 10), (1, 5)], [None, 0])
        second = _tree([(0, 10), (2, 4)], [None, 0])

        assert tree_edit_distance(first, second) == pytest.approx(1.0)

    def test_roots_are_always_matched(self):
        """Test that roots are relabeled even when deleting would be cheaper."""
        first = _tree([(0, 1)], [None])
        second = _tree([(100, 101)], [None])

        assert tree_edit_distance(first, second) == pytest.approx(100.0)

    def test_indel_factor_scales_insertions(self):
        """Test that the insert/delete factor scales persistence costs."""
        root = _tree([(0, 10)], [None])
        with_leaf = _tree([(0, 10), (1, 5)], [None, 0])

        assert tree_edit_distance(root, with_leaf, indel_factor=0.5) == pytest.approx(
            2.0
        )

    def test_triangle_inequality_fails_at_full_indel_cost(self):
        """Test the counterexample to the triangle inequality at factor 1."""
        a = _tree([(0, 10), (1, 5)], [None, 0])
        b = _tree([(0, 10), (2, 4)], [None, 0])
        c = _tree([(0, 10)], [None])

        full = [tree_edit_distance(x, y) for x, y in ((a, b), (b, c), (a, c))]
        half = [tree_edit_distance(x, y, 0.5) for x, y in ((a, b), (b, c), (a, c))]

        assert full == pytest.approx([1.0, 2.0, 4.0])
        assert full[2] > full[0] + full[1]
        assert half[2] <= half[0] + half[1]

    def test_empty_hierarchy(self):
        """Test that an empty hierarchy is rejected."""
        empty = PersistenceHierarchy(nodes=(), parent=())

        with pytest.raises(EmptyHierarchyError):
            tree_edit_distance(empty, _isph("fig1-red"))

    def test_forest_is_rejected(self):
        """Test that hierarchies with several roots are rejected."""
        forest = _tree([(0, 4), (1, 2)], [None, None])

        with pytest.raises(FormatError, match="single-rooted"):
            tree_edit_distance(_isph("fig1-red"), forest)

    def test_matches_edit_mapping_enumeration(self):
        """Test against brute-force mapping enumeration on small trees."""
        rng = np.random.default_rng(4)
        corpus = [random_hierarchy(rng, int(rng.integers(1, 5))) for _ in range(30)]

        for h1, h2 in itertools.product(corpus, repeat=2):
            assert tree_edit_distance(h1, h2) == pytest.approx(
                edit_mapping_distance(h1, h2), abs=1e-12
            )

    def test_metric_axioms_at_half_indel_cost(self):
        """Test symmetry, zero diagonal and triangle inequality at factor 0.5."""
        rng = np.random.default_rng(9)
        corpus = [random_hierarchy(rng, int(rng.integers(1, 7))) for _ in range(20)]
        n = len(corpus)
        d = np.array(
            [[tree_edit_distance(a, b, 0.5) for b in corpus] for a in corpus]
        )

        np.testing.assert_allclose(d, d.T, atol=1e-12)
        assert np.all(np.diag(d) == 0.0)
        for i, j, k in itertools.product(range(n), repeat=3):
            assert d[i, k] <= d[i, j] + d[j, k] + 1e-12


class TestWasserstein:
    """Test the q-Wasserstein distance between diagrams."""

    def test_identical_diagrams(self):
        """Test that identical diagrams are 0 apart."""
        d = _diagram([(0, 4), (1, 2)])

        assert wasserstein(d, d) == 0.0

    def test_single_point_against_empty(self):
        """Test that a lone point costs half its persistence at q=1."""
        assert wasserstein(_diagram([(1, 2)]), _diagram([]), 1.0) == pytest.approx(0.5)

    def test_both_empty(self):
        """Test that two empty diagrams are 0 apart."""
        assert wasserstein(_diagram([]), _diagram([])) == 0.0

    def test_point_to_point(self):
        """Test that close points are matched to each other."""
        first, second = _diagram([(0, 10)]), _diagram([(1, 10)])

        assert wasserstein(first, second, 2.0) == pytest.approx(1.0)

    def test_fig1_diagrams_are_equal(self):
        """Test that both reference fields are 0 apart."""
        red, _ = compute_pairs(synth_case("fig1-red"))
        blue, _ = compute_pairs(synth_case("fig1-blue"))

        assert wasserstein(red, blue) == 0.0

    def test_exponent_below_one(self):
        """Test that q < 1 is rejected."""
        with pytest.raises(ConfigurationError):
            wasserstein(_diagram([]), _diagram([]), 0.5)

    @pytest.mark.parametrize("exponent", [1.0, 2.0, 3.0])
    def test_matches_enumeration(self, exponent):
        """Test against brute-force enumeration of partial matchings."""
        rng = np.random.default_rng(int(exponent))
        for _ in range(15):
            d1 = random_diagram(rng, int(rng.integers(0, 6)))
            d2 = random_diagram(rng, int(rng.integers(0, 6)))

            assert wasserstein(d1, d2, exponent) == pytest.approx(
                matching_distance(d1, d2, exponent), abs=1e-12
            )


class TestDistanceMatrix:
    """Test pairwise distance matrices."""

    def test_identical_inputs(self):
        """Test that identical fields give a zero matrix."""
        field = synth_case("fig1-red")

        np.testing.assert_array_equal(distance_matrix([field, field]), np.zeros((2, 2)))

    def test_fig1_pair_under_both_measures(self):
        """Test that only the hierarchy measure separates the reference fields."""
        fields = [synth_case("fig1-red"), synth_case("fig1-blue")]

        ted = distance_matrix(fields, Measure.ISPH_TED)
        wd = distance_matrix(fields, "wasserstein", exponent=2.0)

        assert ted[0, 1] == ted[1, 0] == pytest.approx(2.0)
        np.testing.assert_array_equal(wd, np.zeros((2, 2)))

    def test_superlevel_reeb_cases(self):
        """Test that superlevel hierarchies separate equal diagrams."""
        fields = [synth_case("reeb-1"), synth_case("reeb-2")]

        ted = distance_matrix(fields, Measure.ISPH_TED, superlevel=True)
        wd = distance_matrix(fields, Measure.WASSERSTEIN, superlevel=True)

        assert ted[0, 1] == pytest.approx(2.0)
        assert wd[0, 1] == 0.0

    def test_workers_give_the_same_matrix(self):
        """Test that threaded evaluation matches serial evaluation."""
        fields = [synth_case(name) for name in ("fig1-red", "fig1-blue", "reeb-1")]

        serial = distance_matrix(fields, workers=1)
        threaded = distance_matrix(fields, workers=3)

        np.testing.assert_array_equal(serial, threaded)
        np.testing.assert_array_equal(serial, serial.T)
        assert np.all(np.diag(serial) == 0.0)
        assert np.all(serial >= 0.0)

    def test_needs_two_fields(self):
        """Test that a single field is rejected."""
        with pytest.raises(ConfigurationError):
            distance_matrix([synth_case("fig1-red")])

    def test_mixed_domains(self):
        """Test that chains and grids cannot be compared."""
        fields = [synth_case("fig1-red"), synth_case("three-peaks", (20, 5))]

        with pytest.raises(FormatError, match="mix domain kinds"):
            distance_matrix(fields)

    def test_failing_field_is_reported_by_index(self, mocker):
        """Test that a failure while summarizing names the field."""
        good = summarize(synth_case("fig1-red"), Measure.ISPH_TED)
        mocker.patch(
            "src.modules.dissimilarity.summarize",
            side_effect=[good, RuntimeError("boom")],
        )

        with pytest.raises(FieldComputationError, match="field 1: boom") as exc_info:
            distance_matrix([synth_case("fig1-red"), synth_case("fig1-blue")])

        assert exc_info.value.index == 1
        assert isinstance(exc_info.value.cause, RuntimeError)

    def test_summarize_picks_the_compared_object(self):
        """Test that each measure compares its own summary."""
        field = synth_case("fig1-red")

        assert isinstance(summarize(field, Measure.ISPH_TED), PersistenceHierarchy)
        assert isinstance(summarize(field, Measure.WASSERSTEIN), PersistenceDiagram)


class TestMatrixText:
    """Test matrix serializations."""

    def test_dense_tsv(self):
        """Test that rows are tab-separated repr floats."""
        matrix = np.array([[0.0, 2.5], [2.5, 0.0]])

        assert to_dense_tsv(matrix) == "0.0\t2.5\n2.5\t0.0\n"

    def test_triplets(self):
        """Test that triplets list every cell row by row."""
        matrix = np.array([[0.0, 2.5], [2.5, 0.0]])

        assert to_triplets(matrix) == "0\t0\t0.0\n0\t1\t2.5\n1\t0\t2.5\n1\t1\t0.0\n"
