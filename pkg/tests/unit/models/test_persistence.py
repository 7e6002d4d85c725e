"""Unit tests for persistence pairs and diagrams."""

import pytest

from src.models.persistence import PersistenceDiagram
from src.models.persistence import PersistencePair
from src.models.persistence import assignments


@pytest.fixture
def diagram():
    return PersistenceDiagram(
        (
            PersistencePair(creator=2, destroyer=3, birth=1.0, death=2.0),
            PersistencePair(creator=4, destroyer=1, birth=0.5, death=3.0),
            PersistencePair(
                creator=0, destroyer=None, birth=0.0, death=3.0, essential=True
            ),
        )
    )


class TestPersistencePair:
    """Test PersistencePair behavior."""

    def test_persistence_is_absolute_difference(self):
        """Test that persistence is |death - birth|."""
        assert PersistencePair(0, 1, 1.0, 4.0).persistence() == 3.0
        assert PersistencePair(0, 1, -1.0, -4.0).persistence() == 3.0

    def test_negated_flips_both_coordinates(self):
        """Test that negation flips birth and death but keeps vertices."""
        pair = PersistencePair(5, 7, 1.5, 2.5).negated()

        assert pair.point() == (-1.5, -2.5)
        assert (pair.creator, pair.destroyer) == (5, 7)

    def test_label_uses_round_trip_floats(self):
        """Test that labels print floats with repr."""
        assert PersistencePair(0, None, 0.0, 4.0, True).label() == "(0.0,4.0)"


class TestPersistenceDiagram:
    """Test PersistenceDiagram accessors."""

    def test_finite_and_essential_split(self, diagram):
        """Test that pairs are split into finite and essential ones."""
        assert len(diagram.finite()) == 2
        assert [p.creator for p in diagram.essential()] == [0]

    def test_sorted_orders_by_birth_then_death(self, diagram):
        """Test that sorted orders pairs by birth, then death."""
        assert [p.creator for p in diagram.sorted()] == [0, 4, 2]

    def test_as_array_shape(self, diagram):
        """Test that as_array returns (birth, death) rows."""
        array = diagram.as_array()

        assert array.shape == (3, 2)
        assert array[0].tolist() == [1.0, 2.0]

    def test_empty_diagram_array(self):
        """Test that an empty diagram gives a (0, 2) array."""
        assert PersistenceDiagram(()).as_array().shape == (0, 2)

    def test_points_is_a_set_of_coordinates(self, diagram):
        """Test that points collects (birth, death) tuples."""
        assert diagram.points() == {(1.0, 2.0), (0.5, 3.0), (0.0, 3.0)}

    def test_negated_diagram(self, diagram):
        """Test that negating a diagram negates every pair."""
        assert diagram.negated().points() == {(-1.0, -2.0), (-0.5, -3.0), (-0.0, -3.0)}

    def test_assignments(self, diagram):
        """Test that assignments collects creator/destroyer vertex pairs."""
        assert assignments(diagram) == {(2, 3), (4, 1), (0, None)}
