"""
Verification sweeps.

    - small sweeps pass and report their case counts
    - a broken closed form shows up as a failed check, not an exception
    - unknown checks and out-of-range dimensions are refused
"""
import pytest

from app.config import settings
from app.core import service as core
from app.errors import CapExceededError, InvalidInputError
from app.verify import service as verify


class TestRunChecks:
    def test_small_sweep_passes(self):
        report = verify.run_checks(max_d=3)
        assert report.passed, [c.failures for c in report.checks if not c.passed]
        assert [c.name for c in report.checks] == list(verify.CHECKS)
        assert all(c.cases > 0 for c in report.checks)

    def test_selected_checks(self):
        report = verify.run_checks(["edges", "tdcount"], max_d=3, seed=5)
        assert [c.name for c in report.checks] == ["edges", "tdcount"]
        assert report.seed == 5

    def test_unknown_check(self):
        with pytest.raises(InvalidInputError):
            verify.run_checks(["nonsense"])

    def test_max_d_must_be_positive(self):
        with pytest.raises(InvalidInputError):
            verify.run_checks(max_d=0)

    def test_max_d_cap(self):
        with pytest.raises(CapExceededError):
            verify.run_checks(max_d=settings.MAX_D + 1)

    @pytest.mark.slow
    def test_default_sweep_passes(self):
        report = verify.run_checks()
        assert report.max_d == verify.DEFAULT_MAX_D
        assert report.passed, [c.failures for c in report.checks if not c.passed]


class TestFailureReporting:
    def test_broken_edge_count(self, monkeypatch):
        monkeypatch.setattr(core, "edge_count", lambda P: 0)
        result = verify.check_edges(3, 0)
        assert not result.passed
        assert any("edge_count" in f for f in result.failures)

    def test_cap_inside_a_check(self, monkeypatch):
        monkeypatch.setattr(settings, "PULL_MAX_VERTICES", 2)
        report = verify.run_checks(["cube"], max_d=3)
        assert not report.passed
        assert report.checks[0].failures

    def test_overlapping_cayley_pieces(self, monkeypatch):
        whole = lambda P: [core.shypersimplex(P.d, P.S)] * 2
        monkeypatch.setattr(core, "cayley_decomposition", whole)
        result = verify.check_slices(3, 0)
        assert not result.passed
        assert any("share more than level" in f or "do not meet" in f for f in result.failures)

    def test_wrong_recursion_set(self, monkeypatch):
        monkeypatch.setattr(core, "plus_set", core.minus_set)
        result = verify.check_facet_recursion(3, 0)
        assert not result.passed
        assert any("S+" in f for f in result.failures)


class TestSweeps:
    def test_crossing_edges(self):
        points = [(0, 0), (1, 0), (1, 1)]
        assert verify.crossing_edges(points, [(0, 1), (1, 2), (0, 2)], 1) == [(0, 2)]
        assert verify.crossing_edges(points, [(0, 1), (1, 2)], 1) == []

    def test_default_dimension(self):
        report = verify.run_checks(["counts", "extbound"])
        assert verify.DEFAULT_MAX_D == settings.ORACLE_MAX_D == 5
        assert report.max_d == 5

    def test_slices_and_recursion_pass(self):
        for check in (verify.check_slices, verify.check_facet_recursion):
            result = check(4, 0)
            assert result.passed, result.failures

    def test_minkowski_entries_up_to_three(self):
        result = verify.check_minkowski(2, 0)
        assert result.passed, result.failures
        assert "d=2: all pairs with entries <= 3" in result.notes

    def test_fiber_sweep_stops_below_the_cap(self, monkeypatch):
        monkeypatch.setattr(settings, "FIBER_SWEEP_MAX_D", 3)
        result = verify.check_fiber(5, 0)
        assert result.passed, result.failures
        assert result.notes == ["fiber sums checked up to d=3"]

    def test_tdcount_starts_at_the_tetrahedron(self):
        result = verify.check_tdcount(3, 0)
        assert result.passed, result.failures
        assert any(note.startswith("H_3:") for note in result.notes)
