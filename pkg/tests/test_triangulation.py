"""
Pulling triangulations and the volume identities built on them.

    - the generic oracle-driven pull agrees with the structural one
    - every pull order of H_d uses t(d) simplices
    - (tau, B) pairs enumerate exactly t(d) objects
    - volumes of slabs are Eulerian numbers over d!
"""
from fractions import Fraction

import pytest

from app.config import settings
from app.core import service as core
from app.core.service import cube, halfcube, shypersimplex
from app.errors import CapExceededError, DegenerateInputError, InvalidInputError
from app.models import PullOrder
from app.oracle.service import polytope_volume as volume_of
from app.triangulation import service as tri

SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
T_VALUES = [1, 1, 1, 8, 51, 332, 2381, 19168]


def _identity(n):
    return PullOrder(order=tuple(range(n)))


class TestGenericPull:
    def test_square(self):
        assert tri.pulling_triangulation(SQUARE, _identity(4)) == [(0, 1, 3), (0, 2, 3)]

    def test_square_pulled_from_the_other_corner(self):
        order = PullOrder(order=(1, 0, 2, 3))
        assert tri.pulling_triangulation(SQUARE, order) == [(0, 1, 2), (1, 2, 3)]

    def test_agrees_with_structural_pull(self):
        assert tri.triangulate(cube(2)).masks() == [[0, 1, 3], [0, 2, 3]]

    def test_agrees_on_h4(self, h4):
        points = [A.point() for A in core.vertices(h4)]
        generic = tri.pulling_triangulation(points, tri.lex_order(h4))
        structural = tri.triangulate(h4)
        masks = core.vertex_masks(h4)
        assert [[masks[i] for i in s] for s in generic] == structural.masks()

    def test_collinear_points(self):
        with pytest.raises(DegenerateInputError):
            tri.pulling_triangulation([(0, 0), (1, 1), (2, 2)], _identity(3))

    def test_order_length(self):
        with pytest.raises(InvalidInputError):
            tri.pulling_triangulation(SQUARE, _identity(3))

    def test_order_must_be_a_permutation(self):
        with pytest.raises(ValueError):
            PullOrder(order=(0, 0, 1))


class TestStructuralPull:
    @pytest.mark.parametrize("P, count", [
        (cube(3), 6),
        (halfcube(4), 8),
        (shypersimplex(3, (0, 1)), 1),
        (halfcube(3), 1),
        (shypersimplex(3, (1, 2)), 4),
    ])
    def test_lex_counts(self, P, count):
        assert len(tri.triangulate(P)) == count

    def test_improper_polytope(self):
        with pytest.raises(DegenerateInputError):
            tri.triangulate(shypersimplex(3, [1]))

    def test_vertex_cap(self, monkeypatch, cube3):
        monkeypatch.setattr(settings, "PULL_MAX_VERTICES", 4)
        with pytest.raises(CapExceededError):
            tri.triangulate(cube3)

    def test_random_order_is_reproducible(self, h4):
        assert tri.random_order(h4, 7) == tri.random_order(h4, 7)
        assert tri.triangulate(h4, tri.random_order(h4, 7)) == tri.triangulate(h4, tri.random_order(h4, 7))

    @pytest.mark.parametrize("P", [cube(3), halfcube(4), shypersimplex(3, (1, 2))])
    def test_partition(self, P):
        assert tri.partition_check(tri.triangulate(P))

    def test_partition_of_a_random_order(self, h4):
        assert tri.partition_check(tri.triangulate(h4, tri.random_order(h4, 3)))

    @pytest.mark.parametrize("d, S", [(5, (0, 3)), (5, (2, 5)), (6, (3, 6)), (4, (0, 3)), (5, (0, 4))])
    def test_gaps_touching_the_ends(self, d, S):
        P = shypersimplex(d, S)
        expected = tri.triangulation_volume(tri.triangulate(P))
        for seed in range(3):
            assert tri.triangulation_volume(tri.triangulate(P, tri.random_order(P, seed))) == expected

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_lex_volume_matches_oracle(self, d):
        for cs in core.proper_cardinality_sets(d):
            P = core.shypersimplex(d, cs)
            points = [v.point() for v in core.vertices(P)]
            assert tri.triangulation_volume(tri.triangulate(P)) == volume_of(points), P.label()

    @pytest.mark.slow
    def test_lex_volume_matches_oracle_in_dimension_five(self):
        for cs in core.proper_cardinality_sets(5):
            P = core.shypersimplex(5, cs)
            points = [v.point() for v in core.vertices(P)]
            assert tri.triangulation_volume(tri.triangulate(P)) == volume_of(points), P.label()

    def test_face_caches_are_bounded(self, h4):
        tri.triangulate(h4)
        assert tri.face_facets.cache_info().maxsize == tri.FACE_CACHE_SIZE
        assert tri.face_masks.cache_info().maxsize == tri.FACE_CACHE_SIZE
        assert tri.face_facets.cache_info().currsize <= tri.FACE_CACHE_SIZE


class TestHalfcubeFacets:
    def test_matches_core_facets(self):
        listed = {(f.normal, f.rhs) for f in tri.halfcube_facets(5)}
        assert listed == {(f.normal, f.rhs) for f in core.facets(halfcube(5))}
        assert len(listed) == 26

    def test_small_d(self):
        with pytest.raises(InvalidInputError):
            tri.halfcube_facets(3)


class TestVolumes:
    def test_cube(self, cube3):
        assert tri.volume(cube3) == 1

    def test_octahedron(self, octahedron):
        assert tri.volume(octahedron) == Fraction(2, 3)

    def test_simplex(self):
        assert tri.volume(shypersimplex(4, (0, 1))) == Fraction(1, 24)

    def test_h4(self, h4):
        assert tri.volume(h4) == Fraction(2, 3)

    def test_h5(self, h5):
        assert tri.volume(h5) == Fraction(13, 15)

    def test_cube_simplices_are_unimodular(self, cube3):
        for seed in range(5):
            T = tri.triangulate(cube3, tri.random_order(cube3, seed))
            assert set(tri.simplex_volumes(T)) == {Fraction(1, 6)}

    def test_h5_simplices_differ(self, h5):
        assert len(set(tri.simplex_volumes(tri.triangulate(h5)))) > 1

    def test_count_spectrum_of_cube(self, cube3):
        assert tri.count_spectrum(cube3, range(5)) == {6: 5}


class TestHalfcubeCounts:
    @pytest.mark.parametrize("d, t", list(enumerate(T_VALUES, start=1)))
    def test_closed_form(self, d, t):
        assert tri.halfcube_pull_count(d) == t

    @pytest.mark.parametrize("d", range(1, 12))
    def test_recurrence(self, d):
        assert tri.halfcube_pull_count_recurrence(d) == tri.halfcube_pull_count(d)

    def test_bad_d(self):
        with pytest.raises(InvalidInputError):
            tri.halfcube_pull_count(0)

    @pytest.mark.parametrize("d", [3, 4, 5, 6])
    def test_tau_b_pairs(self, d):
        pairs = tri.enumerate_tau_b_pairs(d)
        assert len(pairs) == tri.halfcube_pull_count(d)
        assert len({(p.tau, p.B) for p in pairs}) == len(pairs)

    def test_tau_b_cap(self, monkeypatch):
        monkeypatch.setattr(settings, "MAX_LISTED", 10)
        with pytest.raises(CapExceededError):
            tri.enumerate_tau_b_pairs(5)

    def test_tau_b_rejects_even_sets(self):
        with pytest.raises(ValueError):
            tri.TauBPair(d=4, tau=(), B=(1, 2))

    @pytest.mark.parametrize("d", [3, 4, pytest.param(5, marks=pytest.mark.slow)])
    def test_every_order_gives_t(self, d):
        counts = tri.halfcube_pull_check(d, range(settings.RANDOM_ORDERS))
        assert len(counts) >= 20
        assert set(counts.values()) == {tri.halfcube_pull_count(d)}

    @pytest.mark.slow
    def test_every_order_gives_t_in_dimension_six(self):
        counts = tri.halfcube_pull_check(6, range(settings.RANDOM_ORDERS))
        assert set(counts.values()) == {332}


class TestEulerian:
    def test_values(self):
        assert [tri.eulerian(4, i) for i in range(4)] == [1, 11, 11, 1]
        assert tri.eulerian(3, 1) == 4

    def test_range(self):
        with pytest.raises(InvalidInputError):
            tri.eulerian(3, 3)
        with pytest.raises(InvalidInputError):
            tri.eulerian(3, -1)

    def test_descent_enumeration(self):
        assert tri.descent_range_count(4, 1, 1) == 11
        assert tri.descent_range_count(4, 0, 3) == 24

    def test_descent_cap(self, monkeypatch):
        monkeypatch.setattr(settings, "PERMUTATION_MAX_D", 3)
        with pytest.raises(CapExceededError):
            tri.descent_range_count(4, 0, 1)


class TestVolumeIdentity:
    @pytest.mark.parametrize("d, k, l", [(3, 1, 2), (4, 0, 4), (4, 1, 2), (4, 1, 3), (5, 2, 3)])
    def test_identity(self, d, k, l):
        assert tri.volume_identity_check(d, k, l)

    def test_slab_value(self):
        assert tri.volume(shypersimplex(4, (1, 2))) * 24 == 11

    def test_bad_range(self):
        with pytest.raises(InvalidInputError):
            tri.volume_identity_check(4, 2, 2)

    def test_cap(self, monkeypatch):
        monkeypatch.setattr(settings, "VOLUME_MAX_D", 3)
        with pytest.raises(CapExceededError):
            tri.volume_identity_check(4, 1, 2)
