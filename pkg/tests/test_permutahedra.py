"""
Permutahedra and card-monotone paths.

    - vertices, facets and Minkowski sums of Pi(p), checked against the oracle
    - monotone path enumeration and its product-of-binomials count
    - coherence certificates for every enumerated path
    - the monotone path polytope and its fiber-sum recomputation
"""
from itertools import combinations_with_replacement

import pytest

from app.config import settings
from app.core.service import cube, halfcube, proper_cardinality_sets, shypersimplex
from app.errors import CapExceededError, ImproperPolytopeError, InvalidInputError
from app.models import FacetKind
from app.oracle.service import brute_facets
from app.permutahedra import service as perm


class TestPermutahedron:
    def test_canonical_form(self):
        assert perm.permutahedron((0, 2, 1)).p == (2, 1, 0)
        assert perm.permutahedron((2, 2, 1, 1)).blocks == ((2, 2), (1, 2))

    @pytest.mark.parametrize("p, count", [
        ((1, 1, 0), 3),
        ((2, 1, 0), 6),
        ((2, 2, 1, 1), 6),
        ((3, 3, 3), 1),
    ])
    def test_vertices(self, p, count):
        Q = perm.permutahedron(p)
        found = perm.perm_vertices(Q)
        assert len(found) == count == perm.perm_vertex_count(Q)
        assert found[0] == Q.p
        assert len(set(found)) == count

    def test_parse_vector(self):
        assert perm.parse_vector("2,2,1,1") == (2, 2, 1, 1)
        with pytest.raises(InvalidInputError):
            perm.parse_vector("2,x")


class TestPermFacets:
    def test_octahedron(self):
        facets = perm.perm_facets(perm.permutahedron((1, 1, 0, 0)))
        assert len(facets) == 8
        assert {f.kind for f in facets} == {FacetKind.PERM}

    def test_triangle(self):
        facets = perm.perm_facets(perm.permutahedron((1, 0, 0)))
        assert len(facets) == 3
        assert {f.h for f in facets} == {2}

    def test_hypersimplex_has_2d_facets(self):
        assert len(perm.perm_facets(perm.permutahedron((1, 1, 1, 0, 0, 0)))) == 12

    def test_cuboctahedron(self):
        assert len(perm.perm_facets(perm.permutahedron((2, 1, 1, 0)))) == 14

    def test_point_is_rejected(self):
        with pytest.raises(InvalidInputError):
            perm.perm_facets(perm.permutahedron((2, 2, 2)))

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_incidences_match_oracle(self, d):
        for c in combinations_with_replacement(range(3), d):
            Q = perm.permutahedron(c)
            if Q.is_point():
                continue
            verts = perm.perm_vertices(Q)
            claimed = {
                frozenset(i for i, v in enumerate(verts) if f.value_at(v) == f.rhs)
                for f in perm.perm_facets(Q)
            }
            assert claimed == {frozenset(f.incident) for f in brute_facets(verts)}, Q.p


class TestMinkowski:
    def test_sum(self):
        total = perm.perm_minkowski(perm.permutahedron((1, 0, 0)), perm.permutahedron((1, 1, 0)))
        assert total.p == (2, 1, 0)

    def test_translation(self):
        total = perm.perm_minkowski(perm.permutahedron((1, 1, 1)), perm.permutahedron((2, 1, 0)))
        assert total.p == (3, 2, 1)

    def test_segments(self):
        Q = perm.permutahedron((1, 0))
        assert perm.perm_minkowski(Q, Q).p == (2, 0)
        assert perm.minkowski_check(Q, Q)

    def test_oracle_agrees(self):
        assert perm.minkowski_check(perm.permutahedron((1, 0, 0)), perm.permutahedron((1, 1, 0)))

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            perm.perm_minkowski(perm.permutahedron((1, 0)), perm.permutahedron((1, 0, 0)))

    @pytest.mark.parametrize("d, top", [(1, 3), (2, 3), (3, 2), pytest.param(3, 3, marks=pytest.mark.slow)])
    def test_all_small_pairs(self, d, top):
        vectors = list(combinations_with_replacement(range(top + 1), d))
        for p in vectors:
            for q in vectors:
                assert perm.minkowski_check(perm.permutahedron(p), perm.permutahedron(q)), (p, q)

    @pytest.mark.slow
    def test_all_pairs_in_dimension_four(self):
        vectors = list(combinations_with_replacement(range(3), 4))
        for p in vectors:
            for q in vectors:
                assert perm.minkowski_check(perm.permutahedron(p), perm.permutahedron(q)), (p, q)


class TestMonotonePaths:
    @pytest.mark.parametrize("d, S, count", [
        (3, (0, 1, 2, 3), 6),
        (4, (0, 2, 4), 6),
        (3, (0, 1, 3), 3),
        (3, (1, 2), 6),
    ])
    def test_counts(self, d, S, count):
        P = shypersimplex(d, S)
        assert len(perm.monotone_paths(P)) == count == perm.monotone_path_count(P)

    def test_first_path_of_h4(self, h4):
        first = perm.monotone_paths(h4)[0]
        assert [A.bits for A in first.chain] == [(), (1, 2), (1, 2, 3, 4)]

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_count_formula_and_edge_graph(self, d):
        for cs in proper_cardinality_sets(d):
            P = shypersimplex(d, cs)
            assert len(perm.monotone_paths(P)) == perm.monotone_path_count(P)
            assert perm.path_graph_check(P), P.label()

    def test_cap(self, monkeypatch):
        monkeypatch.setattr(settings, "MAX_LISTED", 10)
        with pytest.raises(CapExceededError):
            perm.monotone_paths(cube(4))

    def test_single_level_is_rejected(self):
        with pytest.raises(ImproperPolytopeError):
            perm.monotone_path_count(shypersimplex(4, (2,)))


class TestCoherence:
    def test_cube_path(self, cube3):
        assert perm.coherence_certificate(cube3, [(), (1,), (1, 2), (1, 2, 3)]) == (3, 2, 1)

    def test_h4_path(self, h4):
        assert perm.coherence_certificate(h4, [(), (1, 2), (1, 2, 3, 4)]) == (2, 2, 1, 1)

    def test_segment(self):
        P = shypersimplex(3, (0, 3))
        assert perm.coherence_certificate(P, [(), (1, 2, 3)]) == (1, 1, 1)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_every_path_is_certified(self, d):
        for cs in proper_cardinality_sets(d):
            P = shypersimplex(d, cs)
            for W in perm.monotone_paths(P):
                h = perm.coherence_certificate(P, W)
                assert sum(h) == sum(A.size for A in W.chain)

    def test_rejects_non_nested_chain(self, cube3):
        with pytest.raises(InvalidInputError):
            perm.coherence_certificate(cube3, [(), (1,), (2, 3), (1, 2, 3)])

    def test_rejects_wrong_cardinalities(self, h4):
        with pytest.raises(InvalidInputError):
            perm.coherence_certificate(h4, [(), (1, 2)])


class TestMonotonePathPolytope:
    def test_cube(self):
        assert perm.monotone_path_polytope(cube(4)).p == (4, 3, 2, 1)

    def test_h4(self, h4):
        assert perm.monotone_path_polytope(h4).p == (2, 2, 1, 1)

    def test_three_levels(self):
        assert perm.monotone_path_polytope(shypersimplex(3, (0, 1, 3))).p == (2, 1, 1)

    def test_levels_without_endpoints(self):
        assert perm.monotone_path_polytope(shypersimplex(3, (1, 2))).p == (3, 2, 1)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_vertex_count_matches_paths(self, d):
        for cs in proper_cardinality_sets(d):
            P = shypersimplex(d, cs)
            Q = perm.monotone_path_polytope(P)
            assert perm.perm_vertex_count(Q) == perm.monotone_path_count(P)


class TestFiberFormula:
    def test_h4(self, h4):
        assert perm.fiber_formula_check(h4)

    def test_cube(self, cube3):
        assert perm.fiber_formula_check(cube3)

    def test_segment_is_a_point(self):
        assert perm.fiber_formula_check(shypersimplex(3, (0, 3)))

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_every_proper_s(self, d):
        for cs in proper_cardinality_sets(d):
            assert perm.fiber_formula_check(shypersimplex(d, cs)), cs.members

    @pytest.mark.slow
    def test_every_proper_s_in_dimension_five(self):
        for cs in proper_cardinality_sets(5):
            assert perm.fiber_formula_check(shypersimplex(5, cs)), cs.members

    def test_cap(self, monkeypatch):
        monkeypatch.setattr(settings, "FIBER_MAX_D", 3)
        with pytest.raises(CapExceededError):
            perm.fiber_formula_check(halfcube(4))
