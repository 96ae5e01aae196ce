"""
Cross-checks of the closed forms against the brute-force oracle.

Every check sweeps small cases, collects human-readable failures and returns a
CheckResult; run_checks bundles them into a VerificationReport.
"""
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial
from typing import Callable, Dict, Iterable, List, Optional
import logging

from app.config import settings
from app.core import service as core
from app.errors import CapExceededError, InvalidInputError, VerificationError
from app.models import CheckResult, SHypersimplex, VerificationReport
from app.oracle import service as oracle
from app.permutahedra import service as perm
from app.triangulation import service as tri

logger = logging.getLogger(__name__)

DEFAULT_MAX_D = 5


class _Tally:
    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.failures: List[str] = []
        self.notes: List[str] = []

    def expect(self, ok: bool, message: str):
        self.cases += 1
        if not ok:
            self.failures.append(message)

    def result(self) -> CheckResult:
        return CheckResult(
            name=self.name, passed=not self.failures, cases=self.cases,
            failures=self.failures, notes=self.notes,
        )


def _proper_polytopes(low: int, high: int) -> Iterable[SHypersimplex]:
    for d in range(low, high + 1):
        for cs in core.proper_cardinality_sets(d):
            yield core.shypersimplex(d, cs)

def _points(P: SHypersimplex):
    return [v.point() for v in core.vertices(P)]

def _oracle_d(max_d: int) -> int:
    return min(max_d, settings.ORACLE_MAX_D)


def check_counts(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("counts")
    for d in range(1, _oracle_d(max_d) + 1):
        for size in range(1, d + 2):
            for members in combinations(range(d + 1), size):
                P = core.shypersimplex(d, members)
                tally.expect(core.vertex_count(P) == len(core.vertices(P)),
                             f"vertex count of {P.label()}")
                dim = oracle.affine_dimension(_points(P))
                tally.expect(P.proper == (dim == d),
                             f"{P.label()} proper={P.proper} but spans dimension {dim}")
    return tally.result()

def check_edges(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("edges")
    for P in _proper_polytopes(2, _oracle_d(max_d)):
        masks = core.vertex_masks(P)
        index = {m: i for i, m in enumerate(masks)}
        claimed = {(index[e.a.mask], index[e.b.mask]) for e in core.edges(P)}
        claimed = {tuple(sorted(pair)) for pair in claimed}
        found = set(oracle.brute_edges(_points(P)))
        tally.expect(claimed == found, f"edges of {P.label()}: {len(claimed)} vs oracle {len(found)}")
        tally.expect(core.edge_count(P) == len(found), f"edge_count of {P.label()}")
    return tally.result()

def check_facets(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("facets")
    for P in _proper_polytopes(2, _oracle_d(max_d)):
        claimed = {f.key() for f in core.facets(P)}
        found = {(f.normal, f.rhs) for f in oracle.brute_facets(_points(P))}
        tally.expect(claimed == found, f"facets of {P.label()}: {len(claimed)} vs oracle {len(found)}")
        tally.expect(core.facet_count(P) == len(found), f"facet_count of {P.label()}")
    for d in range(4, _oracle_d(max_d) + 1):
        H = core.halfcube(d)
        listed = {f.key() for f in tri.halfcube_facets(d)}
        tally.expect(listed == {f.key() for f in core.facets(H)}, f"halfcube facet list for d={d}")
    return tally.result()

def crossing_edges(points, pairs, s: int) -> List[tuple]:
    """Edges whose endpoints lie strictly on both sides of sum(x) = s"""
    out = []
    for a, b in pairs:
        low, high = sorted((sum(points[a]), sum(points[b])))
        if low < s < high:
            out.append((a, b))
    return out

def check_slices(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("slices")
    for P in _proper_polytopes(2, _oracle_d(max_d)):
        points = _points(P)
        pairs = oracle.brute_edges(points)
        for s in P.S:
            layer = [v.point() for v in core.hyperplane_slice(P, s)]
            on_level = [p for p in points if sum(p) == s]
            tally.expect(sorted(layer) == sorted(on_level), f"slice {s} of {P.label()}")
            extreme = oracle.extreme_points(layer)
            tally.expect(len(extreme) == len(layer), f"slice {s} of {P.label()} has interior points")
            crossing = crossing_edges(points, pairs, s)
            tally.expect(not crossing, f"{len(crossing)} edges of {P.label()} cross level {s}")
        if len(P.S) >= 2:
            _check_cayley(tally, P)
    return tally.result()

def _check_cayley(tally: _Tally, P: SHypersimplex):
    pieces = core.cayley_decomposition(P)
    layers = [set(core.vertex_masks(piece)) for piece in pieces]
    union = set().union(*layers)
    tally.expect(union == set(core.vertex_masks(P)), f"Cayley pieces of {P.label()}")
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            shared = layers[i] & layers[j]
            if j == i + 1:
                s = P.S[i + 1]
                # both pieces lie on their own side of sum(x) = s
                tally.expect(pieces[i].S[-1] == s == pieces[j].S[0],
                             f"Cayley pieces {i}, {j} of {P.label()} do not meet at level {s}")
                tally.expect(shared == set(core.layer_masks(P.d, s)),
                             f"Cayley pieces {i}, {j} of {P.label()} share more than level {s}")
            else:
                tally.expect(pieces[i].S[-1] < pieces[j].S[0] and not shared,
                             f"Cayley pieces {i}, {j} of {P.label()} overlap")

def _drop_coordinate(mask: int, i: int) -> int:
    return (mask & ((1 << (i - 1)) - 1)) | ((mask >> i) << (i - 1))

def check_facet_recursion(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("facet_recursion")
    for P in _proper_polytopes(3, _oracle_d(max_d)):
        plus = set(core.vertex_masks(core.shypersimplex(P.d - 1, core.plus_set(P.card_set))))
        minus = set(core.vertex_masks(core.shypersimplex(P.d - 1, core.minus_set(P.card_set))))
        for i in range(1, P.d + 1):
            direction = [1 if j == i else 0 for j in range(1, P.d + 1)]
            up = {_drop_coordinate(v.mask, i) for v in core.face_in_direction(P, direction)}
            tally.expect(up == plus, f"x_{i} = 1 face of {P.label()} is not Delta(d-1, S+)")
            direction = [-x for x in direction]
            down = {_drop_coordinate(v.mask, i) for v in core.face_in_direction(P, direction)}
            tally.expect(down == minus, f"x_{i} = 0 face of {P.label()} is not Delta(d-1, S-)")
        for f in core.facets(P):
            face = core.facet_face(P, f)
            dim = oracle.affine_dimension([v.point() for v in face])
            tally.expect(dim == P.d - 1, f"{f.kind.value} facet of {P.label()} has dimension {dim}")
    return tally.result()

def check_minkowski(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("minkowski")
    sweeps = [(d, 3) for d in range(1, min(max_d, 3) + 1)]
    if max_d >= 4:
        sweeps.append((4, 1))
    for d, top in sweeps:
        vectors = [tuple(sorted(c, reverse=True)) for c in combinations_with_replacement(range(top + 1), d)]
        for p in vectors:
            for q in vectors:
                P, Q = perm.permutahedron(p), perm.permutahedron(q)
                tally.expect(perm.minkowski_check(P, Q), f"Pi{p} + Pi{q}")
        tally.notes.append(f"d={d}: all pairs with entries <= {top}")
    return tally.result()

def check_perm_facets(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("perm_facets")
    for d in range(2, _oracle_d(max_d) + 1):
        for c in combinations_with_replacement(range(3), d):
            Q = perm.permutahedron(c)
            if Q.is_point():
                continue
            if perm.perm_vertex_count(Q) > settings.ORACLE_MAX_POINTS:
                tally.notes.append(f"skipped Pi{Q.p}: too many vertices for the oracle")
                continue
            verts = perm.perm_vertices(Q)
            claimed = {
                frozenset(i for i, v in enumerate(verts) if f.value_at(v) == f.rhs)
                for f in perm.perm_facets(Q)
            }
            found = {frozenset(f.incident) for f in oracle.brute_facets(verts)}
            tally.expect(claimed == found, f"facets of Pi{Q.p}: {len(claimed)} vs oracle {len(found)}")
    return tally.result()

def check_fiber(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("fiber")
    top = min(max_d, settings.FIBER_MAX_D, settings.FIBER_SWEEP_MAX_D)
    if top < min(max_d, settings.FIBER_MAX_D):
        tally.notes.append(f"fiber sums checked up to d={top}")
    for P in _proper_polytopes(2, top):
        tally.expect(perm.fiber_formula_check(P), f"fiber sum of {P.label()}")
    return tally.result()

def check_paths(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("paths")
    for P in _proper_polytopes(2, max_d):
        paths = perm.monotone_paths(P)
        tally.expect(len(paths) == perm.monotone_path_count(P), f"path count of {P.label()}")
        for W in paths:
            try:
                perm.coherence_certificate(P, W)
            except VerificationError as e:
                tally.expect(False, str(e))
        tally.expect(perm.path_graph_check(P), f"edge-graph paths of {P.label()}")
        tally.expect(
            perm.perm_vertex_count(perm.monotone_path_polytope(P)) == len(paths),
            f"monotone path polytope of {P.label()} has the wrong vertex count",
        )
    return tally.result()

def check_tdcount(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("tdcount")
    for d in range(1, settings.MAX_D + 1):
        tally.expect(tri.halfcube_pull_count(d) == tri.halfcube_pull_count_recurrence(d),
                     f"closed form and recurrence differ at d={d}")
    seeds = list(range(seed, seed + settings.RANDOM_ORDERS))
    for d in range(3, max_d + 1):
        counts = tri.halfcube_pull_check(d, seeds)
        expected = tri.halfcube_pull_count(d)
        for s, count in counts.items():
            tally.expect(count == expected, f"H_{d} with seed {s}: {count} simplices, expected {expected}")
        tally.notes.append(f"H_{d}: seeds {seeds[0]}..{seeds[-1]}")
    return tally.result()

def check_taub(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("taub")
    for d in range(3, max(max_d, 3) + 1):
        pairs = tri.enumerate_tau_b_pairs(d)
        tally.expect(len(pairs) == tri.halfcube_pull_count(d), f"(tau, B) pairs for d={d}")
        tally.expect(len(set(pairs)) == len(pairs), f"repeated (tau, B) pairs for d={d}")
    return tally.result()

def check_cube(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("cube")
    for d in range(1, max_d + 1):
        C = core.cube(d)
        for s in range(seed, seed + settings.RANDOM_ORDERS):
            T = tri.triangulate(C, tri.random_order(C, s))
            tally.expect(len(T) == factorial(d), f"cube d={d} seed {s}: {len(T)} simplices")
            tally.expect(set(tri.simplex_volumes(T)) == {Fraction(1, factorial(d))},
                         f"cube d={d} seed {s}: unequal simplex volumes")
    return tally.result()

def check_volumes(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("volumes")
    for P in _proper_polytopes(2, _oracle_d(max_d)):
        expected = oracle.polytope_volume(_points(P))
        for s in (seed, seed + 1, seed + 2):
            T = tri.triangulate(P, tri.random_order(P, s))
            tally.expect(tri.triangulation_volume(T) == expected, f"volume of {P.label()} with seed {s}")
            if P.d <= 4:
                tally.expect(tri.partition_check(T), f"pulling of {P.label()} with seed {s} is no partition")
    for d in range(1, min(max_d, settings.VOLUME_MAX_D) + 1):
        for k in range(d):
            for l in range(k + 1, d + 1):
                tally.expect(tri.volume_identity_check(d, k, l), f"volume identity d={d} [{k},{l}]")
    if max_d >= 5:
        H = core.halfcube(5)
        T = tri.triangulate(H, tri.random_order(H, seed))
        tally.expect(len(set(tri.simplex_volumes(T))) >= 2, "H_5 pulling with equal simplex volumes")
    return tally.result()

def check_extbound(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("extbound")
    for P in _proper_polytopes(2, max_d):
        bound = core.extension_upper_bound(P)
        tally.expect(bound == 2 * P.d * (len(P.S) - 1), f"extension bound of {P.label()}")
        facets = core.facet_count(P)
        if bound < facets:
            tally.notes.append(f"{P.label()}: extension bound {bound} < {facets} facets")
    return tally.result()

def check_spectrum(max_d: int, seed: int) -> CheckResult:
    tally = _Tally("spectrum")
    seeds = range(seed, seed + settings.RANDOM_ORDERS)
    for P in _proper_polytopes(2, min(max_d, 4)):
        if P == core.halfcube(P.d):
            continue
        spectrum = tri.count_spectrum(P, seeds)
        tally.cases += 1
        if len(spectrum) > 1:
            tally.notes.append(f"{P.label()}: simplex counts {spectrum}")
    return tally.result()


CHECKS: Dict[str, Callable[[int, int], CheckResult]] = {
    "edges": check_edges,
    "facets": check_facets,
    "counts": check_counts,
    "slices": check_slices,
    "facet_recursion": check_facet_recursion,
    "minkowski": check_minkowski,
    "perm_facets": check_perm_facets,
    "fiber": check_fiber,
    "paths": check_paths,
    "tdcount": check_tdcount,
    "taub": check_taub,
    "cube": check_cube,
    "volumes": check_volumes,
    "extbound": check_extbound,
    "spectrum": check_spectrum,
}


def run_checks(names: Optional[Iterable[str]] = None, max_d: Optional[int] = None,
               seed: Optional[int] = None) -> VerificationReport:
    names = list(names) if names else list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise InvalidInputError(f"unknown checks {unknown}; choose from {list(CHECKS)}")
    max_d = DEFAULT_MAX_D if max_d is None else max_d
    if max_d < 1:
        raise InvalidInputError(f"max_d must be positive, got {max_d}")
    if max_d > settings.MAX_D:
        raise CapExceededError("max_d", max_d, settings.MAX_D)
    seed = settings.DEFAULT_SEED if seed is None else seed

    results = []
    for name in names:
        try:
            result = CHECKS[name](max_d, seed)
        except CapExceededError as e:
            logger.warning(f"check {name} stopped at a cap: {e}")
            result = CheckResult(name=name, passed=False, cases=0, failures=[str(e)])
        if result.passed:
            logger.info(f"check {name}: {result.cases} cases passed")
        else:
            logger.warning(f"check {name}: {len(result.failures)} of {result.cases} cases failed")
        results.append(result)
    return VerificationReport(max_d=max_d, seed=seed, checks=results)
