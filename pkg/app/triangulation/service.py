"""
Pulling triangulations of Delta(d,S), halfcube simplex counts and volumes.

A pulling triangulation joins the first vertex v of a face (in the pull order)
with the pulling triangulations of every facet of that face missing v. Faces
of Delta(d,S) are described structurally wherever a closed form exists:

* LatticeFace(ones, free, levels) is {ones + B : B subset of free, |B| in levels},
  a copy of Delta(m, levels) with m = |free|;
* PointFace is an explicit vertex set, handed to the oracle when its facets
  are needed.
"""
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, NamedTuple, Sequence, Tuple, Union
import logging
import random

from app.config import settings
from app.core.service import facet_face, facets, halfcube, shypersimplex, vertex_masks
from app.errors import CapExceededError, DegenerateInputError, InvalidInputError, ShypError
from app.models import (
    FacetKind, FacetSpec, PullOrder, SHypersimplex, TauBPair, Triangulation, VertexSubset,
    elements_of, mask_of
)
from app.oracle.service import (
    affine_dimension, brute_facets, descent_count, lp_feasible, polytope_volume, simplex_volume
)

logger = logging.getLogger(__name__)


class LatticeFace(NamedTuple):
    d: int
    ones: int
    free: int
    levels: Tuple[int, ...]

class PointFace(NamedTuple):
    d: int
    masks: FrozenSet[int]

Face = Union[LatticeFace, PointFace]


def point_of(d: int, mask: int) -> Tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(d))


# --- Pull orders ---

def lex_order(P: SHypersimplex) -> PullOrder:
    """Pull vertices in canonical order (cardinality, then colex)"""
    return PullOrder(order=tuple(range(len(vertex_masks(P)))))

def random_order(P: SHypersimplex, seed: int) -> PullOrder:
    order = list(range(len(vertex_masks(P))))
    random.Random(seed).shuffle(order)
    return PullOrder(order=tuple(order))


# --- Pulling recursion ---

def _pull(
    top: Hashable,
    dim: int,
    vertices_of: Callable[[Hashable], FrozenSet[int]],
    facets_of: Callable[[Hashable], Sequence[Hashable]],
    rank: Dict[int, int],
) -> List[Tuple[int, ...]]:
    memo: Dict[FrozenSet[int], List[Tuple[int, ...]]] = {}

    def pull(face, dim):
        vs = vertices_of(face)
        if vs in memo:
            return memo[vs]
        if len(vs) == dim + 1:
            result = [tuple(sorted(vs, key=rank.__getitem__))]
        elif len(vs) <= dim:
            raise ShypError(f"face with {len(vs)} vertices cannot have dimension {dim}")
        else:
            v = min(vs, key=rank.__getitem__)
            result = []
            for facet in facets_of(face):
                if v in vertices_of(facet):
                    continue
                result.extend((v,) + simplex for simplex in pull(facet, dim - 1))
        memo[vs] = result
        return result

    simplices = pull(top, dim)
    logger.debug(f"pulling: {len(simplices)} simplices, {len(memo)} faces visited")
    return simplices

def pulling_triangulation(points: Sequence[Sequence[int]], order: PullOrder) -> List[Tuple[int, ...]]:
    """
    Pulling triangulation of conv(points) with every face taken from the oracle.

    Returns simplices as sorted tuples of point indices, in sorted order.
    """
    if not points:
        raise InvalidInputError("point set must be nonempty")
    if len(points) > settings.PULL_MAX_VERTICES:
        raise CapExceededError("vertex count", len(points), settings.PULL_MAX_VERTICES)
    if len(order.order) != len(points):
        raise InvalidInputError(f"order has {len(order.order)} entries for {len(points)} points")
    d = len(points[0])
    dim = affine_dimension(points)
    if dim < d:
        raise DegenerateInputError(f"points span dimension {dim}, need {d}")

    cache: Dict[FrozenSet[int], List[FrozenSet[int]]] = {}

    def facets_of(face: FrozenSet[int]) -> List[FrozenSet[int]]:
        if face not in cache:
            index = sorted(face)
            found = brute_facets([points[i] for i in index])
            cache[face] = [frozenset(index[i] for i in f.incident) for f in found]
        return cache[face]

    ranks = order.ranks()
    rank = {i: ranks[i] for i in range(len(points))}
    simplices = _pull(frozenset(range(len(points))), d, lambda face: face, facets_of, rank)
    return sorted(tuple(sorted(s)) for s in simplices)


# --- Structural faces ---

FACE_CACHE_SIZE = 4096

@lru_cache(maxsize=FACE_CACHE_SIZE)
def face_masks(face: Face) -> FrozenSet[int]:
    if isinstance(face, PointFace):
        return face.masks
    free = elements_of(face.free)
    return frozenset(
        face.ones | mask_of(B) for s in face.levels for B in combinations(free, s)
    )

def _parity(levels: Tuple[int, ...], m: int):
    if levels[0] in (0, 1) and levels == tuple(range(levels[0], m + 1, 2)):
        return levels[0]
    return None

def _without(face: LatticeFace, j: int, *, up: bool, levels: Tuple[int, ...]) -> LatticeFace:
    bit = 1 << (j - 1)
    ones = face.ones | bit if up else face.ones
    return LatticeFace(face.d, ones, face.free & ~bit, levels)

def _halfcube_face_facets(face: LatticeFace, parity: int) -> Tuple[Face, ...]:
    # coordinate facets, then one simplex around every point of the other parity
    m = face.free.bit_count()
    free = elements_of(face.free)
    out: List[Face] = []
    for j in free:
        out.append(_without(face, j, up=True, levels=tuple(range(1 - parity, m, 2))))
        out.append(_without(face, j, up=False, levels=tuple(range(parity, m, 2))))
    for size in range(1 - parity, m + 1, 2):
        for C in combinations(free, size):
            corner = mask_of(C)
            neighbors = frozenset(face.ones | (corner ^ (1 << (j - 1))) for j in free)
            out.append(PointFace(face.d, neighbors))
    return tuple(out)

def _layer_face_facets(face: LatticeFace) -> Tuple[Face, ...]:
    s = face.levels[0]
    out: List[Face] = []
    for j in elements_of(face.free):
        out.append(_without(face, j, up=True, levels=(s - 1,)))
        out.append(_without(face, j, up=False, levels=(s,)))
    return tuple(out)

def _proper_face_facets(face: LatticeFace) -> Tuple[Face, ...]:
    free = elements_of(face.free)
    m = len(free)
    local = shypersimplex(m, face.levels)
    plus = tuple(s - 1 for s in face.levels if s > 0)
    minus = tuple(s for s in face.levels if s <= m - 1)

    def lift(mask: int) -> int:
        return face.ones | mask_of(free[i - 1] for i in elements_of(mask))

    out: List[Face] = []
    for f in facets(local):
        if f.kind == FacetKind.TOP:
            out.append(LatticeFace(face.d, face.ones, face.free, (face.levels[-1],)))
        elif f.kind == FacetKind.BOTTOM:
            out.append(LatticeFace(face.d, face.ones, face.free, (face.levels[0],)))
        elif f.kind == FacetKind.COORD_UP:
            out.append(_without(face, free[f.witness - 1], up=True, levels=plus))
        elif f.kind == FacetKind.COORD_DOWN:
            out.append(_without(face, free[f.witness - 1], up=False, levels=minus))
        else:
            out.append(PointFace(face.d, frozenset(lift(v.mask) for v in facet_face(local, f))))
    return tuple(out)

def _oracle_face_facets(face: PointFace) -> Tuple[Face, ...]:
    masks = sorted(face.masks)
    found = brute_facets([point_of(face.d, mask) for mask in masks])
    return tuple(PointFace(face.d, frozenset(masks[i] for i in f.incident)) for f in found)

@lru_cache(maxsize=FACE_CACHE_SIZE)
def face_facets(face: Face) -> Tuple[Face, ...]:
    """Facets of a face of Delta(d,S), structural where possible"""
    if isinstance(face, LatticeFace):
        m = face.free.bit_count()
        levels = face.levels
        parity = _parity(levels, m)
        if m >= 4 and parity is not None:
            return _halfcube_face_facets(face, parity)
        if len(levels) == 1 and 2 <= levels[0] <= m - 2:
            return _layer_face_facets(face)
        if len(levels) >= 2 and m >= 2 and shypersimplex(m, levels).proper:
            return _proper_face_facets(face)
        face = PointFace(face.d, face_masks(face))
    return _oracle_face_facets(face)

def halfcube_facets(d: int) -> List[FacetSpec]:
    """
    The 2d coordinate facets of H_d and the 2^(d-1) simplex facets.

    The simplex facet for an odd set B has normal e_B - e_{B^c} and bound
    |B| - 1; it holds the d even sets next to B.
    """
    if d < 4:
        raise InvalidInputError("the halfcube facet list holds for d >= 4")
    out = []
    for i in range(1, d + 1):
        up = tuple(1 if j == i else 0 for j in range(1, d + 1))
        out.append(FacetSpec(normal=up, rhs=1, kind=FacetKind.COORD_UP, witness=i))
    for i in range(1, d + 1):
        down = tuple(-1 if j == i else 0 for j in range(1, d + 1))
        out.append(FacetSpec(normal=down, rhs=0, kind=FacetKind.COORD_DOWN, witness=i))
    for size in range(1, d + 1, 2):
        for B in combinations(range(1, d + 1), size):
            members = set(B)
            normal = tuple(1 if j in members else -1 for j in range(1, d + 1))
            if size == d:
                out.append(FacetSpec(normal=normal, rhs=size - 1, kind=FacetKind.TOP))
            else:
                out.append(FacetSpec(normal=normal, rhs=size - 1, kind=FacetKind.JOIN, witness=B, h=size))
    return out


def triangulate(P: SHypersimplex, order: PullOrder = None) -> Triangulation:
    """Pulling triangulation of a full-dimensional Delta(d,S); lex order by default"""
    if not P.proper:
        raise DegenerateInputError(f"{P.label()} is not full-dimensional")
    masks = vertex_masks(P)
    if len(masks) > settings.PULL_MAX_VERTICES:
        raise CapExceededError("vertex count", len(masks), settings.PULL_MAX_VERTICES)
    if order is None:
        order = lex_order(P)
    if len(order.order) != len(masks):
        raise InvalidInputError(f"order has {len(order.order)} entries for {len(masks)} vertices")

    ranks = order.ranks()
    rank = {mask: ranks[i] for i, mask in enumerate(masks)}
    top = LatticeFace(P.d, 0, (1 << P.d) - 1, P.S)
    simplices = _pull(top, P.d, face_masks, face_facets, rank)

    canonical = {mask: i for i, mask in enumerate(masks)}
    rows = sorted(tuple(sorted(canonical[m] for m in simplex)) for simplex in simplices)
    return Triangulation(
        simplices=tuple(tuple(VertexSubset.from_mask(P.d, masks[i]) for i in row) for row in rows),
        ambient=P,
    )


# --- Volumes ---

def simplex_volumes(T: Triangulation) -> List[Fraction]:
    out = []
    for simplex in T.simplices:
        volume = simplex_volume([v.point() for v in simplex])
        if volume == 0:
            raise DegenerateInputError(f"simplex {[list(v.bits) for v in simplex]} is flat")
        out.append(volume)
    return out

def triangulation_volume(T: Triangulation) -> Fraction:
    return sum(simplex_volumes(T), Fraction(0))

def volume(P: SHypersimplex) -> Fraction:
    return triangulation_volume(triangulate(P))

def partition_check(T: Triangulation) -> bool:
    """
    The simplices tile the ambient polytope.

    No barycenter lies in another simplex, and the volumes add up to the
    oracle's volume of the polytope.
    """
    d = T.ambient.d
    if d > settings.ORACLE_MAX_D:
        raise CapExceededError("d", d, settings.ORACLE_MAX_D)
    cells = [[v.point() for v in simplex] for simplex in T.simplices]
    centers = [
        tuple(Fraction(sum(p[j] for p in cell), len(cell)) for j in range(d))
        for cell in cells
    ]
    for i, center in enumerate(centers):
        for j, cell in enumerate(cells):
            if i != j and lp_feasible(cell, center):
                logger.warning(f"simplices {i} and {j} of {T.ambient.label()} overlap")
                return False
    expected = polytope_volume([VertexSubset.from_mask(d, m).point() for m in vertex_masks(T.ambient)])
    return triangulation_volume(T) == expected

def count_spectrum(P: SHypersimplex, seeds: Iterable[int]) -> Dict[int, int]:
    """Simplex counts observed over random pull orders"""
    counts = Counter(len(triangulate(P, random_order(P, seed))) for seed in seeds)
    return dict(sorted(counts.items()))


# --- Halfcube counts ---

def halfcube_pull_count(d: int) -> int:
    """t(d) = sum_{l=3}^d d!/l! (2^(l-1) - l), and 1 for d <= 3"""
    if d < 1:
        raise InvalidInputError(f"d must be positive, got {d}")
    if d <= 3:
        return 1
    return sum(factorial(d) // factorial(l) * (2 ** (l - 1) - l) for l in range(3, d + 1))

def halfcube_pull_count_recurrence(d: int) -> int:
    if d < 1:
        raise InvalidInputError(f"d must be positive, got {d}")
    t = 1
    for n in range(4, d + 1):
        t = n * t + 2 ** (n - 1) - n
    return t

def enumerate_tau_b_pairs(d: int) -> List[TauBPair]:
    """Partial permutations tau with an odd B of size >= 3 avoiding tau"""
    if d < 3:
        raise InvalidInputError(f"(tau, B) pairs need d >= 3, got {d}")
    count = halfcube_pull_count(d)
    if count > settings.MAX_LISTED:
        raise CapExceededError("(tau, B) pair count", count, settings.MAX_LISTED)
    out = []
    for size in range(3, d + 1, 2):
        for B in combinations(range(1, d + 1), size):
            rest = [i for i in range(1, d + 1) if i not in B]
            for length in range(len(rest) + 1):
                for tau in permutations(rest, length):
                    out.append(TauBPair(d=d, tau=tau, B=B))
    return out

def halfcube_pull_check(d: int, seeds: Iterable[int]) -> Dict[int, int]:
    """Simplex counts of H_d over the given seeds, keyed by seed"""
    H = halfcube(d)
    return {seed: len(triangulate(H, random_order(H, seed))) for seed in seeds}


# --- Eulerian numbers ---

@lru_cache(maxsize=None)
def _eulerian(n: int, m: int) -> int:
    if m < 0 or m >= n:
        return 0
    if n == 1:
        return 1
    return (n - m) * _eulerian(n - 1, m - 1) + (m + 1) * _eulerian(n - 1, m)

def eulerian(d: int, i: int) -> int:
    """A(d, i): permutations of [d] with i descents"""
    if d < 1 or i < 0 or i >= d:
        raise InvalidInputError(f"A(d, i) needs 0 <= i < d, got d={d}, i={i}")
    return _eulerian(d, i)

def descent_range_count(d: int, k: int, l: int) -> int:
    """Permutations of [d] with descent number in [k, l], by direct enumeration"""
    if d < 1 or k < 0 or k > l:
        raise InvalidInputError(f"bad descent range [{k}, {l}] for d={d}")
    if d > settings.PERMUTATION_MAX_D:
        raise CapExceededError("d", d, settings.PERMUTATION_MAX_D)
    return sum(1 for perm in permutations(range(1, d + 1)) if k <= descent_count(perm) <= l)

def volume_identity_check(d: int, k: int, l: int) -> bool:
    """
    d! vol Delta(d,[k,l]) counts permutations with descent number in [k, l-1].

    Each slab Delta(d, i, i+1) inside the range is checked on its own against
    A(d, i) as well.
    """
    if not 0 <= k < l <= d:
        raise InvalidInputError(f"need 0 <= k < l <= d, got d={d}, k={k}, l={l}")
    if d > settings.VOLUME_MAX_D:
        raise CapExceededError("d", d, settings.VOLUME_MAX_D)
    scaled = volume(shypersimplex(d, range(k, l + 1))) * factorial(d)
    expected = sum(eulerian(d, i) for i in range(k, l))
    matched = scaled == expected
    if d <= settings.PERMUTATION_MAX_D:
        matched = matched and expected == descent_range_count(d, k, l - 1)
    for i in range(k, l):
        if volume(shypersimplex(d, (i, i + 1))) * factorial(d) != eulerian(d, i):
            logger.warning(f"slab Delta({d},{i},{i + 1}) misses A({d},{i})")
            matched = False
    if not matched:
        logger.warning(f"volume identity fails for d={d}, [{k},{l}]: {scaled} vs {expected}")
    return matched
