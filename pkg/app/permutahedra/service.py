"""
Permutahedra, card-monotone paths and monotone path polytopes of Delta(d,S)
"""
from itertools import combinations
from math import comb, factorial
from typing import Iterable, List, Sequence, Set, Tuple, Union
import logging

import networkx as nx
from pydantic import ValidationError
from sympy.utilities.iterables import multiset_permutations

from app.config import settings
from app.core.service import edge_pairs, layer_masks, vertex_subset
from app.errors import CapExceededError, ImproperPolytopeError, InvalidInputError, VerificationError
from app.models import (
    EdgeKind, FacetKind, FacetSpec, MonotonePath, Permutahedron, SHypersimplex, VertexSubset,
    elements_of, mask_of
)
from app.oracle.service import extreme_points

logger = logging.getLogger(__name__)


def permutahedron(p: Iterable[int]) -> Permutahedron:
    """Pi(p) for any integer vector; entries are sorted into decreasing order"""
    try:
        return Permutahedron(p=tuple(sorted(p, reverse=True)))
    except ValidationError as e:
        raise InvalidInputError(str(e)) from e

def parse_vector(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise InvalidInputError(f"cannot parse an integer vector from {text!r}") from e

def perm_vertex_count(Q: Permutahedron) -> int:
    count = factorial(Q.d)
    for _, k in Q.blocks:
        count //= factorial(k)
    return count

def perm_vertices(Q: Permutahedron) -> List[Tuple[int, ...]]:
    """Distinct permutations of p, lexicographically decreasing (p itself first)"""
    if Q.d > settings.MAX_D:
        raise CapExceededError("d", Q.d, settings.MAX_D)
    out = [tuple(v) for v in multiset_permutations(list(Q.p))]
    out.reverse()
    return out

def _is_perm_facet(Q: Permutahedron, h: int) -> bool:
    # the face maximizing e_I is Pi(top h entries) x Pi(bottom d-h entries)
    d = Q.d
    k_first, k_last = Q.blocks[0][1], Q.blocks[-1][1]
    top_ok = h == 1 or h >= k_first + 1
    bottom_ok = h == d - 1 or h <= d - k_last - 1
    return top_ok and bottom_ok

def perm_facets(Q: Permutahedron) -> List[FacetSpec]:
    """
    Facets of Pi(p) inside its affine hull sum(x) = sum(p).

    The face in direction e_I, |I| = h, is a facet exactly when both of its
    permutahedral factors have the right dimension; the normal is reported
    as e_I and the bound as the sum of the h largest entries.
    """
    if Q.is_point():
        raise InvalidInputError(f"Pi({list(Q.p)}) is a point and has no facets")
    if Q.d > settings.MAX_D:
        raise CapExceededError("d", Q.d, settings.MAX_D)
    d = Q.d
    out = []
    for h in range(1, d):
        if not _is_perm_facet(Q, h):
            continue
        rhs = sum(Q.p[:h])
        for I in combinations(range(1, d + 1), h):
            members = set(I)
            normal = tuple(1 if j in members else 0 for j in range(1, d + 1))
            out.append(FacetSpec(normal=normal, rhs=rhs, kind=FacetKind.PERM, witness=I, h=h))
    return out

def perm_minkowski(p: Permutahedron, q: Permutahedron) -> Permutahedron:
    if p.d != q.d:
        raise InvalidInputError(f"cannot add permutahedra of dimensions {p.d} and {q.d}")
    return Permutahedron(p=tuple(a + b for a, b in zip(p.p, q.p)))

def _extreme_sum(cloud: Sequence[Tuple[int, ...]], summand: Sequence[Tuple[int, ...]], weight: int = 1) -> List[Tuple[int, ...]]:
    sums = sorted({tuple(x + weight * y for x, y in zip(u, v)) for u in cloud for v in summand})
    return [sums[i] for i in extreme_points(sums)]

def minkowski_check(p: Permutahedron, q: Permutahedron) -> bool:
    """Extreme points of all pairwise vertex sums against perm_vertices(Pi(p+q))"""
    if max(p.d, q.d) > settings.ORACLE_MAX_D:
        raise CapExceededError("d", max(p.d, q.d), settings.ORACLE_MAX_D)
    total = perm_minkowski(p, q)
    extreme = _extreme_sum(perm_vertices(p), perm_vertices(q))
    return set(extreme) == set(perm_vertices(total))


# --- Monotone paths ---

def _require_levels(P: SHypersimplex, operation: str):
    # proper S, or the segment S = {0, d} with its single path
    if len(P.S) < 2:
        raise ImproperPolytopeError(f"{operation} needs at least two levels, got {P.label()}")

def monotone_path_count(P: SHypersimplex) -> int:
    _require_levels(P, "monotone_path_count")
    count = comb(P.d, P.S[0])
    for s, t in zip(P.S, P.S[1:]):
        count *= comb(P.d - s, t - s)
    return count

def _chains(P: SHypersimplex) -> List[Tuple[int, ...]]:
    d, S = P.d, P.S
    full = (1 << d) - 1
    chains = [(mask,) for mask in layer_masks(d, S[0])]
    for s, t in zip(S, S[1:]):
        grown = []
        for chain in chains:
            last = chain[-1]
            for extra in combinations(elements_of(full & ~last), t - s):
                grown.append(chain + (last | mask_of(extra),))
        chains = grown
    return chains

def monotone_paths(P: SHypersimplex) -> List[MonotonePath]:
    """Chains A_1 < ... < A_k with |A_i| = s_i, ordered by their bitmask tuples"""
    count = monotone_path_count(P)
    if count > settings.MAX_LISTED:
        raise CapExceededError("monotone path count", count, settings.MAX_LISTED)
    chains = sorted(_chains(P))
    logger.debug(f"monotone_paths: {len(chains)} chains for {P.label()}")
    return [
        MonotonePath(chain=tuple(VertexSubset.from_mask(P.d, mask) for mask in chain))
        for chain in chains
    ]

def monotone_path(P: SHypersimplex, chain: Sequence[Union[VertexSubset, Iterable[int]]]) -> MonotonePath:
    """Validate a chain of subsets as a card-monotone path of P"""
    subsets = [vertex_subset(P, A) for A in chain]
    sizes = tuple(A.size for A in subsets)
    if sizes != P.S:
        raise InvalidInputError(f"chain cardinalities {list(sizes)} must be exactly S = {list(P.S)}")
    try:
        return MonotonePath(chain=tuple(subsets))
    except ValidationError as e:
        raise InvalidInputError(str(e)) from e

def coherence_certificate(P: SHypersimplex, W) -> Tuple[int, ...]:
    """
    h = sum of the indicator vectors of the chain.

    On every layer s_i the linear function h is maximized by A_i alone, so W
    is the path selected by h. Raises VerificationError otherwise.
    """
    if not isinstance(W, MonotonePath):
        W = monotone_path(P, W)
    elif tuple(A.size for A in W.chain) != P.S or any(A.d != P.d for A in W.chain):
        raise InvalidInputError(f"path does not match {P.label()}")
    h = [0] * P.d
    for A in W.chain:
        for i in A.bits:
            h[i - 1] += 1
    for A in W.chain:
        values = {
            mask: sum(h[i - 1] for i in elements_of(mask))
            for mask in layer_masks(P.d, A.size)
        }
        best = max(values.values())
        winners = [mask for mask, v in values.items() if v == best]
        if winners != [A.mask]:
            raise VerificationError(
                f"h = {h} does not single out {list(A.bits)} on layer {A.size}"
            )
    return tuple(h)

def monotone_path_polytope(P: SHypersimplex) -> Permutahedron:
    """
    p with 1/2 * 1 + d * Sigma_card(P) = Pi(p).

    Built from S' = S + {0, d} = a_0 < ... < a_k as the block vector
    (k^{a_1-a_0}, (k-1)^{a_2-a_1}, ..., 1^{a_k-a_{k-1}}).
    """
    _require_levels(P, "monotone_path_polytope")
    a = sorted(set(P.S) | {0, P.d})
    k = len(a) - 1
    p: List[int] = []
    for j, (low, high) in enumerate(zip(a, a[1:])):
        p.extend([k - j] * (high - low))
    return Permutahedron(p=tuple(p))

def fiber_formula_check(P: SHypersimplex) -> bool:
    """
    Recompute the monotone path polytope as P_0 + 2 P_1 + ... + 2 P_{k-1} + P_k.

    The slices are P_i = Delta(d, a_i) over the levels of S + {0, d}; the
    doubled sum must have exactly the vertices 2 sigma(p) - 1.
    """
    _require_levels(P, "fiber_formula_check")
    if P.d > settings.FIBER_MAX_D:
        raise CapExceededError("d", P.d, settings.FIBER_MAX_D)
    d = P.d
    levels = sorted(set(P.S) | {0, d})
    cloud: List[Tuple[int, ...]] = [(0,) * d]
    for n, s in enumerate(levels):
        weight = 1 if n in (0, len(levels) - 1) else 2
        layer = [VertexSubset.from_mask(d, mask).point() for mask in layer_masks(d, s)]
        cloud = _extreme_sum(cloud, layer, weight)
    expected = {tuple(2 * x - 1 for x in v) for v in perm_vertices(monotone_path_polytope(P))}
    matched = set(cloud) == expected
    if not matched:
        logger.warning(f"fiber sum of {P.label()} has {len(cloud)} extreme points, expected {len(expected)}")
    return matched

def path_graph_check(P: SHypersimplex) -> bool:
    """
    Monotone paths read off the actual edge graph agree with the chains.

    Chain edges are oriented upwards; every directed path from the bottom
    layer to the top layer must be one of the chains and vice versa.
    """
    count = monotone_path_count(P)
    if count > settings.MAX_LISTED:
        raise CapExceededError("monotone path count", count, settings.MAX_LISTED)
    graph = nx.DiGraph()
    for a, b, kind in edge_pairs(P):
        if kind == EdgeKind.CHAIN:
            graph.add_edge(a, b)
    graph.add_nodes_from(layer_masks(P.d, P.S[0]))
    if not nx.is_directed_acyclic_graph(graph):
        raise VerificationError(f"chain edges of {P.label()} contain a cycle")
    tops = layer_masks(P.d, P.S[-1])
    found: Set[Tuple[int, ...]] = set()
    for source in layer_masks(P.d, P.S[0]):
        if len(P.S) == 1:
            found.add((source,))
            continue
        for path in nx.all_simple_paths(graph, source, tops):
            found.add(tuple(path))
    return found == set(_chains(P))

