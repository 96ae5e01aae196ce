"""
Delta(d,S): vertices, edges, facets, Cayley pieces and slices from closed forms.

Vertices are handled as bitmasks internally (bit i-1 <-> element i) and turned
into VertexSubset models at the boundary. Canonical vertex order is
(cardinality, colex), which for bitmasks is (popcount, integer value).
"""
from itertools import combinations
from math import comb, gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
import logging

import networkx as nx
from pydantic import ValidationError

from app.config import settings
from app.errors import CapExceededError, ImproperPolytopeError, InvalidInputError, ShypError
from app.models import (
    CardinalitySet, EdgeKind, EdgeSpec, FacetKind, FacetSpec, SHypersimplex, VertexSubset,
    elements_of, mask_of
)

logger = logging.getLogger(__name__)


# --- Construction ---

def cardinality_set(d: int, members: Iterable[int]) -> CardinalitySet:
    members = list(members)
    if len(set(members)) != len(members):
        raise InvalidInputError(f"S has repeated members: {members}")
    try:
        return CardinalitySet(d=d, members=tuple(sorted(members)))
    except ValidationError as e:
        raise InvalidInputError(str(e)) from e

def parse_cardinality_text(d: int, text: str) -> CardinalitySet:
    """`0,2,4`, or the shorthands `even` (halfcube) and `all` (cube)"""
    text = text.strip().lower()
    if text == "even":
        return cardinality_set(d, range(0, d + 1, 2))
    if text == "all":
        return cardinality_set(d, range(0, d + 1))
    try:
        members = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise InvalidInputError(f"cannot parse S from {text!r}") from e
    return cardinality_set(d, members)

def _proper_members(d: int, members: Sequence[int]) -> bool:
    if not members:
        return False
    if d == 1:
        return tuple(members) == (0, 1)
    return len(members) != 1 and tuple(members) != (0, d)

def is_proper(cs: CardinalitySet) -> bool:
    return _proper_members(cs.d, cs.members)

def shypersimplex(d: int, S: Union[CardinalitySet, Iterable[int], str]) -> SHypersimplex:
    if isinstance(S, CardinalitySet):
        cs = S
    elif isinstance(S, str):
        cs = parse_cardinality_text(d, S)
    else:
        cs = cardinality_set(d, S)
    return SHypersimplex(card_set=cs, proper=is_proper(cs))

def cube(d: int) -> SHypersimplex:
    return shypersimplex(d, range(0, d + 1))

def halfcube(d: int) -> SHypersimplex:
    return shypersimplex(d, range(0, d + 1, 2))

def cross_polytope(d: int) -> SHypersimplex:
    """Delta(d,{1,d-1}); the octahedron for d = 3"""
    return shypersimplex(d, [1, d - 1])

def proper_cardinality_sets(d: int) -> List[CardinalitySet]:
    """Every proper S in [0,d], by size and then lexicographically"""
    out = []
    for size in range(1, d + 2):
        for members in combinations(range(d + 1), size):
            if _proper_members(d, members):
                out.append(CardinalitySet(d=d, members=members))
    return out

def plus_set(cs: CardinalitySet) -> Tuple[int, ...]:
    """S+ = {s-1 : s in S, s > 0}, living in [0, d-1]"""
    return tuple(s - 1 for s in cs.members if s > 0)

def minus_set(cs: CardinalitySet) -> Tuple[int, ...]:
    """S- = {s in S : s <= d-1}, living in [0, d-1]"""
    return tuple(s for s in cs.members if s <= cs.d - 1)

def _require_proper(P: SHypersimplex, operation: str):
    if not P.proper:
        raise ImproperPolytopeError(f"{operation} needs a proper S, got {P.label()}")

def _require_enumerable(P: SHypersimplex):
    if P.d > settings.MAX_D:
        raise CapExceededError("d", P.d, settings.MAX_D)


# --- Vertices ---

def layer_masks(d: int, s: int) -> List[int]:
    """All s-subsets of [d] as bitmasks, in colex order"""
    if s < 0 or s > d:
        return []
    return sorted(mask_of(c) for c in combinations(range(1, d + 1), s))

def vertex_masks(P: SHypersimplex) -> List[int]:
    _require_enumerable(P)
    out = []
    for s in P.S:
        out.extend(layer_masks(P.d, s))
    return out

def vertices(P: SHypersimplex) -> List[VertexSubset]:
    return [VertexSubset.from_mask(P.d, mask) for mask in vertex_masks(P)]

def vertex_count(P: SHypersimplex) -> int:
    return sum(comb(P.d, s) for s in P.S)

def vertex_subset(P: SHypersimplex, A: Union[VertexSubset, Iterable[int]]) -> VertexSubset:
    if isinstance(A, VertexSubset):
        if A.d != P.d:
            raise InvalidInputError(f"subset lives in dimension {A.d}, polytope in {P.d}")
        return A
    try:
        return VertexSubset(d=P.d, bits=tuple(sorted(A)))
    except ValidationError as e:
        raise InvalidInputError(str(e)) from e

def _require_vertex(P: SHypersimplex, A: VertexSubset):
    if A.size not in P.card_set:
        raise InvalidInputError(f"|{list(A.bits)}| = {A.size} is not in S = {list(P.S)}")


# --- Edges ---

def _edge_kind(P: SHypersimplex, a: int, b: int) -> Optional[EdgeKind]:
    """a, b bitmasks of vertices with popcount(a) <= popcount(b), a != b"""
    S = P.S
    sa, sb = a.bit_count(), b.bit_count()
    i, j = S.index(sa), S.index(sb)
    if sa < sb:
        if j == i + 1 and a & b == a:
            return EdgeKind.CHAIN
        return None
    if (a ^ b).bit_count() == 2 and not (sa - 1 in S and sa + 1 in S):
        return EdgeKind.SWAP
    return None

def _ordered(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if (a.bit_count(), a) <= (b.bit_count(), b) else (b, a)

def is_edge(P: SHypersimplex, A, B) -> Optional[EdgeSpec]:
    A, B = vertex_subset(P, A), vertex_subset(P, B)
    _require_vertex(P, A)
    _require_vertex(P, B)
    if A.mask == B.mask:
        raise InvalidInputError("an edge needs two distinct vertices")
    a, b = _ordered(A.mask, B.mask)
    kind = _edge_kind(P, a, b)
    if kind is None:
        return None
    return EdgeSpec(a=VertexSubset.from_mask(P.d, a), b=VertexSubset.from_mask(P.d, b), kind=kind)

def edge_pairs(P: SHypersimplex) -> List[Tuple[int, int, EdgeKind]]:
    """(a, b, kind) for every edge, bitmasks, in canonical vertex order"""
    _require_enumerable(P)
    d, S = P.d, P.S
    full = (1 << d) - 1
    found = []
    for s, t in zip(S, S[1:]):
        for a in layer_masks(d, s):
            free = elements_of(full & ~a)
            for extra in combinations(free, t - s):
                found.append((a, a | mask_of(extra), EdgeKind.CHAIN))
    for s in S:
        if s - 1 in S and s + 1 in S:
            continue
        for a in layer_masks(d, s):
            for i in elements_of(a):
                for j in elements_of(full & ~a):
                    b = (a & ~(1 << (i - 1))) | (1 << (j - 1))
                    if b > a:
                        found.append((a, b, EdgeKind.SWAP))
    rank = {mask: n for n, mask in enumerate(vertex_masks(P))}
    found.sort(key=lambda e: (rank[e[0]], rank[e[1]]))
    return found

def edges(P: SHypersimplex) -> List[EdgeSpec]:
    return [
        EdgeSpec(a=VertexSubset.from_mask(P.d, a), b=VertexSubset.from_mask(P.d, b), kind=kind)
        for a, b, kind in edge_pairs(P)
    ]

def _binom(n: int, m: int) -> int:
    if m < 0 or m > n or n < 0:
        return 0
    return comb(n, m)

def edge_count(P: SHypersimplex) -> int:
    _require_proper(P, "edge_count")
    d, S = P.d, P.S
    shifted = list(S[1:]) + [0]  # s_{k+1} = 0
    chains = sum(_binom(d - s, t - s) * _binom(d, s) for s, t in zip(S, shifted))
    swaps = sum(
        s * (d - s) * _binom(d, s) // 2
        for s in S
        if not (s - 1 in S and s + 1 in S)
    )
    return chains + swaps

def edge_graph(P: SHypersimplex) -> nx.Graph:
    """Vertex-edge graph keyed by bitmask"""
    graph = nx.Graph()
    for mask in vertex_masks(P):
        graph.add_node(mask, size=mask.bit_count())
    for a, b, kind in edge_pairs(P):
        graph.add_edge(a, b, kind=kind.value)
    return graph


# --- Faces and facets ---

def face_in_direction(P: SHypersimplex, c: Sequence[int]) -> List[VertexSubset]:
    """Vertices maximizing <c, e_A>"""
    if len(c) != P.d:
        raise InvalidInputError(f"direction has length {len(c)}, expected {P.d}")
    masks = vertex_masks(P)
    values = [sum(c[i - 1] for i in elements_of(mask)) for mask in masks]
    best = max(values)
    return [VertexSubset.from_mask(P.d, m) for m, v in zip(masks, values) if v == best]

def _unit(d: int, i: int, sign: int = 1) -> Tuple[int, ...]:
    return tuple(sign if j == i else 0 for j in range(1, d + 1))

def _join_facet(d: int, I: Tuple[int, ...], low: int, high: int) -> FacetSpec:
    h = len(I)
    alpha, beta = high - h, h - low
    g = gcd(alpha, beta)
    members = set(I)
    normal = tuple(alpha // g if j in members else -(beta // g) for j in range(1, d + 1))
    return FacetSpec(normal=normal, rhs=alpha * low // g, kind=FacetKind.JOIN, witness=I, h=h)

def join_levels(d: int, low: int, high: int) -> List[int]:
    """
    Sizes h of the kind (v) facets in the gap between consecutive levels.

    A gap starting at 0 has the single point {} below it, so only h = 1 spans
    a facet there; a gap ending at d likewise only allows h = d-1.
    """
    return [
        h for h in range(low + 1, high)
        if (low > 0 or h == 1) and (high < d or h == d - 1)
    ]

def facets(P: SHypersimplex) -> List[FacetSpec]:
    """
    Facets of a proper Delta(d,S), in the order (i), (ii), (iii), (iv), (v).

    Kind (v) facets come from every I with |I| = h in join_levels for
    consecutive members of S; their normal (s_{i+1}-h) e_I - (h-s_i) e_{I^c}
    is divided by its gcd.
    """
    _require_proper(P, "facets")
    _require_enumerable(P)
    d, S = P.d, P.S
    if d < 2:
        raise InvalidInputError("facets are enumerated for d >= 2")

    out: List[FacetSpec] = []
    if S[-1] < d:
        out.append(FacetSpec(normal=(1,) * d, rhs=S[-1], kind=FacetKind.TOP))
    if S[0] > 0:
        out.append(FacetSpec(normal=(-1,) * d, rhs=-S[0], kind=FacetKind.BOTTOM))
    if _proper_members(d - 1, plus_set(P.card_set)):
        out.extend(
            FacetSpec(normal=_unit(d, i), rhs=1, kind=FacetKind.COORD_UP, witness=i)
            for i in range(1, d + 1)
        )
    if _proper_members(d - 1, minus_set(P.card_set)):
        out.extend(
            FacetSpec(normal=_unit(d, i, -1), rhs=0, kind=FacetKind.COORD_DOWN, witness=i)
            for i in range(1, d + 1)
        )
    for low, high in zip(S, S[1:]):
        for h in join_levels(d, low, high):
            for I in combinations(range(1, d + 1), h):
                out.append(_join_facet(d, I, low, high))

    keys = [f.normal for f in out]
    if len(set(keys)) != len(keys):
        logger.error(f"duplicate facet normals for {P.label()}")
        raise ShypError(f"facet families of {P.label()} produced duplicate normals")
    return out

def facet_count(P: SHypersimplex) -> int:
    _require_proper(P, "facet_count")
    d, S = P.d, P.S
    count = int(S[-1] < d) + int(S[0] > 0)
    count += d * int(_proper_members(d - 1, plus_set(P.card_set)))
    count += d * int(_proper_members(d - 1, minus_set(P.card_set)))
    count += sum(comb(d, h) for low, high in zip(S, S[1:]) for h in join_levels(d, low, high))
    return count

def facet_face(P: SHypersimplex, facet: FacetSpec) -> List[VertexSubset]:
    """Vertices of P lying on the facet hyperplane"""
    out = []
    for mask in vertex_masks(P):
        if sum(facet.normal[i - 1] for i in elements_of(mask)) == facet.rhs:
            out.append(VertexSubset.from_mask(P.d, mask))
    return out


# --- Decomposition and slices ---

def cayley_decomposition(P: SHypersimplex) -> List[SHypersimplex]:
    """Delta(d,S) as the union of the Cayley polytopes Delta(d, s_i, s_{i+1})"""
    if len(P.S) < 2:
        raise InvalidInputError("Cayley decomposition needs |S| >= 2")
    return [shypersimplex(P.d, (s, t)) for s, t in zip(P.S, P.S[1:])]

def hyperplane_slice(P: SHypersimplex, s: int) -> List[VertexSubset]:
    """Delta(d,S) meets H(s) exactly in Delta(d,s) for s in S"""
    if s not in P.card_set:
        raise InvalidInputError(f"level {s} is not in S = {list(P.S)}")
    _require_enumerable(P)
    return [VertexSubset.from_mask(P.d, mask) for mask in layer_masks(P.d, s)]

def extension_upper_bound(P: SHypersimplex) -> int:
    _require_proper(P, "extension_upper_bound")
    return 2 * P.d * (len(P.S) - 1)


# --- Text format ---

def format_vertices_text(P: SHypersimplex) -> str:
    lines = [f"d={P.d} S={P.card_set.label()}"]
    for v in vertices(P):
        lines.append(" ".join(str(x) for x in v.point()))
    return "\n".join(lines) + "\n"

def parse_vertices_text(text: str) -> Tuple[SHypersimplex, List[VertexSubset]]:
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise InvalidInputError("empty vertex file")
    header: Dict[str, str] = {}
    for part in lines[0].split():
        key, _, value = part.partition("=")
        header[key] = value
    if "d" not in header or "S" not in header:
        raise InvalidInputError(f"bad header line {lines[0]!r}")
    try:
        d = int(header["d"])
    except ValueError as e:
        raise InvalidInputError(f"bad dimension {header['d']!r}") from e
    P = shypersimplex(d, header["S"])
    out = []
    for line in lines[1:]:
        digits = line.split()
        if len(digits) != d or any(x not in ("0", "1") for x in digits):
            raise InvalidInputError(f"bad vertex line {line!r}")
        A = VertexSubset(d=d, bits=tuple(i + 1 for i, x in enumerate(digits) if x == "1"))
        _require_vertex(P, A)
        out.append(A)
    return P, out
