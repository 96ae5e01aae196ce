"""
Exact brute-force convex geometry.

Everything here works over the rationals; no floating point is used. The
routines are deliberately naive (facets from spanning subsets, extreme points
from one feasibility LP per point) so that the closed-form results elsewhere
can be checked against something that shares none of their reasoning.
"""
from fractions import Fraction
from math import factorial, gcd
from typing import Iterator, List, Optional, Sequence, Tuple
import logging

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from app.config import settings
from app.errors import CapExceededError, DegenerateInputError, InvalidInputError
from app.models import OracleFacet

logger = logging.getLogger(__name__)

ExactPoint = Tuple[Fraction, ...]


def to_exact(points: Sequence[Sequence]) -> List[ExactPoint]:
    if not points:
        raise InvalidInputError("point set must be nonempty")
    dim = len(points[0])
    out = []
    for p in points:
        if len(p) != dim:
            raise InvalidInputError("all points must have the same length")
        out.append(tuple(Fraction(x) for x in p))
    return out


def _qq_matrix(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    data = [[QQ(x.numerator, x.denominator) for x in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def _difference_rows(points: List[ExactPoint]) -> List[List[Fraction]]:
    base = points[0]
    return [[x - y for x, y in zip(p, base)] for p in points[1:]]


def _affine_frame(points: List[ExactPoint]) -> Tuple[int, Tuple[int, ...]]:
    """Affine dimension and a coordinate set on which the hull projects injectively"""
    if len(points) == 1:
        return 0, ()
    rows = _difference_rows(points)
    _, pivots = _qq_matrix(rows, len(points[0])).rref()
    return len(pivots), tuple(pivots)


def affine_dimension(points: Sequence[Sequence]) -> int:
    return _affine_frame(to_exact(points))[0]


def primitive(vector: Sequence[int]) -> Tuple[int, ...]:
    g = 0
    for x in vector:
        g = gcd(g, x)
    if g == 0:
        return tuple(vector)
    return tuple(x // g for x in vector)


def canonical_hyperplane(normal: Sequence[int], rhs: int) -> Tuple[Tuple[int, ...], int]:
    """Unoriented hyperplane key: primitive normal with positive leading nonzero entry"""
    g = 0
    for x in normal:
        g = gcd(g, x)
    if g == 0:
        raise InvalidInputError("hyperplane normal must be nonzero")
    # rhs is <normal, x> for an integer point x, hence divisible by g
    normal = tuple(x // g for x in normal)
    rhs = rhs // g
    for x in normal:
        if x != 0:
            if x < 0:
                normal = tuple(-y for y in normal)
                rhs = -rhs
            break
    return normal, rhs


def _reduce(vector: List[int], rows: List[Tuple[int, List[int]]]) -> Optional[List[int]]:
    """Fraction-free reduction of `vector` against echelon rows sorted by pivot"""
    v = list(vector)
    for pivot, row in rows:
        if v[pivot]:
            a, b = row[pivot], v[pivot]
            v = [a * x - b * y for x, y in zip(v, row)]
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return None
    return [x // g for x in v]


def _insert_row(rows, v):
    pivot = next(i for i, x in enumerate(v) if x)
    out = list(rows) + [(pivot, v)]
    out.sort(key=lambda item: item[0])
    return out


def _null_vector(rows: List[Tuple[int, List[int]]], n: int) -> Tuple[int, ...]:
    """The integer kernel vector of n-1 independent echelon rows in n columns"""
    pivots = {p for p, _ in rows}
    free = next(j for j in range(n) if j not in pivots)
    x: List[Fraction] = [Fraction(0)] * n
    x[free] = Fraction(1)
    for pivot, row in sorted(rows, key=lambda item: -item[0]):
        s = sum((row[j] * x[j] for j in range(pivot + 1, n)), Fraction(0))
        x[pivot] = -s / row[pivot]
    lcm = 1
    for value in x:
        lcm = lcm * value.denominator // gcd(lcm, value.denominator)
    return primitive([int(value * lcm) for value in x])


def _spanning_normals(Q: List[List[int]], n: int) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """Every hyperplane spanned by n affinely independent points of Q"""
    m = len(Q)

    def extend(base: int, last: int, rows):
        if len(rows) == n - 1:
            normal = _null_vector(rows, n)
            rhs = sum(a * x for a, x in zip(normal, Q[base]))
            yield canonical_hyperplane(normal, rhs)
            return
        for j in range(last + 1, m):
            v = _reduce([x - y for x, y in zip(Q[j], Q[base])], rows)
            if v is None:
                continue
            yield from extend(base, j, _insert_row(rows, v))

    for base in range(m - n + 1):
        yield from extend(base, base, [])


def brute_facets(points: Sequence[Sequence[int]]) -> List[OracleFacet]:
    """
    Facets of conv(points) relative to its affine hull.

    Hyperplanes spanned by affinely independent subsets are kept when every
    point lies on one closed side. Facets are returned with outward normals
    (all points satisfy <normal, x> <= rhs) in canonical order.
    """
    exact = to_exact(points)
    if any(x.denominator != 1 for p in exact for x in p):
        raise InvalidInputError("brute_facets needs integer coordinates")
    if len(exact) > settings.ORACLE_MAX_POINTS:
        raise CapExceededError("oracle point count", len(exact), settings.ORACLE_MAX_POINTS)
    n, coords = _affine_frame(exact)
    if n > settings.ORACLE_MAX_DIM:
        raise CapExceededError("oracle dimension", n, settings.ORACLE_MAX_DIM)
    if n == 0:
        return []

    d = len(exact[0])
    Q = [[int(p[j]) for j in coords] for p in exact]
    seen = set()
    found = []
    for normal, rhs in _spanning_normals(Q, n):
        if (normal, rhs) in seen:
            continue
        seen.add((normal, rhs))
        values = [sum(a * x for a, x in zip(normal, q)) for q in Q]
        if max(values) <= rhs:
            outward, bound = normal, rhs
        elif min(values) >= rhs:
            outward, bound = tuple(-a for a in normal), -rhs
        else:
            continue
        incident = tuple(i for i, v in enumerate(values) if v == rhs)
        lifted = [0] * d
        for a, j in zip(outward, coords):
            lifted[j] = a
        found.append(OracleFacet(normal=tuple(lifted), rhs=bound, incident=incident))

    logger.debug(f"brute_facets: {len(exact)} points, dim {n}, {len(seen)} hyperplanes, {len(found)} facets")
    found.sort(key=lambda f: (f.normal, f.rhs))
    return found


def brute_edges(points: Sequence[Sequence[int]]) -> List[Tuple[int, int]]:
    """Pairs (i, j) whose minimal common face is exactly {i, j}"""
    if len(points) == 1:
        return []
    facets = brute_facets(points)
    everything = (1 << len(points)) - 1
    incidence = []
    for f in facets:
        mask = 0
        for i in f.incident:
            mask |= 1 << i
        incidence.append(mask)

    edges = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            pair = (1 << i) | (1 << j)
            common = everything
            for mask in incidence:
                if mask & pair == pair:
                    common &= mask
            if common == pair:
                edges.append((i, j))
    return edges


def lp_feasible(columns: Sequence[Sequence], target: Sequence) -> bool:
    """
    Decide whether target is a convex combination of columns.

    Phase-one simplex on  sum_j l_j c_j = target, sum_j l_j = 1, l >= 0  with
    Bland's rule, exact over the rationals.
    """
    m = len(columns)
    if m == 0:
        return False
    r = len(target) + 1
    tableau: List[List[Fraction]] = []
    for i in range(len(target)):
        tableau.append([Fraction(c[i]) for c in columns] + [Fraction(target[i])])
    tableau.append([Fraction(1)] * m + [Fraction(1)])
    for row in tableau:
        if row[-1] < 0:
            row[:] = [-x for x in row]
    # artificial variables m .. m+r-1 start in the basis
    for i, row in enumerate(tableau):
        rhs = row.pop()
        row.extend(Fraction(1) if j == i else Fraction(0) for j in range(r))
        row.append(rhs)
    basis = [m + i for i in range(r)]
    width = m + r
    objective = [sum(row[j] for row in tableau) if j < m else Fraction(0) for j in range(width)]
    objective.append(sum(row[-1] for row in tableau))

    while objective[-1] != 0:
        entering = next((j for j in range(width) if objective[j] > 0), None)
        if entering is None:
            return False
        leaving = None
        best = None
        for i, row in enumerate(tableau):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        # phase one is bounded below by zero, so a pivot row always exists
        pivot_row = tableau[leaving]
        pivot = pivot_row[entering]
        pivot_row[:] = [x / pivot for x in pivot_row]
        for i, row in enumerate(tableau):
            if i != leaving and row[entering] != 0:
                factor = row[entering]
                row[:] = [x - factor * y for x, y in zip(row, pivot_row)]
        factor = objective[entering]
        objective[:] = [x - factor * y for x, y in zip(objective, pivot_row)]
        basis[leaving] = entering
    return True


def extreme_points(points: Sequence[Sequence]) -> List[int]:
    """
    Indices of the points that are not convex combinations of the others.

    Repeated points are collapsed to their first occurrence before testing.
    """
    exact = to_exact(points)
    first = {}
    for i, p in enumerate(exact):
        first.setdefault(p, i)
    unique = list(first)
    if len(unique) == 1:
        return [first[unique[0]]]

    dim = len(unique[0])
    centroid = tuple(sum(p[j] for p in unique) / len(unique) for j in range(dim))
    # far points first, so that most interior points are settled against a small hull
    order = sorted(range(len(unique)),
                   key=lambda i: -sum((x - c) ** 2 for x, c in zip(unique[i], centroid)))
    known: List[ExactPoint] = []
    extreme = []
    for i in order:
        p = unique[i]
        if known and lp_feasible(known, p):
            continue
        others = [q for j, q in enumerate(unique) if j != i]
        if lp_feasible(others, p):
            continue
        known.append(p)
        extreme.append(first[p])
    logger.debug(f"extreme_points: {len(exact)} points, {len(unique)} distinct, {len(extreme)} extreme")
    return sorted(extreme)


def determinant(rows: Sequence[Sequence]) -> Fraction:
    exact = [[Fraction(x) for x in row] for row in rows]
    value = _qq_matrix(exact, len(exact)).det()
    return Fraction(int(value.numerator), int(value.denominator))


def simplex_volume(points: Sequence[Sequence]) -> Fraction:
    """|det(v_1 - v_0, ..., v_n - v_0)| / n! for n+1 points in R^n"""
    exact = to_exact(points)
    n = len(exact) - 1
    if len(exact[0]) != n:
        raise InvalidInputError(f"simplex_volume needs {len(exact[0]) + 1} points, got {len(exact)}")
    if n == 0:
        return Fraction(1)
    return abs(determinant(_difference_rows(exact))) / factorial(n)


def _coned_simplices(points: List[ExactPoint], indices: Tuple[int, ...], dim: int) -> Iterator[List[ExactPoint]]:
    if len(indices) == dim + 1:
        yield [points[i] for i in indices]
        return
    sub = [points[i] for i in indices]
    apex = tuple(sum(p[j] for p in sub) / len(sub) for j in range(len(sub[0])))
    for facet in brute_facets([[int(x) for x in p] for p in sub]):
        for simplex in _coned_simplices(points, tuple(indices[i] for i in facet.incident), dim - 1):
            yield [apex] + simplex


def polytope_volume(points: Sequence[Sequence[int]]) -> Fraction:
    """
    Euclidean volume of a full-dimensional integer polytope.

    Cones every face from its centroid down to simplicial faces; shares no code
    with pulling triangulations.
    """
    exact = to_exact(points)
    d = len(exact[0])
    n, _ = _affine_frame(exact)
    if n < d:
        raise DegenerateInputError(f"points span dimension {n}, need {d}")
    total = Fraction(0)
    count = 0
    for simplex in _coned_simplices(exact, tuple(range(len(exact))), d):
        total += simplex_volume(simplex)
        count += 1
    logger.debug(f"polytope_volume: {count} coned simplices")
    return total


def descent_count(perm: Sequence[int]) -> int:
    """Number of positions i with perm[i] > perm[i+1]"""
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise InvalidInputError(f"not a permutation of [{len(perm)}]: {list(perm)}")
    return sum(1 for a, b in zip(perm, perm[1:]) if a > b)
