"""
Domain models for S-hypersimplices, permutahedra and their triangulations
"""
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from typing import List, Optional, Tuple, Union
import enum

class FacetKind(str, enum.Enum):
    TOP = "i"
    BOTTOM = "ii"
    COORD_UP = "iii"
    COORD_DOWN = "iv"
    JOIN = "v"
    PERM = "perm"

class EdgeKind(str, enum.Enum):
    CHAIN = "chain"
    SWAP = "swap"

class OrderKind(str, enum.Enum):
    LEX = "lex"
    RANDOM = "random"

class OutputFormat(str, enum.Enum):
    JSON = "json"
    TEXT = "text"


def mask_of(elements) -> int:
    """Bitmask with bit i-1 set for every element i"""
    mask = 0
    for i in elements:
        mask |= 1 << (i - 1)
    return mask

def elements_of(mask: int) -> Tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class CardinalitySet(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    members: Tuple[int, ...]

    @model_validator(mode="after")
    def check_members(self):
        if self.d < 1:
            raise ValueError(f"dimension must be positive, got {self.d}")
        if not self.members:
            raise ValueError("S must be nonempty")
        for a, b in zip(self.members, self.members[1:]):
            if a >= b:
                raise ValueError(f"S must be strictly increasing, got {list(self.members)}")
        if self.members[0] < 0 or self.members[-1] > self.d:
            raise ValueError(f"S must lie in [0,{self.d}], got {list(self.members)}")
        return self

    @property
    def k(self) -> int:
        return len(self.members)

    def __contains__(self, s: int) -> bool:
        return s in self.members

    def label(self) -> str:
        return ",".join(str(s) for s in self.members)


class SHypersimplex(BaseModel):
    """Delta(d,S); `proper` is filled in by core.shypersimplex"""
    model_config = ConfigDict(frozen=True)

    card_set: CardinalitySet
    proper: bool

    @property
    def d(self) -> int:
        return self.card_set.d

    @property
    def S(self) -> Tuple[int, ...]:
        return self.card_set.members

    def label(self) -> str:
        return f"Delta({self.d},{{{self.card_set.label()}}})"


class VertexSubset(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    bits: Tuple[int, ...]

    @model_validator(mode="after")
    def check_bits(self):
        for a, b in zip(self.bits, self.bits[1:]):
            if a >= b:
                raise ValueError(f"subset must be sorted without repeats, got {list(self.bits)}")
        if self.bits and (self.bits[0] < 1 or self.bits[-1] > self.d):
            raise ValueError(f"subset must lie in [1,{self.d}], got {list(self.bits)}")
        return self

    @classmethod
    def from_mask(cls, d: int, mask: int) -> "VertexSubset":
        return cls(d=d, bits=elements_of(mask))

    @property
    def mask(self) -> int:
        return mask_of(self.bits)

    @property
    def size(self) -> int:
        return len(self.bits)

    def point(self) -> Tuple[int, ...]:
        """The 0/1 vector e_A"""
        members = set(self.bits)
        return tuple(1 if i in members else 0 for i in range(1, self.d + 1))


class FacetSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    normal: Tuple[int, ...]
    rhs: int
    kind: FacetKind
    # index i for (iii)/(iv), the set I for (v) and permutahedron facets
    witness: Union[int, Tuple[int, ...], None] = None
    h: Optional[int] = None

    def key(self) -> Tuple[Tuple[int, ...], int]:
        return (self.normal, self.rhs)

    def value_at(self, point) -> int:
        return sum(a * x for a, x in zip(self.normal, point))


class EdgeSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: VertexSubset
    b: VertexSubset
    kind: EdgeKind

    def key(self) -> Tuple[int, int]:
        return (self.a.mask, self.b.mask)


class Permutahedron(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: Tuple[int, ...]

    @field_validator("p")
    @classmethod
    def check_decreasing(cls, p):
        if not p:
            raise ValueError("p must be nonempty")
        for a, b in zip(p, p[1:]):
            if a < b:
                raise ValueError(f"p must be weakly decreasing, got {list(p)}")
        return p

    @property
    def d(self) -> int:
        return len(self.p)

    @property
    def blocks(self) -> Tuple[Tuple[int, int], ...]:
        """(nu_j, k_j) pairs with nu_1 > ... > nu_r"""
        out: List[Tuple[int, int]] = []
        for value in self.p:
            if out and out[-1][0] == value:
                out[-1] = (value, out[-1][1] + 1)
            else:
                out.append((value, 1))
        return tuple(out)

    def is_point(self) -> bool:
        return self.p[0] == self.p[-1]


class MonotonePath(BaseModel):
    model_config = ConfigDict(frozen=True)

    chain: Tuple[VertexSubset, ...]

    @model_validator(mode="after")
    def check_chain(self):
        for a, b in zip(self.chain, self.chain[1:]):
            if not set(a.bits) < set(b.bits):
                raise ValueError(f"chain must be strictly increasing: {list(a.bits)} vs {list(b.bits)}")
        return self

    def masks(self) -> Tuple[int, ...]:
        return tuple(A.mask for A in self.chain)


class PullOrder(BaseModel):
    """Total order on a vertex list, given as a permutation of vertex indices"""
    model_config = ConfigDict(frozen=True)

    order: Tuple[int, ...]

    @field_validator("order")
    @classmethod
    def check_permutation(cls, order):
        if sorted(order) != list(range(len(order))):
            raise ValueError("order must be a permutation of the vertex indices")
        return order

    def ranks(self) -> List[int]:
        rank = [0] * len(self.order)
        for position, index in enumerate(self.order):
            rank[index] = position
        return rank


class Triangulation(BaseModel):
    model_config = ConfigDict(frozen=True)

    simplices: Tuple[Tuple[VertexSubset, ...], ...]
    ambient: SHypersimplex

    def masks(self) -> List[List[int]]:
        return [[v.mask for v in simplex] for simplex in self.simplices]

    def __len__(self) -> int:
        return len(self.simplices)


class TauBPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    tau: Tuple[int, ...]
    B: Tuple[int, ...]

    @model_validator(mode="after")
    def check_pair(self):
        if len(set(self.tau)) != len(self.tau):
            raise ValueError("tau must be duplicate-free")
        if list(self.B) != sorted(set(self.B)):
            raise ValueError("B must be sorted without repeats")
        if set(self.tau) & set(self.B):
            raise ValueError("B must avoid tau")
        if len(self.B) % 2 == 0 or len(self.B) < 3:
            raise ValueError("B must have odd size at least 3")
        if any(i < 1 or i > self.d for i in self.tau + self.B):
            raise ValueError(f"entries must lie in [1,{self.d}]")
        return self


class OracleFacet(BaseModel):
    model_config = ConfigDict(frozen=True)

    normal: Tuple[int, ...]
    rhs: int
    incident: Tuple[int, ...]


class CheckResult(BaseModel):
    name: str
    passed: bool
    cases: int
    failures: List[str] = []
    notes: List[str] = []


class VerificationReport(BaseModel):
    max_d: int
    seed: int
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)
