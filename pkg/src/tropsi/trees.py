"""Rational n-marked trees encoded as compatible split systems.

A bounded edge of a tree splits the marks ``[n]`` in two.  We store only the
side not containing mark 1; the tree itself (vertices, valences, marking
function) is derived on demand from the laminar family of stored sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .combinatorics import WeightVector

__all__ = [
    "Split",
    "CombinatorialType",
    "VertexLocalData",
    "splits_compatible",
    "is_w_stable",
    "is_valid_split",
    "valid_splits",
    "enumerate_types",
    "contract_edge",
    "expansions",
    "vertex_data",
    "all_ones",
]


def all_ones(n: int) -> WeightVector:
    return WeightVector(n, 0)


@dataclass(frozen=True)
class Split:
    """The bipartition ``side | [n] - side`` with ``1`` never in ``side``."""

    side: frozenset[int]
    n: int

    def __post_init__(self):
        side = frozenset(self.side)
        full = frozenset(range(1, self.n + 1))
        if not side <= full:
            raise ValueError(f"marks {sorted(side - full)} out of range for n={self.n}")
        if 1 in side:
            side = full - side
        if not 2 <= len(side) <= self.n - 2:
            raise ValueError(f"split {sorted(side)} of [{self.n}] needs two marks on each side")
        object.__setattr__(self, "side", side)

    @classmethod
    def of(cls, marks: Iterable[int], n: int) -> "Split":
        return cls(frozenset(marks), n)

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1)) - self.side

    def side_without(self, mark: int) -> frozenset[int]:
        return self.complement if mark in self.side else self.side

    def separates(self, i: int, j: int) -> bool:
        return (i in self.side) != (j in self.side)

    @property
    def key(self) -> tuple:
        return (len(self.side), tuple(sorted(self.side)))

    def __lt__(self, other: "Split") -> bool:
        return self.key < other.key

    def to_json(self) -> list[int]:
        return sorted(self.side)

    def __str__(self) -> str:
        return "".join(map(str, sorted(self.side))) if self.n < 10 else ",".join(map(str, sorted(self.side)))

    def __repr__(self) -> str:
        return f"Split({sorted(self.side)}, n={self.n})"


def splits_compatible(a: Split, b: Split) -> bool:
    """Whether two splits can be edges of one tree (some side-intersection is empty)."""
    if a.n != b.n:
        raise ValueError("splits on different mark sets")
    A, B = a.side, b.side
    return not (A & B) or A <= B or B <= A


@dataclass(frozen=True)
class VertexLocalData:
    """A vertex of a derived tree.

    ``vertex`` is the set of marks in the subtree hanging below the vertex
    (the whole of ``[n]`` for the vertex carrying mark 1).  ``parts`` is the
    partition of ``[n]`` obtained by deleting the vertex, with the marks at the
    vertex as singletons.
    """

    vertex: frozenset[int]
    valence: int
    marks: frozenset[int]
    parts: tuple[frozenset[int], ...]

    @property
    def fold(self) -> int:
        """``val(v) + |m^{-1}(v)|``."""
        return self.valence + len(self.marks)


@dataclass(frozen=True)
class CombinatorialType:
    """A rational n-marked tree given by its set of pairwise compatible splits."""

    n: int
    splits: frozenset[Split] = frozenset()

    def __post_init__(self):
        splits = frozenset(self.splits)
        if any(s.n != self.n for s in splits):
            raise ValueError("split on a different number of marks")
        for a, b in combinations(splits, 2):
            if not splits_compatible(a, b):
                raise ValueError(f"incompatible splits {a} and {b}")
        object.__setattr__(self, "splits", splits)

    @classmethod
    def of(cls, n: int, *sides: Iterable[int]) -> "CombinatorialType":
        return cls(n, frozenset(Split.of(s, n) for s in sides))

    @property
    def dim(self) -> int:
        return len(self.splits)

    @property
    def codim(self) -> int:
        return self.n - 3 - len(self.splits)

    @cached_property
    def sorted_splits(self) -> tuple[Split, ...]:
        return tuple(sorted(self.splits))

    @property
    def key(self) -> tuple:
        return tuple(s.key for s in self.sorted_splits)

    def __lt__(self, other: "CombinatorialType") -> bool:
        return (self.n, len(self.splits), self.key) < (other.n, len(other.splits), other.key)

    @cached_property
    def _tree(self):
        full = frozenset(range(1, self.n + 1))
        clusters = [s.side for s in self.sorted_splits]
        parent: dict[frozenset, frozenset] = {}
        for c in clusters:
            above = [d for d in clusters if c < d]
            parent[c] = min(above, key=len) if above else full
        children: dict[frozenset, list] = {c: [] for c in clusters}
        children[full] = []
        for c, p in parent.items():
            children[p].append(c)
        return full, parent, children

    @cached_property
    def vertices(self) -> tuple[VertexLocalData, ...]:
        full, parent, children = self._tree
        out = []
        for v in sorted(children, key=lambda c: (-len(c), sorted(c))):
            kids = sorted(children[v], key=lambda c: sorted(c))
            marks = v.difference(*kids)
            parts = [frozenset(k) for k in kids] + [frozenset([i]) for i in marks]
            if v != full:
                parts.append(full - v)
            out.append(VertexLocalData(
                vertex=v,
                valence=len(kids) + (v != full),
                marks=frozenset(marks),
                parts=tuple(sorted(parts, key=min)),
            ))
        return tuple(out)

    @cached_property
    def edges(self) -> tuple[tuple[frozenset, frozenset, Split], ...]:
        """``(lower vertex, upper vertex, split)`` for each bounded edge."""
        _, parent, _ = self._tree
        return tuple((s.side, parent[s.side], s) for s in self.sorted_splits)

    def vertex_of(self, mark: int) -> VertexLocalData:
        return next(v for v in self.vertices if mark in v.marks)

    def with_split(self, s: Split) -> "CombinatorialType":
        return CombinatorialType(self.n, self.splits | {s})

    def to_json(self) -> dict:
        return {"n": self.n, "splits": [s.to_json() for s in self.sorted_splits]}

    @classmethod
    def from_json(cls, data: Mapping) -> "CombinatorialType":
        return cls.of(int(data["n"]), *data["splits"])

    def __str__(self) -> str:
        return "{" + ", ".join(str(s) for s in self.sorted_splits) + "}"

    def __repr__(self) -> str:
        return f"CombinatorialType(n={self.n}, splits={[sorted(s.side) for s in self.sorted_splits]})"


def vertex_data(t: CombinatorialType) -> tuple[VertexLocalData, ...]:
    return t.vertices


def _vertex_stable(v: VertexLocalData, w: WeightVector) -> bool:
    # val + h + l*eps > 2 with 0 < l*eps < 1
    h = sum(1 for i in v.marks if w.is_heavy(i))
    light = len(v.marks) - h
    return v.valence + h > 2 or (v.valence + h == 2 and light > 0)


def is_w_stable(t: CombinatorialType, w: WeightVector) -> bool:
    """Strict stability ``val(v) + sum of weights at v > 2`` at every vertex."""
    if t.n != w.n:
        raise ValueError("type and weight vector disagree on n")
    return all(_vertex_stable(v, w) for v in t.vertices)


def is_valid_split(s: Split, w: WeightVector) -> bool:
    """Whether the two-vertex type with this single split is w-stable."""
    return is_w_stable(CombinatorialType(s.n, frozenset([s])), w)


@lru_cache(maxsize=None)
def valid_splits(w: WeightVector) -> tuple[Split, ...]:
    n = w.n
    out = []
    for size in range(2, n - 1):
        for side in combinations(range(2, n + 1), size):
            s = Split(frozenset(side), n)
            if is_valid_split(s, w):
                out.append(s)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _compatibility(w: WeightVector) -> dict[Split, frozenset[Split]]:
    rays = valid_splits(w)
    return {a: frozenset(b for b in rays if b != a and splits_compatible(a, b)) for a in rays}


@lru_cache(maxsize=None)
def enumerate_types(n: int, w: WeightVector, codim: int) -> tuple[CombinatorialType, ...]:
    """All w-stable types with ``n - 3 - codim`` splits, sorted."""
    if w.n != n:
        raise ValueError("weight vector has the wrong length")
    if not 0 <= codim <= n - 3:
        raise ValueError(f"codim must lie in [0, {n - 3}], got {codim}")
    size = n - 3 - codim
    rays = valid_splits(w)
    compat = _compatibility(w)
    out = []

    def extend(chosen: list[Split], candidates: list[Split]):
        if len(chosen) == size:
            t = CombinatorialType(n, frozenset(chosen))
            if is_w_stable(t, w):
                out.append(t)
            return
        for i, s in enumerate(candidates):
            extend(chosen + [s], [c for c in candidates[i + 1:] if c in compat[s]])

    extend([], list(rays))
    return tuple(sorted(out))


def contract_edge(t: CombinatorialType, s: Split) -> CombinatorialType:
    if s not in t.splits:
        raise ValueError(f"split {s} is not an edge of {t}")
    return CombinatorialType(t.n, t.splits - {s})


def expansions(t: CombinatorialType, w: WeightVector) -> tuple[tuple[CombinatorialType, Split], ...]:
    """All w-stable types obtained from ``t`` by adding one valid split."""
    out = []
    for s in valid_splits(w):
        if s in t.splits or not all(splits_compatible(s, r) for r in t.splits):
            continue
        bigger = t.with_split(s)
        if is_w_stable(bigger, w):
            out.append((bigger, s))
    return tuple(out)
