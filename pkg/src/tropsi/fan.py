"""The moduli fan embedded in the quotient space R_w by distance coordinates."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping

from . import _linalg as la
from .combinatorics import WeightVector
from .trees import (
    CombinatorialType,
    Split,
    all_ones,
    contract_edge,
    enumerate_types,
    is_valid_split,
    valid_splits,
)

__all__ = [
    "AmbientSpace",
    "ambient_space",
    "Cycle",
    "BalancingReport",
    "ray_vector",
    "quotient_reduce",
    "embed_point",
    "distances",
    "primitive_generator",
    "check_balancing",
    "moduli_fan",
    "pushforward_fan",
    "pushforward_cycle",
    "codim_one_faces",
    "ray_lattice_basis",
    "lattice_coordinates",
    "is_unimodular",
]


class AmbientSpace:
    """``R^{C(n,2)-C(m,2)} / Im(phi_w)`` with a fixed coset representative.

    Coordinates are the pairs ``{i, j}`` that are not both light.  A vector is
    reduced by subtracting the unique element of ``Im(phi_w)`` that agrees
    with it on ``n`` pivot coordinates, chosen once by exact elimination.
    """

    def __init__(self, w: WeightVector):
        self.w = w
        self.n = w.n
        self.coords: tuple[tuple[int, int], ...] = tuple(
            (i, j) for i, j in combinations(range(1, w.n + 1), 2)
            if w.is_heavy(i) or w.is_heavy(j)
        )
        self.index = {T: k for k, T in enumerate(self.coords)}
        phi_rows = [[int(i in T) for i in range(1, self.n + 1)] for T in self.coords]
        self._phi_rows = phi_rows
        pivots: list[int] = []
        for k, row in enumerate(phi_rows):
            if la.rank([phi_rows[p] for p in pivots] + [row]) > len(pivots):
                pivots.append(k)
            if len(pivots) == self.n:
                break
        if len(pivots) != self.n:
            raise ArithmeticError(f"phi_w is not injective for {w}")
        self.pivots = tuple(pivots)
        self._pivot_inverse = la.inverse([phi_rows[p] for p in pivots])

    @property
    def dim(self) -> int:
        return len(self.coords) - self.n

    def phi(self, a: Iterable) -> tuple[Fraction, ...]:
        a = [Fraction(x) for x in a]
        return tuple(a[i - 1] + a[j - 1] for i, j in self.coords)

    def reduce(self, x: Iterable) -> tuple[Fraction, ...]:
        x = [Fraction(v) for v in x]
        if len(x) != len(self.coords):
            raise ValueError("vector has the wrong number of coordinates")
        xp = [x[p] for p in self.pivots]
        a = [sum(r * v for r, v in zip(row, xp)) for row in self._pivot_inverse]
        return tuple(v - (a[i - 1] + a[j - 1]) for v, (i, j) in zip(x, self.coords))

    def zero(self) -> tuple[Fraction, ...]:
        return (Fraction(0),) * len(self.coords)

    def __repr__(self) -> str:
        return f"AmbientSpace(n={self.n}, m={self.w.m})"


@lru_cache(maxsize=None)
def ambient_space(w: WeightVector) -> AmbientSpace:
    return AmbientSpace(w)


def quotient_reduce(v: Iterable, space: AmbientSpace) -> tuple[Fraction, ...]:
    return space.reduce(v)


def raw_ray_vector(split: Split, space: AmbientSpace) -> tuple[int, ...]:
    """The 0/1 vector before reduction: coordinate ``T`` is 1 iff the split separates ``T``."""
    return tuple(int(split.separates(i, j)) for i, j in space.coords)


@lru_cache(maxsize=None)
def _ray(split: Split, w: WeightVector) -> tuple[Fraction, ...]:
    space = ambient_space(w)
    return space.reduce(raw_ray_vector(split, space))


def ray_vector(split: Split, space: AmbientSpace | WeightVector) -> tuple[Fraction, ...]:
    w = space if isinstance(space, WeightVector) else space.w
    if split.n != w.n or not is_valid_split(split, w):
        raise ValueError(f"split {split} is not a ray of the moduli fan for {w}")
    return _ray(split, w)


def _add(x, y, c=1):
    return tuple(a + c * b for a, b in zip(x, y))


def distances(t: CombinatorialType, lengths: Mapping[Split, Fraction]) -> dict[tuple[int, int], Fraction]:
    """Pairwise mark distances in the metric tree, by walking the tree."""
    adj: dict[frozenset, list] = defaultdict(list)
    for lower, upper, s in t.edges:
        adj[lower].append((upper, Fraction(lengths[s])))
        adj[upper].append((lower, Fraction(lengths[s])))
    home = {i: v.vertex for v in t.vertices for i in v.marks}
    out = {}
    for i in range(1, t.n + 1):
        dist = {home[i]: Fraction(0)}
        stack = [home[i]]
        while stack:
            u = stack.pop()
            for v, ell in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + ell
                    stack.append(v)
        for j in range(i + 1, t.n + 1):
            out[(i, j)] = dist[home[j]]
    return out


def embed_point(t: CombinatorialType, lengths: Mapping[Split, Fraction], w: WeightVector) -> tuple[Fraction, ...]:
    """Reduced distance vector of the metric tree ``(t, lengths)``."""
    if set(lengths) != set(t.splits):
        raise ValueError("lengths must be given for exactly the edges of the type")
    if any(Fraction(v) < 0 for v in lengths.values()):
        raise ValueError("edge lengths must be nonnegative")
    space = ambient_space(w)
    d = distances(t, lengths)
    return space.reduce(d[T] for T in space.coords)


def primitive_generator(sigma: CombinatorialType, tau: CombinatorialType,
                        w: WeightVector) -> tuple[Split, tuple[Fraction, ...]]:
    """The split added going from ``tau`` to ``sigma`` and its ray vector."""
    extra = sigma.splits - tau.splits
    if not tau.splits < sigma.splits or len(extra) != 1:
        raise ValueError("tau must be a facet of sigma")
    (s,) = extra
    return s, ray_vector(s, w)


@dataclass
class Cycle:
    """A weighted pure-dimensional fan: cones (as types) with nonzero integer weights."""

    w: WeightVector
    dim: int
    weights: dict[CombinatorialType, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for t, c in self.weights.items():
            if t.dim != self.dim:
                raise ValueError(f"cone {t} has dimension {t.dim}, expected {self.dim}")
            if Fraction(c).denominator != 1:
                raise ValueError(f"non-integral weight {c} on {t}")
            if c:
                clean[t] = int(c)
        self.weights = dict(sorted(clean.items()))

    @property
    def n(self) -> int:
        return self.w.n

    @classmethod
    def from_types(cls, w: WeightVector, dim: int, types: Iterable[CombinatorialType],
                   weight: int = 1) -> "Cycle":
        return cls(w, dim, {t: weight for t in types})

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __contains__(self, t) -> bool:
        return t in self.weights

    def __getitem__(self, t: CombinatorialType) -> int:
        return self.weights.get(t, 0)

    def items(self):
        return self.weights.items()

    @property
    def support(self) -> frozenset[CombinatorialType]:
        return frozenset(self.weights)

    def _check(self, other: "Cycle"):
        if self.w != other.w or self.dim != other.dim:
            raise ValueError("cycles live in different fans or dimensions")

    def __add__(self, other: "Cycle") -> "Cycle":
        self._check(other)
        out = dict(self.weights)
        for t, c in other.items():
            out[t] = out.get(t, 0) + c
        return Cycle(self.w, self.dim, out)

    def __neg__(self) -> "Cycle":
        return Cycle(self.w, self.dim, {t: -c for t, c in self.items()})

    def __sub__(self, other: "Cycle") -> "Cycle":
        return self + (-other)

    def scaled(self, k: int) -> "Cycle":
        return Cycle(self.w, self.dim, {t: k * c for t, c in self.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.w == other.w and self.dim == other.dim and self.weights == other.weights

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "w": self.w.to_json(),
            "dim": self.dim,
            "cones": [{"splits": t.to_json()["splits"], "weight": c} for t, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Cycle":
        w = WeightVector.heavy_light(int(data["w"]["heavy"]), int(data["w"]["light"]))
        return cls(w, int(data["dim"]),
                   {CombinatorialType.of(w.n, *c["splits"]): int(c["weight"]) for c in data["cones"]})

    def __repr__(self) -> str:
        body = ", ".join(f"{t}: {c}" for t, c in self.items())
        return f"Cycle(w={self.w}, dim={self.dim}, {{{body}}})"


def moduli_fan(w: WeightVector) -> Cycle:
    """The fan of w-stable tropical curves as a cycle with unit weights."""
    return Cycle.from_types(w, w.n - 3, enumerate_types(w.n, w, 0))


def codim_one_faces(z: Cycle) -> dict[CombinatorialType, list[tuple[CombinatorialType, Split]]]:
    """Facets of the cones of ``z``, each with the cones ``(sigma, added split)`` over it."""
    faces: dict[CombinatorialType, list] = defaultdict(list)
    for sigma in z:
        for s in sigma.sorted_splits:
            faces[contract_edge(sigma, s)].append((sigma, s))
    return dict(sorted(faces.items()))


@dataclass(frozen=True)
class BalancingReport:
    balanced: bool
    violation: CombinatorialType | None = None
    faces_checked: int = 0

    def __bool__(self) -> bool:
        return self.balanced


def check_balancing(z: Cycle) -> BalancingReport:
    """Check that weighted primitive generators around every facet sum into its span."""
    faces = codim_one_faces(z)
    for tau, star in faces.items():
        total = ambient_space(z.w).zero()
        for sigma, s in star:
            total = _add(total, _ray(s, z.w), z[sigma])
        basis = [_ray(r, z.w) for r in tau.sorted_splits]
        if la.solve(basis, total) is None:
            return BalancingReport(False, tau, len(faces))
    return BalancingReport(True, None, len(faces))


def pushforward_fan(n: int, w: WeightVector) -> dict[CombinatorialType, CombinatorialType]:
    """Contraction of every cone of M_{0,n} onto the cone of its w-valid splits."""
    if w.n != n:
        raise ValueError("weight vector has the wrong length")
    ones = all_ones(n)
    out = {}
    for codim in range(n - 2):
        for t in enumerate_types(n, ones, codim):
            out[t] = CombinatorialType(n, frozenset(s for s in t.splits if is_valid_split(s, w)))
    return out


def pushforward_cycle(z: Cycle, w: WeightVector) -> Cycle:
    """Push a cycle on M_{0,n} forward to M_{0,w}; cones losing dimension vanish."""
    if z.w != all_ones(z.n) or w.n != z.n:
        raise ValueError("pushforward starts from a cycle on M_{0,n}")
    out: dict[CombinatorialType, int] = defaultdict(int)
    for t, c in z.items():
        image = CombinatorialType(z.n, frozenset(s for s in t.splits if is_valid_split(s, w)))
        if image.dim == z.dim:
            out[image] += c
    return Cycle(w, z.dim, dict(out))


class _RayLattice:
    """Z-span of all ray vectors, written in an integral basis."""

    def __init__(self, w: WeightVector):
        self.w = w
        rays = [_ray(s, w) for s in valid_splits(w)]
        self.scale = 1
        for v in rays:
            for x in v:
                self.scale = self.scale * x.denominator // gcd(self.scale, x.denominator)
        ints = [[int(x * self.scale) for x in v] for v in rays]
        self.basis = la.hermite_basis(ints)

    def coordinates(self, v) -> tuple[Fraction, ...] | None:
        scaled = [Fraction(x) * self.scale for x in v]
        return la.solve(self.basis, scaled)


@lru_cache(maxsize=None)
def _ray_lattice(w: WeightVector) -> _RayLattice:
    return _RayLattice(w)


def ray_lattice_basis(w: WeightVector) -> list[list[int]]:
    """Integral basis (scaled coordinates) of the lattice generated by all rays."""
    return _ray_lattice(w).basis


def lattice_coordinates(v, w: WeightVector) -> tuple[Fraction, ...] | None:
    """Coordinates of ``v`` in the ray lattice basis; ``None`` if outside its span."""
    return _ray_lattice(w).coordinates(v)


def is_unimodular(t: CombinatorialType, w: WeightVector) -> bool:
    """Whether the rays of ``t`` extend to a basis of the ray lattice.

    Equivalently every facet's primitive generator is the ray vector of the
    added split.
    """
    rows = []
    for s in t.sorted_splits:
        c = lattice_coordinates(_ray(s, w), w)
        if c is None or any(x.denominator != 1 for x in c):
            return False
        rows.append([int(x) for x in c])
    return la.maximal_minor_gcd(rows) == 1
