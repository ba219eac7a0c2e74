"""Weighted tropical psi-classes and their intersection products."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterable, Sequence

from .combinatorics import PsiExponents, WeightVector, multinomial, p_sequence, tlm, unstable_partitions
from .divisors import V_N_w, boundary_divisor, pair_side
from .fan import Cycle, codim_one_faces, moduli_fan, pushforward_cycle
from .trees import CombinatorialType, all_ones, enumerate_types, expansions, is_w_stable

__all__ = [
    "PsiProductQuery",
    "psi_class",
    "psi_class_pushforward",
    "unstable_sets",
    "intersect_product",
    "intersect_with_psi",
    "intersect_recursive",
    "degree",
]


@dataclass(frozen=True)
class PsiProductQuery:
    """The product ``prod_i psi_{i,w}^{k_i}``."""

    w: WeightVector
    K: PsiExponents

    def __post_init__(self):
        K = PsiExponents(self.K)
        if len(K) != self.w.n:
            raise ValueError(f"expected {self.w.n} exponents, got {len(K)}")
        if K.total > self.w.n - 3:
            raise ValueError(f"total exponent {K.total} exceeds dim {self.w.n - 3}")
        object.__setattr__(self, "K", K)

    @property
    def codim(self) -> int:
        return self.K.total

    @property
    def factors(self) -> tuple[int, ...]:
        """Marks in ascending order, each repeated ``k_N`` times."""
        return tuple(N for N in range(1, self.w.n + 1) for _ in range(self.K.of(N)))


def _four_fold(t: CombinatorialType):
    return next(v for v in t.vertices if v.fold == 4)


def psi_class(N: int, w: WeightVector) -> Cycle:
    """psi_{N,w} from the combinatorial description.

    Codimension-one cones whose 4-fold vertex carries ``N``; for light ``N``
    also dropping cones lying in a maximal cone of M_{0,n} that is contracted
    by the projection to M_{0,w}.
    """
    n = w.n
    if not 1 <= N <= n:
        raise ValueError(f"mark {N} out of range")
    ones = all_ones(n)
    cones = []
    for t in enumerate_types(n, w, 1):
        if N not in _four_fold(t).marks:
            continue
        if w.is_light(N) and any(not is_w_stable(big, w) for big, _ in expansions(t, ones)):
            continue
        cones.append(t)
    return Cycle.from_types(w, n - 4, cones)


def unstable_sets(w: WeightVector, min_size: int = 2) -> tuple[frozenset[int], ...]:
    """Sets of marks of total weight at most 1 with at least ``min_size`` elements."""
    out = [frozenset([i]) for i in sorted(w.marks)] if min_size <= 1 else []
    lights = sorted(w.light)
    for r in range(max(min_size, 2), len(lights) + 1):
        out.extend(frozenset(c) for c in combinations(lights, r))
    return tuple(out)


def psi_class_pushforward(N: int, w: WeightVector) -> Cycle:
    """psi_{N,w} as the pushforward of psi_N minus boundary divisors D_S, N in S."""
    n = w.n
    z = psi_class(N, all_ones(n))
    for S in unstable_sets(w):
        if N in S:
            z = z - boundary_divisor(S, n)
    return pushforward_cycle(z, w)


def _valence_ok(t: CombinatorialType, K: Sequence[int]) -> bool:
    return all(v.fold == 3 + sum(K[i - 1] for i in v.marks) for v in t.vertices)


def intersect_product(q: PsiProductQuery) -> Cycle:
    """The product from the closed form: vertex valence condition and TLM weights."""
    w, K = q.w, q.K
    weights = {}
    for t in enumerate_types(w.n, w, q.codim):
        if _valence_ok(t, K):
            weights[t] = prod(tlm(v.marks, K, w) for v in t.vertices)
    return Cycle(w, w.n - 3 - q.codim, weights)


def intersect_with_psi(z: Cycle, N: int) -> Cycle:
    """``psi_{N,w} . z``: facet weights ``min over S in V_{N,w}`` of adjacent weight sums.

    A cone ``sigma`` over a facet counts toward ``S`` when ``S`` lies on the
    side of the added split avoiding ``N``.

    With two heavy marks and ``N`` light the class itself is empty, and so is
    every product with it.  The minimum does not see this at the apex of the
    Losev-Manin fan, where it returns 1.
    """
    if z.w.n - z.w.m == 2 and z.w.is_light(N):
        return Cycle(z.w, z.dim - 1, {})
    pairs = [pair_side(S, N) for S in V_N_w(N, z.w)]
    out = {}
    for tau, star in codim_one_faces(z).items():
        sides = [(z[sigma], s.side_without(N)) for sigma, s in star]
        out[tau] = min((sum(c for c, A in sides if P <= A) for P in pairs), default=0)
    return Cycle(z.w, z.dim - 1, out)


def intersect_recursive(q: PsiProductQuery, order: Iterable[int] | None = None) -> Cycle:
    """The product by intersecting one psi-class at a time, starting from the fan."""
    factors = q.factors if order is None else tuple(order)
    if Counter(factors) != Counter(q.factors):
        raise ValueError("order must list each mark N exactly k_N times")
    z = moduli_fan(q.w)
    for N in factors:
        z = intersect_with_psi(z, N)
    return z


def degree(q: PsiProductQuery) -> int:
    """Weight of the unique zero-dimensional cone of a top-degree product."""
    n = q.w.n
    if q.K.total != n - 3:
        raise ValueError(f"top degree needs exponents summing to {n - 3}, got {q.K.total}")
    total = 0
    for P in unstable_partitions(range(1, n + 1), q.w):
        sign = -1 if (n - len(P)) % 2 else 1
        total += sign * multinomial(len(P) - 3, p_sequence(q.K, P))
    return total
