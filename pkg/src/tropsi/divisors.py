"""Rational functions on the moduli fan and their Weil divisors."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

from . import _linalg as la
from .combinatorics import WeightVector
from .fan import Cycle, _ray, ambient_space, codim_one_faces, moduli_fan
from .trees import (
    CombinatorialType,
    Split,
    all_ones,
    enumerate_types,
    valid_splits,
)

__all__ = [
    "RationalFunctionOnFan",
    "phi_I",
    "f_N_w",
    "V_N_w",
    "pair_side",
    "weil_divisor",
    "boundary_divisor",
    "positive_representation",
    "K_constant",
    "m_tau",
]


@dataclass(frozen=True)
class RationalFunctionOnFan:
    """A function on the fan, linear on each cone, given by its values on rays.

    Rays missing from ``values`` take the value 0.
    """

    w: WeightVector
    values: Mapping[Split, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        rays = set(valid_splits(self.w))
        bad = [s for s in self.values if s not in rays]
        if bad:
            raise ValueError(f"{bad[0]} is not a ray of the fan for {self.w}")
        object.__setattr__(self, "values", {s: Fraction(v) for s, v in self.values.items() if v})

    def __call__(self, ray: Split) -> Fraction:
        return self.values.get(ray, Fraction(0))

    def evaluate(self, coefficients: Mapping[Split, Fraction]) -> Fraction:
        """Value at ``sum c_s v_s``, a point of the linear span of one cone."""
        return sum((Fraction(c) * self(s) for s, c in coefficients.items()), Fraction(0))

    def to_json(self) -> dict:
        return {"rays": {str(s): str(v) for s, v in sorted(self.values.items())}}


def phi_I(I, n: int) -> RationalFunctionOnFan:
    """Indicator of the ray ``v_I`` on M_{0,n}."""
    s = I if isinstance(I, Split) else Split.of(I, n)
    return RationalFunctionOnFan(all_ones(n), {s: 1})


def pair_side(s: Split, N: int) -> frozenset[int] | None:
    """The two-element side of ``s`` avoiding ``N``, if there is one."""
    for x in (s.side, s.complement):
        if len(x) == 2 and N not in x:
            return x
    return None


def V_N_w(N: int, w: WeightVector) -> tuple[Split, ...]:
    """Rays ``v_S`` with ``|S| = 2`` and ``N`` not in ``S``."""
    return tuple(s for s in valid_splits(w) if pair_side(s, N) is not None)


def f_N_w(N: int, w: WeightVector) -> RationalFunctionOnFan:
    """Equal to 1 on ``V_{N,w}``, extended to each ray through its positive representation.

    A ray ``v_I`` outside ``V_{N,w}`` takes the value ``sum c_S`` of its
    coefficients, so ``f`` agrees with a linear function wherever the
    representation is linear.
    """
    if not 1 <= N <= w.n:
        raise ValueError(f"mark {N} out of range")
    values = {}
    for s in valid_splits(w):
        values[s] = sum(positive_representation(s, N, w).values(), Fraction(0))
    return RationalFunctionOnFan(w, values)


def weil_divisor(f: RationalFunctionOnFan, z: Cycle) -> Cycle:
    """Weil divisor of ``f`` restricted to the balanced cycle ``z``.

    The weighted sum of primitive generators around a facet lies in the span
    of the facet; ``f`` is evaluated there through the facet's own rays.
    """
    if f.w != z.w:
        raise ValueError("function and cycle live on different fans")
    out = {}
    zero = ambient_space(z.w).zero()
    for tau, star in codim_one_faces(z).items():
        first = Fraction(0)
        total = zero
        for sigma, s in star:
            first += z[sigma] * f(s)
            total = tuple(a + z[sigma] * b for a, b in zip(total, _ray(s, z.w)))
        rays = tau.sorted_splits
        coeffs = la.solve([_ray(r, z.w) for r in rays], total)
        if coeffs is None:
            raise ValueError(f"cycle is not balanced at {tau}")
        out[tau] = first - f.evaluate(dict(zip(rays, coeffs)))
    return Cycle(z.w, z.dim - 1, out)


def boundary_divisor(I, n: int) -> Cycle:
    """``D_I`` on M_{0,n} from the 4-part partitions at the 4-fold vertices."""
    s = I if isinstance(I, Split) else Split.of(I, n)
    sides = {s.side, s.complement}
    ones = all_ones(n)
    out = {}
    for t in enumerate_types(n, ones, 1):
        v = next(v for v in t.vertices if v.fold == 4)
        parts = v.parts
        if any(p in sides for p in parts):
            out[t] = -1
        elif any(a | b in sides for a, b in _pairs(parts)):
            out[t] = 1
    return Cycle(ones, n - 4, out)


def _pairs(parts):
    return [(parts[i], parts[j]) for i in range(len(parts)) for j in range(i + 1, len(parts))]


class PositiveRepresentationError(ArithmeticError):
    pass


def positive_representation(I, N: int, w: WeightVector) -> dict[Split, Fraction]:
    """Coefficients ``c_S >= 0`` over ``V_{N,w}`` with ``v_I = sum c_S v_S``.

    Supported on pairs inside the side of ``I`` avoiding ``N``, with at least
    one vanishing coefficient.  Raises ``PositiveRepresentationError`` if no
    such representation exists or it is not unique.
    """
    split = I if isinstance(I, Split) else Split.of(I, w.n)
    side = split.side_without(N)
    V = V_N_w(N, w)
    allowed = [S for S in V if pair_side(S, N) <= side]
    columns = [_ray(S, w) for S in allowed]
    c = la.solve(columns, _ray(split, w))
    if c is None:
        raise PositiveRepresentationError(f"v_{split} is not in the span of its allowed pairs")
    if la.nullspace(columns):
        raise PositiveRepresentationError(f"representation of v_{split} is not unique")
    rep = {S: Fraction(0) for S in V}
    rep.update(zip(allowed, c))
    if any(x < 0 for x in rep.values()) or all(x != 0 for x in rep.values()):
        raise PositiveRepresentationError(f"no positive representation of v_{split} for N={N}")
    return rep


def K_constant(N: int, w: WeightVector) -> int:
    n, m = w.n, w.m
    heavy = w.is_heavy(N)
    if n - m == 2:
        return m if heavy else 2 * m - 2
    return comb(n - 1, 2) - (comb(m, 2) if heavy else comb(m - 1, 2))


def m_tau(tau: CombinatorialType, N: int, w: WeightVector, z: Cycle | None = None) -> Fraction:
    """``min over S of sum_sigma w(sigma) c_{sigma,S}`` using positive representations."""
    z = moduli_fan(w) if z is None else z
    star = codim_one_faces(z).get(tau, [])
    totals = {S: Fraction(0) for S in V_N_w(N, w)}
    for sigma, s in star:
        for S, c in positive_representation(s, N, w).items():
            totals[S] += z[sigma] * c
    return min(totals.values())
