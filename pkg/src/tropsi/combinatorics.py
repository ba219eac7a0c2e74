"""Heavy/light weights, set partitions and tropical local multiplicities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

__all__ = [
    "WeightVector",
    "SetPartition",
    "PsiExponents",
    "multinomial",
    "set_partitions",
    "unstable_partitions",
    "is_admissible",
    "p_sequence",
    "tlm",
    "tlm_restricted",
]


@dataclass(frozen=True, order=True)
class WeightVector:
    """A heavy/light weight vector ``(1^(n-m), eps^(m))``.

    Marks are numbered ``1..n``; marks ``1..n-m`` are heavy and the last ``m``
    are light.  The value of ``eps`` never enters any computation.
    """

    n: int
    m: int = 0

    def __post_init__(self):
        if self.n < 4:
            raise ValueError(f"need at least 4 marks, got n={self.n}")
        if self.m < 0 or self.n - self.m < 2:
            raise ValueError(f"need at least two heavy marks, got n={self.n}, m={self.m}")

    @classmethod
    def heavy_light(cls, heavy: int, light: int) -> "WeightVector":
        return cls(heavy + light, light)

    @classmethod
    def from_rationals(cls, weights: Iterable) -> "WeightVector":
        """Canonicalise explicit weights in (0, 1] to heavy/light form.

        Raises ``ValueError`` if the weights are not heavy/light (the moduli
        fan is unbalanced for such weights) or if a light weight precedes a
        heavy one.
        """
        w = [Fraction(x) for x in weights]
        n = len(w)
        if any(not (0 < x <= 1) for x in w):
            raise ValueError("weights must lie in (0, 1]")
        heavy = [all(w[i] + w[j] > 1 for j in range(n) if j != i) for i in range(n)]
        small = [not heavy[i] and all(heavy[j] for j in range(n) if j != i and w[i] + w[j] > 1)
                 for i in range(n)]
        if not all(h or s for h, s in zip(heavy, small)):
            raise ValueError("weight vector is not heavy/light: the tropical moduli space "
                             "would not be a balanced fan")
        if sum(x for x, h in zip(w, heavy) if not h) >= 1:
            raise ValueError("small weights sum to at least 1; weight vector is not heavy/light "
                             "and the tropical moduli space would not be a balanced fan")
        m = heavy.count(False)
        if heavy != [True] * (n - m) + [False] * m:
            raise ValueError("heavy weights must precede light weights")
        return cls(n, m)

    @property
    def heavy(self) -> frozenset[int]:
        return frozenset(range(1, self.n - self.m + 1))

    @property
    def light(self) -> frozenset[int]:
        return frozenset(range(self.n - self.m + 1, self.n + 1))

    @property
    def marks(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))

    def is_heavy(self, mark: int) -> bool:
        return 1 <= mark <= self.n - self.m

    def is_light(self, mark: int) -> bool:
        return self.n - self.m < mark <= self.n

    def at_most_one(self, marks: Iterable[int]) -> bool:
        """Whether the total weight of ``marks`` is <= 1."""
        marks = list(marks)
        h = sum(1 for i in marks if self.is_heavy(i))
        return h == 0 or (h == 1 and len(marks) == 1)

    def exceeds_one(self, marks: Iterable[int]) -> bool:
        """Whether the total weight of ``marks`` is > 1."""
        return not self.at_most_one(marks)

    def explicit(self, eps: Fraction | None = None) -> tuple[Fraction, ...]:
        """A concrete rational representative, by default ``eps = 1/(m+1)``."""
        eps = Fraction(1, self.m + 1) if eps is None else Fraction(eps)
        return (Fraction(1),) * (self.n - self.m) + (eps,) * self.m

    def to_json(self) -> dict:
        return {"heavy": self.n - self.m, "light": self.m}

    def __str__(self) -> str:
        h = self.n - self.m
        return f"(1^{h}, eps^{self.m})" if self.m else f"(1^{h})"


@dataclass(frozen=True)
class SetPartition:
    """A partition of a finite set of marks, parts ordered by least element."""

    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        parts = tuple(sorted((frozenset(p) for p in self.parts), key=min))
        if any(not p for p in parts):
            raise ValueError("parts must be nonempty")
        if sum(len(p) for p in parts) != len(frozenset().union(*parts)):
            raise ValueError("parts must be pairwise disjoint")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: Iterable[int]) -> "SetPartition":
        return cls(tuple(frozenset(p) for p in parts))

    @property
    def ground(self) -> frozenset[int]:
        return frozenset().union(*self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def block_of(self, mark: int) -> frozenset[int]:
        return next(p for p in self.parts if mark in p)

    def __str__(self) -> str:
        return "|".join("".join(map(str, sorted(p))) if all(i < 10 for i in p)
                        else ",".join(map(str, sorted(p))) for p in self.parts)


class PsiExponents(tuple):
    """Exponent vector ``K = (k_1, ..., k_n)``; ``K.of(i)`` is the exponent of mark ``i``."""

    def __new__(cls, k: Iterable[int]):
        k = tuple(int(x) for x in k)
        if any(x < 0 for x in k):
            raise ValueError("psi exponents must be nonnegative")
        return super().__new__(cls, k)

    def of(self, mark: int) -> int:
        return self[mark - 1]

    @property
    def total(self) -> int:
        return sum(self)

    @classmethod
    def unit(cls, n: int, mark: int) -> "PsiExponents":
        return cls(int(i == mark) for i in range(1, n + 1))


def multinomial(top: int, parts: Sequence[int]) -> int:
    """``top! / prod(parts_i!)``, and 0 if ``top`` or any part is negative."""
    if top < 0 or any(p < 0 for p in parts):
        return 0
    if sum(parts) != top:
        raise ValueError(f"parts {tuple(parts)} do not sum to {top}")
    out = factorial(top)
    for p in parts:
        out //= factorial(p)
    return out


def set_partitions(ground: Iterable[int]) -> Iterator[SetPartition]:
    """All set partitions of ``ground`` (Bell-number many), in a fixed order."""
    elems = sorted(ground)

    def grow(i: int, blocks: list[list[int]]):
        if i == len(elems):
            yield SetPartition(tuple(frozenset(b) for b in blocks))
            return
        x = elems[i]
        for b in blocks:
            b.append(x)
            yield from grow(i + 1, blocks)
            b.pop()
        blocks.append([x])
        yield from grow(i + 1, blocks)
        blocks.pop()

    yield from grow(0, [])


def _partition_key(p: SetPartition):
    return tuple(tuple(sorted(b)) for b in p.parts)


@lru_cache(maxsize=None)
def _unstable(S: frozenset[int], w: WeightVector) -> tuple[SetPartition, ...]:
    heavy = [frozenset([i]) for i in sorted(S) if w.is_heavy(i)]
    lights = sorted(i for i in S if w.is_light(i))
    out = [SetPartition(tuple(heavy) + p.parts) for p in set_partitions(lights)]
    return tuple(sorted(out, key=_partition_key))


def unstable_partitions(S: Iterable[int], w: WeightVector) -> tuple[SetPartition, ...]:
    """Totally w-unstable partitions of ``S``: every part has weight at most 1.

    For heavy/light weights the heavy marks are singletons and the light marks
    are partitioned freely.
    """
    return _unstable(frozenset(S), w)


def is_admissible(P: SetPartition, S: Iterable[int]) -> bool:
    """Whether some union of parts of ``P`` is exactly ``S``."""
    S = frozenset(S)
    covered = frozenset().union(*(p for p in P.parts if p & S))
    return covered == S


def p_sequence(K: Sequence[int], P: SetPartition) -> tuple[int, ...]:
    """Per-part values ``1 - |P_i| + sum of k_j over P_i``."""
    return tuple(1 - len(part) + sum(K[j - 1] for j in part) for part in P.parts)


def _signed_term(S_size: int, K: Sequence[int], P: SetPartition) -> int:
    seq = p_sequence(K, P)
    sign = -1 if (S_size - len(P)) % 2 else 1
    return sign * multinomial(sum(seq), seq)


def tlm(S: Iterable[int], K: Sequence[int], w: WeightVector) -> int:
    """Tropical local multiplicity of a vertex carrying the marks ``S``.

    An empty ``S`` contributes the empty partition only, giving 1.
    """
    S = frozenset(S)
    return sum(_signed_term(len(S), K, P) for P in unstable_partitions(S, w))


def tlm_restricted(S: Iterable[int], K: Sequence[int], w: WeightVector, t2: int, N: int) -> int:
    """The ``tlm`` sum restricted to partitions separating ``t2`` and ``N``."""
    S = frozenset(S)
    if t2 == N or t2 not in S or N not in S:
        raise ValueError("t2 and N must be distinct marks of S")
    return sum(_signed_term(len(S), K, P) for P in unstable_partitions(S, w)
               if t2 not in P.block_of(N))
