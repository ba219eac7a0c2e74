"""Exhaustive invariant suites over all heavy/light weight vectors up to a given n."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import factorial, prod
from typing import Callable, Iterator

from .combinatorics import WeightVector, multinomial, tlm, tlm_restricted
from .divisors import (
    K_constant,
    V_N_w,
    boundary_divisor,
    f_N_w,
    m_tau,
    phi_I,
    positive_representation,
    weil_divisor,
)
from .fan import check_balancing, moduli_fan
from .psi import (
    PsiProductQuery,
    degree,
    intersect_product,
    intersect_recursive,
    psi_class,
    psi_class_pushforward,
)
from .trees import Split, enumerate_types

__all__ = ["SuiteResult", "SUITES", "run_suite", "weight_vectors", "queries"]

Check = tuple[str, bool]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checked: int
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checked - len(self.failures)}/{self.checked} checks"
        if self.failures:
            line += f"; first counterexample: {self.failures[0]}"
        return line


def weight_vectors(n: int) -> list[WeightVector]:
    return [WeightVector(n, m) for m in range(n - 1)]


def queries(w: WeightVector, max_entry: int = 3, total: int | None = None) -> Iterator[PsiProductQuery]:
    """Exponent vectors with entries up to ``max_entry`` and total at most ``n - 3``."""
    top = w.n - 3
    for K in product(range(max_entry + 1), repeat=w.n):
        s = sum(K)
        if s <= top and (total is None or s == total):
            yield PsiProductQuery(w, K)


def _balance(w: WeightVector) -> list[Check]:
    out = [(f"fan {w}", bool(check_balancing(moduli_fan(w))))]
    for N in range(1, w.n + 1):
        out.append((f"psi_{N} {w}", bool(check_balancing(psi_class(N, w)))))
    for q in queries(w):
        if 0 < q.codim < w.n - 3:
            out.append((f"product {tuple(q.K)} {w}", bool(check_balancing(intersect_product(q)))))
    return out


def _divisor(w: WeightVector) -> list[Check]:
    n = w.n
    out = []
    fan = moduli_fan(w)
    for N in range(1, n + 1):
        K = K_constant(N, w)
        out.append((f"K({N}) = |V| {w}", K == len(V_N_w(N, w))))
        d = weil_divisor(f_N_w(N, w), fan)
        out.append((f"div f_{N} = {K} psi_{N} {w}", d == psi_class(N, w).scaled(K)))
        out.append((f"div f_{N} balanced {w}", bool(check_balancing(d))))
    if w.m == 0:
        for r in range(2, n // 2 + 1):
            for I in combinations(range(1, n + 1), r):
                if r == n - r and 1 not in I:
                    continue
                s = Split.of(I, n)
                D = boundary_divisor(s, n)
                out.append((f"D_{s} closed form n={n}", D == weil_divisor(phi_I(s, n), fan)))
    return out


def _oracle(w: WeightVector) -> list[Check]:
    n = w.n
    out = []
    for N in range(1, n + 1):
        out.append((f"psi_{N} pushforward {w}", psi_class(N, w) == psi_class_pushforward(N, w)))
    for q in queries(w):
        closed = intersect_product(q)
        recursive = intersect_recursive(q)
        label = f"K={tuple(q.K)} {w}"
        out.append((f"closed = recursive {label}", closed == recursive))
        if len(set(q.factors)) > 1:
            orders = set(permutations(q.factors))
            out.append((f"order independence {label}",
                        all(intersect_recursive(q, o) == recursive for o in sorted(orders))))
        if q.codim == n - 3:
            apex = closed[enumerate_types(n, w, n - 3)[0]]
            out.append((f"degree {label}", degree(q) == apex))
        if w.m == 0:
            ok = all(c == prod(multinomial(sum(q.K.of(i) for i in v.marks), [q.K.of(i) for i in sorted(v.marks)])
                               for v in t.vertices)
                     for t, c in closed.items())
            out.append((f"Kerber-Markwig weights {label}", ok))
            if q.codim == n - 3:
                expected = factorial(n - 3) // prod(factorial(k) for k in q.K)
                out.append((f"top degree (n-3)!/prod k! {label}", degree(q) == expected))
    return out


def _appendix(w: WeightVector) -> list[Check]:
    n = w.n
    out = []
    for r in range(1, n + 1):
        for S in combinations(range(1, n + 1), r):
            A1 = A2 = True
            for kS in product(range(4), repeat=r):
                K = [0] * n
                for i, k in zip(S, kS):
                    K[i - 1] = k
                value = tlm(S, K, w)
                A1 = A1 and value >= 0
                for N in S:
                    for t2 in S:
                        if t2 == N or not any(w.is_heavy(t) for t in S if t not in (N, t2)):
                            continue
                        A2 = A2 and value <= tlm_restricted(S, K, w, t2, N)
            out.append((f"tlm >= 0 S={S} {w}", A1))
            out.append((f"restricted tlm bound S={S} {w}", A2))
    for N in range(1, n + 1):
        psi = psi_class(N, w)
        for tau in enumerate_types(n, w, 1):
            M = m_tau(tau, N, w)
            out.append((f"M_tau in {{0,1}} at {tau}, N={N} {w}", M in (0, 1) and (M == 1) == (tau in psi)))
    return out


def _posrep(w: WeightVector) -> list[Check]:
    out = []
    for N in range(1, w.n + 1):
        for s in enumerate_types(w.n, w, w.n - 4):
            (split,) = s.splits
            try:
                positive_representation(split, N, w)
                out.append((f"positive representation v_{split}, N={N} {w}", True))
            except ArithmeticError:
                out.append((f"positive representation v_{split}, N={N} {w}", False))
    return out


SUITES: dict[str, tuple[Callable[[WeightVector], list[Check]], ...]] = {
    "balance": (_balance,),
    "divisor": (_divisor, _posrep),
    "oracle": (_oracle,),
    "appendix": (_appendix,),
}


def _run_case(args) -> list[Check]:
    name, w = args
    return [c for fn in SUITES[name] for c in fn(w)]


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("TROPSI_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(name: str, max_n: int = 6, min_n: int = 4) -> SuiteResult:
    """Run one suite on every heavy/light ``w`` with ``min_n <= n <= max_n``."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    cases = [(name, w) for n in range(min_n, max_n + 1) for w in weight_vectors(n)]
    workers = _workers()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_case, cases))
    else:
        results = [_run_case(c) for c in cases]
    checks = [c for r in results for c in r]
    return SuiteResult(name, len(checks), tuple(label for label, ok in checks if not ok))
