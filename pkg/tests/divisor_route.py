"""Products of psi-classes by iterated Weil divisors of rational functions.

For each mark a function ``g`` with ``div(g) = psi_{N,w}`` on the full fan is
found by solving the linear system in its ray values; products are then
``div(g_1) . div(g_2) ... = div(g_1|div(g_2|...))``.  This uses nothing from
the closed form or the minimum formula.
"""

from fractions import Fraction
from functools import lru_cache

from tropsi import _linalg as la
from tropsi.divisors import RationalFunctionOnFan, weil_divisor
from tropsi.fan import codim_one_faces, moduli_fan, ray_vector
from tropsi.psi import psi_class
from tropsi.trees import valid_splits


def divisor_rows(z):
    """Face -> row of the linear map (ray values) -> weight of the Weil divisor."""
    rays = valid_splits(z.w)
    idx = {s: i for i, s in enumerate(rays)}
    rows = {}
    for tau, star in codim_one_faces(z).items():
        row = [Fraction(0)] * len(rays)
        total = (Fraction(0),) * len(ray_vector(rays[0], z.w))
        for sigma, s in star:
            row[idx[s]] += z[sigma]
            total = tuple(a + z[sigma] * b for a, b in zip(total, ray_vector(s, z.w)))
        coeffs = la.solve([ray_vector(r, z.w) for r in tau.sorted_splits], total)
        for r, c in zip(tau.sorted_splits, coeffs):
            row[idx[r]] -= c
        rows[tau] = row
    return rays, rows


@lru_cache(maxsize=None)
def psi_function(N, w):
    fan = moduli_fan(w)
    rays, rows = divisor_rows(fan)
    psi = psi_class(N, w)
    faces = list(rows)
    columns = [[rows[t][j] for t in faces] for j in range(len(rays))]
    values = la.solve(columns, [psi[t] for t in faces])
    if values is None:
        return None
    return RationalFunctionOnFan(w, dict(zip(rays, values)))


def product(q):
    z = moduli_fan(q.w)
    for N in reversed(q.factors):
        z = weil_divisor(psi_function(N, q.w), z)
    return z
