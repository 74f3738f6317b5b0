"""Schur polynomials and power sums at explicit eigenvalue lists.

Two independent evaluation routes are provided: a division-free
Jacobi-Trudi determinant in complete homogeneous polynomials (valid for
repeated eigenvalues), and the character-weighted power-sum expansion.
The bialternant ratio is included as a cross-check for distinct
eigenvalues.
"""

from functools import cache
from math import factorial

from .rationals import QQ
from . import linalg
from .partitions import (Partition, character, cycle_type_order, partitions_of)


def power_sum(k, values):
    """p_k = sum_i h_i^k for k >= 1."""
    if k < 1:
        raise ValueError("power sums are defined for k >= 1")
    return sum((QQ(h) ** k for h in values), QQ(0))


def power_sum_product(rho, values):
    out = QQ(1)
    for k in Partition(rho):
        out = out * power_sum(k, values)
    return out


def complete_homogeneous(k, values):
    """h_k(values) by the variable-at-a-time recurrence (division-free)."""
    if k < 0:
        return QQ(0)
    table = [QQ(1)] + [QQ(0)] * k
    for x in values:
        x = QQ(x)
        for d in range(1, k + 1):
            table[d] = table[d] + x * table[d - 1]
    return table[k]


def schur_eval(lam, values):
    """s_lam(values) via the Jacobi-Trudi determinant; 0 when l(lam) > N."""
    lam = Partition(lam)
    values = tuple(QQ(h) for h in values)
    if lam.length > len(values):
        return QQ(0)
    l = lam.length
    if l == 0:
        return QQ(1)
    mat = [[complete_homogeneous(lam[i] - i + j, values) for j in range(l)]
           for i in range(l)]
    return linalg.det(mat)


def schur_bialternant(lam, values):
    """det(h_j^{lam_i+N-i}) / Vandermonde; requires distinct eigenvalues."""
    lam = Partition(lam)
    values = tuple(QQ(h) for h in values)
    n = len(values)
    if lam.length > n:
        return QQ(0)
    if len(set(values)) != n:
        raise ValueError("bialternant ratio needs distinct eigenvalues")
    num = [[values[j] ** (lam.part(i + 1) + n - 1 - i) for j in range(n)]
           for i in range(n)]
    den = [[values[j] ** (n - 1 - i) for j in range(n)] for i in range(n)]
    return linalg.det(num) / linalg.det(den)


@cache
def power_sum_expansion(lam):
    """s_lam = sum over cycle types rho of (chi^lam(rho)/z_rho) p_rho.

    Returned as a tuple of (coefficient, rho) pairs; the empty partition
    expands to the single pair (1, ()).
    """
    lam = Partition(lam)
    out = []
    for rho in partitions_of(lam.size):
        chi = character(lam, rho)
        if chi:
            out.append((QQ(chi, cycle_type_order(rho)), rho))
    return tuple(out)


def schur_via_power_sums(lam, values):
    """s_lam(values) from the character-weighted power-sum expansion."""
    total = QQ(0)
    for coeff, rho in power_sum_expansion(Partition(lam)):
        total = total + coeff * power_sum_product(rho, values)
    return total
