import random

import pytest

from gaudinlab.rationals import QQ, rand_rational, rand_distinct_rationals
from gaudinlab import linalg
from gaudinlab.partitions import Partition, partitions_of, partitions_upto
from gaudinlab.symfunc import (complete_homogeneous, power_sum,
                               power_sum_expansion, schur_bialternant,
                               schur_eval, schur_via_power_sums)


def schur_brute(lam, values):
    """Sum over semistandard tableaux of shape lam with entries 1..N."""
    lam = Partition(lam)
    n = len(values)
    if lam.length > n:
        return QQ(0)
    rows = list(lam)

    def fill(row_idx, prev_row):
        if row_idx == len(rows):
            yield []
            return
        width = rows[row_idx]

        def build(col, current):
            if col == width:
                for rest in fill(row_idx + 1, current):
                    yield [current] + rest
                return
            lo = current[col - 1] if col else 1
            if prev_row is not None and col < len(prev_row):
                lo = max(lo, prev_row[col] + 1)
            for v in range(lo, n + 1):
                yield from build(col + 1, current + [v])

        yield from build(0, [])

    total = QQ(0)
    for tab in fill(0, None):
        prod = QQ(1)
        for row in tab:
            for v in row:
                prod *= values[v - 1]
        total += prod
    return total


def test_power_sum_examples():
    a, b = QQ(2), QQ(7)
    assert power_sum(1, (a, b)) == a + b
    assert power_sum(2, (QQ(1), QQ(1))) == 2
    assert power_sum(3, (QQ(1), QQ(2))) == 9
    with pytest.raises(ValueError):
        power_sum(0, (a,))


def test_schur_basic_values():
    h = (QQ(3), QQ(5))
    assert schur_eval([], h) == 1
    assert schur_eval([1], h) == 8
    assert schur_eval([2, 1], (QQ(1), QQ(1))) == 2
    assert schur_brute([2, 1], (QQ(1), QQ(1))) == 2
    assert schur_eval([1, 1, 1], h) == 0  # length exceeds N


def test_schur_power_sum_examples():
    h = (QQ(2), QQ(-1), QQ(4))
    tr1, tr2 = power_sum(1, h), power_sum(2, h)
    assert schur_via_power_sums([2], h) == (tr1 ** 2 + tr2) / 2
    assert schur_via_power_sums([1, 1], h) == (tr1 ** 2 - tr2) / 2
    assert schur_via_power_sums([], h) == 1


def test_schur_routes_agree_including_repeated_eigenvalues():
    rng = random.Random(7)
    for trial in range(12):
        n = rng.randint(1, 4)
        if trial % 3 == 0:
            base = rand_rational(rng)
            h = tuple([base] * n)  # fully repeated: bialternant would divide by 0
        else:
            h = tuple(rand_rational(rng) for _ in range(n))
        for lam in partitions_upto(5):
            assert schur_eval(lam, h) == schur_via_power_sums(lam, h), (lam, h)


def test_schur_matches_brute_monomial_expansion():
    rng = random.Random(11)
    for _ in range(4):
        n = rng.randint(1, 3)
        h = tuple(rand_rational(rng, -3, 3) for _ in range(n))
        for lam in partitions_upto(4):
            assert schur_eval(lam, h) == schur_brute(lam, h), (lam, h)


def test_bialternant_cross_check_distinct_eigenvalues():
    rng = random.Random(13)
    for _ in range(5):
        n = rng.randint(1, 4)
        h = tuple(rand_distinct_rationals(rng, n))
        for lam in partitions_upto(4):
            assert schur_eval(lam, h) == schur_bialternant(lam, h)
    with pytest.raises(ValueError):
        schur_bialternant([1], (QQ(1), QQ(1)))


def test_monomial_positivity_on_nonnegative_values():
    rng = random.Random(17)
    for _ in range(20):
        n = rng.randint(1, 4)
        h = tuple(QQ(rng.randint(0, 6), rng.randint(1, 3)) for _ in range(n))
        strictly_positive = all(x > 0 for x in h)
        for lam in partitions_upto(5):
            value = schur_eval(lam, h)
            assert value >= 0
            if strictly_positive and lam.length <= n:
                assert value > 0


def test_classical_jacobi_trudi_identities():
    rng = random.Random(19)

    def single_row(c, h):
        return schur_eval([c] if c > 0 else [], h) if c >= 0 else QQ(0)

    def single_col(c, h):
        return schur_eval([1] * c, h) if c >= 0 else QQ(0)

    for _ in range(4):
        n = rng.randint(1, 4)
        h = tuple(rand_rational(rng) for _ in range(n))
        for lam in partitions_upto(5):
            if lam.size == 0:
                continue
            l = lam.length
            row_mat = [[single_row(lam.part(i + 1) - i + j, h)
                        for j in range(l)] for i in range(l)]
            assert linalg.det(row_mat) == schur_eval(lam, h), lam
            conj = lam.conjugate()
            m = lam.part(1)
            col_mat = [[single_col(conj.part(i + 1) - i + j, h)
                        for j in range(m)] for i in range(m)]
            assert linalg.det(col_mat) == schur_eval(lam, h), lam


def test_power_sum_expansion_weights():
    # the expansion of a single row is sum over cycle types of p_rho / z_rho
    from gaudinlab.partitions import cycle_type_order
    for m in range(1, 6):
        expansion = dict()
        for coeff, rho in power_sum_expansion(Partition([m])):
            expansion[rho] = coeff
        for rho in partitions_of(m):
            assert expansion[rho] == QQ(1, cycle_type_order(rho))
    assert power_sum_expansion(Partition()) == ((QQ(1), Partition()),)


def test_complete_homogeneous_small():
    h = (QQ(1), QQ(2))
    # h_2(x, y) = x^2 + xy + y^2
    assert complete_homogeneous(2, h) == 7
    assert complete_homogeneous(0, h) == 1
    assert complete_homogeneous(-1, h) == 0
