import random
from math import factorial

import pytest

from gaudinlab.rationals import QQ, rand_distinct_rationals
from gaudinlab import linalg
from gaudinlab.partitions import (EMPTY, GroupAlgebraElement, Partition,
                                  Permutation, all_permutations, alpha_element,
                                  character, conjugacy_class_size, cycle_type,
                                  partitions_of, partitions_upto, skew_syt_count,
                                  syt_count)
from gaudinlab.symfunc import power_sum_product, schur_eval


# -- brute-force oracles -------------------------------------------------------

def count_syt_brute(lam):
    """Count standard tableaux by peeling removable corners."""
    lam = Partition(lam)
    if lam.size == 0:
        return 1
    total = 0
    for i in range(lam.length):
        if i == lam.length - 1 or lam[i] > lam[i + 1]:
            smaller = list(lam)
            smaller[i] -= 1
            total += count_syt_brute(Partition(smaller))
    return total


def count_skew_syt_brute(lam, mu):
    """Count standard fillings of lam/mu by peeling outer corners of lam
    that are not in mu."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size == mu.size:
        return 1
    total = 0
    for i in range(lam.length):
        is_corner = (i == lam.length - 1 or lam[i] > lam[i + 1])
        if is_corner and lam[i] > mu.part(i + 1):
            smaller = list(lam)
            smaller[i] -= 1
            total += count_skew_syt_brute(Partition(smaller), mu)
    return total


def characters_from_power_sums(m, rng):
    """Solve p_rho(x) = sum_lam chi^lam(rho) s_lam(x) at random points.

    Uses only power sums and the determinant route for Schur values, so
    it is independent of the Murnaghan-Nakayama recursion.
    """
    lams = partitions_of(m)
    k = len(lams)
    while True:
        points = [rand_distinct_rationals(rng, m, -5, 5) for _ in range(k)]
        smat = [[schur_eval(lam, x) for lam in lams] for x in points]
        if linalg.rank(smat) == k:
            break
    table = {}
    for rho in lams:
        rhs = [power_sum_product(rho, x) for x in points]
        sol = linalg.solve(smat, rhs)
        table[rho] = {lam: sol[i] for i, lam in enumerate(lams)}
    return table


# -- partitions -----------------------------------------------------------------

def test_partition_canonical_form_and_validation():
    assert Partition([3, 1, 0, 0]) == Partition([3, 1])
    assert Partition([]).size == 0 and Partition([]).length == 0
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, -1])


def test_conjugate_examples():
    for m in range(1, 7):
        assert Partition([m]).conjugate() == Partition([1] * m)
    assert EMPTY.conjugate() == EMPTY
    assert Partition([3, 1]).conjugate() == Partition([2, 1, 1])


def test_conjugate_is_involution_and_preserves_size():
    for lam in partitions_upto(6):
        conj = lam.conjugate()
        assert conj.conjugate() == lam
        assert conj.size == lam.size
        assert conj.length == (lam[0] if lam else 0)


def test_graded_lex_order_is_deterministic():
    order = partitions_upto(3)
    assert order == (Partition(), Partition([1]), Partition([1, 1]),
                     Partition([2]), Partition([1, 1, 1]), Partition([2, 1]),
                     Partition([3]))


def test_partition_serialization_round_trip():
    for lam in partitions_upto(5):
        assert Partition.parse(str(lam)) == lam
    assert str(Partition([2, 1])) == "[2,1]"


# -- tableau counts ---------------------------------------------------------------

def test_syt_count_examples():
    assert syt_count(EMPTY) == 1
    for m in range(1, 7):
        assert syt_count([1] * m) == 1
    assert syt_count([2, 1]) == 2


def test_syt_count_matches_enumeration_up_to_size_6():
    for m in range(7):
        for lam in partitions_of(m):
            assert syt_count(lam) == count_syt_brute(lam), lam


def test_skew_syt_examples():
    lam = Partition([3, 2])
    assert skew_syt_count(lam, lam) == 1
    for m in range(6):
        for lam in partitions_of(m):
            assert skew_syt_count(lam, EMPTY) == syt_count(lam)
    assert skew_syt_count([2, 1], [1]) == 2


def test_skew_syt_matches_enumeration():
    for m in range(6):
        for lam in partitions_of(m):
            for mu in partitions_upto(m):
                if lam.contains(mu):
                    assert (skew_syt_count(lam, mu)
                            == count_skew_syt_brute(lam, mu)), (lam, mu)


def test_skew_containment_error():
    with pytest.raises(ValueError):
        skew_syt_count([2], [1, 1])


# -- permutations -----------------------------------------------------------------

def test_cycle_type_examples():
    dom = (1, 2, 3, 4, 5)
    assert Permutation.identity(dom[:3]).cycle_type() == Partition([1, 1, 1])
    assert Permutation.transposition((1, 2, 3), 1, 3).cycle_type() == Partition([2, 1])
    three_cycle = Permutation(dom, (2, 3, 1, 4, 5))
    assert cycle_type(three_cycle) == Partition([3, 1, 1])


def test_permutation_group_axioms():
    dom = (2, 5, 7)
    perms = list(all_permutations(dom))
    assert len(perms) == 6
    for p in perms:
        assert p * p.inverse() == Permutation.identity(dom)
    a, b, c = perms[1], perms[3], perms[5]
    assert (a * b) * c == a * (b * c)


# -- characters -------------------------------------------------------------------

def test_character_trivial_and_sign():
    for m in range(1, 6):
        for rho in partitions_of(m):
            assert character([m], rho) == 1
            sign = (-1) ** (m - rho.length)
            assert character([1] * m, rho) == sign


def test_character_identity_value_is_dimension():
    for m in range(6):
        for lam in partitions_of(m):
            assert character(lam, [1] * m) == syt_count(lam)
    assert character([2, 1], [1, 1, 1]) == 2


def test_character_size_mismatch():
    with pytest.raises(ValueError):
        character([2, 1], [2])


def test_characters_match_power_sum_expansion_oracle():
    rng = random.Random(31)
    for m in range(1, 6):
        table = characters_from_power_sums(m, rng)
        for rho in partitions_of(m):
            for lam in partitions_of(m):
                assert table[rho][lam] == character(lam, rho), (lam, rho)


def test_character_orthogonality():
    for m in range(1, 6):
        lams = partitions_of(m)
        # column orthogonality at the identity
        for rho in lams:
            total = sum(syt_count(lam) * character(lam, rho) for lam in lams)
            expect = factorial(m) if rho == Partition([1] * m) else 0
            assert total == expect, rho
        # row orthogonality with class sizes
        for lam in lams:
            for mu in lams:
                total = sum(conjugacy_class_size(rho)
                            * character(lam, rho) * character(mu, rho)
                            for rho in lams)
                assert total == (factorial(m) if lam == mu else 0)


# -- group algebra and alpha elements ----------------------------------------------

def test_alpha_singleton():
    el = alpha_element([1], (4,))
    assert el == GroupAlgebraElement.unit((4,))


def test_alpha_pair_forms():
    dom = (2, 6)
    ident = GroupAlgebraElement.unit(dom)
    swap = GroupAlgebraElement(dom, {Permutation.transposition(dom, 2, 6): QQ(1)})
    assert alpha_element([2], dom) == ident + swap
    assert alpha_element([1, 1], dom) == ident - swap


def test_alpha_empty_domain_is_unit():
    assert alpha_element(EMPTY, ()) == GroupAlgebraElement.unit(())


def test_alpha_is_central():
    for m in range(1, 5):
        dom = tuple(range(1, m + 1))
        for lam in partitions_of(m):
            assert alpha_element(lam, dom).is_central(), lam


def test_alpha_idempotent_up_to_scale():
    for m in range(1, 5):
        dom = tuple(range(1, m + 1))
        for lam in partitions_of(m):
            alpha = alpha_element(lam, dom)
            scale = QQ(factorial(m), syt_count(lam))
            assert alpha * alpha == alpha.scale(scale), lam


def test_alpha_size_mismatch():
    with pytest.raises(ValueError):
        alpha_element([2], (1, 2, 3))


def test_group_algebra_convolution():
    dom = (1, 2, 3)
    sigma = Permutation(dom, (2, 3, 1))
    a = GroupAlgebraElement(dom, {sigma: QQ(2)})
    b = GroupAlgebraElement(dom, {sigma.inverse(): QQ(1, 2)})
    assert a * b == GroupAlgebraElement.unit(dom)
