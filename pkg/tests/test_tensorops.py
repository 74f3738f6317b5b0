import itertools
import random

import numpy as np
import pytest

from gaudinlab.rationals import QQ, ZERO, ONE, rand_rational
from gaudinlab.partitions import Partition, Permutation, alpha_element
from gaudinlab.tensorops import (BackendMixError, TensorOperator,
                                 diagonal_h_action, elementary_unit,
                                 flatten_index, permutation_operator,
                                 unflatten_index)


def random_operator(rng, factors, N):
    dim = N ** len(factors)
    mat = np.array([[rand_rational(rng, -3, 3) for _ in range(dim)]
                    for _ in range(dim)], dtype=object)
    return TensorOperator(tuple(factors), N, mat)


def kron_pair(a, b):
    """Oracle tensor product on two single-factor operators via np.kron."""
    return np.kron(a, b)


def test_index_layout_round_trip():
    for N, L in [(2, 2), (3, 2), (2, 3), (3, 4)]:
        if N ** L > 81:
            continue
        for idx in range(N ** L):
            digits = unflatten_index(idx, L, N)
            assert flatten_index(digits, N) == idx


def test_elementary_unit_basics():
    N = 2
    single = elementary_unit(1, 2, 1, (1,), N)
    expect = np.full((2, 2), ZERO, dtype=object)
    expect[0, 1] = ONE
    assert (single.mat == expect).all()
    total = TensorOperator.zeros((1, 2), N)
    for i in range(1, N + 1):
        total = total + elementary_unit(i, i, 2, (1, 2), N)
    assert total == TensorOperator.identity((1, 2), N)
    with pytest.raises(ValueError):
        elementary_unit(0, 1, 1, (1,), N)
    with pytest.raises(ValueError):
        elementary_unit(1, 1, 5, (1,), N)


def test_swap_from_elementary_units():
    N = 2
    total = TensorOperator.zeros((1, 2), N)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            total = total + (elementary_unit(j, i, 1, (1, 2), N)
                             @ elementary_unit(i, j, 2, (1, 2), N))
    swap = permutation_operator(Permutation.transposition((1, 2), 1, 2), (1, 2), N)
    assert total == swap
    expect = np.full((4, 4), ZERO, dtype=object)
    for r, c in [(0, 0), (1, 2), (2, 1), (3, 3)]:
        expect[r, c] = ONE
    assert (swap.mat == expect).all()


def test_diagonal_action_examples():
    h = (QQ(1), QQ(2))
    assert diagonal_h_action(h, (), (1, 2), 2) == TensorOperator.identity((1, 2), 2)
    a, b = QQ(3), QQ(7)
    single = diagonal_h_action((a, b), (2,), (2,), 2)
    assert [single.mat[i, i] for i in range(2)] == [a, b]
    both = diagonal_h_action(h, (1, 2), (1, 2), 2)
    assert [both.mat[i, i] for i in range(4)] == [QQ(1), QQ(2), QQ(2), QQ(4)]
    with pytest.raises(ValueError):
        diagonal_h_action(h, (3,), (1, 2), 2)


def test_diagonal_actions_multiply_over_disjoint_factors():
    h = (QQ(2), QQ(5))
    left = diagonal_h_action(h, (1,), (1, 2, 3), 2)
    right = diagonal_h_action(h, (2, 3), (1, 2, 3), 2)
    assert left @ right == diagonal_h_action(h, (1, 2, 3), (1, 2, 3), 2)


def test_permutation_operator_identity_and_projection():
    dom = (1, 2)
    ident = permutation_operator(Permutation.identity(dom), dom, 3)
    assert ident == TensorOperator.identity(dom, 3)
    image = permutation_operator(alpha_element([2], dom), dom, 2)
    assert image @ image == image.scale(QQ(2))


def test_permutation_action_direction():
    # sigma sends factor content v_k to slot sigma(k): component at slot k
    # of the output is the input component at sigma^{-1}(k)
    N = 2
    dom = (1, 2, 3)
    sigma = Permutation(dom, (2, 3, 1))  # 1->2, 2->3, 3->1
    op = permutation_operator(sigma, dom, N)
    vec = np.full(N ** 3, ZERO, dtype=object)
    vec[flatten_index((1, 0, 0), N)] = ONE  # e2 x e1 x e1
    out = op.mat.dot(vec)
    expect_idx = flatten_index((0, 1, 0), N)  # e1 x e2 x e1
    assert out[expect_idx] == ONE and sum(1 for x in out if x != 0) == 1


def test_partial_trace_on_elementary_tensors():
    rng = random.Random(3)
    N = 2
    for _ in range(5):
        a = np.array([[rand_rational(rng) for _ in range(N)] for _ in range(N)],
                     dtype=object)
        b = np.array([[rand_rational(rng) for _ in range(N)] for _ in range(N)],
                     dtype=object)
        ab = TensorOperator((1, 2), N, kron_pair(a, b))
        tr2 = ab.partial_trace((2,))
        trace_b = sum(b[i, i] for i in range(N))
        assert (tr2.mat == a * trace_b).all()
        tr1 = ab.partial_trace((1,))
        trace_a = sum(a[i, i] for i in range(N))
        assert (tr1.mat == b * trace_a).all()


def test_partial_trace_full_and_composition():
    for N, m in [(2, 3), (3, 2)]:
        factors = tuple(range(1, m + 1))
        ident = TensorOperator.identity(factors, N)
        assert ident.partial_trace(factors).mat[0, 0] == N ** m
        rng = random.Random(N * m)
        op = random_operator(rng, factors, N)
        assert (op.partial_trace((1,)).partial_trace((2,))
                == op.partial_trace((1, 2)))
    with pytest.raises(ValueError):
        ident.partial_trace((9,))


def test_partial_trace_of_swap_is_identity():
    N = 3
    swap = permutation_operator(Permutation.transposition((1, 2), 1, 2), (1, 2), N)
    assert swap.partial_trace((2,)) == TensorOperator.identity((1,), N)


def test_trace_commutes_with_identity_tensor_factor():
    # Tr_2(A (I x B)) = Tr_2((I x B) A) on random exact operators
    rng = random.Random(5)
    for N in (2, 3):
        a = random_operator(rng, (1, 2), N)
        b_single = random_operator(rng, (2,), N)
        b = b_single.embed((1, 2))
        lhs = (a @ b).partial_trace((2,))
        rhs = (b @ a).partial_trace((2,))
        assert lhs == rhs


def test_embed_examples():
    N = 2
    rng = random.Random(8)
    a = random_operator(rng, (2,), N)
    ident = TensorOperator.identity((1, 2, 3), N)
    assert a.embed((1, 2, 3)) @ ident == a.embed((1, 2, 3))
    e = elementary_unit(1, 2, 2, (2,), N)
    expanded = e.embed((1, 2))
    assert expanded == elementary_unit(1, 2, 2, (1, 2), N)
    # embedding acts as identity on the new factors
    picked = expanded.partial_trace((1,))
    assert (picked.mat == e.mat * N).all()


def test_operator_algebra_errors():
    a = TensorOperator.identity((1,), 2)
    b = TensorOperator.identity((1, 2), 2)
    with pytest.raises(ValueError):
        _ = a + b
    with pytest.raises(BackendMixError):
        _ = a + b.partial_trace((2,)).to_float()
    with pytest.raises(BackendMixError):
        a.scale(0.5)


def test_dump_load_round_trip():
    rng = random.Random(13)
    op = random_operator(rng, (1, 3), 2)
    again = TensorOperator.load(op.dump())
    assert op == again
    fl = op.to_float()
    again_float = TensorOperator.load(fl.dump())
    assert again_float.factors == fl.factors
    assert np.allclose(again_float.mat, fl.mat)


def test_transpose_and_symmetry():
    rng = random.Random(17)
    op = random_operator(rng, (1, 2), 2)
    sym = op + op.transpose()
    assert sym.is_symmetric()
    assert (op.transpose().mat == op.mat.T).all()
