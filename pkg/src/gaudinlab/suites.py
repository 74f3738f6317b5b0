"""Verification suite drivers shared by the CLI and the acceptance tests.

Each driver returns a JSON-friendly-ish report dict with a "checks" list
and an overall "pass" flag; exact scalars stay rational until the CLI
serializes them.
"""

import itertools
from math import factorial

from .rationals import QQ, ZERO, ONE
from .partitions import (Partition, all_permutations, alpha_element,
                         conjugacy_class_size, character, falling_factorial,
                         partitions_of, partitions_upto)
from .symfunc import power_sum_product, schur_eval
from .tensorops import TensorOperator, diagonal_h_action, permutation_operator
from .gaudin import (build_T_definitional, build_T_partial_trace,
                     build_T_jacobi_trudi, build_beta, matrix_derivative,
                     operators_commute)
from . import polys
from .quasiexp import (verify_jacobi_trudi, verify_dual_jacobi_trudi,
                       verify_translation_identity, wronskian_profile)


def regular_point(space, t):
    """First point t, t+1, t+2, .. that is not a Wronskian zero."""
    _, g = wronskian_profile(space)
    probe = QQ(t)
    while polys.peval(g, probe) == 0:
        probe = probe + 1
    return probe


def suite_route_agreement(inst, max_size=3):
    """Definitional vs partial-trace vs dual Jacobi-Trudi, coefficientwise."""
    checks = []
    singles = None
    for lam in partitions_upto(max_size):
        a = build_T_definitional(lam, inst)
        b = build_T_partial_trace(lam, inst)
        if singles is None:
            cmax = max_size + max(p.length for p in partitions_upto(max_size))
            singles = {c: build_T_definitional(Partition([1] * c), inst)
                       for c in range(cmax + 1)}
        c = build_T_jacobi_trudi(lam, inst, single_columns=singles)
        ok = (a == b) and (a == c)
        checks.append({"partition": str(lam), "trace_route": a == b,
                       "jacobi_trudi_route": a == c, "pass": ok})
    return {"suite": "routes", "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def suite_commutation(inst, max_size=3,
                      sample_pairs=((0, 1), (QQ(1, 2), -2), (3, QQ(5, 3)))):
    """T_lam(u0) T_mu(v0) = T_mu(v0) T_lam(u0) at rational sample pairs."""
    lams = partitions_upto(max_size)
    ops = {lam: build_T_definitional(lam, inst) for lam in lams}
    checks = []
    for i, lam in enumerate(lams):
        for mu in lams[i:]:
            for u0, v0 in sample_pairs:
                ok = operators_commute(ops[lam].evaluate(QQ(u0)),
                                       ops[mu].evaluate(QQ(v0)))
                checks.append({"lam": str(lam), "mu": str(mu),
                               "u0": str(u0), "v0": str(v0), "pass": ok})
    return {"suite": "commute", "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def suite_beta_specialization(inst, max_size=4):
    """T_lam(u) at h = 0 equals beta_lam(u), coefficient by coefficient."""
    inst0 = inst.with_h([ZERO] * inst.N)
    checks = []
    for lam in partitions_upto(max_size):
        ok = build_T_definitional(lam, inst0) == build_beta(lam, inst0)
        checks.append({"partition": str(lam), "pass": ok})
    return {"suite": "beta-specialization", "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def suite_trace_identities(N, h, max_L=4, max_K=2):
    """The five partial-trace identities, plus the four equivalent forms of
    the traced product when no eigenvalue vanishes."""
    h = tuple(QQ(x) for x in h)
    checks = []

    def add(name, detail, ok):
        checks.append({"identity": name, "detail": detail, "pass": ok})

    for r in range(1, max_L + 1):
        L = tuple(range(1, r + 1))
        hL = diagonal_h_action(h, L, L, N)
        perms = list(all_permutations(L))
        for sigma in perms:
            P = permutation_operator(sigma, L, N)
            lhs = (hL @ P).trace()
            rhs = power_sum_product(sigma.cycle_type(), h)
            add("full-trace-power-sum", f"r={r} cyc={sigma.cycle_type()}",
                lhs == rhs)

        subsets = [K for k in range(0, max_K + 1)
                   for K in itertools.combinations(L, k)]
        for sigma in perms:
            P = permutation_operator(sigma, L, N)
            for K in subsets:
                traced = tuple(l for l in L if l not in K)
                hrest = diagonal_h_action(h, traced, L, N)
                hK_small = diagonal_h_action(h, K, K, N) if K else \
                    TensorOperator.identity((), N)
                lhs_d = (hrest @ P).partial_trace(traced)
                rhs_d = (P @ hrest).partial_trace(traced)
                add("trace-commute", f"r={r} K={K}", lhs_d == rhs_d)
                full = diagonal_h_action(h, L, L, N)
                lhs_e1 = (full @ P).partial_trace(traced)
                rhs_e1 = hK_small @ lhs_d
                add("factor-left", f"r={r} K={K}", lhs_e1 == rhs_e1)
                lhs_e2 = (P @ full).partial_trace(traced)
                rhs_e2 = lhs_d @ hK_small
                add("factor-right", f"r={r} K={K}", lhs_e2 == rhs_e2)

        for lam in partitions_of(r):
            alpha = alpha_element(lam, L)
            A = permutation_operator(alpha, L, N)
            lhs = (hL @ A).trace()
            rhs = QQ(factorial(r)) * schur_eval(lam, h)
            add("full-trace-schur", f"lam={lam}", lhs == rhs)

            # derivative identity, against the matrix-derivative machinery
            expansion = tuple(
                (QQ(character(lam, rho)) * conjugacy_class_size(rho), rho)
                for rho in partitions_of(r))
            for k in range(0, min(max_K, r) + 1):
                K = tuple(range(1, k + 1))
                lhs_op = matrix_derivative(expansion, K, h, N)
                traced = L[k:]
                hrest = diagonal_h_action(h, traced, L, N)
                rhs_op = (hrest @ A).partial_trace(traced) \
                    .scale(falling_factorial(r, k))
                add("derivative", f"lam={lam} k={k}", lhs_op == rhs_op)

            if all(x != 0 for x in h):
                hinv = tuple(ONE / x for x in h)
                for k in range(0, min(max_K, r) + 1):
                    K = tuple(range(1, k + 1))
                    traced = L[k:]
                    hrest = diagonal_h_action(h, traced, L, N)
                    full = diagonal_h_action(h, L, L, N)
                    hKinv = diagonal_h_action(hinv, K, K, N) if K else \
                        TensorOperator.identity((), N)
                    base = (hrest @ A).partial_trace(traced)
                    w1 = hKinv @ (full @ A).partial_trace(traced)
                    w3 = (A @ hrest).partial_trace(traced)
                    w4 = (A @ full).partial_trace(traced) @ hKinv
                    add("four-ways", f"lam={lam} k={k}",
                        base == w1 and base == w3 and base == w4)

    return {"suite": "trace-identities", "N": N, "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def suite_jacobi_trudi(spaces, max_size, t, m_extra=2):
    """Both minor identities on the given spaces, at two m values each."""
    checks = []
    for idx, space in enumerate(spaces):
        ts = regular_point(space, t)
        for lam in partitions_upto(max_size):
            if lam.size == 0:
                continue
            for m in (max(lam.length, 1), lam.length + m_extra):
                rep = verify_jacobi_trudi(space, lam, m, ts)
                checks.append({"space": idx, "partition": str(lam), "m": m,
                               "t": str(ts), "kind": "row", "pass": rep["pass"]})
            for m in (max(lam.part(1), 1), lam.part(1) + m_extra):
                rep = verify_dual_jacobi_trudi(space, lam, m, ts)
                checks.append({"space": idx, "partition": str(lam), "m": m,
                               "t": str(ts), "kind": "column", "pass": rep["pass"]})
    return {"suite": "jacobi-trudi", "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def suite_translation(spaces, t, bound):
    """Translation identity for every mu with |mu| <= bound - 1."""
    checks = []
    for idx, space in enumerate(spaces):
        for mu in partitions_upto(max(bound - 1, 0)):
            rep = verify_translation_identity(space, mu, t, bound)
            checks.append({"space": idx, "mu": str(mu), "mode": rep["mode"],
                           "pass": rep["pass"]})
    return {"suite": "translation", "checks": checks,
            "pass": all(c["pass"] for c in checks)}
