"""Seeded random instances and spaces for the verification suites.

Every sampler takes an explicit seed (or rng) so that suite runs are
reproducible; the CLI documents its default seed.
"""

import random

from .rationals import QQ, rand_rational, rand_distinct_rationals
from .gaudin import GaudinInstance
from .quasiexp import QuasiExp, QuasiExpSpace


def seeded_rng(*key):
    return random.Random(":".join(str(k) for k in key))


def random_instance(seed, N, n, lo=-4, hi=4, distinct=True):
    """Generic instance with distinct h and distinct z by default."""
    rng = seeded_rng("inst", seed, N, n)
    if distinct:
        h = rand_distinct_rationals(rng, N, lo, hi)
        z = rand_distinct_rationals(rng, n, lo, hi)
    else:
        h = [rand_rational(rng, lo, hi) for _ in range(N)]
        z = [rand_rational(rng, lo, hi) for _ in range(n)]
    return GaudinInstance(N, n, h, z)


def admissible_instance(seed, N, n, strict=False):
    """Instance plus evaluation point satisfying the positivity hypotheses:
    h_i >= 0 and t >= -z_k (strict versions with strict=True).  About a
    third of the non-strict draws sit exactly on the boundary t = max(-z)."""
    rng = seeded_rng("adm", seed, N, n)
    if strict:
        h = rand_distinct_rationals(rng, N, 1, 5, max_den=3)
    else:
        h = [rand_rational(rng, 0, 4, max_den=3) for _ in range(N)]
    z = rand_distinct_rationals(rng, n, -3, 4, max_den=3)
    tmin = max(-zk for zk in z)
    if strict:
        t = tmin + QQ(rng.randint(1, 8), rng.randint(1, 3))
    elif rng.random() < 1 / 3:
        t = tmin
    else:
        t = tmin + QQ(rng.randint(0, 8), rng.randint(1, 3))
    return GaudinInstance(N, n, h, z), t


def random_polynomial_space(rng, N, extra_degree=2, lo=-3, hi=3):
    """Monic polynomials of distinct degrees: independent by construction."""
    degrees = sorted(rng.sample(range(N + extra_degree), N))
    funcs = []
    for d in degrees:
        coeffs = [rand_rational(rng, lo, hi) for _ in range(d)] + [QQ(1)]
        funcs.append(QuasiExp.from_poly(coeffs))
    return QuasiExpSpace(funcs)


def random_quasiexp_space(rng, N, max_degree=2, lo=-3, hi=3, nonneg_exponents=False):
    """One term per basis function with distinct exponents: independent."""
    exps = rand_distinct_rationals(rng, N, 0 if nonneg_exponents else lo, hi,
                                   max_den=3)
    funcs = []
    for c in exps:
        d = rng.randint(0, max_degree)
        coeffs = [rand_rational(rng, lo, hi) for _ in range(d)] + [QQ(1)]
        funcs.append(QuasiExp([(c, coeffs)]))
    return QuasiExpSpace(funcs)
