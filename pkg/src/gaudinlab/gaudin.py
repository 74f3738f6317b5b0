"""Commuting Hamiltonian families on (C^N)^{tensor n} built three ways.

The family T_lam(u) attached to parameters (N, n, h, z) is constructed
by (1) the defining matrix-derivative expansion, (2) a partial-trace
formula over central group-algebra elements, and (3) a dual
Jacobi-Trudi determinant in the single-column members.  All three are
exact in the rational backend and are cross-checked in the tests; the
h = 0 specialization beta_lam(u) is built directly from isotypic
projectors.

The matrix derivative d_K f(h) is realized by evaluating f on matrices
over the truncated ring Q[e_1..e_k]/(e_i^2) and reading off the
coefficient of e_1*...*e_k.  Templates are computed once on canonical
factors [1..k] and relabeled, which is legitimate because d_K is
symmetric under simultaneous slot relabeling.
"""

import itertools
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .rationals import QQ, ZERO, ONE
from . import polys
from .partitions import Partition, alpha_element
from .symfunc import power_sum_expansion, power_sum_product
from .tensorops import TensorOperator, diagonal_h_action, permutation_operator


class IdentityViolationError(RuntimeError):
    """An identity that must hold algebraically failed: implementation bug."""


class GaudinInstance:
    """Parameter pack: factor dimension N, site count n, eigenvalues h,
    site shifts z."""

    __slots__ = ("N", "n", "h", "z")

    def __init__(self, N, n, h, z):
        if N < 1 or n < 0:
            raise ValueError("need N >= 1 and n >= 0")
        self.N = int(N)
        self.n = int(n)
        self.h = tuple(QQ(x) for x in h)
        self.z = tuple(QQ(x) for x in z)
        if len(self.h) != self.N:
            raise ValueError("len(h) != N")
        if len(self.z) != self.n:
            raise ValueError("len(z) != n")

    @property
    def factors(self):
        return tuple(range(1, self.n + 1))

    def with_h(self, h):
        return GaudinInstance(self.N, self.n, h, self.z)

    def __eq__(self, other):
        return (isinstance(other, GaudinInstance)
                and (self.N, self.n, self.h, self.z)
                == (other.N, other.n, other.h, other.z))

    def __hash__(self):
        return hash((self.N, self.n, self.h, self.z))

    def __repr__(self):
        return f"GaudinInstance(N={self.N}, n={self.n}, h={self.h}, z={self.z})"


class OperatorPolynomial:
    """Polynomial in u with TensorOperator coefficients (ascending powers)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("need at least one coefficient")
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = coeffs

    @classmethod
    def zero(cls, factors, N):
        return cls([TensorOperator.zeros(factors, N)])

    @property
    def factors(self):
        return self.coeffs[0].factors

    @property
    def N(self):
        return self.coeffs[0].N

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coefficient(self, d):
        if d < len(self.coeffs):
            return self.coeffs[d]
        return TensorOperator.zeros(self.factors, self.N)

    def __add__(self, other):
        top = max(len(self.coeffs), len(other.coeffs))
        return OperatorPolynomial(
            [self.coefficient(d) + other.coefficient(d) for d in range(top)])

    def __sub__(self, other):
        top = max(len(self.coeffs), len(other.coeffs))
        return OperatorPolynomial(
            [self.coefficient(d) - other.coefficient(d) for d in range(top)])

    def scale(self, c):
        return OperatorPolynomial([op.scale(c) for op in self.coeffs])

    def mul_scalar_poly(self, p):
        if not p:
            return OperatorPolynomial.zero(self.factors, self.N)
        out = [TensorOperator.zeros(self.factors, self.N)
               for _ in range(len(self.coeffs) + len(p) - 1)]
        for i, op in enumerate(self.coeffs):
            if op.is_zero():
                continue
            for j, c in enumerate(p):
                if c != 0:
                    out[i + j] = out[i + j] + op.scale(c)
        return OperatorPolynomial(out)

    def derivative(self):
        if len(self.coeffs) == 1:
            return OperatorPolynomial.zero(self.factors, self.N)
        return OperatorPolynomial(
            [self.coeffs[d].scale(QQ(d)) for d in range(1, len(self.coeffs))])

    def evaluate(self, t):
        t = QQ(t)
        acc = self.coeffs[-1]
        for op in reversed(self.coeffs[:-1]):
            acc = acc.scale(t) + op
        return acc

    def is_zero(self):
        return all(op.is_zero() for op in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, OperatorPolynomial):
            return NotImplemented
        top = max(len(self.coeffs), len(other.coeffs))
        return all(self.coefficient(d) == other.coefficient(d) for d in range(top))

    def dump(self):
        return {"factors": list(self.factors), "dim_per_factor": self.N,
                "coefficients": [op.dump()["entries"] for op in self.coeffs]}

    def __repr__(self):
        return (f"OperatorPolynomial(degree={self.degree}, "
                f"factors={list(self.factors)}, N={self.N})")


# -- matrix derivative via the truncated epsilon ring ------------------------

def _eps_mul(a, b):
    out = {}
    for ma, va in a.items():
        for mb, vb in b.items():
            if ma & mb:
                continue
            m = ma | mb
            prev = out.get(m)
            out[m] = va * vb if prev is None else prev + va * vb
    return out


def _eps_matmul(p, m_by_row):
    out = {}
    for (a, b), pd in p.items():
        row = m_by_row.get(b)
        if not row:
            continue
        for c, md in row:
            prod = _eps_mul(pd, md)
            if not prod:
                continue
            key = (a, c)
            cur = out.get(key)
            if cur is None:
                out[key] = prod
            else:
                for mask, v in prod.items():
                    cur[mask] = cur.get(mask, ZERO) + v
    return out


def _trace_powers(entries, N, maxpow):
    """Traces of M, M^2, .., M^maxpow for a sparse epsilon-ring matrix."""
    by_row = {}
    for (a, b), d in entries.items():
        by_row.setdefault(a, []).append((b, d))
    traces = [None] * (maxpow + 1)
    cur = entries
    for p in range(1, maxpow + 1):
        if p > 1:
            cur = _eps_matmul(cur, by_row)
        tr = {}
        for a in range(N):
            d = cur.get((a, a))
            if d:
                for mask, v in d.items():
                    tr[mask] = tr.get(mask, ZERO) + v
        traces[p] = tr
    return traces


@lru_cache(maxsize=None)
def _derivative_template(expansion, k, h, N):
    """Matrix of d_{[1..k]} applied to sum_r c_r * prod Tr(h^rho), as a
    numpy object array of size N^k."""
    if k == 0:
        value = sum((c * power_sum_product(rho, h) for c, rho in expansion), ZERO)
        return np.array([[value]], dtype=object)
    dim = N ** k
    out = np.full((dim, dim), ZERO, dtype=object)
    maxpow = max((max(rho) for _, rho in expansion if rho), default=0)
    if maxpow == 0:
        return out
    full = (1 << k) - 1
    pairs = [(i, j) for i in range(N) for j in range(N)]
    base = {}
    for a in range(N):
        if h[a] != 0:
            base[(a, a)] = {0: h[a]}
    for multiset in itertools.combinations_with_replacement(pairs, k):
        entries = {key: dict(val) for key, val in base.items()}
        for t, (i, j) in enumerate(multiset):
            cell = entries.setdefault((j, i), {})
            cell[1 << t] = cell.get(1 << t, ZERO) + ONE
        traces = _trace_powers(entries, N, maxpow)
        coeff = ZERO
        for c, rho in expansion:
            acc = {0: ONE}
            for part in rho:
                acc = _eps_mul(acc, traces[part])
                if not acc:
                    break
            v = acc.get(full)
            if v:
                coeff = coeff + c * v
        if coeff == 0:
            continue
        for arrangement in set(itertools.permutations(multiset)):
            row = 0
            col = 0
            for (i, j) in arrangement:
                row = row * N + i
                col = col * N + j
            out[row, col] = out[row, col] + coeff
    return out


def matrix_derivative(expansion, K, h, N):
    """d_K f(h) for a scalar f given as a power-sum-trace expression.

    expansion is an iterable of (coeff, cycle_type) pairs standing for
    sum_r coeff * prod_t Tr(h^{rho_t}); h is the eigenvalue list of the
    diagonal matrix argument.  Returns a TensorOperator on sorted(K).
    """
    K = tuple(sorted(K))
    expansion = tuple((QQ(c), Partition(r)) for c, r in expansion)
    h = tuple(QQ(x) for x in h)
    template = _derivative_template(expansion, len(K), h, N)
    return TensorOperator(K, N, template.copy())


# -- construction routes -----------------------------------------------------

def build_T_definitional(lam, inst):
    """T_lam(u) = sum_K prod_{l not in K}(u+z_l) * d_K s_lam(h)."""
    lam = Partition(lam)
    factors = inst.factors
    if lam.length > inst.N:
        return OperatorPolynomial.zero(factors, inst.N)
    expansion = power_sum_expansion(lam)
    kmax = min(inst.n, lam.size)
    coeffs = [TensorOperator.zeros(factors, inst.N) for _ in range(inst.n + 1)]
    templates = {}
    for k in range(kmax + 1):
        templates[k] = matrix_derivative(
            expansion, tuple(range(1, k + 1)), inst.h, inst.N)
    for k in range(kmax + 1):
        for K in itertools.combinations(factors, k):
            op = templates[k].relabel(K).embed(factors)
            pw = polys.prod_linear([inst.z[l - 1] for l in factors if l not in K])
            for d, c in enumerate(pw):
                if c != 0:
                    coeffs[d] = coeffs[d] + op.scale(c)
    return OperatorPolynomial(coeffs)


@lru_cache(maxsize=None)
def _trace_template(lam, k, h, N):
    """Tr over the last |lam|-k canonical factors of h^(traced) alpha_lam,
    an operator on factors (1..k)."""
    lam = Partition(lam)
    r = lam.size
    canon = tuple(range(1, r + 1))
    img = permutation_operator(alpha_element(lam, canon), canon, N)
    traced = canon[k:]
    diag = diagonal_h_action(h, traced, canon, N)
    return (diag @ img).partial_trace(traced)


def build_T_partial_trace(lam, inst, m=None):
    """T_lam(u) from the partial-trace formula with auxiliary factors [m]."""
    lam = Partition(lam)
    r = lam.size
    n, N = inst.n, inst.N
    if m is None:
        m = max(n, r)
    if m < max(n, r):
        raise ValueError(f"need m >= max(n, |lam|) = {max(n, r)}")
    factors = inst.factors
    aux = tuple(range(1, m + 1))
    coeffs = [TensorOperator.zeros(factors, N) for _ in range(n + 1)]
    for k in range(min(n, r) + 1):
        tmpl = _trace_template(lam, k, inst.h, N)
        base = QQ(factorial(m - r), factorial(m - k))
        for K in itertools.combinations(factors, k):
            free = [l for l in aux if l not in K]
            weight = ZERO
            for _ in itertools.combinations(free, r - k):
                weight = weight + base
            if weight == 0:
                continue
            op = tmpl.relabel(K).embed(factors).scale(weight)
            pw = polys.prod_linear([inst.z[l - 1] for l in factors if l not in K])
            for d, c in enumerate(pw):
                if c != 0:
                    coeffs[d] = coeffs[d] + op.scale(c)
    return OperatorPolynomial(coeffs)


def build_beta(lam, inst):
    """beta_lam(u) = sum_{|K|=|lam|} prod_{l not in K}(u+z_l) * alpha_lam^(K)."""
    lam = Partition(lam)
    r = lam.size
    factors = inst.factors
    if r > inst.n:
        return OperatorPolynomial.zero(factors, inst.N)
    canon = tuple(range(1, r + 1))
    tmpl = permutation_operator(alpha_element(lam, canon), canon, inst.N)
    coeffs = [TensorOperator.zeros(factors, inst.N) for _ in range(inst.n + 1)]
    for K in itertools.combinations(factors, r):
        op = tmpl.relabel(K).embed(factors)
        pw = polys.prod_linear([inst.z[l - 1] for l in factors if l not in K])
        for d, c in enumerate(pw):
            if c != 0:
                coeffs[d] = coeffs[d] + op.scale(c)
    return OperatorPolynomial(coeffs)


# -- dual Jacobi-Trudi route --------------------------------------------------

def _operator_det(entries, factors, N):
    """Exact determinant of a matrix of TensorOperators (None = exact zero).

    Leibniz terms are multiplied in row order, so the expansion is valid
    whether or not the entries commute.  DP over used-column bitmasks;
    extending an injection by column c at row r contributes the sign
    (-1)^(r + #used columns below c).
    """
    m = len(entries)
    if m == 0:
        return TensorOperator.identity(factors, N)
    unit = "unit"
    dp = {0: unit}
    for row in range(m):
        new = {}
        for mask, acc in dp.items():
            for c in range(m):
                if mask & (1 << c):
                    continue
                entry = entries[row][c]
                if entry is None:
                    continue
                sign = -1 if (row + _rank_in_mask(mask, c)) % 2 else 1
                term = entry if acc is unit else acc @ entry
                if sign < 0:
                    term = -term
                key = mask | (1 << c)
                cur = new.get(key)
                new[key] = term if cur is None else cur + term
        dp = new
    result = dp.get((1 << m) - 1)
    return result if result is not None else TensorOperator.zeros(factors, N)


def _rank_in_mask(mask, c):
    """Number of set bits of mask below bit c."""
    return bin(mask & ((1 << c) - 1)).count("1")


def _interpolate_operator_poly(points, values, factors, N):
    """Exact Lagrange interpolation through (point, TensorOperator) pairs."""
    npts = len(points)
    full = polys.prod_linear([-x for x in points])
    coeffs = [TensorOperator.zeros(factors, N) for _ in range(npts)]
    for p, val in zip(points, values):
        if val.is_zero():
            continue
        lag = polys.pdiv_exact(full, [-QQ(p), ONE])
        denom = polys.peval(lag, QQ(p))
        inv = ONE / denom
        for d, c in enumerate(lag):
            if c != 0:
                coeffs[d] = coeffs[d] + val.scale(c * inv)
    return OperatorPolynomial(coeffs)


def _opoly_divmod_scalar(op_poly, q):
    """Divide an OperatorPolynomial by a scalar polynomial q (exact field)."""
    q = polys.ptrim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(op_poly.coeffs)
    factors, N = op_poly.factors, op_poly.N
    qlen = len(q)
    if len(rem) < qlen:
        return OperatorPolynomial.zero(factors, N), OperatorPolynomial(rem)
    quot = [TensorOperator.zeros(factors, N) for _ in range(len(rem) - qlen + 1)]
    inv_lead = ONE / q[-1]
    for k in range(len(rem) - qlen, -1, -1):
        c_op = rem[k + qlen - 1].scale(inv_lead)
        quot[k] = c_op
        if not c_op.is_zero():
            for j, qj in enumerate(q):
                if qj != 0:
                    rem[k + j] = rem[k + j] - c_op.scale(qj)
    return OperatorPolynomial(quot), OperatorPolynomial(rem)


def build_T_jacobi_trudi(lam, inst, single_columns=None):
    """T_lam(u) from the dual Jacobi-Trudi determinant in the single-column
    family, cleared of denominators by exact division.

    single_columns maps column heights c to prebuilt T_{(1^c)}(u); by
    default they are built by the definitional route.
    """
    lam = Partition(lam)
    n, N = inst.n, inst.N
    factors = inst.factors
    lam1 = lam.part(1)
    Z = polys.prod_linear(inst.z)
    if lam1 == 0:
        ident = TensorOperator.identity(factors, N)
        return OperatorPolynomial([ident.scale(c) for c in Z])
    conj = lam.conjugate()
    cmax = conj.part(1) + lam1 - 1
    if single_columns is None:
        single_columns = {}
    for c in range(cmax + 1):
        if c not in single_columns:
            single_columns[c] = build_T_definitional(Partition([1] * c), inst)

    Zd = polys.pderiv(Z)
    # ratio_derivs[c][k] = numerator of d^k/du^k (T_c(u)/Z(u)), denominator Z^{k+1}
    ratio_derivs = {}
    for c in range(cmax + 1):
        derivs = [single_columns[c]]
        for k in range(1, lam1):
            prev = derivs[-1]
            nxt = prev.derivative().mul_scalar_poly(Z) \
                - prev.mul_scalar_poly(Zd).scale(QQ(k))
            derivs.append(nxt)
        ratio_derivs[c] = derivs

    # entry (i, j): numerator over denominator Z^j
    m = lam1
    entry_polys = [[None] * m for _ in range(m)]
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            acc = None
            for k in range(j):
                c = conj.part(i) - i + j - k
                if c < 0:
                    continue
                term = ratio_derivs[c][k]
                if term.is_zero():
                    continue
                zfix = polys.ppow(Z, j - 1 - k)
                term = term.mul_scalar_poly(zfix).scale(QQ((-1) ** k * comb(j - 1, k)))
                acc = term if acc is None else acc + term
            entry_polys[i - 1][j - 1] = acc

    dtot = n * (m * (m + 1) // 2)
    points = [QQ(p) for p in range(dtot + 1)]
    values = []
    for p in points:
        entries = [[e.evaluate(p) if e is not None else None for e in row]
                   for row in entry_polys]
        values.append(_operator_det(entries, factors, N))
    det_num = _interpolate_operator_poly(points, values, factors, N)

    denom = polys.ppow(Z, m * (m + 1) // 2 - 1)
    quot, rem = _opoly_divmod_scalar(det_num, denom)
    if not rem.is_zero():
        raise IdentityViolationError(
            "dual Jacobi-Trudi determinant is not divisible by the expected "
            "power of (u+z_1)...(u+z_n)")
    if quot.degree > n:
        raise IdentityViolationError(
            f"dual Jacobi-Trudi result has degree {quot.degree} > n = {n}")
    return quot


def operators_commute(a, b):
    return (a @ b) == (b @ a)
