"""Exact algebra of quasi-exponential function spaces.

A quasi-exponential is a finite sum of e^{c u} p(u) terms with rational
exponents and rational polynomial coefficients.  Wronskians, Taylor
matrices, Plucker coordinates, translation, the Jacobi-Trudi checks,
the g-series basis, the annihilating differential operator, Grassmann
duality, polynomial limit families, and the exponential shift matrix
all live here.

Scaling convention: every Taylor-type quantity at the point t drops the
per-column factor e^{c_j t} (one exponent per basis function).  All
N x N minors use all N columns, so each Plucker vector is rescaled by
the single global factor e^{-(c_1+..+c_N) t}; Plucker vectors are
projective, so nothing is lost, and every computation stays inside
exact rational arithmetic.  At t = 0 nothing is dropped and multi-term
functions are handled exactly.
"""

import itertools
import random
from math import comb, factorial

import numpy as np

from .rationals import QQ, ZERO, ONE, format_rational, parse_rational, is_integer
from . import polys, linalg
from .partitions import Partition, partitions_upto, skew_syt_count


class DependentBasisError(ValueError):
    """The listed basis functions are linearly dependent."""


class PreconditionError(ValueError):
    """An operation was invoked outside its stated domain."""


class QuasiExp:
    """Finite sum of e^{c u} p(u) terms, normalized by exponent."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        norm = {}
        for c, p in items:
            c = QQ(c)
            p = polys.ptrim([QQ(x) for x in p])
            if p:
                norm[c] = polys.padd(norm.get(c, []), p)
        self.terms = {c: p for c, p in norm.items() if p}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def from_poly(cls, coeffs):
        return cls([(ZERO, list(coeffs))])

    @classmethod
    def exponential(cls, c, poly=(1,)):
        return cls([(QQ(c), list(poly))])

    def is_zero(self):
        return not self.terms

    def is_polynomial(self):
        return all(c == 0 for c in self.terms)

    def single_term(self):
        """(exponent, poly) when there is exactly one exponent, else None."""
        if len(self.terms) != 1:
            return None
        ((c, p),) = self.terms.items()
        return c, p

    def __add__(self, other):
        out = {c: list(p) for c, p in self.terms.items()}
        merged = list(out.items()) + list(other.terms.items())
        return QuasiExp(merged)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, s):
        return QuasiExp([(c, polys.pscale(p, QQ(s))) for c, p in self.terms.items()])

    def __mul__(self, other):
        out = []
        for c1, p1 in self.terms.items():
            for c2, p2 in other.terms.items():
                out.append((c1 + c2, polys.pmul(p1, p2)))
        return QuasiExp(out)

    def derivative(self):
        return QuasiExp([(c, polys.padd(polys.pscale(p, c), polys.pderiv(p)))
                         for c, p in self.terms.items()])

    def __eq__(self, other):
        return isinstance(other, QuasiExp) and self.terms == other.terms

    def dump(self):
        out = []
        for c in sorted(self.terms):
            out.append({"exponent": format_rational(c),
                        "coeffs": [format_rational(x) for x in self.terms[c]]})
        return out

    @classmethod
    def load(cls, data):
        return cls([(parse_rational(term["exponent"]),
                     [parse_rational(x) for x in term["coeffs"]]) for term in data])

    def __repr__(self):
        bits = []
        for c in sorted(self.terms):
            bits.append(f"e^({c})u * poly(deg {len(self.terms[c]) - 1})")
        return "QuasiExp(" + (" + ".join(bits) or "0") + ")"


class QuasiExpSpace:
    """Ordered basis of quasi-exponential functions.

    Linear independence is not checked at construction; `wronskian`
    raises DependentBasisError when the basis is dependent.
    """

    __slots__ = ("funcs",)

    def __init__(self, funcs):
        self.funcs = [f if isinstance(f, QuasiExp) else QuasiExp(f) for f in funcs]
        if not self.funcs:
            raise ValueError("a space needs at least one basis function")
        if any(f.is_zero() for f in self.funcs):
            raise DependentBasisError("zero function in the basis")

    @property
    def N(self):
        return len(self.funcs)

    def is_polynomial(self):
        return all(f.is_polynomial() for f in self.funcs)

    def exponents(self):
        """One exponent per basis function; requires single-term functions."""
        out = []
        for f in self.funcs:
            st = f.single_term()
            if st is None:
                raise PreconditionError(
                    "basis function mixes exponents; no exponent list")
            out.append(st[0])
        return out

    def exponent_sum(self):
        return sum(self.exponents(), ZERO)

    def dump(self):
        return {"basis": [f.dump() for f in self.funcs]}

    @classmethod
    def load(cls, data):
        return cls([QuasiExp.load(fd) for fd in data["basis"]])

    def __repr__(self):
        return f"QuasiExpSpace(N={self.N})"


# -- Wronskians ---------------------------------------------------------------

def wronskian(space):
    """Exact Wronskian determinant of the basis, as a QuasiExp."""
    N = space.N
    rows = [list(space.funcs)]
    for _ in range(N - 1):
        rows.append([f.derivative() for f in rows[-1]])
    total = QuasiExp.zero()
    for perm in itertools.permutations(range(N)):
        sign = _perm_sign(perm)
        prod = rows[0][perm[0]]
        for i in range(1, N):
            prod = prod * rows[i][perm[i]]
        total = total + (prod if sign > 0 else prod.scale(-ONE))
    if total.is_zero():
        raise DependentBasisError("Wronskian vanishes identically")
    return total


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def wronskian_profile(space):
    """(exponent sum, polynomial part g) of Wr = e^{(sum c_i) u} g(u)."""
    w = wronskian(space)
    st = w.single_term()
    if st is None:
        raise PreconditionError("Wronskian is not a single quasi-exponential term")
    return st


def zero_order(poly, t):
    """Order of vanishing of the polynomial at u = t."""
    p = polys.ptrim(list(poly))
    t = QQ(t)
    order = 0
    while p and polys.peval(p, t) == 0:
        p, rem = polys.pdivmod(p, [-t, ONE])
        assert not rem
        order += 1
    return order


def expected_wronskian_degree(space):
    """deg g from the per-function degrees and exponent multiplicities.

    Requires the basis to be reduced: within each exponent class the
    polynomial degrees must be distinct.
    """
    degs = {}
    total = 0
    for f in space.funcs:
        c, p = f.single_term()
        degs.setdefault(c, set())
        d = len(p) - 1
        if d in degs[c]:
            raise PreconditionError("basis not reduced: repeated degree "
                                    "within one exponent class")
        degs[c].add(d)
        total += d
    return total - sum(comb(len(s), 2) for s in degs.values())


# -- Taylor matrices and Plucker vectors --------------------------------------

def _descale_derivative_values(func, t, rows):
    """[f^(i)(t) * e^{-c t}]_{i<rows}; exact.  Multi-exponent functions are
    allowed only at t = 0 (where no factor is dropped)."""
    t = QQ(t)
    if len(func.terms) > 1 and t != 0:
        raise PreconditionError(
            "exact Taylor data at t != 0 needs one exponent per function")
    out = [ZERO] * rows
    for c, p in func.terms.items():
        cur = p
        for i in range(rows):
            out[i] = out[i] + polys.peval(cur, t)
            cur = polys.padd(polys.pscale(cur, c), polys.pderiv(cur))
    return out


def _descale_derivative_polys(func, rows):
    """Same as above with t symbolic: each row is a polynomial in t."""
    st = func.single_term()
    if st is None:
        raise PreconditionError(
            "symbolic Taylor data needs one exponent per function")
    c, p = st
    out = []
    cur = p
    for _ in range(rows):
        out.append(cur)
        cur = polys.padd(polys.pscale(cur, c), polys.pderiv(cur))
    return out


def taylor_matrix(space, t, rows):
    """rows x N matrix with entry (i, j) = f_j^{(i)}(t) e^{-c_j t}."""
    if rows < space.N:
        raise PreconditionError("need at least N rows")
    cols = [_descale_derivative_values(f, t, rows) for f in space.funcs]
    mat = np.empty((rows, space.N), dtype=object)
    for j, col in enumerate(cols):
        for i in range(rows):
            mat[i, j] = col[i]
    return mat


def plucker_row_set(lam, N):
    """Ascending derivative orders {lam_N, lam_{N-1}+1, .., lam_1+N-1},
    or None when l(lam) > N."""
    lam = Partition(lam)
    if lam.length > N:
        return None
    return tuple(lam.part(N - i) + i for i in range(N))


def _poly_det(rows):
    n = len(rows)
    total = []
    for perm in itertools.permutations(range(n)):
        prod = [ONE]
        for i in range(n):
            prod = polys.pmul(prod, rows[i][perm[i]])
        total = polys.padd(total, prod if _perm_sign(perm) > 0 else
                           polys.pscale(prod, -ONE))
    return total


class PlueckerVector:
    """Partition-indexed minor family, defined up to one global scale."""

    __slots__ = ("N", "bound", "values")

    def __init__(self, N, bound, values):
        self.N = N
        self.bound = bound
        self.values = {Partition(k): v for k, v in values.items()}
        for lam in partitions_upto(bound):
            self.values.setdefault(lam, ZERO)

    @property
    def order(self):
        return partitions_upto(self.bound)

    def __getitem__(self, lam):
        return self.values[Partition(lam)]

    def is_float(self):
        return any(isinstance(v, float) for v in self.values.values())

    def _scale_of(self):
        vals = [self.values[lam] for lam in self.order]
        if self.is_float():
            return max(abs(float(v)) for v in vals)
        return None

    def first_nonzero(self):
        if self.is_float():
            scale = self._scale_of()
            if scale == 0.0:
                return None
            for lam in self.order:
                if abs(float(self.values[lam])) > 1e-12 * scale:
                    return lam
            return None
        for lam in self.order:
            if self.values[lam] != 0:
                return lam
        return None

    def normalized(self):
        anchor = self.first_nonzero()
        if anchor is None:
            raise ValueError("cannot normalize the zero vector")
        pivot = self.values[anchor]
        if self.is_float():
            return PlueckerVector(
                self.N, self.bound,
                {lam: float(v) / float(pivot) for lam, v in self.values.items()})
        return PlueckerVector(self.N, self.bound,
                              {lam: v / pivot for lam, v in self.values.items()})

    def to_float(self):
        return PlueckerVector(self.N, self.bound,
                              {lam: float(v) for lam, v in self.values.items()})

    def projectively_equal(self, other, rel_tol=1e-9):
        """Entrywise equality after normalizing each by its first nonzero
        coordinate; exact when both sides are exact, else within rel_tol."""
        if self.bound != other.bound:
            raise ValueError("bounds differ")
        a, b = self.normalized(), other.normalized()
        if not a.is_float() and not b.is_float():
            return all(a.values[lam] == b.values[lam] for lam in a.order)
        a, b = a.to_float(), b.to_float()
        scale = max(max(abs(v) for v in a.values.values()),
                    max(abs(v) for v in b.values.values()), 1.0)
        return all(abs(a.values[lam] - b.values[lam]) <= rel_tol * scale
                   for lam in a.order)

    def sign_consistency(self):
        """(ok, worst): after normalizing by the largest-magnitude entry,
        worst is the most negative normalized entry (0 when all one sign)."""
        vals = [float(self.values[lam]) for lam in self.order]
        scale = max(abs(v) for v in vals)
        if scale == 0.0:
            return True, 0.0
        pivot = max(vals, key=abs)
        worst = min(v / pivot for v in vals)
        return worst >= 0.0, min(0.0, worst)

    def dump(self):
        out = {}
        for lam in self.order:
            v = self.values[lam]
            out[str(lam)] = float(v) if isinstance(v, float) else format_rational(v)
        return out

    def __repr__(self):
        return f"PlueckerVector(N={self.N}, bound={self.bound})"


def plucker_vector(space, t, bound):
    """Minor family Delta_lam about u = t for all |lam| <= bound."""
    N = space.N
    mat = taylor_matrix(space, t, bound + N)
    values = {}
    for lam in partitions_upto(bound):
        rows = plucker_row_set(lam, N)
        if rows is None:
            values[lam] = ZERO
        else:
            values[lam] = linalg.det(mat[list(rows), :])
    return PlueckerVector(N, bound, values)


def plucker_polynomials(space, lams):
    """Delta_lam as exact polynomials in t (descaled), for given shapes."""
    N = space.N
    needed = [plucker_row_set(lam, N) for lam in lams]
    max_row = max((max(rs) for rs in needed if rs is not None), default=N - 1)
    cols = [_descale_derivative_polys(f, max_row + 1) for f in space.funcs]
    out = {}
    for lam, rs in zip(lams, needed):
        if rs is None:
            out[Partition(lam)] = []
        else:
            rows = [[cols[j][r] for j in range(N)] for r in rs]
            out[Partition(lam)] = _poly_det(rows)
    return out


# -- translation ---------------------------------------------------------------

def translate(space, t):
    """Basis u -> f(u + t); each basis function is rescaled by e^{-c t}
    (spans are unchanged), keeping everything rational."""
    t = QQ(t)
    if t == 0:
        return QuasiExpSpace(list(space.funcs))
    out = []
    for f in space.funcs:
        st = f.single_term()
        if st is None:
            raise PreconditionError(
                "exact translation needs one exponent per basis function")
        c, p = st
        out.append(QuasiExp([(c, polys.pshift(p, t))]))
    return QuasiExpSpace(out)


def verify_translation_identity(space, mu, t, bound):
    """Check Delta_mu(V(t)) = sum over lam >= mu of
    f^{lam/mu}/(|lam|-|mu|)! t^{|lam|-|mu|} Delta_lam(V), up to one global
    scalar fixed on an anchor partition.

    Polynomial spaces: both sides are exact numbers and the discrepancy
    must vanish.  Genuinely quasi-exponential spaces: the identity is a
    power-series statement in t, checked as a congruence modulo
    t^{bound-|mu|+1}.
    """
    mu = Partition(mu)
    t = QQ(t)
    if mu.size > bound:
        raise PreconditionError("|mu| exceeds the bound")
    base = plucker_vector(space, 0, bound)

    def rhs_coeff(target, d):
        total = ZERO
        for lam in partitions_upto(bound):
            if lam.size == target.size + d and lam.contains(target):
                cnt = skew_syt_count(lam, target)
                if cnt:
                    total = total + QQ(cnt, factorial(d)) * base[lam]
        return total

    if space.is_polynomial():
        pv_t = plucker_vector(space, t, bound)
        anchors = [p for p in partitions_upto(bound)]

        def rhs_value(target):
            total = ZERO
            tp = ONE
            for d in range(bound - target.size + 1):
                total = total + rhs_coeff(target, d) * tp
                tp = tp * t
            return total

        scalar = None
        anchor = None
        for cand in anchors:
            rv = rhs_value(cand)
            if rv != 0:
                anchor, scalar = cand, pv_t[cand] / rv
                break
        if scalar is None:
            raise PreconditionError("anchor not found: all coordinates vanish")
        lhs = pv_t[mu]
        rhs = scalar * rhs_value(mu)
        return {"mode": "polynomial", "anchor": str(anchor),
                "scalar": scalar, "lhs": lhs, "rhs": rhs,
                "discrepancy": lhs - rhs, "pass": lhs == rhs}

    # quasi-exponential: truncated congruence in powers of t
    hsum = space.exponent_sum()
    shapes = [mu, Partition()]
    ppolys = plucker_polynomials(space, shapes)

    def lhs_series(target, order):
        expser = [QQ(1, factorial(b)) * hsum ** b for b in range(order + 1)]
        p = ppolys[target]
        out = [ZERO] * (order + 1)
        for a, ca in enumerate(p[:order + 1]):
            for b in range(order + 1 - a):
                out[a + b] = out[a + b] + ca * expser[b]
        return out

    def rhs_series(target, order):
        return [rhs_coeff(target, d) for d in range(order + 1)]

    anchor = Partition()
    la = lhs_series(anchor, bound)
    ra = rhs_series(anchor, bound)
    scalar = None
    for x, y in zip(la, ra):
        if y != 0:
            scalar = x / y
            break
    if scalar is None:
        raise PreconditionError("anchor series vanishes to the checked order")
    order = bound - mu.size
    lm = lhs_series(mu, order)
    rm = [scalar * v for v in rhs_series(mu, order)]
    diffs = [a - b for a, b in zip(lm, rm)]
    return {"mode": "series", "anchor": str(anchor), "scalar": scalar,
            "order": order, "lhs_series": lm, "rhs_series": rm,
            "max_discrepancy": max((abs(d) for d in diffs), default=ZERO),
            "pass": all(d == 0 for d in diffs)}


# -- Jacobi-Trudi identities ---------------------------------------------------

def _jt_report(space, lam, m, t, index_fn, shape_fn):
    """Shared engine: checks Delta_lam(V(t)) = Delta_0(V(t))^{1-m} *
    det( sum_k (-1)^k C(j-1,k) d^k/du^k Delta_{shape(index(i,j,k))} )."""
    lam = Partition(lam)
    t = QQ(t)
    hsum = space.exponent_sum()
    cmax = max(max(index_fn(i, j, 0) for i in range(1, m + 1)
                   for j in range(1, m + 1)), 0)
    shapes = [shape_fn(c) for c in range(cmax + 1)]
    ppolys = plucker_polynomials(space, shapes + [lam, Partition()])
    dzero = polys.peval(ppolys[Partition()], t)
    if dzero == 0:
        raise PreconditionError("t is a zero of the Wronskian")

    # u-derivative values at t: the coordinate is e^{Hu} P(u) descaled, so
    # d^k picks up sum_s C(k,s) H^{k-s} P^{(s)}(t)
    derivs = {}
    for c in range(cmax + 1):
        cur = ppolys[shape_fn(c)]
        vals = []
        for _ in range(m):
            vals.append(polys.peval(cur, t))
            cur = polys.pderiv(cur)
        derivs[c] = vals

    def entry(i, j):
        total = ZERO
        for k in range(j):
            c = index_fn(i, j, k)
            if c < 0:
                continue
            dk = ZERO
            for s in range(k + 1):
                dk = dk + comb(k, s) * hsum ** (k - s) * derivs[c][s]
            total = total + QQ((-1) ** k * comb(j - 1, k)) * dk
        return total

    mat = [[entry(i, j) for j in range(1, m + 1)] for i in range(1, m + 1)]
    rhs = dzero ** (1 - m) * linalg.det(mat)
    lhs = polys.peval(ppolys[lam], t)
    return {"m": m, "t": t, "lhs": lhs, "rhs": rhs,
            "discrepancy": lhs - rhs, "pass": lhs == rhs}


def verify_jacobi_trudi(space, lam, m, t):
    """Single-row determinant identity for Taylor minors at u = t."""
    lam = Partition(lam)
    if m < lam.length:
        raise PreconditionError("need m >= l(lam)")
    return _jt_report(space, lam, m, t,
                      lambda i, j, k: lam.part(i) - i + j - k,
                      lambda c: Partition([c] if c else []))


def verify_dual_jacobi_trudi(space, lam, m, t):
    """Single-column determinant identity for Taylor minors at u = t."""
    lam = Partition(lam)
    if m < lam.part(1):
        raise PreconditionError("need m >= lam_1")
    conj = lam.conjugate()
    return _jt_report(space, lam, m, t,
                      lambda i, j, k: conj.part(i) - i + j - k,
                      lambda c: Partition([1] * c))


# -- g-series basis -------------------------------------------------------------

def g_series(space, t, truncation):
    """Coefficients of sum_i Delta_(i)(V(t))/(N+i-1)! (u-t)^{N+i-1}, i <= truncation.

    Returns the (u-t)-power coefficient list of length N + truncation.
    """
    N = space.N
    t = QQ(t)
    mat = taylor_matrix(space, t, truncation + N)
    out = [ZERO] * (N + truncation)
    for i in range(truncation + 1):
        rows = plucker_row_set(Partition([i] if i else []), N)
        value = linalg.det(mat[list(rows), :])
        out[N - 1 + i] = value / factorial(N + i - 1)
    return out


def g_series_bordered(space, t, truncation):
    """Oracle route: the bordered determinant with the basis values in the
    last row, expanded as a Taylor series about u = t."""
    N = space.N
    t = QQ(t)
    mat = taylor_matrix(space, t, N + truncation)
    out = [ZERO] * (N + truncation)
    for j in range(N):
        cols = [c for c in range(N) if c != j]
        minor = linalg.det(mat[np.ix_(range(N - 1), cols)]) if N > 1 else ONE
        if minor == 0:
            continue
        sign = -ONE if (N - 1 + j) % 2 else ONE
        for i in range(N + truncation):
            out[i] = out[i] + sign * minor * mat[i, j] / factorial(i)
    return out


def _g_representation(space, truncation):
    """{power s: coefficient polynomial in t} for the g-series."""
    N = space.N
    shapes = [Partition([i] if i else []) for i in range(truncation + 1)]
    ppolys = plucker_polynomials(space, shapes)
    rep = {}
    for i in range(truncation + 1):
        p = ppolys[shapes[i]]
        if p:
            rep[N - 1 + i] = polys.pscale(p, QQ(1, factorial(N + i - 1)))
    return rep


def _g_time_derivative(rep):
    """d/dt of {s: c_s(t)}: c_s'(t) at power s and -(s+1) c_{s+1}(t) at power s."""
    out = {}
    for s, c in rep.items():
        d = polys.pderiv(c)
        if d:
            out[s] = polys.padd(out.get(s, []), d)
        if s >= 1:
            out[s - 1] = polys.padd(out.get(s - 1, []), polys.pscale(c, QQ(-s)))
    return {s: c for s, c in out.items() if c}


def basis_from_g(space, t, truncation):
    """The N series d_t^j g(t, u), j < N, as (u-t)-coefficient vectors.

    Returns (vectors, report).  The report certifies exact rank, the
    leading-coefficient pattern, and an exact change of basis to the
    original basis; when t is a Wronskian zero the expected rank
    deficiency is reported instead (vectors are still returned).
    """
    N = space.N
    t = QQ(t)
    headroom = truncation + N
    rep = _g_representation(space, headroom)
    length = N + truncation
    vectors = []
    cur = rep
    for j in range(N):
        vec = [polys.peval(cur.get(s, []), t) for s in range(length)]
        vectors.append(vec)
        if j + 1 < N:
            cur = _g_time_derivative(cur)

    rnk = linalg.rank(vectors)
    d0 = vectors[0][N - 1] * factorial(N - 1)  # Delta_empty(V(t)) descaled
    report = {"rank": rnk, "dependent": rnk < N, "wronskian_value": d0}
    if d0 == 0:
        report["pass"] = rnk < N  # dependency is the expected outcome
        report["note"] = "t is a Wronskian zero; rank deficiency expected"
        return vectors, report

    leading_ok = True
    for j, vec in enumerate(vectors):
        want = (-ONE) ** j * d0 / factorial(N - 1 - j)
        if vec[N - 1 - j] != want or any(vec[s] != 0 for s in range(N - 1 - j)):
            leading_ok = False
    report["leading_ok"] = leading_ok

    # exact change of basis: original truncated series in terms of the g-family
    cols = np.array(vectors, dtype=object).T  # length x N
    mat = taylor_matrix(space, t, length)
    change = []
    consistent = True
    for jf in range(N):
        rhs = [mat[i, jf] / factorial(i) for i in range(length)]
        x = linalg.solve(cols, rhs)
        if x is None:
            consistent = False
            break
        change.append(x)
    if consistent:
        detx = linalg.det([[change[jf][i] for jf in range(N)] for i in range(N)])
        report["change_of_basis_det"] = detx
        report["pass"] = (rnk == N and leading_ok and detx != 0)
    else:
        report["pass"] = False
        report["note"] = "original basis not in the span of the g-family"
    return vectors, report


# -- annihilating differential operator ----------------------------------------

def differential_operator(space, t, margin=4, validate=True):
    """Coefficients (c_0..c_N) of the monic operator sum_i c_i d^{N-i}
    annihilating the space at u = t, with c_i = (-1)^i
    Delta_{(1^i)}(V(t)) / Delta_empty(V(t)).

    With validate=True the operator (with u-varying coefficients, cleared
    of the Delta_empty denominator) is applied to each basis function's
    Taylor series about t and required to vanish through `margin` orders.
    """
    N = space.N
    t = QQ(t)
    shapes = [Partition([1] * i) for i in range(N + 1)]
    ppolys = plucker_polynomials(space, shapes)
    d0 = polys.peval(ppolys[Partition()], t)
    if d0 == 0:
        raise PreconditionError("t is a zero of the Wronskian")
    coeffs = [(-ONE) ** i * polys.peval(ppolys[shapes[i]], t) / d0
              for i in range(N + 1)]

    if validate:
        maxdeg = max((len(ppolys[s]) for s in shapes), default=1)
        length = N + margin + maxdeg + 1
        mat = taylor_matrix(space, t, length)
        for jf in range(N):
            ser = [mat[i, jf] / factorial(i) for i in range(length)]
            total = [ZERO] * (margin + 1)
            for i in range(N + 1):
                q = polys.pshift(ppolys[shapes[i]], t)  # coordinate poly in (u-t)
                if not q:
                    continue
                dser = _series_derivative(ser, N - i)
                sign = -ONE if i % 2 else ONE
                for a, qa in enumerate(q):
                    if qa == 0 or a > margin:
                        continue
                    for b in range(margin + 1 - a):
                        total[a + b] = total[a + b] + sign * qa * dser[b]
            if any(v != 0 for v in total):
                raise DependentBasisError(
                    "annihilation check failed; basis data inconsistent")
    return coeffs


def _series_derivative(ser, k):
    """k-th derivative of a Taylor coefficient sequence."""
    out = list(ser)
    for _ in range(k):
        out = [(i + 1) * out[i + 1] for i in range(len(out) - 1)]
    return out


# -- Grassmann duality ----------------------------------------------------------

def dual_space(space, M):
    """Orthogonal complement inside polynomials of degree <= M-1 under the
    alternating pairing (sum f_i u^i/i!, sum g_j u^j/j!) = sum (-1)^i f_i g_{M-1-i}.

    Conjugates every Plucker coordinate: Delta_lam(V) = Delta_lam'(dual)
    projectively; dual of dual is the original space.
    """
    N = space.N
    if M <= N:
        raise PreconditionError("need M > N")
    rows = []
    for f in space.funcs:
        st = f.single_term()
        if st is None or st[0] != 0:
            raise PreconditionError("duality is defined for polynomial spaces")
        p = st[1]
        if len(p) > M:
            raise PreconditionError(f"degree exceeds M-1 = {M - 1}")
        fvec = [factorial(i) * p[i] if i < len(p) else ZERO for i in range(M)]
        rows.append([(-ONE) ** (M - 1 - s) * fvec[M - 1 - s] for s in range(M)])
    kernel = linalg.nullspace(rows)
    funcs = [QuasiExp.from_poly([v / factorial(s) for s, v in enumerate(vec)])
             for vec in kernel]
    return QuasiExpSpace(funcs)


# -- polynomial limit family ----------------------------------------------------

def poly_limit_family(space, k):
    """Replace each e^{c u} (c a nonnegative integer) by (1 + u/k)^{c k}.

    The resulting polynomial spaces converge to the original space
    uniformly on compact sets as k grows; Plucker coordinates converge
    entrywise.
    """
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    out = []
    for f in space.funcs:
        st = f.single_term()
        if st is None:
            raise PreconditionError("limit family needs one exponent per function")
        c, p = st
        if not is_integer(c) or c < 0:
            raise PreconditionError("exponents must be nonnegative integers")
        e = int(c) * k
        binom_poly = [QQ(comb(e, j), k ** j) for j in range(e + 1)]
        out.append(QuasiExp.from_poly(polys.pmul(binom_poly, p)))
    return QuasiExpSpace(out)


# -- exponential shift matrix ---------------------------------------------------

def exp_shift_matrix(c, size):
    """Truncation of the matrix of multiplication by e^{cu} on Taylor
    coefficient vectors: entries C(i,k) c^{i-k} on and below the diagonal.

    Equals the exponential of the subdiagonal generator diag_{-1}(c, 2c, ..);
    see shift_generator_exponential for that route.
    """
    c = QQ(c)
    if c <= 0:
        raise PreconditionError("the shift scalar must be positive")
    mat = np.full((size, size), ZERO, dtype=object)
    for i in range(size):
        for kk in range(i + 1):
            mat[i, kk] = comb(i, kk) * c ** (i - kk)
    return mat


def shift_generator_exponential(c, size):
    """exp of the nilpotent generator with subdiagonal (c, 2c, 3c, ..),
    summed exactly (the series terminates)."""
    c = QQ(c)
    gen = np.full((size, size), ZERO, dtype=object)
    for i in range(1, size):
        gen[i, i - 1] = QQ(i) * c
    total = np.full((size, size), ZERO, dtype=object)
    term = np.full((size, size), ZERO, dtype=object)
    for i in range(size):
        term[i, i] = ONE
    for m in range(size):
        total = total + term * QQ(1, factorial(m))
        term = np.dot(term, gen)
    return total


def sample_nontrivial_minor(size, rng):
    """Random (rows, cols) with rows_a >= cols_a for all a: the minors of a
    lower-triangular totally positive matrix that do not trivially vanish."""
    m = rng.randint(1, size)
    while True:
        rows = sorted(rng.sample(range(size), m))
        cols = sorted(rng.sample(range(size), m))
        if all(r >= c for r, c in zip(rows, cols)):
            return rows, cols


def verify_shift_matrix_positivity(c, size, samples=200, seed=0):
    """Sample non-trivially-vanishing minors of exp_shift_matrix and check
    strict positivity, exactly."""
    mat = exp_shift_matrix(c, size)
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        rows, cols = sample_nontrivial_minor(size, rng)
        value = linalg.det(mat[np.ix_(rows, cols)])
        if value <= 0:
            failures.append({"rows": rows, "cols": cols,
                             "value": format_rational(value)})
    return {"c": format_rational(c), "size": size, "samples": samples,
            "failures": failures, "pass": not failures}
