"""Dense operator algebra on (C^N)^{tensor L} for an ordered factor set L.

Layout: factors are stored in ascending label order; a matrix index is
the mixed-radix (base N) encoding of per-factor digits with the first
stored factor most significant.  Exact operators hold numpy object
arrays of rationals; the float backend holds float64 arrays.  Mixing
backends raises; conversion to float is explicit and one-way.
"""

import numpy as np

from .rationals import QQ, ZERO, ONE, format_rational, parse_rational
from .partitions import GroupAlgebraElement, Permutation


class BackendMixError(TypeError):
    pass


def flatten_index(digits, N):
    idx = 0
    for d in digits:
        idx = idx * N + d
    return idx


def unflatten_index(idx, nfactors, N):
    digits = [0] * nfactors
    for pos in range(nfactors - 1, -1, -1):
        idx, digits[pos] = divmod(idx, N)
    return tuple(digits)


def _digit_table(nfactors, N):
    """dim x nfactors array: row idx lists the digits of idx."""
    dim = N ** nfactors
    idx = np.arange(dim)
    table = np.empty((dim, nfactors), dtype=np.int64)
    for pos in range(nfactors - 1, -1, -1):
        idx, table[:, pos] = np.divmod(idx, N)
    return table


class TensorOperator:
    """Square operator on the tensor factors named by `factors`."""

    __slots__ = ("factors", "N", "mat")

    def __init__(self, factors, N, mat):
        factors = tuple(factors)
        if len(set(factors)) != len(factors):
            raise ValueError("factor labels must be distinct")
        if tuple(sorted(factors)) != factors:
            raise ValueError("factor labels must be given in ascending order")
        mat = np.asarray(mat)
        dim = N ** len(factors)
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix shape {mat.shape} != ({dim}, {dim})")
        self.factors = factors
        self.N = N
        self.mat = mat

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, factors, N, exact=True):
        dim = N ** len(tuple(factors))
        if exact:
            mat = np.full((dim, dim), ZERO, dtype=object)
        else:
            mat = np.zeros((dim, dim))
        return cls(factors, N, mat)

    @classmethod
    def identity(cls, factors, N, exact=True):
        out = cls.zeros(factors, N, exact)
        one = ONE if exact else 1.0
        for i in range(out.dim):
            out.mat[i, i] = one
        return out

    # -- basic properties --------------------------------------------------

    @property
    def dim(self):
        return self.N ** len(self.factors)

    @property
    def exact(self):
        return self.mat.dtype == object

    def copy(self):
        return TensorOperator(self.factors, self.N, self.mat.copy())

    def _check_compat(self, other):
        if self.factors != other.factors or self.N != other.N:
            raise ValueError("operators live on different factor sets")
        if self.exact != other.exact:
            raise BackendMixError("cannot mix exact and float operators")

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        self._check_compat(other)
        return TensorOperator(self.factors, self.N, self.mat + other.mat)

    def __sub__(self, other):
        self._check_compat(other)
        return TensorOperator(self.factors, self.N, self.mat - other.mat)

    def __neg__(self):
        return self.scale(-ONE if self.exact else -1.0)

    def scale(self, c):
        if self.exact and isinstance(c, float):
            raise BackendMixError("float scalar on an exact operator")
        return TensorOperator(self.factors, self.N, self.mat * c)

    def __matmul__(self, other):
        self._check_compat(other)
        return TensorOperator(self.factors, self.N, np.dot(self.mat, other.mat))

    def __eq__(self, other):
        if not isinstance(other, TensorOperator):
            return NotImplemented
        return (self.factors == other.factors and self.N == other.N
                and self.exact == other.exact
                and bool(np.all(self.mat == other.mat)))

    def transpose(self):
        return TensorOperator(self.factors, self.N, self.mat.T.copy())

    def is_symmetric(self):
        return bool(np.all(self.mat == self.mat.T))

    def is_zero(self):
        zero = ZERO if self.exact else 0.0
        return bool(np.all(self.mat == zero))

    def trace(self):
        return np.trace(self.mat)

    # -- structural operations ---------------------------------------------

    def relabel(self, new_factors):
        """Rename factors, keeping the matrix; the order map must be monotone."""
        new_factors = tuple(new_factors)
        if len(new_factors) != len(self.factors):
            raise ValueError("relabel needs the same number of factors")
        if tuple(sorted(new_factors)) != new_factors:
            raise ValueError("new labels must be ascending")
        return TensorOperator(new_factors, self.N, self.mat)

    def embed(self, factors):
        """Extend to a superset of factors, acting as identity elsewhere."""
        factors = tuple(sorted(factors))
        if not set(self.factors) <= set(factors):
            raise ValueError("embed target must contain the current factors")
        if factors == self.factors:
            return self
        rest = tuple(f for f in factors if f not in self.factors)
        k, r = len(self.factors), len(rest)
        N = self.N
        ident = TensorOperator.identity(rest, N, self.exact)
        a = self.mat.reshape((N,) * (2 * k))
        b = ident.mat.reshape((N,) * (2 * r))
        prod = np.multiply.outer(a, b)
        # axes: self rows, self cols, rest rows, rest cols
        row_axis = {}
        col_axis = {}
        for pos, f in enumerate(self.factors):
            row_axis[f] = pos
            col_axis[f] = k + pos
        for pos, f in enumerate(rest):
            row_axis[f] = 2 * k + pos
            col_axis[f] = 2 * k + r + pos
        order = [row_axis[f] for f in factors] + [col_axis[f] for f in factors]
        prod = prod.transpose(order)
        dim = N ** len(factors)
        return TensorOperator(factors, N, prod.reshape((dim, dim)))

    def partial_trace(self, traced):
        """Trace out the factors in `traced`, leaving the rest."""
        traced = tuple(sorted(traced))
        if not set(traced) <= set(self.factors):
            raise ValueError("cannot trace factors that are not present")
        if not traced:
            return self
        N = self.N
        keep = tuple(f for f in self.factors if f not in traced)
        cur = list(self.factors)
        t = self.mat.reshape((N,) * (2 * len(cur)))
        for f in traced:
            pos = cur.index(f)
            t = np.trace(t, axis1=pos, axis2=pos + len(cur))
            cur.pop(pos)
        dim = N ** len(keep)
        dtype = object if self.exact else float
        t = np.asarray(t, dtype=dtype)
        return TensorOperator(keep, N, t.reshape((dim, dim)))

    def to_float(self):
        if not self.exact:
            return self
        mat = np.array([[float(x) for x in row] for row in self.mat])
        return TensorOperator(self.factors, self.N, mat)

    def to_float_matrix(self):
        return self.to_float().mat

    # -- serialization -------------------------------------------------------

    def dump(self):
        if self.exact:
            entries = [format_rational(x) for x in self.mat.reshape(-1)]
        else:
            entries = [float(x) for x in self.mat.reshape(-1)]
        return {"factors": list(self.factors), "dim_per_factor": self.N,
                "entries": entries}

    @classmethod
    def load(cls, data):
        factors = tuple(data["factors"])
        N = data["dim_per_factor"]
        dim = N ** len(factors)
        raw = data["entries"]
        if raw and isinstance(raw[0], str):
            mat = np.array([parse_rational(x) for x in raw],
                           dtype=object).reshape((dim, dim))
        else:
            mat = np.array(raw, dtype=float).reshape((dim, dim))
        return cls(factors, N, mat)

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"TensorOperator(factors={list(self.factors)}, N={self.N}, {kind})"


def elementary_unit(i, j, k, factors, N):
    """E_{i,j} acting on factor k (1-based basis indices), identity elsewhere."""
    factors = tuple(sorted(factors))
    if not (1 <= i <= N and 1 <= j <= N):
        raise ValueError(f"basis indices ({i}, {j}) out of range for N={N}")
    if k not in factors:
        raise ValueError(f"factor {k} not in {factors}")
    single = TensorOperator.zeros((k,), N)
    single.mat[i - 1, j - 1] = ONE
    return single.embed(factors)


def diagonal_h_action(h, on_factors, factors, N=None):
    """Diagonal action of Diag(h_1..h_N) on the factors in `on_factors`."""
    factors = tuple(sorted(factors))
    on_factors = tuple(sorted(on_factors))
    if not set(on_factors) <= set(factors):
        raise ValueError("diagonal action on factors that are not present")
    h = tuple(QQ(x) for x in h)
    N = len(h) if N is None else N
    if len(h) != N:
        raise ValueError("eigenvalue list length != N")
    out = TensorOperator.zeros(factors, N)
    digits = _digit_table(len(factors), N)
    positions = [factors.index(f) for f in on_factors]
    h_arr = np.array(h, dtype=object)
    diag = np.full(out.dim, ONE, dtype=object)
    for pos in positions:
        diag = diag * h_arr[digits[:, pos]]
    idx = np.arange(out.dim)
    out.mat[idx, idx] = diag
    return out


def permutation_operator(perm, factors, N):
    """Linear extension of factor permutation; accepts a Permutation or a
    GroupAlgebraElement (extended linearly)."""
    factors = tuple(sorted(factors))
    if isinstance(perm, GroupAlgebraElement):
        out = TensorOperator.zeros(factors, N)
        for sigma, coeff in perm.terms.items():
            rows, cols = _permutation_indices(sigma, factors, N)
            out.mat[rows, cols] = out.mat[rows, cols] + coeff
        return out
    if not isinstance(perm, Permutation):
        raise TypeError("expected a Permutation or GroupAlgebraElement")
    out = TensorOperator.zeros(factors, N)
    rows, cols = _permutation_indices(perm, factors, N)
    out.mat[rows, cols] = ONE
    return out


def _permutation_indices(sigma, factors, N):
    if not set(sigma.domain) <= set(factors):
        raise ValueError("permutation domain is not contained in the factors")
    nf = len(factors)
    digits = _digit_table(nf, N)
    inv = sigma.inverse()
    source = [factors.index(inv(f)) if f in sigma.domain else factors.index(f)
              for f in factors]
    row_digits = digits[:, source]
    weights = N ** np.arange(nf - 1, -1, -1)
    rows = row_digits @ weights
    return rows, np.arange(N ** nf)
