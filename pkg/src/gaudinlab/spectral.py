"""Simultaneous eigenspaces of the commuting family, exact positivity
certificates, and the universality / positivity verification pipelines.

Division of labor: every operator is constructed exactly; floats appear
only in the eigensolve, the eigenvalue clustering, and the least-squares
reconstruction fits.  Certificates are exact: positive semidefiniteness
is decided by the sign pattern of the characteristic polynomial (all
roots are real for a symmetric matrix), positive definiteness by
Sylvester's leading principal minors, and indefinite verdicts carry an
exact negative-direction witness vector.
"""

import hashlib
import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .rationals import QQ, ZERO, ONE, format_rational, rand_rational
from . import polys, linalg
from .partitions import Partition, partitions_upto
from .gaudin import build_T_definitional, build_T_partial_trace
from .quasiexp import PlueckerVector, plucker_row_set
from .tensorops import TensorOperator


@lru_cache(maxsize=None)
def _row_operator_poly(inst, i):
    """T_{(i)}(u), cached across eigenspaces of the same instance."""
    return build_T_definitional(Partition([i] if i else []), inst)


@lru_cache(maxsize=None)
def _column_operator_poly(inst, i):
    """T_{(1^i)}(u), cached across eigenspaces of the same instance."""
    return build_T_definitional(Partition([1] * i), inst)


@lru_cache(maxsize=None)
def _evaluated_operator(inst, lam, t):
    """Exact T_lam(t), cached across eigenspaces of the same instance."""
    return build_T_partial_trace(lam, inst).evaluate(t)


@dataclass(frozen=True)
class Tolerances:
    """Float-lane knobs; the exact lane has none."""
    clustering: float = 1e-7
    eigenvalue: float = 1e-8
    reconstruction: float = 1e-6


DEFAULT_TOLERANCES = Tolerances()


class GenericityError(RuntimeError):
    """Eigenvalue clusters could not be separated; re-randomize inputs."""


class InstabilityError(RuntimeError):
    """Interpolated eigenvalue data failed its held-out residual check."""


# -- exact PSD / PD certification ---------------------------------------------

@dataclass
class PSDCertificate:
    matrix_sha256: str
    verdict: str  # "PD" | "PSD" | "indefinite"
    char_coeffs: list
    char_sign_ok: bool
    sylvester_pivots: list
    witness_vector: list | None

    def dump(self):
        return {
            "matrix_sha256": self.matrix_sha256,
            "verdict": self.verdict,
            "char_coeffs": [format_rational(c) for c in self.char_coeffs],
            "char_sign_ok": self.char_sign_ok,
            "sylvester_pivots": [format_rational(p) for p in self.sylvester_pivots],
            "witness_vector": (None if self.witness_vector is None
                               else [format_rational(x) for x in self.witness_vector]),
        }


def _matrix_hash(mat):
    payload = json.dumps([[format_rational(x) for x in row] for row in mat])
    return hashlib.sha256(payload.encode()).hexdigest()


def _rationalize_vector(vec, digits):
    return [QQ(str(Fraction(float(x)).limit_denominator(10 ** digits)))
            for x in vec]


def _negative_witness(mat):
    """Exact vector v with v^T A v < 0, guided by the float eigensolve."""
    fl = np.array([[float(x) for x in row] for row in mat])
    w, u = np.linalg.eigh(fl)
    order = np.argsort(w)
    for idx in order[:3]:
        for digits in (3, 6, 9, 12):
            v = _rationalize_vector(u[:, idx], digits)
            if all(x == 0 for x in v):
                continue
            val = ZERO
            for i, vi in enumerate(v):
                if vi == 0:
                    continue
                for j, vj in enumerate(v):
                    if vj != 0:
                        val = val + vi * mat[i][j] * vj
            if val < 0:
                return v
    return None


def certify_psd_exact(mat, strict=False):
    """Exact PSD/PD certificate for a symmetric rational matrix.

    Accepts a TensorOperator (exact backend) or a square array of
    rationals.  Non-symmetric input is a domain error; no inner product
    is guessed for that case.
    """
    if isinstance(mat, TensorOperator):
        if not mat.exact:
            raise ValueError("certification requires the exact backend")
        mat = mat.mat
    mat = [[QQ(x) for x in row] for row in np.asarray(mat)]
    dim = len(mat)
    for i in range(dim):
        for j in range(i + 1, dim):
            if mat[i][j] != mat[j][i]:
                raise ValueError("matrix is not symmetric; refusing to certify")

    coeffs = linalg.charpoly(mat)
    sign_ok = all(((-ONE) ** (dim - i)) * c >= 0 for i, c in enumerate(coeffs))
    pivots, stopped = linalg.leading_principal_pivots(mat)
    is_pd = stopped is None and all(p > 0 for p in pivots)

    if is_pd:
        verdict = "PD"
        witness = None
    elif sign_ok:
        verdict = "PSD"
        witness = None
    else:
        verdict = "indefinite"
        witness = _negative_witness(mat)

    cert = PSDCertificate(_matrix_hash(mat), verdict, coeffs, sign_ok,
                          pivots, witness)
    if strict and verdict != "PD":
        return cert
    return cert


def verify_psd_theorem(inst, t, bound, builder=build_T_partial_trace):
    """Certify every T_lam(t), |lam| <= bound, against the positivity
    hypotheses: h_i >= 0 and t >= -z_k give PSD; strict versions plus
    l(lam) <= N give PD.  Unmet hypotheses downgrade to warnings."""
    t = QQ(t)
    hyp_psd = all(h >= 0 for h in inst.h) and all(t >= -z for z in inst.z)
    hyp_pd = all(h > 0 for h in inst.h) and all(t > -z for z in inst.z)
    checks = []
    violations = []
    for lam in partitions_upto(bound):
        op = builder(lam, inst).evaluate(t)
        cert = certify_psd_exact(op)
        expected = None
        if hyp_pd and lam.length <= inst.N:
            expected = "PD"
            ok = cert.verdict == "PD"
        elif hyp_psd:
            expected = "PSD"
            ok = cert.verdict in ("PD", "PSD")
        else:
            ok = True
        checks.append({"partition": str(lam), "verdict": cert.verdict,
                       "expected": expected, "pass": ok,
                       "certificate": cert.dump()})
        if not ok:
            violations.append(str(lam))
    return {"hypotheses_met": hyp_psd, "strict_hypotheses_met": hyp_pd,
            "warning": None if hyp_psd else
            "hypotheses unmet: h or t outside the guaranteed region",
            "checks": checks, "violations": violations,
            "pass": not violations}


# -- simultaneous eigenspaces ----------------------------------------------------

@dataclass
class Eigenspace:
    basis: np.ndarray            # dim x k, orthonormal columns
    eigenvalues: dict            # Partition -> float

    @property
    def dim(self):
        return self.basis.shape[1]


@dataclass
class EigenspaceDecomposition:
    spaces: list
    residual: float
    seed: int
    attempts: int
    combination: dict

    @property
    def total_dim(self):
        return sum(s.dim for s in self.spaces)


def exact_operators(inst, t, bound, builder=build_T_partial_trace):
    """{lam: exact T_lam(t)} for all |lam| <= bound."""
    t = QQ(t)
    return {lam: builder(lam, inst).evaluate(t) for lam in partitions_upto(bound)}


def simultaneous_eigenspaces(inst, t, bound, tol=None, seed=0, max_retries=3,
                             operators=None):
    """Cluster the joint spectrum of {T_lam(t)}_{|lam|<=bound} from one
    random rational linear combination; verify invariance of every
    cluster under every operator."""
    tol = tol or DEFAULT_TOLERANCES
    ops = operators or exact_operators(inst, t, bound)
    floats = {lam: op.to_float_matrix() for lam, op in ops.items()}
    dim = inst.N ** inst.n
    rng = random.Random(seed)
    last_problem = "no attempts made"
    for attempt in range(1, max_retries + 1):
        combo = {lam: rand_rational(rng, 1, 9, 7) for lam in floats}
        mixed = sum(float(c) * floats[lam] for lam, c in combo.items())
        asym = np.max(np.abs(mixed - mixed.T))
        scale = max(1.0, np.max(np.abs(mixed)))
        if asym > 1e-9 * scale:
            raise ValueError("combined operator is not symmetric")
        evals, evecs = np.linalg.eigh(mixed)
        gaps = np.diff(evals)
        boundaries = [0] + [i + 1 for i, g in enumerate(gaps)
                            if g > tol.clustering * scale] + [dim]
        clusters = [range(boundaries[i], boundaries[i + 1])
                    for i in range(len(boundaries) - 1)]

        spaces = []
        worst = 0.0
        ok = True
        for cl in clusters:
            basis = evecs[:, list(cl)]
            values = {}
            for lam, mat in floats.items():
                op_scale = max(1.0, np.max(np.abs(mat)))
                tb = mat @ basis
                resid = np.max(np.abs(tb - basis @ (basis.T @ tb)))
                worst = max(worst, resid / op_scale)
                if resid > 100 * tol.clustering * op_scale:
                    ok = False
                    last_problem = (f"cluster not invariant under T_{lam} "
                                    f"(residual {resid:.2e})")
                    break
                block = basis.T @ tb
                diag = np.diag(block)
                spread = np.max(np.abs(block - np.mean(diag) * np.eye(len(diag))))
                if spread > max(100 * tol.eigenvalue * op_scale, 1e-12):
                    ok = False
                    last_problem = (f"T_{lam} not scalar on a cluster "
                                    f"(spread {spread:.2e})")
                    break
                values[lam] = float(np.mean(diag))
            if not ok:
                break
            spaces.append(Eigenspace(basis, values))
        if ok:
            return EigenspaceDecomposition(spaces, worst, seed, attempt, combo)
    raise GenericityError(
        f"no clean cluster structure after {max_retries} attempts: {last_problem}")


def eigenvalue_polynomials(inst, space, lam, tol=None, op_poly=None):
    """Eigenvalue of T_lam(t) on the eigenspace, as a degree <= n polynomial
    in t: interpolated from n+1 exact sample points with a held-out check.

    Returns float coefficients, ascending powers.
    """
    tol = tol or DEFAULT_TOLERANCES
    lam = Partition(lam)
    if op_poly is None:
        op_poly = build_T_definitional(lam, inst)
    n = inst.n
    samples = [QQ(s) for s in range(n + 2)]
    basis = space.basis

    def rayleigh(tval):
        mat = op_poly.evaluate(tval).to_float_matrix()
        return float(np.mean(np.diag(basis.T @ (mat @ basis))))

    values = [rayleigh(s) for s in samples]
    vander = np.vander([float(s) for s in samples[:n + 1]], n + 1,
                       increasing=True)
    coeffs = np.linalg.solve(vander, np.array(values[:n + 1]))
    held = float(samples[n + 1])
    predicted = float(np.polynomial.polynomial.polyval(held, coeffs))
    scale = max(1.0, max(abs(v) for v in values))
    if abs(predicted - values[n + 1]) > max(1e-6 * scale, 100 * tol.eigenvalue * scale):
        raise InstabilityError(
            f"held-out residual too large for T_{lam} eigenvalue polynomial")
    return coeffs


# -- reconstruction --------------------------------------------------------------

def _series_product(a, b, length):
    out = [0.0] * length
    for i, x in enumerate(a[:length]):
        if x == 0.0:
            continue
        for j, y in enumerate(b[:length - i]):
            out[i + j] += x * y
    return out


def _series_deriv(a):
    return [(i + 1) * a[i + 1] for i in range(len(a) - 1)]


def _series_det(rows, length):
    """Determinant of a matrix of truncated float series."""
    n = len(rows)
    total = [0.0] * length
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = [1.0] + [0.0] * (length - 1)
        for i in range(n):
            prod = _series_product(prod, rows[i][perm[i]], length)
        for i in range(length):
            total[i] += sign * prod[i]
    return total


def _exp_series(c, length):
    out = [1.0]
    for i in range(1, length):
        out.append(out[-1] * c / i)
    return out


def _projective_residual(a, b):
    """Relative max-norm distance between float vectors up to one scale."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    na, nb = np.max(np.abs(a)), np.max(np.abs(b))
    if na == 0.0 and nb == 0.0:
        return 0.0
    if na == 0.0 or nb == 0.0:
        return 1.0
    ia = int(np.argmax(np.abs(b)))
    s = a[ia] / b[ia]
    return float(np.max(np.abs(a - s * b)) / np.max(np.abs(a)))


def reconstruct_space(inst, space, t, truncation, bound, tol=None):
    """Rebuild the quasi-exponential space attached to an eigenspace and
    verify it three ways:

    (a) the Wronskian of the candidate basis matches
        e^{(h_1+..+h_N) u} (u+z_1)..(u+z_n) as a series about t;
    (b) the Plucker vector of the candidate basis matches the eigenvalue
        vector (T_lam eigenvalues)_{|lam|<=bound} projectively;
    (c) each candidate series is fitted by sum_i e^{h_i u} q_i(u).

    All residuals are relative and compared against tol.reconstruction.
    """
    tol = tol or DEFAULT_TOLERANCES
    N, n = inst.N, inst.n
    t = QQ(t)
    tf = float(t)
    length = N + truncation

    # single-row eigenvalue polynomials, with headroom for t-derivatives
    rows_needed = truncation + N
    row_polys = {}
    for i in range(rows_needed + 1):
        lam = Partition([i] if i else [])
        row_polys[i] = list(eigenvalue_polynomials(
            inst, space, lam, tol, op_poly=_row_operator_poly(inst, i)))

    rep = {}
    for i in range(rows_needed + 1):
        rep[N - 1 + i] = [c / factorial(N + i - 1) for c in row_polys[i]]

    def time_derivative(r):
        out = {}
        for s, c in r.items():
            d = [(a + 1) * c[a + 1] for a in range(len(c) - 1)]
            if d:
                out[s] = polys.padd(out.get(s, []), d)
            if s >= 1:
                out[s - 1] = polys.padd(out.get(s - 1, []), [-s * x for x in c])
        return out

    def eval_at_t(coeffs):
        return float(np.polynomial.polynomial.polyval(
            tf, np.array(coeffs, dtype=float))) if coeffs else 0.0

    candidates = []
    cur = rep
    for j in range(N):
        candidates.append([eval_at_t(cur.get(s)) for s in range(length)])
        if j + 1 < N:
            cur = time_derivative(cur)

    report = {"eigenspace_dim": space.dim}

    # (a) Wronskian match
    wlen = max(truncation - N, 1)
    rows = [candidates]
    for _ in range(N - 1):
        rows.append([_series_deriv(v) for v in rows[-1]])
    series_rows = [[rows[i][j] for j in range(N)] for i in range(N)]
    wr = _series_det(series_rows, wlen)
    hsum = float(sum(inst.h, ZERO))
    target = _exp_series(hsum, wlen)
    for z in inst.z:
        target = _series_product(target, [float(t + z), 1.0], wlen)
    report["wronskian_residual"] = _projective_residual(wr, target)

    # (b) Plucker vector vs eigenvalue vector
    taylor = np.empty((bound + N, N))
    for r in range(bound + N):
        for j in range(N):
            taylor[r, j] = candidates[j][r] * factorial(r) if r < len(candidates[j]) else 0.0
    cand_values = {}
    for lam in partitions_upto(bound):
        rs = plucker_row_set(lam, N)
        cand_values[lam] = (float(np.linalg.det(taylor[list(rs), :]))
                            if rs is not None else 0.0)
    pv_candidates = PlueckerVector(N, bound, cand_values)

    eig_values = {}
    for lam in partitions_upto(bound):
        if lam in space.eigenvalues:
            eig_values[lam] = space.eigenvalues[lam]
        else:
            mat = _evaluated_operator(inst, lam, t).to_float_matrix()
            eig_values[lam] = float(np.mean(np.diag(
                space.basis.T @ (mat @ space.basis))))
    pv_eig = PlueckerVector(N, bound, eig_values)
    order = partitions_upto(bound)
    report["plucker_residual"] = _projective_residual(
        [cand_values[lam] for lam in order], [eig_values[lam] for lam in order])
    report["plucker_vector"] = pv_eig

    # (c) quasi-exponential fit of each candidate series
    dmax = n + comb(N, 2)
    columns = []
    for h in inst.h:
        eser = _exp_series(float(h), length)
        upow = [1.0] + [0.0] * (length - 1)
        shift = [tf, 1.0]
        for p in range(dmax + 1):
            columns.append(_series_product(eser, upow, length))
            upow = _series_product(upow, shift, length)
    design = np.array(columns).T
    fit_resid = 0.0
    fits = []
    for vec in candidates:
        target_vec = np.array(vec)
        sol, *_ = np.linalg.lstsq(design, target_vec, rcond=None)
        resid = np.max(np.abs(design @ sol - target_vec))
        scale = max(1.0, np.max(np.abs(target_vec)))
        fit_resid = max(fit_resid, resid / scale)
        fits.append(sol)
    report["fit_residual"] = fit_resid
    report["fit_coefficients"] = fits
    report["candidates"] = candidates

    limit = tol.reconstruction
    report["pass"] = bool(report["wronskian_residual"] <= limit
                          and report["plucker_residual"] <= limit
                          and report["fit_residual"] <= limit)
    return report


def verify_universal_coordinates(inst, t, bound, truncation, tol=None, seed=0):
    """Full pipeline: decompose, reconstruct every eigenspace, and check
    that the operator built from single-column eigenvalue polynomials
    annihilates every reconstructed series."""
    tol = tol or DEFAULT_TOLERANCES
    t = QQ(t)
    decomp = simultaneous_eigenspaces(inst, t, bound, tol, seed)
    reports = []
    link_worst = 0.0
    for space in decomp.spaces:
        rep = reconstruct_space(inst, space, t, truncation, bound, tol)
        # evaluated link check: sum_i (-1)^i Q_i(u) f^{(N-i)}(u) = 0 as a
        # series about t, with Q_i the single-column eigenvalue polynomials
        col_polys = []
        for i in range(inst.N + 1):
            lam = Partition([1] * i)
            col_polys.append(list(eigenvalue_polynomials(
                inst, space, lam, tol, op_poly=_column_operator_poly(inst, i))))
        margin = max(truncation - inst.N - 2, 1)
        for vec in rep["candidates"]:
            total = [0.0] * margin
            scale = max(1.0, max(abs(x) for x in vec))
            for i in range(inst.N + 1):
                q = polys.pshift([QQ(str(Fraction(c).limit_denominator(10 ** 12)))
                                  for c in col_polys[i]], t)
                qf = [float(x) for x in q]
                dser = vec
                for _ in range(inst.N - i):
                    dser = _series_deriv(dser)
                sign = -1.0 if i % 2 else 1.0
                contrib = _series_product(qf, dser, margin)
                for a in range(margin):
                    total[a] += sign * contrib[a]
            link_worst = max(link_worst, max(abs(x) for x in total) / scale)
        rep["link_residual"] = link_worst
        reports.append(rep)
    ok = all(r["pass"] for r in reports) and link_worst <= 1e-4
    return {"t": format_rational(t), "bound": bound, "truncation": truncation,
            "seed": seed, "n_eigenspaces": len(decomp.spaces),
            "dims": [s.dim for s in decomp.spaces],
            "decomposition_residual": decomp.residual,
            "link_residual": link_worst,
            "reports": reports, "pass": ok}


def verify_positivity_pipeline(inst, t, bound=6, truncation=None, tol=None,
                               seed=0, sign_tol=1e-8):
    """End-to-end positivity: reconstruct every eigenspace and require its
    Plucker vector to be one-signed within sign_tol."""
    tol = tol or DEFAULT_TOLERANCES
    t = QQ(t)
    hyp = all(h >= 0 for h in inst.h) and all(t >= -z for z in inst.z)
    truncation = truncation or (inst.n + bound + inst.N + 2)
    decomp = simultaneous_eigenspaces(inst, t, bound, tol, seed)
    checks = []
    for space in decomp.spaces:
        rep = reconstruct_space(inst, space, t, truncation, bound, tol)
        ok, worst = rep["plucker_vector"].sign_consistency()
        passed = ok or abs(worst) <= sign_tol
        checks.append({"dim": space.dim, "worst_signed_entry": worst,
                       "reconstruction_pass": rep["pass"], "pass": passed})
    return {"hypotheses_met": hyp,
            "warning": None if hyp else "hypotheses unmet: sign pattern not guaranteed",
            "checks": checks,
            "pass": all(c["pass"] for c in checks) or not hyp}
