"""Floating-point spectral estimates on truncations.

Everything here works in the orthonormal basis ``u_j = sqrt(a_j) z^j``.
The rectangular truncation of ``S - lam`` to ``span_N`` keeps every row the
image can reach, so its smallest singular value is the exact infimum of
``||(S - lam) h||`` over unit ``h`` in ``span_N``: an upper bound on the
injectivity modulus that decreases to it as ``N`` grows.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.linalg as sla

from .errors import Divergent, InconclusiveGap, PreconditionViolation
from .operators import RankOneShift
from .series import as_series
from .space import norm_sq

EPS = np.finfo(float).eps
NEAR_SINGULAR = 1e-6


def default_tau(N: int) -> float:
    """Mask threshold ``10 / sqrt(N)``."""
    return 10.0 / math.sqrt(N)


# --------------------------------------------------------------------------
# injectivity modulus
# --------------------------------------------------------------------------


def _bidiagonal(op: RankOneShift) -> bool:
    return op.g_constant and op.deg_f <= 1


def injectivity_modulus_dense(op: RankOneShift, lam: complex, N: int) -> float:
    """Smallest singular value of the rectangular truncation, by dense SVD."""
    A = op.rect(N)
    A[np.arange(N), np.arange(N)] -= lam
    return float(sla.svdvals(A)[-1])


def injectivity_modulus(op: RankOneShift, lam: complex, N: int) -> float:
    """``min ||(S - lam) h||`` over unit ``h`` in ``span_N``.

    Lower-bidiagonal truncations (constant ``g``, ``deg f <= 1``) go through
    the Golub-Kahan tridiagonal form and LAPACK bisection; anything else
    falls back to a dense SVD.
    """
    if not _bidiagonal(op):
        return injectivity_modulus_dense(op, lam, N)
    A = op.float_matrix(N + 1, N)
    d = np.abs(A[np.arange(N), np.arange(N)] - lam)
    e = np.abs(A[np.arange(1, N + 1), np.arange(N)])
    off = np.empty(2 * N)
    off[0::2] = d
    off[1::2] = e
    vals = sla.eigvalsh_tridiagonal(
        np.zeros(2 * N + 1), off, select="i", select_range=(N + 1, N + 1), tol=0.0
    )
    return float(max(vals[0], 0.0))


def _upper_bound(A: np.ndarray, lams: np.ndarray) -> np.ndarray:
    # ||A - lam E|| <= ||A||_F + |lam|
    return np.linalg.norm(A) + np.abs(lams) + 1.0


def _moduli_sturm(op: RankOneShift, lams: np.ndarray, N: int, iters: int = 54) -> np.ndarray:
    """Vectorized smallest singular values of ``A - lam E`` over many ``lam``.

    The Hermitian dilation ``[[0, A], [A^H, 0]]`` in the interleaved order
    (row 0, col 0, row 1, col 1, ...) is tridiagonal except for a small
    head block that holds column 0 of the rank-one term.  Eigenvalue counts
    below ``x`` come from a bottom-up Sturm recurrence on the tail plus a
    batched eigen-decomposition of the head (Sylvester inertia).
    """
    d = op.deg_f
    A = op.float_matrix(N + 1, N)  # rows past N are zero for constant g
    P = lams.shape[0]
    h = 2 * d + 1
    n = 2 * N + 1
    lam2 = np.abs(lams) ** 2
    # squared tail couplings b_k between positions k and k+1, k >= h - 1
    shared = np.abs(A[np.arange(1, N + 1), np.arange(N)]) ** 2  # |A[j+1, j]|^2
    # head block: positions 0..2d -> rows 0..d and columns 0..d-1
    head = np.zeros((P, h, h), dtype=complex)
    for i in range(d + 1):
        for j in range(d):
            a = A[i, j] - (lams if i == j else 0.0)
            head[:, 2 * i, 2 * j + 1] = a
            head[:, 2 * j + 1, 2 * i] = np.conj(a)
    corner = np.abs(A[d, d] - lams) ** 2  # b_{2d}: row d to column d
    upper = _upper_bound(A, lams)
    lo = np.zeros(P)
    hi = upper.copy()
    target = N + 2  # N negatives + one structural zero + sigma_min
    eye = np.eye(h)
    tmp = np.empty(P)
    pos = np.empty(P, dtype=bool)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        for _ in range(iters):
            x = 0.5 * (lo + hi)
            # p = -q of the usual Sturm recurrence; IEEE infinities absorb zero pivots
            # a zero p is +0 and stands for +tiny: counted here, and b2/p = +inf next
            p = x.copy()
            count = np.zeros(P, dtype=np.int64)
            np.greater_equal(p, 0, out=pos)
            count += pos
            for k in range(n - 2, h - 1, -1):
                b2 = shared[(k - 1) // 2] if k % 2 else lam2
                np.divide(b2, p, out=tmp)
                np.subtract(x, tmp, out=p)
                np.greater_equal(p, 0, out=pos)
                count += pos
            block = head - x[:, None, None] * eye
            block[:, h - 1, h - 1] += corner / p
            count += _negative_pivots(block)
            above = count >= target
            hi = np.where(above, x, hi)
            lo = np.where(above, lo, x)
    return 0.5 * (lo + hi)


def _negative_pivots(M: np.ndarray) -> np.ndarray:
    """Inertia (negative count) of a batch of small Hermitian blocks via LDL^H."""
    M = M.copy()
    h = M.shape[1]
    tiny = np.finfo(float).tiny
    count = np.zeros(M.shape[0], dtype=np.int64)
    for k in range(h - 1, -1, -1):
        piv = M[:, k, k].real
        piv = np.where(np.isnan(piv), -1e300, np.clip(piv, -1e300, 1e300))
        piv = np.where(piv == 0, -tiny, piv)
        count += piv < 0
        if k:
            col = M[:, :k, k]
            M[:, :k, :k] -= col[:, :, None] * col.conj()[:, None, :] / piv[:, None, None]
    return count


def modulus_many(op: RankOneShift, lams: Sequence[complex], N: int, threads: int = 1, chunk: int = 4096) -> np.ndarray:
    """Injectivity moduli at many points; output order matches ``lams``."""
    lams = np.asarray(lams, dtype=complex).ravel()
    if not op.g_constant or op.deg_f >= N:
        return np.array([injectivity_modulus_dense(op, lam, N) for lam in lams])
    chunks = [lams[i:i + chunk] for i in range(0, lams.size, chunk)]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: _moduli_sturm(op, c, N), chunks))
    else:
        parts = [_moduli_sturm(op, c, N) for c in chunks]
    out = np.concatenate(parts) if parts else np.zeros(0)
    # the unpivoted head factorization resolves only ~sqrt(eps) near an exact
    # zero; the few such points are redone by dense SVD
    for k in np.flatnonzero(out < NEAR_SINGULAR):
        out[k] = injectivity_modulus_dense(op, lams[k], N)
    return out


# --------------------------------------------------------------------------
# grid scans
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int = 201
    ny: int = 201

    @classmethod
    def square(cls, R: float, resolution: int = 201) -> "GridSpec":
        return cls(-R, R, -R, R, resolution, resolution)

    @property
    def re(self) -> np.ndarray:
        return np.linspace(self.re_min, self.re_max, self.nx)

    @property
    def im(self) -> np.ndarray:
        return np.linspace(self.im_min, self.im_max, self.ny)

    @property
    def step(self) -> float:
        sx = (self.re_max - self.re_min) / (self.nx - 1) if self.nx > 1 else 0.0
        sy = (self.im_max - self.im_min) / (self.ny - 1) if self.ny > 1 else 0.0
        return max(sx, sy)

    def points(self) -> np.ndarray:
        """``(ny, nx)`` array; row ``i`` has imaginary part ``im[i]``."""
        return self.re[None, :] + 1j * self.im[:, None]

    def nearest(self, lam: complex) -> tuple:
        i = int(np.argmin(np.abs(self.im - lam.imag)))
        j = int(np.argmin(np.abs(self.re - lam.real)))
        return i, j

    def to_dict(self) -> dict:
        return {
            "re_min": self.re_min, "re_max": self.re_max,
            "im_min": self.im_min, "im_max": self.im_max,
            "nx": self.nx, "ny": self.ny,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GridSpec":
        return cls(
            float(data["re_min"]), float(data["re_max"]),
            float(data["im_min"]), float(data["im_max"]),
            int(data["nx"]), int(data["ny"]),
        )


@dataclass
class SpectralScan:
    grid: GridSpec
    modulus: np.ndarray
    tau: float
    N: int

    @property
    def mask(self) -> np.ndarray:
        return self.modulus <= self.tau

    def to_csv(self, stream: Optional[io.TextIOBase] = None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["re", "im", "modulus", "in_left_spectrum"])
        mask = self.mask
        re, im = self.grid.re, self.grid.im
        for i in range(self.grid.ny):
            for j in range(self.grid.nx):
                writer.writerow([f"{re[j]:.12g}", f"{im[i]:.12g}", f"{self.modulus[i, j]:.12e}", int(mask[i, j])])
        text = buf.getvalue()
        if stream is not None:
            stream.write(text)
        return text


def default_grid(op: RankOneShift, resolution: int = 201, r_estimate: Optional[float] = None) -> GridSpec:
    """Square grid of half-width ``max(r, |<f,g>|) + 0.5``."""
    if r_estimate is None:
        base = RankOneShift(op.space, 0, 0)
        r_estimate = spectral_radius_gelfand(base, 128, 16).value
    R = max(r_estimate, abs(complex(op.mu))) + 0.5
    return GridSpec.square(R, resolution)


def left_spectrum_scan(op: RankOneShift, grid: Optional[GridSpec] = None, N: int = 256,
                       tau: Optional[float] = None, threads: int = 1) -> SpectralScan:
    grid = default_grid(op) if grid is None else grid
    tau = default_tau(N) if tau is None else tau
    pts = grid.points()
    mod = modulus_many(op, pts.ravel(), N, threads=threads).reshape(pts.shape)
    return SpectralScan(grid, mod, float(tau), N)


# --------------------------------------------------------------------------
# spectral radius
# --------------------------------------------------------------------------


@dataclass
class RadiusEstimate:
    value: float
    sequence: list = field(default_factory=list)


def spectral_radius_gelfand(op: RankOneShift, N: int = 256, n_max: int = 32) -> RadiusEstimate:
    """``||S^n||^(1/n)`` for ``n = 1..n_max`` on degree-tracked truncations."""
    if n_max < 1:
        raise PreconditionViolation("n_max must be positive")
    R = N + n_max * op.raise_by + 1
    S = op.float_matrix(R, R)
    P = np.zeros((R, N), dtype=complex)
    P[np.arange(N), np.arange(N)] = 1.0
    seq = []
    log_scale = 0.0
    for n in range(1, n_max + 1):
        P = S @ P
        norm = float(sla.norm(P, 2))
        if norm == 0.0:
            seq.extend([0.0] * (n_max - n + 1))
            break
        # keep P at unit norm; the log carries the magnitude
        log_scale += math.log(norm)
        P /= norm
        seq.append(math.exp(log_scale / n))
    return RadiusEstimate(seq[-1], seq)


# --------------------------------------------------------------------------
# subspaces
# --------------------------------------------------------------------------


@dataclass
class SubspaceEstimate:
    dimension: int
    basis: np.ndarray
    singular_values: np.ndarray
    gap_ratio: float
    diagnostics: dict = field(default_factory=dict)


def _gap_call(sv: np.ndarray, threshold: float) -> tuple:
    """Count singular values at or below ``threshold``; return (dim, ratio)."""
    dim = int(np.sum(sv <= threshold))
    if dim == 0:
        ratio = sv[0] / threshold if threshold > 0 else math.inf
    elif dim == len(sv):
        ratio = math.inf
    else:
        kept = max(sv[dim - 1], EPS * threshold)
        ratio = sv[dim] / kept
    return dim, float(ratio)


def adjoint_kernel(op: RankOneShift, N: int = 256, gap: float = 10.0) -> SubspaceEstimate:
    """Kernel of ``S*`` from the trailing singular vectors of its compression.

    For constant ``g`` the span of the first ``N`` monomials is invariant
    under ``S*``, so the compression has the same kernel.
    """
    if not op.g_constant:
        raise PreconditionViolation("adjoint_kernel expects S = M_z + f (x) gamma")
    B = op.square(N).conj().T
    _, s, Vh = np.linalg.svd(B)
    s_asc = s[::-1]
    threshold = 1e-8 * max(s[0], 1.0)
    dim, ratio = _gap_call(s_asc, threshold)
    if ratio < gap:
        raise InconclusiveGap(f"adjoint kernel gap ratio {ratio:.3g} < {gap}", estimate=dim)
    basis = Vh[N - dim:].conj().T if dim else np.zeros((N, 0), dtype=complex)
    return SubspaceEstimate(dim, basis, s_asc[: dim + 2], ratio)


def _window_sine(v: np.ndarray, M: np.ndarray, rows: int, tol: float) -> float:
    """Sine of the angle between ``v`` and ``range(M)``, both cut to the first ``rows``."""
    w = v[:rows]
    nw = np.linalg.norm(w)
    if nw == 0:
        return 1.0
    U, s, _ = np.linalg.svd(M[:rows], full_matrices=False)
    Q = U[:, s > tol * max(s[0], 1e-300)] if s.size and s[0] > 0 else U[:, :0]
    r = w - Q @ (Q.conj().T @ w)
    return float(np.linalg.norm(r) / nw)


def hyper_range(op: RankOneShift, N: int = 256, K: int = 12, gap: float = 10.0) -> SubspaceEstimate:
    """Estimate of the hyper-range ``intersection_n range(S^n)``.

    For constant ``g`` the compression ``S_N`` is lower triangular with
    diagonal ``(<f,g>, 0, ..., 0)``, so ``intersection_n range(S_N^n)`` is the
    eigenvector for the one nonzero diagonal entry.  It survives in the
    limit only if the rectangular truncation of ``S - <f,g>`` keeps a near
    null vector, which is decided by a singular-value gap:

    * smallest singular value ``s1 <= 1e-8 * scale`` keeps the candidate, with
      ratio ``s2 / s1``; the candidate must also lie in every windowed
      ``range(S_N^n)`` for ``n <= K`` (top ``n (1 + deg f)`` rows masked);
    * otherwise the dimension is 0, with ratio ``s1 / threshold``.  If
      ``s1`` fell geometrically between ``N/2`` and ``N`` the tail of an
      eigenvector is still unresolved and the call is inconclusive.
    """
    if not op.g_constant:
        raise PreconditionViolation("hyper_range expects S = M_z + f (x) gamma")
    if K < 2:
        raise PreconditionViolation("K must be at least 2")
    SN = op.square(N)
    mu = complex(SN[0, 0])
    diag = {"mu": mu}
    if abs(mu) <= 64 * EPS * max(1.0, np.abs(SN).max()):
        # nilpotent compression: every power eventually kills span_N
        return SubspaceEstimate(0, np.zeros((N, 0), dtype=complex), np.zeros(0), math.inf, diag)

    def null_pair(n):
        A = op.rect(n)
        A[np.arange(n), np.arange(n)] -= mu
        _, s, Vh = np.linalg.svd(A, full_matrices=False)
        return s[::-1], Vh[-1].conj(), s[0]

    sv, v, smax = null_pair(N)
    threshold = 1e-8 * max(smax, 1.0)
    diag["threshold"] = threshold
    if sv[0] > threshold:
        ratio = float(sv[0] / threshold)
        sv_half, _, _ = null_pair(N // 2)
        decay = float(sv[0] / sv_half[0]) if sv_half[0] > 0 else 1.0
        diag["decay"] = decay
        if decay < 1.0 / gap:
            raise InconclusiveGap(
                f"smallest singular value fell by {decay:.2e} from N/2 to N; eigenvector tail unresolved",
                estimate=0,
            )
        if ratio < gap:
            raise InconclusiveGap(f"hyper-range gap ratio {ratio:.3g} < {gap}", estimate=0)
        return SubspaceEstimate(0, np.zeros((N, 0), dtype=complex), sv[:2], ratio, diag)
    ratio = float(sv[1] / max(sv[0], EPS * threshold))
    if ratio < gap:
        raise InconclusiveGap(f"hyper-range gap ratio {ratio:.3g} < {gap}", estimate=1)
    # range test over the powers, in a window clear of truncation damage
    sines = []
    P = np.eye(N, dtype=complex)
    for n in range(1, K + 1):
        P = SN @ P
        rows = N - n * op.raise_by
        sines.append(_window_sine(v, P, rows, 1e-10))
    diag["range_sines"] = sines
    dims = [int(s <= 1e-6) for s in sines[-2:]]
    if dims[0] != dims[1]:
        raise InconclusiveGap("hyper-range dimension differs between K-1 and K", estimate=dims[1])
    if not dims[1]:
        raise InconclusiveGap("null vector of S - <f,g> is not in the windowed ranges", estimate=1)
    v = v / np.linalg.norm(v)
    return SubspaceEstimate(1, v[:, None], sv[:2], ratio, diag)


# --------------------------------------------------------------------------
# eigenvectors and the wandering subspace property
# --------------------------------------------------------------------------


def orthonormal_coords(h, space, N: int) -> np.ndarray:
    """Float orthonormal coordinates ``c_j / sqrt(a_j)`` of ``h`` for ``j < N``."""
    h = as_series(h)
    sq = np.array(space.sqrt_weights(N))
    return np.array([complex(c) for c in h.coeffs(N)], dtype=complex) / sq


@dataclass
class EigenCheck:
    residual: float
    tail_norm: float


def eigen_check(op: RankOneShift, lam, h, N: int = 256) -> EigenCheck:
    """``||(S - lam) P_N h|| / ||P_N h||`` on the rectangular truncation.

    ``tail_norm`` bounds ``||h - P_N h||`` (inf when ``h`` is not in the space).
    """
    h = as_series(h)
    x = orthonormal_coords(h, op.space, N)
    nx = np.linalg.norm(x)
    if nx == 0:
        raise PreconditionViolation("candidate vanishes on span_N")
    A = op.rect(N)
    A[np.arange(N), np.arange(N)] -= complex(lam)
    res = float(np.linalg.norm(A @ x) / nx)
    if h.is_polynomial and h.degree < N:
        tail = 0.0
    else:
        try:
            t = norm_sq(h.remainder(N), op.space)
            tail = math.sqrt(float(t.value) + float(t.tail_bound))
        except Divergent:
            tail = math.inf
    return EigenCheck(res, tail)


@dataclass
class WanderingCheck:
    max_residual: float
    residuals: np.ndarray
    kernel_dim: int


def wandering_subspace_check(op: RankOneShift, N: int = 256, tau: float = 1e-12,
                             gap: float = 10.0) -> WanderingCheck:
    """Distance from ``u_k`` (``k < N/2``) to ``span{S^n e : e in ker S*, n <= N}``.

    The span is built by block Arnoldi with two Gram-Schmidt passes on a
    compression large enough that no ``S^n e`` loses coefficients; ``tau`` is
    the relative norm below which a new direction counts as dependent.
    """
    ker = adjoint_kernel(op, N, gap)
    M = N + op.raise_by + 2
    S = op.square(M)
    E = np.zeros((M, ker.dimension), dtype=complex)
    E[:N] = ker.basis
    # drop roundoff-level entries: S can amplify them geometrically (S 1 = 2 for f = 2 - z)
    E[np.abs(E) < 64 * EPS * np.abs(E).max(initial=0.0)] = 0
    Q = np.zeros((M, 0), dtype=complex)
    block = E
    for _ in range(N + 1):
        kept = []
        for col in block.T:
            base = np.linalg.norm(col)
            if base == 0:
                continue
            w = col.copy()
            for _pass in range(2):
                if Q.shape[1]:
                    w -= Q @ (Q.conj().T @ w)
                for k in kept:
                    w -= k * (k.conj() @ w)
            nw = np.linalg.norm(w)
            if nw > tau * base:
                kept.append(w / nw)
        if not kept:
            break
        new = np.stack(kept, axis=1)
        Q = np.hstack([Q, new])
        if Q.shape[1] >= M:
            break
        block = S @ new
    K = N // 2
    # column k: u_k minus its projection; row k of Q holds conj(Q^H u_k)
    R = -Q @ Q[:K].conj().T
    R[np.arange(K), np.arange(K)] += 1.0
    res = np.linalg.norm(R, axis=0)
    return WanderingCheck(float(res.max()) if res.size else 0.0, res, ker.dimension)
