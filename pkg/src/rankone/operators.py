"""Truncated matrices for M_z and its rank-one perturbations.

Exact work happens in monomial coordinates (column ``j`` is the image of
``z**j``) with Gram matrix ``diag(1/a_j)``, so every entry stays rational.
Float work uses the orthonormal basis ``u_j = sqrt(a_j) z**j``.

Truncations that raise degree are rectangular: an operator on
``span{z^0..z^(N-1)}`` is stored with enough rows to hold the whole image,
so products of such truncations carry no truncation error.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidSpace, PreconditionViolation
from .series import ONE, ZERO, ComplexRational, PowerSeries, as_series
from .space import WeightSequence

MONOMIAL = "monomial"
ORTHONORMAL = "orthonormal"


@dataclass(frozen=True)
class TruncatedOperator:
    """Matrix of a map ``span_N -> span_M`` in a tagged basis.

    ``entries`` is a list of row lists of :class:`ComplexRational` for the
    exact monomial basis, or a complex ndarray for the orthonormal basis.
    """

    entries: object
    basis: str
    space: WeightSequence
    structure: str = "dense"

    @property
    def exact(self) -> bool:
        return not isinstance(self.entries, np.ndarray)

    @property
    def shape(self):
        if self.exact:
            return (len(self.entries), len(self.entries[0]) if self.entries else 0)
        return self.entries.shape

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j] if self.exact else self.entries[i, j]

    def _like(self, entries, structure="dense"):
        return TruncatedOperator(entries, self.basis, self.space, structure)

    def __add__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        _check_compatible(self, other)
        if self.exact:
            rows, cols = self.shape[0], self.shape[1]
            out = [[_add(x, y) for x, y in zip(self.entries[i], other.entries[i])] for i in range(rows)]
            return self._like(out)
        return self._like(self.entries + other.entries)

    def __sub__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        _check_compatible(self, other)
        if self.exact:
            rows, cols = self.shape[0], self.shape[1]
            out = [[x - y if y else x for x, y in zip(self.entries[i], other.entries[i])] for i in range(rows)]
            return self._like(out)
        return self._like(self.entries - other.entries)

    def scale(self, c) -> "TruncatedOperator":
        if self.exact:
            c = ComplexRational.coerce(c)
            return self._like([[x * c for x in row] for row in self.entries], self.structure)
        return self._like(self.entries * complex(c), self.structure)

    def __matmul__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        if self.basis != other.basis or self.exact != other.exact:
            raise PreconditionViolation("basis mismatch in product")
        if self.cols != other.rows:
            raise PreconditionViolation(f"shape mismatch {self.shape} @ {other.shape}")
        if not self.exact:
            return self._like(self.entries @ other.entries)
        return self._like(_exact_matmul(self.entries, other.entries))

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product (exact lists or float arrays)."""
        if not self.exact:
            return self.entries @ np.asarray(vec)
        if len(vec) != self.cols:
            raise PreconditionViolation("vector length mismatch")
        out = []
        for row in self.entries:
            acc = ZERO
            for a, x in zip(row, vec):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    def resize(self, rows: int, cols: int) -> "TruncatedOperator":
        """Zero-pad or cut to the given shape."""
        if not self.exact:
            out = np.zeros((rows, cols), dtype=complex)
            r, c = min(rows, self.rows), min(cols, self.cols)
            out[:r, :c] = self.entries[:r, :c]
            return self._like(out, self.structure)
        out = [[ZERO] * cols for _ in range(rows)]
        for i in range(min(rows, self.rows)):
            src = self.entries[i]
            for j in range(min(cols, self.cols)):
                out[i][j] = src[j]
        return self._like(out, self.structure)

    def block(self, rows: int, cols: int) -> "TruncatedOperator":
        return self.resize(rows, cols)

    def is_zero(self) -> bool:
        if self.exact:
            return not any(any(row) for row in self.entries)
        return not np.any(self.entries)

    def to_orthonormal(self) -> "TruncatedOperator":
        """Float copy in the orthonormal basis: ``A[i,j] * sqrt(a_j)/sqrt(a_i)``."""
        if self.basis == ORTHONORMAL:
            return self
        rows, cols = self.shape
        sq = np.array(self.space.sqrt_weights(max(rows, cols)))
        dense = np.array([[complex(x) for x in row] for row in self.entries], dtype=complex).reshape(rows, cols)
        return TruncatedOperator(dense * sq[None, :cols] / sq[:rows, None], ORTHONORMAL, self.space, self.structure)

    def to_monomial_float(self) -> np.ndarray:
        """Float monomial-coordinate matrix (inverse of :meth:`to_orthonormal`)."""
        if self.basis == MONOMIAL:
            return np.array([[complex(x) for x in row] for row in self.entries], dtype=complex)
        rows, cols = self.shape
        sq = np.array(self.space.sqrt_weights(max(rows, cols)))
        return self.entries * sq[:rows, None] / sq[None, :cols]

    def to_csv(self, stream: Optional[io.TextIOBase] = None) -> str:
        """Row-major CSV, one ``re,im`` pair per cell."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for i in range(self.rows):
            cells = []
            for j in range(self.cols):
                x = self[i, j]
                if self.exact:
                    cells.append(f"{x.re},{x.im}")
                else:
                    cells.append(f"{x.real!r},{x.imag!r}")
            writer.writerow(cells)
        text = buf.getvalue()
        if stream is not None:
            stream.write(text)
        return text


def _check_compatible(a: TruncatedOperator, b: TruncatedOperator) -> None:
    if a.shape != b.shape or a.basis != b.basis or a.exact != b.exact:
        raise PreconditionViolation(f"incompatible operators {a.shape}/{a.basis} vs {b.shape}/{b.basis}")


def _add(x, y):
    if not y:
        return x
    if not x:
        return y
    return x + y


def _exact_matmul(A, B):
    """Dense exact product that skips zero entries of the left factor."""
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(rows):
        acc = [ZERO] * cols
        for k, a in enumerate(A[i]):
            if not a:
                continue
            Bk = B[k]
            if a == ONE:
                for j in range(cols):
                    b = Bk[j]
                    if b:
                        acc[j] = acc[j] + b
            else:
                for j in range(cols):
                    b = Bk[j]
                    if b:
                        acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def _zeros(rows: int, cols: int):
    return [[ZERO] * cols for _ in range(rows)]


def identity(space: WeightSequence, rows: int, cols: int) -> TruncatedOperator:
    """Inclusion of ``span_cols`` into ``span_rows``."""
    m = _zeros(rows, cols)
    for j in range(min(rows, cols)):
        m[j][j] = ONE
    return TruncatedOperator(m, MONOMIAL, space, "shift-banded")


# --------------------------------------------------------------------------
# assembly
# --------------------------------------------------------------------------


def shift_matrix(space: WeightSequence, N: int, basis: str = MONOMIAL, rows: Optional[int] = None) -> TruncatedOperator:
    """M_z on ``span_N``; ``(N+1) x N`` unless ``rows`` says otherwise."""
    if N < 1:
        raise PreconditionViolation("N must be at least 1")
    rows = N + 1 if rows is None else rows
    m = _zeros(rows, N)
    for j in range(min(N, rows - 1)):
        m[j + 1][j] = ONE
    op = TruncatedOperator(m, MONOMIAL, space, "shift-banded")
    return op.to_orthonormal() if basis == ORTHONORMAL else op


def gram_column(g: PowerSeries, space: WeightSequence, N: int) -> list:
    """``<z^j, g> = conj(g_j) / a_j`` for ``j < N``."""
    return [g.coeff(j).conjugate() / space.a(j) for j in range(N)]


def rank_one_matrix(f, g, space: WeightSequence, M: int, N: int, basis: str = MONOMIAL) -> TruncatedOperator:
    """``f (x) g : h -> <h, g> f`` from ``span_N`` into ``span_M``."""
    f, g = as_series(f), as_series(g)
    fc = f.coeffs(M)
    m = _zeros(M, N)
    for j, w in enumerate(gram_column(g, space, N)):
        if w:
            for i in range(M):
                if fc[i]:
                    m[i][j] = fc[i] * w
    op = TruncatedOperator(m, MONOMIAL, space, "dense")
    return op.to_orthonormal() if basis == ORTHONORMAL else op


def adjoint(A: TruncatedOperator) -> TruncatedOperator:
    """Hilbert-space adjoint: ``a_i conj(A[j,i]) / a_j`` in monomial coordinates."""
    rows, cols = A.shape
    if not A.exact:
        return TruncatedOperator(A.entries.conj().T.copy(), A.basis, A.space, A.structure)
    a = A.space.weights(max(rows, cols))
    out = _zeros(cols, rows)
    for j in range(rows):
        row = A.entries[j]
        for i in range(cols):
            x = row[i]
            if x:
                out[i][j] = x.conjugate() * (a[i] / a[j])
    return TruncatedOperator(out, MONOMIAL, A.space, A.structure)


def inner_vectors(x: Sequence, y: Sequence, space: WeightSequence) -> ComplexRational:
    """Exact ``<x, y>`` for monomial coefficient vectors."""
    acc = ZERO
    for j, (p, q) in enumerate(zip(x, y)):
        if p and q:
            acc = acc + p * q.conjugate() / space.a(j)
    return acc


def pairing(f, g, space: WeightSequence) -> ComplexRational:
    """``<f, g>``; the eigenvalue candidate of ``M_z + f (x) g``."""
    return space.inner(as_series(f), as_series(g))


def basis_vector(space: WeightSequence, n: int) -> PowerSeries:
    """``e_n = a_n z^n``, the representer of ``h -> h^(n)``."""
    return PowerSeries.monomial(n, space.a(n))


def _degree(h: PowerSeries) -> int:
    return max(h.degree, 0)


def _is_constant(g: PowerSeries) -> bool:
    return g.is_polynomial and g.degree <= 0


@dataclass(frozen=True)
class RankOneShift:
    """``S = M_z + f (x) g`` on a weighted Hardy space; ``f``, ``g`` polynomials."""

    space: WeightSequence
    f: PowerSeries
    g: PowerSeries

    def __init__(self, space, f=0, g=1):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "f", as_series(f))
        object.__setattr__(self, "g", as_series(g))
        if not (self.f.is_polynomial and self.g.is_polynomial):
            raise PreconditionViolation("f and g must be polynomials")

    @property
    def deg_f(self) -> int:
        return _degree(self.f)

    @property
    def g_constant(self) -> bool:
        return _is_constant(self.g)

    @property
    def gamma(self) -> ComplexRational:
        return self.g.coeff(0)

    @property
    def mu(self) -> ComplexRational:
        """``<f, g>``."""
        return pairing(self.f, self.g, self.space)

    @property
    def raise_by(self) -> int:
        """Rows needed beyond the domain for one application."""
        return 1 + self.deg_f

    def exact_matrix(self, rows: int, N: int) -> TruncatedOperator:
        T = shift_matrix(self.space, N, rows=rows)
        return T + rank_one_matrix(self.f, self.g, self.space, rows, N)

    def rect(self, N: int) -> np.ndarray:
        """Orthonormal ``(N + 1 + deg f) x N`` truncation (no truncation error)."""
        return self.float_matrix(N + self.raise_by, N)

    def square(self, N: int) -> np.ndarray:
        """Orthonormal compression to ``span_N``."""
        return self.float_matrix(N, N)

    def float_matrix(self, rows: int, N: int) -> np.ndarray:
        space = self.space
        sq = np.array(space.sqrt_weights(max(rows, N) + 1))
        w = np.array(space.shift_weights(N))
        A = np.zeros((rows, N), dtype=complex)
        idx = np.arange(min(N, rows - 1))
        A[idx + 1, idx] = w[idx]
        # rank one: column j gets <u_j, g> f, in orthonormal coordinates
        fm = np.array([complex(c) for c in self.f.coeffs(rows)]) / sq[:rows]
        gcols = [complex(c) for c in gram_column(self.g, space, min(N, len(self.g.prefix)))]
        for j, c in enumerate(gcols):
            if c:
                A[:, j] += fm * (c * sq[j])
        return A

    def label(self) -> str:
        from .series import format_poly

        return f"{self.space.name}: f=[{format_poly(self.f)}], g=[{format_poly(self.g)}]"


# --------------------------------------------------------------------------
# powers
# --------------------------------------------------------------------------


def direct_power(space: WeightSequence, f, g, n: int, N: int, rows: Optional[int] = None) -> TruncatedOperator:
    """``(T + f (x) g)^n`` on ``span_N`` by repeated multiplication of truncations.

    The working size leaves room for every intermediate image, so the
    product equals the compression of the true power.
    """
    if n < 1:
        raise PreconditionViolation("n must be at least 1")
    f, g = as_series(f), as_series(g)
    B = 1 + _degree(f)
    rows = N + n + _degree(f) if rows is None else rows
    R = max(rows, N + n * B)
    S = shift_matrix(space, R, rows=R) + rank_one_matrix(f, g, space, R, R)
    P = identity(space, R, N)
    for _ in range(n):
        P = S @ P
    return P.resize(rows, N)


def lemma_rhs(space: WeightSequence, f, g, n: int, N: int) -> TruncatedOperator:
    """``T^n + sum_j <f,g>^(n-j-1) (z^j f) (x) g`` assembled term by term."""
    f, g = as_series(f), as_series(g)
    rows = N + n + _degree(f)
    out = shift_power(space, n, N, rows)
    mu = pairing(f, g, space)
    for j in range(n):
        c = mu ** (n - j - 1)
        if c:
            out = out + rank_one_matrix(f.shift(j).scale(c), g, space, rows, N)
    return TruncatedOperator(out.entries, MONOMIAL, space, "banded-plus-rank-one")


def shift_power(space: WeightSequence, n: int, N: int, rows: int) -> TruncatedOperator:
    m = _zeros(rows, N)
    for j in range(N):
        if j + n < rows:
            m[j + n][j] = ONE
    return TruncatedOperator(m, MONOMIAL, space, "shift-banded")


def power_via_lemma(space: WeightSequence, f, g, n: int, N: int) -> TruncatedOperator:
    """Closed-form power of ``M_z + f (x) g`` for ``g`` in ``ker M_z*``."""
    g = as_series(g)
    if n < 1:
        raise PreconditionViolation("n must be at least 1")
    if not _is_constant(g):
        raise PreconditionViolation("power formula needs M_z* g = 0, i.e. constant g")
    return lemma_rhs(space, f, g, n, N)


def _apply_power(S: TruncatedOperator, vec: list, n: int) -> list:
    for _ in range(n):
        vec = S.apply(vec)
    return vec


def two_cyclic_identity(xi, f, g, space: WeightSequence, n: int, N: int) -> list:
    """``T^n xi - (S^n xi - <xi,g> S^(n-1) f)`` as a coefficient vector (should be 0)."""
    xi, f, g = as_series(xi), as_series(f), as_series(g)
    if n < 1:
        raise PreconditionViolation("n must be at least 1")
    if not _is_constant(g):
        raise PreconditionViolation("2-cyclicity identity needs constant g")
    R = max(N, len(xi.prefix), len(f.prefix)) + n * (1 + _degree(f)) + 1
    S = shift_matrix(space, R, rows=R) + rank_one_matrix(f, g, space, R, R)
    T = shift_matrix(space, R, rows=R)
    x = xi.coeffs(R)
    Tn = _apply_power(T, x, n)
    Sn = _apply_power(S, x, n)
    Sf = _apply_power(S, f.coeffs(R), n - 1)
    c = space.inner(xi, g)
    return [a - (b - c * d) for a, b, d in zip(Tn, Sn, Sf)]


def eigen_residual_exact(space: WeightSequence, f, g, lam, h) -> list:
    """Exact coefficients of ``(S - lam) h`` for polynomial ``h``."""
    f, g, h = as_series(f), as_series(g), as_series(h)
    lam = ComplexRational.coerce(lam)
    R = max(len(h.prefix) + 1, len(f.prefix), 1)
    S = shift_matrix(space, R, rows=R) + rank_one_matrix(f, g, space, R, R)
    x = h.coeffs(R)
    Sx = S.apply(x)
    return [a - lam * b for a, b in zip(Sx, x)]


# --------------------------------------------------------------------------
# Cauchy duals and the kernel condition
# --------------------------------------------------------------------------


def exact_inverse(A: TruncatedOperator) -> TruncatedOperator:
    """Gauss-Jordan inverse over the Gaussian rationals."""
    n = A.rows
    if A.cols != n:
        raise PreconditionViolation("inverse needs a square matrix")
    M = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(A.entries)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise InvalidSpace("singular matrix in exact inverse")
        M[col], M[piv] = M[piv], M[col]
        inv = ONE / M[col][col]
        M[col] = [x * inv for x in M[col]]
        pivot_row = M[col]
        for r in range(n):
            if r != col and M[r][col]:
                factor = M[r][col]
                M[r] = [x - factor * y if y else x for x, y in zip(M[r], pivot_row)]
    return TruncatedOperator([row[n:] for row in M], A.basis, A.space)


def cauchy_dual(space: WeightSequence, N: int) -> TruncatedOperator:
    """``T' = T (T*T)^-1`` for the shift: ``z^k -> (a_{k+1}/a_k) z^{k+1}``."""
    T = shift_matrix(space, N)
    TtT = adjoint(T) @ T
    d = []
    for k in range(N):
        x = TtT[k, k]
        if not x:
            raise InvalidSpace("T*T is singular")
        d.append(ONE / x)
    m = _zeros(N + 1, N)
    for k in range(N):
        m[k + 1][k] = d[k]
    return TruncatedOperator(m, MONOMIAL, space, "shift-banded")


def cauchy_dual_direct(space: WeightSequence, f, g, N: int) -> TruncatedOperator:
    """``S (S*S)^-1`` computed from the truncations (oracle for the formula)."""
    f, g = as_series(f), as_series(g)
    rows = N + 1 + _degree(f)
    S = shift_matrix(space, N, rows=rows) + rank_one_matrix(f, g, space, rows, N)
    G = adjoint(S) @ S
    return S @ exact_inverse(G)


def cauchy_dual_perturbed(space: WeightSequence, f, g, N: int) -> TruncatedOperator:
    """``T' + (1 + ||T'g||^2)^-1 (f - T'g) (x) (T*T)^-1 g`` for unit ``f`` in ker T*."""
    f, g = as_series(f), as_series(g)
    if not _is_constant(f):
        raise PreconditionViolation("f must lie in ker M_z* (a constant)")
    if space.inner(f, f) != 1:
        raise PreconditionViolation("f must have unit norm")
    if not g.is_polynomial or g.degree >= N - 1:
        raise PreconditionViolation("g must be a polynomial of degree < N - 1")
    Tp = cauchy_dual(space, N)
    gv = g.coeffs(N)
    Tp_g = Tp.apply(gv)  # length N+1
    norm2 = inner_vectors(Tp_g, Tp_g, space)
    # (T*T)^-1 z^k = (a_{k+1}/a_k) z^k
    inv_g = [gv[k] * (space.a(k + 1) / space.a(k)) for k in range(N)]
    left = [a - b for a, b in zip(f.coeffs(N + 1), Tp_g)]
    coef = ONE / (ONE + norm2)
    R = rank_one_matrix(PowerSeries.poly(left).scale(coef), PowerSeries.poly(inv_g), space, N + 1, N)
    return TruncatedOperator((Tp + R).entries, MONOMIAL, space, "banded-plus-rank-one")


def kernel_condition_check(space: WeightSequence) -> tuple:
    """Whether ``M_z* M_z`` maps ``span{1}`` into itself; returns (ok, image of 1)."""
    N = 2
    T = shift_matrix(space, N)
    TtT = adjoint(T) @ T
    image = [TtT[i, 0] for i in range(N)]
    ok = all(not x for x in image[1:])
    return ok, image
