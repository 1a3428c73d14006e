"""Dense complex linear algebra used by every other module.

Conventions
-----------
Vectors are 1-D complex ndarrays, matrices are 2-D (row-major).  Party 0
occupies the most significant tensor slot, i.e. ``tensor(a, b)`` puts ``a``
on the slower-varying index.  The DFT uses the +i sign convention, so for
qubits it coincides with the Hadamard.
"""

from __future__ import annotations

import numpy as np

from .config import tolerance
from .errors import (
    ContractViolationError,
    ConvergenceError,
    DegenerateCutError,
    DimensionMismatchError,
    InvalidDimensionError,
)

HERMITICITY_TOL = 1e-10
JACOBI_OFFDIAG_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def dft_matrix(d: int) -> np.ndarray:
    """Return the d-dimensional discrete Fourier transform matrix.

    Column n is the dual-basis ket expanded in the computational basis:
    ``F[l, n] = exp(+2j*pi*n*l/d) / sqrt(d)``.  For d = 2 this is the
    Hadamard, sending |0> to |0+1> and |1> to |0-1>.
    """
    if d < 1:
        raise InvalidDimensionError(f"DFT dimension must be a positive integer, got {d}")
    idx = np.arange(d)
    return np.exp(2j * np.pi * np.outer(idx, idx) / d) / np.sqrt(d)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two vectors or two matrices, left factor slowest."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise DimensionMismatchError(
            f"tensor expects two vectors or two matrices, got ndim {a.ndim} and {b.ndim}"
        )
    return np.kron(a, b)


def kron_all(factors) -> np.ndarray:
    """Kronecker product of a sequence of vectors or matrices."""
    factors = list(factors)
    if not factors:
        raise DimensionMismatchError("kron_all needs at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def gram(vectors) -> np.ndarray:
    """Matrix of pairwise inner products G[i, j] = <v_i|v_j>.

    Conjugate-linear in the first argument.  Zero vectors are legal inputs.
    """
    vecs = [np.asarray(v, dtype=complex) for v in vectors]
    if not vecs:
        return np.zeros((0, 0), dtype=complex)
    dim = vecs[0].shape
    for v in vecs[1:]:
        if v.shape != dim:
            raise DimensionMismatchError("gram requires all vectors to share one dimension")
    stack = np.array(vecs)
    return stack.conj() @ stack.T


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(
    a: np.ndarray,
    *,
    offdiag_tol: float = JACOBI_OFFDIAG_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvector k stored in column k.  Sweeps run until the off-diagonal
    Frobenius norm drops below ``offdiag_tol``; exceeding ``max_sweeps``
    raises a convergence error.
    """
    a = np.array(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("eigensolver requires a square matrix")
    if float(np.max(np.abs(a - a.conj().T), initial=0.0)) > HERMITICITY_TOL:
        raise ContractViolationError("matrix is not Hermitian within 1e-10")
    a = (a + a.conj().T) / 2
    n = a.shape[0]
    vecs = np.eye(n, dtype=complex)
    if n == 1:
        return a.real.diagonal().copy(), vecs

    skip_thresh = offdiag_tol / (100.0 * n)
    converged = _offdiag_norm(a) <= offdiag_tol
    for _ in range(max_sweeps):
        if converged:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= skip_thresh:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # Rotation V: identity except V[p,p]=c, V[p,q]=s,
                # V[q,p]=-s*conj(phase), V[q,q]=c*conj(phase);  A <- V† A V.
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(phase) * col_q
                a[:, q] = s * col_p + c * np.conj(phase) * col_q
                vcol_p = vecs[:, p].copy()
                vcol_q = vecs[:, q].copy()
                vecs[:, p] = c * vcol_p - s * np.conj(phase) * vcol_q
                vecs[:, q] = s * vcol_p + c * np.conj(phase) * vcol_q
        converged = _offdiag_norm(a) <= offdiag_tol
    if not converged:
        raise ConvergenceError(
            f"Jacobi sweeps did not reach off-diagonal norm {offdiag_tol:g} "
            f"within {max_sweeps} sweeps"
        )
    evals = a.real.diagonal().copy()
    order = np.argsort(evals, kind="stable")
    return evals[order], vecs[:, order]


def hermitian_eigenvalues(
    a: np.ndarray,
    *,
    offdiag_tol: float = JACOBI_OFFDIAG_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending."""
    evals, _ = jacobi_eigh(a, offdiag_tol=offdiag_tol, max_sweeps=max_sweeps)
    return evals


def partial_transpose(rho: np.ndarray, dims, subset) -> np.ndarray:
    """Transpose the tensor indices of the parties in ``subset``.

    ``rho`` must be D x D with D the product of ``dims``.  The subset must
    be a nonempty proper set of party indices; transposing everything (or
    nothing) is rejected as a degenerate cut.
    """
    rho = np.asarray(rho, dtype=complex)
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise DimensionMismatchError(
            f"matrix shape {rho.shape} does not match dims {dims} (D={total})"
        )
    parties = sorted(set(int(p) for p in subset))
    if any(p < 0 or p >= n for p in parties):
        raise DimensionMismatchError(f"subset {parties} outside party range 0..{n - 1}")
    if not parties or len(parties) == n:
        raise DegenerateCutError("partial transpose needs a nonempty proper subset of parties")
    t = rho.reshape(dims + dims)
    axes = list(range(2 * n))
    for p in parties:
        axes[p], axes[n + p] = axes[n + p], axes[p]
    return t.transpose(axes).reshape(total, total)


def _project_out(v: np.ndarray, basis) -> np.ndarray:
    # two passes of classical Gram-Schmidt for numerical safety
    for _ in range(2):
        for b in basis:
            v = v - np.vdot(b, v) * b
    return v


def orthonormalize(vectors, tol: float | None = None) -> list[np.ndarray]:
    """Orthonormal basis of span(vectors), built in input order.

    Inputs are normalized first, so the result is invariant under nonzero
    rescaling of any input.  Exact zero vectors contribute nothing.
    """
    tol = tolerance(tol)
    basis: list[np.ndarray] = []
    for v in vectors:
        v = np.asarray(v, dtype=complex)
        nrm = np.linalg.norm(v)
        if nrm == 0.0:
            continue
        v = _project_out(v / nrm, basis)
        resid = np.linalg.norm(v)
        if resid > tol:
            basis.append(v / resid)
    return basis


def span_dimension(vectors, tol: float | None = None) -> int:
    """Dimension of the span, rejecting Gram-Schmidt residuals below tol."""
    return len(orthonormalize(vectors, tol))


def orthogonal_complement_basis(vectors, ambient_dim: int, tol: float | None = None) -> list[np.ndarray]:
    """Orthonormal basis of the orthogonal complement of span(vectors).

    The complement is generated deterministically by sweeping the
    computational basis of the ambient space in index order, so repeated
    calls on the same input produce identical output.
    """
    tol = tolerance(tol)
    seed = orthonormalize(vectors, tol)
    comp: list[np.ndarray] = []
    for i in range(int(ambient_dim)):
        v = np.zeros(int(ambient_dim), dtype=complex)
        v[i] = 1.0
        v = _project_out(v, seed)
        v = _project_out(v, comp)
        resid = np.linalg.norm(v)
        if resid > tol:
            comp.append(v / resid)
    return comp
