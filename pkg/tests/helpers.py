"""Shared test oracles, independent of the library code paths they check."""

import itertools

import numpy as np

from nlwe.states import factor_dense


def ket(index, d):
    v = np.zeros(d, dtype=complex)
    v[index] = 1.0
    return v


def dft_col(n, d):
    """Dual-basis ket by direct summation of the defining formula."""
    return np.array(
        [np.exp(2j * np.pi * n * l / d) / np.sqrt(d) for l in range(d)]
    )


def kron_chain(*vecs):
    out = vecs[0]
    for v in vecs[1:]:
        out = np.kron(out, v)
    return out


def local_factors(states, dims):
    return [
        [factor_dense(s.factors[j], dims[j]) for j in range(len(dims))]
        for s in states
    ]


def brute_force_extendible(states, dims, tol=1e-9):
    """Enumerate every member->party assignment with numpy SVD ranks.

    Returns (number of viable assignments, first viable assignment or None).
    Only usable for small sets.
    """
    m, n = len(states), len(dims)
    local = local_factors(states, dims)
    rank = []
    for j in range(n):
        table = {}
        for mask in range(1 << m):
            vecs = [local[i][j] for i in range(m) if mask & (1 << i)]
            table[mask] = (
                0 if not vecs else np.linalg.matrix_rank(np.array(vecs), tol=tol)
            )
        rank.append(table)
    hits = 0
    first = None
    for assign in itertools.product(range(n), repeat=m):
        masks = [0] * n
        for i, j in enumerate(assign):
            masks[j] |= 1 << i
        if all(rank[j][masks[j]] < dims[j] for j in range(n)):
            hits += 1
            if first is None:
                first = assign
    return hits, first


def min_total_overlap(states, dims, restarts=20, iters=200, seed=7):
    """Minimize sum_i |<psi_i| prod_j phi_j>|^2 by alternating eigenvector
    updates with random restarts.  Independent certificate: a minimum bounded
    away from zero means no orthogonal product state exists."""
    rng = np.random.default_rng(seed)
    m, n = len(states), len(dims)
    local = local_factors(states, dims)
    best = np.inf
    for _ in range(restarts):
        phi = []
        for j in range(n):
            v = rng.standard_normal(dims[j]) + 1j * rng.standard_normal(dims[j])
            phi.append(v / np.linalg.norm(v))
        val = np.inf
        for _ in range(iters):
            low = val
            for j in range(n):
                mat = np.zeros((dims[j], dims[j]), dtype=complex)
                for i in range(m):
                    beta = 1.0
                    for l in range(n):
                        if l != j:
                            beta *= np.vdot(local[i][l], phi[l])
                    c = np.conj(beta) * local[i][j]
                    mat += np.outer(c, c.conj())
                w, v = np.linalg.eigh(mat)
                phi[j] = v[:, 0]
                low = w[0]
            if abs(val - low) < 1e-15:
                break
            val = low
        best = min(best, val)
    return float(best)


def random_hermitian(rng, n, scale=1.0):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (a + a.conj().T) / 2
