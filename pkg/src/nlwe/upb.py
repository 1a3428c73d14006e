"""Unextendible product bases: extraction from canonical circuits and the
exhaustive extendibility decision.

A product basis is extendible iff some assignment of members to parties
leaves, at every party, the span of the assigned local factors strictly
below the local dimension; the assigned party is the one whose factor must
kill any new orthogonal product state.  The search enumerates assignments
depth-first (members in listed order, parties ascending) and prunes a branch
as soon as one party's assigned factors span its whole local space.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, apply_symbolic
from .config import tolerance
from .ensembles import canonical_circuit
from .errors import ContractViolationError, PreconditionError
from .linalg import gram, orthogonal_complement_basis
from .report import VerificationReport
from .states import DFT, Dense, ProductState, factor_dense

UPB_ORTHOGONALITY_TOL = 1e-10


def minimal_size(dims) -> int:
    """Smallest possible UPB size on the given local dimensions."""
    return sum(int(d) - 1 for d in dims) + 1


@dataclass(frozen=True)
class Upb:
    """Stopper-completed orthogonal product set meeting the minimal UPB size.

    Construction enforces mutual orthogonality, the size bound
    sum(d_j - 1) + 1 <= m < D, and a valid stopper position.  Whether the
    set is actually unextendible is a property to verify with
    ``is_unextendible``, not an invariant of the container.
    """

    states: tuple
    dims: tuple
    stopper_index: int

    def __post_init__(self):
        states = tuple(self.states)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "dims", dims)
        m = len(states)
        total = int(np.prod(dims))
        if not 0 <= self.stopper_index < m:
            raise ContractViolationError(f"stopper index {self.stopper_index} out of range")
        if m < minimal_size(dims):
            raise ContractViolationError(
                f"{m} states is below the minimal UPB size {minimal_size(dims)}"
            )
        if m >= total:
            raise ContractViolationError(
                f"a UPB must be incomplete: {m} states in dimension {total}"
            )
        g = gram([s.dense() for s in states])
        off = float(np.max(np.abs(g - np.diag(np.diag(g))), initial=0.0))
        if off > UPB_ORTHOGONALITY_TOL:
            raise ContractViolationError(
                f"states are not mutually orthogonal (max overlap {off:.3e})"
            )

    def __len__(self) -> int:
        return len(self.states)

    def total_dimension(self) -> int:
        return int(np.prod(self.dims))


def _require_canonical(circuit: Circuit) -> None:
    n = len(circuit.dims)
    try:
        reference = canonical_circuit(n, circuit.dims)
    except Exception as exc:
        raise ContractViolationError(f"not a canonical circuit: {exc}") from exc
    if set(circuit.gates) != set(reference.gates):
        raise ContractViolationError(
            "circuit gates differ from the canonical n-gate construction"
        )


def extract_upb(circuit: Circuit, excluded_dft_index=None) -> Upb:
    """Extract the minimal-size stopper-completed set of a canonical circuit.

    For each gate, keep the generated states whose target factor is a
    dual-basis ket DFT(k) with k different from the excluded index of the
    target party (the controls sit at their canonical values), then append
    the stopper state made of the excluded dual-basis ket on every party.
    The default excluded index is d_j - 1 on each party.

    The result always meets the minimal UPB size bound and is mutually
    orthogonal.  It is genuinely unextendible when every party is a qubit;
    once any local dimension reaches 3, ``is_unextendible`` finds a product
    witness (one party absorbs all but one of the foreign families through
    their control values, the left-out family dies on its own excluded
    dual-basis ket, and a third party kills the remaining family plus the
    stopper with two directions).
    """
    _require_canonical(circuit)
    dims = circuit.dims
    n = len(dims)
    excluded = {p: dims[p] - 1 for p in range(n)}
    if excluded_dft_index:
        for p, k in dict(excluded_dft_index).items():
            p = int(p)
            k = int(k)
            if not 0 <= p < n:
                raise ContractViolationError(f"excluded index names unknown party {p}")
            if not 0 <= k < dims[p]:
                raise ContractViolationError(
                    f"excluded index {k} out of range for party dimension {dims[p]}"
                )
            excluded[p] = k
    members = []
    for gate in circuit.gates:
        t = gate.target
        controls = gate.control_map
        for k in range(dims[t]):
            if k == excluded[t]:
                continue
            cb_input = [0] * n
            for p, v in controls.items():
                cb_input[p] = v
            cb_input[t] = k
            members.append(apply_symbolic(circuit, cb_input))
    stopper = ProductState(tuple(DFT(excluded[p]) for p in range(n)), dims)
    members.append(stopper)
    return Upb(tuple(members), dims, stopper_index=len(members) - 1)


@dataclass
class ExtendibilityResult:
    extendible: bool
    assignments_covered: int
    assignment_bound: int
    nodes_visited: int
    witness_assignment: tuple | None = None
    witness_state: ProductState | None = None


def _search_branch(local, dims, tol, first_party=None):
    """Depth-first search over member->party assignments.

    ``local[i][j]`` is the dense factor of member i at party j.  Returns
    (witness assignment or None, assignments covered, nodes visited).
    Covered counts complete assignments either reached or ruled out by
    pruning, so an unextendible input always covers the full n^m bound.
    """
    m = len(local)
    n = len(dims)
    ortho = [[] for _ in range(n)]
    assignment = []
    covered = 0
    nodes = 0

    def residual(v, basis):
        for b in basis:
            v = v - np.vdot(b, v) * b
        for b in basis:
            v = v - np.vdot(b, v) * b
        return v

    def dfs(i):
        nonlocal covered, nodes
        if i == m:
            covered += 1
            return tuple(assignment)
        choices = (first_party,) if (i == 0 and first_party is not None) else range(n)
        for j in choices:
            nodes += 1
            v = residual(local[i][j], ortho[j])
            nrm = float(np.linalg.norm(v))
            grows = nrm > tol
            if grows and len(ortho[j]) + 1 == dims[j]:
                # party j would be fully spanned: no product state can be
                # orthogonal there, so every completion of this branch fails
                covered += n ** (m - i - 1)
                continue
            if grows:
                ortho[j].append(v / nrm)
            assignment.append(j)
            found = dfs(i + 1)
            assignment.pop()
            if grows:
                ortho[j].pop()
            if found is not None:
                return found
        return None

    return dfs(0), covered, nodes


def extendibility_search(states, dims, tol=None, threads: int = 1) -> ExtendibilityResult:
    """Decide whether a set of orthogonal product states is extendible.

    When extendible, the result carries the lexicographically least
    successful assignment and an orthogonal product witness built from the
    per-party complements of the assigned factors.
    """
    states = list(states)
    dims = tuple(int(d) for d in dims)
    tol = tolerance(tol)
    m = len(states)
    n = len(dims)
    local = [
        [factor_dense(s.factors[j], dims[j]) for j in range(n)] for s in states
    ]
    bound = n**m
    if threads > 1 and m > 0:
        with ThreadPoolExecutor(max_workers=min(threads, n)) as pool:
            branches = list(
                pool.map(
                    lambda j: _search_branch(local, dims, tol, first_party=j),
                    range(n),
                )
            )
        covered = sum(b[1] for b in branches)
        nodes = sum(b[2] for b in branches)
        witness = next((b[0] for b in branches if b[0] is not None), None)
    else:
        witness, covered, nodes = _search_branch(local, dims, tol)

    result = ExtendibilityResult(
        extendible=witness is not None,
        assignments_covered=covered,
        assignment_bound=bound,
        nodes_visited=nodes,
        witness_assignment=witness,
    )
    if witness is not None:
        factors = []
        for j in range(n):
            assigned = [local[i][j] for i in range(m) if witness[i] == j]
            comp = orthogonal_complement_basis(assigned, dims[j], tol)
            factors.append(Dense(comp[0]))
        result.witness_state = ProductState(tuple(factors), dims)
    return result


def is_unextendible(upb: Upb, tol=None, threads: int = 1) -> VerificationReport:
    """Exhaustively decide unextendibility of a UPB candidate.

    The report passes iff no member->party assignment leaves every party's
    assigned span below its local dimension.  When a witness assignment
    exists it is attached, together with an orthogonal product state, under
    ``extras``.
    """
    if len(upb) >= upb.total_dimension():
        raise PreconditionError("set already spans the full space; nothing to extend")
    res = extendibility_search(upb.states, upb.dims, tol=tol, threads=threads)
    report = VerificationReport()
    if res.extendible:
        detail = (
            f"extendible, {res.assignments_covered} assignments examined; "
            f"witness assignment {res.witness_assignment}"
        )
    else:
        detail = (
            f"unextendible, {res.assignments_covered} assignments examined "
            f"(pre-pruning bound)"
        )
    report.add(
        "unextendible",
        not res.extendible,
        residual=float(res.assignments_covered),
        detail=detail,
    )
    report.extras["result"] = res
    if res.witness_state is not None:
        report.extras["witness_state"] = res.witness_state
        report.extras["witness_assignment"] = res.witness_assignment
    return report
