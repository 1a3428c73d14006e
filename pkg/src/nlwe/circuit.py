"""Control-DFT gates and circuits acting on computational-basis inputs.

A gate applies the d-dimensional DFT to its target party exactly when every
control party holds the required computational-basis value, and the identity
otherwise.  A gate set is *exclusive* when every pair of gates shares a
control party with conflicting required values; exclusive gates commute and
map computational product states to product states.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolationError, DimensionMismatchError
from .linalg import dft_matrix, kron_all
from .report import VerificationReport, party_label
from .states import CB, DFT, ProductBasis, ProductState

COMMUTATION_TOL = 1e-12


@dataclass(frozen=True)
class ControlDftGate:
    """Control conditions (party -> required CB value) plus one DFT target."""

    controls: tuple
    target: int

    def __init__(self, controls, target: int):
        items = tuple(sorted((int(p), int(v)) for p, v in dict(controls).items()))
        object.__setattr__(self, "controls", items)
        object.__setattr__(self, "target", int(target))
        if any(p == self.target for p, _ in items):
            raise ContractViolationError(
                f"target party {target} cannot also be a control"
            )

    @property
    def control_map(self) -> dict[int, int]:
        return dict(self.controls)

    def matches(self, cb_input) -> bool:
        return all(cb_input[p] == v for p, v in self.controls)


@dataclass
class Circuit:
    dims: tuple
    gates: list = field(default_factory=list)

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        self.gates = list(self.gates)
        n = len(self.dims)
        for g in self.gates:
            if not 0 <= g.target < n:
                raise DimensionMismatchError(f"gate target {g.target} outside 0..{n - 1}")
            for p, v in g.controls:
                if not 0 <= p < n:
                    raise DimensionMismatchError(f"control party {p} outside 0..{n - 1}")
                if not 0 <= v < self.dims[p]:
                    raise ContractViolationError(
                        f"control value {v} out of range for party {party_label(p)} "
                        f"(d={self.dims[p]})"
                    )

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def total_dimension(self) -> int:
        return int(np.prod(self.dims))


def _conflicting_party(g1: ControlDftGate, g2: ControlDftGate) -> int | None:
    c1, c2 = g1.control_map, g2.control_map
    for p in sorted(c1.keys() & c2.keys()):
        if c1[p] != c2[p]:
            return p
    return None


def validate_exclusivity(circuit: Circuit) -> VerificationReport:
    """Check every unordered gate pair for a shared control with conflicting values.

    A conflicting shared control means no computational input can satisfy
    both gates, which makes the pair's generator product vanish and the
    gates commute.  Failure is a report outcome, not an error.
    """
    report = VerificationReport()
    for i, j in itertools.combinations(range(len(circuit.gates)), 2):
        p = _conflicting_party(circuit.gates[i], circuit.gates[j])
        if p is None:
            report.add(
                f"exclusive[{i},{j}]",
                False,
                detail="no shared control party with differing values",
            )
        else:
            g1, g2 = circuit.gates[i], circuit.gates[j]
            report.add(
                f"exclusive[{i},{j}]",
                True,
                detail=(
                    f"conflict at party {party_label(p)} "
                    f"({g1.control_map[p]} vs {g2.control_map[p]})"
                ),
            )
    return report


def is_exclusive(circuit: Circuit) -> bool:
    return all(
        _conflicting_party(g1, g2) is not None
        for g1, g2 in itertools.combinations(circuit.gates, 2)
    )


def gate_unitary(gate: ControlDftGate, dims) -> np.ndarray:
    """Full-space unitary of one gate: DFT on the target inside the control
    subspace, identity outside."""
    dims = tuple(int(d) for d in dims)
    controls = gate.control_map
    proj_factors = []
    act_factors = []
    for p, d in enumerate(dims):
        if p in controls:
            proj = np.zeros((d, d), dtype=complex)
            proj[controls[p], controls[p]] = 1.0
            proj_factors.append(proj)
            act_factors.append(proj)
        elif p == gate.target:
            proj_factors.append(np.eye(d, dtype=complex))
            act_factors.append(dft_matrix(d))
        else:
            eye = np.eye(d, dtype=complex)
            proj_factors.append(eye)
            act_factors.append(eye)
    total = int(np.prod(dims))
    proj = kron_all(proj_factors)
    act = kron_all(act_factors)
    return act + np.eye(total, dtype=complex) - proj


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Product of the gate unitaries in listed order (last gate acts first)."""
    total = circuit.total_dimension()
    u = np.eye(total, dtype=complex)
    for gate in circuit.gates:
        u = u @ gate_unitary(gate, circuit.dims)
    return u


def check_commutation(circuit: Circuit, tol: float = COMMUTATION_TOL) -> VerificationReport:
    """Report the max-entry commutator residual for every gate pair."""
    report = VerificationReport()
    unitaries = [gate_unitary(g, circuit.dims) for g in circuit.gates]
    for i, j in itertools.combinations(range(len(unitaries)), 2):
        comm = unitaries[i] @ unitaries[j] - unitaries[j] @ unitaries[i]
        residual = float(np.max(np.abs(comm), initial=0.0))
        report.add(
            f"commute[{i},{j}]",
            residual <= tol,
            residual=residual,
            detail=f"max entry of U{i}U{j} - U{j}U{i}",
        )
    return report


def _check_input(circuit: Circuit, cb_input) -> tuple:
    cb_input = tuple(int(x) for x in cb_input)
    if len(cb_input) != circuit.n_parties:
        raise DimensionMismatchError(
            f"input has {len(cb_input)} entries for {circuit.n_parties} parties"
        )
    for x, d in zip(cb_input, circuit.dims):
        if not 0 <= x < d:
            raise ContractViolationError(f"CB index {x} out of range for dimension {d}")
    return cb_input


def _fire_symbolic(circuit: Circuit, cb_input) -> ProductState:
    fired = [g for g in circuit.gates if g.matches(cb_input)]
    if len(fired) > 1:
        raise ContractViolationError(
            "more than one gate fired; circuit is not exclusive"
        )
    factors = [CB(x) for x in cb_input]
    if fired:
        t = fired[0].target
        factors[t] = DFT(cb_input[t])
    return ProductState(tuple(factors), circuit.dims)


def apply_symbolic(circuit: Circuit, cb_input) -> ProductState:
    """Image of a computational product input under an exclusive circuit.

    At most one gate's controls can match (guaranteed by exclusivity).  If a
    gate fires, its target factor becomes the DFT image of the input index
    there; all other factors stay computational.
    """
    cb_input = _check_input(circuit, cb_input)
    if not is_exclusive(circuit):
        raise ContractViolationError("apply_symbolic requires an exclusive circuit")
    return _fire_symbolic(circuit, cb_input)


def apply_dense(circuit: Circuit, cb_input) -> np.ndarray:
    """Dense cross-validation path: the full circuit unitary applied to the
    computational input vector.  Exclusivity is not required here."""
    cb_input = _check_input(circuit, cb_input)
    flat = 0
    for x, d in zip(cb_input, circuit.dims):
        flat = flat * d + x
    return circuit_unitary(circuit)[:, flat].copy()


def generate_basis(circuit: Circuit) -> ProductBasis:
    """Apply the circuit to every computational input in lexicographic order.

    For an exclusive circuit the result is a full orthogonal product basis
    of size prod(dims).
    """
    if not is_exclusive(circuit):
        raise ContractViolationError("generate_basis requires an exclusive circuit")
    ranges = [range(d) for d in circuit.dims]
    states = tuple(
        _fire_symbolic(circuit, cb_input) for cb_input in itertools.product(*ranges)
    )
    return ProductBasis(circuit.dims, states)
