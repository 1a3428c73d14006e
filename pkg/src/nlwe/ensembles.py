"""Named preset constructions and the generic n-party circuit family.

The canonical n-party circuit has one gate per party.  Gate k targets party
n-1-k; its controls assign party s the value (s+k) mod n.  Successive gates
are cyclic slot-shifts of the first, so the whole set is exclusive whenever
every local dimension is at least n-1.
"""

from __future__ import annotations

import re
from collections import Counter

from .circuit import Circuit, ControlDftGate, generate_basis
from .errors import ConstructionError, UnknownPresetError
from .report import party_label
from .states import ProductBasis, factor_descriptor


def oneway_set() -> ProductBasis:
    """Two-qubit basis that is one-way locally indistinguishable.

    Single gate: Hadamard on party B when party A holds |1>.
    """
    circuit = Circuit((2, 2), [ControlDftGate({0: 1}, target=1)])
    return generate_basis(circuit)


def canonical_circuit(n: int, dims) -> Circuit:
    """The n-gate exclusive circuit on n parties with d_j >= n-1.

    Violating the dimension condition raises a construction error naming the
    offending party.
    """
    n = int(n)
    dims = tuple(int(d) for d in dims)
    if n < 3:
        raise ConstructionError(f"canonical circuit needs n >= 3 parties, got {n}")
    if len(dims) != n:
        raise ConstructionError(f"expected {n} dimensions, got {len(dims)}")
    for j, d in enumerate(dims):
        if d < n - 1:
            raise ConstructionError(
                f"party {party_label(j)} has d_{j + 1} = {d} < {n - 1}; "
                f"every local dimension must be at least n-1"
            )
    gates = []
    for k in range(n):
        target = n - 1 - k
        controls = {s: (s + k) % n for s in range(n) if s != target}
        gates.append(ControlDftGate(controls, target=target))
    return Circuit(dims, gates)


def shift_circuit() -> Circuit:
    """Three-qubit canonical circuit (generates the SHIFT ensemble)."""
    return canonical_circuit(3, (2, 2, 2))


def shift_ensemble() -> ProductBasis:
    """The 8 orthogonal three-qubit product states of the SHIFT ensemble."""
    return generate_basis(shift_circuit())


def four_qutrit_circuit() -> Circuit:
    """Four-qutrit canonical circuit (minimal four-party gate set)."""
    return canonical_circuit(4, (3, 3, 3, 3))


# Control pattern of the extra four-qutrit gate family: slot s of the first
# extra gate requires value _EXTRA_PATTERN[s]; the remaining gates are the
# same cyclic slot-shifts used by the canonical family.
_EXTRA_PATTERN = {0: 0, 1: 2, 2: 1}


def extended_circuit_fig4() -> Circuit:
    """Four-qutrit circuit with a second exclusive gate family (8 gates).

    The first added gate fires on |0>|2>|1> at parties A, B, C and applies
    the qutrit DFT to party D; its cyclic shifts complete the family.  The
    combined circuit stays exclusive, and its basis carries strictly more
    dual-basis factors than the minimal four-qutrit one.
    """
    base = four_qutrit_circuit()
    n = 4
    extra = []
    for k in range(n):
        target = n - 1 - k
        controls = {
            s: _EXTRA_PATTERN[(s + k) % n] for s in range(n) if s != target
        }
        extra.append(ControlDftGate(controls, target=target))
    return Circuit(base.dims, base.gates + extra)


def local_factor_census(basis: ProductBasis, party: int) -> dict[str, int]:
    """Count the distinct local factor descriptors one party sees.

    For a basis generated by a canonical circuit the census never exceeds
    2*d descriptors: the d computational and d dual-basis kets.
    """
    counts = Counter(factor_descriptor(s.factors[party]) for s in basis.states)
    return dict(counts)


_CANONICAL_RE = re.compile(r"^canonical:n=(\d+),d=([\d,]+)$")


def preset_circuit(name: str) -> Circuit:
    """Resolve a CLI preset name to its circuit.

    Accepted: ``oneway``, ``shift``, ``fig4``,
    ``canonical:n=<n>,d=<d1,..,dn>``.
    """
    if name == "oneway":
        return Circuit((2, 2), [ControlDftGate({0: 1}, target=1)])
    if name == "shift":
        return shift_circuit()
    if name == "fig4":
        return extended_circuit_fig4()
    m = _CANONICAL_RE.match(name)
    if m:
        n = int(m.group(1))
        dims = tuple(int(tok) for tok in m.group(2).split(",") if tok)
        if len(dims) == 1:
            dims = dims * n
        return canonical_circuit(n, dims)
    raise UnknownPresetError(
        f"no preset named {name!r}; expected oneway, shift, fig4, or "
        f"canonical:n=<n>,d=<d1,..,dn>"
    )
