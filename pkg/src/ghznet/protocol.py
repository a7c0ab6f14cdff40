"""Pulse-sequence compiler and executor for single-step GHZ generation.

A plan is: collective y pi/2 preparation, free evolution under the exchange
network for t = pi / (2|g - gz|), then final rotations.  Odd qubit counts
finish with an x pi/2 on every qubit; even counts repeat the y pi/2 on
every qubit and add a z rotation by theta(N) = (pi/2)(2 + (-1)^(N/2)) on
qubit 1.  When the ZZ coupling exceeds the XY coupling (gz > g) the even
family needs an extra z pi/2 on two qubits, which also flips the overall
sign of the expected global phase.

Executors: the dense engine simulates the full 2^N statevector (small
dimensions via Hermitian eigendecomposition, large ones via sparse
``expm_multiply``); the symmetric engine runs collective pulses in the
(N+1)-dimensional W basis and only falls back to a dense tail for
non-collective final rotations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import expm_multiply

from .couplings import CouplingGraph, ideal, to_sparse
from .dense import (
    MAX_DENSE_QUBITS,
    GlobalPhase,
    StateVector,
    all_zeros,
    apply_collective_rotation,
    apply_rotation,
    fidelity_frobenius,
    global_phase_between,
)
from .symmetric import (
    WBasisState,
    analytic_eigenvalues,
    collective_rotation,
    embed,
    entangle_phases,
)

# largest qubit count evolved by full eigendecomposition; beyond this the
# dense engine switches to sparse Krylov propagation
EIGH_MAX_QUBITS = 10

Rotation = tuple[int, str, float]  # (qubit index, axis, angle)


class DegenerateCouplingError(ValueError):
    """g = gz: the uniform superposition is stationary and never entangles."""


class EngineCapabilityError(ValueError):
    """The requested engine cannot run this plan/graph combination."""


@dataclass(frozen=True)
class GhzTarget:
    """The N-qubit cat state (|0...0> + |1...1>)/sqrt(2)."""

    n_qubits: int
    state: StateVector


def ghz_target(n: int) -> GhzTarget:
    if n < 2:
        raise ValueError("need at least 2 qubits")
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return GhzTarget(n, StateVector(n, amps))


def entangling_time(g: float, gz: float) -> float:
    """t = pi / (2|g - gz|), the time printing the GHZ branch phases."""
    if g == gz:
        raise DegenerateCouplingError(
            f"g = gz = {g}: isotropic coupling cannot entangle the uniform state"
        )
    return np.pi / (2.0 * abs(g - gz))


def theta(n: int) -> float:
    """Final z angle on qubit 1 for even N: (pi/2)(2 + (-1)^(N/2))."""
    if n % 2 != 0:
        raise ValueError(f"theta is defined for even qubit counts, got {n}")
    return (np.pi / 2.0) * (2 + (-1) ** (n // 2))


@dataclass(frozen=True)
class ProtocolPlan:
    """Compiled pulse sequence with its expected global phase."""

    n_qubits: int
    initial: tuple[str, float]
    entangle_duration: float
    finals: tuple[Rotation, ...]
    expected_phase: GlobalPhase
    parity: str

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "parity": self.parity,
            "initial": {"axis": self.initial[0], "angle": self.initial[1]},
            "entangle_duration": self.entangle_duration,
            "finals": [
                {"qubit": q, "axis": a, "angle": ang} for q, a, ang in self.finals
            ],
            "expected_phase": {
                "real": self.expected_phase.phase.real,
                "imag": self.expected_phase.phase.imag,
            },
        }


def ground_energy(n: int, gz: float) -> float:
    """Eigenenergy of |0...0> and |1...1>: C(N,2) gz / 2."""
    return 0.5 * n * (n - 1) * (gz / 2.0)


def compile_plan(n: int, g: float, gz: float) -> ProtocolPlan:
    """Compile the GHZ pulse sequence for n uniformly coupled qubits.

    The expected global phase carries e^{-i lambda_0 t} from the entangling
    pulse times a family factor: e^{i (-1)^((N-3)/2) pi/4} for odd N and
    e^{i (N/2 - 1) pi} for even N with g > gz.  For even N with g < gz the
    compiled correction (z pi/2 on two qubits) leaves the total expected
    phase at -e^{-i lambda_0 t}.
    """
    if n < 2:
        raise ValueError("need at least 2 qubits")
    t = entangling_time(g, gz)
    branch_phase = np.exp(-1j * ground_energy(n, gz) * t)
    finals: list[Rotation]
    if n % 2 == 1:
        parity = "odd"
        finals = [(k, "x", np.pi / 2) for k in range(1, n + 1)]
        family = np.exp(1j * (-1) ** ((n - 3) // 2) * np.pi / 4)
        phase = branch_phase * family
    else:
        parity = "even"
        finals = [(k, "y", np.pi / 2) for k in range(1, n + 1)]
        finals.append((1, "z", theta(n)))
        if g < gz:
            correction_qubits = (1, 2) if n == 2 else (2, 3)
            finals.extend((q, "z", np.pi / 2) for q in correction_qubits)
            phase = -branch_phase
        else:
            phase = branch_phase * np.exp(1j * (n // 2 - 1) * np.pi)
    return ProtocolPlan(
        n_qubits=n,
        initial=("y", np.pi / 2),
        entangle_duration=t,
        finals=tuple(finals),
        expected_phase=GlobalPhase(phase),
        parity=parity,
    )


class HamiltonianPropagator:
    """Reusable e^{-iHt} applier for one coupling graph.

    Small dimensions precompute the eigendecomposition once (exact and
    cheap to reapply, which matters inside optimization loops); larger
    dimensions keep the sparse matrix and use Krylov propagation.
    """

    def __init__(self, graph: CouplingGraph):
        self.n_qubits = graph.n_qubits
        h = to_sparse(graph)
        if graph.n_qubits <= EIGH_MAX_QUBITS:
            w, v = np.linalg.eigh(h.toarray())
            self._eigvals = w
            self._eigvecs = v
            self._sparse = None
        else:
            self._eigvals = None
            self._eigvecs = None
            self._sparse = h

    def propagate(self, amplitudes: np.ndarray, t: float) -> np.ndarray:
        if self._sparse is None:
            phases = np.exp(-1j * self._eigvals * t)
            return self._eigvecs @ (phases * (self._eigvecs.conj().T @ amplitudes))
        return expm_multiply((-1j * t) * self._sparse, amplitudes)


def _split_collective(
    finals: tuple[Rotation, ...], n: int
) -> tuple[list[tuple[str, float]], tuple[Rotation, ...]]:
    """Leading blocks of n identical per-qubit rotations, plus the remainder."""
    groups: list[tuple[str, float]] = []
    i = 0
    while i + n <= len(finals):
        chunk = finals[i : i + n]
        axes = {a for _, a, _ in chunk}
        angles = {ang for _, _, ang in chunk}
        qubits = sorted(q for q, _, _ in chunk)
        if len(axes) == 1 and len(angles) == 1 and qubits == list(range(1, n + 1)):
            groups.append((axes.pop(), angles.pop()))
            i += n
        else:
            break
    return groups, finals[i:]


def execute_symmetric(plan: ProtocolPlan, g: float, gz: float) -> WBasisState:
    """Run a fully collective plan in the W basis (any qubit count).

    Raises :class:`EngineCapabilityError` when the plan contains
    non-collective final rotations.
    """
    n = plan.n_qubits
    groups, remainder = _split_collective(plan.finals, n)
    if remainder:
        raise EngineCapabilityError(
            "plan contains non-collective final rotations; the pure W-basis "
            "engine only handles identical rotations on every qubit"
        )
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    w = WBasisState(n, coeffs)
    w = collective_rotation(w, plan.initial[0], plan.initial[1])
    w = entangle_phases(w, analytic_eigenvalues(n, g, gz), plan.entangle_duration)
    for axis, angle in groups:
        w = collective_rotation(w, axis, angle)
    return w


def execute(
    plan: ProtocolPlan,
    graph: CouplingGraph,
    engine: str = "dense",
    propagator: HamiltonianPropagator | None = None,
) -> StateVector:
    """Apply the compiled sequence to |0...0> and return the final state.

    The symmetric engine requires an ideal (uniform) graph; it runs the
    collective part in the W basis and finishes any per-qubit tail with
    the dense engine.
    """
    n = plan.n_qubits
    if graph.n_qubits != n:
        raise ValueError(
            f"plan is for {n} qubits but graph has {graph.n_qubits}"
        )
    if engine == "dense":
        if n > MAX_DENSE_QUBITS:
            raise EngineCapabilityError(
                f"dense engine limited to {MAX_DENSE_QUBITS} qubits, got {n}"
            )
        if propagator is None:
            propagator = HamiltonianPropagator(graph)
        psi = all_zeros(n)
        psi = apply_collective_rotation(psi, plan.initial[0], plan.initial[1])
        psi = StateVector(
            n, propagator.propagate(psi.amplitudes, plan.entangle_duration)
        )
        for q, axis, angle in plan.finals:
            psi = apply_rotation(psi, q, axis, angle)
        return psi
    if engine == "symmetric":
        if not graph.is_ideal():
            raise EngineCapabilityError(
                "symmetric engine requires uniform couplings on every pair"
            )
        if n > MAX_DENSE_QUBITS:
            raise EngineCapabilityError(
                f"returning a dense state requires n <= {MAX_DENSE_QUBITS}; "
                "use execute_symmetric for larger collective-only runs"
            )
        groups, remainder = _split_collective(plan.finals, n)
        collective_plan = ProtocolPlan(
            n_qubits=n,
            initial=plan.initial,
            entangle_duration=plan.entangle_duration,
            finals=tuple(
                (q, axis, angle)
                for axis, angle in groups
                for q in range(1, n + 1)
            ),
            expected_phase=plan.expected_phase,
            parity=plan.parity,
        )
        w = execute_symmetric(collective_plan, graph.g_ref, graph.gz_ref)
        psi = embed(w)
        for q, axis, angle in remainder:
            psi = apply_rotation(psi, q, axis, angle)
        return psi
    raise ValueError(f"engine must be 'dense' or 'symmetric', got {engine!r}")


def verify(
    n: int, g: float, gz: float, engine: str = "dense"
) -> tuple[float, GlobalPhase]:
    """Compile and run the ideal protocol; return (aligned fidelity, phase).

    The phase is the measured global phase of the output relative to the
    GHZ target; for a correct run it equals the plan's expected phase.
    """
    plan = compile_plan(n, g, gz)
    psi = execute(plan, ideal(n, g, gz), engine=engine)
    target = ghz_target(n).state
    fid = fidelity_frobenius(psi, target, align_phase=True)
    measured = global_phase_between(psi, target)
    return fid, measured
