"""POVMs, measurement schemes, induced observables and instruments.

A measurement scheme couples an object system to a probe, reads a pointer
POVM on the probe, and thereby measures an induced observable on the object.
The induced observable of the swap coupling is the pointer itself (perfect
information transfer with no residual entanglement); the induced observable
of any product coupling is trivial (no information transfer at all).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bipartite import DensityOperator, trace_distance
from .errors import DimensionError, InvalidPOVMError, NormalizationError
from .linalg import (
    DEFAULT_SEED,
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    as_vector,
    frobenius,
    random_state,
    split_seed,
    swap_unitary,
    unitarity_defect,
)


@dataclass(frozen=True)
class POVM:
    """Finite-outcome positive operator valued measure."""

    dim: int
    outcomes: tuple[str, ...]
    effects: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.outcomes) != len(self.effects) or not self.effects:
            raise InvalidPOVMError("need one effect per outcome label")
        effects = tuple(as_matrix(e) for e in self.effects)
        for e in effects:
            if e.shape != (self.dim, self.dim):
                raise DimensionError(f"effect shape {e.shape} != ({self.dim}, {self.dim})")
        object.__setattr__(self, "effects", effects)
        object.__setattr__(self, "outcomes", tuple(str(o) for o in self.outcomes))


def validate_povm(e: POVM, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, dict]:
    """Check Hermiticity, positivity and completeness; never raises.

    The report records the worst violation per invariant.
    """
    worst_herm = 0.0
    worst_neg = 0.0
    for eff in e.effects:
        worst_herm = max(worst_herm, frobenius(eff - eff.conj().T))
        lo = float(np.linalg.eigvalsh((eff + eff.conj().T) / 2).min())
        worst_neg = max(worst_neg, -min(lo, 0.0))
    completeness = frobenius(sum(e.effects) - np.eye(e.dim))
    report = {
        "hermiticity_defect": worst_herm,
        "negativity": worst_neg,
        "completeness_defect": completeness,
    }
    ok = worst_herm <= tol.eps and worst_neg <= tol.eps and completeness <= tol.eps
    return ok, report


def require_valid_povm(e: POVM, tol: Tolerance = DEFAULT_TOL) -> None:
    ok, report = validate_povm(e, tol)
    if not ok:
        raise InvalidPOVMError(f"invalid POVM: {report}", report)


@dataclass(frozen=True)
class MeasurementScheme:
    """Probe space, initial probe vector, coupling unitary, pointer POVM."""

    object_dim: int
    probe_dim: int
    probe_init: np.ndarray = field(repr=False)
    coupling: np.ndarray = field(repr=False)
    pointer: POVM = field(repr=False)

    def __post_init__(self):
        probe_init = as_vector(self.probe_init)
        coupling = as_matrix(self.coupling)
        dim = self.object_dim * self.probe_dim
        if probe_init.size != self.probe_dim:
            raise DimensionError(
                f"probe_init dimension {probe_init.size} != probe dim {self.probe_dim}"
            )
        if coupling.shape != (dim, dim):
            raise DimensionError(f"coupling shape {coupling.shape} != ({dim}, {dim})")
        if self.pointer.dim != self.probe_dim:
            raise DimensionError(
                f"pointer dim {self.pointer.dim} != probe dim {self.probe_dim}"
            )
        object.__setattr__(self, "probe_init", probe_init)
        object.__setattr__(self, "coupling", coupling)

    def check(self, tol: Tolerance = DEFAULT_TOL) -> None:
        defect = unitarity_defect(self.coupling)
        if defect > tol.eps:
            raise ValueError(f"coupling is not unitary: defect {defect:.3e}")
        if abs(np.linalg.norm(self.probe_init) - 1.0) > max(tol.eps, 1e-9):
            raise NormalizationError("probe_init must be a unit vector")
        require_valid_povm(self.pointer, tol)


@dataclass(frozen=True)
class Instrument:
    """Outcome-indexed completely positive maps in Kraus form."""

    dim: int
    outcomes: tuple[str, ...]
    kraus: tuple[tuple[np.ndarray, ...], ...] = field(repr=False)

    def outcome_map(self, index: int, rho: DensityOperator) -> np.ndarray:
        """Unnormalized conditional output for one outcome."""
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for k in self.kraus[index]:
            out += k @ rho.mat @ k.conj().T
        return out

    def nonselective(self, rho: DensityOperator) -> DensityOperator:
        total = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for index in range(len(self.outcomes)):
            total += self.outcome_map(index, rho)
        return DensityOperator(self.dim, total)

    def trace_preservation_defect(self) -> float:
        acc = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for ops in self.kraus:
            for k in ops:
                acc += k.conj().T @ k
        return frobenius(acc - np.eye(self.dim))


@dataclass(frozen=True)
class OutcomeDistribution:
    labels: tuple[str, ...]
    probabilities: np.ndarray

    def as_dict(self) -> dict[str, float]:
        return {l: float(p) for l, p in zip(self.labels, self.probabilities)}


def swap_scheme(e: POVM, phi0: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> MeasurementScheme:
    """Scheme whose coupling is the canonical swap; it measures e itself."""
    require_valid_povm(e, tol)
    phi0 = as_vector(phi0)
    if phi0.size != e.dim:
        raise DimensionError(f"phi0 dimension {phi0.size} != POVM dim {e.dim}")
    return MeasurementScheme(e.dim, e.dim, phi0, swap_unitary(e.dim), e)


def _embed_probe_init(s: MeasurementScheme) -> np.ndarray:
    """The (d1*d2) x d1 injection φ -> U(φ ⊗ φ0)."""
    return s.coupling @ np.kron(np.eye(s.object_dim), s.probe_init.reshape(-1, 1))


def measured_observable(s: MeasurementScheme, tol: Tolerance = DEFAULT_TOL) -> POVM:
    """Induced object observable: E'(X) = (I ⊗ <φ0|) U^† (I ⊗ E(X)) U (I ⊗ |φ0>)."""
    s.check(tol)
    b = _embed_probe_init(s)
    effects = []
    for eff in s.pointer.effects:
        ep = b.conj().T @ np.kron(np.eye(s.object_dim), eff) @ b
        effects.append((ep + ep.conj().T) / 2)
    return POVM(s.object_dim, s.pointer.outcomes, tuple(effects))


def outcome_probabilities(
    s: MeasurementScheme, phi: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> OutcomeDistribution:
    """Pointer statistics p(X) = <U(φ⊗φ0) | (I ⊗ E(X)) U(φ⊗φ0)>."""
    phi = as_vector(phi)
    if phi.size != s.object_dim:
        raise DimensionError(f"state dimension {phi.size} != object dim {s.object_dim}")
    if abs(np.linalg.norm(phi) - 1.0) > max(tol.eps, 1e-9):
        raise NormalizationError(f"object state norm {np.linalg.norm(phi)} is not 1")
    psi = s.coupling @ np.kron(phi, s.probe_init)
    probs = np.array(
        [
            float(np.vdot(psi, np.kron(np.eye(s.object_dim), eff) @ psi).real)
            for eff in s.pointer.effects
        ]
    )
    # Rounding slack only: small negatives clamp to 0, and the total may be
    # renormalized within 10 * eps of 1. Larger deviations are logic bugs.
    if probs.min() < -tol.eps:
        raise ValueError(f"outcome probability {probs.min()} below -eps")
    probs = np.clip(probs, 0.0, None)
    total = probs.sum()
    if abs(total - 1.0) > 10 * tol.eps:
        raise ValueError(f"outcome probabilities sum to {total}, not 1")
    return OutcomeDistribution(s.pointer.outcomes, probs / total)


def _effect_sqrt(eff: np.ndarray, tol: Tolerance) -> np.ndarray:
    w, v = np.linalg.eigh((eff + eff.conj().T) / 2)
    if w.min() < -tol.eps:
        raise InvalidPOVMError(f"effect eigenvalue {w.min()} below -eps")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def luders_instrument(s: MeasurementScheme, tol: Tolerance = DEFAULT_TOL) -> Instrument:
    """Square-root pointer reading of the scheme, as Kraus collections.

    K_{X,k} = (I ⊗ <g_k|) (I ⊗ sqrt(E(X))) U (I ⊗ |φ0>) over a probe basis
    {g_k}; the total map is trace preserving and Tr I_X(ρ) reproduces the
    outcome probabilities.
    """
    s.check(tol)
    d1, d2 = s.object_dim, s.probe_dim
    b = _embed_probe_init(s)
    kraus: list[tuple[np.ndarray, ...]] = []
    for eff in s.pointer.effects:
        root = _effect_sqrt(eff, tol)
        m = np.kron(np.eye(d1), root) @ b
        # Row block k of m (stride d2) is exactly (I ⊗ <g_k|) applied to it.
        ops = tuple(m.reshape(d1, d2, d1)[:, k, :] for k in range(d2))
        kraus.append(ops)
    return Instrument(d1, s.pointer.outcomes, tuple(kraus))


def disturbance(
    s: MeasurementScheme, rho: DensityOperator, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Trace distance between rho and the non-selective post-measurement state."""
    if rho.dim != s.object_dim:
        raise DimensionError(f"state dim {rho.dim} != object dim {s.object_dim}")
    inst = luders_instrument(s, tol)
    return trace_distance(rho, inst.nonselective(rho))


def is_trivial_povm(
    e: POVM, tol: Tolerance = DEFAULT_TOL
) -> tuple[bool, list[float] | None]:
    """True iff every effect is a scalar multiple of the identity within tol.

    Returns the scalars Tr E(X) / dim on success; their statistics carry no
    information about the measured state.
    """
    scalars = []
    worst = 0.0
    for eff in e.effects:
        lam = float(np.trace(eff).real) / e.dim
        worst = max(worst, frobenius(eff - lam * np.eye(e.dim)))
        scalars.append(lam)
    if worst <= tol.eps:
        return True, scalars
    return False, None


def triviality_deviation(e: POVM) -> float:
    """max_X || E(X) - (Tr E(X)/dim) I ||_F; 0 exactly on trivial observables."""
    return max(
        frobenius(eff - (float(np.trace(eff).real) / e.dim) * np.eye(e.dim))
        for eff in e.effects
    )


@dataclass(frozen=True)
class NoInfoNoDisturbanceReport:
    """Sampled check of: undisturbed on all probed states ⇒ trivial observable."""

    n_states: int
    max_disturbance: float
    max_disturbance_state: str
    max_triviality_deviation: float
    undisturbed: bool
    trivial: bool
    implication_holds: bool


def no_info_no_disturbance_check(
    s: MeasurementScheme,
    tol: Tolerance = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    n_states: int = 16,
) -> NoInfoNoDisturbanceReport:
    """Evaluate the no-information-without-disturbance implication on samples.

    Probes a deterministic basis grid plus seeded random states. The converse
    is intentionally not asserted: product couplings disturb without
    transferring information.
    """
    s.check(tol)
    d = s.object_dim
    inst = luders_instrument(s, tol)
    eye = np.eye(d)
    states: list[tuple[str, np.ndarray]] = [(f"basis:{i}", eye[i]) for i in range(d)]
    states += [
        (f"pair:{i}:{j}", (eye[i] + eye[j]) / np.sqrt(2))
        for i in range(d)
        for j in range(i + 1, d)
    ]
    states += [
        (f"rand:{k}", random_state(d, split_seed(seed, f"nind-{k}")))
        for k in range(n_states)
    ]
    max_dist = 0.0
    max_state = states[0][0]
    for label, vec in states:
        rho = DensityOperator.from_pure(vec)
        dist = trace_distance(rho, inst.nonselective(rho))
        if dist > max_dist:
            max_dist, max_state = dist, label
    deviation = triviality_deviation(measured_observable(s, tol))
    undisturbed = max_dist <= tol.eps
    trivial = deviation <= tol.eps
    return NoInfoNoDisturbanceReport(
        n_states=len(states),
        max_disturbance=max_dist,
        max_disturbance_state=max_state,
        max_triviality_deviation=deviation,
        undisturbed=undisturbed,
        trivial=trivial,
        implication_holds=(not undisturbed) or trivial,
    )
