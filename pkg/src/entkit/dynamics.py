"""Continuous unitary interpolation and entanglement profiling.

A coupling reached continuously from the identity is sampled along the
one-parameter exponential path U_t = exp(i t H) of its principal-branch
generator. Profiling the entanglement produced from product inputs along the
path makes the obstruction quantitative: a swap endpoint cannot be reached
through product-form unitaries alone, so interior points must entangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bipartite import BipartiteSpace, PureState, entanglement_entropy
from .classify import classify_unitary, operator_schmidt_rank
from .errors import DimensionError
from .linalg import (
    DEFAULT_SEED,
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    as_vector,
    exp_i_hermitian,
    random_state,
    split_seed,
    unitary_log,
)


@dataclass(frozen=True)
class UnitaryPath:
    """One-parameter family exp(i t generator), t in [0, 1], ending at endpoint."""

    generator: np.ndarray = field(repr=False)
    endpoint: np.ndarray = field(repr=False)
    space: BipartiteSpace

    def __post_init__(self):
        g = as_matrix(self.generator)
        e = as_matrix(self.endpoint)
        dim = self.space.dim
        if g.shape != (dim, dim) or e.shape != (dim, dim):
            raise DimensionError(
                f"generator/endpoint shape {g.shape}/{e.shape} != ({dim}, {dim})"
            )
        object.__setattr__(self, "generator", g)
        object.__setattr__(self, "endpoint", e)


def geodesic_path(
    endpoint: np.ndarray, d1: int, d2: int, tol: Tolerance = DEFAULT_TOL
) -> UnitaryPath:
    """Path generated by the principal-branch logarithm of the endpoint."""
    endpoint = as_matrix(endpoint)
    h = unitary_log(endpoint, tol)
    return UnitaryPath(h, endpoint, BipartiteSpace(d1, d2))


def path_from_generator(h: np.ndarray, d1: int, d2: int) -> UnitaryPath:
    """Path with an explicitly chosen Hermitian generator; endpoint = exp(iH)."""
    h = as_matrix(h)
    h = (h + h.conj().T) / 2
    return UnitaryPath(h, exp_i_hermitian(h), BipartiteSpace(d1, d2))


def path_point(p: UnitaryPath, t: float) -> np.ndarray:
    """exp(i t generator); exactly the identity at t == 0."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"path parameter {t} outside [0, 1]")
    if t == 0.0:
        return np.eye(p.space.dim, dtype=np.complex128)
    return exp_i_hermitian(p.generator, t)


@dataclass(frozen=True)
class ProfilePoint:
    t: float
    max_entropy_bits: float
    maximizing_input_id: str
    maximizing_input: np.ndarray = field(repr=False)
    op_schmidt_rank: int
    verdict: str


@dataclass(frozen=True)
class EntanglementProfile:
    space: BipartiteSpace
    points: tuple[ProfilePoint, ...]

    @property
    def times(self) -> list[float]:
        return [pt.t for pt in self.points]

    def max_point(self) -> ProfilePoint:
        return max(self.points, key=lambda pt: pt.max_entropy_bits)


def profile_inputs(
    d1: int, d2: int, probe_init: np.ndarray, seed: int, n_inputs: int
) -> list[tuple[str, np.ndarray]]:
    """Deterministic labeled input family probed along a path: object basis
    vectors, pairwise superpositions, then seeded random product inputs."""
    eye = np.eye(d1)
    inputs = [(f"basis:{i}", np.kron(eye[i], probe_init)) for i in range(d1)]
    inputs += [
        (f"pair:{i}:{j}", np.kron((eye[i] + eye[j]) / np.sqrt(2), probe_init))
        for i in range(d1)
        for j in range(i + 1, d1)
    ]
    for k in range(n_inputs):
        a = random_state(d1, split_seed(seed, f"profile-left-{k}"))
        b = random_state(d2, split_seed(seed, f"profile-right-{k}"))
        inputs.append((f"rand:{k}", np.kron(a, b)))
    return inputs


def entanglement_profile(
    p: UnitaryPath,
    probe_init: np.ndarray,
    n_steps: int = 64,
    seed: int = DEFAULT_SEED,
    n_inputs: int = 8,
    tol: Tolerance = DEFAULT_TOL,
) -> EntanglementProfile:
    """Entanglement produced from product inputs along the path.

    The grid has n_steps uniform intervals (n_steps + 1 points, including
    t = 0, 1/2 for even n_steps, and 1 exactly). At each grid point the
    maximum output entanglement entropy over a deterministic input family
    plus seeded random product inputs is recorded, together with the
    operator-Schmidt rank and the classification verdict of U_t.
    """
    if n_steps < 2:
        raise ValueError(f"need at least 2 steps, got {n_steps}")
    probe_init = as_vector(probe_init)
    d1, d2 = p.space.d1, p.space.d2
    if probe_init.size != d2:
        raise DimensionError(f"probe_init dimension {probe_init.size} != d2 {d2}")
    inputs = profile_inputs(d1, d2, probe_init, seed, n_inputs)
    points = []
    for k in range(n_steps + 1):
        t = k / n_steps
        u_t = path_point(p, t)
        best_entropy = -1.0
        best_id = inputs[0][0]
        best_vec = inputs[0][1]
        for input_id, vec in inputs:
            image = PureState(p.space, u_t @ vec)
            entropy = entanglement_entropy(image)
            if entropy > best_entropy:
                best_entropy, best_id, best_vec = entropy, input_id, vec
        form = classify_unitary(u_t, d1, d2, tol, split_seed(seed, f"verdict-{k}"))
        points.append(
            ProfilePoint(
                t=t,
                max_entropy_bits=best_entropy,
                maximizing_input_id=best_id,
                maximizing_input=best_vec,
                op_schmidt_rank=operator_schmidt_rank(u_t, d1, d2, tol),
                verdict=form.verdict,
            )
        )
    return EntanglementProfile(p.space, tuple(points))


def max_path_entanglement(
    p: UnitaryPath,
    probe_init: np.ndarray,
    n_steps: int = 64,
    seed: int = DEFAULT_SEED,
    n_inputs: int = 8,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[float, PureState, float]:
    """Grid argmax of the profile: (t*, maximizing input state, entropy* bits)."""
    profile = entanglement_profile(p, probe_init, n_steps, seed, n_inputs, tol)
    best = profile.max_point()
    return best.t, PureState(p.space, best.maximizing_input), best.max_entropy_bits
