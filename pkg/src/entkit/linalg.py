"""Dense complex linear algebra primitives.

Matrices are plain ``numpy.ndarray`` of dtype complex128, row-major, with
vectors as shape ``(d, 1)`` columns or 1-D arrays where noted. Everything here
is a pure function of its inputs; randomness always flows from an explicit
integer seed.
"""

from __future__ import annotations

from dataclasses import dataclass
import zlib

import numpy as np
import scipy.linalg

from .errors import DimensionError, NonHermitianError, NonUnitaryError

# Default absolute tolerance for Frobenius-norm comparisons. Comfortably above
# double-precision accumulation error at the dimensions this package targets
# (factors up to ~64).
DEFAULT_EPS = 1e-9

# Default seed for reproducible CLI runs when the user supplies none.
DEFAULT_SEED = 0xB05C

# Refuse tensor products whose entry count would exceed this (dense storage
# only; the package has no large-dimension ambitions).
_MAX_PRODUCT_ENTRIES = 1 << 26


@dataclass(frozen=True)
class Tolerance:
    """Absolute tolerance for norm-based comparisons."""

    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if self.eps < 0:
            raise ValueError(f"tolerance must be non-negative, got {self.eps}")


DEFAULT_TOL = Tolerance()


def as_matrix(a: np.ndarray) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise DimensionError(f"expected a matrix, got ndim={m.ndim}")
    if m.size == 0:
        raise DimensionError("empty matrix")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(a: np.ndarray) -> np.ndarray:
    """Coerce to a finite 1-D complex128 array."""
    v = np.asarray(a, dtype=np.complex128)
    if v.ndim == 2 and v.shape[1] == 1:
        v = v[:, 0]
    if v.ndim != 1 or v.size == 0:
        raise DimensionError(f"expected a column vector, got shape {np.shape(a)}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; block (i, j) of the result is a[i, j] * b."""
    a = as_matrix(a)
    b = as_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows * cols > _MAX_PRODUCT_ENTRIES:
        raise DimensionError(f"tensor product shape {rows}x{cols} too large")
    return np.kron(a, b)


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose. Involutive exactly: adjoint(adjoint(a)) == a."""
    return as_matrix(a).conj().T


def is_unitary(u: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff both ||U^†U - I||_F and ||UU^† - I||_F are within tol.eps."""
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        raise DimensionError(f"unitarity is defined for square matrices, got {u.shape}")
    return unitarity_defect(u) <= tol.eps


def unitarity_defect(u: np.ndarray) -> float:
    """max(||U^†U - I||_F, ||UU^† - I||_F)."""
    u = as_matrix(u)
    eye = np.eye(u.shape[0])
    return max(frobenius(u.conj().T @ u - eye), frobenius(u @ u.conj().T - eye))


def _phase_fix_columns(v: np.ndarray, eps: float) -> np.ndarray:
    """Rotate each column so its first component with modulus > eps is real positive."""
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        big = np.flatnonzero(np.abs(col) > eps)
        if big.size:
            v[:, k] = col * np.exp(-1j * np.angle(col[big[0]]))
    return v


def hermitian_eig(
    h: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix with deterministic ordering.

    Returns (eigenvalues descending, eigenvector columns). Each eigenvector's
    first component with modulus > tol.eps is made real positive; exact
    eigenvalue ties are broken by descending lexicographic comparison of the
    phase-fixed vectors.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionError(f"expected square matrix, got {h.shape}")
    defect = frobenius(h - h.conj().T)
    if defect > tol.eps:
        raise NonHermitianError(f"matrix is not Hermitian: ||h - h^†||_F = {defect:.3e}")
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    w = w[::-1].copy()
    v = _phase_fix_columns(v[:, ::-1], tol.eps)

    # Stable tie-break inside runs of exactly equal eigenvalues.
    start = 0
    while start < len(w):
        stop = start
        while stop + 1 < len(w) and w[stop + 1] == w[start]:
            stop += 1
        if stop > start:
            block = v[:, start : stop + 1]
            keys = [
                tuple((c.real, c.imag) for c in block[:, k])
                for k in range(block.shape[1])
            ]
            order = sorted(range(block.shape[1]), key=keys.__getitem__, reverse=True)
            v[:, start : stop + 1] = block[:, order]
        start = stop + 1
    return w, v


def unitary_log(u: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Hermitian H with exp(iH) == u, eigenphases in the principal branch.

    Phases are taken in (-pi, pi] with the eigenvalue -1 mapped to +pi; phases
    within 1e-12 of the cut are folded onto +pi so that -1 is stable under
    rounding. Degenerate eigenspaces inherit the (orthonormal, deterministic
    per build) Schur basis; H does not depend on that choice.
    """
    u = as_matrix(u)
    defect = unitarity_defect(u)
    if defect > tol.eps:
        raise NonUnitaryError(f"matrix is not unitary: defect {defect:.3e}", defect)
    t, z = scipy.linalg.schur(u, output="complex")
    theta = np.angle(np.diagonal(t))
    theta = np.where(theta <= -np.pi + 1e-12, theta + 2 * np.pi, theta)
    h = (z * theta) @ z.conj().T
    return (h + h.conj().T) / 2


def exp_i_hermitian(h: np.ndarray, t: float = 1.0) -> np.ndarray:
    """exp(i * t * h) for Hermitian h, via eigendecomposition."""
    h = as_matrix(h)
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    return (v * np.exp(1j * t * w)) @ v.conj().T


def swap_unitary(d: int) -> np.ndarray:
    """The canonical flip e_i ⊗ f_j -> f_j ⊗ e_i on a d*d bipartite space."""
    if d < 1:
        raise DimensionError(f"dimension must be positive, got {d}")
    s = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            s[j * d + i, i * d + j] = 1.0
    return s


def rng_from_seed(seed: int, label: str | None = None) -> np.random.Generator:
    """Deterministic generator for a seed, optionally split by a stream label."""
    if label is None:
        return np.random.default_rng(seed)
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(zlib.crc32(label.encode()),))
    )


def split_seed(seed: int, label: str) -> int:
    """Derive a child seed from (seed, label); stable across runs."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(zlib.crc32(label.encode()),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def haar_unitary(d: int, seed: int) -> np.ndarray:
    """Haar-distributed d x d unitary: QR of a complex Gaussian matrix with
    the R-diagonal phase correction. Deterministic per seed."""
    if d < 1:
        raise DimensionError(f"dimension must be positive, got {d}")
    rng = rng_from_seed(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    phases = diag / np.abs(diag)
    return q * phases


def random_state(d: int, seed: int) -> np.ndarray:
    """Unit-norm d-vector with complex Gaussian entries; deterministic per seed."""
    if d < 1:
        raise DimensionError(f"dimension must be positive, got {d}")
    rng = rng_from_seed(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_hermitian(d: int, seed: int, scale: float = 1.0) -> np.ndarray:
    """Random Hermitian matrix (A + A^†)/2, rescaled to spectral norm <= scale."""
    if d < 1:
        raise DimensionError(f"dimension must be positive, got {d}")
    rng = rng_from_seed(seed)
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = (a + a.conj().T) / 2
    top = np.abs(np.linalg.eigvalsh(h)).max()
    if top > 0:
        h = h * (scale / top)
    return h
