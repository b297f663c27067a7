"""Complex unitary-matrix numerics.

Sampling, polar projection, geodesics, distances and tangent-space
projection for elements of U(n).  Dimension 0 is a first-class citizen so
that block sums have a unit.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import BranchCutError, SingularityError

UNITARITY_TOL = 1e-10
DET_TOL = 1e-9
BRANCH_TOL = 1e-8
SINGULAR_TOL = 1e-12


class Unitary:
    """An n x n complex matrix unitary within fixed tolerance.

    Instances are immutable (the backing array is read-only) and safe to
    share between concurrent tasks.  ``dim == 0`` denotes the empty matrix.
    """

    __slots__ = ("_mat",)

    def __init__(self, mat, *, _checked: bool = False):
        m = np.array(mat, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if not _checked:
            _check_unitary(m)
        m.setflags(write=False)
        self._mat = m

    @property
    def mat(self) -> np.ndarray:
        return self._mat

    @property
    def dim(self) -> int:
        return self._mat.shape[0]

    def dagger(self) -> "Unitary":
        return Unitary(self._mat.conj().T, _checked=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Unitary):
            return NotImplemented
        return self._mat.shape == other._mat.shape and bool(
            np.array_equal(self._mat, other._mat)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Unitary(dim={self.dim})"

    def to_json(self) -> dict:
        return {"dim": self.dim, "entries": matrix_to_json(self._mat)}

    @classmethod
    def from_json(cls, data: dict) -> "Unitary":
        m = matrix_from_json(data["entries"], data["dim"])
        return cls(m)


class SkewTangent:
    """A tangent vector to U(n) at ``base``.

    The defining condition is that ``base^* . direction`` is skew-Hermitian.
    """

    __slots__ = ("base", "direction")

    def __init__(self, base: Unitary, direction):
        d = np.array(direction, dtype=np.complex128)
        if d.shape != base.mat.shape:
            raise ValueError("direction shape must match the base point")
        w = base.mat.conj().T @ d
        if d.size and np.linalg.norm(w + w.conj().T) > UNITARITY_TOL * max(
            1.0, np.linalg.norm(d)
        ):
            raise ValueError("direction is not tangent at base")
        d.setflags(write=False)
        self.base = base
        self.direction = d


def _check_unitary(m: np.ndarray) -> None:
    n = m.shape[0]
    if n == 0:
        return
    defect = np.linalg.norm(m @ m.conj().T - np.eye(n))
    if defect > UNITARITY_TOL:
        raise ValueError(f"matrix is not unitary: ||U U* - I||_F = {defect:.3e}")
    det_err = abs(abs(np.linalg.det(m)) - 1.0)
    if det_err > DET_TOL:
        raise ValueError(f"matrix is not unitary: ||det| - 1| = {det_err:.3e}")


def identity(n: int) -> Unitary:
    return Unitary(np.eye(n, dtype=np.complex128), _checked=True)


def haar_from_rng(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed raw matrix: complex Gaussian, QR, phase-fixed R."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_random(n: int, seed: int) -> Unitary:
    """Draw a Haar-distributed element of U(n), reproducibly.

    Identical ``(n, seed)`` pairs give bitwise-identical output.  Any
    64-bit integer is accepted as a seed.
    """
    if n < 0:
        raise ValueError("dimension must be non-negative")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    return Unitary(haar_from_rng(n, rng), _checked=True)


def polar_project(m: np.ndarray) -> np.ndarray:
    """Raw polar factor, no precondition screening (internal fast path)."""
    a, _, bh = np.linalg.svd(m)
    return a @ bh


def project_unitary(m) -> Unitary:
    """Frobenius-nearest unitary to an invertible matrix (polar factor)."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        return Unitary(m, _checked=True)
    a, s, bh = np.linalg.svd(m)
    if s[-1] <= SINGULAR_TOL:
        raise SingularityError(
            f"matrix too close to singular: smallest singular value {s[-1]:.3e}"
        )
    return Unitary(a @ bh, _checked=True)


def _principal_eig(w: np.ndarray):
    """Eigen-decomposition of a unitary matrix via complex Schur form.

    Unitary matrices are normal, so the Schur factor is diagonal up to
    roundoff and the transform is exactly unitary.
    """
    t, q = scipy.linalg.schur(w, output="complex")
    lam = np.diagonal(t).copy()
    lam = lam / np.abs(lam)
    return lam, q


def geodesic(u: Unitary, v: Unitary, t: float) -> Unitary:
    """Point ``u . exp(t log(u^* v))`` on the geodesic from u to v.

    Uses the principal matrix logarithm; rejects pairs whose relative
    rotation has an eigenvalue within ``BRANCH_TOL`` of -1.
    """
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {v.dim}")
    if u.dim == 0:
        return u
    w = u.mat.conj().T @ v.mat
    lam, q = _principal_eig(w)
    gap = np.min(np.abs(lam + 1.0))
    if gap < BRANCH_TOL:
        raise BranchCutError(
            f"relative rotation has an eigenvalue within {gap:.3e} of -1; "
            "insert a waypoint and compose shorter geodesics"
        )
    phases = np.exp(1j * t * np.angle(lam))
    step = (q * phases) @ q.conj().T
    return Unitary(polar_project(u.mat @ step), _checked=True)


def dist_frob(u: Unitary, v: Unitary) -> float:
    """Frobenius distance ||u - v||_F."""
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {v.dim}")
    return float(np.linalg.norm(u.mat - v.mat))


def skew_part(x: np.ndarray) -> np.ndarray:
    return 0.5 * (x - x.conj().T)


def tangent_project(base: Unitary, ambient) -> SkewTangent:
    """Project an ambient matrix onto the tangent space of U(n) at base."""
    g = np.asarray(ambient, dtype=np.complex128)
    return SkewTangent(base, base.mat @ skew_part(base.mat.conj().T @ g))


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(rows: list, dim: int) -> np.ndarray:
    m = np.array(
        [[complex(re, im) for re, im in row] for row in rows],
        dtype=np.complex128,
    ).reshape((dim, dim))
    return m
