"""Finite-dimensional complex Hilbert-space primitives.

States are unit vectors over an outcome basis, operators are square complex
matrices. Everything is immutable; the numpy arrays backing each value are
marked read-only on construction.

The inner product follows the Dirac convention: ``inner(a, b) = <a|b>`` is
conjugate-linear in ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimMismatch, HermiticityError, InvalidAmplitude, NormalizationError

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "StateVector",
    "LinearOperator",
    "make_state",
    "basis_state",
    "inner",
    "projector_onto",
    "basis_projector",
    "identity",
    "apply",
    "expectation",
    "weighted_projector_sum",
    "is_projector",
]


@dataclass(frozen=True)
class Tolerances:
    norm_tol: float = 1e-12
    herm_tol: float = 1e-10
    idem_tol: float = 1e-12

    def __post_init__(self):
        for name in ("norm_tol", "herm_tol", "idem_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOLERANCES = Tolerances()


def _frozen_complex(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    if arr.ndim != ndim:
        raise DimMismatch(f"expected a {ndim}-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidAmplitude("non-finite entry")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """A unit vector of complex amplitudes over the outcome basis.

    Use :func:`make_state` to build one from arbitrary (nonzero) amplitudes;
    the constructor itself only accepts vectors that are already normalized.
    """

    amplitudes: np.ndarray
    renormalized: bool = False
    tol: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False)

    def __post_init__(self):
        amps = _frozen_complex(self.amplitudes, 1)
        if amps.size < 1:
            raise DimMismatch("a state needs at least one amplitude")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > self.tol.norm_tol:
            raise NormalizationError(f"state is not normalized (|v|^2 = {norm_sq!r})")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __len__(self):
        return self.dim

    def allclose(self, other: "StateVector", atol: float = 1e-12) -> bool:
        return self.dim == other.dim and bool(np.allclose(self.amplitudes, other.amplitudes, rtol=0, atol=atol))


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """Square complex matrix acting on the outcome space.

    With ``hermitian=True`` the matrix is checked against its conjugate
    transpose on construction.
    """

    matrix: np.ndarray
    hermitian: bool = False
    tol: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False)

    def __post_init__(self):
        mat = _frozen_complex(self.matrix, 2)
        if mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
            raise DimMismatch(f"operator must be square, got shape {mat.shape}")
        object.__setattr__(self, "matrix", mat)
        if self.hermitian and not self.is_hermitian():
            raise HermiticityError("operator flagged Hermitian is not")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_hermitian(self, herm_tol: float | None = None) -> bool:
        tol = self.tol.herm_tol if herm_tol is None else herm_tol
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= tol)

    def __matmul__(self, other):
        if isinstance(other, LinearOperator):
            _check_dims(self.dim, other.dim)
            return LinearOperator(self.matrix @ other.matrix, tol=self.tol)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, LinearOperator):
            _check_dims(self.dim, other.dim)
            return LinearOperator(self.matrix + other.matrix, hermitian=self.hermitian and other.hermitian, tol=self.tol)
        return NotImplemented

    def allclose(self, other: "LinearOperator", atol: float = 1e-12) -> bool:
        return self.dim == other.dim and bool(np.allclose(self.matrix, other.matrix, rtol=0, atol=atol))


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise DimMismatch(f"dimension mismatch: {a} != {b}")


def make_state(amplitudes: Sequence[complex], tol: Tolerances = DEFAULT_TOLERANCES) -> StateVector:
    """Scale ``amplitudes`` to unit norm and wrap them as a state.

    The returned state's ``renormalized`` flag records whether the input's
    squared norm was off by more than ``tol.norm_tol``.

    Raises:
        InvalidAmplitude: an entry is NaN or infinite.
        NormalizationError: the vector is zero.
    """
    arr = np.array(amplitudes, dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 1:
        raise DimMismatch("amplitudes must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise InvalidAmplitude("non-finite amplitude")
    norm = float(np.linalg.norm(arr))
    if norm == 0.0 or not np.isfinite(norm):
        raise NormalizationError("cannot normalize a zero vector")
    off = abs(norm * norm - 1.0) > tol.norm_tol
    if off:
        arr = arr / norm
    return StateVector(arr, renormalized=off, tol=tol)


def basis_state(i: int, dim: int) -> StateVector:
    if not 0 <= i < dim:
        raise DimMismatch(f"basis index {i} out of range for dim {dim}")
    arr = np.zeros(dim, dtype=np.complex128)
    arr[i] = 1.0
    return StateVector(arr)


def inner(bra: StateVector, ket: StateVector) -> complex:
    """<bra|ket>, conjugating the first argument."""
    _check_dims(bra.dim, ket.dim)
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


def projector_onto(v: StateVector) -> LinearOperator:
    """Rank-one projector |v><v|."""
    amps = v.amplitudes
    return LinearOperator(np.outer(amps, amps.conj()), hermitian=True, tol=v.tol)


def basis_projector(i: int, dim: int) -> LinearOperator:
    if not 0 <= i < dim:
        raise DimMismatch(f"basis index {i} out of range for dim {dim}")
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[i, i] = 1.0
    return LinearOperator(mat, hermitian=True)


def identity(dim: int) -> LinearOperator:
    return LinearOperator(np.eye(dim, dtype=np.complex128), hermitian=True)


def apply(op: LinearOperator, v: StateVector | np.ndarray) -> np.ndarray:
    """Matrix-vector product. The result is not renormalized."""
    amps = v.amplitudes if isinstance(v, StateVector) else np.asarray(v, dtype=np.complex128)
    _check_dims(op.dim, amps.size)
    return op.matrix @ amps


def expectation(v: StateVector, op: LinearOperator) -> float:
    """Real expectation value <v|op|v> of a Hermitian operator.

    Raises:
        HermiticityError: ``op`` is not Hermitian within ``herm_tol``.
        DimMismatch: dimensions differ.
    """
    _check_dims(v.dim, op.dim)
    if not op.is_hermitian():
        raise HermiticityError("expectation requires a Hermitian operator")
    val = complex(np.vdot(v.amplitudes, op.matrix @ v.amplitudes))
    if abs(val.imag) > op.tol.herm_tol:
        raise HermiticityError(f"expectation has imaginary part {val.imag!r}")
    return val.real


def weighted_projector_sum(weights: Sequence[float], projs: Sequence[LinearOperator]) -> LinearOperator:
    if len(weights) != len(projs):
        raise DimMismatch(f"{len(weights)} weights for {len(projs)} projectors")
    if not projs:
        raise DimMismatch("need at least one projector")
    dim = projs[0].dim
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for w, p in zip(weights, projs):
        _check_dims(dim, p.dim)
        mat = mat + float(w) * p.matrix
    return LinearOperator(mat, hermitian=all(p.hermitian for p in projs))


def is_projector(op: LinearOperator, tol: Tolerances | None = None) -> bool:
    """True iff ``op`` is Hermitian and idempotent (max-entry norm of P@P - P)."""
    tol = tol or op.tol
    if not op.is_hermitian(tol.herm_tol):
        return False
    m = op.matrix
    return bool(np.max(np.abs(m @ m - m)) <= tol.idem_tol)
