"""Spin-s operators, Bell operators, singlet states and their rotations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import as_coefficient_matrix
from .errors import (
    DimensionMismatch,
    EigensolverFailure,
    NotARotation,
    UnsupportedSpin,
    ValueNotInSpectrum,
)
from .number_theory import SpinValue

HERMITICITY_TOL = 1e-12
NORM_TOL = 1e-12
UNITARITY_TOL = 1e-10
EIG_RESIDUAL_TOL = 1e-9
GIMBAL_TOL = 1e-12

# dense eigensolvers stay cheap up to the (2s+1)^2 = 441 bipartite space
MAX_SPIN_DOUBLED = 20

_AXES = ("x", "y", "z")


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Square complex matrix validated to be Hermitian."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if float(np.max(np.abs(m - m.conj().T))) > HERMITICITY_TOL:
            raise ValueError("matrix is not Hermitian within tolerance")
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit-norm complex amplitude vector.

    Single-party states are indexed by m = s, s-1, ..., -s; bipartite
    states by (m_A, m_B) pairs, row-major with party A as the slow index.
    """

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if abs(float(np.linalg.norm(v)) - 1.0) > NORM_TOL:
            raise ValueError("state vector is not normalized")
        object.__setattr__(self, "amplitudes", v)

    @property
    def dim(self) -> int:
        return len(self.amplitudes)


@dataclass(frozen=True)
class EulerAngles:
    """z-y-z rotation angles in radians."""

    theta: float
    phi: float
    xi: float

    def __post_init__(self) -> None:
        eps = 1e-12
        if not (-math.pi - eps <= self.theta <= math.pi + eps):
            raise ValueError("theta must lie in [-pi, pi]")
        if not (-eps <= self.phi <= math.pi + eps):
            raise ValueError("phi must lie in [0, pi]")
        if not (-math.pi - eps <= self.xi <= math.pi + eps):
            raise ValueError("xi must lie in [-pi, pi]")


def _check_spin(s: SpinValue) -> None:
    if not 1 <= s.doubled <= MAX_SPIN_DOUBLED:
        raise UnsupportedSpin(
            f"spin doubled value {s.doubled} outside supported range 1..{MAX_SPIN_DOUBLED}"
        )


def spin_operators(s: SpinValue) -> tuple[HermitianOperator, HermitianOperator, HermitianOperator]:
    """The (2s+1)-dimensional matrices (S_x, S_y, S_z) in the S_z eigenbasis.

    Basis ordered m = s down to -s; built from the ladder operator with
    matrix elements sqrt(s(s+1) - m(m+1)).
    """
    _check_spin(s)
    sval = s.doubled / 2.0
    m = np.arange(s.doubled, -s.doubled - 1, -2) / 2.0
    raising = np.diag(np.sqrt(sval * (sval + 1.0) - m[1:] * (m[1:] + 1.0)), k=1)
    sx = (raising + raising.T) / 2.0
    sy = (raising - raising.T) / 2.0j
    sz = np.diag(m)
    return (HermitianOperator(sx), HermitianOperator(sy), HermitianOperator(sz))


def bell_operator(C, s: SpinValue) -> HermitianOperator:
    """sum_kl c_kl S_k (x) S_l on the bipartite space of two spin-s parties."""
    cm = as_coefficient_matrix(C)
    ops = [op.entries for op in spin_operators(s)]
    dim = (s.doubled + 1) ** 2
    total = np.zeros((dim, dim), dtype=complex)
    for k in range(3):
        for l in range(3):
            coeff = cm.entries[k, l]
            if coeff != 0.0:
                total += coeff * np.kron(ops[k], ops[l])
    return HermitianOperator(total)


def quantum_bound(C, s: SpinValue) -> tuple[float, StateVector]:
    """Minimal eigenvalue of the Bell operator and an optimal eigenvector."""
    H = bell_operator(C, s).entries
    eigenvalues, eigenvectors = np.linalg.eigh(H)
    lam = float(eigenvalues[0])
    vec = eigenvectors[:, 0]
    residual = float(np.linalg.norm(H @ vec - lam * vec))
    if residual > EIG_RESIDUAL_TOL:
        raise EigensolverFailure(f"eigenpair residual {residual:.3e} exceeds tolerance")
    return lam, StateVector(vec)


def singlet_state(s: SpinValue) -> StateVector:
    """The rotation-invariant total-spin-zero state of two spin-s parties.

    Amplitude (-1)^(s-m) / sqrt(2s+1) at (m, -m) and zero elsewhere;
    the sign exponent s - m is an exact integer in doubled arithmetic.
    """
    _check_spin(s)
    d = s.doubled + 1
    amps = np.zeros(d * d, dtype=complex)
    norm = 1.0 / math.sqrt(d)
    for i in range(d):  # i = s - m, so -m sits at index d - 1 - i
        amps[i * d + (d - 1 - i)] = -norm if i % 2 else norm
    return StateVector(amps)


def euler_from_rotation(C) -> EulerAngles:
    """z-y-z angles of a rotation matrix, C = R_z(xi) R_y(phi) R_z(theta).

    Near the gimbal-locked case |C_zz| = 1 the decomposition degenerates;
    the convention here puts the whole z-rotation into theta with xi = 0
    and phi in {0, pi}.
    """
    cm = as_coefficient_matrix(C)
    if not cm.is_rotation:
        raise NotARotation("matrix is not orthogonal with determinant +1")
    m = cm.entries
    if abs(m[2, 2]) >= 1.0 - GIMBAL_TOL:
        if m[2, 2] > 0:
            return EulerAngles(math.atan2(m[1, 0], m[0, 0]), 0.0, 0.0)
        return EulerAngles(math.atan2(m[1, 0], m[1, 1]), math.pi, 0.0)
    phi = math.acos(max(-1.0, min(1.0, m[2, 2])))
    xi = math.atan2(m[1, 2], m[0, 2])
    theta = math.atan2(m[2, 1], -m[2, 0])
    return EulerAngles(theta, phi, xi)


def rotation_unitary(s: SpinValue, angles: EulerAngles) -> np.ndarray:
    """exp(i S_z theta) exp(i S_y phi) exp(i S_z xi) on the spin-s space.

    The z factors are diagonal exponentials; the y factor comes from the
    eigendecomposition of S_y reassembled with unit-modulus phases.
    Satisfies U S_j U+ = sum_k c_jk S_k for the matrix the angles came from.
    """
    sx, sy, sz = spin_operators(s)
    z_diag = np.diag(sz.entries).real
    uz_theta = np.diag(np.exp(1j * angles.theta * z_diag))
    y_eigvals, y_eigvecs = np.linalg.eigh(sy.entries)
    uy = (y_eigvecs * np.exp(1j * angles.phi * y_eigvals)) @ y_eigvecs.conj().T
    uz_xi = np.diag(np.exp(1j * angles.xi * z_diag))
    unitary = uz_theta @ uy @ uz_xi
    residual = float(np.linalg.norm(unitary.conj().T @ unitary - np.eye(len(unitary))))
    if residual > UNITARITY_TOL:
        raise EigensolverFailure(f"unitarity residual {residual:.3e} exceeds tolerance")
    return unitary


def rotated_singlet(C, s: SpinValue) -> StateVector:
    """The singlet with party B rotated by the unitary representing C."""
    cm = as_coefficient_matrix(C)
    if not cm.is_rotation:
        raise NotARotation("matrix is not orthogonal with determinant +1")
    unitary = rotation_unitary(s, euler_from_rotation(cm))
    d = s.doubled + 1
    amps = np.kron(np.eye(d), unitary) @ singlet_state(s).amplitudes
    return StateVector(amps)


def expectation(state: StateVector, op: HermitianOperator) -> float:
    """<state| op |state> as a real number."""
    if state.dim != op.dim:
        raise DimensionMismatch(f"state dim {state.dim} != operator dim {op.dim}")
    value = complex(np.vdot(state.amplitudes, op.entries @ state.amplitudes))
    if abs(value.imag) > 1e-10:
        raise ValueError(f"expectation has imaginary residue {value.imag:.3e}")
    return value.real


def schmidt_coefficients(state: StateVector, s: SpinValue) -> np.ndarray:
    """Singular values of the bipartite amplitude matrix, descending."""
    d = s.doubled + 1
    if state.dim != d * d:
        raise DimensionMismatch(
            f"state dim {state.dim} is not bipartite for spin {s} (expected {d * d})"
        )
    coeffs = np.linalg.svd(state.amplitudes.reshape(d, d), compute_uv=False)
    if abs(float(np.sum(coeffs**2)) - 1.0) > 1e-10:
        raise EigensolverFailure("Schmidt coefficients do not square-sum to one")
    return coeffs


def basis_state(s: SpinValue, m: SpinValue) -> StateVector:
    """The single-party eigenstate |s, m> of S_z."""
    _check_spin(s)
    _check_in_spectrum(s.doubled, m)
    amps = np.zeros(s.doubled + 1, dtype=complex)
    amps[(s.doubled - m.doubled) // 2] = 1.0
    return StateVector(amps)


def _check_in_spectrum(spin_doubled: int, value: SpinValue) -> None:
    if abs(value.doubled) > spin_doubled or (value.doubled - spin_doubled) % 2 != 0:
        raise ValueNotInSpectrum(
            f"projection {value} is not in the spectrum of a spin-{SpinValue(spin_doubled)} operator"
        )


def projection_probability(state: StateVector, axis: str, value: SpinValue) -> float:
    """Probability of measuring the given projection along x, y or z.

    The axis eigenvector's phase is fixed by making its first nonzero
    amplitude real positive; the probability itself is phase independent.
    """
    if axis not in _AXES:
        raise ValueError(f"axis must be one of {_AXES}, got {axis!r}")
    spin_doubled = state.dim - 1
    _check_in_spectrum(spin_doubled, value)
    op = spin_operators(SpinValue(spin_doubled))[_AXES.index(axis)]
    eigenvalues, eigenvectors = np.linalg.eigh(op.entries)
    k = int(np.argmin(np.abs(eigenvalues - value.value)))
    if abs(eigenvalues[k] - value.value) > 1e-8:
        raise ValueNotInSpectrum(f"no eigenvalue near {value} on axis {axis}")
    vec = eigenvectors[:, k]
    first = vec[np.flatnonzero(np.abs(vec) > 1e-12)[0]]
    vec = vec * (first.conjugate() / abs(first))
    return float(abs(np.vdot(vec, state.amplitudes)) ** 2)
