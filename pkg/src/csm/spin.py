"""Context families for photon polarization and spin-j Stern-Gerlach directions.

Two conventions coexist on purpose. Polarization frames use the real
two-dimensional rotation, so the transmission probability between polarizers
at relative angle d is cos(d)**2. Spin-1/2 frames use the spinor
representation, where directions separated by d give cos(d/2)**2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .core import Context, ContextTransformation, context_from_basis


class InvalidSpin(ValueError):
    pass


@dataclass(frozen=True)
class PolarizerContextSpec:
    theta: float

    def __post_init__(self):
        if not np.isfinite(self.theta):
            raise ValueError("polarizer angle must be finite")


@dataclass(frozen=True)
class SpinDirectionSpec:
    j: float
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        two_j(self.j)
        if not (np.isfinite(self.theta) and np.isfinite(self.phi)):
            raise ValueError("direction angles must be finite")

    @property
    def dim(self) -> int:
        return two_j(self.j) + 1


def two_j(j) -> int:
    """Return 2j as an int, raising InvalidSpin unless j is a positive (half-)integer."""
    try:
        tj = Fraction(j).limit_denominator(1000) * 2
    except (TypeError, ValueError) as exc:
        raise InvalidSpin(f"invalid spin {j!r}") from exc
    if tj.denominator != 1 or tj < 1 or abs(float(tj) - 2 * float(j)) > 1e-12:
        raise InvalidSpin(f"spin must be a positive integer or half-integer, got {j!r}")
    return int(tj)


def polarization_context(spec: PolarizerContextSpec | float) -> Context:
    """Outcome 0 is transmission (H_theta), outcome 1 is reflection (V_theta)."""
    theta = spec.theta if isinstance(spec, PolarizerContextSpec) else float(spec)
    c, s = np.cos(theta), np.sin(theta)
    return context_from_basis([(c, s), (-s, c)], label=f"pol({np.degrees(theta):.6g}deg)", params=(theta,))


@lru_cache(maxsize=None)
def _angular_momentum(tj: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    j = tj / 2
    m = j - np.arange(tj + 1)
    # <m+1| J+ |m> on the superdiagonal, basis ordered m = j, j-1, ..., -j
    jp = np.diag(np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), 1).astype(np.complex128)
    jm = jp.conj().T
    jx = 0.5 * (jp + jm)
    jy = -0.5j * (jp - jm)
    jz = np.diag(m).astype(np.complex128)
    for a in (jx, jy, jz):
        a.setflags(write=False)
    return jx, jy, jz


def angular_momentum_operators(j) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Jx, Jy, Jz for spin ``j`` in the basis m = j, j-1, ..., -j."""
    return _angular_momentum(two_j(j))


def direction(theta: float, phi: float) -> np.ndarray:
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def spin_component(j, axis) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    jx, jy, jz = angular_momentum_operators(j)
    return axis[0] * jx + axis[1] * jy + axis[2] * jz


def spin_direction_context(spec: SpinDirectionSpec) -> Context:
    """Eigenframe of n.J, outcomes ordered by descending m (j first)."""
    op = spin_component(spec.j, direction(spec.theta, spec.phi))
    vals, vecs = linalg.hermitian_eigensystem(op)
    expected = spec.j - np.arange(spec.dim)
    if np.max(np.abs(vals - expected)) > 1e-8:
        raise RuntimeError(f"spin eigenvalues {vals} do not match m = j..-j")
    label = f"spin{spec.j:g}(theta={np.degrees(spec.theta):.6g}deg,phi={np.degrees(spec.phi):.6g}deg)"
    return context_from_basis(vecs, label=label, params=(spec.theta, spec.phi))


def rotation_transformation(j, axis, angle: float) -> ContextTransformation:
    """exp(-i angle axis.J), evaluated through the spectral decomposition of axis.J."""
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,) or abs(np.linalg.norm(axis) - 1.0) > 1e-10:
        raise ValueError(f"rotation axis must be a unit 3-vector, got {axis}")
    u = linalg.spectral_function(spin_component(j, axis), lambda lam: np.exp(-1j * angle * lam))
    return ContextTransformation(u, label=f"R({angle:.6g})")
