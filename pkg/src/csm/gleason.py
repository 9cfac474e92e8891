"""Frame-function tests separating Born-rule assignments from non-Born ones.

Density matrices appear here only as test fixtures for the frame condition;
the modalities themselves stay pure (rank one). Dimension 2 results are
reported as "additivity only": the uniqueness argument needs dim >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import linalg
from .core import Context, context_from_basis

SeedLike = int | np.random.SeedSequence


class InvalidDensity(ValueError):
    pass


class IllConditionedProbes(RuntimeError):
    pass


def _rng(seed: SeedLike) -> np.random.Generator:
    return np.random.default_rng(seed)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary: QR of a complex Ginibre matrix with the R-diagonal phases divided out."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_context(dim: int, seed: SeedLike) -> Context:
    if dim < 2:
        raise ValueError("random_context needs dim >= 2")
    u = haar_unitary(dim, _rng(seed))
    return context_from_basis([u[:, k] for k in range(dim)], label=f"haar(d={dim})")


def basis_seeds(seed: SeedLike, n: int) -> list[np.random.SeedSequence]:
    """Independent per-basis seeds so batches can be evaluated in any order."""
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return ss.spawn(n)


@dataclass(frozen=True)
class ProbabilityAssignment:
    """A map from rank-one projectors of dimension ``dim`` to [0, 1].

    The evaluator only ever sees projectors, never state vectors, so it
    cannot depend on the phase of a representative vector.
    """

    dim: int
    evaluator: Callable[[np.ndarray], float] = field(compare=False)
    name: str = ""

    def __call__(self, projector: np.ndarray) -> float:
        return float(self.evaluator(projector))

    @property
    def uniqueness_applicable(self) -> bool:
        return self.dim >= 3


def check_density(rho, tol: float = linalg.DEFAULT_TOL) -> np.ndarray:
    rho = linalg.as_matrix(rho)
    if rho.shape[0] != rho.shape[1] or not linalg.is_hermitian(rho, tol):
        raise InvalidDensity("density matrix must be square and Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise InvalidDensity(f"density matrix trace {np.trace(rho).real:.6g} != 1")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() < -tol:
        raise InvalidDensity("density matrix is not positive semidefinite")
    return rho


def born_assignment(rho) -> ProbabilityAssignment:
    rho = check_density(rho)
    return ProbabilityAssignment(rho.shape[0], lambda p: np.vdot(rho, p).real, "born")


def squared_assignment(rho) -> ProbabilityAssignment:
    """Pi -> Tr(rho Pi)**2; not a frame function."""
    rho = check_density(rho)
    return ProbabilityAssignment(rho.shape[0], lambda p: np.vdot(rho, p).real ** 2, "born-squared")


def constant_assignment(dim: int) -> ProbabilityAssignment:
    return ProbabilityAssignment(dim, lambda p: 1.0 / dim, "constant")


@dataclass(frozen=True)
class BasisRecord:
    index: int
    frame_sum: float
    violation: float
    out_of_range: bool


@dataclass(frozen=True)
class FrameTestReport:
    assignment: str
    dim: int
    bases_tested: int
    max_additivity_violation: float
    worst: BasisRecord
    out_of_range_count: int

    @property
    def scope(self) -> str:
        return "frame function" if self.dim >= 3 else "additivity only"


def additivity_test(f: ProbabilityAssignment, n_bases: int, seed: SeedLike) -> FrameTestReport:
    """|sum_n f(Pi_n) - 1| over ``n_bases`` Haar-random frames."""
    if n_bases < 1:
        raise ValueError("n_bases must be positive")
    worst = None
    bad = 0
    for k, ss in enumerate(basis_seeds(seed, n_bases)):
        ctx = random_context(f.dim, ss)
        values = [f(p) for p in ctx.projectors]
        out = any(v < -1e-12 or v > 1 + 1e-12 for v in values)
        bad += out
        total = float(np.sum(values))
        rec = BasisRecord(k, total, abs(total - 1.0), out)
        if worst is None or rec.violation > worst.violation:
            worst = rec
    return FrameTestReport(f.name, f.dim, n_bases, worst.violation, worst, bad)


def traceless_hermitian_basis(dim: int) -> list[np.ndarray]:
    """Generalized Gell-Mann matrices: dim**2 - 1 traceless Hermitian matrices."""
    out = []
    for j in range(dim):
        for k in range(j + 1, dim):
            s = np.zeros((dim, dim), complex)
            s[j, k] = s[k, j] = 1
            a = np.zeros((dim, dim), complex)
            a[j, k], a[k, j] = -1j, 1j
            out += [s, a]
    for l in range(1, dim):
        d = np.zeros(dim)
        d[:l] = 1
        d[l] = -l
        out.append(np.diag(d * np.sqrt(2 / (l * (l + 1)))).astype(complex))
    return out


def _probe_projectors(dim: int, n: int, seed) -> list[np.ndarray]:
    projs = []
    for ss in basis_seeds(seed, -(-n // dim)):
        projs.extend(random_context(dim, ss).projectors)
    return projs[:n]


@dataclass(frozen=True)
class DensityFit:
    rho: np.ndarray
    residual: float
    condition_number: float


def fit_density(f: ProbabilityAssignment, n_probes: int, seed: SeedLike, max_retries: int = 5,
                max_condition: float = 1e8) -> DensityFit:
    """Least-squares fit of a trace-1 Hermitian rho with f(Pi) ~ Tr(rho Pi).

    ``residual`` is the max error on a held-out probe set of the same size.
    """
    dim = f.dim
    if dim < 2 or n_probes < dim * dim:
        raise ValueError("fit_density needs dim >= 2 and n_probes >= dim**2")
    basis = traceless_hermitian_basis(dim)
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    for _ in range(max_retries):
        fit_seed, hold_seed, root = root.spawn(3)
        probes = _probe_projectors(dim, n_probes, fit_seed)
        design = np.array([[np.vdot(b, p).real for b in basis] for p in probes])
        cond = np.linalg.cond(design)
        if cond <= max_condition:
            break
    else:
        raise IllConditionedProbes(f"no well-conditioned probe set after {max_retries} tries")
    target = np.array([f(p) for p in probes]) - 1.0 / dim
    coef, *_ = np.linalg.lstsq(design, target, rcond=None)
    rho = np.eye(dim) / dim + sum(c * b for c, b in zip(coef, basis))
    held = _probe_projectors(dim, n_probes, hold_seed)
    residual = max(abs(f(p) - np.vdot(rho, p).real) for p in held)
    return DensityFit(rho, float(residual), float(cond))
