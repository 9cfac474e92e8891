"""Systems, contexts and modalities, and the Born transition probabilities between them."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from . import linalg
from .linalg import DEFAULT_TOL, DimensionMismatch


class ContextError(ValueError):
    pass


class NonOrthonormalBasis(ContextError):
    def __init__(self, worst_deviation: float):
        super().__init__(f"basis is not orthonormal (worst Gram deviation {worst_deviation:.3e})")
        self.worst_deviation = worst_deviation


class NotUnitary(ContextError):
    pass


@dataclass(frozen=True)
class System:
    dim: int
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("a system needs at least one modality")


def _freeze(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=np.complex128, copy=True)
    m.setflags(write=False)
    return m


def check_projector(p: np.ndarray, tol: float = DEFAULT_TOL) -> None:
    """Raise ContextError unless ``p`` is a Hermitian, idempotent, trace-1 projector."""
    p = linalg.as_matrix(p)
    if p.shape[0] != p.shape[1]:
        raise ContextError(f"projector must be square, got {p.shape}")
    if not linalg.is_hermitian(p, tol):
        raise ContextError("projector is not Hermitian")
    if np.max(np.abs(p @ p - p)) > tol:
        raise ContextError("projector is not idempotent")
    if abs(np.trace(p) - 1.0) > tol:
        raise ContextError(f"projector trace {np.trace(p).real:.6g} != 1")


@dataclass(frozen=True, eq=False)
class Context:
    """Ordered frame of N orthogonal rank-one projectors summing to identity.

    ``params`` holds the classical knob settings (angles in radians) that
    produced the frame. Equality (``==``) ignores ordering; use
    :meth:`ordered_equal` when outcome indices matter.
    """

    projectors: tuple[np.ndarray, ...]
    label: str = ""
    params: tuple[float, ...] = ()
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        projs = tuple(_freeze(p) for p in self.projectors)
        object.__setattr__(self, "projectors", projs)
        object.__setattr__(self, "params", tuple(float(x) for x in self.params))
        if not projs:
            raise ContextError("a context needs at least one projector")
        n = projs[0].shape[0]
        if len(projs) != n:
            raise ContextError(f"{len(projs)} projectors for dimension {n}")
        for p in projs:
            if p.shape != (n, n):
                raise DimensionMismatch("projectors of a context must share one dimension")
            check_projector(p, self.tol)
        for a, b in itertools.combinations(projs, 2):
            if abs(np.vdot(a, b)) > self.tol:
                raise ContextError("projectors are not mutually orthogonal")
        if np.max(np.abs(sum(projs) - np.eye(n))) > self.tol:
            raise ContextError("projectors do not sum to identity")

    @property
    def dim(self) -> int:
        return len(self.projectors)

    def modality(self, n: int) -> Modality:
        return Modality(self.projectors[n], self.label, n)

    def modalities(self) -> list[Modality]:
        return [self.modality(n) for n in range(self.dim)]

    def ordered_equal(self, other: Context, tol: float = DEFAULT_TOL) -> bool:
        if self.dim != other.dim:
            return False
        return all(projectors_equal(a, b, tol) for a, b in zip(self.projectors, other.projectors))

    def same_frame(self, other: Context, tol: float = DEFAULT_TOL) -> bool:
        if self.dim != other.dim:
            return False
        unmatched = list(other.projectors)
        for p in self.projectors:
            for k, q in enumerate(unmatched):
                if projectors_equal(p, q, tol):
                    del unmatched[k]
                    break
            else:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Context):
            return NotImplemented
        return self.same_frame(other)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Modality:
    """A rank-one projector together with the context in which it is certain."""

    projector: np.ndarray
    context_label: str = ""
    outcome_index: int = 0

    def __post_init__(self):
        p = _freeze(self.projector)
        object.__setattr__(self, "projector", p)
        check_projector(p)
        if not 0 <= self.outcome_index < p.shape[0]:
            raise ContextError(f"outcome index {self.outcome_index} out of range")

    @property
    def dim(self) -> int:
        return self.projector.shape[0]

    @classmethod
    def from_vector(cls, v, context_label: str = "", outcome_index: int = 0) -> Modality:
        return cls(linalg.outer(v), context_label, outcome_index)


@dataclass(frozen=True, eq=False)
class ContextTransformation:
    matrix: np.ndarray
    label: str = ""
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        u = _freeze(self.matrix)
        object.__setattr__(self, "matrix", u)
        if not linalg.is_unitary(u, self.tol):
            raise NotUnitary(f"transformation {self.label!r} is not unitary")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def inverse(self) -> ContextTransformation:
        return ContextTransformation(self.matrix.conj().T, f"{self.label}^-1", self.tol)

    def then(self, other: ContextTransformation) -> ContextTransformation:
        """Apply ``self`` first, then ``other``."""
        return ContextTransformation(other.matrix @ self.matrix, f"{other.label}*{self.label}", self.tol)


@dataclass(frozen=True)
class TransitionTable:
    """``p[m, n]`` is the probability of outcome m of ``to_context`` given outcome n of ``from_context``."""

    from_context: str
    to_context: str
    p: np.ndarray

    def row_sums(self) -> np.ndarray:
        return self.p.sum(axis=1)

    def column_sums(self) -> np.ndarray:
        return self.p.sum(axis=0)

    def stochasticity_error(self) -> float:
        return float(max(np.max(np.abs(self.row_sums() - 1)), np.max(np.abs(self.column_sums() - 1))))


class Relation(enum.Enum):
    IDENTICAL = "identical"
    MUTUALLY_EXCLUSIVE = "mutually-exclusive"
    INCOMPATIBLE = "incompatible"


def projectors_equal(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return a.shape == b.shape and bool(np.max(np.abs(a - b)) <= tol)


def context_from_basis(vectors, label: str = "", params=(), tol: float = DEFAULT_TOL) -> Context:
    vs = [linalg.as_vector(v) for v in vectors]
    if not vs or any(v.size != len(vs) for v in vs):
        raise DimensionMismatch(f"need N vectors of dimension N, got {len(vs)} of sizes {[v.size for v in vs]}")
    basis = np.column_stack(vs)
    worst = float(np.max(np.abs(basis.conj().T @ basis - np.eye(len(vs)))))
    if worst > tol:
        raise NonOrthonormalBasis(worst)
    return Context(tuple(np.outer(v, v.conj()) for v in vs), label, params, tol)


def _projector(x) -> np.ndarray:
    # anything carrying a projector (Modality, composite modalities) or a bare matrix
    p = getattr(x, "projector", None)
    return p if p is not None else linalg.as_matrix(x)


def born_probability(a, b) -> float:
    """Tr(P_a P_b) for two modalities (or bare projectors), clipped to [0, 1]."""
    pa, pb = _projector(a), _projector(b)
    if pa.shape != pb.shape:
        raise DimensionMismatch(f"born_probability: dims {pa.shape[0]} and {pb.shape[0]}")
    # Tr(A B) = sum_ij A_ij conj(B_ij) for Hermitian B; vdot is symmetric up to conjugation
    p = np.vdot(pa, pb).real
    return float(min(1.0, max(0.0, p)))


def transition_table(c1: Context, c2: Context) -> TransitionTable:
    if c1.dim != c2.dim:
        raise DimensionMismatch(f"transition_table: dims {c1.dim} and {c2.dim}")
    a = np.stack(c1.projectors)
    b = np.stack(c2.projectors)
    p = np.einsum("mij,nij->mn", b.conj(), a).real
    return TransitionTable(c1.label, c2.label, np.clip(p, 0.0, 1.0))


def transform_context(c: Context, g: ContextTransformation) -> Context:
    if c.dim != g.dim:
        raise DimensionMismatch(f"transform_context: context dim {c.dim}, transformation dim {g.dim}")
    u, ud = g.matrix, g.matrix.conj().T
    label = f"{g.label}({c.label})" if g.label else c.label
    return Context(tuple(u @ p @ ud for p in c.projectors), label, c.params, c.tol)


def classify_pair(m1, m2, tol: float = DEFAULT_TOL) -> Relation:
    p1, p2 = _projector(m1), _projector(m2)
    p = born_probability(p1, p2)
    if projectors_equal(p1, p2, tol) or p >= 1.0 - tol:
        return Relation.IDENTICAL
    if p <= tol:
        return Relation.MUTUALLY_EXCLUSIVE
    return Relation.INCOMPATIBLE


def exclusivity_graph(modalities, tol: float = DEFAULT_TOL) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(len(modalities)))
    projs = [_projector(m) for m in modalities]
    for i, j in itertools.combinations(range(len(projs)), 2):
        if classify_pair(projs[i], projs[j], tol) is Relation.MUTUALLY_EXCLUSIVE:
            g.add_edge(i, j)
    return g


def max_exclusive_set(modalities, tol: float = DEFAULT_TOL) -> int:
    """Size of the largest pairwise mutually exclusive subset (exact clique search)."""
    modalities = list(modalities)
    if not modalities:
        return 0
    dims = {_projector(m).shape[0] for m in modalities}
    if len(dims) != 1:
        raise DimensionMismatch(f"max_exclusive_set: mixed dimensions {sorted(dims)}")
    g = exclusivity_graph(modalities, tol)
    return max(len(c) for c in nx.find_cliques(g))
