"""Composite systems, the singlet, EPR consistency, no-signalling and CHSH tests.

Composite outcome ordering is row-major (Alice-major): outcome (i, j) of a
product context has index ``i * N_bob + j``. All EPR scenarios use spin-1/2
frames, so the singlet correlation at relative angle a is -cos(a).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .core import Context, Modality, System, born_probability, context_from_basis
from .linalg import DimensionMismatch
from .spin import SpinDirectionSpec, spin_direction_context

CHSH_TOL = 1e-9
NULL_EVENT_TOL = 1e-12


class ConditioningOnNullEvent(ValueError):
    pass


class WrongScenarioShape(ValueError):
    pass


class SignallingInput(ValueError):
    pass


class Provenance(enum.Enum):
    PRODUCT = "product"
    ENTANGLED = "entangled"


@dataclass(frozen=True)
class CompositeSystem:
    parts: tuple[System, ...]

    @property
    def dim(self) -> int:
        return int(np.prod([p.dim for p in self.parts]))


@dataclass(frozen=True)
class JointModality:
    modality: Modality
    provenance: Provenance
    dims: tuple[int, int]

    @property
    def projector(self) -> np.ndarray:
        return self.modality.projector


def _as_joint(mu) -> JointModality:
    if isinstance(mu, JointModality):
        return mu
    raise TypeError("expected a JointModality")


def product_context(ca: Context, cb: Context) -> Context:
    projs = tuple(np.kron(pa, pb) for pa in ca.projectors for pb in cb.projectors)
    return Context(projs, f"{ca.label}x{cb.label}", ca.params + cb.params)


def product_modality(ma: Modality, mb: Modality) -> JointModality:
    m = Modality(np.kron(ma.projector, mb.projector), f"{ma.context_label}x{mb.context_label}",
                 ma.outcome_index * mb.dim + mb.outcome_index)
    return JointModality(m, Provenance.PRODUCT, (ma.dim, mb.dim))


UP = np.array([1.0, 0.0])
DOWN = np.array([0.0, 1.0])


def singlet_vector() -> np.ndarray:
    return (np.kron(UP, DOWN) - np.kron(DOWN, UP)) / np.sqrt(2)


def singlet_modality() -> JointModality:
    m = Modality(linalg.outer(singlet_vector()), "coupled{S^2,Sz}", 3)
    return JointModality(m, Provenance.ENTANGLED, (2, 2))


def coupled_basis_context() -> Context:
    """{|1,1>, |1,0>, |1,-1>, |0,0>} for two spin-1/2 in the uncoupled order (uu, ud, du, dd)."""
    r = 1 / np.sqrt(2)
    basis = [
        np.array([1.0, 0, 0, 0]),
        np.array([0, r, r, 0]),
        np.array([0, 0, 0, 1.0]),
        np.array([0, r, -r, 0]),
    ]
    return context_from_basis(basis, label="coupled{S^2,Sz}")


def spin_half_context(angle: float) -> Context:
    """Spin-1/2 measurement along an axis at ``angle`` (radians) from z in the x-z plane."""
    return spin_direction_context(SpinDirectionSpec(0.5, angle, 0.0))


@dataclass(frozen=True)
class BipartiteProbabilityTable:
    settings: tuple[str, str]
    p: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.p.shape


def joint_table(mu: JointModality, ca: Context, cb: Context) -> BipartiteProbabilityTable:
    mu = _as_joint(mu)
    if (ca.dim, cb.dim) != mu.dims:
        raise DimensionMismatch(f"settings dims {(ca.dim, cb.dim)} do not match composite {mu.dims}")
    p = np.array([[born_probability(mu.projector, np.kron(pa, pb)) for pb in cb.projectors]
                  for pa in ca.projectors])
    return BipartiteProbabilityTable((ca.label, cb.label), p)


def marginals(t: BipartiteProbabilityTable) -> tuple[np.ndarray, np.ndarray]:
    return t.p.sum(axis=1), t.p.sum(axis=0)


@dataclass(frozen=True)
class Conditionals:
    """``b_given_a[i, j]`` = p(b_j | a_i); ``a_given_b[i, j]`` = p(a_i | b_j). NaN marks null events."""

    b_given_a: np.ndarray
    a_given_b: np.ndarray

    def b_given(self, i: int) -> np.ndarray:
        row = self.b_given_a[i]
        if np.isnan(row).any():
            raise ConditioningOnNullEvent(f"p(a_{i}) = 0")
        return row

    def a_given(self, j: int) -> np.ndarray:
        col = self.a_given_b[:, j]
        if np.isnan(col).any():
            raise ConditioningOnNullEvent(f"p(b_{j}) = 0")
        return col


def conditionals(t: BipartiteProbabilityTable, strict: bool = False) -> Conditionals:
    pa, pb = marginals(t)
    if strict and (np.any(pa <= NULL_EVENT_TOL) or np.any(pb <= NULL_EVENT_TOL)):
        raise ConditioningOnNullEvent("conditioning on an outcome of zero probability")
    with np.errstate(invalid="ignore", divide="ignore"):
        b_given_a = np.where(pa[:, None] > NULL_EVENT_TOL, t.p / pa[:, None], np.nan)
        a_given_b = np.where(pb[None, :] > NULL_EVENT_TOL, t.p / pb[None, :], np.nan)
    return Conditionals(b_given_a, a_given_b)


def partial_trace(rho: np.ndarray, dims: tuple[int, int], keep: int) -> np.ndarray:
    r = rho.reshape(dims[0], dims[1], dims[0], dims[1])
    return np.einsum("ijkj->ik", r) if keep == 0 else np.einsum("ijil->jl", r)


def _local(p: np.ndarray, dims: tuple[int, int], side: int) -> np.ndarray:
    return np.kron(p, np.eye(dims[1])) if side == 0 else np.kron(np.eye(dims[0]), p)


def conditional_modality(mu: JointModality, ctx: Context, outcome: int, side: int = 0) -> Modality:
    """The one-party modality left for the partner after ``side`` obtains ``outcome`` in ``ctx``.

    Computed by projecting the joint modality with the local outcome
    projector and tracing out the measuring party.
    """
    mu = _as_joint(mu)
    local = _local(ctx.projectors[outcome], mu.dims, side)
    post = local @ mu.projector @ local
    norm = np.trace(post).real
    if norm <= NULL_EVENT_TOL:
        raise ConditioningOnNullEvent(f"outcome {outcome} of {ctx.label} has zero probability")
    reduced = partial_trace(post / norm, mu.dims, keep=1 - side)
    return Modality(reduced, f"({ctx.label}:{outcome})", 0)


@dataclass(frozen=True)
class ConsistencyReport:
    residual: float
    skipped: tuple[tuple[int, int], ...]


def check_consistency(mu: JointModality, ca: Context, cb: Context) -> ConsistencyReport:
    """Compare both sequential routes to the joint probability.

    Route A: Alice measures first, then Bob measures the modality she leaves
    him. Route B: the reverse. Both products must agree with each other and
    with the direct joint Born probability. Null conditioning events are
    skipped and reported.
    """
    mu = _as_joint(mu)
    joint = joint_table(mu, ca, cb).p
    pa = [born_probability(mu.projector, _local(p, mu.dims, 0)) for p in ca.projectors]
    pb = [born_probability(mu.projector, _local(p, mu.dims, 1)) for p in cb.projectors]
    worst = 0.0
    skipped = []
    for i, j in itertools.product(range(ca.dim), range(cb.dim)):
        if pa[i] <= NULL_EVENT_TOL or pb[j] <= NULL_EVENT_TOL:
            skipped.append((i, j))
            continue
        bob_mod = conditional_modality(mu, ca, i, side=0)
        alice_mod = conditional_modality(mu, cb, j, side=1)
        route_a = pa[i] * born_probability(bob_mod, cb.projectors[j])
        route_b = born_probability(alice_mod, ca.projectors[i]) * pb[j]
        worst = max(worst, abs(route_a - route_b), abs(route_a - joint[i, j]), abs(route_b - joint[i, j]))
    return ConsistencyReport(worst, tuple(skipped))


def table_consistency_residual(t: BipartiteProbabilityTable, pa=None, pb=None) -> float:
    """max |p(a) p(b|a) - p(a|b) p(b)| using conditionals derived from ``t`` and the given marginals.

    With ``pa``/``pb`` taken from an independent source this detects tables
    that do not match the marginals they are claimed to come from.
    """
    ma, mb = marginals(t)
    pa = ma if pa is None else np.asarray(pa)
    pb = mb if pb is None else np.asarray(pb)
    cond = conditionals(t)
    lhs = pa[:, None] * cond.b_given_a
    rhs = cond.a_given_b * pb[None, :]
    diffs = np.concatenate([np.abs(lhs - rhs).ravel(), np.abs(lhs - t.p).ravel(), np.abs(rhs - t.p).ravel()])
    return float(np.nanmax(diffs)) if not np.all(np.isnan(diffs)) else 0.0


@dataclass(frozen=True)
class SettingsFamily:
    """Probability tables ``p[x, y, i, j]`` for Alice setting x and Bob setting y."""

    alice: tuple[str, ...]
    bob: tuple[str, ...]
    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        object.__setattr__(self, "p", p)
        if p.ndim != 4 or p.shape[:2] != (len(self.alice), len(self.bob)):
            raise WrongScenarioShape(f"table array shape {p.shape} does not match settings")
        if np.any(p < -1e-12) or np.max(np.abs(p.sum(axis=(2, 3)) - 1)) > 1e-9:
            raise ValueError("settings family tables must be probability distributions")

    def table(self, x: int, y: int) -> BipartiteProbabilityTable:
        return BipartiteProbabilityTable((self.alice[x], self.bob[y]), self.p[x, y])


def settings_family(mu: JointModality, alice: list[Context], bob: list[Context]) -> SettingsFamily:
    p = np.array([[joint_table(mu, ca, cb).p for cb in bob] for ca in alice])
    return SettingsFamily(tuple(c.label for c in alice), tuple(c.label for c in bob), p)


def check_no_signalling(family: SettingsFamily) -> float:
    alice_marg = family.p.sum(axis=3)  # [x, y, i]
    bob_marg = family.p.sum(axis=2)  # [x, y, j]
    dev_a = np.max(np.abs(alice_marg[:, :, None, :] - alice_marg[:, None, :, :]))
    dev_b = np.max(np.abs(bob_marg[:, None] - bob_marg[None, :]))
    return float(max(dev_a, dev_b))


def malus_reduction_check(mu: JointModality, ca: Context, cb: Context) -> float:
    """Compare p(b_j | mu, a_i) with the one-particle probability from the outcome opposite to a_i.

    For the singlet, Alice finding a_i leaves Bob certain of the opposite
    outcome along Alice's axis; his conditional statistics must then be the
    single-particle transition probabilities from that modality.
    """
    mu = _as_joint(mu)
    if mu.dims != (2, 2) or ca.dim != 2 or cb.dim != 2:
        raise WrongScenarioShape("malus_reduction_check needs spin-1/2 x spin-1/2")
    cond = conditionals(joint_table(mu, ca, cb))
    worst = 0.0
    for i in range(2):
        opposite = ca.projectors[1 - i]
        for j in range(2):
            worst = max(worst, abs(cond.b_given_a[i, j] - born_probability(opposite, cb.projectors[j])))
    return float(worst)


OUTCOME_SIGNS = np.array([1.0, -1.0])


def correlator(t: BipartiteProbabilityTable | np.ndarray) -> float:
    p = t.p if isinstance(t, BipartiteProbabilityTable) else np.asarray(t)
    if p.shape != (2, 2):
        raise WrongScenarioShape("correlators need two outcomes per side")
    return float(OUTCOME_SIGNS @ p @ OUTCOME_SIGNS)


def chsh_value(family: SettingsFamily, minus_term: int = 3) -> float:
    """S with the correlator at flat position ``minus_term`` of (ab, ab', a'b, a'b') subtracted."""
    if family.p.shape != (2, 2, 2, 2):
        raise WrongScenarioShape(f"CHSH needs 2 settings and 2 outcomes per side, got {family.p.shape}")
    if minus_term not in range(4):
        raise ValueError("minus_term must be 0..3")
    e = [correlator(family.p[x, y]) for x in range(2) for y in range(2)]
    signs = [1.0] * 4
    signs[minus_term] = -1.0
    return float(sum(s * v for s, v in zip(signs, e)))


@dataclass(frozen=True)
class LocalityVerdict:
    local: bool
    minus_term: int
    overall_sign: int
    value: float

    @property
    def witness(self) -> tuple[int, int, float] | None:
        return None if self.local else (self.minus_term, self.overall_sign, self.value)


def local_polytope_membership(family: SettingsFamily, tol: float = CHSH_TOL) -> LocalityVerdict:
    """Decide membership of a no-signalling 2x2x2 family in the local polytope.

    The eight CHSH facets (four choices of subtracted term, two overall signs)
    are a complete description together with positivity and no-signalling.
    Returns the most violated facet, or the tightest one when local.
    """
    if family.p.shape != (2, 2, 2, 2):
        raise WrongScenarioShape(f"need 2 settings and 2 outcomes per side, got {family.p.shape}")
    dev = check_no_signalling(family)
    if dev > tol:
        raise SignallingInput(f"family signals (deviation {dev:.3e})")
    best = None
    for k in range(4):
        s = chsh_value(family, k)
        for sign in (1, -1):
            if best is None or sign * s > best[1] * best[2]:
                best = (k, sign, s)
    k, sign, s = best
    return LocalityVerdict(sign * s <= 2.0 + tol, k, sign, s)


def deterministic_strategies() -> np.ndarray:
    """All 16 local deterministic strategies as ``[16, x, y, i, j]`` tables."""
    out = np.zeros((16, 2, 2, 2, 2))
    for lam, (a0, a1, b0, b1) in enumerate(itertools.product(range(2), repeat=4)):
        a, b = (a0, a1), (b0, b1)
        for x, y in itertools.product(range(2), repeat=2):
            out[lam, x, y, a[x], b[y]] = 1.0
    return out


def local_mixture(weights) -> SettingsFamily:
    w = np.asarray(weights, dtype=float)
    if w.shape != (16,) or np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
        raise ValueError("weights must be a probability vector over the 16 strategies")
    p = np.tensordot(w, deterministic_strategies(), axes=1)
    return SettingsFamily(("a", "a'"), ("b", "b'"), p)
