"""Scenario files: parsing, validation and execution.

A scenario is a YAML mapping with a top-level ``kind`` discriminator (one of
``chain``, ``epr``, ``spin``, ``gleason``). Angles in files are degrees and
are converted to radians here, at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from . import __version__
from .core import born_probability, max_exclusive_set, transform_context, transition_table
from .epr import (
    check_consistency,
    check_no_signalling,
    correlator,
    joint_table,
    local_polytope_membership,
    malus_reduction_check,
    product_modality,
    settings_family,
    singlet_modality,
    spin_half_context,
)
from .gleason import additivity_test, born_assignment, fit_density, random_context, squared_assignment
from .report import Check, RunReport, finite
from .sequence import Chain, max_binomial_z, ordering_comparison, run_chain_exact, sample_chain
from .spin import (
    SpinDirectionSpec,
    polarization_context,
    rotation_transformation,
    spin_direction_context,
    two_j,
)

KINDS = ("chain", "epr", "spin", "gleason")
DEFAULT_TOL = 1e-10
SAMPLING_SIGMAS = 5.0
FIT_RESIDUAL_BORN = 1e-8
FIT_RESIDUAL_NON_BORN = 0.05


class SchemaError(ValueError):
    def __init__(self, field: str, reason: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{field}: {reason}{where}")
        self.field = field
        self.reason = reason
        self.line = line


class UnknownKind(SchemaError):
    pass


class ScenarioRunError(RuntimeError):
    pass


@dataclass
class ScenarioFile:
    kind: str
    name: str
    params: dict[str, Any]
    tol: float = DEFAULT_TOL
    seed: int = 0
    samples: int | None = None

    def echo(self) -> dict[str, Any]:
        d = {"kind": self.kind, "name": self.name, "tol": self.tol, "seed": self.seed}
        if self.samples is not None:
            d["samples"] = self.samples
        d.update(self.params)
        return d


# -- parsing -----------------------------------------------------------------


class _Fields:
    """Typed access to a YAML mapping that reports the offending field and line."""

    def __init__(self, data: dict, node: yaml.Node | None, prefix: str = ""):
        self.data = data
        self.node = node
        self.prefix = prefix

    def _line(self, key: str) -> int | None:
        if isinstance(self.node, yaml.MappingNode):
            for k, v in self.node.value:
                if k.value == key:
                    return v.start_mark.line + 1
            return self.node.start_mark.line + 1
        return None

    def error(self, key: str, reason: str) -> SchemaError:
        return SchemaError(self.prefix + key, reason, self._line(key))

    def child(self, key: str) -> _Fields:
        value = self.data.get(key)
        if not isinstance(value, dict):
            raise self.error(key, "expected a mapping")
        sub = None
        if isinstance(self.node, yaml.MappingNode):
            sub = next((v for k, v in self.node.value if k.value == key), None)
        return _Fields(value, sub, f"{self.prefix}{key}.")

    def get(self, key: str, default: Any = ...) -> Any:
        if key not in self.data:
            if default is ...:
                raise self.error(key, "required field missing")
            return default
        return self.data[key]

    def number(self, key: str, default: Any = ...) -> float:
        v = self.get(key, default)
        if v is None:
            return v
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise self.error(key, f"expected a finite number, got {v!r}")
        return float(v)

    def integer(self, key: str, default: Any = ..., minimum: int | None = None) -> int:
        v = self.get(key, default)
        if v is None:
            return v
        if isinstance(v, bool) or not isinstance(v, int):
            raise self.error(key, f"expected an integer, got {v!r}")
        if minimum is not None and v < minimum:
            raise self.error(key, f"must be >= {minimum}, got {v}")
        return v

    def choice(self, key: str, options, default: Any = ...) -> str:
        v = self.get(key, default)
        if v not in options:
            raise self.error(key, f"expected one of {list(options)}, got {v!r}")
        return v

    def numbers(self, key: str, default: Any = ..., length: int | None = None) -> list[float]:
        v = self.get(key, default)
        if v is None:
            return v
        if not isinstance(v, list) or not v:
            raise self.error(key, "expected a non-empty list of numbers")
        if length is not None and len(v) != length:
            raise self.error(key, f"expected {length} entries, got {len(v)}")
        for x in v:
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise self.error(key, f"expected finite numbers, got {x!r}")
        return [float(x) for x in v]

    def boolean(self, key: str, default: Any = ...) -> bool:
        v = self.get(key, default)
        if v is not None and not isinstance(v, bool):
            raise self.error(key, f"expected true/false, got {v!r}")
        return v


def _direction(f: _Fields, key: str, value) -> list[float]:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return [float(value), 0.0]
    if (isinstance(value, list) and len(value) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x) for x in value)):
        return [float(x) for x in value]
    raise f.error(key, f"expected theta_deg or [theta_deg, phi_deg], got {value!r}")


def _parse_chain(f: _Fields) -> dict:
    system = f.choice("system", ("polarization", "spin"), "polarization")
    p: dict[str, Any] = {"system": system}
    if system == "spin":
        j = f.number("j")
        try:
            two_j(j)
        except ValueError as exc:
            raise f.error("j", str(exc)) from None
        p["j"] = j
    init = f.child("initial")
    if system == "polarization":
        p["initial"] = {"angle_deg": init.number("angle_deg"), "outcome": init.integer("outcome", 0, minimum=0)}
        p["steps_deg"] = f.numbers("steps_deg")
        n = 2
    else:
        p["initial"] = {
            "theta_deg": init.number("theta_deg"),
            "phi_deg": init.number("phi_deg", 0.0),
            "outcome": init.integer("outcome", 0, minimum=0),
        }
        steps = f.get("steps_deg")
        if not isinstance(steps, list) or not steps:
            raise f.error("steps_deg", "expected a non-empty list")
        p["steps_deg"] = [_direction(f, "steps_deg", s) for s in steps]
        n = two_j(p["j"]) + 1
    if p["initial"]["outcome"] >= n:
        raise init.error("outcome", f"must be < {n}")
    k = len(p["steps_deg"])
    expects = f.get("expect", [])
    if not isinstance(expects, list):
        raise f.error("expect", "expected a list")
    p["expect"] = []
    for e in expects:
        if not isinstance(e, dict):
            raise f.error("expect", "entries must be mappings with outcome and probability")
        ef = _Fields(e, None, f"{f.prefix}expect.")
        outcome = ef.get("outcome")
        if (not isinstance(outcome, list) or len(outcome) != k
                or not all(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n for x in outcome)):
            raise f.error("expect", f"outcome must list {k} indices in 0..{n - 1}")
        p["expect"].append({"outcome": outcome, "probability": ef.number("probability")})
    order = f.get("compare_order", None)
    if order is not None:
        if not isinstance(order, list) or sorted(order) != list(range(k)):
            raise f.error("compare_order", f"must be a permutation of 0..{k - 1}")
        p["compare_order"] = order
    p["workers"] = f.integer("workers", 1, minimum=1)
    return p


def _parse_epr(f: _Fields) -> dict:
    state = f.choice("state", ("singlet", "product"), "singlet")
    p: dict[str, Any] = {
        "state": state,
        "alice_deg": f.numbers("alice_deg", length=2),
        "bob_deg": f.numbers("bob_deg", length=2),
        "random_pairs": f.integer("random_pairs", 0, minimum=0),
    }
    if state == "product":
        pf = f.child("product")
        p["product"] = {
            "alice_deg": pf.number("alice_deg"),
            "bob_deg": pf.number("bob_deg"),
            "alice_outcome": pf.integer("alice_outcome", 0, minimum=0),
            "bob_outcome": pf.integer("bob_outcome", 0, minimum=0),
        }
        for side in ("alice_outcome", "bob_outcome"):
            if p["product"][side] > 1:
                raise pf.error(side, "spin-1/2 outcomes are 0 or 1")
    expect_local = f.boolean("expect_local", None)
    if expect_local is not None:
        p["expect_local"] = expect_local
    expect_s = f.number("expect_abs_chsh", None)
    if expect_s is not None:
        p["expect_abs_chsh"] = expect_s
    return p


def _parse_spin(f: _Fields) -> dict:
    family = f.choice("family", ("polarization", "spin"))
    p: dict[str, Any] = {"family": family}
    if family == "polarization":
        sweep = f.child("sweep")
        p["sweep"] = {
            "start_deg": sweep.number("start_deg", 0.0),
            "stop_deg": sweep.number("stop_deg", 360.0),
            "count": sweep.integer("count", minimum=1),
        }
    else:
        j = f.number("j")
        try:
            two_j(j)
        except ValueError as exc:
            raise f.error("j", str(exc)) from None
        p["j"] = j
        p["rotations"] = f.integer("rotations", minimum=1)
        p["pooled_contexts"] = f.integer("pooled_contexts", 10, minimum=1)
    return p


GLEASON_ASSIGNMENTS = ("born-pure", "born-mixed", "squared-maximally-mixed")


def _parse_gleason(f: _Fields) -> dict:
    dims = f.get("dims")
    if not isinstance(dims, list) or not dims or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 2 for d in dims):
        raise f.error("dims", "expected a non-empty list of integers >= 2")
    assignments = f.get("assignments", list(GLEASON_ASSIGNMENTS))
    if not isinstance(assignments, list) or not all(a in GLEASON_ASSIGNMENTS for a in assignments):
        raise f.error("assignments", f"entries must be among {list(GLEASON_ASSIGNMENTS)}")
    p = {
        "dims": dims,
        "bases": f.integer("bases", minimum=1),
        "assignments": assignments,
        "fit_probes": f.integer("fit_probes", 0, minimum=0),
    }
    if p["fit_probes"] and p["fit_probes"] < max(dims) ** 2:
        raise f.error("fit_probes", f"must be 0 or at least max(dims)**2 = {max(dims) ** 2}")
    return p


_PARSERS = {"chain": _parse_chain, "epr": _parse_epr, "spin": _parse_spin, "gleason": _parse_gleason}


def parse_scenario(text: str) -> ScenarioFile:
    try:
        node = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise SchemaError("<document>", f"invalid YAML: {getattr(exc, 'problem', exc)}",
                          mark.line + 1 if mark else None) from None
    if not isinstance(data, dict):
        raise SchemaError("<document>", "top level must be a mapping", 1)
    f = _Fields(data, node)
    kind = f.get("kind")
    if kind not in KINDS:
        raise UnknownKind("kind", f"unknown kind {kind!r}; expected one of {list(KINDS)}", f._line("kind"))
    name = f.get("name", kind)
    if not isinstance(name, str):
        raise f.error("name", "expected text")
    tol = f.number("tol", DEFAULT_TOL)
    if tol <= 0:
        raise f.error("tol", "must be positive")
    seed = f.integer("seed", 0)
    samples = f.integer("samples", None, minimum=1)
    params = _PARSERS[kind](f)
    known = {"kind", "name", "tol", "seed", "samples"} | set(params) | {"initial", "product", "sweep"}
    for key in data:
        if key not in known and key != "expect":
            raise f.error(key, "unknown field")
    return ScenarioFile(kind, name, params, tol, seed, samples)


def fixtures_dir() -> Path:
    return Path(str(resources.files("csm") / "fixtures"))


def list_fixtures() -> list[str]:
    return sorted(p.stem for p in fixtures_dir().glob("*.yaml"))


def load_scenario(path_or_name: str | Path) -> ScenarioFile:
    """Read a scenario from a file path or a bundled fixture name."""
    path = Path(path_or_name)
    if not path.exists():
        candidate = fixtures_dir() / f"{path_or_name}.yaml"
        if not candidate.exists():
            raise FileNotFoundError(f"no scenario file or bundled fixture named {str(path_or_name)!r}")
        path = candidate
    return parse_scenario(path.read_text())


# -- execution -------------------------------------------------------------------


def _outcome_key(prefix: str, outcome) -> str:
    return f"{prefix}({','.join(str(i) for i in outcome)})"


def _chain_contexts(p: dict):
    if p["system"] == "polarization":
        initial_ctx = polarization_context(math.radians(p["initial"]["angle_deg"]))
        steps = [polarization_context(math.radians(a)) for a in p["steps_deg"]]
    else:
        j = p["j"]
        initial_ctx = spin_direction_context(SpinDirectionSpec(
            j, math.radians(p["initial"]["theta_deg"]), math.radians(p["initial"]["phi_deg"])))
        steps = [spin_direction_context(SpinDirectionSpec(j, math.radians(t), math.radians(ph)))
                 for t, ph in p["steps_deg"]]
    return initial_ctx.modality(p["initial"]["outcome"]), steps


def run_chain(sc: ScenarioFile, workers: int | None = None) -> RunReport:
    p = sc.params
    initial, steps = _chain_contexts(p)
    chain = Chain(initial, tuple(steps))
    dist = run_chain_exact(chain)
    exact = {_outcome_key("P", o): finite(v) for o, v in dist.entries().items()}
    report = RunReport(sc.echo(), exact, [], metadata={"seed": sc.seed, "version": __version__})
    report.add(Check.at_most("normalization", abs(dist.total() - 1.0), sc.tol))
    for e in p["expect"]:
        got = dist[e["outcome"]]
        report.add(Check.at_most(f"{_outcome_key('P', e['outcome'])} == {e['probability']:g}",
                                 abs(got - e["probability"]), sc.tol))
    if "compare_order" in p:
        cmp = ordering_comparison(initial, steps, p["compare_order"])
        report.exact["permuted_order"] = ",".join(str(i) for i in p["compare_order"])
        for o, v in cmp.permuted.entries().items():
            report.exact[_outcome_key("P_permuted", o)] = finite(v)
        report.exact["tv_distance"] = finite(cmp.tv_distance)
    if sc.samples:
        counts = sample_chain(chain, sc.samples, sc.seed, workers=workers or p["workers"])
        report.sampled = {_outcome_key("N", o): counts.counts.get(o, 0) for o in dist.entries()}
        report.add(Check.at_most("sampling max binomial z", finite(max_binomial_z(dist, counts)), SAMPLING_SIGMAS))
    return report


def _epr_state(p: dict):
    if p["state"] == "singlet":
        return singlet_modality()
    pr = p["product"]
    ma = spin_half_context(math.radians(pr["alice_deg"])).modality(pr["alice_outcome"])
    mb = spin_half_context(math.radians(pr["bob_deg"])).modality(pr["bob_outcome"])
    return product_modality(ma, mb)


def _epr_residuals(mu, alice, bob, singlet: bool) -> dict[str, float]:
    family = settings_family(mu, alice, bob)
    cons = max(check_consistency(mu, ca, cb).residual for ca in alice for cb in bob)
    out = {"consistency": cons, "no_signalling": check_no_signalling(family)}
    if singlet:
        out["malus_reduction"] = max(malus_reduction_check(mu, ca, cb) for ca in alice for cb in bob)
        out["correlation_vs_-cos"] = max(
            abs(correlator(joint_table(mu, ca, cb)) + math.cos(ca.params[0] - cb.params[0]))
            for ca in alice for cb in bob
        )
    return out


def run_epr(sc: ScenarioFile) -> RunReport:
    p = sc.params
    mu = _epr_state(p)
    singlet = p["state"] == "singlet"
    alice = [spin_half_context(math.radians(a)) for a in p["alice_deg"]]
    bob = [spin_half_context(math.radians(b)) for b in p["bob_deg"]]
    family = settings_family(mu, alice, bob)
    verdict = local_polytope_membership(family)
    names = ("a", "a'"), ("b", "b'")
    exact: dict[str, Any] = {}
    for x in range(2):
        for y in range(2):
            t = family.p[x, y]
            for i in range(2):
                for j in range(2):
                    exact[f"p({i},{j}|{names[0][x]},{names[1][y]})"] = finite(t[i, j])
    for x in range(2):
        for y in range(2):
            exact[f"E({names[0][x]},{names[1][y]})"] = finite(correlator(family.p[x, y]))
    exact["S"] = finite(verdict.value)
    exact["abs_S"] = finite(abs(verdict.value))
    exact["subtracted_term"] = ["E(a,b)", "E(a,b')", "E(a',b)", "E(a',b')"][verdict.minus_term]
    exact["verdict"] = "local" if verdict.local else "nonlocal"

    report = RunReport(sc.echo(), exact, [], metadata={"seed": sc.seed, "version": __version__})
    residuals = _epr_residuals(mu, alice, bob, singlet)
    if p["random_pairs"]:
        rng = np.random.default_rng(sc.seed)
        for _ in range(p["random_pairs"]):
            a2 = [spin_half_context(t) for t in rng.uniform(0, 2 * math.pi, 2)]
            b2 = [spin_half_context(t) for t in rng.uniform(0, 2 * math.pi, 2)]
            for k, v in _epr_residuals(mu, a2, b2, singlet).items():
                residuals[k] = max(residuals[k], v)
        exact["random_pairs_tested"] = p["random_pairs"]
    for k, v in residuals.items():
        report.add(Check.at_most(k, finite(v), sc.tol))
    if "expect_abs_chsh" in p:
        report.add(Check.at_most(f"|S| == {p['expect_abs_chsh']:g}", abs(abs(verdict.value) - p["expect_abs_chsh"]), sc.tol))
    if "expect_local" in p:
        ok = verdict.local == p["expect_local"]
        label = "local: max |S| <= 2" if p["expect_local"] else "nonlocal: max |S| > 2"
        report.add(Check(label, ok, float(abs(verdict.value)), 2.0, "<=" if p["expect_local"] else ">"))
    return report


def _rotation_matrix(axis: np.ndarray, angle: float) -> np.ndarray:
    k = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
    return np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * (k @ k)


def _context_deviation(ctx) -> float:
    projs = np.stack(ctx.projectors)
    n = ctx.dim
    gram = np.einsum("aij,bij->ab", projs.conj(), projs).real
    idem = max(float(np.max(np.abs(pi @ pi - pi))) for pi in ctx.projectors)
    return max(float(np.max(np.abs(gram - np.eye(n)))), float(np.max(np.abs(projs.sum(0) - np.eye(n)))), idem)


def run_spin(sc: ScenarioFile) -> RunReport:
    p = sc.params
    report = RunReport(sc.echo(), {}, [], metadata={"seed": sc.seed, "version": __version__})
    if p["family"] == "polarization":
        sw = p["sweep"]
        angles = np.linspace(sw["start_deg"], sw["stop_deg"], sw["count"], endpoint=False)
        h0 = polarization_context(0.0)
        worst_born = worst_table = worst_stoch = 0.0
        for a in angles:
            th = math.radians(a)
            ct = polarization_context(th)
            worst_born = max(worst_born, abs(born_probability(h0.modality(0), ct.modality(0)) - math.cos(th) ** 2))
            t = transition_table(h0, ct)
            c2, s2 = math.cos(th) ** 2, math.sin(th) ** 2
            worst_table = max(worst_table, float(np.max(np.abs(t.p - [[c2, s2], [s2, c2]]))))
            worst_stoch = max(worst_stoch, t.stochasticity_error())
        report.exact.update({"angles": int(sw["count"]), "P_transmit(45deg)": finite(
            born_probability(h0.modality(0), polarization_context(math.pi / 4).modality(0)))})
        report.add(Check.at_most("malus |P - cos^2|", worst_born, sc.tol))
        report.add(Check.at_most("malus transition table", worst_table, sc.tol))
        report.add(Check.at_most("double stochasticity", worst_stoch, sc.tol))
        return report

    j = p["j"]
    n = two_j(j) + 1
    base = spin_direction_context(SpinDirectionSpec(j, 0.0, 0.0))
    rng = np.random.default_rng(sc.seed)
    wrong_count = 0
    worst_inv = worst_frame = 0.0
    pooled = []
    for k in range(p["rotations"]):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        angle = float(rng.uniform(0, 2 * math.pi))
        rotated = transform_context(base, rotation_transformation(j, axis, angle))
        wrong_count += rotated.dim != n
        worst_inv = max(worst_inv, _context_deviation(rotated))
        nvec = _rotation_matrix(axis, angle) @ np.array([0.0, 0.0, 1.0])
        theta = math.acos(max(-1.0, min(1.0, nvec[2])))
        phi = math.atan2(nvec[1], nvec[0])
        direct = spin_direction_context(SpinDirectionSpec(j, theta, phi))
        worst_frame = max(worst_frame, max(float(np.max(np.abs(a - b)))
                                           for a, b in zip(rotated.projectors, direct.projectors)))
        if k < p["pooled_contexts"]:
            pooled.extend(rotated.modalities())
    mes = max_exclusive_set(pooled)
    report.exact.update({"j": j, "modalities_per_context": n, "rotations": p["rotations"],
                         "pooled_modalities": len(pooled), "max_exclusive_set": mes})
    report.add(Check.at_most("contexts with wrong modality count", float(wrong_count), 0.0))
    report.add(Check.at_most("context invariants", worst_inv, sc.tol))
    report.add(Check.at_most("rotated frame == direct frame", worst_frame, sc.tol))
    report.add(Check.at_most("max exclusive set <= N", float(mes), float(n)))
    return report


def run_gleason(sc: ScenarioFile) -> RunReport:
    p = sc.params
    report = RunReport(sc.echo(), {}, [], metadata={"seed": sc.seed, "version": __version__})
    root = np.random.SeedSequence(sc.seed)
    for dim, ss in zip(p["dims"], root.spawn(len(p["dims"]))):
        fixture_seed, test_seed, fit_seed = ss.spawn(3)
        frame = random_context(dim, fixture_seed)
        weights = np.random.default_rng(fixture_seed).dirichlet(np.ones(dim))
        pure = frame.projectors[0]
        mixed = sum(w * q for w, q in zip(weights, frame.projectors))
        # (assignment, generating rho or None for non-Born assignments)
        fixtures = {
            "born-pure": (born_assignment(pure), pure),
            "born-mixed": (born_assignment(mixed), mixed),
            "squared-maximally-mixed": (squared_assignment(np.eye(dim) / dim), None),
        }
        scope = "frame function" if dim >= 3 else "additivity only"
        report.exact[f"d={dim} scope"] = scope
        for name in p["assignments"]:
            f, rho = fixtures[name]
            rep = additivity_test(f, p["bases"], test_seed)
            report.exact[f"d={dim} {name} max violation"] = finite(rep.max_additivity_violation)
            if name == "squared-maximally-mixed":
                expected = 1.0 - 1.0 / dim
                report.add(Check.at_most(f"d={dim} {name} violation == 1-1/d", abs(rep.max_additivity_violation - expected), sc.tol))
            else:
                report.add(Check.at_most(f"d={dim} {name} additivity", rep.max_additivity_violation, sc.tol))
            if p["fit_probes"]:
                fit = fit_density(f, p["fit_probes"], fit_seed)
                report.exact[f"d={dim} {name} fit residual"] = finite(fit.residual)
                if rho is not None:
                    err = float(np.max(np.abs(fit.rho - rho)))
                    report.exact[f"d={dim} {name} fit rho error"] = finite(err)
                    report.add(Check.at_most(f"d={dim} {name} fit recovers rho", err, FIT_RESIDUAL_BORN))
                    report.add(Check.at_most(f"d={dim} {name} fit residual", fit.residual, FIT_RESIDUAL_BORN))
                else:
                    report.add(Check.at_least(f"d={dim} {name} fit residual", fit.residual, FIT_RESIDUAL_NON_BORN))
    return report


RUNNERS = {"chain": run_chain, "epr": run_epr, "spin": run_spin, "gleason": run_gleason}


def run(sc: ScenarioFile, workers: int | None = None) -> RunReport:
    """Execute a scenario; ``workers`` only affects chain sampling speed, never results."""
    try:
        if sc.kind == "chain":
            return run_chain(sc, workers=workers)
        return RUNNERS[sc.kind](sc)
    except (ValueError, RuntimeError) as exc:
        raise ScenarioRunError(f"scenario {sc.name!r}: {exc}") from exc
