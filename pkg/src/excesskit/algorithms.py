"""Excess numbers by homotopy continuation.

``run_hup`` deforms a general system built on the monomialized ideal into a
general system for the ideal itself; the endpoints contain every isolated
excess point, so after a membership test the count is exact.  ``run_hit``
uses a cheaper homotopy with a random ``gamma``.  It carries no
completeness guarantee, so repeated runs only grow a lower bound.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .polynomial import IdealSpec, PolynomialSystem, SparsePolynomial, monomialize, random_form
from .polytope import excess_by_mixed_volume
from .tracker import (
    AffinePatch,
    HomotopySystem,
    Solution,
    SolutionSet,
    Status,
    TrackerConfig,
    dedupe,
    membership_test,
    newton_refine,
    projective_distance,
    status_counts,
    total_degree_solve,
    track_all,
)


def _streams(seed: int):
    """Independent generators for forms, patch, start solve, and gamma draws."""
    return {name: np.random.default_rng([int(seed), k])
            for k, name in enumerate(("forms", "patch", "start", "gamma"))}


def _check_degrees(ideal: IdealSpec, d: Sequence[int]) -> tuple[int, ...]:
    d = tuple(int(v) for v in d)
    if len(d) != ideal.n:
        raise ValueError(f"need {ideal.n} degrees for {len(ideal.vars)} variables, got {len(d)}")
    if min(d) < max(ideal.degrees):
        raise ValueError(f"min degree {min(d)} is below the largest generator degree {max(ideal.degrees)}")
    return d


def _combine(forms_times_gens) -> SparsePolynomial:
    it = iter(forms_times_gens)
    total = next(it)
    for f in it:
        total = total + f
    return total


def bsystem(ideal: IdealSpec, d: Sequence[int], seed=None, real: bool = False) -> PolynomialSystem:
    """A general B-system: ``f_i = sum_j a_ij B_j`` with random forms ``a_ij``."""
    d = _check_degrees(ideal, d)
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    polys = []
    for di in d:
        polys.append(_combine(random_form(di - g.degree, ideal.vars, rng, real) * g
                              for g in ideal.generators))
    return PolynomialSystem(tuple(polys), ideal.vars)


def _isolated_off(sols: SolutionSet, ideal: IdealSpec, cfg: TrackerConfig) -> SolutionSet:
    out = []
    for s in sols:
        s.on_variety = membership_test(s.point, ideal, cfg.membership_tol)
        if not s.on_variety:
            out.append(s)
    return SolutionSet(out)


def solve_bsystem(system: PolynomialSystem, ideal: IdealSpec, cfg: TrackerConfig = TrackerConfig(),
                  seed=None, workers: int = 1) -> SolutionSet:
    """Isolated solutions of ``system`` that lie off ``V(ideal)``.

    Solves by the total-degree homotopy, then drops endpoints on the variety.
    """
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    patch = AffinePatch.random(len(system.vars), rng)
    sols, _ = total_degree_solve(system, patch, cfg, rng, workers)
    return _isolated_off(sols, ideal, cfg)


def solve_monomial_bsystem(ideal: IdealSpec, d: Sequence[int], seed: int = 0,
                           cfg: TrackerConfig = TrackerConfig(), workers: int = 1,
                           real: bool = False) -> SolutionSet:
    """Excess points of a general B-system for a monomial ideal.

    The count is checked against the mixed volume; a mismatch re-seeds the
    start solve, then raises :class:`NonGenericRun`.
    """
    if not ideal.is_monomial:
        raise ValueError("solve_monomial_bsystem needs monomial generators")
    st = _streams(seed)
    system = bsystem(ideal, d, st["forms"], real)
    expected = excess_by_mixed_volume(ideal, d)
    sols = _solve_start(system, ideal, expected, cfg, st["start"], workers)
    if len(sols) != expected:
        raise NonGenericRun(f"found {len(sols)} excess points, mixed volume predicts {expected}")
    return sols


class NonGenericRun(RuntimeError):
    pass


def _solve_start(system, ideal, expected, cfg, rng, workers) -> SolutionSet:
    sols = SolutionSet()
    for _ in range(cfg.max_reseeds + 1):
        sols = solve_bsystem(system, ideal, cfg, rng, workers)
        if expected is None or len(sols) == expected:
            break
    return sols


# --------------------------------------------------------------------------
# reports

@dataclass
class ExcessRunReport:
    method: str
    start_count: int
    tracked_count: int
    converged_count: int
    on_variety_count: int
    excess_count: int
    bound_kind: str
    solutions: SolutionSet
    seed: int
    status: dict[str, int] = field(default_factory=dict)
    expected_start_count: int | None = None
    endpoint_count: int = 0
    inconclusive: bool = False
    gamma_history: list[complex] = field(default_factory=list)
    lower_bound_history: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    # every converged endpoint, on or off the variety (not serialized)
    endpoints: list[Solution] = field(default_factory=list, repr=False)
    # per-path (label, [(t, step, residual), ...]); filled only when cfg.trace is set
    traces: list[tuple[str, list]] = field(default_factory=list, repr=False)

    def check_accounting(self):
        assert sum(self.status.values()) == self.tracked_count
        assert self.converged_count == self.status.get(Status.CONVERGED.value, 0)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "start_count": self.start_count,
            "expected_start_count": self.expected_start_count,
            "tracked_count": self.tracked_count,
            "converged_count": self.converged_count,
            "endpoint_count": self.endpoint_count,
            "on_variety_count": self.on_variety_count,
            "excess_count": self.excess_count,
            "bound_kind": self.bound_kind,
            "inconclusive": self.inconclusive,
            "path_status": dict(self.status),
            "gamma_history": [[g.real, g.imag] for g in self.gamma_history],
            "lower_bound_history": list(self.lower_bound_history),
            "solutions": [s.to_dict() for s in self.solutions],
            "seed": self.seed,
            "notes": list(self.notes),
        }


# --------------------------------------------------------------------------
# upper-bound homotopy

def build_hup(ideal: IdealSpec, d: Sequence[int], seed=0, real: bool = False,
              gamma: complex = 1.0) -> HomotopySystem:
    """Parameter homotopy from a general system on the monomialized ideal to one on ``ideal``.

    At ``t = 1`` every scaled monomial term ``A_jk`` of ``B_j`` gets its own
    random form; at ``t = 0`` the terms of one generator share a single
    form, so the generators reassemble.  The start system is multiplied by
    ``gamma``, which leaves its zeros alone but keeps a real-coefficient
    path off the real discriminant.
    """
    d = _check_degrees(ideal, d)
    rng = seed if isinstance(seed, np.random.Generator) else _streams(seed)["forms"]
    vars = ideal.vars
    monomial_ideal = monomialize(ideal)
    start = [_combine(random_form(di - A.degree, vars, rng, real) * A for A in monomial_ideal.generators)
             * gamma for di in d]
    target = [_combine(random_form(di - g.degree, vars, rng, real) * g for g in ideal.generators)
              for di in d]
    meta = {"ideal": ideal, "monomial_ideal": monomial_ideal, "gamma": complex(gamma)}
    return HomotopySystem("hup", PolynomialSystem(tuple(start), vars), PolynomialSystem(tuple(target), vars),
                          d, meta)


def _classify_endpoints(outcomes, ideal: IdealSpec, cfg: TrackerConfig, tag: str):
    converged = [Solution(o.endpoint, o.residual, f"{tag} {i}", condition=o.condition)
                 for i, o in enumerate(outcomes) if o.status == Status.CONVERGED]
    on, off = [], []
    for s in converged:
        s.on_variety = membership_test(s.point, ideal, cfg.membership_tol)
        (on if s.on_variety else off).append(s)
    return converged, on, off


def run_hup(ideal: IdealSpec, d: Sequence[int], cfg: TrackerConfig = TrackerConfig(), seed: int = 0,
            workers: int = 1, real: bool = False) -> ExcessRunReport:
    """Excess number of ``ideal`` by the upper-bound homotopy and a membership test."""
    d = _check_degrees(ideal, d)
    st = _streams(seed)
    H = build_hup(ideal, d, st["forms"], real, gamma=draw_gamma(st["gamma"], []))
    monomial_ideal = H.metadata["monomial_ideal"]
    expected = excess_by_mixed_volume(monomial_ideal, d)
    starts = _solve_start(H.start, monomial_ideal, expected, cfg, st["start"], workers)
    notes = []
    if len(starts) != expected:
        notes.append(f"start system gave {len(starts)} points, mixed volume predicts {expected}")
    patch = AffinePatch.random(len(ideal.vars), st["patch"])
    outcomes = track_all(H, [s.point for s in starts], patch, cfg, workers)
    converged, on, off = _classify_endpoints(outcomes, ideal, cfg, "path")
    excess = dedupe(off, cfg.dedupe_tol)
    if len(excess) != len(off):
        notes.append(f"{len(off) - len(excess)} excess endpoints were reached by more than one path")
    failures = len(outcomes) - len(converged)
    inconclusive = failures > cfg.max_failure_fraction * max(len(outcomes), 1) or len(starts) != expected
    if failures:
        notes.append(f"{failures} paths failed")
    report = ExcessRunReport(
        method="hup",
        start_count=len(starts),
        tracked_count=len(outcomes),
        converged_count=len(converged),
        on_variety_count=len(on),
        excess_count=len(excess),
        bound_kind="exact" if not failures and not inconclusive else "lower",
        solutions=excess,
        seed=seed,
        status=status_counts(outcomes),
        expected_start_count=expected,
        endpoint_count=len(dedupe(converged, cfg.dedupe_tol)),
        inconclusive=inconclusive,
        notes=notes,
        endpoints=converged,
    )
    if cfg.trace:
        report.traces = [(f"path {i}", o.trace) for i, o in enumerate(outcomes)]
    report.check_accounting()
    return report


# --------------------------------------------------------------------------
# iterated gamma homotopy

def _as_generators(A, ideal: IdealSpec) -> tuple[SparsePolynomial, ...]:
    if isinstance(A, IdealSpec):
        return A.generators
    from .polynomial import parse_polynomial

    return tuple(parse_polynomial(a, ideal.vars) if isinstance(a, str) else a for a in A)


def _hit_forms(ideal: IdealSpec, A: Sequence[SparsePolynomial], d, rng, real):
    if len(A) != len(ideal.generators):
        raise ValueError(f"need one A_j per generator: {len(A)} given, {len(ideal.generators)} generators")
    for a, b in zip(A, ideal.generators):
        if not a.is_homogeneous or a.degree != b.degree:
            raise ValueError(f"deg A_j = {a.degree} does not match deg B_j = {b.degree}")
    return [[random_form(di - b.degree, ideal.vars, rng, real) for b in ideal.generators] for di in d]


def build_hit(ideal: IdealSpec, A, d: Sequence[int], gamma: complex, seed=0, real: bool = False,
              forms=None) -> HomotopySystem:
    """``[a_ij] (t A + gamma (1 - t) B)`` with coefficient forms fixed by ``seed``."""
    d = _check_degrees(ideal, d)
    A = _as_generators(A, ideal)
    if forms is None:
        rng = seed if isinstance(seed, np.random.Generator) else _streams(seed)["forms"]
        forms = _hit_forms(ideal, A, d, rng, real)
    vars = ideal.vars
    start = [_combine(a * Aj for a, Aj in zip(row, A)) for row in forms]
    target = [_combine(a * Bj for a, Bj in zip(row, ideal.generators)) * gamma for row in forms]
    meta = {"ideal": ideal, "A": A, "gamma": complex(gamma), "forms": forms}
    return HomotopySystem("hit", PolynomialSystem(tuple(start), vars), PolynomialSystem(tuple(target), vars),
                          d, meta)


def draw_gamma(rng: np.random.Generator, previous: Sequence[complex], separation: float = 0.05) -> complex:
    """Random unit complex number at least ``separation`` radians from earlier draws."""
    while True:
        theta = 2 * math.pi * rng.uniform()
        if all(abs(cmath.phase(cmath.exp(1j * theta) / g)) >= separation for g in previous):
            return cmath.exp(1j * theta)


def run_hit_iterations(ideal: IdealSpec, A, d: Sequence[int], cfg: TrackerConfig = TrackerConfig(),
                       seed: int = 0, max_iters: int = 8, W: SolutionSet | Sequence[Solution] | None = None,
                       workers: int = 1, real: bool = False) -> ExcessRunReport:
    """Grow a set of verified excess points by tracking with fresh values of gamma."""
    d = _check_degrees(ideal, d)
    A = _as_generators(A, ideal)
    st = _streams(seed)
    forms = _hit_forms(ideal, A, d, st["forms"], real)
    H1 = build_hit(ideal, A, d, 1.0, forms=forms)
    start_ideal = IdealSpec(A, ideal.vars)
    expected = excess_by_mixed_volume(start_ideal, d) if start_ideal.is_monomial else None
    starts = _solve_start(H1.start, start_ideal, expected, cfg, st["start"], workers)
    patch = AffinePatch.random(len(ideal.vars), st["patch"])
    target = H1.target  # gamma = 1: the plain B-system whose excess points we collect
    found = list(W or [])
    gammas: list[complex] = []
    history = []
    status = {s.value: 0 for s in Status}
    traces = []
    endpoints: list[Solution] = []
    tracked = converged_total = on_total = 0
    notes = []
    if expected is not None and len(starts) != expected:
        notes.append(f"start system gave {len(starts)} points, mixed volume predicts {expected}")
    for it in range(max_iters):
        gamma = draw_gamma(st["gamma"], gammas)
        gammas.append(gamma)
        H = build_hit(ideal, A, d, gamma, forms=forms)
        outcomes = track_all(H, [s.point for s in starts], patch, cfg, workers)
        for k, v in status_counts(outcomes).items():
            status[k] += v
        tracked += len(outcomes)
        if cfg.trace:
            traces.extend((f"iter {it} path {i}", o.trace) for i, o in enumerate(outcomes))
        converged, on, off = _classify_endpoints(outcomes, ideal, cfg, f"iter {it} path")
        converged_total += len(converged)
        endpoints.extend(converged)
        on_total += len(on)
        for s in off:
            # endpoints of H(x, 0) solve gamma * B-system; confirm on the B-system itself
            check = newton_refine(target, patch, patch.project(s.point), tol=cfg.newton_tol)
            if check.singular or not check.converged:
                continue
            s.point, s.residual = check.point, check.residual
            if all(projective_distance(w.point, s.point) >= cfg.dedupe_tol for w in found):
                found.append(s)
        history.append(len(found))
    report = ExcessRunReport(
        method="hit",
        start_count=len(starts),
        tracked_count=tracked,
        converged_count=converged_total,
        on_variety_count=on_total,
        excess_count=len(found),
        bound_kind="lower",
        solutions=SolutionSet(found),
        seed=seed,
        status=status,
        expected_start_count=expected,
        endpoint_count=0,
        gamma_history=gammas,
        lower_bound_history=history,
        notes=notes,
        endpoints=endpoints,
        traces=traces,
    )
    report.check_accounting()
    return report
