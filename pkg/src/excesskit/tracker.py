"""Projective path tracking in a random affine chart.

Every homotopy used by the package is a straight line between two polynomial
systems, ``H(x, t) = t * G(x) + (1 - t) * F(x)``: ``G`` is the start system
(``t = 1``) and ``F`` the target (``t = 0``).  Paths are tracked with an Euler
predictor on the Davidenko equation and a Newton corrector, then polished
at ``t = 0`` with Gauss-Newton so endpoints on positive-dimensional
components still converge.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

import numpy as np

from .polynomial import IdealSpec, PolynomialSystem, SparsePolynomial, as_generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrackerConfig:
    initial_step: float = 0.02
    min_step: float = 1e-7
    max_step: float = 0.1
    newton_tol: float = 1e-9
    max_newton_iters: int = 3
    max_steps: int = 20_000
    t_end_refine: bool = True
    # relative size of a Newton update that counts as converged while tracking
    track_tol: float = 1e-9
    endgame_start: float = 1e-4
    endgame_stop: float = 1e-12
    polish_iters: int = 60
    divergence: float = 1e8
    membership_tol: float = 1e-6
    dedupe_tol: float = 1e-6
    max_failure_fraction: float = 0.1
    max_reseeds: int = 3
    trace: bool = False

    def __post_init__(self):
        if not 0 < self.min_step <= self.initial_step <= self.max_step < 1:
            raise ValueError("need 0 < min_step <= initial_step <= max_step < 1")
        if self.newton_tol <= 0:
            raise ValueError("newton_tol must be positive")


@dataclass(frozen=True)
class AffinePatch:
    """The chart ``c . x = 1``."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if not np.any(c):
            raise ValueError("patch coefficients must be nonzero")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def random(cls, nvars: int, seed=None) -> "AffinePatch":
        rng = as_generator(seed)
        return cls(rng.standard_normal(nvars) + 1j * rng.standard_normal(nvars))

    def project(self, x) -> np.ndarray:
        """Rescale a projective point into the chart."""
        x = np.asarray(x, dtype=complex)
        s = self.coefficients @ x
        if s == 0:
            raise ZeroDivisionError("point lies on the patch hyperplane")
        return x / s


class MonomialBasis:
    """Vectorized evaluation of a fixed list of monomials and their gradients."""

    def __init__(self, exponents: Sequence[Sequence[int]], nvars: int):
        E = np.array(exponents, dtype=np.int64).reshape(-1, nvars)
        self.E = E
        self.nvars = nvars
        self.maxdeg = int(E.max()) if E.size else 0
        self._cols = np.arange(nvars)[None, :]
        self._Em1 = np.maximum(E - 1, 0)

    def _powers(self, x):
        P = np.ones((self.nvars, self.maxdeg + 1), dtype=complex)
        for k in range(1, self.maxdeg + 1):
            P[:, k] = P[:, k - 1] * x
        return P

    def values(self, x) -> np.ndarray:
        P = self._powers(x)
        return np.prod(P[self._cols, self.E], axis=1)

    def values_and_jacobian(self, x) -> tuple[np.ndarray, np.ndarray]:
        P = self._powers(x)
        G = P[self._cols, self.E]
        mon = np.prod(G, axis=1)
        Gd = self.E * P[self._cols, self._Em1]
        dmon = np.empty((len(self.E), self.nvars), dtype=complex)
        for j in range(self.nvars):
            saved = G[:, j].copy()
            G[:, j] = Gd[:, j]
            dmon[:, j] = np.prod(G, axis=1)
            G[:, j] = saved
        return mon, dmon


def _coefficient_matrix(polys: Sequence[SparsePolynomial], index: dict) -> np.ndarray:
    C = np.zeros((len(polys), len(index)), dtype=complex)
    for i, f in enumerate(polys):
        for e, c in f.items():
            C[i, index[e]] = c
    return C


class CompiledSystem:
    """A square polynomial system compiled for fast numeric evaluation."""

    def __init__(self, sys: PolynomialSystem):
        self.system = sys
        exps = sorted({e for f in sys.polys for e in f.terms})
        index = {e: k for k, e in enumerate(exps)}
        self.basis = MonomialBasis(exps, len(sys.vars))
        self.C = _coefficient_matrix(sys.polys, index)

    def __call__(self, x) -> np.ndarray:
        return self.C @ self.basis.values(x)

    def with_jacobian(self, x):
        mon, dmon = self.basis.values_and_jacobian(x)
        return self.C @ mon, self.C @ dmon


class HomotopySystem:
    """``H(x, t) = t * start + (1 - t) * target`` over a shared monomial basis."""

    def __init__(self, kind: str, start: PolynomialSystem, target: PolynomialSystem,
                 degrees: Sequence[int], metadata: dict[str, Any] | None = None):
        if len(start) != len(target) or start.vars != target.vars:
            raise ValueError("start and target systems must have the same shape")
        self.kind = kind
        self.start = start
        self.target = target
        self.degrees = tuple(int(v) for v in degrees)
        self.metadata = dict(metadata or {})
        self.nvars = len(start.vars)
        exps = sorted({e for f in (*start.polys, *target.polys) for e in f.terms})
        index = {e: k for k, e in enumerate(exps)}
        self.basis = MonomialBasis(exps, self.nvars)
        self.Cs = _coefficient_matrix(start.polys, index)
        self.Ct = _coefficient_matrix(target.polys, index)
        self.Cdiff = self.Cs - self.Ct

    def __call__(self, x, t: float) -> np.ndarray:
        return (t * self.Cs + (1 - t) * self.Ct) @ self.basis.values(x)

    def evaluate(self, x, t: float):
        """Return ``H``, ``dH/dx`` and ``dH/dt`` at ``(x, t)``."""
        mon, dmon = self.basis.values_and_jacobian(x)
        C = t * self.Cs + (1 - t) * self.Ct
        return C @ mon, C @ dmon, self.Cdiff @ mon

    def target_residual(self, x) -> float:
        return float(np.max(np.abs(self.Ct @ self.basis.values(x))))


# --------------------------------------------------------------------------
# points

def normalize_point(x) -> np.ndarray:
    """Scale a projective point so its largest-modulus coordinate equals 1."""
    x = np.asarray(x, dtype=complex)
    k = int(np.argmax(np.abs(x)))
    if x[k] == 0:
        raise ValueError("the zero vector is not a projective point")
    return x / x[k]


def projective_distance(a, b) -> float:
    """Max-norm distance after normalizing both points at ``a``'s pivot."""
    a = normalize_point(a)
    k = int(np.argmax(np.abs(a)))
    b = np.asarray(b, dtype=complex)
    if b[k] == 0:
        return math.inf
    return float(np.max(np.abs(a - b / b[k])))


class Status(str, Enum):
    CONVERGED = "Converged"
    DIVERGED = "Diverged"
    SINGULAR = "Singular"
    STEP_LIMIT = "StepLimit"


@dataclass
class TrackOutcome:
    status: Status
    endpoint: np.ndarray | None
    steps: int = 0
    rejections: int = 0
    residual: float = math.inf
    condition: float = math.inf
    trace: list[tuple[float, float, float]] = field(default_factory=list)


@dataclass
class Solution:
    point: np.ndarray
    residual: float
    tag: str = ""
    on_variety: bool | None = None
    condition: float = math.inf

    def to_dict(self) -> dict:
        return {
            "point": [[float(z.real), float(z.imag)] for z in normalize_point(self.point)],
            "residual": float(self.residual),
            "on_variety": self.on_variety,
            "condition": float(self.condition) if math.isfinite(self.condition) else None,
            "tag": self.tag,
        }


@dataclass
class SolutionSet:
    solutions: list[Solution] = field(default_factory=list)

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    @property
    def points(self) -> list[np.ndarray]:
        return [s.point for s in self.solutions]


def dedupe(points: SolutionSet | Sequence[Solution], tol: float = 1e-6) -> SolutionSet:
    """Greedy clustering in normalized coordinates; keeps the smallest residual per cluster."""
    sols = list(points)
    clusters: list[list[Solution]] = []
    for s in sols:
        for cl in clusters:
            if projective_distance(cl[0].point, s.point) < tol:
                cl.append(s)
                break
        else:
            clusters.append([s])
    return SolutionSet([min(cl, key=lambda s: s.residual) for cl in clusters])


def membership_test(point, ideal: IdealSpec, tol: float = 1e-6) -> bool:
    """True when every generator nearly vanishes at the normalized point.

    The residual of each generator is scaled by its coefficient 1-norm.
    """
    x = normalize_point(point)
    return generator_residual(x, ideal) < tol


def generator_residual(point, ideal: IdealSpec) -> float:
    x = normalize_point(point)
    worst = 0.0
    for g in ideal.generators:
        worst = max(worst, abs(g(x)) / g.coefficient_norm())
    return worst


# --------------------------------------------------------------------------
# Newton and tracking

@dataclass
class NewtonResult:
    point: np.ndarray
    residual: float
    iterations: int
    converged: bool
    singular: bool


def _augmented(H: HomotopySystem, patch: AffinePatch, x, t):
    h, hx, ht = H.evaluate(x, t)
    G = np.append(h, patch.coefficients @ x - 1)
    J = np.vstack([hx, patch.coefficients])
    return G, J, ht


def newton_refine(sys: PolynomialSystem | HomotopySystem, patch: AffinePatch, x,
                  tol: float = 1e-12, max_iters: int = 20, t: float = 0.0) -> NewtonResult:
    """Newton's method on ``sys`` plus the patch equation.

    Iterates while the residual keeps decreasing; stops at ``tol`` or when the
    Jacobian is singular.
    """
    H = sys if isinstance(sys, HomotopySystem) else HomotopySystem("fixed", sys, sys, sys.degrees)
    x = np.array(x, dtype=complex)
    G, J, _ = _augmented(H, patch, x, t)
    res = float(np.max(np.abs(G)))
    it = 0
    while res >= tol and it < max_iters:
        try:
            if np.linalg.cond(J) > 1e14:
                raise np.linalg.LinAlgError
            dx = np.linalg.solve(J, -G)
        except np.linalg.LinAlgError:
            return NewtonResult(x, res, it, False, True)
        x_new = x + dx
        G_new, J_new, _ = _augmented(H, patch, x_new, t)
        res_new = float(np.max(np.abs(G_new)))
        it += 1
        if not res_new < res:
            break
        x, G, J, res = x_new, G_new, J_new, res_new
    return NewtonResult(x, res, it, res < tol, False)


def _correct(H, patch, x, t, cfg: TrackerConfig):
    """Newton corrector at fixed ``t``; None when it fails to contract."""
    prev = math.inf
    for _ in range(cfg.max_newton_iters):
        G, J, _ = _augmented(H, patch, x, t)
        try:
            dx = np.linalg.solve(J, -G)
        except np.linalg.LinAlgError:
            return None
        size = float(np.max(np.abs(dx)))
        if not np.isfinite(size) or size > 0.5 * prev:
            return None
        x = x + dx
        if size <= cfg.track_tol * (1.0 + float(np.max(np.abs(x)))):
            return x
        prev = size
    return None


def _polish(H: HomotopySystem, patch: AffinePatch, x, cfg: TrackerConfig):
    """Gauss-Newton at ``t = 0``; least squares copes with singular endpoints."""
    best = x
    best_res = _endpoint_residual(H, x)
    for _ in range(cfg.polish_iters):
        G, J, _ = _augmented(H, patch, x, 0.0)
        dx = np.linalg.lstsq(J, -G, rcond=1e-13)[0]
        x = x + dx
        res = _endpoint_residual(H, x)
        if res < best_res:
            best, best_res = x, res
        if float(np.max(np.abs(dx))) <= 1e-15 * (1.0 + float(np.max(np.abs(x)))):
            break
    return best, best_res


def _endpoint_residual(H: HomotopySystem, x) -> float:
    if not np.all(np.isfinite(x)) or not np.any(x):
        return math.inf
    return H.target_residual(normalize_point(x))


def _condition(H: HomotopySystem, patch: AffinePatch, x) -> float:
    _, J, _ = _augmented(H, patch, x, 0.0)
    return float(np.linalg.cond(J))


def track_path(H: HomotopySystem, start, patch: AffinePatch, cfg: TrackerConfig = TrackerConfig()) -> TrackOutcome:
    """Track one path from ``t = 1`` to ``t = 0``."""
    x = patch.project(start)
    G, _, _ = _augmented(H, patch, x, 1.0)
    if float(np.max(np.abs(G))) > 1e3 * cfg.newton_tol * (1 + float(np.max(np.abs(x)))):
        refined = _correct(H, patch, x, 1.0, cfg)
        if refined is None:
            return TrackOutcome(Status.SINGULAR, None)
        x = refined
    t = 1.0
    h = cfg.initial_step
    steps = rejections = streak = 0
    trace: list[tuple[float, float, float]] = []
    while t > cfg.endgame_stop:
        if steps >= cfg.max_steps:
            return TrackOutcome(Status.STEP_LIMIT, None, steps, rejections, trace=trace)
        h = min(h, t)
        if t < cfg.endgame_start:
            h = min(h, 0.5 * t)
        t_new = t - h
        if t_new < cfg.endgame_stop:
            t_new = 0.0
        steps += 1
        # Euler predictor: dx/dt solves [Hx; c] dx = [-Ht; 0]
        _, J, ht = _augmented(H, patch, x, t)
        try:
            xdot = np.linalg.solve(J, np.append(-ht, 0))
            x_pred = x + (t_new - t) * xdot
        except np.linalg.LinAlgError:
            x_pred = None
        x_new = None if x_pred is None else _correct(H, patch, x_pred, t_new, cfg)
        if x_new is None:
            rejections += 1
            streak = 0
            h *= 0.5
            if h < cfg.min_step or (t < cfg.endgame_start and h < 1e-3 * t):
                if t < cfg.endgame_start:
                    break
                return TrackOutcome(Status.SINGULAR, None, steps, rejections, trace=trace)
            continue
        x, t = x_new, t_new
        if float(np.max(np.abs(x))) > cfg.divergence:
            return TrackOutcome(Status.DIVERGED, None, steps, rejections, trace=trace)
        if cfg.trace:
            trace.append((t, h, float(np.max(np.abs(H(x, t))))))
        streak += 1
        if streak >= 3:
            h = min(2 * h, cfg.max_step)
            streak = 0
    if cfg.t_end_refine:
        x, res = _polish(H, patch, x, cfg)
    else:
        res = _endpoint_residual(H, x)
    if not np.all(np.isfinite(x)) or float(np.max(np.abs(x))) > cfg.divergence:
        return TrackOutcome(Status.DIVERGED, None, steps, rejections, res, trace=trace)
    status = Status.CONVERGED if res < cfg.newton_tol else Status.SINGULAR
    endpoint = normalize_point(x)
    return TrackOutcome(status, endpoint if status == Status.CONVERGED else None, steps, rejections,
                        res, _condition(H, patch, x), trace)


def track_all(H: HomotopySystem, starts: Sequence, patch: AffinePatch, cfg: TrackerConfig,
              workers: int = 1) -> list[TrackOutcome]:
    """Track every start point; outcomes come back in start order."""
    if workers <= 1 or len(starts) <= 1:
        return [track_path(H, s, patch, cfg) for s in starts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda s: track_path(H, s, patch, cfg), starts))


def status_counts(outcomes: Sequence[TrackOutcome]) -> dict[str, int]:
    counts = {s.value: 0 for s in Status}
    for o in outcomes:
        counts[o.status.value] += 1
    return counts


# --------------------------------------------------------------------------
# total-degree homotopy

def total_degree_start(degrees: Sequence[int]) -> list[np.ndarray]:
    """Start points of ``x_i^d_i - x_0^d_i`` (roots of unity, ``x_0 = 1``)."""
    n = len(degrees)
    roots = [np.exp(2j * np.pi * np.arange(d) / d) for d in degrees]
    pts = []
    for idx in np.ndindex(*degrees):
        pts.append(np.array([1.0] + [roots[i][k] for i, k in enumerate(idx)], dtype=complex))
    assert len(pts) == math.prod(degrees) and all(len(p) == n + 1 for p in pts)
    return pts


def total_degree_homotopy(sys: PolynomialSystem, gamma: complex) -> HomotopySystem:
    n1 = len(sys.vars)
    degrees = sys.degrees
    start = []
    for i, d in enumerate(degrees, start=1):
        e_i = tuple(d if j == i else 0 for j in range(n1))
        e_0 = (d,) + (0,) * (n1 - 1)
        start.append(SparsePolynomial({e_i: gamma, e_0: -gamma}, n1))
    return HomotopySystem("total_degree", PolynomialSystem(tuple(start), sys.vars), sys, degrees,
                          {"gamma": gamma})


@dataclass
class SolveStats:
    paths: int
    status: dict[str, int]
    gamma: complex


def total_degree_solve(sys: PolynomialSystem, patch: AffinePatch, cfg: TrackerConfig = TrackerConfig(),
                       seed=None, workers: int = 1) -> tuple[SolutionSet, SolveStats]:
    """All converged, deduplicated endpoints of the total-degree homotopy."""
    if not sys.is_square:
        raise ValueError("total-degree solving needs n equations in n+1 homogeneous variables")
    if any(not f.is_homogeneous for f in sys.polys):
        raise ValueError("total-degree solving needs homogeneous equations")
    rng = as_generator(seed)
    gamma = complex(np.exp(2j * np.pi * rng.uniform()))
    H = total_degree_homotopy(sys, gamma)
    starts = total_degree_start(sys.degrees)
    outcomes = track_all(H, starts, patch, cfg, workers)
    sols = [Solution(o.endpoint, o.residual, f"path {i}", condition=o.condition)
            for i, o in enumerate(outcomes) if o.status == Status.CONVERGED]
    return dedupe(sols, cfg.dedupe_tol), SolveStats(len(starts), status_counts(outcomes), gamma)
