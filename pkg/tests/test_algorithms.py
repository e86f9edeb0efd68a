from __future__ import annotations

import itertools
import json

import numpy as np
import pytest

from excesskit.algorithms import (
    bsystem,
    build_hit,
    build_hup,
    run_hit_iterations,
    run_hup,
    solve_bsystem,
    solve_monomial_bsystem,
)
from excesskit.polynomial import IdealSpec, VariableSet, monomialize, parse_polynomial
from excesskit.polytope import excess_by_mixed_volume
from excesskit.tracker import (
    AffinePatch,
    TrackerConfig,
    membership_test,
    newton_refine,
    projective_distance,
)

XYZW = VariableSet(("x", "y", "z", "w"))
TC = IdealSpec.from_strings(["z^2 - y*w", "y*z - x*w", "y^2 - x*z"], XYZW)
A_TC = ["z^2", "y*z", "y^2"]


def homogeneous_at(H, degrees, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(H.nvars) + 1j * rng.standard_normal(H.nvars)
    lam = 1.3 + 0.4j
    return all(np.allclose(H(lam * x, t), lam ** np.array(degrees) * H(x, t), atol=1e-10)
               for t in (0.0, 0.5, 1.0))


def test_bsystem_shape():
    sys = bsystem(TC, (3, 3, 4), seed=1)
    assert sys.degrees == (3, 3, 4)
    assert all(f.is_homogeneous for f in sys.polys)
    # every f_i vanishes on the twisted cubic
    t = 0.8 - 0.3j
    assert np.max(np.abs(sys.evaluate([1, t, t**2, t**3]))) < 1e-12
    with pytest.raises(ValueError):
        bsystem(TC, (3, 3), seed=1)
    with pytest.raises(ValueError):
        bsystem(TC, (1, 3, 3), seed=1)


def test_build_hup_structure():
    H = build_hup(TC, (3, 3, 3), seed=0)
    assert H.kind == "hup"
    assert homogeneous_at(H, (3, 3, 3))
    mono = monomialize(TC)
    assert H.metadata["monomial_ideal"] == mono
    # start: general B'-system for the six monomials, so it vanishes on V(I') but not on the cubic
    assert np.max(np.abs(H.start.evaluate([1, 0, 0, 0]))) < 1e-12
    t = 1.1
    cubic_pt = [1, t, t**2, t**3]
    assert np.max(np.abs(H.target.evaluate(cubic_pt))) < 1e-12
    assert np.max(np.abs(H.start.evaluate(cubic_pt))) > 1e-3
    # support of each start polynomial: the six quadric monomials times every variable
    support = {tuple(a + b for a, b in zip(next(iter(m.terms)), e))
               for m in mono.generators for e in itertools.permutations((1, 0, 0, 0))}
    assert all(set(f.terms) == support for f in H.start.polys)


def test_build_hup_monomial_ideal_keeps_support():
    ideal = IdealSpec.from_strings(A_TC, XYZW)
    H = build_hup(ideal, (3, 3, 3), seed=2)
    for f, g in zip(H.start.polys, H.target.polys):
        assert set(f.terms) == set(g.terms)


def test_build_hit_structure():
    H = build_hit(TC, A_TC, (3, 3, 3), gamma=1j, seed=0)
    assert homogeneous_at(H, (3, 3, 3))
    forms = H.metadata["forms"]
    A = [parse_polynomial(a, XYZW) for a in A_TC]
    for i, row in enumerate(forms):
        expected = row[0] * A[0] + row[1] * A[1] + row[2] * A[2]
        assert H.start.polys[i] == expected
    t = 0.4
    assert np.max(np.abs(H.target.evaluate([1, t, t**2, t**3]))) < 1e-12
    # gamma only rescales the target
    H1 = build_hit(TC, A_TC, (3, 3, 3), gamma=1, seed=0)
    x = np.array([0.3, -1, 2j, 0.5])
    assert np.allclose(H.target.evaluate(x), 1j * H1.target.evaluate(x))
    with pytest.raises(ValueError):
        build_hit(TC, ["z^2", "y*z", "y^3"], (3, 3, 3), gamma=1, seed=0)
    with pytest.raises(ValueError):
        build_hit(TC, ["z^2", "y*z"], (3, 3, 3), gamma=1, seed=0)


def test_build_hit_constant_when_monomial():
    ideal = IdealSpec.from_strings(A_TC, XYZW)
    H = build_hit(ideal, A_TC, (3, 3, 3), gamma=1, seed=5)
    assert H.start.polys == H.target.polys


@pytest.mark.parametrize("gens, vars, d, count", [
    (A_TC, XYZW, (3, 3, 3), 7),
    (monomialize(TC).generator_strings(), XYZW, (2, 2, 2), 4),
    (["x1^2", "x2^2"], VariableSet.standard(3), (2, 2, 2), 0),
])
def test_solve_monomial_bsystem(gens, vars, d, count):
    ideal = IdealSpec.from_strings(gens, vars)
    sols = solve_monomial_bsystem(ideal, d, seed=0)
    assert len(sols) == count == excess_by_mixed_volume(ideal, d)
    assert all(not membership_test(s.point, ideal) for s in sols)


def test_solve_monomial_requires_monomials():
    with pytest.raises(ValueError):
        solve_monomial_bsystem(TC, (3, 3, 3))


def _accounting(report):
    assert sum(report.status.values()) == report.tracked_count
    assert report.excess_count + report.on_variety_count <= report.converged_count <= report.start_count


@pytest.mark.parametrize("d, excess", [((3, 3, 3), 10), ((2, 2, 2), 0), ((3, 3, 4), 16)])
def test_run_hup_twisted_cubic(d, excess):
    report = run_hup(TC, d, seed=0)
    assert report.excess_count == excess
    assert report.bound_kind == "exact" and not report.inconclusive
    assert report.start_count == report.expected_start_count == excess_by_mixed_volume(monomialize(TC), d)
    assert report.excess_count <= report.start_count
    _accounting(report)


def test_run_hup_monomial_ideal_equals_mixed_volume():
    ideal = IdealSpec.from_strings(A_TC, XYZW)
    report = run_hup(ideal, (3, 3, 3), seed=1)
    assert report.excess_count == report.start_count == 7
    _accounting(report)


def test_twisted_cubic_points_are_separated():
    report = run_hup(TC, (3, 3, 3), seed=3)
    pts = [s.point for s in report.solutions]
    gaps = [projective_distance(a, b) for a, b in itertools.combinations(pts, 2)]
    assert len(pts) == 10 and min(gaps) > 1e-3


def test_real_coefficients_give_conjugate_pairs():
    report = run_hup(TC, (3, 3, 3), seed=3, real=True)
    assert report.excess_count == 10
    pts = [s.point for s in report.solutions]
    for p in pts:
        assert min(projective_distance(q, np.conj(p)) for q in pts) < 1e-6


def test_run_hup_deterministic_across_workers():
    a = run_hup(TC, (3, 3, 3), seed=4, workers=1).to_dict()
    b = run_hup(TC, (3, 3, 3), seed=4, workers=8).to_dict()
    assert json.dumps(a) == json.dumps(b)


def test_run_hit_basic_invariants():
    cfg = TrackerConfig()
    report = run_hit_iterations(TC, A_TC, (3, 3, 3), cfg, seed=6, max_iters=3)
    assert report.start_count == 7
    assert report.tracked_count == 3 * 7
    assert report.bound_kind == "lower"
    hist = report.lower_bound_history
    assert len(hist) == 3 and hist == sorted(hist) and hist[-1] == report.excess_count
    assert len(report.gamma_history) == 3
    assert all(abs(abs(g) - 1) < 1e-14 for g in report.gamma_history)
    target = build_hit(TC, A_TC, (3, 3, 3), gamma=1, seed=6).target
    patch = AffinePatch.random(4, 0)
    for s in report.solutions:
        assert not membership_test(s.point, TC)
        assert newton_refine(target, patch, patch.project(s.point)).residual < cfg.newton_tol
    # counts accumulate over iterations
    assert sum(report.status.values()) == report.tracked_count
    assert report.on_variety_count <= report.converged_count <= report.tracked_count


def test_run_hit_single_iteration_bounded_by_starts():
    report = run_hit_iterations(TC, A_TC, (3, 3, 3), seed=2, max_iters=1)
    assert report.excess_count <= 7


def test_run_hit_with_complete_prior_set():
    seed = 9
    target = build_hit(TC, A_TC, (3, 3, 3), gamma=1, seed=seed).target
    truth = solve_bsystem(target, TC, seed=123)
    assert len(truth) == 10
    report = run_hit_iterations(TC, A_TC, (3, 3, 3), seed=seed, max_iters=2, W=truth)
    assert report.lower_bound_history == [10, 10]


def test_run_hit_monomial_ideal_is_exact_immediately():
    ideal = IdealSpec.from_strings(A_TC, XYZW)
    report = run_hit_iterations(ideal, A_TC, (3, 3, 3), seed=0, max_iters=1)
    assert report.excess_count == 7
