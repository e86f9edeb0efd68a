"""Command-line front end.

    excesskit formula --powers 3,3 --degrees 5,5,5
    excesskit mixedvol --ideal tc.txt --degrees 3,3,3
    excesskit hup --ideal tc.txt --degrees 3,3,3 --seed 1
    excesskit hit --ideal tc.txt --monomials "z^2,y*z,y^2" --degrees 3,3,3 --max-iters 8
    excesskit crosscheck --powers 2,2 --degrees 3,3,3

Every command prints one JSON report (schema ``excesskit/1``).  Exit codes:
0 success, 1 cross-check disagreement, 2 input error, 3 inconclusive run.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .algorithms import ExcessRunReport, run_hit_iterations, run_hup
from .formula import excess_powers
from .polynomial import (
    IdealSpec,
    PolynomialSyntaxError,
    SparsePolynomial,
    VariableSet,
    monomialize,
    parse_polynomial,
)
from .polytope import excess_by_mixed_volume
from .tracker import TrackerConfig

SCHEMA = "excesskit/1"
METHODS = ("formula", "mixedvol", "hup", "hit", "crosscheck")

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class InputError(ValueError):
    """Bad command-line input; reported with exit code 2."""


# --------------------------------------------------------------------------
# ideal files

def _coefficient(value) -> complex:
    if isinstance(value, bool):
        raise InputError(f"bad coefficient {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        return complex(Fraction(value))
    if isinstance(value, list) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise InputError(f"bad coefficient {value!r}")


def _generator_from_json(g, vars: VariableSet) -> SparsePolynomial:
    if isinstance(g, str):
        return parse_polynomial(g, vars)
    if isinstance(g, dict) and "terms" in g:
        terms = {}
        for entry in g["terms"]:
            exps, coeff = entry
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vars) or min(exps) < 0:
                raise InputError(f"exponent vector {list(exps)} does not fit {len(vars)} variables")
            terms[exps] = terms.get(exps, 0) + _coefficient(coeff)
        return SparsePolynomial(terms, len(vars))
    raise InputError(f"generator must be a string or an object with 'terms', got {g!r}")


def parse_ideal_text(text: str) -> IdealSpec:
    """Read an ideal from the plain-text or JSON file format."""
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            data = json.loads(text)
            vars = VariableSet(tuple(data["vars"]))
            gens = tuple(_generator_from_json(g, vars) for g in data["generators"])
            return IdealSpec(gens, vars)
        vars = None
        gens = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.lower().startswith("vars:"):
                if vars is not None:
                    raise InputError(f"line {lineno}: second 'vars:' header")
                vars = VariableSet(tuple(v.strip() for v in line[5:].split(",") if v.strip()))
                continue
            if vars is None:
                raise InputError(f"line {lineno}: generator before the 'vars:' header")
            try:
                gens.append(parse_polynomial(line, vars))
            except PolynomialSyntaxError as exc:
                raise InputError(f"line {lineno}: {exc}") from None
        if vars is None:
            raise InputError("missing 'vars:' header")
        return IdealSpec(tuple(gens), vars)
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"malformed ideal file: {exc}") from None


def load_ideal(path: str | os.PathLike) -> IdealSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_ideal_text(text)


def powers_exponents(ideal: IdealSpec) -> list[int] | None:
    """``p`` when the generators are pure powers of distinct variables, else None."""
    used, p = set(), []
    for g in ideal.generators:
        if not g.is_monomial:
            return None
        (exps, _), = g.items()
        support = [i for i, e in enumerate(exps) if e]
        if len(support) != 1 or support[0] in used:
            return None
        used.add(support[0])
        p.append(exps[support[0]])
    return p


def leading_terms(ideal: IdealSpec) -> tuple[SparsePolynomial, ...]:
    """The largest monomial of each generator, coefficient 1."""
    return tuple(SparsePolynomial.monomial(max(exps for exps, _ in g.items())) for g in ideal.generators)


# --------------------------------------------------------------------------
# jobs and reports

@dataclass
class JobSpec:
    method: str
    degrees: tuple[int, ...]
    ideal_path: str | None = None
    powers: tuple[int, ...] | None = None
    monomials: tuple[str, ...] | None = None
    seed: int = 0
    max_iters: int = 8
    config: TrackerConfig = field(default_factory=TrackerConfig)
    workers: int = 1
    real: bool = False
    output_path: str | None = None
    trace_path: str | None = None
    timings: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise InputError(f"unknown method {self.method!r}")
        if not self.degrees:
            raise InputError("--degrees is required")
        if min(self.degrees) < 0:
            raise InputError("degrees must be nonnegative")
        if self.method == "formula" and self.powers is None:
            raise InputError("formula needs --powers")
        if self.method in ("mixedvol", "hup", "hit") and self.ideal_path is None:
            raise InputError(f"{self.method} needs --ideal")
        if self.method == "crosscheck" and self.ideal_path is None and self.powers is None:
            raise InputError("crosscheck needs --ideal or --powers")
        if self.ideal_path is not None and self.powers is not None:
            raise InputError("give either --ideal or --powers, not both")
        if self.max_iters < 1:
            raise InputError("--max-iters must be positive")

    def ideal(self) -> IdealSpec:
        if self.ideal_path is not None:
            ideal = load_ideal(self.ideal_path)
        else:
            ideal = IdealSpec.powers(self.powers, len(self.degrees))
        if len(self.degrees) != ideal.n:
            raise InputError(f"need {ideal.n} degrees for {len(ideal.vars)} variables, got {len(self.degrees)}")
        return ideal


def _report(method: str, job: JobSpec, excess: int, bound_kind: str, **extra) -> dict:
    bezout = math.prod(job.degrees)
    report = {
        "schema": SCHEMA,
        "method": method,
        "inputs": {"degrees": list(job.degrees), "seed": job.seed},
        "excess": int(excess),
        "equivalence": bezout - int(excess),
        "bezout": bezout,
        "bound_kind": bound_kind,
    }
    report.update(extra)
    return report


def _inputs(report: dict, job: JobSpec, ideal: IdealSpec | None) -> dict:
    if job.powers is not None:
        report["inputs"]["powers"] = list(job.powers)
    if ideal is not None:
        report["inputs"]["vars"] = list(ideal.vars.names)
        report["inputs"]["generators"] = ideal.generator_strings()
    return report


def _numeric_report(job: JobSpec, ideal: IdealSpec, run: ExcessRunReport) -> dict:
    data = run.to_dict()
    report = _report(run.method, job, run.excess_count, run.bound_kind,
                     solutions=data.pop("solutions"), path_statistics=data)
    return _inputs(report, job, ideal)


def cmd_formula(job: JobSpec) -> dict:
    res = excess_powers(job.powers, job.degrees)
    return _inputs(_report("formula", job, res.excess, "exact"), job, None)


def cmd_mixedvol(job: JobSpec) -> dict:
    ideal = job.ideal()
    if ideal.is_monomial:
        return _inputs(_report("mixedvol", job, excess_by_mixed_volume(ideal, job.degrees), "exact"), job, ideal)
    mono = monomialize(ideal)
    report = _report("mixedvol", job, excess_by_mixed_volume(mono, job.degrees), "upper",
                     monomialization=mono.generator_strings())
    return _inputs(report, job, ideal)


def cmd_hup(job: JobSpec) -> dict:
    ideal = job.ideal()
    run = run_hup(ideal, job.degrees, job.config, job.seed, job.workers, job.real)
    _write_traces(job, run)
    return _numeric_report(job, ideal, run)


def _hit_monomials(job: JobSpec, ideal: IdealSpec):
    if job.monomials is None:
        return leading_terms(ideal)
    if len(job.monomials) != len(ideal.generators):
        raise InputError(f"--monomials needs {len(ideal.generators)} entries, got {len(job.monomials)}")
    A = tuple(parse_polynomial(a, ideal.vars) for a in job.monomials)
    for a in A:
        if not a.is_monomial:
            raise InputError(f"{a.to_string(ideal.vars)} is not a monomial")
    return A


def cmd_hit(job: JobSpec) -> dict:
    ideal = job.ideal()
    A = _hit_monomials(job, ideal)
    run = run_hit_iterations(ideal, A, job.degrees, job.config, job.seed, job.max_iters,
                             workers=job.workers, real=job.real)
    _write_traces(job, run)
    report = _numeric_report(job, ideal, run)
    report["inputs"]["monomials"] = [a.to_string(ideal.vars) for a in A]
    report["inputs"]["max_iters"] = job.max_iters
    return report


def cmd_crosscheck(job: JobSpec) -> dict:
    ideal = job.ideal()
    results: dict[str, dict] = {}
    p = list(job.powers) if job.powers is not None else powers_exponents(ideal)
    if p is not None:
        results["formula"] = {"excess": excess_powers(p, job.degrees).excess, "bound_kind": "exact"}
    mono = monomialize(ideal)
    results["mixedvol"] = {"excess": excess_by_mixed_volume(mono, job.degrees),
                           "bound_kind": "exact" if ideal.is_monomial else "upper"}
    hup = run_hup(ideal, job.degrees, job.config, job.seed, job.workers, job.real)
    results["hup"] = {"excess": hup.excess_count, "bound_kind": hup.bound_kind,
                      "inconclusive": hup.inconclusive}
    A = _hit_monomials(job, ideal) if job.monomials is not None or not ideal.is_monomial else ideal.generators
    hit = run_hit_iterations(ideal, A, job.degrees, job.config, job.seed, job.max_iters,
                             workers=job.workers, real=job.real)
    results["hit"] = {"excess": hit.excess_count, "bound_kind": "lower",
                      "lower_bound_history": hit.lower_bound_history}

    problems = []
    exact = {k: v["excess"] for k, v in results.items() if v["bound_kind"] == "exact"}
    if len(set(exact.values())) > 1:
        problems.append(f"exact methods disagree: {exact}")
    if not ideal.is_monomial and hup.excess_count > results["mixedvol"]["excess"]:
        problems.append("hup exceeds the mixed-volume upper bound")
    if hit.excess_count > hup.excess_count:
        problems.append("hit lower bound exceeds the hup count")
    for k, v in exact.items():
        if k != "hup" and not hup.inconclusive and v != hup.excess_count:
            problems.append(f"hup gives {hup.excess_count}, {k} gives {v}")
    value = exact.get("formula", exact.get("mixedvol", hup.excess_count))
    report = _report("crosscheck", job, value, "exact" if exact else hup.bound_kind,
                     results=results, agree=not problems, problems=problems,
                     inconclusive=hup.inconclusive)
    return _inputs(report, job, ideal)


COMMANDS = {"formula": cmd_formula, "mixedvol": cmd_mixedvol, "hup": cmd_hup,
            "hit": cmd_hit, "crosscheck": cmd_crosscheck}


def _write_traces(job: JobSpec, run: ExcessRunReport):
    if job.trace_path is None:
        return
    with open(job.trace_path, "w") as fh:
        for label, steps in run.traces:
            for t, h, res in steps:
                fh.write(f"{label}\t{t:.17g}\t{h:.17g}\t{res:.17g}\n")


def exit_code(report: dict) -> int:
    if report["method"] == "crosscheck" and not report["agree"]:
        return EXIT_DISAGREE
    if report.get("inconclusive") or report.get("path_statistics", {}).get("inconclusive"):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def run_job(job: JobSpec) -> tuple[dict, int]:
    start = time.perf_counter()
    report = COMMANDS[job.method](job)
    if job.timings:
        report["timings"] = {"wall_seconds": time.perf_counter() - start}
    return report, exit_code(report)


# --------------------------------------------------------------------------
# argument parsing

def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="excesskit", description="Excess numbers of homogeneous ideals.")
    parser.add_argument("command", nargs="?", choices=METHODS, help="method to run (or use --method)")
    parser.add_argument("--method", choices=METHODS)
    parser.add_argument("--ideal", help="ideal file: 'vars: x,y,...' header then one generator per line, or JSON")
    parser.add_argument("--powers", type=_int_list, help="p1,...,pk for the ideal (x1^p1, ..., xk^pk)")
    parser.add_argument("--degrees", type=_int_list, required=True, help="d1,...,dn")
    parser.add_argument("--monomials", help="comma-separated monomials A_j for hit")
    parser.add_argument("--seed", type=int, default=None, help="run seed (default: $EXCESSKIT_SEED or 0)")
    parser.add_argument("--max-iters", type=int, default=8, help="gamma iterations for hit")
    parser.add_argument("--tol-newton", type=float, default=None)
    parser.add_argument("--tol-membership", type=float, default=None)
    parser.add_argument("--workers", type=int, default=1, help="threads for path tracking")
    parser.add_argument("--real", action="store_true", help="draw all random coefficients real")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--trace", metavar="PATH", help="write per-step path traces (label, t, step, residual)")
    parser.add_argument("--timings", action="store_true", help="add wall-clock time to the report")
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    if args.command and args.method and args.command != args.method:
        raise InputError(f"conflicting methods {args.command!r} and {args.method!r}")
    method = args.command or args.method
    if method is None:
        raise InputError("no method given")
    seed = args.seed
    if seed is None:
        env = os.environ.get("EXCESSKIT_SEED", "0")
        try:
            seed = int(env)
        except ValueError:
            raise InputError(f"EXCESSKIT_SEED must be an integer, got {env!r}") from None
    cfg = TrackerConfig(trace=args.trace is not None)
    if args.tol_newton is not None:
        cfg = replace(cfg, newton_tol=args.tol_newton)
    if args.tol_membership is not None:
        cfg = replace(cfg, membership_tol=args.tol_membership)
    monomials = None
    if args.monomials is not None:
        monomials = tuple(m.strip() for m in args.monomials.split(",") if m.strip())
    return JobSpec(method=method, degrees=args.degrees, ideal_path=args.ideal, powers=args.powers,
                   monomials=monomials, seed=seed, max_iters=args.max_iters, config=cfg,
                   workers=args.workers, real=args.real, output_path=args.out,
                   trace_path=args.trace, timings=args.timings)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = job_from_args(args)
        report, code = run_job(job)
    except (ValueError, ArithmeticError) as exc:
        # InputError, parser errors and precondition violations all land here
        print(f"excesskit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = json.dumps(report, indent=2) + "\n"
    if job.output_path:
        Path(job.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return code
