"""
One function per subcommand. Each takes the resolved RunConfig, the run seed
and a ReportWriter, writes its reports and returns the process exit status
(0 success, 1 when a computed check fails). Bad input is raised as
ConfigError and friends and mapped to status 2 by main().
"""
from __future__ import annotations

import json
import logging
from typing import Callable, Dict, Optional

import numpy as np

from ..circuit.counting import count_gates
from ..circuit.decompose import decompose_to_basic
from ..circuit.formats import parse_json, parse_text, to_json, to_qasm, to_text
from ..circuit.ir import Circuit
from ..errors import ConfigError, DecompositionError, EnumerationBudgetError
from ..gf2 import kernel_dim_distribution, wilson_interval
from ..multipoint import (
    SearchTelemetry,
    amplification_trials,
    hash_width,
    multi_point_amplified,
    multi_point_success_probability,
    multi_point_unknown,
    unique_intersection_probability,
)
from ..multipoint.algorithms import SINGLE_TRIAL_BOUND
from ..render import render_circuit_png
from ..sat import compile_oracle, dependency_profile, parse_dimacs, random_unique_formula, solve_unique_sat, to_dimacs
from ..search import (
    DiffuserSchedule,
    alpha_recurrence,
    beta_recurrence,
    build_D,
    build_W,
    inline_marked_oracle,
    optimal_reference,
    plan_single_point,
    schedule_from_x,
    single_point,
)
from ..search.recurrence import d_oracle_calls, w_oracle_calls
from ..search.single_point import base_circuit, run_template
from ..seeding import make_rng, spawn_rngs
from ..settings import DEFAULT_TOLERANCES
from ..simulator import PhaseOracleSpec, run, unitary_equiv
from ..simulator.dump import write_statevector
from ..uncompute import decomposition_from_manifest, rewrite, rewrite_stepwise, w_as_generic
from .config import RunConfig
from .reports import ReportWriter

logger = logging.getLogger(__name__)

Command = Callable[[RunConfig, int, ReportWriter], int]

# Simulated targets when neither --oracle-marked nor --targets is given.
DEFAULT_TARGETS = 16


# ----------------------------------------------------------------------
# HELPERS
# ----------------------------------------------------------------------

def resolve_schedule(config: RunConfig, n: Optional[int] = None) -> DiffuserSchedule:
    """--schedule wins over --n/--x; `n` is the register width fixed by an input file."""
    n = config.n if n is None else n
    if config.schedule:
        schedule = DiffuserSchedule.parse(config.schedule)
        if n is not None and schedule.n != n:
            raise ConfigError(f"--schedule {config.schedule} covers {schedule.n} qubits, expected {n}")
        return schedule
    if n is None:
        raise ConfigError("--n or --schedule is required")
    return schedule_from_x(n, config.x)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except FileNotFoundError:
        raise ConfigError(f"input file {path} not found") from None


def _load_circuit(path: str) -> Circuit:
    text = _read(path)
    return parse_json(text) if path.endswith(".json") else parse_text(text)


def _tol(config: RunConfig, default: float) -> float:
    return default if config.tol is None else config.tol


def _search_oracle(config: RunConfig, n: int, rng: np.random.Generator) -> PhaseOracleSpec:
    """Marked set for multipoint: explicit, K random elements, or the models of a CNF."""
    if config.oracle_marked is not None:
        return PhaseOracleSpec.from_marked(n, config.oracle_marked)
    if config.k is not None:
        if not 1 <= config.k <= 2**n:
            raise ConfigError(f"--k must lie in 1..{2**n}")
        chosen = rng.choice(2**n, size=config.k, replace=False)
        return PhaseOracleSpec.from_marked(n, (int(v) for v in chosen))
    if config.cnf is not None:
        formula = parse_dimacs(_read(config.cnf))
        if formula.n != n:
            raise ConfigError(f"{config.cnf} has {formula.n} variables, --n is {n}")
        return PhaseOracleSpec.from_mask(formula.satisfied_mask())
    raise ConfigError("multipoint needs --oracle-marked, --k or --cnf")


# ----------------------------------------------------------------------
# GENERATE
# ----------------------------------------------------------------------

def cmd_generate(config: RunConfig, seed: int, writer: ReportWriter) -> int:
    schedule = resolve_schedule(config)
    builder = build_W if config.family == "W" else build_D
    circuit = builder(schedule, depth=config.depth)
    depth = schedule.m if config.depth is None else config.depth
    expected = w_oracle_calls(depth) if config.family == "W" else d_oracle_calls(depth)

    if config.format == "qasm":
        if not config.decompose:
            raise ConfigError("--format qasm needs --decompose")
        if config.oracle_marked is None or len(config.oracle_marked) != 1:
            raise ConfigError("--format qasm needs a single --oracle-marked target to inline the oracle")
        circuit = inline_marked_oracle(circuit, config.oracle_marked[0])
    if config.decompose:
        circuit = decompose_to_basic(circuit)

    if config.format == "qasm":
        writer.write_text(to_qasm(circuit), "qasm", "circuit")
    elif config.format == "json":
        writer.write_text(to_json(circuit), "json", "circuit")
    else:
        writer.write_text(to_text(circuit), "circ", "circuit")
    if config.png:
        writer.track(render_circuit_png(circuit, writer.path("png", "diagram")))

    counts = count_gates(circuit, with_dependency=False)
    writer.write_json({
        "schedule": list(schedule.k),
        "family": config.family,
        "depth": depth,
        "num_main": circuit.num_main,
        "num_ancilla": circuit.num_ancilla,
        "oracle_calls": counts.oracle_calls,
        "expected_oracle_calls": expected,
        "counts": counts.to_dict(),
    })
    if config.oracle_marked is None and counts.oracle_calls != expected:
        logger.error("emitted %d oracle calls, expected %d", counts.oracle_calls, expected)
        return 1
    return 0


# ----------------------------------------------------------------------
# SIMULATE
# ----------------------------------------------------------------------

def cmd_simulate(config: RunConfig, seed: int, writer: ReportWriter) -> int:
    schedule = resolve_schedule(config)
    n = schedule.n
    if config.oracle_marked is not None:
        targets = list(config.oracle_marked)
    else:
        count = min(config.targets or DEFAULT_TARGETS, 2**n)
        targets = sorted(int(v) for v in make_rng(seed).choice(2**n, size=count, replace=False))
    for t in targets:
        if not 0 <= t < 2**n:
            raise ConfigError(f"target {t} outside {n}-qubit register")

    tol = _tol(config, DEFAULT_TOLERANCES.success)
    rows = []
    results = []
    for t in targets:
        oracle = PhaseOracleSpec.from_marked(n, [t], single=True)
        result = single_point(oracle, n, config.x, schedule, config.family, strict=False)
        results.append(result)
        rows.append((t, result.element, result.success_probability, result.oracle_calls, result.template.query_bound))
    writer.write_csv(["target", "element", "success_probability", "oracle_calls", "query_bound"], rows, "targets")

    # Full distribution of the first target, as CSV and as a reloadable statevector dump.
    template = results[0].template
    first = PhaseOracleSpec.from_marked(n, [targets[0]], single=True)
    probs = run_template(template, first)
    writer.write_csv(
        ["index", "bitstring", "probability"],
        ((i, format(i, f"0{n}b"), float(p)) for i, p in enumerate(probs)),
        "probabilities",
    )
    if template.plan.iterations == 0:
        state = run(template.circuit, {"O": first})
        for path in write_statevector(state, writer.path("bin", "state")):
            writer.track(str(path))

    worst = min(r.success_probability for r in results)
    failures = [t for t, r in zip(targets, results) if r.success_probability < 1 - tol or r.element != t]
    writer.write_json({
        "schedule": list(schedule.k),
        "family": config.family,
        "targets": targets,
        "min_success_probability": worst,
        "failures": failures,
        "plan": results[0].to_dict(),
    })
    if failures:
        logger.error("%d of %d targets below success tolerance %g", len(failures), len(targets), tol)
        return 1
    return 0


# ----------------------------------------------------------------------
# RECURRENCE
# ----------------------------------------------------------------------

def _simulated_target_amplitude(prefix: DiffuserSchedule, family: str) -> float:
    circuit = base_circuit(prefix, family)
    state = run(circuit, {"O": PhaseOracleSpec.from_marked(prefix.n, [0], single=True)})
    return abs(state.amplitude_at(0))


def cmd_recurrence(config: RunConfig, seed: int, writer: ReportWriter) -> int:
    schedule = resolve_schedule(config)
    tol = _tol(config, DEFAULT_TOLERANCES.single_gate)
    alpha = alpha_recurrence(schedule).values
    beta = beta_recurrence(schedule).values
    beta_half = beta_recurrence(schedule, "half_exponent").values

    rows = []
    worst_alpha = worst_beta = 0.0
    for j in range(1, schedule.m + 1):
        prefix = schedule.prefix(j)
        alpha_sim = _simulated_target_amplitude(prefix, "W")
        beta_sim = _simulated_target_amplitude(prefix, "D")
        worst_alpha = max(worst_alpha, abs(alpha_sim - alpha[j]))
        worst_beta = max(worst_beta, abs(beta_sim - beta[j]))
        rows.append((j, schedule.k[j - 1], prefix.n, alpha[j], alpha_sim, beta[j], beta_half[j], beta_sim))
    writer.write_csv(
        ["j", "k_j", "qubits", "alpha", "alpha_sim", "beta_derived", "beta_half_exponent", "beta_sim"], rows
    )
    writer.write_json({
        "schedule": list(schedule.k),
        "max_alpha_deviation": worst_alpha,
        "max_beta_deviation": worst_beta,
        "tolerance": tol,
    })
    if worst_alpha > tol or worst_beta > tol:
        logger.error("recurrence disagrees with simulation (alpha %.3g, beta %.3g)", worst_alpha, worst_beta)
        return 1
    return 0


# ----------------------------------------------------------------------
# UNCOMPUTE-REWRITE
# ----------------------------------------------------------------------

def cmd_uncompute_rewrite(config: RunConfig, seed: int, writer: ReportWriter) -> int:
    oracle = None
    if config.cnf is not None:
        compiled = compile_oracle(parse_dimacs(_read(config.cnf)))
        dec = compiled.decomposition
        oracle = compiled.spec()
    elif config.circuit is not None and config.manifest is not None:
        try:
            manifest = json.loads(_read(config.manifest))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"manifest {config.manifest}: {exc}") from None
        try:
            dec = decomposition_from_manifest(_load_circuit(config.circuit), manifest)
        except DecompositionError as exc:
            raise ConfigError(f"manifest {config.manifest}: {exc}") from None
    else:
        raise ConfigError("uncompute-rewrite needs --cnf, or --circuit with --manifest")

    schedule = resolve_schedule(config, dec.num_main)
    V = w_as_generic(schedule, num_ancilla=dec.num_ancilla)
    result = rewrite(V, dec, oracle)
    stepwise = rewrite_stepwise(V, dec)
    writer.write_text(to_text(result.circuit), "circ", "circuit")

    payload = {
        "schedule": list(schedule.k),
        "report": result.report.to_dict(),
        "stepwise_identical": stepwise.circuit == result.circuit,
    }
    status = 0
    if config.verify:
        check = unitary_equiv(
            V.expand(dec), result.circuit, tol=_tol(config, DEFAULT_TOLERANCES.circuit), ancilla_clean=True, seed=seed
        )
        payload["verification"] = {
            "equivalent": check.equivalent,
            "max_deviation": check.max_deviation,
            "inputs_checked": check.inputs_checked,
            "mode": check.mode,
        }
        if not check:
            logger.error("rewritten circuit deviates by %.3g", check.max_deviation)
            status = 1
    writer.write_json(payload)
    return status


# ----------------------------------------------------------------------
# MULTIPOINT
# ----------------------------------------------------------------------

def cmd_multipoint(config: RunConfig, seed: int, writer: ReportWriter) -> int:
    if config.n is None:
        raise ConfigError("multipoint needs --n")
    n = config.n
    mode = config.mode or "known"
    oracle = _search_oracle(config, n, make_rng(seed))
    K = oracle.num_marked
    if K == 0:
        raise ConfigError("the oracle marks no element")
    k = config.hash_k if config.hash_k is not None else hash_width(K)

    if mode == "exact":
        probability = multi_point_success_probability(oracle, n, k, config.x)
        payload = {"n": n, "k": k, "num_marked": K, "success_probability": probability,
                   "single_trial_bound": SINGLE_TRIAL_BOUND}
        try:
            unique = unique_intersection_probability(oracle.marked(), n, k)
            payload["unique_intersection"] = {"numerator": unique.numerator, "denominator": unique.denominator,
                                              "value": float(unique)}
        except EnumerationBudgetError as exc:
            logger.info("skipping unique-intersection probability: %s", exc)
        writer.write_json(payload)
        if probability < SINGLE_TRIAL_BOUND:
            logger.error("single-trial success %.6g below %g", probability, SINGLE_TRIAL_BOUND)
            return 1
        return 0

    rows = []
    total = SearchTelemetry(seed=seed)
    successes = 0
    for trial, rng in enumerate(spawn_rngs(seed, config.trials)):
        if mode == "known":
            telemetry = SearchTelemetry()
            element = multi_point_amplified(oracle, n, k, config.p, rng, config.x, telemetry)
            found_k = k if element is not None else None
        else:
            result = multi_point_unknown(oracle, n, config.p, rng, config.x)
            element, found_k, telemetry = result.element, result.k, result.telemetry
        success = element is not None and oracle.is_marked(element)
        successes += success
        total.merge(telemetry)
        rows.append((trial, "" if element is None else element, int(success), "" if found_k is None else found_k,
                     telemetry.oracle_queries, telemetry.non_oracle_basic_gates, telemetry.trials))
    writer.write_csv(["trial", "element", "success", "k", "oracle_queries", "basic_gates", "hash_trials"], rows, "trials")

    low, high = wilson_interval(successes, config.trials)
    writer.write_json({
        "n": n,
        "mode": mode,
        "num_marked": K,
        "k": k if mode == "known" else None,
        "target_probability": config.p,
        "trials_per_search": amplification_trials(config.p) if mode == "known" else None,
        "successes": successes,
        "frequency": successes / config.trials,
        "ci99": [low, high],
        "telemetry": total.to_dict(),
        "mean_oracle_queries": total.oracle_queries / config.trials,
    })
    if high < config.p:
        logger.warning("success frequency CI [%.3f, %.3f] lies below target p=%g", low, high, config.p)
    return 0


# ----------------------------------------------------------------------
# KSAT
# ----------------------------------------------------------------------

def cmd_ksat(config: RunConfig, seed: int, writer: ReportWriter) -> int:
    if config.cnf is not None:
        formula = parse_dimacs(_read(config.cnf))
    elif config.random:
        if config.n is None:
            raise ConfigError("--random needs --n")
        formula, _ = random_unique_formula(config.n, make_rng(seed), config.clauses, config.width)
        writer.write_text(to_dimacs(formula, [f"seed {seed}"]), "cnf", "formula")
    else:
        raise ConfigError("ksat needs --cnf or --random")

    compiled = compile_oracle(formula)
    profile = dependency_profile(compiled)
    writer.write_text(to_text(compiled.oracle_circuit()), "circ", "oracle")
    writer.write_json(compiled.to_manifest(), "manifest")

    schedule = resolve_schedule(config, formula.n) if config.schedule else None
    solution = solve_unique_sat(formula, config.x, schedule)
    writer.write_json({
        "num_vars": formula.n,
        "num_clauses": formula.num_clauses,
        "width": formula.width,
        "layout": compiled.layout.to_dict(),
        "D_u": compiled.D_u,
        "D_p": compiled.D_p,
        "gate_bound": compiled.gate_bound,
        "dependency": profile.to_dict(),
        "solution": solution.to_dict(),
    })
    return 0


# ----------------------------------------------------------------------
# BENCH
# ----------------------------------------------------------------------

def cmd_bench(config: RunConfig, seed: int, writer: ReportWriter) -> int:
    if config.n_range is not None:
        lo, hi = config.n_range
    elif config.n is not None:
        lo = hi = config.n
    else:
        raise ConfigError("bench needs --n-range or --n")
    mode = config.mode or "queries"

    rows = []
    violations = []
    for n in range(lo, hi + 1):
        template = plan_single_point(n, config.x, None, config.family)
        if mode == "queries":
            reference = optimal_reference(n)
            within = template.oracle_calls <= template.query_bound
            if not within:
                violations.append(n)
            rows.append((n, str(template.schedule), template.schedule.m, template.oracle_calls,
                         template.query_bound, reference, template.oracle_calls / reference, int(within)))
        else:
            basic = template.non_oracle_basic_gates
            rows.append((n, str(template.schedule), template.oracle_calls, len(template.circuit), basic,
                         basic / max(1, template.oracle_calls)))
    if mode == "queries":
        header = ["n", "schedule", "m", "oracle_calls", "query_bound", "reference", "ratio", "within_bound"]
    else:
        header = ["n", "schedule", "oracle_calls", "logical_gates", "basic_gates", "basic_per_query"]
    writer.write_csv(header, rows)
    writer.write_json({"mode": mode, "family": config.family, "x": config.x, "n_range": [lo, hi],
                       "bound_violations": violations})
    if violations:
        logger.error("query bound exceeded for n in %s", violations)
        return 1
    return 0


# ----------------------------------------------------------------------
# KERNEL-DIMS
# ----------------------------------------------------------------------

def cmd_kernel_dims(config: RunConfig, seed: int, writer: ReportWriter) -> int:
    if config.n is None or config.hash_k is None:
        raise ConfigError("kernel-dims needs --n and --hash-k")
    n, k = config.n, config.hash_k
    dist = kernel_dim_distribution(n, k, config.trials, make_rng(seed))
    writer.write_csv(["d", "count", "frequency", "ci_low", "ci_high"], dist.rows())
    threshold = n - k + 2
    freq, low, high = dist.tail(threshold)
    writer.write_json({
        "n": n,
        "k": k,
        "trials": config.trials,
        "large_kernel_threshold": threshold,
        "large_kernel_frequency": freq,
        "ci99": [low, high],
        "bound": SINGLE_TRIAL_BOUND,
    })
    if k < n - 2 and low > SINGLE_TRIAL_BOUND:
        logger.error("dim ker >= %d in %.4f of samples, CI lies above %g", threshold, freq, SINGLE_TRIAL_BOUND)
        return 1
    return 0


COMMANDS: Dict[str, Command] = {
    "generate": cmd_generate,
    "simulate": cmd_simulate,
    "recurrence": cmd_recurrence,
    "uncompute-rewrite": cmd_uncompute_rewrite,
    "multipoint": cmd_multipoint,
    "ksat": cmd_ksat,
    "bench": cmd_bench,
    "kernel-dims": cmd_kernel_dims,
}
