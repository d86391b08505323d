"""Named symbolic and numeric checks run by ``pseudonull verify``.

Every check returns a :class:`~pseudonull.reporting.Check`; the driver sorts
them by name so the report does not depend on execution order.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import geometry
from .diffalg import (
    DiffPoly,
    NotTotalDerivative,
    antiderivative,
    commutator,
    evolution_derivation,
    total_derivative,
    variational_derivative,
)
from .expr import parse
from .geometry import FrenetField, lie_bracket
from .golden import CORPUS, canonical_listing
from .hierarchy import generate_hierarchy, operator_flow, recursion_chain
from .reporting import Check, VerificationReport
from .sampling import (
    random_evolution_field,
    random_exact,
    random_non_exact,
    random_nonzero_poly,
    random_poly,
)

SYMBOLIC = "symbolic"
NUMERIC = "numeric"


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 20240601
    levels: int = 5
    workers: int = 1


_REGISTRY: dict[str, tuple[str, object]] = {}


def check(name: str, group: str):
    def register(fn):
        _REGISTRY[name] = (group, fn)
        return fn

    return register


def registered_checks(group: str | None = None) -> list[str]:
    return sorted(n for n, (g, _) in _REGISTRY.items() if group in (None, g))


def _fmt(p: DiffPoly) -> str:
    return p.format()


def _first_nonzero(pairs):
    for label, value in pairs:
        if value:
            return label, value
    return None, None


# ---------------------------------------------------------------- symbolic


@check("hierarchy_reproduction", SYMBOLIC)
def _hierarchy(cfg: VerifyConfig) -> Check:
    engine = [lvl.to_json() for lvl in generate_hierarchy(cfg.levels)]
    golden = canonical_listing(cfg.levels)
    mismatches = [
        {"n": e["n"], "key": key, "engine": e[key], "golden": g[key]}
        for e, g in zip(engine, golden)
        for key in ("field", "tau_flow", "k_flow")
        if e[key] != g[key]
    ]
    return Check("hierarchy_reproduction", not mismatches, len(mismatches), {"levels": cfg.levels, "mismatches": mismatches})


@check("hierarchy_commutation", SYMBOLIC)
def _commutation(cfg: VerifyConfig) -> Check:
    flows = [lvl.tau_flow for lvl in generate_hierarchy(6)]
    label, res = _first_nonzero(
        ((i, j), commutator(flows[i], flows[j])) for i in range(6) for j in range(i + 1, 6)
    )
    return Check("hierarchy_commutation", res is None, "0" if res is None else _fmt(res),
                 {"pairs": 15, "first_failure": label})


@check("hierarchy_lie_brackets", SYMBOLIC)
def _brackets(cfg: VerifyConfig) -> Check:
    fields = [lvl.field for lvl in generate_hierarchy(5)]
    label, res = _first_nonzero(
        ((i, j), not lie_bracket(fields[i], fields[j]).is_zero()) for i in range(5) for j in range(i + 1, 5)
    )
    return Check("hierarchy_lie_brackets", label is None, 0 if label is None else 1, {"pairs": 10, "first_failure": label})


@check("operator_flow_agreement", SYMBOLIC)
def _operator_flow(cfg: VerifyConfig) -> Check:
    t, t1, t2 = (DiffPoly.var(m) for m in range(3))
    samples = [t, t1, t**2, t * t1, t2 + t**3]
    rng = random.Random(cfg.seed)
    samples += [random_nonzero_poly(rng, max_degree=3, max_order=3) for _ in range(10)]
    failures = []
    for g in samples:
        lhs = geometry.torsion_variation(FrenetField(0, g, 0))
        if lhs != operator_flow(g):
            failures.append({"g": _fmt(g), "residual": _fmt(lhs - operator_flow(g))})
    return Check("operator_flow_agreement", not failures, len(failures), {"samples": len(samples), "failures": failures[:3]})


def _random_pairs(cfg: VerifyConfig, count: int = 20):
    rng = random.Random(cfg.seed + 1)
    return [(random_evolution_field(rng), random_evolution_field(rng), random_evolution_field(rng)) for _ in range(count)]


@check("bracket_homomorphism", SYMBOLIC)
def _homomorphism(cfg: VerifyConfig) -> Check:
    bad = 0
    for V1, V2, _ in _random_pairs(cfg):
        tv = geometry.torsion_variation
        lhs = tv(lie_bracket(V1, V2))
        rhs = commutator(tv(V1), tv(V2))
        bad += lhs != rhs
    return Check("bracket_homomorphism", bad == 0, bad, {"pairs": 20})


@check("bracket_jacobi", SYMBOLIC)
def _jacobi(cfg: VerifyConfig) -> Check:
    bad = 0
    for A, B, C in _random_pairs(cfg):
        total = lie_bracket(A, lie_bracket(B, C)) + lie_bracket(B, lie_bracket(C, A)) + lie_bracket(C, lie_bracket(A, B))
        bad += not total.is_zero()
    return Check("bracket_jacobi", bad == 0, bad, {"triples": 20})


@check("bracket_closure", SYMBOLIC)
def _closure(cfg: VerifyConfig) -> Check:
    bad = sum(not lie_bracket(V1, V2).is_evolution() for V1, V2, _ in _random_pairs(cfg))
    return Check("bracket_closure", bad == 0, bad, {"pairs": 20})


@check("curvature_identity", SYMBOLIC)
def _curvature(cfg: VerifyConfig) -> Check:
    bad = 0
    for V1, V2, _ in _random_pairs(cfg):
        for U in (FrenetField.T(), FrenetField.N(), FrenetField.B()):
            bad += not geometry.curvature_identity_check(V1, V2, U).is_zero()
    return Check("curvature_identity", bad == 0, bad, {"pairs": 20, "fields": ["T", "N", "B"]})


@check("recursion_chain_flat", SYMBOLIC)
def _chain(cfg: VerifyConfig) -> Check:
    chain = recursion_chain(DiffPoly.var(1), 5)
    flows = [lvl.tau_flow.substitute_G(0) for lvl in generate_hierarchy(6)]
    bad = [n for n, (a, b) in enumerate(zip(chain, flows)) if a != b]
    return Check("recursion_chain_flat", not bad, len(bad), {"steps": 5, "mismatched_levels": bad})


@check("antiderivative_oracle", SYMBOLIC)
def _antiderivative(cfg: VerifyConfig) -> Check:
    rng = random.Random(cfg.seed + 2)
    wrong = 0
    for _ in range(100):
        q, dq = random_exact(rng, max_degree=4, max_order=4)
        wrong += antiderivative(dq) != q
    missed = 0
    for _ in range(100):
        p = random_non_exact(rng, max_degree=4, max_order=4)
        try:
            antiderivative(p)
            missed += 1
        except NotTotalDerivative:
            pass
    return Check("antiderivative_oracle", wrong == 0 and missed == 0, wrong + missed,
                 {"roundtrip_failures": wrong, "undetected_non_exact": missed})


@check("flows_are_total_derivatives", SYMBOLIC)
def _exact_flows(cfg: VerifyConfig) -> Check:
    bad = []
    for lvl in generate_hierarchy(cfg.levels):
        try:
            if total_derivative(antiderivative(lvl.tau_flow)) != lvl.tau_flow:
                bad.append(lvl.n)
        except NotTotalDerivative:
            bad.append(lvl.n)
    return Check("flows_are_total_derivatives", not bad, len(bad), {"levels": cfg.levels, "failed": bad})


@check("derivation_identities", SYMBOLIC)
def _identities(cfg: VerifyConfig) -> Check:
    rng = random.Random(cfg.seed + 3)
    counts = {"leibniz": 0, "commutes_with_D": 0, "commutator_bracket": 0, "jacobi": 0, "euler_kills_D": 0}
    for _ in range(15):
        a, b, c = (random_poly(rng, max_degree=2, max_order=2, terms=3, constant=True) for _ in range(3))
        p, q = (random_poly(rng, max_degree=3, max_order=2, terms=3, constant=True) for _ in range(2))
        counts["leibniz"] += evolution_derivation(a, p * q) != evolution_derivation(a, p) * q + p * evolution_derivation(a, q)
        counts["commutes_with_D"] += evolution_derivation(a, total_derivative(p)) != total_derivative(evolution_derivation(a, p))
        lhs = evolution_derivation(a, evolution_derivation(b, p)) - evolution_derivation(b, evolution_derivation(a, p))
        counts["commutator_bracket"] += lhs != evolution_derivation(commutator(a, b), p)
        jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
        counts["jacobi"] += not jac.is_zero()
        counts["euler_kills_D"] += not variational_derivative(total_derivative(p)).is_zero()
    bad = sum(counts.values())
    return Check("derivation_identities", bad == 0, bad, {"samples": 15, "failures": counts})


@check("parse_roundtrip", SYMBOLIC)
def _roundtrip(cfg: VerifyConfig) -> Check:
    bad = []
    for text in CORPUS:
        once = parse(text).format()
        if parse(once).format() != once or parse(once) != parse(text):
            bad.append(text)
    return Check("parse_roundtrip", not bad, len(bad), {"corpus": len(CORPUS), "failures": bad})


# ---------------------------------------------------------------- numeric


def _hopf_cole_error(count: int, dt: float) -> float:
    from .numerics import SampledField, hopf_cole, solve_burgers, solve_heat

    k0 = SampledField.from_function(lambda s: 2 + np.cos(s), 0.0, 2 * math.pi, count)
    heat = solve_heat(k0, 0.0, 0.5, dt)
    burgers = solve_burgers(hopf_cole(k0), 0.5, dt)
    return float(np.max(np.abs(hopf_cole(heat.final()).values - burgers.final().values)))


@check("hopf_cole_consistency", NUMERIC)
def _hopf_cole(cfg: VerifyConfig) -> Check:
    coarse = _hopf_cole_error(256, 1e-4)
    fine = _hopf_cole_error(512, 2.5e-5)
    ratio = coarse / fine
    return Check("hopf_cole_consistency", coarse <= 5e-4 and ratio >= 3.5, coarse,
                 {"error_256": coarse, "error_512": fine, "ratio": ratio})


def _sine_torsion(step: float, length: float = 10.0):
    from .numerics import SampledField

    return SampledField.from_function(np.sin, 0.0, length, int(round(length / step)) + 1, periodic=False)


@check("reconstruction_self_convergence", NUMERIC)
def _reconstruction_order(cfg: VerifyConfig) -> Check:
    from .numerics import reconstruct_curve

    H = 0.04
    tau = _sine_torsion(H)
    runs = [reconstruct_curve(tau, h=H / 2**j).data for j in range(4)]
    diffs = [float(np.max(np.abs(runs[j] - runs[j + 1]))) for j in range(3)]
    ratios = [diffs[j] / diffs[j + 1] for j in range(2)]
    ok = all(12.0 <= r <= 20.0 for r in ratios)
    return Check("reconstruction_self_convergence", ok, min(ratios), {"grid_step": H, "differences": diffs, "ratios": ratios})


def _gram_run():
    from .numerics import reconstruct_curve

    tau = _sine_torsion(4e-3)
    return tau, reconstruct_curve(tau, h=1e-3)


@check("reconstruction_gram_drift", NUMERIC)
def _gram(cfg: VerifyConfig) -> Check:
    from .numerics.frames import max_gram_residual

    _, curve = _gram_run()
    drift = max_gram_residual(curve.data, curve.metric)
    return Check("reconstruction_gram_drift", drift <= 1e-8, drift, {"h": 1e-3, "tolerance": 1e-8})


@check("cylinder_invariants", NUMERIC)
def _cylinder(cfg: VerifyConfig) -> Check:
    from .numerics import cylinder_check, inverse_hopf_cole

    tau, curve = _gram_run()
    rep = cylinder_check(curve, inverse_hopf_cole(tau, 1.0))
    return Check("cylinder_invariants", rep.ok(1e-6), max(rep.parallelism, rep.hyperplane),
                 {"parallelism": rep.parallelism, "hyperplane": rep.hyperplane, "tolerance": 1e-6})


def filament_quotient_errors(count: int = 256, dt: float = 1e-4, T_end: float = 0.1,
                             lags=(1e-3, 1e-4), G: float = 0.0) -> list[float]:
    """``max_s |(gamma(T) - gamma(T - lag)) / lag - N(T - lag)|`` for each lag."""
    from .numerics import AmbientMetric, FrameState, SampledField, evolve_filament, reconstruct_curve

    tau0 = SampledField.from_function(lambda s: 0.5 * np.sin(s), 0.0, 2 * math.pi, count)
    run = evolve_filament(tau0, G, T_end, dt, save_every=1, reconstruct=False)
    metric = AmbientMetric(G)

    def curve(i):
        return reconstruct_curve(run.fields[i], metric, FrameState.from_array(run.anchors[i]), tol=1e-8)

    last = curve(len(run.fields) - 1)
    out = []
    for lag in lags:
        i = run.at(T_end - lag)
        prev = curve(i)
        quotient = (last.gamma - prev.gamma) / lag
        out.append(float(np.max(np.abs(quotient - prev.N))))
    return out


@check("filament_consistency", NUMERIC)
def _filament(cfg: VerifyConfig) -> Check:
    coarse, fine = filament_quotient_errors()
    ratio = coarse / fine
    return Check("filament_consistency", coarse <= 1e-2 and ratio >= 8, coarse,
                 {"error_lag_1e-3": coarse, "error_lag_1e-4": fine, "ratio": ratio})


def burgers_gauge_residuals(counts=(32, 64, 128, 256), a: float = 1.0, b: float = 4.0, T_end: float = 0.2) -> list[float]:
    """Residual of the gauged Burgers equation on successively refined grids."""
    from .numerics import EvolutionRun, SampledField, burgers_gauge_check, solve_viscous_burgers

    out = []
    for n in counts:
        u0 = SampledField.from_function(np.sin, 0.0, 2 * math.pi, n)
        nsteps = math.ceil(T_end / (0.1 * u0.step**2))
        dt = T_end / nsteps
        run = solve_viscous_burgers(u0, T_end, dt, save_every=1)
        tail = EvolutionRun(dt, dt * np.arange(3), run.fields[-3:])
        out.append(burgers_gauge_check(tail, a, b)["max_residual"])
    return out


@check("burgers_gauge_order", NUMERIC)
def _burgers_gauge(cfg: VerifyConfig) -> Check:
    res = burgers_gauge_residuals()
    orders = [math.log2(res[i] / res[i + 1]) for i in range(len(res) - 1)]
    return Check("burgers_gauge_order", min(orders) >= 1.8, res[-1], {"residuals": res, "observed_orders": orders})


@check("heat_gauge", NUMERIC)
def _heat_gauge(cfg: VerifyConfig) -> Check:
    from .numerics import SampledField, heat_gauge_check

    k0 = SampledField.from_function(lambda s: 2 + np.cos(s), 0.0, 2 * math.pi, 128)
    rep = heat_gauge_check(k0, 1.0, 0.7, 0.5, 5e-4)
    return Check("heat_gauge", rep["relative_error"] <= 1e-12, rep["relative_error"], rep)


# ---------------------------------------------------------------- driver


def _safe(name: str, fn, cfg: VerifyConfig, group: str) -> Check:
    try:
        result = fn(cfg)
    except Exception as exc:  # a crashing check is a failing check
        result = Check(name, False, f"{type(exc).__name__}: {exc}", {})
    result.group = group
    return result


def run_verify_all(filter: str | None = None, config: VerifyConfig | None = None) -> VerificationReport:
    """Run every registered check, or only one group (``"symbolic"``/``"numeric"``)."""
    if filter not in (None, SYMBOLIC, NUMERIC):
        raise ValueError(f"unknown filter {filter!r}")
    cfg = config or VerifyConfig()
    names = registered_checks(filter)
    jobs = [(n, _REGISTRY[n][1], _REGISTRY[n][0]) for n in names]
    report = VerificationReport()
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            for c in pool.map(lambda j: _safe(j[0], j[1], cfg, j[2]), jobs):
                report.add(c)
    else:
        for n, fn, g in jobs:
            report.add(_safe(n, fn, cfg, g))
    return report
