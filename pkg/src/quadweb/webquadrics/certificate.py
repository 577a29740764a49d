"""End-to-end analysis of a web: run every check over one or more primes and assemble a JSON-ready certificate."""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

from quadweb import __version__
from quadweb.exactnum import QQ, PrimeField, random_prime
from quadweb.groebner.engine import Deadline, GroebnerTimeout
from quadweb.webquadrics import discriminant as disc
from quadweb.webquadrics import fibers, numerics, offplane, plane, quintic
from quadweb.webquadrics.web import Web, matrix_identities, validate_web

SCHEMA_VERSION = 1
PRIME_BITS = 62
SHAPE_RETRIES = 3

INTERSECTION_TABLES = [
    {"name": "(H - S)^3", "table": [16, 1, -3, -1], "combo": [1, -1], "expected": 5},
    {"name": "H^3", "table": [16, 1, -3, -1], "combo": [1, 0], "expected": 16},
    {"name": "(3H1 - S1)^3", "table": [5, 6, -2, -47], "combo": [3, -1], "expected": 2},
]


@dataclass
class Options:
    mode: str = "auto"  # auto | prime | rational
    prime: int | None = None
    seed: int = 0
    timeout: float | None = 600.0
    run_charts: bool = True
    fibers: bool = True
    progress: Callable[[str], None] | None = None


@dataclass
class PrimeRun:
    """Everything computed over one prime, plus a comparable signature."""

    p: int
    data: dict
    signature: tuple
    times: dict[str, float] = dc_field(default_factory=dict)
    witness_quartics: list = dc_field(default_factory=list)  # (line, [coeffs mod p])


class _Clock:
    def __init__(self, progress):
        self.times: dict[str, float] = {}
        self.progress = progress

    def run(self, name, fn, *args, **kw):
        if self.progress:
            self.progress(name)
        t = time.perf_counter()
        try:
            return fn(*args, **kw)
        finally:
            self.times[name] = round(time.perf_counter() - t, 3)


def _deadline(opts: Options):
    return Deadline(opts.timeout) if opts.timeout else None


def _signed(F, v):
    return F.to_signed(v) if isinstance(F, PrimeField) else str(v)


def run_prime(matrices, p: int, opts: Options, chart_route: bool) -> PrimeRun:
    F = PrimeField(p)
    web = Web(matrices, F)
    clock = _Clock(opts.progress)
    seed = opts.seed
    data: dict = {}

    # on the plane
    locus = None
    for attempt in range(SHAPE_RETRIES):
        try:
            locus = clock.run("sing_on_plane", plane.sing_on_plane, web, seed + attempt, _deadline(opts))
        except GroebnerTimeout:
            locus = None
            break
        if locus.scheme is None or locus.scheme.shape is not None:
            break
    nodes = clock.run("nodes_on_plane", _guard, plane.check_nodes_on_plane, web, seed, _deadline(opts))
    s = locus.scheme if locus else None
    data["on_plane"] = {
        "count": s.points if s else None,
        "length": s.length if s else None,
        "profile": s.profile_pairs() if s else None,
        "dimension": locus.dimension if locus else None,
        "nodes_length": nodes[1] if nodes else None,
        "timed_out": locus is None,
    }

    a2 = clock.run("a2", _guard, plane.check_a2, web, locus, seed, _deadline(opts)) if locus else None
    witnesses = []
    if a2:
        for w in a2.witnesses:
            witnesses.append((tuple(F.to_signed(c) for c in w.line), [c for c in w.quartic], w.line_coordinates))
    data["a2"] = {
        "holds": a2.holds if a2 else None,
        "note": a2.note if a2 else "timed out",
        "witness_lines": [{"line": list(l), "points_on_line": w.points_on_line, "coordinates": list(c)}
                          for (l, _, c), w in zip(witnesses, a2.witnesses if a2 else [])],
    }

    a3 = clock.run("a3", _guard, quintic.check_a3, web, seed, _deadline(opts))
    data["a3"] = {"holds": a3.holds if a3 else None, "count": a3.count if a3 else None,
                  "length": a3.length if a3 else None, "dimension": a3.dimension if a3 else None}
    if a3 and a3.count is not None:
        lhs, rhs, ok = numerics.quintic_euler_identity(a3.count)
        data["euler_quintic"] = {"lhs": lhs, "rhs": rhs, "holds": ok, "nodes": a3.count}

    clock.run("quintic", quintic.quintic, web)
    data["quintic"] = {"degree": 5, "laplace_identity": True}
    bord = clock.run("bordiga", _guard, quintic.bordiga, web, seed, _deadline(opts))
    if bord:
        b = bord[1]
        data["bordiga"] = {"projective_dimension": b.projective_dimension, "degree": b.degree,
                           "smooth": b.smooth, "quintic_in_ideal": b.quintic_in_ideal,
                           "rank_a_at_samples": sorted(set(b.rank_two_samples)),
                           "samples": len(b.rank_two_samples)}
    else:
        data["bordiga"] = None

    r2 = clock.run("rank2_locus", _guard, quintic.rank2_locus, web, seed, _deadline(opts))
    data["rank2_locus"] = {"count": r2.count if r2 else None, "dimension": r2.dimension if r2 else None,
                           "rank_le1_empty": r2.rank_le1_empty if r2 else None}
    if opts.fibers and r2 and r2.scheme is not None:
        data["fibers"] = clock.run("fibers", _fibers_at, web, r2.scheme, seed)

    a4 = clock.run("a4", _guard, disc.check_a4, web, _deadline(opts))
    data["a4"] = {"holds": a4.holds if a4 else None,
                  "projective_dimension": a4.projective_dimension if a4 else None}
    report = None
    if a4 and a4.holds:
        try:
            report = clock.run("discriminant", disc.classify_discriminant, web, seed, _deadline(opts))
        except GroebnerTimeout:
            report = None
        except disc.DiscriminantInconsistency as exc:
            data["discriminant_error"] = str(exc)
    if report:
        data["discriminant"] = _report_dict(report)

    off = offplane.OffPlaneResult()
    if report:
        off.kernel_route = clock.run("offplane_kernel", offplane.kernel_route, web, report, _deadline(opts))
    if chart_route:
        off.chart_route = clock.run("offplane_charts", offplane.chart_route, web, _deadline(opts), off)
    try:
        off_status = off.status
    except offplane.RouteDisagreement as exc:
        off_status = offplane.INCONCLUSIVE
        data["offplane_error"] = str(exc)
    data["a1"] = {"on_plane_count": data["on_plane"]["count"],
                  "on_plane_reduced": bool(s) and s.is_reduced(),
                  "off_plane": off_status, "kernel_route": off.kernel_route, "chart_route": off.chart_route,
                  "charts_done": off.charts_done}

    sig = _signature(data)
    return PrimeRun(p, data, sig, clock.times, witnesses)


def _guard(fn, *args):
    try:
        return fn(*args)
    except GroebnerTimeout:
        return None


def _fibers_at(web: Web, scheme, seed: int) -> dict:
    out = {"points": [], "type_counts": {}}
    for orb in scheme.orbits or []:
        r = fibers.fiber_type(web, orb.coords, seed, field=orb.field)
        entry = {"orbit_degree": orb.degree, "rank_q": r.rank_q, "rank_B": r.rank_B, "type": r.type,
                 "factor_degrees": r.factor_degrees}
        if orb.degree == 1:
            entry["y"] = [web.field.to_signed(c) for c in orb.coords]
        out["points"].append(entry)
        out["type_counts"][r.type] = out["type_counts"].get(r.type, 0) + orb.degree
    out["points"].sort(key=lambda e: (e["orbit_degree"], e["rank_q"], e.get("y", [])))
    return out


def _report_dict(report: disc.DiscriminantReport) -> dict:
    orbits = []
    for o in report.orbits:
        entry = {"orbit_degree": o.degree, "rank_q": o.rank_q, "rank_B": o.rank_B, "label": o.label,
                 "tjurina": o.tjurina, "contained": o.contained, "meets_plane": o.meets_plane}
        if o.degree == 1:
            F = o.field
            entry["y"] = [F.to_signed(c) for c in o.point]
        orbits.append(entry)
    orbits.sort(key=lambda e: (e["rank_q"], e["orbit_degree"], e["label"], e.get("y", [])))
    scheme = report.scheme
    return {
        "singular_points": report.point_count,
        "tjurina_total_length": scheme.length,
        "profile": scheme.profile_pairs(),
        "labels": dict(sorted(report.label_counts().items())),
        "ranks": {str(k): v for k, v in sorted(report.rank_counts().items())},
        "budget": disc.budget_summary(report),
        "non_A_points": sum(o.degree for o in report.orbits if o.label not in disc.ADE_LABELS),
        "orbits": orbits,
    }


def _signature(data: dict) -> tuple:
    """The prime-independent part of a run, used for the agreement policy."""
    d = data.get("discriminant") or {}
    fib = data.get("fibers") or {}
    return (
        repr(data["on_plane"]), repr(data["a2"]["holds"]),
        repr([(w["line"], w["points_on_line"]) for w in data["a2"]["witness_lines"]]),
        repr(data["a3"]), repr(data["bordiga"]), repr(data["rank2_locus"]), repr(data["a4"]),
        repr((d.get("singular_points"), d.get("profile"), d.get("labels"), d.get("ranks"), d.get("budget"))),
        repr(data["a1"]["off_plane"]), repr(fib.get("type_counts")),
    )


# -- rational reconstruction of the witness quartic --------------------------------------------


def rational_reconstruct(a: int, m: int):
    """``(n, d)`` with ``n/d = a mod m``, ``|n|, d <= sqrt(m/2)``; None if no such pair exists."""
    from math import gcd, isqrt

    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return (r1, s1) if s1 > 0 else (-r1, -s1)


def _crt(residues: list[int], moduli: list[int]) -> tuple[int, int]:
    x, m = 0, 1
    for r, p in zip(residues, moduli):
        t = ((r - x) * pow(m, -1, p)) % p
        x, m = x + m * t, m * p
    return x, m


def integer_quartic(runs: list[PrimeRun], line: list[int]) -> list[int] | None:
    """Primitive integer coefficients of the witness quartic, lifted from all primes that produced it."""
    from fractions import Fraction
    from math import gcd, lcm

    rows, primes = [], []
    for run in runs:
        for l, coeffs, _ in run.witness_quartics:
            if list(l) == list(line):
                rows.append(coeffs)
                primes.append(run.p)
    if not rows or len({len(r) for r in rows}) != 1:
        return None
    fracs = []
    for k in range(len(rows[0])):
        x, m = _crt([r[k] for r in rows], primes)
        nd = rational_reconstruct(x, m)
        if nd is None:
            return None
        fracs.append(Fraction(*nd))
    den = lcm(*(f.denominator for f in fracs))
    ints = [int(f * den) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g else ints


# -- the pipeline ----------------------------------------------------------------------------------


def _choose_primes(opts: Options, k: int, start: int = 0) -> list[int]:
    if opts.mode == "prime":
        return [opts.prime]
    out: list[int] = []
    i = start
    while len(out) < k:
        p = random_prime(PRIME_BITS, f"{opts.seed}-{i}")
        i += 1
        if p not in out:
            out.append(p)
    return out


def analyze(matrices, opts: Options | None = None) -> dict:
    """Validate, run all checks, apply the two-prime agreement policy and return the certificate dict."""
    opts = opts or Options()
    mats = validate_web(matrices)
    t0 = time.perf_counter()
    identities = matrix_identities(Web(mats, QQ))
    runs: list[PrimeRun] = []
    if opts.mode == "prime":
        runs.append(run_prime(mats, opts.prime, opts, opts.run_charts))
        agreed, policy = runs[0], "single prime"
    else:
        p1, p2 = _choose_primes(opts, 2)
        runs.append(run_prime(mats, p1, opts, opts.run_charts))
        runs.append(run_prime(mats, p2, opts, False))
        if runs[0].signature == runs[1].signature:
            agreed, policy = runs[0], "two primes agree"
        else:
            p3 = _choose_primes(opts, 1, start=2)[0]
            runs.append(run_prime(mats, p3, opts, False))
            match = [r for r in runs[:2] if r.signature == runs[2].signature]
            agreed = match[0] if match else None
            policy = "third prime broke the tie" if match else "no two primes agree"

    rational = None
    if opts.mode == "rational":
        rational = _rational_on_plane(mats, opts.seed)

    cert = _assemble(mats, opts, identities, runs, agreed, policy, rational)
    cert["volatile"]["wall_time_total"] = round(time.perf_counter() - t0, 3)
    return cert


def _rational_on_plane(mats, seed: int) -> dict:
    web = Web(mats, QQ)
    locus = plane.sing_on_plane(web, seed)
    s = locus.scheme
    ok, length = plane.check_nodes_on_plane(web, seed)
    return {"count": s.points if s else None, "length": s.length if s else None,
            "profile": s.profile_pairs() if s else None, "nodes_length": length, "field": "QQ"}


def _verdicts(data: dict | None, rational: dict | None) -> dict:
    if data is None:
        return {k: {"holds": None, "status": "inconclusive"} for k in ("a1", "a2", "a3", "a4")}
    a1 = dict(data["a1"])
    on = rational if rational else data["on_plane"]
    on_ok = on["count"] == plane.EXPECTED_ON_PLANE and on["length"] == plane.EXPECTED_ON_PLANE
    a1["on_plane_count"] = on["count"]
    if a1["off_plane"] == offplane.SINGULAR or (not on_ok and not on.get("timed_out")):
        a1["holds"] = False
    elif not on_ok:
        a1["holds"] = None
    elif a1["off_plane"] == offplane.CERTIFIED:
        a1["holds"] = True
    else:
        a1["holds"] = None
    out = {"a1": a1, "a2": dict(data["a2"]), "a3": dict(data["a3"]), "a4": dict(data["a4"])}
    for v in out.values():
        v["status"] = {True: "holds", False: "fails", None: "inconclusive"}[v["holds"]]
    return out


def _assemble(mats, opts, identities, runs, agreed, policy, rational) -> dict:
    data = agreed.data if agreed else None
    primes = [r.p for r in runs]
    agreeing = [r.p for r in runs if agreed and r.signature == agreed.signature]
    verdicts = _verdicts(data, rational)
    if data:
        for w in verdicts["a2"]["witness_lines"]:
            w["quartic_integer"] = integer_quartic([r for r in runs if r.p in agreeing], w["line"])
            w["quartic_mod_p"] = {str(r.p): [r_c for r_c in _quartic_for(r, w["line"])] for r in runs
                                  if r.p in agreeing}
    enum = numerics.contracted_class_enum()
    cert = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "quadweb", "version": __version__},
        "input": {"matrices": mats, "seed": opts.seed},
        "field": {"mode": opts.mode, "primes": primes, "agreeing_primes": agreeing, "policy": policy},
        "verdicts": verdicts,
        "identities": identities,
        "counts_from_primes": agreeing,
    }
    if rational:
        cert["rational_on_plane"] = rational
        cert["field"]["note"] = "on-plane counts exact over QQ; all other stages modular"
    if data:
        cert["on_plane"] = data["on_plane"]
        cert["quintic"] = data["quintic"]
        cert["bordiga"] = data["bordiga"]
        cert["rank2_locus"] = data["rank2_locus"]
        cert["fibers_at_rank2_points"] = data.get("fibers")
        cert["discriminant"] = data.get("discriminant")
        if "euler_quintic" in data:
            cert["euler_quintic"] = data["euler_quintic"]
        for key in ("discriminant_error", "offplane_error"):
            if key in data:
                cert[key] = data[key]
    cert["constants"] = dict(numerics.CONSTANTS, source="recorded constants of the small resolution, not computed")
    cert["intersection_numbers"] = [
        dict(t, value=numerics.intersection_numbers(t["table"], tuple(t["combo"])),
             holds=numerics.intersection_numbers(t["table"], tuple(t["combo"])) == t["expected"])
        for t in INTERSECTION_TABLES
    ]
    cert["contracted_classes"] = [
        {"case": c.case, "d": c.d, "m": c.multiplicity_string(), "n_sum": c.n_sum, "class": c.class_string(),
         "note": c.note} for c in enum
    ]
    cert["summary"] = summary_line(verdicts)
    cert["volatile"] = {
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "stage_times": {str(r.p): r.times for r in runs},
    }
    return cert


def _quartic_for(run: PrimeRun, line) -> list[int]:
    for l, coeffs, _ in run.witness_quartics:
        if list(l) == list(line):
            return [int(c) for c in coeffs]
    return []


def summary_line(verdicts: dict) -> str:
    return ", ".join(f"{k} {v['status']}" for k, v in verdicts.items())


def exit_code(cert: dict) -> int:
    states = [v["holds"] for v in cert["verdicts"].values()]
    if any(s is False for s in states):
        return 2
    if any(s is None for s in states):
        return 3
    return 0
