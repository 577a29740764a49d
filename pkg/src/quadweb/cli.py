"""Command-line front end: ``analyze``, ``search``, ``fiber`` and ``enum-contracted``."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

from quadweb.exactnum import QQ, PrimeField, random_prime
from quadweb.groebner.engine import Deadline, GroebnerTimeout
from quadweb.webquadrics import certificate as certmod
from quadweb.webquadrics import fibers, numerics, plane, quintic
from quadweb.webquadrics import discriminant as disc
from quadweb.webquadrics.web import Web, WebError, random_web_matrices, validate_web

EXIT_OK, EXIT_INPUT, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2, 3
DEFAULT_TIMEOUT = 600.0
INT64 = 1 << 63


class InputError(ValueError):
    pass


def default_timeout() -> float:
    env = os.environ.get("QUADWEB_TIMEOUT")
    if env:
        try:
            return float(env)
        except ValueError:
            raise InputError(f"QUADWEB_TIMEOUT must be a number of seconds, got {env!r}")
    return DEFAULT_TIMEOUT


# -- input files ------------------------------------------------------------------------------------


def load_web_file(path: str | Path) -> dict:
    """Parse a web input file; every error message names the offending position."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})")
    if isinstance(doc, list):
        doc = {"matrices": doc}
    if not isinstance(doc, dict) or "matrices" not in doc:
        raise InputError(f"{path}: expected an object with a 'matrices' entry")
    mats = doc["matrices"]
    if not isinstance(mats, list) or len(mats) != 4:
        raise InputError(f"{path}: matrices: expected a list of 4 matrices")
    for k, M in enumerate(mats):
        if not isinstance(M, list) or len(M) != 8:
            raise InputError(f"{path}: matrices[{k}]: expected 8 rows")
        for i, row in enumerate(M):
            if not isinstance(row, list) or len(row) != 8:
                raise InputError(f"{path}: matrices[{k}][{i}]: expected 8 entries")
            for j, a in enumerate(row):
                if isinstance(a, bool) or not isinstance(a, int):
                    raise InputError(f"{path}: matrices[{k}][{i}][{j}]: expected an integer, got {a!r}")
                if not -INT64 <= a < INT64:
                    raise InputError(f"{path}: matrices[{k}][{i}][{j}]: integer exceeds 64-bit range")
    try:
        validate_web(mats)
    except WebError as exc:
        raise InputError(f"{path}: " + "; ".join(exc.problems))
    return {"matrices": mats, "field": _parse_field(doc.get("field", "auto"), path),
            "seed": doc.get("seed", 0), "description": doc.get("description", "")}


def _parse_field(directive, path) -> tuple[str, int | None]:
    if directive in ("auto", None) or directive == {"prime": "auto"}:
        return "auto", None
    if directive == "rational":
        return "rational", None
    if isinstance(directive, dict) and isinstance(directive.get("prime"), int):
        return "prime", directive["prime"]
    raise InputError(f"{path}: field: expected 'auto', 'rational' or {{\"prime\": p}}, got {directive!r}")


def _prime_arg(value: str) -> tuple[str, int | None]:
    if value == "auto":
        return "auto", None
    try:
        p = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--prime expects 'auto' or an integer, got {value!r}")
    try:
        PrimeField(p)
    except ArithmeticError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return "prime", p


# -- analyze ------------------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    doc = load_web_file(args.file)
    mode, p = doc["field"]
    if args.rational:
        mode, p = "rational", None
    elif args.prime is not None:
        mode, p = args.prime
    seed = args.seed if args.seed is not None else doc["seed"]
    timeout = args.timeout if args.timeout is not None else default_timeout()
    progress = (lambda s: print(f"[{time.strftime('%H:%M:%S')}] {s}", file=sys.stderr)) if args.verbose else None
    opts = certmod.Options(mode=mode, prime=p, seed=seed, timeout=timeout, progress=progress)
    cert = certmod.analyze(doc["matrices"], opts)
    text = json.dumps(cert, indent=1) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(cert["summary"], file=sys.stderr)
    return certmod.exit_code(cert)


# -- search -------------------------------------------------------------------------------------


Sampler = Callable[[random.Random, int], list]


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"quadweb-search-{seed}-{trial}")


def cheap_filter(matrices, p: int, seed: int = 0, timeout: float | None = None) -> str | None:
    """Run the inexpensive checks in order; return the first failing stage or None if all pass."""
    try:
        validate_web(matrices)
    except WebError:
        return "validate"
    web = Web(matrices, PrimeField(p))
    dl = Deadline(timeout) if timeout else None
    try:
        locus = plane.sing_on_plane(web, seed, dl)
        s = locus.scheme
        if s is None or s.points != plane.EXPECTED_ON_PLANE or not s.is_reduced():
            return "on_plane"
        if plane.check_a2(web, locus, seed, dl).holds is not True:
            return "a2"
        if not quintic.check_a3(web, seed, dl).holds:
            return "a3"
        if not disc.check_a4(web, dl).holds:
            return "a4"
    except GroebnerTimeout:
        return "timeout"
    return None


def _trial(task) -> tuple[int, list, str | None]:
    trial, seed, bound, sampler, p, timeout = task
    mats = sampler(trial_rng(seed, trial), bound)
    return trial, mats, cheap_filter(mats, p, seed, timeout)


def _comparable(cert: dict) -> str:
    return json.dumps({k: v for k, v in cert.items() if k != "volatile"}, sort_keys=True)


def run_search(trials: int, out_dir: str | Path, seed: int = 0, entry_bound: int = 4, jobs: int = 1,
               sampler: Sampler = random_web_matrices, timeout: float | None = None,
               log: Callable[[str], None] = lambda s: None) -> dict:
    """Sample random webs, filter cheaply, fully analyze survivors, persist verified compliant webs."""
    if trials < 1:
        raise InputError("--trials must be at least 1")
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".quadweb-write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise InputError(f"{out}: output directory is not writable ({exc.strerror})")
    p = random_prime(certmod.PRIME_BITS, f"search-{seed}")
    tasks = [(t, seed, entry_bound, sampler, p, timeout) for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_trial, tasks))
    else:
        results = [_trial(t) for t in tasks]
    rejected: dict[str, int] = {}
    found = []
    for trial, mats, stage in results:
        if stage is not None:
            rejected[stage] = rejected.get(stage, 0) + 1
            log(f"trial {trial}: rejected at {stage}")
            continue
        log(f"trial {trial}: passed cheap checks, running full analysis")
        opts = certmod.Options(seed=seed, timeout=timeout)
        cert = certmod.analyze(mats, opts)
        if certmod.exit_code(cert) != EXIT_OK:
            rejected["full_analysis"] = rejected.get("full_analysis", 0) + 1
            continue
        stamp = time.strftime("%Y%m%dT%H%M%S", time.gmtime())
        stem = f"web-{stamp}-s{seed}-t{trial}"
        web_path, cert_path = out / f"{stem}.json", out / f"{stem}.cert.json"
        tmp_web, tmp_cert = web_path.with_suffix(".tmp"), cert_path.with_suffix(".tmp")
        tmp_web.write_text(json.dumps({"description": f"search seed {seed} trial {trial}", "field": "auto",
                                       "seed": seed, "matrices": mats}) + "\n")
        tmp_cert.write_text(json.dumps(cert, indent=1) + "\n")
        # write-then-verify: re-read both files and re-run the analysis from disk
        reloaded = load_web_file(tmp_web)
        again = certmod.analyze(reloaded["matrices"], opts)
        stored = json.loads(tmp_cert.read_text())
        if _comparable(again) != _comparable(stored):
            tmp_web.unlink()
            tmp_cert.unlink()
            rejected["verify"] = rejected.get("verify", 0) + 1
            log(f"trial {trial}: re-analysis disagrees with the stored certificate; discarded")
            continue
        tmp_web.rename(web_path)
        tmp_cert.rename(cert_path)
        d = cert.get("discriminant") or {}
        found.append({"trial": trial, "file": str(web_path), "certificate": str(cert_path),
                      "singular_points": d.get("singular_points"),
                      "sum_tau_plus_1": (d.get("budget") or {}).get("sum_tau_plus_1"),
                      "all_A1": d.get("labels") == {disc.A1: d.get("singular_points")}})
    summary = {"trials": trials, "seed": seed, "entry_bound": entry_bound, "filter_prime": p,
               "found": found, "rejected": dict(sorted(rejected.items()))}
    (out / f"search-summary-s{seed}.json").write_text(json.dumps(summary, indent=1) + "\n")
    return summary


def cmd_search(args) -> int:
    timeout = args.timeout if args.timeout is not None else default_timeout()
    summary = run_search(args.trials, args.out_dir, args.seed, args.entry_bound, args.jobs, timeout=timeout,
                         log=(lambda s: print(s, file=sys.stderr)) if args.verbose else (lambda s: None))
    print(f"{len(summary['found'])} compliant web(s) found in {args.trials} trial(s)")
    for f in summary["found"]:
        print(f"  {f['file']}: {f['singular_points']} singular points on S8, sum(tau+1) = {f['sum_tau_plus_1']}")
    return EXIT_OK


# -- fiber --------------------------------------------------------------------------------------


def _parse_y(text: str) -> list[int]:
    try:
        y = [int(v) for v in text.split(",")]
    except ValueError:
        raise InputError(f"--y expects four comma-separated integers, got {text!r}")
    if len(y) != 4:
        raise InputError(f"--y expects four integers, got {len(y)}")
    if not any(y):
        raise InputError("--y must be a nonzero point of P3")
    return y


def cmd_fiber(args) -> int:
    doc = load_web_file(args.file)
    y = _parse_y(args.y)
    exact = fibers.fiber_type(Web(doc["matrices"], QQ), y)
    print(f"type {exact.type} (rank Q = {exact.rank_q}, rank B = {exact.rank_B}): {exact.description}")
    if exact.type == "a":
        p = random_prime(certmod.PRIME_BITS, f"{doc['seed']}-0")
        modular = fibers.fiber_type(Web(doc["matrices"], PrimeField(p)), y)
        if modular.factor_degrees is not None:
            print(f"plane cubic factor degrees over F_p (p = {p}): {modular.factor_degrees}")
    return EXIT_OK


# -- enum-contracted ------------------------------------------------------------------------


def format_contracted_table() -> str:
    lines = ["case  d  m          sum n  class"]
    for c in numerics.contracted_class_enum():
        lines.append(f"({c.case})   {c.d}  {c.multiplicity_string():<10} {c.n_sum:<6} {c.class_string()}")
        if c.note:
            lines.append(f"         note: {c.note}")
    return "\n".join(lines) + "\n"


def cmd_enum_contracted(args) -> int:
    sys.stdout.write(format_contracted_table())
    return EXIT_OK


# -- entry point ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadweb", description="Check webs of quadrics through a plane.")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run every check on one web and write a certificate")
    a.add_argument("file")
    grp = a.add_mutually_exclusive_group()
    grp.add_argument("--prime", type=_prime_arg, help="'auto' (two random 62-bit primes) or a fixed prime")
    grp.add_argument("--rational", action="store_true", help="exact on-plane counts over QQ")
    a.add_argument("--timeout", type=float, help="seconds per Groebner stage (default: $QUADWEB_TIMEOUT or 600)")
    a.add_argument("--out", help="certificate path (default: stdout)")
    a.add_argument("--seed", type=int)
    a.add_argument("-v", "--verbose", action="store_true")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("search", help="sample random webs and keep the compliant ones")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--entry-bound", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out-dir", required=True)
    s.add_argument("--timeout", type=float)
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_search)

    f = sub.add_parser("fiber", help="fiber type of the conic bundle over a point y")
    f.add_argument("file")
    f.add_argument("--y", required=True, help="four comma-separated integers")
    f.set_defaults(func=cmd_fiber)

    e = sub.add_parser("enum-contracted", help="list the contracted curve classes")
    e.set_defaults(func=cmd_enum_contracted)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
