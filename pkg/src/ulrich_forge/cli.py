"""``ulrich-forge`` command line.

Exit codes: 0 success / verdict true, 1 verdict false or verify mismatch,
2 bad input, 3 pair not admissible, 4 degenerate map, 5 malformed certificate.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .cohomology import line_bundle_cohomology
from .forge import (
    CERTIFICATE_FIELDS,
    ConstructionKind,
    NotAdmissibleError,
    Status,
    UlrichCertificate,
    certify,
)
from .gfp import DEFAULT_PRIME
from .numerics import (
    chi_twist,
    coker_exponents,
    enumerate_admissible_c1,
    is_admissible_pair,
    ker_exponents,
    monad_exponents,
    special_class,
)
from .picard import Divisor, check_very_ample

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_NOT_ADMISSIBLE, EXIT_DEGENERATE, EXIT_SCHEMA = range(6)

SEED_ENV = "ULRICH_FORGE_SEED"
CSV_COLUMNS = ["e", "a", "b", "r", "alpha", "beta", "kind", "trials", "successes", "skipped", "failure_seeds"]


class InputError(ValueError):
    pass


def _ints(text: str, n: int | None = None, name: str = "value") -> list[int]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"cannot parse {name} {text!r}: expected comma-separated integers") from None
    if n is not None and len(vals) != n:
        raise InputError(f"{name} needs {n} comma-separated integers, got {text!r}")
    return vals


def m2_to_divisor(e: int, dc0: int, df: int) -> Divisor:
    """(D.C0, D.f) -> alpha C0 + beta f."""
    return Divisor(df, dc0 + e * df)


def _read_c1(args) -> Divisor:
    x, y = _ints(args.c1, 2, "--c1")
    return m2_to_divisor(args.e, x, y) if args.m2_convention else Divisor(x, y)


def _read_h(args) -> tuple[int, int]:
    a, b = _ints(args.h, 2, "--h")
    check_very_ample(args.e, (a, b))
    return a, b


def _table(headers, rows) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


# --- pairs / exponents / cohomology -------------------------------------------


def _exponent_record(e, h, r, c1) -> dict:
    rec = {
        "c1": list(c1),
        "admissible": is_admissible_pair(e, h, r, c1),
        "coker": dict(zip(("gamma", "delta", "tau"), coker_exponents(e, h, r, c1))),
        "ker": dict(zip(("lambda", "mu", "nu"), ker_exponents(e, h, r, c1))),
        "monad": dict(zip(("eps", "zeta", "eta", "theta"), monad_exponents(e, h, r, c1))) if h[0] > 1 else None,
        "chi_minus_h": chi_twist(e, h, r, c1, Divisor(-h[0], -h[1])),
        "chi_minus_2h": chi_twist(e, h, r, c1, Divisor(-2 * h[0], -2 * h[1])),
    }
    return rec


def cmd_pairs(args) -> int:
    h = _read_h(args)
    classes = enumerate_admissible_c1(args.e, h, args.r)
    special = special_class(args.e, h, args.r)
    recs = []
    for c1 in classes:
        rec = _exponent_record(args.e, h, args.r, c1)
        rec["special"] = c1 == special
        recs.append(rec)
    if args.json:
        print(json.dumps({"e": args.e, "h": list(h), "r": args.r, "classes": recs}, indent=2))
        return EXIT_OK
    print(f"X_{args.e}, h={h}, r={args.r}: {len(classes)} admissible class(es)")
    if recs:
        rows = [
            [f"({c['c1'][0]},{c['c1'][1]})", *c["coker"].values(), *c["ker"].values(), "*" if c["special"] else ""]
            for c in recs
        ]
        print(_table(["c1", "gamma", "delta", "tau", "lambda", "mu", "nu", "special"], rows))
    return EXIT_OK


def cmd_exponents(args) -> int:
    h = _read_h(args)
    c1 = _read_c1(args)
    rec = _exponent_record(args.e, h, args.r, c1)
    if args.json:
        print(json.dumps(rec, indent=2))
    else:
        print(f"c1 = {c1}  admissible = {rec['admissible']}")
        for key in ("coker", "ker", "monad"):
            if rec[key] is not None:
                print(f"{key:>6}: " + "  ".join(f"{k}={v}" for k, v in rec[key].items()))
        print(f"chi(E(-h)) = {rec['chi_minus_h']}  chi(E(-2h)) = {rec['chi_minus_2h']}")
    return EXIT_OK if rec["admissible"] else EXIT_NOT_ADMISSIBLE


def _range(text: str) -> range:
    lo, hi = _ints(text.replace(":", ","), 2, "range")
    return range(lo, hi + 1)


def cmd_cohomology(args) -> int:
    if args.D:
        divisors = [Divisor(*_ints(d, 2, "--D")) for d in args.D]
    else:
        divisors = [Divisor(t, s) for t in _range(args.t_range) for s in _range(args.s_range)]
    rows = []
    for D in divisors:
        c = line_bundle_cohomology(args.e, D)
        rows.append([D.alpha, D.beta, c.h0, c.h1, c.h2, c.euler])
    if args.json:
        keys = ("t", "s", "h0", "h1", "h2", "chi")
        print(json.dumps([dict(zip(keys, r)) for r in rows], indent=2))
    else:
        print(_table(["t", "s", "h0", "h1", "h2", "chi"], rows))
    return EXIT_OK


# --- construct / verify -------------------------------------------------------


def _status_exit(cert: UlrichCertificate) -> int:
    if cert.status == Status.DEGENERATE_MAP.value:
        return EXIT_DEGENERATE
    return EXIT_OK if cert.verdict else EXIT_FALSE


def _construction_arg(text: str | None) -> str:
    if text is None:
        return "random"
    d, u = text.split(",") if "," in text else (text, "")
    try:
        dv, uv = int(d.split("=")[1]), int(u.split("=")[1])
    except (IndexError, ValueError):
        raise InputError(f"--counterexample expects d=<int>,u=<int>, got {text!r}") from None
    return f"counterexample:d={dv},u={uv}"


def cmd_construct(args) -> int:
    h = _read_h(args)
    c1 = _read_c1(args)
    construction = _construction_arg(args.counterexample)
    kind = args.kind or ("cokernel" if construction != "random" else "kernel")
    try:
        cert = certify(args.e, h, args.r, c1, kind, args.p, args.seed, args.samples, construction)
    except NotAdmissibleError as exc:
        print(f"NOT_ADMISSIBLE: {exc}", file=sys.stderr)
        return EXIT_NOT_ADMISSIBLE
    text = cert.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(
        f"{cert.status}: {cert.exact_check_name} = {cert.exact_check_value}, verdict = {str(cert.verdict).lower()}",
        file=sys.stderr,
    )
    return _status_exit(cert)


def _schema_ok(data) -> bool:
    if not isinstance(data, dict) or set(data) != set(CERTIFICATE_FIELDS):
        return False
    try:
        return (
            all(isinstance(data[k], int) for k in ("e", "r", "p", "seed", "n_samples"))
            and len(data["h"]) == 2
            and len(data["c1"]) == 2
            and isinstance(data["probe"], dict)
            and isinstance(data["exponents"], dict)
            and isinstance(data["verdict"], bool)
        )
    except TypeError:
        return False


def cmd_verify(args) -> int:
    try:
        with open(args.certificate) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    if not _schema_ok(data):
        print("schema error: certificate fields do not match", file=sys.stderr)
        return EXIT_SCHEMA
    try:
        fresh = certify(
            data["e"], tuple(data["h"]), data["r"], tuple(data["c1"]), data["kind"], data["p"],
            data["seed"], data["n_samples"], data["construction"],
        )
    except (ValueError, NotAdmissibleError) as exc:
        print(f"mismatch: recomputation failed: {exc}", file=sys.stderr)
        return EXIT_FALSE
    expected = json.loads(fresh.to_json())
    diffs = sorted(k for k in CERTIFICATE_FIELDS if expected[k] != data[k])
    for k in diffs:
        shown = "<matrix>" if k == "matrix" else None
        print(f"  {k}: stored={shown or json.dumps(data[k])} recomputed={shown or json.dumps(expected[k])}", file=sys.stderr)
    if diffs:
        print(f"mismatch in {len(diffs)} field(s)", file=sys.stderr)
        return EXIT_FALSE
    print("ok")
    return EXIT_OK


# --- sweep --------------------------------------------------------------------


def trial_seed(master: int, cell_index: int, trial: int) -> int:
    return int(np.random.SeedSequence([master, cell_index, trial]).generate_state(1)[0])


def _parse_cell(text: str) -> dict:
    v = _ints(text, None, "--cell")
    if len(v) not in (4, 6):
        raise InputError(f"--cell expects e,a,b,r or e,a,b,r,alpha,beta, got {text!r}")
    cell = {"e": v[0], "a": v[1], "b": v[2], "r": v[3]}
    if len(v) == 6:
        cell["c1"] = [v[4], v[5]]
    return cell


def _expand_cells(cells: list[dict], kinds: list[str]) -> list[dict]:
    """One task per (cell, c1, kind), sorted by key; cells without c1 expand to all admissible classes."""
    tasks = []
    for cell in cells:
        e, a, b, r = (int(cell[k]) for k in ("e", "a", "b", "r"))
        base = {"e": e, "a": a, "b": b, "r": r}
        try:
            check_very_ample(e, (a, b))
        except ValueError as exc:
            c1 = cell.get("c1") or [None, None]
            tasks += [{**base, "alpha": c1[0], "beta": c1[1], "kind": k, "note": str(exc)} for k in kinds]
            continue
        if "c1" in cell:
            c1s = [Divisor(*cell["c1"])]
        else:
            c1s = enumerate_admissible_c1(e, (a, b), r)
            if not c1s:
                tasks += [{**base, "alpha": None, "beta": None, "kind": k, "note": "no admissible classes"} for k in kinds]
        for c1 in c1s:
            note = "" if is_admissible_pair(e, (a, b), r, c1) else "not admissible"
            tasks += [{**base, "alpha": c1.alpha, "beta": c1.beta, "kind": k, "note": note} for k in kinds]
    key = lambda t: (t["e"], t["a"], t["b"], t["r"], t["alpha"] is None, t["alpha"] or 0, t["beta"] or 0, t["kind"])
    uniq = {key(t): t for t in tasks}
    return [uniq[k] for k in sorted(uniq)]


def _run_task(job) -> dict:
    index, task, trials, master, p, samples = job
    row = {k: task[k] for k in ("e", "a", "b", "r", "alpha", "beta", "kind")}
    if task["note"]:
        return {**row, "trials": 0, "successes": 0, "skipped": task["note"], "failure_seeds": ""}
    ok, failed = 0, []
    try:
        for t in range(trials):
            seed = trial_seed(master, index, t)
            cert = certify(task["e"], (task["a"], task["b"]), task["r"], (task["alpha"], task["beta"]),
                           task["kind"], p, seed, samples)
            if cert.verdict:
                ok += 1
            else:
                failed.append(str(seed))
    except Exception as exc:  # recorded, the sweep goes on
        return {**row, "trials": 0, "successes": 0, "skipped": f"error: {exc}", "failure_seeds": ""}
    return {**row, "trials": trials, "successes": ok, "skipped": "", "failure_seeds": ";".join(failed)}


def run_sweep(cells: list[dict], kinds: list[str], trials: int, master: int, p: int = DEFAULT_PRIME,
              samples: int = 200, jobs: int = 1) -> list[dict]:
    tasks = _expand_cells(cells, kinds)
    work = [(i, t, trials, master, p, samples) for i, t in enumerate(tasks)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_task, work))
    else:
        rows = [_run_task(w) for w in work]
    return rows


def sweep_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: ("" if row[k] is None else row[k]) for k in CSV_COLUMNS})
    return buf.getvalue()


def cmd_sweep(args) -> int:
    cells = [_parse_cell(c) for c in args.cell or []]
    if args.grid:
        with open(args.grid) as fh:
            cells += json.load(fh)
    kinds = [ConstructionKind(k.strip()).value for k in args.kinds.split(",") if k.strip()]
    master = int(os.environ[SEED_ENV]) if os.environ.get(SEED_ENV) else args.seed
    rows = run_sweep(cells, kinds, args.trials, master, args.p, args.samples, args.jobs)
    text = sweep_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for row in rows:
        if row["trials"]:
            print(f"{row['e']},{row['a']},{row['b']},{row['r']} c1=({row['alpha']},{row['beta']}) "
                  f"{row['kind']}: {row['successes']}/{row['trials']}", file=sys.stderr)
    return EXIT_OK


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ulrich-forge", description="Ulrich bundles on Hirzebruch surfaces.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def surface(p, need_h=True):
        p.add_argument("--e", type=int, required=True, help="Hirzebruch invariant e >= 0")
        if need_h:
            p.add_argument("--h", required=True, help="polarization a,b meaning aC0+bf")

    def c1(p):
        p.add_argument("--c1", required=True, help="first Chern class alpha,beta meaning alpha C0 + beta f")
        p.add_argument("--m2-convention", action="store_true",
                       help="read --c1 as (D.C0, D.f), the Macaulay2 chart convention")

    p = sub.add_parser("pairs", help="list admissible first Chern classes")
    surface(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("exponents", help="resolution and monad exponents for one class")
    surface(p)
    p.add_argument("--r", type=int, required=True)
    c1(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("cohomology", help="line bundle cohomology table")
    surface(p, need_h=False)
    p.add_argument("--D", action="append", help="divisor t,s (repeatable)")
    p.add_argument("--t-range", default="-3:3")
    p.add_argument("--s-range", default="-3:3")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("construct", help="build one presentation and certify it")
    surface(p)
    p.add_argument("--r", type=int, required=True)
    c1(p)
    p.add_argument("--kind", choices=[k.value for k in ConstructionKind])
    p.add_argument("--p", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200, help="pointwise rank probe samples")
    p.add_argument("--counterexample", help="d=<int>,u=<int>: use the block-diagonal map on (X_0, O(d,d))")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sweep", help="Monte Carlo success rates over a grid")
    p.add_argument("--cell", action="append", help="e,a,b,r[,alpha,beta] (repeatable)")
    p.add_argument("--grid", help="JSON list of {e,a,b,r[,c1]} objects")
    p.add_argument("--kinds", default="kernel,cokernel")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help=f"master seed (overridden by ${SEED_ENV})")
    p.add_argument("--p", type=int, default=DEFAULT_PRIME)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="recompute a stored certificate and diff it")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
