"""Command-line entry point: ``fracset <subcommand> ...``.

Reports go to stdout as JSON (default) or CSV. With ``--ledger PATH`` each
run is appended to a JSON Lines file that ``fracset replay`` can re-execute.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np

from fracset import constructions, divisors, exponents, fracstat, gaps, setcore
from fracset.setcore import IntegerSet

MAX_SAFE_INT = 2**53


def normalize(obj):
    """Make a report JSON-safe: big ints and fractions as strings, reals at 15 significant digits."""
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        v = int(obj)
        return str(v) if abs(v) > MAX_SAFE_INT else v
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return float(f"{v:.15g}") if math.isfinite(v) else str(v)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    return obj


# -- random set generators ---------------------------------------------------

def random_pair(rng: np.random.Generator, max_x: int) -> tuple[IntegerSet, IntegerSet]:
    """Bernoulli sets with random bounds and densities; retried until both are nonempty."""
    while True:
        X, Y = (int(v) for v in rng.integers(1, max_x + 1, size=2))
        alpha, beta = rng.uniform(0.02, 1.0, size=2)
        A = setcore.bernoulli_set(alpha, X, rng)
        B = setcore.bernoulli_set(beta, Y, rng)
        if len(A) and len(B):
            return A, B


def multiples_union(rng: np.random.Generator, X: int, n_divisors: int = 3, max_divisor: int = 12) -> IntegerSet:
    divs = sorted(set(int(d) for d in rng.integers(2, max_divisor + 1, size=n_divisors)))
    return setcore.multiples_of_any(divs, X)


# -- subcommands ------------------------------------------------------------

def fracstat_report(A: IntegerSet, B: IntegerSet) -> dict:
    X, Y = A.ambient_bound, B.ambient_bound
    alpha, beta = A.density(), B.density()
    table = fracstat.gcd_class_sizes(A, B)
    bound = exponents.prop21_lower_bound(alpha, beta, X, Y)
    return {
        "size_a": len(A),
        "size_b": len(B),
        "X": X,
        "Y": Y,
        "alpha": alpha,
        "beta": beta,
        "ratio_count": fracstat.ratio_count(A, B),
        "gcd_classes": table.to_json(),
        "prop21_lower_bound": bound,
        "sup_at_least_bound": table.sup_size >= bound,
    }


def cmd_fracstat(p: dict) -> dict:
    return fracstat_report(setcore.read_set_file(p["a"]), setcore.read_set_file(p["b"]))


def cmd_bound_check(p: dict) -> dict:
    rng = np.random.default_rng(p["seed"])
    rows = []
    for i in range(p["trials"]):
        if p["generator"] == "bernoulli":
            A, B = random_pair(rng, p["max_x"])
        else:
            X, Y = (int(v) for v in rng.integers(12, p["max_x"] + 1, size=2))
            A, B = multiples_union(rng, X), multiples_union(rng, Y)
        table = fracstat.gcd_class_sizes(A, B)
        bound = exponents.prop21_lower_bound(A.density(), B.density(), A.ambient_bound, B.ambient_bound)
        rows.append(
            {
                "trial": i,
                "X": A.ambient_bound,
                "Y": B.ambient_bound,
                "alpha": A.density(),
                "beta": B.density(),
                "partition_ok": table.check_partition(),
                "sup_d": table.sup_d,
                "sup_size": table.sup_size,
                "bound": bound,
                "holds": table.sup_size >= bound,
            }
        )
    return {
        "trials": len(rows),
        "failures": sum(not r["holds"] for r in rows),
        "partition_failures": sum(not r["partition_ok"] for r in rows),
        "min_margin": min(r["sup_size"] / r["bound"] for r in rows) if rows else None,
        "rows": rows,
    }


def cmd_divisor_moment(p: dict) -> dict:
    X, q, D = p["x"], p["q"], p["d"]
    total = divisors.tau_moment_sum(X, q, D)
    S = divisors.smooth_tau_moment(q, D, p["tol"])
    return {
        "X": X,
        "q": q,
        "D": D,
        "moment_sum": total,
        "S_q": S,
        "X_times_S_q": X * S,
        "within_X_S_q": total <= X * S,
        "ratio_to_DX": total / (D * X),
        "c_q_analytic": divisors.analytic_c_q(q),
        "mertens_product": divisors.mertens_product(D) if D >= 2 else 1.0,
    }


def cmd_exponent(p: dict) -> dict:
    trace = exponents.iterate_exponents(p["q"], p["tol"])
    out = trace.to_json()
    out["residual"] = abs(trace.deltas[-1] - trace.limit)
    return out


def cmd_constants(p: dict) -> dict:
    led = exponents.constant_ledger(p["C"], p["delta"], p["q"], p["c_q"], p["alpha"], p["beta"])
    out = led.to_json()
    out["defining_residual"] = exponents.defining_residual(led.C_prime, led.C, led.delta, led.q, led.c_q)
    out["identity_ratio"] = exponents.check_constant_identity(
        p["C"], p["delta"], p["q"], p["c_q"], p["alpha"], p["beta"]
    )
    return out


def _family(p: dict) -> constructions.PrimeFamily:
    if p.get("primes"):
        ps = [int(v) for v in p["primes"].split(",")]
        return constructions.PrimeFamily(tuple(ps), len(ps) // 2)
    return constructions.PrimeFamily.from_window(p["T"], p["m"])


def cmd_construct_t12(p: dict) -> dict:
    fam = _family(p)
    S = constructions.subset_products(fam)
    A = constructions.build_t12_set(fam, p["x"])
    counts = {
        "S_size": len(S),
        "ratio_set_count": constructions.ratio_set_count_exact(fam),
        "lemma31_coefficient": constructions.lemma31_bound(fam.m),
        "A_size": len(A),
        "empirical_alpha": len(A) / p["x"],
    }
    try:
        counts["alpha_exact"] = constructions.density_alpha_P(fam)
        counts["alpha_exact_float"] = float(counts["alpha_exact"])
    except ValueError:
        pass
    if fam.window is not None:
        counts["alpha_lower_bound"] = constructions.alpha_lower_bound(fam, fam.window[0])
    if p.get("ratio"):
        counts["A_ratio_count"] = fracstat.ratio_count(A, A)
    return {"family": fam.to_json(), "products": S, "counts": counts}


def cmd_construct_t13(p: dict) -> dict:
    t = constructions.build_t13(p["gamma"], p["x"], p["y"], p["selector"], p["seed"])
    out = t.to_json()
    out["seed"] = p["seed"]
    out["C_lower"] = p["gamma"] * p["x"] * p["y"] / 8
    out["frac_upper"] = p["gamma"] ** 2 * p["x"] * p["y"] / 2
    return out


def cmd_gap_find(p: dict) -> dict:
    if p.get("a") and p.get("b"):
        A, B = setcore.read_set_file(p["a"]), setcore.read_set_file(p["b"])
    elif p.get("h") and p.get("k"):
        A, B = gaps.multiples_window(p["h"], p["x"]), gaps.multiples_window(p["k"], p["y"])
    else:
        rng = np.random.default_rng(p["seed"])
        A = setcore.bernoulli_set(p["alpha"], p["x"], rng, lo=p["x"] // 2)
        B = setcore.bernoulli_set(p["beta"], p["y"], rng, lo=p["y"] // 2)
    cert = gaps.small_gap_certificate(A, B)
    out = cert.to_json()
    out["size_a"], out["size_b"] = len(A), len(B)
    return out


def cmd_primes(p: dict) -> dict:
    ps = setcore.primes_in_interval(p["lo"], p["hi"])
    out = {"lo": p["lo"], "hi": p["hi"], "count": len(ps)}
    if not p.get("count_only"):
        out["primes"] = ps
    return out


COMMANDS = {
    "fracstat": cmd_fracstat,
    "bound-check": cmd_bound_check,
    "divisor-moment": cmd_divisor_moment,
    "exponent": cmd_exponent,
    "constants": cmd_constants,
    "construct-t12": cmd_construct_t12,
    "construct-t13": cmd_construct_t13,
    "gap-find": cmd_gap_find,
    "primes": cmd_primes,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--ledger", type=Path, help="append an experiment record (JSON Lines)")

    parser = argparse.ArgumentParser(prog="fracset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fracstat", parents=[common], help="|A/B| and gcd classes of two set files")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)

    s = sub.add_parser("bound-check", parents=[common], help="sweep random pairs against (ab)^2 XY/8")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--max-x", type=int, default=2000)
    s.add_argument("--generator", choices=["bernoulli", "multiples-union"], default="bernoulli")
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("divisor-moment", parents=[common], help="sum of tau_D(n)^q and S(q)")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--tol", type=float, default=1e-12)

    s = sub.add_parser("exponent", parents=[common], help="iterate the admissible-exponent recursion")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--tol", type=float, default=1e-12)

    s = sub.add_parser("constants", parents=[common], help="solve C' and check the balancing identity")
    s.add_argument("--C", type=float, default=0.125)
    s.add_argument("--delta", type=float, default=2.0)
    s.add_argument("--q", type=int, default=4)
    s.add_argument("--c-q", type=float, default=24.0)
    s.add_argument("--alpha", type=float, default=0.5)
    s.add_argument("--beta", type=float, default=0.5)

    s = sub.add_parser("construct-t12", parents=[common], help="multiples of m-fold prime products")
    s.add_argument("--primes", help="comma-separated list of 2m primes")
    s.add_argument("--T", type=int, help="draw 2m primes from [T, T + T/m]")
    s.add_argument("--m", type=int)
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--ratio", action="store_true", help="also count |A/A| directly")

    s = sub.add_parser("construct-t13", parents=[common], help="dilated primitive-point set")
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--y", type=int, required=True)
    s.add_argument("--selector", choices=["lex", "shuffle"], default="lex")
    s.add_argument("--seed", type=int, default=None)

    s = sub.add_parser("gap-find", parents=[common], help="small-gap certificate in A.B")
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--h", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--alpha", type=float, default=0.5)
    s.add_argument("--beta", type=float, default=0.5)
    s.add_argument("--x", type=int, default=1000)
    s.add_argument("--y", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("primes", parents=[common], help="primes in [lo, hi]")
    s.add_argument("--lo", type=int, required=True)
    s.add_argument("--hi", type=int, required=True)
    s.add_argument("--count-only", action="store_true")

    s = sub.add_parser("replay", help="re-run a ledger record and compare outputs")
    s.add_argument("--ledger", type=Path, required=True)
    s.add_argument("--line", type=int, default=-1, help="record index (default: last)")
    return parser


def execute(command: str, params: dict) -> dict:
    return normalize(COMMANDS[command](params))


def make_record(command: str, params: dict, outputs: dict) -> dict:
    return {
        "command": command,
        "params": normalize(params),
        "outputs": outputs,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "seed": params.get("seed"),
    }


def append_record(path: Path, record: dict) -> None:
    line = json.dumps(record, separators=(",", ":"))
    with open(path, "a") as fh:
        fh.write(line + "\n")


def replay_record(record: dict) -> tuple[bool, dict]:
    outputs = execute(record["command"], record["params"])
    # compare through a JSON round trip, as stored
    return json.loads(json.dumps(outputs)) == record["outputs"], outputs


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    rows = report.get("rows")
    if not rows:
        rows = [{k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in report.items()}]
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "replay":
        lines = [ln for ln in args.ledger.read_text().splitlines() if ln.strip()]
        record = json.loads(lines[args.line])
        ok, outputs = replay_record(record)
        print(json.dumps({"command": record["command"], "reproduced": ok}, indent=2))
        return 0 if ok else 1

    params = {k: v for k, v in vars(args).items() if k not in ("command", "format", "ledger")}
    try:
        report = execute(args.command, params)
    except (ValueError, RuntimeError) as exc:
        print(f"fracset {args.command}: {exc}", file=sys.stderr)
        return 1
    if args.format == "csv":
        sys.stdout.write(to_csv(report))
    else:
        print(json.dumps(report, indent=2))
    if args.ledger is not None:
        append_record(args.ledger, make_record(args.command, params, report))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
