"""Command-line front door.

Subcommands mirror the library modules: sieve stats, moment reports,
extremal-set construction, elliptic-curve statistics, Romanoff-type density
reports, the analytic-lemma suite, and a deterministic verify-all battery.
JSON output is sorted and newline-terminated so identical invocations are
byte-identical; large tabular outputs (profiles, order sequences) use CSV.

Exit codes: 0 success, 2 parameter/usage errors, 3 capacity or budget errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass

from . import elliptic as ell
from . import extremal as ext
from . import lemmas as lem
from . import moments as mom
from . import romanoff as rom
from . import sequences as seq
from . import verify
from .errors import CapacityError, DomainError, ParameterError
from .sieve import (
    PrimeList,
    build_sieve,
    chebyshev_theta,
    factorize_trial,
    mertens_products,
)

DEFAULT_SIEVE_LIMIT = 10**7
DEFAULT_PRIME_LIMIT = 10**7
CACHE_ENV_VAR = "ROMANOFF_LAB_CACHE"


@dataclass
class RunConfig:
    sieve_limit: int = DEFAULT_SIEVE_LIMIT
    prime_limit: int = DEFAULT_PRIME_LIMIT
    budget: int = rom.DEFAULT_PAIR_BUDGET
    output: str | None = None
    format: str = "json"
    seed: int = 0
    threads: int = 1

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            sieve_limit=args.sieve_limit,
            prime_limit=args.prime_limit,
            budget=args.budget,
            output=args.out,
            format=args.format,
            seed=args.seed,
            threads=args.threads,
        )

    def make_sieve(self, needed: float):
        needed_int = max(math.ceil(needed), 2)
        if needed_int > self.sieve_limit:
            raise CapacityError(
                f"this run needs a sieve of size {needed_int}, above the "
                f"--sieve-limit cap {self.sieve_limit}"
            )
        cache = os.environ.get(CACHE_ENV_VAR)
        return build_sieve(needed_int, cache_dir=cache)

    def make_primes(self, needed: float) -> PrimeList:
        needed_int = max(math.ceil(needed), 2)
        if needed_int > self.prime_limit:
            raise CapacityError(
                f"this run needs primes up to {needed_int}, above the "
                f"--prime-limit cap {self.prime_limit}"
            )
        return PrimeList.build(needed_int)


def _emit_json(config: RunConfig, payload) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(config: RunConfig, writer) -> None:
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="") as fh:
            writer(fh)
    else:
        writer(sys.stdout)


def _parse_curve(text: str) -> ell.EllipticCurve:
    a_text, _, b_text = text.partition(",")
    return ell.EllipticCurve(int(a_text), int(b_text))


def _format_curve(curve: ell.EllipticCurve) -> str:
    return f"{curve.A},{curve.B}"


def _parse_int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v != ""]


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_sieve(config: RunConfig, args: argparse.Namespace) -> None:
    limit = args.limit
    primes = config.make_primes(limit)
    x = args.x if args.x is not None else float(limit)
    theta = chebyshev_theta(x, primes)
    mert = mertens_products(x, primes)
    _emit_json(
        config,
        {
            "limit": limit,
            "x": x,
            "pi": primes.count_leq(x),
            "theta": theta,
            "theta_over_x": theta / x,
            "mertens": {
                "plus_product": mert.plus_product,
                "minus_product": mert.minus_product,
                "plus_over_log": mert.plus_over_log,
                "minus_over_log": mert.minus_over_log,
            },
        },
    )


def _cmd_moments(config: RunConfig, args: argparse.Namespace) -> None:
    if args.report == "theorem1":
        if args.seq is None:
            raise ParameterError("--report theorem1 needs --seq")
        spec = seq.parse_sequence_spec(args.seq)
        x = args.x
        needs_primes = isinstance(spec, seq.EllipticOrders)
        primes = (
            config.make_primes(x + 2 * math.sqrt(x) + 2) if needs_primes else None
        )
        values = seq.enumerate_terms(spec, x, primes)
        if not values:
            raise DomainError(f"sequence has no terms <= {x}")
        sieve = config.make_sieve(max(values))
        M = args.M if args.M is not None else float(x)
        report = mom.theorem1_report(values, args.s, args.alpha, M, sieve)
        payload = dataclasses.asdict(report)
        payload["parameters"]["sequence"] = seq.format_sequence_spec(spec)
        _emit_json(config, {"report": "theorem1", "moment": payload})
    elif args.report == "poly":
        if args.poly is None:
            raise ParameterError("--report poly needs --poly")
        poly = mom.PolynomialSpec.from_descending(_parse_int_list(args.poly))
        half = math.floor(args.z)
        peak = max(
            (abs(poly.evaluate(n)) for n in range(-half, half + 1)),
            default=0,
        )
        sieve = config.make_sieve(max(peak, 2))
        report = mom.poly_moment_report(poly, args.z, args.s, sieve)
        _emit_json(config, {"report": "poly", "moment": dataclasses.asdict(report)})
    elif args.report == "linear":
        if args.a is None or args.bs is None:
            raise ParameterError("--report linear needs --a and --bs")
        shifts = _parse_int_list(args.bs)
        half = math.floor(args.z)
        excluded = set(shifts)
        peak = max(
            (
                mom.delta_L(args.a, b, shifts)
                for b in range(-half, half + 1)
                if b not in excluded
            ),
            default=0,
        )
        sieve = config.make_sieve(max(peak, args.a, 2))
        x = args.x if args.x is not None else float(max(args.z, 3))
        report = mom.delta_moment_report(
            args.a, shifts, args.z, args.s, x, sieve
        )
        _emit_json(config, {"report": "linear", "moment": dataclasses.asdict(report)})
    else:
        raise ParameterError(f"unknown moments report {args.report!r}")


def _cmd_extremal(config: RunConfig, args: argparse.Namespace) -> None:
    sieve = config.make_sieve(args.M)
    if args.alphas:
        alphas = [float(v) for v in args.alphas.split(",")]
        entries = ext.alpha_sweep(args.M, alphas, sieve)
        _emit_json(
            config,
            {
                "report": "alpha_sweep",
                "M": args.M,
                "entries": [dataclasses.asdict(e) for e in entries],
            },
        )
        return
    if args.y is None or args.z is None:
        raise ParameterError("extremal needs either --alphas or both --y/--z")
    result = ext.construct_extremal_set(args.M, args.y, args.z, sieve)
    payload = {
        "report": "extremal",
        "M": result.M,
        "y": result.y,
        "z": result.z,
        "Q": result.Q,
        "count": result.count,
        "empty": result.is_empty,
        "mean_ratio": float(result.mean_ratio) if result.mean_ratio is not None else None,
        "member_min": result.members[0] if result.members else None,
        "member_max": result.members[-1] if result.members else None,
    }
    _emit_json(config, payload)


def _cmd_elliptic(config: RunConfig, args: argparse.Namespace) -> None:
    curve = _parse_curve(args.curve)
    x = args.x
    if x < 2:
        raise ParameterError(f"--x must be >= 2, got {x}")
    primes = config.make_primes(x)
    orders = ell.order_sequence(curve, x, primes, threads=config.threads)
    if args.report == "orders":
        _emit_csv(config, orders.write_csv)
        return
    sieve = config.make_sieve(int(1 + 2 * x))
    report = ell.theorem5_report(
        curve, x, args.s, sieve, primes, orders=orders
    )
    margin = min(
        2.0 * math.sqrt(p) - abs(order - (p + 1)) for p, order in orders.entries
    )
    payload = {
        "report": "theorem5",
        "curve": _format_curve(curve),
        "moment": dataclasses.asdict(report),
        "hasse_min_margin": margin,
    }
    if args.census_mod:
        t = args.census_mod
        census = ell.congruence_class_census(curve, x, t, primes, orders=orders)
        pi_x = len(orders.entries)
        phi_t = 1
        for p, e in factorize_trial(t):
            phi_t *= (p - 1) * p ** (e - 1)
        payload["census"] = {str(a): count for a, count in census.items()}
        payload["census_modulus"] = t
        # equidistribution baseline the residue counts are tabulated against
        payload["census_pi_over_phi_t"] = pi_x / phi_t
    _emit_json(config, payload)


def _cmd_romanoff(config: RunConfig, args: argparse.Namespace) -> None:
    report = args.report
    if report in ("frontier", "profile"):
        if args.seq is None:
            raise ParameterError(f"--report {report} needs --seq")
        spec = seq.parse_sequence_spec(args.seq)
        x = args.x
        needed = (
            x + 2 * math.sqrt(x) + 2
            if isinstance(spec, seq.EllipticOrders)
            else x
        )
        primes = config.make_primes(needed)
        if report == "profile":
            profile = rom.representation_counts(
                spec, x, primes, budget=config.budget
            )
            _emit_csv(config, profile.write_csv)
            return
        estimates = rom.theorem6_report(
            spec, x, args.alpha, primes, budget=config.budget
        )
        _emit_json(
            config,
            {
                "report": "frontier",
                "sequence": seq.format_sequence_spec(spec),
                "x": x,
                "alpha": args.alpha,
                "estimates": [dataclasses.asdict(e) for e in estimates],
            },
        )
    elif report == "theorem9":
        primes = config.make_primes(args.x)
        estimates = rom.theorem9_report(
            args.a, args.b, args.x, primes, budget=config.budget
        )
        _emit_json(
            config,
            {
                "report": "theorem9",
                "estimates": [dataclasses.asdict(e) for e in estimates],
            },
        )
    elif report == "schnirelmann":
        primes = config.make_primes(args.x + args.a)
        out = rom.schnirelmann_pi2(args.x, args.a, primes)
        _emit_json(
            config,
            {
                "report": "schnirelmann",
                "x": args.x,
                "a": args.a,
                "count": out.count,
                "normalized": out.normalized,
            },
        )
    elif report == "order-sum":
        primes = config.make_primes(args.P)
        sieve = config.make_sieve(max(2, args.P))
        value = rom.order_weighted_sum(args.a, args.b, args.P, primes, sieve)
        _emit_json(
            config,
            {
                "report": "order-sum",
                "a": args.a,
                "b": args.b,
                "P": args.P,
                "value": value,
            },
        )
    elif report == "order-dist":
        dist = rom.order_distribution(args.a, args.z, args.trial_cap)
        _emit_json(
            config,
            {
                "report": "order-dist",
                "a": dist.a,
                "z": dist.z,
                "trial_cap": dist.trial_cap,
                "D": dist.total,
                "normalized": dist.normalized,
                "all_exact": dist.all_exact,
                "entries": [dataclasses.asdict(e) for e in dist.entries],
            },
        )
    else:
        raise ParameterError(f"unknown romanoff report {report!r}")


def _cmd_lemmas(config: RunConfig, args: argparse.Namespace) -> None:
    records = []
    if args.gamma:
        xs = [1.0 + 0.25 * i for i in range(int((args.x_max - 1.0) / 0.25) + 1)]
        for s in range(1, args.s_max + 1):
            worst = 0.0
            ok = True
            for x in xs:
                gv = lem.incomplete_gamma(s, x)
                ratio = gv.value / gv.bound
                worst = max(worst, ratio)
                ok = ok and gv.value <= gv.bound
            records.append(
                {
                    "lemma": "gamma_bound",
                    "parameters": {"s": s, "x_min": 1.0, "x_max": args.x_max, "step": 0.25},
                    "witness_value": worst,
                    "bound": 1.0,
                    "pass": ok,
                }
            )
    if args.prime_sums:
        primes = config.make_primes(args.tail_limit)
        for k in (2, 10, 100, 1000):
            for s in (1, 2, 3):
                out = lem.prime_log_power_sums(k, s, primes, args.tail_limit)
                records.append(
                    {
                        "lemma": "prime_log_power_sums",
                        "parameters": {"k": k, "s": s, "tail_limit": args.tail_limit},
                        "witness_value": out.head_ratio,
                        "bound": None,
                        "pass": math.isfinite(out.head_ratio)
                        and math.isfinite(out.tail_ratio),
                    }
                )
    if args.min_pk:
        primes = config.make_primes(args.tail_limit)
        for k in (1, 2, 10, 100):
            for s in (1, 2, 3):
                out = lem.min_pk_sum(k, s, primes, args.tail_limit)
                records.append(
                    {
                        "lemma": "min_pk_sum",
                        "parameters": {"k": k, "s": s, "tail_limit": args.tail_limit},
                        "witness_value": out.normalized,
                        "bound": None,
                        "pass": math.isfinite(out.normalized) and out.normalized > 0,
                    }
                )
    if args.abel:
        import random

        rng = random.Random(config.seed)
        worst = 0.0
        ok = True
        for _ in range(20):
            n = rng.randint(1, 80)
            weights = [rng.uniform(-3, 3) for _ in range(n)]
            for kind in ("reciprocal", "reciprocal_square"):
                direct, abel = lem.abel_check(weights, kind)
                deviation = abs(direct - abel) - 1e-9 * abs(direct)
                worst = max(worst, deviation)
                ok = ok and deviation <= 1e-12
        records.append(
            {
                "lemma": "abel_identity",
                "parameters": {"vectors": 20, "seed": config.seed},
                "witness_value": worst,
                "bound": 1e-12,
                "pass": ok,
            }
        )
    if not records:
        raise ParameterError(
            "lemmas needs at least one of --gamma/--prime-sums/--min-pk/--abel"
        )
    _emit_json(config, {"report": "lemmas", "records": records})


def _cmd_verify_all(config: RunConfig, args: argparse.Namespace) -> None:
    report = verify.verify_all(seed=config.seed)
    _emit_json(config, report)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sieve-limit", type=int, default=DEFAULT_SIEVE_LIMIT)
    common.add_argument("--prime-limit", type=int, default=DEFAULT_PRIME_LIMIT)
    common.add_argument("--budget", type=int, default=rom.DEFAULT_PAIR_BUDGET)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)

    parser = argparse.ArgumentParser(
        prog="romanoff-lab",
        description="Desk-scale computations for totient-ratio moment sums "
        "and Romanoff-type representation counts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", parents=[common], help="prime table statistics")
    p.add_argument("--limit", type=int, default=10**6)
    p.add_argument("--x", type=float, default=None)
    p.set_defaults(handler=_cmd_sieve)

    p = sub.add_parser("moments", parents=[common], help="moment-sum reports")
    p.add_argument("--report", choices=("theorem1", "poly", "linear"), default="theorem1")
    p.add_argument("--seq", default=None)
    p.add_argument("--x", type=int, default=1000)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--M", type=float, default=None)
    p.add_argument("--poly", default=None, help="coefficients a_k,...,a_0")
    p.add_argument("--z", type=float, default=100.0)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--bs", default=None, help="comma-separated shifts b_i")
    p.set_defaults(handler=_cmd_moments)

    p = sub.add_parser("extremal", parents=[common], help="extremal-set construction")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--alphas", default=None, help="comma-separated alpha sweep")
    p.set_defaults(handler=_cmd_extremal)

    p = sub.add_parser("elliptic", parents=[common], help="curve order statistics")
    p.add_argument("--curve", required=True, help="A,B")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--census-mod", type=int, default=None)
    p.add_argument("--report", choices=("theorem5", "orders"), default="theorem5")
    p.set_defaults(handler=_cmd_elliptic)

    p = sub.add_parser("romanoff", parents=[common], help="representation-count reports")
    p.add_argument(
        "--report",
        choices=(
            "frontier",
            "profile",
            "theorem9",
            "schnirelmann",
            "order-sum",
            "order-dist",
        ),
        default="frontier",
    )
    p.add_argument("--seq", default=None)
    p.add_argument("--x", type=int, default=2**16)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--P", type=float, default=10**4)
    p.add_argument("--z", type=int, default=20)
    p.add_argument("--trial-cap", type=int, default=10**5)
    p.set_defaults(handler=_cmd_romanoff)

    p = sub.add_parser("lemmas", parents=[common], help="analytic lemma suite")
    p.add_argument("--gamma", action="store_true")
    p.add_argument("--s-max", type=int, default=12)
    p.add_argument("--x-max", type=float, default=50.0)
    p.add_argument("--prime-sums", action="store_true")
    p.add_argument("--min-pk", action="store_true")
    p.add_argument("--abel", action="store_true")
    p.add_argument("--tail-limit", type=float, default=10**5)
    p.set_defaults(handler=_cmd_lemmas)

    p = sub.add_parser(
        "verify-all", parents=[common], help="deterministic desk-scale battery"
    )
    p.set_defaults(handler=_cmd_verify_all)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    config = RunConfig.from_args(args)
    try:
        args.handler(config, args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:  # parameter/range/domain/construction errors
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
