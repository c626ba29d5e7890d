"""Command-line front end.

Subcommands: generate | enumerate | minfvs | count | banks | profile |
verify.  Tournaments travel as TOURN text (first line n, then the 0/1
adjacency rows); vertex sets print as comma-separated ascending 1-based
labels, the empty set as an empty line.  Exit codes: 0 success, 1 a
verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import bounds, core, enumeration

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2

TABLE_MAX_COUNTS = {1: 1, 2: 1, 3: 3, 4: 3, 5: 7, 6: 12, 7: 21, 8: 25}


class SpecError(ValueError):
    pass


@dataclass
class RunConfig:
    """One resolved invocation: the subcommand plus everything that shapes
    its output, so identical configs produce identical bytes."""

    subcommand: str
    input_path: str | None = None
    generator_spec: str | None = None
    seed: int | None = None
    fmt: str = "text"
    workers: int = 1
    relabel_by_score: bool = False
    debug_parent_check: bool = False
    allow_long: bool = False
    maximal_acyclic: bool = False
    output_path: str | None = None
    suite: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.input_path is None) == (self.generator_spec is None) and (
            self.subcommand not in ("verify",)
        ):
            raise SpecError("exactly one input source is required")


# ---------------------------------------------------------------------------
# generator spec mini-language


def build_generator(spec: str, default_n: int | None = None, seed: int | None = None) -> core.Tournament:
    """Resolve a generator expression to a tournament.

    Grammar: st7 | st6 | rt5 | c3 | transitive[:n] | circular:n:r1,r2,..
    | u_family[:n] | random[:n[:seed]] | pq(EXPR) | sum(EXPR,EXPR).
    Shorthand parameters fall back to ``default_n`` and ``seed``.
    """
    spec = spec.strip()
    if spec.endswith(")"):
        name, _, rest = spec.partition("(")
        inner = rest[:-1]
        if name == "pq":
            return core.pq(build_generator(inner, default_n, seed))
        if name == "sum":
            parts = _split_top_level(inner)
            if len(parts) < 2:
                raise SpecError("sum(..) needs at least two components")
            T = build_generator(parts[0], default_n, seed)
            for p in parts[1:]:
                T = core.disjoint_sum(T, build_generator(p, default_n, seed))
            return T
        raise SpecError(f"unknown generator {name!r}")
    parts = spec.split(":")
    name = parts[0]
    args = parts[1:]

    def want_n() -> int:
        if args:
            return int(args[0])
        if default_n is not None:
            return default_n
        raise SpecError(f"generator {name!r} needs n (use name:n or -n)")

    if name in ("st7",):
        return core.st7()
    if name == "st6":
        return core.st6()
    if name == "rt5":
        return core.rt5()
    if name == "c3":
        return core.circular(3, {1})
    if name in ("transitive", "tt"):
        return core.transitive(want_n())
    if name in ("u_family", "u"):
        return core.u_family(want_n())
    if name == "circular":
        if len(args) != 2:
            raise SpecError("circular needs circular:n:r1,r2,..")
        return core.circular(int(args[0]), {int(r) for r in args[1].split(",")})
    if name == "random":
        n = want_n()
        s = int(args[1]) if len(args) > 1 else seed
        if s is None:
            raise SpecError("random generation needs a seed (use --seed)")
        return core.random_tournament(n, s)
    raise SpecError(f"unknown generator {name!r}")


def _split_top_level(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p for p in (p.strip() for p in parts) if p]


# ---------------------------------------------------------------------------
# command implementations


def _load_tournament(cfg: RunConfig) -> core.Tournament:
    if cfg.generator_spec is not None:
        return build_generator(cfg.generator_spec, cfg.extra.get("n"), cfg.seed)
    if cfg.input_path == "-":
        return core.parse_tourn(sys.stdin.read())
    with open(cfg.input_path, "r", encoding="ascii") as fh:
        return core.parse_tourn(fh.read())


def _set_line(s: core.VertexSet) -> str:
    return ",".join(map(str, s))


def cmd_generate(cfg: RunConfig, out) -> int:
    T = build_generator(cfg.generator_spec, cfg.extra.get("n"), cfg.seed)
    text = core.format_tourn(T)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig, out, stats: enumeration.TraversalStats | None = None) -> int:
    T = _load_tournament(cfg)
    stream = enumeration.iter_maximal_acyclic_chains(
        T,
        relabel_by_score=cfg.relabel_by_score,
        prune_positions=False,
        debug_parent_check=cfg.debug_parent_check,
        stats=stats,
    )
    count = 0
    for members, _ in stream:
        s = members if cfg.maximal_acyclic else members.complement()
        out.write(_set_line(s) + "\n")
        if hasattr(out, "flush"):
            out.flush()
        count += 1
    if cfg.fmt == "machine":
        out.write(f"count={count}\n")
    else:
        out.write(f"count: {count}\n")
    return EXIT_OK


def cmd_minfvs(cfg: RunConfig, out) -> int:
    T = _load_tournament(cfg)
    best = enumeration.min_fvs(T)
    out.write(_set_line(best) + "\n")
    if cfg.fmt == "machine":
        out.write(f"size={len(best)}\n")
    else:
        out.write(f"size: {len(best)}\n")
    return EXIT_OK


def cmd_count(cfg: RunConfig, out) -> int:
    T = _load_tournament(cfg)
    out.write(f"{enumeration.count_minimal_fvs(T)}\n")
    return EXIT_OK


def cmd_banks(cfg: RunConfig, out) -> int:
    T = _load_tournament(cfg)
    out.write(_set_line(core.banks_winners(T)) + "\n")
    return EXIT_OK


def cmd_profile(cfg: RunConfig, out) -> int:
    T = _load_tournament(cfg)
    prof = enumeration.delay_profile(T)
    lines = prof.lines()
    if cfg.fmt == "machine":
        out.write("".join(f"{ln}\n" for ln in lines))
    else:
        for ln in lines:
            key, _, val = ln.partition("=")
            out.write(f"{key}: {val}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites


def _checkpoint_writer(path: str):
    def write(info: dict) -> None:
        with open(path, "a", encoding="ascii") as fh:
            fh.write(
                " ".join(
                    f"{k}={info[k]}"
                    for k in (
                        "n",
                        "completed_through",
                        "scanned",
                        "max_count",
                        "witness_bits",
                        "argmax_count",
                        "argmax_all_strong",
                        "min_strong_count",
                    )
                )
                + "\n"
            )

    return write


def _read_checkpoint(path: str, n: int) -> dict | None:
    try:
        with open(path, "r", encoding="ascii") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError:
        return None
    state = None
    for ln in lines:
        kv = dict(item.split("=", 1) for item in ln.split())
        if int(kv.get("n", -1)) != n:
            continue
        state = {
            "completed_through": int(kv["completed_through"]),
            "scanned": int(kv["scanned"]),
            "max_count": int(kv["max_count"]),
            "witness_bits": int(kv["witness_bits"]),
            "argmax_count": int(kv["argmax_count"]),
            "argmax_all_strong": kv["argmax_all_strong"] == "True",
            "min_strong_count": (
                None if kv["min_strong_count"] == "None" else int(kv["min_strong_count"])
            ),
        }
    return state


def _suite_table1(cfg: RunConfig, out) -> list[dict]:
    checks = []
    max_n = cfg.extra.get("max_n") or (8 if cfg.allow_long else 7)
    if max_n > 7 and not cfg.allow_long:
        raise SpecError("scanning n=8 needs --allow-long")
    checkpoint = (
        _checkpoint_writer(cfg.extra["checkpoint"]) if cfg.extra.get("checkpoint") else None
    )
    for n in range(1, max_n + 1):
        kwargs: dict = {}
        if cfg.extra.get("resume") and cfg.extra.get("checkpoint"):
            state = _read_checkpoint(cfg.extra["checkpoint"], n)
            if state and state["completed_through"] < (1 << (n * (n - 1) // 2)):
                kwargs["start"] = state["completed_through"]
                kwargs["resume_state"] = state
            elif state:
                checks.append(
                    {
                        "name": f"M({n})",
                        "ok": state["max_count"] == TABLE_MAX_COUNTS[n],
                        "value": state["max_count"],
                        "expected": TABLE_MAX_COUNTS[n],
                    }
                )
                continue
        report = bounds.exact_max_count(
            n,
            allow_long=cfg.allow_long,
            workers=cfg.workers,
            checkpoint=checkpoint,
            **kwargs,
        )
        checks.append(
            {
                "name": f"M({n})",
                "ok": report.max_count == TABLE_MAX_COUNTS[n],
                "value": report.max_count,
                "expected": TABLE_MAX_COUNTS[n],
            }
        )
    for name, T, expected in (
        ("f(pq(st6))", core.pq(core.st6()), 25),
        ("f(pq(st7))", core.pq(core.st7()), 43),
    ):
        value = enumeration.count_minimal_fvs(T)
        checks.append(
            {"name": name, "ok": value == expected, "value": value, "expected": expected}
        )
    return checks


def _suite_lower_family(cfg: RunConfig, out) -> list[dict]:
    k = cfg.extra.get("k") or 2
    ok = bounds.verify_lower_bound_family(k)
    return [{"name": f"lower-family k={k}", "ok": ok, "value": 21**k, "expected": 21**k}]


def _suite_mstar(cfg: RunConfig, out) -> list[dict]:
    checks = []
    for n in range(3, 7):
        value = bounds.exact_min_count_strong(n, workers=cfg.workers)
        checks.append(
            {"name": f"m*({n})", "ok": value == 3, "value": value, "expected": 3}
        )
    family_max = cfg.extra.get("family_max") or 40
    for n in range(3, family_max + 1):
        value = enumeration.count_minimal_fvs(core.u_family(n))
        checks.append(
            {
                "name": f"f(u_family({n}))",
                "ok": value == 3,
                "value": value,
                "expected": 3,
            }
        )
    return checks


def _suite_score_cap(cfg: RunConfig, out) -> list[dict]:
    checks = []
    ns = cfg.extra.get("ns") or list(range(8, 17))
    samples = cfg.extra.get("samples") or 100_000
    seed = cfg.seed if cfg.seed is not None else 20270
    for n in ns:
        campaign = bounds.run_score_cap_campaign(n, samples=samples, seed=seed)
        checks.append(
            {
                "name": f"score-cap n={n}",
                "ok": campaign.ok,
                "value": sum(campaign.violations.values()),
                "expected": 0,
                "strong_checked": campaign.strong_checked,
            }
        )
    return checks


def _suite_sigma(cfg: RunConfig, out) -> list[dict]:
    n = cfg.extra.get("n") or 11
    beta = cfg.extra.get("beta") or bounds.DEFAULT_BETA
    report = bounds.verify_sigma_maximizes(n, beta=beta)
    for ln in report.lines():
        out.write(f"  {ln}\n")
    return [
        {
            "name": f"sigma n={n}",
            "ok": bool(report),
            "value": report.best_value,
            "expected": report.target_value,
        }
    ]


SUITES = {
    "table1": _suite_table1,
    "lower-family": _suite_lower_family,
    "mstar": _suite_mstar,
    "score-cap": _suite_score_cap,
    "sigma": _suite_sigma,
}


def cmd_verify(cfg: RunConfig, out) -> int:
    if cfg.suite not in SUITES:
        raise SpecError(
            f"unknown suite {cfg.suite!r}; choose from {', '.join(sorted(SUITES))}"
        )
    checks = SUITES[cfg.suite](cfg, out)
    all_ok = True
    for c in checks:
        status = "PASS" if c["ok"] else "FAIL"
        all_ok &= c["ok"]
        if cfg.fmt == "machine":
            out.write(
                f"{status} {c['name']} value={c['value']} expected={c['expected']}\n"
            )
        else:
            out.write(f"{status}  {c['name']}: {c['value']} (expected {c['expected']})\n")
    summary_path = cfg.extra.get("summary_file")
    if summary_path:
        with open(summary_path, "w", encoding="ascii") as fh:
            json.dump({"suite": cfg.suite, "ok": all_ok, "checks": checks}, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tournament-fvs",
        description="Minimal feedback vertex sets in tournaments.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, with_input=True):
        p.add_argument("--format", choices=("text", "machine"), default="text")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--workers", type=int, default=1)
        if with_input:
            p.add_argument("file", nargs="?", help="TOURN file, or - for stdin")
            p.add_argument(
                "--generate",
                dest="generator_spec",
                help="build the input instead of reading a file",
            )

    g = sub.add_parser("generate", help="write a named tournament as TOURN text")
    g.add_argument("spec", help="generator expression, e.g. st7 or pq(st6)")
    g.add_argument("-n", type=int, default=None, help="vertex count for sized generators")
    g.add_argument("--inner", default=None, help="inner generator for pq")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("-o", "--output", default=None)
    g.add_argument("--format", choices=("text", "machine"), default="text")

    e = sub.add_parser("enumerate", help="stream minimal feedback vertex sets")
    common(e)
    e.add_argument(
        "--maximal-acyclic",
        action="store_true",
        help="emit the maximal acyclic sets instead of their complements",
    )
    e.add_argument("--relabel-by-score", action="store_true")
    e.add_argument("--debug-parent-check", action="store_true")

    for name, help_text in (
        ("minfvs", "print one minimum feedback vertex set"),
        ("count", "print the number of minimal feedback vertex sets"),
        ("banks", "print the heads of the maximal transitive subtournaments"),
        ("profile", "run an instrumented enumeration and print counters"),
    ):
        p = sub.add_parser(name, help=help_text)
        common(p)

    v = sub.add_parser("verify", help="run an acceptance suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--format", choices=("text", "machine"), default="text")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("-n", type=int, default=None, help="suite-specific order")
    v.add_argument("-k", type=int, default=None, help="copies for lower-family")
    v.add_argument("--beta", type=float, default=None)
    v.add_argument("--max-n", type=int, default=None)
    v.add_argument("--family-max", type=int, default=None)
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--ns", default=None, help="orders for score-cap, e.g. 8,9,10")
    v.add_argument("--allow-long", action="store_true")
    v.add_argument("--checkpoint", default=None)
    v.add_argument("--resume", action="store_true")
    v.add_argument("--summary-file", default=None)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    sc = args.subcommand
    if sc == "generate":
        spec = args.spec
        if args.inner:
            spec = f"{spec}({args.inner})"
        return RunConfig(
            subcommand=sc,
            generator_spec=spec,
            seed=args.seed,
            fmt=args.format,
            output_path=args.output,
            extra={"n": args.n},
        )
    if sc == "verify":
        extra = {
            "n": args.n,
            "k": args.k,
            "beta": args.beta,
            "max_n": args.max_n,
            "family_max": args.family_max,
            "samples": args.samples,
            "checkpoint": args.checkpoint,
            "resume": args.resume,
            "summary_file": args.summary_file,
        }
        if args.ns:
            extra["ns"] = [int(x) for x in args.ns.split(",")]
        return RunConfig(
            subcommand=sc,
            suite=args.suite,
            seed=args.seed,
            fmt=args.format,
            workers=args.workers,
            allow_long=args.allow_long,
            extra=extra,
        )
    cfg = RunConfig(
        subcommand=sc,
        input_path=args.file,
        generator_spec=args.generator_spec,
        seed=args.seed,
        fmt=args.format,
        workers=args.workers,
        relabel_by_score=getattr(args, "relabel_by_score", False),
        debug_parent_check=getattr(args, "debug_parent_check", False),
        maximal_acyclic=getattr(args, "maximal_acyclic", False),
    )
    return cfg


COMMANDS = {
    "generate": cmd_generate,
    "enumerate": cmd_enumerate,
    "minfvs": cmd_minfvs,
    "count": cmd_count,
    "banks": cmd_banks,
    "profile": cmd_profile,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None, stdout=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT_ERROR
    try:
        cfg = _config_from_args(args)
        return COMMANDS[cfg.subcommand](cfg, out)
    except (SpecError, core.TournParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
