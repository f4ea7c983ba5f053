"""Batch driver: family generation, sum-rule sweeps, certification, probes.

Subcommands: generate, sumrule, gram, normalform, absorb, measure, verify.
A flat key-value JSON config (--config) supplies defaults for any flag.
Sweep output is CSV plus a JSON sidecar of the run configuration; runs are
deterministic (rows sorted before emit, byte-identical output modulo the
version header line).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from . import absorption, measures, psd_quartic, sum_rule
from .families import FamilySpec
from .normal_form import NormalFormMonomial
from .suites import run_suites

VERSION_HEADER = f"# opuckit {__version__}"


@dataclass
class RunConfig:
    """Sweep configuration; defaults are the documented desk-scale settings."""

    grid_size: int = 4096
    m_list: tuple = (1,)
    n_list: tuple = (250, 500, 1000, 2000)
    jobs: int = 1
    seed: int = 0
    out: str | None = None
    bounded_ratio: float = 1.2  # trend threshold: max/min of last three
    divergent_ratio: float = 2.0  # trend threshold: last/first

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def classify_k_trend(values, bounded_ratio: float = 1.2, divergent_ratio: float = 2.0) -> str:
    """Trend of K_proxy along an increasing N list.

    "bounded" when the max/min ratio of the last three values is at most
    bounded_ratio; "divergent" when last/first is at least divergent_ratio;
    otherwise "inconclusive".  The thresholds are artifact conventions for
    the declared N lists, not constants from any estimate.
    """
    vals = [float(v) for v in values]
    if len(vals) < 3:
        return "inconclusive"
    tail = vals[-3:]
    lo, hi = min(tail), max(tail)
    if lo > 0 and hi / lo <= bounded_ratio:
        return "bounded"
    if vals[0] > 0 and vals[-1] / vals[0] >= divergent_ratio:
        return "divergent"
    return "inconclusive"


# -- family plumbing ---------------------------------------------------------


def _add_family_args(p: argparse.ArgumentParser):
    p.add_argument("--family", choices=("power", "rotated", "random", "constant", "explicit"))
    p.add_argument("--c", type=float, default=0.0, help="amplitude c (real)")
    p.add_argument("--c-imag", type=float, default=0.0, help="imaginary part of c")
    p.add_argument("--gamma", type=float, default=0.0, help="decay exponent")
    p.add_argument("--beta", type=float, default=0.0, help="rotation step")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=float, default=0.5, help="modulus cap for random families")
    p.add_argument("--values", help="JSON file with explicit [re, im] entries")


def _family_from_args(args) -> FamilySpec:
    if not args.family:
        raise SystemExit("a --family is required")
    kw = {}
    if args.family in ("power", "rotated", "constant"):
        kw["c"] = complex(args.c, args.c_imag)
    if args.family in ("power", "rotated"):
        kw["gamma"] = args.gamma
    if args.family == "rotated":
        kw["beta"] = args.beta
    if args.family == "random":
        kw["seed"] = args.seed
        kw["modulus_cap"] = args.cap
    if args.family == "explicit":
        if not args.values:
            raise SystemExit("explicit family needs --values FILE")
        with open(args.values) as fh:
            kw["values"] = tuple(complex(re, im) for re, im in json.load(fh))
    return FamilySpec(kind=args.family, **kw)


def _parse_int_list(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(x) for x in text)
    return tuple(int(x) for x in str(text).split(","))


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommand implementations ----------------------------------------------


def cmd_generate(args) -> int:
    family = _family_from_args(args)
    seq = family.generate(args.n)
    _emit(seq.to_json() + "\n", args.out)
    return 0


def _sumrule_row(payload) -> tuple:
    family_dict, m, N, grid = payload
    seq = FamilySpec.from_dict(family_dict).generate(N)
    rep = sum_rule.decomposition_report(seq, m, N, grid=grid)
    return (m, N, rep)


def cmd_sumrule(args) -> int:
    family = _family_from_args(args)
    config = RunConfig(
        grid_size=args.grid,
        m_list=_parse_int_list(args.m),
        n_list=_parse_int_list(args.n_list),
        jobs=args.jobs,
        seed=args.seed,
        out=args.out,
    )
    items = [
        (family.to_dict(), m, N, config.grid_size)
        for m in config.m_list
        for N in config.n_list
    ]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(_sumrule_row, items))
    else:
        rows = [_sumrule_row(item) for item in items]
    rows.sort(key=lambda r: (r[0], r[1]))
    lines = [VERSION_HEADER, sum_rule.DecompositionReport.CSV_HEADER]
    lines += [rep.csv_row() for _, _, rep in rows]
    _emit("\n".join(lines) + "\n", args.out)
    if args.out:
        sidecar = {"family": family.to_dict(), **json.loads(config.to_json())}
        with open(args.out + ".config.json", "w") as fh:
            json.dump(sidecar, fh, indent=2, sort_keys=True)
    return 0


def cmd_gram(args) -> int:
    if args.action == "certify":
        ok = True
        for m in range(1, args.m_max + 1):
            cert = psd_quartic.psd_certificate(psd_quartic.gram_closed_form(m))
            status = "certified" if cert.certified else f"FAILED ({cert.failure})"
            print(f"m={m:2d} dim={len(cert.pivots):3d} {status}")
            ok = ok and cert.certified
        return 0 if ok else 1
    if args.action == "identity":
        ok = True
        for m in range(1, args.m_max + 1):
            good = psd_quartic.gram_identity_check(m)
            print(f"m={m:2d} Gram identity {'exact' if good else 'MISMATCH'}")
            ok = ok and good
        return 0 if ok else 1
    if args.action == "export":
        block = psd_quartic.gram_closed_form(args.m)
        _emit(block.to_json() + "\n", args.out)
        return 0
    raise SystemExit(f"unknown gram action {args.action!r}")


def cmd_normalform(args) -> int:
    if args.action != "verify":
        raise SystemExit("normalform supports: verify")
    results, ok = run_suites("normalform")
    more, ok2 = run_suites("algebra")
    _print_table(results + more)
    return 0 if (ok and ok2) else 1


def cmd_absorb(args) -> int:
    family = _family_from_args(args)
    n_list = _parse_int_list(args.n_list)
    m = int(args.m)
    lines = [VERSION_HEADER, "family,m,param,N,ratio,lhs,rhs,passed"]
    label = family.label().replace(",", ";")
    if args.r is not None:
        r = int(args.r)
        for N in n_list:
            seq = family.generate(N + 2 * m)
            ratio = absorption.gn_ratio_probe(seq, m, r, N)
            lines.append(f"{label},{m},r={r},{N},{ratio!r},,,")
    elif args.k is not None:
        k = int(args.k)
        orders = [0] * (2 * k)
        rem = m + 1 - k
        i = 0
        while rem > 0:
            orders[i % (2 * k)] += 1
            rem -= 1
            i += 1
        mono = NormalFormMonomial(
            k,
            tuple((orders[j], 0) for j in range(k)),
            tuple((orders[k + j], 0) for j in range(k)),
            1.0,
        )
        fit_seq = family.generate(max(n_list) + 2 * m + 2)
        constant = absorption.fit_absorption_constant(mono, fit_seq, m, args.epsilon, n_list)
        for N in n_list:
            seq = family.generate(N + 2 * m + 2)
            probe = absorption.absorption_inequality_probe(
                mono, seq, m, N, args.epsilon, constant
            )
            lines.append(
                f"{label},{m},k={k},{N},,{probe.lhs!r},{probe.rhs!r},{probe.passed}"
            )
    else:
        raise SystemExit("absorb probe needs --r (GN ratio) or --k (monomial probe)")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_measure(args) -> int:
    if args.measure_json:
        with open(args.measure_json) as fh:
            spec = measures.MeasureSpec.from_json(fh.read())
    else:
        family = _family_from_args(args)
        spec = measures.MeasureSpec.bernstein_szego(family.generate(args.n))
    if args.action == "functional":
        val = measures.szego_functional(spec, args.m, args.grid)
        print(json.dumps({"m": val.m, "value": val.value, "grid": val.grid_size}))
        return 0
    if args.action == "weight":
        if spec.kind == "sampled":
            w = np.asarray(spec.weights)
        else:
            w = measures.bernstein_szego_weight(spec.prefix, args.grid)
        _emit(measures.MeasureSpec.sampled(w).to_json() + "\n", args.out)
        return 0
    if args.action == "moments":
        mom = measures.trig_moments(spec, args.kmax, args.grid)
        print(json.dumps([[c.real, c.imag] for c in mom]))
        return 0
    raise SystemExit(f"unknown measure action {args.action!r}")


def _print_table(results):
    width = max(len(name) for name, _, _ in results)
    passed = 0
    for name, ok, detail in results:
        tag = "PASS" if ok else "FAIL"
        print(f"[{tag}] {name:<{width}}  {detail}")
        passed += ok
    print(f"{passed}/{len(results)} checks passed")


def cmd_verify(args) -> int:
    results, ok = run_suites(args.suite)
    _print_table(results)
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opuckit",
        description="Desk-scale checks for the single-critical-point higher-order "
        "Szego sum-rule calculus.",
    )
    parser.add_argument("--config", help="flat key-value JSON supplying flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a sequence as JSON [re, im] pairs")
    _add_family_args(p)
    p.add_argument("--n", type=int, required=True, help="last index N (length N+1)")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("sumrule", help="decomposition report sweep (CSV)")
    p.add_argument("action", choices=("report",))
    _add_family_args(p)
    p.add_argument("--m", default="1", help="comma separated orders")
    p.add_argument("--n-list", default="250,500,1000,2000")
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_sumrule)

    p = sub.add_parser("gram", help="quartic block certification and export")
    p.add_argument("action", choices=("certify", "identity", "export"))
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--m", type=int, default=2, help="order for export")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gram)

    p = sub.add_parser("normalform", help="pointwise exactness suite")
    p.add_argument("action", choices=("verify",))
    p.set_defaults(fn=cmd_normalform)

    p = sub.add_parser("absorb", help="interpolation and absorption probes (CSV)")
    p.add_argument("action", choices=("probe",))
    _add_family_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, help="difference order for the GN ratio probe")
    p.add_argument("--k", type=int, help="half-degree for the monomial absorption probe")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--n-list", default="250,500,1000,2000")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_absorb)

    p = sub.add_parser("measure", help="weighted log functional, weights, moments")
    p.add_argument("action", choices=("functional", "weight", "moments"))
    _add_family_args(p)
    p.add_argument("--measure-json", help="MeasureSpec JSON file (overrides --family)")
    p.add_argument("--n", type=int, default=0, help="prefix length - 1 when using a family")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_measure)

    p = sub.add_parser("verify", help="run module invariant suites")
    p.add_argument("--suite", default="all")
    p.set_defaults(fn=cmd_verify)

    parser._all_subparsers = list(sub.choices.values())
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if "--config" in argv:
        path = argv[argv.index("--config") + 1]
        with open(path) as fh:
            defaults = json.load(fh)
        overrides = {k.replace("-", "_"): v for k, v in defaults.items()}
        # subparsers parse into a fresh namespace, so they need the
        # overrides as well
        for p in [parser] + parser._all_subparsers:
            p.set_defaults(**overrides)
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
