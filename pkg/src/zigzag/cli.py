"""Command line entry point `zz`.

Every subcommand prints one JSON document on stdout.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import experiments
from .composition import Composition, format_word, parse_word
from .chain import marginal_cdfs, prob_one_in_valley, volume
from .errors import ZigzagError
from .graph import count_fillings, estimate_kernel, martin_kernel, sample_fillings
from .paintbox import (
    IntervalSystem,
    composition_paintbox,
    estimate_paintbox_law,
    run_paintbox,
    paintbox_sort,
)
from .rng import make_rng
from .rsk import project_path, projected_marginal, rsk, check_tableau_pair_identity
from .walk import clt_experiment, lln_experiment


def _comp(text: str) -> Composition:
    return Composition.parse(text)


def _print(obj):
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cmd_count(args):
    lam = _comp(args.composition)
    _print({"lambda": str(lam), "value_num": str(count_fillings(lam)), "value_den": "1"})


def cmd_kernel(args):
    mu, lam = _comp(args.mu), _comp(args.composition)
    out = {"lambda": str(lam), "mu": str(mu), "seed": args.seed}
    if args.mc:
        est = estimate_kernel(mu, lam, args.mc, make_rng(args.seed))
        out.update(estimate=est.estimate, stderr=est.stderr, samples=est.samples)
    else:
        kv = martin_kernel(mu, lam)
        out.update(value_num=str(kv.numerator), value_den=str(kv.denominator),
                   estimate=float(kv), stderr=0.0)
    _print(out)


def cmd_sample(args):
    lam = _comp(args.composition)
    words = sample_fillings(lam, args.n, make_rng(args.seed))
    _print({"lambda": str(lam), "seed": args.seed,
            "samples": [format_word(w) for w in words.tolist()]})


def _system(args) -> IntervalSystem:
    return IntervalSystem.parse(args.up or "", args.down or "")


def cmd_paintbox(args):
    lam = _comp(args.composition)
    u = run_paintbox(lam) if args.run else composition_paintbox(lam)
    _print({"lambda": str(lam), "kind": "run" if args.run else "step", **u.to_dict()})


def cmd_sigma_u(args):
    xs = [Fraction(x) for x in args.xs.split(",")]
    _print({"word": format_word(paintbox_sort(_system(args), xs))})


def cmd_p_u(args):
    mu = _comp(args.mu)
    est = estimate_paintbox_law(_system(args), mu, args.n, make_rng(args.seed))
    _print({"mu": str(mu), **_system(args).to_dict(), "estimate": est.estimate,
            "stderr": est.stderr, "seed": args.seed})


def cmd_elr(args):
    lam = _comp(args.composition)
    if args.what == "volume":
        v = volume(lam)
        _print({"lambda": str(lam), "value_num": str(v.numerator), "value_den": str(v.denominator)})
    elif args.what == "valley":
        p = prob_one_in_valley(lam, args.cell)
        _print({"lambda": str(lam), "valley": args.cell,
                "value_num": str(p.numerator), "value_den": str(p.denominator)})
    else:
        laws = marginal_cdfs(lam)
        if args.emit_csv:
            with open(args.emit_csv, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["t", "cdf_first", "cdf_last"])
                for i in range(101):
                    t = Fraction(i, 100)
                    w.writerow([str(t), float(laws.cdf_first(t)), float(laws.cdf_last(t))])
        _print({"lambda": str(lam), "cdf_first": laws.cdf_first.to_json(),
                "cdf_last": laws.cdf_last.to_json(), "volume": str(laws.volume)})


def cmd_rsk(args):
    p, q = rsk(parse_word(args.word))
    _print({"word": args.word, "P": [list(r) for r in p], "Q": [list(r) for r in q]})


def cmd_project(args):
    _print({"word": args.word, "shapes": [list(s) for s in project_path(parse_word(args.word))]})


def cmd_linkyz(args):
    lam = _comp(args.composition)
    _print({"lambda": str(lam), "holds": check_tableau_pair_identity(lam)})


def cmd_young_marginal(args):
    lam = _comp(args.composition)
    law = projected_marginal(lam, args.k, args.n, make_rng(args.seed))
    _print({"lambda": str(lam), "k": args.k, "seed": args.seed,
            "law": [{"shape": list(t), "estimate": e.estimate, "stderr": e.stderr}
                    for t, e in law.items()]})


def cmd_clt(args):
    res = clt_experiment(args.n, args.samples, make_rng(args.seed))
    if args.emit_csv:
        with open(args.emit_csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["replicate", "statistic"])
            for i, s in enumerate(res.statistic.tolist()):
                w.writerow([i, s])
    covs = []
    for i in range(len(res.times)):
        for j in range(i + 1, len(res.times)):
            cov, se, want = res.covariance(i, j)
            covs.append({"s": res.times[i], "t": res.times[j], "cov": cov, "stderr": se,
                         "target": want})
    _print({"n": args.n, "samples": args.samples, "seed": args.seed, "ks": res.ks,
            "pvalue": res.pvalue, "covariances": covs})


def cmd_lln(args):
    res = lln_experiment(_system(args), args.n, args.samples, make_rng(args.seed))
    _print({"n": args.n, "samples": args.samples, "seed": args.seed, "mean": res.mean,
            "max": res.max, "redraws": res.redraws})


def cmd_run(args):
    cfg = experiments.ExperimentConfig.load(args.config)
    report = experiments.run(cfg)
    out = args.out or cfg.output
    if out:
        experiments.emit(report, out, args.format)
    else:
        sys.stdout.write(experiments.report_to_json(report))
    failed = [r for r in report.records if r.get("pass") is False]
    print(f"{cfg.experiment}: {len(report.records)} records, {len(failed)} failed", file=sys.stderr)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zz", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="number of fillings of a composition")
    p.add_argument("composition")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("kernel", help="kernel K_mu(lambda), exact or Monte Carlo")
    p.add_argument("mu")
    p.add_argument("composition")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--mc", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("sample", help="uniform fillings")
    p.add_argument("composition")
    p.add_argument("-n", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("paintbox", help="interval systems of a composition")
    p.add_argument("of", choices=["of"])
    p.add_argument("composition")
    p.add_argument("--run", action="store_true", help="run paintbox instead of the step one")
    p.set_defaults(func=cmd_paintbox)

    for name, func in (("sigma-u", cmd_sigma_u), ("p-u", cmd_p_u), ("lln", cmd_lln)):
        p = sub.add_parser(name)
        p.add_argument("--up", default="")
        p.add_argument("--down", default="")
        p.set_defaults(func=func)
        if name == "sigma-u":
            p.add_argument("--xs", required=True)
        elif name == "p-u":
            p.add_argument("--mu", required=True)
            p.add_argument("-n", type=int, default=100_000)
            p.add_argument("--seed", type=int, default=0)
        else:
            p.add_argument("-n", type=int, default=2000)
            p.add_argument("--samples", type=int, default=50)
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("elr", help="exact endpoint laws")
    p.add_argument("what", choices=["cdf", "volume", "valley"])
    p.add_argument("composition")
    p.add_argument("cell", nargs="?", type=int)
    p.add_argument("--emit-csv", metavar="PATH")
    p.set_defaults(func=cmd_elr)

    for name, func in (("rsk", cmd_rsk), ("project", cmd_project)):
        p = sub.add_parser(name)
        p.add_argument("word")
        p.set_defaults(func=func)

    p = sub.add_parser("linkyz", help="check the filling count against tableau counts")
    p.add_argument("composition")
    p.set_defaults(func=cmd_linkyz)

    p = sub.add_parser("young-marginal")
    p.add_argument("composition")
    p.add_argument("k", type=int)
    p.add_argument("-n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_young_marginal)

    p = sub.add_parser("clt")
    p.add_argument("-n", type=int, default=10_000)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit-csv", metavar="PATH")
    p.set_defaults(func=cmd_clt)

    p = sub.add_parser("run", help="run an experiment described by a TOML file")
    p.add_argument("config")
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "csv"])
    p.set_defaults(func=cmd_run)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "elr" and args.what == "valley" and args.cell is None:
        print("elr valley needs a cell index", file=sys.stderr)
        return 2
    try:
        return args.func(args) or 0
    except (ZigzagError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
