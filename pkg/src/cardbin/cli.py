"""Command-line entry point: ``cardbin <command> [flags]``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import adversary as adv
from .algorithms import (
    ALGORITHMS,
    check_ff_minimality,
    check_ff_structure,
    check_tf_invariants,
    first_fit,
    make_algorithm,
    read_trace_placements,
    run,
)
from .analysis import format_table, random_instances, ratio_table, verify_weights
from .core import (
    CardbinError,
    Certificate,
    Instance,
    Report,
    format_fraction,
    parse_fraction,
    read_instance,
    read_packing,
    validate_packing,
    write_instance,
    write_packing,
)
from .oracle import DEFAULT_NODE_BUDGET, exact_opt

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message} (try --help)\n")


def show(q: Fraction) -> str:
    return f"{format_fraction(q)} ({float(q):.6f})"


def _fraction_arg(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except CardbinError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _load_instance(path: str, k: int | None) -> Instance:
    inst = read_instance(Path(path).read_text(encoding="utf-8"))
    if k is not None and inst.k != k:
        raise UsageError(f"--k {k} does not match k {inst.k} in {path}")
    return inst


def _load_packing(path: str, inst: Instance):
    return read_packing(Path(path).read_text(encoding="utf-8"), inst)


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _emit_reports(out, reports: list[Report]) -> int:
    status = EXIT_OK
    for r in reports:
        print(r.summary(), file=out)
        for v in r.violations[:20]:
            print(f"  {v}", file=out)
        if r.applicable and not r.ok:
            status = EXIT_FAIL
    return status


# -- commands -------------------------------------------------------------------

def cmd_gen(a, out) -> int:
    if a.family == "batch":
        if a.n is None or a.stop is None:
            raise UsageError("--family batch needs --n and --stop")
        kw = {"delta": a.delta} if a.delta is not None else {}
        fam = adv.gen_batches(a.k, a.n, stop=a.stop, **kw)
    else:
        ell = 1 if a.ell is None else a.ell
        gen = {"ff-small": adv.gen_ff_killer_small, "ff-mid": adv.gen_ff_killer_mid,
               "ff-large": adv.gen_ff_killer_large}[a.family]
        kw = {}
        if a.eps is not None:
            kw["eps"] = a.eps
        if a.delta is not None:
            if a.family == "ff-small":
                raise UsageError("--delta is not used by ff-small")
            kw["delta"] = a.delta
        fam = gen(a.k, ell, **kw)
    _write(a.out, write_instance(fam.instance))
    _write(a.cert, write_packing(fam.certificate.packing))
    claim = "exact" if fam.certificate.exact else "upper"
    print(f"gen {fam.name} k={a.k} items {fam.instance.n} cert {fam.certificate.count} {claim}",
          file=out)
    if fam.predicted_ff is not None:
        print(f"predicted ff {fam.predicted_ff} ratio {show(fam.predicted_ratio)}", file=out)
    return EXIT_OK


def cmd_run(a, out) -> int:
    inst = _load_instance(a.input, a.k)
    packing, trace = run(a.alg, inst)
    _write(a.out, write_packing(packing))
    _write(a.trace, write_packing(packing) + "\n".join(trace.lines()) + "\n")
    print(f"bins {packing.num_bins}", file=out)
    return EXIT_OK


def cmd_opt(a, out) -> int:
    inst = _load_instance(a.input, a.k)
    cert = exact_opt(inst, a.budget)
    _write(a.out, write_packing(cert.packing))
    print(f"opt {cert.count} {'exact' if cert.exact else 'upper'}", file=out)
    return EXIT_OK


def cmd_duel(a, out) -> int:
    if a.adversary == "batch":
        if a.k is None:
            raise UsageError("--adversary batch needs --k")
        n = a.n if a.n is not None else 6 * a.k
        res = adv.batch_duel(a.alg, a.k, n)
        for i, (got, opt) in enumerate(zip(res.bins_after, res.opt), 1):
            print(f"batch {i}: {a.alg} {got} opt {opt} ratio {show(Fraction(got, opt))}",
                  file=out)
        ratio = res.ratio
        print(f"lb_value {show(adv.lb_value(a.k))}", file=out)
    else:
        cls = adv.ADVERSARIES[a.adversary]
        k = a.k if a.k is not None else (3 if a.adversary == "abs-k3" else 4)
        adversary = cls(k, a.eps) if a.eps is not None else cls(k)
        res = adv.duel(adversary, make_algorithm(a.alg, k))
        for i, size, j in res.log:
            print(f"item {i} size {format_fraction(size)} -> bin {j}", file=out)
        print(f"{a.alg} {res.alg_bins} opt {res.opt_bins}", file=out)
        ratio = res.ratio
        a.k = k
    print(f"duel {a.adversary} vs {a.alg} k={a.k} ratio={show(ratio)}", file=out)
    return EXIT_OK


def _opt_for(inst: Instance, path: str | None, budget: int) -> Certificate:
    if path:
        return Certificate(_load_packing(path, inst))
    return exact_opt(inst, budget)


def _ff_invariant_reports(inst, opt) -> list[Report]:
    ff = make_algorithm("ff", inst.k).feed(inst.sizes)
    return [check_ff_minimality(inst, ff.trace), check_ff_structure(inst, ff.packing, opt)]


def cmd_verify(a, out) -> int:
    if a.random is not None:
        return _verify_random(a, out)
    if a.input is None:
        raise UsageError("verify needs --in FILE (or --random COUNT --seed S)")
    inst = _load_instance(a.input, a.k)
    if a.what == "packing":
        if not a.packing:
            raise UsageError("--what packing needs --packing FILE")
        return _emit_reports(out, [validate_packing(inst, _load_packing(a.packing, inst))])
    if a.what == "tf-invariants":
        return _emit_reports(out, [check_tf_invariants(inst)])
    if a.what == "ff-invariants":
        reports = []
        if a.packing:
            text = Path(a.packing).read_text(encoding="utf-8")
            placements = read_trace_placements(text)
            if placements:
                reports.append(check_ff_minimality(inst, placements))
                reports[-1].name = "trace-minimality"
        opt = _opt_for(inst, a.opt, a.budget)
        return _emit_reports(out, reports + _ff_invariant_reports(inst, opt))
    # weights
    ff = _load_packing(a.packing, inst) if a.packing else first_fit(inst)
    opt = _opt_for(inst, a.opt, a.budget)
    return _emit_reports(out, verify_weights(inst.k, ff, opt))


def _verify_random(a, out) -> int:
    if a.seed is None:
        raise UsageError("--random needs --seed")
    if a.k is None:
        raise UsageError("--random needs --k")
    failures = skipped = 0
    for t, inst in enumerate(random_instances(a.k, a.random, a.seed)):
        if a.what == "tf-invariants":
            reports = [check_tf_invariants(inst)]
        elif a.what == "packing":
            reports = [validate_packing(inst, first_fit(inst))]
        else:
            opt = exact_opt(inst, a.budget)
            if a.what == "ff-invariants":
                reports = _ff_invariant_reports(inst, opt)
            else:
                reports = verify_weights(inst.k, first_fit(inst), opt)
        for r in reports:
            if not r.applicable:
                skipped += 1
            elif not r.ok:
                failures += 1
                print(f"instance {t}: {r.summary()}", file=out)
                for v in r.violations[:5]:
                    print(f"  {v}", file=out)
    state = "pass" if failures == 0 else "FAIL"
    print(f"{a.what} k={a.k} random {a.random} seed {a.seed}: {state} "
          f"({failures} failing checks, {skipped} not-applicable)", file=out)
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_table(a, out) -> int:
    if a.k_from < 2 or a.k_to < a.k_from:
        raise UsageError("need 2 <= --k-from <= --k-to")
    print(format_table(ratio_table(a.k_from, a.k_to, a.ell)), file=out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cardbin", description="Bin packing with cardinality constraints.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a worst-case family with its certificate")
    g.add_argument("--family", required=True, choices=["ff-small", "ff-mid", "ff-large", "batch"])
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--ell", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--stop", type=int, choices=[1, 2, 3, 4])
    g.add_argument("--eps", type=_fraction_arg)
    g.add_argument("--delta", type=_fraction_arg)
    g.add_argument("--out", required=True)
    g.add_argument("--cert")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run an online algorithm on an instance file")
    r.add_argument("--alg", required=True, choices=list(ALGORITHMS))
    r.add_argument("--k", type=int)
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--out")
    r.add_argument("--trace")
    r.set_defaults(func=cmd_run)

    o = sub.add_parser("opt", help="exact optimum by branch and bound")
    o.add_argument("--k", type=int)
    o.add_argument("--in", dest="input", required=True)
    o.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    o.add_argument("--out")
    o.set_defaults(func=cmd_opt)

    d = sub.add_parser("duel", help="play an adversary against an algorithm")
    d.add_argument("--adversary", required=True, choices=["abs-k3", "abs-k4plus", "batch"])
    d.add_argument("--alg", required=True, choices=list(ALGORITHMS))
    d.add_argument("--k", type=int)
    d.add_argument("--eps", type=_fraction_arg)
    d.add_argument("--n", type=int)
    d.set_defaults(func=cmd_duel)

    v = sub.add_parser("verify", help="check packings, invariants or weight inequalities")
    v.add_argument("--what", required=True,
                   choices=["packing", "weights", "ff-invariants", "tf-invariants"])
    v.add_argument("--k", type=int)
    v.add_argument("--in", dest="input")
    v.add_argument("--packing")
    v.add_argument("--opt")
    v.add_argument("--random", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="FF on the worst-case families against the asymptote")
    t.add_argument("--k-from", type=int, required=True)
    t.add_argument("--k-to", type=int, required=True)
    t.add_argument("--ell", type=int)
    t.set_defaults(func=cmd_table)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, CardbinError, OSError) as e:
        print(f"cardbin {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
