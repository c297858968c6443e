"""Command-line interface: every pipeline, deterministic key-value output.

Exit codes: 0 found/pass, 1 NotFound/check failure (counterexample on
stdout), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import certio
from .colorings import SeqColoring, coloring_from_file, coloring_to_file, serialize_coloring
from .certificates import build_validity, verify_certificate
from .errors import VarwordError
from .fut import brute_force_fut, fut_to_ovw_pipeline
from .levels import compute_levels
from .lll import (
    AdversaryConfig,
    assignment_coloring,
    build_clause_system,
    make_targets,
    moser_tardos,
    verify_adversary,
)
from .matches import (
    find_full_match_pair,
    find_match,
    gap_stats,
    marker_color,
    marker_decomposition,
    marker_polarity,
    match_check,
    parse_marker_schedule,
    parse_schedule,
)
from .search import brute_force_ovw, check_seq_solution, check_solution
from .solve import solve_ovw
from .words import parse_word, word_text


def _kv(key, value):
    sys.stdout.write(f"{key} {value}\n")


def _ints(xs):
    return ",".join(str(x) for x in xs) if xs else "-"


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_words(path):
    out = []
    for line in _read(path).splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(parse_word(line))
    return out


def _read_finsets(path):
    out = []
    for line in _read(path).splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(_parse_set(line))
    return out


def _parse_set(text):
    if text == "-":
        return ()
    return tuple(sorted(int(t) for t in text.split(",")))


def _emit_solution(rep):
    _kv("status", "found")
    _kv("strategy", rep.strategy)
    _kv("word", word_text(rep.word))
    _kv("color", rep.color)
    _kv("depth", rep.depth_checked)
    if rep.base is not None:
        _kv("base", rep.base if rep.base else "-")
    if rep.blocks is not None:
        for b in rep.blocks:
            _kv("block", _ints(b))


def _cmd_ovw_solve(args):
    coloring = coloring_from_file(args.coloring)
    rep = solve_ovw(coloring, args.vars, args.horizon, strategy=args.strategy,
                    budget=args.budget, saturation=args.saturation,
                    override=args.override)
    if rep is None:
        _kv("status", "notfound")
        return 1
    _emit_solution(rep)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(certio.serialize_solution(rep))
    return 0


def _cmd_ovw_check(args):
    coloring = coloring_from_file(args.coloring)
    w = _read_words(args.word)[0]
    res = check_solution(coloring, w, args.depth)
    if res.ok:
        _kv("status", "pass")
        _kv("color", res.color)
        return 0
    _kv("status", "fail")
    a, b = res.counterexample
    ca, cb = res.counter_colors
    _kv("witness1", a if a else "-")
    _kv("color1", ca)
    _kv("witness2", b if b else "-")
    _kv("color2", cb)
    return 1


def _cmd_ovw_brute(args):
    coloring = coloring_from_file(args.coloring)
    prefix = _read_words(args.prefix)[0] if args.prefix else None
    rep = brute_force_ovw(coloring, args.vars, args.horizon, prefix=prefix,
                          override=args.override)
    if rep is None:
        _kv("status", "notfound")
        return 1
    _emit_solution(rep)
    return 0


def _cmd_seq_check(args):
    members = [coloring_from_file(p) for p in args.coloring]
    w = _read_words(args.word)[0]
    res = check_seq_solution(members, w, args.depth)
    for i, ok in enumerate(res.per_member):
        _kv(f"member{i}", "pass" if ok else "fail")
    if res.ok:
        _kv("status", "pass")
        return 0
    _kv("status", "fail")
    i, b, a1, a2, c1, c2 = res.counterexample
    _kv("member", i)
    _kv("prefix", b if b else "-")
    _kv("witness1", a1 if a1 else "-")
    _kv("color1", c1)
    _kv("witness2", a2 if a2 else "-")
    _kv("color2", c2)
    return 1


def _cmd_adversary_gen(args):
    config = AdversaryConfig(n_base=args.N, horizon=args.horizon, seed=args.seed,
                             max_resamples=args.max_resamples)
    targets = make_targets(_read_words(args.targets), args.N)
    system = build_clause_system(targets, config)
    result = moser_tardos(system, seed=args.seed, max_resamples=args.max_resamples)
    coloring = assignment_coloring(result.assignment, args.horizon)
    report = verify_adversary(coloring, targets, args.horizon)
    coloring_to_file(coloring, args.out)
    lines = [
        f"targets {len(targets)}",
        f"clauses {len(system)}",
        f"threshold {args.N}",
        f"alpha {config.alpha}",
        f"horizon {args.horizon}",
        f"seed {args.seed}",
        f"resamples {result.resamples}",
        f"converged {int(result.converged)}",
        f"verified {int(report.ok)}",
    ]
    for e, ok, tau in report.per_target:
        lines.append(f"target{e} {'pass' if ok else 'fail'}")
    text = "\n".join(lines) + "\n"
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0 if report.ok else 1


def _cmd_adversary_verify(args):
    coloring = coloring_from_file(args.coloring)
    targets = make_targets(_read_words(args.targets), args.N)
    report = verify_adversary(coloring, targets, args.horizon)
    for e, ok, tau in report.per_target:
        _kv(f"target{e}", "pass" if ok else f"fail {tau if tau else '-'}")
    _kv("status", "pass" if report.ok else "fail")
    return 0 if report.ok else 1


def _cmd_fut_search(args):
    coloring = coloring_from_file(args.coloring)
    got = brute_force_fut(coloring, args.blocks, args.ground)
    if got is None:
        _kv("status", "notfound")
        return 1
    frag, color = got
    _kv("status", "found")
    _kv("color", color)
    for g in frag.generators:
        sys.stdout.write(_ints(g) + "\n")
    return 0


def _cmd_fut_reduce(args):
    coloring = coloring_from_file(args.coloring)
    rep = fut_to_ovw_pipeline(coloring, args.blocks, args.ground)
    if rep is None:
        _kv("status", "notfound")
        return 1
    _emit_solution(rep)
    return 0


def _cmd_match_check(args):
    coloring = coloring_from_file(args.coloring)
    family = _read_finsets(args.family)
    fragment = _read_finsets(args.fragment)
    rep = match_check(args.kind, coloring, family, fragment)
    if rep.ok:
        _kv("status", "pass")
        return 0
    _kv("status", "fail")
    _kv("failing", _ints(rep.failing))
    return 1


def _cmd_match_search(args):
    coloring = coloring_from_file(args.coloring)
    got = find_match(args.kind, coloring, args.horizon, args.max_b_size,
                     args.max_b_count, args.generators)
    if got is None:
        _kv("status", "notfound")
        return 1
    family, frag = got
    _kv("status", "found")
    for b in family:
        _kv("member", _ints(b))
    for g in frag.generators:
        _kv("generator", _ints(g))
    return 0


def _cmd_match_gaps(args):
    sched = parse_schedule(_read(args.schedule))
    S = _parse_set(args.set)
    stats = gap_stats(S, sched)
    for lo, hi, large, very_small in stats.gaps:
        _kv(f"gap {lo},{hi}", f"{'large' if large else 'small'}"
                              f"{' very_small' if very_small else ''}")
    _kv("sg", stats.sg)
    _kv("vsg", stats.vsg)
    _kv("color", stats.color)
    return 0


def _cmd_match_decomp(args):
    sched = parse_marker_schedule(_read(args.markers))
    B = _parse_set(args.set)
    d = marker_decomposition(B, sched)
    if d is None:
        _kv("decomposition", "none")
    else:
        e, u, Z, D = d
        _kv("e", e)
        _kv("u", u)
        _kv("Z", _ints(Z))
        _kv("D", _ints(D))
    _kv("color", marker_color(B, sched))
    if args.polarity is not None:
        v = marker_polarity(B, args.polarity, sched)
        _kv("polarity", "none" if v is None else v)
    return 0


def _cmd_cert_build(args):
    coloring = coloring_from_file(args.coloring)
    base = "" if args.base == "-" else args.base
    cert = build_validity(coloring, base, args.budget)
    text = certio.serialize_cert(cert)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    _kv("status", "built")
    _kv("rho~", cert.rho_tilde)
    _kv("P", _ints(cert.P))
    _kv("L", _ints(cert.gamma.L))
    return 0


def _cmd_cert_verify(args):
    coloring = coloring_from_file(args.coloring)
    cert = certio.parse_cert(_read(args.cert))
    horizon = args.horizon
    if horizon is None:
        g = cert.gamma if hasattr(cert, "gamma") else cert
        horizon = len(g.rho_tilde) + 2
        if g.item4_horizon is not None:
            horizon = min(horizon, g.item4_horizon)
        if coloring.max_len() is not None:
            horizon = min(horizon, coloring.max_len())
    rep = verify_certificate(cert, coloring, horizon,
                             subset_budget=args.subset_budget, seed=args.seed)
    for item in (1, 2, 3, 4):
        _kv(f"item{item}", "pass" if rep.item_ok[item] else "fail")
    _kv("item4mode", rep.item4_mode)
    _kv("checks", rep.checks)
    for v in rep.violations[:20]:
        _kv("violation", f"item{v.item} Q={_ints(v.flip_set)} tau={v.tau if v.tau else '-'} {v.detail}")
    _kv("status", "pass" if rep.ok else "fail")
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="varword", description=__doc__)
    sub = p.add_subparsers(dest="group", required=True)

    ovw = sub.add_parser("ovw", help="ordered-word solvers and checks").add_subparsers(
        dest="cmd", required=True)
    s = ovw.add_parser("solve", help="find a monochromatic ordered word")
    s.add_argument("--coloring", required=True)
    s.add_argument("--vars", type=int, required=True)
    s.add_argument("--horizon", type=int, required=True)
    s.add_argument("--strategy", choices=("levels", "word_tree", "brute"), default="levels")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--saturation", action="store_true")
    s.add_argument("--override", action="store_true")
    s.add_argument("--out", default=None)
    s.set_defaults(fn=_cmd_ovw_solve)
    s = ovw.add_parser("check", help="check a word against a coloring")
    s.add_argument("--coloring", required=True)
    s.add_argument("--word", required=True)
    s.add_argument("--depth", type=int, required=True)
    s.set_defaults(fn=_cmd_ovw_check)
    s = ovw.add_parser("brute", help="exhaustive word search")
    s.add_argument("--coloring", required=True)
    s.add_argument("--vars", type=int, required=True)
    s.add_argument("--horizon", type=int, required=True)
    s.add_argument("--prefix", default=None)
    s.add_argument("--override", action="store_true")
    s.set_defaults(fn=_cmd_ovw_brute)

    seq = sub.add_parser("seq", help="coloring sequences").add_subparsers(
        dest="cmd", required=True)
    s = seq.add_parser("check", help="check a word against a coloring sequence")
    s.add_argument("--coloring", action="append", required=True)
    s.add_argument("--word", required=True)
    s.add_argument("--depth", type=int, required=True)
    s.set_defaults(fn=_cmd_seq_check)

    adv = sub.add_parser("adversary", help="clause-system adversary").add_subparsers(
        dest="cmd", required=True)
    s = adv.add_parser("gen", help="build and solve the clause system")
    s.add_argument("--targets", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--horizon", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-resamples", type=int, default=10 ** 6)
    s.add_argument("--out", required=True)
    s.add_argument("--report", default=None)
    s.set_defaults(fn=_cmd_adversary_gen)
    s = adv.add_parser("verify", help="verify a coloring defeats the targets")
    s.add_argument("--coloring", required=True)
    s.add_argument("--targets", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--horizon", type=int, required=True)
    s.set_defaults(fn=_cmd_adversary_verify)

    fut = sub.add_parser("fut", help="finite-union searches").add_subparsers(
        dest="cmd", required=True)
    s = fut.add_parser("search", help="monochromatic union fragment")
    s.add_argument("--coloring", required=True)
    s.add_argument("--blocks", type=int, required=True)
    s.add_argument("--ground", type=int, required=True)
    s.set_defaults(fn=_cmd_fut_search)
    s = fut.add_parser("reduce", help="reduce a string coloring to a word")
    s.add_argument("--coloring", required=True)
    s.add_argument("--blocks", type=int, required=True)
    s.add_argument("--ground", type=int, required=True)
    s.set_defaults(fn=_cmd_fut_reduce)

    match = sub.add_parser("match", help="match notions and gap statistics").add_subparsers(
        dest="cmd", required=True)
    s = match.add_parser("check", help="check a family against a fragment")
    s.add_argument("--coloring", required=True)
    s.add_argument("--family", required=True)
    s.add_argument("--fragment", required=True)
    s.add_argument("--kind", choices=("left", "right", "full"), required=True)
    s.set_defaults(fn=_cmd_match_check)
    s = match.add_parser("search", help="search for a matching family")
    s.add_argument("--coloring", required=True)
    s.add_argument("--kind", choices=("left", "right", "full"), required=True)
    s.add_argument("--horizon", type=int, required=True)
    s.add_argument("--max-b-size", type=int, default=2)
    s.add_argument("--max-b-count", type=int, default=2)
    s.add_argument("--generators", type=int, default=2)
    s.set_defaults(fn=_cmd_match_search)
    s = match.add_parser("gaps", help="gap statistics of a set")
    s.add_argument("--schedule", required=True)
    s.add_argument("--set", required=True)
    s.set_defaults(fn=_cmd_match_gaps)
    s = match.add_parser("decomp", help="marker decomposition and coloring")
    s.add_argument("--markers", required=True)
    s.add_argument("--set", required=True)
    s.add_argument("--polarity", type=int, default=None)
    s.set_defaults(fn=_cmd_match_decomp)

    cert = sub.add_parser("cert", help="certificates").add_subparsers(
        dest="cmd", required=True)
    s = cert.add_parser("build", help="build a validity certificate")
    s.add_argument("--coloring", required=True)
    s.add_argument("--base", default="-")
    s.add_argument("--budget", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(fn=_cmd_cert_build)
    s = cert.add_parser("verify", help="verify a certificate file")
    s.add_argument("--cert", required=True)
    s.add_argument("--coloring", required=True)
    s.add_argument("--horizon", type=int, default=None)
    s.add_argument("--subset-budget", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=_cmd_cert_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except VarwordError as exc:
        sys.stdout.write(f"error {exc}\n")
        return 2
    except OSError as exc:
        sys.stdout.write(f"error {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
