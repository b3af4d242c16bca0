"""Command-line surface over the whole toolkit.

Exit codes: 0 on success, 1 when a checked property is violated, 2 on
invalid input. Data goes to stdout (TSV by default, JSON mirror via
--output json); diagnostics go to stderr. Identical inputs and seed always
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from random import Random

from . import amalgam as am
from . import fileio, hnn, quasimorphism as qm, width as wd
from .gog import classify
from .groups import GroupError, Subgroup, conjugacy_closure, double_coset, subgroup_closure
from .witness import ExperimentRow, WitnessConfig, run_experiment


def _common_flags(parser: argparse.ArgumentParser, *, seeded: bool = False) -> None:
    parser.add_argument("--output", choices=("tsv", "json"), default="tsv")
    if seeded:
        parser.add_argument("--seed", type=int, default=0, help="64-bit RNG seed")
        parser.add_argument("--samples", type=int, default=1000)
        parser.add_argument("--max-len", type=int, default=20, dest="max_len")


def _emit_table(args, header: list[str], rows: list[tuple], footer: dict | None = None) -> None:
    if args.output == "json":
        payload: dict = {"rows": [dict(zip(header, row)) for row in rows]}
        if footer:
            payload.update(footer)
        print(json.dumps(payload))
        return
    print("\t".join(header))
    for row in rows:
        print("\t".join(str(x) for x in row))
    if footer:
        print("# " + "\t".join(f"{k}={v}" for k, v in footer.items()))


def _emit_value(args, value) -> None:
    if args.output == "json":
        print(json.dumps({"value": value}))
    else:
        print(str(value).lower() if isinstance(value, bool) else value)


def _named_subgroup(group, names: str) -> Subgroup:
    seeds = [group.element(n) for n in names.split(",") if n]
    return subgroup_closure(group, seeds)


# group ----------------------------------------------------------------


def _cmd_group_validate(args) -> int:
    g = fileio.load_group(args.path)
    _emit_table(args, ["name", "order"], [(g.name, g.order)])
    return 0


def _cmd_group_doublecoset(args) -> int:
    g = fileio.load_group(args.path)
    sub = _named_subgroup(g, args.subgroup)
    a = g.element(args.element)
    forward = double_coset(g, sub, a)
    backward = double_coset(g, sub, g.inverse[a])
    names = lambda s: ",".join(g.name_of(x) for x in sorted(s))
    rows = [
        ("HaH", names(forward)),
        ("Ha^-1H", names(backward)),
        ("distinct", str(not (forward & backward)).lower()),
    ]
    _emit_table(args, ["set", "elements"], rows)
    return 0


# amalgam --------------------------------------------------------------


def _cmd_amalgam_reduce(args) -> int:
    spec = fileio.load_amalgam(args.spec)
    word = am.reduce(spec, fileio.parse_amalgam_word(spec, args.word))
    _emit_value(args, fileio.format_amalgam_word(spec, word))
    return 0


def _cmd_amalgam_equal(args) -> int:
    spec = fileio.load_amalgam(args.spec)
    w1 = am.reduce(spec, fileio.parse_amalgam_word(spec, args.word1))
    w2 = am.reduce(spec, fileio.parse_amalgam_word(spec, args.word2))
    _emit_value(args, am.equal(spec, w1, w2))
    return 0


def _cmd_amalgam_length(args) -> int:
    spec = fileio.load_amalgam(args.spec)
    word = am.reduce(spec, fileio.parse_amalgam_word(spec, args.word))
    _emit_value(args, am.syllable_length(word))
    return 0


# qm -------------------------------------------------------------------


def _marker(spec, args) -> tuple[int, int]:
    return fileio.parse_element_token(spec, args.a, where="--a")


def _cmd_qm_f(args) -> int:
    spec = fileio.load_amalgam(args.spec)
    word = am.reduce(spec, fileio.parse_amalgam_word(spec, args.word))
    _emit_value(args, qm.f_value(spec, _marker(spec, args), word))
    return 0


def _cmd_qm_lower_bound(args) -> int:
    spec = fileio.load_amalgam(args.spec)
    word = am.reduce(spec, fileio.parse_amalgam_word(spec, args.word))
    _emit_value(args, qm.length_lower_bound(spec, _marker(spec, args), word))
    return 0


def _cmd_qm_defect_scan(args) -> int:
    spec = fileio.load_amalgam(args.spec)
    a = _marker(spec, args)
    rng = Random(args.seed)
    rows = []
    worst: list[int] = []
    for i in range(args.samples):
        g = am.random_reduced_word(spec, rng, rng.randint(1, args.max_len))
        h = am.random_reduced_word(spec, rng, rng.randint(1, args.max_len))
        fg = qm.f_value(spec, a, g)
        fh = qm.f_value(spec, a, h)
        fgh = qm.f_value(spec, a, am.multiply(spec, g, h))
        d = fgh - fg - fh
        worst.append(d)
        rows.append((args.seed, i, len(g), len(h), fg, fh, fgh, d))
    footer = {
        "min_defect": min(worst) if worst else 0,
        "max_defect": max(worst) if worst else 0,
    }
    _emit_table(
        args, ["seed", "sample", "len_g", "len_h", "f_g", "f_h", "f_gh", "defect"], rows, footer
    )
    if worst and max(worst) > qm.PRODUCT_DEFECT:
        print(f"defect exceeded {qm.PRODUCT_DEFECT}", file=sys.stderr)
        return 1
    return 0


def _scan_alphabet(spec, args) -> dict[int, list[int]]:
    """Per-factor syllable alphabet for exhaustive scans, inverses included."""
    if args.gens:
        chosen: dict[int, set[int]] = {1: set(), 2: set()}
        for tok in args.gens.split(","):
            f, x = fileio.parse_element_token(spec, tok, where="--gens")
            chosen[f].update((x, spec.inv(f, x)))
        return {f: sorted(v) for f, v in chosen.items()}
    return {f: list(spec.factor_group(f).elements()) for f in (1, 2)}


def _reduced_words_upto(spec, alphabet: dict[int, list[int]], max_len: int):
    """All reduced words with syllables drawn from the alphabet."""
    yield am.ReducedWord()
    singles = {
        f: [x for x in alphabet[f] if x != spec.identity_of(f)] for f in (1, 2)
    }
    multis = {
        f: [x for x in alphabet[f] if not spec.in_h(f, x)] for f in (1, 2)
    }
    for length in range(1, max_len + 1):
        pool = singles if length == 1 else multis
        for start in (1, 2):
            factors = [start if i % 2 == 0 else 3 - start for i in range(length)]
            for combo in itertools.product(*(pool[f] for f in factors)):
                yield am.ReducedWord(
                    tuple(am.Syllable(f, x) for f, x in zip(factors, combo))
                )


def _cmd_qm_conjugate_scan(args) -> int:
    spec = fileio.load_amalgam(args.spec)
    a = _marker(spec, args)
    alphabet = _scan_alphabet(spec, args)
    checked = 0
    max_f = 0
    violations = []
    for g in _reduced_words_upto(spec, alphabet, args.max_len):
        for kf in (1, 2):
            for kx in spec.factor_group(kf).elements():
                value = qm.conjugate_f(spec, a, am.Syllable(kf, kx), g)
                checked += 1
                max_f = max(max_f, value)
                if value > qm.SINGLE_CONJUGATE_BOUND:
                    violations.append(
                        (
                            f"{kf}:{spec.factor_group(kf).name_of(kx)}",
                            fileio.format_amalgam_word(spec, g),
                            value,
                        )
                    )
    footer = {"checked": checked, "max_f": max_f}
    _emit_table(args, ["element", "conjugator", "f"], violations, footer)
    if violations:
        print(
            f"conjugate f exceeded {qm.SINGLE_CONJUGATE_BOUND} on {len(violations)} cases",
            file=sys.stderr,
        )
        return 1
    return 0


# witness ---------------------------------------------------------------


def _cmd_witness_run(args) -> int:
    spec = fileio.load_amalgam(args.spec)
    cfg = WitnessConfig(
        spec=spec,
        a=fileio.parse_element_token(spec, args.a, where="--a"),
        b=fileio.parse_element_token(spec, args.b, where="--b"),
        max_n=args.max_n,
    )
    rows = run_experiment(cfg)
    _emit_table(
        args,
        ["n", "syllable_length", "f", "lower_bound"],
        [(r.n, r.syllable_length, r.f, r.lower_bound) for r in rows],
    )
    bad = [r for r in rows if r.f < r.n - 1]
    if bad:
        print(f"witness growth failed at n={bad[0].n}", file=sys.stderr)
        return 1
    return 0


# hnn -------------------------------------------------------------------


def _cmd_hnn_reduce(args) -> int:
    spec = fileio.load_hnn(args.spec)
    word = hnn.britton_reduce(spec, fileio.parse_hnn_word(spec, args.word))
    _emit_value(args, fileio.format_hnn_word(spec, word))
    return 0


def _cmd_hnn_texp(args) -> int:
    spec = fileio.load_hnn(args.spec)
    _emit_value(args, hnn.t_exponent(fileio.parse_hnn_word(spec, args.word)))
    return 0


def _cmd_hnn_bound(args) -> int:
    spec = fileio.load_hnn(args.spec)
    word = fileio.parse_hnn_word(spec, args.word)
    _emit_value(args, hnn.t_length_lower_bound(word, args.max_gen_texp))
    return 0


# width -----------------------------------------------------------------


def _cmd_width_bfs(args) -> int:
    g = fileio.load_group(args.path)
    gens = {g.element(n) for n in args.gens.split(",") if n}
    if args.conjugacy_closure:
        gens = set(conjugacy_closure(g, gens))
    table = wd.bfs_lengths(g, gens)
    rows = [
        (g.name_of(x), "unreachable" if d is None else d)
        for x, d in enumerate(table.lengths)
    ]
    _emit_table(args, ["element", "length"], rows)
    return 0


def _cmd_width_quotient_check(args) -> int:
    g = fileio.load_group(args.path)
    normal = _named_subgroup(g, args.normal)
    _, proj = __import__("cwidth.groups", fromlist=["quotient"]).quotient(g, normal)
    reps = [g.element(n) for n in args.gens.split(",") if n]
    S = {proj.mapping[r] for r in reps}
    witness = wd.quotient_inequality_witness(g, normal, S)
    if witness is None:
        _emit_value(args, "PASS")
        return 0
    _emit_value(args, f"FAIL\t{g.name_of(witness)}")
    return 1


# gog ---------------------------------------------------------------------


def _cmd_gog_classify(args) -> int:
    graph = fileio.load_graph(args.path)
    verdict = classify(graph)
    _emit_table(args, ["verdict", "detail"], [(verdict.kind, verdict.detail)])
    return 0


# wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cwidth",
        description="Normal forms and conjugation-invariant width bounds over finite factors",
    )
    top = parser.add_subparsers(dest="command", required=True)

    group_p = top.add_parser("group", help="finite group files").add_subparsers(
        dest="subcommand", required=True
    )
    p = group_p.add_parser("validate")
    p.add_argument("path")
    _common_flags(p)
    p.set_defaults(handler=_cmd_group_validate)
    p = group_p.add_parser("doublecoset")
    p.add_argument("path")
    p.add_argument("--subgroup", required=True, help="comma-separated generator names")
    p.add_argument("--element", required=True)
    _common_flags(p)
    p.set_defaults(handler=_cmd_group_doublecoset)

    am_p = top.add_parser("amalgam", help="amalgam words").add_subparsers(
        dest="subcommand", required=True
    )
    p = am_p.add_parser("reduce")
    p.add_argument("spec")
    p.add_argument("word")
    _common_flags(p)
    p.set_defaults(handler=_cmd_amalgam_reduce)
    p = am_p.add_parser("equal")
    p.add_argument("spec")
    p.add_argument("word1")
    p.add_argument("word2")
    _common_flags(p)
    p.set_defaults(handler=_cmd_amalgam_equal)
    p = am_p.add_parser("length")
    p.add_argument("spec")
    p.add_argument("word")
    _common_flags(p)
    p.set_defaults(handler=_cmd_amalgam_length)

    qm_p = top.add_parser("qm", help="segment-counting quasimorphism").add_subparsers(
        dest="subcommand", required=True
    )
    p = qm_p.add_parser("f")
    p.add_argument("spec")
    p.add_argument("word")
    p.add_argument("--a", required=True, help="marker element token, e.g. 1:x")
    _common_flags(p)
    p.set_defaults(handler=_cmd_qm_f)
    p = qm_p.add_parser("lower-bound")
    p.add_argument("spec")
    p.add_argument("word")
    p.add_argument("--a", required=True)
    _common_flags(p)
    p.set_defaults(handler=_cmd_qm_lower_bound)
    p = qm_p.add_parser("defect-scan")
    p.add_argument("spec")
    p.add_argument("--a", required=True)
    _common_flags(p, seeded=True)
    p.set_defaults(handler=_cmd_qm_defect_scan)
    p = qm_p.add_parser("conjugate-scan")
    p.add_argument("spec")
    p.add_argument("--a", required=True)
    p.add_argument("--gens", default="", help="restrict conjugators to these elements")
    _common_flags(p, seeded=True)
    p.set_defaults(handler=_cmd_qm_conjugate_scan, max_len=3)

    wit_p = top.add_parser("witness", help="unbounded witness sequence").add_subparsers(
        dest="subcommand", required=True
    )
    p = wit_p.add_parser("run")
    p.add_argument("spec")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    _common_flags(p)
    p.set_defaults(handler=_cmd_witness_run)

    hnn_p = top.add_parser("hnn", help="HNN words").add_subparsers(
        dest="subcommand", required=True
    )
    p = hnn_p.add_parser("reduce")
    p.add_argument("spec")
    p.add_argument("word")
    _common_flags(p)
    p.set_defaults(handler=_cmd_hnn_reduce)
    p = hnn_p.add_parser("texp")
    p.add_argument("spec")
    p.add_argument("word")
    _common_flags(p)
    p.set_defaults(handler=_cmd_hnn_texp)
    p = hnn_p.add_parser("bound")
    p.add_argument("spec")
    p.add_argument("word")
    p.add_argument("--max-gen-texp", type=int, required=True, dest="max_gen_texp")
    _common_flags(p)
    p.set_defaults(handler=_cmd_hnn_bound)

    wd_p = top.add_parser("width", help="exact widths over finite groups").add_subparsers(
        dest="subcommand", required=True
    )
    p = wd_p.add_parser("bfs")
    p.add_argument("path")
    p.add_argument("--gens", required=True)
    p.add_argument("--conjugacy-closure", action="store_true", dest="conjugacy_closure")
    _common_flags(p)
    p.set_defaults(handler=_cmd_width_bfs)
    p = wd_p.add_parser("quotient-check")
    p.add_argument("path")
    p.add_argument("--normal", required=True, help="generators of the normal subgroup")
    p.add_argument("--gens", required=True, help="representatives of quotient generators")
    _common_flags(p)
    p.set_defaults(handler=_cmd_width_quotient_check)

    gog_p = top.add_parser("gog", help="graph-of-groups classifier").add_subparsers(
        dest="subcommand", required=True
    )
    p = gog_p.add_parser("classify")
    p.add_argument("path")
    _common_flags(p)
    p.set_defaults(handler=_cmd_gog_classify)

    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except (fileio.FormatError, GroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())
