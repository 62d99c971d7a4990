"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 analysis refusal (not Toeplitz /
nontrivial height), 3 internal invariant violation.  All output is
deterministic for identical invocations.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import digits as digitmod
from . import kernel as kernelmod
from . import toeplitz as toeplitzmod
from .automata import build_direct, build_reverse_semigroup, equivalent, minimize, reverse_and_determinize
from .errors import InputError, Refusal, SubstratumError
from .oracle import expand, window_for_range
from .semigroup import closure, structure_semigroup
from .substitution import Substitution

PROG = "substratum"


def load_substitution(path: str) -> Substitution:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    for key in ("alphabet", "length", "rules"):
        if key not in data:
            raise InputError(f"{path}: missing key {key!r}")
    return Substitution.from_parts(
        data["alphabet"], data["length"], data["rules"], data.get("seed")
    )


def parse_range(text: str) -> tuple[int, int]:
    try:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise InputError(f"range must look like lo..hi, got {text!r}") from None
    if lo > hi:
        raise InputError(f"empty range {text!r}")
    return lo, hi


# -- verbs ------------------------------------------------------------------


def cmd_validate(args) -> int:
    sub = load_substitution(args.file)
    print(f"ok: {sub}")
    if sub.seed is not None:
        a_l, a_r = sub.seed
        print(f"seed: {sub.alphabet[a_l]}·{sub.alphabet[a_r]} (period {sub.seed_period()})")
    return 0


def cmd_simplify(args) -> int:
    sub = load_substitution(args.file)
    simplified, exponent = sub.simplify()
    print(f"exponent: {exponent}")
    print(f"length: {simplified.length}")
    print(f"rules: {simplified}")
    return 0


def cmd_fixed_point(args) -> int:
    sub = load_substitution(args.file)
    lo, hi = parse_range(args.range)
    word = sub.fixed_point_window(lo, hi)
    print(sub.alphabet.word_str(tuple(sub.alphabet.index(s) for s in word)))
    return 0


def cmd_automaton(args) -> int:
    sub = load_substitution(args.file)
    if args.reading == "direct":
        machine = build_direct(sub)
    else:
        machine = build_reverse_semigroup(sub).dfao
    if args.minimize:
        machine = minimize(machine)
    if args.format == "dot":
        sys.stdout.write(machine.to_dot())
    elif args.format == "json":
        print(json.dumps(machine.to_json_dict(), indent=2, ensure_ascii=False, sort_keys=False))
    else:
        names = machine.state_names()
        print(f"reading: {machine.reading}   states: {machine.num_states}   ell: {machine.ell}")
        init_neg = names[machine.initial_neg] if machine.initial_neg is not None else "-"
        print(f"initial: nonneg={names[machine.initial_nonneg]} neg={init_neg}")
        for s in range(machine.num_states):
            row = " ".join(f"{d}->{names[machine.delta[s][d]]}" for d in range(machine.ell))
            out_r = machine.out_alphabet[machine.out_nonneg[s]]
            out_l = machine.out_alphabet[machine.out_neg[s]] if machine.out_neg else "-"
            print(f"{names[s]:>16}  {row}  out+={out_r} out-={out_l}")
    return 0


def cmd_kernel(args) -> int:
    sub = load_substitution(args.file)
    elements = kernelmod.enumerate_kernel(sub, side=args.side)
    print(f"kernel size: {len(elements)}")
    for el in elements:
        sample = "".join(el.sample) if all(len(s) == 1 for s in el.sample) else " ".join(el.sample)
        print(f"e={el.e} j={el.j}  {el.class_map.vector():>16}  {sample}")
    if args.depth is not None:
        brute = kernelmod.brute_force_kernel_for(sub, args.depth, side=args.side)
        print(f"brute-force count at depth {args.depth}: {brute.count}")
    return 0


def cmd_semigroup(args) -> int:
    sub = load_substitution(args.file)
    struct = structure_semigroup(sub)
    cl = closure(sub.columns())
    print(f"structure semigroup ({len(struct.elements)} elements):")
    for m in struct.elements:
        print(f"  {m.vector()}")
    print(f"stabilizing exponent: {struct.stabilizing_exponent}")
    print(f"column closure size: {len(cl.elements)}  min rank: {cl.min_rank}")
    if not struct.anti_chain_ok:
        print("warning: divisor chain containment failed on the scanned range")
    return 0


def cmd_toeplitz(args) -> int:
    sub = load_substitution(args.file)
    lo, hi = parse_range(args.range)
    report = toeplitzmod.aperiodic_in_range(sub, lo, hi, certify=args.certify)
    print(f"aperiodicity heuristic: {'aperiodic' if report.aperiodic_heuristic else 'PERIODIC?'}")
    for v in report.verdicts:
        if v.is_periodic():
            print(
                f"{v.index:>6}  periodic  period={v.period} letter={v.letter} "
                f"states=({v.state_pos.vector()}, {v.state_neg.vector()})"
            )
        else:
            print(
                f"{v.index:>6}  aperiodic  states=({v.state_pos.vector()}, {v.state_neg.vector()})"
            )
    if report.certified:
        if report.inconsistencies:
            for line in report.inconsistencies:
                print(f"INCONSISTENT: {line}")
            print(report.summary())
            return 3
        print(f"certified against the window oracle: {len(report.verdicts)} indices")
    print(report.summary())
    return 0


def cmd_reduced_graph(args) -> int:
    sub = load_substitution(args.file)
    graph = toeplitzmod.reduced_graph(sub)
    if args.format == "dot":
        sys.stdout.write(graph.to_dot())
        return 0
    print(f"vertices ({len(graph.vertices)}), removed {graph.removed} constant states:")
    for label in graph.vertex_labels:
        print(f"  {label}")
    print(f"edges: {len(graph.edges)}")
    for cycle in graph.cycles:
        addr = "-" if cycle.address is None else str(cycle.address)
        prefix = ",".join(map(str, cycle.prefix_digits)) or "ε"
        body = ",".join(map(str, cycle.cycle_digits))
        print(f"cycle ({body})* after {prefix}: address {addr}")
    return 0


def cmd_check(args) -> int:
    sub = load_substitution(args.file)
    failures = 0

    def report(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        if ok:
            print(f"ok: {name}")
        else:
            failures += 1
            print(f"FAIL: {name}{' (' + detail + ')' if detail else ''}")

    report("validate", True)

    ok = all(
        digitmod.to_int(digitmod.to_digits(n, sub.length)) == n for n in range(-2000, 2001)
    )
    report("digit round-trip", ok)

    simplified, exponent = sub.simplify()
    report(
        f"simplify (exponent {exponent})",
        simplified.column(0).is_idempotent()
        and simplified.column(simplified.length - 1).is_idempotent(),
    )

    if sub.seed is None:
        print("note: no seed given; machine and kernel checks skipped")
        return 3 if failures else 0

    small = expand(sub, 2)
    large = expand(sub, 3)
    report(
        "window self-consistency",
        all(small[i] == large[i] for i in range(small.lo, small.hi + 1)),
    )

    span = 1000
    window = window_for_range(sub, -span, span)
    direct = build_direct(sub)
    reverse = build_reverse_semigroup(sub)
    bad = [n for n in range(-span, span + 1) if direct.run(n) != window.letter(n)]
    report(f"direct machine vs oracle on ±{span}", not bad, f"first mismatch {bad[:1]}")
    bad = [n for n in range(-span, span + 1) if reverse.run(n) != window.letter(n)]
    report(f"reverse machine vs oracle on ±{span}", not bad, f"first mismatch {bad[:1]}")

    det = reverse_and_determinize(direct)
    eq = equivalent(reverse, det)
    report("determinized reversal equals semigroup machine", eq.equal, f"witness {eq.witness}")

    min_rev = minimize(reverse)
    report("minimize idempotent", minimize(min_rev).num_states == min_rev.num_states)

    elements = kernelmod.enumerate_kernel(sub)
    min_det = minimize(det)
    report(
        "kernel cardinality equals both minimal machines",
        len(elements) == min_rev.num_states == min_det.num_states,
        f"kernel {len(elements)}, machines {min_rev.num_states}/{min_det.num_states}",
    )

    depth = max(el.e for el in elements) or 1
    try:
        brute_small = kernelmod.brute_force_kernel_for(sub, depth - 1) if depth > 1 else None
        brute = kernelmod.brute_force_kernel_for(sub, depth)
        ok = brute.count == len(elements)
        if brute_small is not None:
            ok = ok and brute_small.count <= brute.count
        report(
            "brute-force kernel stabilizes at the symbolic count",
            ok,
            f"{brute_small.count if brute_small else '-'} -> {brute.count} vs {len(elements)}",
        )
    except SubstratumError as exc:
        print(f"note: brute-force kernel depth {depth} skipped ({exc})")

    p_r, p_l = sub.seed_periods()
    ok = True
    for n in (0, 1, 7, 19, -1, -2, -9):
        ds = digitmod.to_digits(n, sub.length)
        pad_by = p_r if n >= 0 else p_l
        side = "nonneg" if n >= 0 else "neg"
        base_len = len(ds)
        if base_len % pad_by:
            ds = digitmod.pad(ds, base_len + pad_by - base_len % pad_by)
        padded = digitmod.pad(ds, len(ds) + pad_by)
        if direct.run_word(ds.digits, side) != direct.run_word(padded.digits, side):
            ok = False
        if reverse.dfao.run_word(ds.digits, side) != reverse.dfao.run_word(padded.digits, side):
            ok = False
    report("padding invariance", ok)

    # column-map / subsequence duality on the right side of the fixed point
    length = 4 * sub.length**2
    word = sub.fixed_point_window(0, length * sub.length)
    ok = True
    for r in range(sub.length):
        col = sub.column(r)
        for n in range(length):
            if word[sub.length * n + r] != sub.alphabet[col.table[sub.alphabet.index(word[n])]]:
                ok = False
    report("subsequence/column duality", ok)

    try:
        rng = toeplitzmod.aperiodic_in_range(sub, -200, 200, certify=True)
        report("toeplitz verdicts vs oracle on ±200", not rng.inconsistencies)
        print(rng.summary())
    except Refusal as exc:
        print(f"note: toeplitz analysis refused ({exc}); skipped")

    return 3 if failures else 0


# -- argument plumbing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Analyze constant-length substitutions: automata, kernels, semigroups, Toeplitz structure.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name: str, func, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="substitution JSON file")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the substitution invariants")
    add("simplify", cmd_simplify, "print the least power with idempotent end columns")

    p = add("fixed-point", cmd_fixed_point, "print a window of the two-sided fixed point")
    p.add_argument("--range", required=True, help="window lo..hi (e.g. -8..8)")

    p = add("automaton", cmd_automaton, "build the direct or reverse machine")
    p.add_argument("--reading", choices=["direct", "reverse"], default="direct")
    p.add_argument("--format", choices=["dot", "json", "table"], default="table")
    p.add_argument("--minimize", action="store_true", help="minimize before printing")

    p = add("kernel", cmd_kernel, "enumerate the ell-kernel")
    p.add_argument("--side", choices=[kernelmod.ONE_SIDED, kernelmod.TWO_SIDED], default=kernelmod.TWO_SIDED)
    p.add_argument("--depth", type=int, default=None, help="also brute-force count to this depth")

    add("semigroup", cmd_semigroup, "compute the structure semigroup")

    p = add("toeplitz", cmd_toeplitz, "classify indices as periodic or aperiodic")
    p.add_argument("--range", required=True, help="index range lo..hi")
    p.add_argument("--certify", action="store_true", help="cross-validate against the window oracle")

    p = add("reduced-graph", cmd_reduced_graph, "reduced graph of the semigroup machine")
    p.add_argument("--format", choices=["dot", "text"], default="dot")

    add("check", cmd_check, "run the full invariant suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Refusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except SubstratumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
