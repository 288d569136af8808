"""Command-line front end.

Subcommands: gen, verify, compat, lift, params, table, sim.  All commands
are scriptable: data goes to stdout or --out, diagnostics to stderr, no
prompts.  Exit codes: 0 success, 1 failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction

from . import constructions as cons
from . import lifting
from .core import Pda, PdaParams, params, validate
from .errors import PdaError
from .gridio import load_pda, pda_to_json, save_pda, serialize_grid
from .simulate import run
from .tables import render_fig2_csv, render_table1_csv

__all__ = ["main"]


def _write_text(text: str, out: "str | None") -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _emit_pda(p: Pda, out: "str | None", fmt: str) -> None:
    if out is None:
        _write_text(pda_to_json(p) + "\n" if fmt == "json" else serialize_grid(p), None)
    else:
        save_pda(p, out, fmt)


def _witness_line(w) -> str:
    return f"{w.label} ({w.cell0[0]},{w.cell0[1]}) ({w.cell1[0]},{w.cell1[1]}) mirror=({w.mirror[0]},{w.mirror[1]})"


# ----------------------------------------------------------------- gen

_GENERATORS = {
    "identity": (2, lambda a, labels, anti: cons.identity(a[0], a[1], anti)),
    "g": (1, lambda a, labels, anti: cons.g_array(a[0], labels)),
    "h": (1, lambda a, labels, anti: cons.h_array(a[0], labels)),
    "j": (2, lambda a, labels, anti: cons.filled(a[0], a[1], labels)),
    "star": (2, lambda a, labels, anti: cons.all_star(a[0], a[1])),
    "mn": (2, lambda a, labels, anti: cons.mn(a[0], a[1], labels)),
    "mnrev": (2, lambda a, labels, anti: cons.mn_reverse(a[0], a[1], labels)),
    "shangguan": (3, lambda a, labels, anti: cons.shangguan_direct(a[0], a[1], a[2], labels)),
    "yan-half": (1, lambda a, labels, anti: cons.yan_half_memory(a[0])),
    "mn-recursive": (2, lambda a, labels, anti: lifting.mn_recursive(a[0], a[1])),
    "shangguan-recursive": (3, lambda a, labels, anti: lifting.shangguan_recursive(a[0], a[1], a[2])),
    "corollary-odd": (2, lambda a, labels, anti: lifting.odd_tiling_lift(a[0], a[1])),
}


def _cmd_gen(args) -> int:
    name = args.name
    labels = [int(x) for x in args.labels.split(",")] if args.labels else None
    if name == "odd-tiling":
        if len(args.params) != 1:
            print("gen odd-tiling takes one parameter: g", file=sys.stderr)
            return 2
        fam = cons.odd_tiling(args.params[0])
        prefix = args.out or f"odd_tiling_g{args.params[0]}"
        ext = "json" if args.format == "json" else "grid"
        for tag, p in (("p0", fam.p0), ("p1", fam.p1), ("pstar", fam.pstar)):
            save_pda(p, f"{prefix}.{tag}.{ext}", args.format)
        print(f"wrote {prefix}.p0/.p1/.pstar .{ext}", file=sys.stderr)
        return 0
    if name not in _GENERATORS:
        print(f"unknown generator {name!r}", file=sys.stderr)
        return 2
    arity, fn = _GENERATORS[name]
    if len(args.params) != arity:
        print(f"gen {name} takes {arity} parameter(s)", file=sys.stderr)
        return 2
    try:
        p = fn(args.params, labels, args.anti)
    except (ValueError, PdaError) as exc:
        print(f"bad parameters: {exc}", file=sys.stderr)
        return 2
    _emit_pda(p, args.out, args.format)
    return 0


# ----------------------------------------------------------------- verify

def _params_line(info: PdaParams) -> str:
    g = f" g={info.g}" if info.g is not None else ""
    return (
        f"valid ({info.k},{info.f},{info.z},{info.s}){g} "
        f"M/N={info.memory_ratio} R={info.rate}"
    )


def _cmd_verify(args) -> int:
    p = load_pda(args.file)
    report = validate(p, args.labels)
    if report.ok:
        print(_params_line(params(p, args.labels)))
        return 0
    for v in report.violations:
        if v.condition == "C1":
            k, got, expected = v.witness
            print(f"C1 column={k} stars={got} expected={expected}")
        elif v.condition == "C2":
            print(f"C2 missing={v.witness[0]}")
        else:
            (j1, k1), (j2, k2), (mr, mc) = v.witness
            print(f"C3 {p.cell(j1, k1)} ({j1},{k1}) ({j2},{k2}) mirror=({mr},{mc})")
    return 1


# ----------------------------------------------------------------- compat

def _cmd_compat(args) -> int:
    from . import compatibility as compat

    members = [load_pda(f) for f in args.files]
    refs = [load_pda(f) for f in args.ref]
    mode = args.mode
    if mode in ("full", "right", "left"):
        if len(members) != 2 or len(refs) != 1:
            print(f"--mode {mode} takes two arrays and one --ref", file=sys.stderr)
            return 2
        check = {
            "full": compat.is_blackburn_compatible,
            "right": compat.is_right_compatible,
            "left": compat.is_left_compatible,
        }[mode]
        report = check(members[0], members[1], refs[0])
    elif mode == "cstar":
        if len(refs) != 1:
            print("--mode cstar takes one --ref", file=sys.stderr)
            return 2
        report = compat.check_condition_cstar(members, refs[0])
    else:
        g = len(members)
        if len(refs) != g * (g - 1):
            print(
                f"--mode family with {g} members takes {g * (g - 1)} --ref "
                "(ordered pairs (0,1),(0,2),...,(1,0),...)",
                file=sys.stderr,
            )
            return 2
        pairs = [(i, j) for i in range(g) for j in range(g) if i != j]
        fam = compat.GenFamily.of(members, dict(zip(pairs, refs)))
        report = compat.is_generalized_family(fam)
    for w in report.witnesses:
        print(_witness_line(w))
    return 0 if report.ok else 1


# ----------------------------------------------------------------- lift

def _cmd_lift(args) -> int:
    members = [load_pda(f) for f in args.member]
    refs = [load_pda(f) for f in args.ref]
    ext = "json" if args.format == "json" else "grid"
    if args.mode in ("uniform", "basic"):
        if args.base is None or len(refs) > 1:
            print(f"--mode {args.mode} takes a base file and at most one --ref", file=sys.stderr)
            return 2
        base = load_pda(args.base)
        if args.mode == "basic":
            if len(members) != 1:
                print("--mode basic takes exactly one --member", file=sys.stderr)
                return 2
            outcome = lifting.basic_lift(base, members[0])
        else:
            if not refs:
                print("--mode uniform needs --ref", file=sys.stderr)
                return 2
            outcome = lifting.uniform_lift(base, members, refs[0])
        _emit_pda(outcome.result, args.out, args.format)
        if args.out:
            _write_text(
                json.dumps(outcome.ledger_dict(), indent=2) + "\n",
                args.out + ".ledger.json",
            )
        return 0
    if args.mode == "family":
        if len(refs) != 1 or len(args.q_member) < 1 or args.q_ref is None:
            print(
                "--mode family takes --member..., one --ref, --q-member... and --q-ref",
                file=sys.stderr,
            )
            return 2
        q_members = [load_pda(f) for f in args.q_member]
        qstar = load_pda(args.q_ref)
        lifted, rstar = lifting.lift_family(members, refs[0], q_members, qstar)
        prefix = args.out or "lifted"
        for i, r in enumerate(lifted):
            save_pda(r, f"{prefix}.r{i}.{ext}", args.format)
        save_pda(rstar, f"{prefix}.rstar.{ext}", args.format)
        _write_text(
            json.dumps({"members": len(lifted), "reference": f"{prefix}.rstar.{ext}"}) + "\n",
            f"{prefix}.ledger.json",
        )
        print(f"wrote {prefix}.r0..r{len(lifted) - 1} and {prefix}.rstar", file=sys.stderr)
        return 0
    # nonuniform
    g = len(members)
    if len(refs) != g * (g - 1):
        print(
            f"--mode nonuniform with {g} members takes {g * (g - 1)} --ref "
            "(ordered pairs (0,1),(0,2),...,(1,0),...)",
            file=sys.stderr,
        )
        return 2
    pairs = [(i, j) for i in range(g) for j in range(g) if i != j]
    result = lifting.nonuniform_lift(members, dict(zip(pairs, refs)), args.orientation)
    _emit_pda(result, args.out, args.format)
    if args.out:
        _write_text(
            json.dumps({"orientation": args.orientation, "members": g}) + "\n",
            args.out + ".ledger.json",
        )
    return 0


# ----------------------------------------------------------------- params

def _parse_family(text: str) -> lifting.ParamTuple:
    parts = [int(x) for x in text.split(",")]
    if len(parts) not in (6, 8):
        raise ValueError(
            "family tuple is K,f,Zm,Zr,gb,gL with optional ,member_labels,ref_labels"
        )
    return lifting.ParamTuple(*parts)


def _cmd_params(args) -> int:
    families = [_parse_family(text) for text in args.family]
    if args.member_labels is not None or args.ref_labels is not None:
        if len(families) != 1:
            print("--member-labels/--ref-labels apply to a single --family", file=sys.stderr)
            return 2
        families[0] = replace(
            families[0],
            member_labels=args.member_labels,
            ref_labels=args.ref_labels,
        )
    combined = families[0]
    for nxt in families[1:]:
        combined = lifting.lift_family_params(combined, nxt)
        print(
            f"{combined.notation()} member_labels={combined.member_labels} "
            f"ref_labels={combined.ref_labels}"
        )
    if args.base is None:
        if len(families) == 1:
            print(
                f"{combined.notation()} member_labels={combined.member_labels} "
                f"ref_labels={combined.ref_labels}"
            )
        return 0
    k, f, z, s, g = (int(x) for x in args.base.split(","))
    base = PdaParams(k, f, z, s, g, Fraction(z, f), Fraction(s, f))
    out = lifting.lifted_params(base, combined)
    print(_params_line(out))
    return 0


# ----------------------------------------------------------------- table / sim

def _cmd_table(args) -> int:
    csv = render_table1_csv() if args.which == "table1" else render_fig2_csv()
    _write_text(csv, args.out)
    return 0


def _cmd_sim(args) -> int:
    p = load_pda(args.pda)
    demands = [int(x) for x in args.demands.split(",")] if args.demands else None
    report = run(p, args.files, args.size, demands=demands, seed=args.seed)
    print(
        json.dumps(
            {
                "decode_ok": list(report.decode_ok),
                "rate": str(report.achieved_rate),
                "subpacketization": report.subpacketization,
                "transmissions": report.transmissions_count,
                "bytes_sent": report.bytes_sent,
            }
        )
    )
    return 0 if report.all_ok else 1


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pdakit",
        description="Placement delivery arrays: generate, verify, lift, simulate.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a named PDA family")
    g.add_argument("name")
    g.add_argument("params", nargs="*", type=int)
    g.add_argument("--labels", help="comma-separated label values")
    g.add_argument("--anti", action="store_true", help="anti-diagonal identity")
    g.add_argument("-o", "--out")
    g.add_argument("--format", choices=("grid", "json"), default="grid")
    g.set_defaults(func=_cmd_gen)

    v = sub.add_parser("verify", help="validate a PDA file and print its parameters")
    v.add_argument("file")
    v.add_argument("--labels", type=int, help="declared label count for the C2 check")
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("compat", help="check Blackburn-compatibility")
    c.add_argument("files", nargs="+")
    c.add_argument("--mode", choices=("full", "right", "left", "family", "cstar"), required=True)
    c.add_argument("--ref", action="append", default=[], help="reference grid (repeatable)")
    c.set_defaults(func=_cmd_compat)

    l = sub.add_parser("lift", help="lift a base PDA")
    l.add_argument("base", nargs="?")
    l.add_argument("--mode", choices=("uniform", "basic", "family", "nonuniform"), required=True)
    l.add_argument("--member", action="append", default=[], help="member grid (repeatable)")
    l.add_argument("--ref", action="append", default=[], help="reference grid (repeatable)")
    l.add_argument("--q-member", action="append", default=[], help="lifting family member")
    l.add_argument("--q-ref", help="lifting family reference")
    l.add_argument("--orientation", choices=("main", "anti"), default="main")
    l.add_argument("-o", "--out")
    l.add_argument("--format", choices=("grid", "json"), default="grid")
    l.set_defaults(func=_cmd_lift)

    p = sub.add_parser("params", help="evaluate the lifted-parameter calculus")
    p.add_argument("--base", help="base parameters as K,f,Z,S,g")
    p.add_argument("--family", action="append", required=True, help="family tuple K,f,Zm,Zr,gb,gL[,Lm,Lr]")
    p.add_argument("--member-labels", type=int)
    p.add_argument("--ref-labels", type=int)
    p.set_defaults(func=_cmd_params)

    t = sub.add_parser("table", help="emit tradeoff tables as CSV")
    t.add_argument("which", choices=("table1", "fig2"))
    t.add_argument("-o", "--out")
    t.set_defaults(func=_cmd_table)

    s = sub.add_parser("sim", help="simulate one caching round")
    s.add_argument("--pda", required=True)
    s.add_argument("--files", type=int, required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--demands", help="comma-separated demand vector")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=_cmd_sim)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PdaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
