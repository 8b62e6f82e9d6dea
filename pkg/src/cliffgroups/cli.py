"""Command-line interface: ``cliffgroups <command> ...``.

Exit codes: 0 success, 1 failed checks or arithmetic errors, 2 usage errors
(including malformed expressions).
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import Multivector, Signature, all_signatures
from .errors import CliffordError, ParseError, SingularError, UnsupportedGroup
from .groups import analyze, chi, parse_group, psi
from .parser import evaluate
from .verify import (
    REGISTRY, emit_lattice, render_table1, replay, report_json, run_suite, small_n_catalog,
    table1_report,
)


class UsageError(Exception):
    pass


def _add_sig(p: argparse.ArgumentParser):
    p.add_argument("--p", type=int, help="number of generators squaring to +1")
    p.add_argument("--q", type=int, default=0, help="number of generators squaring to -1")
    p.add_argument("--complex", action="store_true", help="use the complex algebra Cl(C^n)")
    p.add_argument("--n", type=int, help="dimension for --complex")


def _sig(args) -> Signature:
    try:
        if args.complex:
            if args.n is None:
                raise UsageError("--complex needs --n")
            return Signature.complex(args.n)
        if args.p is None:
            if args.n is not None:
                return Signature(args.n, args.q)
            raise UsageError("give --p/--q or --complex --n")
        return Signature(args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cliffgroups", description="Exact Clifford algebra groups toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression exactly")
    _add_sig(p)
    p.add_argument("expr")

    p = sub.add_parser("member", help="decide group membership of an element")
    _add_sig(p)
    p.add_argument("--group", required=True, help="e.g. Gamma, Gamma:3, GammaParity:0, GammaBar:23, P, A, Q'")
    p.add_argument("expr")

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true", help="include elapsed_ms per check in JSON")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--real-only", action="store_true")

    p = sub.add_parser("table1", help="Lie algebra table with dimension checks")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("catalog", help="coincidence classes for small n")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("counterexamples", help="replay the witness registry")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("lattice", help="group inclusion lattice as DOT")
    return ap


def _diagnostic(T, g) -> str:
    """The value that decides membership, for display."""
    a = analyze(T)
    spec = g.subspace(T.n)
    if spec is not None:
        r = a.preserves(spec)
        if r:
            return f"T {spec.label} T^-1 stays in {spec.label}"
        b = Multivector.basis(T.sig, r.blade)
        return f"T {b} T^-1 = {r.image}, outside {spec.label}"
    t = g.tag
    if t in ("A", "APrime", "Q", "QPrime", "Pin", "Spin"):
        return f"psi = {psi(T)}"
    if t in ("B", "BPrime"):
        return f"chi = {chi(T)}"
    if t == "P":
        return f"hat(T) T^-1 = {a.hat_ratio}"
    return f"T^-1 = {a.inv}"


def _cmd_eval(args, out):
    sig = _sig(args)
    out.write(f"{evaluate(args.expr, sig)}\n")
    return 0


def _cmd_member(args, out):
    sig = _sig(args)
    try:
        g = parse_group(args.group)
        g.validate(sig.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    T = evaluate(args.expr, sig)
    ok = analyze(T).member(g)
    out.write(f"{str(ok).lower()}\n{_diagnostic(T, g)}\n")
    return 0


def _cmd_verify(args, out):
    if args.max_n < 1:
        raise UsageError("--max-n must be positive")
    fields = ("real",) if args.real_only else ("real", "complex")
    reports = run_suite(args.max_n, args.seed, fields, tol=args.tol)
    failed = [r for r in reports if not r.passed]
    if args.json:
        out.write(report_json(reports, args.seed, args.max_n, args.timings))
    else:
        for r in reports:
            s = r.signature
            where = f"Cl({s['p']},{s['q']})" if s.get("field") == "real" else (
                f"Cl(C^{s['p']})" if s.get("field") == "complex" else "any")
            line = f"{r.result.upper():4} {r.id} [{where}]"
            if r.witness:
                line += f" witness: {r.witness}"
            out.write(line + "\n")
        out.write(f"{len(reports) - len(failed)}/{len(reports)} checks passed\n")
    return 1 if failed else 0


def _cmd_table1(args, out):
    if not 1 <= args.max_n <= 10:
        raise UsageError("--max-n must be in 1..10")
    rows = table1_report(args.max_n)
    if args.json:
        out.write(json.dumps(rows, indent=2) + "\n")
    else:
        out.write(render_table1(rows) + "\n")
    return 0 if all(r["match"] for r in rows) else 1


def _cmd_catalog(args, out):
    if not 1 <= args.max_n <= 5:
        raise UsageError("--max-n must be in 1..5")
    ok = True
    doc = []
    for n in range(1, args.max_n + 1):
        rep = small_n_catalog(n, args.seed)
        ok &= rep.ok
        classes = [[g.name for g in c] for c in rep.expected]
        doc.append({"n": n, "classes": classes, "ok": rep.ok,
                    "signatures": [{"signature": s.sig.as_dict(), "ok": s.ok} for s in rep.per_signature]})
        if not args.json:
            out.write(f"n = {n}: {len(classes)} distinct group(s) ({'confirmed' if rep.ok else 'MISMATCH'} "
                      f"in {len(rep.per_signature)} signatures)\n")
            for c in classes:
                out.write("  " + " = ".join(c) + "\n")
    if args.json:
        out.write(json.dumps(doc, indent=2) + "\n")
    return 0 if ok else 1


def _cmd_counterexamples(args, out):
    ok = True
    doc = []
    for entry in REGISTRY:
        for n in entry.ns:
            for sig in all_signatures(n):
                if not entry.admissible(sig):
                    continue
                r = replay(entry, sig)
                ok &= r.ok
                doc.append({"id": entry.id, "claim": entry.paper_ref, "signature": sig.as_dict(),
                            "ok": r.ok, "lines": r.lines})
                if not args.json:
                    out.write(f"[{'ok' if r.ok else 'FAIL'}] {entry.id} in {sig.label}: {entry.paper_ref}\n")
                    for line in r.lines:
                        out.write(f"    {line}\n")
    if args.json:
        out.write(json.dumps(doc, indent=2) + "\n")
    return 0 if ok else 1


def _cmd_lattice(args, out):
    out.write(emit_lattice("DOT"))
    return 0


COMMANDS = {
    "eval": _cmd_eval, "member": _cmd_member, "verify": _cmd_verify, "table1": _cmd_table1,
    "catalog": _cmd_catalog, "counterexamples": _cmd_counterexamples, "lattice": _cmd_lattice,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ParseError, UnsupportedGroup) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (SingularError, CliffordError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    except BrokenPipeError:
        # output piped into something like head; not an error
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
