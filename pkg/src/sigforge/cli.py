"""Command-line front end: check, emit, eval, enumerate and selfcheck."""
from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import replace
from pathlib import Path

from .amds import WHAT, emit
from .diagnostics import Diagnostic, SigforgeError, dump_json
from .elab import load_file
from .inner.pretty import AGDA, ASCII, show_unit

EXIT_OK, EXIT_DIAG, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _what(text: str) -> tuple[str, ...]:
    parts = tuple(p.strip() for p in text.split(",") if p.strip())
    bad = [p for p in parts if p not in WHAT]
    if bad or not parts:
        raise argparse.ArgumentTypeError(
            f"--what takes a comma-separated subset of {','.join(WHAT)}; got {text!r}")
    return tuple(w for w in WHAT if w in parts)


def _depth(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--depth must be an integer, got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError("--depth must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sigforge", description="Algebraic signatures to their "
                                "algebras, morphisms, displayed algebras and sections.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, many: bool = True):
        sp.add_argument("inputs", nargs="+" if many else 1, metavar="FILE")
        sp.add_argument("--diag-json", action="store_true",
                        help="report diagnostics as a JSON array on stderr")

    sp = sub.add_parser("check", help="parse and elaborate signatures")
    common(sp)
    sp = sub.add_parser("emit", help="emit interpretations as inner-theory text")
    common(sp)
    sp.add_argument("--what", type=_what, default=("a", "m", "d", "s"))
    sp.add_argument("--style", choices=(AGDA, ASCII), default=AGDA)
    sp.add_argument("--out", default="stdout", help="output file, or stdout")
    sp = sub.add_parser("eval", help="evaluate a term in an integer (displayed) algebra")
    common(sp, many=False)
    sp.add_argument("--algebra")
    sp.add_argument("--dalgebra")
    sp.add_argument("--term", required=True)
    sp = sub.add_parser("enumerate", help="list the closed terms of a simple signature")
    common(sp, many=False)
    sp.add_argument("--depth", type=_depth, required=True)
    sp = sub.add_parser("selfcheck", help="run the randomized law checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--diag-json", action="store_true")
    return p


def _per_file(args, one) -> list[str]:
    """Run `one` on every input; failures are collected, not fatal."""
    results, diags = [], []
    for path in args.inputs:
        try:
            results.append(one(path))
        except SigforgeError as e:
            diags.append(e.diag)
    args.diags = diags
    return results


def _check(args, out) -> None:
    def one(path):
        sig = load_file(path)
        return (f"ok: {path}: signature {sig.name} (profile {sig.profile.value}, "
                f"{len(sig.entries)} entries)\n")
    out.write("".join(_per_file(args, one)))


def _emit(args, out) -> None:
    texts = _per_file(args, lambda path: show_unit(emit(load_file(path), args.what), args.style))
    text = "\n".join(texts)
    if args.out == "stdout":
        out.write(text)
    else:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as e:
            from .diagnostics import fail
            raise fail("E_IO", f"cannot write {args.out}: {e.strerror}") from None


def _eval(args, out) -> None:
    from .term_algebra import (AlgebraSpec, DispAlgebraSpec, eval_eliminator, eval_recursor,
                               load_json, parse_term)
    if (args.algebra is None) == (args.dalgebra is None):
        raise UsageError("eval needs exactly one of --algebra and --dalgebra")
    sig = load_file(args.inputs[0])
    t = parse_term(sig, args.term)
    if args.algebra is not None:
        value = eval_recursor(sig, AlgebraSpec.from_json(sig, load_json(args.algebra)), t)
    else:
        value = eval_eliminator(sig, DispAlgebraSpec.from_json(sig, load_json(args.dalgebra)), t)
    out.write(f"{value}\n")


def _enumerate(args, out) -> None:
    from .term_algebra import enumerate_terms
    sig = load_file(args.inputs[0])
    names = [n for n, _ in sig.entries]
    for t in enumerate_terms(sig, args.depth):
        out.write(t.show(names) + "\n")


def _selfcheck(args, out) -> bool:
    from .laws import selfcheck
    lines = selfcheck(args.seed, args.samples)
    out.write("".join(line + "\n" for line in lines))
    return any("counterexample" in line for line in lines)


COMMANDS = {"check": _check, "emit": _emit, "eval": _eval, "enumerate": _enumerate,
            "selfcheck": _selfcheck}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with redirect_stdout(stdout), redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    buf = io.StringIO()  # stdout is written in one piece at the end
    args.diags = []
    diags: list[Diagnostic] = []
    failed = False
    try:
        failed = bool(COMMANDS[args.command](args, buf))
    except UsageError as e:
        stderr.write(f"sigforge: error: {e}\n")
        return EXIT_USAGE
    except SigforgeError as e:
        diags.append(e.diag)
    diags = args.diags + diags
    inputs = getattr(args, "inputs", None)
    if inputs and len(inputs) == 1:
        diags = [replace(d, file=inputs[0]) if d.file == "<input>" else d for d in diags]
    if args.diag_json:
        stderr.write(dump_json(diags) + "\n")
    else:
        for d in diags:
            stderr.write(d.render() + "\n")
    stdout.write(buf.getvalue())
    return EXIT_DIAG if diags or failed else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
