"""
The ``hitkernel`` command.

::

    hitkernel check [--json] [--root DIR] [--manifest FILE] FILES...
    hitkernel normalize [--ctx FILES...] EXPR
    hitkernel typeof [--ctx FILES...] EXPR
    hitkernel selftest [--terms N] [--programs N] [--seed S] [--no-library]

Exit status is 0 on success, 1 for check, assertion or property failures and
2 for usage errors, unreadable files and unresolvable imports.
"""

import argparse
import json
import logging
import sys

from .diagnostics import HitKernelError, E_IMPORT, E_IO
from .frontend import elaborate_term, lex, parse_term, pretty
from .loader import Loader, check_manifest, load_environment
from .normalizer import GlobalEnv, normalize
from .typechecker import Context, infer, show_inferred


__all__ = [
    "build_parser",
    "main",
]


logger = logging.getLogger(__name__)

RECURSION_LIMIT = 20000


def _exit_code(exc):
    return 2 if exc.code in (E_IO, E_IMPORT) else 1


def _report_error(exc):
    print(str(exc.diagnostic), file=sys.stderr)
    return _exit_code(exc)


def _split_ctx(args):
    """``--ctx a.hk b.hk EXPR`` leaves EXPR inside the ``--ctx`` list."""
    ctx = list(args.ctx or [])
    expr = args.expr
    if expr is None:
        if not ctx:
            raise SystemExit("hitkernel %s: an expression is required"
                             % args.command)
        expr = ctx.pop()
    return ctx, expr


def _load_expression(args):
    ctx_files, text = _split_ctx(args)
    env = load_environment(ctx_files, args.root) if ctx_files \
        else GlobalEnv()
    ctx = Context(env)
    term = elaborate_term(parse_term(lex(text, "<expr>")), env)
    return ctx, term


def cmd_check(args):
    report = Loader(args.root).check(args.files)
    if args.manifest and not report.errors:
        report.diagnostics.extend(check_manifest(report.env, args.manifest))
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
        return report.exit_code
    for file_report in report.files:
        for output in file_report.outputs:
            print(output)
    for diagnostic in report.diagnostics:
        print(str(diagnostic), file=sys.stderr)
    print("%s: %d file%s, %d error%s"
          % (report.status, len(report.files),
             "s" if len(report.files) != 1 else "",
             len(report.errors), "s" if len(report.errors) != 1 else ""))
    return report.exit_code


def cmd_normalize(args):
    try:
        ctx, term = _load_expression(args)
        type = infer(ctx, term)
        print(pretty(normalize(ctx, term, type)))
    except HitKernelError as exc:
        return _report_error(exc)
    return 0


def cmd_typeof(args):
    try:
        ctx, term = _load_expression(args)
        print(show_inferred(ctx, term))
    except HitKernelError as exc:
        return _report_error(exc)
    return 0


def cmd_selftest(args):
    from .selftest import run_selftest
    results = run_selftest(terms=args.terms, programs=args.programs,
                           seed=args.seed, library=not args.no_library)
    for result in results:
        print(str(result))
        for failure in result.failures[:5]:
            print("    %s" % failure)
    failed = sum(1 for result in results if not result.ok)
    print("%d of %d property groups passed"
          % (len(results) - failed, len(results)))
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hitkernel",
        description="Proof checker for type theory with a quotient type.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress (-vv for debugging output)")
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    check = commands.add_parser("check", help="check .hk files")
    check.add_argument("files", nargs="+", metavar="FILE")
    check.add_argument("--json", action="store_true",
                       help="print the report as one JSON document")
    check.add_argument("--root", default=None,
                       help="directory searched first for imports")
    check.add_argument("--manifest", default=None,
                       help="also verify the declarations a manifest lists")
    check.set_defaults(run=cmd_check)

    for name, run, help in (
            ("normalize", cmd_normalize, "print the normal form of EXPR"),
            ("typeof", cmd_typeof, "print the type of EXPR")):
        sub = commands.add_parser(name, help=help)
        sub.add_argument("--ctx", nargs="+", default=[], metavar="FILE",
                         help="files whose declarations are in scope")
        sub.add_argument("--root", default=None,
                         help="directory searched first for imports")
        sub.add_argument("expr", nargs="?", default=None, metavar="EXPR")
        sub.set_defaults(run=run)

    selftest = commands.add_parser("selftest",
                                   help="run the kernel property suites")
    selftest.add_argument("--terms", type=int, default=500,
                          help="generated terms per term property")
    selftest.add_argument("--programs", type=int, default=50,
                          help="generated programs for the oracle")
    selftest.add_argument("--seed", type=int, default=0)
    selftest.add_argument("--no-library", action="store_true",
                          help="skip the normal forms of the bundled library")
    selftest.set_defaults(run=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose,
                                                       logging.DEBUG)
    logging.basicConfig(level=level,
                        format="%(levelname)s %(name)s: %(message)s")
    sys.setrecursionlimit(max(sys.getrecursionlimit(), RECURSION_LIMIT))
    try:
        return args.run(args)
    except SystemExit as exc:
        print(str(exc.code), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
