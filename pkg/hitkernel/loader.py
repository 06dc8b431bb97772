"""
Reading ``.hk`` files, resolving their imports and checking them in
dependency order.

Imports are looked up in the root directory (by default the directory of
the importing file) and then in the bundled :mod:`hitkernel.stdlib`. Each
file is checked once, after everything it imports.
"""

import io
import json
import logging
import os
import time
from collections import deque
from dataclasses import dataclass, field

from . import stdlib
from .diagnostics import (Diagnostic, HitKernelError, ERROR, E_IMPORT, E_IO,
                          E_MISMATCH, E_UNBOUND)
from .frontend import (SAxiom, SDef, elaborate, elaborate_term, lex,
                       parse_source, parse_term)
from .normalizer import GlobalEnv, convertible_types
from .typechecker import Context, check_declaration, check_type


__all__ = [
    "FileReport",
    "RunReport",
    "Loader",
    "check_files",
    "load_environment",
    "check_manifest",
]


logger = logging.getLogger(__name__)


OK = "ok"
FAILED = "error"
SKIPPED = "skipped"


@dataclass
class FileReport(object):
    """What happened to one file during a run.

    ``outputs`` collects the text reported by ``#check`` and ``#normalize``.
    """
    path: str
    status: str = OK
    declarations: int = 0
    directives: int = 0
    outputs: list = field(default_factory=list)

    def as_dict(self):
        return {
            "path": self.path,
            "status": self.status,
            "declarations": self.declarations,
            "directives": self.directives,
        }


@dataclass
class RunReport(object):
    """
    The result of checking a set of files.

    Parameters
    ----------
    files : list of :class:`FileReport`
        In checking order.
    diagnostics : list of :class:`hitkernel.diagnostics.Diagnostic`
    axioms : dict
        Declaration name to the sorted list of axioms it depends on.
    elapsed : float
        Wall time in seconds.
    env : :class:`hitkernel.normalizer.GlobalEnv`
        Everything installed by the run.

    Notes
    -----
    Two reports compare equal when they agree on everything but ``elapsed``
    and ``env``.
    """
    files: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    axioms: dict = field(default_factory=dict)
    elapsed: float = field(default=0.0, compare=False)
    env: GlobalEnv = field(default_factory=GlobalEnv, compare=False,
                           repr=False)

    @property
    def errors(self):
        return [d for d in self.diagnostics if d.severity == ERROR]

    @property
    def status(self):
        return FAILED if self.errors else OK

    @property
    def exit_code(self):
        """0 on success, 2 for unreadable files or imports, 1 otherwise."""
        codes = set(d.code for d in self.errors)
        if not codes:
            return 0
        if codes & {E_IO, E_IMPORT}:
            return 2
        return 1

    def as_dict(self):
        return {
            "status": self.status,
            "files": [f.as_dict() for f in self.files],
            "diagnostics": [d.as_dict() for d in self.diagnostics],
            "axioms": dict(sorted(self.axioms.items())),
            "elapsed": self.elapsed,
        }


class Loader(object):
    """
    Parses files on demand and remembers them for the rest of the run.

    Parameters
    ----------
    root : str or None
        Directory searched first for imports; ``None`` means the directory
        of the importing file.
    stdlib_dir : str
        Directory searched second.
    """
    def __init__(self, root=None, stdlib_dir=stdlib.STDLIB_DIR):
        self.root = root
        self.stdlib_dir = stdlib_dir
        self._modules = {}

    def module(self, path):
        """The parsed module at `path`.

        Raises
        ------
        HitKernelError
            E-IO if the file cannot be read, or the lexing or parsing error
            of its contents.
        """
        path = os.path.abspath(path)
        if path not in self._modules:
            try:
                with io.open(path, encoding="utf-8") as f:
                    source = f.read()
            except (IOError, OSError, UnicodeDecodeError) as exc:
                raise HitKernelError(E_IO, "cannot read %s: %s"
                                     % (path, exc))
            try:
                self._modules[path] = parse_source(source, path)
            except HitKernelError as exc:
                self._modules[path] = exc
        module = self._modules[path]
        if isinstance(module, HitKernelError):
            raise module
        return module

    def resolve(self, name, importer, span=None):
        base = self.root
        if base is None:
            base = os.path.dirname(os.path.abspath(importer))
        for directory in (base, self.stdlib_dir):
            candidate = os.path.join(directory, name + ".hk")
            if os.path.isfile(candidate):
                return os.path.abspath(candidate)
        raise HitKernelError(E_IMPORT, "cannot find module %s" % name, span)

    def imports(self, path):
        """Resolved paths of the files `path` imports.

        A file that does not parse imports nothing; its error is reported
        when it is checked.
        """
        try:
            module = self.module(path)
        except HitKernelError as exc:
            if exc.code == E_IO:
                raise
            return []
        return [self.resolve(i.name, path, i.span) for i in module.imports]

    def order(self, paths):
        """
        All files reachable from `paths`, each after the files it imports.

        Raises
        ------
        HitKernelError
            E-IO for an unreadable file, E-IMPORT for an unresolvable
            import or an import cycle.
        """
        # Depth-first with an explicit stack; a file is emitted when it is
        # met the second time, by which point all its imports are done.
        queue = deque(os.path.abspath(p) for p in paths)
        seen = set()
        done = set()
        result = []
        while queue:
            path = queue[0]
            if path not in seen:
                seen.add(path)
                queue.extendleft(reversed(self.imports(path)))
                continue
            queue.popleft()
            if path in done:
                continue
            pending = [dep for dep in self.imports(path) if dep not in done]
            if pending:
                raise HitKernelError(E_IMPORT, "import cycle through %s and "
                                     "%s" % (path, pending[0]))
            result.append(path)
            done.add(path)
        return result

    def check(self, paths):
        """Check `paths` and everything they import.

        Returns
        -------
        :class:`RunReport`
        """
        start = time.time()
        report = RunReport()
        try:
            ordered = self.order(paths)
        except HitKernelError as exc:
            report.diagnostics.append(exc.diagnostic)
            report.elapsed = time.time() - start
            return report
        env = GlobalEnv()
        failed = set()
        for path in ordered:
            file_report = FileReport(path)
            report.files.append(file_report)
            if any(dep in failed for dep in self.imports(path)):
                logger.warning("skipping %s: one of its imports failed", path)
                file_report.status = SKIPPED
                failed.add(path)
                continue
            env = self._check_file(env, path, file_report, report)
            if file_report.status != OK:
                failed.add(path)
        report.env = env
        report.axioms = dict((entry.name, sorted(entry.axioms))
                             for entry in env)
        report.elapsed = time.time() - start
        logger.info("checked %d file%s in %.2fs, %d error%s",
                    len(report.files), "s" if len(report.files) != 1 else "",
                    report.elapsed, len(report.errors),
                    "s" if len(report.errors) != 1 else "")
        return report

    def _check_file(self, env, path, file_report, report):
        logger.info("checking %s", path)
        try:
            module = self.module(path)
        except HitKernelError as exc:
            file_report.status = FAILED
            report.diagnostics.append(exc.diagnostic)
            return env
        for surface in module.declarations:
            is_directive = not isinstance(surface, (SDef, SAxiom))
            try:
                decl = elaborate(surface, env)
                env, output = check_declaration(env, decl)
            except HitKernelError as exc:
                file_report.status = FAILED
                report.diagnostics.append(exc.diagnostic)
                if is_directive:
                    file_report.directives += 1
                    continue
                # later declarations may depend on this one
                break
            if is_directive:
                file_report.directives += 1
                if output is not None:
                    file_report.outputs.append(output)
            else:
                file_report.declarations += 1
        return env


def check_files(paths, root=None):
    """Check `paths` with a fresh :class:`Loader`."""
    return Loader(root).check(paths)


def load_environment(paths, root=None):
    """Check `paths` and return the environment they build.

    Raises
    ------
    HitKernelError
        The first error of the run.
    """
    report = check_files(paths, root)
    if report.errors:
        first = report.errors[0]
        raise HitKernelError(first.code, first.message, first.span)
    return report.env


def check_manifest(env, path):
    """
    Compare the declarations in `env` against a manifest file.

    Each entry names a declaration, the file declaring it and its type as
    surface text; the stated type must be convertible with the checked one.

    Returns
    -------
    list of :class:`hitkernel.diagnostics.Diagnostic`
        Empty when every entry matches.
    """
    try:
        with io.open(path, encoding="utf-8") as f:
            entries = json.load(f)
    except (IOError, OSError, ValueError) as exc:
        return [HitKernelError(E_IO, "cannot read manifest %s: %s"
                               % (path, exc)).diagnostic]
    diagnostics = []
    ctx = Context(env)
    for item in entries:
        name = item["name"]
        entry = env.get(name)
        if entry is None:
            diagnostics.append(Diagnostic(
                ERROR, E_UNBOUND, "manifest names %s, which is not declared"
                % name))
            continue
        declared_in = os.path.basename(entry.span.file) \
            if entry.span is not None and entry.span.file else None
        if declared_in != item["file"]:
            diagnostics.append(Diagnostic(
                ERROR, E_MISMATCH, "manifest places %s in %s, but it is "
                "declared in %s" % (name, item["file"], declared_in),
                entry.span))
            continue
        try:
            stated = elaborate_term(parse_term(lex(item["type"], path)), env)
            check_type(ctx, stated)
        except HitKernelError as exc:
            diagnostics.append(exc.diagnostic)
            continue
        if not convertible_types(ctx, ctx.eval(stated), entry.type):
            diagnostics.append(Diagnostic(
                ERROR, E_MISMATCH, "manifest type of %s is %s, but its "
                "checked type is %s" % (name, ctx.show(stated),
                                         ctx.show_type(entry.type)),
                entry.span))
    return diagnostics
