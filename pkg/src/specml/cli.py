"""Batch driver: parse, validate, analyze, and emit generated units.

Diagnostics go to stderr as `file:line:col: severity: message`; exit status
is 0 on success (warnings included, unless --werror) and 1 on any error.
Output files are written all-or-nothing: every unit is generated and staged
to temporary files before any target path is touched.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import TextIO

from . import codegen_datatype, codegen_phantom
from .dsl import parse_declarations
from .errors import SpecmlError
from .model import check_inhabited, compute_hierarchy, to_dot, validate
from .terms import check_hierarchy_against_terms

EMIT_MODES = ("phantom", "datatype", "both", "check-only")


@dataclass
class RunConfig:
    input_path: str
    out_dir: str = "."
    emit: str = "both"  # datatype implies the phantom unit as well
    dot_path: str | None = None
    depth: int = 5
    werror: bool = False
    stdout: TextIO | None = None
    stderr: TextIO | None = None

    def __post_init__(self):
        if self.emit not in EMIT_MODES:
            raise ValueError(f"unknown emit mode {self.emit!r}")


def _write_all(outputs: list[tuple[str, str]]) -> None:
    """Stage every file in its target directory, then rename into place."""
    staged: list[tuple[str, str]] = []
    try:
        for path, text in outputs:
            directory = os.path.dirname(path) or "."
            os.makedirs(directory, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=directory, prefix=".specml-")
            staged.append((tmp, path))
            with os.fdopen(fd, "w") as f:
                f.write(text)
    except BaseException:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
        raise
    for tmp, path in staged:
        os.replace(tmp, path)


def run(config: RunConfig) -> int:
    out = config.stdout or sys.stdout
    err = config.stderr or sys.stderr
    path = config.input_path

    try:
        with open(path, encoding="utf-8") as f:
            source = f.read()
    except OSError as e:
        print(f"{path}:1:1: error: {e.strerror or e}", file=err)
        return 1

    try:
        decl, specs = parse_declarations(source)
        specset = validate(decl, specs)
        h = compute_hierarchy(specset)
    except SpecmlError as e:
        print(e.diagnostic(path), file=err)
        return 1

    inhabited = check_inhabited(specset)
    severity = "error" if config.werror else "warning"
    uninhabited = [name for name in specset.names if not inhabited[name]]
    for name in uninhabited:
        pos = specset.entries[name].pos
        print(
            f"{path}:{pos.line}:{pos.col}: {severity}: "
            f"specialization '{name}' is uninhabited",
            file=err,
        )
    if uninhabited and config.werror:
        return 1

    if config.emit == "check-only":
        for name in h.preorder:
            role = "root" if name == h.root else f"parent {h.parent[name]}"
            flag = "inhabited" if inhabited[name] else "uninhabited"
            print(f"{name}: {role}, path {'/'.join(h.path[name])}, {flag}", file=out)
        problems = check_hierarchy_against_terms(specset, h, max_depth=config.depth)
        for p in problems:
            print(f"{path}:1:1: error: oracle disagreement: {p}", file=err)
        if problems:
            return 1
        print(f"oracle agreement: ok (depth {config.depth})", file=out)
        return 0

    outputs: list[tuple[str, str]] = []
    try:
        unit = codegen_phantom.gen_phantom(specset, h)
        outputs.append((os.path.join(config.out_dir, unit.filenames[0]), unit.sig_text))
        outputs.append((os.path.join(config.out_dir, unit.filenames[1]), unit.struct_text))
        if config.emit in ("datatype", "both"):
            plan = codegen_datatype.plan_datatypes(specset, h)
            dt_unit = codegen_datatype.gen_dt(specset, h, plan)
            outputs.append((os.path.join(config.out_dir, dt_unit.filenames[0]), dt_unit.sig_text))
            outputs.append((os.path.join(config.out_dir, dt_unit.filenames[1]), dt_unit.struct_text))
    except SpecmlError as e:
        print(e.diagnostic(path), file=err)
        return 1
    if config.dot_path:
        outputs.append((config.dot_path, to_dot(h)))

    try:
        _write_all(outputs)
    except OSError as e:
        print(f"{path}:1:1: error: {e.strerror or e}", file=err)
        return 1
    for target, _ in outputs:
        print(f"wrote {target}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specml",
        description="Compile datatype/withspec declarations into phantom-type "
        "and datatype interfaces.",
    )
    parser.add_argument("input", help="declaration file (one group per file)")
    parser.add_argument(
        "--emit",
        choices=("phantom", "datatype", "both"),
        default="both",
        help="which units to generate (datatype implies phantom)",
    )
    parser.add_argument("--out-dir", default=".", help="output directory")
    parser.add_argument("--dot", metavar="PATH", help="also write the hierarchy as DOT")
    parser.add_argument(
        "--depth", type=int, default=5, help="oracle cross-check depth (check-only)"
    )
    parser.add_argument(
        "--check-only",
        action="store_true",
        help="validate and report the hierarchy without writing units",
    )
    parser.add_argument(
        "--werror", action="store_true", help="treat warnings as errors"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        input_path=args.input,
        out_dir=args.out_dir,
        emit="check-only" if args.check_only else args.emit,
        dot_path=args.dot,
        depth=args.depth,
        werror=args.werror,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
