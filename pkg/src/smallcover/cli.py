"""Command-line surface: validation, enumeration, reports, and the 4-manifold pipeline.

Exit codes: 0 success, 1 validation or assertion failure, 2 usage error.
Output payloads are deterministic for fixed inputs; wall-clock durations
are printed to stdout only, never written into result files.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import charclass as cc
from .coloring import (
    ColoringError,
    SearchBoundError,
    canonicalize,
    enumerate_small_covers,
    format_class_list,
    parse_class_list,
)
from .generate import GENERATORS
from .scheme import (
    BUILTIN_NAMES,
    RightAngledScheme,
    SchemeError,
    builtin_scheme,
    face_counts,
    h_vector,
    isomorphisms,
    load_scheme,
    scheme_digest,
)

DATA_DIR_ENV = "SMALLCOVER_DATA_DIR"
VERSION = "1"


class UsageError(Exception):
    pass


def resolve_scheme(name_or_path: str) -> tuple[str, RightAngledScheme]:
    """A scheme by builtin name (honoring the data-dir override) or file path."""
    override = os.environ.get(DATA_DIR_ENV)
    if name_or_path in BUILTIN_NAMES:
        if override:
            candidate = Path(override) / f"{name_or_path}.txt"
            if candidate.is_file():
                return name_or_path, load_scheme(candidate.read_text())
        return name_or_path, builtin_scheme(name_or_path)
    path = Path(name_or_path)
    if not path.is_file():
        raise UsageError(
            f"{name_or_path!r} is neither a builtin scheme ({', '.join(BUILTIN_NAMES)}) "
            "nor a readable file"
        )
    return path.stem, load_scheme(path.read_text())


def _result_header(command: str, args, inputs: list[tuple[str, str]]) -> list[str]:
    lines = [f"# command {command}", f"# version {VERSION}"]
    lines.append(f"# seed {args.seed}")
    lines.append(f"# threads {args.threads}")
    for name, digest in inputs:
        lines.append(f"# input {name} sha256:{digest}")
    return lines


def _emit(args, filename: str, text: str) -> None:
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / filename).write_text(text)
        print(f"wrote {outdir / filename}")
    else:
        sys.stdout.write(text)


def _adjacency_regularity(s: RightAngledScheme) -> int | None:
    degrees = {len(s.adjacency[f]) for f in range(1, s.num_facets + 1)}
    return degrees.pop() if len(degrees) == 1 else None


def cmd_validate(args) -> int:
    try:
        name, s = resolve_scheme(args.scheme)
    except (SchemeError, OSError) as exc:
        print(f"INVALID: {exc}")
        return 1
    counts = face_counts(s)
    fvec = tuple(counts[r] for r in range(s.dim, 0, -1))
    reg = _adjacency_regularity(s)
    print(f"n={s.dim} k={s.num_facets} vertices={len(s.vertices)} OK")
    print(f"f-vector {fvec}")
    print(
        "adjacency "
        + (f"{reg}-regular" if reg is not None else "irregular")
        + f", facets per vertex {s.dim}"
    )
    print(f"h-vector {h_vector(s)}")
    print(f"digest sha256:{scheme_digest(s)}")
    return 0


def cmd_enumerate(args) -> int:
    name, s = resolve_scheme(args.scheme)
    t0 = time.perf_counter()
    try:
        classes = enumerate_small_covers(s, allow_large=args.allow_large)
    except SearchBoundError as exc:
        print(f"ERROR: {exc}")
        return 1
    duration = time.perf_counter() - t0
    lines = _result_header("enumerate", args, [(name, scheme_digest(s))])
    lines.append(f"# classes {len(classes)}")
    body = "\n".join(lines) + "\n" + format_class_list(classes)
    _emit(args, f"{name}_classes.txt", body)
    print(f"{len(classes)} classes in {duration:.2f}s")
    return 0


def _classes_with_stabilizers(s: RightAngledScheme, args):
    """(ordinal, coloring, stabilizer perms) triples, from a file or by enumeration."""
    if args.classes:
        text = Path(args.classes).read_text()
        entries = parse_class_list(text, s)
        out = []
        for ordinal, (_stab, coloring) in enumerate(entries, start=1):
            _best, stab_perms = canonicalize(coloring)
            out.append((ordinal, coloring, stab_perms))
        return out
    classes = enumerate_small_covers(s, allow_large=args.allow_large)
    return [
        (ordinal, cls.representative, cls.stabilizer)
        for ordinal, cls in enumerate(classes, start=1)
    ]


def _perm_order(p: tuple[int, ...]) -> int:
    ident = tuple(range(1, len(p) + 1))
    q, n = p, 1
    while q != ident:
        q = tuple(p[q[i] - 1] for i in range(len(p)))
        n += 1
    return n


def _has_order3(stabilizer) -> bool:
    return any(_perm_order(sigma) % 3 == 0 for sigma in stabilizer)


def cmd_sw_report(args) -> int:
    name, s = resolve_scheme(args.scheme)
    t0 = time.perf_counter()
    try:
        triples = _classes_with_stabilizers(s, args)
    except SearchBoundError as exc:
        print(f"ERROR: {exc}")
        return 1
    lines = _result_header("sw-report", args, [(name, scheme_digest(s))])
    w2_nonzero = 0
    w2_zero_set, order3_set = [], []
    for ordinal, coloring, stabilizer in triples:
        sw = cc.total_sw(s, coloring)
        w1 = sw.w[0]
        w2 = sw.w[1] if s.dim >= 2 else None
        w3 = sw.w[2] if s.dim >= 3 else None
        nz = w2 is not None and not w2.is_zero
        o3 = _has_order3(stabilizer)
        if nz:
            w2_nonzero += 1
        else:
            w2_zero_set.append(ordinal)
        if o3:
            order3_set.append(ordinal)
        lines.append(
            f"class {ordinal} w1 {w1} w2 {w2 if w2 is not None else '-'} "
            f"w3 {w3 if w3 is not None else '-'} orientable {str(sw.orientable).lower()} "
            f"w2_nonzero {str(nz).lower()} order3_stab {str(o3).lower()}"
        )
    lines.append(f"w2_nonzero: {w2_nonzero} / {len(triples)}")
    lines.append(
        "order3_stab classes = w2_zero classes: "
        + str(sorted(order3_set) == sorted(w2_zero_set)).lower()
    )
    _emit(args, f"{name}_sw_report.txt", "\n".join(lines) + "\n")
    print(f"report for {len(triples)} classes in {time.perf_counter() - t0:.2f}s")
    return 0


def _parse_c_strategy(value: str, k: int):
    if value in ("auto", "w1"):
        return value
    if set(value) <= {"0", "1"} and len(value) == k:
        return tuple(int(ch) for ch in value)
    raise UsageError(
        f"--c must be 'auto', 'w1', or a {k}-character bitstring, got {value!r}"
    )


def cmd_build4d(args) -> int:
    base_name, base = resolve_scheme(args.base)
    ambient_name, ambient = resolve_scheme(args.ambient)
    t0 = time.perf_counter()
    try:
        classes = enumerate_small_covers(base, allow_large=args.allow_large)
    except SearchBoundError as exc:
        print(f"ERROR: {exc}")
        return 1
    if not 1 <= args.class_ordinal <= len(classes):
        print(f"ERROR: --class must be 1..{len(classes)}")
        return 2
    coloring = classes[args.class_ordinal - 1].representative
    strategy = _parse_c_strategy(args.c, base.num_facets)
    goal = cc.GOAL_NONPINC
    try:
        if strategy == "auto":
            class_vector, _ = cc.find_dual_class(base, coloring)
        elif strategy == "w1":
            evens = cc.even_weight_facets(coloring)
            class_vector = tuple(
                1 if i in evens else 0 for i in range(1, base.num_facets + 1)
            )
            goal = cc.GOAL_ORIENTABLE
        else:
            class_vector = strategy
        cert = cc.run_extension_pipeline(
            base_name,
            base,
            coloring,
            class_vector,
            ambient_name,
            ambient,
            args.facet,
            goal=goal,
        )
    except (cc.NoDualClassError, cc.CertificateError, cc.CharClassError, SchemeError) as exc:
        print(f"ERROR: {exc}")
        return 1
    duration = time.perf_counter() - t0
    _emit(
        args,
        f"{base_name}_class{args.class_ordinal}_{args.c}_certificate.txt",
        cc.certificate_to_text(cert),
    )
    for conclusion in cert.conclusions:
        print(f"conclusion: {conclusion}")
    print(f"pipeline in {duration:.2f}s")
    return 0


def cmd_replay(args) -> int:
    path = Path(args.certificate)
    if not path.is_file():
        print(f"ERROR: {path} is not a readable file")
        return 2
    try:
        cert = cc.certificate_from_text(path.read_text())
        failures = cc.replay_certificate(cert)
    except cc.CertificateError as exc:
        print(f"ERROR: {exc}")
        return 1
    if failures:
        for f in failures:
            print(f"FAIL: {f}")
        return 1
    print("replay OK: all computed facts hold")
    return 0


def cmd_gen120(args) -> int:
    t0 = time.perf_counter()
    generated = GENERATORS["c120"]()
    counts = face_counts(generated)
    fvec = tuple(counts[r] for r in range(generated.dim, 0, -1))
    reg = _adjacency_regularity(generated)
    lines = _result_header("gen120", args, [("c120", scheme_digest(generated))])
    lines.append(f"f-vector {fvec}")
    lines.append(f"facets per vertex {generated.dim}")
    lines.append(f"adjacency {reg}-regular" if reg is not None else "adjacency irregular")
    bundled = builtin_scheme("c120")
    if bundled.vertices == generated.vertices:
        lines.append("bundled file: identical")
    else:
        iso = isomorphisms(generated, bundled, limit=1)
        lines.append(
            "bundled file: identical up to relabeling" if iso else "bundled file: MISMATCH"
        )
    text = "\n".join(lines) + "\n"
    _emit(args, "c120_generated.txt", text)
    print(f"generated in {time.perf_counter() - t0:.2f}s")
    return 0 if "MISMATCH" not in text else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smallcover",
        description="Small covers of right-angled polytopes: enumeration, "
        "Stiefel-Whitney reports, and certified 4-manifold extensions.",
    )
    parser.add_argument("--out", metavar="DIR", default=None, help="write results under DIR")
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        metavar="N",
        help="worker count recorded in outputs (computation is single-threaded)",
    )
    parser.add_argument("--seed", type=int, default=0, metavar="S", help="seed recorded in outputs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scheme file or builtin and print statistics")
    p.add_argument("scheme", help="builtin name or path to a scheme file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("enumerate", help="classify small covers of a scheme")
    p.add_argument("scheme")
    p.add_argument("--allow-large", action="store_true", help="override the facet-count guard")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sw-report", help="Stiefel-Whitney report for every class")
    p.add_argument("scheme")
    p.add_argument("--classes", metavar="FILE", default=None, help="class-list file (default: enumerate)")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_sw_report)

    p = sub.add_parser("build4d", help="extend a class into the ambient scheme and certify")
    p.add_argument("--base", default="dodecahedron")
    p.add_argument("--ambient", default="c120")
    p.add_argument("--class", dest="class_ordinal", type=int, required=True, metavar="K")
    p.add_argument("--c", default="auto", help="auto | w1 | explicit bitstring")
    p.add_argument("--facet", type=int, default=1, help="marked ambient facet (default 1)")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_build4d)

    p = sub.add_parser("replay", help="recompute every fact of a certificate")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("gen120", help="regenerate the 120-cell from exact coordinates")
    p.set_defaults(func=cmd_gen120)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}")
        return 2
    except (SchemeError, ColoringError, cc.CharClassError, cc.CertificateError) as exc:
        print(f"ERROR: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
