#!/usr/bin/env python3
"""End-to-end run: classify, report, and certify every admissible extension.

Enumerates the small covers of the dodecahedron, writes the Stiefel-Whitney
report, then runs the 120-cell extension for every class with nonzero w2
(strategy auto) plus the orientable variant (strategy w1) for class 1, and
replays every certificate it wrote.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from smallcover import cli


def run(argv: list[str]) -> None:
    code = cli.main(argv)
    if code != 0:
        print(f"step failed (exit {code}): {' '.join(argv)}", file=sys.stderr)
        raise SystemExit(code)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("results"))
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    out = str(args.out)
    t0 = time.perf_counter()

    run(["--out", out, "--seed", str(args.seed), "enumerate", "dodecahedron"])
    run(["--out", out, "--seed", str(args.seed), "sw-report", "dodecahedron"])
    run(["--out", out, "--seed", str(args.seed), "gen120"])

    report = (args.out / "dodecahedron_sw_report.txt").read_text()
    w2_nonzero = [
        int(line.split()[1])
        for line in report.splitlines()
        if line.startswith("class ") and " w2_nonzero true " in line + " "
    ]
    print(f"classes with nonzero w2: {w2_nonzero}")
    for ordinal in w2_nonzero:
        run(["--out", out, "--seed", str(args.seed), "build4d", "--class", str(ordinal), "--c", "auto"])
    run(["--out", out, "--seed", str(args.seed), "build4d", "--class", "1", "--c", "w1"])

    for cert in sorted(args.out.glob("*_certificate.txt")):
        run(["replay", str(cert)])
    print(f"pipeline complete in {time.perf_counter() - t0:.1f}s; results in {args.out}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
