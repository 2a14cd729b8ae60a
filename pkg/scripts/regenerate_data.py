#!/usr/bin/env python3
"""Rebuild the bundled scheme files from their exact-coordinate generators.

The bundled files are the canonical labelings; this script overwrites them
with freshly generated tables and reports whether anything changed.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from smallcover.generate import GENERATORS
from smallcover.scheme import scheme_digest, serialize_scheme

HEADERS = {
    "pentagon": "# right-angled pentagon: 5 edges, 5 vertices",
    "dodecahedron": "# right-angled dodecahedron: 12 facets, 20 vertices",
    "c120": "# right-angled 120-cell: 120 facets, 600 vertices",
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    default_dir = Path(__file__).resolve().parent.parent / "src" / "smallcover" / "data"
    parser.add_argument("--data-dir", type=Path, default=default_dir)
    args = parser.parse_args()
    args.data_dir.mkdir(parents=True, exist_ok=True)
    for name, generator in GENERATORS.items():
        scheme = generator()
        text = HEADERS[name] + "\n" + serialize_scheme(scheme)
        target = args.data_dir / f"{name}.txt"
        old = target.read_text() if target.is_file() else None
        target.write_text(text)
        status = "unchanged" if old == text else "rewritten"
        print(f"{name}: {status} sha256:{scheme_digest(scheme)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
