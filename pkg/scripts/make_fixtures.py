#!/usr/bin/env python3
"""Regenerate the bundled fixture documents from the in-memory catalog."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from effectkit import fixtures
from effectkit.fileio import document_of, emit_document


def main() -> None:
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
    out_dir.mkdir(exist_ok=True)
    for name, algebra in sorted(fixtures.catalog().items()):
        path = out_dir / f"{name}.ea"
        path.write_text(emit_document(document_of(algebra)),
                        encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
