"""Comma-separated +-1 columns.

Grammar: the first line holds the column labels; every further line holds
one token per column, each literally ``1`` or ``-1``.  A final newline is
optional.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .bell import OutcomeDataset
from .errors import DatasetError

_TOKENS = {"1": 1, "-1": -1}


def parse_datasets(text: str) -> list[OutcomeDataset]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln[:-1] if ln.endswith("\r") else ln for ln in lines]
    if not lines or not lines[0].strip():
        raise DatasetError("missing header line", line=1)
    labels = [lab.strip() for lab in lines[0].split(",")]
    if any(not lab for lab in labels):
        raise DatasetError("empty column label", line=1)
    if len(set(labels)) != len(labels):
        raise DatasetError("duplicate column label", line=1)
    body = lines[1:]
    if not body:
        raise DatasetError("no data rows after the header")
    cols = np.empty((len(labels), len(body)), dtype=np.int8)
    for r, line in enumerate(body):
        tokens = line.split(",")
        lineno = r + 2
        if len(tokens) != len(labels):
            raise DatasetError(f"expected {len(labels)} values, found {len(tokens)}", line=lineno)
        for c, tok in enumerate(tokens):
            try:
                cols[c, r] = _TOKENS[tok]
            except KeyError:
                raise DatasetError(f"invalid token {tok!r} (expected 1 or -1)", line=lineno, column=c + 1) from None
    return [OutcomeDataset(lab, cols[i]) for i, lab in enumerate(labels)]


def load_datasets(path: str | os.PathLike) -> list[OutcomeDataset]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise DatasetError(f"no such file: {os.fspath(path)}") from None
    except OSError as exc:
        raise DatasetError(f"cannot read {os.fspath(path)}: {exc.strerror}") from None
    return parse_datasets(text)


def format_datasets(sets: Sequence[OutcomeDataset]) -> str:
    if not sets:
        raise ValueError("nothing to write")
    n = len(sets[0])
    if any(len(s) != n for s in sets):
        raise ValueError("datasets must have equal lengths")
    labels = [s.label for s in sets]
    if any("," in lab or "\n" in lab for lab in labels):
        raise ValueError("labels must not contain commas or newlines")
    data = np.stack([s.values for s in sets], axis=1)
    rows = [",".join(labels)]
    rows.extend(",".join("1" if v == 1 else "-1" for v in row) for row in data.tolist())
    return "\n".join(rows) + "\n"


def write_datasets(path: str | os.PathLike, sets: Sequence[OutcomeDataset]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_datasets(sets))
