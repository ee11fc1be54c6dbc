"""Reading the experiment CSV tables."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np


class MissingColumnError(KeyError):
    """A required column is absent; the message names it and the file."""

    def __init__(self, column: str, path: str, available: list[str]):
        self.column = column
        self.path = path
        super().__init__(
            f"column {column!r} missing from {path} (has: {', '.join(available)})"
        )

    def __str__(self):  # KeyError quotes its payload otherwise
        return self.args[0]


@dataclass
class Table:
    path: str
    header: list[str]
    data: np.ndarray  # shape (rows, columns), float64

    def __len__(self):
        return self.data.shape[0]

    def column(self, name: str) -> np.ndarray:
        if name not in self.header:
            raise MissingColumnError(name, self.path, self.header)
        return self.data[:, self.header.index(name)]

    def require(self, *names: str) -> None:
        for name in names:
            if name not in self.header:
                raise MissingColumnError(name, self.path, self.header)


def read_table(path: str) -> Table:
    """Parse a headered CSV of numbers; `inf` cells become float inf."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path} is empty, expected a header row") from None
        rows = [row for row in reader if row]
    if any(len(row) != len(header) for row in rows):
        raise ValueError(f"{path} is not rectangular")
    if rows:
        data = np.array([[float(cell) for cell in row] for row in rows])
    else:
        data = np.empty((0, len(header)))
    return Table(path=path, header=header, data=data)
