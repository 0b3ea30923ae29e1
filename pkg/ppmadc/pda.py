# -*- coding: utf-8 -*-

"""
Placement delivery arrays: storage, transposition and the text format.

All indices handed in or out of this module are 1-based. The 0-based tuple
storage is only touched inside :class:`PdaArray`.
"""

import re
from collections import namedtuple
from typing import Iterable, Sequence, Tuple, Union

from .errors import ParseError, PdaError


class _Star:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "*"

    def __reduce__(self):
        return (_Star, ())


STAR = _Star()

PdaEntry = Union[_Star, int]

Position = Tuple[int, int]


def is_star(entry):
    return entry is STAR


def _check_entry(entry):
    if entry is STAR:
        return entry
    if isinstance(entry, bool) or not isinstance(entry, int) or entry < 1:
        raise PdaError(f"invalid PDA entry {entry!r}")
    return entry


class PdaArray:
    """
    Immutable F x K grid of stars and positive integer labels.
    """
    __slots__ = ("_grid",)

    def __init__(self, rows: Iterable[Sequence[PdaEntry]]):
        grid = tuple(tuple(_check_entry(entry) for entry in row)
                     for row in rows)
        if not grid or not grid[0]:
            raise PdaError("a PDA needs at least one row and one column")
        if any(len(row) != len(grid[0]) for row in grid):
            raise PdaError("a PDA must be rectangular")
        self._grid = grid

    @classmethod
    def filled(cls, rows, cols, entry=STAR):
        return cls([[entry] * cols for _ in range(rows)])

    @property
    def rows(self):
        return len(self._grid)

    @property
    def cols(self):
        return len(self._grid[0])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, position: Position) -> PdaEntry:
        row, col = position
        if not (1 <= row <= self.rows and 1 <= col <= self.cols):
            raise IndexError(f"position {position} outside {self.shape}")
        return self._grid[row - 1][col - 1]

    def row(self, row):
        return self._grid[row - 1]

    def column(self, col):
        return tuple(row[col - 1] for row in self._grid)

    def star_rows(self, col):
        return tuple(row for row, entry in enumerate(self.column(col), 1)
                     if entry is STAR)

    def positions(self):
        """Yields (row, column, entry) in row-major order."""
        for row, entries in enumerate(self._grid, 1):
            for col, entry in enumerate(entries, 1):
                yield row, col, entry

    def to_rows(self):
        return [list(row) for row in self._grid]

    def __eq__(self, other):
        if not isinstance(other, PdaArray):
            return NotImplemented
        return self._grid == other._grid

    def __hash__(self):
        return hash(self._grid)

    def __repr__(self):
        return f"PdaArray({self.rows}x{self.cols})"

    def __str__(self):
        return serialize_pda_text(self)


class PdaParams(namedtuple("PdaParams", ["K", "F", "Z", "S", "g", "l"])):
    """
    (K, F, Z, S) of a verified PDA. ``g`` and ``l`` are filled in only when
    the regularity and the cyclic structure have been established.
    """
    __slots__ = ()

    def __new__(cls, K, F, Z, S, g=None, l=None):
        return super().__new__(cls, K, F, Z, S, g, l)

    @property
    def tuple(self):
        return (self.K, self.F, self.Z, self.S)

    def describe(self):
        text = "({},{},{},{})".format(*self.tuple)
        if self.g is not None:
            text += f", g={self.g}"
        if self.l is not None:
            text += f", l={self.l}"
        return text


def transpose(array: PdaArray) -> PdaArray:
    return PdaArray(zip(*array.to_rows()))


_LABEL_PATTERN = re.compile(r"[0-9]+")


def _parse_token(token, line):
    if token == "*":
        return STAR
    if not _LABEL_PATTERN.fullmatch(token) or int(token) < 1:
        raise ParseError(line, token)
    return int(token)


def parse_pda_text(text: str) -> PdaArray:
    rows = []
    width = None
    for line, content in enumerate(text.splitlines(), 1):
        tokens = content.split()
        if not tokens:
            continue

        row = [_parse_token(token, line) for token in tokens]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(line, tokens[-1] if len(row) > width else "")
        rows.append(row)

    if not rows:
        raise ParseError(1, "")

    return PdaArray(rows)


def serialize_pda_text(array: PdaArray) -> str:
    return "".join(
        " ".join(repr(entry) if entry is STAR else str(entry)
                 for entry in array.row(row)) + "\n"
        for row in range(1, array.rows + 1))
