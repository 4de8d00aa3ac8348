"""Wall paths stored as a start vertex plus run-length encoded unit moves.

Moves are ``U`` (row - 1), ``D`` (row + 1), ``L`` (col - 1) and ``R``
(col + 1). The text form concatenates a letter and a positive count per run,
e.g. ``R5U1R3D2``. Runs live in numpy arrays because routed paths in the
pipeline span millions of rows.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import FormatError
from .wall import WallVertex

LETTERS = "UDLR"
_DROW = np.array([-1, 1, 0, 0], dtype=np.int64)
_DCOL = np.array([0, 0, -1, 1], dtype=np.int64)
_INVERSE = np.array([1, 0, 3, 2], dtype=np.uint8)
_MOVES_RE = re.compile(r"(?:[UDLR][1-9][0-9]{0,17})*")
_CODE = np.full(256, 255, dtype=np.uint8)
for _i, _c in enumerate(LETTERS):
    _CODE[ord(_c)] = _i


def _merge_runs(letters: np.ndarray, counts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    keep = counts > 0
    letters, counts = letters[keep], counts[keep]
    if len(letters) < 2:
        return letters, counts
    starts = np.flatnonzero(np.concatenate(([True], letters[1:] != letters[:-1])))
    return letters[starts], np.add.reduceat(counts, starts)


class WallPath:
    """A walk in a wall given by its first vertex and its moves."""

    __slots__ = ("start", "letters", "counts")

    def __init__(self, start, letters=None, counts=None):
        self.start = WallVertex(int(start[0]), int(start[1]))
        letters = np.zeros(0, np.uint8) if letters is None else np.asarray(letters, np.uint8)
        counts = np.zeros(0, np.int64) if counts is None else np.asarray(counts, np.int64)
        if letters.shape != counts.shape:
            raise ValueError("letters and counts must have the same length")
        if len(counts) and counts.min() < 0:
            raise ValueError("run counts must be non-negative")
        self.letters, self.counts = _merge_runs(letters, counts)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_moves(cls, start, moves: str) -> "WallPath":
        if not _MOVES_RE.fullmatch(moves):
            raise FormatError(f"malformed move string {moves[:40]!r}")
        if not moves:
            return cls(start)
        buf = np.frombuffer(moves.encode("ascii"), dtype=np.uint8)
        codes = _CODE[buf]
        is_letter = codes != 255
        pos = np.flatnonzero(is_letter)
        ends = np.append(pos[1:], len(buf))
        digit = (buf - 48).astype(np.int64)
        digit[is_letter] = 0
        # weight each digit by 10 ** (digits remaining in its number)
        group_end = np.repeat(ends, ends - pos)
        exponent = group_end - np.arange(len(buf)) - 1
        weighted = digit * (10 ** np.minimum(exponent, 18))
        counts = np.add.reduceat(weighted, pos)
        return cls(start, codes[pos], counts)

    @classmethod
    def from_vertices(cls, rows, cols=None) -> "WallPath":
        """Encode a vertex sequence; consecutive vertices must differ by one unit step."""
        if cols is None:
            pts = np.asarray(rows, dtype=np.int64).reshape(-1, 2)
            rows, cols = pts[:, 0], pts[:, 1]
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if len(rows) == 0:
            raise ValueError("a path has at least one vertex")
        dr, dc = np.diff(rows), np.diff(cols)
        if np.any(np.abs(dr) + np.abs(dc) != 1):
            k = int(np.flatnonzero(np.abs(dr) + np.abs(dc) != 1)[0])
            raise ValueError(f"step {k} is not a unit move")
        code = np.where(dr == -1, 0, np.where(dr == 1, 1, np.where(dc == -1, 2, 3))).astype(np.uint8)
        return cls((rows[0], cols[0]), code, np.ones(len(code), np.int64))

    # -- queries ----------------------------------------------------------

    @property
    def moves(self) -> str:
        return "".join(f"{LETTERS[c]}{n}" for c, n in zip(self.letters.tolist(), self.counts.tolist()))

    def __len__(self) -> int:
        """Number of vertices (moves + 1)."""
        return int(self.counts.sum()) + 1

    @property
    def num_moves(self) -> int:
        return int(self.counts.sum())

    @property
    def end(self) -> WallVertex:
        dr = int((_DROW[self.letters] * self.counts).sum())
        dc = int((_DCOL[self.letters] * self.counts).sum())
        return WallVertex(self.start.row + dr, self.start.col + dc)

    def vertices(self) -> tuple[np.ndarray, np.ndarray]:
        """Row and column arrays of every vertex on the walk."""
        steps = np.repeat(self.letters, self.counts)
        rows = np.empty(len(steps) + 1, dtype=np.int64)
        cols = np.empty(len(steps) + 1, dtype=np.int64)
        rows[0], cols[0] = self.start
        np.cumsum(_DROW[steps], out=rows[1:])
        np.cumsum(_DCOL[steps], out=cols[1:])
        rows[1:] += self.start.row
        cols[1:] += self.start.col
        return rows, cols

    def vertex_list(self) -> list[WallVertex]:
        rows, cols = self.vertices()
        return [WallVertex(r, c) for r, c in zip(rows.tolist(), cols.tolist())]

    def corners(self) -> tuple[np.ndarray, np.ndarray]:
        """Vertices at run boundaries (start, every turn, end)."""
        rows = np.concatenate(([0], np.cumsum(_DROW[self.letters] * self.counts))) + self.start.row
        cols = np.concatenate(([0], np.cumsum(_DCOL[self.letters] * self.counts))) + self.start.col
        return rows, cols

    # -- transformations --------------------------------------------------

    def reversed(self) -> "WallPath":
        return WallPath(self.end, _INVERSE[self.letters[::-1]], self.counts[::-1])

    def then(self, other: "WallPath") -> "WallPath":
        """Concatenate two walks where ``other`` starts at this walk's end."""
        if other.start != self.end:
            raise ValueError(f"cannot join: {tuple(self.end)} != {tuple(other.start)}")
        return WallPath(
            self.start,
            np.concatenate((self.letters, other.letters)),
            np.concatenate((self.counts, other.counts)),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, WallPath):
            return NotImplemented
        return (
            self.start == other.start
            and np.array_equal(self.letters, other.letters)
            and np.array_equal(self.counts, other.counts)
        )

    def __hash__(self):
        return hash((self.start, self.letters.tobytes(), self.counts.tobytes()))

    def __repr__(self) -> str:
        moves = self.moves
        if len(moves) > 60:
            moves = moves[:57] + "..."
        return f"WallPath(start={tuple(self.start)}, moves={moves!r})"
