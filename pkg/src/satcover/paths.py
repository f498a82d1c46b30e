"""Digital paths on the integer grid.

A digital path is an ordered list of grid points in which consecutive
points are distinct and adjacent under a chosen neighbourhood relation.
Paths may self-intersect (the same point may occur at several non-adjacent
positions); a *subpath* is a contiguous run of indices and is identified
by an (start, length) interval, never by its point set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

Point = tuple[int, int]


class Adjacency(Enum):
    """Neighbourhood relation between grid points.

    FOUR uses the l1 norm and EIGHT the l-infinity norm: p and q are
    adjacent iff the norm of q - p is <= 1 and p != q.  INDEX declares any
    two distinct points adjacent, so connectivity is carried purely by
    consecutive list positions.
    """

    FOUR = "4"
    EIGHT = "8"
    INDEX = "index"

    @classmethod
    def from_code(cls, code: str) -> "Adjacency":
        for adj in cls:
            if adj.value == code:
                return adj
        raise ValueError(f"unknown adjacency code {code!r} (expected '4', '8' or 'index')")


def is_adjacent(p: Point, q: Point, adjacency: Adjacency) -> bool:
    """True iff p != q and q - p has norm <= 1 under the declared norm."""
    if p == q:
        return False
    if adjacency is Adjacency.INDEX:
        return True
    dx = abs(q[0] - p[0])
    dy = abs(q[1] - p[1])
    if adjacency is Adjacency.FOUR:
        return dx + dy <= 1
    return max(dx, dy) <= 1


_NEIGHBOUR_OFFSETS = {
    Adjacency.FOUR: ((0, -1), (-1, 0), (1, 0), (0, 1)),
    Adjacency.EIGHT: ((-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)),
}


def neighbours(p: Point, adjacency: Adjacency) -> tuple[Point, ...]:
    """The neighbourhood of p, in deterministic scan order."""
    if adjacency is Adjacency.INDEX:
        raise ValueError("INDEX adjacency has no finite neighbourhood")
    x, y = p
    return tuple((x + dx, y + dy) for dx, dy in _NEIGHBOUR_OFFSETS[adjacency])


@dataclass(frozen=True)
class DigitalPath:
    """An ordered list of grid points with an adjacency discipline.

    The list is never empty, consecutive points are distinct, and for
    FOUR/EIGHT adjacency every consecutive pair (including the wrap pair
    of a closed path) is adjacent.  Construction does not validate; use
    :func:`validate_path`.
    """

    points: tuple[Point, ...]
    closed: bool = False
    adjacency: Adjacency = Adjacency.EIGHT

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))

    @property
    def n_points(self) -> int:
        return len(self.points)

    def point(self, index: int) -> Point:
        """Point at index, modulo the length for closed paths."""
        if self.closed:
            return self.points[index % len(self.points)]
        return self.points[index]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_path; `index` is the first offending pair (i, i+1)."""

    ok: bool
    index: Optional[int] = None
    kind: Optional[str] = None  # "empty" | "repetition" | "not_adjacent" | "bad_closure"

    @property
    def message(self) -> str:
        if self.ok:
            return "ok"
        if self.kind == "empty":
            return "path has no points"
        what = "repeated point" if self.kind == "repetition" else "non-adjacent pair"
        if self.kind == "bad_closure":
            return f"closing pair (index {self.index}, index 0) is not adjacent"
        return f"{what} at consecutive indices ({self.index}, {self.index + 1})"


def validate_path(path: DigitalPath) -> ValidationReport:
    """Check all DigitalPath invariants; the report is the result, never an exception."""
    pts = path.points
    n1 = len(pts)
    if n1 == 0:
        return ValidationReport(False, kind="empty")
    for i in range(n1 - 1):
        if pts[i] == pts[i + 1]:
            return ValidationReport(False, index=i, kind="repetition")
        if not is_adjacent(pts[i], pts[i + 1], path.adjacency):
            return ValidationReport(False, index=i, kind="not_adjacent")
    if path.closed:
        if pts[-1] == pts[0]:
            return ValidationReport(False, index=n1 - 1, kind="repetition")
        if not is_adjacent(pts[-1], pts[0], path.adjacency):
            return ValidationReport(False, index=n1 - 1, kind="bad_closure")
    return ValidationReport(True)


class IndexInterval(NamedTuple):
    """A subpath as a contiguous index range: points start .. start+length-1.

    On closed paths indices are taken modulo the point count; an interval
    never wraps more than one full turn (length <= n_points).
    """

    start: int
    length: int

    def indices(self, n_points: int) -> Iterator[int]:
        for k in range(self.length):
            yield (self.start + k) % n_points

    def end(self, n_points: int) -> int:
        """Index of the last point (mod n_points)."""
        return (self.start + self.length - 1) % n_points


def interval_points(path: DigitalPath, iv: IndexInterval) -> list[Point]:
    return [path.points[i] for i in iv.indices(path.n_points)]


def interval_contains(n_points: int, closed: bool, outer: IndexInterval, inner: IndexInterval) -> bool:
    """True iff inner's index range is a subset of outer's (circularly for closed)."""
    if inner.length > outer.length:
        return False
    if not closed:
        return outer.start <= inner.start and inner.start + inner.length <= outer.start + outer.length
    if outer.length == n_points:
        return True
    offset = (inner.start - outer.start) % n_points
    return offset + inner.length <= outer.length


def intervals_intersect(n_points: int, closed: bool, a: IndexInterval, b: IndexInterval) -> bool:
    """True iff the two index ranges share at least one index."""
    if not closed:
        return max(a.start, b.start) <= min(a.start + a.length, b.start + b.length) - 1
    if a.length == n_points or b.length == n_points:
        return True
    off_ab = (b.start - a.start) % n_points
    off_ba = (a.start - b.start) % n_points
    return off_ab < a.length or off_ba < b.length


def middle_index(iv: IndexInterval, n_points: int) -> int:
    """The index from which the interval is rebuilt by alternating,
    positive-first additions: start + floor((length-1)/2), mod n_points."""
    return (iv.start + (iv.length - 1) // 2) % n_points


def rebuild_from_middle(iv: IndexInterval, n_points: int) -> list[int]:
    """Indices of iv in alternating order around its middle (m, m+1, m-1, ...)."""
    m = iv.start + (iv.length - 1) // 2
    out = [m]
    step = 1
    while len(out) < iv.length:
        out.append(m + step)
        if len(out) < iv.length:
            out.append(m - step)
        step += 1
    return [k % n_points for k in out]


def enumerate_subpaths(path: DigitalPath, max_len: Optional[int] = None) -> Iterator[IndexInterval]:
    """Every valid IndexInterval of the path, exactly once.

    Open path of n+1 points: all (start, length) with start+length <= n+1,
    i.e. (n+1)(n+2)/2 intervals.  Closed path: every start with lengths
    1 .. n+1, i.e. (n+1)^2 intervals.
    """
    n1 = path.n_points
    for start in range(n1):
        longest = n1 if path.closed else n1 - start
        if max_len is not None:
            longest = min(longest, max_len)
        for length in range(1, longest + 1):
            yield IndexInterval(start, length)


def canonical_extension(path: DigitalPath, t: float) -> tuple[float, float]:
    """Evaluate the polygonal curve through the path's points at parameter t.

    Uniform vertex parametrization: vertex k sits at t = k/n for an open
    path (k/(n+1) when closed, so t=1 returns to the first point).  A
    single-point open path is constant.
    """
    if not 0 <= t <= 1:
        raise ValueError(f"parameter t={t} outside [0, 1]")
    pts = path.points
    n1 = len(pts)
    if n1 == 1 and not path.closed:
        return (float(pts[0][0]), float(pts[0][1]))
    segments = n1 if path.closed else n1 - 1
    pos = t * segments
    k = int(pos)
    if k >= segments:
        k = segments - 1
    frac = pos - k
    p = pts[k % n1]
    q = pts[(k + 1) % n1]
    return (p[0] + frac * (q[0] - p[0]), p[1] + frac * (q[1] - p[1]))


def turn_fraction(k: int, n: int) -> Fraction:
    """Angular position of index k on a path with max index n, as an exact
    fraction of a full turn: k/(n+1)."""
    if not 0 <= k <= n:
        raise ValueError(f"index {k} outside [0, {n}]")
    return Fraction(k, n + 1)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

class PathFormatError(ValueError):
    """Raised when a path JSON document is malformed or violates path invariants."""


def path_to_json(path: DigitalPath) -> str:
    doc = {
        "closed": path.closed,
        "adjacency": path.adjacency.value,
        "points": [[x, y] for x, y in path.points],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def path_from_json(text: str | bytes) -> DigitalPath:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PathFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise PathFormatError("path document must be a JSON object")
    for key in ("closed", "adjacency", "points"):
        if key not in doc:
            raise PathFormatError(f"missing key {key!r}")
    if not isinstance(doc["closed"], bool):
        raise PathFormatError("'closed' must be a boolean")
    try:
        adjacency = Adjacency.from_code(doc["adjacency"])
    except ValueError as exc:
        raise PathFormatError(str(exc)) from exc
    raw = doc["points"]
    if not isinstance(raw, list):
        raise PathFormatError("'points' must be an array")
    points = []
    for i, entry in enumerate(raw):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in entry)
        ):
            raise PathFormatError(f"point {i} must be a pair of integers, got {entry!r}")
        points.append((entry[0], entry[1]))
    path = DigitalPath(tuple(points), closed=doc["closed"], adjacency=adjacency)
    report = validate_path(path)
    if not report.ok:
        raise PathFormatError(f"invalid digital path: {report.message}")
    return path
