"""Conservative predicates on path intervals, with incremental recognizers.

A predicate is *conservative* when truth on an interval implies truth on
every sub-interval (equivalently, falsity is inherited by every superset).
Each predicate ships as a Recognizer: a small state machine that represents
one interval at a time, always satisfying the predicate, and supports
resetting to a singleton, extending at either end, and dropping the point
at the negative end.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .paths import Adjacency, DigitalPath, IndexInterval, Point, is_adjacent


class PredicateError(ValueError):
    """Bad predicate spec: unknown name, missing parameter, or adjacency mismatch."""


@dataclass(frozen=True)
class PredicateSpec:
    """Named predicate selection plus its integer parameters."""

    name: str
    params: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"name": self.name, "params": dict(sorted(self.params.items()))}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "PredicateSpec":
        if not isinstance(doc, dict) or "name" not in doc:
            raise PredicateError("predicate document must be an object with a 'name'")
        return cls(doc["name"], dict(doc.get("params", {})))


class Recognizer:
    """Incremental truth maintenance for one predicate on one path.

    The recognizer represents a single interval and the represented
    interval always satisfies the predicate.  `reset` re-targets it to a
    singleton and reports whether the predicate holds there; each
    `try_extend_*` either succeeds (the interval grows by one point) or
    fails leaving the state unchanged.  `remove_negative_end` drops the
    first point; subclasses that cannot do this in O(1) re-derive their
    state in O(length), which is noted per predicate.
    """

    def __init__(self, path: DigitalPath):
        self.path = path
        self.n_points = path.n_points
        self._start = 0  # unwrapped; may leave [0, n] on closed paths
        self._length = 0

    # -- predicate-specific hooks ------------------------------------------
    #
    # `closing` is set on the extension that grows a closed-path interval to
    # the full point count: the interval then denotes the whole circle, and
    # order-sensitive predicates must account for the wrap join as well (so
    # that full-turn truth does not depend on the starting rotation).
    # `opening` mirrors it on removal from a full interval.

    def _on_reset(self, index: int, p: Point) -> bool:
        raise NotImplementedError

    def _try_add(self, index: int, p: Point, positive: bool, closing: bool) -> bool:
        raise NotImplementedError

    def _on_remove(self, index: int, p: Point, opening: bool) -> None:
        raise NotImplementedError

    # -- interval mechanics -------------------------------------------------

    @property
    def interval(self) -> IndexInterval:
        return IndexInterval(self._start % self.n_points, self._length)

    @property
    def length(self) -> int:
        return self._length

    def reset(self, index: int) -> bool:
        """Represent the singleton at `index`; False if the predicate fails there
        (the state is then empty and must be reset again before use)."""
        self._start = index
        self._length = 0
        ok = self._on_reset(index % self.n_points, self.path.points[index % self.n_points])
        if ok:
            self._length = 1
        return ok

    def try_extend_positive(self) -> bool:
        if self._length == 0:
            return False
        nxt = self._start + self._length
        if not self.path.closed and nxt >= self.n_points:
            return False
        if self._length >= self.n_points:
            return False  # never wrap past one full turn
        idx = nxt % self.n_points
        closing = self.path.closed and self._length + 1 == self.n_points
        if self._try_add(idx, self.path.points[idx], positive=True, closing=closing):
            self._length += 1
            return True
        return False

    def try_extend_negative(self) -> bool:
        if self._length == 0:
            return False
        nxt = self._start - 1
        if not self.path.closed and nxt < 0:
            return False
        if self._length >= self.n_points:
            return False
        idx = nxt % self.n_points
        closing = self.path.closed and self._length + 1 == self.n_points
        if self._try_add(idx, self.path.points[idx], positive=False, closing=closing):
            self._start = nxt
            self._length += 1
            return True
        return False

    def remove_negative_end(self) -> None:
        if self._length < 2:
            raise ValueError("cannot remove from an interval of fewer than 2 points")
        idx = self._start % self.n_points
        opening = self.path.closed and self._length == self.n_points
        self._on_remove(idx, self.path.points[idx], opening)
        self._start += 1
        self._length -= 1

    def holds(self, iv: IndexInterval) -> bool:
        """Stateless evaluation: replay the interval from its start.

        Re-targets this recognizer (the previous state is discarded).
        """
        if not self.reset(iv.start):
            return False
        for _ in range(iv.length - 1):
            if not self.try_extend_positive():
                return False
        return True


# ---------------------------------------------------------------------------
# Digital straight segments
# ---------------------------------------------------------------------------
#
# An interval is a DSS when some integer line band  mu <= a*x - b*y <= mu+w-1
# contains all its points, with w = max(|a|,|b|) on 8-connected paths and
# w = |a|+|b| on 4-connected ones.  Because the path moves by unit steps, the
# *distinct* points of any band-feasible interval form a classic connected
# segment in geometric order; the path may wander back and forth along it.
# The recognizer therefore keeps a multiplicity count per point plus a
# "core": the distinct points as a deque in geometric order, carrying
# arithmetic characteristics (a, b, mu) and the four leaning points.

_DIAG_TURNS = {
    (1, 0): ((1, 1), (1, -1)),
    (1, 1): ((1, 0), (0, 1)),
    (0, 1): ((1, 1), (-1, 1)),
    (-1, 1): ((0, 1), (-1, 0)),
    (-1, 0): ((-1, 1), (-1, -1)),
    (-1, -1): ((-1, 0), (0, -1)),
    (0, -1): ((-1, -1), (1, -1)),
    (1, -1): ((0, -1), (1, 0)),
}
_PERP_TURNS = {
    (1, 0): ((0, 1), (0, -1)),
    (-1, 0): ((0, 1), (0, -1)),
    (0, 1): ((1, 0), (-1, 0)),
    (0, -1): ((1, 0), (-1, 0)),
}


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class DssRecognizer(Recognizer):
    """Arithmetic DSS recognition with extension at both ends.

    Removal at the negative end is O(1) for the bookkeeping but lazily
    re-derives the characteristics from the surviving core (O(length))
    before the next geometric extension.
    """

    def __init__(self, path: DigitalPath):
        if path.adjacency is Adjacency.INDEX:
            raise PredicateError("dss requires grid adjacency (4 or 8), not index-only")
        super().__init__(path)
        self._naive = path.adjacency is Adjacency.EIGHT
        self._turns = _DIAG_TURNS if self._naive else _PERP_TURNS
        self._counts: Counter = Counter()
        self._core: deque = deque()
        self._dirty = False
        self._chars = None  # (a, b, mu) or None while the core is a singleton
        self._lean = None  # (Uf, Ul, Lf, Ll) in core order
        self._dirs: set = set()

    # -- characteristics ----------------------------------------------------

    def _omega(self, a: int, b: int) -> int:
        return max(abs(a), abs(b)) if self._naive else abs(a) + abs(b)

    def characteristics(self) -> Optional[tuple[int, int, int]]:
        """Current (a, b, mu), sign-normalized to a >= 0 (b > 0 when a == 0).

        None for a single-point core, where the line is unconstrained.
        """
        if self._dirty:
            self._rebuild()
        if self._chars is None:
            return None
        a, b, mu = self._chars
        if a < 0 or (a == 0 and b < 0):
            om = self._omega(a, b)
            a, b, mu = -a, -b, -mu - om + 1
        return (a, b, mu)

    # -- hooks ---------------------------------------------------------------

    def _on_reset(self, index: int, p: Point) -> bool:
        self._counts = Counter({p: 1})
        self._core = deque([p])
        self._chars = None
        self._lean = None
        self._dirs = set()
        self._dirty = False
        return True

    def _try_add(self, index: int, p: Point, positive: bool, closing: bool) -> bool:
        # band membership is a property of the point multiset, so the
        # wrap join needs no extra handling here
        if self._counts[p]:
            self._counts[p] += 1
            return True
        if self._dirty:
            self._rebuild()
        if self._core_extend(p, front=True):
            self._counts[p] = 1
            return True
        if len(self._core) > 1 and self._core_extend(p, front=False):
            self._counts[p] = 1
            return True
        return False

    def _on_remove(self, index: int, p: Point, opening: bool) -> None:
        self._counts[p] -= 1
        if self._counts[p]:
            return
        del self._counts[p]
        # A point whose last occurrence leaves the interval is always a
        # geometric extremity: interior columns/rows stay visited as long
        # as the interval spans both sides of them.
        if self._core[0] == p:
            self._core.popleft()
        elif self._core[-1] == p:
            self._core.pop()
        else:
            raise AssertionError(f"removed point {p} is interior to the segment core")
        self._dirty = True

    # -- core maintenance -----------------------------------------------------

    def _rebuild(self) -> None:
        pts = list(self._core)
        self._core = deque([pts[0]])
        self._chars = None
        self._lean = None
        self._dirs = set()
        self._dirty = False
        for q in pts[1:]:
            if not self._core_extend(q, front=True):
                raise AssertionError("core replay failed; recognizer state corrupt")

    def _allowed(self, step: Point) -> bool:
        if len(self._dirs) == 2:
            return step in self._dirs
        (d,) = self._dirs
        return step == d or step in self._turns.get(d, ())

    def _core_extend(self, p: Point, front: bool) -> bool:
        core = self._core
        if len(core) == 1:
            g = core[0]
            d = (p[0] - g[0], p[1] - g[1]) if front else (g[0] - p[0], g[1] - p[1])
            if not is_adjacent(p, g, self.path.adjacency):
                return False
            a, b = d[1], d[0]
            mu = a * g[0] - b * g[1]
            back, frontp = (g, p) if front else (p, g)
            self._chars = (a, b, mu)
            self._lean = (back, frontp, back, frontp)
            self._dirs = {d}
            core.append(p) if front else core.appendleft(p)
            return True

        anchor = core[-1] if front else core[0]
        if not is_adjacent(p, anchor, self.path.adjacency):
            return False
        step = (p[0] - anchor[0], p[1] - anchor[1]) if front else (anchor[0] - p[0], anchor[1] - p[1])
        if not self._allowed(step):
            return False

        a, b, mu = self._chars
        om = self._omega(a, b)
        r = a * p[0] - b * p[1]
        uf, ul, lf, ll = self._lean

        if mu <= r <= mu + om - 1:
            if front:
                if r == mu:
                    ul = p
                if r == mu + om - 1:
                    ll = p
            else:
                if r == mu:
                    uf = p
                if r == mu + om - 1:
                    lf = p
        elif r == mu - 1:
            # p lies just above the band: the slope steepens through the
            # far upper leaning point; the old last lower leaning point is
            # the only lower leaning point that survives.
            pivot = uf if front else ul
            witness = ll if front else lf
            new = self._slope_through(p, pivot, witness, upper=True)
            if new is None:
                return False
            a, b, mu = new
            if front:
                ul, lf, ll = p, ll, ll
            else:
                uf, lf, ll = p, lf, lf
            self._chars = (a, b, mu)
        elif r == mu + om:
            pivot = lf if front else ll
            witness = ul if front else uf
            new = self._slope_through(p, pivot, witness, upper=False)
            if new is None:
                return False
            a, b, mu = new
            if front:
                ll, uf, ul = p, ul, ul
            else:
                lf, uf, ul = p, uf, uf
            self._chars = (a, b, mu)
        else:
            return False

        self._dirs.add(step)
        if len(self._dirs) > 2:
            raise AssertionError("segment core acquired a third step direction")
        self._lean = (uf, ul, lf, ll)
        core.append(p) if front else core.appendleft(p)
        return True

    def _slope_through(self, p: Point, pivot: Point, witness: Point, upper: bool):
        """Characteristics of the line through p and pivot, oriented so that
        they are upper (resp. lower) leaning and `witness` leans opposite."""
        dx, dy = p[0] - pivot[0], p[1] - pivot[1]
        g = _gcd(dx, dy)
        if g == 0:
            return None
        dx //= g
        dy //= g
        for sign in (1, -1):
            a, b = sign * dy, sign * dx
            om = self._omega(a, b)
            if upper:
                mu = a * p[0] - b * p[1]
                if a * witness[0] - b * witness[1] == mu + om - 1:
                    return (a, b, mu)
            else:
                mu = a * p[0] - b * p[1] - om + 1
                if a * witness[0] - b * witness[1] == mu:
                    return (a, b, mu)
        return None


def dss_holds(path: DigitalPath, iv: IndexInterval) -> bool:
    """Stateless DSS test: does some line band of the right width contain
    every point of the interval?  Wraps the incremental recognizer."""
    return DssRecognizer(path).holds(iv)


# ---------------------------------------------------------------------------
# The other shipped predicates
# ---------------------------------------------------------------------------


class MaxLenRecognizer(Recognizer):
    """Interval has at most k points.  O(1) removal."""

    def __init__(self, path: DigitalPath, k: int):
        if k < 1:
            raise PredicateError(f"max_len requires k >= 1, got {k}")
        super().__init__(path)
        self.k = k

    def _on_reset(self, index, p):
        return self.k >= 1

    def _try_add(self, index, p, positive, closing):
        return self._length + 1 <= self.k

    def _on_remove(self, index, p, opening):
        pass


class MonotoneRecognizer(Recognizer):
    """One coordinate is weakly monotone along the interval.  O(1) removal:
    only the counts of rising and falling consecutive steps are kept.

    The full turn of a closed path counts all joins including the wrap, so
    it is monotone only when the coordinate is constant (the joins sum to
    zero around the circle); truth is then independent of the rotation.
    """

    def __init__(self, path: DigitalPath, axis: int):
        super().__init__(path)
        self.axis = axis
        self._rising = 0
        self._falling = 0

    def _on_reset(self, index, p):
        self._rising = 0
        self._falling = 0
        return True

    def _coord(self, index: int) -> int:
        return self.path.points[index % self.n_points][self.axis]

    def _try_add(self, index, p, positive, closing):
        if closing:
            # the added point fills the last gap: both of its joins appear
            d_in = p[self.axis] - self._coord(index - 1)
            d_out = self._coord(index + 1) - p[self.axis]
            rising = (d_in > 0) + (d_out > 0)
            falling = (d_in < 0) + (d_out < 0)
            if (rising and (falling or self._falling)) or (falling and self._rising):
                return False
            self._rising += rising
            self._falling += falling
            return True
        prev = (self._start + self._length - 1) if positive else self._start
        d = p[self.axis] - self._coord(prev)
        if not positive:
            d = -d
        if d > 0 and self._falling:
            return False
        if d < 0 and self._rising:
            return False
        if d > 0:
            self._rising += 1
        elif d < 0:
            self._falling += 1
        return True

    def _on_remove(self, index, p, opening):
        if opening:
            d_in = p[self.axis] - self._coord(index - 1)
            self._rising -= d_in > 0
            self._falling -= d_in < 0
        d = self._coord(self._start + 1) - p[self.axis]
        if d > 0:
            self._rising -= 1
        elif d < 0:
            self._falling -= 1


class BboxRecognizer(Recognizer):
    """Bounding box of the interval fits in w x h grid cells.

    Removal recomputes a lost extreme by scanning the coordinate counter,
    so it is O(distinct coordinates) rather than O(1).
    """

    def __init__(self, path: DigitalPath, w: int, h: int):
        if w < 1 or h < 1:
            raise PredicateError(f"bbox requires w >= 1 and h >= 1, got {w}x{h}")
        super().__init__(path)
        self.w = w
        self.h = h
        self._xs: Counter = Counter()
        self._ys: Counter = Counter()
        self._xmin = self._xmax = self._ymin = self._ymax = 0

    def _on_reset(self, index, p):
        self._xs = Counter({p[0]: 1})
        self._ys = Counter({p[1]: 1})
        self._xmin = self._xmax = p[0]
        self._ymin = self._ymax = p[1]
        return True

    def _try_add(self, index, p, positive, closing):
        xmin = min(self._xmin, p[0])
        xmax = max(self._xmax, p[0])
        ymin = min(self._ymin, p[1])
        ymax = max(self._ymax, p[1])
        if xmax - xmin + 1 > self.w or ymax - ymin + 1 > self.h:
            return False
        self._xs[p[0]] += 1
        self._ys[p[1]] += 1
        self._xmin, self._xmax, self._ymin, self._ymax = xmin, xmax, ymin, ymax
        return True

    def _on_remove(self, index, p, opening):
        self._xs[p[0]] -= 1
        if not self._xs[p[0]]:
            del self._xs[p[0]]
            if p[0] == self._xmin:
                self._xmin = min(self._xs)
            if p[0] == self._xmax:
                self._xmax = max(self._xs)
        self._ys[p[1]] -= 1
        if not self._ys[p[1]]:
            del self._ys[p[1]]
            if p[1] == self._ymin:
                self._ymin = min(self._ys)
            if p[1] == self._ymax:
                self._ymax = max(self._ys)


class ContainsStartRecognizer(Recognizer):
    """Interval contains path index 0.

    Deliberately NOT conservative (a sub-interval may miss index 0); it is
    shipped only so the conservativity checker has a known bad citizen to
    detect, and must not be fed to the cover algorithms.
    """

    def _covers_zero(self, start: int, length: int) -> bool:
        return (0 - start) % self.n_points < length

    def _on_reset(self, index, p):
        return index == 0

    def _try_add(self, index, p, positive, closing):
        return True  # a superset of a set containing index 0 still contains it

    def _on_remove(self, index, p, opening):
        pass

    def holds(self, iv: IndexInterval) -> bool:
        return self._covers_zero(iv.start, iv.length)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PredicateInfo:
    name: str
    params: tuple[str, ...]
    conservative: bool
    doc: str
    factory: Callable[[PredicateSpec, DigitalPath], Recognizer] = field(compare=False)


def _need(spec: PredicateSpec, key: str) -> int:
    if key not in spec.params:
        raise PredicateError(f"predicate {spec.name!r} needs parameter {key!r}")
    v = spec.params[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise PredicateError(f"parameter {key!r} of {spec.name!r} must be an integer")
    return v


_REGISTRY: dict[str, PredicateInfo] = {}


def register_predicate(info: PredicateInfo) -> None:
    _REGISTRY[info.name] = info


register_predicate(PredicateInfo(
    "dss", (), True,
    "points fit one digital straight line band",
    lambda spec, path: DssRecognizer(path),
))
register_predicate(PredicateInfo(
    "max_len", ("k",), True,
    "at most k points",
    lambda spec, path: MaxLenRecognizer(path, _need(spec, "k")),
))
register_predicate(PredicateInfo(
    "x_monotone", (), True,
    "x coordinate weakly monotone",
    lambda spec, path: MonotoneRecognizer(path, 0),
))
register_predicate(PredicateInfo(
    "y_monotone", (), True,
    "y coordinate weakly monotone",
    lambda spec, path: MonotoneRecognizer(path, 1),
))
register_predicate(PredicateInfo(
    "bbox", ("w", "h"), True,
    "bounding box fits in w x h cells",
    lambda spec, path: BboxRecognizer(path, _need(spec, "w"), _need(spec, "h")),
))
register_predicate(PredicateInfo(
    "contains_start", (), False,
    "interval contains path index 0 (non-conservative, for verification only)",
    lambda spec, path: ContainsStartRecognizer(path),
))


def list_predicates() -> list[PredicateInfo]:
    return sorted(_REGISTRY.values(), key=lambda info: info.name)


def make_recognizer(spec: PredicateSpec, path: DigitalPath) -> Recognizer:
    if spec.name not in _REGISTRY:
        known = ", ".join(sorted(_REGISTRY))
        raise PredicateError(f"unknown predicate {spec.name!r} (known: {known})")
    return _REGISTRY[spec.name].factory(spec, path)


# ---------------------------------------------------------------------------
# Conservativity checking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConservativityReport:
    ok: bool
    trials: int
    counterexample: Optional[tuple[int, IndexInterval, IndexInterval]] = None
    # counterexample = (path position in the sample, X true, Y subset false)

    def __str__(self) -> str:
        if self.ok:
            return f"conservative over {self.trials} sampled interval pairs"
        i, x, y = self.counterexample
        return (f"NOT conservative: on sample path {i} the predicate holds on "
                f"start={x.start} len={x.length} but fails on start={y.start} len={y.length}")


def check_conservative(
    spec: PredicateSpec,
    paths: Sequence[DigitalPath],
    trials: int = 10_000,
    seed: int = 0,
) -> ConservativityReport:
    """Randomized conservativity probe.

    Samples intervals X on which the predicate holds and checks random
    sub-intervals Y of X; the first (X, Y) with holds(X) and not holds(Y)
    refutes conservativity.
    """
    rng = random.Random(seed)
    recs = [make_recognizer(spec, p) for p in paths]
    for t in range(trials):
        i = rng.randrange(len(paths))
        path, rec = paths[i], recs[i]
        n1 = path.n_points
        start = rng.randrange(n1)
        max_len = n1 if path.closed else n1 - start
        x = IndexInterval(start, rng.randint(1, max_len))
        if not rec.holds(x):
            continue
        sub_len = rng.randint(1, x.length)
        sub_off = rng.randint(0, x.length - sub_len)
        y = IndexInterval((x.start + sub_off) % n1, sub_len)
        if not rec.holds(y):
            return ConservativityReport(False, t + 1, (i, x, y))
    return ConservativityReport(True, trials)
