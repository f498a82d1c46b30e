import random

import pytest

from oracles import dss_feasible, dss_feasible_all_intervals
from satcover import synth
from satcover.paths import Adjacency, DigitalPath, IndexInterval
from satcover.predicates import (
    DssRecognizer,
    PredicateError,
    PredicateSpec,
    check_conservative,
    dss_holds,
    list_predicates,
    make_recognizer,
)

SHIPPED = [
    PredicateSpec("dss"),
    PredicateSpec("max_len", {"k": 3}),
    PredicateSpec("x_monotone"),
    PredicateSpec("y_monotone"),
    PredicateSpec("bbox", {"w": 3, "h": 3}),
]


def random_grid_path(rng, max_points=30):
    adjacency = rng.choice((Adjacency.FOUR, Adjacency.EIGHT))
    n = rng.randint(1, max_points)
    if rng.random() < 0.4 and n >= 4:
        return synth.random_closed_path(n, adjacency, rng=rng)
    return synth.random_walk_path(n, adjacency, rng=rng)


# ---------------------------------------------------------------------------
# DSS
# ---------------------------------------------------------------------------


def test_dss_holds_examples():
    run = DigitalPath(((0, 0), (1, 0), (2, 0), (3, 0)))
    assert dss_holds(run, IndexInterval(0, 4))

    stairs = DigitalPath(((0, 0), (1, 0), (1, 1), (2, 1), (3, 1)), adjacency=Adjacency.FOUR)
    assert dss_feasible(stairs, IndexInterval(0, 5))  # oracle agrees it is a segment
    assert dss_holds(stairs, IndexInterval(0, 5))

    hook = DigitalPath(((0, 0), (1, 0), (1, 1), (1, 2), (2, 2), (2, 1)), adjacency=Adjacency.FOUR)
    assert not dss_feasible(hook, IndexInterval(0, 6))
    assert not dss_holds(hook, IndexInterval(0, 6))


def test_dss_rejects_index_adjacency():
    path = synth.random_index_path(5, seed=0)
    with pytest.raises(PredicateError):
        make_recognizer(PredicateSpec("dss"), path)


def test_dss_characteristics_convention():
    # a >= 0, and b > 0 when a = 0
    east = DigitalPath(((0, 3), (1, 3), (2, 3)))
    rec = DssRecognizer(east)
    rec.holds(IndexInterval(0, 3))
    assert rec.characteristics() == (0, 1, -3)

    west = DigitalPath(((2, 3), (1, 3), (0, 3)))
    rec = DssRecognizer(west)
    rec.holds(IndexInterval(0, 3))
    assert rec.characteristics() == (0, 1, -3)

    north = DigitalPath(((5, 0), (5, 1), (5, 2)))
    rec = DssRecognizer(north)
    rec.holds(IndexInterval(0, 3))
    a, b, mu = rec.characteristics()
    assert (a, b) == (1, 0) and mu == 5

    line = DigitalPath(tuple((x, (2 * x + 1) // 5) for x in range(40)))
    rec = DssRecognizer(line)
    assert rec.holds(IndexInterval(0, 40))
    a, b, mu = rec.characteristics()
    assert (a, b) == (2, 5)
    om = max(abs(a), abs(b))
    assert all(mu <= a * x - b * y <= mu + om - 1 for x, y in line.points)


def test_dss_long_digitized_line_all_extensions_succeed():
    pts = tuple((x, (2 * x + 1) // 5) for x in range(1000))
    path = DigitalPath(pts, adjacency=Adjacency.EIGHT)
    rec = DssRecognizer(path)
    assert rec.reset(0)
    for _ in range(999):
        assert rec.try_extend_positive()


def test_dss_matches_feasibility_oracle_exhaustively():
    rng = random.Random(2024)
    for _ in range(40):
        path = random_grid_path(rng, max_points=30)
        oracle = dss_feasible_all_intervals(path)
        rec = DssRecognizer(path)
        for (start, length), expected in oracle.items():
            assert rec.holds(IndexInterval(start, length)) == expected, (
                path.points, path.closed, path.adjacency, start, length)


def test_dss_accepts_revisits_within_a_band():
    # back and forth along a row stays inside one digital line
    path = DigitalPath(((0, 0), (1, 0), (2, 0), (1, 0), (0, 0)))
    assert dss_holds(path, IndexInterval(0, 5))
    # but leaving the band is caught even after revisits
    bent = DigitalPath(((0, 0), (1, 0), (0, 0), (0, 1)))
    assert not dss_holds(bent, IndexInterval(0, 4))


# ---------------------------------------------------------------------------
# Recognizer contract
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("spec", SHIPPED, ids=lambda s: s.name)
def test_singletons_always_true(spec):
    rng = random.Random(5)
    for _ in range(20):
        path = random_grid_path(rng)
        rec = make_recognizer(spec, path)
        for i in range(path.n_points):
            assert rec.reset(i)


def test_recognizer_state_is_path_independent():
    rng = random.Random(99)
    for _ in range(120):
        path = random_grid_path(rng, max_points=50)
        spec = rng.choice(SHIPPED)
        rec = make_recognizer(spec, path)
        fresh = make_recognizer(spec, path)
        if not rec.reset(rng.randrange(path.n_points)):
            continue
        for _ in range(40):
            r = rng.random()
            if r < 0.45:
                rec.try_extend_positive()
            elif r < 0.8:
                rec.try_extend_negative()
            elif rec.length >= 2:
                rec.remove_negative_end()
            assert fresh.holds(rec.interval), (spec, path.points, rec.interval)


def test_removal_equivalent_to_fresh_recognizer():
    rng = random.Random(31)
    for _ in range(80):
        path = random_grid_path(rng, max_points=40)
        spec = rng.choice(SHIPPED)
        rec = make_recognizer(spec, path)
        if not rec.reset(rng.randrange(path.n_points)):
            continue
        for _ in range(rng.randint(1, 25)):
            if not rec.try_extend_positive():
                break
        removals = rng.randint(0, rec.length - 1)
        for _ in range(removals):
            rec.remove_negative_end()
        twin = make_recognizer(spec, path)
        assert twin.holds(rec.interval)
        for _ in range(6):
            a, b = rec.try_extend_positive(), twin.try_extend_positive()
            assert a == b
            a, b = rec.try_extend_negative(), twin.try_extend_negative()
            assert a == b


def test_extend_failure_leaves_state_unchanged():
    path = DigitalPath(((0, 0), (1, 0), (2, 0), (2, 1), (2, 2)), adjacency=Adjacency.FOUR)
    rec = make_recognizer(PredicateSpec("bbox", {"w": 2, "h": 2}), path)
    assert rec.reset(1)
    assert rec.try_extend_positive()
    iv = rec.interval
    assert not rec.try_extend_negative()  # (0,0) would make the box 3 wide
    assert rec.interval == iv


def test_boundary_blocks_extension():
    path = DigitalPath(((0, 0), (1, 0)))
    rec = make_recognizer(PredicateSpec("max_len", {"k": 5}), path)
    assert rec.reset(1)
    assert not rec.try_extend_positive()
    assert rec.reset(0)
    assert not rec.try_extend_negative()


def test_remove_from_singleton_is_an_error():
    path = DigitalPath(((0, 0), (1, 0)))
    rec = make_recognizer(PredicateSpec("max_len", {"k": 5}), path)
    rec.reset(0)
    with pytest.raises(ValueError):
        rec.remove_negative_end()


def test_max_len_window():
    path = synth.random_walk_path(10, Adjacency.EIGHT, seed=8)
    rec = make_recognizer(PredicateSpec("max_len", {"k": 3}), path)
    assert rec.reset(4)
    assert rec.try_extend_positive()
    assert rec.try_extend_negative()
    assert not rec.try_extend_positive()
    assert not rec.try_extend_negative()


def test_monotone_recognizer():
    path = DigitalPath(((0, 0), (1, 0), (2, 0), (1, 1)), adjacency=Adjacency.EIGHT)
    rec = make_recognizer(PredicateSpec("x_monotone"), path)
    assert rec.holds(IndexInterval(0, 3))
    assert not rec.holds(IndexInterval(0, 4))
    # flat runs count as monotone both ways
    flat = DigitalPath(((0, 0), (0, 1), (0, 2)))
    rec = make_recognizer(PredicateSpec("x_monotone"), flat)
    assert rec.holds(IndexInterval(0, 3))


def test_bad_specs_rejected():
    path = DigitalPath(((0, 0), (1, 0)))
    with pytest.raises(PredicateError):
        make_recognizer(PredicateSpec("no_such_predicate"), path)
    with pytest.raises(PredicateError):
        make_recognizer(PredicateSpec("max_len"), path)  # missing k
    with pytest.raises(PredicateError):
        make_recognizer(PredicateSpec("bbox", {"w": 0, "h": 2}), path)
    with pytest.raises(PredicateError):
        make_recognizer(PredicateSpec("bbox", {"w": 2}), path)


def test_registry_listing():
    names = [info.name for info in list_predicates()]
    assert {"dss", "max_len", "x_monotone", "y_monotone", "bbox", "contains_start"} <= set(names)
    flags = {info.name: info.conservative for info in list_predicates()}
    assert flags["contains_start"] is False
    assert flags["dss"] is True


# ---------------------------------------------------------------------------
# Conservativity
# ---------------------------------------------------------------------------


def _sample_paths(seed, count=25, max_points=40):
    rng = random.Random(seed)
    return [random_grid_path(rng, max_points) for _ in range(count)]


def test_max_len_is_conservative():
    rep = check_conservative(PredicateSpec("max_len", {"k": 3}), _sample_paths(1), trials=10_000)
    assert rep.ok, str(rep)


def test_dss_is_conservative_on_random_8_paths():
    paths = [synth.random_walk_path(random.Random(i).randint(2, 40), Adjacency.EIGHT, seed=i)
             for i in range(20)]
    rep = check_conservative(PredicateSpec("dss"), paths, trials=10_000)
    assert rep.ok, str(rep)


def test_planted_predicate_is_caught():
    rep = check_conservative(PredicateSpec("contains_start"), _sample_paths(2), trials=1000)
    assert not rep.ok
    i, x, y = rep.counterexample
    assert "NOT conservative" in str(rep)
