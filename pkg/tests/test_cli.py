import json

from fixtures import ALL_FIXTURES
from satcover.cli import main
from satcover.paths import path_from_json, path_to_json
from satcover.pbm import dump_p1, dump_p4, image_from_ascii
from satcover import synth


def write_pbm(tmp_path, name, art, raw=False):
    img = image_from_ascii(art)
    target = tmp_path / name
    target.write_bytes(dump_p4(img) if raw else dump_p1(img))
    return target


def write_path(tmp_path, path, name="path.json"):
    target = tmp_path / name
    target.write_text(path_to_json(path) + "\n")
    return target


def test_trace_plus(tmp_path, capsys):
    src = write_pbm(tmp_path, "plus.pbm", ALL_FIXTURES["plus"])
    assert main(["trace", str(src), "--adjacency", "4"]) == 0
    out = tmp_path / "plus_c0.json"
    assert out.exists()
    path = path_from_json(out.read_text())
    assert len(set(path.points)) == 5


def test_trace_blank_writes_nothing(tmp_path, capsys):
    target = tmp_path / "blank.pbm"
    target.write_bytes(b"P1\n3 3\n0 0 0\n0 0 0\n0 0 0\n")
    assert main(["trace", str(target)]) == 0
    assert list(tmp_path.glob("blank_c*.json")) == []


def test_trace_two_components(tmp_path):
    src = write_pbm(tmp_path, "two.pbm", ALL_FIXTURES["two_components"], raw=True)
    assert main(["trace", str(src), "--adjacency", "4", "--emit-graph",
                 "--svg", str(tmp_path / "two.svg")]) == 0
    assert (tmp_path / "two_c0.json").exists()
    assert (tmp_path / "two_c1.json").exists()
    assert (tmp_path / "two_c0.graph.json").exists()
    doc = json.loads((tmp_path / "two_c0.graph.json").read_text())
    assert set(doc) == {"vertices", "edges"}
    svg = (tmp_path / "two.svg").read_text()
    assert svg.startswith("<svg")


def test_trace_malformed_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.pbm"
    bad.write_bytes(b"P1\n2 2\n1 0\n")
    assert main(["trace", str(bad)]) == 2
    assert "malformed" in capsys.readouterr().err


def test_trace_odd_cap_exits_3(tmp_path, capsys):
    # comb: spine with 21 teeth -> 44 odd vertices, above the matching cap
    spine = ["#" * 43]
    teeth = "".join("#" if x % 2 == 1 else "." for x in range(43))
    art = teeth + "\n" + spine[0]
    src = write_pbm(tmp_path, "comb.pbm", art)
    assert main(["trace", str(src), "--adjacency", "4"]) == 3
    assert "odd" in capsys.readouterr().err


def test_cover_line_dss(tmp_path, capsys):
    src = write_path(tmp_path, synth.digitized_line_path(50, 1, 3))
    assert main(["cover", str(src), "--predicate", "dss"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["segments"] == [{"start": 0, "len": 50}]
    assert doc["n"] == 50 and doc["closed"] is False
    assert doc["predicate"] == {"name": "dss", "params": {}}
    assert doc["predicate_calls"] >= 50


def test_cover_max_len_windows(tmp_path, capsys):
    src = write_path(tmp_path, synth.digitized_line_path(5, 0, 1))
    assert main(["cover", str(src), "--predicate", "max_len", "--param", "k=3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [s["start"] for s in doc["segments"]] == [0, 1, 2]


def test_cover_oracle_and_forward_agree(tmp_path, capsys):
    path = synth.random_closed_path(60, seed=17)
    src = write_path(tmp_path, path)
    assert main(["cover", str(src), "--predicate", "dss", "--oracle"]) == 0
    base = capsys.readouterr().out
    assert main(["cover", str(src), "--predicate", "dss", "--forward", "--oracle"]) == 0
    fwd = capsys.readouterr().out
    assert json.loads(base)["segments"] == json.loads(fwd)["segments"]


def test_cover_deterministic_output(tmp_path):
    src = write_path(tmp_path, synth.random_walk_path(40, seed=3))
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    svg1, svg2 = tmp_path / "a.svg", tmp_path / "b.svg"
    for out, svg in ((out1, svg1), (out2, svg2)):
        assert main(["cover", str(src), "--predicate", "bbox", "--param", "w=3",
                     "--param", "h=3", "-o", str(out), "--svg", str(svg)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert svg1.read_bytes() == svg2.read_bytes()


def test_cover_bad_predicate_exits_2(tmp_path, capsys):
    src = write_path(tmp_path, synth.digitized_line_path(5, 0, 1))
    assert main(["cover", str(src), "--predicate", "nope"]) == 2
    assert main(["cover", str(src), "--predicate", "max_len"]) == 2  # missing k
    index_path = synth.random_index_path(6, seed=0)
    src2 = write_path(tmp_path, index_path, "idx.json")
    assert main(["cover", str(src2), "--predicate", "dss"]) == 2


def test_cover_rejects_invalid_path_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"closed": false, "adjacency": "4", "points": [[0,0],[5,5]]}')
    assert main(["cover", str(bad), "--predicate", "dss"]) == 2
    assert "non-adjacent" in capsys.readouterr().err


def test_graph_command(tmp_path, capsys):
    src = write_path(tmp_path, synth.digitized_line_path(5, 0, 1))
    dot = tmp_path / "g.dot"
    assert main(["graph", str(src), "--predicate", "max_len", "--param", "k=3",
                 "--dot", str(dot)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["proper"] is True
    assert doc["interval"] is True
    assert doc["nodes"] == [{"start": 0, "len": 3}, {"start": 1, "len": 3},
                            {"start": 2, "len": 3}]
    assert dot.read_text().startswith("graph cover {")


def test_verify_passes(capsys):
    assert main(["verify", "--count", "25", "--max-points", "40",
                 "--trials", "1500"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out
    assert "[FAIL]" not in out
    assert "detected" in out


def test_probe_table(tmp_path, capsys):
    out = tmp_path / "probe.json"
    assert main(["probe", "--predicate", "dss", "--sizes", "200,400",
                 "--shape", "circle", "-o", str(out)]) == 0
    text = capsys.readouterr().out
    assert "calls/n" in text
    rows = json.loads(out.read_text())
    assert len(rows) == 2 and rows[0]["n"] > 0


def test_list_predicates(capsys):
    assert main(["--list-predicates"]) == 0
    out = capsys.readouterr().out
    for name in ("dss", "max_len", "x_monotone", "y_monotone", "bbox", "contains_start"):
        assert name in out
    assert "non-conservative" in out
