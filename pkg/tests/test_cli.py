import json

import pytest

from copgeom import io
from copgeom.cli import lemma_corpus, main
from copgeom.graph import cycle_graph, dodecahedron_graph, path_graph, petersen_graph


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        p = tmp_path / name
        io.save(str(p), obj)
        return str(p)
    return put


@pytest.mark.parametrize("g, value", [(path_graph(5), "1"), (cycle_graph(5), "2"), (petersen_graph(), "3")])
def test_copnumber_prints_value(files, capsys, g, value):
    assert main(["copnumber", "--graph", files("g.txt", g), "--kmax", "3"]) == 0
    assert capsys.readouterr().out.strip() == value


def test_copnumber_beyond_kmax(files, capsys):
    assert main(["copnumber", "--graph", files("g.txt", dodecahedron_graph()), "--kmax", "2"]) == 0
    assert capsys.readouterr().out.strip() == "> 2"


def test_copnumber_report_and_strategy(files, tmp_path, capsys):
    rep, strat = tmp_path / "r.json", tmp_path / "s.txt"
    g = files("g.txt", cycle_graph(4))
    assert main(["--report", str(rep), "copnumber", "--graph", g, "--kmax", "2",
                 "--strategy", str(strat), "--threads", "1"]) == 0
    data = json.loads(rep.read_text())
    assert data["command"] == "copnumber"
    assert data["solver"]["value"] == 2
    assert len(data["inputs"][g]) == 64
    assert data["wall_time"] >= 0 and data["peak_memory_kb"] > 0
    assert strat.read_text().startswith("S ")


def test_memory_limit_is_a_clean_error(files, capsys):
    code = main(["copnumber", "--graph", files("g.txt", petersen_graph()), "--kmax", "3", "--mem-limit", "10"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_malformed_input_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("p 3 1\ne 0 0\n")
    assert main(["copnumber", "--graph", str(bad), "--kmax", "2"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["copnumber"])
    assert exc.value.code == 2


def test_subdivide_and_cliquesub(files, tmp_path):
    g = files("c.txt", cycle_graph(4))
    out = str(tmp_path / "o.txt")
    assert main(["subdivide", "--graph", g, "--l", "3", "--out", out]) == 0
    assert io.load_graph(out).n == 12
    assert main(["cliquesub", "--graph", g, "--out", out]) == 0
    assert (io.load_graph(out).n, io.load_graph(out).m) == (8, 8)


def test_gamma_target(tmp_path, capsys):
    out = str(tmp_path / "g.txt")
    assert main(["gamma", "--k", "1", "--target", "7", "--out", out]) == 0
    assert io.load_drawing(out).graph.n == 8


def test_construct_validate_svg(tmp_path, capsys):
    d, svg = str(tmp_path / "d.txt"), str(tmp_path / "d.svg")
    assert main(["construct", "dodec440", "--out", d, "--svg", svg]) == 0
    assert main(["validate", "--drawing", d]) == 0
    assert main(["validate", "--drawing", d, "--r", "1.5"]) == 1
    assert main(["svg", "--drawing", d, "--out", svg, "--disks"]) == 0
    assert open(svg).read().count('class="disk"') == 440


def test_construct_kgraph(files, tmp_path):
    out = str(tmp_path / "k.txt")
    assert main(["construct", "kgraph", "--graph", files("c.txt", cycle_graph(4)), "--lout", "3", "--out", out]) == 0
    assert io.load_graph(out).is_connected()
    assert main(["construct", "kgraph", "--out", out]) == 2


def test_bend_writes_report(tmp_path, capsys):
    emb, out, rep = (str(tmp_path / n) for n in ("e.txt", "o.txt", "r.json"))
    io.save(emb, io.parse_drawing("d 3 2 5\nv 0 0 0\nv 1 1 0\nv 2 1 1\ne 0 1\ne 1 2\n"))
    assert main(["--report", rep, "bend", "--embedding", emb, "--out", out]) == 0
    params = json.load(open(rep))["parameters"]
    for key in ("a", "k", "L", "E", "lambdas"):
        assert key in params
    assert main(["validate", "--drawing", out]) == 0


def test_verify_lemmas(capsys):
    assert main(["verify-lemmas", "--directions", "500"]) == 0
    out = capsys.readouterr().out
    assert "subdivision lemma" in out and "orientation lemma: 500/500" in out


def test_lemma_corpus_is_deterministic():
    a = [sorted(g.edges()) for g in lemma_corpus(3)]
    b = [sorted(g.edges()) for g in lemma_corpus(3)]
    assert a == b and len(a) == 26
