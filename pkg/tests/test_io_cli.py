import random
from itertools import combinations

import pytest

from hs3.cli import main
from hs3.hypergraph import Hypergraph
from hs3.instance_io import GenConfig, GenerationError, ParseError, generate, parse, serialize
from hs3.oracle import oracle_min
from hs3.rules import Instance

TRIANGLE_FILE = "c triangle\np hs3 3 3 2\ne 1 2\ne 2 3\ne 1 3\n"


class TestParse:
    def test_basic(self):
        inst = parse("p hs3 3 1 1\ne 1 2 3")
        assert inst.graph.edges == {(1, 2, 3)} and inst.k == 1
        assert inst.graph.vertices == {1, 2, 3}

    def test_duplicates_collapse(self):
        assert parse("p hs3 3 2 1\ne 1 2\ne 2 1\n").graph.edges == {(1, 2)}

    @pytest.mark.parametrize("text,line,msg", [
        ("p hs3 3 1 1\ne 1 2 2\n", 2, "repeated"),
        ("e 1 2\n", 1, "before header"),
        ("p hs3 3 1 1\ne 1 4\n", 2, "outside"),
        ("p hs3 4 1 1\ne 1 2 3 4\n", 2, "expected 1 to 3"),
        ("p hs3 4 1 1\ne\n", 2, "expected 1 to 3"),
        ("c x\np hs3 3 1\n", 2, "header"),
        ("p hs3 3 1 1\np hs3 3 1 1\n", 2, "second header"),
        ("p hs3 3 1 1\ne 1 x\n", 2, "integers"),
        ("p hs3 3 1 1\nq 1\n", 2, "unknown"),
    ])
    def test_errors(self, text, line, msg):
        with pytest.raises(ParseError, match=msg) as err:
            parse(text)
        assert err.value.lineno == line

    def test_repeated_vertex_reported_even_without_header(self):
        with pytest.raises(ParseError, match="repeated"):
            parse("e 1 2 2")

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse("c only a comment\n")


class TestRoundTrip:
    def test_random_files(self):
        rng = random.Random(11)
        for i in range(100):
            n = rng.randint(1, 9)
            pool = [e for s in (1, 2, 3) for e in combinations(range(1, n + 1), s)]
            lines = [f"e {' '.join(map(str, rng.sample(e, len(e))))}" for e in rng.choices(pool, k=rng.randint(0, 10))]
            text = "\n".join([f"c file {i}", f"p hs3 {n} {len(lines)} {rng.randint(-1, 5)}"] + lines)
            inst = parse(text)
            out = serialize(inst)
            assert parse(out) == inst
            assert serialize(parse(out)) == out

    def test_serialize_refuses_nonpositive_ids(self):
        with pytest.raises(ValueError):
            serialize(Instance(Hypergraph.from_edges([(0, 1)]), 1))


class TestGenerate:
    def test_deterministic(self):
        cfg = GenConfig(9, 15, (0.3, 0.7), seed=4)
        assert generate(cfg) == generate(cfg)
        assert generate(cfg) != generate(GenConfig(9, 15, (0.3, 0.7), seed=5))

    def test_all_triples(self):
        G = generate(GenConfig(5, 10, (0.0, 1.0), seed=1)).graph
        assert G.edges == set(combinations(range(1, 6), 3))

    def test_complete_graph(self):
        G = generate(GenConfig(4, 6, (1.0, 0.0), seed=1)).graph
        assert G.edges == set(combinations(range(1, 5), 2))

    def test_overflowing_size_falls_back(self):
        G = generate(GenConfig(4, 8, (0.9, 0.1), seed=2)).graph
        assert len(G.edges) == 8 and len(G.edges_of_size(2)) == 6

    def test_too_many_edges(self):
        with pytest.raises(GenerationError):
            generate(GenConfig(4, 11, (0.5, 0.5)))

    def test_bad_distribution(self):
        with pytest.raises(GenerationError):
            GenConfig(4, 3, (0.5, 0.6))


@pytest.fixture
def triangle(tmp_path):
    p = tmp_path / "tri.hs3"
    p.write_text(TRIANGLE_FILE)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    pairs = dict(line.split("=", 1) for line in out.splitlines() if "=" in line and " " not in line)
    return code, out, pairs


class TestCli:
    def test_solve(self, capsys, triangle):
        code, _, kv = run(capsys, "solve", triangle, "--cert")
        assert code == 0 and kv["decision"] == "yes" and len(kv["certificate"].split(",")) == 2

    def test_solve_override_k(self, capsys, triangle):
        code, _, kv = run(capsys, "solve", triangle, "--k", "1", "--full-tree")
        assert code == 0 and kv["decision"] == "no" and kv["k"] == "1"

    def test_min_matches_oracle(self, capsys, tmp_path):
        for seed in range(5):
            inst = generate(GenConfig(9, 14, (0.5, 0.5), seed))
            p = tmp_path / f"g{seed}.hs3"
            p.write_text(serialize(inst))
            _, _, kv = run(capsys, "min", str(p))
            assert int(kv["min"]) == oracle_min(inst.graph)
            _, _, kv = run(capsys, "oracle", str(p))
            assert int(kv["min"]) == oracle_min(inst.graph)

    def test_fuzz(self, capsys):
        code, _, kv = run(capsys, "fuzz", "--count", "15", "--seed", "3")
        assert code == 0 and kv["failed"] == "0"

    def test_verify_measure(self, capsys):
        code, out, kv = run(capsys, "verify-measure")
        assert code == 0
        assert "B3 max=2.0409" in out
        assert kv["properties"] == "ok"

    def test_verify_measure_bad_table(self, capsys, tmp_path):
        p = tmp_path / "t.txt"
        p.write_text("psi 4\n" + "".join(f"{m} {c} 1.9\n" for m in range(1, 9) for c in range(1, m + 1)))
        code, out, kv = run(capsys, "verify-measure", "--table", str(p))
        assert code == 1 and kv["properties"] == "fail"

    def test_gen_is_deterministic(self, capsys):
        _, a, _ = run(capsys, "gen", "--n", "7", "--edges", "9", "--seed", "3")
        _, b, _ = run(capsys, "gen", "--n", "7", "--edges", "9", "--seed", "3")
        assert a == b and parse(a).graph.vertices == set(range(1, 8))

    @pytest.mark.parametrize("argv", [[], ["bogus"], ["solve"], ["solve", "/no/such/file"],
                                      ["gen", "--n", "3", "--edges", "9"]])
    def test_usage_errors(self, capsys, argv):
        assert main(argv) == 2

    def test_parse_error_is_usage_error(self, capsys, tmp_path):
        p = tmp_path / "bad.hs3"
        p.write_text("p hs3 3 1 1\ne 1 1\n")
        assert main(["solve", str(p)]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_help(self, capsys):
        assert main(["--help"]) == 0
