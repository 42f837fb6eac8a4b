import json

import pytest

from gpcubes.cli import main

from conftest import GRAPH_TEXTS


@pytest.fixture()
def graph_file(tmp_path):
    def write(name):
        path = tmp_path / (name + ".graph")
        path.write_text(GRAPH_TEXTS[name])
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestNormalize:
    def test_text(self, graph_file, capsys):
        code, out = run(capsys, "normalize", "--graph", graph_file("z_squared"), "b, a^2")
        assert code == 0
        assert out == "a^2, b\nlength 3\n"

    def test_identity(self, graph_file, capsys):
        code, out = run(capsys, "normalize", "--graph", graph_file("free2"), "a, a^-1")
        assert code == 0
        assert out.startswith("1\n")

    def test_json(self, graph_file, capsys):
        code, out = run(
            capsys, "normalize", "--graph", graph_file("single_z3"), "a^5", "--format", "json"
        )
        data = json.loads(out)
        assert code == 0
        assert data["normal_form"] == "a^2"
        assert data["length"] == 1
        assert data["tool"] == "gpcubes" and "graph_sha256" in data


class TestEqual:
    def test_equal_words(self, graph_file, capsys):
        code, _ = run(capsys, "equal", "--graph", graph_file("z_squared"), "a, b, a^-1", "b")
        assert code == 0

    def test_different_words_exit_one(self, graph_file, capsys):
        code, _ = run(capsys, "equal", "--graph", graph_file("single_inf"), "a", "")
        assert code == 1

    def test_oracle_mode(self, graph_file, capsys):
        code, _ = run(
            capsys, "equal", "--graph", graph_file("free2"), "--oracle", "a, b, b^-1", "a"
        )
        assert code == 0


class TestErrors:
    def test_missing_file(self, capsys):
        assert main(["normalize", "--graph", "/nonexistent.graph", "a"]) == 2

    def test_bad_graph(self, tmp_path, capsys):
        path = tmp_path / "bad.graph"
        path.write_text("a:one\n")
        assert main(["normalize", "--graph", str(path), "a"]) == 2

    def test_unknown_generator(self, graph_file, capsys):
        assert main(["normalize", "--graph", graph_file("free2"), "zz"]) == 2

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == 2

    def test_budget_exhaustion(self, graph_file, capsys):
        code = main(
            ["build", "--graph", graph_file("free2"), "--radius", "6", "--budget-elements", "5"]
        )
        assert code == 3


class TestBuild:
    def test_json_payload(self, graph_file, capsys):
        code, out = run(
            capsys, "build", "--graph", graph_file("single_inf"), "--radius", "2"
        )
        data = json.loads(out)
        assert code == 0
        assert data["radius"] == 2
        assert len(data["vertices"]) == 9
        assert sum(1 for c in data["cubes"] if c["dim"] == 1) == 8

    def test_dot(self, graph_file, capsys):
        code, out = run(
            capsys,
            "build", "--graph", graph_file("single_z2"), "--radius", "1", "--format", "dot",
        )
        assert code == 0
        assert out.startswith("graph ball {") and out.count("--") == 2

    def test_out_file(self, graph_file, tmp_path, capsys):
        target = tmp_path / "ball.json"
        code = main(
            ["build", "--graph", graph_file("single_z3"), "--radius", "1", "--out", str(target)]
        )
        assert code == 0
        assert json.loads(target.read_text())["radius"] == 1


class TestCheck:
    def test_passing_certificate(self, graph_file, capsys):
        code, out = run(capsys, "check", "--graph", graph_file("mixed"), "--radius", "2")
        data = json.loads(out)
        assert code == 0
        assert data["ok"]
        assert set(data["checks"]) == {
            "links",
            "morse",
            "special",
            "kernel_action",
            "fundamental_domain",
        }
        assert all(r["ok"] for r in data["checks"].values())

    def test_byte_identical_reruns(self, graph_file, tmp_path):
        paths = [str(tmp_path / ("c%d.json" % i)) for i in range(2)]
        for p in paths:
            assert (
                main(["check", "--graph", graph_file("z_squared"), "--radius", "2", "--out", p])
                == 0
            )
        with open(paths[0]) as a, open(paths[1]) as b:
            assert a.read() == b.read()


class TestDjGraphs:
    def test_graphs_only(self, graph_file, capsys):
        code, out = run(capsys, "dj-graphs", "--graph", graph_file("single_inf"))
        data = json.loads(out)
        assert code == 0
        assert data["doubled_graph"] == "a+:2\na-:2\n"
        assert data["ambient_graph"] == "a+:2\na0:2\n"
        assert data["dimensions"] == {"original": 1, "doubled": 1, "ambient": 1}
        assert "isomorphism" not in data

    def test_with_radius(self, graph_file, capsys):
        code, out = run(
            capsys, "dj-graphs", "--graph", graph_file("single_inf"), "--radius", "2"
        )
        data = json.loads(out)
        assert code == 0
        assert data["isomorphism"]["ok"]
        assert data["isomorphism"]["vertices_common"] == 9
