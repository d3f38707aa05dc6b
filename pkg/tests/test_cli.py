import numpy as np
import pytest

from approxsp.cli import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main, read_config, ConfigError
from approxsp.core import read_graph
from approxsp.experiments import ExperimentConfig, Report, generate_graph, run_experiment


class TestGenerate:
    def test_cycle(self):
        assert generate_graph("cycle", 4, {"max_weight": 1}).edges == ((0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1))

    def test_complete(self):
        assert generate_graph("gnp", 32, {"p": 1.0}, seed=3).m == 32 * 31 // 2

    def test_grid(self):
        G = generate_graph("grid", 12, {"rows": 3})
        assert G.m == 3 * 3 + 2 * 4

    def test_seeded(self):
        params = {"p": 0.2, "max_weight": 50, "connected": True}
        assert generate_graph("gnp", 40, params, 7) == generate_graph("gnp", 40, params, 7)
        assert generate_graph("gnp", 40, params, 7) != generate_graph("gnp", 40, params, 8)

    def test_weights_in_range(self):
        G = generate_graph("gnp", 30, {"p": 0.5, "max_weight": 6}, 1)
        assert {w for *_, w in G.edges} <= set(range(1, 7))

    @pytest.mark.parametrize("kind,params", [("ring", {}), ("gnp", {"p": 2}), ("grid", {"rows": 5})])
    def test_invalid(self, kind, params):
        with pytest.raises(ValueError):
            generate_graph(kind, 12, params)


class TestExperiments:
    def test_asp_within_bound(self):
        rep = run_experiment(ExperimentConfig("asp", n=36, eps=0.25, kappa=2, sources=6, seed=4, check_paths=True))
        assert not rep.violations
        assert rep.summary["max_stretch"] <= 1 + 3 * 0.25

    def test_calc_matches_anchors(self):
        rep = run_experiment(ExperimentConfig("ccsim", mode="calc"))
        assert not rep.violations
        assert [row[0] for row in rep.rows] == [0.5, 0.6, 0.7, 0.8, 0.9, 1.0]

    def test_exact_knn_stretch_is_one(self):
        rep = run_experiment(ExperimentConfig("knn", n=30, k=5, exact=True, directed=True, seed=2))
        assert not rep.violations
        assert {row[-1] for row in rep.rows} == {1.0}

    def test_ccsim_product_reports_rounds(self):
        rep = run_experiment(ExperimentConfig("ccsim", n=16, r=0.5, mode="product"))
        assert not rep.violations
        assert [row[0] for row in rep.rows] == ["spread", "combine", "local", "collect"]

    def test_hopset_verify(self):
        rep = run_experiment(ExperimentConfig("hopset-verify", n=40, eps=0.5, kappa=2))
        assert not rep.violations and rep.summary["size"] == len(rep.rows)

    def test_reproducible_csv(self):
        cfg = ExperimentConfig("knn", n=25, k=4, eps=0.5, seed=9, directed=True)
        assert run_experiment(cfg).csv() == run_experiment(cfg).csv()

    def test_report_formatting(self):
        rep = Report(["a", "b"], [[1, np.inf], [2.5, 3.0]], {"x": 0.25})
        assert rep.csv() == "a,b\n1,INF\n2.500000,3\n"
        assert rep.summary_csv() == "key,value\nx,0.250000\n"

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            run_experiment(ExperimentConfig("dijkstra"))


class TestMain:
    def test_gen_round_trips(self, tmp_path):
        out = tmp_path / "g.txt"
        assert main(["gen", "--kind", "cycle", "--n", "5", "--out", str(out)]) == EXIT_OK
        assert read_graph(out).m == 5

    def test_asp_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "a.csv"
        code = main(["asp", "--n", "25", "--eps", "0.5", "--kappa", "2", "--sources", "3", "--out", str(out)])
        assert code == EXIT_OK
        assert out.read_text().startswith("source,target,exact,estimate,stretch\n")
        assert "max_stretch" in capsys.readouterr().out

    def test_source_file(self, tmp_path):
        src = tmp_path / "s.txt"
        src.write_text("2 7\n")
        summary = tmp_path / "sum.csv"
        assert main(["asp", "--n", "16", "--sources", str(src), "--summary", str(summary)]) == EXIT_OK
        assert "sources,2" in summary.read_text()

    def test_config_file_and_flag_precedence(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# sweep\nn = 25\nk = 3\ndirected = true\nseed=4\n")
        assert read_config(cfg) == {"n": 25, "k": 3, "directed": True, "seed": 4}
        summary = tmp_path / "s.csv"
        assert main(["knn", "--config", str(cfg), "--k", "2", "--summary", str(summary)]) == EXIT_OK
        text = summary.read_text()
        assert "n,25" in text and "k,2" in text

    def test_bad_config(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("colour = blue\n")
        with pytest.raises(ConfigError):
            read_config(cfg)
        assert main(["asp", "--config", str(cfg)]) == EXIT_USAGE

    def test_usage_errors(self, tmp_path):
        assert main(["nonsense"]) == EXIT_USAGE
        assert main(["asp", "--graph", str(tmp_path / "missing.txt")]) == EXIT_USAGE
        assert main(["asp", "--sources", "many"]) == EXIT_USAGE
        assert main(["asp", "--n", "8", "--eps", "3"]) == EXIT_USAGE

    def test_transcript_dump(self, tmp_path):
        t = tmp_path / "t.txt"
        assert main(["ccsim", "product", "--n", "4", "--r", "1", "--bilinear", "naive", "--transcript", str(t)]) == 0
        lines = t.read_text().splitlines()
        assert lines and all(len(line.split()) == 4 for line in lines)

    def test_violation_exit_code(self, tmp_path):
        # an empty hopset claiming one hop cannot cover a 3-edge path
        g = tmp_path / "g.txt"
        g.write_text("4 3 0\n0 1 1\n1 2 1\n2 3 1\n")
        h = tmp_path / "h.txt"
        h.write_text("# kappa=2 beta=1\n4 0 0\n")
        code = main(["hopset-verify", "--graph", str(g), "--hopset", str(h), "--eps", "0.5"])
        assert code == EXIT_VIOLATION
