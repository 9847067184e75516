import io
import json

import pytest

from src.config.consts import TRIAL_COLUMNS
from src.crud.trial_crud import TrialCRUD
from src.harness import HarnessApp


def write_edges(path, edges):
    path.write_text("".join(f"{u} {v}\n" for u, v in edges), encoding="utf-8")
    return str(path)


@pytest.fixture
def p3_file(tmp_path):
    return write_edges(tmp_path / "p3.txt", [(0, 1), (1, 2)])


@pytest.fixture
def triangle_file(tmp_path):
    return write_edges(tmp_path / "k3.txt", [(0, 1), (1, 2), (0, 2)])


def run_cli(*argv):
    out = io.StringIO()
    code = HarnessApp(out=out).run([str(a) for a in argv])
    return code, out.getvalue()


def without_wall_time(frame):
    return frame.drop(columns=["wall_ms"])


class TestGen:
    def test_mismos_parametros_mismos_bytes(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        args = ["--model", "pa", "--n", 200, "--attach-m", 2, "--seed", 42]
        assert run_cli("gen", *args, "--out", first)[0] == 0
        assert run_cli("gen", *args, "--out", second)[0] == 0
        assert first.read_bytes() == second.read_bytes()
        document = json.loads(first.read_text(encoding="utf-8"))
        assert document["meta"]["generator-id"].startswith("numpy.random.Philox/")
        assert document["meta"]["seed"] == 42
        assert document["n"] == 200

    def test_stdout(self):
        code, text = run_cli("gen", "--model", "pa", "--n", 5, "--attach-m", 1)
        assert code == 0
        assert json.loads(text)["n"] == 5

    def test_parametros_invalidos(self):
        assert run_cli("gen", "--model", "chung-lu", "--n", 10, "--beta-target", 1.5)[0] == 2

    def test_flag_obligatorio(self):
        assert run_cli("gen", "--n", 10)[0] == 2


class TestCheckPlb:
    def test_k2(self, tmp_path):
        graph = write_edges(tmp_path / "k2.txt", [(0, 1)])
        code, text = run_cli("check-plb", "--graph", graph, "--beta", 3.0, "--t", 0)
        assert code == 0
        report = json.loads(text)
        assert report["c1_fitted"] == pytest.approx(1.0)
        assert report["passed"]
        assert report["a"] == pytest.approx(8 / 3)

    def test_grilla(self, p3_file):
        code, text = run_cli("check-plb", "--graph", p3_file, "--grid", "--betas", "2.5,3", "--ts", "0")
        assert code == 0
        assert [r["beta"] for r in json.loads(text)] == [2.5, 3.0]

    def test_beta_sin_constantes(self, p3_file):
        code, text = run_cli("check-plb", "--graph", p3_file, "--beta", 1.8)
        assert code == 0
        assert json.loads(text)["a"] is None

    def test_archivo_inexistente(self, tmp_path):
        assert run_cli("check-plb", "--graph", tmp_path / "nada.txt")[0] == 4


class TestOracle:
    def test_exacto(self, p3_file):
        code, text = run_cli("oracle", "--graph", p3_file, "--problem", "MIS")
        assert code == 0
        result = json.loads(text)
        assert result["optimum_size"] == 2 and result["witness"] == [0, 2]

    def test_rechaza_instancia_grande(self, tmp_path):
        graph = write_edges(tmp_path / "p30.txt", [(i, i + 1) for i in range(29)])
        assert run_cli("oracle", "--graph", graph, "--problem", "MDS", "--method", "exact")[0] == 3
        code, text = run_cli("oracle", "--graph", graph, "--problem", "MDS", "--method", "bounds")
        assert code == 0
        bounds = json.loads(text)
        assert bounds["lower"] == 10 and bounds["method"] == "bound"

    def test_goloso_mvc_no_existe(self, p3_file):
        assert run_cli("oracle", "--graph", p3_file, "--problem", "MVC", "--method", "greedy")[0] == 2

    def test_archivo_mal_formado(self, tmp_path):
        graph = tmp_path / "bad.txt"
        graph.write_text("0 1\n2 2\n", encoding="utf-8")
        assert run_cli("oracle", "--graph", graph, "--problem", "MDS")[0] == 2

    def test_bytes_no_utf8(self, tmp_path):
        graph = tmp_path / "bad.txt"
        graph.write_bytes(b"0 1\n\xff\xfe 2\n")
        assert run_cli("oracle", "--graph", graph, "--problem", "MDS")[0] == 2

    def test_json_con_n_no_entero(self, tmp_path):
        graph = tmp_path / "bad.json"
        graph.write_text('{"n": "abc", "edges": []}', encoding="utf-8")
        assert run_cli("oracle", "--graph", graph, "--problem", "MDS")[0] == 2


class TestRun:
    def test_p3_mds(self, tmp_path, p3_file):
        out = tmp_path / "r.csv"
        code, text = run_cli(
            "run", "--graph", p3_file, "--problem", "MDS", "--algo", "ea",
            "--trials", 5, "--budget", 2000, "--out", out,
        )
        assert code == 0 and "5 corridas" in text
        frame, header = TrialCRUD.read_csv(str(out))
        assert len(frame) == 5
        assert frame["ratio"].tolist() == [1.0] * 5
        assert frame["reference_kind"].tolist() == ["exact"] * 5
        assert frame["first_ratio"].tolist() == frame["first_size"].astype(float).tolist()
        assert (frame["first_ratio"] >= frame["ratio"]).all()
        assert frame["seed"].tolist() == [0, 1, 2, 3, 4]
        assert set(header) == {"config_hash", "generator_id"}

    def test_repeticion_identica_salvo_tiempo(self, tmp_path, p3_file):
        outputs = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for out in outputs:
            run_cli("run", "--graph", p3_file, "--problem", "CDS", "--algo", "gsemo",
                    "--trials", 3, "--budget", 1500, "--seed", 9, "--out", out)
        (first, h1), (second, h2) = (TrialCRUD.read_csv(str(p)) for p in outputs)
        assert without_wall_time(first).equals(without_wall_time(second))
        assert h1["generator_id"] == h2["generator_id"]

    def test_mis_triangulo_gsemo(self, tmp_path, triangle_file):
        out = tmp_path / "mis.csv"
        code, _ = run_cli("run", "--graph", triangle_file, "--problem", "MIS", "--algo", "gsemo",
                          "--trials", 3, "--budget", 2000, "--out", out)
        assert code == 0
        frame, _ = TrialCRUD.read_csv(str(out))
        assert frame["best_size"].tolist() == [1, 1, 1]
        assert frame["ratio"].tolist() == [1.0] * 3
        assert frame["local_opt"].tolist() == ["true"] * 3

    def test_workers_no_cambian_el_resultado(self, tmp_path):
        outputs = []
        for workers in (1, 2):
            out = tmp_path / f"w{workers}.csv"
            code, _ = run_cli("run", "--model", "pa", "--n", 20, "--attach-m", 2, "--problem", "MVC",
                              "--algo", "ea", "--trials", 4, "--budget", 3000, "--workers", workers, "--out", out)
            assert code == 0
            outputs.append(without_wall_time(TrialCRUD.read_csv(str(out))[0]))
        assert outputs[0].equals(outputs[1])

    def test_config_json(self, tmp_path, p3_file):
        config = tmp_path / "config.json"
        out = tmp_path / "c.csv"
        config.write_text(json.dumps({
            "problem": "MDS", "algorithm": "ea", "trials": 2, "graph_path": p3_file,
            "max_evaluations": 500, "output": str(out),
        }), encoding="utf-8")
        assert run_cli("run", "--config", config)[0] == 0
        assert len(TrialCRUD.read_csv(str(out))[0]) == 2

    def test_sin_problema(self, p3_file):
        assert run_cli("run", "--graph", p3_file, "--algo", "ea")[0] == 2

    def test_referencia_por_cota(self, tmp_path):
        out = tmp_path / "big.csv"
        code, _ = run_cli("run", "--model", "pa", "--n", 40, "--attach-m", 2, "--problem", "MIS",
                          "--algo", "ea", "--budget", 2000, "--exact-limit", 10, "--out", out)
        assert code == 0
        frame, _ = TrialCRUD.read_csv(str(out))
        assert frame["reference_kind"].tolist() == ["upper-bound"]


class TestReport:
    def _results(self, tmp_path, p3_file):
        out = tmp_path / "r.csv"
        run_cli("run", "--graph", p3_file, "--problem", "MDS", "--algo", "ea",
                "--trials", 4, "--budget", 2000, "--out", out)
        return out

    def test_agregado(self, tmp_path, p3_file):
        results = self._results(tmp_path, p3_file)
        summary = tmp_path / "summary.json"
        code, _ = run_cli("report", results, "--json", summary)
        assert code == 0
        data = json.loads(summary.read_text(encoding="utf-8"))
        assert len(data["rows"]) == 1
        row = data["rows"][0]
        assert (row["n"], row["problem"], row["algo"], row["trials"]) == (3, "MDS", "ea", 4)
        assert row["feasible_fraction"] == 1.0
        assert row["mean_ratio"] == 1.0
        assert row["bound_satisfaction"] == 1.0

    def test_pdf(self, tmp_path, p3_file):
        results = self._results(tmp_path, p3_file)
        pdf = tmp_path / "summary.pdf"
        code, text = run_cli("report", results, "--pdf", pdf)
        assert code == 0
        assert pdf.read_bytes().startswith(b"%PDF")
        assert "PDF generado" in text

    def test_csv_mal_formado(self, tmp_path, p3_file, capsys):
        results = self._results(tmp_path, p3_file)
        lines = results.read_text(encoding="utf-8").splitlines()
        lines[3] = "1,2,3"
        lines[4] = lines[4].replace(lines[4].split(",")[0], "x", 1)
        results.write_text("\n".join(lines) + "\n", encoding="utf-8")
        assert run_cli("report", results)[0] == 4
        assert "4, 5" in capsys.readouterr().err

    def test_ratio_ilegible(self, tmp_path, p3_file, capsys):
        results = self._results(tmp_path, p3_file)
        lines = results.read_text(encoding="utf-8").splitlines()
        fields = lines[5].split(",")
        fields[TRIAL_COLUMNS.index("ratio")] = "garbage"
        lines[5] = ",".join(fields)
        results.write_text("\n".join(lines) + "\n", encoding="utf-8")
        assert run_cli("report", results)[0] == 4
        assert "(líneas: 6)" in capsys.readouterr().err

    def test_bytes_no_utf8(self, tmp_path):
        results = tmp_path / "r.csv"
        results.write_bytes(b"\xff\xfe\x00garbage\n")
        assert run_cli("report", results)[0] == 4

    def test_archivo_inexistente(self, tmp_path):
        assert run_cli("report", tmp_path / "no.csv")[0] == 4


class TestDrift:
    def test_reporte_json(self, tmp_path):
        out = tmp_path / "drift.json"
        code, text = run_cli("drift", "--model", "pa", "--n", 30, "--attach-m", 1,
                             "--trials", 5, "--json", out)
        assert code == 0
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["trials"] == 5 and data["problem"] == "MDS"
        assert "Bins bajo" in text

    def test_problema_no_soportado(self, p3_file):
        assert run_cli("drift", "--graph", p3_file, "--problem", "MIS", "--trials", 2)[0] == 2


class TestScalingReport:
    def test_varios_archivos(self, tmp_path):
        outputs = []
        for n in (3, 6):
            graph = write_edges(tmp_path / f"p{n}.txt", [(i, i + 1) for i in range(n - 1)])
            out = tmp_path / f"r{n}.csv"
            assert run_cli("run", "--graph", graph, "--problem", "MDS", "--algo", "ea",
                           "--trials", 3, "--budget", 3000, "--out", out)[0] == 0
            outputs.append(out)
        summary = tmp_path / "summary.json"
        code, text = run_cli("report", *outputs, "--json", summary)
        assert code == 0
        data = json.loads(summary.read_text(encoding="utf-8"))
        assert [row["n"] for row in data["rows"]] == [3, 6]
        (study,) = data["scaling"]
        assert [(d["n"], d["next_n"]) for d in study["doubling"]] == [(3, 6)]
        assert isinstance(data["header"]["config_hash"], list)
        assert "next_n" in text
