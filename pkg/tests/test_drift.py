import math

import pytest

from helpers import pa_graph
from src.core.drift import collect_samples, measure_drift, summarize
from src.errors import UsageError
from src.models import DriftSample, Problem, ProblemKind

MDS = Problem(ProblemKind.MDS)


class TestSummarize:
    def test_bins_vacios_no_aparecen(self):
        samples = [DriftSample(1, 4, 1), DriftSample(2, 4, 0), DriftSample(3, 2, 2)]
        bins = summarize(samples, 10)
        assert [b.potential for b in bins] == [2, 4]
        four = bins[1]
        assert four.samples == 2
        assert four.mean_decrease == pytest.approx(0.5)
        assert four.expected == pytest.approx(4 / (math.e * 10))
        assert four.ratio == pytest.approx(0.5 / (4 / (math.e * 10)))
        assert not four.below

    def test_bin_bajo_la_deriva(self):
        bins = summarize([DriftSample(1, 5, 0)], 10)
        assert bins[0].below and bins[0].ratio == 0.0

    def test_sin_muestras(self):
        assert summarize([], 5) == []


class TestCollect:
    def test_muestras_solo_en_fase_no_factible(self):
        g = pa_graph(60, 1, 0)
        samples = collect_samples(g, MDS, 3, 100_000)
        assert samples
        assert all(s.potential > 0 for s in samples)
        assert [s.iteration for s in samples] == list(range(1, len(samples) + 1))

    def test_determinismo(self):
        g = pa_graph(30, 2, 1)
        assert collect_samples(g, MDS, 5, 50_000) == collect_samples(g, MDS, 5, 50_000)


class TestMeasureDrift:
    def test_reporte(self):
        g = pa_graph(40, 2, 2)
        report = measure_drift(g, MDS, trials=4, seed=10, workers=1)
        assert report.trials == 4 and report.n == 40
        assert report.bins == sorted(report.bins, key=lambda b: b.potential)
        assert set(report.to_dict()) >= {"bins", "flagged"}

    def test_workers_no_cambian_el_resultado(self):
        g = pa_graph(30, 2, 4)
        one = measure_drift(g, MDS, trials=3, seed=0, workers=1)
        two = measure_drift(g, MDS, trials=3, seed=0, workers=2)
        assert one.bins == two.bins

    def test_problemas_permitidos(self, p3):
        with pytest.raises(UsageError):
            measure_drift(p3, Problem(ProblemKind.MIS), trials=1, seed=0)
        with pytest.raises(UsageError):
            measure_drift(p3, Problem(ProblemKind.MVC), trials=1, seed=0)
        literal = measure_drift(p3, Problem(ProblemKind.MVC, mvc_literal=True), trials=2, seed=0)
        assert literal.problem == str(Problem(ProblemKind.MVC, mvc_literal=True))

    def test_trials_invalido(self, p3):
        with pytest.raises(UsageError):
            measure_drift(p3, MDS, trials=0, seed=0)

    @pytest.mark.slow
    def test_deriva_multiplicativa_en_pa(self):
        g = pa_graph(200, 2, 7)
        report = measure_drift(g, MDS, trials=200, seed=0, workers=1)
        populated = [b for b in report.bins if b.samples >= 100]
        assert populated
        assert all(b.ratio >= 1 for b in populated)
        assert report.flagged == []
