import itertools
from unittest.mock import MagicMock

import pytest

from dssy_bench.bench import TimingConfig, TimingRow, median_time, timing_ratio
from dssy_bench.errors import BadParam
from dssy_bench.services import SolverService, load_settings


@pytest.fixture
def mock_service():
    """A solver service whose solves do nothing."""
    service = MagicMock()
    service.timing_repeats = 3
    return service


class TestMedianTime:
    def test_median_of_runs(self, mocker):
        # Setup
        clock = mocker.patch('dssy_bench.bench.timing.time')
        clock.perf_counter.side_effect = [0.0, 1.0, 10.0, 13.0, 20.0, 22.0]
        run = MagicMock()

        # Action
        elapsed = median_time(run, 3)

        # Assert
        assert elapsed == 2.0
        assert run.call_count == 3


class TestTimingRatio:
    def test_ratio(self):
        assert TimingRow(h=0.1, t_numerator=1.0,
                         t_denominator=4.0).ratio == 0.25

    def test_rows_per_level(self, mocker, mock_service):
        # Setup
        mocker.patch('dssy_bench.bench.timing.median_time',
                     side_effect=[1.0, 2.0, 3.0, 4.0])

        # Action
        rows = timing_ratio(TimingConfig(levels=(8, 16)), mock_service)

        # Assert
        assert [r.h for r in rows] == [1 / 8, 1 / 16]
        assert [r.ratio for r in rows] == [0.5, 0.75]
        assert mock_service.build_mesh.call_count == 2

    def test_mesh_generation_is_not_timed(self, mocker, mock_service):
        """Only the solves run inside the timed callable."""
        # Setup
        clock = mocker.patch('dssy_bench.bench.timing.time')
        clock.perf_counter.side_effect = itertools.count()

        # Action
        timing_ratio(TimingConfig(levels=(8,)), mock_service)

        # Assert
        assert mock_service.build_mesh.call_count == 1
        kinds = [c.args[1] for c in mock_service.solve.call_args_list]
        assert kinds == ['np'] * 3 + ['p'] * 3

    def test_too_few_repeats(self, mock_service):
        with pytest.raises(BadParam):
            timing_ratio(TimingConfig(levels=(8,), repeats=2), mock_service)


@pytest.mark.slow
class TestWallClock:
    def test_self_ratio_within_noise(self):
        service = SolverService(load_settings())
        rows = timing_ratio(
            TimingConfig(levels=(32,), repeats=5, denominator='np'), service)
        assert 0.8 <= rows[0].ratio <= 1.25

    @pytest.mark.parametrize("mesh", ['theta', 'random'])
    def test_nonparametric_is_faster(self, mesh):
        """The four-DOF element beats the condensed parametric one."""
        # Setup
        service = SolverService(load_settings())

        # Action
        rows = timing_ratio(
            TimingConfig(mesh=mesh, levels=(32, 64), repeats=3), service)

        # Assert
        assert [r.h for r in rows] == [1 / 32, 1 / 64]
        assert all(r.ratio < 1.0 for r in rows)
