import io

import pytest

from dssy_bench.errors import NoConvergence
from dssy_bench.scripts.bench import parse_levels, run_cli


@pytest.fixture
def streams():
    return io.StringIO(), io.StringIO()


@pytest.fixture(autouse=True)
def no_logging_setup(mocker):
    """Keep the CLI from reconfiguring the test run's logging."""
    return mocker.patch('dssy_bench.scripts.bench.setup_logging')


class TestRunCli:
    def test_solve_prints_dofs(self, streams):
        # Setup
        stdout, stderr = streams

        # Action
        code = run_cli(['solve', '--n', '4', '--element', 'np'],
                       stdout, stderr)

        # Assert
        assert code == 0
        assert stdout.getvalue().splitlines()[0] == 'dofs=24'
        assert stderr.getvalue() == ''

    @pytest.mark.parametrize("argv", [
        ['solve', '--theta', '1.5'],
        ['solve', '--n', '1'],
        ['solve', '--problem', 'stokes', '--element', 'p'],
        ['solve', '--l', '3'],
        ['timing', '--repeats', '2'],
    ])
    def test_bad_values_exit_2(self, streams, argv):
        stdout, stderr = streams
        assert run_cli(argv, stdout, stderr) == 2
        assert stderr.getvalue().startswith('error: ')

    @pytest.mark.parametrize("argv", [
        [],
        ['solve', '--element', 'q1'],
        ['solve', '--n', 'four'],
        ['study', '--levels', '4,x'],
        ['explode'],
    ])
    def test_bad_flags_exit_2(self, capsys, argv):
        assert run_cli(argv) == 2
        assert 'usage:' in capsys.readouterr().err

    def test_solver_failure_exits_1(self, mocker, streams):
        # Setup
        stdout, stderr = streams
        mocker.patch('dssy_bench.services.solver.SolverService.solve',
                     side_effect=NoConvergence('pcg did not converge'))

        # Action
        code = run_cli(['solve', '--n', '4'], stdout, stderr)

        # Assert
        assert code == 1
        assert stderr.getvalue() == 'error: pcg did not converge\n'

    def test_study_markdown_file(self, streams, tmp_path):
        # Setup
        stdout, stderr = streams
        out = tmp_path / 'table.md'

        # Action
        code = run_cli(['study', '--levels', '4,8', '--format', 'md',
                        '--out', str(out)], stdout, stderr)

        # Assert
        assert code == 0
        assert out.read_text().splitlines()[2].startswith('| 1/4 | 24 |')
        assert stdout.getvalue() == f"wrote 2 rows to {out}\n"

    def test_mesh_round_trip_through_files(self, streams, tmp_path):
        stdout, stderr = streams
        path = str(tmp_path / 'mesh.txt')
        assert run_cli(['mesh', '--n', '4', '--mesh', 'random',
                        '--seed', '7', '--out', path], stdout, stderr) == 0
        assert run_cli(['solve', '--mesh-file', path], stdout, stderr) == 0
        assert 'dofs=24' in stdout.getvalue()

    @pytest.mark.parametrize("argv", [
        ['mesh', '--n', '2'],
        ['study', '--levels', '4'],
    ])
    def test_unwritable_out_exits_1(self, streams, tmp_path, argv):
        # Setup
        stdout, stderr = streams
        out = tmp_path / 'missing' / 'result.txt'

        # Action
        code = run_cli(argv + ['--out', str(out)], stdout, stderr)

        # Assert
        assert code == 1
        assert stderr.getvalue().startswith(f"error: cannot write {out}: ")
        assert not out.exists()

    def test_verify(self, streams):
        stdout, stderr = streams
        assert run_cli(['verify', '--samples', '20'], stdout, stderr) == 0
        assert stdout.getvalue().count('ok  ') == 6

    def test_config_file(self, streams, tmp_path):
        # Setup
        stdout, stderr = streams
        config = tmp_path / 'bench.ini'
        config.write_text('[app:dssy_bench]\ndssy.quad = 11\n')

        # Action
        code = run_cli(['--config', str(config), 'solve', '--n', '4'],
                       stdout, stderr)

        # Assert
        assert code == 2
        assert 'dssy.quad' in stderr.getvalue()

    def test_missing_config(self, streams, tmp_path):
        stdout, stderr = streams
        code = run_cli(['--config', str(tmp_path / 'none.ini'), 'verify'],
                       stdout, stderr)
        assert code == 2

    def test_logging_configured_from_config(self, streams, tmp_path,
                                            no_logging_setup):
        stdout, stderr = streams
        config = tmp_path / 'bench.ini'
        config.write_text('[app:dssy_bench]\ndssy.verify_samples = 5\n')
        assert run_cli(['--config', str(config), 'verify'],
                       stdout, stderr) == 0
        no_logging_setup.assert_called_once_with(str(config))


class TestParseLevels:
    def test_comma_separated(self):
        assert parse_levels('4,8,16') == [4, 8, 16]
        assert parse_levels('32') == [32]
