"""
Tests for the solvknot command line
"""
import json

import pytest

import solvknot
from solvknot import cli
from src.services import verification
from src.services.flat_aut import AutomorphismError, WeightOrbitError

pytestmark = pytest.mark.cli


class TestG6Commands:
    """Test the g6 query commands"""

    def test_order(self, runner):
        """j has order 6"""
        result = runner.invoke(cli, ['--format', 'json', 'g6', 'order', 'j'])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data['order'] == '6'
        assert data['expression'] == 'j'

    def test_order_markdown(self, runner):
        """Markdown output is a titled list"""
        result = runner.invoke(cli, ['--format', 'md', 'g6', 'order', 'j'])
        assert result.exit_code == 0
        assert result.output.startswith('## order of j')
        assert '- order: 6' in result.output

    def test_infinite_order(self, runner):
        """jb has infinite order"""
        result = runner.invoke(cli, ['g6', 'order', 'jb'])
        assert json.loads(result.output)['order'] == 'infinite'

    def test_orbit(self, runner):
        """x^2 y^2 z^-2 has lambda+ = 3"""
        result = runner.invoke(cli, ['g6', 'orbit', 'g+', 'x^2y^2z^-2'])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data['n'] == 3
        assert data['certificate'] is True

    def test_meridianal(self, runner):
        """ja is meridianal"""
        result = runner.invoke(cli, ['g6', 'meridianal', 'ja'])
        assert result.exit_code == 0
        assert json.loads(result.output)['meridianal'] is True

    def test_bad_expression(self, runner):
        """Parse errors exit with 2"""
        result = runner.invoke(cli, ['g6', 'order', 'j*?'])
        assert result.exit_code == 2
        assert 'error:' in result.output

    def test_element_outside_commutator_subgroup(self, runner):
        """Precondition failures exit with 2"""
        result = runner.invoke(cli, ['g6', 'orbit', 'plus', 'x^2'])
        assert result.exit_code == 2


class TestGammaCommands:
    """Test the gamma query commands"""

    def test_out_table(self, runner):
        """Out(Gamma(0,-1)) has order 4"""
        result = runner.invoke(cli, ['gamma', '--e', '0', '--eta', '-1', 'out-table'])
        assert result.exit_code == 0
        assert json.loads(result.output)['order'] == 4

    def test_invalid_parameters(self, runner):
        """Odd e exits with 2"""
        result = runner.invoke(cli, ['gamma', '--e', '1', '--eta', '1', 'out-table'])
        assert result.exit_code == 2

    def test_k_parameters(self, runner):
        """k[1,0] is integral when eta = 1"""
        result = runner.invoke(cli, ['gamma', '--e', '2', '--eta', '1', 'k', '1', '0'])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data['integral'] is True
        assert 'automorphism' in data

    def test_meridianal_classes(self, runner):
        """Gamma(2,1) has the class of [r] and the class of [rk]"""
        result = runner.invoke(cli, ['gamma', '--e', '2', '--eta', '1', 'meridianal'])
        assert result.exit_code == 0
        classes = json.loads(result.output)
        assert len(classes) == 2
        assert sum(c['contains_r'] for c in classes) == 1


class TestVerdictCommands:
    """Test doubly slice verdicts"""

    def test_doubly_slice(self, runner):
        """pi(0,-1) is doubly slice"""
        result = runner.invoke(cli, ['doubly-slice', 'pi(0,-1)'])
        assert result.exit_code == 0
        assert json.loads(result.output)['verdict'] == 'doubly slice'

    def test_not_doubly_slice(self, runner):
        """The Fox knot group is not"""
        result = runner.invoke(cli, ['doubly-slice', 'fox'])
        assert json.loads(result.output)['verdict'] == 'not doubly slice'

    def test_unknown_descriptor(self, runner):
        """Unknown descriptors exit with 2"""
        result = runner.invoke(cli, ['doubly-slice', 'trefoil'])
        assert result.exit_code == 2

    def test_verdict_table(self, runner):
        """One row per configured knot group plus the cited row"""
        result = runner.invoke(cli, ['verdicts'])
        assert result.exit_code == 0
        rows = json.loads(result.output)
        assert [row['knot'] for row in rows][:3] == ['G(+)', 'G(-)', 'pi(0,-1)']
        assert rows[-1]['reason'] == 'finite-commutator-cited'


class TestVerifyCommand:
    """Test verify"""

    def test_unknown_config_key(self, runner, tmp_path):
        """Config files with unknown keys exit with 2"""
        path = tmp_path / 'run.env'
        path.write_text('COLOUR=red\n')
        result = runner.invoke(cli, ['verify', '--config', str(path)])
        assert result.exit_code == 2

    def test_bad_radius(self, runner):
        """Non-positive radius exits with 2"""
        result = runner.invoke(cli, ['verify', '--radius', '0'])
        assert result.exit_code == 2

    def test_internal_error_is_a_failed_claim(self, runner, monkeypatch):
        """An error raised inside a suite is reported as a failed claim with exit 1, not 2"""
        def broken():
            raise AutomorphismError('reduction did not terminate')

        monkeypatch.setattr(verification, '_suites', lambda config: [('broken', broken)])
        result = runner.invoke(cli, ['verify', '--gamma-params', '0:-1'])
        assert result.exit_code == 1
        assert 'suite.broken' in result.output
        assert 'reduction did not terminate' in result.output

    def test_bad_gamma_params_still_exit_2(self, runner):
        """Invalid parameters are input errors"""
        result = runner.invoke(cli, ['verify', '--gamma-params', '1:1'])
        assert result.exit_code == 2

    def test_gamma_verify_internal_error(self, runner, monkeypatch):
        """gamma verify turns an internal error into a failed claim"""
        def broken(e, eta, config):
            raise WeightOrbitError('no power of z clears the rotation part')

        monkeypatch.setattr(solvknot, 'gamma_claims', broken)
        result = runner.invoke(cli, ['gamma', '--e', '0', '--eta', '-1', 'verify'])
        assert result.exit_code == 1
        assert 'suite.gamma(0,-1)' in result.output

    @pytest.mark.slow
    def test_verify_report(self, runner, tmp_path):
        """A full run writes the report and the workbook with the exit code it records"""
        output = tmp_path / 'verification.md'
        xlsx = tmp_path / 'verification.xlsx'
        result = runner.invoke(cli, ['verify', '--format', 'markdown', '--gamma-params', '0:-1',
                                     '--output', str(output), '--xlsx', str(xlsx)])
        text = output.read_text()
        assert text.startswith('# solvknot verification report')
        assert f'exit code {result.exit_code}.' in text
        assert xlsx.exists()
