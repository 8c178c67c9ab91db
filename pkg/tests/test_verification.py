"""
Tests for verification module
"""
import pytest

from src.services import verification
from src.services.verification import (
    STATUSES,
    ClaimRecord,
    ConfigError,
    RunConfig,
    checks_status,
    exit_code,
    parse_gamma_params,
    status_counts,
)

pytestmark = pytest.mark.integration


class TestGammaParams:
    """Test parsing of e:eta lists"""

    def test_parse(self):
        """Pairs are parsed in order"""
        assert parse_gamma_params('0:-1, 2:1') == ((0, -1), (2, 1))

    def test_duplicates_dropped(self):
        """Repeated pairs appear once"""
        assert parse_gamma_params('2:1,2:1,0:-1') == ((2, 1), (0, -1))

    def test_malformed(self):
        """Entries must be e:eta"""
        with pytest.raises(ConfigError):
            parse_gamma_params('2,1')
        with pytest.raises(ConfigError):
            parse_gamma_params('a:1')

    def test_invalid_pair(self):
        """Odd e is rejected"""
        with pytest.raises(ConfigError):
            parse_gamma_params('1:1')

    def test_empty(self):
        """At least one pair is needed"""
        with pytest.raises(ConfigError):
            parse_gamma_params(' , ')


class TestRunConfig:
    """Test run configuration layering"""

    def test_defaults_from_environment(self):
        """Defaults come from the SOLVKNOT_* variables"""
        config = RunConfig.defaults()
        assert config.gamma_params == ((0, -1), (2, 1))
        assert config.search_radius == 3
        assert config.oracle_trials == 50
        assert config.output_format == 'json'

    def test_from_file(self, tmp_path, small_config):
        """File values override the base, other keys keep theirs"""
        path = tmp_path / 'run.env'
        path.write_text('SEARCH_RADIUS=4\noutput_format=markdown\n')
        config = RunConfig.from_file(str(path), small_config)
        assert config.search_radius == 4
        assert config.output_format == 'md'
        assert config.random_seed == small_config.random_seed
        assert config.gamma_params == small_config.gamma_params

    def test_from_file_gamma_params(self, tmp_path, small_config):
        """gamma_params is read as e:eta text"""
        path = tmp_path / 'run.env'
        path.write_text('GAMMA_PARAMS=-2:1\n')
        assert RunConfig.from_file(str(path), small_config).gamma_params == ((-2, 1),)

    def test_unknown_key(self, tmp_path, small_config):
        """Unknown keys are rejected"""
        path = tmp_path / 'run.env'
        path.write_text('COLOUR=red\n')
        with pytest.raises(ConfigError):
            RunConfig.from_file(str(path), small_config)

    def test_overrides(self, small_config):
        """Command line values win, None leaves the field alone"""
        config = small_config.with_overrides(search_radius=5, random_seed=None, output_format='markdown')
        assert config.search_radius == 5
        assert config.random_seed == 7
        assert config.output_format == 'md'

    def test_invalid_overrides(self, small_config):
        """Bad values raise ConfigError"""
        with pytest.raises(ConfigError):
            small_config.with_overrides(search_radius=0)
        with pytest.raises(ConfigError):
            small_config.with_overrides(output_format='xml')
        with pytest.raises(ConfigError):
            small_config.with_overrides(colour='red')

    def test_to_json(self, small_config):
        """The configuration serializes with lists"""
        data = small_config.to_json()
        assert data['gamma_params'] == [[0, -1], [2, 1]]
        assert data['oracle_trials'] == 50


class TestClaimRecords:
    """Test claim records and aggregation"""

    def test_unknown_status(self):
        """Statuses are a closed set"""
        with pytest.raises(ValueError):
            ClaimRecord('x.y', 'somewhere', 'maybe')

    def test_bounded_needs_radius(self):
        """bounded claims carry their search radius"""
        with pytest.raises(ValueError):
            ClaimRecord('x.y', 'somewhere', 'bounded')
        record = ClaimRecord('x.y', 'somewhere', 'bounded', {}, 3)
        assert record.to_json()['radius'] == 3

    def test_to_json_without_radius(self):
        """radius is omitted when unset"""
        data = ClaimRecord('x.y', 'somewhere', 'pass', {'a': 1}).to_json()
        assert data == {'id': 'x.y', 'location': 'somewhere', 'status': 'pass', 'payload': {'a': 1}}

    def test_checks_status(self):
        """Failures of printed statements alone are discrepancies"""
        ok = {'check': 'a', 'passed': True}
        bad = {'check': 'b', 'passed': False}
        assert checks_status([ok]) == 'pass'
        assert checks_status([ok, bad], printed=('b',)) == 'discrepancy'
        assert checks_status([ok, bad]) == 'fail'

    def test_exit_code_and_counts(self):
        """Only fail sets the exit code"""
        records = [ClaimRecord('a', 'l', 'pass'), ClaimRecord('b', 'l', 'discrepancy'),
                   ClaimRecord('c', 'l', 'external')]
        assert exit_code(records) == 0
        counts = status_counts(records)
        assert set(counts) == set(STATUSES)
        assert counts['pass'] == 1 and counts['bounded'] == 0
        assert exit_code(records + [ClaimRecord('d', 'l', 'fail')]) == 1


class TestSuites:
    """Test the claim suites"""

    def test_flat_group_claims(self):
        """G6 presentation, lattices and abelianization all pass"""
        records = verification.flat_group_claims()
        assert [r.claim_id for r in records] == ['g6.presentation', 'g6.lattices', 'g6.abelianization']
        assert all(r.status == 'pass' for r in records)

    def test_nil_claims(self, small_config):
        """The wallpaper claim passes; the composition law is never a fail"""
        records = {r.claim_id: r for r in verification.nil_claims(small_config)}
        assert records['nil.wallpaper'].status == 'pass'
        assert records['nil.composition-law'].status in ('pass', 'discrepancy')
        assert records['nil.composition-law'].payload['trials'] == 50

    def test_gamma_claims(self, small_config):
        """Gamma(0,-1) passes its structural claims"""
        records = {r.claim_id: r for r in verification.gamma_claims(0, -1, small_config)}
        for suffix in ('presentations', 'collection', 'h1', 'out-order', 'meridianal-classes'):
            assert records[f'gamma(0,-1).{suffix}'].status == 'pass'
        assert records['gamma(0,-1).h1'].payload['invariant_factors'] == [3, 3]
        assert records['gamma(0,-1).aut-presentation'].status == 'discrepancy'

    def test_uniqueness_and_search_are_separate(self, small_config):
        """The exact orbit comparison has no radius; the search is bounded by it"""
        records = {r.claim_id: r for r in verification.gamma_claims(0, -1, small_config)}
        uniqueness = records['gamma(0,-1).weight-orbit-uniqueness']
        search = records['gamma(0,-1).weight-orbit-search']
        assert uniqueness.status in ('pass', 'discrepancy')
        assert uniqueness.radius is None
        assert 'orbits' in uniqueness.payload
        assert search.status == 'bounded'
        assert search.radius == 3
        assert search.to_json()['radius'] == 3

    def test_gamma_plus_meridianal_discrepancy(self, small_config):
        """Gamma(2,1) reports the second meridianal class with the r k r = k evidence"""
        records = {r.claim_id: r for r in verification.gamma_claims(2, 1, small_config)}
        meridianal = records['gamma(2,1).meridianal-classes']
        assert meridianal.status == 'discrepancy'
        assert len(meridianal.payload['classes']) == 2
        assert meridianal.payload['r_k_certificate']['r k r = k']
        presentation = records['gamma(2,1).aut-presentation']
        assert presentation.status == 'discrepancy'

    def test_run_suite_records_errors(self):
        """A suite raising an error yields one failed claim naming the error"""
        def broken():
            raise ZeroDivisionError('division by zero')

        records = verification.run_suite('broken', broken)
        assert [r.claim_id for r in records] == ['suite.broken']
        assert records[0].status == 'fail'
        assert records[0].payload['error'] == 'ZeroDivisionError'
        assert exit_code(records) == 1

    def test_knot_claims(self, small_config):
        """Knot claims pass apart from the cited finite-commutator row"""
        records = verification.knot_claims(small_config)
        statuses = {r.claim_id: r.status for r in records}
        assert statuses.pop('knot.finite-commutator') == 'external'
        assert set(statuses) == {'knot.verdicts', 'knot.q-solver', 'knot.lambda-cyclic-g6',
                                 'knot.direct-double-gamma', 'knot.fox'}
        assert all(status == 'pass' for status in statuses.values())

    @pytest.mark.slow
    def test_verify_all_is_deterministic(self, small_config):
        """Two runs give identical records with unique ids"""
        first = [r.to_json() for r in verification.verify_all(small_config)]
        second = [r.to_json() for r in verification.verify_all(small_config)]
        assert first == second
        ids = [r['id'] for r in first]
        assert len(ids) == len(set(ids))
        assert 'g6.out-order' in ids
        assert all(r['status'] in STATUSES for r in first)
