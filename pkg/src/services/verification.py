"""
Verification suites - run every exact check and collect one ClaimRecord per claim

A claim passes when the computation confirms the stated fact, fails when two
computations disagree, and is a discrepancy when the computation contradicts the
printed statement (the payload then carries both sides).
"""
import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from dotenv import dotenv_values

from src.config import Config
from src.services import flat_aut, flat_group, knot_invariants, nil_aut, nil_group
from src.services.nil_group import GammaParameterError

logger = logging.getLogger(__name__)

STATUSES = ('pass', 'fail', 'external', 'bounded', 'discrepancy')
OUTPUT_FORMATS = ('json', 'md')
CONFIG_KEYS = ('gamma_params', 'search_radius', 'random_seed', 'output_format', 'oracle_trials')

ORBIT_VALUES = (-2, -1, 0, 1, 2)
SHIFT_POWERS = (1, 2, 3)
COLLECTION_WORDS = ('uvz', 'z^2u^-1v^3', 'vuz^-1v^-2u', 'z^5uv^-1z^-2', 'u^3v^3z^3u^-3v^-3z^-3')


class ConfigError(ValueError):
    """Invalid run configuration."""


@dataclass(frozen=True)
class ClaimRecord:
    claim_id: str
    location: str
    status: str
    payload: dict = field(default_factory=dict)
    radius: Optional[int] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f'unknown claim status {self.status!r}')
        if self.status == 'bounded' and self.radius is None:
            raise ValueError(f'bounded claim {self.claim_id} needs a search radius')

    def to_json(self) -> dict:
        data = {
            'id': self.claim_id,
            'location': self.location,
            'status': self.status,
            'payload': self.payload,
        }
        if self.radius is not None:
            data['radius'] = self.radius
        return data


# Configuration ---------------------------------------------------------------

def parse_gamma_params(text: str) -> tuple[tuple[int, int], ...]:
    """
    Parse "e:eta,e:eta,..." into validated (e, eta) pairs.

    Raises:
        ConfigError: malformed entry, odd e, eta not +-1 or q = 0
    """
    pairs = []
    for chunk in (text or '').split(','):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            e_text, eta_text = chunk.split(':')
            pair = (int(e_text), int(eta_text))
        except ValueError:
            raise ConfigError(f'gamma parameter {chunk!r} is not of the form e:eta')
        try:
            nil_group.check_parameters(*pair)
        except GammaParameterError as exc:
            raise ConfigError(str(exc))
        if pair not in pairs:
            pairs.append(pair)
    if not pairs:
        raise ConfigError('no gamma parameters given')
    return tuple(pairs)


def _positive_int(key: str, value) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f'{key} must be an integer, got {value!r}')
    if number <= 0:
        raise ConfigError(f'{key} must be positive, got {number}')
    return number


def _output_format(value: str) -> str:
    fmt = (value or '').strip().lower()
    if fmt == 'markdown':
        fmt = 'md'
    if fmt not in OUTPUT_FORMATS:
        raise ConfigError(f'output_format must be json or md, got {value!r}')
    return fmt


@dataclass(frozen=True)
class RunConfig:
    gamma_params: tuple[tuple[int, int], ...]
    search_radius: int = 6
    random_seed: int = 2024
    output_format: str = 'json'
    oracle_trials: int = 1000

    @classmethod
    def defaults(cls) -> 'RunConfig':
        return cls(
            gamma_params=parse_gamma_params(Config.GAMMA_PARAMS),
            search_radius=_positive_int('search_radius', Config.SEARCH_RADIUS),
            random_seed=int(Config.RANDOM_SEED),
            output_format=_output_format(Config.OUTPUT_FORMAT),
            oracle_trials=_positive_int('oracle_trials', Config.ORACLE_TRIALS),
        )

    @classmethod
    def from_file(cls, path: str, base: Optional['RunConfig'] = None) -> 'RunConfig':
        """
        Read a flat KEY=value file; keys it does not set keep their values from base.

        Raises:
            ConfigError: unreadable file, unknown key or invalid value
        """
        try:
            values = dotenv_values(path)
        except OSError as exc:
            raise ConfigError(f'cannot read config file {path}: {exc}')
        unknown = sorted(k for k in values if k.lower() not in CONFIG_KEYS)
        if unknown:
            raise ConfigError(f'unknown config keys: {", ".join(unknown)}')
        return (base or cls.defaults()).with_overrides(**{k.lower(): v for k, v in values.items()})

    def with_overrides(self, **overrides) -> 'RunConfig':
        """Replace the fields given as not-None values, parsing text where needed."""
        changes = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key == 'gamma_params':
                changes[key] = parse_gamma_params(value) if isinstance(value, str) else tuple(
                    tuple(p) for p in value)
            elif key in ('search_radius', 'oracle_trials'):
                changes[key] = _positive_int(key, value)
            elif key == 'random_seed':
                try:
                    changes[key] = int(value)
                except (TypeError, ValueError):
                    raise ConfigError(f'random_seed must be an integer, got {value!r}')
            elif key == 'output_format':
                changes[key] = _output_format(value)
            else:
                raise ConfigError(f'unknown config key {key!r}')
        return dataclasses.replace(self, **changes)

    def to_json(self) -> dict:
        return {
            'gamma_params': [list(p) for p in self.gamma_params],
            'search_radius': self.search_radius,
            'random_seed': self.random_seed,
            'output_format': self.output_format,
            'oracle_trials': self.oracle_trials,
        }


# Claim helpers ---------------------------------------------------------------

def checks_status(checks: Sequence[dict], printed: Sequence[str] = ()) -> str:
    """pass if every check holds; discrepancy if only checks of printed statements fail."""
    failed = [c['check'] for c in checks if not c['passed']]
    if not failed:
        return 'pass'
    if all(name in printed for name in failed):
        return 'discrepancy'
    return 'fail'


def _claim(claim_id: str, location: str, status: str, payload: dict, radius: Optional[int] = None
           ) -> ClaimRecord:
    logger.debug('claim %s: %s', claim_id, status)
    return ClaimRecord(claim_id, location, status, payload, radius)


def _check_claim(claim_id: str, location: str, checks: list[dict], printed: Sequence[str] = ()
                 ) -> ClaimRecord:
    return _claim(claim_id, location, checks_status(checks, printed), {'checks': checks})


# Hantzsche-Wendt suites ------------------------------------------------------

def flat_group_claims() -> list[ClaimRecord]:
    lattices = flat_group.g6_subgroup_lattices()
    h1 = flat_group.h1_g6()
    h1_factors = [d for d in h1.invariant_factors if d != 1]
    example = flat_group.g6_abelianize(flat_group.g6_eval('x^2y^2z^-2'))
    lattice_ok = (lattices['chain'] and lattices['index_T_G6_prime'] == 4
                  and lattices['index_G6_prime_2T'] == 2)
    return [
        _check_claim('g6.presentation', 'G6 presentation, affine model and the Zimmermann dictionary',
                     flat_group.verify_g6_presentation()),
        _claim('g6.lattices', 'translation lattice, commutator subgroup and 2T',
               'pass' if lattice_ok else 'fail', {
                   'chain': lattices['chain'],
                   'T/G6_prime': lattices['T/G6_prime'],
                   'G6_prime/2T': lattices['G6_prime/2T'],
                   'index_T_G6_prime': lattices['index_T_G6_prime'],
                   'index_G6_prime_2T': lattices['index_G6_prime_2T'],
               }),
        _claim('g6.abelianization', 'abelianization of G6',
               'pass' if h1_factors == [4, 4] and all(a == 0 for a in example) else 'fail',
               {'invariant_factors': h1_factors, 'image_of_x2y2z-2': list(example)}),
    ]


def out_g6_claims() -> list[ClaimRecord]:
    summary = flat_aut.out_g6_summary()
    summary_ok = (summary['order'] == 96 and summary['center_is_1_ab'] and summary['gl2_surjective']
                  and summary['gl2_kernel_order'] == 16 and summary['gl2_kernel_is_abce']
                  and summary['d_equals_bc'] and summary['f_equals_ace'])
    complement = flat_aut.out_g6_complement_search()
    return [
        _check_claim('g6.aut-presentation', 'automorphisms a-j of G6 and their relations',
                     flat_aut.verify_aut_presentation()),
        _claim('g6.out-order', 'Out(G6) has order 96, centre {1, [ab]}, onto GL(2,2)',
               'pass' if summary_ok else 'fail', summary),
        _check_claim('g6.out-presentation', 'relations of Out(G6) and the Zimmermann generators',
                     flat_aut.verify_out_presentation(),
                     printed=('Zimmermann generators span Out(G6)',)),
        _claim('g6.out-non-split', 'Out(G6) does not split over the image of <d, e, f>',
               'discrepancy' if complement['complement_found'] else 'pass', complement),
    ]


def meridianal_claims() -> list[ClaimRecord]:
    table = flat_aut.out_g6()
    group = table.group
    classes = flat_aut.meridianal_classes()
    preserving = [c for c in classes if c['orientation'] == 1]
    ja_index, jb_index, i_index, ab_index = table.classes_of(['ja', 'jb', 'i', 'ab'])
    ja, jb = flat_aut.aut_from_word('ja'), flat_aut.aut_from_word('jb')
    checks = [
        {'check': 'two orientation-preserving meridianal groups',
         'passed': len(preserving) == 2, 'found': len(preserving)},
        {'check': 'representatives [ja] and [jb]',
         'passed': {c['index'] for c in preserving} == {ja_index, jb_index}},
        {'check': '(ja)^3 = 1', 'passed': ja.power(3) == flat_aut.identity_aut()},
        {'check': '(jb)^3 = de^-1f', 'passed': jb.power(3) == flat_aut.aut_from_word('de^-1f')},
        {'check': '[jb]^3 = [ab] != 1',
         'passed': group.power(jb_index, 3) == ab_index and ab_index != 0},
        {'check': '[i][ja][i]^-1 = [ja]^-1',
         'passed': group.conjugate(i_index, ja_index) == group.inverse(ja_index)},
        {'check': '[i][jb][i]^-1 = [jb]^-1',
         'passed': group.conjugate(i_index, jb_index) == group.inverse(jb_index)},
    ]
    for name in ('ja', 'jb', 'e'):
        expected = name != 'e'
        checks.append({'check': f'[{name}] meridianal is {expected}',
                       'passed': flat_aut.is_meridianal(flat_aut.aut_from_word(name)) == expected})
    record = _check_claim('g6.meridianal-classes', 'meridianal classes of Out(G6)', checks)
    record.payload['classes'] = [{k: v for k, v in c.items() if k != 'index'} for c in classes]
    return [record]


def _subgroup_comparison(claim_id: str, location: str, computed, claimed_words: Sequence[str],
                         extra: Optional[dict] = None) -> ClaimRecord:
    claimed = flat_aut.generated_subgroup(claimed_words)
    payload = {'claimed_generators': list(claimed_words), 'computed': flat_aut.describe(computed)}
    payload.update(extra or {})
    if computed != claimed:
        payload['claimed'] = flat_aut.describe(claimed)
    return _claim(claim_id, location, 'pass' if computed == claimed else 'discrepancy', payload)


def centralizer_claims() -> list[ClaimRecord]:
    ja, jb = flat_aut.aut_from_word('ja'), flat_aut.aut_from_word('jb')
    records = [
        _subgroup_comparison('g6.centralizer-ja', 'centralizer of ja in Aut(G6)',
                             flat_aut.centralizer(ja), ['ja', 'def^-1', 'abce']),
        _subgroup_comparison('g6.orientation-normalizer-ja',
                             'orientation-preserving part of the normalizer of <ja>',
                             flat_aut.orientation_preserving_normalizer(ja), ['ja', 'ice']),
        _subgroup_comparison('g6.centralizer-jb', 'centralizer of jb in Aut(G6)',
                             flat_aut.centralizer(jb), ['jb']),
        _subgroup_comparison('g6.normalizer-jb', 'normalizer of <jb> in Aut(G6)',
                             flat_aut.normalizer_cyclic(jb), ['jb', 'i']),
    ]
    for n in SHIFT_POWERS:
        word = f'd^{2 * n}ja'
        phi = flat_aut.aut_from_word(word)
        centre = flat_aut.centralizer(phi)
        records.append(_subgroup_comparison(f'g6.centralizer-d{2 * n}ja', f'centralizer of {word}',
                                            centre, [word, 'def^-1']))
        normalizer = flat_aut.normalizer_cyclic(phi)
        witness = flat_aut.inverting_element(phi)
        records.append(_claim(
            f'g6.normalizer-d{2 * n}ja', f'normalizer of <{word}> against its centralizer',
            'pass' if normalizer == centre else 'discrepancy', {
                'normalizer_equals_centralizer': normalizer == centre,
                'normalizer': flat_aut.describe(normalizer),
                'inverting_witness': witness.to_json() if witness is not None else None,
            }))
    return records


def weight_orbit_claims() -> list[ClaimRecord]:
    box = range(-2, 3)
    results = {'plus': [], 'minus': []}
    for m in box:
        for n in box:
            for p in box:
                g = flat_group.translation_element(m, n, p)
                if not flat_group.in_commutator_subgroup(g):
                    continue
                for family in results:
                    results[family].append(flat_aut.weight_orbit_normal_form(g, family))
    certified = all(r['certificate'] for rows in results.values() for r in rows)
    printed_certified = all(r['printed_conjugator_certificate'] for rows in results.values() for r in rows)
    axis_ok = all(r['lambda'] == r['exponents'][0] + r['exponents'][1] - r['exponents'][2]
                  for r in results['plus'])
    example = flat_aut.weight_orbit_normal_form(flat_group.g6_eval('x^2y^2z^-2'), 'plus')
    records = [
        _claim('g6.weight-orbit-lambda', 'lambda normal form x^(2 lambda) t with conjugator certificate',
               'pass' if certified and axis_ok and example['lambda'] == 3 else 'fail', {
                   'elements_checked': len(results['plus']),
                   'certificates_hold': certified,
                   'lambda_plus_is_axis_product': axis_ok,
                   'example': example,
               }),
        _claim('g6.weight-orbit-conjugator', 'conjugator x^(2n) y^(2p) as printed',
               'pass' if printed_certified else 'discrepancy', {
                   'printed_certificates_hold': printed_certified,
                   'working_conjugator_plus': 'x^(2p) y^(2n)',
                   'working_conjugator_minus': 'x^(-2p) y^(2n)',
               }),
    ]
    for family in ('plus', 'minus'):
        invariance = flat_aut.weight_orbit_invariance_check(family)
        maps = flat_aut.strict_orbit_maps(family)
        trivial = maps['group'] == [(1, 0)]
        records.append(_claim(
            f'g6.orbit-invariance-{family}', f'lambda invariance under the commuting subgroup ({family})',
            'pass' if invariance['all_preserved'] and trivial else 'discrepancy',
            {'invariance': invariance,
             'strict_orbit_maps': {**maps, 'group': [list(g) for g in maps['group']]}}))
    return records


def order_claims() -> list[ClaimRecord]:
    table = flat_aut.out_g6()
    consistent = []
    for index in range(table.order):
        order = flat_aut.element_order(table.representative(index))
        if order is not None:
            consistent.append(order % table.group.element_order(index) == 0)
    spin = [flat_aut.twist_spin_obstruction(n) for n in (0,) + SHIFT_POWERS]
    spin_ok = all(s['cube_identity'] and s['order'] == 'infinite' for s in spin)
    named = {word: flat_aut.format_order(flat_aut.element_order(flat_aut.aut_from_word(word)))
             for word in ('i', 'j', 'ja', 'jb')}
    named_ok = named['i'] == '2' and named['j'] == '6' and named['ja'] == '3'
    return [
        _claim('g6.element-orders', 'orders of i, j and agreement with Out(G6)',
               'pass' if all(consistent) and named_ok else 'fail',
               {'orders': named, 'finite_representatives_checked': len(consistent)}),
        _claim('g6.twist-spin', 'd^(2n) jb has infinite order', 'pass' if spin_ok else 'fail',
               {'powers': spin}),
    ]


def symmetry_claims() -> list[ClaimRecord]:
    return [_check_claim('g6.symmetry', 'exact symmetry certificates for G(+) and G(-)',
                         flat_aut.symmetry_certificates())]


# Nil suites ------------------------------------------------------------------

def nil_claims(config: RunConfig) -> list[ClaimRecord]:
    law = nil_group.composition_law_check(config.oracle_trials, config.random_seed)
    trials = law['trials']
    if law['homomorphism_passes'] != trials or law['working_law_passes'] != trials:
        law_status = 'fail'
    elif law['printed_law_passes'] != trials:
        law_status = 'discrepancy'
    else:
        law_status = 'pass'
    wallpaper = nil_group.wallpaper_p()
    wallpaper_ok = (wallpaper['d_order'] == 12 and wallpaper['out_order'] == 12
                    and wallpaper['minus_identity_normalizes'] is True)
    return [
        _claim('nil.composition-law', 'composition law of Aut(Nil)', law_status, law),
        _claim('nil.wallpaper', 'wallpaper group P and its normalizer',
               'pass' if wallpaper_ok else 'fail', wallpaper),
    ]


def gamma_claims(e: int, eta: int, config: RunConfig) -> list[ClaimRecord]:
    group = nil_group.gamma_build(e, eta)
    prefix = f'gamma({e},{eta})'
    q = group.q
    records = [_check_claim(f'{prefix}.presentations', f'presentations of {group.label}',
                            nil_group.verify_gamma_presentations(group))]

    embedding = nil_group.embedding_comparison(e, eta)
    if not embedding['working_passes']:
        status = 'fail'
    else:
        status = 'pass' if embedding['printed_passes'] else 'discrepancy'
    records.append(_claim(f'{prefix}.embedding', 'embedding of z in Aff(Nil)', status, embedding))

    collection = [{'check': word,
                   'passed': nil_group.gamma_collect(group, word)
                   == nil_group.gamma_decompose(group, nil_group.gamma_eval(group, word))}
                  for word in COLLECTION_WORDS]
    records.append(_check_claim(f'{prefix}.collection', 'normal form by collection against the model',
                                collection))

    factors = [d for d in nil_group.h1_gamma(group).invariant_factors if d != 1]
    records.append(_claim(f'{prefix}.h1', 'abelianization Z/3 + Z/3|q|',
                          'pass' if factors == [3, 3 * abs(q)] else 'fail',
                          {'q': q, 'invariant_factors': factors}))

    pattern = nil_aut.f_subgroup(group, box=3)
    records.append(_claim(f'{prefix}.k-pattern', 'where k[m,n] exists and the subgroup F',
                          'pass' if pattern['pattern_holds'] else 'fail', pattern))

    reports = [nil_aut.k_parameter_report(group, m, n) for m in range(-3, 4) for n in range(-3, 4)]
    consistent = all(r['satisfies_constraints'] and r['matches_derived'] for r in reports)
    printed = all(r.get('matches_printed_solution', True) for r in reports)
    records.append(_claim(f'{prefix}.k-parameters', 'solved (s, t, p) for k[m,n]',
                          'pass' if consistent and printed else 'discrepancy', {
                              'satisfy_constraints_and_derived_form': consistent,
                              'match_printed_solution': printed,
                              'derived_form': 's=(m-2n)q/3, t=(m+n)q/3, p=(m+n)((m+n-1)q+2(eta-1))/6',
                              'samples': [r for r in reports if (r['m'], r['n']) in
                                          ((1, 0), (0, 1), (1, -1), (-2, -1))],
                          }))

    records.append(_check_claim(f'{prefix}.aut-presentation', 'relations among b, r and the k[m,n]',
                                nil_aut.presentation_relations(group),
                                printed=nil_aut.printed_relations(eta)))

    table = nil_aut.out_gamma(group, Config.OUT_CLOSURE_BOUND)
    profile = table.group.order_profile()
    expected = ({1: 1, 2: 7, 3: 2, 6: 2}, 12) if eta == 1 else ({1: 1, 2: 3}, 4)
    records.append(_claim(f'{prefix}.out-order', 'order and structure of Out(Gamma)',
                          'pass' if (profile, table.order) == expected else 'fail',
                          {'order': table.order, 'order_profile': profile,
                           'generators': table.generator_names}))

    records.append(_meridianal_claim(group, prefix))
    records.extend(_uniqueness_claims(group, prefix, config.search_radius))
    records.extend(_gamma_centralizer_claims(group, prefix))
    records.append(_tau2_claim(group, prefix))
    return records


def _meridianal_claim(group, prefix: str) -> ClaimRecord:
    """
    One class containing [r] passes. For eta = 1, r k r = k makes [r] central and rk
    a second meridianal class; with every H1 certificate invertible that contradicts
    the printed single class and is reported as a discrepancy.
    """
    classes = nil_aut.meridianal_classes_gamma(group)
    certificate = nil_aut.r_k_certificate(group)
    certified = all(c['h1_certificate']['is_automorphism']
                    and c['h1_certificate']['minus_identity_invertible'] for c in classes)
    if len(classes) == 1 and classes[0]['contains_r']:
        status = 'pass'
    elif (group.eta == 1 and any(c['contains_r'] for c in classes) and certified
          and certificate is not None and certificate['r k r = k']):
        status = 'discrepancy'
    else:
        status = 'fail'
    return _claim(f'{prefix}.meridianal-classes', 'one meridianal class, containing [r]', status,
                  {'classes': classes, 'r_k_certificate': certificate})


def _uniqueness_claims(group, prefix: str, radius: int) -> list[ClaimRecord]:
    """Exact strict-orbit comparison, then the twisted-conjugacy search up to radius."""
    check = nil_aut.uniqueness_check(group, ORBIT_VALUES, radius)
    exact = {key: check[key] for key in ('values', 'orbits', 'equivalent_pairs')}
    search = {key: check[key] for key in ('values', 'oracle', 'oracle_agrees')}
    return [
        _claim(f'{prefix}.weight-orbit-uniqueness', 'u^n t distinct in strict weight orbits',
               'discrepancy' if check['equivalent_pairs'] else 'pass', exact),
        _claim(f'{prefix}.weight-orbit-search', 'twisted-conjugacy search agrees with the strict orbits',
               'bounded' if check['oracle_agrees'] else 'fail', search, radius),
    ]


def _gamma_centralizer_claims(group, prefix: str) -> list[ClaimRecord]:
    records = []
    for n in SHIFT_POWERS:
        claims = nil_aut.centralizer_claims_gamma(group, n)
        if not claims['uv_inverse_commutes']:
            status = 'fail'
        elif claims['inverted_by_u_power_b3']:
            status = 'discrepancy'
        else:
            status = 'pass'
        records.append(_claim(f'{prefix}.centralizer-u{n}r', f'centralizer of u^{n} r in Aut(Gamma)',
                              status, claims))
        level = nil_aut.centralizer_p_level(group, n)
        matches = level['centralizer_matches'] and level['normalizer_equals_centralizer']
        records.append(_claim(f'{prefix}.centralizer-u{n}r-plane',
                              f'centralizer and normalizer of u^{n} r on the plane',
                              'pass' if matches else 'discrepancy', level))
    return records


def _tau2_claim(group, prefix: str) -> ClaimRecord:
    checks = nil_aut.tau2_certificates(group)
    status = checks_status(checks, printed=('b^3([x,y,w]) = [-x,-y,w+(e eta-1)(x+y)]',))
    if status == 'pass' and not checks[1]['printed_form_in_matrix_coordinates']:
        status = 'discrepancy'
    return _claim(f'{prefix}.tau2', 'the involution R, its fixed curve and b^3', status,
                  {'checks': checks})


# Knot suites -----------------------------------------------------------------

def knot_claims(config: RunConfig) -> list[ClaimRecord]:
    descriptors = knot_invariants.default_descriptors(config.gamma_params)
    rows = knot_invariants.verdict_table(descriptors)
    by_label = {row['knot']: row for row in rows}
    expected_slice = {d.label for d in descriptors if d.family == 'pi' and abs(d.q) == 1}
    found_slice = {row['knot'] for row in rows if row['doubly_slice'] is True}
    records = [_claim('knot.verdicts', 'doubly slice verdicts',
                      'pass' if found_slice == expected_slice else 'fail', {'rows': rows})]

    solved = knot_invariants.q_solver(10)
    records.append(_claim('knot.q-solver', 'pi(e, eta) with |q| = 1',
                          'pass' if solved == [(0, -1)] else 'fail',
                          {'bound': 10, 'solutions': [list(s) for s in solved]}))

    cyclic = {label: by_label[label] for label in ('G(+)', 'G(-)')}
    cyclic_ok = all(row['evidence']['lambda_cyclic'] and row['evidence']['invariant_factors'] == [4, 4]
                    for row in cyclic.values())
    records.append(_claim('knot.lambda-cyclic-g6', '(Z/4)^2 is cyclic as a module over the meridian',
                          'pass' if cyclic_ok else 'fail',
                          {label: row['evidence'] for label, row in cyclic.items()}))

    doubles = {d.label: by_label[d.label]['evidence']['direct_double']
               for d in descriptors if d.family == 'pi' and abs(d.q) != 1}
    records.append(_claim('knot.direct-double-gamma', 'Z/3q + Z/3 is not a direct double for |q| > 1',
                          'pass' if not any(doubles.values()) else 'fail', {'direct_double': doubles}))

    fox = by_label['Fox']['evidence']
    records.append(_claim('knot.fox', 'Alexander polynomial of the Fox knot group',
                          'pass' if fox['alexander_polynomial'] == 't - 2' else 'fail', fox))
    records.append(_claim('knot.finite-commutator', 'knots with finite commutator subgroup',
                          'external', {'reason': 'finite-commutator-cited'}))
    return records


# Assembly --------------------------------------------------------------------

def _suites(config: RunConfig) -> list[tuple[str, Callable[[], list[ClaimRecord]]]]:
    suites = [(s.__name__.removesuffix('_claims'), s) for s in (
        flat_group_claims, out_g6_claims, meridianal_claims, centralizer_claims,
        weight_orbit_claims, order_claims, symmetry_claims)]
    suites.append(('nil', lambda: nil_claims(config)))
    for e, eta in config.gamma_params:
        suites.append((f'gamma({e},{eta})', lambda e=e, eta=eta: gamma_claims(e, eta, config)))
    suites.append(('knot', lambda: knot_claims(config)))
    return suites


def run_suite(name: str, suite: Callable[[], list[ClaimRecord]]) -> list[ClaimRecord]:
    """Run one suite; an exception inside it becomes a single failed claim."""
    try:
        produced = suite()
    except (ValueError, ArithmeticError) as exc:
        logger.error('suite %s raised %s: %s', name, type(exc).__name__, exc)
        return [_claim(f'suite.{name}', f'the {name} suite ran to completion', 'fail',
                       {'error': type(exc).__name__, 'message': str(exc)})]
    logger.info('suite %s produced %d claims', name, len(produced))
    return produced


def verify_all(config: RunConfig) -> list[ClaimRecord]:
    """Every claim in a fixed order; failures are records, never exceptions."""
    records: list[ClaimRecord] = []
    for name, suite in _suites(config):
        records.extend(run_suite(name, suite))
    seen: set[str] = set()
    for record in records:
        if record.claim_id in seen:
            raise ValueError(f'duplicate claim id {record.claim_id}')
        seen.add(record.claim_id)
    return records


def status_counts(records: Sequence[ClaimRecord]) -> dict[str, int]:
    return {status: sum(r.status == status for r in records) for status in STATUSES}


def exit_code(records: Sequence[ClaimRecord]) -> int:
    return 1 if any(r.status == 'fail' for r in records) else 0
