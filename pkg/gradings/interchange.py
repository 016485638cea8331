"""
Parameter documents and JSON dumps.

A parameter document is a list of `key: value` lines in a fixed order:

    format: 1
    group: Z
    family: osp
    T: -
    beta: -
    g0: (0;0)
    kappa: (0;0)*1 (-1;1)*1 (1;1)*1

`#` lines and blank lines are ignored. Lists of elements are separated by
spaces and `-` stands for the empty list; a bicharacter is written on the
generators of T as rows separated by ` ; ` with entries separated by `, `.
Dumps of algebras, forms, reports and census listings are JSON with
sorted keys and two-space indentation.
"""

import json
import logging
from dataclasses import replace

import config
from abelian import (
    Bicharacter,
    FinAbGroup,
    FiniteSubgroup,
    as_sharp,
    parse_element,
)
from algebra import GradedAlgebra
from cyclo import parse_literal
from division import EtaMap
from forms import PhiMatrix, Superinvolution
from lie import LieSuperalgebra
from matrix_algebra import ElementaryGradingSpec, KappaMap
from params import (
    LieParams,
    MEvenParams,
    MexEvenParams,
    MexOddParams,
    MOddParams,
    MStarParams,
    QexParams,
    QParams,
    TypeIParams,
    periplectic_params,
    queer_support,
)
from validation import AdmissibilityError, GroupError, ParseError, validate_family_tag

logger = logging.getLogger('gradings.interchange')

KEY_ORDER = ('format', 'group', 'family', 'inner', 'T', 'beta', 'h', 'tp', 'h0', 'g0', 'eta', 'kappa')

# Keys of each associative parameter layout ('p' is the periplectic layout)
FIELDS = {
    'm-even': ('T', 'beta', 'kappa'),
    'm-odd': ('T', 'beta', 'kappa'),
    'q': ('T', 'beta', 'h', 'kappa'),
    'm-star': ('T', 'beta', 'g0', 'kappa'),
    'mex-even': ('T', 'beta', 'g0', 'kappa'),
    'mex-odd': ('T', 'beta', 'tp', 'g0', 'kappa'),
    'qex': ('T', 'beta', 'h', 'g0', 'kappa'),
    'p': ('T', 'beta', 'h0', 'kappa'),
}
WITH_ETA = ('m-star', 'mex-even', 'mex-odd', 'qex', 'p')

# Lie tags with a fixed associative layout
LIE_LAYOUT = {'osp': 'm-star', 'p': 'p', 'q-lie-2': 'qex'}


def dumps(record):
    """Deterministic JSON text of a record."""
    return json.dumps(record, sort_keys=True, indent=2) + "\n"


# Parameter documents

def _read_fields(text):
    fields, lines = {}, {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        if ':' not in line:
            raise ParseError("expected 'key: value'", line=number)
        key, value = line.split(':', 1)
        key = key.strip()
        if key not in KEY_ORDER:
            raise ParseError(f"unknown field '{key}'", line=number, field=key)
        if key in fields:
            raise ParseError(f"duplicate field '{key}'", line=number, field=key)
        fields[key] = value.strip()
        lines[key] = number
    return fields, lines


class _Reader:
    """Field access with line-aware errors."""

    def __init__(self, fields, lines, group=None):
        self.fields = fields
        self.lines = lines
        self.group = group

    def error(self, message, key):
        return ParseError(message, line=self.lines.get(key), field=key)

    def text(self, key):
        if key not in self.fields:
            raise ParseError("missing field", field=key)
        return self.fields[key]

    def element(self, key, graded=True):
        try:
            return parse_element(self.text(key), self.group, graded)
        except ParseError as e:
            raise self.error(e.message, key)

    def elements(self, key):
        value = self.text(key)
        if value == '-':
            return []
        result = []
        for token in value.split():
            try:
                result.append(parse_element(token, self.group, True))
            except ParseError as e:
                raise self.error(e.message, key)
        return result

    def subgroup(self, key):
        gens = self.elements(key)
        try:
            return FiniteSubgroup(self.group, gens), gens
        except GroupError as e:
            raise self.error(str(e), key)

    def bicharacter(self, key, subgroup, gens):
        value = self.text(key)
        rows = [] if value == '-' else [row.split(', ') for row in value.split(' ; ')]
        if len(rows) != len(gens) or any(len(row) != len(gens) for row in rows):
            raise self.error(f"expected a {len(gens)}x{len(gens)} table on the generators of T", key)
        try:
            values = [[parse_literal(entry.strip()) for entry in row] for row in rows]
        except ParseError as e:
            raise self.error(e.message, key)
        try:
            return Bicharacter.from_generator_values(subgroup, gens, values)
        except GroupError as e:
            raise AdmissibilityError(str(e), condition='bicharacter')

    def kappa(self, key, subgroup):
        entries = []
        for token in self.text(key).split():
            if '*' not in token:
                raise self.error(f"kappa entry '{token}' must read rep*multiplicity", key)
            rep, mult = token.rsplit('*', 1)
            if not mult.isdigit() or int(mult) == 0:
                raise self.error(f"bad multiplicity in '{token}'", key)
            try:
                entries.append((parse_element(rep, self.group, True), int(mult)))
            except ParseError as e:
                raise self.error(e.message, key)
        if not entries:
            raise AdmissibilityError("kappa is empty", condition=2)
        return KappaMap(subgroup, entries)

    def signs(self, key, count):
        tokens = self.text(key).split()
        if len(tokens) != count or any(t not in ('+1', '-1') for t in tokens):
            raise self.error(f"expected {count} values +1/-1 on the generators of T", key)
        return [int(t) for t in tokens]


def _layout_params(layout, reader):
    group = reader.group
    T, gens = reader.subgroup('T')
    beta = reader.bicharacter('beta', T, gens)
    if layout in ('q', 'qex'):
        h = reader.element('h', graded=False)
        support = queer_support(T, h)
    else:
        support = T
    kappa = reader.kappa('kappa', support)

    if layout == 'm-even':
        params = MEvenParams(group, T, beta, kappa)
    elif layout == 'm-odd':
        params = MOddParams(group, T, beta, kappa)
    elif layout == 'q':
        params = QParams(group, T, beta, h, kappa)
    elif layout == 'm-star':
        params = MStarParams(group, T, beta, kappa, reader.element('g0'))
    elif layout == 'mex-even':
        params = MexEvenParams(group, T, beta, kappa, reader.element('g0'))
    elif layout == 'mex-odd':
        params = MexOddParams(group, T, beta, reader.element('tp'), kappa, reader.element('g0'))
    elif layout == 'qex':
        params = QexParams(group, T, beta, h, kappa, reader.element('g0'))
    else:
        params = periplectic_params(group, T, beta, kappa, reader.element('h0', graded=False))

    if 'eta' in reader.fields:
        D = params.division
        support_gens = D.support.generators
        values = reader.signs('eta', len(support_gens))
        eta = EtaMap.from_generator_values(D.support, params.beta_tilde(), dict(zip(support_gens, values)))
        params = replace(params, eta=eta)
    return params


def parse_params(text):
    """
    Parse and validate a parameter document.

    Returns:
        GradingParams (LieParams for Lie tags)

    Raises:
        ParseError: on malformed text, with line and field
        AdmissibilityError: if the parameters violate a condition
    """
    fields, lines = _read_fields(text)
    reader = _Reader(fields, lines)
    if reader.text('format') != str(config.FORMAT_VERSION):
        raise reader.error(f"unsupported format version, expected {config.FORMAT_VERSION}", 'format')
    try:
        reader.group = FinAbGroup.parse(reader.text('group'))
    except ParseError as e:
        raise reader.error(e.message, "group")

    family = reader.text('family')
    is_valid, error = validate_family_tag(family)
    if not is_valid:
        raise reader.error(error, 'family')

    inner = None
    if family in config.INNER_FAMILIES:
        inner = reader.text('inner')
        if inner not in config.INNER_FAMILIES[family]:
            raise reader.error(f"family {family} cannot wrap '{inner}'", 'inner')
        layout = inner
    elif 'inner' in fields:
        raise reader.error(f"family {family} takes no inner family", 'inner')
    else:
        layout = LIE_LAYOUT.get(family, family)

    allowed = {'format', 'group', 'family'} | set(FIELDS[layout])
    if inner is not None:
        allowed.add('inner')
    if layout in WITH_ETA:
        allowed.add('eta')
    for key in fields:
        if key not in allowed:
            raise reader.error(f"field not used by family {family}", key)
    for key in FIELDS[layout]:
        reader.text(key)

    params = _layout_params(layout, reader)
    if family in ('type-i', 'a-1', 'q-lie-1'):
        params = TypeIParams(params)
    if config.get_family_kind(family) == 'lie':
        params = LieParams(family, params)
    params.check()
    logger.debug(f"Parsed {family} parameters")
    return params


def _tag_and_layout(params):
    """(family tag, inner tag or None, layout, associative tuple)."""
    if isinstance(params, LieParams):
        tag, assoc = params.family, params.inner
        if tag in ('a-1', 'q-lie-1'):
            return tag, assoc.inner.family, assoc.inner.family, assoc.inner
        if tag == 'a-2':
            return tag, assoc.family, assoc.family, assoc
        return tag, None, LIE_LAYOUT[tag], assoc
    if isinstance(params, TypeIParams):
        return 'type-i', params.inner.family, params.inner.family, params.inner
    return params.family, None, params.family, params


def _bicharacter_text(b, gens):
    if not gens:
        return '-'
    return ' ; '.join(
        ', '.join(b.value(s, t).canonical().to_literal() for t in gens) for s in gens
    )


def _elements_text(elements):
    return ' '.join(str(x) for x in elements) or '-'


def emit_params(params):
    """Canonical document text of a tuple; parse_params inverts it."""
    tag, inner, layout, assoc = _tag_and_layout(params)
    values = {'format': str(config.FORMAT_VERSION), 'group': str(assoc.group), 'family': tag}
    if inner is not None:
        values['inner'] = inner

    if layout in ('q', 'qex'):
        T, beta = assoc.tplus, assoc.beta_plus
        values['h'] = str(assoc.h)
    elif layout == 'm-odd':
        T, beta = assoc.subgroup, assoc.beta_tilde
    elif layout == 'mex-odd':
        T, beta = assoc.subgroup, assoc.beta_tilde_map
        values['tp'] = str(as_sharp(assoc.tp))
    else:
        T, beta = assoc.subgroup, assoc.beta
    gens = T.generators
    values['T'] = _elements_text(gens)
    values['beta'] = _bicharacter_text(beta, gens)

    kappa = assoc.kappa
    if layout == 'p':
        values['h0'] = str(as_sharp(assoc.g0).element)
        kappa = kappa.parity_part(0)
    elif 'g0' in FIELDS[layout]:
        values['g0'] = str(as_sharp(assoc.g0))
    if layout in WITH_ETA and assoc.eta is not None:
        support = assoc.division.support
        values['eta'] = ' '.join(f"{assoc.eta(g):+d}" for g in support.generators)
    values['kappa'] = str(kappa)

    return ''.join(f"{key}: {values[key]}\n" for key in KEY_ORDER if key in values)


def read_params(path):
    with open(path) as f:
        return parse_params(f.read())


# Forms

def phi_record(phi):
    return {
        'g0': str(phi.g0),
        'delta': phi.delta,
        'degrees': [str(d) for d in phi.gamma.degrees],
        'entries': [
            [i, j, str(t), c.canonical().to_literal()]
            for (i, j), (t, c) in sorted(phi.entries.items())
        ],
    }


def parse_phi(record, group):
    """
    Form from a phi record.

    Raises:
        ParseError: on a malformed record
    """
    try:
        degrees = [parse_element(d, group, True) for d in record['degrees']]
        entries = {
            (int(i), int(j)): (parse_element(t, group, True), parse_literal(c))
            for i, j, t, c in record['entries']
        }
        g0 = parse_element(record['g0'], group, True)
        delta = int(record.get('delta', 1))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed form record: {e}", field='phi')
    return PhiMatrix(ElementaryGradingSpec(group, degrees), entries, g0, delta)


# Algebra dumps

def _table_rows(table):
    return [
        [i, j, k, c.canonical().to_literal()]
        for (i, j), value in sorted(table.items())
        for k, c in sorted(value.items())
    ]


def division_record(division):
    elements = division.support.elements
    return {
        'kind': division.kind,
        'support': [str(t) for t in elements],
        'cocycle': [
            [str(t), str(s), division.cocycle[(t, s)].canonical().to_literal()]
            for t in elements for s in elements
        ],
        'eta': None if division.eta is None else [division.eta(t) for t in elements],
    }


def algebra_record(model_or_algebra, name=None):
    """JSON-ready dump of an associative model (algebra, involution, form)."""
    algebra = getattr(model_or_algebra, 'algebra', model_or_algebra)
    involution = getattr(model_or_algebra, 'involution', None)
    form = getattr(model_or_algebra, 'form', None)
    division = getattr(model_or_algebra, 'division', None)
    record = {
        'lie': False,
        'name': name or algebra.name,
        'group': str(algebra.group),
        'dim': algebra.dim,
        'labels': algebra.labels,
        'degrees': [str(d) for d in algebra.degrees],
        'table': _table_rows(algebra.table),
        'unit': None if algebra.unit is None else [
            [k, c.canonical().to_literal()] for k, c in sorted(algebra.unit.items())
        ],
    }
    if algebra.supertrace_values is not None:
        record['supertrace'] = [c.canonical().to_literal() for c in algebra.supertrace_values]
    if involution is not None:
        record['involution'] = {
            'kind': involution.kind,
            'images': [
                [n, k, c.canonical().to_literal()]
                for n, image in enumerate(involution.images) for k, c in sorted(image.items())
            ],
        }
    if form is not None:
        record['phi'] = phi_record(form)
    if division is not None:
        record['division'] = division_record(division)
    return record


def lie_record(L):
    even, odd = L.superdimension()
    return {
        'lie': True,
        'name': L.name,
        'family': L.family,
        'subtype': L.subtype,
        'group': str(L.group),
        'dim': L.dim,
        'superdimension': [even, odd],
        'labels': L.labels,
        'degrees': [str(d) for d in L.degrees],
        'bracket': _table_rows(L.table),
    }


def _table_from_rows(rows):
    table = {}
    for i, j, k, c in rows:
        table.setdefault((int(i), int(j)), {})[int(k)] = parse_literal(c)
    return table


def load_dump(text):
    """
    Rebuild an algebra from its JSON dump.

    Returns:
        LieSuperalgebra, or a tuple (GradedAlgebra, Superinvolution or None)

    Raises:
        ParseError: on malformed JSON or missing keys
    """
    try:
        record = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno)
    try:
        group = FinAbGroup.parse(record['group'])
        degrees = [parse_element(d, group, True) for d in record['degrees']]
        labels = record['labels']
        if record.get('lie'):
            L = LieSuperalgebra(group, labels, degrees, _table_from_rows(record['bracket']),
                                record.get('name', ''), record.get('family'), record.get('subtype'))
            return L
        unit = None
        if record.get('unit') is not None:
            unit = {int(k): parse_literal(c) for k, c in record['unit']}
        algebra = GradedAlgebra(group, labels, degrees, _table_from_rows(record['table']), unit,
                                record.get('name', ''))
        if record.get('supertrace') is not None:
            algebra.supertrace_values = [parse_literal(c) for c in record['supertrace']]
        involution = None
        if record.get('involution') is not None:
            images = [{} for _ in range(algebra.dim)]
            for n, k, c in record['involution']['images']:
                images[int(n)][int(k)] = parse_literal(c)
            involution = Superinvolution(algebra, images, record['involution']['kind'])
        return algebra, involution
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise ParseError(f"malformed dump: {e}")


# Result records

def verify_record(results):
    """results: dict check -> (passed, message)."""
    return {
        'passed': all(ok for ok, _ in results.values()),
        'checks': {
            name: {'passed': ok, 'message': message}
            for name, (ok, message) in results.items()
        },
    }


def census_record(family, group, dim, classes):
    return {
        'family': family,
        'group': str(group),
        'dim': dim,
        'count': len(classes),
        'classes': [emit_params(p) for p in classes],
    }
