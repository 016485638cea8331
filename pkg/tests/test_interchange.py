"""
Tests for parameter documents and JSON dumps.
"""

import json

import pytest

from abelian import FiniteSubgroup
from conftest import fixture_names, fixture_path
from forms import build_form
from interchange import (
    algebra_record,
    census_record,
    dumps,
    emit_params,
    lie_record,
    load_dump,
    parse_params,
    parse_phi,
    phi_record,
    read_params,
    verify_record,
)
from lie import LieSuperalgebra, build_lie
from matrix_algebra import KappaMap, trivial_division
from validation import AdmissibilityError, ParseError

M_EVEN = """format: 1
group: Z
family: m-even
T: -
beta: -
kappa: (0;0)*1 (1;1)*1
"""


def without_comments(text):
    return ''.join(line + '\n' for line in text.splitlines() if line.strip() and not line.startswith('#'))


@pytest.mark.unit
class TestParameterDocuments:
    """Test parsing and emitting parameter documents."""

    @pytest.mark.parametrize('name', fixture_names())
    def test_round_trip(self, name):
        """Test that emitting a parsed fixture reproduces it."""
        with open(fixture_path(name)) as f:
            text = f.read()
        params = parse_params(text)
        assert emit_params(params) == without_comments(text)
        assert parse_params(emit_params(params)) == params

    def test_read_params(self):
        """Test reading a document from disk."""
        params = read_params(fixture_path('osp_1_2'))
        assert params.family == 'osp'

    def test_comments_and_blank_lines(self):
        """Test that comments and blank lines are ignored."""
        text = "# header\n\n" + M_EVEN.replace("family", "\nfamily")
        assert parse_params(text) == parse_params(M_EVEN)

    def test_unknown_field(self):
        """Test that an unknown key reports its line and field."""
        with pytest.raises(ParseError) as exc_info:
            parse_params(M_EVEN + "colour: red\n")
        assert exc_info.value.line == 7
        assert exc_info.value.field == 'colour'

    def test_duplicate_field(self):
        """Test that a repeated key is rejected."""
        with pytest.raises(ParseError) as exc_info:
            parse_params(M_EVEN + "beta: -\n")
        assert 'duplicate' in exc_info.value.message
        assert exc_info.value.line == 7

    def test_missing_colon(self):
        """Test that a line without a colon is rejected."""
        with pytest.raises(ParseError) as exc_info:
            parse_params("format 1\n")
        assert exc_info.value.line == 1

    def test_format_version(self):
        """Test that an unsupported format version is rejected."""
        with pytest.raises(ParseError) as exc_info:
            parse_params(M_EVEN.replace("format: 1", "format: 2"))
        assert exc_info.value.field == 'format'

    def test_bad_group(self):
        """Test that a malformed group is reported on its line."""
        with pytest.raises(ParseError) as exc_info:
            parse_params(M_EVEN.replace("group: Z", "group: Q5"))
        assert exc_info.value.field == 'group'
        assert exc_info.value.line == 2

    def test_unknown_family(self):
        """Test that an unknown family tag is rejected."""
        with pytest.raises(ParseError) as exc_info:
            parse_params(M_EVEN.replace("m-even", "m-weird"))
        assert exc_info.value.field == 'family'

    def test_field_not_used(self):
        """Test that a key outside the family layout is rejected."""
        with pytest.raises(ParseError) as exc_info:
            parse_params(M_EVEN.replace("kappa:", "g0: (0;0)\nkappa:"))
        assert exc_info.value.field == 'g0'

    def test_missing_field(self):
        """Test that a missing layout key is reported."""
        with pytest.raises(ParseError) as exc_info:
            parse_params(M_EVEN.replace("beta: -\n", ""))
        assert exc_info.value.field == 'beta'

    def test_bad_kappa_entry(self):
        """Test that kappa entries need a multiplicity."""
        with pytest.raises(ParseError) as exc_info:
            parse_params(M_EVEN.replace("(1;1)*1", "(1;1)"))
        assert exc_info.value.field == 'kappa'
        with pytest.raises(ParseError):
            parse_params(M_EVEN.replace("(1;1)*1", "(1;1)*0"))

    def test_bad_element(self):
        """Test that an element of the wrong rank is rejected."""
        with pytest.raises(ParseError) as exc_info:
            parse_params(M_EVEN.replace("(1;1)*1", "(1,2;1)*1"))
        assert exc_info.value.field == 'kappa'

    def test_bicharacter_shape(self):
        """Test that beta must be a square table on the generators of T."""
        text = M_EVEN.replace("T: -", "T: (1;0)").replace("group: Z", "group: Z2")
        text = text.replace("kappa: (0;0)*1 (1;1)*1", "kappa: (0;0)*1")
        with pytest.raises(ParseError) as exc_info:
            parse_params(text)
        assert exc_info.value.field == 'beta'

    def test_empty_kappa(self):
        """Test that an empty kappa violates condition 2."""
        with pytest.raises(AdmissibilityError) as exc_info:
            parse_params(M_EVEN.replace("(0;0)*1 (1;1)*1", ""))
        assert exc_info.value.condition == 2

    def test_inadmissible_document(self):
        """Test that parsing checks admissibility."""
        with open(fixture_path('osp_1_2')) as f:
            text = f.read()
        with pytest.raises(AdmissibilityError) as exc_info:
            parse_params(text.replace(" (-1;1)*1", ""))
        assert exc_info.value.condition == 3

    def test_eta_override(self):
        """Test that eta values are read on the generators of the support."""
        params = read_params(fixture_path('osp_eta'))
        assert params.inner.eta is not None
        assert 'eta: +1 -1' in emit_params(params)
        assert 'T: (0,1;0) (1,0;0)' in emit_params(params)


@pytest.mark.unit
class TestDumps:
    """Test JSON dumps of forms, algebras and results."""

    def test_phi_round_trip(self, z):
        """Test that a form survives its record."""
        T = FiniteSubgroup.trivial(z)
        kappa = KappaMap(T, [(z.sharp((0,)), 1), (z.sharp((-1,), 1), 1), (z.sharp((1,), 1), 1)])
        phi = build_form(trivial_division(z), kappa, z.sharp((0,)))
        record = json.loads(dumps(phi_record(phi)))
        assert parse_phi(record, z) == phi

    def test_malformed_phi(self, z):
        """Test that a record without degrees is rejected."""
        with pytest.raises(ParseError):
            parse_phi({'g0': '(0;0)', 'entries': []}, z)

    def test_algebra_round_trip(self):
        """Test that an associative model with superinvolution survives its dump."""
        model = read_params(fixture_path('m_star_pauli')).build()
        text = dumps(algebra_record(model))
        algebra, involution = load_dump(text)
        assert algebra.dim == model.algebra.dim
        assert algebra.table == model.algebra.table
        assert algebra.check_associativity() == (True, None)
        assert involution.check() == (True, None)
        assert 'division' in json.loads(text)

    def test_lie_round_trip(self):
        """Test that a Lie superalgebra survives its dump."""
        L = build_lie(read_params(fixture_path('osp_1_2')))
        record = lie_record(L)
        assert record['superdimension'] == [3, 2]
        loaded = load_dump(dumps(record))
        assert isinstance(loaded, LieSuperalgebra)
        assert loaded.table == L.table
        assert loaded.family == 'osp'

    def test_dumps_is_deterministic(self):
        """Test sorted keys and a trailing newline."""
        text = dumps({'b': 1, 'a': 2})
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("\n")

    def test_invalid_json(self):
        """Test that malformed JSON reports a line."""
        with pytest.raises(ParseError) as exc_info:
            load_dump("{\n  'lie': true\n}")
        assert exc_info.value.line is not None

    def test_missing_keys(self):
        """Test that a dump without degrees is rejected."""
        with pytest.raises(ParseError):
            load_dump(json.dumps({'group': 'Z', 'labels': []}))

    def test_verify_record(self):
        """Test the verification report layout."""
        record = verify_record({'grading': (True, None), 'jacobi': (False, 'Jacobi fails')})
        assert record['passed'] is False
        assert record['checks']['jacobi'] == {'passed': False, 'message': 'Jacobi fails'}

    def test_census_record(self, z2):
        """Test the census listing layout."""
        params = read_params(fixture_path('m_even_trivial'))
        record = census_record('m-even', z2, 1, [params])
        assert record['count'] == 1
        assert record['classes'] == [emit_params(params)]
