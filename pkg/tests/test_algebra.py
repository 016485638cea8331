"""
Unit tests for sparse graded algebras and simplicity tests.
"""

from itertools import product

import pytest

from abelian import FinAbGroup, FiniteSubgroup, Bicharacter
from algebra import GradedAlgebra, is_graded_simple, is_simple_superalgebra
from cyclo import ONE, Cyclo
from conftest import division_sweep, fixture_names, load_params, twisted_group_division
from division import build_standard_Q, verify_division
from forms import row_transport
from linalg import sparse_add
from matrix_algebra import ElementaryGradingSpec, GradedMatrixSuperalgebra, KappaMap, elementary_grading
from params import LieParams, build_model
from validation import GradingError


def matrix_algebra(group, degrees):
    return elementary_grading(ElementaryGradingSpec(group, degrees))


def group_algebra_z2():
    """F Z2 with the nontrivial element in degree (1;0)."""
    G = FinAbGroup([2])
    table = {
        (0, 0): {0: ONE},
        (0, 1): {1: ONE},
        (1, 0): {1: ONE},
        (1, 1): {0: ONE},
    }
    return GradedAlgebra(G, ['1', 'x'], [G.sharp((0,)), G.sharp((1,))], table, {0: ONE}, 'FZ2')


def queer_one():
    G = FinAbGroup(())
    tplus = FiniteSubgroup.trivial(G)
    return build_standard_Q(tplus, Bicharacter.trivial(tplus), G.identity()).as_algebra()


@pytest.mark.unit
class TestGradedAlgebra:
    """Test construction and basic structure."""

    def test_length_mismatch(self, z2):
        """Test that labels and degrees must have the same length."""
        with pytest.raises(GradingError):
            GradedAlgebra(z2, ['a'], [], {})

    def test_matrix_algebra_checks(self, trivial_group):
        """Test that M2(F) passes the grading, associativity and unit checks."""
        A = matrix_algebra(trivial_group, [trivial_group.sharp(()), trivial_group.sharp(())])
        assert A.dim == 4
        assert A.check_grading() == (True, None)
        assert A.check_associativity() == (True, None)
        assert A.check_unit() == (True, None)

    def test_components(self, z2):
        """Test components, support and fingerprint."""
        A = matrix_algebra(z2, [z2.sharp((0,)), z2.sharp((1,), 1)])
        comps = A.components()
        assert len(comps[z2.sharp((0,))]) == 2
        assert A.component_dim(z2.sharp((1,), 1)) == 2
        assert A.component_dim(z2.element((1,))) == 2
        assert A.support() == [z2.sharp((0,)), z2.sharp((1,), 1)]
        assert A.fingerprint() == (((0, 0), 2), ((1, 1), 2))

    def test_corrupted_table_fails(self, trivial_group):
        """Test that a non-associative table is detected."""
        e = trivial_group.sharp(())
        A = GradedAlgebra(trivial_group, ['a', 'b'], [e, e],
                          {(0, 0): {1: ONE}, (0, 1): {0: ONE}})
        ok, message = A.check_associativity()
        assert ok is False
        assert "Associativity fails" in message

    def test_grading_violation(self, z2):
        """Test that a product in the wrong degree is detected."""
        A = GradedAlgebra(z2, ['a', 'b'], [z2.sharp((1,)), z2.sharp((1,))],
                          {(0, 0): {1: ONE}})
        ok, message = A.check_grading()
        assert ok is False
        assert "expected (0;0)" in message

    def test_supercommutator(self):
        """Test [u, u] = 2 for the odd unit of Q(1)."""
        Q = queer_one()
        assert Q.supercommutator({1: ONE}, {1: ONE}) == {0: Cyclo.rational(2)}

    def test_supercommutator_needs_homogeneous(self):
        """Test that mixed parities are rejected."""
        Q = queer_one()
        with pytest.raises(GradingError):
            Q.supercommutator({0: ONE, 1: ONE}, {0: ONE})


@pytest.mark.unit
class TestConstructions:
    """Test superopposite, products and centres."""

    def test_superopposite_sign(self):
        """Test that u-bar squared is -1 in the superopposite of Q(1)."""
        op = queer_one().superopposite()
        assert op.multiply({1: ONE}, {1: ONE}) == {0: Cyclo.rational(-1)}
        assert op.name.endswith('^sop')

    def test_center_and_supercenter(self):
        """Test that Q(1) has a 2-dimensional centre and 1-dimensional supercentre."""
        Q = queer_one()
        assert len(Q.center()) == 2
        assert len(Q.supercenter()) == 1

    def test_direct_product(self, trivial_group):
        """Test the direct product and its unit."""
        e = trivial_group.sharp(())
        A = matrix_algebra(trivial_group, [e, e])
        B = A.direct_product(A)
        assert B.dim == 8
        assert B.check_unit() == (True, None)
        assert len(B.ideal_generated([{0: ONE}])) == 4

    def test_direct_product_group_mismatch(self, z2, z4):
        """Test that factors must share the grading group."""
        A = matrix_algebra(z2, [z2.sharp((0,))])
        B = matrix_algebra(z4, [z4.sharp((0,))])
        with pytest.raises(GradingError):
            A.direct_product(B)

    def test_radical(self, trivial_group):
        """Test that F[x]/(x^2) is not semisimple."""
        e = trivial_group.sharp(())
        A = GradedAlgebra(trivial_group, ['1', 'x'], [e, e],
                          {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}}, {0: ONE})
        assert len(A.trace_form_radical()) == 1
        assert not A.is_semisimple()
        assert not is_graded_simple(A)

    def test_left_multiplication(self):
        """Test the matrix of left multiplication by u in Q(1)."""
        L = queer_one().left_multiplication({1: ONE})
        assert L == [[0, 1], [1, 0]]


@pytest.mark.unit
class TestSimplicity:
    """Test graded simplicity and division checks."""

    def test_matrix_algebra_is_simple(self, trivial_group):
        """Test that M2(F) is graded-simple."""
        e = trivial_group.sharp(())
        assert is_graded_simple(matrix_algebra(trivial_group, [e, e]))

    def test_sum_of_matrix_algebras_not_simple(self, trivial_group):
        """Test that M2 + M2 with the trivial grading is not graded-simple."""
        e = trivial_group.sharp(())
        A = matrix_algebra(trivial_group, [e, e])
        assert not is_graded_simple(A.direct_product(A))

    def test_matrix_algebra_is_not_division(self, trivial_group):
        """Test that M2(F) with the trivial grading is not graded-division."""
        e = trivial_group.sharp(())
        assert verify_division(matrix_algebra(trivial_group, [e, e])) is False

    def test_group_algebra(self):
        """Test that FZ2 is graded-division and graded-simple but not simple."""
        A = group_algebra_z2()
        assert verify_division(A) is True
        assert is_graded_simple(A)
        assert not is_simple_superalgebra(A)

    def test_queer_one_is_simple(self):
        """Test that Q(1) is a simple superalgebra."""
        Q = queer_one()
        assert verify_division(Q)
        assert is_simple_superalgebra(Q)

    def test_zero_product(self, trivial_group):
        """Test that an algebra with zero product is not simple."""
        e = trivial_group.sharp(())
        A = GradedAlgebra(trivial_group, ['a'], [e], {})
        assert not is_graded_simple(A)


def proper_ideal_found(algebra, width):
    """
    Look for a homogeneous element generating a proper ideal: every {-1, 0, 1}
    combination inside components of dimension <= width, basis vectors elsewhere.
    """
    for indices in algebra.components().values():
        if len(indices) <= width:
            choices = product((0, 1, -1), repeat=len(indices))
        else:
            choices = (tuple(int(i == k) for i in range(len(indices))) for k in range(len(indices)))
        for coefficients in choices:
            v = {idx: Cyclo.rational(c) for idx, c in zip(indices, coefficients) if c}
            if v and len(algebra.ideal_generated([v])) < algebra.dim:
                return True
    return False


def simple_by_ideals(algebra, width=2):
    return bool(algebra.table) and not proper_ideal_found(algebra, width)


def associative_fixtures(max_dim=16):
    found = []
    for name in fixture_names():
        params = load_params(name)
        if isinstance(params, LieParams):
            continue
        algebra = build_model(params).algebra
        if algebra.dim <= max_dim:
            found.append((name, algebra))
    return found


def trivially_graded_group_algebra():
    """F Z2 with both basis elements in the identity degree."""
    G = FinAbGroup([2])
    e = G.sharp((0,))
    table = {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}, (1, 1): {0: ONE}}
    return GradedAlgebra(G, ['1', 'x'], [e, e], table, {0: ONE}, 'FZ2')


@pytest.mark.slow
class TestSimplicityAgainstIdeals:
    """Test graded simplicity against a search for proper ideals."""

    def test_fixture_models(self):
        """Test the associative fixture models and their products with themselves."""
        models = associative_fixtures()
        assert len(models) >= 10
        for name, algebra in models:
            assert is_graded_simple(algebra) == simple_by_ideals(algebra), name
        name, algebra = models[0]
        pair = algebra.direct_product(algebra)
        assert not is_graded_simple(pair)
        assert not simple_by_ideals(pair)

    def test_division_sweep(self):
        """Test twisted group superalgebras with their grading and with parity only."""
        for T, beta_tilde in division_sweep():
            A = twisted_group_division(T, beta_tilde).as_algebra()
            assert is_graded_simple(A) == simple_by_ideals(A, width=4)
            regraded = A.regraded_by_parity()
            assert is_graded_simple(regraded) == simple_by_ideals(regraded, width=4)

    def test_hidden_idempotent(self):
        """Test an ideal that no basis vector generates."""
        A = trivially_graded_group_algebra()
        assert all(len(A.ideal_generated([{i: ONE}])) == 2 for i in range(2))
        assert not is_graded_simple(A)
        assert not simple_by_ideals(A)

    def test_zero_product(self, trivial_group):
        """Test that an algebra with zero product fails both."""
        e = trivial_group.sharp(())
        A = GradedAlgebra(trivial_group, ['a'], [e], {})
        assert not is_graded_simple(A)
        assert not simple_by_ideals(A)


@pytest.mark.unit
class TestOddDivisionRows:
    """Test rows over an odd division part, whose parity is absorbed by X_t."""

    @pytest.mark.parametrize('name', ['m_odd_z4', 'm_odd_z2', 'q_trivial', 'q_odd_unit'])
    def test_parity_swap(self, name):
        """Test that flipping the parity of one row gives the same algebra."""
        model = build_model(load_params(name))
        algebra = model.algebra
        division = algebra.division
        assert division.is_odd()
        odd = next(t for t in division.support.elements if t.parity)
        degrees = list(algebra.gamma.degrees)
        degrees[-1] = degrees[-1] * odd
        swapped = GradedMatrixSuperalgebra(ElementaryGradingSpec(algebra.group, degrees), division)

        subgroup = division.support
        assert (KappaMap(subgroup, [(d, 1) for d in degrees]).entries
                == KappaMap(subgroup, [(d, 1) for d in algebra.gamma.degrees]).entries)
        assert swapped.fingerprint() == algebra.fingerprint()
        assert is_graded_simple(swapped)

        identity = algebra.group.identity()
        images, rows = row_transport(algebra, swapped, identity)
        assert rows == list(range(algebra.size))
        for a in range(algebra.dim):
            assert all(swapped.degrees[k] == algebra.degrees[a] for k in images[a])
            for b in range(algebra.dim):
                left = {}
                for k, c in algebra.basis_product(a, b).items():
                    left = sparse_add(left, images[k], c)
                assert left == swapped.multiply(images[a], images[b])
