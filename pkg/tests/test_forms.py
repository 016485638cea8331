"""
Unit tests for forms, inertia, admissibility and superinvolutions.
"""

import random
from dataclasses import replace

import pytest

from abelian import Bicharacter, FiniteSubgroup
from algebra import is_graded_simple
from conftest import load_params
from cyclo import ONE, Cyclo
from division import EtaMap
from forms import (
    InertiaQuadruple,
    PhiMatrix,
    act_T_Gsharp,
    bar_form,
    build_exchange_pair,
    build_form,
    check_admissible,
    is_involution_simple,
    is_super_hermitian,
    intertwining_transport,
    kappa_star,
    mu_x,
    row_transport,
    superadjunction,
    supertranspose,
)
from matrix_algebra import (
    ElementaryGradingSpec,
    GradedMatrixSuperalgebra,
    KappaMap,
    elementary_grading,
    trivial_division,
)
from linalg import sparse_add
from params import build_model, transport_params
from validation import AdmissibilityError, GradingError

MINUS = Cyclo.rational(-1)


def plain_form(group, parities, entries):
    """Form over the ground field with module degrees (0;p)."""
    gamma = ElementaryGradingSpec(group, [group.sharp((0,) * group.rank, p) for p in parities])
    e = group.sharp((0,) * group.rank)
    return PhiMatrix(gamma, {key: (e, c) for key, c in entries.items()}, e)


def trivial_inertia(group, kappa_entries, g0, delta=1):
    T = FiniteSubgroup.trivial(group)
    kappa = KappaMap(T, kappa_entries)
    return T, InertiaQuadruple(EtaMap.trivial(T), kappa, g0, delta)


def random_inertia(rng, group):
    """Admissible (kappa, g0) over the trivial support with |kappa| <= 4."""
    T = FiniteSubgroup.trivial(group)
    g0 = group.sharp((rng.randint(-2, 2),), rng.randint(0, 1))
    entries = []
    for _ in range(rng.randint(1, 2)):
        x = group.sharp((rng.randint(-3, 3),), rng.randint(0, 1))
        y = g0.inverse() * x.inverse()
        entries += [(x, 1), (y, 1)]
    return KappaMap(T, entries), g0


@pytest.mark.unit
class TestSupertranspose:
    """Test the supertranspose of scalar matrices."""

    def test_one_odd_index(self):
        """Test [[1,2],[3,4]] with parities (0,1)."""
        result = supertranspose([[1, 2], [3, 4]], [0, 1])
        assert result == [[1, -3], [2, 4]]

    def test_twice_negates_odd_block(self):
        """Test that applying it twice negates the off-diagonal blocks."""
        once = supertranspose([[0, 1], [0, 0]], [0, 1])
        assert supertranspose(once, [0, 1]) == [[0, -1], [0, 0]]

    def test_parity_length(self):
        """Test that the parity list must match the size."""
        with pytest.raises(GradingError):
            supertranspose([[1]], [0, 1])


@pytest.mark.unit
class TestHermitianForms:
    """Test bar forms and the super-Hermitian sign."""

    def test_even_skew_form(self, z):
        """Test that [[0,1],[-1,0]] on an even basis is skew."""
        phi = plain_form(z, [0, 0], {(0, 1): ONE, (1, 0): MINUS})
        eta = EtaMap.trivial(FiniteSubgroup.trivial(z))
        assert is_super_hermitian(phi, eta) == -1

    def test_odd_skew_form(self, z):
        """Test that the same matrix on an odd basis is super-Hermitian."""
        phi = plain_form(z, [1, 1], {(0, 1): ONE, (1, 0): MINUS})
        eta = EtaMap.trivial(FiniteSubgroup.trivial(z))
        assert is_super_hermitian(phi, eta) == 1

    def test_neither(self, z):
        """Test a form that is neither Hermitian nor skew."""
        phi = plain_form(z, [0, 0], {(0, 1): ONE, (1, 0): Cyclo.rational(2)})
        eta = EtaMap.trivial(FiniteSubgroup.trivial(z))
        assert is_super_hermitian(phi, eta) is None
        assert bar_form(phi, eta).entry(0, 1)[1] == 2

    def test_phi_helpers(self, z):
        """Test degree checks, monomiality and parity reversal."""
        phi = plain_form(z, [0, 0], {(0, 1): ONE, (1, 0): MINUS})
        assert phi.check_degrees() == (True, None)
        assert phi.is_monomial()
        reversed_phi = phi.parity_reversed()
        assert reversed_phi.delta == -1
        assert reversed_phi.parity(0) == 1
        assert len(phi.triplets()) == 2
        moved = phi.left_multiplied(trivial_division(z), z.sharp((0,)))
        assert moved == phi


@pytest.mark.unit
class TestAdmissibility:
    """Test mu signs and the admissibility conditions."""

    def test_mu_signs(self, z):
        """Test mu on even and odd self-paired cosets."""
        T = FiniteSubgroup.trivial(z)
        eta = EtaMap.trivial(T)
        g0 = z.sharp((0,))
        assert mu_x(eta, g0, T.coset(z.sharp((0,))), 1) == 1
        assert mu_x(eta, g0, T.coset(z.sharp((0,), 1)), 1) == -1
        assert mu_x(eta, g0, T.coset(z.sharp((0,), 1)), -1) == 1

    def test_mu_needs_self_paired(self, z):
        """Test that mu is undefined off self-paired cosets."""
        T = FiniteSubgroup.trivial(z)
        with pytest.raises(AdmissibilityError) as exc_info:
            mu_x(EtaMap.trivial(T), z.sharp((0,)), T.coset(z.sharp((1,))), 1)
        assert exc_info.value.condition == 4

    def test_admissible(self, z):
        """Test the inertia of osp(1|2)."""
        T, q = trivial_inertia(z, [(z.sharp((0,)), 1), (z.sharp((1,), 1), 1),
                                   (z.sharp((-1,), 1), 1)], z.sharp((0,)))
        assert check_admissible(T, Bicharacter.trivial(T), q) == (True, None)

    def test_unpaired_multiplicity(self, z):
        """Test that condition 3 catches an unpaired coset."""
        T, q = trivial_inertia(z, [(z.sharp((0,)), 1), (z.sharp((1,), 1), 1)], z.sharp((0,)))
        ok, message = check_admissible(T, Bicharacter.trivial(T), q)
        assert ok is False
        assert message.startswith("condition (3)")

    def test_odd_multiplicity_on_negative_mu(self, z):
        """Test that condition 4 needs an even multiplicity when mu = -1."""
        T, q = trivial_inertia(z, [(z.sharp((0,), 1), 1)], z.sharp((0,)))
        ok, message = check_admissible(T, Bicharacter.trivial(T), q)
        assert ok is False
        assert message.startswith("condition (4)")

    def test_eta_condition(self, pauli, z2z2):
        """Test that condition 1 catches d(eta) != beta~."""
        T, beta = pauli
        kappa = KappaMap(T, [(z2z2.sharp((0, 0)), 1)])
        q = InertiaQuadruple(EtaMap.trivial(T), kappa, z2z2.sharp((0, 0)))
        ok, message = check_admissible(T, beta, q)
        assert ok is False
        assert message.startswith("condition (1)")

    def test_odd_shift_action(self, z):
        """Test that an odd g flips delta and shifts kappa."""
        T, q = trivial_inertia(z, [(z.sharp((0,)), 1)], z.sharp((0,)))
        moved = act_T_Gsharp(q, Bicharacter.trivial(T), g=z.sharp((1,), 1))
        assert moved.delta == -1
        assert str(moved.kappa) == '(1;1)*1'
        assert moved.g0 == z.sharp((-2,))

    def test_t_action(self, pauli, z2z2):
        """Test that the T-action twists eta and moves g0."""
        T, beta = pauli
        a, b = T.generators
        eta = EtaMap.from_generator_values(T, beta, {a: 1, b: 1})
        q = InertiaQuadruple(eta, KappaMap(T, [(z2z2.sharp((0, 0)), 1)]), z2z2.sharp((0, 0)))
        moved = act_T_Gsharp(q, beta, t=a * b)
        assert moved.g0 == a * b
        assert moved.delta == eta(a * b)
        assert moved.eta.check(beta) == (True, None)

    def test_combined_action(self, pauli, z2z2):
        """Test that t and g given by keyword act as either composite."""
        T, beta = pauli
        a, b = T.generators
        eta = EtaMap.from_generator_values(T, beta, {a: 1, b: 1})
        q = InertiaQuadruple(eta, KappaMap(T, [(z2z2.sharp((0, 0)), 1)]), z2z2.sharp((0, 0)))
        g = z2z2.sharp((1, 0), 1)
        both = act_T_Gsharp(q=q, beta_tilde=beta, g=g, t=a)
        assert both.key() == act_T_Gsharp(act_T_Gsharp(q, beta, g=g), beta, t=a).key()
        assert both.key() == act_T_Gsharp(act_T_Gsharp(q, beta, t=a), beta, g=g).key()
        assert both.delta == -eta(a)
        assert act_T_Gsharp(q, beta).key() == q.key()

    def test_kappa_star(self, z):
        """Test inversion of kappa."""
        T = FiniteSubgroup.trivial(z)
        assert str(kappa_star(KappaMap(T, [(z.sharp((2,), 1), 1)]))) == '(-2;1)*1'


@pytest.mark.unit
class TestBuildForm:
    """Test canonical forms and their superadjunctions."""

    def test_orthosymplectic_form(self, z):
        """Test Phi = diag(1, [[0,1],[-1,0]]) for osp(1|2)."""
        T = FiniteSubgroup.trivial(z)
        kappa = KappaMap(T, [(z.sharp((0,)), 1), (z.sharp((-1,), 1), 1), (z.sharp((1,), 1), 1)])
        phi = build_form(trivial_division(z), kappa, z.sharp((0,)))
        e = z.sharp((0,))
        assert phi.entries == {(0, 0): (e, ONE), (1, 2): (e, ONE), (2, 1): (e, MINUS)}

    def test_periplectic_form(self, z):
        """Test Phi = [[0, I], [I, 0]] for an odd form."""
        T = FiniteSubgroup.trivial(z)
        kappa = KappaMap(T, [(z.sharp((0,)), 3), (z.sharp((0,), 1), 3)])
        phi = build_form(trivial_division(z), kappa, z.sharp((0,), 1))
        assert len(phi.entries) == 6
        for i in range(3):
            assert phi.entry(i, 3 + i)[1] == 1
            assert phi.entry(3 + i, i)[1] == 1
        assert is_super_hermitian(phi, EtaMap.trivial(T)) == 1

    def test_inadmissible_form(self, z):
        """Test that build_form reports the violated condition."""
        T = FiniteSubgroup.trivial(z)
        kappa = KappaMap(T, [(z.sharp((0,)), 1), (z.sharp((1,), 1), 1)])
        with pytest.raises(AdmissibilityError) as exc_info:
            build_form(trivial_division(z), kappa, z.sharp((0,)))
        assert exc_info.value.condition == 3

    def test_superadjunction(self, z):
        """Test that the superadjunction of the osp(1|2) form is a superinvolution."""
        T = FiniteSubgroup.trivial(z)
        kappa = KappaMap(T, [(z.sharp((0,)), 1), (z.sharp((-1,), 1), 1), (z.sharp((1,), 1), 1)])
        D = trivial_division(z)
        phi = build_form(D, kappa, z.sharp((0,)))
        R = GradedMatrixSuperalgebra(phi.gamma, D)
        involution = superadjunction(R, phi)
        assert involution.check() == (True, None)
        assert len(involution.matrix()) == 9

    def test_superadjunction_needs_matching_degrees(self, z):
        """Test that the form and the algebra must share module degrees."""
        phi = plain_form(z, [0, 0], {(0, 1): ONE, (1, 0): MINUS})
        R = elementary_grading(ElementaryGradingSpec(z, [z.sharp((0,)), z.sharp((0,), 1)]))
        with pytest.raises(GradingError):
            superadjunction(R, phi)


@pytest.mark.unit
class TestExchangePair:
    """Test S x S^sop with the exchange superinvolution."""

    def test_exchange_pair(self, trivial_group):
        """Test that the exchange map is a superinvolution and the pair is involution-simple."""
        S = elementary_grading(ElementaryGradingSpec(trivial_group, [trivial_group.sharp(())]))
        pair, involution = build_exchange_pair(S)
        assert pair.dim == 2
        assert involution.kind == 'exchange'
        assert involution.check() == (True, None)
        assert involution.matrix() == [[0, 1], [1, 0]]
        assert is_involution_simple(pair, involution)
        assert not is_graded_simple(pair)


@pytest.mark.slow
class TestSuperinvolutionSweep:
    """Randomized check that admissible forms give superinvolutions."""

    @pytest.mark.parametrize('seed', range(12))
    def test_random_forms(self, seed, z):
        """Test super-Hermitian forms and their superadjunctions on random inertia."""
        rng = random.Random(seed)
        kappa, g0 = random_inertia(rng, z)
        delta = rng.choice([1, -1])
        D = trivial_division(z)
        phi = build_form(D, kappa, g0, delta=delta)
        assert is_super_hermitian(phi, D.eta) == delta
        R = GradedMatrixSuperalgebra(phi.gamma, D)
        assert superadjunction(R, phi).check() == (True, None)


SWEEP_SOURCES = (
    'm_star_trivial', 'm_star_odd_form', 'm_star_pauli', 'm_star_z4',
    'mex_even', 'mex_even_odd_form', 'mex_odd', 'qex_z4',
    'osp_1_2', 'osp_2_2', 'osp_3_2', 'osp_eta', 'p_2', 'p_2_graded', 'q_lie_2', 'a2_mex_even',
)


def _shifts(group):
    if group.is_finite():
        return group.sharp_elements()
    return [group.sharp((k,), p) for k in range(-10, 11) for p in (0, 1)]


def sweep_configurations():
    """Valid shifts and eta twists of the form-carrying fixtures, keyed by tuple."""
    found = {}
    for name in SWEEP_SOURCES:
        base = load_params(name)
        base = getattr(base, 'inner', base).normalized()
        for g in _shifts(base.group):
            moved = transport_params(base, g)
            if not moved.validate()[0]:
                continue
            found[moved.key()] = moved
            T = moved.division.support
            if T.order == 1:
                continue
            for t in T.elements:
                twisted = replace(moved, eta=moved.active_eta().twisted(t, moved.beta_tilde()))
                if twisted.validate()[0]:
                    found[twisted.key()] = twisted
    return list(found.values())


@pytest.mark.slow
class TestFormFamilySweep:
    """Superinvolutions of shifted and eta-twisted m-star, mex and qex tuples."""

    def test_configurations(self):
        """Test every configuration against the superinvolution axioms."""
        configurations = sweep_configurations()
        assert len(configurations) >= 100
        families = {p.family for p in configurations}
        assert families == {'m-star', 'mex-even', 'mex-odd', 'qex'}
        assert any(p.eta is not None and p.division.support.order > 1 for p in configurations)
        for p in configurations:
            model = p.build()
            involution = model.involution
            assert is_super_hermitian(model.form, involution.eta) == 1
            assert involution.preserves_degrees()
            assert involution.is_super_anti_automorphism()
            assert involution.is_involution()
            assert involution.check() == (True, None)


@pytest.mark.unit
class TestNonHermitianForms:
    """Forms that are not super-Hermitian give no superinvolution."""

    def test_plain_form(self, z):
        """Test the adjunction of [[0,1],[2,0]] on an even basis."""
        phi = plain_form(z, [0, 0], {(0, 1): ONE, (1, 0): Cyclo.rational(2)})
        D = trivial_division(z)
        R = GradedMatrixSuperalgebra(phi.gamma, D)
        assert is_super_hermitian(phi, D.eta) is None
        involution = superadjunction(R, phi)
        assert involution.is_super_anti_automorphism()
        assert not involution.is_involution()
        is_valid, error = involution.check()
        assert is_valid is False
        assert "involution" in error

    @pytest.mark.parametrize('name', ['osp_1_2', 'osp_2_2', 'm_star_odd_form', 'p_2_graded'])
    def test_scaled_entry(self, name):
        """Test that doubling one off-diagonal entry of a built form breaks the involution."""
        params = load_params(name)
        model = getattr(params, 'inner', params).build()
        phi = model.form
        (i, j), (t, c) = next((key, value) for key, value in sorted(phi.entries.items())
                              if key[0] != key[1])
        entries = dict(phi.entries)
        entries[(i, j)] = (t, c * 2)
        skewed = PhiMatrix(phi.gamma, entries, phi.g0, phi.delta)
        eta = model.involution.eta
        assert is_super_hermitian(skewed, eta) is None
        involution = superadjunction(model.algebra, skewed, eta)
        assert not involution.is_involution()
        assert involution.check()[0] is False


def _image(images, v):
    result = {}
    for k, c in v.items():
        result = sparse_add(result, images[k], c)
    return result


def _is_graded_homomorphism(algebra, target, images):
    for a in range(algebra.dim):
        if any(target.degrees[k] != algebra.degrees[a] for k in images[a]):
            return False
        for b in range(algebra.dim):
            left = _image(images, algebra.basis_product(a, b))
            if left != target.multiply(images[a], images[b]):
                return False
    return True


@pytest.mark.unit
class TestModuleTransport:
    """Test the model isomorphisms induced by shifting the graded module."""

    @pytest.mark.parametrize('name,coords,parity', [
        ('m_even_z', (1,), 0),
        ('m_even_z', (-2,), 1),
        ('m_odd_z4', (1,), 0),
        ('m_odd_z4', (3,), 0),
        ('q_trivial', (1,), 0),
    ])
    def test_row_transport(self, name, coords, parity):
        """Test that a row transport is a graded isomorphism onto the shifted model."""
        params = load_params(name)
        group = params.group
        g = group.sharp(coords, parity) if name == 'm_even_z' else group.element(coords)
        algebra = build_model(params).algebra
        target = build_model(transport_params(params, g)).algebra
        images, rows = row_transport(algebra, target, g)
        assert sorted(rows) == list(range(algebra.size))
        assert all(len(image) == 1 for image in images)
        assert len({next(iter(image)) for image in images}) == algebra.dim
        assert _is_graded_homomorphism(algebra, target, images)

    def test_size_mismatch(self):
        """Test that models of different sizes are rejected."""
        algebra = build_model(load_params('m_even_z')).algebra
        other = build_model(load_params('m_even_trivial')).algebra
        with pytest.raises(GradingError):
            row_transport(algebra, other, algebra.group.element((1,)))

    @pytest.mark.parametrize('name,shifts', [
        ('osp_1_2', [1, -1, 2, -3]),
        ('osp_2_2', [1, -2]),
        ('m_star_z4', [1, 2, 3]),
    ])
    def test_intertwining(self, name, shifts):
        """Test that the rescaled transport carries phi to the shifted phi."""
        params = load_params(name)
        inner = getattr(params, 'inner', params)
        source = build_model(inner)
        for k in shifts:
            g = inner.group.element((k,))
            target = build_model(transport_params(inner, g))
            images = intertwining_transport(source.algebra, source.involution,
                                            target.algebra, target.involution, g)
            assert _is_graded_homomorphism(source.algebra, target.algebra, images)
            for a in range(source.algebra.dim):
                left = _image(images, source.involution.images[a])
                assert left == target.involution.apply(images[a])
