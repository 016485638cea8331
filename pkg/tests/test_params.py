"""
Unit tests for parameter families and model construction.
"""

from dataclasses import fields, replace

import pytest

from abelian import Bicharacter, FiniteSubgroup
from division import exchange_eta_variants
from matrix_algebra import KappaMap
from params import (
    LieParams,
    MEvenParams,
    TypeIParams,
    build_model,
    periplectic_params,
    transport_params,
)
from validation import AdmissibilityError, GradingError


@pytest.mark.unit
class TestAssociativeFamilies:
    """Test tuples without superinvolution."""

    def test_m_even(self, params_loader):
        """Test superdimension, dimension and build of an m-even tuple."""
        params = params_loader('m_even_z')
        assert params.validate() == (True, None)
        assert params.superdimension() == ('M', 3, 1)
        assert params.dimension() == 16
        model = params.build()
        assert model.algebra.name == 'M(3,1)'
        assert model.algebra.dim == 16
        assert model.involution is None

    def test_m_even_empty_kappa(self, z):
        """Test that an empty kappa violates condition 2."""
        T = FiniteSubgroup.trivial(z)
        params = MEvenParams(z, T, Bicharacter.trivial(T), KappaMap(T))
        ok, message = params.validate()
        assert ok is False
        assert message.startswith("condition (2)")

    def test_m_odd(self, params_loader):
        """Test the odd grading on M(1,1)."""
        params = params_loader('m_odd_z2')
        assert params.superdimension() == ('M', 1, 1)
        assert params.build().algebra.dim == 4

    def test_equality(self, params_loader):
        """Test that parsing a document twice gives equal tuples."""
        assert params_loader('m_even_pauli') == params_loader('m_even_pauli')
        assert hash(params_loader('q_z')) == hash(params_loader('q_z'))
        assert params_loader('m_even_pauli') != params_loader('m_even_z')


@pytest.mark.unit
class TestFormFamilies:
    """Test tuples carrying a form and superinvolution."""

    def test_m_star(self, params_loader):
        """Test that the Pauli m-star model carries a superinvolution."""
        params = params_loader('m_star_pauli')
        assert params.superdimension() == ('M', 2, 0)
        model = params.build()
        assert model.algebra.name == 'm-star(2|0)'
        assert model.form.g0 == params.g0
        assert model.involution.check() == (True, None)

    def test_mex_odd_eta_table(self, params_loader):
        """Test the eta of the odd exchange realization with an even parity element."""
        params = params_loader('mex_odd')
        assert params.spec.case == 'b'
        eta = params.division.eta
        G = params.group
        plus = [(0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 3, 1)]
        minus = [(1, 1, 1), (0, 2, 0), (0, 3, 1), (1, 2, 0)]
        for a, b, p in plus:
            assert eta(G.sharp((a, b), p)) == 1
        for a, b, p in minus:
            assert eta(G.sharp((a, b), p)) == -1

    def test_mex_odd_eta_variants(self, params_loader):
        """Test that the even parity element case yields two distinct etas."""
        variants = exchange_eta_variants(params_loader('mex_odd').spec)
        assert len(variants) == 2
        assert variants[0].key() != variants[1].key()

    def test_exchange_builds(self, params_loader):
        """Test the even and odd exchange models."""
        for name in ('mex_even', 'mex_odd', 'qex_z4'):
            model = params_loader(name).build()
            assert model.involution.check() == (True, None)

    def test_periplectic_params(self, z):
        """Test that kappa1 is paired with kappa0 under g0 = (h0, 1)."""
        T = FiniteSubgroup.trivial(z)
        kappa0 = KappaMap(T, [(z.sharp((0,)), 3)])
        params = periplectic_params(z, T, Bicharacter.trivial(T), kappa0, z.element((0,)))
        assert params.g0 == z.sharp((0,), 1)
        assert str(params.kappa) == '(0;0)*3 (0;1)*3'
        assert params.superdimension() == ('M', 3, 3)
        assert params.validate() == (True, None)

    def test_inadmissible(self, params_loader):
        """Test that an unpaired kappa is reported as condition 3."""
        params = params_loader('osp_1_2').inner
        T = params.subgroup
        z = params.group
        broken = replace(params, kappa=KappaMap(T, [(z.sharp((0,)), 1), (z.sharp((1,), 1), 1)]))
        ok, message = broken.validate()
        assert ok is False
        assert message.startswith("condition (3)")
        with pytest.raises(AdmissibilityError):
            broken.build()

    def test_normalized_moves_eta(self, params_loader):
        """Test that an eta override is moved to the standard eta."""
        params = params_loader('m_star_pauli')
        T = params.subgroup
        a = T.generators[0]
        twisted = params.division.eta.twisted(a, params.beta_tilde())
        overridden = replace(params, eta=twisted)
        assert overridden.validate() == (True, None)
        normal = overridden.normalized()
        assert normal.eta is None
        assert normal.g0 == a.inverse() * params.g0
        assert normal.validate() == (True, None)

    def test_transport(self, params_loader):
        """Test the shift action on an orthosymplectic tuple."""
        params = params_loader('osp_1_2')
        z = params.group
        moved = transport_params(params, z.element((1,)))
        assert moved.inner.g0 == z.sharp((-2,))
        assert str(moved.inner.kappa) == '(1;0)*1 (0;1)*1 (2;1)*1'


@pytest.mark.unit
class TestTypeIAndLie:
    """Test exchange pairs and Lie wrappers."""

    def test_type_i(self, params_loader):
        """Test the S x S^sop model of an m-even tuple."""
        params = params_loader('type_i_m_even')
        model = params.build()
        assert model.algebra.dim == 2 * params.inner.dimension()
        assert model.involution.kind == 'exchange'
        assert model.involution.check() == (True, None)

    def test_type_i_rejects_form_family(self, params_loader):
        """Test that a Type I pair cannot wrap an m-star tuple."""
        with pytest.raises(GradingError):
            TypeIParams(params_loader('m_star_pauli')).check()

    def test_subtypes(self, params_loader):
        """Test subtypes of series A gradings."""
        params = params_loader('a2_mex_even')
        assert params.subtype() == 'II_osp'
        assert params.inner_family() == 'mex-even'
        odd = replace(params, inner=replace(params.inner, g0=params.group.sharp((0,), 1)))
        assert odd.subtype() == 'II_P'
        assert params_loader('a1_sl_2_1').subtype() == 'I_M'
        assert params_loader('osp_1_2').subtype() is None

    def test_lie_g0_parity(self, params_loader):
        """Test that osp needs an even g0 and p an odd one."""
        osp = params_loader('osp_1_2')
        p = params_loader('p_2')
        with pytest.raises(AdmissibilityError):
            LieParams('osp', p.inner).check()
        with pytest.raises(AdmissibilityError):
            LieParams('p', osp.inner).check()

    def test_lie_wrong_wrap(self, params_loader):
        """Test that a Lie tag rejects the wrong associative family."""
        with pytest.raises(GradingError):
            LieParams('a-2', params_loader('m_star_pauli')).check()
        with pytest.raises(GradingError):
            LieParams('nope', params_loader('m_star_pauli')).check()

    def test_build_model_of_lie_tuple(self, params_loader):
        """Test that build_model returns the associative model of a Lie tuple."""
        model = build_model(params_loader('osp_1_2'))
        assert model.algebra.dim == 9
        assert model.involution.check() == (True, None)

    def test_lie_params_fields(self, params_loader):
        """Test that a Lie tuple is built from its tag and inner tuple alone."""
        assert [f.name for f in fields(LieParams)] == ['family', 'inner']
        osp = params_loader('osp_1_2')
        assert LieParams('osp', osp.inner) == osp
        assert LieParams(family='p', inner=params_loader('p_2').inner).family == 'p'
