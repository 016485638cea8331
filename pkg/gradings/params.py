"""
Grading parameters for every family and construction of their models.

Associative families:
    m-even    Gamma_M(T, beta, kappa0, kappa1)     even grading on M(m, n)
    m-odd     Gamma_M(T, beta~, kappa)             odd grading on M(n, n)
    q         Gamma_Q(T+, beta+, h, kappa)         grading on Q(n)
    m-star    M*(T, beta, kappa, g0)               M(m, n) with superinvolution
    mex-even  Mex(T, beta, kappa, g0)              M x M^sop, even D
    mex-odd   Mex(T, beta~, t_p, kappa, g0)        M x M^sop, odd D
    qex       Qex(T+, beta+, h, kappa, g0)         Q x Q^sop
    type-i    S x S^sop with S graded by an m-even, m-odd or q tuple

For m-even and m-star the pair (kappa0, kappa1) is stored as a single
KappaMap over G#/T whose cosets carry their parity. Lie families wrap
one of the associative tuples (see LieParams).
"""

import logging
from dataclasses import dataclass, replace
from functools import cached_property
from math import isqrt
from typing import Optional

import config
from abelian import (
    Bicharacter,
    FinAbGroup,
    FiniteSubgroup,
    GroupElement,
    GSharpElement,
    as_sharp,
)
from division import (
    EtaMap,
    ExchangeDivisionSpec,
    build_exchange_division,
    build_standard_M,
    build_standard_Q,
    qex_spec,
)
from forms import (
    InertiaQuadruple,
    admissibility_violation,
    build_exchange_pair,
    build_form,
    superadjunction,
)
from matrix_algebra import (
    GradedMatrixSuperalgebra,
    KappaMap,
    build_M_even,
    build_M_odd,
    build_Q,
)
from validation import AdmissibilityError, GradingError

logger = logging.getLogger('gradings.params')


@dataclass
class Model:
    """A constructed algebra, with its superinvolution when the family has one."""

    algebra: object
    involution: object = None
    form: object = None
    division: object = None


def bicharacter_key(b):
    """Values of b as exponents over the exponent of its subgroup."""
    n = b.subgroup.exponent()
    return tuple(tuple(k * n // b.order for k in row) for row in b.exponents)


def queer_support(tplus, h):
    """T = T+ u (h, 1) T+."""
    return FiniteSubgroup(tplus.group, list(tplus.generators) + [GSharpElement(as_sharp(h).element, 1)])


def _g0_key(g0):
    return None if g0 is None else as_sharp(g0).key()


class GradingParams:
    """Common behaviour of the parameter families."""

    has_form = False

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(other) is type(self) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def validate(self):
        """
        Check the family's structural and admissibility conditions.

        Returns:
            Tuple of (is_valid, error_message)
        """
        try:
            self.check()
        except GradingError as e:
            return False, str(e)
        return True, None

    def check(self):
        """Raise AdmissibilityError when the tuple is not admissible."""
        self.division

    def degree(self):
        """Size k of the matrix model, |kappa|."""
        return self.kappa.size

    def dimension(self):
        """Dimension of the associative model."""
        return self.degree() ** 2 * self.division.support.order

    def normalized(self):
        return self


# Gradings without superinvolution

@dataclass(frozen=True, eq=False)
class MEvenParams(GradingParams):
    group: FinAbGroup
    subgroup: FiniteSubgroup
    beta: Bicharacter
    kappa: KappaMap

    family = 'm-even'

    @cached_property
    def division(self):
        if not self.subgroup.is_even():
            raise AdmissibilityError("the even grading needs an even support", condition='type M')
        return build_standard_M(self.subgroup, self.beta)

    def check(self):
        self.division
        if self.kappa.is_empty():
            raise AdmissibilityError("kappa is empty", condition=2)
        if self.kappa.subgroup != self.subgroup:
            raise AdmissibilityError("kappa is not defined over T", condition=2)

    def build(self):
        self.check()
        algebra = build_M_even(self.subgroup, self.beta, self.kappa.parity_part(0),
                               self.kappa.parity_part(1))
        return Model(algebra, division=self.division)

    def superdimension(self):
        r = isqrt(self.subgroup.order)
        return ('M', self.kappa.parity_part(0).size * r, self.kappa.parity_part(1).size * r)

    def key(self):
        return (self.family, self.subgroup.elements, bicharacter_key(self.beta), self.kappa.key())


@dataclass(frozen=True, eq=False)
class MOddParams(GradingParams):
    group: FinAbGroup
    subgroup: FiniteSubgroup
    beta_tilde: Bicharacter
    kappa: KappaMap

    family = 'm-odd'

    @cached_property
    def division(self):
        if self.subgroup.is_even():
            raise AdmissibilityError("the odd grading needs an odd support", condition='type M')
        return build_standard_M(self.subgroup, self.beta_tilde.parity_twist())

    def check(self):
        self.division
        if self.kappa.is_empty():
            raise AdmissibilityError("kappa is empty", condition=2)
        if self.kappa.subgroup != self.subgroup:
            raise AdmissibilityError("kappa is not defined over T", condition=2)

    def build(self):
        self.check()
        return Model(build_M_odd(self.subgroup, self.beta_tilde, self.kappa), division=self.division)

    def superdimension(self):
        n = self.kappa.size * isqrt(self.subgroup.order) // 2
        return ('M', n, n)

    def key(self):
        return (self.family, self.subgroup.elements, bicharacter_key(self.beta_tilde), self.kappa.key())


@dataclass(frozen=True, eq=False)
class QParams(GradingParams):
    group: FinAbGroup
    tplus: FiniteSubgroup
    beta_plus: Bicharacter
    h: GroupElement
    kappa: KappaMap

    family = 'q'

    @cached_property
    def division(self):
        return build_standard_Q(self.tplus, self.beta_plus, self.h)

    @property
    def support(self):
        return queer_support(self.tplus, self.h)

    def check(self):
        self.division
        if self.kappa.is_empty():
            raise AdmissibilityError("kappa is empty", condition=2)
        if self.kappa.subgroup != self.support:
            raise AdmissibilityError("kappa is not defined over T+ u (h,1)T+", condition=2)

    def build(self):
        self.check()
        return Model(build_Q(self.tplus, self.beta_plus, self.h, self.kappa), division=self.division)

    def superdimension(self):
        n = self.kappa.size * isqrt(self.tplus.order)
        return ('Q', n, n)

    def key(self):
        return (self.family, self.tplus.elements, bicharacter_key(self.beta_plus),
                self.h.key(), self.kappa.key())


# Gradings with superinvolution

class _FormParams(GradingParams):
    """Families built as M_k(D) with the superadjunction of a form of degree g0."""

    has_form = True

    def _standard_eta(self):
        return self.division.eta

    def beta_tilde(self):
        return self.division.beta_tilde_bicharacter

    def check_eta(self):
        """Conditions on an eta override beyond d(eta) = beta~."""
        if self.eta.subgroup != self.division.support:
            raise AdmissibilityError("eta is not defined on T", condition=1)
        is_valid, error = self.eta.check(self.beta_tilde())
        if not is_valid:
            raise AdmissibilityError(error, condition=1)

    def active_eta(self):
        return self.eta if self.eta is not None else self._standard_eta()

    def inertia(self):
        return InertiaQuadruple(self.active_eta(), self.kappa, as_sharp(self.g0), 1)

    def check(self):
        D = self.division
        if self.eta is not None:
            self.check_eta()
        if D.is_odd() and as_sharp(self.g0).parity:
            raise AdmissibilityError("g0 must be even over an odd division algebra",
                                     condition='odd form')
        found = admissibility_violation(D.support, self.beta_tilde(), self.inertia())
        if found is not None:
            condition, message = found
            raise AdmissibilityError(message, condition=condition)

    def build(self):
        self.check()
        D = self.division
        eta = self.active_eta()
        phi = build_form(D, self.kappa, self.g0, eta)
        algebra = GradedMatrixSuperalgebra(phi.gamma, D, self.model_name())
        involution = superadjunction(algebra, phi, eta)
        logger.info(f"Built {algebra.name} with form of degree {as_sharp(self.g0)}, dim={algebra.dim}")
        return Model(algebra, involution, phi, D)

    def model_name(self):
        kind, m, n = self.superdimension()
        return f"{self.family}({m}|{n})"

    def normalized(self):
        """
        Equivalent tuple using the standard eta of D.

        The T-action moves the override to the standard eta; a resulting
        delta of -1 is absorbed by shifting kappa with the odd unit.
        """
        if self.eta is None:
            return self
        self.check()
        T = self.division.support
        standard = self._standard_eta()
        bt = self.beta_tilde()
        target = {s: self.eta(s) * standard(s) for s in T.elements}
        for t in T.elements:
            if all(bt.sign(t, s) == target[s] for s in T.elements):
                break
        else:
            raise AdmissibilityError("eta differs from the standard one by no inner twist",
                                     condition=1)
        g0 = t.inverse() * as_sharp(self.g0)
        kappa = self.kappa
        if (-1) ** t.parity * standard(t) == -1:
            kappa = kappa.shift(GSharpElement(self.group.identity(), 1))
        return replace(self, kappa=kappa, g0=self._coerce_g0(g0), eta=None)

    def _coerce_g0(self, g0):
        return g0

    def key(self):
        eta_key = None if self.eta is None else self.eta.key()
        return self._key() + (_g0_key(self.g0), eta_key)


@dataclass(frozen=True, eq=False)
class MStarParams(_FormParams):
    group: FinAbGroup
    subgroup: FiniteSubgroup
    beta: Bicharacter
    kappa: KappaMap
    g0: GSharpElement
    eta: Optional[EtaMap] = None

    family = 'm-star'

    @cached_property
    def division(self):
        T = self.subgroup
        if not T.is_even() or not T.is_elementary_two():
            raise AdmissibilityError("T must be an even elementary 2-group", condition='type M*')
        if not self.beta.is_sign_valued():
            raise AdmissibilityError("beta must take values +1/-1", condition='type M*')
        return build_standard_M(T, self.beta)

    def superdimension(self):
        r = isqrt(self.subgroup.order)
        return ('M', self.kappa.parity_part(0).size * r, self.kappa.parity_part(1).size * r)

    def _key(self):
        return (self.family, self.subgroup.elements, bicharacter_key(self.beta), self.kappa.key())


@dataclass(frozen=True, eq=False)
class MexEvenParams(_FormParams):
    group: FinAbGroup
    subgroup: FiniteSubgroup
    beta: Bicharacter
    kappa: KappaMap
    g0: GSharpElement
    eta: Optional[EtaMap] = None

    family = 'mex-even'

    @cached_property
    def spec(self):
        if not self.subgroup.is_even():
            raise AdmissibilityError("even exchange type needs an even support", condition='type Mex')
        return ExchangeDivisionSpec(self.subgroup, self.beta, self.subgroup.identity())

    @cached_property
    def division(self):
        return build_exchange_division(self.spec)

    @property
    def f(self):
        return self.spec.f

    def check_eta(self):
        super().check_eta()
        if self.eta(self.f) != -1:
            raise AdmissibilityError("eta(f) must be -1", condition=1)

    def superdimension(self):
        r = isqrt(self.subgroup.order // 2)
        return ('M', self.kappa.parity_part(0).size * r, self.kappa.parity_part(1).size * r)

    def _key(self):
        return (self.family, self.subgroup.elements, bicharacter_key(self.beta), self.kappa.key())


@dataclass(frozen=True, eq=False)
class MexOddParams(_FormParams):
    group: FinAbGroup
    subgroup: FiniteSubgroup
    beta_tilde_map: Bicharacter
    tp: GSharpElement
    kappa: KappaMap
    g0: GSharpElement
    eta: Optional[EtaMap] = None

    family = 'mex-odd'

    @cached_property
    def spec(self):
        if self.subgroup.is_even():
            raise AdmissibilityError("odd exchange type needs an odd support", condition='type Mex')
        if as_sharp(self.tp).parity:
            raise AdmissibilityError("an odd parity element gives type Qex", condition='type Mex')
        return ExchangeDivisionSpec(self.subgroup, self.beta_tilde_map, self.tp)

    @cached_property
    def division(self):
        return build_exchange_division(self.spec)

    @property
    def f(self):
        return self.spec.f

    def check_eta(self):
        super().check_eta()
        if self.eta(self.f) != -1 or self.eta(self.tp) != 1:
            raise AdmissibilityError("eta must satisfy eta(f) = -1 and eta(t_p) = 1", condition=1)

    def superdimension(self):
        n = self.kappa.size * isqrt(self.subgroup.order // 8)
        return ('M', n, n)

    def _key(self):
        return (self.family, self.subgroup.elements, bicharacter_key(self.beta_tilde_map),
                as_sharp(self.tp).key(), self.kappa.key())


@dataclass(frozen=True, eq=False)
class QexParams(_FormParams):
    group: FinAbGroup
    tplus: FiniteSubgroup
    beta_plus: Bicharacter
    h: GroupElement
    kappa: KappaMap
    g0: GSharpElement
    eta: Optional[EtaMap] = None

    family = 'qex'

    @cached_property
    def spec(self):
        return qex_spec(self.tplus, self.beta_plus, self.h)

    @cached_property
    def division(self):
        return build_exchange_division(self.spec)

    @property
    def support(self):
        return queer_support(self.tplus, self.h)

    @property
    def tp(self):
        return self.spec.tp

    @property
    def f(self):
        return self.spec.f

    def check_eta(self):
        super().check_eta()
        if self.eta(self.f) != -1 or self.eta(self.tp) != 1:
            raise AdmissibilityError("eta must satisfy eta(f) = -1 and eta(t_p) = 1", condition=1)

    def superdimension(self):
        n = self.kappa.size * isqrt(self.support.order // 4)
        return ('Q', n, n)

    def _key(self):
        return (self.family, self.tplus.elements, bicharacter_key(self.beta_plus),
                self.h.key(), self.kappa.key())


@dataclass(frozen=True, eq=False)
class TypeIParams(GradingParams):
    """S x S^sop with the exchange superinvolution, S graded by `inner`."""

    inner: GradingParams

    family = 'type-i'
    has_form = True

    @property
    def group(self):
        return self.inner.group

    @property
    def kappa(self):
        return self.inner.kappa

    @property
    def division(self):
        return self.inner.division

    def check(self):
        if self.inner.family not in ('m-even', 'm-odd', 'q'):
            raise GradingError(f"Type I pairs need an m-even, m-odd or q tuple, got {self.inner.family}")
        self.inner.check()

    def build(self):
        self.check()
        S = self.inner.build().algebra
        algebra, involution = build_exchange_pair(S)
        return Model(algebra, involution, division=self.inner.division)

    def dimension(self):
        return self.inner.dimension()

    def superdimension(self):
        return self.inner.superdimension()

    def key(self):
        return (self.family,) + self.inner.key()


LIE_TAGS = ('osp', 'p', 'q-lie-1', 'q-lie-2', 'a-1', 'a-2')


@dataclass(frozen=True, eq=False)
class LieParams(GradingParams):
    """
    Grading on a simple Lie superalgebra given by associative parameters.

    osp      m-star with even g0         Skew(R)
    p        m-star with g0 = (h0, 1)    Skew(R)^(1)
    q-lie-1  type-i over q               Q^(-)(1) / centre
    q-lie-2  qex                         Skew(R)^(1) / centre
    a-1      type-i over m-even, m-odd   S^(-)(1) / centre
    a-2      mex-even, mex-odd           Skew(R)^(1) / centre
    """

    family: str
    inner: GradingParams

    @property
    def group(self):
        return self.inner.group

    def check(self):
        tag, inner = self.family, self.inner
        expected = {
            'osp': ('m-star',),
            'p': ('m-star',),
            'q-lie-1': ('type-i',),
            'q-lie-2': ('qex',),
            'a-1': ('type-i',),
            'a-2': ('mex-even', 'mex-odd'),
        }.get(tag)
        if expected is None:
            raise GradingError(f"Unknown Lie family '{tag}'")
        if inner.family not in expected:
            raise GradingError(f"Lie family {tag} cannot wrap {inner.family} parameters")
        if tag in ('q-lie-1', 'a-1') and inner.inner.family not in config.INNER_FAMILIES[tag]:
            raise GradingError(f"Lie family {tag} cannot wrap {inner.inner.family} parameters")
        if tag == 'osp' and as_sharp(inner.g0).parity:
            raise AdmissibilityError("osp needs an even g0", condition='osp')
        if tag == 'p' and not as_sharp(inner.g0).parity:
            raise AdmissibilityError("the periplectic series needs an odd g0", condition='p')
        inner.check()

    def inner_family(self):
        """Associative family tag written in documents (a-1, a-2, q-lie-1)."""
        if self.family in ('a-1', 'q-lie-1'):
            return self.inner.inner.family
        if self.family == 'a-2':
            return self.inner.family
        return None

    def subtype(self):
        """Subtype of a series A grading: I_M, I_Q, II_osp, II_P or II_Q."""
        if self.family == 'a-1':
            return 'I_M' if self.inner.inner.family == 'm-even' else 'I_Q'
        if self.family == 'a-2':
            if self.inner.family == 'mex-odd':
                return 'II_Q'
            return 'II_P' if as_sharp(self.inner.g0).parity else 'II_osp'
        return None

    def dimension(self):
        return self.inner.dimension()

    def superdimension(self):
        return self.inner.superdimension()

    def normalized(self):
        inner = self.inner.normalized()
        return self if inner is self.inner else replace(self, inner=inner)

    def key(self):
        return ('lie', self.family) + self.inner.key()


def periplectic_params(group, subgroup, beta, kappa0, h0, eta=None):
    """m-star tuple of P(T, beta, kappa0, h0): g0 = (h0, 1), kappa1 paired with kappa0."""
    g0 = GSharpElement(h0, 1)
    kappa = kappa0.union(kappa0.paired(g0))
    return MStarParams(group, subgroup, beta, kappa, g0, eta)


def build_model(params):
    """
    Build the associative model of any tuple (the inner one for Lie tags).

    Raises:
        AdmissibilityError: if the tuple is not admissible
    """
    if isinstance(params, LieParams):
        params.check()
        return params.inner.build()
    return params.build()


def transport_params(params, g, branch='same'):
    """
    Apply the isomorphism action to a tuple.

    Args:
        params: GradingParams without an eta override
        g: Shift element (GSharpElement for m-even and type-i over m-even,
           GroupElement otherwise)
        branch: 'same', 'swap', 'inverse' or 'inverse-swap'

    Returns:
        The transported tuple
    """
    if isinstance(params, LieParams):
        return replace(params, inner=transport_params(params.inner, g, branch))
    if getattr(params, 'eta', None) is not None:
        raise GradingError("Normalize tuples with an eta override before transporting")

    family = params.family
    if family == 'm-even':
        return replace(params, kappa=params.kappa.shift(g))
    if family in ('m-odd', 'q'):
        return replace(params, kappa=params.kappa.shift(g))
    if family in ('m-star', 'mex-odd', 'qex'):
        g = as_sharp(g)
        return replace(params, kappa=params.kappa.shift(g), g0=as_sharp(params.g0) * (g * g).inverse())
    if family == 'mex-even':
        g = as_sharp(g)
        g0 = as_sharp(params.g0) * (g * g).inverse()
        if branch == 'swap':
            g = GSharpElement(g.element, 1)
            g0 = params.f * g0
        return replace(params, kappa=params.kappa.shift(g), g0=g0)
    if family == 'type-i':
        inner = params.inner
        if branch.startswith('inverse'):
            inner = _inverted(inner)
        return replace(params, inner=transport_params(inner, g))
    raise GradingError(f"No transport for family {family}")


def _inverted(inner):
    """(beta^-1, kappa*) for the inner tuple of a Type I pair."""
    if inner.family == 'm-even':
        return replace(inner, beta=inner.beta.inverse(), kappa=inner.kappa.star())
    if inner.family == 'm-odd':
        return replace(inner, beta_tilde=inner.beta_tilde.inverse(), kappa=inner.kappa.star())
    return replace(inner, beta_plus=inner.beta_plus.inverse(), kappa=inner.kappa.star())
