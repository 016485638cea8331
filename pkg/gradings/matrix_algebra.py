"""
Graded matrix superalgebras M_k(D) and the grading models of type M and Q.

A grading on a simple associative superalgebra is described by a
graded-division algebra D with support T and a multiset kappa of cosets
of T in G#. The model is M_k(D), k = |kappa|, with the elementary
grading given by a tuple gamma that realizes kappa.
"""

import logging

from abelian import Coset, FiniteSubgroup, GSharpElement, as_sharp
from algebra import GradedAlgebra, is_graded_simple, is_simple_superalgebra, sign
from cyclo import ONE, ZERO
from division import (
    EtaMap,
    GradedDivisionAlgebra,
    Monomial,
    build_standard_M,
    build_standard_Q,
)
from validation import AdmissibilityError, GradingError, validate_multiplicity

logger = logging.getLogger('gradings.matrix_algebra')

__all__ = [
    'KappaMap',
    'ElementaryGradingSpec',
    'GradedMatrixSuperalgebra',
    'elementary_grading',
    'matrix_over_division',
    'kronecker_graded',
    'build_M_even',
    'build_M_odd',
    'build_Q',
    'component_dim',
    'is_graded_simple',
    'is_simple_superalgebra',
    'trivial_division',
]


class KappaMap:
    """
    Finite multiset of cosets of T in G#.

    Args:
        subgroup: FiniteSubgroup T
        entries: Iterable of (Coset or element, multiplicity); repeated
            cosets are merged

    Raises:
        GradingError: on a non-positive multiplicity or a coset of
            another subgroup
    """

    def __init__(self, subgroup, entries=()):
        self.subgroup = subgroup
        merged = {}
        for x, mult in entries:
            is_valid, error = validate_multiplicity(mult)
            if not is_valid:
                raise GradingError(error)
            if isinstance(x, Coset):
                if x.subgroup != subgroup:
                    raise GradingError(f"Coset {x} is not a coset of {subgroup}")
                coset = x
            else:
                coset = Coset.of(x, subgroup)
            merged[coset] = merged.get(coset, 0) + mult
        self.entries = tuple(sorted(merged.items(), key=lambda item: item[0].key()))

    @classmethod
    def from_entries(cls, subgroup, mapping):
        """Build from a dict coset-or-element -> multiplicity."""
        return cls(subgroup, mapping.items())

    @property
    def size(self):
        return sum(mult for _, mult in self.entries)

    def __len__(self):
        return self.size

    def is_empty(self):
        return not self.entries

    def support(self):
        return [coset for coset, _ in self.entries]

    def multiplicity(self, x):
        coset = x if isinstance(x, Coset) else Coset.of(x, self.subgroup)
        return dict(self.entries).get(coset, 0)

    def shift(self, g):
        """Left translate: (g kappa)(x) = kappa(g^-1 x)."""
        return KappaMap(self.subgroup, [(c.shift(g), m) for c, m in self.entries])

    def star(self):
        """kappa*(x) = kappa(x^-1)."""
        return KappaMap(self.subgroup, [(c.inverse(), m) for c, m in self.entries])

    def paired(self, g0):
        """The multiset x -> kappa(g0^-1 x^-1)."""
        g0 = as_sharp(g0)
        return KappaMap(
            self.subgroup,
            [(Coset.of(g0.inverse() * c.rep.inverse(), self.subgroup), m) for c, m in self.entries]
        )

    def parity_part(self, parity):
        """Entries whose coset has the given parity (T even only)."""
        if not self.subgroup.is_even():
            raise GradingError("Cosets of an odd support have no parity")
        return KappaMap(self.subgroup, [(c, m) for c, m in self.entries if c.parity == parity])

    def union(self, other):
        if other.subgroup != self.subgroup:
            raise GradingError("Cannot merge multisets over different subgroups")
        return KappaMap(self.subgroup, list(self.entries) + list(other.entries))

    def realize(self):
        """Canonical tuple of degrees: cosets in order, each repeated by multiplicity."""
        return tuple(c.rep for c, m in self.entries for _ in range(m))

    def key(self):
        return tuple((c.key(), m) for c, m in self.entries)

    def __eq__(self, other):
        return isinstance(other, KappaMap) and self.subgroup == other.subgroup and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        return ' '.join(f"{c.rep}*{m}" for c, m in self.entries)

    def __repr__(self):
        return f"KappaMap({self})"


class ElementaryGradingSpec:
    """
    Tuple gamma = (g_1, ..., g_k) of G#-degrees.

    Args:
        group: Ambient FinAbGroup G
        degrees: Sequence of GSharpElements (GroupElements count as even)
    """

    def __init__(self, group, degrees):
        self.group = group
        self.degrees = tuple(as_sharp(d) for d in degrees)
        for d in self.degrees:
            if d.group != group:
                raise GradingError(f"Degree {d} is not in {group}")

    @classmethod
    def from_kappa(cls, kappa):
        return cls(kappa.subgroup.group, kappa.realize())

    @classmethod
    def from_split(cls, group, even, odd):
        """Tuple (gamma_0, gamma_1) of G-elements with the given parities."""
        degrees = [GSharpElement(g, 0) for g in even] + [GSharpElement(g, 1) for g in odd]
        return cls(group, degrees)

    def __len__(self):
        return len(self.degrees)

    @property
    def even(self):
        return tuple(d.element for d in self.degrees if d.parity == 0)

    @property
    def odd(self):
        return tuple(d.element for d in self.degrees if d.parity == 1)

    def realizes(self, kappa):
        """Check that each coset of kappa appears exactly its multiplicity times."""
        counts = {}
        for d in self.degrees:
            c = Coset.of(d, kappa.subgroup)
            counts[c] = counts.get(c, 0) + 1
        return counts == dict(kappa.entries)


def trivial_division(group):
    """The ground field as a graded-division algebra with trivial support."""
    support = FiniteSubgroup.trivial(group)
    e = support.identity()
    division = GradedDivisionAlgebra(
        support, {(e, e): ONE}, EtaMap.trivial(support), {e: Monomial.identity(1)}, [0],
        'M', 'F'
    )
    division.parity_element = e
    return division


class GradedMatrixSuperalgebra(GradedAlgebra):
    """
    M_k(D) with basis E_ij X_t sorted by (i, j, t) and elementary grading
    deg(E_ij X_t) = g_i t g_j^-1.

    Args:
        gamma: ElementaryGradingSpec of length k
        division: GradedDivisionAlgebra D
        name: Human readable name
    """

    def __init__(self, gamma, division, name=''):
        if division.group != gamma.group:
            raise GradingError("Tuple and division algebra live in different groups")
        self.gamma = gamma
        self.division = division
        k = len(gamma)
        g = gamma.degrees
        T = division.support.elements

        self.entries = [(i, j, t) for i in range(k) for j in range(k) for t in T]
        self.position = {entry: n for n, entry in enumerate(self.entries)}
        scalar = division.support.order == 1
        labels = [
            f"E({i + 1},{j + 1})" if scalar else f"E({i + 1},{j + 1})X{t}"
            for i, j, t in self.entries
        ]
        degrees = [g[i] * t * g[j].inverse() for i, j, t in self.entries]

        table = {}
        for a, (i, j, t) in enumerate(self.entries):
            for l in range(k):
                for s in T:
                    ts, c = division.product(t, s)
                    table[(a, self.position[(j, l, s)])] = {self.position[(i, l, ts)]: c}
        e = division.support.identity()
        unit = {self.position[(i, i, e)]: ONE for i in range(k)}

        super().__init__(gamma.group, labels, degrees, table, unit, name or f"M{k}({division.name})")
        if division.matrices is not None:
            self.supertrace_values = [
                sign(g[i].parity) * division.supertrace(t) if i == j else ZERO
                for i, j, t in self.entries
            ]

    @property
    def size(self):
        return len(self.gamma)

    def basis_index(self, i, j, t):
        return self.position[(i, j, as_sharp(t))]

    def parity_of_row(self, i):
        return self.gamma.degrees[i].parity


def elementary_grading(gamma, k=None):
    """
    M_k(F) with deg E_ij = g_i g_j^-1.

    Args:
        gamma: ElementaryGradingSpec
        k: Optional expected size

    Raises:
        GradingError: if k is given and differs from the length of gamma
    """
    if k is not None and k != len(gamma):
        raise GradingError(f"Tuple of length {len(gamma)} does not grade M_{k}")
    if len(gamma) == 0:
        raise GradingError("Elementary grading needs a nonempty tuple")
    return GradedMatrixSuperalgebra(gamma, trivial_division(gamma.group))


def matrix_over_division(gamma, division, name=''):
    return GradedMatrixSuperalgebra(gamma, division, name)


def kronecker_graded(Mk, division):
    """M_k(F) (x) D, identified with M_k(D) graded by g_i deg(X_t) g_j^-1."""
    if not isinstance(Mk, GradedMatrixSuperalgebra) or Mk.division.support.order != 1:
        raise GradingError("Left factor must be an elementary grading on M_k(F)")
    return GradedMatrixSuperalgebra(Mk.gamma, division)


def build_M_even(subgroup, beta, kappa0, kappa1):
    """
    The even grading of type M.

    Args:
        subgroup: Even FiniteSubgroup T
        beta: Alternating nondegenerate bicharacter on T
        kappa0: KappaMap over T for the even part
        kappa1: KappaMap over T for the odd part

    Returns:
        GradedMatrixSuperalgebra modelling M(m, n)

    Raises:
        AdmissibilityError: if T is odd, beta is degenerate, or both
            multisets are empty
    """
    if not subgroup.is_even():
        raise AdmissibilityError("the even grading needs an even support", condition='type M')
    if kappa0.is_empty() and kappa1.is_empty():
        raise AdmissibilityError("kappa0 and kappa1 are both empty", condition=2)
    for kappa in (kappa0, kappa1):
        if kappa.subgroup != subgroup:
            raise AdmissibilityError("kappa is not defined over T", condition=2)

    division = build_standard_M(subgroup, beta)
    degrees = [GSharpElement(d.element, 0) for d in kappa0.realize()]
    degrees += [GSharpElement(d.element, 1) for d in kappa1.realize()]
    gamma = ElementaryGradingSpec(subgroup.group, degrees)

    r = division.model_size
    name = f"M({kappa0.size * r},{kappa1.size * r})"
    algebra = GradedMatrixSuperalgebra(gamma, division, name)
    logger.info(f"Built {name} over |T|={subgroup.order}, dim={algebra.dim}")
    return algebra


def build_M_odd(subgroup, beta_tilde, kappa):
    """
    The odd grading of type M; the basis is taken even.

    Raises:
        AdmissibilityError: if T is even, beta_tilde is degenerate, or
            kappa is empty
    """
    if subgroup.is_even():
        raise AdmissibilityError("the odd grading needs an odd support", condition='type M')
    if kappa.is_empty():
        raise AdmissibilityError("kappa is empty", condition=2)
    if kappa.subgroup != subgroup:
        raise AdmissibilityError("kappa is not defined over T", condition=2)

    division = build_standard_M(subgroup, beta_tilde.parity_twist())
    gamma = ElementaryGradingSpec.from_kappa(kappa)
    n = kappa.size * division.model_size // 2
    algebra = GradedMatrixSuperalgebra(gamma, division, f"M({n},{n})")
    logger.info(f"Built M({n},{n}) with odd support |T|={subgroup.order}, dim={algebra.dim}")
    return algebra


def build_Q(tplus, beta_plus, h, kappa):
    """
    The grading of type Q: M_k(D) with D = Q(1) (x) D0, deg u = (h, 1).

    Args:
        tplus: Even FiniteSubgroup T+
        beta_plus: Alternating nondegenerate bicharacter on T+
        h: GroupElement with h^2 = e
        kappa: KappaMap over the support T = T+ u (h,1)T+ of D

    Raises:
        AdmissibilityError: if h^2 != e, beta_plus is degenerate, or
            kappa is empty or over the wrong subgroup
    """
    division = build_standard_Q(tplus, beta_plus, h)
    if kappa.is_empty():
        raise AdmissibilityError("kappa is empty", condition=2)
    if kappa.subgroup != division.support:
        raise AdmissibilityError("kappa is not defined over T+ u (h,1)T+", condition=2)

    gamma = ElementaryGradingSpec.from_kappa(kappa)
    n = kappa.size * (division.model_size // 2)
    algebra = GradedMatrixSuperalgebra(gamma, division, f"Q({n})")
    logger.info(f"Built Q({n}) over |T+|={tplus.order}, dim={algebra.dim}")
    return algebra


def component_dim(algebra, g):
    """Number of basis vectors of degree g (G# or G)."""
    return algebra.component_dim(g)
