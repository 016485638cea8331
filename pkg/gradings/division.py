"""
Graded-division superalgebras and their standard realizations.

A GradedDivisionAlgebra is stored by its support T (a finite subgroup
of G#) and a cocycle table with X_t X_s = sigma(t, s) X_ts. Types M and
Q also keep a concrete monomial matrix model; exchange types
(M x M^op, Q x Q^op) are assembled as C (x) M with C one of three small
superalgebras carrying an exchange superinvolution.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property

from abelian import (
    Bicharacter,
    FiniteSubgroup,
    GSharpElement,
    as_sharp,
    duality_decomposition,
    parity_elements,
    radical,
)
from algebra import GradedAlgebra, sign
from cyclo import ONE, ZERO, Cyclo, root_exponent
from linalg import matmul, rank
from validation import AdmissibilityError, GradingError

logger = logging.getLogger('gradings.division')

MINUS_ONE = Cyclo.coerce(-1)


class Monomial:
    """
    Monomial matrix: column j is values[j] times the unit vector perm[j].
    """

    __slots__ = ('perm', 'values')

    def __init__(self, perm, values):
        self.perm = tuple(perm)
        self.values = tuple(values)

    @classmethod
    def identity(cls, n):
        return cls(range(n), [ONE] * n)

    @property
    def size(self):
        return len(self.perm)

    def __matmul__(self, other):
        perm = [self.perm[other.perm[j]] for j in range(other.size)]
        values = [other.values[j] * self.values[other.perm[j]] for j in range(other.size)]
        return Monomial(perm, values)

    def transpose(self):
        perm = [0] * self.size
        values = [ZERO] * self.size
        for j, (i, v) in enumerate(zip(self.perm, self.values)):
            perm[i] = j
            values[i] = v
        return Monomial(perm, values)

    def ratio(self, other):
        """Scalar c with self == c * other, or None."""
        if self.perm != other.perm:
            return None
        c = self.values[0] / other.values[0]
        if any(a != c * b for a, b in zip(self.values, other.values)):
            return None
        return c

    def dense(self):
        rows = [[ZERO] * self.size for _ in range(self.size)]
        for j, (i, v) in enumerate(zip(self.perm, self.values)):
            rows[i][j] = v
        return rows

    def supertrace(self, parities):
        total = ZERO
        for j, (i, v) in enumerate(zip(self.perm, self.values)):
            if i == j:
                total = total + sign(parities[j]) * v
        return total


class EtaMap:
    """
    Sign map eta: T -> {+1, -1} recording phi(X_t) = eta(t) X_t.

    Args:
        subgroup: FiniteSubgroup T
        table: Map element -> +1 / -1
    """

    def __init__(self, subgroup, table):
        self.subgroup = subgroup
        self.table = {as_sharp(t): int(v) for t, v in table.items()}
        if set(self.table) != set(subgroup.elements):
            raise GradingError("Eta table must cover the whole support")

    @classmethod
    def trivial(cls, subgroup):
        return cls(subgroup, {t: 1 for t in subgroup.elements})

    @classmethod
    def from_generator_values(cls, subgroup, beta_tilde, values):
        """
        Extend values on generators by eta(ab) = beta_tilde(a, b) eta(a) eta(b).

        Args:
            subgroup: FiniteSubgroup T
            beta_tilde: Bicharacter on T
            values: Map generator -> +1 / -1

        Raises:
            AdmissibilityError: if the extension is inconsistent
        """
        table = {subgroup.identity(): 1}
        frontier = [subgroup.identity()]
        gens = [(as_sharp(g), v) for g, v in values.items()]
        while frontier:
            nxt = []
            for x in frontier:
                for g, v in gens:
                    y = x * g
                    if y not in table:
                        table[y] = beta_tilde.sign(x, g) * table[x] * v
                        nxt.append(y)
            frontier = nxt
        eta = cls(subgroup, table)
        is_valid, error = eta.check(beta_tilde)
        if not is_valid:
            raise AdmissibilityError(error, condition=1)
        return eta

    def __call__(self, t):
        return self.table[as_sharp(t)]

    def check(self, beta_tilde):
        """
        Check d(eta) = beta_tilde.

        Returns:
            Tuple of (is_valid, error_message)
        """
        elements = self.subgroup.elements
        if self(self.subgroup.identity()) != 1:
            return False, "eta(e) must be 1"
        for a in elements:
            for b in elements:
                if self(a * b) != beta_tilde.sign(a, b) * self(a) * self(b):
                    return False, f"eta({a}{b}) != beta~({a},{b}) eta({a}) eta({b})"
        return True, None

    def twisted(self, t, beta_tilde):
        """The map beta_tilde(t, .) eta."""
        return EtaMap(self.subgroup, {s: beta_tilde.sign(t, s) * v for s, v in self.table.items()})

    def key(self):
        return tuple(self.table[t] for t in self.subgroup.elements)

    def __eq__(self, other):
        return isinstance(other, EtaMap) and self.subgroup == other.subgroup and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"EtaMap({', '.join(f'{t}:{v:+d}' for t, v in sorted(self.table.items()))})"


class GradedDivisionAlgebra:
    """
    Graded-division superalgebra with basis X_t, t in T.

    Args:
        support: FiniteSubgroup T of G#
        cocycle: Map (t, s) -> Cyclo with X_t X_s = sigma(t, s) X_ts
        eta: Optional EtaMap of a degree-preserving superinvolution
        matrices: Optional map t -> Monomial (concrete model)
        row_parities: Parities of the model's basis vectors
        kind: 'M', 'Q' or 'exchange'
        name: Human readable name
    """

    def __init__(self, support, cocycle, eta=None, matrices=None, row_parities=None,
                 kind='M', name=''):
        self.support = support
        self.cocycle = cocycle
        self.eta = eta
        self.matrices = matrices
        self.row_parities = row_parities
        self.kind = kind
        self.name = name
        self.parity_element = None

    @property
    def group(self):
        return self.support.group

    @property
    def dim(self):
        return self.support.order

    def is_odd(self):
        return not self.support.is_even()

    def sigma(self, t, s):
        return self.cocycle[(as_sharp(t), as_sharp(s))]

    def product(self, t, s):
        """X_t X_s as (degree, coefficient)."""
        t, s = as_sharp(t), as_sharp(s)
        return t * s, self.cocycle[(t, s)]

    def inverse(self, t):
        """X_t^{-1} as (degree, coefficient)."""
        t = as_sharp(t)
        return t.inverse(), self.cocycle[(t, t.inverse())].inverse()

    def beta(self, t, s):
        return self.sigma(t, s) / self.sigma(s, t)

    def beta_tilde(self, t, s):
        t, s = as_sharp(t), as_sharp(s)
        return sign(t.parity * s.parity) * self.beta(t, s)

    def _bicharacter(self, func):
        n = self.support.exponent()
        if self.is_odd() and n % 2:
            n *= 2

        def exponent(t, s):
            k = root_exponent(func(t, s), n)
            if k is None:
                raise GradingError(f"Commutation factor at ({t},{s}) is not a root of unity")
            return k

        return Bicharacter.from_function(self.support, exponent, n)

    @cached_property
    def beta_bicharacter(self):
        return self._bicharacter(self.beta)

    @cached_property
    def beta_tilde_bicharacter(self):
        return self._bicharacter(self.beta_tilde)

    def check_cocycle(self):
        """
        Check normalization and the associativity identity on all triples.

        Returns:
            Tuple of (is_valid, error_message)
        """
        elements = self.support.elements
        e = self.support.identity()
        for t in elements:
            if self.sigma(e, t) != ONE or self.sigma(t, e) != ONE:
                return False, f"sigma not normalized at {t}"
        for t in elements:
            for s in elements:
                ts = self.sigma(t, s)
                for r in elements:
                    if ts * self.sigma(t * s, r) != self.sigma(s, r) * self.sigma(t, s * r):
                        return False, f"cocycle identity fails at ({t},{s},{r})"
        return True, None

    def supertrace(self, t):
        """Supertrace of X_t in the matrix model (None without a model)."""
        if self.matrices is None:
            return None
        return self.matrices[as_sharp(t)].supertrace(self.row_parities)

    @property
    def model_size(self):
        return None if self.matrices is None else len(self.row_parities)

    def as_algebra(self):
        """The algebra D itself, basis X_t in canonical order."""
        elements = self.support.elements
        index = self.support.index
        table = {}
        for i, t in enumerate(elements):
            for j, s in enumerate(elements):
                table[(i, j)] = {index[t * s]: self.cocycle[(t, s)]}
        unit = {index[self.support.identity()]: ONE}
        algebra = GradedAlgebra(
            self.group, [f"X{t}" for t in elements], list(elements), table, unit,
            self.name or 'D'
        )
        if self.matrices is not None:
            algebra.supertrace_values = [self.supertrace(t) for t in elements]
        return algebra

    def superopposite(self):
        """D^sop: sigma'(t, s) = (-1)^{p(t)p(s)} sigma(s, t)."""
        cocycle = {
            (t, s): sign(t.parity * s.parity) * self.cocycle[(s, t)]
            for (t, s) in self.cocycle
        }
        return GradedDivisionAlgebra(
            self.support, cocycle, None, None, None, self.kind, f"{self.name}^sop"
        )


def _division_from_monomials(support, matrices, row_parities, kind, name, eta=None):
    cocycle = {}
    for t in support.elements:
        for s in support.elements:
            c = (matrices[t] @ matrices[s]).ratio(matrices[t * s])
            if c is None:
                raise GradingError(f"X{t} X{s} is not a multiple of X{t * s}")
            cocycle[(t, s)] = c
    return GradedDivisionAlgebra(support, cocycle, eta, matrices, row_parities, kind, name)


def _eta_from_transpose(division):
    table = {}
    for t, X in division.matrices.items():
        c = X.transpose().ratio(X)
        if c is None or c not in (ONE, MINUS_ONE):
            return None
        table[t] = 1 if c == ONE else -1
    return EtaMap(division.support, table)


def build_standard_M(subgroup, beta):
    """
    Standard realization of type M for (T, beta).

    Args:
        subgroup: FiniteSubgroup T of G# (may contain odd elements)
        beta: Alternating nondegenerate commutation bicharacter on T

    Returns:
        GradedDivisionAlgebra with a monomial matrix model of size sqrt|T|

    Raises:
        AdmissibilityError: if beta is degenerate, or T has odd elements but
            its parity element is odd (type Q)
    """
    if not beta.is_alternating() or not beta.is_nondegenerate():
        raise AdmissibilityError("type M needs an alternating nondegenerate bicharacter",
                                 condition='type M')

    forced = None
    if not subgroup.is_even():
        candidates = parity_elements(subgroup, beta.parity_twist())
        if len(candidates) != 1 or candidates[0].parity:
            raise AdmissibilityError("odd support without an even parity element",
                                     condition='type M')
        forced = candidates[0]

    try:
        A, B = duality_decomposition(subgroup, beta, must_contain=forced)
    except GradingError as e:
        raise AdmissibilityError(str(e), condition='type M')

    b_list = list(B.elements)
    b_index = {b: j for j, b in enumerate(b_list)}
    matrices = {}
    for a in A.elements:
        for b in B.elements:
            perm = [b_index[b * bj] for bj in b_list]
            values = [beta.value(a, b * bj) for bj in b_list]
            matrices[a * b] = Monomial(perm, values)

    row_parities = [b.parity for b in b_list]
    division = _division_from_monomials(subgroup, matrices, row_parities, 'M',
                                        f"M[{subgroup.order}]")
    if subgroup.is_elementary_two() and beta.is_sign_valued():
        division.eta = _eta_from_transpose(division)
    division.parity_element = forced or subgroup.identity()
    logger.debug(f"Standard realization of type M with |T|={subgroup.order}")
    return division


def build_standard_Q(tplus, beta_plus, h):
    """
    Standard realization of type Q: Q(1) (x) D0 with D0 of type M on T+.

    Args:
        tplus: Even FiniteSubgroup T+
        beta_plus: Alternating nondegenerate bicharacter on T+
        h: GroupElement with h^2 = e, the G-degree of the odd unit u

    Raises:
        AdmissibilityError: if h^2 != e or beta_plus is degenerate
    """
    h = as_sharp(h).element
    if not (h * h).is_identity():
        raise AdmissibilityError(f"h = {h} must satisfy h^2 = e", condition='type Q')
    if not tplus.is_even():
        raise AdmissibilityError("T+ must be even", condition='type Q')

    inner = build_standard_M(tplus, beta_plus)
    u = GSharpElement(h, 1)
    support = FiniteSubgroup(tplus.group, list(tplus.generators) + [u])
    k = inner.model_size
    matrices = {}
    for s in tplus.elements:
        X = inner.matrices[s]
        for i in (0, 1):
            perm = [((r + i) % 2) * k + X.perm[j] for r in (0, 1) for j in range(k)]
            values = [X.values[j] for r in (0, 1) for j in range(k)]
            matrices[u ** i * s] = Monomial(perm, values)
    row_parities = [r for r in (0, 1) for _ in range(k)]
    division = _division_from_monomials(support, matrices, row_parities, 'Q',
                                        f"Q[{tplus.order}]")
    logger.debug(f"Standard realization of type Q with |T+|={tplus.order}, h={h}")
    return division


def transpose_eta(subgroup, beta):
    """
    Eta of matrix transposition on the type M standard realization:
    eta(ab) = beta(a, b) for the duality decomposition T = A x B.

    Raises:
        AdmissibilityError: if T is not an elementary 2-group
    """
    if not subgroup.is_elementary_two():
        raise AdmissibilityError("transpose eta needs an elementary 2-group",
                                 condition='type M*')
    A, B = duality_decomposition(subgroup, beta)
    table = {a * b: beta.sign(a, b) for a in A.elements for b in B.elements}
    return EtaMap(subgroup, table)


# Exchange types

@dataclass
class ExchangeDivisionSpec:
    """
    Data of a graded-division superalgebra with a superinvolution whose
    underlying algebra is not simple.

    Args:
        subgroup: Support T in G#
        beta_tilde: Skew-symmetric bicharacter on T
        tp: Chosen parity element
        t1: Optional auxiliary odd element (even nontrivial parity element case)
    """

    subgroup: FiniteSubgroup
    beta_tilde: Bicharacter
    tp: GSharpElement
    t1: GSharpElement = None
    radical_subgroup: FiniteSubgroup = field(init=False, repr=False)

    def __post_init__(self):
        self.tp = as_sharp(self.tp)
        self.radical_subgroup = radical(self.beta_tilde)

    @property
    def f(self):
        nontrivial = [t for t in self.radical_subgroup.elements if not t.is_identity()]
        return nontrivial[0] if len(nontrivial) == 1 else None

    @property
    def case(self):
        if self.tp.is_identity():
            return 'a'
        return 'b' if self.tp.parity == 0 else 'c'

    def validate(self):
        """
        Check the structural conditions on (T, beta~, t_p).

        Returns:
            Tuple of (is_valid, error_message)
        """
        T = self.subgroup
        f = self.f
        if f is None or f.parity:
            return False, "rad beta~ must have order 2 and lie in T+"
        plus = T.even_part()
        if not plus.is_elementary_two():
            return False, "T+ must be an elementary 2-group"
        for t in T.odd_elements():
            if t * t != f:
                return False, f"odd element {t} must square to f"
        if self.tp not in parity_elements(T, self.beta_tilde):
            return False, f"{self.tp} is not a parity element"
        if self.t1 is not None:
            if self.case != 'b' or as_sharp(self.t1).parity != 1:
                return False, "t1 is only used for an even nontrivial parity element"
        return True, None


def qex_spec(tplus, beta_plus, h):
    """
    Exchange data of queer type from (T+, beta+, h) with h^2 = f.

    Returns:
        ExchangeDivisionSpec with t_p = (h, 1)
    """
    h = as_sharp(h).element
    tp = GSharpElement(h, 1)
    support = FiniteSubgroup(tplus.group, list(tplus.generators) + [tp])
    plus_index = tplus.index

    def split(t):
        i = t.parity
        s = t * tp.inverse() ** i
        if s not in plus_index:
            raise AdmissibilityError(f"h^2 must lie in T+", condition='type Qex')
        return s, i

    n = support.exponent()
    half = n // 2

    def exponent(t, s):
        a, i = split(t)
        b, j = split(s)
        k = beta_plus.exponent(a, b) * n // beta_plus.order
        return k + half * i * j

    beta_tilde = Bicharacter.from_function(support, exponent, n)
    return ExchangeDivisionSpec(support, beta_tilde, tp)


class _PairElement:
    """Homogeneous element (x, y-bar) of S x S^sop, S given by small matrices."""

    def __init__(self, first, second, parity):
        self.first = first
        self.second = second
        self.parity = parity

    def __mul__(self, other):
        s = sign(self.parity * other.parity)
        second = [[s * v for v in row] for row in matmul(other.second, self.second)]
        return _PairElement(matmul(self.first, other.first), second, (self.parity + other.parity) % 2)

    def exchanged(self):
        return _PairElement(self.second, self.first, self.parity)

    def ratio(self, other):
        a = [v for row in self.first for v in row] + [v for row in self.second for v in row]
        b = [v for row in other.first for v in row] + [v for row in other.second for v in row]
        pivot = next(i for i, v in enumerate(b) if v)
        c = a[pivot] / b[pivot]
        if any(x != c * y for x, y in zip(a, b)):
            return None
        return c


def _mat(rows):
    return [[Cyclo.coerce(v) for v in row] for row in rows]


def _exchange_core(spec, t1):
    """Degrees, cocycle and eta of the small factor C."""
    f = spec.f
    tp = spec.tp
    case = spec.case
    if case == 'a':
        gens = [(f, _PairElement(_mat([[1]]), _mat([[-1]]), 0), 2)]
    elif case == 'c':
        sx = _mat([[0, 1], [1, 0]])
        gens = [(tp, _PairElement(sx, sx, 1), 4)]
    else:
        d = _mat([[1, 0], [0, -1]])
        sx = _mat([[0, 1], [1, 0]])
        gens = [(tp, _PairElement(d, d, 0), 2), (t1, _PairElement(sx, sx, 1), 4)]

    identity = spec.subgroup.identity()
    size = len(gens[0][1].first)
    one = _PairElement(_mat([[int(i == j) for j in range(size)] for i in range(size)]),
                       _mat([[int(i == j) for j in range(size)] for i in range(size)]), 0)
    elements = {identity: one}
    for g, x, order in gens:
        current = dict(elements)
        for c, y in current.items():
            z, w = c, y
            for _ in range(order - 1):
                z, w = z * g, w * x
                elements[z] = w
    if len(elements) != {'a': 2, 'b': 8, 'c': 4}[case]:
        raise GradingError("Exchange factor has the wrong number of elements")

    cocycle = {}
    for c, x in elements.items():
        for c2, y in elements.items():
            ratio = (x * y).ratio(elements[c * c2])
            if ratio is None:
                raise GradingError(f"Exchange factor product at ({c},{c2}) is not monomial")
            cocycle[(c, c2)] = ratio
    eta = {}
    for c, x in elements.items():
        r = x.exchanged().ratio(x)
        if r not in (ONE, MINUS_ONE):
            raise GradingError(f"Exchange map does not scale X{c}")
        eta[c] = 1 if r == ONE else -1
    return elements, cocycle, eta


def _complement(plus, rad):
    gens = []
    span = set(rad.elements)
    for x in plus.elements:
        if x not in span:
            gens.append(x)
            span = set(FiniteSubgroup(plus.group, list(rad.generators) + gens).elements)
    return FiniteSubgroup(plus.group, gens)


def _default_t1(spec, K):
    T = spec.subgroup
    candidates = [
        t for t in T.odd_elements()
        if all(spec.beta_tilde.exponent(t, k) == 0 for k in K.elements)
    ]
    if not candidates:
        raise AdmissibilityError("no odd element orthogonal to the complement",
                                 condition='type Mex')
    return min(candidates)


def build_exchange_division(spec):
    """
    Standard realization C (x) M of an exchange-type graded-division
    superalgebra, together with its eta.

    Raises:
        AdmissibilityError: if the spec violates the structural conditions
    """
    is_valid, error = spec.validate()
    if not is_valid:
        raise AdmissibilityError(error, condition='type Mex')

    T = spec.subgroup
    plus = T.even_part()
    beta_plus = spec.beta_tilde.restrict(plus)
    K = _complement(plus, radical(beta_plus))
    t1 = None
    if spec.case == 'b':
        t1 = as_sharp(spec.t1) if spec.t1 is not None else _default_t1(spec, K)

    core, core_cocycle, core_eta = _exchange_core(spec, t1)
    C = FiniteSubgroup(T.group, list(core))
    if C.order * K.order != T.order:
        raise AdmissibilityError("C x K does not exhaust T", condition='type Mex')

    M = build_standard_M(K, spec.beta_tilde.restrict(K))
    m_eta = M.eta or EtaMap.trivial(K)

    split = {}
    for c in C.elements:
        for k in K.elements:
            split[c * k] = (c, k)
    if len(split) != T.order:
        raise AdmissibilityError("C and K intersect nontrivially", condition='type Mex')

    cocycle = {}
    for t, (c, k) in split.items():
        for s, (c2, k2) in split.items():
            cocycle[(t, s)] = core_cocycle[(c, c2)] * M.sigma(k, k2)
    eta = EtaMap(T, {t: core_eta[c] * m_eta(k) for t, (c, k) in split.items()})

    division = GradedDivisionAlgebra(T, cocycle, eta, None, None, 'exchange',
                                     f"Ex{spec.case}[{T.order}]")
    division.parity_element = spec.tp

    for t in T.elements:
        for s in T.elements:
            if division.beta_tilde(t, s) != spec.beta_tilde.value(t, s):
                raise GradingError(f"Realization does not reproduce beta~ at ({t},{s})")
    is_valid, error = eta.check(spec.beta_tilde)
    if not is_valid:
        raise GradingError(error)
    if eta(spec.f) != -1 or eta(spec.tp) != 1:
        raise GradingError("Exchange eta must satisfy eta(f) = -1 and eta(t_p) = 1")

    logger.debug(f"Exchange realization case {spec.case} with |T|={T.order}, t1={t1}")
    return division


def exchange_eta_variants(spec):
    """
    Both eta maps obtainable for the even nontrivial parity element case,
    from the auxiliary elements t1 and t_p t1.

    Returns:
        List of EtaMaps (a single one for the other cases)
    """
    base = build_exchange_division(spec)
    if spec.case != 'b':
        return [base.eta]
    plus = spec.subgroup.even_part()
    K = _complement(plus, radical(spec.beta_tilde.restrict(plus)))
    t1 = as_sharp(spec.t1) if spec.t1 is not None else _default_t1(spec, K)
    other = ExchangeDivisionSpec(spec.subgroup, spec.beta_tilde, spec.tp, spec.tp * t1)
    return [base.eta, build_exchange_division(other).eta]


# Algebra-level checks

def verify_division(algebra):
    """
    Check that every nonzero homogeneous element is invertible.

    Returns:
        True iff every G#-component has dimension at most one and its
        basis element has a full-rank left multiplication
    """
    if algebra.unit is None:
        return False
    for degree, indices in algebra.components().items():
        if len(indices) > 1:
            return False
        if rank(algebra.left_multiplication({indices[0]: ONE})) != algebra.dim:
            return False
    return True


def center(algebra):
    """Homogeneous basis of the centre as (degree, vector) pairs."""
    return [(_degree_of(algebra, z), z) for z in algebra.center()]


def supercenter(algebra):
    """Homogeneous basis of the supercentre as (degree, vector) pairs."""
    return [(_degree_of(algebra, z), z) for z in algebra.supercenter()]


def superopposite(algebra):
    return algebra.superopposite()


def _degree_of(algebra, v):
    return algebra.degrees[next(iter(v))]

