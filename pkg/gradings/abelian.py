"""
Finitely generated abelian groups, finite subgroups of G# = G x Z2,
cosets and bicharacters.

Groups are explicit direct products of cyclic factors (order 0 stands
for an infinite cyclic factor). Subgroups are finite and enumerated
eagerly; every support T of a graded-division superalgebra lives in
G# and its parity is read off the Z2 coordinate.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd, isqrt

import config
from cyclo import root_exponent, root_of_unity
from validation import GroupError, ParseError, validate_element_text, validate_group_spec

logger = logging.getLogger('gradings.abelian')


def _lcm(a, b):
    return a * b // gcd(a, b) if a and b else 0


class FinAbGroup:
    """
    Direct product of cyclic groups.

    Args:
        cyclic_orders: Sequence of non-negative integers; 0 encodes Z
    """

    def __init__(self, cyclic_orders):
        orders = tuple(int(n) for n in cyclic_orders)
        if any(n < 0 for n in orders):
            raise GroupError(f"Cyclic orders must be non-negative: {orders}")
        self.cyclic_orders = orders

    @classmethod
    def parse(cls, text):
        """
        Parse a group spec like 'Z2 x Z4 x Z' ('1' is the trivial group).

        Raises:
            ParseError: on a malformed spec
        """
        is_valid, error = validate_group_spec(text)
        if not is_valid:
            raise ParseError(error, field='group')
        text = text.strip()
        if text == '1':
            return cls(())
        orders = []
        for factor in text.split(' x '):
            digits = factor.strip()[1:]
            orders.append(int(digits) if digits else 0)
        return cls(orders)

    @property
    def rank(self):
        return len(self.cyclic_orders)

    def is_finite(self):
        return all(self.cyclic_orders)

    def order(self):
        """Number of elements, or None for an infinite group."""
        if not self.is_finite():
            return None
        result = 1
        for n in self.cyclic_orders:
            result *= n
        return result

    def identity(self):
        return GroupElement(self, (0,) * self.rank)

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise GroupError(f"Expected {self.rank} coordinates, got {len(coords)}")
        return GroupElement(self, tuple(c % n if n else c for c, n in zip(coords, self.cyclic_orders)))

    def sharp(self, coords, parity=0):
        return GSharpElement(self.element(coords), parity % 2)

    def elements(self):
        if not self.is_finite():
            raise GroupError(f"Cannot enumerate infinite group {self}")
        return [GroupElement(self, c) for c in product(*(range(n) for n in self.cyclic_orders))]

    def sharp_elements(self):
        return sorted(GSharpElement(g, p) for p in (0, 1) for g in self.elements())

    def generators(self):
        return [self.element(tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank)]

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.cyclic_orders == other.cyclic_orders

    def __hash__(self):
        return hash(self.cyclic_orders)

    def __str__(self):
        if not self.cyclic_orders:
            return '1'
        return ' x '.join(f"Z{n}" if n else 'Z' for n in self.cyclic_orders)

    def __repr__(self):
        return f"FinAbGroup({list(self.cyclic_orders)})"


@dataclass(frozen=True)
class GroupElement:
    """Element of a FinAbGroup in reduced coordinates."""

    group: FinAbGroup
    coords: tuple

    def __mul__(self, other):
        return compose(self, other)

    def inverse(self):
        return self.group.element(-c for c in self.coords)

    def __pow__(self, n):
        return self.group.element(c * n for c in self.coords)

    def is_identity(self):
        return not any(self.coords)

    def order(self):
        """Order of the element; 0 if infinite."""
        result = 1
        for c, n in zip(self.coords, self.group.cyclic_orders):
            if n == 0:
                if c:
                    return 0
                continue
            result = _lcm(result, n // gcd(c, n))
        return result

    def key(self):
        return self.coords

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        return f"({','.join(str(c) for c in self.coords)})"


@dataclass(frozen=True)
class GSharpElement:
    """Element (g, parity) of G# = G x Z2."""

    element: GroupElement
    parity: int

    @property
    def group(self):
        return self.element.group

    def __mul__(self, other):
        return GSharpElement(compose(self.element, other.element), (self.parity + other.parity) % 2)

    def inverse(self):
        return GSharpElement(self.element.inverse(), self.parity)

    def __pow__(self, n):
        return GSharpElement(self.element ** n, (self.parity * n) % 2)

    def is_identity(self):
        return self.parity == 0 and self.element.is_identity()

    def order(self):
        base = self.element.order()
        if base == 0:
            return 0
        return _lcm(base, 2) if self.parity else base

    def key(self):
        """Sort key; parity first so even representatives come first."""
        return (self.parity,) + self.element.coords

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        return f"({','.join(str(c) for c in self.element.coords)};{self.parity})"


def compose(a, b):
    """
    Group law of G.

    Raises:
        GroupError: if the operands live in different groups
    """
    if a.group != b.group:
        raise GroupError(f"Cannot compose elements of {a.group} and {b.group}")
    return a.group.element(x + y for x, y in zip(a.coords, b.coords))


def as_sharp(x):
    """Embed a GroupElement as an even element of G#."""
    if isinstance(x, GSharpElement):
        return x
    return GSharpElement(x, 0)


def parse_element(text, group, graded=True):
    """
    Parse '(1,0;1)' (graded) or '(1,0)' into an element of group.

    Raises:
        ParseError: on malformed text or a coordinate count mismatch
    """
    text = text.strip()
    is_valid, error = validate_element_text(text, group.rank, graded)
    if not is_valid:
        raise ParseError(error)
    body = text[1:-1]
    parity = 0
    if graded:
        body, parity_text = body.split(';')
        parity = int(parity_text)
    coords = [int(c) for c in body.split(',') if c]
    element = group.element(coords)
    return GSharpElement(element, parity) if graded else element


def solve_double(group, m):
    """
    All g in G with g^2 = m.

    Args:
        group: FinAbGroup
        m: GroupElement of group

    Returns:
        Sorted list of solutions (empty when unsolvable)
    """
    per_factor = []
    for c, n in zip(m.coords, group.cyclic_orders):
        if n == 0:
            per_factor.append([c // 2] if c % 2 == 0 else [])
        elif n % 2:
            per_factor.append([(c * (n + 1) // 2) % n])
        elif c % 2 == 0:
            per_factor.append([c // 2, c // 2 + n // 2])
        else:
            per_factor.append([])
    return sorted(group.element(coords) for coords in product(*per_factor))


class FiniteSubgroup:
    """
    Finite subgroup of G#, closed under the group law.

    Args:
        group: Ambient FinAbGroup G
        generators: GroupElement or GSharpElement generators
    """

    def __init__(self, group, generators=()):
        self.group = group
        gens = [as_sharp(g) for g in generators]
        for g in gens:
            if g.group != group:
                raise GroupError(f"Generator {g} is not in {group}")
            if g.order() == 0:
                raise GroupError(f"Generator {g} has infinite order")
        self.elements = tuple(sorted(_closure(group, gens)))
        self.index = {t: i for i, t in enumerate(self.elements)}

    @classmethod
    def trivial(cls, group):
        return cls(group, ())

    @property
    def order(self):
        return len(self.elements)

    def identity(self):
        return self.elements[0]

    def __contains__(self, x):
        return as_sharp(x) in self.index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, FiniteSubgroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __str__(self):
        return f"<{' '.join(str(g) for g in self.generators)}>"

    @cached_property
    def generators(self):
        """Canonical generating set: greedy in key order."""
        gens = []
        span = {self.identity()}
        for x in self.elements:
            if x not in span:
                gens.append(x)
                span = _closure(self.group, gens)
        return tuple(gens)

    def is_even(self):
        return all(t.parity == 0 for t in self.elements)

    def even_part(self):
        """T+ = T intersected with G x {0}."""
        return FiniteSubgroup(self.group, [t for t in self.elements if t.parity == 0])

    def odd_elements(self):
        return [t for t in self.elements if t.parity]

    def is_elementary_two(self):
        return all((t * t).is_identity() for t in self.elements)

    def exponent(self):
        result = 1
        for t in self.elements:
            result = _lcm(result, t.order())
        return result

    def is_subgroup_of(self, other):
        return all(t in other.index for t in self.elements)

    def subgroup(self, generators):
        sub = FiniteSubgroup(self.group, generators)
        if not sub.is_subgroup_of(self):
            raise GroupError(f"{sub} is not contained in {self}")
        return sub

    def coset(self, x):
        return Coset.of(x, self)

    @cached_property
    def basis(self):
        """
        Independent generators (t_1, ..., t_r) with T = <t_1> x ... x <t_r>.

        Returns:
            Tuple of (element, order) pairs
        """
        candidates = sorted(
            (t for t in self.elements if not t.is_identity()),
            key=lambda t: (-t.order(), t.key())
        )
        identity = self.identity()

        def search(span, chosen):
            if len(span) == self.order:
                return chosen
            for x in candidates:
                if x in span:
                    continue
                cyclic = _powers(x)
                if any(c in span for c in cyclic[1:]):
                    continue
                grown = {s * c for s in span for c in cyclic}
                found = search(grown, chosen + [(x, len(cyclic))])
                if found is not None:
                    return found
            return None

        result = search({identity}, [])
        return tuple(result)

    @cached_property
    def coordinates(self):
        """Map element -> exponent vector over `basis`."""
        table = {}
        orders = [n for _, n in self.basis]
        for exps in product(*(range(n) for n in orders)):
            t = self.identity()
            for (g, _), e in zip(self.basis, exps):
                t = t * g ** e
            table[t] = exps
        return table


def _powers(x):
    result = [GSharpElement(x.group.identity(), 0)]
    current = x
    while not current.is_identity():
        result.append(current)
        current = current * x
    return result


def _closure(group, generators):
    identity = GSharpElement(group.identity(), 0)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > config.MAX_SUBGROUP_ORDER:
                        raise GroupError(
                            f"Subgroup exceeds {config.MAX_SUBGROUP_ORDER} elements"
                        )
        frontier = nxt
    return seen


class Coset:
    """
    Coset xT of a finite subgroup T in G#.

    The representative is the key-minimal member, so two cosets are
    equal iff their representatives are.
    """

    __slots__ = ('rep', 'subgroup')

    def __init__(self, rep, subgroup):
        self.rep = rep
        self.subgroup = subgroup

    @classmethod
    def of(cls, x, subgroup):
        x = as_sharp(x)
        return cls(min(x * t for t in subgroup.elements), subgroup)

    @property
    def parity(self):
        """Parity of the coset, or None when T has odd elements."""
        return self.rep.parity if self.subgroup.is_even() else None

    def shift(self, g):
        return Coset.of(as_sharp(g) * self.rep, self.subgroup)

    def inverse(self):
        return Coset.of(self.rep.inverse(), self.subgroup)

    def members(self):
        return sorted(self.rep * t for t in self.subgroup.elements)

    def key(self):
        return self.rep.key()

    def __lt__(self, other):
        return self.key() < other.key()

    def __eq__(self, other):
        return isinstance(other, Coset) and self.rep == other.rep and (
            self.subgroup is other.subgroup or self.subgroup == other.subgroup
        )

    def __hash__(self):
        return hash(self.rep)

    def __str__(self):
        return f"{self.rep}T"

    def __repr__(self):
        return f"Coset({self.rep})"


def all_cosets(subgroup):
    """Cosets of T in G# for finite G, sorted by representative."""
    seen = set()
    for x in subgroup.group.sharp_elements():
        seen.add(Coset.of(x, subgroup))
    return sorted(seen)


class Bicharacter:
    """
    Bicharacter T x T -> F^x with values zeta_N^k, N = exponent of T.

    Args:
        subgroup: FiniteSubgroup T
        exponents: Square table indexed by T.index, entries taken mod N
    """

    def __init__(self, subgroup, exponents, order=None):
        self.subgroup = subgroup
        self.order = order or subgroup.exponent()
        n = self.order
        self.exponents = tuple(tuple(k % n for k in row) for row in exponents)

    @classmethod
    def from_function(cls, subgroup, func, order=None):
        """Build from func(t, s) -> exponent."""
        elements = subgroup.elements
        return cls(subgroup, [[func(t, s) for s in elements] for t in elements], order)

    @classmethod
    def trivial(cls, subgroup):
        return cls.from_function(subgroup, lambda t, s: 0)

    @classmethod
    def from_generator_values(cls, subgroup, generators, values):
        """
        Extend values on generator pairs bilinearly.

        Args:
            subgroup: FiniteSubgroup T
            generators: Elements generating T
            values: values[i][j] = b(generators[i], generators[j]) as Cyclo

        Raises:
            GroupError: if a value is not a root of unity of order dividing
                the exponent of T, or the values are not bilinear
        """
        n = subgroup.exponent()
        gens = [as_sharp(g) for g in generators]
        table = []
        for i, row in enumerate(values):
            exps = []
            for j, value in enumerate(row):
                k = root_exponent(value, n)
                if k is None:
                    raise GroupError(
                        f"b({gens[i]},{gens[j]}) = {value} is not a {n}-th root of unity"
                    )
                exps.append(k)
            table.append(exps)

        words = _words(subgroup, gens)
        r = len(gens)

        def func(t, s):
            a, c = words[t], words[s]
            return sum(a[i] * c[j] * table[i][j] for i in range(r) for j in range(r))

        b = cls.from_function(subgroup, func, n)
        if not b.is_multiplicative():
            raise GroupError("Generator values do not define a bicharacter")
        return b

    # -- evaluation -------------------------------------------------------

    def exponent(self, t, s):
        index = self.subgroup.index
        return self.exponents[index[as_sharp(t)]][index[as_sharp(s)]]

    def value(self, t, s):
        return root_of_unity(self.order, self.exponent(t, s))

    def __call__(self, t, s):
        return self.value(t, s)

    def sign(self, t, s):
        """Value as +1/-1; raises if the value is not real."""
        k = self.exponent(t, s)
        if k == 0:
            return 1
        if 2 * k == self.order:
            return -1
        raise GroupError(f"b({t},{s}) is not a sign")

    def is_trivial_on(self, t, s):
        return self.exponent(t, s) == 0

    # -- properties -------------------------------------------------------

    def is_multiplicative(self):
        elements = self.subgroup.elements
        n = self.order
        for g in self.subgroup.generators:
            for t in elements:
                for s in elements:
                    if (self.exponent(t * g, s) - self.exponent(t, s) - self.exponent(g, s)) % n:
                        return False
                    if (self.exponent(s, t * g) - self.exponent(s, t) - self.exponent(s, g)) % n:
                        return False
        return True

    def is_alternating(self):
        return all(self.exponents[i][i] == 0 for i in range(len(self.exponents)))

    def is_skew_symmetric(self):
        size = len(self.exponents)
        return all(
            (self.exponents[i][j] + self.exponents[j][i]) % self.order == 0
            for i in range(size) for j in range(size)
        )

    def is_sign_valued(self):
        return all(2 * k % self.order == 0 for row in self.exponents for k in row)

    def is_nondegenerate(self):
        return radical(self).order == 1

    # -- derived bicharacters --------------------------------------------

    def inverse(self):
        return Bicharacter(self.subgroup, [[-k for k in row] for row in self.exponents], self.order)

    def parity_twist(self):
        """Multiply by (-1)^{p(t)p(s)}: converts between beta and beta-tilde."""
        n = self.order
        if n % 2:
            return self
        half = n // 2
        return Bicharacter.from_function(
            self.subgroup,
            lambda t, s: self.exponent(t, s) + half * t.parity * s.parity,
            n
        )

    def restrict(self, sub):
        """Restriction to a subgroup, rewritten over the subgroup's exponent."""
        m = sub.exponent()
        return Bicharacter.from_function(
            sub, lambda t, s: self.exponent(t, s) * m // self.order, m
        )

    def generator_values(self, generators):
        """Table of values on generator pairs (for serialization)."""
        return [[self.value(t, s) for s in generators] for t in generators]

    def key(self):
        return (self.subgroup.elements, self.order, self.exponents)

    def __eq__(self, other):
        if not isinstance(other, Bicharacter) or self.subgroup != other.subgroup:
            return False
        if self.order == other.order:
            return self.exponents == other.exponents
        return all(
            self.value(t, s) == other.value(t, s)
            for t in self.subgroup.elements for s in self.subgroup.elements
        )

    def __hash__(self):
        return hash(self.subgroup)


def _words(subgroup, generators):
    """Exponent vectors expressing each element of T as a word in generators."""
    identity = subgroup.identity()
    words = {identity: (0,) * len(generators)}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(generators):
                y = x * g
                if y not in words:
                    word = list(words[x])
                    word[i] += 1
                    words[y] = tuple(word)
                    nxt.append(y)
        frontier = nxt
    if len(words) != subgroup.order:
        raise GroupError("Generators do not generate the subgroup")
    return words


class ParityMap:
    """
    Homomorphism p: T -> Z2.

    Args:
        subgroup: FiniteSubgroup T
        table: Optional map element -> parity; defaults to the Z2 coordinate
    """

    def __init__(self, subgroup, table=None):
        self.subgroup = subgroup
        if table is None:
            table = {t: t.parity for t in subgroup.elements}
        self.table = {as_sharp(t): v % 2 for t, v in table.items()}

    def __call__(self, t):
        return self.table[as_sharp(t)]

    def is_homomorphism(self):
        return all(
            self(t * s) == (self(t) + self(s)) % 2
            for t in self.subgroup.elements for s in self.subgroup.elements
        )


def radical(b):
    """Subgroup of t with b(t, s) = 1 for all s in T."""
    elements = b.subgroup.elements
    members = [
        t for i, t in enumerate(elements)
        if not any(b.exponents[i])
    ]
    return FiniteSubgroup(b.subgroup.group, members)


def parity_elements(subgroup, beta_tilde, parity=None):
    """
    All t_p in T with beta_tilde(t_p, t) = (-1)^{p(t)} for every t.

    Returns:
        Sorted list of elements (a coset of the radical, or empty)
    """
    p = parity or ParityMap(subgroup)
    n = beta_tilde.order
    result = []
    for tp in subgroup.elements:
        ok = True
        for t in subgroup.elements:
            expected = (n // 2) * p(t) if n % 2 == 0 else (None if p(t) else 0)
            if expected is None or beta_tilde.exponent(tp, t) != expected:
                ok = False
                break
        if ok:
            result.append(tp)
    return result


def _perp(b, elements, gens):
    return [x for x in elements if all(b.exponent(x, g) == 0 for g in gens)]


def duality_decomposition(subgroup, beta, must_contain=None):
    """
    Split T = A x B with A, B isotropic and in duality under beta.

    Args:
        subgroup: FiniteSubgroup T
        beta: Alternating nondegenerate Bicharacter on T
        must_contain: Optional element forced into A

    Returns:
        Tuple (A, B) of FiniteSubgroups

    Raises:
        GroupError: if beta is degenerate or not alternating, or |T| is
            not a perfect square
    """
    if not beta.is_alternating():
        raise GroupError("Duality decomposition needs an alternating bicharacter")
    if not beta.is_nondegenerate():
        raise GroupError("Duality decomposition needs a nondegenerate bicharacter")
    root = isqrt(subgroup.order)
    if root * root != subgroup.order:
        raise GroupError(f"|T| = {subgroup.order} is not a perfect square")

    group = subgroup.group
    ordered = sorted(subgroup.elements, key=lambda t: (-t.order(), t.key()))

    a_gens = [] if must_contain is None else [as_sharp(must_contain)]
    a_elems = _closure(group, a_gens)
    while len(a_elems) < root:
        candidates = [x for x in _perp(beta, ordered, a_gens) if x not in a_elems]
        if not candidates:
            raise GroupError("No Lagrangian subgroup through the forced element")
        a_gens.append(candidates[0])
        a_elems = _closure(group, a_gens)
    if len(a_elems) != root:
        raise GroupError("Forced element does not lie in a Lagrangian subgroup")

    def search(b_gens, b_elems):
        if len(b_elems) == root:
            return b_gens
        for x in _perp(beta, ordered, b_gens):
            if x in b_elems:
                continue
            grown = _closure(group, b_gens + [x])
            if len(grown) > root or any(y in a_elems and not y.is_identity() for y in grown):
                continue
            if not all(beta.exponent(y, z) == 0 for y in grown for z in grown):
                continue
            found = search(b_gens + [x], grown)
            if found is not None:
                return found
        return None

    b_gens = search([], _closure(group, []))
    if b_gens is None:
        raise GroupError("No isotropic complement found")

    A = FiniteSubgroup(group, a_gens)
    B = FiniteSubgroup(group, b_gens)
    logger.debug(f"Duality decomposition of |T|={subgroup.order}: A={A}, B={B}")
    return A, B


def enumerate_subgroups(group, graded=True, max_order=None):
    """
    All finite subgroups of G# (graded) or G, for finite G.

    Returns:
        List of FiniteSubgroups sorted by (order, elements)
    """
    if not group.is_finite():
        raise GroupError(f"Cannot enumerate subgroups of infinite group {group}")
    pool = group.sharp_elements() if graded else [as_sharp(g) for g in group.elements()]
    found = {FiniteSubgroup.trivial(group)}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for x in pool:
                if x in H.index:
                    continue
                K = FiniteSubgroup(group, list(H.generators) + [x])
                if max_order is not None and K.order > max_order:
                    continue
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(found, key=lambda H: (H.order, tuple(t.key() for t in H.elements)))


def enumerate_bicharacters(subgroup, kind='alternating'):
    """
    Yield every bicharacter of the given kind on T.

    Args:
        subgroup: FiniteSubgroup T
        kind: 'alternating' or 'skew'
    """
    basis = subgroup.basis
    coords = subgroup.coordinates
    n = subgroup.exponent()
    r = len(basis)
    orders = [m for _, m in basis]

    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    pair_choices = [
        [k * (n // gcd(orders[i], orders[j])) for k in range(gcd(orders[i], orders[j]))]
        for i, j in pairs
    ]
    if kind == 'alternating':
        diag_choices = [[0] for _ in range(r)]
    elif kind == 'skew':
        diag_choices = [[0, n // 2] if orders[i] % 2 == 0 else [0] for i in range(r)]
    else:
        raise ValueError(f"Unknown bicharacter kind '{kind}'")

    for diag in product(*diag_choices):
        for upper in product(*pair_choices):
            e = [[0] * r for _ in range(r)]
            for i in range(r):
                e[i][i] = diag[i]
            for (i, j), k in zip(pairs, upper):
                e[i][j] = k
                e[j][i] = -k

            def func(t, s, e=e):
                a, c = coords[t], coords[s]
                return sum(a[i] * c[j] * e[i][j] for i in range(r) for j in range(r))

            yield Bicharacter.from_function(subgroup, func, n)
