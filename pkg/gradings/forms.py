"""
Forms over graded-division superalgebras and the superinvolutions they induce.

A superinvolution on R = M_k(D) compatible with the grading is the
superadjunction of a nondegenerate homogeneous form B on the graded
module U = D^k. B is stored by its matrix Phi_ij = B(u_i, u_j), each
entry a homogeneous element c X_t of D, and

    phi(X) = Phi^-1 tau(X) Phi,   tau(X)_ij = (-1)^{(|i|+|j|)|j|} phi0(x_ji)

where phi0(X_t) = eta(t) X_t is the involution of D. phi is an
involution exactly when B is super-Hermitian or super-skew-Hermitian.
"""

import logging
from dataclasses import dataclass

from abelian import Coset, GSharpElement, as_sharp
from algebra import GradedAlgebra, sign
from cyclo import ONE, Cyclo, root_exponent, root_of_unity
from linalg import from_dense, rank, solve, sparse_add, sparse_scale, to_dense
from matrix_algebra import ElementaryGradingSpec, GradedMatrixSuperalgebra, KappaMap
from validation import (
    AdmissibilityError,
    GradingError,
    GroupError,
    NotInvertibleError,
    VerificationError,
)

logger = logging.getLogger('gradings.forms')

MINUS_ONE = Cyclo.coerce(-1)


def supertranspose(matrix, parities):
    """
    Supertranspose of a square scalar matrix.

    Args:
        matrix: Dense matrix (list of rows)
        parities: Parity of each row/column index

    Returns:
        Matrix with entries (-1)^{(|i|+|j|)|j|} x_ji
    """
    n = len(matrix)
    if len(parities) != n:
        raise GradingError(f"Expected {n} parities, got {len(parities)}")
    return [
        [sign((parities[i] + parities[j]) * parities[j]) * Cyclo.coerce(matrix[j][i]) for j in range(n)]
        for i in range(n)
    ]


class PhiMatrix:
    """
    Matrix of a homogeneous form B on U with basis degrees gamma.

    Args:
        gamma: ElementaryGradingSpec (degrees of u_1..u_k)
        entries: Map (i, j) -> (t, c) meaning Phi_ij = c X_t
        g0: Degree of B; deg B(u_i, u_j) = g0 g_i g_j
        delta: Recorded sign of B-bar = delta B
    """

    def __init__(self, gamma, entries, g0, delta=1):
        self.gamma = gamma
        self.g0 = as_sharp(g0)
        self.delta = delta
        self.entries = {
            (i, j): (as_sharp(t), Cyclo.coerce(c))
            for (i, j), (t, c) in entries.items() if c
        }

    @property
    def size(self):
        return len(self.gamma)

    def parity(self, i):
        return self.gamma.degrees[i].parity

    def entry(self, i, j):
        return self.entries.get((i, j))

    def check_degrees(self):
        """
        Check that every entry has degree g0 g_i g_j.

        Returns:
            Tuple of (is_valid, error_message)
        """
        g = self.gamma.degrees
        for (i, j), (t, _) in sorted(self.entries.items()):
            expected = self.g0 * g[i] * g[j]
            if t != expected:
                return False, f"Phi[{i + 1},{j + 1}] has degree {t}, expected {expected}"
        return True, None

    def is_monomial(self):
        rows = [i for i, _ in self.entries]
        cols = [j for _, j in self.entries]
        full = list(range(self.size))
        return sorted(rows) == full and sorted(cols) == full

    def as_vector(self, algebra):
        """Phi as an element of M_k(D)."""
        return {algebra.basis_index(i, j, t): c for (i, j), (t, c) in self.entries.items()}

    def left_multiplied(self, division, t, c=ONE):
        """The form d B for the homogeneous element d = c X_t of D."""
        t = as_sharp(t)
        entries = {}
        for key, (s, value) in self.entries.items():
            ts, coefficient = division.product(t, s)
            entries[key] = (ts, c * coefficient * value)
        return PhiMatrix(self.gamma, entries, t * self.g0, self.delta)

    def parity_reversed(self):
        """
        Same matrix on the parity-reversed module U[1] (even D).

        For even g0 this flips delta; for odd g0 delta is unchanged.
        """
        flipped = ElementaryGradingSpec(
            self.gamma.group,
            [GSharpElement(d.element, 1 - d.parity) for d in self.gamma.degrees]
        )
        delta = self.delta if self.g0.parity else -self.delta
        return PhiMatrix(flipped, self.entries, self.g0, delta)

    def triplets(self):
        """Sorted (i, j, degree, scalar) records for serialization."""
        return [(i, j, t, c) for (i, j), (t, c) in sorted(self.entries.items())]

    def __eq__(self, other):
        return (
            isinstance(other, PhiMatrix)
            and self.gamma.degrees == other.gamma.degrees
            and self.g0 == other.g0
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"PhiMatrix(k={self.size}, g0={self.g0}, entries={len(self.entries)})"


@dataclass(frozen=True)
class InertiaQuadruple:
    """Inertia (eta, kappa, g0, delta) of a graded module with a form."""

    eta: object
    kappa: KappaMap
    g0: object
    delta: int = 1

    def key(self):
        return (self.eta.key(), self.kappa.key(), as_sharp(self.g0).key(), self.delta)


def mu_x(eta, g0, x, delta, rep=None):
    """
    Sign mu_x = (-1)^{|xi|} eta(g0 xi^2) delta of a self-paired coset.

    Args:
        eta: EtaMap on T
        g0: Degree of the form
        x: Coset of T
        delta: +1 or -1
        rep: Optional representative xi of x (defaults to the canonical one)

    Raises:
        AdmissibilityError: if g0 x^2 != T
    """
    xi = as_sharp(rep) if rep is not None else x.rep
    t = as_sharp(g0) * xi * xi
    if t not in eta.subgroup:
        raise AdmissibilityError(f"coset {x} is not self-paired under g0 = {g0}", condition=4)
    return (-1) ** xi.parity * eta(t) * delta


def _paired_coset(x, g0):
    return Coset.of(as_sharp(g0).inverse() * x.rep.inverse(), x.subgroup)


def admissibility_violation(subgroup, beta_tilde, q):
    """(condition number, message) of the first violated condition, or None."""
    try:
        is_valid, error = q.eta.check(beta_tilde)
    except GroupError:
        return 1, "beta~ is not sign valued, so no eta exists"
    if not is_valid:
        return 1, error
    if q.kappa.subgroup != subgroup:
        return 2, "kappa is not defined over T"
    if q.kappa.is_empty():
        return 2, "kappa is empty"
    for x, mult in q.kappa.entries:
        y = _paired_coset(x, q.g0)
        if q.kappa.multiplicity(y) != mult:
            return 3, f"kappa({x}) = {mult} but kappa({y}) = {q.kappa.multiplicity(y)}"
    for x, mult in q.kappa.entries:
        if _paired_coset(x, q.g0) == x and mu_x(q.eta, q.g0, x, q.delta) == -1 and mult % 2:
            return 4, f"mu = -1 on {x} but kappa({x}) = {mult} is odd"
    return None


def check_admissible(subgroup, beta_tilde, q):
    """
    Check the admissibility conditions of an inertia quadruple.

    Conditions: (1) d(eta) = beta_tilde; (2) kappa is a nonempty finite
    multiset over T; (3) kappa(x) = kappa(g0^-1 x^-1); (4) kappa(x) is
    even on self-paired cosets with mu_x = -1.

    Returns:
        Tuple of (is_valid, error_message)
    """
    found = admissibility_violation(subgroup, beta_tilde, q)
    if found is None:
        return True, None
    condition, message = found
    return False, f"condition ({condition}): {message}"


def build_form(division, kappa, g0, eta=None, delta=1):
    """
    Canonical form realizing the inertia (eta, kappa, g0, delta).

    Cosets are taken in canonical order. A self-paired coset x gets the
    block I (x) X_t when mu_x = 1 and J (x) X_t when mu_x = -1, with
    t = g0 xi(x)^2. A pair x != y gets off-diagonal blocks X_t and
    (-1)^{|xi(x)||xi(y)|} eta(t) delta X_t, t = g0 xi(x) xi(y).

    Args:
        division: GradedDivisionAlgebra D
        kappa: KappaMap over the support of D
        g0: GSharpElement degree of the form
        eta: Optional EtaMap overriding division.eta
        delta: +1 or -1

    Returns:
        PhiMatrix with bar_form equal to delta times itself

    Raises:
        AdmissibilityError: if the inertia is not admissible, D has no
            involution, or D is odd and g0 is odd
    """
    g0 = as_sharp(g0)
    eta = eta or division.eta
    if eta is None:
        raise AdmissibilityError("D carries no degree-preserving superinvolution", condition=1)
    if division.is_odd() and g0.parity:
        raise AdmissibilityError("odd forms over an odd division algebra are not supported",
                                 condition='odd form')

    q = InertiaQuadruple(eta, kappa, g0, delta)
    found = admissibility_violation(division.support, division.beta_tilde_bicharacter, q)
    if found is not None:
        condition, message = found
        raise AdmissibilityError(message, condition=condition)

    gamma = ElementaryGradingSpec.from_kappa(kappa)
    offsets = {}
    position = 0
    for x, mult in kappa.entries:
        offsets[x] = position
        position += mult

    entries = {}
    for x, mult in kappa.entries:
        y = _paired_coset(x, g0)
        a = offsets[x]
        if y == x:
            t = g0 * x.rep * x.rep
            if mu_x(eta, g0, x, delta) == 1:
                for i in range(mult):
                    entries[(a + i, a + i)] = (t, ONE)
            else:
                half = mult // 2
                for i in range(half):
                    entries[(a + i, a + half + i)] = (t, ONE)
                    entries[(a + half + i, a + i)] = (t, MINUS_ONE)
        elif x < y:
            b = offsets[y]
            t = g0 * x.rep * y.rep
            s = (-1) ** (x.rep.parity * y.rep.parity) * eta(t) * delta
            for i in range(mult):
                entries[(a + i, b + i)] = (t, ONE)
                entries[(b + i, a + i)] = (t, Cyclo.coerce(s))

    phi = PhiMatrix(gamma, entries, g0, delta)
    if is_super_hermitian(phi, eta) != delta:
        raise VerificationError("constructed form is not super-Hermitian")
    logger.debug(f"Built form of size {phi.size} with g0={g0}, delta={delta}")
    return phi


def bar_form(phi, eta):
    """B-bar with entries (-1)^{|i||j|} eta(t) c for Phi_ji = c X_t."""
    entries = {}
    for (i, j), (t, c) in phi.entries.items():
        entries[(j, i)] = (t, sign(phi.parity(i) * phi.parity(j)) * eta(t) * c)
    return PhiMatrix(phi.gamma, entries, phi.g0, phi.delta)


def is_super_hermitian(phi, eta):
    """
    Sign delta with B-bar = delta B.

    Returns:
        1, -1, or None when B-bar is not a multiple of B
    """
    bar = bar_form(phi, eta)
    if bar.entries == phi.entries:
        return 1
    negated = {key: (t, -c) for key, (t, c) in phi.entries.items()}
    if bar.entries == negated:
        return -1
    return None


class Superinvolution:
    """
    Linear map on a GradedAlgebra given by images of basis elements.

    Args:
        algebra: GradedAlgebra it acts on
        images: Sparse vector image of each basis element
        kind: 'adjunction' or 'exchange'
        phi: PhiMatrix for an adjunction
        eta: EtaMap for an adjunction
    """

    def __init__(self, algebra, images, kind, phi=None, eta=None):
        self.algebra = algebra
        self.images = images
        self.kind = kind
        self.phi = phi
        self.eta = eta

    def apply(self, v):
        result = {}
        for n, c in v.items():
            result = sparse_add(result, self.images[n], c)
        return result

    def is_involution(self):
        return all(self.apply(self.images[n]) == {n: ONE} for n in range(self.algebra.dim))

    def preserves_degrees(self):
        degrees = self.algebra.degrees
        return all(
            degrees[k] == degrees[n]
            for n, image in enumerate(self.images) for k in image
        )

    def is_super_anti_automorphism(self):
        """phi(ab) = (-1)^{|a||b|} phi(b) phi(a) on all basis pairs."""
        A = self.algebra
        for a in range(A.dim):
            for b in range(A.dim):
                left = self.apply(A.basis_product(a, b))
                right = A.multiply(self.images[b], self.images[a])
                if sparse_add(left, right, -sign(A.parity(a) * A.parity(b))):
                    return False
        return True

    def check(self):
        """
        Run all structural checks.

        Returns:
            Tuple of (is_valid, error_message)
        """
        if not self.preserves_degrees():
            return False, "map does not preserve degrees"
        if not self.is_super_anti_automorphism():
            return False, "map is not a super-anti-automorphism"
        if not self.is_involution():
            return False, "map is not an involution"
        return True, None

    def matrix(self):
        """Dense matrix of the map (columns are images)."""
        n = self.algebra.dim
        columns = [to_dense(image, n) for image in self.images]
        return [[columns[j][i] for j in range(n)] for i in range(n)]


def _phi_inverse(algebra, phi):
    division = algebra.division
    if phi.is_monomial():
        inverse = {}
        for (i, j), (t, c) in phi.entries.items():
            t_inv, coefficient = division.inverse(t)
            inverse[algebra.basis_index(j, i, t_inv)] = coefficient / c
        return inverse
    L = algebra.left_multiplication(phi.as_vector(algebra))
    try:
        solution = solve(L, to_dense(algebra.unit, algebra.dim))
    except NotInvertibleError:
        raise NotInvertibleError("Phi is not invertible over D")
    return from_dense(solution)


def superadjunction(algebra, phi, eta=None):
    """
    Superadjunction phi(X) = Phi^-1 tau(X) Phi on M_k(D).

    Args:
        algebra: GradedMatrixSuperalgebra built on phi.gamma
        phi: PhiMatrix
        eta: Optional EtaMap overriding algebra.division.eta

    Returns:
        Superinvolution (an involution iff phi is super-Hermitian up to sign)

    Raises:
        NotInvertibleError: if Phi is singular
    """
    if not isinstance(algebra, GradedMatrixSuperalgebra):
        raise GradingError("Superadjunction needs a matrix algebra over D")
    if algebra.gamma.degrees != phi.gamma.degrees:
        raise GradingError("Form and algebra use different module degrees")
    eta = eta or algebra.division.eta
    if eta is None:
        raise AdmissibilityError("D carries no degree-preserving superinvolution", condition=1)

    forward = phi.as_vector(algebra)
    backward = _phi_inverse(algebra, phi)
    images = []
    for i, j, t in algebra.entries:
        p_i, p_j = algebra.parity_of_row(i), algebra.parity_of_row(j)
        s = sign((p_i + p_j) * p_j) * eta(t)
        transposed = {algebra.basis_index(j, i, t): s}
        images.append(algebra.multiply(algebra.multiply(backward, transposed), forward))
    return Superinvolution(algebra, images, 'adjunction', phi, eta)


def kappa_star(kappa):
    return kappa.star()


def build_exchange_pair(algebra):
    """
    S x S^sop with the exchange superinvolution (s1, s2) -> (s2, s1).

    Returns:
        Tuple of (GradedAlgebra, Superinvolution)
    """
    n = algebra.dim
    pair = GradedAlgebra.direct_product(
        algebra, algebra.superopposite(), name=f"{algebra.name} x {algebra.name}^sop"
    )
    images = [{k + n: ONE} for k in range(n)] + [{k: ONE} for k in range(n)]
    logger.debug(f"Exchange pair of {algebra.name}, dim={pair.dim}")
    return pair, Superinvolution(pair, images, 'exchange')


def is_involution_simple(algebra, involution):
    """
    Graded simplicity with superinvolution of a unital algebra.

    A semisimple R is phi-simple iff the phi-fixed part of the identity
    component of its centre is one-dimensional.
    """
    if algebra.dim == 0 or not algebra.is_semisimple():
        return False
    identity = GSharpElement(algebra.group.identity(), 0)
    central = [z for z in algebra.center() if all(algebra.degrees[i] == identity for i in z)]
    moved = [to_dense(sparse_add(involution.apply(z), z, MINUS_ONE), algebra.dim) for z in central]
    return len(central) - (rank(moved) if moved else 0) == 1


def act_T_Gsharp(q, beta_tilde, t=None, g=None):
    """
    Action of T x G# on inertia quadruples.

    t . (eta, kappa, g0, delta) = (beta~(t,.) eta, kappa, t g0, (-1)^{|t|} eta(t) delta)
    g . (eta, kappa, g0, delta) = (eta, g kappa, g0 g^-2, (-1)^{|g|} delta)

    The two actions commute, so (t, g) acts as either composite.

    Args:
        q: InertiaQuadruple
        beta_tilde: Commutation bicharacter of D, needed to twist eta by t
        t: Optional element of the support T
        g: Optional element of G or G#

    Returns:
        The moved InertiaQuadruple
    """
    eta, kappa, g0, delta = q.eta, q.kappa, as_sharp(q.g0), q.delta
    if t is not None:
        t = as_sharp(t)
        delta = (-1) ** t.parity * eta(t) * delta
        eta = eta.twisted(t, beta_tilde)
        g0 = t * g0
    if g is not None:
        g = as_sharp(g)
        kappa = kappa.shift(g)
        g0 = g0 * (g * g).inverse()
        delta = (-1) ** g.parity * delta
    return InertiaQuadruple(eta, kappa, g0, delta)


# Transport along a shift of the graded module

def row_transport(algebra, target, g, twist=None):
    """
    Graded isomorphism M_k(D) -> M_k(D) induced by shifting U by g.

    Row i goes to the first free target row c with g g_i = u_i g'_c for
    some u_i in T, and E_ij X_t to E_cd X_{u_i} X_t X_{u_j}^-1. With a
    twist s every u_i is replaced by s u_i.

    Args:
        algebra: Source GradedMatrixSuperalgebra
        target: GradedMatrixSuperalgebra over the same D
        g: Shift, GroupElement or GSharpElement
        twist: Optional element of T

    Returns:
        Tuple (images, rows): one single-term image per basis element and
        the target row of each source row

    Raises:
        GradingError: if the shifted rows do not match the target rows
    """
    division = algebra.division
    support = division.support
    if target.size != algebra.size or target.division.support != support:
        raise GradingError("Transport needs matrix algebras of the same size over the same D")
    g = as_sharp(g)
    twist = support.identity() if twist is None else as_sharp(twist)

    free = list(range(target.size))
    rows, shifts = [], []
    for degree in algebra.gamma.degrees:
        moved = g * degree
        match = next((c for c in free if moved * target.gamma.degrees[c].inverse() in support), None)
        if match is None:
            raise GradingError(f"No free target row has degree {moved} modulo the support")
        free.remove(match)
        rows.append(match)
        shifts.append(twist * moved * target.gamma.degrees[match].inverse())

    images = []
    for i, j, t in algebra.entries:
        u_inv, c0 = division.inverse(shifts[j])
        left, c1 = division.product(shifts[i], t)
        s, c2 = division.product(left, u_inv)
        images.append({target.basis_index(rows[i], rows[j], s): c0 * c1 * c2})
    return images, rows


def _apply(images, v):
    result = {}
    for k, c in v.items():
        result = sparse_add(result, images[k], c)
    return result


def _single(v):
    if len(v) != 1:
        raise VerificationError("Expected a single-term image")
    return next(iter(v.items()))


def _square_root(value):
    n = 2 * max(value.conductor, 2)
    k = root_exponent(value, n)
    if k is None:
        raise VerificationError(f"No square root of {value} among roots of unity")
    return root_of_unity(2 * n, k)


def _rescaled(algebra, involution, target, target_involution, images):
    """Diagonal rescaling of a row transport so that it intertwines, or None."""
    n = target.dim
    e = target.division.support.identity()
    back = [None] * n
    for a, image in enumerate(images):
        k, c = _single(image)
        back[k] = (a, c)

    def conjugated(b):
        a, c = back[b]
        return sparse_scale(_apply(images, involution.images[a]), c.inverse())

    size = target.size
    ratios, pairing = [], []
    for b in range(size):
        unit = target.basis_index(0, b, e)
        k, wanted = _single(target_involution.images[unit])
        k2, found = _single(conjugated(unit))
        if k != k2:
            return None
        ratios.append(wanted / found)
        diagonal, _ = _single(target_involution.images[target.basis_index(b, b, e)])
        pairing.append(target.entries[diagonal][0])

    scales = [None] * size
    for c in range(size):
        if scales[c] is not None:
            continue
        partner = pairing[c]
        if partner == c:
            scales[c] = _square_root(ratios[c])
        else:
            scales[c] = ONE
            scales[partner] = ratios[c]

    scaled = []
    for image in images:
        k, c = _single(image)
        row, col, _ = target.entries[k]
        scaled.append({k: c * scales[row] / scales[col]})
    for a in range(n):
        left = _apply(scaled, involution.images[a])
        right = target_involution.apply(scaled[a])
        if sparse_add(left, right, MINUS_ONE):
            return None
    return scaled


def intertwining_transport(algebra, involution, target, target_involution, g):
    """
    Graded isomorphism theta with theta phi = phi' theta for a shift by g.

    A row transport is tried for every twist in T and rescaled row by row
    against phi' on the matrix units.

    Returns:
        List of sparse images of the basis of the source

    Raises:
        VerificationError: if no rescaled row transport intertwines
    """
    for s in algebra.division.support.elements:
        images, _ = row_transport(algebra, target, g, twist=s)
        try:
            scaled = _rescaled(algebra, involution, target, target_involution, images)
        except VerificationError:
            continue
        if scaled is not None:
            logger.debug(f"Intertwining transport by {g} found with twist {s}")
            return scaled
    raise VerificationError(f"No rescaled row transport by {g} intertwines the superinvolutions")
