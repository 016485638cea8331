"""
Graded Lie superalgebras obtained from associative models.

R^(-) carries the supercommutator; Skew(R, phi) is the -1 eigenspace of
a superinvolution. The series are built as

    osp      Skew(M*(...), phi), g0 even
    P        Skew(M*(...), phi)^(1), g0 odd
    Q        Type I: Q(n)^(-)(1) / centre;  Type II: Skew(Qex)^(1) / centre
    A        Type I: S^(-)(1) / centre;     Type II: Skew(Mex)^(1) / centre

All derived subalgebras, centres and quotients are computed from the
bracket table with exact linear algebra.
"""

import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum

import config
from cyclo import ONE, ZERO, Cyclo
from forms import intertwining_transport, row_transport
from linalg import (coordinates, echelon_basis, matmul, nullspace, rank, rref, sparse_add,
                    to_dense)
from params import LieParams, build_model, transport_params
from validation import GradingError, OutOfScopeError, VerificationError

logger = logging.getLogger('gradings.lie')

MINUS_ONE = Cyclo.coerce(-1)


def _sign(exponent):
    return MINUS_ONE if exponent % 2 else ONE


class Simplicity(Enum):
    """Verdict of the graded-simplicity test."""

    TRUE = 'true'
    FALSE = 'false'
    PROBABLY_TRUE = 'probably_true'


class LieSuperalgebra:
    """
    Finite-dimensional G#-graded Lie superalgebra.

    Args:
        group: FinAbGroup G
        labels: Basis labels
        degrees: GSharpElement degree of each basis element
        table: Map (i, j) -> {k: Cyclo} of nonzero brackets [b_i, b_j]
        name: Human readable name
        family: Lie family tag, if built from parameters
        subtype: Series A subtype, if any
    """

    def __init__(self, group, labels, degrees, table, name='', family=None, subtype=None):
        if len(labels) != len(degrees):
            raise GradingError("Labels and degrees differ in length")
        self.group = group
        self.labels = list(labels)
        self.degrees = list(degrees)
        self.table = {key: dict(value) for key, value in table.items() if value}
        self.name = name
        self.family = family
        self.subtype = subtype

    @property
    def dim(self):
        return len(self.labels)

    def parity(self, i):
        return self.degrees[i].parity

    def basis_bracket(self, i, j):
        return self.table.get((i, j), {})

    def bracket(self, u, v):
        result = {}
        for i, a in u.items():
            for j, b in v.items():
                value = self.table.get((i, j))
                if value:
                    result = sparse_add(result, value, a * b)
        return result

    def components(self):
        result = defaultdict(list)
        for i, d in enumerate(self.degrees):
            result[d].append(i)
        return dict(result)

    def support(self):
        return sorted(set(self.degrees))

    def fingerprint(self):
        """Sorted (degree, dimension) pairs."""
        return tuple(sorted((d.key(), len(v)) for d, v in self.components().items()))

    def superdimension(self):
        odd = sum(1 for d in self.degrees if d.parity)
        return self.dim - odd, odd

    def is_abelian(self):
        return not self.table

    def __repr__(self):
        return f"LieSuperalgebra({self.name!r}, dim={self.dim})"

    # -- axioms -----------------------------------------------------------

    def check_grading(self):
        """
        Check deg [b_i, b_j] = deg b_i deg b_j.

        Returns:
            Tuple of (is_valid, error_message)
        """
        for (i, j), value in self.table.items():
            expected = self.degrees[i] * self.degrees[j]
            for k in value:
                if self.degrees[k] != expected:
                    return False, f"[{self.labels[i]}, {self.labels[j]}] has a term of degree {self.degrees[k]}"
        return True, None

    def check_anticommutativity(self):
        for i in range(self.dim):
            for j in range(i, self.dim):
                s = _sign(self.parity(i) * self.parity(j))
                if sparse_add(self.basis_bracket(i, j), self.basis_bracket(j, i), s):
                    return False, f"[{self.labels[i]}, {self.labels[j]}] is not super-anti-commutative"
        return True, None

    def check_jacobi(self):
        """[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]] on all basis triples."""
        n = self.dim
        for a in range(n):
            ea = {a: ONE}
            for b in range(n):
                eb = {b: ONE}
                ab = self.basis_bracket(a, b)
                s = _sign(self.parity(a) * self.parity(b))
                for c in range(n):
                    ec = {c: ONE}
                    left = self.bracket(ea, self.basis_bracket(b, c))
                    right = sparse_add(
                        self.bracket(ab, ec),
                        self.bracket(eb, self.basis_bracket(a, c)), s
                    )
                    if sparse_add(left, right, MINUS_ONE):
                        return False, (
                            f"Jacobi fails on ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})"
                        )
        return True, None

    # -- subspaces --------------------------------------------------------

    def ideal_generated(self, vectors):
        """Basis of the ideal generated by homogeneous vectors."""
        span = _Span()
        queue = [w for w in (span.add(v) for v in vectors if v) if w]
        while queue:
            v = queue.pop()
            for i in range(self.dim):
                w = span.add(self.bracket({i: ONE}, v))
                if w:
                    queue.append(w)
        return span.basis()


class _Span:
    """Incremental echelon basis of sparse vectors, keyed by leading index."""

    def __init__(self):
        self.rows = {}

    def reduce(self, v):
        v = dict(v)
        while v:
            k = min(v)
            row = self.rows.get(k)
            if row is None:
                break
            v = sparse_add(v, row, -v[k])
        return v

    def add(self, v):
        """Insert v; returns the normalized new row, or None if v is in the span."""
        w = self.reduce(v)
        if not w:
            return None
        k = min(w)
        inverse = w[k].inverse()
        w = {i: c * inverse for i, c in w.items()}
        self.rows[k] = w
        return w

    def __len__(self):
        return len(self.rows)

    def basis(self):
        return [self.rows[k] for k in sorted(self.rows)]


def _homogeneous(vector, degrees):
    found = {degrees[k] for k in vector}
    if len(found) != 1:
        raise GradingError("Vector is not homogeneous")
    return found.pop()


def induced(group, ambient_degrees, size, bracket, vectors, name='', prefix='L'):
    """
    Lie superalgebra on the span of homogeneous vectors of an ambient space.

    Args:
        group: FinAbGroup G
        ambient_degrees: Degrees of the ambient basis
        size: Ambient dimension
        bracket: Function of two sparse ambient vectors
        vectors: Homogeneous spanning vectors
        name: Name of the result
        prefix: Label prefix of the new basis

    Returns:
        Tuple (LieSuperalgebra, list of ambient basis vectors)

    Raises:
        GradingError: if the span is not closed under the bracket
    """
    by_degree = defaultdict(list)
    for v in vectors:
        if v:
            by_degree[_homogeneous(v, ambient_degrees)].append(v)
    for d, spanning in by_degree.items():
        span = _Span()
        for v in spanning:
            span.add(v)
        by_degree[d] = span.basis()

    blocks = {}
    basis, degrees = [], []
    for d in sorted(by_degree, key=lambda x: x.key()):
        block, pivots = echelon_basis(by_degree[d], size)
        blocks[d] = (block, pivots, len(basis))
        basis.extend(block)
        degrees.extend([d] * len(block))

    table = {}
    for a, u in enumerate(basis):
        for b, v in enumerate(basis):
            w = bracket(u, v)
            if not w:
                continue
            d = degrees[a] * degrees[b]
            if d not in blocks:
                raise GradingError(f"Span is not closed: bracket of degree {d} leaves it")
            block, pivots, offset = blocks[d]
            coords = coordinates(w, block, pivots)
            if coords is None:
                raise GradingError("Span is not closed under the bracket")
            table[(a, b)] = {offset + i: c for i, c in enumerate(coords) if c}

    labels = [f"{prefix}{i + 1}" for i in range(len(basis))]
    return LieSuperalgebra(group, labels, degrees, table, name), basis


def minus_algebra(algebra, name=None):
    """R^(-): the same space with [a, b] = ab - (-1)^{|a||b|} ba."""
    n = algebra.dim
    table = {}
    for i in range(n):
        for j in range(n):
            value = algebra.supercommutator({i: ONE}, {j: ONE})
            if value:
                table[(i, j)] = value
    return LieSuperalgebra(algebra.group, algebra.labels, algebra.degrees, table,
                           name or f"{algebra.name}^(-)")


def skew(algebra, involution, name=None):
    """
    Skew(R, phi) = {r : phi(r) = -r} with the supercommutator.

    Raises:
        GradingError: if phi is not an involution
    """
    return skew_with_basis(algebra, involution, name)[0]


def skew_with_basis(algebra, involution, name=None):
    """Skew(R, phi) and the vectors of R its basis elements stand for."""
    if not involution.is_involution():
        raise GradingError("Skew elements need an involutive map")
    vectors = []
    for degree, indices in sorted(algebra.components().items(), key=lambda kv: kv[0].key()):
        local = {idx: a for a, idx in enumerate(indices)}
        mat = [[ZERO] * len(indices) for _ in indices]
        for c, idx in enumerate(indices):
            for k, value in involution.images[idx].items():
                if k not in local:
                    raise GradingError("Involution does not preserve degrees")
                mat[local[k]][c] = mat[local[k]][c] + value
            mat[c][c] = mat[c][c] + ONE
        for vec in nullspace(mat, len(indices)):
            vectors.append({indices[a]: x for a, x in enumerate(vec) if x})
    L, basis = induced(algebra.group, algebra.degrees, algebra.dim, algebra.supercommutator,
                       vectors, name or f"Skew({algebra.name})", prefix='K')
    logger.debug(f"Skew elements of {algebra.name}: dim {L.dim}")
    return L, basis


def derived(L, name=None):
    """[L, L], the span of all brackets."""
    return derived_with_basis(L, name)[0]


def derived_with_basis(L, name=None):
    """[L, L] and its basis as vectors of L."""
    vectors = [value for value in L.table.values()]
    return induced(L.group, L.degrees, L.dim, L.bracket, vectors,
                   name or f"{L.name}^(1)", prefix='D')


def center_lie(L):
    """Homogeneous basis of {z : [z, L] = 0} as sparse vectors of L."""
    basis = []
    for degree, indices in sorted(L.components().items(), key=lambda kv: kv[0].key()):
        rows = []
        for j in range(L.dim):
            images = [L.basis_bracket(i, j) for i in indices]
            targets = set()
            for image in images:
                targets.update(image)
            for k in sorted(targets):
                rows.append([image.get(k, ZERO) for image in images])
        for vec in nullspace(rows, len(indices)) if rows else _unit_vectors(len(indices)):
            basis.append({indices[a]: x for a, x in enumerate(vec) if x})
    return basis


def _unit_vectors(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def _reduction(L, ideal):
    """
    Reduction modulo a graded ideal and the basis indices kept in L / I.

    Raises:
        GradingError: if I is not an ideal
    """
    rows, pivots = echelon_basis(ideal, L.dim)
    by_pivot = dict(zip(pivots, rows))

    def reduce(v):
        for p, row in by_pivot.items():
            c = v.get(p)
            if c:
                v = sparse_add(v, row, -c)
        return v

    for row in rows:
        for j in range(L.dim):
            if reduce(L.bracket(row, {j: ONE})):
                raise GradingError("Quotient by a subspace that is not an ideal")
    return reduce, [i for i in range(L.dim) if i not in by_pivot]


def quotient(L, ideal, name=None):
    """
    L / I for a graded ideal I given by homogeneous vectors.

    Raises:
        GradingError: if I is not an ideal
    """
    return _quotient_with_basis(L, ideal, name)[0]


def _quotient_with_basis(L, ideal, name=None):
    reduce, keep = _reduction(L, ideal)
    new_index = {old: new for new, old in enumerate(keep)}
    table = {}
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            value = reduce(L.basis_bracket(i, j))
            if value:
                table[(a, b)] = {new_index[k]: c for k, c in value.items()}
    return LieSuperalgebra(L.group, [L.labels[i] for i in keep], [L.degrees[i] for i in keep],
                           table, name or f"{L.name}/I", L.family, L.subtype), keep


def quotient_center(L, name=None):
    """L / Z(L); L itself when the centre is zero."""
    center = center_lie(L)
    if not center:
        return L
    return quotient(L, center, name or f"{L.name}/Z")


def supertrace(matrix, parities):
    """str X = tr(X_00) - tr(X_11) for a square matrix with row parities."""
    if len(matrix) != len(parities):
        raise GradingError("Matrix size and parity partition differ")
    total = ZERO
    for i, p in enumerate(parities):
        total = total + _sign(p) * matrix[i][i]
    return total


def algebra_supertrace(algebra, v):
    """Supertrace of a vector of a matrix model (None without a model)."""
    values = algebra.supertrace_values
    if values is None:
        return None
    total = ZERO
    for k, c in v.items():
        if values[k]:
            total = total + c * values[k]
    return total


# Verification

def verify_lie_axioms(L):
    """
    Exhaustive check of the grading, super-anti-commutativity and Jacobi.

    Returns:
        Dict check name -> (is_valid, error_message)
    """
    report = {
        'grading': L.check_grading(),
        'anticommutativity': L.check_anticommutativity(),
        'jacobi': L.check_jacobi(),
    }
    failed = [name for name, (ok, _) in report.items() if not ok]
    if failed:
        logger.warning(f"{L.name}: failed {', '.join(failed)}")
    return report


def _component_words(L, indices):
    """
    Span of the maps L_g -> L given by words in ad L, the inclusion included.

    A map is stored flat: key c * n + k is the k-th coordinate of the image of
    the c-th basis vector of L_g. Rows of the span stay homogeneous.
    """
    n = L.dim
    span = _Span()
    queue = [span.add({c * n + k: ONE for c, k in enumerate(indices)})]
    while queue:
        word = queue.pop()
        columns = defaultdict(dict)
        for key, x in word.items():
            columns[key // n][key % n] = x
        for b in range(n):
            moved = {}
            for c, column in columns.items():
                for k, x in L.bracket({b: ONE}, column).items():
                    moved[c * n + k] = x
            if moved:
                row = span.add(moved)
                if row:
                    queue.append(row)
    return span


def _degree_e_action(L, indices):
    """Basis of the image in End(L_g) of the degree-e words in ad L."""
    n, d = L.dim, len(indices)
    local = {k: r for r, k in enumerate(indices)}
    action = []
    for word in _component_words(L, indices).basis():
        if min(word) % n not in local:
            continue
        mat = [[ZERO] * d for _ in range(d)]
        for key, x in word.items():
            mat[local[key % n]][key // n] = x
        action.append(mat)
    return action


def _trace_product(x, y):
    total = ZERO
    for r, row in enumerate(x):
        for c, a in enumerate(row):
            if a and y[c][r]:
                total = total + a * y[c][r]
    return total


def _commutant_dimension(action, d):
    """Dimension of the centralizer of the action in End(L_g)."""
    units = []
    for r in range(d):
        for c in range(d):
            unit = [[ZERO] * d for _ in range(d)]
            unit[r][c] = ONE
            units.append(unit)
    commuting = units
    for x in action:
        if len(commuting) == 1:
            break
        defects = []
        for y in commuting:
            xy, yx = matmul(x, y), matmul(y, x)
            defects.append([xy[r][c] - yx[r][c] for r in range(d) for c in range(d)])
        rows = [[defect[p] for defect in defects] for p in range(d * d)]
        rows = [row for row in rows if any(row)]
        if not rows:
            continue
        commuting = [
            [[sum((a * y[r][c] for a, y in zip(vec, commuting) if a and y[r][c]), ZERO)
              for c in range(d)] for r in range(d)]
            for vec in nullspace(rows, len(commuting))
        ]
    return len(commuting)


def _component_verdict(L, indices):
    """
    Simplicity of L_g as a module over the degree-e part of the algebra
    generated by ad L.

    The trace form detects the radical of the action; a semisimple action
    with a one-dimensional commutant is simple, and a simple one has
    dim(action) * dim(commutant) = d^2.
    """
    d = len(indices)
    action = _degree_e_action(L, indices)
    if len(action) == d * d:
        return Simplicity.TRUE
    gram = [[_trace_product(x, y) for y in action] for x in action]
    if rank(gram) < len(action):
        return Simplicity.FALSE
    commutant = _commutant_dimension(action, d)
    if commutant == 1:
        return Simplicity.TRUE
    if len(action) * commutant != d * d:
        return Simplicity.FALSE
    return Simplicity.PROBABLY_TRUE


def is_graded_simple_lie(L, trials=None, seed=None):
    """
    Graded simplicity of L.

    FALSE is certain: a proper graded ideal was found, or some component
    L_g is not a simple module over the degree-e words in ad L. TRUE is
    certain: every component is such a simple module with a trivial
    commutant. Otherwise random homogeneous elements are tried and
    PROBABLY_TRUE is returned.

    Args:
        L: LieSuperalgebra
        trials: Number of random rounds (default GRADINGS_SIMPLICITY_TRIALS)
        seed: Random seed (default GRADINGS_RANDOM_SEED)
    """
    trials = config.SIMPLICITY_TRIALS if trials is None else trials
    n = L.dim
    if n == 0 or L.is_abelian():
        return Simplicity.FALSE
    if center_lie(L):
        return Simplicity.FALSE
    brackets = _Span()
    for value in L.table.values():
        brackets.add(value)
    if len(brackets) < n:
        return Simplicity.FALSE
    for i in range(n):
        if len(L.ideal_generated([{i: ONE}])) < n:
            logger.debug(f"{L.name}: basis element {L.labels[i]} generates a proper ideal")
            return Simplicity.FALSE

    components = L.components()
    if all(len(indices) == 1 for indices in components.values()):
        return Simplicity.TRUE
    verdicts = {}
    for degree, indices in components.items():
        verdicts[degree] = _component_verdict(L, indices)
        if verdicts[degree] == Simplicity.FALSE:
            logger.debug(f"{L.name}: component of degree {degree} is not a simple module")
            return Simplicity.FALSE
    if all(v == Simplicity.TRUE for v in verdicts.values()):
        return Simplicity.TRUE

    rng = random.Random(config.RANDOM_SEED if seed is None else seed)
    height = config.RANDOM_HEIGHT
    for _ in range(trials):
        for degree, indices in components.items():
            if verdicts[degree] == Simplicity.TRUE:
                continue
            v = {}
            for i in indices:
                c = rng.randint(-height, height)
                if c:
                    v[i] = Cyclo.rational(c)
            if v and len(L.ideal_generated([v])) < n:
                return Simplicity.FALSE
    return Simplicity.PROBABLY_TRUE


# Series

@dataclass
class LieEmbedding:
    """
    Lie superalgebra of a tuple together with its basis inside the model.

    Args:
        lie: LieSuperalgebra
        algebra: Associative model R, or S for the Type I series
        involution: Superinvolution of R, None for the Type I series
        ambient: Vector of the model standing for each basis element
        kernel: Vectors of the model spanning the centre divided out
    """

    lie: LieSuperalgebra
    algebra: object
    involution: object
    ambient: list
    kernel: list = field(default_factory=list)


def _expand(v, basis):
    result = {}
    for k, c in v.items():
        result = sparse_add(result, basis[k], c)
    return result


def _lie_params(params, tag):
    if isinstance(params, LieParams):
        if params.family != tag:
            raise GradingError(f"Expected {tag} parameters, got {params.family}")
        return params
    return LieParams(tag, params)


def _series_name(params):
    kind, m, n = params.superdimension()
    tag = params.family
    if tag == 'osp':
        return f"osp({m}|{n})"
    if tag == 'p':
        return f"P({m - 1})"
    if tag.startswith('q-lie'):
        return f"Q({m - 1})"
    return f"sl({m}|{n})" if m != n else f"psl({m}|{n})"


def _finish(L, params, name):
    L.name = name
    L.family = params.family
    L.subtype = params.subtype()
    logger.info(f"Built {name} ({params.family}), dim={L.dim}")
    return L


def lie_embedding(params):
    """
    Build the Lie superalgebra of a LieParams tuple and keep track of
    where its basis lives in the associative model.

    Raises:
        OutOfScopeError: for sl(1|1) and psl(2|2)
    """
    params.check()
    tag = params.family
    kind, m, n = params.superdimension()
    if tag.startswith('a-') and m == n and m <= 2:
        raise OutOfScopeError(f"A({m - 1},{n - 1}) is outside the supported series")

    if tag in ('a-1', 'q-lie-1'):
        algebra = params.inner.inner.build().algebra
        involution = None
        L = minus_algebra(algebra)
        ambient = [{i: ONE} for i in range(algebra.dim)]
    else:
        model = build_model(params)
        algebra, involution = model.algebra, model.involution
        L, ambient = skew_with_basis(algebra, involution)

    kernel = []
    if tag != 'osp':
        L, basis = derived_with_basis(L)
        ambient = [_expand(v, ambient) for v in basis]
    if tag not in ('osp', 'p'):
        center = center_lie(L)
        if center:
            kernel = [_expand(v, ambient) for v in center]
            L, keep = _quotient_with_basis(L, center, f"{L.name}/Z")
            ambient = [ambient[i] for i in keep]
    L = _finish(L, params, _series_name(params))
    return LieEmbedding(L, algebra, involution, ambient, kernel)


def build_osp(params):
    """osp(T, beta, kappa0, kappa1, g0) = Skew(M*(...), phi) for even g0."""
    return lie_embedding(_lie_params(params, 'osp')).lie


def build_P(params):
    """P(T, beta, kappa0, h0) = Skew(M*(...), phi)^(1) for g0 = (h0, 1)."""
    return lie_embedding(_lie_params(params, 'p')).lie


def build_Q_lie(params):
    """
    Lie superalgebra of series Q.

    Type I (q-lie-1) starts from the minus algebra of the graded Q(n+1);
    Type II (q-lie-2) from the skew elements of the Qex model.
    """
    if isinstance(params, LieParams):
        tag = params.family
    else:
        tag = 'q-lie-2' if params.family == 'qex' else 'q-lie-1'
    return lie_embedding(_lie_params(params, tag)).lie


def build_A(params):
    """
    Lie superalgebra of series A: sl(m|n) for m != n, psl(n|n) otherwise.

    Raises:
        OutOfScopeError: for sl(1|1) and psl(2|2)
    """
    if isinstance(params, LieParams):
        tag = params.family
    else:
        tag = 'a-1' if params.family == 'type-i' else 'a-2'
    return lie_embedding(_lie_params(params, tag)).lie


_BUILDERS = {
    'osp': build_osp,
    'p': build_P,
    'q-lie-1': build_Q_lie,
    'q-lie-2': build_Q_lie,
    'a-1': build_A,
    'a-2': build_A,
}


def build_lie(params):
    """Build the graded Lie superalgebra of a LieParams tuple."""
    if not isinstance(params, LieParams):
        raise GradingError(f"{params.family} parameters do not describe a Lie superalgebra")
    return _BUILDERS[params.family](params)


# Transport

def transport_isomorphism(params, g, branch='same'):
    """
    Isomorphism L(p) -> L(p') for p' = transport_params(p, g).

    The shift of the graded module gives an isomorphism of the models
    (intertwining the superinvolutions when there are any); it maps the
    basis of L(p) into L(p') modulo the centre divided out.

    Args:
        params: LieParams without an eta override
        g: Witness, as accepted by transport_params
        branch: Only 'same' is induced by a module shift

    Returns:
        Tuple (L, L', images) with the sparse image of each basis element of L

    Raises:
        GradingError: for other branches
        VerificationError: if the induced map does not land in L'
    """
    if branch != 'same':
        raise GradingError(f"Branch '{branch}' is not induced by a module shift")
    source = lie_embedding(params)
    target = lie_embedding(transport_params(params, g, branch))
    if source.involution is None:
        theta, _ = row_transport(source.algebra, target.algebra, g)
    else:
        theta = intertwining_transport(source.algebra, source.involution,
                                       target.algebra, target.involution, g)

    columns = target.ambient + target.kernel
    size, width = target.algebra.dim, len(columns)
    moved = [_expand(v, theta) for v in source.ambient]
    augmented = [
        [v.get(r, ZERO) for v in columns] + [v.get(r, ZERO) for v in moved]
        for r in range(size)
    ]
    reduced, pivots = rref(augmented)
    if pivots != list(range(width)):
        raise VerificationError("Transported basis leaves the target Lie superalgebra")
    dim = target.lie.dim
    images = [
        {row: reduced[row][width + a] for row in range(dim) if reduced[row][width + a]}
        for a in range(len(moved))
    ]
    logger.debug(f"Transport of {source.lie.name} by {g}")
    return source.lie, target.lie, images


def check_lie_isomorphism(L, M, images):
    """
    Check that images of the basis of L define a graded isomorphism onto M.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if L.dim != M.dim or len(images) != L.dim:
        return False, f"dimensions differ: {L.dim} and {M.dim}"
    for a, image in enumerate(images):
        if any(M.degrees[k] != L.degrees[a] for k in image):
            return False, f"image of {L.labels[a]} is not of degree {L.degrees[a]}"
    if rank([to_dense(v, M.dim) for v in images]) < L.dim:
        return False, "map is not bijective"
    for a in range(L.dim):
        for b in range(L.dim):
            left = _expand(L.basis_bracket(a, b), images)
            right = M.bracket(images[a], images[b])
            if sparse_add(left, right, MINUS_ONE):
                return False, f"bracket of {L.labels[a]} and {L.labels[b]} is not preserved"
    return True, None
