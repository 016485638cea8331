"""
Sparse G#-graded (super)algebras given by structure constants.

Every constructed associative model (graded-division algebras, matrix
algebras over them, exchange pairs) is a GradedAlgebra: a labelled
homogeneous basis and a table (i, j) -> {k: coefficient}.
"""

import logging
from collections import defaultdict

import config
from abelian import GSharpElement, as_sharp
from cyclo import ONE, ZERO, Cyclo
from linalg import echelon_basis, nullspace, sparse_add, sparse_scale
from validation import GradingError

logger = logging.getLogger('gradings.algebra')

MINUS_ONE = Cyclo.coerce(-1)


def sign(exponent):
    return MINUS_ONE if exponent % 2 else ONE


class GradedAlgebra:
    """
    Finite-dimensional G#-graded superalgebra.

    Args:
        group: FinAbGroup G
        labels: Basis labels
        degrees: GSharpElement degree of each basis element
        table: Map (i, j) -> {k: Cyclo} of nonzero basis products
        unit: Optional sparse vector of the identity element
        name: Human readable name
    """

    def __init__(self, group, labels, degrees, table, unit=None, name=''):
        if len(labels) != len(degrees):
            raise GradingError("Labels and degrees differ in length")
        if len(labels) > config.MAX_ALGEBRA_DIM:
            raise GradingError(
                f"Algebra dimension {len(labels)} exceeds {config.MAX_ALGEBRA_DIM}"
            )
        self.group = group
        self.labels = list(labels)
        self.degrees = [as_sharp(d) for d in degrees]
        self.table = {
            key: {k: c for k, c in value.items() if c}
            for key, value in table.items()
        }
        self.table = {key: value for key, value in self.table.items() if value}
        self.unit = unit
        self.name = name
        self.supertrace_values = None

    @property
    def dim(self):
        return len(self.labels)

    def parity(self, i):
        return self.degrees[i].parity

    def basis_product(self, i, j):
        return self.table.get((i, j), {})

    def multiply(self, u, v):
        """Product of sparse vectors."""
        result = {}
        for i, a in u.items():
            for j, b in v.items():
                product = self.table.get((i, j))
                if product:
                    result = sparse_add(result, product, a * b)
        return result

    def supercommutator(self, u, v):
        """[u, v] for homogeneous u, v."""
        pu = self._vector_parity(u)
        pv = self._vector_parity(v)
        return sparse_add(self.multiply(u, v), self.multiply(v, u), -sign(pu * pv))

    def _vector_parity(self, v):
        parities = {self.parity(i) for i in v}
        if len(parities) > 1:
            raise GradingError("Vector is not homogeneous")
        return parities.pop() if parities else 0

    def components(self):
        """Map degree -> list of basis indices, in basis order."""
        result = defaultdict(list)
        for i, d in enumerate(self.degrees):
            result[d].append(i)
        return dict(result)

    def support(self):
        return sorted(set(self.degrees))

    def component_dim(self, g):
        """
        Dimension of a homogeneous component.

        Args:
            g: GSharpElement for the G#-component, or GroupElement for the
               G-component (both parities)
        """
        if isinstance(g, GSharpElement):
            return sum(1 for d in self.degrees if d == g)
        return sum(1 for d in self.degrees if d.element == g)

    def fingerprint(self):
        """Sorted (degree, dimension) pairs."""
        comps = self.components()
        return tuple(sorted((d.key(), len(v)) for d, v in comps.items()))

    # -- checks -----------------------------------------------------------

    def check_grading(self):
        """
        Check deg(b_i b_j) = deg(b_i) deg(b_j) on all nonzero products.

        Returns:
            Tuple of (is_valid, error_message)
        """
        for (i, j), product in self.table.items():
            expected = self.degrees[i] * self.degrees[j]
            for k in product:
                if self.degrees[k] != expected:
                    return False, (
                        f"{self.labels[i]} * {self.labels[j]} has a term {self.labels[k]} "
                        f"of degree {self.degrees[k]}, expected {expected}"
                    )
        return True, None

    def check_associativity(self):
        """Check (b_i b_j) b_k = b_i (b_j b_k) on all basis triples."""
        n = self.dim
        for i in range(n):
            for j in range(n):
                left_ij = self.table.get((i, j), {})
                for k in range(n):
                    left = self.multiply(left_ij, {k: ONE}) if left_ij else {}
                    jk = self.table.get((j, k), {})
                    right = self.multiply({i: ONE}, jk) if jk else {}
                    if sparse_add(left, right, MINUS_ONE):
                        return False, (
                            f"Associativity fails on ({self.labels[i]}, "
                            f"{self.labels[j]}, {self.labels[k]})"
                        )
        return True, None

    def check_unit(self):
        if self.unit is None:
            return False, "No unit recorded"
        for i in range(self.dim):
            e = {i: ONE}
            if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                return False, f"Unit fails on {self.labels[i]}"
        return True, None

    # -- linear maps ------------------------------------------------------

    def left_multiplication(self, v):
        """Dense matrix of x -> v x."""
        columns = [self.multiply(v, {j: ONE}) for j in range(self.dim)]
        return [[columns[j].get(i, ZERO) for j in range(self.dim)] for i in range(self.dim)]

    def ideal_generated(self, vectors):
        """
        Two-sided ideal generated by homogeneous vectors.

        Returns:
            Echelon basis (list of sparse vectors) of the ideal
        """
        basis, _ = echelon_basis(list(vectors), self.dim)
        while True:
            spanning = list(basis)
            for v in basis:
                for i in range(self.dim):
                    e = {i: ONE}
                    spanning.append(self.multiply(e, v))
                    spanning.append(self.multiply(v, e))
            grown, _ = echelon_basis([w for w in spanning if w], self.dim)
            if len(grown) == len(basis):
                return grown
            basis = grown

    # -- constructions ----------------------------------------------------

    def superopposite(self):
        """Same space with product a * b = (-1)^{|a||b|} b a."""
        table = {}
        for (i, j), product in self.table.items():
            table[(j, i)] = sparse_scale(product, sign(self.parity(i) * self.parity(j)))
        return GradedAlgebra(
            self.group, [f"{label}'" for label in self.labels], self.degrees, table,
            self.unit, f"{self.name}^sop"
        )

    def direct_product(self, other, name=None):
        """Direct product; basis of self followed by basis of other."""
        if other.group != self.group:
            raise GradingError("Direct product of algebras graded by different groups")
        n = self.dim
        table = dict(self.table)
        for (i, j), product in other.table.items():
            table[(i + n, j + n)] = {k + n: c for k, c in product.items()}
        unit = None
        if self.unit is not None and other.unit is not None:
            unit = dict(self.unit)
            unit.update({k + n: c for k, c in other.unit.items()})
        return GradedAlgebra(
            self.group, self.labels + other.labels, self.degrees + other.degrees,
            table, unit, name or f"{self.name} x {other.name}"
        )

    def regraded_by_parity(self):
        """Same algebra with only the Z2-grading kept."""
        identity = self.group.identity()
        degrees = [GSharpElement(identity, d.parity) for d in self.degrees]
        return GradedAlgebra(self.group, self.labels, degrees, self.table, self.unit, self.name)

    # -- centres ----------------------------------------------------------

    def _commuting_subspace(self, super_signs):
        basis = []
        for degree, indices in sorted(self.components().items(), key=lambda kv: kv[0].key()):
            rows = []
            seen = set()
            p = degree.parity
            for j in range(self.dim):
                e = {j: ONE}
                s = sign(p * self.parity(j)) if super_signs else ONE
                images = [
                    sparse_add(self.multiply({i: ONE}, e), self.multiply(e, {i: ONE}), -s)
                    for i in indices
                ]
                for target in range(self.dim):
                    row = tuple(img.get(target, ZERO) for img in images)
                    if any(row) and row not in seen:
                        seen.add(row)
                        rows.append(list(row))
            for vec in nullspace(rows, len(indices)):
                basis.append({indices[a]: x for a, x in enumerate(vec) if x})
        return basis

    def center(self):
        """Homogeneous basis of {z : z x = x z for all x}."""
        return self._commuting_subspace(False)

    def supercenter(self):
        """Homogeneous basis of {z : z x = (-1)^{|z||x|} x z for all x}."""
        return self._commuting_subspace(True)

    # -- semisimplicity ---------------------------------------------------

    def trace_form_radical(self):
        """
        Kernel of the trace form (x, y) -> tr(L_{xy}).

        Over characteristic zero this is the Jacobson radical.
        """
        n = self.dim
        traces = []
        for k in range(n):
            # tr(L_{b_k}) = sum_i coefficient of b_i in b_k b_i
            t = ZERO
            for i in range(n):
                t = t + self.table.get((k, i), {}).get(i, ZERO)
            traces.append(t)
        gram = []
        for i in range(n):
            row = []
            for j in range(n):
                value = ZERO
                for k, c in self.table.get((i, j), {}).items():
                    if traces[k]:
                        value = value + c * traces[k]
                row.append(value)
            gram.append(row)
        return nullspace(gram, n)

    def is_semisimple(self):
        return not self.trace_form_radical()

    def __repr__(self):
        return f"GradedAlgebra({self.name!r}, dim={self.dim})"


def is_graded_simple(algebra):
    """
    Graded simplicity of a unital associative superalgebra.

    Uses: the product is nonzero, the trace-form radical vanishes, and
    the identity component of the centre is one-dimensional.
    """
    if algebra.dim == 0 or not algebra.table:
        return False
    if not algebra.is_semisimple():
        return False
    identity = GSharpElement(algebra.group.identity(), 0)
    central = [z for z in algebra.center() if all(algebra.degrees[i] == identity for i in z)]
    return len(central) == 1


def is_simple_superalgebra(algebra):
    """Simplicity as a superalgebra (only the parity grading kept)."""
    return is_graded_simple(algebra.regraded_by_parity())
