"""
Exact linear algebra over cyclotomic scalars.

Dense matrices are lists of rows of Cyclo values. Sparse vectors are
dicts mapping a coordinate index to a nonzero Cyclo value.
"""

from cyclo import ONE, ZERO, Cyclo
from validation import GradingError, NotInvertibleError


def zeros(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(mat):
    if not mat:
        return []
    return [[mat[i][j] for i in range(len(mat))] for j in range(len(mat[0]))]


def matmul(a, b):
    """
    Product of dense matrices.

    Raises:
        GradingError: if the inner dimensions differ
    """
    if not a or not b or len(a[0]) != len(b):
        raise GradingError(f"Cannot multiply matrices of shapes {_shape(a)} and {_shape(b)}")
    res = zeros(len(a), len(b[0]))
    for i, row in enumerate(a):
        for k, x in enumerate(row):
            if not x:
                continue
            target = res[i]
            for j, y in enumerate(b[k]):
                if y:
                    target[j] = target[j] + x * y
    return res


def _shape(mat):
    return (len(mat), len(mat[0]) if mat else 0)


def rref(mat):
    """
    Reduced row echelon form.

    Args:
        mat: Dense matrix (not modified)

    Returns:
        Tuple of (reduced matrix, list of pivot columns)
    """
    mat = [list(row) for row in mat]
    if not mat:
        return mat, []

    rows, cols = len(mat), len(mat[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]

        factor = mat[r][c].inverse()
        mat[r] = [x * factor if x else x for x in mat[r]]

        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - y * f if y else x for x, y in zip(mat[i], mat[r])]

        pivots.append(c)
        r += 1
        if r == rows:
            break

    return mat, pivots


def rank(mat):
    return len(rref(mat)[1])


def nullspace(mat, cols=None):
    """
    Basis of the right kernel as dense vectors.

    Args:
        mat: Dense matrix
        cols: Column count, needed when mat has no rows
    """
    if cols is None:
        cols = len(mat[0]) if mat else 0
    if not mat:
        return [[ONE if i == j else ZERO for i in range(cols)] for j in range(cols)]

    reduced, pivots = rref(mat)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [ZERO] * cols
        vec[f] = ONE
        for row, p in enumerate(pivots):
            if reduced[row][f]:
                vec[p] = -reduced[row][f]
        basis.append(vec)
    return basis


def solve(mat, rhs):
    """
    One solution x of mat * x = rhs.

    Raises:
        NotInvertibleError: if the system is inconsistent
    """
    cols = len(mat[0]) if mat else 0
    augmented = [list(row) + [b] for row, b in zip(mat, rhs)]
    reduced, pivots = rref(augmented)
    if cols in pivots:
        raise NotInvertibleError("Linear system has no solution")
    x = [ZERO] * cols
    for row, p in enumerate(pivots):
        x[p] = reduced[row][cols]
    return x


def inverse(mat):
    n = len(mat)
    augmented = [list(row) + ident for row, ident in zip(mat, identity(n))]
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise NotInvertibleError("Matrix is singular")
    return [row[n:] for row in reduced]


def determinant(mat):
    mat = [list(row) for row in mat]
    n = len(mat)
    det = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if mat[i][c]), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            det = -det
        det = det * mat[c][c]
        inv = mat[c][c].inverse()
        for i in range(c + 1, n):
            if mat[i][c]:
                f = mat[i][c] * inv
                mat[i] = [x - y * f if y else x for x, y in zip(mat[i], mat[c])]
    return det


# Sparse vectors

def sparse_add(u, v, scale=ONE):
    """Return u + scale * v."""
    result = dict(u)
    for k, x in v.items():
        value = result.get(k, ZERO) + scale * x
        if value:
            result[k] = value
        else:
            result.pop(k, None)
    return result


def sparse_scale(v, c):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def to_dense(v, size):
    vec = [ZERO] * size
    for k, x in v.items():
        vec[k] = x
    return vec


def from_dense(vec):
    return {k: x for k, x in enumerate(vec) if x}


def echelon_basis(vectors, size):
    """
    Reduced echelon basis of the span of sparse vectors.

    Returns:
        Tuple of (list of sparse basis vectors, list of pivot indices);
        a vector's coordinates in this basis are its values at the pivots.
    """
    if not vectors:
        return [], []
    reduced, pivots = rref([to_dense(v, size) for v in vectors])
    return [from_dense(reduced[i]) for i in range(len(pivots))], pivots


def coordinates(vector, basis, pivots):
    """
    Coordinates of a sparse vector in an echelon basis.

    Returns:
        List of scalars, or None if the vector is outside the span
    """
    coords = [vector.get(p, ZERO) for p in pivots]
    rebuilt = {}
    for c, b in zip(coords, basis):
        if c:
            rebuilt = sparse_add(rebuilt, b, c)
    if sparse_add(rebuilt, vector, Cyclo.coerce(-1)):
        return None
    return coords
