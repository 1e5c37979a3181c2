"""Dense exact linear algebra over a field handle.

Matrices are lists of rows of field values; subspaces are lists of column
vectors (plain lists). Shapes with a zero dimension are legal everywhere; a
function that cannot infer a column count from ``[]`` takes it explicitly.
"""


def zeros(F, r, c):
    return [[F.zero] * c for _ in range(r)]


def identity(F, n):
    m = zeros(F, n, n)
    for i in range(n):
        m[i][i] = F.one
    return m


def copy(A):
    return [list(row) for row in A]


def ncols(A, default=0):
    return len(A[0]) if A else default


def transpose(A, cols=None):
    c = ncols(A, cols or 0)
    return [[row[j] for row in A] for j in range(c)]


def matmul(F, A, B, cols=None):
    """A (r x k) times B (k x c); ``cols`` gives c when B has no rows."""
    if not A:
        return []
    k = len(A[0])
    c = len(B[0]) if B else (cols or 0)
    if k == 0:
        return zeros(F, len(A), c)
    if F.native:
        red = F.reduce
        out = []
        Bt = list(zip(*B))
        for row in A:
            out.append([red(sum((x * y for x, y in zip(row, col)), F.zero)) for col in Bt])
        return out
    add, mul = F.add, F.mul
    out = []
    for row in A:
        new = []
        for j in range(c):
            acc = F.zero
            for t in range(k):
                if row[t] != F.zero:
                    acc = add(acc, mul(row[t], B[t][j]))
            new.append(acc)
        out.append(new)
    return out


def matvec(F, A, v):
    add, mul = F.add, F.mul
    out = []
    for row in A:
        acc = F.zero
        for x, y in zip(row, v):
            acc = add(acc, mul(x, y))
        out.append(acc)
    return out


def mat_add(F, A, B):
    return [[F.add(x, y) for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(F, A, B):
    return [[F.sub(x, y) for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(F, c, A):
    return [[F.mul(c, x) for x in row] for row in A]


def is_zero(F, A):
    return all(x == F.zero for row in A for x in row)


def mat_pow(F, A, k):
    n = len(A)
    result = identity(F, n)
    base = A
    while k:
        if k & 1:
            result = matmul(F, result, base)
        base = matmul(F, base, base)
        k >>= 1
    return result


def poly_at_matrix(p, A):
    """p(A) by Horner's rule."""
    F = p.field
    n = len(A)
    acc = zeros(F, n, n)
    for c in reversed(p.coeffs):
        acc = matmul(F, acc, A) if n else acc
        for i in range(n):
            acc[i][i] = F.add(acc[i][i], c)
    return acc


def block_diag(F, blocks):
    n = sum(len(b) for b in blocks)
    out = zeros(F, n, n)
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return out


def rref(F, A, cols=None):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = copy(A)
    rows = len(R)
    c = ncols(R, cols or 0)
    pivots = []
    r = 0
    zero = F.zero
    for j in range(c):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if R[i][j] != zero), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][j])
        R[r] = [F.mul(inv, x) for x in R[r]]
        pr = R[r]
        for i in range(rows):
            if i != r and R[i][j] != zero:
                f = R[i][j]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], pr)]
        pivots.append(j)
        r += 1
    return R, pivots


def rank(F, A, cols=None):
    return len(rref(F, A, cols)[1])


def nullspace(F, A, cols=None):
    """Basis of {x : A x = 0}, one vector per free column, in echelon order."""
    c = ncols(A, cols or 0)
    R, pivots = rref(F, A, c)
    free = [j for j in range(c) if j not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * c
        v[f] = F.one
        for i, pj in enumerate(pivots):
            v[pj] = F.neg(R[i][f])
        basis.append(v)
    return basis


def echelon_basis(F, vectors, dim):
    """Column-reduced echelon basis of span(vectors) in F^dim.

    The output is canonical for the subspace: it is the reduced row echelon
    form of the matrix whose rows are the vectors.
    """
    if not vectors:
        return []
    R, pivots = rref(F, [list(v) for v in vectors], dim)
    return [R[i] for i in range(len(pivots))]


def inverse(F, A):
    n = len(A)
    aug = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(F, aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(F, A):
    n = len(A)
    R = copy(A)
    d = F.one
    for j in range(n):
        piv = next((i for i in range(j, n) if R[i][j] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != j:
            R[j], R[piv] = R[piv], R[j]
            d = F.neg(d)
        d = F.mul(d, R[j][j])
        inv = F.inv(R[j][j])
        for i in range(j + 1, n):
            if R[i][j] != F.zero:
                f = F.mul(R[i][j], inv)
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[j])]
    return d


def solve(F, A, b, cols=None):
    """Some x with A x = b, or None."""
    c = ncols(A, cols or 0)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(F, aug, c + 1)
    if c in pivots:
        return None
    x = [F.zero] * c
    for i, pj in enumerate(pivots):
        x[pj] = R[i][c]
    return x


def columns_matrix(vectors, dim):
    """Matrix (dim x k) whose columns are the given vectors."""
    return [[v[i] for v in vectors] for i in range(dim)]


def coordinates(F, basis, dim):
    """Return a function mapping a vector of span(basis) to its coordinates.

    Raises ValueError for vectors outside the span.
    """
    k = len(basis)
    B = columns_matrix(basis, dim)

    def coords(v):
        if k == 0:
            if any(x != F.zero for x in v):
                raise ValueError("vector not in span")
            return []
        x = solve(F, B, v, k)
        if x is None:
            raise ValueError("vector not in span")
        return x

    return coords


def restrict(F, A, basis):
    """Matrix of A on the A-invariant subspace spanned by ``basis``."""
    dim = len(A)
    coords = coordinates(F, basis, dim)
    cols = [coords(matvec(F, A, v)) for v in basis]
    k = len(basis)
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def in_span(F, basis, v, dim):
    if not basis:
        return all(x == F.zero for x in v)
    return rank(F, [list(b) for b in basis] + [list(v)], dim) == rank(F, basis, dim)
