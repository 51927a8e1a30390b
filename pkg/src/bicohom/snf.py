"""Exact integer matrices: Smith/Hermite normal forms, mod-m solving, lattices.

All arithmetic is arbitrary-precision integer arithmetic; floats never enter.
The modulus convention used across the package appears here in its rawest
form: m = 0 means "over Z", m >= 2 means "over Z/m", and mod-m problems are
solved by adjoining m times the standard basis as extra lattice generators,
so every operation reduces to an honest computation over Z.
"""

from operator import index as _as_int

from . import backend


class IntMatrix:
    """Immutable row-major integer matrix; zero-sized dimensions allowed."""

    __slots__ = ("_data", "rows", "cols")

    def __init__(self, rows, cols=None):
        data = tuple(tuple(_as_int(e) for e in row) for row in rows)
        self._data = data
        self.rows = len(data)
        if data:
            self.cols = len(data[0])
            if any(len(row) != self.cols for row in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != self.cols:
                raise ValueError("cols mismatch")
        else:
            self.cols = 0 if cols is None else _as_int(cols)

    @classmethod
    def identity(cls, n):
        return cls(backend.identity(n), cols=n)

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [tuple(col) for col in columns]
        if columns:
            nr = len(columns[0])
            if rows is not None and rows != nr:
                raise ValueError("rows mismatch")
        else:
            nr = 0 if rows is None else rows
        return cls([[col[i] for col in columns] for i in range(nr)],
                   cols=len(columns))

    @classmethod
    def diagonal(cls, entries, rows=None, cols=None):
        entries = list(entries)
        nr = len(entries) if rows is None else rows
        nc = len(entries) if cols is None else cols
        data = [[0] * nc for _ in range(nr)]
        for i, e in enumerate(entries):
            data[i][i] = e
        return cls(data, cols=nc)

    def to_lists(self):
        return [list(row) for row in self._data]

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(row[j] for row in self._data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.cols == other.cols
                and self._data == other._data)

    def __hash__(self):
        return hash((self._data, self.cols))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch: %dx%d @ %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        if self.cols == 0 or other.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix(backend.mat_mul(self.to_lists(), other.to_lists()),
                         cols=other.cols)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(ra, rb)]
             for ra, rb in zip(self._data, other._data)], cols=self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IntMatrix([[-e for e in row] for row in self._data],
                         cols=self.cols)

    def scale(self, k):
        k = _as_int(k)
        return IntMatrix([[k * e for e in row] for row in self._data],
                         cols=self.cols)

    def transpose(self):
        return IntMatrix([[self._data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], cols=self.rows)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return IntMatrix([ra + rb for ra, rb in zip(self._data, other._data)],
                         cols=self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return IntMatrix(self._data + other._data, cols=self.cols)

    def mul_vector(self, vec):
        vec = list(vec)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(e * x for e, x in zip(row, vec) if e)
                     for row in self._data)

    def is_zero(self):
        return all(e == 0 for row in self._data for e in row)

    def is_square(self):
        return self.rows == self.cols

    def det(self):
        if not self.is_square():
            raise ValueError("det of a non-square matrix")
        return backend.det(self.to_lists())

    def diagonal_entries(self):
        return tuple(self._data[i][i] for i in range(min(self.rows, self.cols)))

    def __repr__(self):
        if self.rows == 0 or self.cols == 0:
            return "IntMatrix(%dx%d)" % (self.rows, self.cols)
        body = "; ".join(" ".join(str(e) for e in row) for row in self._data)
        return "IntMatrix[%s]" % body


class SnfResult:
    """D = U*A*V with U, V unimodular and D in Smith normal form."""

    __slots__ = ("U", "D", "V", "Uinv", "Vinv")

    def __init__(self, U, D, V, Uinv, Vinv):
        self.U = U
        self.D = D
        self.V = V
        self.Uinv = Uinv
        self.Vinv = Vinv

    @property
    def diagonal(self):
        return self.D.diagonal_entries()

    def __repr__(self):
        return "SnfResult(diagonal=%r)" % (self.diagonal,)


def smith_normal_form(a):
    """Smith normal form of an IntMatrix.

    The diagonal of the returned D is nonnegative and each entry divides the
    next; U and V are unimodular with D = U @ a @ V, and their exact integer
    inverses ride along as Uinv/Vinv.
    """
    if a.rows == 0 or a.cols == 0:
        eye_r = IntMatrix.identity(a.rows)
        eye_c = IntMatrix.identity(a.cols)
        return SnfResult(eye_r, a, eye_c, eye_r, eye_c)
    u, d, v, uinv, vinv = backend.snf_transforms(a.to_lists())
    return SnfResult(IntMatrix(u, cols=a.rows), IntMatrix(d, cols=a.cols),
                     IntMatrix(v, cols=a.cols), IntMatrix(uinv, cols=a.rows),
                     IntMatrix(vinv, cols=a.cols))


def hermite_normal_form(a):
    """Column echelon form (H, W) with H = a @ W and W unimodular.

    Pivots are positive and sit at strictly increasing row indices; columns
    past the last pivot are zero, and the matching columns of W form a basis
    of the integer kernel of a.
    """
    if a.rows == 0:
        return a, IntMatrix.identity(a.cols)
    h, w, _ = backend.col_echelon(a.to_lists(), True)
    return IntMatrix(h, cols=a.cols), IntMatrix(w, cols=a.cols)


def _check_modulus(m):
    m = _as_int(m)
    if m < 0:
        raise ValueError("modulus must be nonnegative")
    return m


def _normalize_columns(cols, nrows):
    """Echelonize a generating set, dropping dependent/zero columns."""
    if not cols:
        return IntMatrix.zeros(nrows, 0)
    mat = IntMatrix.from_columns(cols, rows=nrows)
    h, _, pivots = backend.col_echelon(mat.to_lists(), False)
    kept = [c for (_, c) in pivots]
    return IntMatrix([[h[i][c] for c in kept] for i in range(nrows)],
                     cols=len(kept))


def _augmented(a, m):
    """Columns of a plus m*e_i generators, as row-major lists."""
    rows = a.to_lists()
    if m:
        for i, row in enumerate(rows):
            extra = [0] * a.rows
            extra[i] = m
            row.extend(extra)
    return rows


def kernel_basis(a, m=0):
    """Generators of {x : a @ x == 0 (mod m)} as matrix columns.

    For m > 0 the relators m*e_i are adjoined before reduction, so the result
    generates the full preimage lattice in Z^cols (including m*Z^cols).  The
    m = 0 case is the plain integer kernel.
    """
    m = _check_modulus(m)
    if a.rows == 0:
        # vacuous constraint: the kernel is all of Z^cols
        return IntMatrix.identity(a.cols)
    rows = _augmented(a, m)
    _, w, pivots = backend.col_echelon(rows, True)
    nfree_from = len(pivots)
    ncols_aug = a.cols + (a.rows if m else 0)
    gens = []
    for j in range(nfree_from, ncols_aug):
        col = tuple(w[i][j] for i in range(a.cols))
        if any(col):
            gens.append(col)
    return _normalize_columns(gens, a.cols)


def solve_mod(a, b, m=0):
    """One solution x of a @ x == b (mod m), or None.

    Solving mod m is solving over Z after adjoining the m*e_i columns; the
    witness returned is the plain-x part.  Any returned x satisfies the
    system exactly (substitution is the oracle of record).
    """
    m = _check_modulus(m)
    b = [_as_int(e) for e in b]
    if len(b) != a.rows:
        raise ValueError("right-hand side has wrong length")
    rows = _augmented(a, m)
    h, w, pivots = backend.col_echelon(rows, True)
    residue, coeffs = backend.reduce_columns(h, pivots, b)
    if any(residue):
        return None
    x = [0] * a.cols
    for q, (_, c) in zip(coeffs, pivots):
        if q:
            for i in range(a.cols):
                wic = w[i][c]
                if wic:
                    x[i] += q * wic
    return tuple(x)


def lattice_intersect(b1, b2):
    """Generators of the intersection of two column lattices in Z^rows.

    Built from the integer kernel of [b1 | -b2]: every kernel vector (x; y)
    has b1 @ x == b2 @ y, which is exactly a point of the intersection.
    """
    if b1.rows != b2.rows:
        raise ValueError("lattices live in different ambient ranks")
    stacked = b1.hstack(-b2)
    ker = kernel_basis(stacked, 0)
    gens = []
    for j in range(ker.cols):
        x = [ker[(i, j)] for i in range(b1.cols)]
        gens.append(b1.mul_vector(x))
    return _normalize_columns([g for g in gens if any(g)], b1.rows)
