"""Exact field arithmetic and dense matrix reduction primitives.

Everything downstream (path algebras, module categories, homological
invariants) reduces to exact rank computations done here.  Rationals are
`fractions.Fraction` (always reduced, arbitrary precision); prime fields
are ints in [0, p).  No floating point anywhere.
"""

from fractions import Fraction

from .errors import FinhomError


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FieldSpec:
    """The ground field: the rationals or a prime field F_p."""

    __slots__ = ("kind", "p")

    def __init__(self, kind, p=None):
        if kind not in ("Q", "Fp"):
            raise FinhomError(f"unknown field kind {kind!r}")
        if kind == "Fp":
            if p is None or not _is_prime(p):
                raise FinhomError(f"PrimeField needs a prime p, got {p!r}")
        self.kind = kind
        self.p = p

    @staticmethod
    def rationals():
        return FieldSpec("Q")

    @staticmethod
    def prime_field(p):
        return FieldSpec("Fp", p)

    # -- element operations -------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def coerce(self, value):
        """Bring an int / Fraction / 'a/b' string into this field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.kind == "Q":
            return Fraction(value)
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
            if den % self.p == 0:
                raise FinhomError(f"denominator {den} not invertible mod {self.p}")
            return (num * pow(den, -1, self.p)) % self.p
        return value % self.p

    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "Q" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "Q" else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.kind == "Q" else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- misc ----------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "Q" if self.kind == "Q" else f"F{self.p}"


QQ = FieldSpec.rationals()


class ExactMatrix:
    """Dense matrix over a FieldSpec, row-major.

    Vectors are plain lists.  Pivoting is deterministic (first nonzero
    entry in scan order) so downstream bases are reproducible.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        if ncols is None:
            if not rows:
                raise FinhomError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        self.ncols = ncols
        for r in rows:
            if len(r) != ncols:
                raise FinhomError("ragged rows")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zeros(field, nrows, ncols):
        z = field.zero
        return ExactMatrix(field, [[z] * ncols for _ in range(nrows)], ncols)

    @staticmethod
    def identity(field, n):
        z, o = field.zero, field.one
        rows = [[z] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = o
        return ExactMatrix(field, rows, n)

    @staticmethod
    def from_rows(field, rows, ncols=None):
        return ExactMatrix(field, [[field.coerce(x) for x in r] for r in rows], ncols)

    def copy(self):
        return ExactMatrix(self.field, [r[:] for r in self.rows], self.ncols)

    # -- arithmetic -----------------------------------------------------------

    def mul(self, other):
        if self.ncols != other.nrows:
            raise FinhomError(f"shape mismatch {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
        F = self.field
        add, mul, z = F.add, F.mul, F.zero
        orows = other.rows
        out = []
        for arow in self.rows:
            acc = [z] * other.ncols
            for k, a in enumerate(arow):
                if a:
                    brow = orows[k]
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] = add(acc[j], mul(a, b))
            out.append(acc)
        return ExactMatrix(F, out, other.ncols)

    def add_(self, other):
        F = self.field
        return ExactMatrix(
            F,
            [[F.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.ncols,
        )

    def sub_(self, other):
        F = self.field
        return ExactMatrix(
            F,
            [[F.sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.ncols,
        )

    def scale(self, c):
        F = self.field
        return ExactMatrix(F, [[F.mul(c, a) for a in r] for r in self.rows], self.ncols)

    def transpose(self):
        if self.nrows == 0:
            return ExactMatrix(self.field, [[] for _ in range(self.ncols)], 0)
        if self.ncols == 0:
            return ExactMatrix(self.field, [], self.nrows)
        return ExactMatrix(self.field, [list(col) for col in zip(*self.rows)], self.nrows)

    def apply_row(self, vec):
        """vec (length nrows) times self: returns row vector of length ncols."""
        F = self.field
        add, mul, z = F.add, F.mul, F.zero
        out = [z] * self.ncols
        for i, v in enumerate(vec):
            if v:
                row = self.rows[i]
                for j, a in enumerate(row):
                    if a:
                        out[j] = add(out[j], mul(v, a))
        return out

    def is_zero(self):
        return all(not x for r in self.rows for x in r)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"ExactMatrix({self.field}, {self.nrows}x{self.ncols})"

    # -- reduction ------------------------------------------------------------

    def rref(self):
        """Reduced row echelon form.  Returns (matrix, pivot column tuple)."""
        F = self.field
        sub, mul, inv = F.sub, F.mul, F.inv
        rows = [r[:] for r in self.rows]
        m, n = self.nrows, self.ncols
        pivots = []
        pr = 0
        for pc in range(n):
            if pr >= m:
                break
            sel = None
            for i in range(pr, m):
                if rows[i][pc]:
                    sel = i
                    break
            if sel is None:
                continue
            rows[pr], rows[sel] = rows[sel], rows[pr]
            prow = rows[pr]
            c = prow[pc]
            if c != F.one:
                ic = inv(c)
                rows[pr] = prow = [mul(ic, x) for x in prow]
            for i in range(m):
                if i != pr and rows[i][pc]:
                    f = rows[i][pc]
                    ri = rows[i]
                    rows[i] = [sub(a, mul(f, b)) for a, b in zip(ri, prow)]
            pivots.append(pc)
            pr += 1
        return ExactMatrix(F, rows, n), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Canonical basis of the right null space {v : self @ v = 0}.

        One vector per free column of the rref, ordered by free column.
        """
        R, pivots = self.rref()
        pivset = set(pivots)
        F = self.field
        basis = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = [F.zero] * self.ncols
            v[f] = F.one
            for r, pc in enumerate(pivots):
                entry = R.rows[r][f]
                if entry:
                    v[pc] = F.neg(entry)
            basis.append(v)
        return basis

    def left_kernel_basis(self):
        """Canonical basis of {v : v @ self = 0} (row vectors of length nrows)."""
        return self.transpose().kernel_basis()

    def mul_vec(self, v):
        """self times column vector v; returns list of length nrows."""
        F = self.field
        add, mul, z = F.add, F.mul, F.zero
        out = []
        for row in self.rows:
            acc = z
            for a, x in zip(row, v):
                if a and x:
                    acc = add(acc, mul(a, x))
            out.append(acc)
        return out


class Echelon:
    """Growing echelonized row space with canonical reduction.

    Rows are kept reduced (each pivot column is zero in every other row),
    pivot = first nonzero position, pivot entry normalized to 1.  Insertion
    order does not affect the resulting row space, and `reduce` is the
    canonical normal form modulo the space.
    """

    __slots__ = ("field", "width", "rows", "pivots", "_pivset")

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.rows = []
        self.pivots = []
        self._pivset = {}

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return vec reduced modulo the current row space (a fresh list)."""
        F = self.field
        sub, mul = F.sub, F.mul
        v = list(vec)
        for pc, idx in self._pivset.items():
            c = v[pc]
            if c:
                row = self.rows[idx]
                v = [sub(a, mul(c, b)) for a, b in zip(v, row)]
        return v

    def insert(self, vec):
        """Reduce and, if nonzero, add to the space.  Returns True if grown."""
        F = self.field
        v = self.reduce(vec)
        piv = None
        for j, c in enumerate(v):
            if c:
                piv = j
                break
        if piv is None:
            return False
        c = v[piv]
        if c != F.one:
            ic = F.inv(c)
            v = [F.mul(ic, x) for x in v]
        # back-substitute into existing rows so reduction stays canonical
        for i, row in enumerate(self.rows):
            e = row[piv]
            if e:
                self.rows[i] = [F.sub(a, F.mul(e, b)) for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(piv)
        self._pivset[piv] = len(self.rows) - 1
        return True

    def contains(self, vec):
        return all(not x for x in self.reduce(vec))

    def basis(self):
        """Rows sorted by pivot column (canonical rref basis of the space)."""
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        return [self.rows[i] for i in order]


class CoordSpan:
    """Echelonized span that can express members in the inserted vectors.

    Augments each vector with coordinate bookkeeping so `coords` returns
    the coefficients of a member relative to the insertion order.
    """

    __slots__ = ("field", "width", "rows", "coeffs", "_pivots", "count")

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.rows = []
        self.coeffs = []  # parallel: combination of inserted vectors per row
        self._pivots = {}
        self.count = 0

    @property
    def dim(self):
        return len(self.rows)

    def _reduce(self, vec, comb):
        F = self.field
        sub, mul = F.sub, F.mul
        v = list(vec)
        c = list(comb)
        for pc, idx in self._pivots.items():
            f = v[pc]
            if f:
                row = self.rows[idx]
                coe = self.coeffs[idx]
                v = [sub(a, mul(f, b)) for a, b in zip(v, row)]
                c = [sub(a, mul(f, b)) for a, b in zip(c, coe)]
        return v, c

    def insert(self, vec):
        """Insert; returns True when the span grows."""
        F = self.field
        comb = [F.zero] * self.count + [F.one]
        for row_c in self.coeffs:
            row_c.append(F.zero)
        self.count += 1
        v, c = self._reduce(vec, comb)
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            # roll back the widening for a dependent vector
            self.count -= 1
            for row_c in self.coeffs:
                row_c.pop()
            return False
        ic = F.inv(v[piv])
        v = [F.mul(ic, x) for x in v]
        c = [F.mul(ic, x) for x in c]
        for i, row in enumerate(self.rows):
            e = row[piv]
            if e:
                self.rows[i] = [F.sub(a, F.mul(e, b)) for a, b in zip(row, v)]
                self.coeffs[i] = [F.sub(a, F.mul(e, b)) for a, b in zip(self.coeffs[i], c)]
        self.rows.append(v)
        self.coeffs.append(c)
        self._pivots[piv] = len(self.rows) - 1
        return True

    def coords(self, vec):
        """Coefficients of vec over the inserted vectors, or None if outside."""
        F = self.field
        comb = [F.zero] * self.count
        v, c = self._reduce(vec, comb)
        if any(x for x in v):
            return None
        return [F.neg(x) for x in c]
