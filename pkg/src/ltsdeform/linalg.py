"""Exact dense linear algebra over the rationals and prime fields.

Scalars over the rationals are plain ``int`` or ``fractions.Fraction``
values (always canonical: a Fraction is demoted to ``int`` whenever its
denominator is 1).  Prime-field scalars are :class:`GFElement` residues.
Everything is exact and deterministic: elimination pivots on the first
nonzero entry in row-major order, nullspace bases list free variables in
ascending index order, and ``solve`` sets free variables to zero.
"""

from __future__ import annotations

from fractions import Fraction


class LinAlgError(ValueError):
    """Shape mismatch or invalid field setup."""


# ---------------------------------------------------------------------------
# fields


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class GFElement:
    """Residue in GF(p), stored as the canonical representative in [0, p)."""

    __slots__ = ("val", "p")

    def __init__(self, val, p):
        self.val = val % p
        self.p = p

    def __add__(self, other):
        if isinstance(other, GFElement):
            return GFElement(self.val + other.val, self.p)
        if isinstance(other, int):
            return GFElement(self.val + other, self.p)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GFElement):
            return GFElement(self.val - other.val, self.p)
        if isinstance(other, int):
            return GFElement(self.val - other, self.p)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return GFElement(other - self.val, self.p)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GFElement):
            return GFElement(self.val * other.val, self.p)
        if isinstance(other, int):
            return GFElement(self.val * other, self.p)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return GFElement(-self.val, self.p)

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return "%d (mod %d)" % (self.val, self.p)


class RationalField:
    """The field of rational numbers; scalars are int | Fraction."""

    char = 0

    def __call__(self, v):
        if isinstance(v, int):
            return v
        q = Fraction(v)
        return q.numerator if q.denominator == 1 else q

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        q = Fraction(a) / Fraction(b)
        return q.numerator if q.denominator == 1 else q

    def parse(self, s):
        return self(Fraction(s.strip()))

    def format(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for a prime p, validated at construction."""

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise LinAlgError("prime field modulus must be prime, got %r" % (p,))
        self.p = p
        self.char = p

    def __call__(self, v):
        if isinstance(v, GFElement):
            if v.p != self.p:
                raise LinAlgError("mixed prime fields: %d vs %d" % (v.p, self.p))
            return v
        if isinstance(v, int):
            return GFElement(v, self.p)
        q = Fraction(v)
        return self._from_fraction(q)

    def _from_fraction(self, q):
        if q.denominator % self.p == 0:
            raise LinAlgError("denominator %d not invertible mod %d" % (q.denominator, self.p))
        inv = pow(q.denominator, self.p - 2, self.p)
        return GFElement(q.numerator * inv, self.p)

    @property
    def zero(self):
        return GFElement(0, self.p)

    @property
    def one(self):
        return GFElement(1, self.p)

    def div(self, a, b):
        b = self(b)
        if not b:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return self(a) * GFElement(pow(b.val, self.p - 2, self.p), self.p)

    def parse(self, s):
        return self._from_fraction(Fraction(s.strip()))

    def format(self, x):
        return str(self(x).val)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = RationalField()


def field_from_spec(spec):
    """Map a field spec string ("rational" or "gf:<p>") to a field object."""
    if spec == "rational":
        return QQ
    if spec.startswith("gf:"):
        return PrimeField(int(spec[3:]))
    raise LinAlgError("unknown field spec %r" % (spec,))


def field_spec(field):
    return "rational" if field.char == 0 else "gf:%d" % field.char


# ---------------------------------------------------------------------------
# dense matrices


class Matrix:
    """Dense row-major matrix over a fixed field."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, rows, field=QQ, copy=True):
        rows = [list(r) if copy else r for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise LinAlgError("ragged rows")
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows
        self.field = field

    @classmethod
    def identity(cls, n, field=QQ):
        one, zero = field.one, field.zero
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)],
                   field, copy=False)

    @classmethod
    def zero(cls, nrows, ncols, field=QQ):
        z = field.zero
        return cls([[z] * ncols for _ in range(nrows)], field, copy=False)

    @classmethod
    def from_columns(cls, cols, nrows, field=QQ):
        z = field.zero
        rows = [[z] * len(cols) for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                rows[i][j] = v
        return cls(rows, field, copy=False)

    def entry(self, i, j):
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)], self.field, copy=False)

    def apply(self, vec):
        """Matrix-vector product, returning a plain list."""
        if len(vec) != self.ncols:
            raise LinAlgError("dimension mismatch: %d cols vs vector of length %d"
                              % (self.ncols, len(vec)))
        out = []
        for row in self.rows:
            s = self.field.zero
            for a, x in zip(row, vec):
                if a and x:
                    s = s + a * x
            out.append(s)
        return out

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise LinAlgError("dimension mismatch in product: %dx%d times %dx%d"
                              % (self.nrows, self.ncols, other.nrows, other.ncols))
        z = self.field.zero
        out = [[z] * other.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            oi = out[i]
            for k, a in enumerate(row):
                if not a:
                    continue
                brow = other.rows[k]
                for j, b in enumerate(brow):
                    if b:
                        oi[j] = oi[j] + a * b
        return Matrix(out, self.field, copy=False)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinAlgError("dimension mismatch in sum")
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)], self.field, copy=False)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinAlgError("dimension mismatch in difference")
        return Matrix([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)], self.field, copy=False)

    def scale(self, c):
        return Matrix([[c * a for a in r] for r in self.rows], self.field, copy=False)

    def is_zero(self):
        return all(not a for r in self.rows for a in r)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return "Matrix(%dx%d: %s)" % (self.nrows, self.ncols, body)


# ---------------------------------------------------------------------------
# reduced row echelon form on sparse rows
#
# Rows are dicts {column index: nonzero scalar}.  The result is the unique
# RREF of the row span, as a dict {pivot column: row dict} with pivot entry 1
# and pivot columns eliminated everywhere else.  Uniqueness of the RREF makes
# every routine below independent of row ordering and scheduling.


class RrefAccumulator:
    """Incrementally maintained RREF of the rows fed to add()."""

    def __init__(self, field):
        self.field = field
        self.pivots = {}

    def reduce(self, row):
        """Remainder of row after reduction by the current pivot rows."""
        r = {c: v for c, v in row.items() if v}
        out = {}
        while r:
            c = min(r)
            prow = self.pivots.get(c)
            if prow is None:
                out[c] = r.pop(c)
                continue
            coef = r.pop(c)
            for cc, v in prow.items():
                if cc == c:
                    continue
                tgt = out if cc in out else r
                cur = tgt.get(cc)
                if cur is None:
                    r[cc] = -coef * v
                else:
                    cur = cur - coef * v
                    if cur:
                        tgt[cc] = cur
                    else:
                        del tgt[cc]
        return out

    def add(self, row):
        """Insert a row; returns True when it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        piv = r.pop(c)
        field = self.field
        r = {cc: field.div(v, piv) for cc, v in r.items()}
        r[c] = field.one
        for pc, prow in self.pivots.items():
            coef = prow.get(c)
            if coef is None:
                continue
            del prow[c]
            for cc, v in r.items():
                if cc == c:
                    continue
                cur = prow.get(cc)
                if cur is None:
                    prow[cc] = -coef * v
                else:
                    cur = cur - coef * v
                    if cur:
                        prow[cc] = cur
                    else:
                        del prow[cc]
        self.pivots[c] = r
        return True

    @property
    def rank(self):
        return len(self.pivots)


def rref_rows(rows, field):
    acc = RrefAccumulator(field)
    for row in rows:
        acc.add(row)
    return acc.pivots


def nullspace_from_rref(pivots, ncols, field):
    """Canonical kernel basis: one column per free column, ascending.

    Each basis column carries 1 at its free coordinate, so reading a kernel
    vector's coordinates off the free positions recovers its expansion.
    Returns (columns, free_positions) with columns as sparse dicts.
    """
    one = field.one
    free = [c for c in range(ncols) if c not in pivots]
    cols = []
    for f in free:
        col = {f: one}
        for pc, prow in pivots.items():
            v = prow.get(f)
            if v is not None:
                col[pc] = -v
        cols.append(col)
    return cols, free


def _matrix_rows_sparse(m):
    return [{j: v for j, v in enumerate(row) if v} for row in m.rows]


def rank(m):
    """Exact rank over the matrix field."""
    return len(rref_rows(_matrix_rows_sparse(m), m.field))


def nullspace(m):
    """Basis of the right kernel as matrix columns (deterministic)."""
    pivots = rref_rows(_matrix_rows_sparse(m), m.field)
    cols, _ = nullspace_from_rref(pivots, m.ncols, m.field)
    z = m.field.zero
    dense = []
    for col in cols:
        v = [z] * m.ncols
        for i, val in col.items():
            v[i] = val
        dense.append(v)
    return Matrix.from_columns(dense, m.ncols, m.field)


def solve(a, b):
    """One particular solution of a x = b, or None when inconsistent.

    Free variables are set to zero in the canonical echelon form.
    """
    if len(b) != a.nrows:
        raise LinAlgError("dimension mismatch: %d rows vs rhs of length %d"
                          % (a.nrows, len(b)))
    aug = a.ncols
    rows = []
    for row, rhs in zip(a.rows, b):
        r = {j: v for j, v in enumerate(row) if v}
        if rhs:
            r[aug] = rhs
        rows.append(r)
    pivots = rref_rows(rows, a.field)
    if aug in pivots:
        return None
    z = a.field.zero
    x = [z] * a.ncols
    for pc, prow in pivots.items():
        v = prow.get(aug)
        if v is not None:
            x[pc] = v
    return x
