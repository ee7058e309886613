"""Exact scalars over Q and GF(p), and canonical subspace linear algebra.

Scalars are plain Python values: ``Fraction`` (or ``int``) over the rationals
and ``int`` residues in ``[0, p)`` over a prime field.  Vectors are tuples of
scalars.  Matrices are tuples of row tuples and act on column vectors from the
left, ``(M v)_r = sum_c M[r][c] * v_c``.

A :class:`Subspace` is identified by its reduced row-echelon basis, so two
subspaces compare equal exactly when they are equal as sets.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, EnumerationTooLarge, ParseError

Vector = tuple
Matrix = tuple

_INT_RE = re.compile(r"^[+-]?\d+$")
_RAT_RE = re.compile(r"^[+-]?\d+/\d+$")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Ground field: the rationals (``p == 0``) or GF(p) for a prime ``p``."""

    p: int = 0

    def __post_init__(self):
        if self.p and not (2 <= self.p < 2**31 and _is_prime(self.p)):
            raise ValueError(f"GF(p) requires a prime 2 <= p < 2**31, got {self.p}")

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def size(self):
        return self.p if self.p else None

    def __str__(self):
        return f"GF({self.p})" if self.p else "Q"

    # arithmetic -----------------------------------------------------------

    def norm(self, x):
        return x % self.p if self.p else x

    def __call__(self, x):
        """Coerce an int, Fraction or scalar string into canonical form."""
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise ParseError(f"not an exact scalar: {x!r}")
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return x % self.p
        return Fraction(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def elements(self) -> range:
        if not self.p:
            raise EnumerationTooLarge("the rationals cannot be enumerated")
        return range(self.p)

    # serialization ----------------------------------------------------------

    def parse(self, s: str):
        s = s.strip()
        if _INT_RE.match(s):
            return self(int(s))
        if _RAT_RE.match(s):
            num, den = s.split("/")
            if int(den) == 0:
                raise ParseError(f"zero denominator in {s!r}")
            if self.p and int(den) % self.p == 0:
                raise ParseError(f"denominator of {s!r} vanishes in {self}")
            return self(Fraction(int(num), int(den)))
        raise ParseError(f"malformed scalar {s!r}")

    def format(self, x) -> str:
        return str(x % self.p) if self.p else str(Fraction(x))

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p} if self.p else {"kind": "rational"}

    @classmethod
    def from_json(cls, obj) -> "Field":
        try:
            kind = obj["kind"]
        except (TypeError, KeyError):
            raise ParseError(f"malformed field descriptor {obj!r}") from None
        if kind == "rational":
            return cls(0)
        if kind == "prime":
            p = obj.get("p")
            if not isinstance(p, int) or isinstance(p, bool):
                raise ParseError(f"malformed prime {p!r}")
            try:
                return cls(p)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError(f"unknown field kind {kind!r}")


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Limits:
    """Caps on finite enumerations; exceeding one degrades verdicts to Unknown."""

    max_enum: int = 200_000
    max_lattice: int = 4096


DEFAULT_LIMITS = Limits()


# vectors and matrices -------------------------------------------------------


def zero_vector(field: Field, n: int) -> Vector:
    return (field(0),) * n


def unit_vector(field: Field, n: int, i: int) -> Vector:
    return tuple(field(1) if j == i else field(0) for j in range(n))


def is_zero(v) -> bool:
    return not any(v)


def vec_add(field, u, v):
    return tuple(field.norm(a + b) for a, b in zip(u, v))


def vec_sub(field, u, v):
    return tuple(field.norm(a - b) for a, b in zip(u, v))


def vec_scale(field, c, v):
    return tuple(field.norm(c * a) for a in v)


def lin_comb(field, coeffs, vectors, n):
    out = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return tuple(field.norm(x) for x in out) if field.p else tuple(Fraction(x) for x in out)


def identity(field: Field, n: int) -> Matrix:
    return tuple(unit_vector(field, n, i) for i in range(n))


def zero_matrix(field: Field, rows: int, cols: int) -> Matrix:
    return tuple((field(0),) * cols for _ in range(rows))


def mat_vec(field: Field, m: Matrix, v: Vector) -> Vector:
    return tuple(field.norm(sum(a * b for a, b in zip(row, v) if a and b)) for row in m)


def mat_mul(field: Field, a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b)) if b else []
    return tuple(
        tuple(field.norm(sum(x * y for x, y in zip(row, col) if x and y)) for col in cols)
        for row in a
    )


def mat_add(field, a, b):
    return tuple(vec_add(field, r, s) for r, s in zip(a, b))


def mat_sub(field, a, b):
    return tuple(vec_sub(field, r, s) for r, s in zip(a, b))


def mat_scale(field, c, a):
    return tuple(vec_scale(field, c, r) for r in a)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def columns_to_matrix(cols: Sequence[Vector], nrows: int) -> Matrix:
    """Matrix whose ``j``-th column is ``cols[j]``."""
    return tuple(tuple(c[r] for c in cols) for r in range(nrows))


def flatten(m: Matrix) -> Vector:
    return tuple(x for row in m for x in row)


def unflatten(v: Vector, n: int) -> Matrix:
    return tuple(tuple(v[r * n:(r + 1) * n]) for r in range(n))


# row reduction --------------------------------------------------------------


def _rref_rows(field: Field, rows, ncols: int):
    p = field.p
    m = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        if p:
            row = [x * inv % p for x in m[r]]
        else:
            row = [Fraction(x) * inv for x in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    if p:
                        m[i] = [(a - f * b) % p for a, b in zip(m[i], row)]
                    else:
                        m[i] = [a - f * b for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return tuple(tuple(x) for x in m[:r]), tuple(pivots)


def rref(field: Field, m: Iterable[Vector], ncols: int | None = None) -> Matrix:
    """Reduced row-echelon form of ``m`` with zero rows removed."""
    rows = [tuple(r) for r in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return _rref_rows(field, rows, ncols)[0]


def rank(field: Field, m: Iterable[Vector], ncols: int | None = None) -> int:
    return len(rref(field, m, ncols))


def kernel(field: Field, m: Iterable[Vector], ncols: int) -> "Subspace":
    """The subspace ``{v : m v = 0}`` of ``field**ncols``."""
    red, pivots = _rref_rows(field, [tuple(r) for r in m], ncols)
    pivset = set(pivots)
    one, zero = field(1), field(0)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(red, pivots):
            v[pc] = field.norm(-row[f])
        vecs.append(tuple(v))
    return Subspace.span(field, ncols, vecs)


def solve(field: Field, m: Sequence[Vector], b: Vector, ncols: int):
    """One solution ``x`` of ``m x = b`` (free variables zero), or ``None``."""
    aug = [tuple(r) + (b[i],) for i, r in enumerate(m)]
    red, pivots = _rref_rows(field, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return tuple(x)


# subspaces --------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A coordinate subspace stored by its canonical RREF basis."""

    field: Field
    ambient_dim: int
    basis: Matrix
    pivots: tuple

    @classmethod
    def span(cls, field: Field, n: int, vectors: Iterable[Vector] = ()) -> "Subspace":
        rows = []
        for v in vectors:
            v = tuple(v)
            if len(v) != n:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {n}")
            rows.append(v)
        red, piv = _rref_rows(field, rows, n)
        return cls(field, n, red, piv)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, identity(field, n), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __len__(self):
        return self.dim

    def _check(self, other: "Subspace"):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"subspaces of {self.field}^{self.ambient_dim} and {other.field}^{other.ambient_dim}"
            )

    def reduce(self, v: Vector) -> Vector:
        """Residue of ``v`` after clearing the pivot coordinates."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        v = list(v)
        p = self.field.p
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c:
                if p:
                    v = [(a - c * b) % p for a, b in zip(v, row)]
                else:
                    v = [a - c * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v: Vector) -> bool:
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Vector) -> Vector:
        """Coordinates of a member ``v`` in the RREF basis."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(self.field.norm(v[pc]) for pc in self.pivots)

    def vector(self, coords: Sequence) -> Vector:
        return lin_comb(self.field, coords, self.basis, self.ambient_dim)

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return self.dim <= other.dim and all(other.contains(b) for b in self.basis)

    def __le__(self, other):
        return self.issubset(other)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def __add__(self, other):
        return self.sum(other)

    def constraints(self) -> Matrix:
        """Rows ``c`` with ``c . v = 0`` exactly for ``v`` in this subspace."""
        return kernel(self.field, self.basis, self.ambient_dim).basis

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.issubset(other):
            return self
        if other.issubset(self):
            return other
        return kernel(self.field, self.constraints() + other.constraints(), self.ambient_dim)

    def __and__(self, other):
        return self.intersect(other)

    def add_vectors(self, vectors: Iterable[Vector]) -> "Subspace":
        return Subspace.span(self.field, self.ambient_dim, self.basis + tuple(vectors))

    def image(self, m: Matrix) -> "Subspace":
        """Image of this subspace under the linear map ``m`` (column convention)."""
        return Subspace.span(self.field, len(m), [mat_vec(self.field, m, b) for b in self.basis])

    def points(self, limits: Limits = DEFAULT_LIMITS) -> Iterator[Vector]:
        """One nonzero representative per projective point of the subspace."""
        for c in enumerate_projective(self.field, self.dim, limits.max_enum):
            yield self.vector(c)

    def first_nonzero(self) -> Vector | None:
        """Least (in enumeration order) normalized nonzero vector, if any."""
        if self.is_zero():
            return None
        return self.basis[-1]


def projective_count(p: int, dim: int) -> int:
    return (p**dim - 1) // (p - 1) if dim > 0 else 0


def enumerate_projective(field: Field, dim: int, cap: int = DEFAULT_LIMITS.max_enum) -> Iterator[Vector]:
    """All projective points of ``GF(p)**dim``, first nonzero coordinate 1, in lex order."""
    if not field.is_finite:
        raise EnumerationTooLarge("projective enumeration needs a finite field")
    total = projective_count(field.p, dim)
    if total > cap:
        raise EnumerationTooLarge(f"{total} projective points in {field}^{dim} exceed cap {cap}")
    return _projective(field.p, dim)


def _projective(p: int, dim: int):
    for lead in range(dim - 1, -1, -1):
        head = (0,) * lead + (1,)
        for tail in itertools.product(range(p), repeat=dim - lead - 1):
            yield head + tail


def enumerate_vectors(field: Field, dim: int, cap: int = DEFAULT_LIMITS.max_enum) -> Iterator[Vector]:
    """All vectors of ``GF(p)**dim`` in lex order."""
    if not field.is_finite:
        raise EnumerationTooLarge("vector enumeration needs a finite field")
    if field.p**dim > cap:
        raise EnumerationTooLarge(f"{field.p**dim} vectors exceed cap {cap}")
    return itertools.product(range(field.p), repeat=dim)


# serialization helpers ------------------------------------------------------


def format_vector(field: Field, v) -> list:
    return [field.format(x) for x in v]


def parse_vector(field: Field, items, n: int | None = None) -> Vector:
    if not isinstance(items, (list, tuple)):
        raise ParseError(f"expected a list of scalar strings, got {items!r}")
    for x in items:
        if not isinstance(x, str):
            raise ParseError(f"scalars must be strings, got {x!r}")
    v = tuple(field.parse(x) for x in items)
    if n is not None and len(v) != n:
        raise ParseError(f"expected {n} coordinates, got {len(v)}")
    return v


def format_matrix(field: Field, m) -> list:
    return [format_vector(field, r) for r in m]


def parse_matrix(field: Field, rows, nrows: int | None = None, ncols: int | None = None) -> Matrix:
    if not isinstance(rows, (list, tuple)):
        raise ParseError("expected a list of rows")
    m = tuple(parse_vector(field, r, ncols) for r in rows)
    if nrows is not None and len(m) != nrows:
        raise ParseError(f"expected {nrows} rows, got {len(m)}")
    return m


def inverse(field: Field, m: Matrix) -> Matrix:
    """Inverse of a square matrix; raises ``ValueError`` when singular."""
    n = len(m)
    aug = [tuple(r) + unit_vector(field, n, i) for i, r in enumerate(m)]
    red, pivots = _rref_rows(field, aug, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red[:n])
