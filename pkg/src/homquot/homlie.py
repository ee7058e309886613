"""Hom-Lie algebras given by structure constants, with axiom checks.

An algebra of dimension ``n`` stores ``structure[i][j]``, the coordinate
vector of ``[e_i, e_j]``, and the twisting map ``alpha`` as an ``n x n`` matrix
acting on column vectors.  Elements are coordinate tuples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dfield
from typing import Iterable, Mapping

from .errors import DimensionMismatch, NotASubalgebra, NotVerified, ParseError, StructureViolation
from .exalg import (
    Field,
    Matrix,
    Subspace,
    Vector,
    columns_to_matrix,
    format_matrix,
    format_vector,
    identity,
    is_zero,
    kernel,
    lin_comb,
    mat_vec,
    parse_matrix,
    parse_vector,
    unit_vector,
    vec_add,
    vec_sub,
    zero_vector,
)
from .verdict import Method, Verdict


@dataclass(frozen=True)
class HomLieAlgebra:
    field: Field
    dim: int
    structure: tuple
    alpha: Matrix
    _cache: dict = dfield(default_factory=dict, compare=False, hash=False, repr=False)

    # construction -------------------------------------------------------------

    @classmethod
    def from_structure(cls, field: Field, dim: int, bracket_entries, alpha) -> "HomLieAlgebra":
        """Build an algebra from upper-triangular bracket data.

        ``bracket_entries`` is a mapping ``(i, j) -> vector`` or an iterable of
        ``(i, j, vector)``; pairs not listed are zero.  Entries with ``i > j``
        are accepted when consistent with antisymmetry.  No axioms are checked.
        """
        if isinstance(bracket_entries, Mapping):
            items = [(i, j, v) for (i, j), v in bracket_entries.items()]
        else:
            items = list(bracket_entries)
        zero = zero_vector(field, dim)
        table = [[zero] * dim for _ in range(dim)]
        given = {}
        for i, j, v in items:
            if not (0 <= i < dim and 0 <= j < dim):
                raise ParseError(f"bracket index ({i}, {j}) out of range for dim {dim}")
            v = tuple(field(x) for x in v)
            if len(v) != dim:
                raise ParseError(f"bracket value for ({i}, {j}) has {len(v)} coordinates, expected {dim}")
            if i == j:
                if any(v):
                    raise ParseError(f"[e{i}, e{i}] must vanish")
                continue
            if (i, j) in given and given[(i, j)] != v:
                raise ParseError(f"bracket ({i}, {j}) given twice with different values")
            given[(i, j)] = v
        for (i, j), v in given.items():
            neg = tuple(field.norm(-x) for x in v)
            if (j, i) in given and given[(j, i)] != neg:
                raise ParseError(f"brackets ({i}, {j}) and ({j}, {i}) are not antisymmetric")
            table[i][j] = v
            table[j][i] = neg
        a = tuple(tuple(field(x) for x in row) for row in alpha)
        if len(a) != dim or any(len(r) != dim for r in a):
            raise ParseError(f"alpha must be {dim} x {dim}")
        return cls(field, dim, tuple(tuple(r) for r in table), a)

    def with_alpha(self, alpha) -> "HomLieAlgebra":
        a = tuple(tuple(self.field(x) for x in row) for row in alpha)
        return HomLieAlgebra(self.field, self.dim, self.structure, a)

    # evaluation ---------------------------------------------------------------

    @property
    def left_mult(self) -> tuple:
        """``left_mult[i]`` is the matrix of ``y -> [e_i, y]``."""
        lm = self._cache.get("left_mult")
        if lm is None:
            n = self.dim
            lm = tuple(columns_to_matrix(self.structure[i], n) for i in range(n))
            self._cache["left_mult"] = lm
        return lm

    def basis(self):
        return [unit_vector(self.field, self.dim, i) for i in range(self.dim)]

    def zero(self) -> Vector:
        return zero_vector(self.field, self.dim)

    def _check_vec(self, x):
        if len(x) != self.dim:
            raise DimensionMismatch(f"element of length {len(x)} in a {self.dim}-dimensional algebra")

    def bracket(self, x: Vector, y: Vector) -> Vector:
        self._check_vec(x)
        self._check_vec(y)
        f = self.field
        out = [0] * self.dim
        c = self.structure
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = c[i]
            for j, yj in enumerate(y):
                if yj:
                    s = xi * yj
                    for k, a in enumerate(row[j]):
                        if a:
                            out[k] += s * a
        return tuple(f(0) if not v else f.norm(v) for v in out) if f.p else tuple(f(v) for v in out)

    def twist(self, x: Vector) -> Vector:
        self._check_vec(x)
        return mat_vec(self.field, self.alpha, x)

    def ad(self, x: Vector) -> Matrix:
        """Matrix of ``y -> [alpha(x), y]``."""
        self.require_verified()
        return self.left_bracket_matrix(self.twist(x))

    def left_bracket_matrix(self, x: Vector) -> Matrix:
        """Matrix of ``y -> [x, y]`` (no twist)."""
        n = self.dim
        f = self.field
        rows = [[0] * n for _ in range(n)]
        for i, xi in enumerate(x):
            if xi:
                for r, row in enumerate(self.left_mult[i]):
                    acc = rows[r]
                    for c, a in enumerate(row):
                        if a:
                            acc[c] += xi * a
        return tuple(tuple(f.norm(v) if f.p else f(v) for v in row) for row in rows)

    def alpha_power(self, k: int) -> Matrix:
        from .exalg import mat_mul

        m = identity(self.field, self.dim)
        for _ in range(k):
            m = mat_mul(self.field, self.alpha, m)
        return m

    # axioms ---------------------------------------------------------------------

    def check_axioms(self) -> "AxiomReport":
        rep = self._cache.get("axioms")
        if rep is None:
            rep = check_axioms(self)
            self._cache["axioms"] = rep
        return rep

    @property
    def is_verified(self) -> bool:
        rep = self.check_axioms()
        return rep.alternating.is_true and rep.hom_jacobi.is_true and rep.multiplicative.is_true

    def require_verified(self):
        if not self.is_verified:
            raise NotVerified("algebra fails the Hom-Lie axioms or multiplicativity of alpha")

    # serialization ----------------------------------------------------------------

    def to_json(self) -> dict:
        f = self.field
        entries = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = self.structure[i][j]
                if any(v):
                    entries.append({"i": i, "j": j, "value": format_vector(f, v)})
        return {
            "field": f.to_json(),
            "dim": self.dim,
            "bracket": entries,
            "alpha": format_matrix(f, self.alpha),
        }

    @classmethod
    def from_json(cls, obj) -> "HomLieAlgebra":
        if not isinstance(obj, dict):
            raise ParseError("algebra JSON must be an object")
        try:
            field = Field.from_json(obj["field"])
            dim = obj["dim"]
            raw = obj.get("bracket", [])
            alpha = obj["alpha"]
        except KeyError as exc:
            raise ParseError(f"missing key {exc}") from None
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise ParseError(f"malformed dim {dim!r}")
        entries = []
        for e in raw:
            try:
                i, j, val = e["i"], e["j"], e["value"]
            except (KeyError, TypeError):
                raise ParseError(f"malformed bracket entry {e!r}") from None
            if not (isinstance(i, int) and isinstance(j, int)):
                raise ParseError(f"malformed bracket indices in {e!r}")
            if i >= j:
                raise ParseError(f"bracket entries need i < j, got ({i}, {j})")
            entries.append((i, j, parse_vector(field, val, dim)))
        a = parse_matrix(field, alpha, dim, dim)
        return cls.from_structure(field, dim, entries, a)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class AxiomReport:
    alternating: Verdict
    hom_jacobi: Verdict
    multiplicative: Verdict
    classical_jacobi: Verdict

    @property
    def hom_ok(self) -> bool:
        return self.alternating.is_true and self.hom_jacobi.is_true and self.multiplicative.is_true

    def to_json(self, field: Field) -> dict:
        return {
            "alternating": self.alternating.to_json(field),
            "hom_jacobi": self.hom_jacobi.to_json(field),
            "multiplicative": self.multiplicative.to_json(field),
            "classical_jacobi": self.classical_jacobi.to_json(field),
        }


def hom_jacobi_defect(L: HomLieAlgebra, x, y, z) -> Vector:
    f = L.field
    t1 = L.bracket(L.twist(x), L.bracket(y, z))
    t2 = L.bracket(L.twist(y), L.bracket(z, x))
    t3 = L.bracket(L.twist(z), L.bracket(x, y))
    return vec_add(f, vec_add(f, t1, t2), t3)


def classical_jacobi_defect(L: HomLieAlgebra, x, y, z) -> Vector:
    f = L.field
    t1 = L.bracket(L.bracket(x, y), z)
    t2 = L.bracket(L.bracket(y, z), x)
    t3 = L.bracket(L.bracket(z, x), y)
    return vec_add(f, vec_add(f, t1, t2), t3)


def check_axioms(L: HomLieAlgebra) -> AxiomReport:
    """Check the axioms on basis tuples; multilinearity extends them everywhere."""
    n = L.dim
    f = L.field
    c = L.structure
    E = L.basis()

    alt = Verdict.true(Method.EXHAUSTIVE)
    for i in range(n):
        if any(c[i][i]):
            alt = Verdict.false(Method.EXHAUSTIVE, {"pair": [i, i], "defect": c[i][i]})
            break
        bad = next((j for j in range(i + 1, n) if any(vec_add(f, c[i][j], c[j][i]))), None)
        if bad is not None:
            alt = Verdict.false(
                Method.EXHAUSTIVE, {"pair": [i, bad], "defect": vec_add(f, c[i][bad], c[bad][i])}
            )
            break

    def scan_triples(defect):
        for i in range(n):
            for j in range(i, n):
                for k in range(j, n):
                    d = defect(L, E[i], E[j], E[k])
                    if any(d):
                        return Verdict.false(Method.EXHAUSTIVE, {"triple": [i, j, k], "defect": d})
        return Verdict.true(Method.EXHAUSTIVE)

    hom = scan_triples(hom_jacobi_defect)
    classical = scan_triples(classical_jacobi_defect)

    mult = Verdict.true(Method.EXHAUSTIVE)
    for i in range(n):
        for j in range(n):
            lhs = L.twist(c[i][j])
            mid = L.bracket(L.twist(E[i]), E[j])
            rhs = L.bracket(E[i], L.twist(E[j]))
            if lhs != mid or lhs != rhs:
                d = vec_sub(f, lhs, mid) if lhs != mid else vec_sub(f, lhs, rhs)
                mult = Verdict.false(Method.EXHAUSTIVE, {"pair": [i, j], "defect": d})
                break
        if mult.is_false:
            break
    return AxiomReport(alt, hom, mult, classical)


# subalgebras, ideals, annihilators -------------------------------------------


def _check_ambient(L: HomLieAlgebra, S: Subspace):
    if S.field != L.field or S.ambient_dim != L.dim:
        raise DimensionMismatch(f"subspace of {S.field}^{S.ambient_dim} in a {L.dim}-dimensional algebra over {L.field}")


def is_hom_subalgebra(L: HomLieAlgebra, S: Subspace) -> Verdict:
    _check_ambient(L, S)
    for i, b in enumerate(S.basis):
        if not S.contains(L.twist(b)):
            return Verdict.false(Method.EXHAUSTIVE, {"alpha_of": b, "image": L.twist(b)})
    for i, b in enumerate(S.basis):
        for j in range(i + 1, S.dim):
            v = L.bracket(b, S.basis[j])
            if not S.contains(v):
                return Verdict.false(Method.EXHAUSTIVE, {"pair": (b, S.basis[j]), "bracket": v})
    return Verdict.true(Method.EXHAUSTIVE)


def is_hom_ideal(L: HomLieAlgebra, I: Subspace) -> Verdict:
    _check_ambient(L, I)
    for b in I.basis:
        if not I.contains(L.twist(b)):
            return Verdict.false(Method.EXHAUSTIVE, {"alpha_of": b, "image": L.twist(b)})
    for b in I.basis:
        for e in L.basis():
            v = L.bracket(b, e)
            if not I.contains(v):
                return Verdict.false(Method.EXHAUSTIVE, {"pair": (b, e), "bracket": v})
    return Verdict.true(Method.EXHAUSTIVE)


def _closure(L: HomLieAlgebra, vectors, partners) -> Subspace:
    S = Subspace.span(L.field, L.dim, vectors)
    frontier = list(S.basis)
    while frontier:
        new = []
        for v in frontier:
            new.append(L.twist(v))
            new.extend(L.bracket(v, e) for e in partners(S))
        T = S.add_vectors(new)
        if T.dim == S.dim:
            break
        frontier = [b for b in T.basis if not S.contains(b)]
        S = T
    return S


def ideal_generated(L: HomLieAlgebra, vectors: Iterable[Vector]) -> Subspace:
    """Smallest Hom-ideal containing ``vectors``."""
    E = L.basis()
    return _closure(L, vectors, lambda S: E)


def subalgebra_generated(L: HomLieAlgebra, vectors: Iterable[Vector]) -> Subspace:
    """Smallest Hom-subalgebra containing ``vectors``."""
    S = Subspace.span(L.field, L.dim, vectors)
    while True:
        new = [L.twist(b) for b in S.basis]
        new += [L.bracket(a, b) for a in S.basis for b in S.basis]
        T = S.add_vectors(new)
        if T.dim == S.dim:
            return S
        S = T


def annihilator(L: HomLieAlgebra, H: Subspace) -> Subspace:
    """``{x : [x, alpha(y)] = 0 for all y in H}``."""
    _check_ambient(L, H)
    rows = []
    for b in H.basis:
        rows.extend(L.left_bracket_matrix(L.twist(b)))
    return kernel(L.field, rows, L.dim)


def bracket_span(L: HomLieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """Span of ``[a, b]`` for ``a`` in ``A`` and ``b`` in ``B``."""
    return Subspace.span(L.field, L.dim, [L.bracket(a, b) for a in A.basis for b in B.basis])


def twist_image(L: HomLieAlgebra, S: Subspace | None = None) -> Subspace:
    """``alpha(S)``, by default ``alpha(L)``."""
    if S is None:
        S = Subspace.full(L.field, L.dim)
    return S.image(L.alpha)


def center(L: HomLieAlgebra) -> Subspace:
    """Untwisted centre ``{z : [z, L] = 0}``."""
    rows = []
    for e in L.basis():
        rows.extend(L.left_bracket_matrix(e))
    # [z, e] = -[e, z]; the sign does not affect the kernel
    return kernel(L.field, rows, L.dim)


def direct_sum(L1: HomLieAlgebra, L2: HomLieAlgebra) -> HomLieAlgebra:
    if L1.field != L2.field:
        raise DimensionMismatch("direct sum of algebras over different fields")
    f = L1.field
    n1, n2 = L1.dim, L2.dim
    n = n1 + n2
    z1, z2 = (f(0),) * n1, (f(0),) * n2
    entries = {}
    for i in range(n1):
        for j in range(i + 1, n1):
            entries[(i, j)] = L1.structure[i][j] + z2
    for i in range(n2):
        for j in range(i + 1, n2):
            entries[(n1 + i, n1 + j)] = z1 + L2.structure[i][j]
    alpha = [tuple(r) + z2 for r in L1.alpha] + [z1 + tuple(r) for r in L2.alpha]
    return HomLieAlgebra.from_structure(f, n, entries, alpha)


def induced_on(L: HomLieAlgebra, S: Subspace):
    """The Hom-subalgebra ``S`` as an algebra in its RREF basis.

    Returns ``(algebra, embedding)`` where ``embedding`` is the ``n x dim S``
    inclusion matrix (column ``j`` is the ``j``-th basis vector of ``S``).
    """
    verdict = is_hom_subalgebra(L, S)
    if not verdict.is_true:
        raise NotASubalgebra("subspace is not a Hom-subalgebra", verdict.witness)
    m = S.dim
    B = S.basis
    entries = {}
    for i in range(m):
        for j in range(i + 1, m):
            entries[(i, j)] = S.coordinates(L.bracket(B[i], B[j]))
    alpha_cols = [S.coordinates(L.twist(b)) for b in B]
    alpha = columns_to_matrix(alpha_cols, m)
    return HomLieAlgebra.from_structure(L.field, m, entries, alpha), columns_to_matrix(B, L.dim)


def restricted_ad(L: HomLieAlgebra, x: Vector, S: Subspace) -> Matrix:
    """Matrix (S-coordinates to L-coordinates) of ``ad(x)`` restricted to ``S``."""
    cols = [L.bracket(L.twist(x), b) for b in S.basis]
    return columns_to_matrix(cols, L.dim)


def linear_combination(L: HomLieAlgebra, coeffs, vectors) -> Vector:
    return lin_comb(L.field, coeffs, vectors, L.dim)


def is_zero_vector(v) -> bool:
    return is_zero(v)


def assert_ideal(L: HomLieAlgebra, I: Subspace, what: str = "subspace"):
    v = is_hom_ideal(L, I)
    if not v.is_true:
        raise StructureViolation(f"{what} is not a Hom-ideal: {v.witness}")
