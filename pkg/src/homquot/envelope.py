"""Associative algebras of operators generated by inner derivations.

An :class:`OperatorAlgebra` is a subspace of ``n x n`` matrices, stored as a
:class:`Subspace` of flattened (row-major) matrices, that is closed under
products.  ``A(L)`` is non-unital; the multiplication algebra ``M(L)`` adds the
identity explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EnumerationTooLarge, PreconditionFailed, StructureViolation
from .exalg import (
    DEFAULT_LIMITS,
    Limits,
    Subspace,
    columns_to_matrix,
    enumerate_projective,
    flatten,
    format_matrix,
    identity,
    kernel,
    mat_mul,
    mat_vec,
    projective_count,
    unflatten,
)
from .homlie import HomLieAlgebra, annihilator, bracket_span, is_hom_ideal
from .props import is_semiprime
from .quotients import Extension, self_extension
from .verdict import Method, Mode, Verdict, resolve_mode


@dataclass(frozen=True)
class OperatorAlgebra:
    n: int
    span: Subspace
    generators: tuple = ()
    unital: bool = False

    @property
    def field(self):
        return self.span.field

    @property
    def dim(self) -> int:
        return self.span.dim

    def matrices(self):
        return [unflatten(b, self.n) for b in self.span.basis]

    def contains(self, m) -> bool:
        return self.span.contains(flatten(m))

    def element(self, coords):
        return unflatten(self.span.vector(coords), self.n)

    def is_zero(self) -> bool:
        return self.span.is_zero()

    def to_json(self) -> dict:
        f = self.field
        return {
            "n": self.n,
            "unital": self.unital,
            "basis": [format_matrix(f, m) for m in self.matrices()],
            "generators": [format_matrix(f, g) for g in self.generators],
        }


def _span(field, n, mats) -> Subspace:
    return Subspace.span(field, n * n, [flatten(m) for m in mats])


def products(field, n, A: Subspace, B: Subspace) -> Subspace:
    """Span of ``a b`` for ``a`` in ``A`` and ``b`` in ``B`` (flattened spans)."""
    As = [unflatten(a, n) for a in A.basis]
    Bs = [unflatten(b, n) for b in B.basis]
    return _span(field, n, [mat_mul(field, a, b) for a in As for b in Bs])


def operator_closure(field, n: int, gens, unital: bool = False) -> OperatorAlgebra:
    """Associative algebra generated by ``gens`` (plus the identity when ``unital``)."""
    gens = tuple(tuple(tuple(r) for r in g) for g in gens)
    start = list(gens) + ([identity(field, n)] if unital else [])
    S = _span(field, n, start)
    G = _span(field, n, gens)
    while True:
        T = S + products(field, n, S, G)
        if T.dim == S.dim:
            break
        S = T
    return OperatorAlgebra(n, S, gens, unital)


def is_closed(A: OperatorAlgebra) -> bool:
    return products(A.field, A.n, A.span, A.span).issubset(A.span)


def inner_envelope(E: Extension, source: str = "L") -> OperatorAlgebra:
    """``A_Q(L)`` (source ``"L"``) or ``A(Q)`` (source ``"Q"``)."""
    Q = E.ambient
    key = ("envelope", source)
    hit = E._cache.get(key)
    if hit is None:
        vecs = E.sub.basis if source == "L" else Q.basis()
        hit = operator_closure(Q.field, Q.dim, [Q.ad(v) for v in vecs], unital=False)
        E._cache[key] = hit
    return hit


def envelope_of(E: Extension, vectors) -> OperatorAlgebra:
    """Non-unital algebra generated by ``ad(v)`` for the given ambient vectors."""
    Q = E.ambient
    return operator_closure(Q.field, Q.dim, [Q.ad(v) for v in vectors], unital=False)


def associative_envelope(L: HomLieAlgebra) -> OperatorAlgebra:
    """``A(L)``."""
    return inner_envelope(self_extension(L), "Q")


def multiplication_algebra(L: HomLieAlgebra) -> OperatorAlgebra:
    """``M(L)``: the identity together with all ``ad(x)``."""
    hit = L._cache.get("mult_algebra")
    if hit is None:
        hit = operator_closure(L.field, L.dim, [L.ad(e) for e in L.basis()], unital=True)
        L._cache["mult_algebra"] = hit
    return hit


def sub_span(A: OperatorAlgebra, S: Subspace) -> OperatorAlgebra:
    return OperatorAlgebra(A.n, S, (), False)


def invariant_subalgebra_a0(E: Extension) -> OperatorAlgebra:
    """``A_0 = {mu in A(Q) : mu(L) <= L}``."""
    hit = E._cache.get("a0")
    if hit is not None:
        return hit
    AQ = inner_envelope(E, "Q")
    S = _preserving(E, AQ, E.sub)
    hit = OperatorAlgebra(AQ.n, S, (), False)
    if not is_closed(hit):
        raise StructureViolation("A_0 is not closed under products")
    E._cache["a0"] = hit
    return hit


def _preserving(E: Extension, A: OperatorAlgebra, V: Subspace) -> Subspace:
    """Elements of ``A`` mapping ``V`` into ``E.sub``."""
    f = A.field
    cons = E.sub.constraints()
    mats = A.matrices()
    rows = []
    if cons:
        for b in V.basis:
            cols = [mat_vec(f, m, b) for m in mats]
            rows.extend(mat_mul(f, cons, columns_to_matrix(cols, A.n)))
    coeffs = kernel(f, rows, A.dim)
    return Subspace.span(f, A.n * A.n, [A.span.vector(c) for c in coeffs.basis])


def one_sided_annihilator(A: OperatorAlgebra, X: Subspace, side: str = "right") -> Subspace:
    """``rann_A(X) = {a in A : X a = 0}`` or ``lann_A(X) = {a in A : a X = 0}``."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    f = A.field
    n = A.n
    mats = A.matrices()
    rows = []
    for x in X.basis:
        xm = unflatten(x, n)
        prods = [mat_mul(f, xm, a) if side == "right" else mat_mul(f, a, xm) for a in mats]
        cols = [flatten(p) for p in prods]
        rows.extend(columns_to_matrix(cols, n * n))
    coeffs = kernel(f, rows, A.dim)
    out = Subspace.span(f, n * n, [A.span.vector(c) for c in coeffs.basis])
    if side == "right" and products(f, n, X, A.span).issubset(X):
        # the right annihilator of a right ideal is a two-sided ideal
        if not (products(f, n, A.span, out).issubset(out) and products(f, n, out, A.span).issubset(out)):
            raise StructureViolation("right annihilator of a right ideal is not two-sided")
    return out


def assoc_ideal_generated(E: Extension, I_inner: Subspace) -> OperatorAlgebra:
    """``I~``: the ideal of ``A_Q(L)`` generated by ``A_Q(I)``.

    Built as ``A_Q(L) A_Q(I) + A_Q(I)`` and checked against the right-handed
    construction ``A_Q(I) A_Q(L) + A_Q(I)``.
    """
    key = ("itilde", I_inner)
    hit = E._cache.get(key)
    if hit is not None:
        return hit
    if not is_hom_ideal(E.inner, I_inner).is_true:
        raise PreconditionFailed("I~ is defined for Hom-ideals of L")
    f = E.field
    n = E.ambient.dim
    AL = inner_envelope(E, "L")
    AI = envelope_of(E, [E.sub.vector(b) for b in I_inner.basis])
    left = products(f, n, AL.span, AI.span) + AI.span
    right = products(f, n, AI.span, AL.span) + AI.span
    if left != right:
        raise StructureViolation("left and right ideals generated by A_Q(I) differ")
    hit = OperatorAlgebra(n, left, AI.generators, False)
    E._cache[key] = hit
    return hit


def subspace_envelope(E: Extension, I_inner: Subspace) -> OperatorAlgebra:
    """``A_Q(I)``."""
    return envelope_of(E, [E.sub.vector(b) for b in I_inner.basis])


def power(A: OperatorAlgebra, k: int) -> Subspace:
    out = A.span
    for _ in range(k - 1):
        out = products(A.field, A.n, out, A.span)
    return out


# left quotient algebras --------------------------------------------------------


def left_colon(A: OperatorAlgebra, q) -> Subspace:
    """``{x in A : x q in A}`` (flattened)."""
    f = A.field
    n = A.n
    cons = A.span.constraints()
    mats = A.matrices()
    rows = []
    if cons:
        cols = [flatten(mat_mul(f, a, q)) for a in mats]
        rows = mat_mul(f, cons, columns_to_matrix(cols, n * n))
    coeffs = kernel(f, rows, A.dim)
    return Subspace.span(f, n * n, [A.span.vector(c) for c in coeffs.basis])


def _quotient_reps(A: OperatorAlgebra, S: OperatorAlgebra) -> Subspace:
    """Complement coordinates: a subspace of ``S`` mapping isomorphically onto ``S/A``."""
    reps = []
    cur = A.span
    for b in S.span.basis:
        if not cur.contains(b):
            reps.append(b)
            cur = cur.add_vectors([b])
    return Subspace.span(A.field, A.n * A.n, reps), reps


def is_left_quotient_algebra(A: OperatorAlgebra, S: OperatorAlgebra, mode: Mode | str = Mode.AUTO,
                             limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Whether ``S`` is a left quotient algebra of ``A``.

    ``(A:q)`` only depends on the class of ``q`` modulo ``A`` and on its line,
    so ``q`` runs over the zero class and the projective points of ``S/A``.
    For fixed ``q`` the failing ``p`` form the kernel ``{p in S : (A:q) p = 0}``.
    """
    if not A.span.issubset(S.span):
        raise PreconditionFailed("A must be contained in S")
    f = A.field
    n = A.n
    _, reps = _quotient_reps(A, S)

    def failing(q):
        J = left_colon(A, q)
        K = one_sided_annihilator(S, J, "right")
        return K

    zero = tuple(tuple(f(0) for _ in range(n)) for _ in range(n))
    mode = resolve_mode(f, mode)
    if mode is Mode.EXHAUSTIVE:
        try:
            points = list(enumerate_projective(f, len(reps), limits.max_enum))
        except EnumerationTooLarge as exc:
            return Verdict.unknown(Method.EXHAUSTIVE, str(exc))
        qs = [zero] + [unflatten(_combo(f, c, reps, n * n), n) for c in points]
        for q in qs:
            K = failing(q)
            if not K.is_zero():
                return Verdict.false(Method.EXHAUSTIVE, {"p": unflatten(K.first_nonzero(), n), "q": q})
        return Verdict.true(Method.EXHAUSTIVE)
    for q in [zero] + [unflatten(r, n) for r in reps]:
        K = failing(q)
        if not K.is_zero():
            return Verdict.false(Method.WITNESS, {"p": unflatten(K.first_nonzero(), n), "q": q})
    if mode is Mode.DERIVED:
        # x q is linear in q: the intersection of the (A:r) over representatives
        # and A itself lies in (A:q) for every q
        J = A.span
        for r in reps:
            J = J & left_colon(A, unflatten(r, n))
        if one_sided_annihilator(S, J, "right").is_zero():
            return Verdict.true(Method.DERIVED, {"uniform_left_ideal": J})
    return Verdict.unknown(Method.WITNESS, "no refuting pair among the tested elements")


def _combo(f, coeffs, vecs, n):
    out = [0] * n
    for c, v in zip(coeffs, vecs):
        if c:
            for i, a in enumerate(v):
                out[i] += c * a
    return tuple(f.norm(x) if f.p else f(x) for x in out)


# associative semiprimeness -------------------------------------------------------


def is_assoc_semiprime(A: OperatorAlgebra, mode: Mode | str = Mode.AUTO, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """No nonzero ``mu`` in ``A`` with ``mu A mu = 0``."""
    f = A.field
    if A.is_zero():
        return Verdict.true(Method.STRUCTURAL, note="zero algebra")
    unit_dim = A.dim if A.contains(identity(f, A.n)) else A.dim + 1
    mode = resolve_mode(f, mode)
    if not f.is_finite or f.p > unit_dim:
        return _semiprime_trace(A)
    if mode is Mode.EXHAUSTIVE:
        return _semiprime_scan(A, limits)
    return Verdict.unknown(Method.WITNESS, "no decision procedure in this mode")


def _sandwich_zero(A: OperatorAlgebra, mu) -> bool:
    f = A.field
    return all(not any(flatten(mat_mul(f, mat_mul(f, mu, a), mu))) for a in A.matrices())


def _semiprime_scan(A: OperatorAlgebra, limits: Limits) -> Verdict:
    f = A.field
    p = f.p
    d, n = A.dim, A.n
    total = projective_count(p, d)
    if total > limits.max_enum:
        return Verdict.unknown(Method.EXHAUSTIVE, f"{total} elements exceed cap {limits.max_enum}")
    basis = np.array([list(b) for b in A.span.basis], dtype=np.int64)  # d x n^2
    mats = [np.array(m, dtype=np.int64) for m in A.matrices()]
    chunk = 4096
    gen = enumerate_projective(f, d, limits.max_enum)
    while True:
        coeffs = []
        for c in gen:
            coeffs.append(c)
            if len(coeffs) == chunk:
                break
        if not coeffs:
            break
        C = np.array(coeffs, dtype=np.int64)
        M = (C @ basis % p).reshape(len(coeffs), n, n)
        bad = np.ones(len(coeffs), dtype=bool)
        for a in mats:
            prod = np.matmul(np.matmul(M, a) % p, M) % p
            bad &= ~prod.reshape(len(coeffs), -1).any(axis=1)
            if not bad.any():
                break
        if bad.any():
            i = int(np.argmax(bad))
            mu = unflatten(A.span.vector(tuple(coeffs[i])), n)
            if not _sandwich_zero(A, mu):
                raise StructureViolation("vectorized scan disagrees with exact arithmetic")
            return Verdict.false(Method.EXHAUSTIVE, {"element": mu})
        if len(coeffs) < chunk:
            break
    return Verdict.true(Method.EXHAUSTIVE)


def _semiprime_trace(A: OperatorAlgebra) -> Verdict:
    """Trace-form radical of the unitization (valid in characteristic 0 or ``p > dim``)."""
    f = A.field
    n = A.n
    U = A.span if A.contains(identity(f, n)) else A.span.add_vectors([flatten(identity(f, n))])
    mats = [unflatten(b, n) for b in U.basis]
    d = len(mats)
    left = []
    for a in mats:
        cols = [U.coordinates(flatten(mat_mul(f, a, b))) for b in mats]
        left.append(columns_to_matrix(cols, d))
    gram = [[f.norm(sum(mat_mul(f, left[i], left[j])[r][r] for r in range(d))) for j in range(d)] for i in range(d)]
    coeffs = kernel(f, gram, d)
    rad = Subspace.span(f, n * n, [U.vector(c) for c in coeffs.basis])
    if rad.is_zero():
        return Verdict.true(Method.DERIVED, note="nondegenerate trace form")
    if not rad.issubset(A.span):
        raise StructureViolation("trace radical leaves the algebra")
    term = rad
    while True:
        nxt = products(f, n, term, rad)
        if nxt.is_zero():
            break
        if nxt == term:
            raise StructureViolation("trace radical is not nilpotent")
        term = nxt
    mu = unflatten(term.basis[-1], n)
    if not _sandwich_zero(A, mu):
        raise StructureViolation("radical witness fails mu A mu = 0")
    return Verdict.false(Method.DERIVED, {"element": mu})


# density and orbits ------------------------------------------------------------------


@dataclass(frozen=True)
class DenseReport:
    l_ann: Subspace
    dense: Verdict
    a_q_kernel: Subspace  # {mu in A(Q) : mu(L) = 0}
    ann_q_zero: bool


def vanishing_on(A: OperatorAlgebra, V: Subspace) -> Subspace:
    """``{mu in A : mu(v) = 0 for v in V}``."""
    f = A.field
    mats = A.matrices()
    rows = []
    for b in V.basis:
        rows.extend(columns_to_matrix([mat_vec(f, m, b) for m in mats], A.n))
    coeffs = kernel(f, rows, A.dim)
    return Subspace.span(f, A.n * A.n, [A.span.vector(c) for c in coeffs.basis])


def hom_annihilator_dense(E: Extension, check: bool = True) -> DenseReport:
    """``L^ann = {mu in M(Q) : mu(L) = 0}``; ``L`` is dense when it vanishes."""
    Q = E.ambient
    MQ = multiplication_algebra(Q)
    lann = vanishing_on(MQ, E.sub)
    dense = (Verdict.true(Method.EXHAUSTIVE) if lann.is_zero()
             else Verdict.false(Method.EXHAUSTIVE, {"operator": unflatten(lann.basis[0], Q.dim)}))
    AQ = inner_envelope(E, "Q")
    aker = vanishing_on(AQ, E.sub)
    ann_zero = annihilator(Q, Subspace.full(Q.field, Q.dim)).is_zero()
    rep = DenseReport(lann, dense, aker, ann_zero)
    if check and ann_zero and (aker.is_zero() != lann.is_zero()):
        raise StructureViolation("density disagrees with the A(Q) criterion although Ann(Q) = 0")
    return rep


@dataclass(frozen=True)
class Orbit:
    span: Subspace
    is_ideal: Verdict


def operator_orbit(E: Extension, I_inner: Subspace) -> Orbit:
    """``M(Q)(I)``: closure of ``I`` (in ``Q``) under every ``ad(q)``."""
    Q = E.ambient
    if not is_hom_ideal(E.inner, I_inner).is_true:
        raise PreconditionFailed("orbits are taken of Hom-ideals of L")
    S = E.lift(I_inner)
    ads = [Q.ad(e) for e in Q.basis()]
    while True:
        T = S.add_vectors([mat_vec(Q.field, a, b) for a in ads for b in S.basis])
        if T.dim == S.dim:
            break
        S = T
    if not S.image(Q.alpha).issubset(S):
        raise StructureViolation("operator orbit is not alpha-stable")
    return Orbit(S, is_hom_ideal(Q, S))


def is_multiplicatively_semiprime(L: HomLieAlgebra, mode: Mode | str = Mode.AUTO,
                                  limits: Limits = DEFAULT_LIMITS) -> Verdict:
    sp = is_semiprime(L, mode, limits)
    if sp.is_false:
        return Verdict.false(sp.method, {"lie": sp})
    M = multiplication_algebra(L)
    ms = is_assoc_semiprime(M, mode, limits)
    if ms.is_false:
        return Verdict.false(ms.method, {"multiplication_algebra": ms})
    if sp.is_true and ms.is_true:
        A = associative_envelope(L)
        av = is_assoc_semiprime(A, mode, limits)
        if av.is_false:
            raise StructureViolation("A(L) is not semiprime although M(L) is")
        return Verdict.true(ms.method)
    return Verdict.unknown(Method.WITNESS, "semiprimeness of L or M(L) undecided")


def lie_orbit_bracket(Q: HomLieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """``[A, alpha(B)]``."""
    return bracket_span(Q, A, B.image(Q.alpha))

