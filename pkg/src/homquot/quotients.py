"""Extensions ``L <= Q``, denominator ideals and the algebra-of-quotients predicates.

Every predicate here is invariant under scaling ``p`` and ``q``: the bracket is
bilinear and ``_L(q)``, ``(L:q)`` only depend on the line through ``q``.  That
licenses scanning one representative per projective point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dfield

from .errors import EnumerationTooLarge, LatticeTooLarge, NotASubalgebra, ParseError, StructureViolation
from .exalg import (
    DEFAULT_LIMITS,
    Limits,
    Subspace,
    columns_to_matrix,
    enumerate_projective,
    format_matrix,
    kernel,
    mat_mul,
    parse_matrix,
)
from .homlie import HomLieAlgebra, annihilator, induced_on, is_hom_ideal, is_hom_subalgebra
from .props import ideal_lattice, is_semiprime
from .verdict import Method, Mode, Verdict, resolve_mode


@dataclass(frozen=True)
class Extension:
    """A Hom-subalgebra ``L`` (given by ``sub``) of the ambient algebra ``Q``."""

    ambient: HomLieAlgebra
    sub: Subspace
    _cache: dict = dfield(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def field(self):
        return self.ambient.field

    @property
    def sub_basis(self):
        return self.sub.basis

    @property
    def inner(self) -> HomLieAlgebra:
        """``L`` as an algebra in the coordinates of ``sub``'s RREF basis."""
        alg = self._cache.get("inner")
        if alg is None:
            alg, _ = induced_on(self.ambient, self.sub)
            self._cache["inner"] = alg
        return alg

    def to_ambient(self, coords):
        return self.sub.vector(coords)

    def to_inner(self, v):
        return self.sub.coordinates(v)

    def lift(self, S: Subspace) -> Subspace:
        """Subspace of ``L`` (inner coordinates) viewed inside ``Q``."""
        return Subspace.span(self.field, self.ambient.dim, [self.sub.vector(b) for b in S.basis])

    def restrict(self, S: Subspace) -> Subspace:
        """Subspace of ``Q`` contained in ``L``, in inner coordinates."""
        return Subspace.span(self.field, self.sub.dim, [self.sub.coordinates(b) for b in S.basis])

    def to_json(self) -> dict:
        return {"ambient": self.ambient.to_json(), "subalgebra_basis": format_matrix(self.field, self.sub.basis)}

    @classmethod
    def from_json(cls, obj) -> "Extension":
        if not isinstance(obj, dict) or "ambient" not in obj or "subalgebra_basis" not in obj:
            raise ParseError("extension JSON needs 'ambient' and 'subalgebra_basis'")
        Q = HomLieAlgebra.from_json(obj["ambient"])
        rows = parse_matrix(Q.field, obj["subalgebra_basis"], ncols=Q.dim)
        return make_extension(Q, rows)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def make_extension(Q: HomLieAlgebra, sub_basis) -> Extension:
    rows = [tuple(Q.field(x) for x in r) for r in sub_basis]
    S = Subspace.span(Q.field, Q.dim, rows)
    if S.dim != len(rows):
        raise NotASubalgebra("subalgebra basis rows are linearly dependent")
    Q.require_verified()
    v = is_hom_subalgebra(Q, S)
    if not v.is_true:
        raise NotASubalgebra("rows do not span a Hom-subalgebra", v.witness)
    return Extension(Q, S)


def self_extension(L: HomLieAlgebra) -> Extension:
    return make_extension(L, [e for e in L.basis()])


# _L(q) and (L:q) --------------------------------------------------------------


@dataclass(frozen=True)
class DenominatorData:
    q: tuple
    lq: Subspace
    colon: Subspace  # inner coordinates of L
    colon_ambient: Subspace


def lq_span(E: Extension, q) -> Subspace:
    """Least subspace containing ``q`` and closed under ``[-, b]`` for ``b`` in ``L``."""
    Q = E.ambient
    W = Subspace.span(Q.field, Q.dim, [q])
    frontier = list(W.basis)
    while frontier:
        new = [Q.bracket(w, b) for w in frontier for b in E.sub.basis]
        T = W.add_vectors(new)
        if T.dim == W.dim:
            break
        frontier = [b for b in T.basis if not W.contains(b)]
        W = T
    return W


def _colon(E: Extension, vectors) -> Subspace:
    """``{x in L : [x, alpha(w)] in L for w in vectors}`` in inner coordinates."""
    Q = E.ambient
    f = Q.field
    cons = E._cache.get("sub_constraints")
    if cons is None:
        cons = E.sub.constraints()
        E._cache["sub_constraints"] = cons
    rows = []
    if cons:
        for w in vectors:
            aw = Q.twist(w)
            cols = [Q.bracket(b, aw) for b in E.sub.basis]
            M = columns_to_matrix(cols, Q.dim)
            rows.extend(mat_mul(f, cons, M))
    return kernel(f, rows, E.sub.dim)


def denominator_ideal(E: Extension, q) -> DenominatorData:
    key = ("colon", tuple(q))
    hit = E._cache.get(key)
    if hit is not None:
        return hit
    lq = lq_span(E, q)
    colon = _colon(E, lq.basis)
    if not is_hom_ideal(E.inner, colon).is_true:
        raise StructureViolation(f"(L:q) is not a Hom-ideal of L for q = {q}")
    hit = DenominatorData(tuple(q), lq, colon, E.lift(colon))
    E._cache[key] = hit
    return hit


def uniform_denominator(E: Extension) -> Subspace:
    """Intersection of ``(L:e_i)`` over the ambient basis, in inner coordinates.

    ``_L(q)`` lies in the sum of the ``_L(e_i)``, so this ideal is contained
    in ``(L:q)`` for every ``q``.
    """
    hit = E._cache.get("istar")
    if hit is None:
        hit = Subspace.full(E.field, E.sub.dim)
        for e in E.ambient.basis():
            hit = hit & denominator_ideal(E, e).colon
        E._cache["istar"] = hit
    return hit


def twisted_kernel(E: Extension, I_inner: Subspace) -> Subspace:
    """``{p in Q : [x, alpha(p)] = 0 for all x in I}``, in ambient coordinates."""
    Q = E.ambient
    rows = []
    for b in I_inner.basis:
        rows.extend(mat_mul(Q.field, Q.left_bracket_matrix(E.sub.vector(b)), Q.alpha))
    return kernel(Q.field, rows, Q.dim)


def bracket_with_twist(E: Extension, I_inner: Subspace, p) -> Subspace:
    """Span of ``[x, alpha(p)]`` for ``x`` in ``I`` (ambient coordinates)."""
    Q = E.ambient
    ap = Q.twist(p)
    return Subspace.span(Q.field, Q.dim, [Q.bracket(E.sub.vector(b), ap) for b in I_inner.basis])


def _points(E: Extension, limits: Limits):
    return list(enumerate_projective(E.field, E.ambient.dim, limits.max_enum))


# predicates ------------------------------------------------------------------


def is_weak_quotient_algebra(E: Extension, mode: Mode | str = Mode.AUTO, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    mode = resolve_mode(E.field, mode)
    Q = E.ambient
    if mode is Mode.EXHAUSTIVE:
        try:
            points = _points(E, limits)
        except EnumerationTooLarge as exc:
            return Verdict.unknown(Method.EXHAUSTIVE, str(exc))
        for q in points:
            S = _colon(E, [q])
            if bracket_with_twist(E, S, q).is_zero():
                return Verdict.false(Method.EXHAUSTIVE, {"q": q})
        return Verdict.true(Method.EXHAUSTIVE)
    full = Subspace.full(E.field, E.sub.dim)
    K = twisted_kernel(E, full)
    if not K.is_zero():
        return Verdict.false(Method.WITNESS, {"q": K.first_nonzero()})
    for q in Q.basis():
        if bracket_with_twist(E, _colon(E, [q]), q).is_zero():
            return Verdict.false(Method.WITNESS, {"q": q})
    if mode is Mode.DERIVED and is_quotient_algebra(E, Mode.DERIVED, limits).is_true:
        return Verdict.true(Method.DERIVED, note="algebras of quotients are weak algebras of quotients")
    return Verdict.unknown(Method.WITNESS, "no failing q among the tested vectors")


def is_quotient_algebra(E: Extension, mode: Mode | str = Mode.AUTO, limits: Limits = DEFAULT_LIMITS,
                        witnesses=None) -> Verdict:
    mode = resolve_mode(E.field, mode)
    if mode is Mode.EXHAUSTIVE:
        key = ("quotient_exhaustive", limits.max_enum)
        hit = E._cache.get(key)
        if hit is None:
            hit = _quotient_exhaustive(E, limits)
            E._cache[key] = hit
        return hit
    if mode is Mode.DERIVED:
        return quotient_derived(E, limits)
    Q = E.ambient
    for p, q in witnesses or []:
        p, q = tuple(Q.field(x) for x in p), tuple(Q.field(x) for x in q)
        if any(p) and bracket_with_twist(E, denominator_ideal(E, q).colon, p).is_zero():
            return Verdict.false(Method.WITNESS, {"p": p, "q": q})
    return Verdict.unknown(Method.WITNESS, "no supplied pair refutes the extension")


def _quotient_exhaustive(E: Extension, limits: Limits) -> Verdict:
    """Scan every ``q`` (including 0); the ``p`` quantifier is a kernel.

    For fixed ``q`` the failing ``p`` are exactly the nonzero vectors of
    ``{p : [(L:q), alpha(p)] = 0}``, and the least projective point of a
    subspace is its last RREF row, so the witness matches a literal double scan.
    """
    Q = E.ambient
    try:
        points = _points(E, limits)
    except EnumerationTooLarge as exc:
        return Verdict.unknown(Method.EXHAUSTIVE, str(exc))
    for q in [Q.zero()] + points:
        colon = denominator_ideal(E, q).colon
        K = twisted_kernel(E, colon)
        if not K.is_zero():
            return Verdict.false(Method.EXHAUSTIVE, {"p": K.first_nonzero(), "q": q, "colon": E.lift(colon)})
    return Verdict.true(Method.EXHAUSTIVE)


def quotient_bruteforce(E: Extension, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Literal double scan over projective ``(p, q)``; an oracle for tests."""
    Q = E.ambient
    points = _points(E, limits)
    for q in [Q.zero()] + points:
        colon = _colon(E, lq_span(E, q).basis)
        for p in points:
            if bracket_with_twist(E, colon, p).is_zero():
                return Verdict.false(Method.EXHAUSTIVE, {"p": p, "q": q})
    return Verdict.true(Method.EXHAUSTIVE)


def quotient_derived(E: Extension, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Decide via the uniform denominator ``I*``.

    If no nonzero ``p`` has ``[I*, alpha(p)] = 0`` then ``I*`` serves as a
    denominator for every pair, so the answer is True.  If such ``p`` exists
    and ``L`` is semiprime the answer is False: for an algebra of quotients of
    a semiprime algebra every ``(L:e_i)`` has zero annihilator, so does their
    intersection, and then no nonzero ``p`` can be killed by it.
    """
    istar = uniform_denominator(E)
    K = twisted_kernel(E, istar)
    if K.is_zero():
        return Verdict.true(Method.DERIVED, {"uniform_denominator": E.lift(istar)})
    sp = is_semiprime(E.inner, Mode.AUTO, limits)
    if sp.is_true:
        return Verdict.false(Method.DERIVED, {"p": K.first_nonzero(), "uniform_denominator": E.lift(istar)})
    return Verdict.unknown(Method.DERIVED, "uniform denominator kills a nonzero element and L is not known semiprime")


def is_ideally_absorbed(E: Extension, mode: Mode | str = Mode.AUTO, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    mode = resolve_mode(E.field, mode)
    if mode is Mode.EXHAUSTIVE:
        key = ("absorbed_exhaustive", limits.max_enum, limits.max_lattice)
        hit = E._cache.get(key)
        if hit is None:
            hit = _absorbed_exhaustive(E, limits)
            E._cache[key] = hit
        return hit
    L = E.inner
    istar = uniform_denominator(E)
    if annihilator(L, istar).is_zero() and twisted_kernel(E, istar).is_zero():
        return Verdict.true(Method.DERIVED, {"ideal": E.lift(istar)})
    if is_semiprime(L, Mode.AUTO, limits).is_true:
        K = twisted_kernel(E, istar)
        if not K.is_zero():
            return Verdict.false(Method.DERIVED, {"q": K.first_nonzero(), "uniform_denominator": E.lift(istar)})
    return Verdict.unknown(Method.DERIVED, "the uniform denominator is not a certificate")


def _absorbed_exhaustive(E: Extension, limits: Limits) -> Verdict:
    L = E.inner
    Q = E.ambient
    try:
        points = _points(E, limits)
        lattice = ideal_lattice(L, limits)
    except (EnumerationTooLarge, LatticeTooLarge) as exc:
        return Verdict.unknown(Method.EXHAUSTIVE, str(exc))
    good = [I for I in lattice.ideals if annihilator(L, I).is_zero()]
    for q in points:
        found = False
        for I in good:
            S = bracket_with_twist(E, I, q)
            if not S.is_zero() and S.issubset(E.sub):
                found = True
                break
        if not found:
            return Verdict.false(Method.EXHAUSTIVE, {"q": q})
    return Verdict.true(Method.EXHAUSTIVE)
