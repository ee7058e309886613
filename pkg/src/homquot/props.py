"""Structural predicates: nondegenerate, semiprime, prime, essential.

Universal quantifiers over nonzero Hom-ideals are reduced to principal ideals.
Every nonzero ideal contains the principal ideal of any of its nonzero
elements, and each predicate below is monotone in the right direction, so an
offending ideal always yields an offending principal ideal.  Principal ideals
are scale invariant, hence one generator per projective point suffices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EnumerationTooLarge,
    LatticeTooLarge,
    PreconditionFailed,
    StructureViolation,
    UnsupportedMode,
)
from .exalg import DEFAULT_LIMITS, Limits, Subspace, enumerate_projective, kernel, mat_mul
from .homlie import HomLieAlgebra, annihilator, bracket_span, ideal_generated, is_hom_ideal, twist_image
from .verdict import Method, Mode, Verdict, resolve_mode


@dataclass(frozen=True)
class PrincipalIdeals:
    """Principal ideals of every projective point, plus the distinct ones.

    ``distinct`` keeps first-generator order, so scans that walk it return
    the lexicographically least offending generator.
    """

    pairs: tuple  # (generator, ideal) per projective point
    distinct: tuple  # (first generator, ideal)


@dataclass(frozen=True)
class IdealLattice:
    ideals: tuple
    essential_flags: tuple
    generated_from: dict

    def __len__(self):
        return len(self.ideals)

    def essential(self):
        return [I for I, e in zip(self.ideals, self.essential_flags) if e]

    def nonzero(self):
        return [I for I in self.ideals if not I.is_zero()]


def principal_ideals(L: HomLieAlgebra, limits: Limits = DEFAULT_LIMITS) -> PrincipalIdeals:
    key = ("principal", limits.max_enum)
    hit = L._cache.get(key)
    if hit is None:
        L.require_verified()
        pairs = []
        seen = {}
        for x in enumerate_projective(L.field, L.dim, limits.max_enum):
            P = ideal_generated(L, [x])
            pairs.append((x, P))
            seen.setdefault(P, x)
        hit = PrincipalIdeals(tuple(pairs), tuple((x, P) for P, x in seen.items()))
        L._cache[key] = hit
    return hit


def ideal_lattice(L: HomLieAlgebra, limits: Limits = DEFAULT_LIMITS) -> IdealLattice:
    """All Hom-ideals of ``L`` over a finite field.

    Every ideal is the sum of the principal ideals of its elements, so closing
    the principal ideals under sums reaches the whole lattice.
    """
    if not L.field.is_finite:
        raise UnsupportedMode("the ideal lattice is only enumerated over finite fields")
    key = ("lattice", limits.max_enum, limits.max_lattice)
    hit = L._cache.get(key)
    if hit is not None:
        return hit
    prin = [P for _, P in principal_ideals(L, limits).distinct]
    zero = Subspace.zero(L.field, L.dim)
    found = {zero: None}
    for P in prin:
        found.setdefault(P, None)
    frontier = list(found)
    rounds = 0
    while frontier:
        rounds += 1
        new = []
        for A in frontier:
            for P in prin:
                S = A + P
                if S not in found:
                    found[S] = None
                    new.append(S)
                    if len(found) > limits.max_lattice:
                        raise LatticeTooLarge(f"more than {limits.max_lattice} Hom-ideals")
        frontier = new
    ideals = tuple(sorted(found, key=lambda I: (I.dim, I.basis)))
    flags = tuple(_meets_all(I, prin) for I in ideals)
    lat = IdealLattice(ideals, flags, {"principal": len(prin), "sum_rounds": rounds})
    L._cache[key] = lat
    return lat


def _meets_all(I: Subspace, principals) -> bool:
    return all(not (I & P).is_zero() for P in principals)


# essential ideals -----------------------------------------------------------


def is_essential(L: HomLieAlgebra, I: Subspace, mode: Mode | str = Mode.AUTO,
                 limits: Limits = DEFAULT_LIMITS) -> Verdict:
    L.require_verified()
    if not is_hom_ideal(L, I).is_true:
        raise PreconditionFailed("is_essential expects a Hom-ideal")
    if L.dim == 0:
        return Verdict.true(Method.STRUCTURAL, note="no nonzero ideals")
    if I.is_zero():
        return Verdict.false(Method.STRUCTURAL, {"missed_ideal": Subspace.full(L.field, L.dim)})
    mode = resolve_mode(L.field, mode)
    if mode is Mode.EXHAUSTIVE:
        try:
            prin = principal_ideals(L, limits)
        except EnumerationTooLarge as exc:
            return Verdict.unknown(Method.EXHAUSTIVE, str(exc))
        for x, P in prin.distinct:
            if (I & P).is_zero():
                return Verdict.false(Method.EXHAUSTIVE, {"generator": x, "missed_ideal": P})
        return Verdict.true(Method.EXHAUSTIVE)
    ann = annihilator(L, I)
    if ann.is_zero():
        return Verdict.true(Method.STRUCTURAL, note="zero annihilator")
    sp = is_semiprime(L, Mode.AUTO, limits)
    if sp.is_true:
        # in a semiprime algebra the annihilator meets the ideal trivially
        if not (ann & I).is_zero():
            raise StructureViolation("Ann(I) meets I in a semiprime algebra")
        return Verdict.false(Method.STRUCTURAL, {"missed_ideal": ann})
    return Verdict.unknown(Method.STRUCTURAL, "nonzero annihilator and semiprimeness undecided")


# nondegenerate / semiprime / prime -------------------------------------------


def absolute_zero_divisor(L: HomLieAlgebra, x) -> bool:
    m = L.ad(x)
    return not any(any(r) for r in mat_mul(L.field, m, m))


def is_nondegenerate(L: HomLieAlgebra, mode: Mode | str = Mode.AUTO, limits: Limits = DEFAULT_LIMITS,
                     candidates=None) -> Verdict:
    L.require_verified()
    mode = resolve_mode(L.field, mode)
    if mode is Mode.EXHAUSTIVE:
        try:
            points = list(enumerate_projective(L.field, L.dim, limits.max_enum))
        except EnumerationTooLarge as exc:
            return Verdict.unknown(Method.EXHAUSTIVE, str(exc))
        for x in points:
            if absolute_zero_divisor(L, x):
                return Verdict.false(Method.EXHAUSTIVE, {"element": x})
        return Verdict.true(Method.EXHAUSTIVE)
    pool = list(candidates or []) + L.basis()
    for x in pool:
        if any(x) and absolute_zero_divisor(L, x):
            return Verdict.false(Method.WITNESS, {"element": tuple(x)})
    return Verdict.unknown(Method.WITNESS, "no absolute zero divisor among the tested vectors")


def _self_bracket(L: HomLieAlgebra, P: Subspace) -> Subspace:
    return bracket_span(L, P, P.image(L.alpha))


def is_semiprime(L: HomLieAlgebra, mode: Mode | str = Mode.AUTO, limits: Limits = DEFAULT_LIMITS,
                 candidates=None) -> Verdict:
    L.require_verified()
    mode = resolve_mode(L.field, mode)
    if mode is Mode.EXHAUSTIVE:
        key = ("semiprime", limits.max_enum)
        hit = L._cache.get(key)
        if hit is None:
            hit = _semiprime_exhaustive(L, limits)
            L._cache[key] = hit
        return hit
    for x in list(candidates or []) + L.basis():
        if any(x):
            P = ideal_generated(L, [x])
            if _self_bracket(L, P).is_zero():
                return Verdict.false(Method.WITNESS, {"generator": tuple(x), "ideal": P})
    if mode is Mode.DERIVED:
        return _semiprime_scalar_twist(L)
    return Verdict.unknown(Method.WITNESS, "no offending ideal among the tested generators")


def _semiprime_exhaustive(L: HomLieAlgebra, limits: Limits) -> Verdict:
    try:
        prin = principal_ideals(L, limits)
    except EnumerationTooLarge as exc:
        return Verdict.unknown(Method.EXHAUSTIVE, str(exc))
    for x, P in prin.distinct:
        if _self_bracket(L, P).is_zero():
            return Verdict.false(Method.EXHAUSTIVE, {"generator": x, "ideal": P})
    return Verdict.true(Method.EXHAUSTIVE)


def scalar_twist(L: HomLieAlgebra):
    """``lam`` when ``alpha = lam * id``, else ``None``."""
    n = L.dim
    if n == 0:
        return L.field(1)
    lam = L.alpha[0][0]
    for i in range(n):
        for j in range(n):
            if L.alpha[i][j] != (lam if i == j else 0):
                return None
    return lam


def killing_form(L: HomLieAlgebra):
    """Gram matrix of ``(x, y) -> tr([x, -] [y, -])`` on the basis (untwisted)."""
    f = L.field
    lm = L.left_mult
    n = L.dim
    return tuple(
        tuple(f.norm(sum(lm[i][r][c] * lm[j][c][r] for r in range(n) for c in range(n))) for j in range(n))
        for i in range(n)
    )


def _semiprime_scalar_twist(L: HomLieAlgebra) -> Verdict:
    """Decide semiprimeness over Q when ``alpha = lam * id`` with ``lam != 0``.

    Then ``L`` is an ordinary Lie algebra whose Hom-ideals are its ideals, and
    ``[I, alpha(I)] = lam [I, I]``.  In characteristic zero the algebra has no
    nonzero abelian ideal iff its Killing form is nondegenerate.  When the form
    is degenerate its radical is a solvable ideal and the last nonzero term of
    its derived series is an abelian ideal, which is returned as the witness.
    """
    lam = scalar_twist(L)
    if L.field.is_finite or lam is None or not lam:
        return Verdict.unknown(Method.DERIVED, "no decision procedure for this twist")
    rad = kernel(L.field, killing_form(L), L.dim)
    if rad.is_zero():
        return Verdict.true(Method.DERIVED, note="nondegenerate Killing form")
    term = rad
    while True:
        nxt = bracket_span(L, term, term)
        if nxt.is_zero():
            break
        if nxt == term:
            raise StructureViolation("Killing radical is not solvable")
        term = nxt
    if not is_hom_ideal(L, term).is_true or not _self_bracket(L, term).is_zero():
        raise StructureViolation("abelian ideal from the Killing radical failed to re-verify")
    return Verdict.false(Method.DERIVED, {"ideal": term})


def is_prime(L: HomLieAlgebra, mode: Mode | str = Mode.AUTO, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    L.require_verified()
    mode = resolve_mode(L.field, mode)
    if mode is Mode.EXHAUSTIVE:
        key = ("prime", limits.max_enum, limits.max_lattice)
        hit = L._cache.get(key)
        if hit is None:
            hit = _prime_exhaustive(L, limits)
            L._cache[key] = hit
        return hit
    ann = annihilator(L, Subspace.full(L.field, L.dim))
    if L.dim and not ann.is_zero():
        return Verdict.false(Method.WITNESS, {"pair": (ann, Subspace.full(L.field, L.dim))})
    basis_ideals = [ideal_generated(L, [e]) for e in L.basis()]
    for P in basis_ideals:
        for R in basis_ideals:
            if bracket_span(L, P, R.image(L.alpha)).is_zero():
                return Verdict.false(Method.WITNESS, {"pair": (P, R)})
    return Verdict.unknown(Method.WITNESS, "no orthogonal pair among basis ideals")


def _prime_exhaustive(L: HomLieAlgebra, limits: Limits) -> Verdict:
    if L.dim == 0:
        return Verdict.true(Method.EXHAUSTIVE, note="no nonzero ideals")
    try:
        prin = principal_ideals(L, limits).distinct
    except EnumerationTooLarge as exc:
        return Verdict.unknown(Method.EXHAUSTIVE, str(exc))
    twisted = [P.image(L.alpha) for _, P in prin]
    verdict = Verdict.true(Method.EXHAUSTIVE)
    for x, P in prin:
        for (y, R), aR in zip(prin, twisted):
            if bracket_span(L, P, aR).is_zero():
                verdict = Verdict.false(Method.EXHAUSTIVE, {"pair": (P, R), "generators": (x, y)})
                break
        if verdict.is_false:
            break
    # independent route: prime iff every nonzero ideal has zero annihilator
    try:
        ideals = ideal_lattice(L, limits).nonzero()
    except LatticeTooLarge:
        ideals = [P for _, P in prin]
    other = all(annihilator(L, I).is_zero() for I in ideals)
    if other != verdict.is_true:
        raise StructureViolation("primeness by ideal pairs disagrees with the annihilator criterion")
    return verdict


# derived ideals ---------------------------------------------------------------


def minimum_essential_ideal(L: HomLieAlgebra, limits: Limits = DEFAULT_LIMITS) -> Subspace:
    """Intersection of all essential Hom-ideals; essential itself in finite dimension."""
    key = ("min_essential", limits.max_enum, limits.max_lattice)
    hit = L._cache.get(key)
    if hit is not None:
        return hit
    lat = ideal_lattice(L, limits)
    out = Subspace.full(L.field, L.dim)
    for I in lat.essential():
        out = out & I
    prin = [P for _, P in principal_ideals(L, limits).distinct]
    if not is_hom_ideal(L, out).is_true or not _meets_all(out, prin) or (L.dim and out.is_zero()):
        raise StructureViolation("intersection of essential ideals is not an essential ideal")
    L._cache[key] = out
    return out


def ideal_power(L: HomLieAlgebra, I: Subspace, k: int) -> Subspace:
    """``I^1 = I`` and ``I^k = [I^(k-1), alpha(I)]``."""
    if k < 1:
        raise ValueError("ideal powers start at k = 1")
    if not is_hom_ideal(L, I).is_true:
        raise PreconditionFailed("ideal_power expects a Hom-ideal")
    aI = I.image(L.alpha)
    out = I
    for step in range(2, k + 1):
        out = bracket_span(L, out, aI)
        if not is_hom_ideal(L, out).is_true:
            raise StructureViolation(f"power {step} of a Hom-ideal is not a Hom-ideal")
    return out


def alpha_image_is_essential_ideal(L: HomLieAlgebra, mode: Mode | str = Mode.AUTO,
                                   limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Whether ``alpha(L)`` is a Hom-ideal that is essential."""
    aL = twist_image(L)
    v = is_hom_ideal(L, aL)
    if not v.is_true:
        return Verdict.false(v.method, {"alpha_image": aL, "not_ideal": v.witness})
    return is_essential(L, aL, mode, limits)

