"""Executable property checks over corpora of extensions.

Every check takes an extension ``L <= Q`` (algebra-level checks look at the
inner algebra ``L``) and returns one of four outcomes: ``pass``, ``fail`` with
a certificate, ``na`` when a hypothesis is false or undecided, and ``unknown``
when the hypotheses hold but the conclusion could not be decided.

Checks that quantify over ideals use the full lattice, so they need a finite
field.  Checks that quantify over elements enumerate projective points up to
``ELEMENT_CAP``; over Q they test basis vectors only and end ``unknown``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .envelope import (
    OperatorAlgebra,
    assoc_ideal_generated,
    hom_annihilator_dense,
    inner_envelope,
    invariant_subalgebra_a0,
    is_left_quotient_algebra,
    is_multiplicatively_semiprime,
    multiplication_algebra,
    one_sided_annihilator,
    operator_orbit,
    power,
    products,
    subspace_envelope,
    vanishing_on,
)
from .errors import (
    EnumerationTooLarge,
    PreconditionFailed,
    StructureViolation,
    UnsupportedMode,
)
from .exalg import (
    DEFAULT_LIMITS,
    Limits,
    Subspace,
    columns_to_matrix,
    enumerate_projective,
    flatten,
    kernel,
    mat_add,
    mat_mul,
    mat_sub,
    mat_vec,
    projective_count,
    rank,
    transpose,
    unflatten,
)
from .homlie import annihilator, bracket_span, is_hom_ideal
from .maxq import (
    build_maximal_quotients,
    check_overalgebra_criterion,
    check_preconditions,
    commutator,
    embed_psi,
    inner_restricted,
    psi_matrix,
    twist_pder,
    verify_realization,
)
from .props import (
    ideal_lattice,
    ideal_power,
    is_essential,
    is_nondegenerate,
    is_prime,
    is_semiprime,
)
from .quotients import (
    Extension,
    bracket_with_twist,
    denominator_ideal,
    is_ideally_absorbed,
    is_quotient_algebra,
    is_weak_quotient_algebra,
    make_extension,
    quotient_derived,
    self_extension,
    twisted_kernel,
    uniform_denominator,
)
from .verdict import Mode, Verdict, to_jsonable

ELEMENT_CAP = 1000
STATUSES = ("pass", "fail", "na", "unknown")


class NotApplicable(Exception):
    pass


class Undecided(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate or {}


@dataclass(frozen=True)
class Outcome:
    status: str
    reason: str = ""
    certificate: object = None


@dataclass(frozen=True)
class PropertyCheck:
    id: str
    shape: str  # "algebra" | "extension" | "extension+ideal"
    summary: str
    run: Callable


def need(v: Verdict, what: str):
    if v.is_true:
        return
    raise NotApplicable(f"{what}: {'false' if v.is_false else 'unknown'}")


def decided(v: Verdict, what: str) -> bool:
    if v.is_unknown:
        raise Undecided(f"{what} undecided")
    return v.is_true


def expect(cond: bool, message: str, **certificate):
    if not cond:
        raise CheckFailed(message, certificate)


def implication(premise: Verdict, conclusion: Verdict, message: str, **certificate):
    """Fail on True => False; stay undecided when neither side settles it."""
    if premise.is_false or conclusion.is_true:
        return
    if premise.is_true and conclusion.is_false:
        raise CheckFailed(message, dict(certificate, premise=premise, conclusion=conclusion))
    raise Undecided(f"{message.split(':')[0]}: premise or conclusion undecided")


class Context:
    """One instance plus memoized verdicts shared by all checks."""

    def __init__(self, name: str, E: Extension, limits: Limits = DEFAULT_LIMITS):
        self.name = name
        self.E = E
        self.L = E.inner
        self.Q = E.ambient
        self.f = E.field
        self.limits = limits
        self._memo = {}

    def memo(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    # verdicts
    def quotient(self):
        return self.memo("quotient", lambda: is_quotient_algebra(self.E, Mode.AUTO, self.limits))

    def weak(self):
        return self.memo("weak", lambda: is_weak_quotient_algebra(self.E, Mode.AUTO, self.limits))

    def absorbed(self):
        return self.memo("absorbed", lambda: is_ideally_absorbed(self.E, Mode.AUTO, self.limits))

    def semiprime_l(self):
        return self.memo("sp_l", lambda: is_semiprime(self.L, Mode.AUTO, self.limits))

    def semiprime_q(self):
        return self.memo("sp_q", lambda: is_semiprime(self.Q, Mode.AUTO, self.limits))

    def dense(self):
        return self.memo("dense", lambda: hom_annihilator_dense(self.E, check=False))

    def ann_q_zero(self):
        return annihilator(self.Q, Subspace.full(self.f, self.Q.dim)).is_zero()

    def ann_l(self, I):
        return annihilator(self.L, I)

    # enumerations
    def lattice(self):
        if not self.f.is_finite:
            raise NotApplicable("ideal lattice needs a finite field")
        try:
            return self.memo("lattice", lambda: ideal_lattice(self.L, self.limits))
        except EnumerationTooLarge as exc:
            raise NotApplicable(f"ideal lattice over cap ({type(exc).__name__})") from None

    def ideals(self):
        return list(self.lattice().ideals)

    def q_points(self):
        """``(complete, elements)``: all projective points of ``Q`` (plus zero) or basis vectors."""
        Q = self.Q
        if not self.f.is_finite:
            return False, [Q.zero()] + Q.basis()
        if projective_count(self.f.p, Q.dim) > ELEMENT_CAP:
            raise NotApplicable(f"more than {ELEMENT_CAP} elements of Q")
        return True, [Q.zero()] + list(enumerate_projective(self.f, Q.dim, ELEMENT_CAP))

    def tilde(self, I):
        return assoc_ideal_generated(self.E, I)

    def a0(self):
        return self.memo("a0", lambda: invariant_subalgebra_a0(self.E))

    def aq(self):
        return inner_envelope(self.E, "Q")

    def maxq(self):
        need(check_preconditions(self.L, self.limits), "L semiprime with alpha(L) essential")
        return self.memo("maxq", lambda: build_maximal_quotients(self.L, self.limits))

    def orbit(self, I):
        return self.memo(("orbit", I), lambda: operator_orbit(self.E, I).span)


# annihilators and primeness --------------------------------------------------------------------


def check_r2_9(c: Context):
    L = c.L
    nd = is_nondegenerate(L, Mode.AUTO, c.limits)
    sp = c.semiprime_l()
    ann0 = annihilator(L, Subspace.full(c.f, L.dim)).is_zero()
    implication(nd, sp, "nondegenerate but not semiprime")
    if sp.is_true:
        expect(ann0, "semiprime with nonzero annihilator", semiprime=sp)


def check_p2_10(c: Context):
    L = c.L
    sp = c.semiprime_l()
    for I in c.ideals():
        ann = c.ann_l(I)
        ess = is_essential(L, I, Mode.EXHAUSTIVE, c.limits)
        if ann.is_zero():
            expect(ess.is_true, "zero annihilator but not essential", ideal=I, essential=ess)
        if sp.is_true:
            expect((I & ann).is_zero(), "ideal meets its annihilator in a semiprime algebra", ideal=I, annihilator=ann)
            expect(ess.is_true == ann.is_zero(), "essential differs from zero annihilator", ideal=I,
                   annihilator=ann, essential=ess)


def check_p2_11(c: Context):
    lat = c.lattice()
    prime = is_prime(c.L, Mode.EXHAUSTIVE, c.limits)
    prime = decided(prime, "primeness")
    other = all(c.ann_l(I).is_zero() for I in lat.nonzero())
    expect(prime == other, "primeness differs from the annihilator criterion", prime=prime)


# quotient predicates --------------------------------------------------------------------


def check_p3_1(c: Context):
    E = c.E
    complete, qs = c.q_points()
    ideals = c.ideals()
    for q in qs:
        colon = denominator_ideal(E, q).colon
        expect(is_hom_ideal(c.L, colon).is_true, "(L:q) is not a Hom-ideal", q=q)
        expect(bracket_with_twist(E, colon, q).issubset(E.sub), "[(L:q), alpha(q)] leaves L", q=q)
        for I in ideals:
            if bracket_with_twist(E, I, q).issubset(E.sub):
                expect(I.issubset(colon), "an ideal with [I, alpha(q)] in L is not inside (L:q)",
                       q=q, ideal=I, colon=colon)
    if not complete:
        raise Undecided("infinite field: basis elements only")


def check_p3_3(c: Context):
    L = c.L
    if annihilator(L, Subspace.full(c.f, L.dim)).is_zero():
        S = c.E if c.E.sub.is_full() else _self(c)
        v = is_quotient_algebra(S, Mode.AUTO, c.limits)
        expect(decided(v, "L over itself"), "zero annihilator but L is not a quotient algebra of itself", verdict=v)
    if c.quotient().is_true:
        expect(annihilator(c.Q, c.E.sub).is_zero(), "Ann_Q(L) is nonzero for an algebra of quotients")
        expect(annihilator(L, Subspace.full(c.f, L.dim)).is_zero(), "Ann(L) is nonzero for an algebra of quotients")


def check_p3_6(c: Context):
    need(c.weak(), "weak algebra of quotients")
    if not c.f.is_finite:
        raise NotApplicable("ideal lattice needs a finite field")
    try:
        latq = ideal_lattice(c.Q, c.limits)
    except EnumerationTooLarge:
        raise NotApplicable("ideal lattice of Q over cap") from None
    for I in latq.nonzero():
        J = c.E.restrict(I & c.E.sub)
        expect(not J.is_zero(), "a nonzero ideal of Q misses L", ideal=I)
        expect(is_hom_ideal(c.L, J).is_true, "I meet L is not a Hom-ideal of L", ideal=I)
    implication(c.semiprime_l(), c.semiprime_q(), "L semiprime but Q not")
    implication(is_prime(c.L, Mode.AUTO, c.limits), is_prime(c.Q, Mode.AUTO, c.limits), "L prime but Q not")


def _colon_nondegenerate(c: Context, reason: str):
    complete, qs = c.q_points()
    for q in qs:
        colon = denominator_ideal(c.E, q).colon
        ess = is_essential(c.L, colon, Mode.AUTO, c.limits)
        expect(decided(ess, "essential (L:q)"), f"{reason}: (L:q) is not essential", q=q, colon=colon)
        expect(c.ann_l(colon).is_zero(), f"{reason}: (L:q) has a nonzero annihilator", q=q, colon=colon)
    if not complete:
        raise Undecided("infinite field: basis elements only")


def check_p3_8(c: Context):
    qv, av = c.quotient(), c.absorbed()
    if not (qv.is_true or av.is_true):
        raise NotApplicable("neither algebra of quotients nor ideally absorbed: "
                            + ("false" if qv.is_false and av.is_false else "unknown"))
    _colon_nondegenerate(c, "quotient" if qv.is_true else "absorbed")


def check_l3_9(c: Context):
    need(c.weak(), "weak algebra of quotients")
    for I in c.ideals():
        if c.ann_l(I).is_zero():
            K = twisted_kernel(c.E, I)
            expect(K.is_zero(), "a nonzero x has [alpha(x), I] = 0", ideal=I, x=K.first_nonzero() if K.dim else None)


def check_t3_10(c: Context):
    qv, av = c.quotient(), c.absorbed()
    q = decided(qv, "algebra of quotients")
    a = decided(av, "ideally absorbed")
    expect(q == a, "quotient and ideally-absorbed verdicts differ", quotient=qv, absorbed=av)
    dv = quotient_derived(c.E, c.limits)
    if not dv.is_unknown:
        expect(dv.is_true == q, "uniform-denominator verdict differs", quotient=qv, derived=dv)
    if c.f.is_finite and projective_count(c.f.p, c.Q.dim) <= ELEMENT_CAP:
        # quotient iff weak and every (L:q) has zero annihilator
        w = decided(c.weak(), "weak algebra of quotients")
        _, qs = c.q_points()
        all_zero = all(c.ann_l(denominator_ideal(c.E, x).colon).is_zero() for x in qs)
        expect(q == (w and all_zero), "quotient differs from weak plus nondegenerate denominators", quotient=qv)


def check_p3_11(c: Context):
    need(c.weak(), "weak algebra of quotients")
    for I in c.ideals():
        if c.ann_l(I).is_zero():
            expect(annihilator(c.Q, c.E.lift(I)).is_zero(), "Ann_Q(I) nonzero although Ann_L(I) = 0", ideal=I)


def check_p3_13(c: Context):
    need(c.semiprime_l(), "L semiprime")
    need(c.quotient(), "algebra of quotients")
    lat = c.lattice()
    for I in lat.essential():
        EI = make_extension(c.Q, c.E.lift(I).basis)
        v = is_quotient_algebra(EI, Mode.AUTO, c.limits)
        expect(decided(v, "Q over an essential ideal"), "Q is not an algebra of quotients of an essential ideal",
               ideal=I, verdict=v)


# maximal quotients --------------------------------------------------------------------


def check_l4_2(c: Context):
    if not c.f.is_finite:
        raise NotApplicable("class enumeration needs a finite field")
    c.maxq()
    try:
        rep = verify_realization(c.L, c.limits)
    except EnumerationTooLarge as exc:
        raise NotApplicable(f"too many partial derivations ({exc})") from None
    expect(rep.ok, f"classes of partial derivations do not match PDer_0(I_min, L): {rep.detail}",
           pairs=rep.pairs, classes=rep.classes, pder_min_dim=rep.pder_min_dim)


def check_t4_4(c: Context):
    M = c.maxq()
    C = M.carrier
    f = c.f
    expect(C.check_axioms().hom_ok, "carrier fails the Hom-Lie axioms")
    expect(M.phi_injective(), "phi is not injective")
    basis = list(M.pder_basis)
    for i, d1 in enumerate(basis):
        for d2 in basis:
            lhs = twist_pder(c.L, commutator(c.L, d1, d2))
            for other in (commutator(c.L, twist_pder(c.L, d1), d2), commutator(c.L, d1, twist_pder(c.L, d2))):
                expect(lhs.matrix == other.matrix, "alpha-tilde is not multiplicative on the carrier", index=[i])
    E = c.L.basis()
    for x in E:
        for y in E:
            lhs = C.bracket(M.phi_of(x), M.phi_of(y))
            rhs = M.phi_of(c.L.twist(c.L.bracket(x, y)))
            expect(lhs == rhs, "[phi x, phi y] differs from phi(alpha[x, y])", x=x, y=y)


def check_l4_5(c: Context):
    M = c.maxq()
    L = c.L
    for i, d in enumerate(M.pder_basis):
        for x in M.i_min.basis:
            lhs = commutator(L, d, inner_restricted(L, x, M.i_min))
            rhs = inner_restricted(L, d(x), M.i_min)
            expect(lhs.matrix == rhs.matrix, "[delta, ad_x] differs from ad_delta(x)", index=[i], x=x)


def check_p4_6(c: Context):
    M = c.maxq()
    sp = is_semiprime(M.carrier, Mode.AUTO, c.limits)
    expect(decided(sp, "carrier semiprime"), "the carrier is not semiprime", verdict=sp)
    qv = is_quotient_algebra(M.as_extension(), Mode.AUTO, c.limits)
    expect(decided(qv, "carrier over phi(L)"), "the carrier is not an algebra of quotients of phi(L)", verdict=qv)
    if c.quotient().is_true:
        psi_matrix(c.E, M)


def check_p4_8(c: Context):
    M = c.maxq()
    v1, v2 = check_overalgebra_criterion(c.E, c.limits)
    if c.quotient().is_true:
        expect(v1.is_true and v2.is_true, "an algebra of quotients fails the overalgebra criterion",
               first=v1, second=v2)
    if not decided(v1, "ideal-absorption condition"):
        raise NotApplicable("ideal-absorption condition fails; no psi to compare")
    v2 = decided(v2, "faithfulness condition")
    cols = [embed_psi(c.E, M, e) for e in c.Q.basis()]
    P = columns_to_matrix(cols, M.dim)
    injective = rank(c.f, transpose(P), M.dim) == c.Q.dim
    expect(injective == v2, "faithfulness condition differs from injectivity of psi", second=v2)
    for j, b in enumerate(c.E.sub.basis):
        expect(mat_vec(c.f, P, b) == M.phi_of(c.L.basis()[j]), "psi is not phi on L", index=[j])


# operator algebras --------------------------------------------------------------------


def _self(c: Context):
    return c.memo("self_ext", lambda: self_extension(c.L))


def check_l5_1(c: Context):
    L = c.L
    if not annihilator(L, Subspace.full(c.f, L.dim)).is_zero():
        raise NotApplicable("Ann(L) nonzero")
    S = _self(c)
    AL = inner_envelope(S, "Q")
    for I in c.ideals():
        AI = subspace_envelope(S, I)
        r = one_sided_annihilator(AL, AI.span, "right")
        expect(c.ann_l(I).is_zero() == r.is_zero(), "annihilator and right annihilator disagree", ideal=I)


def _ads(c: Context, vecs):
    return [c.Q.ad(v) for v in vecs]


def check_l5_2(c: Context):
    Q, f = c.Q, c.f
    B = Q.basis()
    ads = _ads(c, B)
    for i, x in enumerate(B):
        for j, y in enumerate(B):
            lhs = mat_mul(f, ads[i], ads[j])
            rhs = mat_add(f, Q.ad(Q.twist(Q.bracket(x, y))), mat_mul(f, ads[j], ads[i]))
            expect(lhs == rhs, "ad_x ad_y differs from ad_alpha[x,y] + ad_y ad_x", pair=[i, j])
    ideals = c.ideals() if c.f.is_finite else [Subspace.full(c.f, c.L.dim)]
    for I in ideals:
        c.tilde(I)  # raises when the one-sided ideals differ


def _mono(f, mats):
    out = mats[0]
    for m in mats[1:]:
        out = mat_mul(f, out, m)
    return out


def check_l5_5(c: Context):
    f = c.f
    Ls = list(c.E.sub.basis)
    Q = c.Q
    ad = {v: Q.ad(v) for v in Ls}
    for n in (1, 2, 3):
        for xs in itertools.product(Ls, repeat=n):
            prod = _mono(f, [ad[x] for x in xs])
            for y in Ls:
                lhs = mat_mul(f, prod, ad[y])
                rhs = mat_mul(f, ad[y], prod)
                for i in range(n):
                    z = Q.twist(Q.bracket(xs[i], y))
                    rhs = mat_add(f, rhs, _mono(f, [ad[x] for x in xs[:i]] + [Q.ad(z)] + [ad[x] for x in xs[i + 1:]]))
                expect(lhs == rhs, "commutation formula fails", length=n)
    ideals = c.ideals() if c.f.is_finite else [Subspace.full(c.f, c.L.dim)]
    for I in ideals:
        Is = [c.E.sub.vector(b) for b in I.basis]
        Iads = [Q.ad(v) for v in Is]
        for n in (1, 2):
            span = Subspace.span(f, Q.dim ** 2, [flatten(_mono(f, list(m))) for m in itertools.product(Iads, repeat=n)])
            for xs in itertools.product(Iads, repeat=n):
                prod = _mono(f, list(xs))
                for y in Ls:
                    delta = mat_sub(f, mat_mul(f, prod, ad[y]), mat_mul(f, ad[y], prod))
                    expect(span.contains(flatten(delta)), "correction term leaves the span of I-monomials",
                           ideal=I, length=n)


def _twisted_into_l(c: Context, I: Subspace) -> Subspace:
    """``{q in Q : [alpha(q), I] <= L}``."""
    Q, f = c.Q, c.f
    cons = c.E.sub.constraints()
    rows = []
    if cons:
        for b in I.basis:
            y = c.E.sub.vector(b)
            # q -> [alpha(q), y] = -[y, alpha(q)]
            m = mat_mul(f, Q.left_bracket_matrix(y), Q.alpha)
            rows.extend(mat_mul(f, cons, m))
    return kernel(f, rows, Q.dim)


def _ideal_sample(c: Context):
    """Ideals for the operator-heavy checks: the whole lattice over a finite field."""
    return c.ideals() if c.f.is_finite else [Subspace.full(c.f, c.L.dim)]


def _monomials(c: Context, D: Subspace, n: int):
    f = c.f
    ads = [c.Q.ad(v) for v in D.basis]
    return [_mono(f, list(m)) for m in itertools.product(ads, repeat=n)]


def _in(c: Context, mats, S: Subspace) -> bool:
    return all(S.contains(flatten(m)) for m in mats)


def check_l5_6(c: Context):
    f, n_ = c.f, c.Q.dim
    A0 = c.a0()
    for I in _ideal_sample(c):
        D = _twisted_into_l(c, I)
        if D.is_zero():
            continue
        T = c.tilde(I)
        for n in (1, 2):
            Tn = power(T, n)
            tn = [unflatten(b, n_) for b in Tn.basis]
            for mu in _monomials(c, D, n):
                prods = [mat_mul(f, mu, t) for t in tn] + [mat_mul(f, t, mu) for t in tn]
                expect(_in(c, prods, A0.span), "mu (I~)^n + (I~)^n mu leaves A_0", ideal=I, length=n)


def check_c5_7(c: Context):
    f, n_ = c.f, c.Q.dim
    A0 = c.a0()
    for I in _ideal_sample(c):
        D = _twisted_into_l(c, I)
        T = c.tilde(I)
        for n in (1, 2):
            In = ideal_power(c.L, I, n)
            Tn = c.tilde(In)
            expect(Tn.span.issubset(power(T, n)), "(I^n)~ is not inside (I~)^n", ideal=I, length=n)
            if D.is_zero():
                continue
            tn = [unflatten(b, n_) for b in Tn.span.basis]
            for mu in _monomials(c, D, n):
                prods = [mat_mul(f, mu, t) for t in tn] + [mat_mul(f, t, mu) for t in tn]
                expect(_in(c, prods, A0.span), "mu (I^n)~ + (I^n)~ mu leaves A_0", ideal=I, length=n)


def check_l5_3(c: Context):
    AL = inner_envelope(c.E, "L")
    for I in _ideal_sample(c):
        T = c.tilde(I)
        AI = subspace_envelope(c.E, I)
        for side in ("right", "left"):
            a = one_sided_annihilator(AL, T.span, side)
            b = one_sided_annihilator(AL, AI.span, side)
            expect(a == b, f"{side} annihilators of I~ and A_Q(I) differ", ideal=I)


def check_l5_4(c: Context):
    need(c.weak(), "weak algebra of quotients")
    AQ = c.aq()
    for I in c.ideals():
        if c.ann_l(I).is_zero():
            AI = subspace_envelope(c.E, I)
            r = one_sided_annihilator(AQ, AI.span, "right")
            expect(r.is_zero(), "rann_A(Q)(A_Q(I)) is nonzero", ideal=I)


def check_l5_8(c: Context):
    need(c.semiprime_l(), "L semiprime")
    good = [I for I in c.lattice().nonzero() if c.ann_l(I).is_zero()]
    for I in good:
        for s in (2, 3):
            expect(c.ann_l(ideal_power(c.L, I, s)).is_zero(), "a power of an ideal has a nonzero annihilator",
                   ideal=I, power=s)
    for I, J in itertools.combinations(good, 2):
        expect(c.ann_l(I & J).is_zero(), "an intersection has a nonzero annihilator", first=I, second=J)


def _short_monomials(c: Context) -> OperatorAlgebra:
    f = c.f
    ads = _ads(c, c.Q.basis())
    mats = list(ads) + [mat_mul(f, a, b) for a in ads for b in ads]
    return OperatorAlgebra(c.Q.dim, Subspace.span(f, c.Q.dim ** 2, [flatten(m) for m in mats]))


def _operator_criterion_at(c: Context, q, good, A0) -> bool:
    """Whether some ideal with zero annihilator certifies the operator criterion for ``ad_q``."""
    f, n = c.f, c.Q.dim
    mu = c.Q.ad(q)
    if not any(any(r) for r in mu):
        return False
    for I in good:
        T = c.tilde(I)
        ts = [unflatten(b, n) for b in T.span.basis]
        left = [mat_mul(f, mu, t) for t in ts]
        right = [mat_mul(f, t, mu) for t in ts]
        if not (_in(c, left, A0.span) and _in(c, right, A0.span)):
            continue
        if not any(any(any(r) for r in m) for m in right):
            continue
        if not any(any(mat_vec(f, m, b)) for m in left for b in c.E.sub.basis):
            continue
        return True
    return False


def check_p5_9(c: Context):
    need(c.semiprime_l(), "L semiprime")
    q = decided(c.quotient(), "algebra of quotients")
    f, n = c.f, c.Q.dim
    A0 = c.a0()
    if q:
        expect(c.ann_q_zero(), "Ann(Q) nonzero for an algebra of quotients")
        I = ideal_power(c.L, uniform_denominator(c.E), 2)
        expect(c.ann_l(I).is_zero(), "the squared uniform denominator has a nonzero annihilator")
        T = c.tilde(I)
        M2 = _short_monomials(c)
        ts = [unflatten(b, n) for b in T.span.basis]
        for mu in M2.matrices():
            prods = [mat_mul(f, mu, t) for t in ts] + [mat_mul(f, t, mu) for t in ts]
            expect(_in(c, prods, A0.span), "mu I~ or I~ mu leaves A_0", mu=mu)
        K = one_sided_annihilator(M2, T.span, "right")
        expect(K.is_zero(), "a nonzero short monomial combination is killed by I~",
               mu=unflatten(K.basis[0], n) if K.dim else None)
        complete, qs = c.q_points()
        for x in qs[1:]:
            mu = c.Q.ad(x)
            hit = any(any(mat_vec(f, mat_mul(f, mu, t), b)) for t in ts for b in c.E.sub.basis)
            expect(hit, "ad_q I~ (L) vanishes", q=x)
        if not complete:
            raise Undecided("infinite field: basis elements only")
        return
    if not c.ann_q_zero():
        return
    good = [I for I in c.lattice().ideals if c.ann_l(I).is_zero()]
    _, qs = c.q_points()
    for x in qs[1:]:
        if not _operator_criterion_at(c, x, good, A0):
            return
    raise CheckFailed("the operator criterion holds for every ad_q although Q is not an algebra of quotients")


def check_t5_11(c: Context):
    need(c.semiprime_l(), "L semiprime")
    need(c.quotient(), "algebra of quotients")
    v = is_left_quotient_algebra(c.a0(), c.aq(), Mode.AUTO, c.limits)
    expect(decided(v, "left quotient algebra"), "A(Q) is not a left quotient algebra of A_0", verdict=v)


def check_r5_12(c: Context):
    need(c.semiprime_l(), "L semiprime")
    need(c.weak(), "weak algebra of quotients")
    A0 = c.a0()
    f, n = c.f, c.Q.dim
    for I in c.ideals():
        if not c.ann_l(I).is_zero():
            continue
        T = c.tilde(I)
        J = products(f, n, A0.span, T.span) + T.span
        expect(products(f, n, A0.span, J).issubset(J), "A_0 I~ + I~ is not a left ideal of A_0", ideal=I)
        r = one_sided_annihilator(A0, J, "right")
        expect(r.is_zero(), "the left ideal has a nonzero right annihilator in A_0", ideal=I)


# dense extensions --------------------------------------------------------------------


def check_l6_1(c: Context):
    if not c.ann_q_zero():
        raise NotApplicable("Ann(Q) nonzero")
    rep = c.dense()
    expect(rep.l_ann.is_zero() == rep.a_q_kernel.is_zero(), "density differs from the A(Q) criterion")


def _need_dense(c: Context):
    need(c.dense().dense, "dense extension")


def check_l6_2(c: Context):
    _need_dense(c)
    MQ = multiplication_algebra(c.Q)
    n = c.Q.dim
    for I in c.ideals():
        V = vanishing_on(MQ, c.E.lift(I))
        O = c.orbit(I)
        for b in V.basis:
            mu = unflatten(b, n)
            expect(all(not any(mat_vec(c.f, mu, v)) for v in O.basis), "mu kills I but not M(Q)(I)", ideal=I)


def check_c6_3(c: Context):
    _need_dense(c)
    L, Q = c.L, c.Q
    ideals = c.ideals()
    for I in ideals:
        for J in ideals:
            if bracket_span(L, I.image(L.alpha), J).is_zero():
                OI, OJ = c.orbit(I), c.orbit(J)
                expect(bracket_span(Q, OI, OJ.image(Q.alpha)).is_zero(), "orbits of orthogonal ideals are not orthogonal",
                       first=I, second=J)


def check_c6_4(c: Context):
    _need_dense(c)
    need(c.semiprime_q(), "Q semiprime")
    expect(decided(c.semiprime_l(), "L semiprime"), "L is not semiprime", verdict=c.semiprime_l())


def _ms(c: Context, which: str):
    alg = c.Q if which == "Q" else c.L
    return c.memo(("ms", which), lambda: is_multiplicatively_semiprime(alg, Mode.AUTO, c.limits))


def check_l6_5(c: Context):
    _need_dense(c)
    need(_ms(c, "Q"), "Q multiplicatively semiprime")
    v = _ms(c, "L")
    expect(decided(v, "L multiplicatively semiprime"), "L is not multiplicatively semiprime", verdict=v)


def _dense_quotient_hyp(c: Context):
    _need_dense(c)
    need(c.quotient(), "algebra of quotients")
    need(_ms(c, "Q"), "Q multiplicatively semiprime")


def check_p6_7(c: Context):
    _dense_quotient_hyp(c)
    for I in c.lattice().essential():
        EI = make_extension(c.Q, c.E.lift(I).basis)
        rep = hom_annihilator_dense(EI, check=False)
        expect(rep.dense.is_true, "an essential ideal is not dense in Q", ideal=I)


def check_c6_8(c: Context):
    _dense_quotient_hyp(c)
    AQ = c.aq()
    for I in c.lattice().essential():
        T = c.tilde(I)
        expect(one_sided_annihilator(AQ, T.span, "left").is_zero(), "lann_A(Q)(I~) is nonzero", ideal=I)


# registry ------------------------------------------------------------------------

_SPECS = [
    ("R2.9", "algebra", check_r2_9, "nondegenerate implies semiprime implies zero annihilator"),
    ("P2.10", "extension+ideal", check_p2_10,
     "zero annihilator gives essential; in a semiprime algebra essential matches zero annihilator"),
    ("P2.11", "algebra", check_p2_11, "prime matches every nonzero ideal having zero annihilator"),
    ("P3.1", "extension", check_p3_1, "(L:q) is a Hom-ideal and the largest ideal sending alpha(q) into L"),
    ("P3.3", "extension", check_p3_3,
     "zero annihilator makes L a quotient algebra of itself; quotient algebras have zero annihilators"),
    ("P3.6", "extension", check_p3_6, "weak quotients: ideals of Q meet L; semiprime and prime pass up to Q"),
    ("P3.8", "extension", check_p3_8, "for quotient or absorbed extensions every (L:q) is essential and nondegenerate"),
    ("L3.9", "extension+ideal", check_l3_9, "weak quotients: no nonzero element is killed by a nondegenerate ideal"),
    ("T3.10", "extension", check_t3_10,
     "algebra of quotients agrees with ideally absorbed, the uniform-denominator route and the weak criterion"),
    ("P3.11", "extension+ideal", check_p3_11, "weak quotients: zero annihilator in L gives zero annihilator in Q"),
    ("P3.13", "extension+ideal", check_p3_13, "semiprime L: Q is an algebra of quotients of each essential ideal"),
    ("L4.2", "algebra", check_l4_2, "classes of partial derivations on essential ideals match PDer_0(I_min, L)"),
    ("T4.4", "algebra", check_t4_4, "the carrier is a multiplicative Hom-Lie algebra and phi embeds L up to alpha"),
    ("L4.5", "algebra", check_l4_5, "[delta, ad_x] equals ad of delta(x) on I_min"),
    ("P4.6", "extension", check_p4_6,
     "the carrier is semiprime, a quotient algebra of phi(L), and psi embeds quotient extensions"),
    ("P4.8", "extension", check_p4_8, "the two overalgebra conditions match injectivity of psi"),
    ("L5.1", "extension+ideal", check_l5_1, "Ann(I) = 0 matches rann_A(L)(A_L(I)) = 0 when Ann(L) = 0"),
    ("L5.2", "extension+ideal", check_l5_2,
     "ad_x ad_y = ad_alpha[x,y] + ad_y ad_x on basis pairs; one-sided ideals of A_Q(I) coincide"),
    ("L5.3", "extension+ideal", check_l5_3, "annihilators of I~ and A_Q(I) in A_Q(L) coincide on both sides"),
    ("L5.4", "extension+ideal", check_l5_4, "weak quotients: nondegenerate ideals have zero right annihilator in A(Q)"),
    ("L5.5", "extension+ideal", check_l5_5,
     "commutation formula for monomials of length up to 3; correction in I-monomials up to length 2"),
    ("L5.6", "extension+ideal", check_l5_6, "ad-monomials of length up to 2 map powers of I~ into A_0"),
    ("C5.7", "extension+ideal", check_c5_7, "(I^n)~ lies in (I~)^n and is moved into A_0, n up to 2"),
    ("L5.8", "extension+ideal", check_l5_8,
     "semiprime L: powers and pairwise intersections of nondegenerate ideals stay nondegenerate"),
    ("P5.9", "extension", check_p5_9,
     "semiprime L: quotient algebra matches the operator criterion, tested on ad-monomials of length up to 2"),
    ("T5.11", "extension", check_t5_11, "semiprime L and quotient Q: A(Q) is a left quotient algebra of A_0"),
    ("R5.12", "extension+ideal", check_r5_12,
     "semiprime L, weak quotient Q: A_0 I~ + I~ is a left ideal with zero right annihilator"),
    ("L6.1", "extension", check_l6_1, "Ann(Q) = 0: density matches the A(Q) vanishing criterion"),
    ("L6.2", "extension+ideal", check_l6_2, "dense: operators killing I kill its M(Q)-orbit"),
    ("C6.3", "extension+ideal", check_c6_3, "dense: orthogonal ideals have orthogonal orbits"),
    ("C6.4", "extension", check_c6_4, "dense: Q semiprime gives L semiprime"),
    ("L6.5", "extension", check_l6_5, "dense: Q multiplicatively semiprime gives L multiplicatively semiprime"),
    ("P6.7", "extension+ideal", check_p6_7, "dense quotient, Q multiplicatively semiprime: essential ideals are dense"),
    ("C6.8", "extension+ideal", check_c6_8,
     "dense quotient, Q multiplicatively semiprime: lann_A(Q)(I~) = 0 for essential I"),
]

CHECKS = {cid: PropertyCheck(cid, shape, summary, fn) for cid, shape, fn, summary in _SPECS}
CHECK_IDS = tuple(cid for cid, *_ in _SPECS)


def select_checks(spec) -> list:
    if spec in (None, "", "all"):
        return list(CHECK_IDS)
    ids = [s.strip() for s in (spec.split(",") if isinstance(spec, str) else spec) if s.strip()]
    for cid in ids:
        if cid not in CHECKS:
            raise KeyError(f"unknown check id {cid!r}")
    return ids


def run_check(cid: str, context: Context) -> Outcome:
    if cid not in CHECKS:
        raise KeyError(f"unknown check id {cid!r}")
    check = CHECKS[cid]
    try:
        check.run(context)
    except NotApplicable as exc:
        return Outcome("na", str(exc))
    except Undecided as exc:
        return Outcome("unknown", str(exc))
    except CheckFailed as exc:
        return Outcome("fail", str(exc), to_jsonable(exc.certificate, context.f))
    except StructureViolation as exc:
        return Outcome("fail", f"structure violation: {exc}")
    except (UnsupportedMode, PreconditionFailed, EnumerationTooLarge) as exc:
        return Outcome("na", f"{type(exc).__name__}: {exc}")
    return Outcome("pass")


def _run_instance(args):
    name, ext_json, ids, limits = args
    E = Extension.from_json(ext_json)
    ctx = Context(name, E, limits)
    return [run_check(cid, ctx) for cid in ids]


@dataclass
class CheckSummary:
    id: str
    summary: str
    shape: str
    counts: dict = field(default_factory=lambda: {s: 0 for s in STATUSES})
    reasons: dict = field(default_factory=dict)  # status -> reason -> count
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "summary": self.summary,
            "shape": self.shape,
            "counts": dict(self.counts),
            "reasons": {k: dict(sorted(v.items())) for k, v in sorted(self.reasons.items())},
            "failures": self.failures,
        }


@dataclass
class HarnessReport:
    fingerprint: dict
    checks: list
    rows: list  # (instance, check, status, reason)

    @property
    def fail_count(self) -> int:
        return sum(c.counts["fail"] for c in self.checks)

    def to_json(self) -> dict:
        return {"fingerprint": self.fingerprint, "checks": [c.to_json() for c in self.checks],
                "total_fail": self.fail_count}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["instance", "check", "status", "reason"])
        w.writerows(self.rows)
        return buf.getvalue()


def fingerprint(corpus) -> dict:
    h = hashlib.sha256()
    strategies, fields, dims, seeds = Counter(), Counter(), Counter(), set()
    for name, E, meta in corpus:
        h.update(name.encode())
        h.update(E.dumps().encode())
        strategies[meta.get("strategy", "unknown")] += 1
        fields[str(E.field)] += 1
        dims[f"{E.ambient.dim}/{E.sub.dim}"] += 1
        if "seed" in meta:
            seeds.add(meta["seed"])
    return {
        "instances": len(corpus),
        "sha256": h.hexdigest(),
        "strategies": dict(sorted(strategies.items())),
        "fields": dict(sorted(fields.items())),
        "dims_q_over_l": dict(sorted(dims.items())),
        "seeds": sorted(seeds),
    }


def run_suite(corpus, checks=None, jobs: int = 1, limits: Limits = DEFAULT_LIMITS) -> HarnessReport:
    """Run the selected checks on every instance; output does not depend on ``jobs``."""
    ids = select_checks(checks)
    corpus = sorted(corpus, key=lambda t: t[0])
    tasks = [(name, E.to_json(), ids, limits) for name, E, _ in corpus]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_instance, tasks, chunksize=1))
    else:
        results = [_run_instance(t) for t in tasks]
    summaries = {cid: CheckSummary(cid, CHECKS[cid].summary, CHECKS[cid].shape) for cid in ids}
    rows = []
    for (name, E, _), outcomes in zip(corpus, results):
        for cid, out in zip(ids, outcomes):
            s = summaries[cid]
            s.counts[out.status] += 1
            if out.status != "pass":
                bucket = s.reasons.setdefault(out.status, {})
                bucket[out.reason] = bucket.get(out.reason, 0) + 1
            if out.status == "fail":
                s.failures.append({"instance": name, "extension": E.to_json(), "reason": out.reason,
                                   "certificate": out.certificate})
            rows.append((name, cid, out.status, out.reason))
    return HarnessReport(fingerprint(corpus), [summaries[c] for c in ids], rows)


def reproduce(failure: dict, check_id: str, limits: Limits = DEFAULT_LIMITS) -> Outcome:
    """Re-run one stored failure from its serialized instance."""
    E = Extension.from_json(failure["extension"])
    return run_check(check_id, Context(failure["instance"], E, limits))


def write_report(report: HarnessReport, out_dir, plot: bool = True) -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {"json": out / "report.json", "csv": out / "report.csv"}
    paths["json"].write_text(report.dumps())
    paths["csv"].write_text(report.csv_text())
    if plot:
        from .plotting import plot_report

        paths["png"] = plot_report(report, out / "report.png")
    return paths
