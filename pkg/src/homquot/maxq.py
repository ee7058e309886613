"""Partial derivations and a finite-dimensional model of the maximal algebra of quotients.

The maximal algebra of quotients is a direct limit of partial derivations on
essential ideals.  In finite dimension the essential ideals have a least
element ``I_min`` (essential ideals are closed under intersection), every
class of partial derivations has exactly one representative defined on
``I_min``, and so the limit collapses to the single space ``PDer_0(I_min, L)``.
``verify_realization`` checks that collapse by brute force over the lattice.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import EnumerationTooLarge, PreconditionFailed, StructureViolation
from .exalg import (
    DEFAULT_LIMITS,
    Limits,
    Subspace,
    columns_to_matrix,
    flatten,
    format_matrix,
    kernel,
    lin_comb,
    mat_mul,
    mat_sub,
    mat_vec,
    rank,
    transpose,
)
from .homlie import HomLieAlgebra, annihilator, is_hom_ideal, twist_image
from .props import ideal_lattice, is_essential, is_semiprime, minimum_essential_ideal, scalar_twist
from .quotients import Extension, make_extension, twisted_kernel, uniform_denominator
from .verdict import Method, Mode, Verdict, resolve_mode


@dataclass(frozen=True)
class PartialDerivation:
    """Linear map ``delta: I -> L``; column ``j`` of ``matrix`` is ``delta`` of the ``j``-th basis vector of ``I``."""

    domain: Subspace
    matrix: tuple
    k: int = 0

    def __call__(self, x):
        return mat_vec(self.domain.field, self.matrix, self.domain.coordinates(x))

    def restrict(self, K: Subspace) -> "PartialDerivation":
        if not K.issubset(self.domain):
            raise PreconditionFailed("restriction to a subspace outside the domain")
        cols = [self(b) for b in K.basis]
        return PartialDerivation(K, columns_to_matrix(cols, self.domain.ambient_dim), self.k)

    def flat(self):
        return flatten(self.matrix)


def _apply_flat(flat, m, coords):
    """``D coords`` where ``D`` is row-major flattened with ``m`` columns."""
    n = len(flat) // m if m else 0
    return tuple(sum(flat[r * m + c] * coords[c] for c in range(m)) for r in range(n))


def pder_system(L: HomLieAlgebra, I: Subspace, k: int):
    """Rows of the linear system whose kernel is ``PDer_k(I, L)``.

    Unknowns are the entries of the ``n x m`` matrix ``D`` in row-major order.
    """
    f = L.field
    n, m = L.dim, I.dim
    B = I.basis
    ak = L.alpha_power(k)
    a_cols = [I.coordinates(L.twist(b)) for b in B]
    akB = [mat_vec(f, ak, b) for b in B]
    pairs = [(i, j, I.coordinates(L.bracket(B[i], B[j]))) for i in range(m) for j in range(i + 1, m)]

    def residual(D):
        out = []
        # delta(alpha b_j) - alpha(delta b_j)
        for j in range(m):
            lhs = _apply_flat(D, m, a_cols[j])
            rhs = mat_vec(f, L.alpha, tuple(D[r * m + j] for r in range(n)))
            out.extend(lhs[r] - rhs[r] for r in range(n))
        # delta[b_i, b_j] - [delta b_i, a^k b_j] - [a^k b_i, delta b_j]
        for i, j, c in pairs:
            lhs = _apply_flat(D, m, c)
            di = tuple(D[r * m + i] for r in range(n))
            dj = tuple(D[r * m + j] for r in range(n))
            t1 = L.bracket(di, akB[j]) if any(di) else (0,) * n
            t2 = L.bracket(akB[i], dj) if any(dj) else (0,) * n
            out.extend(lhs[r] - t1[r] - t2[r] for r in range(n))
        return out

    nvars = n * m
    cols = []
    for u in range(nvars):
        D = [0] * nvars
        D[u] = 1
        cols.append(residual(D))
    nrows = len(cols[0]) if cols else 0
    return [tuple(f.norm(cols[u][r]) if f.p else f(cols[u][r]) for u in range(nvars)) for r in range(nrows)]


def pder_space(L: HomLieAlgebra, I: Subspace, k: int = 0) -> Subspace:
    """``PDer_k(I, L)`` as a subspace of flattened ``n x dim I`` matrices."""
    key = ("pder", I, k)
    hit = L._cache.get(key)
    if hit is None:
        L.require_verified()
        if k < 0:
            raise ValueError("twist power must be nonnegative")
        if not is_hom_ideal(L, I).is_true:
            raise PreconditionFailed("partial derivations are defined on Hom-ideals")
        rows = pder_system(L, I, k)
        hit = kernel(L.field, rows, L.dim * I.dim)
        L._cache[key] = hit
    return hit


def _unflat(flat, n, m):
    return tuple(tuple(flat[r * m:(r + 1) * m]) for r in range(n))


def pder_solve(L: HomLieAlgebra, I: Subspace, k: int = 0) -> list:
    S = pder_space(L, I, k)
    return [PartialDerivation(I, _unflat(b, L.dim, I.dim), k) for b in S.basis]


def is_partial_derivation(L: HomLieAlgebra, d: PartialDerivation) -> bool:
    """Direct substitution check, independent of the kernel solve."""
    f = L.field
    I = d.domain
    ak = L.alpha_power(d.k)
    for b in I.basis:
        if d(L.twist(b)) != L.twist(d(b)):
            return False
    for x, y in itertools.combinations(I.basis, 2):
        lhs = d(L.bracket(x, y))
        rhs = [a + b for a, b in zip(L.bracket(d(x), mat_vec(f, ak, y)), L.bracket(mat_vec(f, ak, x), d(y)))]
        if lhs != tuple(f.norm(v) if f.p else v for v in rhs):
            return False
    return True


def inner_restricted(L: HomLieAlgebra, x, I: Subspace) -> PartialDerivation:
    """``ad(x) = [alpha(x), -]`` restricted to ``I``."""
    ax = L.twist(x)
    cols = [L.bracket(ax, b) for b in I.basis]
    return PartialDerivation(I, columns_to_matrix(cols, L.dim), 0)


def class_equal(d1: PartialDerivation, d2: PartialDerivation, L: HomLieAlgebra,
                limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Whether two partial derivations agree on some essential ideal inside both domains."""
    if d1.k != 0 or d2.k != 0:
        raise PreconditionFailed("classes are only compared for k = 0")
    common = d1.domain & d2.domain
    lat = ideal_lattice(L, limits)
    cands = [K for K, e in zip(lat.ideals, lat.essential_flags) if e and K.issubset(common)]
    if not cands:
        return Verdict.false(Method.EXHAUSTIVE, {"reason": "no essential ideal inside both domains"})
    for K in sorted(cands, key=lambda K: -K.dim):
        if all(d1(b) == d2(b) for b in K.basis):
            return Verdict.true(Method.EXHAUSTIVE, {"ideal": K})
    smallest = min(cands, key=lambda K: K.dim)
    x = next(b for b in smallest.basis if d1(b) != d2(b))
    return Verdict.false(Method.EXHAUSTIVE, {"ideal": smallest, "vector": x})


# the realization ---------------------------------------------------------------


@dataclass(frozen=True)
class MaxQuotients:
    base: HomLieAlgebra
    carrier: HomLieAlgebra
    i_min: Subspace
    space: Subspace  # PDer_0(I_min, L), flattened
    pder_basis: tuple
    alpha_tilde: tuple
    phi: tuple  # carrier-dim x dim L

    @property
    def dim(self):
        return self.carrier.dim

    def element(self, coords) -> PartialDerivation:
        flat = self.space.vector(coords)
        return PartialDerivation(self.i_min, _unflat(flat, self.base.dim, self.i_min.dim), 0)

    def coords_of(self, d: PartialDerivation):
        if d.domain != self.i_min:
            d = d.restrict(self.i_min)
        flat = d.flat()
        if not self.space.contains(flat):
            raise StructureViolation("map on I_min is not a partial derivation")
        return self.space.coordinates(flat)

    def phi_of(self, x):
        return mat_vec(self.base.field, self.phi, x)

    def phi_image(self) -> Subspace:
        return Subspace.span(self.base.field, self.dim, transpose(self.phi))

    def phi_injective(self) -> bool:
        return rank(self.base.field, transpose(self.phi), self.dim) == self.base.dim

    def as_extension(self) -> Extension:
        """``phi(L) <= carrier``."""
        return make_extension(self.carrier, self.phi_image().basis)

    def to_json(self) -> dict:
        f = self.base.field
        out = self.carrier.to_json()
        out["phi"] = format_matrix(f, self.phi)
        out["i_min_basis"] = format_matrix(f, self.i_min.basis)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _compose_on(L: HomLieAlgebra, d1: PartialDerivation, d2: PartialDerivation) -> PartialDerivation:
    """``d1 o d2`` on the common domain; ``d2`` must map it into the domain of ``d1``."""
    I = d2.domain
    cols = [d1(d2(b)) for b in I.basis]
    return PartialDerivation(I, columns_to_matrix(cols, L.dim), 0)


def commutator(L: HomLieAlgebra, d1: PartialDerivation, d2: PartialDerivation) -> PartialDerivation:
    a = _compose_on(L, d1, d2)
    b = _compose_on(L, d2, d1)
    return PartialDerivation(d1.domain, mat_sub(L.field, a.matrix, b.matrix), 0)


def twist_pder(L: HomLieAlgebra, d: PartialDerivation) -> PartialDerivation:
    return PartialDerivation(d.domain, mat_mul(L.field, L.alpha, d.matrix), d.k)


def check_preconditions(L: HomLieAlgebra, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Semiprime with ``alpha(L)`` an essential Hom-ideal."""
    L.require_verified()
    sp = is_semiprime(L, Mode.AUTO, limits)
    if not sp.is_true:
        return Verdict(sp.value, sp.method, {"semiprime": sp}, "semiprimeness not established")
    aL = twist_image(L)
    ess = is_essential(L, aL, Mode.AUTO, limits)
    if not ess.is_true:
        return Verdict(ess.value, ess.method, {"alpha_image_essential": ess}, "alpha(L) not shown essential")
    return Verdict.true(sp.method)


def _semisimple_shortcut(L: HomLieAlgebra) -> bool:
    """Over Q with a nonzero scalar twist and a semiprime algebra the only essential ideal is L."""
    lam = scalar_twist(L)
    return (not L.field.is_finite) and lam is not None and lam != 0


def build_maximal_quotients(L: HomLieAlgebra, limits: Limits = DEFAULT_LIMITS) -> MaxQuotients:
    pre = check_preconditions(L, limits)
    if not pre.is_true:
        raise PreconditionFailed(f"maximal quotients need a semiprime algebra with essential alpha(L): {pre.note}")
    f = L.field
    n = L.dim
    if L.field.is_finite:
        i_min = minimum_essential_ideal(L, limits)
    elif _semisimple_shortcut(L):
        i_min = Subspace.full(f, n)
    else:
        raise PreconditionFailed("over Q only the semisimple scalar-twist case is supported")
    m = i_min.dim
    space = pder_space(L, i_min, 0)
    basis = [PartialDerivation(i_min, _unflat(b, n, m), 0) for b in space.basis]
    for d in basis:
        for b in i_min.basis:
            if not i_min.contains(d(b)):
                raise StructureViolation("a partial derivation on I_min leaves I_min")

    def coords(d):
        flat = d.flat()
        if not space.contains(flat):
            raise StructureViolation("operation leaves PDer_0(I_min, L)")
        return space.coordinates(flat)

    dim = len(basis)
    entries = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            entries[(i, j)] = coords(commutator(L, basis[i], basis[j]))
    alpha_tilde = columns_to_matrix([coords(twist_pder(L, d)) for d in basis], dim)
    carrier = HomLieAlgebra.from_structure(f, dim, entries, alpha_tilde)
    rep = carrier.check_axioms()
    if not rep.hom_ok:
        raise StructureViolation(f"carrier fails the Hom-Lie axioms: {rep}")
    phi = columns_to_matrix([coords(inner_restricted(L, e, i_min)) for e in L.basis()], dim)
    M = MaxQuotients(L, carrier, i_min, space, tuple(basis), alpha_tilde, phi)
    if not M.phi_injective():
        raise StructureViolation("phi is not injective")
    return M


def embed_psi(E: Extension, M: MaxQuotients, s) -> tuple:
    """``psi(s)``: ``ad(s)`` restricted to ``I_min``, as carrier coordinates."""
    Q = E.ambient
    if E.inner != M.base:
        raise PreconditionFailed("the extension's subalgebra is not the base of the maximal quotients")
    as_ = Q.twist(s)
    cols = []
    for b in M.i_min.basis:
        v = Q.bracket(as_, E.sub.vector(b))
        if not E.sub.contains(v):
            raise StructureViolation("ad(s) does not map I_min into L")
        cols.append(E.sub.coordinates(v))
    d = PartialDerivation(M.i_min, columns_to_matrix(cols, M.base.dim), 0)
    return M.coords_of(d)


def psi_matrix(E: Extension, M: MaxQuotients):
    """Matrix of ``psi`` on the ambient basis; asserts injectivity and ``psi|L = phi``."""
    f = E.field
    cols = [embed_psi(E, M, e) for e in E.ambient.basis()]
    P = columns_to_matrix(cols, M.dim)
    if rank(f, transpose(P), M.dim) != E.ambient.dim:
        raise StructureViolation("psi is not injective")
    for j, b in enumerate(E.sub.basis):
        if mat_vec(f, P, b) != M.phi_of(M.base.basis()[j]):
            raise StructureViolation("psi does not restrict to phi on L")
    return P


def check_overalgebra_criterion(E: Extension, limits: Limits = DEFAULT_LIMITS):
    """The two conditions characterizing overalgebras of the maximal quotients.

    (1) every ``s`` has an essential ideal ``I`` with ``[alpha(I), s] <= L``;
    (2) for every essential ``I``, ``[alpha(I), s] = 0`` forces ``s = 0``.
    Condition (1) is checked on the ambient basis; intersecting the resulting
    essential ideals covers every linear combination.
    """
    L = E.inner
    pre = check_preconditions(L, limits)
    if not pre.is_true:
        raise PreconditionFailed(f"criterion needs a semiprime algebra with essential alpha(L): {pre.note}")
    Q = E.ambient
    f = E.field

    def twisted_bracket_span(I, s):
        aI = I.image(L.alpha)
        return Subspace.span(f, Q.dim, [Q.bracket(E.sub.vector(b), s) for b in aI.basis])

    def kernel_of(I):
        rows = []
        for b in I.image(L.alpha).basis:
            rows.extend(Q.left_bracket_matrix(E.sub.vector(b)))
        return kernel(f, rows, Q.dim)

    if f.is_finite:
        lat = ideal_lattice(L, limits)
        ess = lat.essential()
        v1 = Verdict.true(Method.EXHAUSTIVE)
        for s in Q.basis():
            if not any(twisted_bracket_span(I, s).issubset(E.sub) for I in ess):
                v1 = Verdict.false(Method.EXHAUSTIVE, {"s": s})
                break
        v2 = Verdict.true(Method.EXHAUSTIVE)
        for I in ess:
            K = kernel_of(I)
            if not K.is_zero():
                v2 = Verdict.false(Method.EXHAUSTIVE, {"ideal": E.lift(I), "s": K.first_nonzero()})
                break
        return v1, v2
    istar = uniform_denominator(E)
    if annihilator(L, istar).is_zero():
        v1 = Verdict.true(Method.DERIVED, {"ideal": E.lift(istar)})
    else:
        v1 = Verdict.unknown(Method.DERIVED, "uniform denominator has a nonzero annihilator")
    if _semisimple_shortcut(L):
        K = kernel_of(Subspace.full(f, L.dim))
        v2 = Verdict.true(Method.DERIVED) if K.is_zero() else Verdict.false(Method.DERIVED, {"s": K.first_nonzero()})
    else:
        v2 = Verdict.unknown(Method.DERIVED, "essential ideals not enumerable")
    return v1, v2


# brute-force oracle -------------------------------------------------------------


@dataclass(frozen=True)
class RealizationReport:
    ok: bool
    essential_ideals: int
    pairs: int
    classes: int
    pder_min_dim: int
    detail: str = ""


def verify_realization(L: HomLieAlgebra, limits: Limits = DEFAULT_LIMITS, max_pairs: int = 5000) -> RealizationReport:
    """Compare classes of pairs ``(delta, I)`` with ``PDer_0(I_min, L)``.

    Classes are formed by union-find over agreement on essential lattice
    ideals (never looking at ``I_min``), spot-checked against ``class_equal``;
    the report then checks that restriction to ``I_min`` is well defined and
    bijective on classes.
    """
    if not L.field.is_finite:
        raise PreconditionFailed("brute-force classes need a finite field")
    f = L.field
    lat = ideal_lattice(L, limits)
    ess = lat.essential()
    pairs = []
    for I in ess:
        S = pder_space(L, I, 0)
        total = f.p ** S.dim
        if len(pairs) + total > max_pairs:
            raise EnumerationTooLarge(f"more than {max_pairs} partial derivations to compare")
        for c in itertools.product(range(f.p), repeat=S.dim):
            flat = lin_comb(f, c, S.basis, S.ambient_dim)
            pairs.append(PartialDerivation(I, _unflat(flat, L.dim, I.dim), 0))
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # (delta, I) and (mu, J) are related when they agree on an essential K
    # inside I and J: bucket the pairs by their restriction to each such K
    for K in ess:
        buckets = {}
        for i, d in enumerate(pairs):
            if K.issubset(d.domain):
                key = tuple(d(b) for b in K.basis)
                buckets.setdefault(key, []).append(i)
        for members in buckets.values():
            first = members[0]
            for j in members[1:]:
                ri, rj = find(first), find(j)
                if ri != rj:
                    parent[rj] = ri
    # spot-check the bucketing against the pairwise relation
    for i in range(len(pairs)):
        r = find(i)
        if r != i and not class_equal(pairs[r], pairs[i], L, limits).is_true:
            j = next((j for j in range(len(pairs)) if find(j) == r and j != i
                      and class_equal(pairs[j], pairs[i], L, limits).is_true), None)
            if j is None:
                raise StructureViolation("a pair is related to no other member of its class")
    classes = {}
    for i in range(len(pairs)):
        classes.setdefault(find(i), []).append(i)

    i_min = minimum_essential_ideal(L, limits)
    space = pder_space(L, i_min, 0)
    images = {}
    for root, members in classes.items():
        restr = {pairs[i].restrict(i_min).flat() for i in members}
        if len(restr) != 1:
            return RealizationReport(False, len(ess), len(pairs), len(classes), space.dim,
                                     "a class restricts to several maps on I_min")
        (r,) = restr
        if not space.contains(r):
            return RealizationReport(False, len(ess), len(pairs), len(classes), space.dim,
                                     "a restriction is not a partial derivation")
        if r in images:
            return RealizationReport(False, len(ess), len(pairs), len(classes), space.dim,
                                     "two classes restrict to the same map")
        images[r] = root
    ok = len(images) == f.p ** space.dim
    detail = "" if ok else "restriction misses part of PDer_0(I_min, L)"
    return RealizationReport(ok, len(ess), len(pairs), len(classes), space.dim, detail)
