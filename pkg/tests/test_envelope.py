import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homquot.corpus import abelian, curated, ex2_5, sl2
from homquot.envelope import (
    _semiprime_scan,
    _semiprime_trace,
    assoc_ideal_generated,
    associative_envelope,
    hom_annihilator_dense,
    inner_envelope,
    invariant_subalgebra_a0,
    is_assoc_semiprime,
    is_closed,
    is_left_quotient_algebra,
    is_multiplicatively_semiprime,
    multiplication_algebra,
    one_sided_annihilator,
    operator_closure,
    operator_orbit,
)
from homquot.exalg import GF, QQ, Limits, Subspace, enumerate_vectors, flatten, identity, mat_mul
from homquot.quotients import make_extension, self_extension
from homquot.verdict import Mode


def full_matrix_algebra(f, n):
    units = []
    for i in range(n):
        for j in range(n):
            units.append(tuple(tuple(f(1) if (r, c) == (i, j) else f(0) for c in range(n)) for r in range(n)))
    return operator_closure(f, n, units)


def test_closure_examples():
    f = QQ
    assert operator_closure(f, 3, [((0,) * 3,) * 3]).is_zero()
    A = abelian(f, 3)
    assert associative_envelope(A).is_zero()
    assert associative_envelope(sl2(QQ)).dim == 9
    assert associative_envelope(ex2_5(QQ)).is_zero()
    X = self_extension(ex2_5(QQ))
    assert multiplication_algebra(X.ambient).dim == 1  # just the identity


def test_envelope_containments():
    E = curated()["borel_in_sl2"][0]
    AL, AQ, A0 = inner_envelope(E, "L"), inner_envelope(E, "Q"), invariant_subalgebra_a0(E)
    assert AL.span <= A0.span <= AQ.span
    assert A0.dim < AQ.dim
    for v in E.sub.basis:
        assert A0.contains(E.ambient.ad(v))
    for A in (AL, AQ, A0):
        assert is_closed(A)
    S = self_extension(sl2(GF(5)))
    assert invariant_subalgebra_a0(S).span == inner_envelope(S, "Q").span


def test_one_sided_annihilators():
    f = GF(3)
    M = full_matrix_algebra(f, 2)
    assert one_sided_annihilator(M, Subspace.zero(f, 4), "right") == M.span
    assert one_sided_annihilator(M, M.span, "right").is_zero()
    assert one_sided_annihilator(M, M.span, "left").is_zero()
    # a commutative algebra: the two sides agree
    N = operator_closure(f, 2, [((0, 1), (0, 0))], unital=True)
    X = Subspace.span(f, 4, [flatten(((0, 1), (0, 0)))])
    assert one_sided_annihilator(N, X, "left") == one_sided_annihilator(N, X, "right")


def test_assoc_ideal_generated():
    f = GF(5)
    S = self_extension(sl2(f))
    full = Subspace.full(f, 3)
    assert assoc_ideal_generated(S, full).span == inner_envelope(S, "L").span
    assert assoc_ideal_generated(S, Subspace.zero(f, 3)).is_zero()


def test_semiprime_examples():
    f = GF(3)
    assert is_assoc_semiprime(full_matrix_algebra(f, 2), Mode.EXHAUSTIVE).is_true
    assert is_assoc_semiprime(full_matrix_algebra(QQ, 2), Mode.AUTO).is_true
    nil = operator_closure(f, 2, [((0, 1), (0, 0))])
    v = is_assoc_semiprime(nil, Mode.EXHAUSTIVE)
    assert v.is_false
    assert is_assoc_semiprime(operator_closure(f, 2, []), Mode.EXHAUSTIVE).is_true


@settings(max_examples=30)
@given(st.lists(st.tuples(*[st.integers(0, 6)] * 4), min_size=1, max_size=2))
def test_semiprime_scan_matches_trace_when_p_is_large(gens):
    # over GF(7) with 2x2 operators the trace criterion is valid (p > dim)
    f = GF(7)
    A = operator_closure(f, 2, [((a, b), (c, d)) for a, b, c, d in gens])
    if A.is_zero():
        return
    scan = _semiprime_scan(A, Limits())
    trace = _semiprime_trace(A)
    assert scan.value == trace.value


def brute_left_quotient(A, S):
    f, n = A.field, A.n

    def elements(X):
        return [tuple(tuple(X.vector(c)[r * n:(r + 1) * n]) for r in range(n)) for c in enumerate_vectors(f, X.dim)]

    def nonzero(m):
        return any(any(r) for r in m)

    As, Ss = elements(A.span), elements(S.span)
    for p in filter(nonzero, Ss):
        for q in Ss:
            if not any(nonzero(mat_mul(f, x, p)) and A.contains(mat_mul(f, x, q)) for x in As):
                return False
    return True


mats2 = st.tuples(*[st.integers(0, 1)] * 4).map(lambda t: ((t[0], t[1]), (t[2], t[3])))


@settings(max_examples=40)
@given(st.lists(mats2, min_size=1, max_size=2), st.lists(mats2, max_size=1))
def test_left_quotient_matches_double_scan(gens, extra):
    f = GF(2)
    A = operator_closure(f, 2, gens)
    S = operator_closure(f, 2, gens + extra)
    v = is_left_quotient_algebra(A, S, Mode.EXHAUSTIVE)
    assert v.is_true == brute_left_quotient(A, S)


def test_left_quotient_for_quotient_extension():
    S = self_extension(sl2(GF(5)))
    assert is_left_quotient_algebra(invariant_subalgebra_a0(S), inner_envelope(S, "Q"), Mode.EXHAUSTIVE).is_true


def test_density():
    S = self_extension(sl2(GF(5)))
    assert hom_annihilator_dense(S).dense.is_true
    X = self_extension(ex2_5(QQ))
    assert hom_annihilator_dense(X).dense.is_true
    f = GF(3)
    Z = make_extension(sl2(f), [])
    rep = hom_annihilator_dense(Z)
    assert rep.dense.is_false
    assert rep.l_ann.contains(flatten(identity(f, 3)))


def test_orbits():
    X = self_extension(ex2_5(QQ))
    e2 = Subspace.span(QQ, 4, [(0, 1, 0, 0)])
    assert operator_orbit(X, e2).span == e2
    assert operator_orbit(X, Subspace.zero(QQ, 4)).span.is_zero()
    f = GF(5)
    S = self_extension(sl2(f))
    full = Subspace.full(f, 3)
    orb = operator_orbit(S, full)
    assert orb.span == full and orb.is_ideal.is_true


def test_multiplicative_semiprimeness():
    assert is_multiplicatively_semiprime(sl2(QQ)).is_true
    assert is_multiplicatively_semiprime(abelian(GF(3), 2)).is_false
    assert is_multiplicatively_semiprime(ex2_5(QQ)).is_false


def test_operator_words_span_the_closure():
    # independent route: span of all words of length <= 4 in the generators
    f = GF(3)
    L = sl2(f)
    gens = [L.ad(e) for e in L.basis()]
    words = []
    for k in range(1, 5):
        for w in itertools.product(gens, repeat=k):
            m = w[0]
            for g in w[1:]:
                m = mat_mul(f, m, g)
            words.append(flatten(m))
    assert Subspace.span(f, 9, words) == associative_envelope(L).span
