import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homquot.corpus import STRATEGIES, GeneratorSpec, abelian, ex2_5, generate, sl2
from homquot.errors import PreconditionFailed, UnsupportedMode
from homquot.exalg import GF, QQ, Subspace, enumerate_projective
from homquot.homlie import annihilator, bracket_span, direct_sum, is_hom_ideal
from homquot.props import (
    ideal_lattice,
    ideal_power,
    is_essential,
    is_nondegenerate,
    is_prime,
    is_semiprime,
    minimum_essential_ideal,
)
from homquot.verdict import Mode


def all_subspaces(f, n):
    pts = list(enumerate_projective(f, n))
    out = {Subspace.zero(f, n)}
    for k in range(1, n + 1):
        for gens in itertools.combinations(pts, k):
            out.add(Subspace.span(f, n, gens))
    return out


def oracle(L):
    """Ideal lattice and the three predicates by brute force over all subspaces."""
    f, n = L.field, L.dim
    ideals = [S for S in all_subspaces(f, n) if is_hom_ideal(L, S).is_true]
    nonzero = [I for I in ideals if not I.is_zero()]
    semiprime = all(not bracket_span(L, I, I.image(L.alpha)).is_zero() for I in nonzero)
    prime = all(not bracket_span(L, I, J.image(L.alpha)).is_zero() for I in nonzero for J in nonzero)
    essential = {I for I in ideals if all(not (I & J).is_zero() for J in nonzero)}
    nondeg = True
    for x in enumerate_projective(f, n):
        m = L.ad(x)
        sq = [[f.norm(sum(m[i][k] * m[k][j] for k in range(n))) for j in range(n)] for i in range(n)]
        if not any(any(r) for r in sq):
            nondeg = False
    return set(ideals), essential, semiprime, prime, nondeg


small_algebras = st.builds(
    lambda strategy, p, dim, seed: generate(GeneratorSpec(strategy, GF(p), dim, seed, 1))[0],
    st.sampled_from(STRATEGIES[:4]), st.sampled_from([2, 3]), st.integers(1, 3), st.integers(0, 10_000))


@settings(max_examples=40)
@given(small_algebras)
def test_predicates_match_subspace_oracle(L):
    ideals, essential, semiprime, prime, nondeg = oracle(L)
    lat = ideal_lattice(L)
    assert set(lat.ideals) == ideals
    assert set(lat.essential()) == essential
    assert is_semiprime(L, Mode.EXHAUSTIVE).is_true == semiprime
    assert is_prime(L, Mode.EXHAUSTIVE).is_true == prime
    assert is_nondegenerate(L, Mode.EXHAUSTIVE).is_true == nondeg
    # nondegenerate implies semiprime implies zero annihilator
    if nondeg:
        assert semiprime
    if semiprime and L.dim:
        assert annihilator(L, Subspace.full(L.field, L.dim)).is_zero()
    if essential:
        m = minimum_essential_ideal(L)
        assert m in essential and all(m <= I for I in essential)


def test_abelian_lattice():
    f = GF(2)
    lat = ideal_lattice(abelian(f, 2))
    assert len(lat) == 5
    # every nonzero ideal of an abelian algebra is essential only when it is L
    assert lat.essential() == [Subspace.full(f, 2)]
    assert minimum_essential_ideal(abelian(f, 2)) == Subspace.full(f, 2)


def test_sl2_over_gf5():
    f = GF(5)
    L = sl2(f)
    assert list(ideal_lattice(L).ideals) == [Subspace.zero(f, 3), Subspace.full(f, 3)]
    for pred in (is_nondegenerate, is_semiprime, is_prime):
        assert pred(L, Mode.EXHAUSTIVE).is_true
    assert minimum_essential_ideal(L) == Subspace.full(f, 3)


def test_zero_algebra():
    f = GF(3)
    Z = abelian(f, 0)
    assert list(ideal_lattice(Z).ideals) == [Subspace.zero(f, 0)]
    assert is_prime(Z, Mode.EXHAUSTIVE).is_true


def test_degenerate_witnesses():
    A = abelian(GF(3), 2)
    v = is_nondegenerate(A, Mode.EXHAUSTIVE)
    assert v.is_false and v.witness["element"] == (0, 1)
    assert is_semiprime(A, Mode.EXHAUSTIVE).is_false
    X = ex2_5(GF(5))
    v = is_semiprime(X, Mode.EXHAUSTIVE)
    assert v.is_false
    P = v.witness["ideal"]
    assert bracket_span(X, P, P.image(X.alpha)).is_zero()


def test_sl2_sum_is_semiprime_not_prime():
    f = GF(5)
    S = direct_sum(sl2(f), sl2(f))
    assert is_semiprime(S, Mode.EXHAUSTIVE).is_true
    v = is_prime(S, Mode.EXHAUSTIVE)
    assert v.is_false
    P, R = v.witness["pair"]
    assert bracket_span(S, P, R.image(S.alpha)).is_zero()


def test_rationals_use_derived_route():
    assert is_semiprime(sl2(QQ), Mode.DERIVED).is_true
    assert is_semiprime(ex2_5(QQ), Mode.AUTO).is_false
    with pytest.raises(UnsupportedMode):
        is_semiprime(sl2(QQ), Mode.EXHAUSTIVE)
    with pytest.raises(UnsupportedMode):
        ideal_lattice(sl2(QQ))


def test_essential_and_powers():
    f = GF(5)
    L = sl2(f)
    full = Subspace.full(f, 3)
    assert is_essential(L, full).is_true
    assert is_essential(L, Subspace.zero(f, 3)).is_false
    assert ideal_power(L, full, 2) == full
    A = abelian(f, 2)
    assert ideal_power(A, Subspace.full(f, 2), 2).is_zero()
    X = ex2_5(QQ)
    I = Subspace.span(QQ, 4, [(0, 1, 0, 0), (0, 0, 1, 0)])
    assert ideal_power(X, I, 2).is_zero()
    with pytest.raises(PreconditionFailed):
        ideal_power(L, Subspace.span(f, 3, [(1, 0, 0)]), 2)


def test_essential_witness_on_example():
    f = GF(3)
    X = ex2_5(f)
    v = is_essential(X, Subspace.span(f, 4, [(0, 1, 0, 0)]))
    assert v.is_false
    # e1 spans a central ideal that misses span{e2}
    assert v.witness["missed_ideal"] == Subspace.span(f, 4, [(1, 0, 0, 0)])

