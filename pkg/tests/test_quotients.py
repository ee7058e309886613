import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homquot.corpus import STRATEGIES, GeneratorSpec, abelian, curated, ex2_5, extensions_of, generate, sl2
from homquot.errors import NotASubalgebra
from homquot.exalg import GF, QQ, Subspace
from homquot.homlie import annihilator, direct_sum, is_hom_ideal
from homquot.quotients import (
    Extension,
    denominator_ideal,
    is_ideally_absorbed,
    is_quotient_algebra,
    is_weak_quotient_algebra,
    lq_span,
    make_extension,
    quotient_bruteforce,
    quotient_derived,
    self_extension,
    uniform_denominator,
)
from homquot.verdict import Mode

E_, F_, H_ = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def borel():
    return curated()["borel_in_sl2"][0]


def test_make_extension_validates():
    f = GF(5)
    assert make_extension(sl2(f), [E_, H_]).sub.dim == 2
    with pytest.raises(NotASubalgebra):
        make_extension(sl2(f), [E_, F_])
    with pytest.raises(NotASubalgebra):
        make_extension(sl2(f), [E_, E_])


def test_lq_and_colon_on_borel():
    E = borel()
    f = GF(5)
    assert lq_span(E, F_) == Subspace.full(f, 3)
    assert lq_span(E, E_) <= E.sub
    assert denominator_ideal(E, F_).colon_ambient == Subspace.span(f, 3, [E_])
    assert denominator_ideal(E, H_).colon_ambient == E.sub
    assert E.lift(uniform_denominator(E)) == Subspace.span(f, 3, [E_])
    A = self_extension(abelian(GF(3), 2))
    q = (1, 2)
    assert lq_span(A, q) == Subspace.span(GF(3), 2, [q])
    assert uniform_denominator(A) == Subspace.full(GF(3), 2)


def test_borel_verdicts():
    E = borel()
    assert is_weak_quotient_algebra(E, Mode.EXHAUSTIVE).is_true
    assert is_quotient_algebra(E, Mode.EXHAUSTIVE).is_false
    assert is_ideally_absorbed(E, Mode.EXHAUSTIVE).is_false


def test_self_extensions():
    S = self_extension(sl2(GF(5)))
    for pred in (is_weak_quotient_algebra, is_quotient_algebra, is_ideally_absorbed):
        assert pred(S, Mode.EXHAUSTIVE).is_true
    X = self_extension(ex2_5(GF(5)))
    v = is_quotient_algebra(X, Mode.EXHAUSTIVE)
    assert v.is_false
    assert is_ideally_absorbed(self_extension(abelian(GF(3), 2)), Mode.EXHAUSTIVE).is_false


def test_nonzero_ambient_annihilator_blocks_quotients():
    # L = sl2 inside sl2 + abelian line: the extra line is killed by everything
    f = GF(3)
    Q = direct_sum(sl2(f), abelian(f, 1))
    E = make_extension(Q, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    v = is_quotient_algebra(E, Mode.EXHAUSTIVE)
    assert v.is_false and v.witness["p"] == (0, 0, 0, 1)


def test_derived_route_over_rationals():
    S = self_extension(sl2(QQ))
    v = is_quotient_algebra(S, Mode.AUTO)
    assert v.is_true and v.method.value == "derived"
    assert is_ideally_absorbed(S, Mode.DERIVED).is_true


@pytest.mark.parametrize("name", ["borel_in_sl2", "sl2_gf5", "abelian_3", "ex2_5_gf5", "heisenberg_alpha0"])
def test_colon_is_always_an_ideal(name):
    obj = curated()[name][0]
    E = obj if isinstance(obj, Extension) else self_extension(obj)
    for q in E.ambient.basis():
        assert is_hom_ideal(E.inner, denominator_ideal(E, q).colon).is_true


extensions = st.builds(
    lambda strategy, p, dim, seed: extensions_of(generate(GeneratorSpec(strategy, GF(p), dim, seed, 1))[0],
                                                 random.Random(seed), proper=2),
    st.sampled_from(STRATEGIES[:4]), st.sampled_from([2, 3]), st.integers(2, 3), st.integers(0, 10_000))


@settings(max_examples=40)
@given(extensions)
def test_exhaustive_matches_double_scan(exts):
    for E in exts:
        fast = is_quotient_algebra(E, Mode.EXHAUSTIVE)
        slow = quotient_bruteforce(E)
        assert fast.value == slow.value
        if fast.is_false:
            assert fast.witness["p"] == slow.witness["p"] and fast.witness["q"] == slow.witness["q"]
        assert is_ideally_absorbed(E, Mode.EXHAUSTIVE).value == fast.value
        d = quotient_derived(E)
        if not d.is_unknown:
            assert d.value == fast.value
        if fast.is_true:
            assert is_weak_quotient_algebra(E, Mode.EXHAUSTIVE).is_true
            assert annihilator(E.inner, Subspace.full(E.field, E.sub.dim)).is_zero()


def test_extension_json_roundtrip():
    E = borel()
    back = Extension.from_json(E.to_json())
    assert back.dumps() == E.dumps()
    assert back.sub == E.sub
