import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homquot.corpus import abelian, ex2_5, heisenberg, sl2
from homquot.errors import NotVerified, ParseError
from homquot.exalg import GF, QQ, Subspace
from homquot.homlie import (
    HomLieAlgebra,
    annihilator,
    classical_jacobi_defect,
    direct_sum,
    hom_jacobi_defect,
    ideal_generated,
    induced_on,
    is_hom_ideal,
    is_hom_subalgebra,
    subalgebra_generated,
)

Q = QQ
E, F, H = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def vec(f, *xs):
    return tuple(f(x) for x in xs)


def test_example_brackets_and_twist():
    L = ex2_5(Q)
    e = [vec(Q, *(1 if i == k else 0 for i in range(4))) for k in range(4)]
    assert L.bracket(e[1], e[2]) == e[1]
    assert L.bracket(e[1], e[3]) == e[1]
    assert L.bracket(e[2], e[3]) == e[2]
    assert L.twist(e[3]) == e[0]
    assert L.twist(e[1]) == L.zero() and L.twist(e[2]) == L.zero()
    assert L.ad(e[1]) == tuple((Q(0),) * 4 for _ in range(4))


def test_sl2_table():
    L = sl2(Q)
    assert L.bracket(H, E) == vec(Q, 2, 0, 0)
    assert L.bracket(E, F) == H
    assert L.bracket(E, E) == L.zero()
    assert L.ad(H) == tuple(tuple(Q(x) for x in r) for r in ((2, 0, 0), (0, -2, 0), (0, 0, 0)))
    assert L.twist((Q(3), Q(1), Q(2))) == (3, 1, 2)


def test_axiom_report_on_example():
    rep = ex2_5(Q).check_axioms()
    assert rep.hom_ok
    assert rep.classical_jacobi.is_false
    x, y, z = rep.classical_jacobi.witness["triple"]
    L = ex2_5(Q)
    b = L.basis()
    assert classical_jacobi_defect(L, b[x], b[y], b[z]) == vec(Q, 0, -1, 0, 0)
    assert not any(hom_jacobi_defect(L, b[x], b[y], b[z]))


def test_unverified_algebra_is_refused():
    # a twist that breaks multiplicativity on sl2
    bad = sl2(Q).with_alpha(((1, 0, 0), (0, 0, 0), (0, 0, 0)))
    assert not bad.check_axioms().hom_ok
    with pytest.raises(NotVerified):
        bad.require_verified()


def test_subalgebra_and_ideal_predicates():
    L = sl2(GF(5))
    f = GF(5)
    assert is_hom_subalgebra(L, Subspace.full(f, 3)).is_true
    assert is_hom_subalgebra(L, Subspace.zero(f, 3)).is_true
    assert is_hom_subalgebra(L, Subspace.span(f, 3, [E])).is_true
    v = is_hom_subalgebra(L, Subspace.span(f, 3, [E, F]))
    assert v.is_false and v.witness["bracket"] == H
    assert is_hom_ideal(L, Subspace.full(f, 3)).is_true
    assert is_hom_ideal(L, Subspace.span(f, 3, [E])).is_false
    X = ex2_5(Q)
    assert is_hom_ideal(X, Subspace.span(Q, 4, [(1, 0, 0, 0)])).is_true


def test_generated_closures():
    f = GF(5)
    L = sl2(f)
    assert ideal_generated(L, []).is_zero()
    assert ideal_generated(L, [E]) == Subspace.full(f, 3)
    X = ex2_5(Q)
    e2 = vec(Q, 0, 1, 0, 0)
    assert ideal_generated(X, [e2]) == Subspace.span(Q, 4, [e2])
    borel = subalgebra_generated(L, [E, H])
    assert borel.dim == 2


def test_annihilator_examples():
    X = ex2_5(Q)
    assert annihilator(X, Subspace.full(Q, 4)) == Subspace.full(Q, 4)
    assert annihilator(sl2(Q), Subspace.full(Q, 3)).is_zero()
    A = abelian(GF(3), 2)
    assert annihilator(A, Subspace.full(GF(3), 2)).dim == 2


def test_direct_sum_and_restriction():
    f = GF(5)
    S = direct_sum(sl2(f), sl2(f))
    assert S.dim == 6 and S.check_axioms().hom_ok
    assert direct_sum(abelian(f, 1), abelian(f, 2)).structure == abelian(f, 3).structure
    B, emb = induced_on(sl2(Q), Subspace.span(Q, 3, [E, H]))
    assert B.dim == 2
    # in the RREF basis (e, h) the bracket [h, e] is 2e
    assert B.bracket((Q(0), Q(1)), (Q(1), Q(0))) == (2, 0)


def test_json_roundtrip_and_errors():
    for L in (ex2_5(Q), sl2(GF(5)), heisenberg(GF(3)).with_alpha(((0,) * 3,) * 3)):
        text = L.dumps()
        back = HomLieAlgebra.from_json(json.loads(text))
        assert back == L and back.dumps() == text
    good = sl2(Q).to_json()
    broken = dict(good, bracket=[{"i": 1, "j": 0, "value": ["0", "0", "1"]}])
    with pytest.raises(ParseError):
        HomLieAlgebra.from_json(broken)
    with pytest.raises(ParseError):
        HomLieAlgebra.from_json(dict(good, alpha=[["1", "x", "0"], ["0", "1", "0"], ["0", "0", "1"]]))
    with pytest.raises(ParseError):
        HomLieAlgebra.from_json([1, 2])


coords = st.tuples(*[st.integers(0, 4)] * 3)


@given(coords, coords, coords)
def test_bracket_is_bilinear_and_alternating(x, y, z):
    f = GF(5)
    L = sl2(f)
    x, y, z = (tuple(f(c) for c in v) for v in (x, y, z))
    assert L.bracket(x, x) == L.zero()
    assert L.bracket(x, y) == tuple(f.norm(-c) for c in L.bracket(y, x))
    s = tuple(f.norm(a + b) for a, b in zip(y, z))
    lhs = L.bracket(x, s)
    rhs = tuple(f.norm(a + b) for a, b in zip(L.bracket(x, y), L.bracket(x, z)))
    assert lhs == rhs
    assert not any(hom_jacobi_defect(L, x, y, z))
