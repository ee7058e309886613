import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homquot.corpus import STRATEGIES, GeneratorSpec, abelian, ex2_5, generate, heisenberg, sl2
from homquot.errors import PreconditionFailed
from homquot.exalg import GF, QQ, Subspace
from homquot.homlie import direct_sum
from homquot.maxq import (
    PartialDerivation,
    build_maximal_quotients,
    check_overalgebra_criterion,
    check_preconditions,
    class_equal,
    inner_restricted,
    is_partial_derivation,
    pder_solve,
    pder_space,
    psi_matrix,
    verify_realization,
)
from homquot.props import ideal_lattice
from homquot.quotients import self_extension


def brute_pder_count(L, I):
    f, n, m = L.field, L.dim, I.dim
    count = 0
    for entries in itertools.product(range(f.p), repeat=n * m):
        M = tuple(tuple(entries[r * m:(r + 1) * m]) for r in range(n))
        if is_partial_derivation(L, PartialDerivation(I, M, 0)):
            count += 1
    return count


small = st.builds(lambda strategy, dim, seed: generate(GeneratorSpec(strategy, GF(2), dim, seed, 1))[0],
                  st.sampled_from(STRATEGIES[:4]), st.integers(1, 3), st.integers(0, 10_000))


@settings(max_examples=25)
@given(small)
def test_pder_solve_matches_enumeration(L):
    for I in ideal_lattice(L).ideals:
        if L.dim * I.dim > 9:
            continue
        assert 2 ** pder_space(L, I).dim == brute_pder_count(L, I)
        for d in pder_solve(L, I):
            assert is_partial_derivation(L, d)


def test_inner_maps_are_partial_derivations():
    L = sl2(GF(5))
    full = Subspace.full(GF(5), 3)
    assert pder_space(L, full).dim == 3  # every derivation of sl2 is inner
    for x in L.basis():
        assert is_partial_derivation(L, inner_restricted(L, x, full))


def test_class_equality():
    f = GF(5)
    L = sl2(f)
    full = Subspace.full(f, 3)
    d = inner_restricted(L, (1, 0, 0), full)
    assert class_equal(d, d, L).is_true
    other = inner_restricted(L, (0, 1, 0), full)
    assert class_equal(d, other, L).is_false


@pytest.mark.parametrize("field", [GF(5), GF(3), QQ])
def test_sl2_carrier(field):
    M = build_maximal_quotients(sl2(field))
    assert M.dim == 3 and M.phi_injective()
    assert M.carrier.check_axioms().hom_ok


def test_sum_of_two_sl2():
    f = GF(3)
    L = direct_sum(sl2(f), sl2(f))
    M = build_maximal_quotients(L)
    assert M.dim == 6
    E = self_extension(L)
    P = psi_matrix(E, M)
    assert P == M.phi
    assert all(v.is_true for v in check_overalgebra_criterion(E))
    rep = verify_realization(L)
    assert rep.ok and rep.classes == 3 ** 6


@pytest.mark.parametrize("L", [ex2_5(GF(3)), abelian(GF(2), 2), heisenberg(GF(3))])
def test_preconditions_refused(L):
    assert not check_preconditions(L).is_true
    with pytest.raises(PreconditionFailed):
        build_maximal_quotients(L)


def test_carrier_json_has_phi():
    M = build_maximal_quotients(sl2(GF(5)))
    obj = M.to_json()
    assert len(obj["phi"]) == 3 and obj["dim"] == 3
