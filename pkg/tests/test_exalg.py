import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homquot.errors import DimensionMismatch, EnumerationTooLarge, ParseError
from homquot.exalg import (
    GF,
    QQ,
    Field,
    Subspace,
    enumerate_projective,
    enumerate_vectors,
    format_matrix,
    identity,
    inverse,
    kernel,
    mat_mul,
    mat_vec,
    parse_matrix,
    projective_count,
    rank,
    rref,
    solve,
)

SMALL = [GF(2), GF(3), GF(5)]


def scalars(f):
    if f.is_finite:
        return st.integers(0, f.p - 1)
    return st.fractions(min_value=-20, max_value=20, max_denominator=7)


def matrices(f, max_rows=4, max_cols=4):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(scalars(f), min_size=n, max_size=n).map(tuple), min_size=0, max_size=max_rows)
        .map(lambda rows: (tuple(tuple(f(x) for x in r) for r in rows), n)))


# fields -------------------------------------------------------------------------


def test_field_validation():
    with pytest.raises(ValueError):
        Field(4)
    assert str(GF(7)) == "GF(7)" and str(QQ) == "Q"


def test_scalar_parsing():
    assert GF(5)("3/2") == 4  # 3 * 2^{-1} = 3 * 3
    assert QQ("-3/6") == Fraction(-1, 2)
    with pytest.raises(ParseError):
        GF(5)("1/5")
    with pytest.raises(ParseError):
        QQ("1.5")
    with pytest.raises(ParseError):
        QQ(0.5)


@pytest.mark.parametrize("f", SMALL + [QQ])
def test_format_parse_roundtrip(f):
    m = ((f(1), f(2)), (f(3), f(0)))
    assert parse_matrix(f, format_matrix(f, m)) == m


def test_field_json_rejects_garbage():
    with pytest.raises(ParseError):
        Field.from_json({"kind": "prime", "p": 6})
    with pytest.raises(ParseError):
        Field.from_json({"kind": "complex"})


# enumeration --------------------------------------------------------------------


@pytest.mark.parametrize("p,dim", [(2, 3), (3, 2), (5, 2), (2, 0)])
def test_projective_points(p, dim):
    f = GF(p)
    pts = list(enumerate_projective(f, dim))
    assert len(pts) == projective_count(p, dim)
    # each nonzero vector is a scalar multiple of exactly one point
    reps = set()
    for v in enumerate_vectors(f, dim):
        if not any(v):
            continue
        lead = next(x for x in v if x)
        reps.add(tuple(x * pow(lead, -1, p) % p for x in v))
    assert reps == set(pts)


def test_enumeration_caps():
    with pytest.raises(EnumerationTooLarge):
        list(enumerate_projective(GF(3), 12, cap=100))
    with pytest.raises(EnumerationTooLarge):
        list(enumerate_vectors(QQ, 2))


# linear algebra -------------------------------------------------------------------


@pytest.mark.parametrize("f", SMALL + [QQ])
def test_rank_nullity_and_rref(f):
    @given(matrices(f))
    def prop(mn):
        m, n = mn
        K = kernel(f, m, n)
        assert rank(f, m, n) + K.dim == n
        for v in K.basis:
            assert all(f.norm(sum(r[j] * v[j] for j in range(n))) == 0 for r in m)
        R = rref(f, m, n)
        assert rref(f, R, n) == R
        assert rank(f, R, n) == rank(f, m, n)

    prop()


@pytest.mark.parametrize("f", [GF(3), QQ])
def test_subspace_lattice_laws(f):
    vecs = st.lists(st.lists(scalars(f), min_size=3, max_size=3).map(lambda v: tuple(f(x) for x in v)), max_size=3)

    @given(vecs, vecs, vecs)
    def prop(a, b, c):
        U, V, W = (Subspace.span(f, 3, x) for x in (a, b, c))
        assert (U + V).dim + (U & V).dim == U.dim + V.dim
        assert U & V == V & U and U + V == V + U
        assert U <= U + V and U & V <= U
        W = W + U  # modular law needs U <= W
        assert (U + V) & W == U + (V & W)
        for v in U.basis:
            assert U.contains(v)
            assert U.vector(U.coordinates(v)) == v

    prop()


def test_subspace_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Subspace.span(GF(2), 3, [(1, 0)])


@pytest.mark.parametrize("f", [GF(5), QQ])
def test_inverse_and_solve(f):
    m = tuple(tuple(f(x) for x in row) for row in ((2, 1, 0), (0, 1, 1), (1, 0, 1)))
    inv = inverse(f, m)
    assert mat_mul(f, m, inv) == identity(f, 3)
    b = tuple(f(x) for x in (1, 2, 3))
    x = solve(f, m, b, 3)
    assert mat_vec(f, m, x) == b


def test_first_nonzero_is_least_projective_point():
    f = GF(3)
    for gens in itertools.combinations(list(enumerate_projective(f, 3)), 2):
        S = Subspace.span(f, 3, gens)
        pts = [p for p in enumerate_projective(f, 3) if S.contains(p)]
        assert S.first_nonzero() == pts[0]
