import json

import pytest

from homquot.corpus import (
    EX25_SEED,
    STRATEGIES,
    GeneratorSpec,
    build_default_corpus,
    centroid,
    curated,
    ex2_5,
    generate,
    load_corpus,
    rejection_census,
    sl2,
    write_algebras,
    write_corpus,
)
from homquot.exalg import GF, QQ, Subspace, identity
from homquot.homlie import HomLieAlgebra, annihilator, bracket_span
from homquot.quotients import Extension

from conftest import CORPUS_DIR


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_generation_is_deterministic_and_valid(strategy):
    dim = 3
    spec = GeneratorSpec(strategy, GF(2), dim, seed=5, count=3)
    a = generate(spec)
    b = generate(spec)
    assert [x.dumps() for x in a] == [x.dumps() for x in b]
    assert all(x.check_axioms().hom_ok and x.dim == dim for x in a)


def test_spec_validation():
    with pytest.raises(ValueError):
        GeneratorSpec("rejection", GF(3), 2, 0, 1)
    with pytest.raises(ValueError):
        GeneratorSpec("nope", GF(2), 2, 0, 1)


def test_ex25_pattern_preset_reproduces_example():
    A = generate(GeneratorSpec("central-degenerate", GF(3), 4, EX25_SEED, 1, pattern="ex2_5"))[0]
    assert A == ex2_5(GF(3))


def test_identity_and_zero_twists():
    f = GF(5)
    A = generate(GeneratorSpec("identity-twist", f, 3, 1, 1, pattern="semisimple"))[0]
    # sl2 in a random basis: identity twist, perfect, centreless
    assert A.alpha == identity(f, 3)
    full = Subspace.full(f, 3)
    assert bracket_span(A, full, full) == full
    assert annihilator(A, full).is_zero()
    Z = sl2(QQ).with_alpha(((0, 0, 0),) * 3)
    assert Z.check_axioms().hom_ok


def test_centroid_of_sl2_is_scalars():
    C = centroid(sl2(GF(5)))
    assert C.dim == 1
    assert C.contains(tuple(GF(5)(1 if i % 4 == 0 else 0) for i in range(9)))


def test_census_counts_are_stable():
    c = rejection_census(3, seed=0, samples=300)
    assert c == rejection_census(3, seed=0, samples=300)
    assert 0 <= c["zero_annihilator"] <= c["hom_lie"] <= 300


def test_curated_expectations():
    for name, (obj, expected) in curated().items():
        L = obj.inner if isinstance(obj, Extension) else obj
        assert L.check_axioms().hom_ok, name
        if "annihilator_dim" in expected:
            assert annihilator(L, Subspace.full(L.field, L.dim)).dim == expected["annihilator_dim"], name


def test_shipped_corpus_matches_builder():
    rows = build_default_corpus()
    shipped = load_corpus(CORPUS_DIR)
    assert sorted(n for n, _, _ in rows) == [n for n, _, _ in shipped]
    built = {n: E.dumps() for n, E, _ in rows}
    for name, E, _ in shipped:
        assert E.dumps() == built[name], name


def test_write_and_load_roundtrip(tmp_path):
    rows = build_default_corpus()[:5]
    write_corpus(rows, tmp_path)
    back = load_corpus(tmp_path)
    assert {n: E.dumps() for n, E, _ in back} == {n: E.dumps() for n, E, _ in rows}


def test_write_algebras_updates_manifest(tmp_path):
    spec = GeneratorSpec("central-degenerate", GF(2), 4, 7, 50)
    names = write_algebras(spec, tmp_path)
    assert len(names) == 50 and len(set(names)) == 50
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert len(manifest["instances"]) == 50
    again = write_algebras(spec, tmp_path)
    assert again == names
    assert len(json.loads((tmp_path / "manifest.json").read_text())["instances"]) == 50
    A = HomLieAlgebra.from_json(json.loads((tmp_path / f"{names[0]}.alg.json").read_text()))
    assert A.check_axioms().hom_ok
