"""Deterministic generation of Hom-Lie algebras and extensions.

Construction strategies produce algebras that satisfy the Hom axioms by design:

* a Lie algebra with ``alpha = id`` or ``alpha = lam * id`` (the twisted Jacobi
  identity is ``lam`` times the ordinary one, and multiplicativity is trivial);
* a Lie algebra with ``alpha`` in its centroid (``alpha [x, y] = [alpha x, y]``
  turns every twisted Jacobi sum into ``alpha`` of an ordinary one);
* an arbitrary alternating bracket with ``alpha`` killing ``[L, L]`` and mapping
  into the centre, so every term of every identity vanishes.

Rejection sampling of raw structure constants is kept for dimension at most 3
over GF(2), where the whole space is small.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path

from .errors import HomQuotError, ParseError
from .exalg import (
    QQ,
    Field,
    GF,
    Subspace,
    identity,
    inverse,
    kernel,
    mat_mul,
    mat_vec,
    rank,
    zero_matrix,
)
from .homlie import HomLieAlgebra, annihilator, center, direct_sum, subalgebra_generated
from .quotients import Extension, make_extension, self_extension

STRATEGIES = ("identity-twist", "scalar-twist", "centroid-twist", "central-degenerate", "rejection")


class BudgetExhausted(HomQuotError):
    """Rejection sampling ran out of attempts."""


@dataclass(frozen=True)
class GeneratorSpec:
    strategy: str
    field: Field
    dim: int
    seed: int
    count: int
    pattern: str | None = None

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.strategy == "rejection" and (self.field != GF(2) or self.dim > 3):
            raise ValueError("rejection sampling is limited to GF(2) and dimension <= 3")
        if self.dim < 0 or self.count < 0:
            raise ValueError("dimension and count must be nonnegative")

    def slug(self) -> str:
        fld = f"gf{self.field.p}" if self.field.p else "q"
        return f"{self.strategy}_{fld}_d{self.dim}_s{self.seed}"

    def to_json(self) -> dict:
        d = asdict(self)
        d["field"] = self.field.to_json()
        return d


# Lie building blocks ------------------------------------------------------------


def lie(field: Field, n: int, entries, alpha=None) -> HomLieAlgebra:
    return HomLieAlgebra.from_structure(field, n, entries, alpha if alpha is not None else identity(field, n))


def abelian(field, n):
    return lie(field, n, {})


def r2(field):
    return lie(field, 2, {(0, 1): (0, 1)})


def heisenberg(field):
    return lie(field, 3, {(0, 1): (0, 0, 1)})


def sl2(field):
    """Basis ``(e, f, h)``: ``[e, f] = h``, ``[h, e] = 2e``, ``[h, f] = -2f``."""
    return lie(field, 3, {(0, 1): (0, 0, 1), (2, 0): (2, 0, 0), (2, 1): (0, -2, 0)})


def r3(field, lam):
    return lie(field, 3, {(0, 1): (0, 1, 0), (0, 2): (0, 0, lam)})


def r3_jordan(field):
    return lie(field, 3, {(0, 1): (0, 1, 0), (0, 2): (0, 1, 1)})


def filiform4(field):
    return lie(field, 4, {(0, 1): (0, 0, 1, 0), (0, 2): (0, 0, 0, 1)})


def from_matrices(field, mats) -> HomLieAlgebra:
    """Lie algebra spanned by matrices (assumed closed under commutators)."""
    n = len(mats[0]) if mats else 0
    flat = [tuple(x for r in m for x in r) for m in mats]
    S = Subspace.span(field, n * n, flat)
    basis = S.basis
    mm = [tuple(tuple(b[r * n:(r + 1) * n]) for r in range(n)) for b in basis]
    d = len(mm)
    entries = {}
    for i in range(d):
        for j in range(i + 1, d):
            c = tuple(a - b for a, b in zip(
                (x for r in mat_mul(field, mm[i], mm[j]) for x in r),
                (x for r in mat_mul(field, mm[j], mm[i]) for x in r)))
            entries[(i, j)] = S.coordinates(tuple(field.norm(v) for v in c))
    return lie(field, d, entries)


def commutator_closure(field, mats):
    n = len(mats[0])
    flat = lambda m: tuple(x for r in m for x in r)
    S = Subspace.span(field, n * n, [flat(m) for m in mats])
    while True:
        cur = [tuple(tuple(b[r * n:(r + 1) * n]) for r in range(n)) for b in S.basis]
        new = []
        for a in cur:
            for b in cur:
                ab, ba = mat_mul(field, a, b), mat_mul(field, b, a)
                new.append(tuple(field.norm(x - y) for x, y in zip(flat(ab), flat(ba))))
        T = S.add_vectors(new)
        if T.dim == S.dim:
            break
        S = T
    return [tuple(tuple(b[r * n:(r + 1) * n]) for r in range(n)) for b in S.basis]


def transport(L: HomLieAlgebra, P) -> HomLieAlgebra:
    """The same algebra in the basis given by the columns of ``P``."""
    f = L.field
    n = L.dim
    Pi = inverse(f, P)
    cols = [tuple(P[r][j] for r in range(n)) for j in range(n)]
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            entries[(i, j)] = mat_vec(f, Pi, L.bracket(cols[i], cols[j]))
    alpha = mat_mul(f, Pi, mat_mul(f, L.alpha, P))
    return HomLieAlgebra.from_structure(f, n, entries, alpha)


def _scalar(rng: random.Random, field: Field):
    return field(rng.randrange(field.p)) if field.p else field(rng.randint(-3, 3))


def _random_invertible(rng, field, n):
    while True:
        P = tuple(tuple(_scalar(rng, field) for _ in range(n)) for _ in range(n))
        if rank(field, P, n) == n:
            return P


def _catalog(field: Field, n: int, rng: random.Random) -> HomLieAlgebra:
    if n <= 1:
        return abelian(field, n)
    if n == 2:
        return rng.choice([abelian(field, 2), r2(field)])
    one = abelian(field, 1)
    if n == 3:
        opts = [abelian(field, 3), direct_sum(r2(field), one), heisenberg(field), sl2(field),
                r3(field, _scalar(rng, field)), r3_jordan(field)]
        return rng.choice(opts)
    if n == 4:
        opts = [abelian(field, 4), direct_sum(r2(field), r2(field)), direct_sum(sl2(field), one),
                direct_sum(heisenberg(field), one), direct_sum(r3(field, _scalar(rng, field)), one),
                filiform4(field), direct_sum(r2(field), abelian(field, 2)), _matrix_lie(field, rng, 4)]
        return rng.choice(opts)
    # larger dimensions: direct sums of small blocks
    k = rng.choice([2, 3])
    return direct_sum(_catalog(field, k, rng), _catalog(field, n - k, rng))


def _matrix_lie(field, rng, want):
    """Lie subalgebra of gl2 generated by random matrices, padded by an abelian summand."""
    for _ in range(50):
        mats = [tuple(tuple(_scalar(rng, field) for _ in range(2)) for _ in range(2)) for _ in range(2)]
        basis = commutator_closure(field, mats)
        if 0 < len(basis) <= want:
            L = from_matrices(field, basis)
            if L.dim < want:
                L = direct_sum(L, abelian(field, want - L.dim))
            return L
    return abelian(field, want)


def random_lie(field: Field, n: int, rng: random.Random, pattern: str | None = None) -> HomLieAlgebra:
    """A catalog Lie algebra in a random basis; ``pattern="semisimple"`` picks sl2 or sl2 + sl2."""
    if pattern == "semisimple":
        if n not in (3, 6):
            raise ValueError("the semisimple pattern has dimension 3 or 6")
        L = sl2(field) if n == 3 else direct_sum(sl2(field), sl2(field))
    else:
        L = _catalog(field, n, rng)
    return transport(L, _random_invertible(rng, field, n))


def centroid(L: HomLieAlgebra) -> Subspace:
    """Maps ``g`` with ``g [x, y] = [g x, y]``, as flattened row-major matrices."""
    f = L.field
    n = L.dim
    rows = []
    for i in range(n):
        for j in range(n):
            c = L.structure[i][j]
            # coefficient of g[r][k] in (g c - [g e_i, e_j])_r
            for r in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    if c[k]:
                        row[r * n + k] += c[k]
                for k in range(n):
                    # [g e_i, e_j] = sum_k g[k][i] [e_k, e_j]
                    v = L.structure[k][j][r]
                    if v:
                        row[k * n + i] -= v
                rows.append(tuple(f.norm(x) if f.p else f(x) for x in row))
    return kernel(f, rows, n * n)


def _central_degenerate_alpha(L: HomLieAlgebra, rng) -> tuple:
    f = L.field
    n = L.dim
    D = Subspace.span(f, n, [L.structure[i][j] for i in range(n) for j in range(i + 1, n)])
    Z = center(L)
    funcs = D.constraints()
    alpha = [[0] * n for _ in range(n)]
    for z in Z.basis:
        for w in funcs:
            c = _scalar(rng, f)
            for r in range(n):
                for s in range(n):
                    alpha[r][s] += c * z[r] * w[s]
    return tuple(tuple(f.norm(x) if f.p else f(x) for x in row) for row in alpha)


EX25_PATTERN = {(1, 2): (0, 1, 0, 0), (1, 3): (0, 1, 0, 0), (2, 3): (0, 0, 1, 0)}


def _random_alternating(field, n, rng, density=0.5):
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                entries[(i, j)] = tuple(_scalar(rng, field) for _ in range(n))
    return entries


def generate(spec: GeneratorSpec) -> list:
    """``spec.count`` verified algebras; a pure function of the spec."""
    rng = random.Random(f"{spec.strategy}|{spec.field.p}|{spec.dim}|{spec.seed}|{spec.pattern}")
    f, n = spec.field, spec.dim
    out = []
    stats = {"attempts": 0}
    while len(out) < spec.count:
        if spec.strategy == "identity-twist":
            A = random_lie(f, n, rng, spec.pattern)
        elif spec.strategy == "scalar-twist":
            L = random_lie(f, n, rng, spec.pattern)
            lam = _scalar(rng, f)
            A = L.with_alpha(tuple(tuple(lam if i == j else f(0) for j in range(n)) for i in range(n)))
        elif spec.strategy == "centroid-twist":
            L = random_lie(f, n, rng, spec.pattern)
            C = centroid(L)
            coeffs = [_scalar(rng, f) for _ in range(C.dim)]
            g = C.vector(coeffs) if C.dim else (f(0),) * (n * n)
            A = L.with_alpha(tuple(tuple(g[r * n:(r + 1) * n]) for r in range(n)))
        elif spec.strategy == "central-degenerate":
            if spec.pattern == "ex2_5":
                if n != 4:
                    raise ValueError("the ex2_5 pattern is four-dimensional")
                base = HomLieAlgebra.from_structure(f, 4, EX25_PATTERN, zero_matrix(f, 4, 4))
            else:
                base = HomLieAlgebra.from_structure(f, n, _random_alternating(f, n, rng), zero_matrix(f, n, n))
            A = base.with_alpha(_central_degenerate_alpha(base, rng))
        else:
            A = _rejection_sample(f, n, rng, stats)
        if not A.check_axioms().hom_ok:
            raise AssertionError(f"{spec.strategy} produced an algebra failing the Hom axioms")
        out.append(A)
    return out


def _rejection_sample(f, n, rng, stats, budget=200_000):
    for _ in range(budget):
        stats["attempts"] += 1
        entries = {(i, j): tuple(rng.randrange(2) for _ in range(n)) for i in range(n) for j in range(i + 1, n)}
        alpha = tuple(tuple(rng.randrange(2) for _ in range(n)) for _ in range(n))
        A = HomLieAlgebra.from_structure(f, n, entries, alpha)
        if A.check_axioms().hom_ok:
            return A
    raise BudgetExhausted(f"no Hom-Lie algebra found in {budget} attempts")


def rejection_census(n: int = 3, seed: int = 0, samples: int = 4096) -> dict:
    """Share of uniformly random GF(2) tables that satisfy the Hom axioms."""
    rng = random.Random(f"census|{n}|{seed}")
    f = GF(2)
    hits = nondeg = 0
    for _ in range(samples):
        entries = {(i, j): tuple(rng.randrange(2) for _ in range(n)) for i in range(n) for j in range(i + 1, n)}
        alpha = tuple(tuple(rng.randrange(2) for _ in range(n)) for _ in range(n))
        A = HomLieAlgebra.from_structure(f, n, entries, alpha)
        if A.check_axioms().hom_ok:
            hits += 1
            if annihilator(A, Subspace.full(f, n)).is_zero():
                nondeg += 1
    return {"dim": n, "samples": samples, "hom_lie": hits, "zero_annihilator": nondeg}


# extensions ----------------------------------------------------------------------------


def extensions_of(Q: HomLieAlgebra, rng: random.Random, proper: int = 1) -> list:
    """``Q`` over itself plus up to ``proper`` distinct proper Hom-subalgebras."""
    out = [self_extension(Q)]
    seen = {Subspace.full(Q.field, Q.dim)}
    f = Q.field
    for _ in range(8 * proper):
        if len(out) > proper:
            break
        k = rng.choice([1, 1, 2])
        vecs = [tuple(_scalar(rng, f) for _ in range(Q.dim)) for _ in range(k)]
        S = subalgebra_generated(Q, vecs)
        if S in seen or S.is_zero() or S.is_full():
            continue
        seen.add(S)
        out.append(make_extension(Q, S.basis))
    return out


# curated instances ---------------------------------------------------------------------


def ex2_5(field: Field = QQ, a=1, b=1) -> HomLieAlgebra:
    alpha = ((a, 0, 0, b), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0))
    return HomLieAlgebra.from_structure(field, 4, EX25_PATTERN, alpha)


def curated() -> dict:
    """Named instances with expected verdicts; each value is ``(object, expected)``."""
    Q, G5, G3 = QQ, GF(5), GF(3)
    sl2_5 = sl2(G5)
    items = {
        "ex2_5": (ex2_5(Q), {"hom_axioms": True, "classical_jacobi": False, "annihilator_dim": 4,
                             "nondegenerate": False, "semiprime": False, "prime": False}),
        "ex2_5_gf5": (ex2_5(G5), {"hom_axioms": True, "classical_jacobi": False, "annihilator_dim": 4,
                                  "nondegenerate": False, "semiprime": False, "prime": False}),
        "abelian_3": (abelian(G3, 3), {"hom_axioms": True, "annihilator_dim": 3, "nondegenerate": False,
                                       "semiprime": False, "prime": False}),
        "sl2_Q": (sl2(Q), {"hom_axioms": True, "annihilator_dim": 0, "semiprime": True,
                           "multiplicatively_semiprime": True, "maxq_dim": 3}),
        "sl2_gf5": (sl2_5, {"hom_axioms": True, "annihilator_dim": 0, "nondegenerate": True,
                            "semiprime": True, "prime": True, "maxq_dim": 3, "quotient": True}),
        "sl2sl2_gf5": (direct_sum(sl2_5, sl2_5), {"hom_axioms": True, "annihilator_dim": 0, "semiprime": True,
                                                  "prime": False, "maxq_dim": 6}),
        "heisenberg_alpha0": (heisenberg(G3).with_alpha(zero_matrix(G3, 3, 3)),
                              {"hom_axioms": True, "annihilator_dim": 3, "semiprime": False, "prime": False}),
        "borel_in_sl2": (make_extension(sl2_5, [(1, 0, 0), (0, 0, 1)]),
                         {"colon_f": [["1", "0", "0"]], "weak": True, "quotient": False, "ideally_absorbed": False,
                          "witness_p": ["1", "0", "0"], "witness_q": ["0", "1", "0"]}),
    }
    return items


# default shipped corpus -------------------------------------------------------------


def default_specs() -> list:
    specs = []
    for p in (2, 3):
        f = GF(p)
        for strategy, counts in (("identity-twist", {2: 3, 3: 6, 4: 6}),
                                 ("scalar-twist", {2: 3, 3: 6, 4: 6}),
                                 ("centroid-twist", {2: 3, 3: 6, 4: 6}),
                                 ("central-degenerate", {2: 2, 3: 4, 4: 4})):
            for dim, count in counts.items():
                specs.append(GeneratorSpec(strategy, f, dim, seed=1000 + 10 * p + dim, count=count))
    specs.append(GeneratorSpec("rejection", GF(2), 3, seed=7, count=8))
    specs.append(GeneratorSpec("rejection", GF(2), 2, seed=7, count=4))
    specs.append(GeneratorSpec("central-degenerate", GF(3), 4, seed=EX25_SEED, count=2, pattern="ex2_5"))
    # semiprime material for the maximal-quotient, operator and density checks
    for strategy in ("identity-twist", "scalar-twist", "centroid-twist"):
        specs.append(GeneratorSpec(strategy, GF(3), 3, seed=3, count=2, pattern="semisimple"))
    specs.append(GeneratorSpec("centroid-twist", GF(3), 6, seed=6, count=2, pattern="semisimple"))
    return specs


# chosen so the first ex2_5-pattern draw over GF(3) has a = b = 1
EX25_SEED = 11


def build_default_corpus():
    """``[(name, extension, meta)]`` for the shipped corpus, curated first."""
    rows = []
    for name, (obj, expected) in curated().items():
        E = obj if isinstance(obj, Extension) else self_extension(obj)
        rows.append((name, E, {"strategy": "curated", "expected": expected}))
    for spec in default_specs():
        rng = random.Random(f"ext|{spec.slug()}")
        for idx, A in enumerate(generate(spec)):
            for k, E in enumerate(extensions_of(A, rng, proper=2 if A.dim >= 3 else 1)):
                name = f"{spec.slug()}_{idx:02d}_{k}"
                rows.append((name, E, {"strategy": spec.strategy, "seed": spec.seed, "index": idx,
                                       "spec": spec.to_json()}))
    return rows


def write_corpus(rows, out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"instances": []}
    for name, E, meta in rows:
        if E.sub.is_full():
            (out / f"{name}.alg.json").write_text(json.dumps(E.ambient.to_json(), sort_keys=True, indent=1) + "\n")
        (out / f"{name}.ext.json").write_text(json.dumps(E.to_json(), sort_keys=True, indent=1) + "\n")
        entry = {"name": name, "field": E.field.to_json(), "dim_q": E.ambient.dim, "dim_l": E.sub.dim}
        entry.update(meta)
        manifest["instances"].append(entry)
    (out / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=1) + "\n")
    return out


def write_algebras(spec: GeneratorSpec, out_dir) -> list:
    """Write generated algebras and merge them into the directory's manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    mpath = out / "manifest.json"
    manifest = json.loads(mpath.read_text()) if mpath.exists() else {"instances": []}
    known = {e["name"] for e in manifest["instances"]}
    names = []
    for idx, A in enumerate(generate(spec)):
        name = f"{spec.slug()}_{idx:03d}"
        (out / f"{name}.alg.json").write_text(json.dumps(A.to_json(), sort_keys=True, indent=1) + "\n")
        if name not in known:
            manifest["instances"].append({"name": name, "field": A.field.to_json(), "dim_q": A.dim,
                                          "dim_l": A.dim, "strategy": spec.strategy, "seed": spec.seed,
                                          "index": idx, "spec": spec.to_json()})
        names.append(name)
    manifest["instances"].sort(key=lambda e: e["name"])
    mpath.write_text(json.dumps(manifest, sort_keys=True, indent=1) + "\n")
    return names


def load_corpus(path) -> list:
    """``[(name, extension, meta)]`` from a corpus directory, in name order.

    Each instance is read from ``<name>.ext.json`` when present, otherwise
    ``<name>.alg.json`` is wrapped as the extension of an algebra over itself.
    """
    root = Path(path)
    mpath = root / "manifest.json"
    if mpath.exists():
        entries = json.loads(mpath.read_text())["instances"]
        names = [(e["name"], e) for e in entries]
    else:
        stems = {p.name.split(".")[0] for p in root.glob("*.json")}
        names = [(s, {"name": s}) for s in stems]
    rows = []
    for name, meta in sorted(names, key=lambda t: t[0]):
        ext = root / f"{name}.ext.json"
        alg = root / f"{name}.alg.json"
        if ext.exists():
            E = Extension.from_json(json.loads(ext.read_text()))
        elif alg.exists():
            E = self_extension(HomLieAlgebra.from_json(json.loads(alg.read_text())))
        else:
            raise ParseError(f"corpus entry {name} has no file")
        rows.append((name, E, meta))
    return rows
