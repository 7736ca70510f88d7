from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from cayleycore.cayley import ConnectionSet, complement_connection_set, make_connection_set, materialize, projective_expand
from cayleycore.cca import CCAWitness, find_witness, projection_images
from cayleycore.errors import ResourceLimitError
from cayleycore.gfp import FieldSpec, span
from cayleycore.graph import Graph
from cayleycore.homcore import (
    VertexMap,
    certify_core_by_invariants,
    chromatic_number,
    clique_number,
    compute_core,
    find_coloring,
    find_endomorphism,
    find_homomorphism,
    has_proper_coloring,
    idempotent_power,
    is_core,
    is_homomorphism,
    max_clique,
    vertex_transitive_catalog,
)
from cayleycore.verify.fixtures import counterexample, halved_cube_set, sharpness_set
from cayleycore.verify.suites import gl_permutations

from conftest import all_connection_sets
from oracles import all_maps_scan, has_noninjective_endomorphism

BACKENDS = ["python", "numba"]


def c4():
    f = FieldSpec(2, 2)
    return f, make_connection_set(f, [[1, 0], [0, 1]])


def test_is_homomorphism_examples():
    X = materialize(sharpness_set())
    assert is_homomorphism(VertexMap.identity(X.n), X, X)
    assert not is_homomorphism([0] * X.n, X, X)
    f, C = c4()
    w = CCAWitness(span([f.unit(0)]), span([f.unit(0) + f.unit(1)]))
    Y = materialize(C)
    assert is_homomorphism(projection_images(w), Y, Y)
    with pytest.raises(ValueError):
        is_homomorphism([0, 1], Y, Y)


@pytest.mark.parametrize("backend", BACKENDS)
def test_find_endomorphism_examples(backend):
    assert find_endomorphism(Graph.complete(4), backend=backend) is None
    _, C = c4()
    X = materialize(C)
    f = find_endomorphism(X, backend=backend)
    assert f is not None and not f.is_injective() and is_homomorphism(f, X, X)
    assert find_endomorphism(materialize(sharpness_set()), backend=backend) is None
    anymap = find_endomorphism(X, "any", backend=backend)
    assert is_homomorphism(anymap, X, X)
    with pytest.raises(ValueError):
        find_endomorphism(X, "surjective")
    with pytest.raises(ResourceLimitError):
        find_endomorphism(Graph.cycle(70))


def test_edgeless_and_complete_shortcuts():
    E = Graph(np.zeros((5, 5), dtype=bool))
    assert find_endomorphism(E) == VertexMap((0,) * 5)
    assert compute_core(E).order == 1
    assert compute_core(Graph.complete(5)).kind == "complete"


def test_idempotent_power_examples():
    f, C = c4()
    X = materialize(C)
    proj = VertexMap(tuple(projection_images(CCAWitness(span([f.unit(0)]), span([f.unit(0) + f.unit(1)])))))
    assert idempotent_power(proj) == proj
    assert idempotent_power(VertexMap.identity(4)) == VertexMap.identity(4)
    shift = VertexMap(tuple(x ^ 2 for x in range(4)))  # translation by i, an involution
    g = shift.compose(proj)
    assert not g.is_idempotent()
    r = idempotent_power(g)
    assert r.is_idempotent() and is_homomorphism(r, X, X)
    powers = [g]
    while powers[-1] != r:
        powers.append(g.compose(powers[-1]))
    assert len(powers) <= 24  # 4!


@pytest.mark.parametrize("backend", BACKENDS)
def test_compute_core_examples(backend):
    f3 = FieldSpec(2, 3)
    cube = materialize(make_connection_set(f3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    cert = compute_core(cube, backend=backend)
    assert cert.order == 2 and cert.kind == "complete"
    assert compute_core(Graph.complete(6), backend=backend).order == 6
    g = FieldSpec(3, 2)
    i, j = g.unit(0), g.unit(1)
    K9 = materialize(projective_expand(g, [i, j, i + j, i - j]))
    cert = compute_core(K9, backend=backend)
    assert cert.order == 9 and cert.kind == "complete"
    cert = compute_core(materialize(sharpness_set()), vertex_transitive=True, backend=backend)
    assert cert.order == 16 and cert.kind == "self"


def _check_certificate(X, cert):
    r = cert.retraction
    assert r.is_idempotent()
    assert is_homomorphism(r, X, X)
    assert r.image() == tuple(sorted(cert.vertices))
    core = X.induced(list(cert.vertices))
    assert is_core(core)
    again = compute_core(core)
    assert again.order == cert.order
    assert again.retraction == VertexMap.identity(cert.order)


@pytest.mark.parametrize("p,d", [(2, 3), (3, 2)])
def test_core_certificates_on_all_small_cayley_graphs(p, d):
    f = FieldSpec(p, d)
    for C in all_connection_sets(f):
        X = materialize(C)
        cert = compute_core(X, vertex_transitive=True)
        _check_certificate(X, cert)
        assert f.size % cert.order == 0
        assert cert.order == compute_core(X).order


def test_vertex_transitive_shortcuts_agree_with_plain_search_on_f2_4(f2_4):
    sets = list(all_connection_sets(f2_4))
    for C in random.Random(4).sample(sets, 300):
        X = materialize(C)
        fast = compute_core(X, vertex_transitive=True)
        _check_certificate(X, fast)
        assert fast.order == compute_core(X).order
        assert is_core(X, vertex_transitive=True) == is_core(X) == (fast.order == X.n)


def test_pinned_pair_search_matches_oracle():
    for p, d in [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]:
        for C in all_connection_sets(FieldSpec(p, d)):
            X = materialize(C)
            if X.n > 1 and X.num_edges == 0:
                continue
            f = find_endomorphism(X, vertex_transitive=True)
            assert (f is not None) == has_noninjective_endomorphism(X)
            if f is not None:
                assert is_homomorphism(f, X, X) and f(0) == 0 and not f.is_injective()


def test_general_kind_reported():
    # C5 plus a pendant edge folds onto C5, which is not complete
    X = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
    cert = compute_core(X)
    assert cert.kind == "general" and cert.order == 5
    _check_certificate(X, cert)


def test_is_core_examples():
    assert is_core(materialize(sharpness_set()))
    assert is_core(materialize(halved_cube_set(5)))
    assert not is_core(materialize(c4()[1]))


def test_endomorphism_oracle_on_small_cayley_fixtures():
    fixtures = []
    for p, d in [(2, 1), (2, 2), (2, 3), (3, 1), (5, 1), (7, 1)]:
        fixtures += [materialize(C) for C in all_connection_sets(FieldSpec(p, d))]
    fixtures += [Graph.cycle(n) for n in range(3, 9)] + [Graph.complete(n) for n in range(1, 7)]
    for X in fixtures:
        if X.n > 1 and X.num_edges == 0:
            continue  # too many maps for the oracle; covered by the shortcut test
        expect = has_noninjective_endomorphism(X)
        for backend in BACKENDS:
            f = find_endomorphism(X, backend=backend)
            assert (f is not None) == expect
            assert (find_endomorphism(X, "image-strictly-smaller", backend=backend) is not None) == expect


def test_literal_scan_agrees_with_layered_oracle():
    for n in range(1, 6):
        for X in (Graph.cycle(n) if n >= 3 else Graph.complete(n), Graph.complete(n)):
            assert all_maps_scan(X)[0] == has_noninjective_endomorphism(X)


def test_clique_number_examples():
    for n in range(1, 8):
        assert clique_number(Graph.complete(n)) == n
    assert clique_number(materialize(counterexample(3).connection_set())) == 4
    assert clique_number(materialize(sharpness_set())) == 2
    X = materialize(halved_cube_set(5))
    clique = max_clique(X)
    assert X.induced(clique).is_complete()


def test_clique_number_against_brute_force():
    rng = np.random.default_rng(5)
    for _ in range(40):
        n = int(rng.integers(1, 11))
        a = np.triu(rng.random((n, n)) < 0.5, 1)
        X = Graph(a | a.T)
        best = max(r for r in range(n + 1) for S in itertools.combinations(range(n), r)
                   if X.induced(list(S)).is_complete())
        assert clique_number(X) == best


@pytest.mark.parametrize("backend", BACKENDS)
def test_coloring_examples(backend):
    assert not has_proper_coloring(Graph.complete(4), 3, backend=backend)
    assert has_proper_coloring(Graph.cycle(4), 2, backend=backend)
    X = materialize(counterexample(3).connection_set())
    assert not has_proper_coloring(X, 6, backend=backend)
    col = find_coloring(X, 7, backend=backend)
    assert col is not None and all(col[u] != col[v] for u, v in X.edges())
    assert chromatic_number(Graph.cycle(5), backend=backend) == 3
    assert find_coloring(Graph.complete(0), 0) == []
    with pytest.raises(ValueError):
        has_proper_coloring(Graph.cycle(4), -1)


def test_chromatic_number_against_brute_force():
    rng = np.random.default_rng(11)
    for _ in range(30):
        n = int(rng.integers(1, 8))
        a = np.triu(rng.random((n, n)) < 0.45, 1)
        X = Graph(a | a.T)
        e = X.edges()
        brute = next(k for k in range(n + 1)
                     if any(all(c[u] != c[v] for u, v in e) for c in itertools.product(range(k), repeat=n)))
        assert chromatic_number(X) == brute


def test_vertex_transitive_catalog():
    entry = vertex_transitive_catalog(9)
    assert entry.max_chromatic == 5 and entry.graphs == 30
    assert vertex_transitive_catalog(5).max_chromatic == 3
    assert vertex_transitive_catalog(6) is None


def test_certify_examples():
    X = materialize(counterexample(3).connection_set())
    cert = certify_core_by_invariants(X)
    assert cert is not None and cert.kind == "self" and cert.order == 27
    for p in (5, 7, 11):
        assert certify_core_by_invariants(Graph.cycle(p)).kind == "self"
    assert certify_core_by_invariants(Graph.complete(4)).kind == "self"
    assert certify_core_by_invariants(Graph.cycle(4)) is None


def test_certify_never_contradicts_is_core():
    graphs = []
    for p in (2, 3, 5, 7):
        C = counterexample(p).connection_set()
        graphs += [materialize(C), materialize(complement_connection_set(C))]
    for C in all_connection_sets(FieldSpec(2, 3)):
        graphs.append(materialize(C))
    for X in graphs:
        cert = certify_core_by_invariants(X)
        if cert is not None and X.n <= 64:
            assert is_core(X, vertex_transitive=True)


def test_halved_cube_is_complement_of_folded_cube():
    f = FieldSpec(2, 4)
    target = sorted(halved_cube_set(5).indices)
    source = complement_connection_set(sharpness_set()).indices
    perms = gl_permutations(f)
    assert any(sorted(row[list(source)].tolist()) == target for row in perms)
    assert len(halved_cube_set(5)) == 10 and len(sharpness_set()) == 5


def test_find_homomorphism_into_smaller_graph():
    odd = Graph.cycle(7)
    assert find_homomorphism(odd, Graph.complete(2)) is None
    f = find_homomorphism(odd, Graph.complete(3))
    assert is_homomorphism(f, odd, Graph.complete(3))
    with pytest.raises(ResourceLimitError):
        find_homomorphism(Graph.cycle(9), Graph.complete(2), budget=3)
