"""Property suites driven by hypothesis (>= 1000 cases each)."""

from __future__ import annotations

import random

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cayleycore.cayley import ConnectionSet, adjacent, complement_connection_set, materialize
from cayleycore.cca import CCAWitness, cca_check, dual_witness, find_witness, lift_witness, projection_images
from cayleycore.gfp import FieldSpec, LinearMap, Subspace, apply_map, intersection, span, subspace_sum
from cayleycore.graph import Graph
from cayleycore.homcore import compute_core, find_endomorphism, is_homomorphism
from cayleycore.homcore._kernels import color_search, hom_search

from oracles import all_maps_scan

MANY = settings(max_examples=1000, deadline=None)


def fields_up_to(n: int):
    pairs = [(p, d) for p in (2, 3, 5, 7, 11, 13) for d in range(0, 9) if p ** d <= n and d >= 1]
    return st.sampled_from(pairs).map(lambda pd: FieldSpec(*pd))


def classes(f: FieldSpec) -> list[frozenset[int]]:
    seen, out = set(), []
    for x in range(1, f.size):
        if x not in seen:
            c = frozenset({x, f.neg(x)})
            seen |= c
            out.append(c)
    return out


@st.composite
def connection_sets(draw, max_size: int = 81):
    f = draw(fields_up_to(max_size))
    cls = classes(f)
    density = draw(st.floats(0, 1))
    rnd = random.Random(draw(st.integers(0, 2**32)))
    picked = [c for c in cls if rnd.random() < density]
    return ConnectionSet(f, frozenset().union(*picked))


@st.composite
def subspaces(draw, f: FieldSpec):
    rows = draw(st.lists(st.tuples(*[st.integers(0, f.p - 1)] * f.d), max_size=f.d))
    return Subspace.from_rows(f, rows)


@st.composite
def witnessed_sets(draw, max_size: int = 256):
    """A connection set built around a random complementary pair (V, W)."""
    f = draw(fields_up_to(max_size))
    rnd = random.Random(draw(st.integers(0, 2**32)))
    T = LinearMap.random_invertible(f, rnd)
    k = draw(st.integers(0, f.d))
    units = [f.unit(t) for t in range(f.d)]
    V = T.image(span(units[:k], f))
    W = T.image(span(units[k:], f))
    density = draw(st.floats(0, 1))
    free = [c for c in classes(f) if not (c & V.elements) and not (c & W.elements)]
    extra = [c for c in free if rnd.random() < density]
    C = ConnectionSet(f, frozenset(V.elements - {0}).union(*extra))
    return C, CCAWitness(V, W)


def graphs(max_n: int):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
        a = np.zeros((n, n), dtype=bool)
        a[np.triu_indices(n, 1)] = bits
        return Graph(a | a.T)
    return build()


# --- duality, lifting, projection -------------------------------------------

@MANY
@given(st.one_of(connection_sets(), witnessed_sets(81).map(lambda cw: cw[0])))
def test_duality_round_trip(C):
    ws = find_witness(C)
    if not ws.found:
        return
    w = ws.witness
    Cbar = complement_connection_set(C)
    dual = dual_witness(C, w)
    assert cca_check(Cbar, dual)
    assert dual_witness(Cbar, dual) == w


@MANY
@given(witnessed_sets(81))
def test_lifting_soundness(cw):
    C, _ = cw
    B = C.span
    assume(B.dim < C.field.d)
    w = find_witness(C).witness
    inner = CCAWitness(w.V, intersection(w.W, B))
    assert subspace_sum(inner.V, inner.W) == B
    lifted = lift_witness(C, inner)
    assert cca_check(C, lifted)
    assert lifted.V == w.V


@MANY
@given(witnessed_sets(256))
def test_projection_is_a_retraction_onto_a_complete_subgraph(cw):
    C, w = cw
    assert cca_check(C, w)
    X = materialize(C)
    img = np.array(projection_images(w))
    e = X.edges()
    if len(e):
        assert X.adj[img[e[:, 0]], img[e[:, 1]]].all()
    V = sorted(w.V.elements)
    assert (img[V] == V).all()
    assert set(img.tolist()) == set(V)
    assert X.induced(V).is_complete()


@MANY
@given(connection_sets(16), st.data())
def test_gl_equivariance_of_cca_check(C, data):
    f = C.field
    V = data.draw(subspaces(f))
    W = data.draw(subspaces(f))
    T = LinearMap.random_invertible(f, random.Random(data.draw(st.integers(0, 2**32))))
    TC = ConnectionSet.from_vectors(f, apply_map(T, C.elements, require_invertible=True))
    before = cca_check(C, CCAWitness(V, W))
    after = cca_check(TC, CCAWitness(T.image(V), T.image(W)))
    assert before.ok == after.ok
    if not before.ok:
        assert before.clause == after.clause


@MANY
@given(connection_sets(64), st.data())
def test_cca_check_matches_set_definition(C, data):
    f = C.field
    V = data.draw(subspaces(f))
    W = data.draw(subspaces(f))
    sums = {f.add(v, w) for v in V.elements for w in W.elements}
    direct = len(sums) == f.size and V.elements & W.elements == {0}
    expect = direct and (V.elements - {0}) <= C.indices and not (W.elements & C.indices)
    assert cca_check(C, CCAWitness(V, W)).ok == expect


# --- graphs and cores ---------------------------------------------------------

@MANY
@given(graphs(6))
def test_endomorphism_search_matches_scan_of_all_maps(X):
    noninj, _ = all_maps_scan(X)
    for backend in ("python", "numba"):
        f = find_endomorphism(X, backend=backend)
        assert (f is not None) == noninj
        if f is not None:
            assert is_homomorphism(f, X, X) and not f.is_injective()


@MANY
@given(connection_sets(32))
def test_core_order_divides_group_order_and_matches_witness(C):
    X = materialize(C)
    cert = compute_core(X, vertex_transitive=True)
    assert C.field.size % cert.order == 0
    ws = find_witness(C)
    if ws.found:
        assert cert.kind == "complete" and cert.order == C.field.p ** ws.witness.dim


@MANY
@given(graphs(14), graphs(9), st.data())
def test_backends_walk_the_same_tree(X, Y, data):
    full = (1 << Y.n) - 1
    dom = [data.draw(st.integers(0, full)) | 1 for _ in range(X.n)]
    order = sorted(range(X.n), key=lambda v: (-X.degrees[v], v))
    nbrs = [list(nb) for nb in X.neighbors]
    budget = data.draw(st.sampled_from([-1, 5, 50]))
    a = hom_search(order, nbrs, list(Y.masks), dom, Y.n, budget, "python")
    b = hom_search(order, nbrs, list(Y.masks), dom, Y.n, budget, "numba")
    assert a[0] == b[0] and a[2] == b[2]
    if a[0] == 1:
        assert a[1] == b[1]
    k = data.draw(st.integers(1, 6))
    pre = [-1] * X.n
    ca = color_search(X.neighbors, X.degrees.tolist(), pre, k, budget, "python")
    cb = color_search(X.neighbors, X.degrees.tolist(), pre, k, budget, "numba")
    assert ca[0] == cb[0] and ca[2] == cb[2]
    if ca[0] == 1:
        assert ca[1] == cb[1]


@MANY
@given(connection_sets(64))
def test_complement_coherence(C):
    X = materialize(C)
    Y = materialize(complement_connection_set(C))
    assert np.array_equal(Y.adj, X.complement().adj)
    assert set(X.degrees.tolist()) <= {len(C)}


@MANY
@given(connection_sets(243), st.data())
def test_translation_invariance(C, data):
    f = C.field
    x, y, t = (f.from_index(data.draw(st.integers(0, f.size - 1))) for _ in range(3))
    assert adjacent(C, x, y) == adjacent(C, x + t, y + t) == adjacent(C, y, x)


@MANY
@given(fields_up_to(625), st.data())
def test_span_canonicality(f, data):
    vecs = data.draw(st.lists(st.integers(0, f.size - 1), max_size=6))
    vs = [f.from_index(x) for x in vecs]
    S = span(vs, f)
    perm = data.draw(st.permutations(vs))
    assert span(list(perm), f) == S
    assert all(v in S for v in vs) and S.dim <= min(len(vs), f.d)
