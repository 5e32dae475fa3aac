import itertools
from math import factorial

import pytest

from genconf.config import Permutation
from genconf.dcr import Dcr, divides, permute
from genconf.errors import ClassificationContradiction, InvalidDimension
from genconf.simplicial import (
    FIRST,
    SECOND,
    Simplex,
    build_complex,
    build_complex_bruteforce,
    classify,
    clique_indices,
    dimension,
    maximal_cliques,
    normal_simplex,
    orbit_indices,
    orbit_stabilizer_product,
    orbits,
    ordered_orbit_size,
    simplices,
    solve_permutations,
    stabilizer,
)


@pytest.fixture(scope="module")
def complexes():
    cache = {}

    def get(m, n):
        if (m, n) not in cache:
            cache[(m, n)] = build_complex(m, n)
        return cache[(m, n)]

    return get


def test_vertex_counts(complexes):
    assert len(complexes(2, 5).vertices) == 30
    assert len(complexes(2, 6).vertices) == 180


@pytest.mark.parametrize("m,n", [(2, 5), (2, 6), (3, 6)])
def test_edges_match_pairwise_divisibility(complexes, m, n):
    fast, brute = complexes(m, n), build_complex_bruteforce(m, n)
    assert fast.vertices == brute.vertices
    assert fast.adjacency == brute.adjacency


def test_adjacency_symmetric_without_loops(complexes):
    cx = complexes(2, 7)
    for u, nbrs in enumerate(cx.adjacency):
        assert u not in nbrs
        assert all(u in cx.adjacency[v] for v in nbrs)


def test_parallel_build_matches_serial():
    assert build_complex(2, 6, workers=1).adjacency == build_complex(2, 6, workers=3).adjacency


def test_simplices_examples(complexes):
    cx = complexes(2, 7)
    assert len(simplices(cx, 0)) == len(cx.vertices)
    assert simplices(cx, 3) == []
    with pytest.raises(InvalidDimension):
        simplices(cx, -1)
    for sx in simplices(cx, 2):
        for a, b in itertools.combinations(sx.vertices, 2):
            assert divides(a, b)


def test_faces_are_simplices(complexes):
    cx = complexes(3, 7)
    lower = {frozenset(c) for c in clique_indices(cx, 1)}
    for c in clique_indices(cx, 2):
        for face in itertools.combinations(c, 2):
            assert frozenset(face) in lower


def test_maximal_cliques_cover_every_edge(complexes):
    cx = complexes(2, 6)
    covered = set()
    for c in maximal_cliques(cx):
        covered.update(itertools.combinations(c, 2))
    assert covered == set(cx.edges())


@pytest.mark.parametrize("m,n", [(2, 5), (2, 6), (2, 7), (2, 8), (3, 6), (3, 7), (3, 8)])
def test_dimension_formula(complexes, m, n):
    assert dimension(complexes(m, n)) == max(n - m - 3, m - 1)


def test_normal_simplex_examples():
    assert normal_simplex(FIRST, 0, 2, 5) == Simplex((Dcr((1,), (2, 3, 4, 5)),))
    assert normal_simplex(SECOND, 1, 2, 5) == Simplex((Dcr((2,), (1, 3, 4, 5)), Dcr((1,), (2, 3, 4, 5))))
    with pytest.raises(InvalidDimension):
        normal_simplex(FIRST, 1, 2, 5)
    with pytest.raises(InvalidDimension):
        normal_simplex(SECOND, 2, 2, 7)


@pytest.mark.parametrize("m,n", [(2, 7), (3, 7), (3, 8), (4, 9)])
def test_normal_simplices_are_simplices_of_their_type(m, n):
    for kind, top in [(FIRST, n - m - 3), (SECOND, m - 1)]:
        for t in range(top + 1):
            sx = normal_simplex(kind, t, m, n)
            for a, b in itertools.combinations(sx.vertices, 2):
                assert divides(a, b)
            if t > 0:
                assert classify(sx) == kind


def test_classification_sweep(complexes):
    for sx in simplices(complexes(2, 6), 1):
        classify(sx)
    with pytest.raises(ClassificationContradiction):
        classify(Simplex((Dcr((1,), (2, 3, 4, 5)), Dcr((2,), (1, 3, 4, 6)))))
    with pytest.raises(InvalidDimension):
        classify(normal_simplex(FIRST, 0, 2, 5))


@pytest.mark.parametrize("m,n", [(2, 7), (3, 7)])
def test_faces_keep_their_type(complexes, m, n):
    cx = complexes(m, n)
    for t in range(2, dimension(cx) + 1):
        for sx in simplices(cx, t):
            kind = classify(sx)
            assert all(classify(face) == kind for face in sx.faces())


@pytest.mark.parametrize("m,n", [(2, 6), (2, 7), (3, 7), (3, 8)])
def test_orbit_structure(complexes, m, n):
    cx = complexes(m, n)
    assert len(orbit_indices(cx, 0)) == 1
    for t in range(1, dimension(cx) + 1):
        found = orbits(cx, t)
        kinds = [k for k, top in [(FIRST, n - m - 3), (SECOND, m - 1)] if t <= top]
        assert len(found) == len(kinds)
        for orb in found:
            assert len({classify(sx) for sx in orb}) == 1
        normals = {frozenset(normal_simplex(k, t, m, n).vertices) for k in kinds}
        for orb in found:
            assert sum(frozenset(sx.vertices) in normals for sx in orb) == 1


def test_orbit_partition_is_closed_under_permutations(complexes):
    cx = complexes(2, 6)
    sigma = Permutation.from_cycles(6, (1, 3, 5, 2))
    for orb in orbits(cx, 1):
        members = {frozenset(sx.vertices) for sx in orb}
        for sx in orb:
            assert frozenset(permute(sigma, v) for v in sx.vertices) in members


@pytest.mark.parametrize("m,n", [(2, 7), (3, 7), (3, 8)])
def test_normal_simplex_stabilizers(complexes, m, n):
    first = normal_simplex(FIRST, n - m - 3, m, n)
    second = normal_simplex(SECOND, m - 1, m, n)
    assert len(stabilizer(first, n)) == factorial(m - 1)
    assert len(stabilizer(second, n)) == factorial(n - m - 3)
    for sx in (first, second):
        orbit, stab, total = orbit_stabilizer_product(complexes(m, n), sx)
        assert orbit * stab == total == factorial(n)


def test_stabilizer_subgroups_are_the_expected_ones():
    first = normal_simplex(FIRST, 2, 3, 8)
    assert {p.support() for p in stabilizer(first, 8)} == {(), (1, 2)}
    second = normal_simplex(SECOND, 1, 2, 7)
    assert {p.support() for p in stabilizer(second, 7)} == {(), (6, 7)}


def test_single_vertex_stabilizer():
    v = Simplex((Dcr((1,), (2, 3, 4, 5)),))
    assert len(stabilizer(v, 6)) == 4 == len(stabilizer(v, 6, method="brute"))
    w = Simplex((Dcr((1, 2), (3, 4, 5, 6)),))
    # S({1,2}) x Klein x S({7})
    assert len(stabilizer(w, 7)) == factorial(2) * 4 * factorial(1)


def test_search_matches_brute_force_on_random_pairs():
    verts = [Dcr((1,), (2, 3, 4, 5)), Dcr((2,), (1, 3, 4, 6))]
    sigma = Permutation.from_cycles(6, (1, 2), (3, 6, 4))
    pairs = [(v, permute(sigma, v)) for v in verts]
    found = {p.images for p in solve_permutations(pairs, 6)}
    brute = {p.images for p in map(Permutation, itertools.permutations(range(1, 7)))
             if all(permute(p, a) == b for a, b in pairs)}
    assert found == brute and sigma.images in found


def test_ordered_orbit_of_vertex(complexes):
    cx = complexes(2, 6)
    v = Simplex((cx.vertices[0],))
    assert ordered_orbit_size(cx, v) == 180
