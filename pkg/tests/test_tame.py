import itertools
import random

import pytest

from genconf import tame
from genconf.config import (
    AFFINE,
    Configuration,
    Permutation,
    ProjectiveTransform,
    act_permutation,
    act_transform,
    sample_generic,
)
from genconf.dcr import Dcr, enumerate_dcrs, evaluate, make_dcr, permute
from genconf.errors import (
    ImageNotAffine,
    InducedMapInconsistent,
    InvalidConfiguration,
    UnsupportedCase,
)
from genconf.simplicial import build_complex, classify, simplices
from genconf.tame import (
    ConstantTau,
    ParametricTau,
    TameMap,
    check_strict_equivariance,
    eval_map,
    find_rho,
    fixed_vertices,
    identify_induced_map,
    induced_map,
    projective_symmetries,
    random_tame_map,
    recover,
)


def identity_map(m, n):
    return TameMap(Permutation.identity(n), ConstantTau(ProjectiveTransform.identity(m + 1)))


def permutation_map(sigma, m):
    return TameMap(sigma, ConstantTau(ProjectiveTransform.identity(m + 1)))


def samples(m, n, count, seed):
    rng = random.Random(seed)
    return [sample_generic(m, n, seed=rng) for _ in range(count)]


# -- evaluation ----------------------------------------------------------------


def test_identity_and_constant_maps():
    q = sample_generic(2, 6, seed=1)
    assert eval_map(identity_map(2, 6), q) == q
    T = ProjectiveTransform.random(3, random.Random(2))
    f = TameMap(Permutation.identity(6), ConstantTau(T))
    for q in samples(2, 6, 3, 3):
        assert eval_map(f, q) == act_transform(T, q)


def test_parametric_tau_is_invariant():
    f = random_tame_map(2, 6, seed=4, kind="parametric")
    q = sample_generic(2, 6, seed=5)
    for images in [(2, 1, 3, 4, 5, 6), (6, 5, 4, 3, 2, 1), (3, 1, 2, 6, 4, 5)]:
        assert f.tau(act_permutation(Permutation(images), q)).matrix == f.tau(q).matrix


def test_parametric_power_must_exceed_one():
    base = Dcr((1,), (2, 3, 4, 5))
    eye = ProjectiveTransform.identity(3).matrix
    with pytest.raises(InvalidConfiguration):
        ParametricTau(base, (eye,), power=1)


def test_plain_orbit_sum_is_constant():
    # why power 1 would give a constant family
    base = Dcr((1,), (2, 3, 4, 5))
    values = {sum((evaluate(d, q) for d in tame.dcr_orbit(base, 6)), evaluate(base, q) * 0)
              for q in samples(2, 6, 3, 6)}
    assert len(values) == 1


def test_quasitame_violation_raises():
    q = Configuration.affine([(0, 0), (1, 0), (0, 1), (2, 3), (5, -1), (-4, 7)])
    bad = TameMap(Permutation.identity(6), ConstantTau(ProjectiveTransform(((1, 0, 0), (0, 1, 0), (-1, 0, 1)))))
    with pytest.raises(ImageNotAffine):
        eval_map(bad, q)
    affine = TameMap(Permutation.identity(6), ConstantTau(ProjectiveTransform(((2, 1, 3), (0, 1, -1), (0, 0, 1)))))
    assert eval_map(affine, q).space == AFFINE


def test_shape_mismatch_rejected():
    with pytest.raises(InvalidConfiguration):
        eval_map(identity_map(2, 6), sample_generic(2, 7, seed=0))


@pytest.mark.parametrize("kind", ["constant", "parametric"])
def test_json_round_trip(kind):
    f = random_tame_map(3, 7, seed=8, kind=kind)
    g = TameMap.from_json(__import__("json").loads(f.dumps()))
    q = sample_generic(3, 7, seed=9)
    assert g.sigma == f.sigma and eval_map(g, q) == eval_map(f, q)
    with pytest.raises(InvalidConfiguration):
        TameMap.from_json({"sigma": [1, 2, 3]})


# -- induced map -------------------------------------------------------------------


def test_induced_map_examples():
    d = make_dcr({1}, 2, 3, 4, 5)
    assert induced_map(identity_map(2, 6), d) == d
    swap = permutation_map(Permutation.transposition(6, 1, 2), 2)
    assert induced_map(swap, d) == make_dcr({2}, 1, 3, 4, 5)


def test_induced_map_detects_inconsistency(monkeypatch):
    f = random_tame_map(2, 6, seed=1)
    shift = Permutation.from_cycles(6, (1, 2, 3))
    original = tame.eval_map
    monkeypatch.setattr(tame, "eval_map", lambda g, q: act_permutation(shift, original(g, q)))
    with pytest.raises(InducedMapInconsistent):
        induced_map(f, make_dcr({1}, 2, 3, 4, 5))


@pytest.mark.parametrize("seed", range(3))
def test_black_box_table_equals_symbolic_map(seed):
    f = random_tame_map(2, 6, seed=seed, kind="parametric" if seed % 2 else "constant")
    table = identify_induced_map(f, 2, 6, seed=seed)
    assert table == {d: permute(f.sigma.inverse(), d) for d in enumerate_dcrs(2, 6)}


def test_induced_map_is_a_type_preserving_automorphism():
    cx = build_complex(2, 6)
    f = random_tame_map(2, 6, seed=11)
    image = {d: induced_map(f, d, samples=1) for d in cx.vertices}
    assert sorted(image.values()) == list(cx.vertices)
    for sx in simplices(cx, 1):
        a, b = (image[v] for v in sx.vertices)
        assert cx.index[b] in cx.adjacency[cx.index[a]]
        assert classify(type(sx)((a, b))) == classify(sx)


# -- correcting permutation ----------------------------------------------------------


def test_find_rho_trivial_cases():
    rho = find_rho(identity_map(2, 7))
    assert all(permute(rho.inverse(), v) == v for v in fixed_vertices(2, 7))
    sigma = Permutation.from_cycles(7, (1, 5, 2), (3, 7))
    assert find_rho(permutation_map(sigma, 2)) == sigma.inverse()


@pytest.mark.parametrize("seed", range(10))
def test_find_rho_postcondition(seed):
    f = random_tame_map(2, 7, seed=seed)
    rho = find_rho(f)
    corrected = (rho * f.sigma).inverse()
    assert all(permute(corrected, v) == v for v in fixed_vertices(2, 7))


@pytest.mark.parametrize("m,n", [(1, 4), (1, 5), (2, 6), (3, 8)])
def test_excluded_cases(m, n):
    with pytest.raises(UnsupportedCase):
        find_rho(identity_map(m, n))
    with pytest.raises(UnsupportedCase):
        recover(identity_map(m, n))


def test_fixed_vertex_set_has_trivial_stabilizer():
    from genconf.simplicial import solve_permutations
    for m, n in [(2, 5), (2, 7), (3, 7)]:
        pairs = [(v, v) for v in fixed_vertices(m, n)]
        assert [p.images for p in solve_permutations(pairs, n)] == [tuple(range(1, n + 1))]


# -- recovery --------------------------------------------------------------------------


def test_recover_constant_transform():
    T = ProjectiveTransform.random(3, random.Random(21))
    f = TameMap(Permutation.identity(7), ConstantTau(T))
    rec = recover(lambda q: eval_map(f, q), 2, 7)
    assert rec.sigma.is_identity()
    for q in samples(2, 7, 3, 22):
        assert rec.tau_eval(q) == T


def test_recover_pure_permutation():
    sigma = Permutation.from_cycles(7, (2, 6), (1, 4, 7))
    f = permutation_map(sigma, 3)
    rec = recover(f)
    assert rec.sigma == sigma
    for q in samples(3, 7, 3, 23):
        assert rec.tau_eval(q) == ProjectiveTransform.identity(4)


@pytest.mark.parametrize("m,n,kind", [(2, 5, "constant"), (2, 7, "parametric"), (3, 6, "constant"), (4, 7, "constant")])
def test_recover_round_trip_and_invariance(m, n, kind):
    f = random_tame_map(m, n, seed=n * 10 + m, kind=kind)
    rec = recover(lambda q: eval_map(f, q), m, n, seed=3)
    assert rec.sigma == f.sigma
    rng = random.Random(5)
    for q in samples(m, n, 2, 31):
        assert rec(q) == eval_map(f, q)
        theta = Permutation.random(n, rng)
        assert rec.tau_eval(act_permutation(theta, q)) == rec.tau_eval(q)


def test_recovered_tau_matches_hidden_tau():
    f = random_tame_map(2, 7, seed=41, kind="parametric")
    rec = recover(f)
    for q in samples(2, 7, 2, 42):
        assert rec.tau_eval(q) == f.tau(q)


# -- strict equivariance and uniqueness ---------------------------------------------------


def test_tame_maps_are_strictly_equivariant():
    f = random_tame_map(2, 6, seed=51)
    report = check_strict_equivariance(f, samples(2, 6, 2, 52))
    assert report.ok and report.witness is None
    s = f.sigma
    for images, alpha in report.alpha.items():
        theta = Permutation(images)
        assert alpha == s * theta * s.inverse()


def test_identity_is_strictly_equivariant_with_trivial_alpha():
    report = check_strict_equivariance(identity_map(2, 6), samples(2, 6, 2, 53))
    assert report
    assert all(Permutation(k) == v for k, v in report.alpha.items())


def test_row_dependent_transform_is_rejected():
    T = ProjectiveTransform.random(3, random.Random(54))

    def skewed(q):
        rows = list(q.rows)
        rows[0] = T.apply(rows[0])
        return Configuration(q.m, q.n, q.space, tuple(rows))

    report = check_strict_equivariance(skewed, samples(2, 6, 2, 55))
    assert not report.ok
    assert report.witness is not None and "config" in report.witness


@pytest.mark.parametrize("m,n", [(2, 5), (2, 6), (3, 6)])
def test_generic_configurations_have_no_projective_symmetry(m, n):
    q = sample_generic(m, n, seed=61)
    perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    assert projective_symmetries(q, perms) == []


def test_symmetric_configuration_is_detected():
    # swapping the first two coordinates realizes the permutation (1 2)(5 6)
    q = Configuration.projective([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [2, 3, 5], [3, 2, 5]])
    swap = Permutation.from_cycles(6, (1, 2), (5, 6))
    other = Permutation.transposition(6, 1, 2)
    assert projective_symmetries(q, [swap, other]) == [swap]
