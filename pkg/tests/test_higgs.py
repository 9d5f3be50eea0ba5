"""Tests for the self-injective algebra layer: the relation-quotient path
algebra, its Nakayama twist, the six-block triangular algebra, block
morphisms, the presentation functor, and lifting back to labels."""

import numpy as np
import pytest

from quiverlab import _kernels as K
from quiverlab import dynkin as dy
from quiverlab import higgs as hg
from quiverlab import morphcat as mc
from quiverlab.errors import GuardError, InternalCheckError

LAMBDA_DIMS = {"A1": 1, "A2": 4, "A3": 10, "A4": 20, "D4": 28}


def alg_for(t: str) -> hg.PreprojAlgebra:
    return hg.preprojective_algebra(dy.build_quiver(t))


# ---------------------------------------------------------------------------
# the algebra itself


def test_dimension_table():
    for t, d in LAMBDA_DIMS.items():
        assert alg_for(t).dim == d


def test_max_degree_is_coxeter_number_minus_two():
    for t in LAMBDA_DIMS:
        assert alg_for(t).max_degree == dy.coxeter_number(t) - 2


def test_a2_basis_paths():
    alg = alg_for("A2")
    assert [alg.path_string(i) for i in range(alg.dim)] == ["1", "2", "1-2", "2-1"]
    assert alg.e_index == {1: 0, 2: 1}
    assert list(alg.unit(2)) == [0, 1, 0, 0]


def test_left_projective_bases():
    alg = alg_for("A2")
    assert [alg.path_string(i) for i in alg.module_indices(1)] == ["1", "2-1"]
    assert [alg.path_string(i) for i in alg.module_indices(2)] == ["2", "1-2"]


def test_module_indices_partition_basis():
    for t in ("A2", "A3", "D4"):
        alg = alg_for(t)
        seen = sorted(k for v in alg.quiver.vertices for k in alg.module_indices(v))
        assert seen == list(range(alg.dim))


def test_block_indices_partition_basis():
    alg = alg_for("A3")
    seen = sorted(
        k
        for i in alg.quiver.vertices
        for j in alg.quiver.vertices
        for k in alg.block_indices(i, j)
    )
    assert seen == list(range(alg.dim))


def test_unit_laws():
    alg = alg_for("A3")
    total = sum(alg.unit(v) for v in alg.quiver.vertices)
    rng = np.random.default_rng(0)
    x = rng.integers(0, K.P, alg.dim)
    assert np.array_equal(alg.mult(total, x), x % K.P)
    assert np.array_equal(alg.mult(x, total), x % K.P)
    # orthogonal idempotents
    assert not np.any(alg.mult(alg.unit(1), alg.unit(2)))
    # e_v picks out the paths starting at v
    ex = alg.mult(alg.unit(1), x)
    for i in np.nonzero(ex)[0]:
        assert alg.word_start(int(i)) == 1


def test_two_step_round_trips_vanish():
    # the defining relations make arrow-then-reverse (and reverse-then-arrow)
    # zero in rank 2, where there is only one summand per relation
    alg = alg_for("A2")
    fwd = alg.coords[(1, (0,))]
    back = alg.coords[(2, (1,))]
    assert not np.any(alg.mult(fwd, back))
    assert not np.any(alg.mult(back, fwd))


def test_mult_associative_random():
    alg = alg_for("A3")
    rng = np.random.default_rng(3)
    for _ in range(12):
        x, y, z = (rng.integers(0, K.P, alg.dim) for _ in range(3))
        lhs = alg.mult(alg.mult(x, y), z)
        rhs = alg.mult(x, alg.mult(y, z))
        assert np.array_equal(lhs, rhs)


def test_tree_path_embedding():
    alg = alg_for("A3")
    el = alg.quiver_path_element(1, 3)
    nz = np.nonzero(el)[0]
    assert len(nz) == 1 and alg.path_string(int(nz[0])) == "1-2-3"
    with pytest.raises(GuardError):
        alg.quiver_path_element(3, 1)


def test_unsupported_type_guard():
    with pytest.raises(GuardError):
        hg.preprojective_algebra(dy.build_quiver("E6"))


# ---------------------------------------------------------------------------
# the Nakayama twist and the socle form


def test_socle_form_supported_in_top_degree():
    for t in ("A2", "A3"):
        alg = alg_for(t)
        for i in np.nonzero(alg.frobenius)[0]:
            assert alg.word_degree[alg.basis[int(i)]] == alg.max_degree


def test_socle_form_adjunction():
    # f(xy) == f(y * theta(x)) is the defining property of the twist
    for t in ("A2", "A3"):
        alg = alg_for(t)
        rng = np.random.default_rng(7)
        for _ in range(16):
            x = rng.integers(0, K.P, alg.dim)
            y = rng.integers(0, K.P, alg.dim)
            lhs = int(alg.mult(x, y) @ alg.frobenius % K.P)
            rhs = int(alg.mult(y, alg.apply_theta(x)) @ alg.frobenius % K.P)
            assert lhs == rhs


def test_twist_permutes_idempotents():
    for t in ("A2", "A3", "D4"):
        alg = alg_for(t)
        for v in alg.quiver.vertices:
            assert np.array_equal(
                alg.apply_theta(alg.unit(v)), alg.unit(alg.star[v])
            )


def test_twist_is_an_involution_on_a2():
    alg = alg_for("A2")
    rng = np.random.default_rng(11)
    for _ in range(8):
        x = rng.integers(0, K.P, alg.dim)
        assert np.array_equal(alg.apply_theta(alg.apply_theta(x)), x % K.P)


def test_twist_multiplicative():
    alg = alg_for("A3")
    rng = np.random.default_rng(13)
    for _ in range(8):
        x = rng.integers(0, K.P, alg.dim)
        y = rng.integers(0, K.P, alg.dim)
        assert np.array_equal(
            alg.apply_theta(alg.mult(x, y)),
            alg.mult(alg.apply_theta(x), alg.apply_theta(y)),
        )


def test_socle_weights_follow_vertex_involution():
    # top-degree paths ending at v must start at v*, so each left projective
    # has simple socle with the twisted weight
    for t in ("A2", "A3", "D4"):
        alg = alg_for(t)
        for i in range(alg.dim):
            if alg.word_degree[alg.basis[i]] == alg.max_degree:
                assert alg.word_start(i) == alg.star[alg.word_end(i)]


# ---------------------------------------------------------------------------
# the six-block triangular algebra


def test_block_algebra_total_dims():
    for t, d in (("A1", 1), ("A2", 4), ("A3", 10)):
        tq = hg.tq_algebra(dy.build_quiver(t))
        assert tq.total_dim == 6 * d
        assert len(tq.basis) == tq.total_dim


def test_block_pattern_products():
    tq = hg.tq_algebra(dy.build_quiver("A2"))
    d = tq.algebra.dim
    x = np.ones(d, dtype=np.int64)
    # composable within the pattern
    assert tq.block_product((0, 0), x, (0, 2), x) is not None
    # inner indices mismatch
    assert tq.block_product((1, 1), x, (0, 0), x) is None
    # composable but the target block is outside the pattern
    assert tq.block_product((2, 1), x, (1, 0), x) is None


def test_nakayama_permutation_a2_fixture():
    tq = hg.tq_algebra(dy.build_quiver("A2"))
    assert tq.nakayama_permutation() == {
        (0, 1): (1, 2),
        (0, 2): (1, 1),
        (1, 1): (2, 2),
        (1, 2): (2, 1),
        (2, 1): (0, 2),
        (2, 2): (0, 1),
    }


def test_nakayama_orders():
    for t, n in (("A1", 3), ("A2", 6), ("A3", 6)):
        assert hg.tq_algebra(dy.build_quiver(t)).nakayama_order() == n


def test_nakayama_cubed_is_the_vertex_involution():
    for t in ("A1", "A2", "A3"):
        tq = hg.tq_algebra(dy.build_quiver(t))
        perm = tq.nakayama_permutation()
        star = tq.algebra.star
        for (r, v) in perm:
            cur = (r, v)
            for _ in range(3):
                cur = perm[cur]
            assert cur == (r, star[v])


# ---------------------------------------------------------------------------
# the degree-shift symmetry on frozen labels


def test_omega_three_step_chain():
    q = dy.build_quiver("A2")
    e1 = mc.MprLabel(q, "done", 1, 0)
    chain = [e1]
    for _ in range(3):
        chain.append(hg.omega_action(chain[-1]))
    assert [str(x) for x in chain] == ["E(1)", "Z(1)", "M(P1)", "E(2)"]


def test_omega_orbit_and_order():
    for t, n in (("A2", 6), ("A3", 6), ("D4", 3)):
        q = dy.build_quiver(t)
        assert hg.omega_order(q) == n
        orbit = hg.omega_orbit(mc.MprLabel(q, "done", 1, 0))
        assert len(set(orbit)) == len(orbit)
        assert hg.omega_action(orbit[-1]) == orbit[0]


def test_omega_rejects_mutable_labels():
    q = dy.build_quiver("A2")
    with pytest.raises(GuardError):
        hg.omega_action(mc.MprLabel(q, "mod", 1, 1))


# ---------------------------------------------------------------------------
# block morphisms and the presentation functor

A2_PHI_TABLE = {
    # label -> (sources, targets, entry path strings row-major)
    "M(P1)": ((), (1,), []),
    "M(P2)": ((), (2,), []),
    "Z(1)": ((1,), (1,), [["1"]]),
    "M(t-1P1)": ((1,), (2,), [["1-2"]]),
    "E(1)": ((1,), (), []),
    "Z(2)": ((2,), (2,), [["2"]]),
    "E(2)": ((2,), (), []),
}


def a2_images():
    q = dy.build_quiver("A2")
    return {str(l): (l, hg.phi_image(l)) for l in mc.mpr_indecomposables(q)}


def test_phi_image_fixture():
    alg = alg_for("A2")
    imgs = a2_images()
    assert set(imgs) == set(A2_PHI_TABLE)
    for name, (p1, p0, paths) in A2_PHI_TABLE.items():
        f = imgs[name][1]
        assert f.p1 == p1 and f.p0 == p0
        got = [
            [alg.path_string(int(i)) for i in np.nonzero(f.entries[r][c])[0]]
            for r in range(len(p0))
            for c in range(len(p1))
        ]
        assert got == paths


def test_phi_images_indecomposable_and_distinct():
    imgs = [f for _, f in a2_images().values()]
    for f in imgs:
        assert hg.is_indecomposable(f)
        assert hg.is_isomorphic(f, f)
    for i, a in enumerate(imgs):
        for b in imgs[i + 1:]:
            assert not hg.is_isomorphic(a, b)


def test_morphism_dims():
    alg = alg_for("A2")
    f = a2_images()["Z(1)"][1]
    assert f.source_dim() == len(alg.module_indices(1))
    assert f.target_dim() == len(alg.module_indices(1))
    assert f.underlying_matrix().shape == (f.target_dim(), f.source_dim())


def test_hom_pair_dims_a2():
    imgs = a2_images()
    assert hg.hom_pair_dim(imgs["Z(1)"][1], imgs["Z(1)"][1]) == 1
    assert hg.hom_pair_dim(imgs["M(P1)"][1], imgs["M(P1)"][1]) == 1
    assert hg.hom_pair_dim(imgs["E(1)"][1], imgs["Z(1)"][1]) == 0


def test_entries_outside_their_block_rejected():
    alg = alg_for("A2")
    with pytest.raises(InternalCheckError):
        # the arrow path lives in the (1, 2) block, not (1, 1)
        hg.LambdaMorphism(alg, (1,), (1,), [alg.coords[(1, (0,))]])


# ---------------------------------------------------------------------------
# lifting block morphisms back to labels


@pytest.mark.parametrize("t", ["A2", "A3"])
def test_lift_inverts_phi_on_labels(t):
    q = dy.build_quiver(t)
    for lab in mc.mpr_indecomposables(q):
        lift = hg.lift_morphism(hg.phi_image(lab))
        assert [str(x) for x in lift.labels] == [str(lab)]
        assert lift.unresolved == ()


def test_simple_module_lifts_to_a_conflation():
    q = dy.build_quiver("A2")
    alg = alg_for("A2")
    # presentation of the vertex-1 simple: projective cover with radical kernel
    f = hg.LambdaMorphism(alg, (2,), (1,), [alg.coords[(2, (1,))]])
    lift = hg.lift_morphism(f)
    assert lift.labels == ()
    assert len(lift.unresolved) == 1
    conf = lift.unresolved[0]
    assert [str(x) for x in conf.sub] == ["M(P1)"]
    assert [str(x) for x in conf.quot] == ["E(2)"]
    # and the realization reproduces the morphism up to isomorphism
    assert hg.is_isomorphic(f, hg.realize_lift(q, lift))


def test_realize_round_trips_direct_sums():
    q = dy.build_quiver("A2")
    alg = alg_for("A2")
    labs = list(mc.mpr_indecomposables(q))
    f = hg.direct_sum(alg, [hg.phi_image(l) for l in labs])
    g = hg.realize_lift(q, hg.lift_morphism(f))
    assert hg.is_isomorphic(f, g)


def test_split_summands_recovers_pieces():
    alg = alg_for("A2")
    imgs = a2_images()
    f1 = imgs["M(P1)"][1]
    f2 = imgs["M(t-1P1)"][1]
    parts = hg.split_summands(hg.direct_sum(alg, [f1, f2]))
    assert len(parts) == 2
    hits = sorted(
        (hg.is_isomorphic(p, f1), hg.is_isomorphic(p, f2)) for p in parts
    )
    assert hits == [(False, True), (True, False)]


def test_strip_identity_summands():
    alg = alg_for("A2")
    imgs = a2_images()
    s = hg.direct_sum(alg, [imgs["M(P1)"][1], imgs["Z(1)"][1]])
    reduced, removed = hg.strip_identity_summands(s)
    assert removed == (1,)
    assert reduced.p1 == () and reduced.p0 == (1,)


def test_lift_guard_outside_small_rank():
    algd = alg_for("D4")
    f = hg.LambdaMorphism(algd, (), (1,), [])
    with pytest.raises(GuardError):
        hg.lift_morphism(f)
