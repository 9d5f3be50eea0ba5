"""Tests for braid words: Weyl projection, canonical lifts, reduced-word
enumeration, the left-greedy normal form, the star involution, the class
lattice action, and labels for triangular extensions."""

import random

import numpy as np
import pytest

from quiverlab import braids as br
from quiverlab.errors import GuardError

W = br.BraidWord.from_ints
nf = br.garside_normal_form


def adjacency(dtype):
    adj = {i: set() for i in dtype.vertices}
    for (a, b) in dtype.edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def rewrite(word, adj, moves=8):
    """Random sequence of relation moves: free insertion/cancellation,
    braid moves on same-sign triples, and far commutations.  Every move
    preserves the group element."""
    letters = list(word.letters)
    for _ in range(moves):
        kind = random.choice(["ins", "del", "braid", "comm"])
        if kind == "ins" and letters:
            p = random.randrange(len(letters) + 1)
            i = random.choice(list(adj))
            s = random.choice([1, -1])
            letters[p:p] = [(i, s), (i, -s)]
        elif kind == "del":
            spots = [
                k
                for k in range(len(letters) - 1)
                if letters[k][0] == letters[k + 1][0]
                and letters[k][1] == -letters[k + 1][1]
            ]
            if spots:
                k = random.choice(spots)
                del letters[k : k + 2]
        elif kind == "braid":
            spots = [
                k
                for k in range(len(letters) - 2)
                if letters[k][1] == letters[k + 1][1] == letters[k + 2][1]
                and letters[k] == letters[k + 2]
                and letters[k + 1][0] in adj[letters[k][0]]
            ]
            if spots:
                k = random.choice(spots)
                i, s = letters[k]
                j, _ = letters[k + 1]
                letters[k : k + 3] = [(j, s), (i, s), (j, s)]
        else:
            spots = [
                k
                for k in range(len(letters) - 1)
                if letters[k][0] != letters[k + 1][0]
                and letters[k + 1][0] not in adj[letters[k][0]]
            ]
            if spots:
                k = random.choice(spots)
                letters[k], letters[k + 1] = letters[k + 1], letters[k]
    return br.BraidWord(word.dtype, tuple(letters))


def random_word(dtype, length, rng):
    verts = list(dtype.vertices)
    return br.BraidWord(
        dtype,
        tuple((rng.choice(verts), rng.choice([1, -1])) for _ in range(length)),
    )


# ---------------------------------------------------------------------------
# words and projection


def test_word_construction_guards():
    with pytest.raises(GuardError):
        W("A2", [3])
    with pytest.raises(GuardError):
        W("A2", [0])
    with pytest.raises(GuardError):
        W("A2", [1]) * W("A3", [1])


def test_inverse_cancels():
    w = W("A3", [1, -2, 3, 1])
    assert nf(w * w.inverse()) == nf(W("A3", []))
    assert br.braid_equal(w.inverse().inverse(), w)


def test_projection_kills_squares():
    assert br.project_to_weyl(W("A1", [1, 1])) == br.project_to_weyl(W("A1", []))
    # sign is invisible in the Weyl group
    assert br.project_to_weyl(W("A2", [-1])) == br.project_to_weyl(W("A2", [1]))


def test_canonical_lift_of_longest_element():
    w0 = br.project_to_weyl(W("A2", [1, 2, 1]))
    assert br.canonical_lift(w0).letters == ((1, 1), (2, 1), (1, 1))


def test_reduced_words_of_longest_element():
    w0 = br.project_to_weyl(W("A2", [1, 2, 1]))
    assert br.reduced_words(w0) == [(1, 2, 1), (2, 1, 2)]


def test_reduced_words_length_cap():
    w0 = br.project_to_weyl(br.garside_element("E6"))
    with pytest.raises(GuardError):
        br.reduced_words(w0)


def test_matsumoto_lifts():
    # every reduced word of a Weyl element lifts to the same braid
    rng = random.Random(5)
    for t in ("A2", "A3"):
        base = W(t, [])
        for _ in range(6):
            w = random_word(base.dtype, 6, rng)
            pos = br.BraidWord(base.dtype, tuple((i, 1) for (i, _) in w.letters))
            el = br.project_to_weyl(pos)
            lifts = [W(t, rw) for rw in br.reduced_words(el)]
            for u in lifts[1:]:
                assert br.braid_equal(lifts[0], u)


# ---------------------------------------------------------------------------
# normal form


def test_normal_form_fixtures():
    f = nf(W("A2", [1, 2, 1]))
    assert (f.infimum, f.factors) == (1, ())
    f = nf(W("A2", [1, -1]))
    assert (f.infimum, f.factors) == (0, ())
    f = nf(W("A2", [-1]))
    assert f.infimum == -1 and len(f.factors) == 1
    assert f.factors[0] == br.project_to_weyl(W("A2", [1, 2]))


def test_braid_relation_holds():
    assert br.braid_equal(W("A2", [1, 2, 1]), W("A2", [2, 1, 2]))
    assert not br.braid_equal(W("A2", [1, 2]), W("A2", [2, 1]))


def test_normal_form_reconstruction():
    # collapsing D^inf . factors back into a word reproduces the form
    rng = random.Random(17)
    for t in ("A2", "A3", "D4"):
        D = br.garside_element(t)
        for _ in range(8):
            w = random_word(D.dtype, 9, rng)
            form = nf(w)
            word = W(t, [])
            step = D if form.infimum >= 0 else D.inverse()
            for _ in range(abs(form.infimum)):
                word = word * step
            for f in form.factors:
                word = word * br.canonical_lift(f)
            assert nf(word) == form
            assert br.braid_equal(word, w)


def test_factors_are_proper_simples():
    D = br.garside_element("A3")
    delta = br.project_to_weyl(D)
    rng = random.Random(23)
    for _ in range(10):
        form = nf(random_word(D.dtype, 8, rng))
        for f in form.factors:
            assert br.canonical_lift(f).letters  # nontrivial
            assert f != delta  # full twists are absorbed into the power


def test_rewriting_equivalence():
    rng = random.Random(41)
    for t in ("A2", "A3", "D4"):
        base = W(t, [])
        adj = adjacency(base.dtype)
        for _ in range(25):
            w = random_word(base.dtype, rng.randrange(0, 10) or 1, rng)
            u = rewrite(w, adj, moves=10)
            assert nf(u) == nf(w)


def test_distinct_projections_have_distinct_forms():
    rng = random.Random(43)
    base = W("A3", [])
    seen = 0
    for _ in range(40):
        a = random_word(base.dtype, 6, rng)
        b = random_word(base.dtype, 6, rng)
        if br.project_to_weyl(a) != br.project_to_weyl(b):
            seen += 1
            assert nf(a) != nf(b)
    assert seen > 10


def test_garside_guard():
    with pytest.raises(GuardError):
        nf(W("E7", [1]))


# ---------------------------------------------------------------------------
# the star involution and the full twist


def test_star_letterwise_fixture():
    assert br.star_involution(W("A2", [1])).letters == ((2, 1),)
    assert br.star_involution(W("D4", [1, -3])).letters == ((1, 1), (3, -1))


def test_star_agrees_with_conjugation():
    rng = random.Random(29)
    for t in ("A2", "A3", "D4"):
        D = br.garside_element(t)
        for _ in range(10):
            w = random_word(D.dtype, 7, rng)
            assert br.braid_equal(
                br.star_involution(w), D.inverse() * w * D
            )


def test_full_twist_is_central():
    rng = random.Random(31)
    for t in ("A2", "A3"):
        D = br.garside_element(t)
        sq = D * D
        for _ in range(6):
            w = random_word(D.dtype, 7, rng)
            assert br.braid_equal(sq * w, w * sq)


def test_star_fixed_subgroup():
    D = br.garside_element("A2")
    assert not br.is_in_B_star(W("A2", [1]))
    assert br.is_in_B_star(D)
    assert br.is_in_B_star(W("A2", []))
    # closure under product and inverse on star-fixed samples
    u, v = D, D * D.inverse() * D
    assert br.is_in_B_star(u * v)
    assert br.is_in_B_star(u.inverse())
    # membership is star-invariant
    w = W("A2", [1, 2])
    assert br.is_in_B_star(w) == br.is_in_B_star(br.star_involution(w))


# ---------------------------------------------------------------------------
# the class lattice action


def test_k0_generator_fixture():
    assert br.k0_action(W("A2", [1])).tolist() == [[-1, 1], [0, 1]]


def test_k0_kills_cancelling_pairs():
    assert np.array_equal(br.k0_action(W("A2", [1, -1])), np.eye(2, dtype=np.int64))


def test_k0_is_a_homomorphism():
    rng = random.Random(37)
    base = W("A3", [])
    for _ in range(8):
        a = random_word(base.dtype, 5, rng)
        b = random_word(base.dtype, 5, rng)
        assert np.array_equal(
            br.k0_action(a * b), br.k0_action(a) @ br.k0_action(b)
        )


def test_k0_trivial_on_full_twist():
    for t in ("A2", "A3", "D4"):
        D = br.garside_element(t)
        n = len(D.dtype.vertices)
        assert np.array_equal(br.k0_action(D * D), np.eye(n, dtype=np.int64))


def test_k0_constant_on_equivalence_classes():
    rng = random.Random(39)
    base = W("A2", [])
    adj = adjacency(base.dtype)
    for _ in range(10):
        w = random_word(base.dtype, 6, rng)
        u = rewrite(w, adj)
        assert np.array_equal(br.k0_action(w), br.k0_action(u))


# ---------------------------------------------------------------------------
# silting labels


def test_triangular_extension_counts():
    assert len(br.triangular_extension(W("A3", []))) == 9
    assert len(br.triangular_extension(br.garside_element("A2"))) == 6


def test_triangular_extension_shape():
    gens = br.triangular_extension(W("A2", []))
    assert gens == tuple((side, v) for side in (-1, 0, 1) for v in (1, 2))


def test_triangular_extension_guard():
    with pytest.raises(GuardError):
        br.triangular_extension(W("A2", [1]))


def test_silting_label_normalizes():
    s = br.SiltingLabel.from_word(W("A2", [1, 2, 1]))
    t = br.SiltingLabel.from_word(W("A2", [2, 1, 2]))
    assert s == t
    assert s.dtype == t.dtype
