import json
import random

import pytest
from hypothesis import given, strategies as st

import oracles
from sawskel.errors import GroupMismatchError, InvolutionMismatchError, SpecError
from sawskel.groups import ALL_PRESETS, build_group, load_group_json, preset, preset_spec


def random_word(group, rng, max_len):
    return tuple(rng.randrange(group.degree) for _ in range(rng.randint(0, max_len)))


def words(group, max_len=8):
    return st.lists(st.integers(0, group.degree - 1), max_size=max_len).map(tuple)


# -- construction ------------------------------------------------------------

def test_z2_builds_with_four_letters():
    g = preset("z2")
    assert g.degree == 4
    assert g.alphabet.names == ["a", "b", "A", "B"]


def test_involution_mismatch_is_rejected():
    spec = preset_spec("z2")
    spec["images"]["A"] = {"matrix": [[1, 0], [0, 1]], "shift": [-2, 0]}
    with pytest.raises(InvolutionMismatchError):
        build_group(spec)


def test_identity_image_is_rejected():
    spec = preset_spec("z2")
    spec["images"]["a"] = spec["images"]["A"] = {"matrix": [[1, 0], [0, 1]], "shift": [0, 0]}
    with pytest.raises(SpecError):
        build_group(spec)


def test_false_relation_is_rejected():
    spec = preset_spec("z2")
    spec["relations"] = ["a a"]
    with pytest.raises(SpecError):
        build_group(spec)


def test_missing_keys_are_rejected():
    with pytest.raises(SpecError):
        build_group({"alphabet": [], "images": {}})
    with pytest.raises(SpecError):
        build_group([1, 2])


def test_s3_free_product_alphabet():
    g = preset("s3-star-z3")
    assert g.alphabet.names == ["s1", "s2", "t", "T"]
    assert g.alphabet.inverse == [0, 1, 3, 2]


def test_json_roundtrip(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(preset_spec("heisenberg")))
    assert load_group_json(str(path)).fingerprint == preset("heisenberg").fingerprint


def test_bad_json_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text("{nope")
    with pytest.raises(SpecError):
        load_group_json(str(path))


@pytest.mark.parametrize("name", ALL_PRESETS)
def test_every_preset_has_consistent_involution(name):
    g = preset(name)
    inv = g.alphabet.inverse
    assert all(inv[inv[s]] == s for s in range(g.degree))
    for s in range(g.degree):
        assert g.is_identity(g.generator(s) * g.generator(inv[s]))
        assert not g.generator(s).is_identity()


# -- evaluation --------------------------------------------------------------

def test_commutators():
    assert preset("z2").evaluate("a b A B").is_identity()
    assert preset("heisenberg").evaluate("a b A B C").is_identity()
    assert not preset("dihedral-ab").evaluate("a b a b").is_identity()


def test_inverse_notation():
    g = preset("z2")
    assert g.word("a^-1 b") == g.word("A b") == g.word("a⁻¹b")


def test_word_equalities():
    z2 = preset("z2")
    assert z2.element_equal(z2.evaluate("a b"), z2.evaluate("b a"))
    s3 = preset("s3-star-z3")
    assert not s3.element_equal(s3.evaluate("s1 t"), s3.evaluate("t s1"))


def test_random_inverse_products():
    rng = random.Random(7)
    for name in ALL_PRESETS:
        g = preset(name)
        for _ in range(50):
            x = g.evaluate(random_word(g, rng, 8))
            assert g.is_identity(g.multiply(x, g.inverse(x)))


def test_cross_group_multiplication_raises():
    with pytest.raises(GroupMismatchError):
        preset("z2").identity() * preset("heisenberg").identity()


def test_powers():
    g = preset("heisenberg")
    x = g.evaluate("a b")
    assert x ** 3 == x * x * x
    assert (x ** -2) * (x ** 2) == g.identity()


@pytest.mark.parametrize("name", ["z2", "heisenberg", "s3-star-z3", "a2-coxeter", "ladder-d8"])
def test_evaluation_is_a_homomorphism(name):
    g = preset(name)

    @given(words(g), words(g))
    def check(u, v):
        assert g.evaluate(u + v) == g.evaluate(u) * g.evaluate(v)

    check()


@given(st.lists(st.integers(0, 3), max_size=12), st.randoms())
def test_free_product_normal_form_is_bracketing_independent(word, rnd):
    g = preset("s3-star-z3")
    be = g.backend
    reps = [g.images[s] for s in word]
    while len(reps) > 1:
        i = rnd.randrange(len(reps) - 1)
        reps[i:i + 2] = [be.mul(reps[i], reps[i + 1])]
    got = reps[0] if reps else be.identity()
    assert got == g.evaluate_rep(word)


def test_affine_entries_do_not_wrap():
    g = preset("heisenberg")
    x = g.evaluate("a") ** 10**6 * g.evaluate("b") ** 10**6
    assert max(abs(v) for v in x.rep[1]) >= 10**12


# -- balls and norms ---------------------------------------------------------

def test_z2_balls():
    g = preset("z2")
    assert g.ball(1).shells == [1, 4]
    assert g.ball(2).growth[-1] == 13
    assert g.ball(8).growth == [2 * n * n + 2 * n + 1 for n in range(9)]


def test_infinite_dihedral_ball():
    b = preset("dihedral-ab").ball(3)
    assert b.growth[3] == 7
    assert b.shells[1:] == [2, 2, 2]


@pytest.mark.parametrize("name", ALL_PRESETS)
def test_ball_matches_independent_bfs(name):
    g = preset(name)
    ball = g.ball(4)
    dist = oracles.distances(g, 4)
    assert len(dist) == ball.size
    for rep, d in dist.items():
        assert ball.norm_of(rep) == d


@pytest.mark.parametrize("name", ALL_PRESETS)
def test_ball_invariants(name):
    ball = preset(name).ball(4)
    assert ball.shells[0] == 1
    assert [ball.growth[n] - (ball.growth[n - 1] if n else 0) for n in range(5)] == ball.shells
    nbr = ball.neighbors
    for v in range(1, ball.size):
        r = ball.norms[v]
        assert any(w >= 0 and ball.norms[w] == r - 1 for w in nbr[v])


def test_norms():
    g = preset("z2")
    x = g.evaluate("a a a b b")
    assert g.norm(g.identity(), 3) == 0
    assert g.norm(x, 10) == 5
    assert g.norm(x, 4) is None


@pytest.mark.parametrize("name", ["z2", "heisenberg", "s3-star-z3", "a2-coxeter"])
def test_norm_symmetric_under_inversion(name):
    g = preset(name)
    ball = g.ball(6 if g.degree <= 4 else 4)
    be = g.backend
    for rep in ball.elements:
        assert ball.norm_of(be.inv(rep)) == ball.norm_of(rep)


@pytest.mark.parametrize("name", ["z2", "heisenberg", "a2-coxeter"])
def test_triangle_inequality(name):
    g = preset(name)
    rng = random.Random(3)
    for _ in range(40):
        x, y, z = (g.evaluate(random_word(g, rng, 2)) for _ in range(3))
        dxz, dxy, dyz = g.distance(x, z, 5), g.distance(x, y, 5), g.distance(y, z, 5)
        assert dxz <= dxy + dyz


def test_a2_coxeter_relations():
    g = preset("a2-coxeter")
    for w in ("a a", "b b", "c c", "a b a b a b", "a c a c a c", "b c b c b c"):
        assert g.evaluate(w).is_identity()


# -- fingerprints ------------------------------------------------------------

def test_fingerprints_distinct_across_presets():
    fps = {preset(n).fingerprint for n in ALL_PRESETS}
    assert len(fps) == len(ALL_PRESETS)


def test_fingerprint_is_stable_under_key_order():
    spec = preset_spec("z2")
    shuffled = json.loads(json.dumps(spec, sort_keys=True))
    assert build_group(shuffled).fingerprint == preset("z2").fingerprint
