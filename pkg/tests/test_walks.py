import random

import pytest
from hypothesis import given, strategies as st

import oracles
from sawskel.errors import HeightValidationError, NotABridgeError, SpecError, TorsionError
from sawskel.groups import ALL_PRESETS, preset
from sawskel.walks import (
    CERTIFIED_NO,
    CERTIFIED_YES,
    HeightFunction,
    algorithm_M,
    algorithm_M_reference,
    bridge_words,
    count_bridges,
    count_periodic,
    count_saps,
    count_saws,
    direct_word_problem,
    find_periodic_from_torsion_free,
    is_periodic_word,
    is_primitive,
    iterate_bridge,
    k_extendable,
    saw_words,
)

# frozen from the full-tree oracle (oracles.saw_counts / bridge_counts / sap_counts)
Z2_SAW = [1, 4, 12, 36, 100, 284, 780, 2172, 5916, 16268, 44100, 120292, 324932]
Z2_BRIDGE_X = [1, 1, 3, 7, 17, 41, 101, 251, 631, 1591, 4029, 10235, 26083]
Z2_SAP = [0, 0, 0, 0, 8, 0, 24, 0, 112, 0, 560]


# -- self-avoiding walks -------------------------------------------------------

def test_z2_saw_counts():
    assert count_saws(preset("z2"), 12).counts == Z2_SAW


def test_z2_saw_counts_match_oracle():
    assert count_saws(preset("z2"), 7).counts == oracles.saw_counts(preset("z2"), 7)


def test_dihedral_saw_counts_are_two():
    c = count_saws(preset("dihedral-ab"), 20).counts
    assert c[0] == 1 and all(x == 2 for x in c[1:])


@pytest.mark.parametrize("name", ["z2", "heisenberg", "a2-coxeter", "s3-star-z3", "ladder"])
def test_saw_submultiplicative(name):
    c = count_saws(preset(name), 10).counts
    for n in range(1, 10):
        for m in range(1, 11 - n):
            assert c[n + m] <= c[n] * c[m]


def test_records_shape():
    rec = count_saws(preset("z2"), 2).records()
    assert rec[2] == {"kind": "saw", "n": 2, "count": 12, "certified": True}


def test_negative_length_rejected():
    with pytest.raises(SpecError):
        count_saws(preset("z2"), -1)


# -- polygons ------------------------------------------------------------------

def test_z2_sap_counts():
    assert count_saps(preset("z2"), 10).counts == Z2_SAP


def test_free_group_has_no_polygons():
    assert not any(count_saps(preset("free(2)"), 12).counts)


def test_s3_polygon_lengths():
    rho = count_saps(preset("s3-star-z3"), 8).counts
    assert [n for n, r in enumerate(rho) if r] == [3, 6]
    # t^3, T^3 and the two orientations of (s1 s2)^3
    assert rho[3] == 2 and rho[6] == 2


@pytest.mark.parametrize("name", ["z2", "a2-coxeter", "ladder", "heisenberg"])
def test_polygons_are_rotation_closed(name):
    g = preset(name)
    ball = g.ball(8)
    n = 6
    polys = set()
    for w in saw_words(g, n - 1):
        for s in range(g.degree):
            full = w + (s,)
            if g.evaluate_rep(full) == g.backend.identity():
                polys.add(full)
    assert len(polys) == count_saps(g, n).counts[n]
    for p in polys:
        for i in range(n):
            assert p[i:] + p[:i] in polys


# -- bridges ---------------------------------------------------------------------

def test_z2_bridges():
    assert count_bridges(preset("z2"), 12, "linear:1,0").counts == Z2_BRIDGE_X


def test_z2_bridges_match_oracle():
    g = preset("z2")
    assert count_bridges(g, 7, "linear:1,0").counts == oracles.bridge_counts(g, 7, lambda rep: rep[1][0])


def test_bridges_of_length_two():
    g = preset("z2")
    assert set(bridge_words(g, 2, "linear:1,0")) == {g.word(w) for w in ("a a", "a b", "a B")}


def test_bridge_supermultiplicative():
    b = count_bridges(preset("z2"), 12, "linear:1,0").counts
    for n in range(1, 12):
        for m in range(1, 13 - n):
            assert b[n] * b[m] <= b[n + m]


def test_increment_heights_agree_with_linear():
    g = preset("z2")
    a = count_bridges(g, 8, "linear:1,0").counts
    b = count_bridges(g, 8, "increments:a=1,A=-1,b=0,B=0").counts
    assert a == b


def test_heisenberg_height_by_increments():
    g = preset("heisenberg")
    b = count_bridges(g, 6, "increments:a=0,A=0,b=1,B=-1,c=0,C=0").counts
    assert b[1] == 1 and all(x > 0 for x in b)


def test_height_validation_rejects_non_invariant():
    # c is a commutator, so any invariant height vanishes on it
    g = preset("heisenberg")
    with pytest.raises(HeightValidationError):
        count_bridges(g, 4, "increments:a=0,A=0,b=1,B=-1,c=1,C=-1")


def test_height_validation_needs_both_directions():
    with pytest.raises(HeightValidationError):
        count_bridges(preset("z2"), 3, "increments:a=0,A=0,b=0,B=0")


def test_height_of_identity_is_zero():
    h = HeightFunction(preset("z2"), "linear:1,0")
    assert h.word_heights(()) == [0]


# -- periodic words ----------------------------------------------------------------

def test_basic_periodicity():
    g = preset("z2")
    assert is_periodic_word(g, "a").status == CERTIFIED_YES
    assert is_periodic_word(g, "a b A B").status == CERTIFIED_NO
    assert is_periodic_word(g, "a b").status == CERTIFIED_YES
    assert is_periodic_word(g, "a b B").status == CERTIFIED_NO


def test_heisenberg_commutator_is_periodic():
    g = preset("heisenberg")
    w = g.word("a b A B")  # equals c, which is central
    cert = is_periodic_word(g, w)
    assert cert.status == CERTIFIED_YES
    # explicit check of g^m against D
    be = g.backend
    reps = g.prefix_reps(w)[:-1]
    d = {be.mul(p, be.inv(q)) for p in reps for q in reps}
    x = be.identity()
    step = g.evaluate_rep(w)
    for _ in range(100):
        x = be.mul(x, step)
        assert x not in d


def test_periodic_counts_dihedral():
    e = count_periodic(preset("dihedral-ab"), 20)
    assert e.counts[2] == 2
    assert sum(e.counts) == 2
    assert all(e.certified)
    every = count_periodic(preset("dihedral-ab"), 8, primitive=False).counts
    assert every == [0, 0, 2, 0, 2, 0, 2, 0, 2]


def test_primitive_words():
    assert is_primitive((0, 1)) and is_primitive((0, 0, 1))
    assert not is_primitive((0, 1, 0, 1)) and not is_primitive((2, 2, 2)) and not is_primitive(())


def test_periodic_bounded_by_saw_counts():
    g = preset("z2")
    e = count_periodic(g, 8).counts
    c = count_saws(g, 8).counts
    assert e[1] == 4
    assert all(x <= y for x, y in zip(e[1:], c[1:]))


@pytest.mark.parametrize("name", ALL_PRESETS)
def test_periodic_verdicts_match_brute_force(name):
    g = preset(name)
    be = g.backend
    for w in saw_words(g, 3):
        cert = is_periodic_word(g, w)
        assert cert.certified
        # repeat w enough times and look for a self-intersection
        reps = [be.identity()]
        for s in w * 12:
            reps.append(be.mul(reps[-1], g.images[s]))
        brute = len(set(reps)) == len(reps)
        if cert.status == CERTIFIED_YES:
            assert brute
        elif len(set(reps)) != len(reps):
            pass
        else:
            pytest.fail(f"{name}: certified-no without a visible collision for {w}")


def test_bounded_mode_finds_collisions_only():
    g = preset("z2")
    assert is_periodic_word(g, "a b A B", mode="bounded").status == CERTIFIED_NO
    assert not is_periodic_word(g, "a", mode="bounded").certified


# -- extendability -------------------------------------------------------------------

def test_short_saws_are_one_extendable():
    g = preset("z2")
    for n in range(0, 7):
        for w in saw_words(g, n):
            assert k_extendable(g, w, 1)


def test_spiral_trap():
    g = preset("z2")
    w = g.word("a^-1 a^-1 b b a a a a a b^-1 b^-1 a^-1 a^-1 b")
    assert k_extendable(g, w, 1)
    failing = oracles.first_failing_k(g, w, 6)
    assert failing == 3
    assert k_extendable(g, w, failing - 1)
    assert not k_extendable(g, w, failing)


@pytest.mark.parametrize("name", ALL_PRESETS)
def test_empty_word_extendable(name):
    g = preset(name)
    c = count_saws(g, 6).counts
    for k in range(4):
        if c[2 * k] > 0:
            assert k_extendable(g, (), k)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=5), st.integers(0, 3))
def test_k_extendable_matches_oracle(word, k):
    g = preset("z2")
    if not g.is_saw(word):
        return
    failing = oracles.first_failing_k(g, word, k)
    assert k_extendable(g, word, k) == (failing is None)


# -- bridge iteration and torsion-free elements ----------------------------------------

def test_iterate_bridge():
    g = preset("z2")
    assert iterate_bridge(g, "a", "linear:1,0").status == CERTIFIED_YES
    assert iterate_bridge(g, "a b a", "linear:1,0").status == CERTIFIED_YES
    with pytest.raises(NotABridgeError):
        iterate_bridge(g, "b a", "linear:1,0")


def test_torsion_free_examples():
    g = preset("z2")
    w, k, cert = find_periodic_from_torsion_free(g, "a", 4)
    assert w == g.word("a") and k == 1 and cert.status == CERTIFIED_YES
    w, k, cert = find_periodic_from_torsion_free(g, "a a b b", 4)
    assert len(w) == 4 and k == 1 and cert.status == CERTIFIED_YES
    h = preset("heisenberg")
    w, k, cert = find_periodic_from_torsion_free(h, "a b A B", 3)
    assert k == 1 and len(w) == 1 and cert.status == CERTIFIED_YES


def test_torsion_is_rejected():
    with pytest.raises(TorsionError):
        find_periodic_from_torsion_free(preset("s3-star-z3"), "t", 5)


# -- word problem ----------------------------------------------------------------

@pytest.mark.parametrize("name,n", [("z2", 6), ("dihedral-ab", 8), ("s3-star-z3", 6), ("a2-coxeter", 6), ("ladder", 6)])
def test_algorithm_M_matches_direct(name, n):
    g = preset(name)
    assert algorithm_M(g, n) == oracles.trivial_words(g, n)


def test_algorithm_M_small_z2():
    g = preset("z2")
    assert algorithm_M(g, 2) == {g.word(w) for w in ("a A", "A a", "b B", "B b")}


def test_reference_transcription_agrees():
    for name in ("z2", "dihedral-ab"):
        g = preset(name)
        assert algorithm_M_reference(g, 4) == algorithm_M(g, 4)


def test_direct_word_problem_agrees_with_oracle():
    g = preset("heisenberg")
    assert direct_word_problem(g, 6) == oracles.trivial_words(g, 6)
