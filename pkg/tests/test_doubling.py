import random

import pytest

from geodouble.doubling import (
    PRIMED,
    UNPRIMED,
    Double,
    DoubleWord,
    NormalForm,
    random_double_word,
)
from geodouble.freegroups import concat, inverse_word, word_from_str

from oracles import leftward_normal_form, project_leftward


@pytest.fixture
def dbl():
    return Double.from_generators(["aa", "b", "abA"], 2)


def random_subgroup(rng, max_gens=4, max_len=6):
    rank = rng.choice([2, 3])
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        w = tuple(rng.choice([s for s in range(-rank, rank + 1) if s])
                  for _ in range(rng.randint(1, max_len)))
        gens.append(w)
    return Double.from_generators(gens, rank), rank


class TestDoubleWordParsing:
    def test_parse(self):
        w = DoubleWord.from_str("u:abA p:bb u:a")
        assert w.syllables == ((UNPRIMED, (1, 2, -1)), (PRIMED, (2, 2)), (UNPRIMED, (1,)))
        assert str(w) == "u:abA p:bb u:a"

    def test_parse_rejects_bad_side(self):
        with pytest.raises(ValueError):
            DoubleWord.from_str("x:ab")

    def test_empty_word(self):
        assert str(DoubleWord(())) == "1"


class TestNormalForm:
    def test_subgroup_element_has_no_syllables(self, dbl):
        nf = dbl.normal_form(DoubleWord.from_str("u:aa"))
        assert nf.syllable_count == 0
        assert nf.tail == word_from_str("aa")

    def test_primed_subgroup_element_same(self, dbl):
        # H is shared, so the primed copy of a subgroup word is the same element.
        nf_u = dbl.normal_form(DoubleWord.from_str("u:b"))
        nf_p = dbl.normal_form(DoubleWord.from_str("p:b"))
        assert nf_u == nf_p

    def test_single_nonsubgroup_syllable(self, dbl):
        nf = dbl.normal_form(DoubleWord.from_str("u:a"))
        assert nf.syllable_count == 1
        side, rep = nf.syllables[0]
        assert side == UNPRIMED
        # rep * tail reassembles the element and the tail lies in H
        assert concat(rep, nf.tail) == (1,)
        assert dbl.subgroup.contains(nf.tail)
        assert not dbl.subgroup.contains(rep)

    def test_empty_word_is_identity(self, dbl):
        nf = dbl.normal_form(DoubleWord(()))
        assert nf == NormalForm((), ())

    def test_alternating_sides(self, dbl):
        rng = random.Random(2)
        for _ in range(300):
            w = random_double_word(rng, 2, dbl.subgroup)
            nf = dbl.normal_form(w)
            sides = [s for s, _ in nf.syllables]
            assert all(a != b for a, b in zip(sides, sides[1:]))
            assert dbl.subgroup.contains(nf.tail)
            for _, word in nf.syllables:
                assert word and not dbl.subgroup.contains(word)

    def test_projection_preserved(self, dbl):
        # The fold onto one copy is a homomorphism, so it must agree on the
        # input and its normal form.
        rng = random.Random(3)
        for _ in range(300):
            w = random_double_word(rng, 2, dbl.subgroup)
            nf = dbl.normal_form(w)
            assert dbl.project(w) == dbl.project(dbl.nf_as_element(nf))

    def test_invariant_under_h_transfer(self, dbl):
        # Moving a subgroup element across a syllable boundary does not
        # change the element, so the normal form must not change either.
        rng = random.Random(4)
        hwords = [word_from_str(x) for x in ("aa", "b", "abA")]
        for _ in range(200):
            w = random_double_word(rng, 2, dbl.subgroup, max_syllables=4)
            if len(w.syllables) < 2:
                continue
            i = rng.randrange(len(w.syllables) - 1)
            h = rng.choice(hwords)
            if rng.random() < 0.5:
                h = inverse_word(h)
            syls = list(w.syllables)
            s1, w1 = syls[i]
            s2, w2 = syls[i + 1]
            syls[i] = (s1, concat(w1, h))
            syls[i + 1] = (s2, concat(inverse_word(h), w2))
            assert dbl.normal_form(DoubleWord(tuple(syls))) == dbl.normal_form(w)

    def test_same_side_merge(self, dbl):
        w1 = DoubleWord.from_str("u:a u:a")
        w2 = DoubleWord.from_str("u:aa")
        assert dbl.normal_form(w1) == dbl.normal_form(w2)

    def test_product_well_defined_on_elements(self, dbl):
        rng = random.Random(5)
        hwords = [word_from_str(x) for x in ("aa", "b", "abA")]
        for _ in range(100):
            w = random_double_word(rng, 2, dbl.subgroup, max_syllables=3)
            v = random_double_word(rng, 2, dbl.subgroup, max_syllables=3)
            # Rewrite w by an H-transfer, then multiply: same product NF.
            if len(w.syllables) >= 2:
                h = rng.choice(hwords)
                syls = list(w.syllables)
                syls[0] = (syls[0][0], concat(syls[0][1], h))
                syls[1] = (syls[1][0], concat(inverse_word(h), syls[1][1]))
                w2 = DoubleWord(tuple(syls))
            else:
                w2 = w
            prod1 = DoubleWord(w.syllables + v.syllables)
            prod2 = DoubleWord(w2.syllables + v.syllables)
            assert dbl.normal_form(prod1) == dbl.normal_form(prod2)


class TestSwap:
    def test_involution(self, dbl):
        rng = random.Random(6)
        for _ in range(100):
            w = random_double_word(rng, 2, dbl.subgroup)
            assert dbl.swap(dbl.swap(w)) == w

    def test_fixes_subgroup_elements(self, dbl):
        for text in ("u:aa", "u:b", "p:abA", "u:aab"):
            w = DoubleWord.from_str(text)
            if dbl.subgroup.contains(w.syllables[0][1]):
                assert dbl.normal_form(dbl.swap(w)) == dbl.normal_form(w)

    def test_single_letter_swaps_side(self, dbl):
        w = DoubleWord.from_str("u:a")
        assert dbl.swap(w) == DoubleWord.from_str("p:a")

    def test_normal_form_commutes_with_side_flip(self, dbl):
        rng = random.Random(7)
        for _ in range(300):
            w = random_double_word(rng, 2, dbl.subgroup)
            assert dbl.normal_form(dbl.swap(w)) == dbl.normal_form(w).side_flipped()

    def test_swap_is_homomorphism_on_normal_forms(self, dbl):
        rng = random.Random(8)
        for _ in range(100):
            w = random_double_word(rng, 2, dbl.subgroup, max_syllables=3)
            v = random_double_word(rng, 2, dbl.subgroup, max_syllables=3)
            prod = DoubleWord(w.syllables + v.syllables)
            swapped_prod = DoubleWord(dbl.swap(w).syllables + dbl.swap(v).syllables)
            assert dbl.normal_form(dbl.swap(prod)) == dbl.normal_form(swapped_prod)


class TestIsFixed:
    def test_subgroup_fixed(self, dbl):
        assert dbl.is_fixed(DoubleWord.from_str("u:aa"))
        assert dbl.is_fixed(DoubleWord.from_str("p:b"))

    def test_nonsubgroup_not_fixed(self, dbl):
        assert not dbl.is_fixed(DoubleWord.from_str("u:a"))
        assert not dbl.is_fixed(DoubleWord.from_str("u:a p:ab u:A"))

    def test_conjugate_of_subgroup_word_by_shared_element_is_fixed(self, dbl):
        # The middle syllable b lies in H, so the element collapses to
        # a b a^-1, a generator of H, and the swap fixes it.
        assert dbl.is_fixed(DoubleWord.from_str("u:a p:b u:A"))

    def test_fixed_iff_zero_syllables(self, dbl):
        rng = random.Random(9)
        for _ in range(500):
            w = random_double_word(rng, 2, dbl.subgroup,
                                   in_subgroup=rng.random() < 0.4)
            assert dbl.is_fixed(w) == (dbl.normal_form(w).syllable_count == 0)


class TestLeftwardOracle:
    def test_agrees_on_syllable_count_and_membership(self):
        rng = random.Random(10)
        for _ in range(20):
            dbl, rank = random_subgroup(rng)
            for _ in range(100):
                w = random_double_word(rng, rank, dbl.subgroup,
                                       in_subgroup=rng.random() < 0.3)
                nf = dbl.normal_form(w)
                head, syls = leftward_normal_form(dbl, w)
                assert len(syls) == nf.syllable_count
                assert (len(syls) == 0) == (nf.syllable_count == 0)
                assert dbl.subgroup.contains(head)
                assert project_leftward(dbl, head, syls) == dbl.project(w)

    def test_whole_group_subgroup_everything_fixed(self):
        dbl = Double.from_generators(["a", "b"], 2)
        rng = random.Random(12)
        for _ in range(50):
            w = random_double_word(rng, 2, dbl.subgroup)
            assert dbl.is_fixed(w)
            assert dbl.normal_form(w).syllable_count == 0

    def test_trivial_subgroup(self):
        dbl = Double.from_generators([], 2)
        assert not dbl.is_fixed(DoubleWord.from_str("u:a"))
        assert dbl.is_fixed(DoubleWord(()))
        nf = dbl.normal_form(DoubleWord.from_str("u:a p:a"))
        assert nf.syllable_count == 2
        assert nf.tail == ()
