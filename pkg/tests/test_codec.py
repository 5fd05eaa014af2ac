"""Tree-word and lattice-word codecs."""

import pytest

from chainpart.codec import (
    TreeLanguage,
    TreeWord,
    check_hypercode,
    check_infix_code,
    is_valid_lattice_word,
    lattice_decode,
    lattice_encode,
    lattice_language,
    subsequence,
    tree_decode,
    tree_encode,
)
from chainpart.core import MalformedWordError, Partition, make_system, validate
from chainpart.enumeration import ResidueEnumerator


def tw(text, sys_):
    return TreeWord.parse(text, sys_)


def test_tree_decode_examples(sys23):
    assert tree_decode(tw("1332", sys23), sys23) == (19, validate([18, 1], sys23))
    assert tree_decode(tw("1112222", sys23), sys23) == (19, validate([16, 2, 1], sys23))
    assert tree_decode(tw("131122", sys23), sys23) == (19, validate([12, 6, 1], sys23))


def test_tree_encode_examples(sys23):
    assert tree_encode(validate([16, 2, 1], sys23), sys23).render(sys23) == "1112222"
    assert tree_encode(validate([12, 4, 2, 1], sys23), sys23).render(sys23) == "1112213"
    # the single-part partition of 1 is the tree leaf: its word is empty
    assert tree_encode(validate([1], sys23), sys23).render(sys23) == ""


def test_tree_word_set_omega19(sys23):
    words = {
        tree_encode(pt, sys23).render(sys23)
        for pt in ResidueEnumerator(sys23).omega(19)
    }
    assert words == {"1112222", "1112213", "1332", "131122"}


def test_tree_decode_rejects_chain_break(sys23):
    # replays to {6,2,1} then a +1 step would need the block 3+1 -> 4
    with pytest.raises(MalformedWordError):
        tree_decode(tw("11213", sys23), sys23)


def test_tree_decode_rejects_non_canonical(sys23):
    with pytest.raises(MalformedWordError):
        tree_decode(tw("21", sys23), sys23)  # replays to {4}, whose word is 22
    with pytest.raises(MalformedWordError):
        tree_decode(tw("1", sys23), sys23)  # replays to {2}, whose word is 2


def test_tree_requires_p2(sys35):
    with pytest.raises(MalformedWordError):
        tree_encode(validate([3], sys35), sys35)


def test_tree_word_rendering_big_q():
    sys2_11 = make_system(2, 11)
    pt = validate([11, 1], sys2_11)
    word = tree_encode(pt, sys2_11)
    assert word.render(sys2_11) == "1.11"
    assert TreeWord.parse("1.11", sys2_11) == word


def test_lattice_encode_examples(sys23):
    assert lattice_encode(Partition.from_pairs([(0, 0), (1, 1)])) == "303"
    assert lattice_encode(validate([12, 4, 2, 1], sys23)) == "1133"
    assert lattice_encode(validate([18, 1], sys23)) == "3203"


def test_lattice_decode_examples(sys23):
    assert lattice_decode("11003") == validate([16, 2, 1], sys23)
    assert lattice_decode("2223") == validate([27], sys23)
    assert lattice_decode("3013") == validate([12, 6, 1], sys23)


def test_lattice_word_syntax():
    assert is_valid_lattice_word("1333")
    assert not is_valid_lattice_word("023")  # forbidden factor 02
    assert not is_valid_lattice_word("123")  # forbidden factor 12
    assert not is_valid_lattice_word("120")  # does not end in 3
    assert not is_valid_lattice_word("")
    with pytest.raises(MalformedWordError):
        lattice_decode("123")


def test_roundtrips_small(sys23):
    en = ResidueEnumerator(sys23)
    for u in range(1, 400):
        for pt in en.omega(u):
            assert tree_decode(tree_encode(pt, sys23), sys23) == (u, pt)
            assert lattice_decode(lattice_encode(pt)) == pt


def test_tree_language_matches_encoded_sets(sys23):
    lang = TreeLanguage(sys23)
    en = ResidueEnumerator(sys23)
    for u in range(1, 400):
        got = set(lang.words(u))
        expected = {"".join(tree_encode(pt, sys23).letters) for pt in en.omega(u)}
        assert got == expected


@pytest.mark.parametrize("q", [5, 7, 9])
def test_tree_codec_other_odd_bases(q):
    sys_ = make_system(2, q)
    en = ResidueEnumerator(sys_)
    lang = TreeLanguage(sys_)
    for u in range(1, 250):
        members = en.omega(u)
        encoded = set()
        for pt in members:
            word = tree_encode(pt, sys_)
            assert tree_decode(word, sys_) == (u, pt)
            encoded.add("".join(word.letters))
        assert encoded == set(lang.words(u))


def test_code_properties_small(sys23):
    lang = TreeLanguage(sys23)
    en = ResidueEnumerator(sys23)
    for u in range(1, 300):
        assert check_hypercode(lang.words(u)) is None
        assert check_infix_code([lattice_encode(pt) for pt in en.omega(u)]) is None


def test_grammar_bijection_short_words():
    seen = set()
    for word in lattice_language(8):
        assert is_valid_lattice_word(word)
        pt = lattice_decode(word)
        assert lattice_encode(pt) == word
        seen.add(word)
    assert "3" in seen and "1333" in seen and "3203" in seen
    assert "123" not in seen and "023" not in seen


def test_subsequence_helper():
    assert subsequence("132", "1332")
    assert not subsequence("231", "1332")
