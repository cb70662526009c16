from __future__ import annotations

import random
import re

import pytest

from eqr import codec, textcomp
from eqr.textcomp import Coding, Constant, Dictionary, DictRef, Entry
from tests.conftest import gen_text

TRIO = [
    "Wi-Fi activity detected",
    "Wi-Fi activity not detected",
    "Wi-Fi 802.11ax activity at 9600 Mbps",
]


def test_tokenize_words_and_separators():
    assert textcomp.tokenize("Wi-Fi activity detected") == [
        ("Wi-Fi", True),
        (" ", False),
        ("activity", True),
        (" ", False),
        ("detected", True),
    ]


def test_tokenize_empty():
    assert textcomp.tokenize("") == []


def test_tokenize_dotted_word():
    assert textcomp.tokenize("192.168.4.2") == [("192.168.4.2", True)]


def test_tokenize_concatenation_property():
    rng = random.Random(5)
    for _ in range(300):
        text = gen_text(rng)
        tokens = textcomp.tokenize(text)
        assert "".join(tok for tok, _ in tokens) == text
        # runs alternate between word and separator
        for (_, a), (_, b) in zip(tokens, tokens[1:]):
            assert a != b


def test_trio_dictionary():
    d = textcomp.build_dictionary(TRIO)
    assert [(e.word, e.count) for e in d.entries] == [
        ("Wi-Fi", 3),
        ("activity", 3),
        ("detected", 2),
    ]
    assert d.n_bits == 2


def test_unrepeated_words_excluded():
    assert textcomp.build_dictionary(["abc"]).entries == ()


def test_short_words_excluded():
    # "ab" repeats but is below the three-character threshold
    d = textcomp.build_dictionary(["ab ab wireless", "wireless ab"])
    assert d.entries == (Entry("wireless", 2),)


def test_ordering_by_count_then_first_appearance():
    d = textcomp.build_dictionary(
        ["bordeaux carnival bordeaux", "carnival alphabet", "alphabet bordeaux"]
    )
    assert [(e.word, e.count) for e in d.entries] == [
        ("bordeaux", 3),
        ("carnival", 2),
        ("alphabet", 2),
    ]


def test_wifi_dictionary_inventory(wifi_dictionary):
    # the literal selection rule yields 21 words / 112 characters on the
    # reference corpus (the acceptance window is 20 +/- 1)
    assert wifi_dictionary.n_words == 21
    assert sum(len(e.word) for e in wifi_dictionary.entries) == 112
    assert wifi_dictionary.n_bits == 5
    assert wifi_dictionary.entries[0] == Entry("Wi-Fi", 6)


def test_wifi_selection_soundness(wifi_program, wifi_dictionary):
    # recount with an independent scan over the raw corpus
    pattern = re.compile(r"[a-zA-Z0-9_.\-]+")
    counts: dict[str, int] = {}
    for text in wifi_program.strings:
        for token in pattern.findall(text):
            counts[token] = counts.get(token, 0) + 1
    for entry in wifi_dictionary.entries:
        assert len(entry.word) >= 3
        assert entry.count >= 2
        assert counts[entry.word] == entry.count


def test_dictionary_determinism(wifi_program):
    a = textcomp.build_dictionary(wifi_program.strings)
    b = textcomp.build_dictionary(list(wifi_program.strings))
    assert a == b


def test_n_bits_floor_single_entry():
    assert Dictionary((Entry("abc", 2),)).n_bits == 1


@pytest.mark.parametrize(
    "n_words,expected", [(1, 1), (2, 1), (3, 2), (4, 2), (5, 3), (21, 5), (32, 5), (33, 6)]
)
def test_n_bits_formula(n_words, expected):
    entries = tuple(Entry(f"w{i:03d}", 2) for i in range(n_words))
    assert Dictionary(entries).n_bits == expected


def test_segment_trio_example():
    d = textcomp.build_dictionary(TRIO)
    seg = textcomp.segment("Wi-Fi activity detected", d)
    assert seg.coding is Coding.ASCII7
    assert seg.segments == (
        DictRef(0), Constant(" "), DictRef(1), Constant(" "), DictRef(2)
    )


def test_segment_without_dictionary():
    seg = textcomp.segment("hello", textcomp.EMPTY_DICTIONARY)
    assert seg.segments == (Constant("hello"),)


def test_segment_partial_matches():
    d = textcomp.build_dictionary(TRIO)
    seg = textcomp.segment("Wi-Fi 802.11ax activity at 9600 Mbps", d)
    assert seg.segments == (
        DictRef(0), Constant(" 802.11ax "), DictRef(1), Constant(" at 9600 Mbps")
    )


def test_segment_never_splits_inside_tokens():
    # "activities" contains "activity" only as a prefix, not a whole token
    d = textcomp.build_dictionary(TRIO)
    seg = textcomp.segment("activities", d)
    assert seg.segments == (Constant("activities"),)


def test_reassembly_property():
    rng = random.Random(6)
    for _ in range(300):
        corpus = [gen_text(rng) for _ in range(rng.randint(1, 8))]
        d = textcomp.build_dictionary(corpus)
        for text in corpus + ["", "   ", "///"]:
            assert textcomp.segment(text, d).reassemble(d) == text


def test_segment_coding_choice():
    assert textcomp.segment("plain", textcomp.EMPTY_DICTIONARY).coding is Coding.ASCII7
    assert textcomp.segment("café", textcomp.EMPTY_DICTIONARY).coding is Coding.UTF8


def test_size_accounting_matches_serializer(wifi_program):
    # the arithmetic used for dictionary selection must agree with the
    # bits the serializer actually produces
    rng = random.Random(7)
    corpora = [list(wifi_program.strings)] + [
        [gen_text(rng) for _ in range(rng.randint(1, 10))] for _ in range(50)
    ]
    for corpus in corpora:
        d = textcomp.build_dictionary(corpus)
        for text in corpus:
            assert (
                textcomp.string_bits_plain(text)
                == codec.encode_string_plain(text).bit_length
            )
            if d.n_words:
                assert (
                    textcomp.string_bits_compressed(text, d)
                    == codec.encode_string_compressed(
                        textcomp.segment(text, d), d
                    ).bit_length
                )
        if d.n_words:
            assert textcomp.dictionary_bits(d) == codec.encode_dictionary(d).bit_length


def test_gain_filter_never_hurts(wifi_program):
    rng = random.Random(8)
    corpora = [list(wifi_program.strings)] + [
        [gen_text(rng) for _ in range(rng.randint(2, 10))] for _ in range(20)
    ]
    for corpus in corpora:
        plain = textcomp.corpus_bits(corpus, textcomp.EMPTY_DICTIONARY)
        filtered_dict = textcomp.build_dictionary(corpus, gain_filter=True)
        filtered = textcomp.corpus_bits(corpus, filtered_dict)
        unfiltered = textcomp.corpus_bits(corpus, textcomp.build_dictionary(corpus))
        assert filtered <= plain
        assert filtered <= unfiltered


def test_default_selection_matches_reference_count(wifi_program):
    # the gain filter is opt-in; the default rule must keep the reference
    # corpus at its documented word count
    assert textcomp.build_dictionary(wifi_program.strings).n_words == 21


def test_default_build_is_corpus_monotone():
    # a dictionary whose header outweighs its savings is dropped whole
    corpus = ["abc abc"]
    assert textcomp.build_dictionary(corpus) == textcomp.EMPTY_DICTIONARY
    rng = random.Random(9)
    for _ in range(200):
        corpus = [gen_text(rng) for _ in range(rng.randint(1, 8))]
        d = textcomp.build_dictionary(corpus)
        assert textcomp.corpus_bits(corpus, d) <= textcomp.corpus_bits(
            corpus, textcomp.EMPTY_DICTIONARY
        )
