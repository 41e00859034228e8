import random

import pytest
from hypothesis import given, settings, strategies as st

from dynstr.grammar import (LEFT, PAIR, POWER, RIGHT, TERMINAL, Grammar, LengthOverflow,
                            LevelOverflow)
from dynstr.shrink import compress_once, reference_sig, rle_once, shrink_layers

from conftest import random_text


def loop_pair_level(g, l, r):
    lv = max(g.level[l], g.level[r]) + 1
    lv += lv & 1
    while lv <= 2 * g.B:
        bit = 1 << (lv // 2 - 1)
        if not g.hbits[l] & bit and g.hbits[r] & bit:
            return lv
        lv += 2
    return None


def naive_first_last(g, s, l, side):
    while g.kind[s] != TERMINAL:
        c = g.left[s] if (g.kind[s] == POWER or side == LEFT) else g.right[s]
        if g.level[c] < l:
            break
        s = c
    return s


def naive_descend(g, s, l, side):
    while g.level[s] > l:
        s = g.left[s] if (g.kind[s] == POWER or side == LEFT) else g.right[s]
    return s


def build_some(g, rnd, count=40):
    sigs = []
    for _ in range(count):
        text = random_text(rnd, rnd.randint(1, 300), "abc")
        sigs.append(reference_sig(g, text))
    return sigs


def test_terminals_are_interned_once(grammar):
    a = grammar.intern_terminal(ord("a"))
    assert grammar.intern_terminal(ord("a")) == a
    assert grammar.kind[a] == TERMINAL
    assert grammar.level[a] == 0 and grammar.length[a] == 1


def test_pair_level_matches_bit_scan(grammar, rnd):
    sigs = build_some(grammar, rnd)
    for _ in range(2000):
        l, r = rnd.choice(sigs), rnd.choice(sigs)
        assert grammar.pair_level(l, r) == loop_pair_level(grammar, l, r)


def test_pair_and_power_records(grammar):
    a = grammar.intern_terminal(ord("a"))
    b = grammar.intern_terminal(ord("b"))
    p = grammar.intern_power(a, 3)
    assert grammar.kind[p] == POWER and grammar.length[p] == 3 and grammar.level[p] == 1
    assert grammar.intern_power(a, 3) == p
    assert grammar.children(p) == [a, a, a]
    lv = grammar.pair_level(p, b)
    if lv is not None:
        q = grammar.intern_pair(p, b)
        assert grammar.kind[q] == PAIR and grammar.level[q] == lv
        assert grammar.expand(q) == "aaab"
        assert grammar.degree(q) == 2 and grammar.child(q, 2) == b


def test_power_needs_two_copies(grammar):
    with pytest.raises(ValueError):
        grammar.intern_power(grammar.intern_terminal(97), 1)


def test_length_overflow():
    g = Grammar(seed=1, word_bits=8)
    a = g.intern_terminal(97)
    g.intern_power(a, 255)
    with pytest.raises(LengthOverflow):
        g.intern_power(a, 256)


def test_level_overflow_without_qualifying_bit():
    g = Grammar(seed=1, word_bits=4)
    ts = [g.intern_terminal(c) for c in range(32, 232)]
    # a left symbol whose bits are all ones can never start a pair
    full = [t for t in ts if g.hbits[t] == 15]
    assert full
    assert g.pair_level(full[0], ts[0]) is None
    with pytest.raises(LevelOverflow):
        g.intern_pair(full[0], ts[0])


def test_first_last_and_descend_against_walks(grammar, rnd):
    sigs = build_some(grammar, rnd)
    for s in sigs:
        for l in range(grammar.level[s] + 1):
            for side in (LEFT, RIGHT):
                assert grammar.first_last(s, l, side) == naive_first_last(grammar, s, l, side)
                assert grammar.descend(s, l, side) == naive_descend(grammar, s, l, side)


def test_expand_limit(grammar):
    s = reference_sig(grammar, "abcabc")
    assert grammar.expand(s) == "abcabc"
    with pytest.raises(ValueError):
        grammar.expand(s, limit=3)


def test_describe_forms(grammar):
    s = reference_sig(grammar, "aab")
    for x in range(len(grammar)):
        assert grammar.describe(x).startswith("%d -> " % x)
    assert grammar.expand(s) == "aab"


@given(st.text(alphabet="abc", min_size=1, max_size=200))
@settings(max_examples=60, deadline=None)
def test_reference_parse_is_canonical(text):
    g = Grammar(seed=3)
    a = reference_sig(g, text)
    b = reference_sig(g, text)
    assert a == b
    assert g.expand(a) == text
    layers = shrink_layers(g, text)
    for lv, layer in enumerate(layers):
        assert "".join(g.expand(s) for s, _, _ in layer) == text
        assert all(g.level[s] <= lv for s, _, _ in layer)


def test_compress_shrinks_repetition_free_strings():
    g = Grammar(seed=11)
    rnd = random.Random(0)
    sizes = []
    for _ in range(200):
        text = random_text(rnd, 300, "abcd")
        seq = rle_once(g, [g.intern_terminal(ord(c)) for c in text])
        sizes.append(len(compress_once(g, seq, 2)) / len(seq))
        # fresh bits per trial
        g = Grammar(seed=rnd.getrandbits(32))
    assert sum(sizes) / len(sizes) < 0.78
