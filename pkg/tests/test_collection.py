import random

import pytest
from hypothesis import given, settings, strategies as st

from dynstr import DepthGuard, Failure
from dynstr.collection import Collection, collapse
from dynstr.decompose import RleSeq
from dynstr.shrink import reference_sig


def test_make_string_matches_reference_parse():
    rnd = random.Random(1)
    c = Collection(seed=5)
    for _ in range(100):
        text = "".join(rnd.choice("abcd") for _ in range(rnd.randint(1, 400)))
        assert c.sig(c.make_string(text)) == reference_sig(c.g, text)


def test_equal_strings_share_a_handle():
    c = Collection()
    h = c.make_string("banana")
    a, b = c.split(h, 3)
    assert (c.string(a), c.string(b)) == ("ban", "ana")
    assert c.concat(a, b) == h
    assert c.make_string("ana") == b
    assert c.eq(c.make_string("banana"), h)
    assert len(c) == 3


def test_errors():
    c = Collection()
    h = c.make_string("ab")
    with pytest.raises(ValueError):
        c.make_string("")
    with pytest.raises(IndexError):
        c.split(h, 2)
    with pytest.raises(KeyError):
        c.concat(h, 99)
    with pytest.raises(ValueError):
        collapse(c.g, [])


def test_mirror_tracks_reversals():
    rnd = random.Random(2)
    c = Collection(seed=3, mirror=True)
    hs = [c.make_string("".join(rnd.choice("abc") for _ in range(rnd.randint(1, 30))))
          for _ in range(10)]
    for _ in range(200):
        if rnd.random() < 0.5:
            hs.append(c.concat(rnd.choice(hs), rnd.choice(hs)))
        else:
            h = rnd.choice(hs)
            if c.length(h) > 1:
                hs.extend(c.split(h, rnd.randint(1, c.length(h) - 1)))
    for h in hs:
        s = c.sig(h)
        assert c.g.expand(c.reverse_sig(s)) == c.string(h)[::-1]
        assert c.reverse_sig(c.reverse_sig(s)) == s


ops = st.lists(
    st.one_of(
        st.tuples(st.just("M"), st.text(alphabet="abcd", min_size=1, max_size=20)),
        st.tuples(st.just("C"), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6)),
        st.tuples(st.just("S"), st.integers(0, 10 ** 6), st.integers(1, 10 ** 6)),
    ),
    min_size=1, max_size=60)


@given(ops, st.integers(0, 2 ** 32))
@settings(max_examples=80, deadline=None)
def test_differential_against_string_map(script, seed):
    c = Collection(seed=seed)
    strings = []        # handle -> string
    for op in script:
        if op[0] == "M" or not strings:
            text = op[1] if op[0] == "M" else "a"
            h = c.make_string(text)
            new = [(h, text)]
        elif op[0] == "C":
            a, b = op[1] % len(strings), op[2] % len(strings)
            if len(strings[a]) + len(strings[b]) > 2000:
                continue
            new = [(c.concat(a, b), strings[a] + strings[b])]
        else:
            a = op[1] % len(strings)
            if len(strings[a]) < 2:
                continue
            k = 1 + op[2] % (len(strings[a]) - 1)
            x, y = c.split(a, k)
            new = [(x, strings[a][:k]), (y, strings[a][k:])]
        for h, text in new:
            if h == len(strings):
                strings.append(text)
            assert strings[h] == text
    assert len(set(strings)) == len(strings)
    for h, text in enumerate(strings):
        assert c.string(h) == text


def test_depth_guard_marks_the_instance_failed():
    c = Collection(seed=0)
    c.depth_guard = lambda length=0: 2
    with pytest.raises(DepthGuard):
        c.make_string("abcabcabba")
    assert c.failed
    with pytest.raises(Failure):
        c.make_string("a")


def test_collapse_of_single_run_is_a_power():
    c = Collection()
    a = c.g.intern_terminal(97)
    s = collapse(c.g, RleSeq([(a, 5)]))
    assert c.g.expand(s) == "aaaaa"


def script(rnd, steps, cap=4):
    """Random update script over {a, b} whose strings never exceed ``cap`` letters."""
    out = []
    lens = []
    while len(out) < steps:
        r = rnd.random()
        if r < 0.4 or len(lens) < 2:
            w = "".join(rnd.choice("ab") for _ in range(rnd.randint(1, 3)))
            out.append(("M", w))
            lens.append(len(w))
        elif r < 0.7:
            a, b = rnd.randrange(len(lens)), rnd.randrange(len(lens))
            if lens[a] + lens[b] <= cap:
                out.append(("C", a, b))
                lens.append(lens[a] + lens[b])
        else:
            a = rnd.randrange(len(lens))
            if lens[a] > 1:
                k = rnd.randint(1, lens[a] - 1)
                out.append(("S", a, k))
                lens += [k, lens[a] - k]
    return out


def run_script(c, steps):
    """Apply a script with auto-restart; returns the handle sequence."""
    hs = []
    for op in steps:
        if op[0] == "M":
            hs.append(c.with_restart("make_string", op[1]))
        elif op[0] == "C":
            hs.append(c.with_restart("concat", hs[op[1]], hs[op[2]]))
        else:
            hs.extend(c.with_restart("split", hs[op[1]], op[2]))
    return hs


def test_restart_replays_to_identical_handles():
    steps = script(random.Random(0), 300)
    ref = Collection(seed=0)
    wide = run_script(ref, steps)
    c = Collection(seed=0, word_bits=8)
    narrow = run_script(c, steps)
    assert c.restarts > 0
    assert narrow == wide
    assert [c.string(h) for h in narrow] == [ref.string(h) for h in wide]


def test_dump_log_format():
    c = Collection()
    h = c.make_string("abc")
    c.split(h, 1)
    c.concat(1, 2)
    assert c.dump_log().splitlines() == ["M abc", "S 0 1", "C 1 2"]


def test_restart_budget_is_finite():
    c = Collection(seed=0, word_bits=8, max_restarts=2)
    with pytest.raises(Failure):
        run_script(c, script(random.Random(1), 400, cap=16))
    assert c.failed
