import pytest

from dynstr.collection import Collection
from dynstr.slp import SLP, SLPError, fibonacci, slp_eq


def fib_lengths(n):
    # |F1| = |F2| = 1, |Fk| = |Fk-1| + |Fk-2|
    a, b = 1, 1
    out = [a, b]
    for _ in range(n - 2):
        a, b = b, a + b
        out.append(b)
    return out


def test_fibonacci_words_small():
    c = Collection()
    words = ["b", "a"]
    while len(words) < 12:
        words.append(words[-1] + words[-2])
    for n in range(1, 13):
        for split in (False, True):
            s = SLP.parse(fibonacci(n, split)).build(c)
            assert c.g.expand(s) == words[n - 1]


def test_lengths_follow_the_recurrence():
    want = fib_lengths(30)
    for split in (False, True):
        lens = SLP.parse(fibonacci(30, split)).lengths()
        assert lens["F30"] == want[-1]
        for name, n in lens.items():
            assert n == want[int(name[1:]) - 1]


@pytest.mark.parametrize("fold", ["left", "balanced"])
def test_equal_programs(fold):
    c = Collection(seed=2)
    a = SLP.parse(fibonacci(25))
    b = SLP.parse(fibonacci(25, split=True))
    assert slp_eq(c, a, b, fold, "left")
    assert c.g.length[a.build(c)] == fib_lengths(25)[-1]


def test_different_programs():
    c = Collection()
    ab = SLP.parse("#start S\nA -> 'a'\nB -> 'b'\nS -> A B\n")
    ba = SLP.parse("#start S\nA -> 'a'\nB -> 'b'\nS -> B A\n")
    assert not slp_eq(c, ab, ba)
    assert slp_eq(c, ab, ab)


def test_powers_by_doubling():
    c = Collection()
    p = SLP.parse("#start P\nA -> 'a'\nB -> 'b'\nX -> A B B\nP -> X ^ 1000\n")
    s = p.build(c)
    assert c.g.length[s] == 3000
    assert c.g.expand(s) == "abb" * 1000
    q = SLP.parse("#start Q\nA -> 'a'\nB -> 'b'\nX -> A B B\nY -> X ^ 10\nQ -> Y ^ 100\n")
    assert slp_eq(c, p, q)


def test_comments_and_blank_lines():
    text = "# a comment\n\n#start S\nS -> A A\nA -> 'x'\n"
    assert SLP.parse(text).lengths()["S"] == 2


@pytest.mark.parametrize("text", [
    "S -> 'a'\n",
    "#start S\nS -> A\n",
    "#start S\nS -> A\nA -> S\n",
    "#start S\nS -> 'a'\nS -> 'b'\n",
    "#start S\nS ->\n",
    "#start S\nS 'a'\n",
    "#start S\nS -> A ^ 0\nA -> 'a'\n",
    "#start S T\nS -> 'a'\n",
    "#start T\nS -> 'a'\n",
])
def test_malformed_programs(text):
    with pytest.raises(SLPError):
        SLP.parse(text)


def test_load_from_file(tmp_path):
    path = tmp_path / "f.slp"
    path.write_text(fibonacci(10))
    assert SLP.load(path).lengths()["F10"] == 55
