"""Longest common prefix, character access and lexicographic order."""

from enum import IntEnum
from functools import total_ordering

from .cursor import TAG_L, TOP, Cursor, c_leaf_at
from .grammar import LEFT

LESS, EQUAL, GREATER = -1, 0, 1


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _prefix_cursor(g, s, l):
    """Cursor at level l on the leftmost path of the tree of s."""
    root = (s, TOP, 0, None)
    u = g.descend(s, l, LEFT)
    return Cursor(g, root if u == s else (u, TAG_L, 0, root), l)


def lcp(g, s1, s2, check=False):
    """Length of the longest common prefix of str(s1) and str(s2).

    Walks both uncompressed trees top-down, one level at a time, skipping
    over the common blocks of equal siblings.  Levels where both cursors sit
    on unary copies of different signatures cannot change anything and are
    jumped over.
    """
    if s1 == s2:
        return g.length[s1]
    lv = g.level
    i = min(lv[s1], lv[s2])
    p1 = _prefix_cursor(g, s1, i)
    p2 = _prefix_cursor(g, s2, i)
    while True:
        if p1.sig == p2.sig:
            k = min(p1.rext(), p2.rext()) + 1
            p1 = p1.rskip(k)
            p2 = p2.rskip(k)
            if p1 is None or p2 is None:
                return min(g.length[s1], g.length[s2])
        if check:
            assert p1.offset == p2.offset
        if i == 0:
            return p1.offset
        p1 = p1.child(1)
        p2 = p2.child(1)
        i -= 1
        if p1.sig != p2.sig:
            m = max(lv[p1.sig], lv[p2.sig])
            if m < i:
                i = m
                p1 = Cursor(g, p1.node, m)
                p2 = Cursor(g, p2.node, m)


def char_at(g, s, i):
    """The i-th character (1-based) of str(s), as a string of length one."""
    return chr(g.left[c_leaf_at(g, s, i)[0]])


def _code_at(g, s, i):
    return g.left[c_leaf_at(g, s, i)[0]]


def compare(g, s1, s2):
    if s1 == s2:
        return EQUAL
    n1, n2 = g.length[s1], g.length[s2]
    k = lcp(g, s1, s2)
    if k == n1:
        return LESS
    if k == n2:
        return GREATER
    return LESS if _code_at(g, s1, k + 1) < _code_at(g, s2, k + 1) else GREATER


def is_prefix(g, p, w):
    return g.length[p] <= g.length[w] and lcp(g, p, w) == g.length[p]


def compare_keys(g, a, za, b, zb):
    """Compare str(a)·Z^za with str(b)·Z^zb where Z exceeds every letter."""
    if a == b:
        return (za > zb) - (za < zb)
    n1, n2 = g.length[a], g.length[b]
    k = lcp(g, a, b)
    if k == n1:
        return GREATER if za else LESS
    if k == n2:
        return LESS if zb else GREATER
    return LESS if _code_at(g, a, k + 1) < _code_at(g, b, k + 1) else GREATER


@total_ordering
class OrderedKey:
    """A string coordinate, optionally followed by the sentinel letter Z."""

    __slots__ = ("g", "sig", "sentinel")

    def __init__(self, g, sig, sentinel=False):
        self.g = g
        self.sig = sig
        self.sentinel = bool(sentinel)

    def cmp(self, other):
        return compare_keys(self.g, self.sig, self.sentinel, other.sig, other.sentinel)

    def __eq__(self, other):
        return self.sig == other.sig and self.sentinel == other.sentinel

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __hash__(self):
        return hash((self.sig, self.sentinel))

    def __repr__(self):
        return "OrderedKey(%d%s)" % (self.sig, "+Z" if self.sentinel else "")
