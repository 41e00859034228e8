"""Run-length sequences of signatures and context-insensitive decompositions."""

from .cursor import TAG_L, TAG_R, TOP, Cursor, c_parent_sig, c_leaf_at
from .grammar import PAIR

FULL = "full"
LEFT_CI = "left"
RIGHT_CI = "right"


class RleSeq:
    """Maximal runs ``(sig, count)``.

    Backed by a Python list: decompositions have O(depth) runs, so the
    list copy on concatenation is cheaper in practice than pointer chasing.
    """

    __slots__ = ("runs",)

    def __init__(self, runs=()):
        self.runs = []
        for s, k in runs:
            self.append(s, k)

    def append(self, sig, count=1):
        if count < 1:
            raise ValueError("run count must be positive")
        runs = self.runs
        if runs and runs[-1][0] == sig:
            runs[-1] = (sig, runs[-1][1] + count)
        else:
            runs.append((sig, count))

    def extend(self, other):
        for s, k in other.runs if isinstance(other, RleSeq) else other:
            self.append(s, k)

    def __len__(self):
        return len(self.runs)

    def __iter__(self):
        return iter(self.runs)

    def __eq__(self, other):
        return isinstance(other, RleSeq) and self.runs == other.runs

    def __repr__(self):
        return "RleSeq(%r)" % (self.runs,)

    def total(self):
        return sum(k for _, k in self.runs)

    def expand(self):
        out = []
        for s, k in self.runs:
            out.extend([s] * k)
        return out

    @classmethod
    def from_symbols(cls, seq):
        r = cls()
        for s in seq:
            r.append(s)
        return r


def rle_concat(a, b):
    """Concatenate two sequences, merging the boundary runs; consumes both."""
    if not b.runs:
        return a
    out = a
    first = b.runs[0]
    out.append(first[0], first[1])
    out.runs.extend(b.runs[1:])
    b.runs = []
    return out


# -- layer-by-layer decomposition over uncompressed cursors ------------------
#
# A cursor here is the pair (node, level) of the Cursor class, unpacked for
# speed.  Two cursors at the same level are the same node iff their offsets
# coincide, since every level of the tree tiles the string.


def _is_pair_child(g, node, l, want_tag):
    """True if the node at level l is the left (TAG_L) / right (TAG_R) child of a pair."""
    tag = node[1]
    if tag != want_tag:
        return False
    ps = c_parent_sig(g, node)
    return g.level[ps] == l + 1 and g.kind[ps] == PAIR


def _layer(g, p, q, l, mode):
    """Decompose the range between cursors p, q (compressed nodes), starting at level l."""
    S = RleSeq()
    T = []
    while True:
        if p[2] == q[2]:
            S.append(p[0], 1)
            break
        pp = Cursor(g, p, l).parent()
        qp = Cursor(g, q, l).parent()
        if pp.node[2] == qp.node[2]:
            # same parent: final step
            ps, qs = p[0], q[0]
            if ps == qs:
                a = Cursor(g, p, l)
                b = Cursor(g, q, l)
                S.append(ps, b.index() - a.index() + 1)
            else:
                S.append(ps, 1)
                S.append(qs, 1)
            break
        p_end = q_start = None
        if mode == RIGHT_CI or _is_pair_child(g, p, l, TAG_L):
            p = pp.node
        else:
            k = Cursor(g, p, l).rext() + 1
            S.append(p[0], k)
            p_end = p[2] + k * g.length[p[0]]
        if mode == LEFT_CI or _is_pair_child(g, q, l, TAG_R):
            q = qp.node
        else:
            k = Cursor(g, q, l).lext() + 1
            T.append((q[0], k))
            q_start = q[2] - (k - 1) * g.length[q[0]]
        if p_end is not None and p_end == q_start:
            # the two emitted blocks meet: nothing is left in between
            break
        if p_end is not None:
            p = pp.right().node
        if q_start is not None:
            q = qp.left().node
        l += 1
    for s, k in reversed(T):
        S.append(s, k)
    return S


def ci_range(g, s, i, j, mode=FULL):
    """Context-insensitive decomposition of str(s)[i..j]."""
    n = g.length[s]
    if not 1 <= i <= j <= n:
        raise IndexError("range (%d, %d) outside 1..%d" % (i, j, n))
    return _layer(g, c_leaf_at(g, s, i), c_leaf_at(g, s, j), 0, mode)


def ci_decomposition(g, s, mode=FULL):
    c_begin = Cursor.begin(g, s).node
    c_end = Cursor.end(g, s).node
    return _layer(g, c_begin, c_end, 0, mode)


__all__ = ["RleSeq", "rle_concat", "ci_decomposition", "ci_range",
           "FULL", "LEFT_CI", "RIGHT_CI", "TOP", "TAG_L", "TAG_R"]
