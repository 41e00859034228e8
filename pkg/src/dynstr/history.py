"""Searchable history of an edited text.

Version 1 is the empty text and every edit creates the next version.  Each
edit records the few anchored strings X|Y whose anchor is a place where
letters became adjacent, with the version number and the position right
after the anchor.  A pattern then first occurs wherever one of its splits
p1|p2 fits around such an anchor.
"""

import heapq
from dataclasses import dataclass

from .collection import Collection
from .range_index import RangeIndex


@dataclass(frozen=True)
class Insert:
    pos: int
    char: str


@dataclass(frozen=True)
class Delete:
    l: int
    r: int


@dataclass(frozen=True)
class Move:
    """Move block [l, r] into gap ``dest`` (the gap after position dest)."""
    l: int
    r: int
    dest: int


class History:
    def __init__(self, seed=0, word_bits=64, coll=None):
        self.coll = coll if coll is not None else Collection(seed, word_bits, mirror=True)
        if not self.coll.mirror:
            raise ValueError("history needs a collection in mirror mode")
        self.g = self.coll.g
        self.ri = RangeIndex(self.g, chronological=True)
        self.text = None            # (sig, reversed sig) of the current version, None if empty
        self.length = 0
        self.versions = [None]      # version j -> handle (None for the empty text)
        self.letters = {}           # character -> [(version, position)]
        self.edits = []
        self._next_key = 0

    @property
    def version(self):
        return len(self.versions)

    # -- mirrored string helpers ---------------------------------------

    def _char(self, c):
        s = self.coll.make_sig(c)
        return (s, s)

    def _sub(self, t, i, j):
        """Characters i..j of the current text, or None if the range is empty."""
        if i > j:
            return None
        n = self.length
        coll = self.coll
        return (coll.substring_sig(t[0], i, j), coll.substring_sig(t[1], n - j + 1, n - i + 1))

    def _cat(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        coll = self.coll
        return (coll.concat_sigs(a[0], b[0]), coll.concat_sigs(b[1], a[1]))

    def _len(self, a):
        return 0 if a is None else self.g.length[a[0]]

    def _anchor(self, x, y, delta):
        if x is None or y is None:
            return
        self.ri.insert(self._next_key, x[1], y[0], self.version + 1, delta)
        self._next_key += 1

    def _commit(self, t, edit):
        self.text = t
        self.length = self._len(t)
        if t is None:
            self.versions.append(None)
        else:
            self.coll._link(t[0], t[1])
            self.versions.append(self.coll._register(t[0]))
        self.edits.append(edit)
        return self.version

    # -- edits ---------------------------------------------------------

    def apply(self, edit):
        if isinstance(edit, Insert):
            return self.insert(edit.pos, edit.char)
        if isinstance(edit, Delete):
            return self.delete(edit.l, edit.r)
        if isinstance(edit, Move):
            return self.move(edit.l, edit.r, edit.dest)
        raise TypeError("unknown edit %r" % (edit,))

    def insert(self, pos, c):
        if len(c) != 1:
            raise ValueError("insert takes a single letter")
        if not 1 <= pos <= self.length + 1:
            raise IndexError("insert position %d outside 1..%d" % (pos, self.length + 1))
        t = self.text
        X = self._sub(t, 1, pos - 1)
        Y = self._sub(t, pos, self.length)
        cY = self._cat(self._char(c), Y)
        self._anchor(X, cY, pos)
        self._anchor(self._char(c), Y, pos + 1)
        self.letters.setdefault(c, []).append((self.version + 1, pos))
        return self._commit(self._cat(X, cY), Insert(pos, c))

    def delete(self, l, r):
        if not 1 <= l <= r <= self.length:
            raise IndexError("delete range (%d, %d) outside 1..%d" % (l, r, self.length))
        t = self.text
        X = self._sub(t, 1, l - 1)
        Y = self._sub(t, r + 1, self.length)
        self._anchor(X, Y, l)
        return self._commit(self._cat(X, Y), Delete(l, r))

    def move(self, l, r, dest):
        n = self.length
        if not 1 <= l <= r <= n:
            raise IndexError("move range (%d, %d) outside 1..%d" % (l, r, n))
        if not 0 <= dest <= n or l - 1 <= dest <= r:
            raise IndexError("move destination %d must be a gap outside [%d, %d]" % (dest, l - 1, r))
        t = self.text
        if dest < l:
            # X B A Y -> X A B Y, written below as X B' A' Y with B' = block
            X = self._sub(t, 1, dest)
            A = self._sub(t, dest + 1, l - 1)
            B = self._sub(t, l, r)
            Y = self._sub(t, r + 1, n)
        else:
            X = self._sub(t, 1, l - 1)
            A = self._sub(t, l, r)
            B = self._sub(t, r + 1, dest)
            Y = self._sub(t, dest + 1, n)
        # old text X A B Y, new text X B A Y
        XB = self._cat(X, B)
        AY = self._cat(A, Y)
        nx, nb, na = self._len(X), self._len(B), self._len(A)
        self._anchor(XB, AY, nx + nb + 1)
        self._anchor(X, self._cat(B, AY), nx + 1)
        self._anchor(self._cat(XB, A), Y, nx + nb + na + 1)
        return self._commit(self._cat(XB, AY), Move(l, r, dest))

    # -- queries -------------------------------------------------------

    def version_text(self, j):
        h = self.versions[j - 1]
        return "" if h is None else self.coll.string(h)

    def find(self, pattern, k=None):
        """Chronological list of (version, position) of distinct occurrences."""
        if not pattern:
            raise ValueError("empty pattern")
        if len(pattern) == 1:
            hits = self.letters.get(pattern, [])
            return list(hits if k is None else hits[:k])
        coll = self.coll
        m = len(pattern)
        p = coll.make_sig(pattern)
        pr = coll.make_sig(pattern[::-1])
        streams = []
        for L in range(1, m):
            x = coll.substring_sig(pr, m - L + 1, m)
            y = coll.substring_sig(p, L + 1, m)
            streams.append((L, self.ri.query_chrono(x, y)))
        heap = []
        for L, it in streams:
            self._advance(heap, L, it)
        out = []
        while heap and (k is None or len(out) < k):
            ts = heap[0][0]
            batch = set()
            while heap and heap[0][0] == ts:
                _, pos, L, it = heapq.heappop(heap)
                batch.add(pos)
                self._advance(heap, L, it)
            for pos in sorted(batch):
                out.append((ts, pos))
        return out if k is None else out[:k]

    def _advance(self, heap, L, it):
        for key in it:
            _, _, ts, delta = self.ri.get(key)
            heapq.heappush(heap, (ts, delta - L, L, it))
            return
