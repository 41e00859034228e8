"""Append-only signature store.

Every symbol that ever appears in a parse is interned here exactly once and
receives a dense integer signature.  Records are never modified after they
are written, so signatures handed out to readers stay valid forever.
"""

import random

TERMINAL = 0
PAIR = 1
POWER = 2

LEFT = 0
RIGHT = 1


class Failure(Exception):
    """An update gave up; the instance must be restarted to continue."""

    reason = "failure"

    def __init__(self, message=""):
        super().__init__(message or self.reason)


class LevelOverflow(Failure):
    reason = "level-overflow"


class LengthOverflow(Failure):
    reason = "length-overflow"


class DepthGuard(Failure):
    reason = "depth-guard"


class Grammar:
    """Interning store for terminal, pair and power signatures.

    Attributes are kept in parallel lists indexed by signature, which is
    considerably faster in CPython than one object per record.
    """

    def __init__(self, seed=0, word_bits=64):
        self.seed = seed
        self.B = word_bits
        self._rng = random.Random(seed)
        self.kind = []
        self.left = []      # terminal: character; pair: left sig; power: base
        self.right = []     # pair: right sig; power: multiplicity
        self.length = []
        self.level = []
        self.hbits = []
        # forest F (leftmost descent) and its mirror (rightmost descent)
        self._mask = ([], [])
        self._jump = ([], [])
        self.term_map = {}
        self.pair_map = {}
        self.power_map = {}

    def __len__(self):
        return len(self.kind)

    # -- interning -----------------------------------------------------

    def _append(self, kind, a, b, length, level, fparents):
        if length >= 1 << self.B:
            raise LengthOverflow("length %d does not fit in %d bits" % (length, self.B))
        s = len(self.kind)
        self.kind.append(kind)
        self.left.append(a)
        self.right.append(b)
        self.length.append(length)
        self.level.append(level)
        self.hbits.append(self._rng.getrandbits(self.B))
        for side in (LEFT, RIGHT):
            p = fparents[side]
            masks, jumps = self._mask[side], self._jump[side]
            if p is None:
                masks.append(1 << level)
                jumps.append(())
                continue
            masks.append(masks[p] | (1 << level))
            up = [p]
            i = 0
            while i < len(jumps[up[i]]):
                up.append(jumps[up[i]][i])
                i += 1
            jumps.append(tuple(up))
        return s

    def intern_terminal(self, c):
        s = self.term_map.get(c)
        if s is None:
            s = self._append(TERMINAL, c, 0, 1, 0, (None, None))
            self.term_map[c] = s
        return s

    def pair_level(self, l, r):
        """Level a pair (l, r) would get, or None if no bit up to B qualifies."""
        low = max(self.level[l], self.level[r]) >> 1
        mask = (~self.hbits[l] & self.hbits[r]) >> low
        if not mask:
            return None
        j = low + (mask & -mask).bit_length()
        if j > self.B:
            return None
        return 2 * j

    def intern_pair(self, l, r):
        key = (l, r)
        s = self.pair_map.get(key)
        if s is not None:
            return s
        level = self.pair_level(l, r)
        if level is None:
            raise LevelOverflow("no pair level <= %d for (%d, %d)" % (2 * self.B, l, r))
        s = self._append(PAIR, l, r, self.length[l] + self.length[r], level, (l, r))
        self.pair_map[key] = s
        return s

    def intern_power(self, base, k):
        if k < 2:
            raise ValueError("power multiplicity must be >= 2, got %d" % k)
        key = (base, k)
        s = self.power_map.get(key)
        if s is not None:
            return s
        level = self.level[base] + 1
        if level > 2 * self.B:
            raise LevelOverflow("power level %d exceeds %d" % (level, 2 * self.B))
        s = self._append(POWER, base, k, k * self.length[base], level, (base, base))
        self.power_map[key] = s
        return s

    # -- structure -----------------------------------------------------

    def degree(self, s):
        k = self.kind[s]
        if k == PAIR:
            return 2
        if k == POWER:
            return self.right[s]
        return 0

    def child(self, s, k):
        """Signature of the k-th child (1-based) of s in its parse tree."""
        if self.kind[s] == PAIR:
            return self.left[s] if k == 1 else self.right[s]
        return self.left[s]

    def children(self, s):
        kind = self.kind[s]
        if kind == PAIR:
            return [self.left[s], self.right[s]]
        if kind == POWER:
            return [self.left[s]] * self.right[s]
        return []

    def first_last(self, s, l, side=LEFT):
        """Highest F-ancestor of s (along leftmost or rightmost descent) with level >= l.

        Equivalently: the leftmost (rightmost) leaf of the parse tree of s cut
        below level l.
        """
        k = (self._mask[side][s] >> l).bit_count() - 1
        jumps = self._jump[side]
        i = 0
        while k:
            if k & 1:
                s = jumps[s][i]
            k >>= 1
            i += 1
        return s

    def descend(self, s, l, side=LEFT):
        """Topmost node on the leftmost (rightmost) path of s whose level is <= l."""
        if self.level[s] <= l:
            return s
        a = self.first_last(s, l + 1, side)
        if self.kind[a] == PAIR:
            return self.right[a] if side == RIGHT else self.left[a]
        return self.left[a]

    def expand(self, s, limit=None):
        """Materialize str(s).  Only meant for tests and small strings."""
        if limit is not None and self.length[s] > limit:
            raise ValueError("signature %d expands to %d > %d characters" % (s, self.length[s], limit))
        out = []
        stack = [s]
        kind, left, right = self.kind, self.left, self.right
        while stack:
            x = stack.pop()
            k = kind[x]
            if k == TERMINAL:
                out.append(chr(left[x]))
            elif k == PAIR:
                stack.append(right[x])
                stack.append(left[x])
            else:
                stack.extend([left[x]] * right[x])
        return "".join(out)

    def describe(self, s):
        k = self.kind[s]
        if k == TERMINAL:
            return "%d -> %r" % (s, chr(self.left[s]))
        if k == PAIR:
            return "%d -> (%d, %d)" % (s, self.left[s], self.right[s])
        return "%d -> (%d ^ %d)" % (s, self.left[s], self.right[s])
