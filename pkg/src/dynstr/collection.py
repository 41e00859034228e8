"""The persistent string collection: collapse, make_string, concat, split."""

import math
import random

from .decompose import (LEFT_CI, RIGHT_CI, RleSeq, ci_decomposition, ci_range,
                        rle_concat)
from .grammar import DepthGuard, Failure, Grammar, LevelOverflow


class _Run:
    __slots__ = ("sig", "count", "prev", "next", "alive")

    def __init__(self, sig, count):
        self.sig = sig
        self.count = count
        self.prev = None
        self.next = None
        self.alive = True


def collapse(g, runs, max_level=None):
    """Signature of the string whose decomposition is ``runs``.

    Candidate rules are bucketed by level and applied in increasing level
    order.  Nodes are replaced (never edited) when a rule fires, so a rule
    is stale exactly when one of the nodes it refers to is dead.
    """
    runs = runs.runs if isinstance(runs, RleSeq) else list(runs)
    if not runs:
        raise ValueError("cannot collapse an empty decomposition")
    top = 2 * g.B
    if max_level is None or max_level > top:
        max_level = top
    if len(runs) == 1 and runs[0][1] == 1:
        return runs[0][0]

    level = g.level
    pair_level = g.pair_level
    buckets = [[] for _ in range(top + 2)]

    def add_run(node):
        if node.count > 1:
            buckets[level[node.sig] + 1].append((node, None))

    def add_adj(a, b):
        lv = pair_level(a.sig, b.sig)
        if lv is not None:
            buckets[lv].append((a, b))

    head = None
    prev = None
    for s, k in runs:
        if prev is not None and prev.sig == s:
            prev.count += k
            continue
        node = _Run(s, k)
        if prev is None:
            head = node
        else:
            prev.next = node
            node.prev = prev
        prev = node
    node = head
    while node is not None:
        add_run(node)
        if node.next is not None:
            add_adj(node, node.next)
        node = node.next
    if head.next is None and head.count == 1:
        return head.sig

    for lv in range(1, top + 1):
        bucket = buckets[lv]
        if not bucket:
            continue
        if lv > max_level:
            raise DepthGuard("depth exceeds guard %d" % max_level)
        for a, b in bucket:
            if not a.alive:
                continue
            if b is None:
                new = _Run(g.intern_power(a.sig, a.count), 1)
                left, right = a.prev, a.next
                a.alive = False
            else:
                if not b.alive:
                    continue
                assert a.count == 1 and b.count == 1, "pair rule over a run"
                new = _Run(g.intern_pair(a.sig, b.sig), 1)
                left, right = a.prev, b.next
                a.alive = b.alive = False
            # splice, merging with equal neighbours
            if left is not None and left.sig == new.sig:
                new.count += left.count
                left.alive = False
                left = left.prev
            if right is not None and right.sig == new.sig:
                new.count += right.count
                right.alive = False
                right = right.next
            new.prev = left
            new.next = right
            if left is None:
                head = new
            else:
                left.next = new
            if right is not None:
                right.prev = new
            add_run(new)
            if left is not None:
                add_adj(left, new)
            if right is not None:
                add_adj(new, right)
        buckets[lv] = None
        if head.next is None and head.count == 1:
            return head.sig
    raise LevelOverflow("decomposition did not collapse below level %d" % top)


class Collection:
    """Persistent collection of strings identified by dense handles.

    Equal strings always receive the same handle.  With ``mirror=True``
    the reversal of every string is maintained alongside it.
    """

    def __init__(self, seed=0, word_bits=64, c=4.0, mirror=False, max_restarts=16):
        self.seed = seed
        self.word_bits = word_bits
        self.c = c
        self.mirror = mirror
        self.max_restarts = max_restarts
        self.auto_restart = False
        self.log = []
        self.restarts = 0
        self._reset(seed)

    def _reset(self, seed):
        self.seed = seed
        self.g = Grammar(seed, self.word_bits)
        self.sigs = []          # handle -> signature
        self.handle_of = {}     # signature -> handle
        self.rev = {}           # signature -> signature of its reversal
        self.t = 0
        self.n = 0
        self.failed = False

    # -- bookkeeping ---------------------------------------------------

    def __len__(self):
        return len(self.sigs)

    def sig(self, h):
        try:
            return self.sigs[h]
        except (IndexError, TypeError):
            raise KeyError("unknown handle %r" % (h,)) from None

    def length(self, h):
        return self.g.length[self.sig(h)]

    def string(self, h, limit=None):
        return self.g.expand(self.sig(h), limit)

    def reverse_sig(self, s):
        return self.rev[s]

    def _register(self, s):
        h = self.handle_of.get(s)
        if h is None:
            h = len(self.sigs)
            self.sigs.append(s)
            self.handle_of[s] = h
            self.n += self.g.length[s]
        return h

    def depth_guard(self, length=0):
        """Largest depth tolerated for a new string of the given length."""
        t = max(self.t, 2)
        n = max(self.n + length, 2)
        return int(8 * (self.c * math.log(t) + math.log(n)))

    def _collapse(self, runs, length):
        return collapse(self.g, runs, self.depth_guard(length))

    # -- signature-level operations -----------------------------------
    #
    # These never touch handles.  Each counts towards the total input size
    # t used by the depth guard.

    def make_sig(self, text):
        if not text:
            raise ValueError("strings must be nonempty")
        g = self.g
        self.t += len(text)
        seq = RleSeq.from_symbols([g.intern_terminal(ord(ch)) for ch in text])
        return self._collapse(seq, len(text))

    def concat_sigs(self, s1, s2):
        g = self.g
        self.t += 1
        d = rle_concat(ci_decomposition(g, s1, RIGHT_CI), ci_decomposition(g, s2, LEFT_CI))
        return self._collapse(d, g.length[s1] + g.length[s2])

    def substring_sig(self, s, i, j):
        if i == 1 and j == self.g.length[s]:
            return s
        self.t += 1
        return self._collapse(ci_range(self.g, s, i, j), j - i + 1)

    def _mirror_make(self, s, text):
        if s not in self.rev:
            r = self.make_sig(text[::-1])
            self.rev[s] = r
            self.rev[r] = s

    def _link(self, s, r):
        self.rev[s] = r
        self.rev[r] = s

    # -- updates -------------------------------------------------------

    def _guarded(self, fn, entry):
        if self.failed:
            raise Failure("instance failed earlier; restart required")
        attempts = 0
        while True:
            try:
                result = fn()
            except Failure:
                self.failed = True
                if not self.auto_restart or attempts >= self.max_restarts:
                    raise
                attempts += 1
                self.restart()
                continue
            self.log.append(entry)
            return result

    def make_string(self, text):
        def run():
            s = self.make_sig(text)
            if self.mirror:
                self._mirror_make(s, text)
            return self._register(s)
        return self._guarded(run, ("M", text))

    def concat(self, h1, h2):
        self.sig(h1), self.sig(h2)

        def run():
            s1, s2 = self.sig(h1), self.sig(h2)
            s = self.concat_sigs(s1, s2)
            if self.mirror and s not in self.rev:
                self._link(s, self.concat_sigs(self.rev[s2], self.rev[s1]))
            return self._register(s)
        return self._guarded(run, ("C", h1, h2))

    def split(self, h, k):
        n = self.length(h)
        if not 1 <= k < n:
            raise IndexError("split position %d outside 1..%d" % (k, n - 1))

        def run():
            s = self.sig(h)
            a = self.substring_sig(s, 1, k)
            b = self.substring_sig(s, k + 1, n)
            if self.mirror:
                r = self.rev[s]
                if a not in self.rev:
                    self._link(a, self.substring_sig(r, n - k + 1, n))
                if b not in self.rev:
                    self._link(b, self.substring_sig(r, 1, n - k))
            return self._register(a), self._register(b)
        return self._guarded(run, ("S", h, k))

    def eq(self, h1, h2):
        return self.sig(h1) == self.sig(h2)

    # -- failure handling ----------------------------------------------

    def restart(self, seed=None):
        """Reinitialize with a fresh seed and replay the update log.

        Retries with further seeds until the replay itself succeeds or the
        retry budget is spent.
        """
        log = list(self.log)
        for _ in range(self.max_restarts):
            if seed is None:
                seed = random.Random(self.seed).getrandbits(64)
            self._reset(seed)
            self.log = []
            self.restarts += 1
            try:
                for entry in log:
                    self._replay(entry)
                return
            except Failure:
                seed = None
        self.failed = True
        raise Failure("restart budget exhausted")

    def _replay(self, entry):
        keep = self.auto_restart
        self.auto_restart = False
        try:
            op = entry[0]
            if op == "M":
                self.make_string(entry[1])
            elif op == "C":
                self.concat(entry[1], entry[2])
            else:
                self.split(entry[1], entry[2])
        finally:
            self.auto_restart = keep

    def with_restart(self, op, *args):
        """Run ``op`` (a method name or callable on this collection), restarting on failure."""
        fn = getattr(self, op) if isinstance(op, str) else (lambda *a: op(self, *a))
        keep = self.auto_restart
        self.auto_restart = True
        try:
            return fn(*args)
        finally:
            self.auto_restart = keep

    def dump_log(self):
        lines = []
        for e in self.log:
            if e[0] == "M":
                lines.append("M %s" % e[1])
            else:
                lines.append("%s %d %d" % e)
        return "\n".join(lines)
