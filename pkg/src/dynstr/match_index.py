"""Persistent pattern matching over an activatable subset of the collection.

Every distinct signature occurring in the parse tree of an active string
has one entry.  An entry of a nonterminal is also a point of the range
index: x is the reversal of the left part of its anchor, y the right part.
A pattern occurrence is found at its hook, the lowest node whose anchor it
straddles, and then lifted to every active string through the parent lists.
"""

from .decompose import ci_decomposition
from .grammar import PAIR, POWER
from .range_index import RangeIndex


def anchors_of(g, s):
    """(left length, right length) of the anchor of a nonterminal."""
    k = g.kind[s]
    if k == PAIR:
        return g.length[g.left[s]], g.length[g.right[s]]
    if k == POWER:
        n = g.length[g.left[s]]
        return n, (g.right[s] - 1) * n
    raise ValueError("terminals have no anchor")


def potential_anchors(g, p):
    """Candidate lengths of the left part of the main anchor of str(p)."""
    runs = ci_decomposition(g, p).runs
    out = {g.length[runs[0][0]]}
    total = 0
    for s, k in runs[:-1]:
        total += k * g.length[s]
        out.add(total)
    n = g.length[p]
    return sorted(x for x in out if 0 < x < n)


def anchored_occurrences(g, s, left, right):
    """(count, first position, stride) of occurrences straddling the anchor of s.

    ``left``/``right`` are the lengths of the pattern parts before and after
    the anchor; the caller guarantees the parts match the anchor's sides.
    """
    ll, rl = anchors_of(g, s)
    if left > ll or right > rl:
        return 0, 0, 0
    if g.kind[s] == PAIR:
        return 1, 1 + ll - left, 0
    k = g.right[s]
    count = k - (-(-right // ll))
    if right == 0:
        count = min(count, k - 1)
    return count, 1 + ll - left, ll


class MatchIndex:
    """Index over the active strings of a mirrored collection."""

    def __init__(self, coll):
        if not coll.mirror:
            raise ValueError("pattern matching needs a collection in mirror mode")
        self.coll = coll
        self.g = coll.g
        self.ri = RangeIndex(self.g, chronological=False)
        self.pars = {}          # sig -> {parent sig: None}
        self.in_w = set()       # active root signatures
        self.last = {}          # last character code -> {sig: None}
        self._tail = {}         # (base, k) -> signature of str(base)^k

    def __len__(self):
        return len(self.pars)

    def is_active(self, h):
        return self.coll.sig(h) in self.in_w

    def active(self):
        return sorted(self.coll.handle_of[s] for s in self.in_w)

    # -- updates -------------------------------------------------------

    def activate(self, h):
        coll = self.coll
        g = self.g
        s = coll.sig(h)
        if s in self.in_w:
            return
        self.in_w.add(s)
        self.last.setdefault(g.left[coll.g.first_last(s, 0, 1)], {})[s] = None
        if s in self.pars:
            return
        self._insert(s)

    def _insert(self, root):
        coll = self.coll
        g = self.g
        rev_root = coll.rev[root]
        n = g.length[root]
        kind, left, right, length = g.kind, g.left, g.right, g.length
        pars = self.pars
        pars[root] = {}
        stack = [(root, 0)]
        while stack:
            s, off = stack.pop()
            k = kind[s]
            if k == PAIR:
                l, r = left[s], right[s]
                x = self._rev(l, rev_root, n, off)
                self.ri.insert(s, x, r)
                for c, o in ((l, off), (r, off + length[l])):
                    if c in pars:
                        pars[c][s] = None
                    else:
                        pars[c] = {s: None}
                        stack.append((c, o))
            elif k == POWER:
                b = left[s]
                lb = length[b]
                x = self._rev(b, rev_root, n, off)
                y = self._power_tail(s, root, off + lb)
                self.ri.insert(s, x, y)
                if b in pars:
                    pars[b][s] = None
                else:
                    pars[b] = {s: None}
                    stack.append((b, off))

    def _rev(self, s, rev_root, n, off):
        coll = self.coll
        r = coll.rev.get(s)
        if r is None:
            m = self.g.length[s]
            r = coll.substring_sig(rev_root, n - off - m + 1, n - off)
            coll._link(s, r)
        return r

    def _power_tail(self, s, root, start):
        g = self.g
        key = (g.left[s], g.right[s] - 1)
        y = self._tail.get(key)
        if y is None:
            if key[1] == 1:
                y = key[0]
            else:
                y = self.coll.substring_sig(root, start + 1, start + key[1] * g.length[key[0]])
            self._tail[key] = y
        return y

    def deactivate(self, h):
        coll = self.coll
        g = self.g
        s = coll.sig(h)
        if s not in self.in_w:
            return
        self.in_w.discard(s)
        c = g.left[g.first_last(s, 0, 1)]
        bucket = self.last[c]
        del bucket[s]
        if not bucket:
            del self.last[c]
        if not self.pars[s]:
            self._remove(s)

    def _remove(self, root):
        g = self.g
        pars = self.pars
        stack = [root]
        while stack:
            s = stack.pop()
            del pars[s]
            k = g.kind[s]
            if k == 0:
                continue
            self.ri.delete(s)
            kids = (g.left[s], g.right[s]) if k == PAIR else (g.left[s],)
            for c in kids:
                ps = pars[c]
                del ps[s]
                if not ps and c not in self.in_w:
                    stack.append(c)

    # -- queries -------------------------------------------------------

    def find(self, text, limit=None):
        """Occurrences (handle, position) of ``text`` in the active strings."""
        if not text:
            raise ValueError("empty pattern")
        coll = self.coll
        g = self.g
        out = []
        if len(text) == 1:
            c = ord(text)
            term = g.term_map.get(c)
            if term is None:
                return out
            for s in self.last.get(c, ()):
                out.append((coll.handle_of[s], g.length[s]))
            for s in self.ri.query(term, None):
                self._report(s, 1, 0, out, limit)
                if limit is not None and len(out) >= limit:
                    break
            return out[:limit] if limit is not None else out
        p = coll.make_sig(text)
        pr = coll.make_sig(text[::-1])
        m = len(text)
        for L in potential_anchors(g, p):
            x = coll.substring_sig(pr, m - L + 1, m)
            y = coll.substring_sig(p, L + 1, m)
            for s in self.ri.query(x, y):
                self._report(s, L, m - L, out, limit)
                if limit is not None and len(out) >= limit:
                    return out[:limit]
        return out

    def _report(self, s, left, right, out, limit):
        count, first, stride = anchored_occurrences(self.g, s, left, right)
        for i in range(count):
            self._lift(s, first + i * stride, out, limit)

    def _lift(self, s, pos, out, limit):
        """Report position ``pos`` inside s at every active occurrence of s."""
        g = self.g
        pars = self.pars
        handle_of = self.coll.handle_of
        stack = [(s, pos)]
        while stack:
            if limit is not None and len(out) >= limit:
                return
            t, o = stack.pop()
            if t in self.in_w:
                out.append((handle_of[t], o))
            for u in pars[t]:
                if g.kind[u] == PAIR:
                    stack.append((u, o if g.left[u] == t else o + g.length[g.left[u]]))
                else:
                    lt = g.length[t]
                    for i in range(g.right[u]):
                        stack.append((u, o + i * lt))

    # -- diagnostics ---------------------------------------------------

    def distinct_signatures(self):
        """Distinct signatures over the parse trees of the active strings."""
        g = self.g
        seen = set()
        stack = list(self.in_w)
        while stack:
            s = stack.pop()
            if s in seen:
                continue
            seen.add(s)
            if g.kind[s] == PAIR:
                stack.extend((g.left[s], g.right[s]))
            elif g.kind[s] == POWER:
                stack.append(g.left[s])
        return seen
