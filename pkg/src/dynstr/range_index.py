"""Two-dimensional range reporting over string coordinates.

Points live in O(log n) static levels of sizes that behave like a binary
counter (the logarithmic method).  A level keeps its points in x order and
in y order; the x order is covered by a merge-sort tree of y ranks stored
as numpy layers, and every layer carries a sparse table for range-minimum
queries over chronological ranks.  Deletions are tombstones; a level is
rebuilt once half of it is dead.

Coordinates are signatures compared lexicographically through ``order``.
A query asks for points with ``x`` in ``[a, a·Z]`` and ``y`` in ``[b, b·Z]``,
where Z is a letter larger than every other, i.e. ``a`` is a prefix of ``x``
and ``b`` is a prefix of ``y``.
"""

import heapq
import numpy as np

from .order import compare_keys


class _Level:
    __slots__ = ("keys", "xs", "by_y", "yrank_of", "h", "ys", "order", "chron",
                 "sparse", "dead", "size", "yv")

    def __init__(self, ri, by_x, by_y):
        pts = ri.points
        self.keys = by_x
        self.xs = [pts[k][0] for k in by_x]
        self.by_y = by_y
        self.yv = [pts[k][1] for k in by_y]
        self.size = n = len(by_x)
        self.dead = 0
        self.yrank_of = {k: i for i, k in enumerate(by_y)}
        yrank = np.fromiter((self.yrank_of[k] for k in by_x), dtype=np.int64, count=n)
        chron_order = sorted(range(n), key=lambda i: (pts[by_x[i]][2], by_x[i]))
        chron = np.empty(n, dtype=np.int64)
        chron[np.asarray(chron_order, dtype=np.int64)] = np.arange(n, dtype=np.int64)
        h = max(n - 1, 0).bit_length()
        self.h = h
        idx = np.arange(n, dtype=np.int64)
        self.ys, self.order, self.chron, self.sparse = [], [], [], []
        for d in range(h + 1):
            block = idx >> (h - d)
            perm = np.lexsort((yrank, block))
            self.ys.append(yrank[perm])
            self.order.append(perm)
            c = chron[perm]
            self.chron.append(c)
            self.sparse.append(_sparse_table(c) if ri.chronological else None)

    def x_range(self, lab, lo, hi):
        """Index range [a, b) of points whose x label lies in [lo, hi]."""
        return _label_range(self.xs, lab, lo, hi)

    def y_range(self, lab, lo, hi):
        return _label_range(self.yv, lab, lo, hi)

    def canonical(self, xa, xb, ya, yb):
        """Yield (layer, u, v): slices of layers whose points match the query."""
        h = self.h
        n = self.size
        stack = [(0, 0)]
        while stack:
            d, blk = stack.pop()
            w = 1 << (h - d)
            s = blk * w
            e = min(s + w, n)
            if e <= xa or s >= xb or s >= e:
                continue
            if xa <= s and e <= xb:
                ys = self.ys[d]
                u = s + int(np.searchsorted(ys[s:e], ya, "left"))
                v = s + int(np.searchsorted(ys[s:e], yb, "left"))
                if u < v:
                    yield d, u, v
                continue
            stack.append((d + 1, 2 * blk + 1))
            stack.append((d + 1, 2 * blk))

    def argmin(self, d, u, v):
        sp = self.sparse[d]
        j = (v - u).bit_length() - 1
        a = sp[j][u]
        b = sp[j][v - (1 << j)]
        c = self.chron[d]
        return a if c[a] <= c[b] else b


def _label_range(sigs, lab, lo, hi):
    a, b = 0, len(sigs)
    while a < b:
        m = (a + b) >> 1
        if lab[sigs[m]] < lo:
            a = m + 1
        else:
            b = m
    start = a
    b = len(sigs)
    while a < b:
        m = (a + b) >> 1
        if lab[sigs[m]] <= hi:
            a = m + 1
        else:
            b = m
    return start, a


class OrderList:
    """Distinct signatures in lexicographic order, with integer labels.

    Labels respect the order and leave gaps, so a new signature usually
    gets a label between its neighbours; when no gap is left all labels
    are spread out again.  This plays the role of an order-maintenance
    list: only the insertion of a new signature costs string comparisons.
    """

    GAP = 1 << 32

    def __init__(self, g):
        self.g = g
        self.sigs = []
        self.label = {}
        self.compares = 0

    def __len__(self):
        return len(self.sigs)

    def _cmp(self, a, za, b, zb):
        self.compares += 1
        return compare_keys(self.g, a, za, b, zb)

    def _search(self, s, z):
        """First index whose signature is >= str(s)·Z^z."""
        sigs = self.sigs
        a, b = 0, len(sigs)
        while a < b:
            m = (a + b) >> 1
            if self._cmp(sigs[m], False, s, z) < 0:
                a = m + 1
            else:
                b = m
        return a

    def add(self, s):
        lab = self.label.get(s)
        if lab is not None:
            return lab
        sigs = self.sigs
        i = self._search(s, False)
        lo = self.label[sigs[i - 1]] if i > 0 else 0
        hi = self.label[sigs[i]] if i < len(sigs) else lo + 2 * self.GAP
        sigs.insert(i, s)
        if hi - lo < 2:
            for j, t in enumerate(sigs):
                self.label[t] = (j + 1) * self.GAP
        else:
            self.label[s] = (lo + hi) // 2
        return self.label[s]

    def prefix_bounds(self, p):
        """Label interval of the stored signatures that have str(p) as a prefix."""
        a = self._search(p, False)
        b = self._search(p, True)
        if a >= b:
            return None
        return self.label[self.sigs[a]], self.label[self.sigs[b - 1]]


def _sparse_table(vals):
    n = len(vals)
    table = [np.arange(n, dtype=np.int64)]
    j = 1
    while (1 << j) <= n:
        prev = table[-1]
        half = 1 << (j - 1)
        a = prev[: n - (1 << j) + 1]
        b = prev[half: half + len(a)]
        table.append(np.where(vals[a] <= vals[b], a, b))
        j += 1
    return table


class RangeIndex:
    """Dynamic multiset of anchored points with prefix-rectangle queries.

    ``insert(key, x, y, ts, extra)`` stores a point whose coordinates are
    signatures; ``query(x, y)`` reports keys of points where str(x) is a
    prefix of the point's x and str(y) a prefix of its y (``y=None`` leaves
    y unrestricted).
    """

    def __init__(self, g, chronological=True):
        self.g = g
        self.chronological = chronological
        self.points = {}        # key -> (x, y, ts, extra)
        self.levels = []        # list of _Level or None, by size class
        self.where = {}         # key -> level object
        self.order = OrderList(g)

    def __len__(self):
        return len(self.points)

    def __contains__(self, key):
        return key in self.points

    @property
    def compares(self):
        return self.order.compares

    def _sort_key(self, coord):
        lab = self.order.label
        pts = self.points
        return lambda k: (lab[pts[k][coord]], k)

    def insert(self, key, x, y, ts=0, extra=0):
        if key in self.points:
            raise KeyError("duplicate key %r" % (key,))
        self.order.add(x)
        self.order.add(y)
        self.points[key] = (x, y, ts, extra)
        carry_x = [key]
        carry_y = [key]
        i = 0
        kx, ky = self._sort_key(0), self._sort_key(1)
        while i < len(self.levels) and self.levels[i] is not None:
            lev = self.levels[i]
            live = [k for k in lev.keys if self.where.get(k) is lev]
            live_y = [k for k in lev.by_y if self.where.get(k) is lev]
            carry_x = list(heapq.merge(carry_x, live, key=kx))
            carry_y = list(heapq.merge(carry_y, live_y, key=ky))
            self.levels[i] = None
            i += 1
        if i == len(self.levels):
            self.levels.append(None)
        lev = _Level(self, carry_x, carry_y)
        self.levels[i] = lev
        for k in carry_x:
            self.where[k] = lev

    def delete(self, key):
        if key not in self.points:
            raise KeyError("missing key %r" % (key,))
        lev = self.where.pop(key)
        del self.points[key]
        lev.dead += 1
        if 2 * lev.dead >= lev.size:
            i = self.levels.index(lev)
            self.levels[i] = None
            keys = [k for k in lev.keys if self.where.get(k) is lev]
            if keys:
                by_y = [k for k in lev.by_y if self.where.get(k) is lev]
                # a shrunken level moves to the first free slot that fits it
                j = max(len(keys) - 1, 0).bit_length()
                while j < len(self.levels) and self.levels[j] is not None:
                    j += 1
                if j >= len(self.levels):
                    self.levels.extend([None] * (j - len(self.levels) + 1))
                new = _Level(self, keys, by_y)
                self.levels[j] = new
                for k in keys:
                    self.where[k] = new

    def _ranges(self, x, y):
        xb = self.order.prefix_bounds(x)
        if xb is None:
            return
        if y is not None:
            yb = self.order.prefix_bounds(y)
            if yb is None:
                return
        lab = self.order.label
        for lev in self.levels:
            if lev is None or lev.size == lev.dead:
                continue
            xa, xz = lev.x_range(lab, xb[0], xb[1])
            if xa >= xz:
                continue
            if y is None:
                ya, yz = 0, lev.size
            else:
                ya, yz = lev.y_range(lab, yb[0], yb[1])
                if ya >= yz:
                    continue
            yield lev, xa, xz, ya, yz

    def query(self, x, y=None, limit=None):
        """Keys of points whose x starts with str(x) and y with str(y)."""
        out = []
        for lev, xa, xb, ya, yb in self._ranges(x, y):
            for d, u, v in lev.canonical(xa, xb, ya, yb):
                for i in lev.order[d][u:v].tolist():
                    k = lev.keys[i]
                    if self.where.get(k) is lev:
                        out.append(k)
                        if limit is not None and len(out) >= limit:
                            return out
        return out

    def query_chrono(self, x, y=None):
        """Matching keys in nondecreasing (timestamp, key) order, lazily."""
        if not self.chronological:
            raise RuntimeError("index built without chronological support")
        pts = self.points
        heap = []

        def push(lev, d, u, v):
            if u >= v:
                return
            i = int(lev.argmin(d, u, v))
            k = lev.keys[int(lev.order[d][i])]
            rec = pts.get(k)
            ts = rec[2] if rec is not None else -1
            heapq.heappush(heap, (ts, k, id(lev), i, lev, d, u, v))

        for lev, xa, xb, ya, yb in self._ranges(x, y):
            for d, u, v in lev.canonical(xa, xb, ya, yb):
                push(lev, d, u, v)
        while heap:
            ts, k, _, i, lev, d, u, v = heapq.heappop(heap)
            if self.where.get(k) is lev:
                yield k
            push(lev, d, u, i)
            push(lev, d, i + 1, v)

    def get(self, key):
        return self.points[key]

    def naive_query(self, x, y=None):
        """Reference answer by scanning every point."""
        g = self.g
        out = []
        for k, (px, py, _, _) in self.points.items():
            if compare_keys(g, x, False, px, False) <= 0 <= compare_keys(g, x, True, px, False):
                if y is None or compare_keys(g, y, False, py, False) <= 0 <= compare_keys(g, y, True, py, False):
                    out.append(k)
        return out
