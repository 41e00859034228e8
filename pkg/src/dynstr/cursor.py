"""Cursors over parse trees that are never materialized.

A pointer into the compressed tree T(s) is a persistent stack stored as
nested tuples ``(sig, tag, offset, below)``.  Maximal runs of leftmost
(rightmost) descents are folded into a single entry, so every move costs a
constant number of pushes and pops plus a First/Last query on the grammar.

A :class:`Cursor` pairs such a pointer with a level and addresses a node of
the uncompressed tree, whose unary chains are only virtual.
"""

from .grammar import LEFT, PAIR, POWER, RIGHT

TOP = 0
TAG_L = -1
TAG_R = -2


def _fold(node):
    below = node[3]
    tag = node[1]
    if below is not None and tag < 0 and below[1] == tag:
        return (node[0], tag, node[2], below[3])
    return node


def c_root(s):
    return (s, TOP, 0, None)


def c_begin(g, s):
    root = (s, TOP, 0, None)
    f = g.first_last(s, 0, LEFT)
    if f == s:
        return root
    return (f, TAG_L, 0, root)


def c_end(g, s):
    root = (s, TOP, 0, None)
    f = g.first_last(s, 0, RIGHT)
    if f == s:
        return root
    return (f, TAG_R, g.length[s] - 1, root)


def c_child(g, node, k):
    s = node[0]
    if g.kind[s] == PAIR:
        if k == 1:
            return _fold((g.left[s], TAG_L, node[2], node))
        c = g.right[s]
        return _fold((c, TAG_R, node[2] + g.length[g.left[s]], node))
    c = g.left[s]
    if k == 1:
        return _fold((c, TAG_L, node[2], node))
    off = node[2] + (k - 1) * g.length[c]
    if k == g.right[s]:
        return _fold((c, TAG_R, off, node))
    return (c, k, off, node)


def c_parent_sig(g, node):
    """Signature of the T-parent without building the parent pointer."""
    tag = node[1]
    if tag > 0:
        return node[3][0]
    if tag == TAG_L:
        return g.first_last(node[3][0], g.level[node[0]] + 1, LEFT)
    if tag == TAG_R:
        return g.first_last(node[3][0], g.level[node[0]] + 1, RIGHT)
    return None


def c_parent(g, node):
    tag = node[1]
    if tag > 0:
        return node[3]
    if tag == TOP:
        return None
    below = node[3]
    su = below[0]
    v = node[0]
    if tag == TAG_L:
        p = g.first_last(su, g.level[v] + 1, LEFT)
        if p == su:
            return below
        return _fold((p, TAG_L, node[2], below))
    p = g.first_last(su, g.level[v] + 1, RIGHT)
    if p == su:
        return below
    return _fold((p, TAG_R, node[2] + g.length[v] - g.length[p], below))


def c_index(g, node):
    tag = node[1]
    if tag > 0:
        return tag
    if tag == TAG_L:
        return 1
    if tag == TAG_R:
        return g.degree(c_parent_sig(g, node))
    return 0


def c_right(g, node, l):
    """Next node to the right on the level-l layer of T(s)."""
    if node[1] == TAG_R:
        node = node[3]
    tag = node[1]
    if tag == TOP:
        return None
    q = c_parent(g, node)
    a = q[0]
    j = 2 if tag == TAG_L else tag + 1
    if g.kind[a] == PAIR:
        b = g.right[a]
        r = _fold((b, TAG_R, q[2] + g.length[a] - g.length[b], q))
    else:
        b = g.left[a]
        off = q[2] + (j - 1) * g.length[b]
        if j == g.right[a]:
            r = _fold((b, TAG_R, off, q))
        else:
            r = (b, j, off, q)
    if g.level[b] <= l:
        return r
    return (g.descend(b, l, LEFT), TAG_L, r[2], r)


def c_left(g, node, l):
    """Next node to the left on the level-l layer of T(s)."""
    if node[1] == TAG_L:
        node = node[3]
    tag = node[1]
    if tag == TOP:
        return None
    q = c_parent(g, node)
    a = q[0]
    if g.kind[a] == PAIR:
        b = g.left[a]
        r = _fold((b, TAG_L, q[2], q))
    else:
        b = g.left[a]
        j = g.right[a] - 1 if tag == TAG_R else tag - 1
        if j == 1:
            r = _fold((b, TAG_L, q[2], q))
        else:
            r = (b, j, q[2] + (j - 1) * g.length[b], q)
    if g.level[b] <= l:
        return r
    u = g.descend(b, l, RIGHT)
    return (u, TAG_R, r[2] + g.length[b] - g.length[u], r)


def c_leaf_at(g, s, pos):
    if not 1 <= pos <= g.length[s]:
        raise IndexError("position %d outside 1..%d" % (pos, g.length[s]))
    node = (s, TOP, 0, None)
    kind, left, length = g.kind, g.left, g.length
    while True:
        x = node[0]
        k = kind[x]
        if k == PAIR:
            node = c_child(g, node, 1 if pos <= node[2] + length[left[x]] else 2)
        elif k == POWER:
            node = c_child(g, node, (pos - 1 - node[2]) // length[left[x]] + 1)
        else:
            return node


def c_depth(node):
    d = 0
    while node is not None:
        d += 1
        node = node[3]
    return d


class Cursor:
    """Immutable pointer to a node of the uncompressed parse tree."""

    __slots__ = ("g", "node", "level")

    def __init__(self, g, node, level):
        self.g = g
        self.node = node
        self.level = level

    # -- creation ------------------------------------------------------

    @classmethod
    def root(cls, g, s):
        return cls(g, (s, TOP, 0, None), g.level[s])

    @classmethod
    def begin(cls, g, s):
        return cls(g, c_begin(g, s), 0)

    @classmethod
    def end(cls, g, s):
        return cls(g, c_end(g, s), 0)

    @classmethod
    def leaf_at(cls, g, s, pos):
        return cls(g, c_leaf_at(g, s, pos), 0)

    # -- inspection ----------------------------------------------------

    @property
    def sig(self):
        return self.node[0]

    @property
    def offset(self):
        return self.node[2]

    @property
    def repr(self):
        return (self.node[2] + 1, self.node[2] + self.g.length[self.node[0]])

    def key(self):
        return (self.level, self.node[2])

    def __eq__(self, other):
        return (isinstance(other, Cursor) and self.level == other.level
                and self.node[2] == other.node[2] and self.node[0] == other.node[0])

    def __hash__(self):
        return hash((self.level, self.node[2]))

    def __repr__(self):
        i, j = self.repr
        return "Cursor(sig=%d, level=%d, repr=(%d, %d))" % (self.node[0], self.level, i, j)

    def in_compressed(self):
        """True if the node also exists in T(s) (i.e. it is not a unary copy)."""
        return self.g.level[self.node[0]] == self.level

    def is_root(self):
        return self.node[1] == TOP

    def degree(self):
        if self.level == 0:
            return 0
        if self.g.level[self.node[0]] == self.level:
            return self.g.degree(self.node[0])
        return 1

    def _parent_is_compressed(self):
        ps = c_parent_sig(self.g, self.node)
        return ps is not None and self.g.level[ps] == self.level + 1, ps

    def index(self):
        node = self.node
        if node[1] == TOP:
            return 0
        tag = node[1]
        if tag > 0:
            return tag
        ps = c_parent_sig(self.g, node)
        if self.g.level[ps] != self.level + 1:
            return 1
        if tag == TAG_L:
            return 1
        return self.g.degree(ps)

    def _block(self):
        """(index, degree) within a power parent, or None when no block exists."""
        if self.level & 1 or self.node[1] == TOP:
            return None
        node = self.node
        g = self.g
        ps = c_parent_sig(g, node)
        if g.level[ps] != self.level + 1 or g.kind[ps] != POWER:
            return None
        tag = node[1]
        k = g.right[ps]
        if tag == TAG_L:
            return 1, k
        if tag == TAG_R:
            return k, k
        return tag, k

    def rext(self):
        """Number of equal-signature nodes immediately to the right."""
        b = self._block()
        return 0 if b is None else b[1] - b[0]

    def lext(self):
        """Number of equal-signature nodes immediately to the left."""
        b = self._block()
        return 0 if b is None else b[0] - 1

    def inspect(self):
        i, j = self.repr
        return (self.sig, self.level, (i, j), self.index(), self.degree(),
                self.rext(), self.lext())

    # -- navigation ----------------------------------------------------

    def parent(self):
        node = self.node
        if node[1] == TOP:
            return None
        g = self.g
        p = c_parent(g, node)
        if g.level[p[0]] == self.level + 1:
            return Cursor(g, p, self.level + 1)
        return Cursor(g, node, self.level + 1)

    def child(self, k):
        l = self.level
        if l == 0:
            return None
        g = self.g
        node = self.node
        if g.level[node[0]] == l:
            if not 1 <= k <= g.degree(node[0]):
                return None
            return Cursor(g, c_child(g, node, k), l - 1)
        if k != 1:
            return None
        return Cursor(g, node, l - 1)

    def right(self):
        r = c_right(self.g, self.node, self.level)
        return None if r is None else Cursor(self.g, r, self.level)

    def left(self):
        r = c_left(self.g, self.node, self.level)
        return None if r is None else Cursor(self.g, r, self.level)

    def rskip(self, k):
        if k == 0:
            return self
        b = self._block()
        idx, deg = b if b is not None else (1, 1)
        ext = deg - idx
        if k <= ext:
            p = c_parent(self.g, self.node)
            return Cursor(self.g, c_child(self.g, p, idx + k), self.level)
        if k == ext + 1:
            last = self if ext == 0 else self.rskip(ext)
            return last.right()
        return None

    def lskip(self, k):
        if k == 0:
            return self
        b = self._block()
        idx, deg = b if b is not None else (1, 1)
        ext = idx - 1
        if k <= ext:
            p = c_parent(self.g, self.node)
            return Cursor(self.g, c_child(self.g, p, idx - k), self.level)
        if k == ext + 1:
            last = self if ext == 0 else self.lskip(ext)
            return last.left()
        return None

    def move(self, direction, k=None):
        """Dispatch form of the navigation primitives (names as strings)."""
        if direction == "parent":
            return self.parent()
        if direction == "child":
            return self.child(k)
        if direction == "left":
            return self.left()
        if direction == "right":
            return self.right()
        if direction == "rskip":
            return self.rskip(k)
        if direction == "lskip":
            return self.lskip(k)
        raise ValueError("unknown direction %r" % (direction,))


def create(g, s, which, pos=None):
    """cursor_create: ``which`` is one of 'root', 'begin', 'end', 'leaf'."""
    if which == "root":
        return Cursor.root(g, s)
    if which == "begin":
        return Cursor.begin(g, s)
    if which == "end":
        return Cursor.end(g, s)
    if which == "leaf":
        return Cursor.leaf_at(g, s, pos)
    raise ValueError("unknown cursor origin %r" % (which,))
