"""Straight-line programs loaded into a collection.

File format::

    #start NAME
    NAME -> 'c'
    NAME -> A B C
    NAME -> A ^ k

Right-hand sides with several symbols are folded left to right (or as a
balanced tree with ``fold="balanced"``); powers are built by doubling.
Nothing is ever expanded, so exponentially long strings are fine.
"""

import re

_RULE = re.compile(r"^\s*(\S+)\s*->\s*(.*?)\s*$")
_CHAR = re.compile(r"^'(.)'$")
_POW = re.compile(r"^(\S+)\s*\^\s*(\d+)$")


class SLPError(ValueError):
    pass


class SLP:
    def __init__(self, start, rules):
        self.start = start
        self.rules = rules      # name -> ("char", c) | ("cat", [names]) | ("pow", name, k)

    @classmethod
    def parse(cls, text, source="<slp>"):
        start = None
        rules = {}
        for no, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#start"):
                parts = line.split()
                if len(parts) != 2:
                    raise SLPError("%s:%d: malformed #start line" % (source, no))
                start = parts[1]
                continue
            if line.startswith("#"):
                continue
            m = _RULE.match(line)
            if not m:
                raise SLPError("%s:%d: expected NAME -> ..." % (source, no))
            name, rhs = m.groups()
            if name in rules:
                raise SLPError("%s:%d: %s defined twice" % (source, no, name))
            c = _CHAR.match(rhs)
            p = _POW.match(rhs)
            if c:
                rules[name] = ("char", c.group(1))
            elif p:
                k = int(p.group(2))
                if k < 1:
                    raise SLPError("%s:%d: power exponent must be positive" % (source, no))
                rules[name] = ("pow", p.group(1), k)
            else:
                syms = rhs.split()
                if not syms:
                    raise SLPError("%s:%d: empty right-hand side" % (source, no))
                rules[name] = ("cat", syms)
        if start is None:
            raise SLPError("%s: missing #start header" % source)
        slp = cls(start, rules)
        slp.order()
        return slp

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read(), str(path))

    def deps(self, name):
        rule = self.rules[name]
        if rule[0] == "char":
            return []
        if rule[0] == "pow":
            return [rule[1]]
        return rule[1]

    def order(self):
        """Names reachable from the start symbol, dependencies first."""
        if self.start not in self.rules:
            raise SLPError("start symbol %s has no rule" % self.start)
        state = {}
        out = []
        stack = [(self.start, False)]
        while stack:
            name, done = stack.pop()
            if done:
                state[name] = 2
                out.append(name)
                continue
            st = state.get(name)
            if st == 2:
                continue
            if st == 1:
                raise SLPError("cycle through %s" % name)
            if name not in self.rules:
                raise SLPError("undefined symbol %s" % name)
            state[name] = 1
            stack.append((name, True))
            for d in self.deps(name):
                if state.get(d) == 1:
                    raise SLPError("cycle through %s" % d)
                if state.get(d) != 2:
                    stack.append((d, False))
        return out

    def lengths(self):
        n = {}
        for name in self.order():
            rule = self.rules[name]
            if rule[0] == "char":
                n[name] = 1
            elif rule[0] == "pow":
                n[name] = n[rule[1]] * rule[2]
            else:
                n[name] = sum(n[d] for d in rule[1])
        return n

    def build(self, coll, fold="left"):
        """Signature of the start symbol inside ``coll``."""
        sig = {}
        for name in self.order():
            rule = self.rules[name]
            if rule[0] == "char":
                sig[name] = coll.make_sig(rule[1])
            elif rule[0] == "pow":
                sig[name] = _power(coll, sig[rule[1]], rule[2])
            else:
                parts = [sig[d] for d in rule[1]]
                sig[name] = _balanced(coll, parts) if fold == "balanced" else _left(coll, parts)
        return sig[self.start]


def _left(coll, parts):
    acc = parts[0]
    for s in parts[1:]:
        acc = coll.concat_sigs(acc, s)
    return acc


def _balanced(coll, parts):
    while len(parts) > 1:
        nxt = [coll.concat_sigs(parts[i], parts[i + 1]) for i in range(0, len(parts) - 1, 2)]
        if len(parts) & 1:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


def _power(coll, s, k):
    result = None
    sq = s
    while k:
        if k & 1:
            result = sq if result is None else coll.concat_sigs(result, sq)
        k >>= 1
        if k:
            sq = coll.concat_sigs(sq, sq)
    return result


def slp_eq(coll, a, b, fold_a="left", fold_b="left"):
    """True iff the two programs derive the same string."""
    ha = coll._register(a.build(coll, fold_a))
    hb = coll._register(b.build(coll, fold_b))
    return ha == hb


def fibonacci(n, split=False):
    """SLP text for the n-th Fibonacci word (F1 = b, F2 = a, Fk = Fk-1 Fk-2).

    With ``split`` the rules for k > 3 are unrolled one step into
    Fk -> Fk-2 Fk-3 Fk-2, which derives the same words.
    """
    lines = ["#start F%d" % n, "F1 -> 'b'", "F2 -> 'a'"]
    for k in range(3, n + 1):
        if split and k > 3:
            lines.append("F%d -> F%d F%d F%d" % (k, k - 2, k - 3, k - 2))
        else:
            lines.append("F%d -> F%d F%d" % (k, k - 1, k - 2))
    return "\n".join(lines) + "\n"
