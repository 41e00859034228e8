"""Line-oriented command interpreter over a collection, a match index and an edit history.

Each input line is one command and produces one output line (BENCH prints a
CSV block).  Handles print as ``H<n>``.  Errors print as
``ERR line <n>: <message>`` and do not stop the script.
"""

import argparse
import inspect
import random
import sys

from . import bench
from .collection import Collection
from .grammar import Failure
from .history import History
from .match_index import MatchIndex
from .order import compare, lcp
from .slp import SLP, slp_eq


class CommandError(ValueError):
    pass


def _handle(tok):
    if len(tok) < 2 or tok[0] not in "Hh" or not tok[1:].isdigit():
        raise CommandError("expected a handle like H0, got %r" % tok)
    return int(tok[1:])


def _int(tok):
    try:
        return int(tok)
    except ValueError:
        raise CommandError("expected an integer, got %r" % tok) from None


def _limit(args):
    """Split ``s [LIMIT k]`` into (s, k)."""
    if len(args) == 3 and args[1].upper() == "LIMIT":
        k = _int(args[2])
        if k < 0:
            raise CommandError("LIMIT must be nonnegative")
        return args[0], k
    if len(args) != 1:
        raise CommandError("expected: <pattern> [LIMIT k]")
    return args[0], None


class Engine:
    """State behind the command protocol.

    State-changing commands are logged; on a failure with RESTART ON the
    whole engine is rebuilt under a fresh seed and the log replayed, so
    handles and versions come out the same.
    """

    # commands whose effect must survive a restart
    STATEFUL = {"MAKE", "CONCAT", "SPLIT", "ACTIVATE", "DEACTIVATE", "HINS", "HDEL", "HMOVE"}

    def __init__(self, seed=0, word_bits=64, max_restarts=16):
        self.word_bits = word_bits
        self.max_restarts = max_restarts
        self.auto_restart = False
        self.restarts = 0
        self.log = []
        self._reset(seed)

    def _reset(self, seed):
        self.seed = seed
        self.coll = Collection(seed, self.word_bits, mirror=True)
        self.index = MatchIndex(self.coll)
        self.history = History(seed + 1, self.word_bits)
        self.failed = False

    # -- dispatch ------------------------------------------------------

    def execute(self, line):
        """Run one command line; returns its output (None for blank lines)."""
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            return None
        cmd = parts[0].upper()
        cmd = {"M": "MAKE", "C": "CONCAT", "S": "SPLIT"}.get(cmd, cmd)
        fn = getattr(self, "do_" + cmd, None)
        if fn is None:
            raise CommandError("unknown command %s" % parts[0])
        if cmd == "MAKE":
            # the string is everything after the command word
            rest = line.strip().split(None, 1)
            args = rest[1:]
        else:
            args = parts[1:]
        try:
            inspect.signature(fn).bind(*args)
        except TypeError:
            raise CommandError("wrong number of arguments for %s" % cmd) from None
        if self.failed and cmd != "RESTART":
            raise Failure("engine failed earlier; run with RESTART ON to recover")
        attempts = 0
        while True:
            try:
                out = fn(*args)
            except Failure:
                if not self.auto_restart or attempts >= self.max_restarts:
                    self.failed = cmd in self.STATEFUL
                    raise
                attempts += 1
                self.restart()
                continue
            if cmd in self.STATEFUL:
                self.log.append((cmd, args))
            return out

    def restart(self, seed=None):
        """Rebuild everything under a new seed and replay the logged commands."""
        log = list(self.log)
        for _ in range(self.max_restarts):
            if seed is None:
                seed = random.Random(self.seed).getrandbits(64)
            self._reset(seed)
            self.restarts += 1
            try:
                for cmd, args in log:
                    getattr(self, "do_" + cmd)(*args)
                self.log = log
                return
            except Failure:
                seed = None
        raise Failure("restart budget exhausted")

    # -- session -------------------------------------------------------

    def do_SEED(self, u):
        if self.log:
            raise CommandError("SEED must come before any update")
        self._reset(_int(u))
        return "OK"

    def do_RESTART(self, flag):
        flag = flag.upper()
        if flag not in ("ON", "OFF"):
            raise CommandError("expected RESTART ON or RESTART OFF")
        self.auto_restart = flag == "ON"
        if self.auto_restart and self.failed:
            self.restart()
        return "OK"

    # -- collection ----------------------------------------------------

    def _checked(self, tok):
        h = _handle(tok)
        if not 0 <= h < len(self.coll):
            raise CommandError("unknown handle %s" % tok)
        return h

    def do_MAKE(self, text):
        if not text:
            raise CommandError("MAKE needs a nonempty string")
        return "H%d" % self.coll.make_string(text)

    def do_CONCAT(self, a, b):
        return "H%d" % self.coll.concat(self._checked(a), self._checked(b))

    def do_SPLIT(self, a, k):
        h = self._checked(a)
        k = _int(k)
        n = self.coll.length(h)
        if not 1 <= k < n:
            raise CommandError("split position %d outside 1..%d" % (k, n - 1))
        x, y = self.coll.split(h, k)
        return "H%d H%d" % (x, y)

    def do_EQ(self, a, b):
        return "true" if self.coll.eq(self._checked(a), self._checked(b)) else "false"

    def do_CMP(self, a, b):
        g = self.coll.g
        return str(compare(g, self.coll.sig(self._checked(a)), self.coll.sig(self._checked(b))))

    def do_LCP(self, a, b):
        g = self.coll.g
        return str(lcp(g, self.coll.sig(self._checked(a)), self.coll.sig(self._checked(b))))

    # -- pattern matching ----------------------------------------------

    def do_ACTIVATE(self, a):
        self.index.activate(self._checked(a))
        return "OK"

    def do_DEACTIVATE(self, a):
        self.index.deactivate(self._checked(a))
        return "OK"

    def do_FIND(self, *args):
        p, k = _limit(args)
        occ = self.index.find(p, k)
        if not occ:
            return "NONE"
        return " ".join("H%d:%d" % o for o in sorted(occ))

    # -- history -------------------------------------------------------

    def do_HINS(self, pos, c):
        if len(c) != 1:
            raise CommandError("HINS takes a single letter")
        pos = _int(pos)
        n = self.history.length
        if not 1 <= pos <= n + 1:
            raise CommandError("insert position %d outside 1..%d" % (pos, n + 1))
        return "V%d" % self.history.insert(pos, c)

    def do_HDEL(self, l, r):
        l, r = _int(l), _int(r)
        if not 1 <= l <= r <= self.history.length:
            raise CommandError("delete range %d..%d outside 1..%d" % (l, r, self.history.length))
        return "V%d" % self.history.delete(l, r)

    def do_HMOVE(self, l, r, d):
        l, r, d = _int(l), _int(r), _int(d)
        n = self.history.length
        if not 1 <= l <= r <= n or not 0 <= d <= n or l - 1 <= d <= r:
            raise CommandError("bad move %d..%d to gap %d (length %d)" % (l, r, d, n))
        return "V%d" % self.history.move(l, r, d)

    def do_HFIND(self, *args):
        p, k = _limit(args)
        occ = self.history.find(p, k)
        if not occ:
            return "NONE"
        return " ".join("V%d:%d" % o for o in occ)

    # -- applications --------------------------------------------------

    def do_SLPEQ(self, a, b):
        try:
            ga, gb = SLP.load(a), SLP.load(b)
        except OSError as e:
            raise CommandError(str(e)) from None
        coll = Collection(self.seed, self.word_bits)
        return "true" if slp_eq(coll, ga, gb) else "false"

    def do_BENCH(self, suite):
        try:
            rows = bench.run(suite, self.seed)
        except ValueError as e:
            raise CommandError(str(e)) from None
        return bench.to_csv(rows).rstrip("\n")


def run_script(lines, engine=None, out=None):
    """Execute command lines; returns the list of output lines."""
    engine = engine or Engine()
    results = []
    for no, line in enumerate(lines, 1):
        try:
            res = engine.execute(line)
        except (CommandError, Failure, KeyError, IndexError, ValueError) as e:
            msg = e.args[0] if isinstance(e, KeyError) and e.args else e
            res = "ERR line %d: %s" % (no, msg)
        if res is None:
            continue
        results.append(res)
        if out is not None:
            print(res, file=out, flush=True)
    return results


def main(argv=None):
    ap = argparse.ArgumentParser(prog="dynstr", description=__doc__.splitlines()[0])
    ap.add_argument("script", nargs="?", help="command file (default: standard input)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--word-bits", type=int, default=64, help="bits per signature word (B)")
    ap.add_argument("--restart", action="store_true", help="start with RESTART ON")
    args = ap.parse_args(argv)
    engine = Engine(args.seed, args.word_bits)
    engine.auto_restart = args.restart
    if args.script:
        with open(args.script, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = sys.stdin.read().splitlines()
    results = run_script(lines, engine, sys.stdout)
    return 1 if any(r.startswith("ERR ") for r in results) else 0


if __name__ == "__main__":
    sys.exit(main())
