"""Benchmark harness: per-operation timings, grammar growth and depth tails."""

import csv
import io
import math
import random
import time

import numpy as np

from .collection import Collection
from .shrink import simulate_depth

HEADER = ("op", "n", "wall_ns", "new_sigs", "depth")


class _Source:
    """Random strings assembled from a pool of random chunks.

    Only the chunk touching the concatenation boundary is made fresh, which
    keeps the grammar around the boundary unseen while making long operands
    cheap to build.
    """

    def __init__(self, coll, rnd, chunk, alphabet, pool=64):
        self.coll = coll
        self.rnd = rnd
        self.chunk = chunk
        self.alphabet = alphabet
        self.pool = [self.fresh(chunk) for _ in range(pool)]

    def fresh(self, m):
        rnd = self.rnd
        return self.coll.make_sig("".join(rnd.choice(self.alphabet) for _ in range(m)))

    def string(self, n, fresh_end):
        """A random string of length n whose first (or last) chunk is fresh."""
        m = min(self.chunk, n)
        parts = [self.rnd.choice(self.pool) for _ in range((n - m) // self.chunk)]
        rest = n - m - len(parts) * self.chunk
        if rest:
            parts.append(self.fresh(rest))
        if fresh_end == "last":
            parts.append(self.fresh(m))
        else:
            parts.insert(0, self.fresh(m))
        return _balanced(self.coll, parts)


def _balanced(coll, parts):
    while len(parts) > 1:
        nxt = [coll.concat_sigs(parts[i], parts[i + 1]) for i in range(0, len(parts) - 1, 2)]
        if len(parts) & 1:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


def concat_rows(sizes=None, trials=24, seed=0, alphabet="abcd", chunk=256, word_bits=128):
    """Rows for concat and split of fresh random strings of each size.

    Thousands of long strings get built, so the default word is wide enough
    that no parse comes near the depth limit of two words.
    """
    sizes = sizes or [1 << k for k in range(10, 19)]
    rnd = random.Random(seed)
    coll = Collection(seed=seed, word_bits=word_bits)
    src = _Source(coll, rnd, chunk, alphabet)
    g = coll.g
    rows = []
    for n in sizes:
        for _ in range(trials):
            a = src.string(n // 2, "last")
            b = src.string(n - n // 2, "first")
            before = len(g)
            t0 = time.perf_counter_ns()
            s = coll.concat_sigs(a, b)
            wall = time.perf_counter_ns() - t0
            rows.append(("concat", n, wall, len(g) - before, g.level[s]))
            k = rnd.randint(1, n - 1)
            before = len(g)
            t0 = time.perf_counter_ns()
            coll.substring_sig(s, 1, k)
            coll.substring_sig(s, k + 1, n)
            wall = time.perf_counter_ns() - t0
            rows.append(("split", n, wall, len(g) - before, g.level[s]))
    return rows


def depth_rows(count=500, n=1 << 16, seed=0):
    """Simulated parse depths of random and periodic strings of length n."""
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(count):
        if i % 2 == 0:
            w = rng.integers(0, 4, size=n)
        else:
            period = int(rng.integers(1, 9))
            w = np.resize(rng.integers(0, 2, size=period), n)
        t0 = time.perf_counter_ns()
        d = simulate_depth(w, rng)
        rows.append(("depth", n, time.perf_counter_ns() - t0, 0, d))
    return rows


def depth_tail(depths, n, rs=(1, 2, 3)):
    """(r, violation fraction, allowed fraction) per r."""
    depths = np.asarray(depths)
    out = []
    for r in rs:
        bound = 8 * (r + math.log(n))
        out.append((r, float(np.mean(depths > bound)), 2 * math.exp(-r)))
    return out


def fit_log(rows, op="concat", column=3):
    """Least-squares fit of the mean of ``column`` against log2 n.

    Returns (slope, intercept, r_squared).
    """
    by_n = {}
    for row in rows:
        if row[0] == op:
            by_n.setdefault(row[1], []).append(row[column])
    ns = sorted(by_n)
    x = np.log2(np.asarray(ns, dtype=float))
    y = np.asarray([np.mean(by_n[k]) for k in ns])
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2


def loglog_slope(rows, op="concat"):
    """Exponent of a power-law fit of mean wall time against n."""
    by_n = {}
    for row in rows:
        if row[0] == op:
            by_n.setdefault(row[1], []).append(row[2])
    ns = sorted(by_n)
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray([np.median(by_n[k]) for k in ns], dtype=float))
    return float(np.polyfit(x, y, 1)[0])


SUITES = {
    "concat": lambda seed: concat_rows(seed=seed),
    "small": lambda seed: concat_rows(sizes=[1 << k for k in range(6, 13)], trials=6, seed=seed),
    "depth": lambda seed: depth_rows(count=100, seed=seed),
}


def run(suite, seed=0):
    if suite == "all":
        rows = []
        for name in ("concat", "depth"):
            rows.extend(SUITES[name](seed))
        return rows
    try:
        return SUITES[suite](seed)
    except KeyError:
        raise ValueError("unknown bench suite %r (choose from %s, all)"
                         % (suite, ", ".join(sorted(SUITES)))) from None


def to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    w.writerows(rows)
    return buf.getvalue()
