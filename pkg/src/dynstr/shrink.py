"""Reference parsing by direct simulation of the shrink rounds.

Nothing here is used by the engine.  These functions build parse layers
explicitly and serve as oracles for tests and for the depth experiments.
"""

import numpy as np

from .grammar import LevelOverflow


def rle_once(g, seq):
    out = []
    i, n = 0, len(seq)
    while i < n:
        j = i + 1
        while j < n and seq[j] == seq[i]:
            j += 1
        out.append(seq[i] if j - i == 1 else g.intern_power(seq[i], j - i))
        i = j
    return out


def compress_once(g, seq, level):
    """Pair every adjacent (x, y) with h_{level/2}(x) = 0 and h_{level/2}(y) = 1."""
    bit = 1 << (level // 2 - 1)
    h = g.hbits
    out = []
    i, n = 0, len(seq)
    while i < n:
        if i + 1 < n and not h[seq[i]] & bit and h[seq[i + 1]] & bit:
            out.append(g.intern_pair(seq[i], seq[i + 1]))
            i += 2
        else:
            out.append(seq[i])
            i += 1
    return out


def shrink_layers(g, text):
    """All layers of the uncompressed parse tree of ``text``.

    Returns a list indexed by level; each layer is a list of
    ``(sig, start, end)`` with 1-based inclusive positions.
    """
    seq = [g.intern_terminal(ord(c)) for c in text]
    layers = [_spans(g, seq)]
    level = 0
    while len(seq) > 1:
        level += 1
        if level > 2 * g.B:
            raise LevelOverflow("reference parse deeper than %d" % (2 * g.B))
        seq = rle_once(g, seq) if level & 1 else compress_once(g, seq, level)
        layers.append(_spans(g, seq))
    return layers


def _spans(g, seq):
    out = []
    pos = 1
    for s in seq:
        n = g.length[s]
        out.append((s, pos, pos + n - 1))
        pos += n
    return out


def reference_sig(g, text):
    return shrink_layers(g, text)[-1][0][0]


# -- vectorized depth simulation ------------------------------------------


def simulate_depth(symbols, rng, max_level=10**6):
    """Depth of the parse of an integer array, drawing fresh random bits.

    Symbols are relabelled densely at every level so that equal ids mean
    equal strings; each distinct symbol gets an independent bit per even
    level, which is exactly the distribution of the signature bits.
    """
    seq = np.unique(np.asarray(symbols), return_inverse=True)[1].astype(np.int64)
    level = 0
    while seq.size > 1:
        level += 1
        if level > max_level:
            raise LevelOverflow("simulated depth exceeds %d" % max_level)
        if level & 1:
            starts = np.flatnonzero(np.r_[True, seq[1:] != seq[:-1]])
            counts = np.diff(np.r_[starts, seq.size])
            keys = seq[starts] * (seq.size + 1) + np.where(counts > 1, counts, 0)
            seq = np.unique(keys, return_inverse=True)[1]
        else:
            bits = rng.integers(0, 2, size=int(seq.max()) + 1, dtype=np.int8)[seq]
            start = (bits[:-1] == 0) & (bits[1:] == 1)
            # pairs cannot overlap: a pair start has bit 0, a pair end bit 1
            is_start = np.r_[start, False]
            is_end = np.r_[False, start]
            keep = ~is_end
            right = np.where(is_start, np.r_[seq[1:], -1], -1)
            m = seq.size
            keys = seq[keep] * (m + 1) + (right[keep] + 1)
            seq = np.unique(keys, return_inverse=True)[1]
        seq = seq.astype(np.int64).ravel()
    return level
