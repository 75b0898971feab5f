"""Compiled inner loops for the permanent kernels and the sampler.

Everything here works on 0-based indices and plain numpy arrays; the
public wrappers in :mod:`bosonex.permanent` and :mod:`bosonex.sampler`
validate input and convert to and from 1-based outcome indices.

The Guan walks use Knuth's loopless reflected mixed-radix Gray code
(focus pointers), identical to :class:`bosonex.combinatorics.MixedRadixGrayIterator`.
"""

import numba
import numpy as np

_jit = numba.njit(cache=True, nogil=True)


@_jit
def ryser_gray(b, compensated):
    """Ryser's formula over row subsets in binary Gray-code order."""
    k = b.shape[0]
    if k == 0:
        return 1.0 + 0.0j
    w = np.zeros(k, dtype=np.complex128)
    in_set = np.zeros(k, dtype=np.bool_)
    total = 0.0j
    comp = 0.0j
    sign = 1.0
    for step in range(1, 1 << k):
        i = 0
        while not (step >> i) & 1:
            i += 1
        if in_set[i]:
            in_set[i] = False
            for j in range(k):
                w[j] -= b[i, j]
        else:
            in_set[i] = True
            for j in range(k):
                w[j] += b[i, j]
        sign = -sign
        p = 1.0 + 0.0j
        for j in range(k):
            p *= w[j]
        term = sign * p
        if compensated:
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
        else:
            total += term
    if k % 2:
        total = -total
    return total


@_jit
def repeated_ryser(a, s, compensated):
    """Ryser's formula for repeated rows, one Guan step per term.

    ``a`` holds the distinct rows (all with ``s > 0``), ``sum(s)`` equals
    the column count. Returns ``(permanent, guan_steps)``.
    """
    na = a.shape[0]
    k = a.shape[1]
    r = np.zeros(na, dtype=np.int64)
    direction = np.ones(na, dtype=np.int64)
    focus = np.arange(na + 1)
    w = np.zeros(k, dtype=np.complex128)
    sign = 1.0
    binom = 1.0
    # all-zeros tuple: product of k zeros, or 1 when k == 0
    total = 1.0 + 0.0j if k == 0 else 0.0j
    comp = 0.0j
    steps = 0
    while True:
        j = focus[0]
        focus[0] = 0
        if j == na:
            break
        d = direction[j]
        r[j] += d
        if d == 1:
            for c in range(k):
                w[c] += a[j, c]
            binom *= (s[j] - r[j] + 1) / r[j]
        else:
            for c in range(k):
                w[c] -= a[j, c]
            binom *= (r[j] + 1) / (s[j] - r[j])
        if r[j] == 0 or r[j] == s[j]:
            direction[j] = -d
            focus[j] = focus[j + 1]
            focus[j + 1] = j + 1
        sign = -sign
        steps += 1
        p = 1.0 + 0.0j
        for c in range(k):
            p *= w[c]
        term = sign * binom * p
        if compensated:
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
        else:
            total += term
    if k % 2:
        total = -total
    return total, steps


@_jit
def repeated_minors(a, s, compensated):
    """All permanents of a (k-1) x k repeated-row matrix with one column dropped.

    ``a`` holds the distinct rows (``na x k``), ``sum(s) == k - 1``. Entry
    ``l`` of the result is the permanent with column ``l`` removed; the
    per-tuple products over ``j != l`` come from forward and backward
    cumulative products. Returns ``(minors, guan_steps)``.
    """
    na = a.shape[0]
    k = a.shape[1]
    r = np.zeros(na, dtype=np.int64)
    direction = np.ones(na, dtype=np.int64)
    focus = np.arange(na + 1)
    w = np.zeros(k, dtype=np.complex128)
    fwd = np.empty(k, dtype=np.complex128)
    acc = np.zeros(k, dtype=np.complex128)
    comp = np.zeros(k, dtype=np.complex128)
    sign = 1.0
    binom = 1.0
    steps = 0
    while True:
        coeff = sign * binom
        fwd[0] = 1.0
        for c in range(1, k):
            fwd[c] = fwd[c - 1] * w[c - 1]
        back = 1.0 + 0.0j
        for c in range(k - 1, -1, -1):
            term = coeff * fwd[c] * back
            if compensated:
                y = term - comp[c]
                t = acc[c] + y
                comp[c] = (t - acc[c]) - y
                acc[c] = t
            else:
                acc[c] += term
            back *= w[c]

        j = focus[0]
        focus[0] = 0
        if j == na:
            break
        d = direction[j]
        r[j] += d
        if d == 1:
            for c in range(k):
                w[c] += a[j, c]
            binom *= (s[j] - r[j] + 1) / r[j]
        else:
            for c in range(k):
                w[c] -= a[j, c]
            binom *= (r[j] + 1) / (s[j] - r[j])
        if r[j] == 0 or r[j] == s[j]:
            direction[j] = -d
            focus[j] = focus[j + 1]
            focus[j + 1] = j + 1
        sign = -sign
        steps += 1
    # minors have k - 1 rows
    if (k - 1) % 2:
        for c in range(k):
            acc[c] = -acc[c]
    return acc, steps


@_jit
def pick_index(w, u):
    """Index ``i`` with probability ``w[i] / sum(w)`` from one uniform ``u``.

    Returns -1 when the weights are not a usable distribution.
    """
    m = w.shape[0]
    top = 0.0
    for i in range(m):
        if w[i] > top:
            top = w[i]
    if not top > 0.0 or not np.isfinite(top):
        return -1
    total = 0.0
    for i in range(m):
        if w[i] < 0.0:
            if w[i] < -1e-12 * top:
                return -1
            w[i] = 0.0
        total += w[i]
    target = u * total
    cum = 0.0
    last = -1
    for i in range(m):
        if w[i] > 0.0:
            last = i
            cum += w[i]
            if target < cum:
                return i
    return last


@_jit
def _stage_minors(ap, rows, k, compensated):
    """Minor permanents for stage ``k`` given the first ``k - 1`` chosen rows."""
    m = ap.shape[0]
    counts = np.zeros(m, dtype=np.int64)
    for t in range(k - 1):
        counts[rows[t]] += 1
    na = 0
    for i in range(m):
        if counts[i] > 0:
            na += 1
    sub = np.empty((na, k), dtype=np.complex128)
    s = np.empty(na, dtype=np.int64)
    q = 0
    for i in range(m):
        if counts[i] > 0:
            s[q] = counts[i]
            for c in range(k):
                sub[q, c] = ap[i, c]
            q += 1
    return repeated_minors(sub, s, compensated)


@_jit
def draw_rows(ap, u, rows, weights, walks, compensated):
    """One sample by sequential conditional sampling.

    ``ap`` is the m x n matrix with columns already permuted, ``u`` holds one
    uniform per stage. Chosen 0-based rows land in ``rows`` in draw order.
    If ``weights`` has ``n`` rows, the stage weights are stored there; if
    ``walks`` has ``n`` entries, the Guan walk length of each stage is
    stored there (0 for stage 1).

    Returns 0 on success, else the 1-based stage whose weights broke down.
    """
    m, n = ap.shape
    keep = weights.shape[0] == n
    keep_walks = walks.shape[0] == n
    w = np.empty(m, dtype=np.float64)
    for i in range(m):
        w[i] = ap[i, 0].real ** 2 + ap[i, 0].imag ** 2
    if keep:
        weights[0, :] = w
    if keep_walks:
        walks[0] = 0
    x = pick_index(w, u[0])
    if x < 0:
        return 1
    rows[0] = x
    for k in range(2, n + 1):
        minors, steps = _stage_minors(ap, rows, k, compensated)
        for i in range(m):
            acc = 0.0j
            for c in range(k):
                acc += ap[i, c] * minors[c]
            w[i] = acc.real ** 2 + acc.imag ** 2
        if keep:
            weights[k - 1, :] = w
        if keep_walks:
            walks[k - 1] = steps + 1
        x = pick_index(w, u[k - 1])
        if x < 0:
            return k
        rows[k - 1] = x
    return 0


@_jit
def draw_many(a, uniforms, compensated):
    """Samples for each row of ``uniforms`` (``2n`` columns each).

    The first ``n`` uniforms of a row are sort keys for the column
    permutation, the last ``n`` drive the stage draws. Returns the row
    array (count x n, draw order, 0-based) and a status per sample.
    """
    m, n = a.shape
    count = uniforms.shape[0]
    out = np.empty((count, n), dtype=np.int64)
    status = np.zeros(count, dtype=np.int64)
    ap = np.empty((m, n), dtype=np.complex128)
    no_weights = np.empty((0, 0), dtype=np.float64)
    no_walks = np.empty(0, dtype=np.int64)
    for t in range(count):
        perm = np.argsort(uniforms[t, :n])
        for c in range(n):
            for i in range(m):
                ap[i, c] = a[i, perm[c]]
        status[t] = draw_rows(ap, uniforms[t, n:], out[t], no_weights, no_walks, compensated)
    return out, status
