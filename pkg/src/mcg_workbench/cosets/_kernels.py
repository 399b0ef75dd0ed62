"""Numba kernels for coset enumeration and low-index search.

Table layout: ``T[c, col]`` is an int32 coset index, -1 when undefined.
Generator k of the column order owns columns 2k (the generator) and 2k+1
(its inverse), so the inverse of column ``x`` is ``x ^ 1``.  Words are int32
arrays of column indices packed back to back with an offsets array.

Scalar state lives in small int64 arrays so kernels can update it in place.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# enumeration state slots
S_NEXT = 0  # next unused row
S_LIVE = 1  # live cosets
S_TOP = 2  # deduction stack height
S_OVERFLOW = 3  # deduction stack overflowed since the last full scan
S_DEFINED = 4  # total cosets ever defined
S_MAXLIVE = 5  # high-water mark of live cosets
S_COINC = 6  # cosets killed by coincidences
S_COMPACT = 7  # compactions performed
N_STATE = 8

# enumeration results
OK = 0
FULL = 1


@njit(cache=True)
def _find(p, c):
    r = c
    while p[r] != r:
        r = p[r]
    while p[c] != r:
        nxt = p[c]
        p[c] = r
        c = nxt
    return r


@njit(cache=True)
def _push(ded, st, c, x):
    top = st[S_TOP]
    if top < ded.shape[0]:
        ded[top, 0] = c
        ded[top, 1] = x
        st[S_TOP] = top + 1
    else:
        st[S_OVERFLOW] = 1


@njit(cache=True)
def _merge(p, q, qlen, a, b, st):
    a = _find(p, a)
    b = _find(p, b)
    if a == b:
        return qlen
    if a > b:
        a, b = b, a
    p[b] = a
    q[qlen] = b
    st[S_LIVE] -= 1
    st[S_COINC] += 1
    return qlen + 1


@njit(cache=True)
def _coincidence(T, p, q, st, ded, ptr, a, b):
    """Merge cosets a and b and every consequence, union-find style."""
    ncols = T.shape[1]
    qlen = _merge(p, q, 0, a, b, st)
    qi = 0
    while qi < qlen:
        e = q[qi]
        qi += 1
        for x in range(ncols):
            f = T[e, x]
            if f < 0:
                continue
            xi = x ^ 1
            if T[f, xi] == e:
                T[f, xi] = -1
                if f < ptr[xi]:
                    ptr[xi] = f
                if f < ptr[ncols]:
                    ptr[ncols] = f
            e1 = _find(p, e)
            f1 = _find(p, f)
            if T[e1, x] >= 0:
                qlen = _merge(p, q, qlen, f1, T[e1, x], st)
            elif T[f1, xi] >= 0:
                qlen = _merge(p, q, qlen, e1, T[f1, xi], st)
            else:
                T[e1, x] = f1
                T[f1, xi] = e1
                _push(ded, st, e1, x)


@njit(cache=True)
def _define(T, p, st, ded, c, x):
    n = st[S_NEXT]
    if n >= T.shape[0]:
        return False
    T[n, :] = -1
    p[n] = n
    T[c, x] = n
    T[n, x ^ 1] = c
    st[S_NEXT] = n + 1
    st[S_LIVE] += 1
    st[S_DEFINED] += 1
    if st[S_LIVE] > st[S_MAXLIVE]:
        st[S_MAXLIVE] = st[S_LIVE]
    _push(ded, st, c, x)
    return True


@njit(cache=True)
def _scan(T, p, q, st, ded, ptr, c, w, lo, hi, fill):
    """Trace w[lo:hi] around coset c from both ends.

    A closed trace that disagrees is a coincidence; a single gap is filled
    by deduction.  With ``fill`` the remaining gaps get new cosets.
    Returns FULL if a definition was needed but no row was free.
    """
    f = c
    i = lo
    b = c
    j = hi - 1
    while True:
        while i <= j and T[f, w[i]] >= 0:
            f = T[f, w[i]]
            i += 1
        if i > j:
            if f != c:
                _coincidence(T, p, q, st, ded, ptr, f, c)
            return OK
        while j >= i and T[b, w[j] ^ 1] >= 0:
            b = T[b, w[j] ^ 1]
            j -= 1
        if j < i:
            if f != b:
                _coincidence(T, p, q, st, ded, ptr, f, b)
            return OK
        if i == j:
            T[f, w[i]] = b
            T[b, w[i] ^ 1] = f
            _push(ded, st, f, w[i])
            return OK
        if not fill:
            return OK
        if not _define(T, p, st, ded, f, w[i]):
            return FULL


@njit(cache=True)
def _compact(T, p, st, ptr):
    """Renumber live cosets to 0..live-1 keeping their order.

    Returns the old -> new map (-1 for dead rows).
    """
    n = st[S_NEXT]
    ncols = T.shape[1]
    m = np.full(n, -1, dtype=np.int64)
    k = 0
    for c in range(n):
        if p[c] == c:
            m[c] = k
            k += 1
    for c in range(n):
        if p[c] == c:
            nc = m[c]
            for x in range(ncols):
                v = T[c, x]
                T[nc, x] = m[v] if v >= 0 else -1
    for c in range(k):
        p[c] = c
    st[S_NEXT] = k
    st[S_COMPACT] += 1
    ptr[:] = 0
    return m


@njit(cache=True)
def _scan_all(T, p, q, st, ded, ptr, rel, rel_off):
    """Scan every relator at every live coset without defining (lookahead)."""
    nrel = rel_off.shape[0] - 1
    c = 0
    while c < st[S_NEXT]:
        for r in range(nrel):
            if p[c] != c:
                break
            _scan(T, p, q, st, ded, ptr, c, rel, rel_off[r], rel_off[r + 1], False)
        c += 1


@njit(cache=True)
def _init(T, p, st):
    T[0, :] = -1
    p[0] = 0
    st[:] = 0
    st[S_NEXT] = 1
    st[S_LIVE] = 1
    st[S_DEFINED] = 1
    st[S_MAXLIVE] = 1


@njit(cache=True)
def hlt_enumerate(T, p, q, st, ded, rel, rel_off, sub, sub_off):
    """HLT with lookahead: process cosets in order, scanning each relator
    with definitions; when the table fills up, scan without definitions,
    compact, and carry on.  Returns OK or FULL."""
    ncols = T.shape[1]
    ptr = np.zeros(ncols + 1, dtype=np.int64)
    _init(T, p, st)
    nsub = sub_off.shape[0] - 1
    nrel = rel_off.shape[0] - 1
    a = 0
    s = 0
    while True:
        ok = True
        while s < nsub:
            if _scan(T, p, q, st, ded, ptr, 0, sub, sub_off[s], sub_off[s + 1], True) == FULL:
                ok = False
                break
            s += 1
        if ok:
            while a < st[S_NEXT]:
                if p[a] != a:
                    a += 1
                    continue
                for r in range(nrel):
                    if _scan(T, p, q, st, ded, ptr, a, rel, rel_off[r], rel_off[r + 1], True) == FULL:
                        ok = False
                        break
                    if p[a] != a:
                        break
                if not ok:
                    break
                if p[a] == a:
                    for x in range(ncols):
                        if T[a, x] < 0:
                            if not _define(T, p, st, ded, a, x):
                                ok = False
                                break
                    if not ok:
                        break
                a += 1
            st[S_TOP] = 0
            if ok:
                break
        st[S_TOP] = 0
        before = st[S_LIVE]
        _scan_all(T, p, q, st, ded, ptr, rel, rel_off)
        st[S_TOP] = 0
        # give up when lookahead frees too little to make progress
        if before - st[S_LIVE] <= T.shape[0] // 100:
            return FULL
        # first live coset at or after a keeps its place in the processing order
        first = a
        while first < st[S_NEXT] and p[first] != first:
            first += 1
        m = _compact(T, p, st, ptr)
        a = m[first] if first < m.shape[0] else st[S_NEXT]
    return OK


@njit(cache=True)
def _next_undefined(T, p, st, ptr, colmajor):
    """First undefined live entry in fill order; returns (row, col) or (-1, -1)."""
    ncols = T.shape[1]
    n = st[S_NEXT]
    if colmajor:
        for x in range(ncols):
            c = ptr[x]
            while c < n:
                if p[c] == c and T[c, x] < 0:
                    ptr[x] = c
                    return c, x
                c += 1
            ptr[x] = n
        return -1, -1
    c = ptr[ncols]
    while c < n:
        if p[c] == c:
            for x in range(ncols):
                if T[c, x] < 0:
                    ptr[ncols] = c
                    return c, x
        c += 1
    ptr[ncols] = n
    return -1, -1


@njit(cache=True)
def _process_deductions(T, p, q, st, ded, ptr, conj, conj_off, col_start, rel, rel_off):
    while True:
        while st[S_TOP] > 0:
            st[S_TOP] -= 1
            c = ded[st[S_TOP], 0]
            x = ded[st[S_TOP], 1]
            if p[c] != c:
                continue
            for k in range(col_start[x], col_start[x + 1]):
                _scan(T, p, q, st, ded, ptr, c, conj, conj_off[k], conj_off[k + 1], False)
                if p[c] != c:
                    break
        if st[S_OVERFLOW] == 0:
            return
        st[S_OVERFLOW] = 0
        _scan_all(T, p, q, st, ded, ptr, rel, rel_off)


@njit(cache=True)
def felsch_enumerate(T, p, q, st, ded, rel, rel_off, sub, sub_off, conj, conj_off, col_start, colmajor):
    """Felsch strategy: define the first undefined entry in fill order, then
    chase every deduction through the relator conjugates before the next
    definition.  Returns OK or FULL."""
    ncols = T.shape[1]
    ptr = np.zeros(ncols + 1, dtype=np.int64)
    _init(T, p, st)
    nsub = sub_off.shape[0] - 1
    for s in range(nsub):
        while True:
            if _scan(T, p, q, st, ded, ptr, 0, sub, sub_off[s], sub_off[s + 1], True) == OK:
                break
            _process_deductions(T, p, q, st, ded, ptr, conj, conj_off, col_start, rel, rel_off)
            if st[S_LIVE] >= T.shape[0]:
                return FULL
            _compact(T, p, st, ptr)
        _process_deductions(T, p, q, st, ded, ptr, conj, conj_off, col_start, rel, rel_off)
    while True:
        _process_deductions(T, p, q, st, ded, ptr, conj, conj_off, col_start, rel, rel_off)
        c, x = _next_undefined(T, p, st, ptr, colmajor)
        if c < 0:
            return OK
        if not _define(T, p, st, ded, c, x):
            if st[S_LIVE] >= T.shape[0]:
                return FULL
            _compact(T, p, st, ptr)


@njit(cache=True)
def finalize(T, p, st):
    """Compact and relabel so rows appear in order of first occurrence when
    reading the table row by row from coset 0.  Returns the standard table."""
    ncols = T.shape[1]
    ptr = np.zeros(ncols + 1, dtype=np.int64)
    _compact(T, p, st, ptr)
    n = st[S_NEXT]
    return standardize(T[:n], 0)


@njit(cache=True)
def standardize(T, base):
    """Row-major standard form of a complete table re-based at ``base``."""
    n = T.shape[0]
    ncols = T.shape[1]
    lab = np.full(n, -1, dtype=np.int64)
    inv = np.empty(n, dtype=np.int64)
    lab[base] = 0
    inv[0] = base
    m = 1
    out = np.empty((n, ncols), dtype=np.int32)
    for i in range(n):
        row = inv[i]
        for x in range(ncols):
            v = T[row, x]
            if lab[v] < 0:
                lab[v] = m
                inv[m] = v
                m += 1
            out[i, x] = lab[v]
    return out


@njit(cache=True)
def compare_rebased(T, base, best):
    """Compare standardize(T, base) with ``best`` lexicographically without
    building it: -1 smaller, 0 equal, 1 larger."""
    n = T.shape[0]
    ncols = T.shape[1]
    lab = np.full(n, -1, dtype=np.int64)
    inv = np.empty(n, dtype=np.int64)
    lab[base] = 0
    inv[0] = base
    m = 1
    for i in range(n):
        row = inv[i]
        for x in range(ncols):
            v = T[row, x]
            if lab[v] < 0:
                lab[v] = m
                inv[m] = v
                m += 1
            lv = lab[v]
            if lv < best[i, x]:
                return -1
            if lv > best[i, x]:
                return 1
    return 0


@njit(cache=True)
def min_rebased(T):
    """The least row-major standard form over all base points: a label-free
    key for the conjugacy class of the point stabilizer."""
    best = standardize(T, 0)
    for b in range(1, T.shape[0]):
        if compare_rebased(T, b, best) < 0:
            best = standardize(T, b)
    return best


@njit(cache=True)
def trace_failures(T, rel, rel_off, sub, sub_off):
    """Audit a complete table: count (relator, coset) traces that do not
    close, plus subgroup words that move coset 0."""
    n = T.shape[0]
    bad = 0
    for r in range(rel_off.shape[0] - 1):
        for c in range(n):
            f = c
            for i in range(rel_off[r], rel_off[r + 1]):
                f = T[f, rel[i]]
                if f < 0:
                    break
            if f != c:
                bad += 1
    for s in range(sub_off.shape[0] - 1):
        f = 0
        for i in range(sub_off[s], sub_off[s + 1]):
            f = T[f, sub[i]]
            if f < 0:
                break
        if f != 0:
            bad += 1
    return bad


# ---------------------------------------------------------------------------
# Low-index search
# ---------------------------------------------------------------------------

# low-index state slots
L_N = 0  # cosets in the current partial table
L_TRAIL = 1  # trail height
L_DEPTH = 2  # frames on the stack
L_NODES = 3  # nodes entered
L_NSOL = 4  # complete tables written to the output buffer
L_NTASK = 5  # task prefixes written to the task buffer
L_MODE = 6  # how to resume: ENTER the top node, or try its NEXT sibling
N_LSTATE = 8

ENTER = 0
NEXT = 1

DONE = 0
PAUSED = 1
BUFFER_FULL = 2
BAD_REPLAY = 3


@njit(cache=True)
def _li_scan(T, trail, st, c, w, lo, hi):
    f = c
    i = lo
    b = c
    j = hi - 1
    while i <= j and T[f, w[i]] >= 0:
        f = T[f, w[i]]
        i += 1
    if i > j:
        return f == c
    while j >= i and T[b, w[j] ^ 1] >= 0:
        b = T[b, w[j] ^ 1]
        j -= 1
    if j < i:
        return f == b
    if i == j:
        T[f, w[i]] = b
        T[b, w[i] ^ 1] = f
        t = st[L_TRAIL]
        trail[t, 0] = f
        trail[t, 1] = w[i]
        st[L_TRAIL] = t + 1
    return True


@njit(cache=True)
def _li_deduce(T, trail, st, start, conj, conj_off, col_start):
    """Chase the consequences of trail entries from ``start``; False on a
    contradiction (two distinct cosets forced equal)."""
    t = start
    while t < st[L_TRAIL]:
        c = trail[t, 0]
        x = trail[t, 1]
        t += 1
        for k in range(col_start[x], col_start[x + 1]):
            if not _li_scan(T, trail, st, c, conj, conj_off[k], conj_off[k + 1]):
                return False
    return True


@njit(cache=True)
def _li_undo(T, trail, st, mark):
    t = st[L_TRAIL]
    while t > mark:
        t -= 1
        c = trail[t, 0]
        x = trail[t, 1]
        d = T[c, x]
        T[c, x] = -1
        T[d, x ^ 1] = -1
    st[L_TRAIL] = mark


@njit(cache=True)
def _li_first_undefined(T, n, colmajor):
    ncols = T.shape[1]
    if colmajor:
        for x in range(ncols):
            for c in range(n):
                if T[c, x] < 0:
                    return c, x
    else:
        for c in range(n):
            for x in range(ncols):
                if T[c, x] < 0:
                    return c, x
    return -1, -1


@njit(cache=True)
def _li_canonical(T, n, colmajor, lab, inv, colptr):
    """Sims' first-in-class test on a partial table.

    For each alternative base point, emit entries in fill order under the
    relabeling that base induces and compare with the table's own entries
    at the same positions.  The first difference decides; an undefined
    entry on either side leaves that base undecided.  False means some
    base gives a strictly smaller code, so no completion is minimal.
    """
    ncols = T.shape[1]
    for b in range(1, n):
        lab[:n] = -1
        lab[b] = 0
        inv[0] = b
        m = 1
        colptr[:] = 0
        row = 0
        col = -1
        verdict = 0
        while True:
            # next emission position
            if colmajor:
                col = -1
                for x in range(ncols):
                    if colptr[x] < m:
                        col = x
                        break
                if col < 0:
                    break
                i = colptr[col]
                colptr[col] += 1
            else:
                col += 1
                if col == ncols:
                    col = 0
                    row += 1
                if row >= m:
                    break
                i = row
            v0 = T[i, col]
            v = T[inv[i], col]
            if v0 < 0 or v < 0:
                break
            lv = lab[v]
            if lv < 0:
                lv = m
            if lv < v0:
                verdict = -1
                break
            if lv > v0:
                break
            if lab[v] < 0:
                lab[v] = m
                inv[m] = v
                m += 1
        if verdict < 0:
            return False
    return True


@njit(cache=True)
def _li_apply(T, trail, st, r, x, d):
    if d == st[L_N]:
        st[L_N] += 1
    T[r, x] = d
    T[d, x ^ 1] = r
    t = st[L_TRAIL]
    trail[t, 0] = r
    trail[t, 1] = x
    st[L_TRAIL] = t + 1


@njit(cache=True)
def low_index_run(
    T,
    trail,
    st,
    fr,
    path,
    floor,
    maxn,
    colmajor,
    conj,
    conj_off,
    col_start,
    max_nodes,
    sol_tables,
    sol_n,
    task_depth,
    tasks,
):
    """Depth-first Sims search over partial coset tables.

    ``fr[d] = (row, col, candidate, trail mark, cosets before)`` is the
    branch frame at depth d.  The search first replays ``path`` (one
    candidate per depth) to rebuild a node, then continues according to
    ``st[L_MODE]``, never backtracking above depth ``floor``.

    Complete canonical tables go to ``sol_tables``/``sol_n``.  When
    ``task_depth`` > 0, canonical nodes reached at that depth are written
    to ``tasks`` as candidate paths instead of being expanded.

    Returns DONE, PAUSED (node budget spent; ``path`` holds the resume
    point), BUFFER_FULL (same, output buffer needs draining), or BAD_REPLAY.
    """
    ncols = T.shape[1]
    lab = np.empty(maxn, dtype=np.int64)
    inv = np.empty(maxn, dtype=np.int64)
    colptr = np.empty(ncols, dtype=np.int64)
    T[:, :] = -1
    st[L_N] = 1
    st[L_TRAIL] = 0
    st[L_DEPTH] = 0
    st[L_NSOL] = 0
    st[L_NTASK] = 0
    nodes_start = st[L_NODES]
    plen = path.shape[0]
    for d in range(plen):
        r, x = _li_first_undefined(T, st[L_N], colmajor)
        if r < 0:
            return BAD_REPLAY
        c = path[d]
        fr[d, 0] = r
        fr[d, 1] = x
        fr[d, 2] = c
        fr[d, 3] = st[L_TRAIL]
        fr[d, 4] = st[L_N]
        if c > st[L_N] or (c == st[L_N] and c >= maxn) or (c < st[L_N] and T[c, x ^ 1] >= 0):
            return BAD_REPLAY
        _li_apply(T, trail, st, r, x, c)
        if not _li_deduce(T, trail, st, fr[d, 3], conj, conj_off, col_start):
            return BAD_REPLAY
        st[L_DEPTH] = d + 1
    mode = st[L_MODE]
    while True:
        depth = st[L_DEPTH]
        if mode == ENTER:
            if st[L_NODES] - nodes_start >= max_nodes:
                st[L_MODE] = ENTER
                return PAUSED
            st[L_NODES] += 1
            mode = NEXT
            n = st[L_N]
            if not _li_canonical(T, n, colmajor, lab, inv, colptr):
                continue
            r, x = _li_first_undefined(T, n, colmajor)
            if r < 0:
                k = st[L_NSOL]
                sol_tables[k, :n, :] = T[:n, :]
                sol_n[k] = n
                st[L_NSOL] = k + 1
                if k + 1 == sol_n.shape[0]:
                    st[L_MODE] = NEXT
                    return BUFFER_FULL
                continue
            if task_depth > 0 and depth == task_depth:
                k = st[L_NTASK]
                for d in range(depth):
                    tasks[k, d] = fr[d, 2]
                st[L_NTASK] = k + 1
                if k + 1 == tasks.shape[0]:
                    st[L_MODE] = NEXT
                    return BUFFER_FULL
                continue
            fr[depth, 0] = r
            fr[depth, 1] = x
            fr[depth, 2] = -1
            fr[depth, 3] = st[L_TRAIL]
            fr[depth, 4] = n
            st[L_DEPTH] = depth + 1
            continue
        # mode NEXT: advance the candidate of the top frame
        if depth <= floor:
            st[L_MODE] = NEXT
            return DONE
        d = depth - 1
        _li_undo(T, trail, st, fr[d, 3])
        n0 = fr[d, 4]
        st[L_N] = n0
        r = fr[d, 0]
        x = fr[d, 1]
        c = fr[d, 2] + 1
        while c <= n0:
            if c < n0:
                if T[c, x ^ 1] < 0:
                    break
            elif n0 < maxn:
                break
            c += 1
        if c > n0:
            st[L_DEPTH] = d
            continue
        fr[d, 2] = c
        _li_apply(T, trail, st, r, x, c)
        if _li_deduce(T, trail, st, fr[d, 3], conj, conj_off, col_start):
            mode = ENTER
