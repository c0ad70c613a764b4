"""Compiled trie traversal with a weighted edit-distance row per depth."""

import numpy as np
from numba import njit

# Slack on the length-gap lower bound so float rounding in the real path
# can never sit below the bound and cause a wrong prune.
_BOUND_SLACK = 1e-9


@njit(cache=True, nogil=True)
def traverse(letters, depth, end, token, maxbelow, max_depth, null_code,
             query, iuc, duc, suc, thr, seg_lo, seg_hi, seg_thr, min_indel):
    """Return (token ids, costs) of word ends within ``thr[depth]`` of ``query``.

    ``thr[L]`` is the allowed cost for a record token of length L.  A subtree
    is skipped only when no word end below it can reach its own threshold:
    either the row minimum already exceeds the largest threshold below, or
    the row plus the cheapest possible length-gap cost does.
    """
    m = query.shape[0]
    rows = np.empty((max_depth + 1, m + 1), dtype=np.float64)
    path = np.empty(max_depth + 1, dtype=np.int64)
    path[0] = null_code

    delc = np.empty(m + 1, dtype=np.float64)
    delc[0] = 0.0
    prevq = null_code
    rows[0, 0] = 0.0
    for j in range(1, m + 1):
        delc[j] = duc[prevq, query[j - 1]]
        rows[0, j] = rows[0, j - 1] + delc[j]
        prevq = query[j - 1]

    cap = 64
    out_tok = np.empty(cap, dtype=np.int32)
    out_cost = np.empty(cap, dtype=np.float64)
    found = 0
    n_seg = seg_lo.shape[0]

    n = letters.shape[0]
    i = 1
    while i < n:
        d = depth[i]
        c = letters[i]
        path[d] = c
        ins = iuc[path[d - 1], c]
        prev = rows[d - 1]
        cur = rows[d]
        v = prev[0] + ins
        cur[0] = v
        mn = v
        for j in range(1, m + 1):
            qj = query[j - 1]
            if qj == c:
                v = prev[j - 1]
            else:
                v = prev[j - 1] + suc[qj, c]
            t = prev[j] + ins
            if t < v:
                v = t
            t = cur[j - 1] + delc[j]
            if t < v:
                v = t
            cur[j] = v
            if v < mn:
                mn = v

        if token[i] >= 0 and cur[m] <= thr[d]:
            if found == cap:
                cap *= 2
                grown_tok = np.empty(cap, dtype=np.int32)
                grown_cost = np.empty(cap, dtype=np.float64)
                grown_tok[:found] = out_tok[:found]
                grown_cost[:found] = out_cost[:found]
                out_tok = grown_tok
                out_cost = grown_cost
            out_tok[found] = token[i]
            out_cost[found] = cur[m]
            found += 1

        deepest = maxbelow[i]
        descend = False
        if deepest > d and mn <= thr[deepest]:
            if min_indel <= 0.0:
                descend = True
            else:
                for s in range(n_seg):
                    lo = seg_lo[s]
                    hi = seg_hi[s]
                    if lo < d + 1:
                        lo = d + 1
                    if hi > deepest:
                        hi = deepest
                    if lo > hi:
                        continue
                    r_lo = lo - d
                    r_hi = hi - d
                    limit = seg_thr[s]
                    for j in range(m + 1):
                        need = m - j
                        gap = 0
                        if need < r_lo:
                            gap = r_lo - need
                        elif need > r_hi:
                            gap = need - r_hi
                        if cur[j] + min_indel * gap - _BOUND_SLACK * (1 + gap) <= limit:
                            descend = True
                            break
                    if descend:
                        break
        if descend:
            i += 1
        else:
            i = end[i]

    return out_tok[:found], out_cost[:found]
