"""Fast noiseless simulation engine (numba JIT).

Runs the same select -> answer -> record -> repartition loop as
``selection.run_framework`` against a complete ground truth, with the
closure, pair aggregates, and partition maintained incrementally so that
experiment-scale instances (thousands of objects, millions of questions)
finish in seconds.  Question sampling uses lazy pools: candidate ids are
popped uniformly at random and revalidated on the spot, which is an exact
uniform sampler because candidacy, once lost, is never regained.

Strategy fidelity is checked against the reference engine by the test
suite: FRQ and BruteForce are deterministic and must match question for
question; the randomized strategies must match in distribution.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .model import Outcome

BRUTE, RANDOMQ, RANDOMP, FRQ, CQ_NOMO, NOCQ_MO, NOCQ_NOMO = range(7)

STRATEGY_CODES = {
    "bruteforce": BRUTE,
    "randomq": RANDOMQ,
    "randomp": RANDOMP,
    "frq": FRQ,
    "cq-nomo": CQ_NOMO,
    "nocq-mo": NOCQ_MO,
    "nocq-nomo": NOCQ_NOMO,
}

OUTCOME_CODES = {0: Outcome.X_BETTER, 1: Outcome.Y_BETTER, 2: Outcome.INDIFFERENT}

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True, inline="always")
def _next_u64(state):
    state = state + _GOLDEN
    z = state
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return state, z


@njit(cache=True, inline="always")
def _randint(state, bound):
    state, z = _next_u64(state)
    return state, np.int64(z % np.uint64(bound))


@njit(cache=True)
def _apply_strict(c, w, l, C, n, better, indcnt, known, ruled, ro_count, status, d_dom, in_deg, out_deg, ind_deg, cnt, slist, s_len):
    better[w, l] += 1
    known[w, l] += 1
    known[l, w] += 1
    out_deg[c, w] += 1
    in_deg[c, l] += 1
    if better[w, l] == 1 and ruled[w, l] == 0:
        ruled[w, l] = 1
        ro_count[w] += 1
        if ro_count[w] == n - 1 and status[w] == 0:
            status[w] = 1
            cnt[3] -= 1
    if known[w, l] == 1:
        # First fact for the pair; track it for the FRQ fewest-remaining
        # shortlist of partially known pairs.
        slist[s_len[0]] = min(w, l) * n + max(w, l)
        s_len[0] += 1
    if known[w, l] == C:
        _pair_complete(w, l, status, better, d_dom, cnt)


@njit(cache=True)
def _pair_complete(u, v, status, better, d_dom, cnt):
    if better[u, v] >= 1 and better[v, u] == 0:
        d_dom[u] += 1
        if status[v] == 0:
            status[v] = 2
            cnt[3] -= 1
    elif better[v, u] >= 1 and better[u, v] == 0:
        d_dom[v] += 1
        if status[u] == 0:
            status[u] = 2
            cnt[3] -= 1


@njit(cache=True)
def _apply_ind(c, u, v, C, n, indiff, better, indcnt, known, ruled, ro_count, status, d_dom, in_deg, out_deg, ind_deg, cnt, slist, s_len):
    indiff[c, u, v] = 1
    indiff[c, v, u] = 1
    indcnt[u, v] += 1
    indcnt[v, u] += 1
    known[u, v] += 1
    known[v, u] += 1
    ind_deg[c, u] += 1
    ind_deg[c, v] += 1
    if known[u, v] == 1:
        slist[s_len[0]] = min(u, v) * n + max(u, v)
        s_len[0] += 1
    if indcnt[u, v] == C:
        if ruled[u, v] == 0:
            ruled[u, v] = 1
            ro_count[u] += 1
            if ro_count[u] == n - 1 and status[u] == 0:
                status[u] = 1
                cnt[3] -= 1
        if ruled[v, u] == 0:
            ruled[v, u] = 1
            ro_count[v] += 1
            if ro_count[v] == n - 1 and status[v] == 0:
                status[v] = 1
                cnt[3] -= 1
    if known[u, v] == C:
        _pair_complete(u, v, status, better, d_dom, cnt)


@njit(cache=True)
def _record_strict(c, u, v, C, n, strict, indiff, better, indcnt, known, ruled, ro_count, status, d_dom, in_deg, out_deg, ind_deg, cnt, slist, s_len):
    """Insert u > v on c, closing transitively; derived facts bump cnt[2]."""
    for p in range(n):
        if p != u and strict[c, p, u] == 0:
            continue
        if strict[c, p, v] == 1:
            # p already reaches v, hence every successor of v as well.
            continue
        for s in range(n):
            if s != v and strict[c, v, s] == 0:
                continue
            if strict[c, p, s] == 0:
                strict[c, p, s] = 1
                _apply_strict(c, p, s, C, n, better, indcnt, known, ruled, ro_count, status, d_dom, in_deg, out_deg, ind_deg, cnt, slist, s_len)
                if p != u or s != v:
                    cnt[2] += 1


@njit(cache=True, inline="always")
def _outcome_known(c, u, v, strict, indiff):
    return strict[c, u, v] == 1 or strict[c, v, u] == 1 or indiff[c, u, v] == 1


@njit(cache=True)
def _frq_score(c, x, y, in_deg, out_deg, ind_deg):
    by = in_deg[c, y] + ind_deg[c, y] - out_deg[c, y]
    bx = in_deg[c, x] + ind_deg[c, x] - out_deg[c, x]
    return by - bx


@njit(cache=True)
def _frq_pick_criterion(x, y, c_count, strict, indiff, in_deg, out_deg, ind_deg):
    best_c = -1
    best_score = np.int64(0)
    for c in range(c_count):
        if _outcome_known(c, x, y, strict, indiff):
            continue
        score = _frq_score(c, x, y, in_deg, out_deg, ind_deg)
        if best_c < 0 or score > best_score:
            best_c = c
            best_score = score
    return best_c


@njit(cache=True)
def _frq_touched_pick(n, C, status, better, known, d_dom, slist, s_len):
    """Best tier-1 candidate among partially known pairs (the shortlist).

    Every candidate pair with at least one recorded or derived fact lives in
    the shortlist, so together with the fresh-pair walk this covers the whole
    tier-1 argmin.  Compacts the shortlist in place: resolved pairs and pairs
    with no tier-1 orientation left are dropped for good (candidacy loss is
    monotone in every conjunct).  Returns (x, y) or (-1, -1).
    """
    write = 0
    bx = -1
    by = -1
    bk0 = 0
    bk1 = 0
    bk2 = 0
    for i in range(s_len[0]):
        pid = slist[i]
        u = pid // n
        v = pid % n
        if known[u, v] >= C:
            continue
        qualifies = False
        unk = C - known[u, v]
        for o in range(2):
            x = u if o == 0 else v
            y = v if o == 0 else u
            if status[x] != 0 or better[x, y] != 0 or status[y] == 2:
                continue
            qualifies = True
            k1 = d_dom[x]
            k2 = -d_dom[y]
            if (
                bx < 0
                or unk < bk0
                or (unk == bk0 and (k1 < bk1 or (k1 == bk1 and (k2 < bk2 or (k2 == bk2 and (x < bx or (x == bx and y < by)))))))
            ):
                bx = x
                by = y
                bk0 = unk
                bk1 = k1
                bk2 = k2
        if qualifies:
            slist[write] = pid
            write += 1
    s_len[0] = write
    return bx, by


@njit(cache=True)
def _frq_fresh_pick(n, C, status, better, known, d_dom, order, xs, counts):
    """Best tier-1 candidate among fresh pairs (no recorded fact yet).

    All fresh candidates share the question count C, so the key reduces to
    (d(x) asc, d(y) desc, x, y).  Objects are counting-sorted by dominance
    count; undetermined x's are walked in (d asc, index asc) groups, taking
    each x's first eligible partner in (d desc, index asc) order and
    stopping a walk as soon as it can no longer beat the group's best.
    """
    # order: all objects by (d desc, index asc).
    for i in range(n + 1):
        counts[i] = 0
    for y in range(n):
        counts[d_dom[y]] += 1
    pos = 0
    for d in range(n - 1, -1, -1):
        c = counts[d]
        counts[d] = pos
        pos += c
    for y in range(n):
        d = d_dom[y]
        order[counts[d]] = y
        counts[d] += 1
    # xs: undetermined objects by (d asc, index asc).
    for i in range(n + 1):
        counts[i] = 0
    n_x = 0
    for x in range(n):
        if status[x] == 0:
            counts[d_dom[x]] += 1
            n_x += 1
    pos = 0
    for d in range(n):
        c = counts[d]
        counts[d] = pos
        pos += c
    for x in range(n):
        if status[x] == 0:
            d = d_dom[x]
            xs[counts[d]] = x
            counts[d] += 1
    i = 0
    while i < n_x:
        group_d = d_dom[xs[i]]
        bx = -1
        by = -1
        bdy = -1
        while i < n_x and d_dom[xs[i]] == group_d:
            x = xs[i]
            i += 1
            for oi in range(n):
                y = order[oi]
                if bx >= 0 and d_dom[y] < bdy:
                    break
                if y == x or status[y] == 2 or known[x, y] != 0:
                    continue
                if bx < 0 or d_dom[y] > bdy:
                    bx = x
                    by = y
                    bdy = d_dom[y]
                break
        if bx >= 0:
            return bx, by
    return -1, -1


@njit(cache=True)
def _frq_scan(n, C, status, better, known, d_dom):
    """Argmin over oriented candidate pairs of the open-question count.

    Key order: fewest open criteria, then smallest d(x), largest d(y),
    smallest x, smallest y; tier-1 pairs (y not dominated) beat tier-2.
    """
    b1x = -1
    b1y = -1
    b1k0 = 0
    b1k1 = 0
    b1k2 = 0
    b2x = -1
    b2y = -1
    b2k0 = 0
    b2k1 = 0
    b2k2 = 0
    for x in range(n):
        if status[x] != 0:
            continue
        for y in range(n):
            if y == x or better[x, y] != 0:
                continue
            unk = C - known[x, y]
            if unk <= 0:
                continue
            k0 = unk
            k1 = d_dom[x]
            k2 = -d_dom[y]
            if status[y] != 2:
                if (
                    b1x < 0
                    or k0 < b1k0
                    or (k0 == b1k0 and (k1 < b1k1 or (k1 == b1k1 and (k2 < b1k2 or (k2 == b1k2 and (x < b1x or (x == b1x and y < b1y)))))))
                ):
                    b1x = x
                    b1y = y
                    b1k0 = k0
                    b1k1 = k1
                    b1k2 = k2
            else:
                if (
                    b2x < 0
                    or k0 < b2k0
                    or (k0 == b2k0 and (k1 < b2k1 or (k1 == b2k1 and (k2 < b2k2 or (k2 == b2k2 and (x < b2x or (x == b2x and y < b2y)))))))
                ):
                    b2x = x
                    b2y = y
                    b2k0 = k0
                    b2k1 = k1
                    b2k2 = k2
    if b1x >= 0:
        return b1x, b1y
    return b2x, b2y


@njit(cache=True)
def _classify_cq(qid, n, C, strict, indiff, better, status):
    c = qid % C
    rest = qid // C
    y = rest % n
    x = rest // n
    if status[x] != 0:
        return 0
    if better[x, y] != 0:
        return 0
    if _outcome_known(c, x, y, strict, indiff):
        return 0
    if status[y] == 2:
        return 2
    return 1


@njit(cache=True)
def _classify_nocq(qid, n, C, strict, indiff, status):
    c = qid % C
    rest = qid // C
    v = rest % n
    u = rest // n
    if _outcome_known(c, u, v, strict, indiff):
        return 0
    if status[u] == 2 and status[v] == 2:
        return 2
    return 1


@njit(cache=True)
def _pool_select(pool1, len1, pool2, len2, rngstate, n, C, strict, indiff, better, status, oriented, use_mo):
    """Pop-and-revalidate uniform selection over the tiered lazy pools.

    Returns (qid, new rng state, new len1, new len2); qid < 0 when empty.
    With ``use_mo`` false everything lives in pool1 and the tier result is
    ignored.
    """
    while True:
        if len1 > 0:
            rngstate, i = _randint(rngstate, len1)
            qid = pool1[i]
            len1 -= 1
            pool1[i] = pool1[len1]
            if oriented:
                st = _classify_cq(qid, n, C, strict, indiff, better, status)
            else:
                st = _classify_nocq(qid, n, C, strict, indiff, status)
            if st == 0:
                continue
            if use_mo and st == 2:
                pool2[len2] = qid
                len2 += 1
                continue
            return qid, rngstate, len1, len2
        elif len2 > 0:
            rngstate, i = _randint(rngstate, len2)
            qid = pool2[i]
            len2 -= 1
            pool2[i] = pool2[len2]
            if oriented:
                st = _classify_cq(qid, n, C, strict, indiff, better, status)
            else:
                st = _classify_nocq(qid, n, C, strict, indiff, status)
            if st == 0:
                continue
            return qid, rngstate, len1, len2
        else:
            return np.int64(-1), rngstate, len1, len2


@njit(cache=True)
def _pair_class(u, v, C, status, better, known):
    alive_uv = status[u] == 0 and better[u, v] == 0
    alive_vu = status[v] == 0 and better[v, u] == 0
    if known[u, v] >= C or not (alive_uv or alive_vu):
        return 0
    if (alive_uv and status[v] != 2) or (alive_vu and status[u] != 2):
        return 1
    return 2


@njit(cache=True)
def _run(rel, strategy, seed, transcript, t_q, t_out):
    C, n, _ = rel.shape
    strict = np.zeros((C, n, n), dtype=np.uint8)
    indiff = np.zeros((C, n, n), dtype=np.uint8)
    better = np.zeros((n, n), dtype=np.int16)
    indcnt = np.zeros((n, n), dtype=np.int16)
    known = np.zeros((n, n), dtype=np.int16)
    ruled = np.zeros((n, n), dtype=np.uint8)
    ro_count = np.zeros(n, dtype=np.int32)
    status = np.zeros(n, dtype=np.int8)
    d_dom = np.zeros(n, dtype=np.int32)
    in_deg = np.zeros((C, n), dtype=np.int32)
    out_deg = np.zeros((C, n), dtype=np.int32)
    ind_deg = np.zeros((C, n), dtype=np.int32)
    # cnt: posed, recorded, derived, objects still undetermined
    cnt = np.zeros(4, dtype=np.int64)
    cnt[3] = n
    if n == 1:
        status[0] = 1
        cnt[3] = 0

    rngstate = np.uint64(seed)
    npairs = n * (n - 1) // 2
    total = C * npairs

    # Pairs that reached exactly one open criterion (FRQ shortlist).
    slist = np.empty(max(npairs, 1), dtype=np.int64)
    s_len = np.zeros(1, dtype=np.int64)

    oriented = strategy == RANDOMQ or strategy == CQ_NOMO
    use_mo = strategy == RANDOMQ or strategy == NOCQ_MO or strategy == RANDOMP or strategy == FRQ

    # Lazy pools (question ids) for the uniform strategies.
    pool1 = np.empty(1, dtype=np.int64)
    pool2 = np.empty(1, dtype=np.int64)
    len1 = 0
    len2 = 0
    if oriented:
        pool1 = np.empty(n * n * C, dtype=np.int64)
        pool2 = np.empty(n * n * C, dtype=np.int64)
        for x in range(n):
            for y in range(n):
                if x != y:
                    for c in range(C):
                        pool1[len1] = (x * n + y) * C + c
                        len1 += 1
    elif strategy == NOCQ_MO or strategy == NOCQ_NOMO:
        pool1 = np.empty(total, dtype=np.int64)
        pool2 = np.empty(total, dtype=np.int64)
        for u in range(n):
            for v in range(u + 1, n):
                for c in range(C):
                    pool1[len1] = (u * n + v) * C + c
                    len1 += 1
    elif strategy == RANDOMP:
        pool1 = np.empty(npairs, dtype=np.int64)
        pool2 = np.empty(npairs, dtype=np.int64)
        for u in range(n):
            for v in range(u + 1, n):
                pool1[len1] = u * n + v
                len1 += 1

    ptr = 0  # BruteForce enumeration pointer
    active_u = -1  # RandomP / FRQ active pair
    active_v = -1
    crit_buf = np.empty(C, dtype=np.int64)
    order_buf = np.empty(n, dtype=np.int64)
    xs_buf = np.empty(n, dtype=np.int64)
    count_buf = np.empty(n + 1, dtype=np.int64)

    while True:
        if strategy == BRUTE:
            if ptr >= total:
                break
            c = ptr // npairs
            rank = ptr % npairs
            ptr += 1
            u = 0
            row = n - 1
            while rank >= row:
                rank -= row
                u += 1
                row -= 1
            qx = u
            qy = u + 1 + rank
            qc = c
        else:
            if cnt[3] == 0:
                break
            qx = -1
            qy = -1
            qc = -1
            if strategy == RANDOMQ or strategy == CQ_NOMO or strategy == NOCQ_MO or strategy == NOCQ_NOMO:
                qid, rngstate, len1, len2 = _pool_select(
                    pool1, len1, pool2, len2, rngstate, n, C, strict, indiff, better, status,
                    oriented, use_mo and strategy != CQ_NOMO,
                )
                if qid < 0:
                    cnt[0] = -1
                    break
                qc = qid % C
                rest = qid // C
                qy = rest % n
                qx = rest // n
            elif strategy == RANDOMP:
                if active_u >= 0 and _pair_class(active_u, active_v, C, status, better, known) == 0:
                    active_u = -1
                if active_u < 0:
                    while True:
                        if len1 > 0:
                            rngstate, i = _randint(rngstate, len1)
                            pid = pool1[i]
                            len1 -= 1
                            pool1[i] = pool1[len1]
                            u = pid // n
                            v = pid % n
                            st = _pair_class(u, v, C, status, better, known)
                            if st == 0:
                                continue
                            if st == 2:
                                pool2[len2] = pid
                                len2 += 1
                                continue
                            active_u = u
                            active_v = v
                            break
                        elif len2 > 0:
                            rngstate, i = _randint(rngstate, len2)
                            pid = pool2[i]
                            len2 -= 1
                            pool2[i] = pool2[len2]
                            u = pid // n
                            v = pid % n
                            if _pair_class(u, v, C, status, better, known) == 0:
                                continue
                            active_u = u
                            active_v = v
                            break
                        else:
                            active_u = -2
                            break
                    if active_u == -2:
                        cnt[0] = -1
                        break
                k = 0
                for c in range(C):
                    if not _outcome_known(c, active_u, active_v, strict, indiff):
                        crit_buf[k] = c
                        k += 1
                rngstate, i = _randint(rngstate, k)
                qc = crit_buf[i]
                if status[active_u] == 0 and better[active_u, active_v] == 0:
                    qx = active_u
                    qy = active_v
                else:
                    qx = active_v
                    qy = active_u
            else:  # FRQ
                picked = False
                if active_u >= 0:
                    if (
                        status[active_u] == 0
                        and better[active_u, active_v] == 0
                        and known[active_u, active_v] < C
                    ):
                        qx = active_u
                        qy = active_v
                        picked = True
                    elif (
                        status[active_v] == 0
                        and better[active_v, active_u] == 0
                        and known[active_v, active_u] < C
                    ):
                        active_u, active_v = active_v, active_u
                        qx = active_u
                        qy = active_v
                        picked = True
                    else:
                        active_u = -1
                if not picked:
                    qx, qy = _frq_touched_pick(n, C, status, better, known, d_dom, slist, s_len)
                    if qx < 0:
                        qx, qy = _frq_fresh_pick(n, C, status, better, known, d_dom, order_buf, xs_buf, count_buf)
                    if qx < 0:
                        # No tier-1 candidate anywhere; fall back to the
                        # full scan for the tier-2 best.
                        qx, qy = _frq_scan(n, C, status, better, known, d_dom)
                    if qx < 0:
                        cnt[0] = -1
                        break
                    active_u = qx
                    active_v = qy
                qc = _frq_pick_criterion(qx, qy, C, strict, indiff, in_deg, out_deg, ind_deg)

        cnt[0] += 1
        # Answer from the ground truth.
        if rel[qc, qx, qy] == 1:
            o = 0
        elif rel[qc, qy, qx] == 1:
            o = 1
        else:
            o = 2
        if transcript:
            t_q[cnt[0] - 1, 0] = qx
            t_q[cnt[0] - 1, 1] = qy
            t_q[cnt[0] - 1, 2] = qc
        if _outcome_known(qc, qx, qy, strict, indiff):
            # Only BruteForce poses questions with derivable outcomes; the
            # derived outcome stands and the fresh answer is discarded.
            if transcript:
                if strict[qc, qx, qy] == 1:
                    t_out[cnt[0] - 1] = 0
                elif strict[qc, qy, qx] == 1:
                    t_out[cnt[0] - 1] = 1
                else:
                    t_out[cnt[0] - 1] = 2
            continue
        if transcript:
            t_out[cnt[0] - 1] = o
        cnt[1] += 1
        if o == 2:
            _apply_ind(qc, qx, qy, C, n, indiff, better, indcnt, known, ruled, ro_count, status, d_dom, in_deg, out_deg, ind_deg, cnt, slist, s_len)
        elif o == 0:
            _record_strict(qc, qx, qy, C, n, strict, indiff, better, indcnt, known, ruled, ro_count, status, d_dom, in_deg, out_deg, ind_deg, cnt, slist, s_len)
        else:
            _record_strict(qc, qy, qx, C, n, strict, indiff, better, indcnt, known, ruled, ro_count, status, d_dom, in_deg, out_deg, ind_deg, cnt, slist, s_len)

    return cnt[0], cnt[1], cnt[2], status


def run_simulation(rel: np.ndarray, strategy: str, seed: int, transcript: bool = False):
    """Run one noiseless simulation; returns a result dict.

    ``rel`` is the (criteria, n, n) boolean strict-preference truth.  With
    ``transcript`` the posed questions and outcomes are returned for
    cross-checking against the reference engine.
    """
    code = STRATEGY_CODES[strategy]
    rel8 = np.ascontiguousarray(rel.astype(np.uint8))
    C, n, _ = rel8.shape
    cap = C * n * (n - 1) // 2 if transcript else 1
    t_q = np.zeros((max(cap, 1), 3), dtype=np.int32)
    t_out = np.zeros(max(cap, 1), dtype=np.int8)
    seed_u = np.uint64(seed & ((1 << 64) - 1))
    posed, recorded, derived, status = _run(rel8, code, seed_u, transcript, t_q, t_out)
    if posed < 0:
        raise RuntimeError(
            "kernel ran out of questions before termination; candidate bookkeeping broke"
        )
    result = {
        "posed": int(posed),
        "recorded": int(recorded),
        "derived": int(derived),
        "status": np.asarray(status),
        "pareto": frozenset(np.flatnonzero(np.asarray(status) == 1).tolist()),
    }
    if transcript:
        result["questions"] = t_q[:posed].copy()
        result["outcomes"] = t_out[:posed].copy()
    return result
