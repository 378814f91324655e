"""Hot loops: the (2, l) pebble game and the (s,t)-triple prefix search.

Everything here is plain integer/array code so that the same source runs
compiled (numba) or interpreted (see ``_accel``).
"""
import numpy as np

from ._accel import jit


# ---------------------------------------------------------------- pebble game

@jit
def _fetch(x, other, out_head, out_eid, outdeg, peb, seen, par_v, par_slot, stack):
    # move one free pebble to x along a directed path, never taking from x or other
    n = peb.shape[0]
    for i in range(n):
        seen[i] = False
    seen[x] = True
    stack[0] = x
    sp = 1
    found = -1
    while sp > 0 and found < 0:
        sp -= 1
        y = stack[sp]
        for i in range(outdeg[y]):
            z = out_head[y, i]
            if seen[z]:
                continue
            seen[z] = True
            par_v[z] = y
            par_slot[z] = i
            if z != other and peb[z] > 0:
                found = z
                break
            stack[sp] = z
            sp += 1
    if found < 0:
        return False
    cur = found
    while cur != x:
        p = par_v[cur]
        slot = par_slot[cur]
        eid = out_eid[p, slot]
        last = outdeg[p] - 1
        out_head[p, slot] = out_head[p, last]
        out_eid[p, slot] = out_eid[p, last]
        outdeg[p] = last
        out_head[cur, outdeg[cur]] = p
        out_eid[cur, outdeg[cur]] = eid
        outdeg[cur] += 1
        peb[cur] -= 1
        peb[p] += 1
        cur = p
    return True


@jit
def _gather(u, v, need, k, out_head, out_eid, outdeg, peb, seen, par_v, par_slot, stack):
    while peb[u] + peb[v] < need:
        if peb[u] < k and _fetch(u, v, out_head, out_eid, outdeg, peb, seen, par_v, par_slot, stack):
            continue
        if peb[v] < k and _fetch(v, u, out_head, out_eid, outdeg, peb, seen, par_v, par_slot, stack):
            continue
        return False
    return True


@jit
def _place(u, v, eid, out_head, out_eid, outdeg, peb):
    x = u
    y = v
    if peb[u] == 0:
        x = v
        y = u
    out_head[x, outdeg[x]] = y
    out_eid[x, outdeg[x]] = eid
    outdeg[x] += 1
    peb[x] -= 1


@jit
def _reach(u, v, out_head, outdeg, stack):
    n = outdeg.shape[0]
    inside = np.zeros(n, np.bool_)
    inside[u] = True
    inside[v] = True
    stack[0] = u
    stack[1] = v
    sp = 2
    while sp > 0:
        sp -= 1
        y = stack[sp]
        for i in range(outdeg[y]):
            z = out_head[y, i]
            if not inside[z]:
                inside[z] = True
                stack[sp] = z
                sp += 1
    return inside


@jit
def _minimal_block(n, eu, ev, accepted, k, l, u, v, members):
    """Shrink a tight vertex set around u, v to the inclusion-minimal one."""
    seen = np.zeros(n, np.bool_)
    par_v = np.zeros(n, np.int64)
    par_slot = np.zeros(n, np.int64)
    stack = np.zeros(n + 2, np.int64)
    m = eu.shape[0]
    for w in range(n):
        if not members[w] or w == u or w == v:
            continue
        trial = members.copy()
        trial[w] = False
        out_head = np.full((n, k), -1, np.int64)
        out_eid = np.full((n, k), -1, np.int64)
        outdeg = np.zeros(n, np.int64)
        peb = np.full(n, k, np.int64)
        for j in range(m):
            if accepted[j] and trial[eu[j]] and trial[ev[j]]:
                _gather(eu[j], ev[j], l + 1, k, out_head, out_eid, outdeg, peb,
                        seen, par_v, par_slot, stack)
                _place(eu[j], ev[j], j, out_head, out_eid, outdeg, peb)
        if not _gather(u, v, l + 1, k, out_head, out_eid, outdeg, peb,
                       seen, par_v, par_slot, stack):
            members = _reach(u, v, out_head, outdeg, stack)
    return members


@jit
def pebble_game(n, eu, ev, k, l, want_circuits, stop_first):
    """Run the (k, l) pebble game over the edges in index order.

    Returns (accepted, circuits, pebbles, out_head, out_eid, outdeg).  Row j
    of ``circuits`` marks the minimal tight vertex set spanned by rejected
    edge j (only filled when ``want_circuits``).
    """
    m = eu.shape[0]
    out_head = np.full((n, k), -1, np.int64)
    out_eid = np.full((n, k), -1, np.int64)
    outdeg = np.zeros(n, np.int64)
    peb = np.full(n, k, np.int64)
    seen = np.zeros(n, np.bool_)
    par_v = np.zeros(n, np.int64)
    par_slot = np.zeros(n, np.int64)
    stack = np.zeros(n + 2, np.int64)
    accepted = np.zeros(m, np.bool_)
    rows = m if want_circuits else 0
    circuits = np.zeros((rows, n), np.bool_)
    for j in range(m):
        u = eu[j]
        v = ev[j]
        if _gather(u, v, l + 1, k, out_head, out_eid, outdeg, peb, seen, par_v, par_slot, stack):
            _place(u, v, j, out_head, out_eid, outdeg, peb)
            accepted[j] = True
        else:
            if want_circuits:
                block = _reach(u, v, out_head, outdeg, stack)
                block = _minimal_block(n, eu, ev, accepted, k, l, u, v, block)
                for i in range(n):
                    circuits[j, i] = block[i]
            if stop_first:
                break
    return accepted, circuits, peb, out_head, out_eid, outdeg


# ------------------------------------------------------------- triple search

@jit
def _popcount(x, n):
    c = 0
    for i in range(n):
        if (x >> i) & 1:
            c += 1
    return c


@jit
def _low_index(x, n):
    for i in range(n):
        if (x >> i) & 1:
            return i
    return -1


@jit
def _xorshift(state):
    state ^= (state << 13) & 0xFFFFFFFF
    state ^= state >> 17
    state ^= (state << 5) & 0xFFFFFFFF
    return state & 0xFFFFFFFF


@jit
def _feasible(nbr, n, full, P, U):
    C = P & ~U
    R = full & ~P
    for x in range(n):
        if (U >> x) & 1:
            if nbr[x] & R == 0:
                return False
        elif (R >> x) & 1:
            c = nbr[x] & C
            if c & (c - 1):
                return False
    return True


@jit
def _children(nbr, n, s, t, full, P, U, c_root, c_x, c_kind, rng,
              cand_v, cand_w, cand_key, d):
    C = P & ~U
    last = full & ~(1 << t)
    cnt = 0
    for v in range(n):
        if v == t or (P >> v) & 1:
            continue
        into = nbr[v] & P
        if into == 0:
            continue
        K = 0
        if c_root == 0 and c_kind == 1 and v != c_x and (U >> s) & 1:
            K |= 1 << s
        if c_root == 1 and c_kind == 1 and (P >> c_x) & 1 and (U >> c_x) & 1:
            K |= 1 << c_x
        must = into & (C | K)
        if must & (must - 1):
            continue
        pin = _popcount(into, n)
        nP = P | (1 << v)
        for w in range(n):
            if not (into >> w) & 1:
                continue
            if must != 0 and (must >> w) & 1 == 0:
                continue
            if c_root == 0 and v == c_x:
                if c_kind == 1 and w == s:
                    continue
                if c_kind == 0 and w != s:
                    continue
            closes = into & ~(1 << w)
            nU = (U & ~closes) | (1 << v)
            if nP != last and not _feasible(nbr, n, full, nP, nU):
                continue
            rng = _xorshift(rng)
            key = rng + (pin << 32)
            if must != 0:
                key += 1 << 40
            # insertion keeps the row sorted by key, descending
            i = cnt
            while i > 0 and cand_key[d, i - 1] < key:
                cand_key[d, i] = cand_key[d, i - 1]
                cand_v[d, i] = cand_v[d, i - 1]
                cand_w[d, i] = cand_w[d, i - 1]
                i -= 1
            cand_key[d, i] = key
            cand_v[d, i] = v
            cand_w[d, i] = w
            cnt += 1
    return cnt, rng


@jit
def _finish(nbr, n, t, P, U, c_root, c_x, c_kind):
    into = nbr[t] & P
    if into & U != U:
        return -1
    extra = into & ~U
    if extra == 0 or extra & (extra - 1):
        return -1
    if c_root == 1:
        if c_kind == 0 and extra != (1 << c_x):
            return -1
        if c_kind == 1 and (U >> c_x) & 1 == 0:
            return -1
    return _low_index(extra, n)


@jit
def triple_search(nbr, n, s, t, c_root, c_x, c_kind, seed, limit, dead,
                  order_out, parent_out):
    """Depth-first search for an (s,t)-ordering of a graph with 2n-2 edges.

    A prefix state is (P, U): the placed vertices and those still waiting
    for their later I-neighbour.  Each new vertex v takes one prefix edge as
    its O-in edge (from w); every other prefix edge must close a distinct
    waiting vertex.  ``dead`` collects refuted states and may be shared
    across calls.  Constraint: c_root 0/1 (edge at s / at t), c_x the other
    endpoint, c_kind 0 = O, 1 = I; c_root < 0 means none.

    Returns 1 (found, outputs filled), 0 (no ordering exists) or -1 (node
    budget ``limit`` exhausted; limit < 0 means unbounded).
    """
    full = (1 << n) - 1
    last = full & ~(1 << t)
    maxc = n * n + 1
    cand_v = np.zeros((n, maxc), np.int64)
    cand_w = np.zeros((n, maxc), np.int64)
    cand_key = np.zeros((n, maxc), np.int64)
    cnt = np.zeros(n, np.int64)
    idx = np.zeros(n, np.int64)
    Ps = np.zeros(n, np.int64)
    Us = np.zeros(n, np.int64)
    rng = (seed * 2654435761 + 12345) & 0xFFFFFFFF
    if rng == 0:
        rng = 1
    order_out[0] = s
    parent_out[s] = -1
    P0 = 1 << s
    if P0 == last:
        w = _finish(nbr, n, t, P0, P0, c_root, c_x, c_kind)
        if w < 0:
            return 0
        order_out[1] = t
        parent_out[t] = w
        return 1
    Ps[0] = P0
    Us[0] = P0
    c, rng = _children(nbr, n, s, t, full, P0, P0, c_root, c_x, c_kind, rng,
                       cand_v, cand_w, cand_key, 0)
    cnt[0] = c
    idx[0] = 0
    nodes = 0
    d = 0
    while d >= 0:
        if idx[d] < cnt[d]:
            i = idx[d]
            idx[d] += 1
            v = cand_v[d, i]
            w = cand_w[d, i]
            P = Ps[d]
            U = Us[d]
            into = nbr[v] & P
            nP = P | (1 << v)
            nU = (U & ~(into & ~(1 << w))) | (1 << v)
            nodes += 1
            if limit >= 0 and nodes > limit:
                return -1
            if nP == last:
                wt = _finish(nbr, n, t, nP, nU, c_root, c_x, c_kind)
                if wt >= 0:
                    order_out[d + 1] = v
                    parent_out[v] = w
                    order_out[d + 2] = t
                    parent_out[t] = wt
                    return 1
                continue
            if (nP, nU) in dead:
                continue
            d += 1
            Ps[d] = nP
            Us[d] = nU
            order_out[d] = v
            parent_out[v] = w
            c, rng = _children(nbr, n, s, t, full, nP, nU, c_root, c_x, c_kind, rng,
                               cand_v, cand_w, cand_key, d)
            cnt[d] = c
            idx[d] = 0
        else:
            dead[(Ps[d], Us[d])] = True
            d -= 1
    return 0
