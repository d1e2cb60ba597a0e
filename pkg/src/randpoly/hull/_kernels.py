"""Incremental quickhull core, written for numba.

One monolithic kernel: growable flat arrays for the facet soup, linked-list
outside sets, furthest-point insertion, BFS over ridge adjacency for the
visible region, and cone construction over the horizon.  Facet hyperplanes
come from one d x d Gaussian elimination per facet: edge rows force
n . e = 0 and the row (interior - p0) . n = -1 fixes the outward
orientation, so no LAPACK call and no sign fix (per-facet SVD is far too
slow here).  Cone adjacency is matched through an open-addressing ridge
hash.  Facet data is packed row-wise (verts+adjacency in one int32 row,
normal+offset in one float row) to keep the random facet accesses of the
BFS cache-friendly.  The same source runs uncompiled when the numpy
backend is selected.

Status codes instead of exceptions (numba-friendly):
  0 ok, 1 rank-deficient input, 2 incident point where strict sidedness was
  required, 3 internal adjacency inconsistency (also a degeneracy symptom).
"""

import numpy as np

from .._backend import default_backend, jit_compile

STATUS_OK = 0
STATUS_RANK_DEFICIENT = 1
STATUS_INCIDENT = 2
STATUS_ADJACENCY = 3


def _quickhull(points, rel_eps):  # noqa: C901 - hot loop, kept monolithic for numba
    n, d = points.shape

    empty_v = np.empty((0, d), np.int64)
    empty_n = np.empty((0, d), np.float64)
    empty_o = np.empty(0, np.float64)

    scale = 0.0
    for i in range(n):
        for j in range(d):
            a = abs(points[i, j])
            if a > scale:
                scale = a
    if scale == 0.0:
        return STATUS_RANK_DEFICIENT, empty_v, empty_n, empty_o, 0, 0
    tol = rel_eps * scale

    # ---- initial simplex: extremes, then greedy max-residual points ----
    simplex = np.empty(d + 1, np.int64)
    i0 = 0
    i1 = 0
    for i in range(n):
        if points[i, 0] < points[i0, 0]:
            i0 = i
        if points[i, 0] > points[i1, 0]:
            i1 = i
    if i1 == i0:
        best = -1.0
        for i in range(n):
            if i == i0:
                continue
            s = 0.0
            for j in range(d):
                dx = points[i, j] - points[i0, j]
                s += dx * dx
            if s > best:
                best = s
                i1 = i
    simplex[0] = i0
    simplex[1] = i1

    Q = np.zeros((d, d))  # orthonormal basis of span(simplex - p0)
    v = np.empty(d)
    for j in range(d):
        v[j] = points[i1, j] - points[i0, j]
    nv = np.sqrt(np.sum(v * v))
    if nv <= tol:
        return STATUS_RANK_DEFICIENT, empty_v, empty_n, empty_o, 0, 0
    for j in range(d):
        Q[j, 0] = v[j] / nv
    k = 1
    while k < d:
        best = tol
        bi = -1
        for i in range(n):
            for j in range(d):
                v[j] = points[i, j] - points[i0, j]
            for c in range(k):
                dotc = 0.0
                for j in range(d):
                    dotc += v[j] * Q[j, c]
                for j in range(d):
                    v[j] -= dotc * Q[j, c]
            r = 0.0
            for j in range(d):
                r += v[j] * v[j]
            r = np.sqrt(r)
            if r > best:
                best = r
                bi = i
        if bi < 0:
            return STATUS_RANK_DEFICIENT, empty_v, empty_n, empty_o, 0, 0
        simplex[k + 1] = bi
        # recompute the winning residual, twice for numerical hygiene
        for j in range(d):
            v[j] = points[bi, j] - points[i0, j]
        for _rep in range(2):
            for c in range(k):
                dotc = 0.0
                for j in range(d):
                    dotc += v[j] * Q[j, c]
                for j in range(d):
                    v[j] -= dotc * Q[j, c]
        nv = 0.0
        for j in range(d):
            nv += v[j] * v[j]
        nv = np.sqrt(nv)
        if nv <= tol:
            return STATUS_RANK_DEFICIENT, empty_v, empty_n, empty_o, 0, 0
        for j in range(d):
            Q[j, k] = v[j] / nv
        k += 1

    interior = np.zeros(d)
    for t in range(d + 1):
        for j in range(d):
            interior[j] += points[simplex[t], j]
    for j in range(d):
        interior[j] /= d + 1

    # ---- facet storage ----
    # fmeta row: [0:d] sorted vertex indices, [d:2d] neighbor facet per
    # opposite vertex.  fplane row: [0:d] unit outward normal, [d] offset.
    cap = 256
    while cap < 2 * (d + 1):
        cap *= 2
    fmeta = np.full((cap, 2 * d), -1, np.int32)
    fplane = np.empty((cap, d + 1))
    alive = np.zeros(cap, np.bool_)
    head = np.full(cap, -1, np.int32)
    fur_i = np.full(cap, -1, np.int32)
    fur_d = np.zeros(cap)
    visit = np.zeros(cap, np.int32)
    visf = np.zeros(cap, np.bool_)
    vlist = np.empty(cap, np.int32)
    bstack = np.empty(cap, np.int32)
    nf = 0
    created = 0
    deleted = 0
    stamp = 0

    # scratch for the hyperplane solve and row building
    A = np.empty((d, d))
    bb = np.empty(d)
    xsol = np.empty(d)
    srow = np.empty(d, np.int64)
    apt = np.empty(d)

    # initial simplex facets
    for i in range(d + 1):
        t = 0
        for j in range(d + 1):
            if j != i:
                srow[t] = simplex[j]
                t += 1
        ss = np.sort(srow)
        for j in range(d):
            srow[j] = ss[j]

        # --- hyperplane solve: edge rows = 0, (interior - p0) row = -1 ---
        for r in range(d - 1):
            for j in range(d):
                A[r, j] = points[srow[r + 1], j] - points[srow[0], j]
        for j in range(d):
            A[d - 1, j] = interior[j] - points[srow[0], j]
            bb[j] = 0.0
        bb[d - 1] = -1.0
        ok = True
        for step in range(d):
            br = step
            bp = abs(A[step, step])
            for r in range(step + 1, d):
                a = abs(A[r, step])
                if a > bp:
                    bp = a
                    br = r
            if bp <= tol:
                ok = False
                break
            if br != step:
                for c in range(d):
                    tmp = A[step, c]
                    A[step, c] = A[br, c]
                    A[br, c] = tmp
                tmp = bb[step]
                bb[step] = bb[br]
                bb[br] = tmp
            inv = 1.0 / A[step, step]
            for r in range(step + 1, d):
                factor = A[r, step] * inv
                if factor != 0.0:
                    for c in range(step + 1, d):
                        A[r, c] -= factor * A[step, c]
                    bb[r] -= factor * bb[step]
        if not ok:
            return STATUS_RANK_DEFICIENT, empty_v, empty_n, empty_o, created, deleted
        for step in range(d - 1, -1, -1):
            s = bb[step]
            for c in range(step + 1, d):
                s -= A[step, c] * xsol[c]
            xsol[step] = s / A[step, step]
        nn = 0.0
        for j in range(d):
            nn += xsol[j] * xsol[j]
        nn = np.sqrt(nn)
        if 1.0 / nn <= tol:
            # interior within tol of the hyperplane
            return STATUS_INCIDENT, empty_v, empty_n, empty_o, created, deleted
        off = 0.0
        for j in range(d):
            fplane[nf, j] = xsol[j] / nn
            off += fplane[nf, j] * points[srow[0], j]
        fplane[nf, d] = off
        for j in range(d):
            fmeta[nf, j] = srow[j]
        alive[nf] = True
        nf += 1
        created += 1
    # adjacency: facet i omits simplex[i]; neighbor across vertex v is the
    # facet omitting v
    for i in range(d + 1):
        for t in range(d):
            vtx = fmeta[i, t]
            for j in range(d + 1):
                if simplex[j] == vtx:
                    fmeta[i, d + t] = j
                    break

    # ---- initial outside sets ----
    nxt = np.full(n, -1, np.int32)
    onhull = np.zeros(n, np.bool_)
    for t in range(d + 1):
        onhull[simplex[t]] = True
    for i in range(n):
        if onhull[i]:
            continue
        for f in range(nf):
            dist = -fplane[f, d]
            for j in range(d):
                dist += fplane[f, j] * points[i, j]
            if dist > tol:
                nxt[i] = head[f]
                head[f] = i
                if dist > fur_d[f]:
                    fur_d[f] = dist
                    fur_i[f] = i
                break

    # pending facets as a binary max-heap keyed by furthest-point distance
    # (furthest-first insertion); keys are fixed once a facet is created, so
    # stale entries only need an alive check at pop time
    pcap = 1024
    pkey = np.empty(pcap)
    pfid = np.empty(pcap, np.int32)
    sp = 0
    for f in range(nf):
        if head[f] != -1:
            key = fur_d[f]
            pos = sp
            sp += 1
            while pos > 0:
                par = (pos - 1) >> 1
                if pkey[par] >= key:
                    break
                pkey[pos] = pkey[par]
                pfid[pos] = pfid[par]
                pos = par
            pkey[pos] = key
            pfid[pos] = f

    # ---- main insertion loop ----
    while sp > 0:
        f = pfid[0]
        sp -= 1
        if sp > 0:
            key = pkey[sp]
            fid0 = pfid[sp]
            pos = 0
            while True:
                ch = 2 * pos + 1
                if ch >= sp:
                    break
                if ch + 1 < sp and pkey[ch + 1] > pkey[ch]:
                    ch += 1
                if pkey[ch] <= key:
                    break
                pkey[pos] = pkey[ch]
                pfid[pos] = pfid[ch]
                pos = ch
            pkey[pos] = key
            pfid[pos] = fid0
        if not alive[f] or head[f] == -1:
            continue
        apex = fur_i[f]
        for j in range(d):
            apt[j] = points[apex, j]

        # BFS for the visible region
        stamp += 1
        vcount = 0
        bs = 0
        visit[f] = stamp
        visf[f] = True
        vlist[vcount] = f
        vcount += 1
        bstack[bs] = f
        bs += 1
        while bs > 0:
            bs -= 1
            g = bstack[bs]
            for t in range(d):
                h = fmeta[g, d + t]
                if visit[h] == stamp:
                    continue
                visit[h] = stamp
                dist = -fplane[h, d]
                for j in range(d):
                    dist += fplane[h, j] * apt[j]
                if dist > tol:
                    visf[h] = True
                    vlist[vcount] = h
                    vcount += 1
                    bstack[bs] = h
                    bs += 1
                else:
                    visf[h] = False

        # horizon ridges
        hcap = vcount * d
        hridge = np.empty((hcap, d - 1), np.int32)
        hneib = np.empty(hcap, np.int32)
        hslot = np.empty(hcap, np.int32)
        hn = 0
        for iv in range(vcount):
            g = vlist[iv]
            for t in range(d):
                h = fmeta[g, d + t]
                if visit[h] == stamp and visf[h]:
                    continue
                w = 0
                for j in range(d):
                    if j != t:
                        hridge[hn, w] = fmeta[g, j]
                        w += 1
                hneib[hn] = h
                hslot[hn] = -1
                for tt in range(d):
                    if fmeta[h, d + tt] == g:
                        hslot[hn] = tt
                        break
                if hslot[hn] < 0:
                    return STATUS_ADJACENCY, empty_v, empty_n, empty_o, created, deleted
                hn += 1

        # grow facet arrays if the cone does not fit
        if nf + hn > cap:
            newcap = cap
            while newcap < nf + hn:
                newcap *= 2
            fmeta2 = np.full((newcap, 2 * d), -1, np.int32)
            fmeta2[:cap] = fmeta
            fmeta = fmeta2
            fplane2 = np.empty((newcap, d + 1))
            fplane2[:cap] = fplane
            fplane = fplane2
            alive2 = np.zeros(newcap, np.bool_)
            alive2[:cap] = alive
            alive = alive2
            head2 = np.full(newcap, -1, np.int32)
            head2[:cap] = head
            head = head2
            fur_i2 = np.full(newcap, -1, np.int32)
            fur_i2[:cap] = fur_i
            fur_i = fur_i2
            fur_d2 = np.zeros(newcap)
            fur_d2[:cap] = fur_d
            fur_d = fur_d2
            visit2 = np.zeros(newcap, np.int32)
            visit2[:cap] = visit
            visit = visit2
            visf2 = np.zeros(newcap, np.bool_)
            visf2[:cap] = visf
            visf = visf2
            vlist2 = np.empty(newcap, np.int32)
            vlist2[:cap] = vlist
            vlist = vlist2
            bstack2 = np.empty(newcap, np.int32)
            bstack2[:cap] = bstack
            bstack = bstack2
            cap = newcap

        # new cone facets
        newids = np.empty(hn, np.int32)
        for r in range(hn):
            # merge apex into the sorted horizon ridge
            w = 0
            placed = False
            for j in range(d - 1):
                if not placed and apex < hridge[r, j]:
                    srow[w] = apex
                    w += 1
                    placed = True
                srow[w] = hridge[r, j]
                w += 1
            if not placed:
                srow[d - 1] = apex
            fid = nf
            nf += 1
            for j in range(d):
                fmeta[fid, j] = srow[j]
                fmeta[fid, d + j] = -1

            # --- hyperplane solve (same scheme as the simplex facets) ---
            for rr in range(d - 1):
                for j in range(d):
                    A[rr, j] = points[srow[rr + 1], j] - points[srow[0], j]
            for j in range(d):
                A[d - 1, j] = interior[j] - points[srow[0], j]
                bb[j] = 0.0
            bb[d - 1] = -1.0
            ok = True
            for step in range(d):
                br = step
                bp = abs(A[step, step])
                for rr in range(step + 1, d):
                    a = abs(A[rr, step])
                    if a > bp:
                        bp = a
                        br = rr
                if bp <= tol:
                    ok = False
                    break
                if br != step:
                    for c in range(d):
                        tmp = A[step, c]
                        A[step, c] = A[br, c]
                        A[br, c] = tmp
                    tmp = bb[step]
                    bb[step] = bb[br]
                    bb[br] = tmp
                inv = 1.0 / A[step, step]
                for rr in range(step + 1, d):
                    factor = A[rr, step] * inv
                    if factor != 0.0:
                        for c in range(step + 1, d):
                            A[rr, c] -= factor * A[step, c]
                        bb[rr] -= factor * bb[step]
            if not ok:
                return STATUS_RANK_DEFICIENT, empty_v, empty_n, empty_o, created, deleted
            for step in range(d - 1, -1, -1):
                s = bb[step]
                for c in range(step + 1, d):
                    s -= A[step, c] * xsol[c]
                xsol[step] = s / A[step, step]
            nn = 0.0
            for j in range(d):
                nn += xsol[j] * xsol[j]
            nn = np.sqrt(nn)
            if 1.0 / nn <= tol:
                return STATUS_INCIDENT, empty_v, empty_n, empty_o, created, deleted
            off = 0.0
            for j in range(d):
                fplane[fid, j] = xsol[j] / nn
                off += fplane[fid, j] * points[srow[0], j]
            fplane[fid, d] = off

            alive[fid] = True
            head[fid] = -1
            fur_i[fid] = -1
            fur_d[fid] = 0.0
            visit[fid] = 0
            visf[fid] = False
            for t in range(d):
                if fmeta[fid, t] == apex:
                    fmeta[fid, d + t] = hneib[r]
                    break
            fmeta[hneib[r], d + hslot[r]] = fid
            newids[r] = fid
            created += 1

        # adjacency among cone facets via ridge hashing: the internal ridge
        # "apex + (horizon ridge minus one vertex)" is keyed by that
        # (d-2)-subset and appears in exactly two cone facets.  Open
        # addressing with match-and-remove; tombstone -2 keeps probe chains
        # intact.  Mask-based polynomial hash, no overflow on either backend.
        nkeys = hn * (d - 1)
        tsize = 64
        while tsize < 2 * nkeys:
            tsize *= 2
        tmask = tsize - 1
        towner = np.full(tsize, -1, np.int32)
        tslot = np.empty(tsize, np.int32)
        tkeys = np.empty((tsize, d - 2), np.int32)
        kbuf = np.empty(d - 2, np.int64)
        for r in range(hn):
            fid = newids[r]
            for t in range(d - 1):
                vomit = hridge[r, t]
                hsh = 0
                w = 0
                for j in range(d - 1):
                    if j != t:
                        kbuf[w] = hridge[r, j]
                        hsh = ((hsh * 31) + kbuf[w] + 1) & 0x3FFFFFFFFFFF
                        w += 1
                slot = -1
                for u in range(d):
                    if fmeta[fid, u] == vomit:
                        slot = u
                        break
                pos = (hsh ^ (hsh >> 15)) & tmask
                while True:
                    owner = towner[pos]
                    if owner == -1:
                        towner[pos] = fid
                        tslot[pos] = slot
                        for j in range(d - 2):
                            tkeys[pos, j] = kbuf[j]
                        break
                    if owner >= 0:
                        same = True
                        for j in range(d - 2):
                            if tkeys[pos, j] != kbuf[j]:
                                same = False
                                break
                        if same:
                            fmeta[fid, d + slot] = owner
                            fmeta[owner, d + tslot[pos]] = fid
                            towner[pos] = -2
                            break
                    pos = (pos + 1) & tmask
        for r in range(hn):
            fid = newids[r]
            for t in range(d):
                if fmeta[fid, d + t] == -1:
                    return STATUS_ADJACENCY, empty_v, empty_n, empty_o, created, deleted

        # redistribute outside points of the deleted region
        for iv in range(vcount):
            g = vlist[iv]
            p = head[g]
            while p != -1:
                pn = nxt[p]
                if p != apex:
                    for j in range(d):
                        apt[j] = points[p, j]
                    for r in range(hn):
                        fid = newids[r]
                        dist = -fplane[fid, d]
                        for j in range(d):
                            dist += fplane[fid, j] * apt[j]
                        if dist > tol:
                            nxt[p] = head[fid]
                            head[fid] = p
                            if dist > fur_d[fid]:
                                fur_d[fid] = dist
                                fur_i[fid] = p
                            break
                p = pn
            alive[g] = False
            head[g] = -1
            deleted += 1

        if sp + hn > pcap:
            newpcap = pcap
            while newpcap < sp + hn:
                newpcap *= 2
            pkey2 = np.empty(newpcap)
            pkey2[:pcap] = pkey
            pkey = pkey2
            pfid2 = np.empty(newpcap, np.int32)
            pfid2[:pcap] = pfid
            pfid = pfid2
            pcap = newpcap
        for r in range(hn):
            fid = newids[r]
            if head[fid] != -1:
                key = fur_d[fid]
                pos = sp
                sp += 1
                while pos > 0:
                    par = (pos - 1) >> 1
                    if pkey[par] >= key:
                        break
                    pkey[pos] = pkey[par]
                    pfid[pos] = pfid[par]
                    pos = par
                pkey[pos] = key
                pfid[pos] = fid

    # ---- compact alive facets ----
    m = 0
    for f in range(nf):
        if alive[f]:
            m += 1
    out_v = np.empty((m, d), np.int64)
    out_n = np.empty((m, d))
    out_o = np.empty(m)
    w = 0
    for f in range(nf):
        if alive[f]:
            for j in range(d):
                out_v[w, j] = fmeta[f, j]
                out_n[w, j] = fplane[f, j]
            out_o[w] = fplane[f, d]
            w += 1
    return STATUS_OK, out_v, out_n, out_o, created, deleted


_compiled = None


def get_kernel(backend=None):
    """Return the quickhull kernel for the requested backend."""
    b = backend if backend is not None else default_backend()
    if b == "numpy":
        return _quickhull
    if b != "numba":
        raise ValueError(f"unknown backend {b!r}")
    global _compiled
    if _compiled is None:
        _compiled = jit_compile(_quickhull)
    return _compiled
