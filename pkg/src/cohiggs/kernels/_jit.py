"""numba versions of the integer kernels; same contracts as ``_numpy``."""
import numpy as np
from numba import njit

LIMIT = 1 << 31


@njit(cache=True)
def _level_product(phi, cur, degrees, gamma, level, out):
    r = phi.shape[0]
    nonzero = False
    for p in range(r):
        for q in range(r):
            for t in range(out.shape[2]):
                out[p, q, t] = 0
            if degrees[p, q] + (level - 1) * gamma < 0:
                continue
            for m in range(r):
                da = degrees[p, m]
                db = degrees[m, q] + (level - 2) * gamma
                if da < 0 or db < 0:
                    continue
                for u in range(da + 1):
                    c = phi[p, m, u]
                    if c == 0:
                        continue
                    for v in range(db + 1):
                        out[p, q, u + v] += c * cur[m, q, v]
            if not nonzero:
                for t in range(out.shape[2]):
                    if out[p, q, t] != 0:
                        nonzero = True
                        break
    return nonzero


@njit(cache=True)
def nilpotency_indices(fields, degrees, gamma, cap):
    n = fields.shape[0]
    res = np.empty(n, dtype=np.int64)
    for k in range(n):
        phi = fields[k]
        if not phi.any():
            res[k] = 1
            continue
        cur = phi.copy()
        out = np.zeros_like(phi)
        idx = -1
        for level in range(2, cap + 1):
            if not _level_product(phi, cur, degrees, gamma, level, out):
                idx = level
                break
            cur, out = out, cur
        res[k] = idx
    return res


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def int_rank(matrix):
    a = matrix.copy()
    m, n = a.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        piv = -1
        best = 0
        for i in range(rank, m):
            v = abs(a[i, col])
            if v != 0 and (piv < 0 or v < best):
                piv = i
                best = v
        if piv < 0:
            continue
        if piv != rank:
            for j in range(n):
                t = a[rank, j]
                a[rank, j] = a[piv, j]
                a[piv, j] = t
        pv = a[rank, col]
        for j in range(col, n):
            if abs(a[rank, j]) >= LIMIT:
                return -1, True
        for i in range(rank + 1, m):
            c = a[i, col]
            if c == 0:
                continue
            g = _gcd(pv, c)
            fp = pv // g
            fc = c // g
            if abs(fp) >= LIMIT or abs(fc) >= LIMIT:
                return -1, True
            rg = 0
            for j in range(col, n):
                if abs(a[i, j]) >= LIMIT:
                    return -1, True
                a[i, j] = a[i, j] * fp - a[rank, j] * fc
                rg = _gcd(rg, a[i, j])
            if rg > 1:
                for j in range(col, n):
                    a[i, j] //= rg
        rank += 1
    return rank, False


@njit(cache=True)
def _commutant_rank_one(phi, phi_deg, end_deg, eq_off, var_off, rowmap, colmap, rows, cols):
    r = phi.shape[0]
    nr = 0
    nc = 0
    # pass 1: which equations and unknowns are touched
    for p in range(r):
        for m in range(r):
            if phi_deg[p, m] < 0:
                continue
            for u in range(phi_deg[p, m] + 1):
                if phi[p, m, u] == 0:
                    continue
                # Phi o F: unknowns F[m, q]
                for q in range(r):
                    dq = end_deg[m, q]
                    for j in range(dq + 1):
                        e = eq_off[p, q] + u + j
                        v = var_off[m, q] + j
                        if rowmap[e] < 0:
                            rowmap[e] = nr
                            rows[nr] = e
                            nr += 1
                        if colmap[v] < 0:
                            colmap[v] = nc
                            cols[nc] = v
                            nc += 1
                # F o Phi: unknowns F[q, p] for entry Phi[p, m] read as Phi_{p m}
                for q in range(r):
                    dq = end_deg[q, p]
                    for j in range(dq + 1):
                        e = eq_off[q, m] + u + j
                        v = var_off[q, p] + j
                        if rowmap[e] < 0:
                            rowmap[e] = nr
                            rows[nr] = e
                            nr += 1
                        if colmap[v] < 0:
                            colmap[v] = nc
                            cols[nc] = v
                            nc += 1
    mat = np.zeros((nr, nc), dtype=np.int64)
    for p in range(r):
        for m in range(r):
            if phi_deg[p, m] < 0:
                continue
            for u in range(phi_deg[p, m] + 1):
                c = phi[p, m, u]
                if c == 0:
                    continue
                for q in range(r):
                    for j in range(end_deg[m, q] + 1):
                        mat[rowmap[eq_off[p, q] + u + j], colmap[var_off[m, q] + j]] += c
                for q in range(r):
                    for j in range(end_deg[q, p] + 1):
                        mat[rowmap[eq_off[q, m] + u + j], colmap[var_off[q, p] + j]] -= c
    for i in range(nr):
        rowmap[rows[i]] = -1
    for i in range(nc):
        colmap[cols[i]] = -1
    if nr == 0:
        return 0
    rank, overflow = int_rank(mat)
    if overflow:
        return -1
    return rank


@njit(cache=True)
def commutant_ranks(fields, phi_deg, end_deg, eq_off, var_off, neq, nvar):
    n = fields.shape[0]
    res = np.empty(n, dtype=np.int64)
    rowmap = np.full(max(neq, 1), -1, dtype=np.int64)
    colmap = np.full(max(nvar, 1), -1, dtype=np.int64)
    rows = np.empty(max(neq, 1), dtype=np.int64)
    cols = np.empty(max(nvar, 1), dtype=np.int64)
    for k in range(n):
        res[k] = _commutant_rank_one(fields[k], phi_deg, end_deg, eq_off, var_off, rowmap, colmap, rows, cols)
    return res
