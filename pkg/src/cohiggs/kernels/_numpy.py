"""Pure-numpy versions of the integer kernels (vectorised over the batch axis)."""
import numpy as np

# entries are kept below 2**31 so a product of two fits comfortably in int64
LIMIT = 1 << 31


def nilpotency_indices(fields, degrees, gamma, cap):
    n, r, _, _ = fields.shape
    res = np.full(n, -1, dtype=np.int64)
    res[~fields.reshape(n, -1).any(axis=1)] = 1
    cur = fields
    for level in range(2, cap + 1):
        if (res != -1).all():
            break
        out = np.zeros_like(fields)
        for p in range(r):
            for q in range(r):
                if degrees[p, q] + (level - 1) * gamma < 0:
                    continue
                for m in range(r):
                    da = degrees[p, m]
                    db = degrees[m, q] + (level - 2) * gamma
                    if da < 0 or db < 0:
                        continue
                    for u in range(da + 1):
                        out[:, p, q, u:u + db + 1] += fields[:, p, m, u, None] * cur[:, m, q, :db + 1]
        nonzero = out.reshape(n, -1).any(axis=1)
        res[(res == -1) & ~nonzero] = level
        cur = out
    return res


def int_rank(matrix):
    a = np.array(matrix, dtype=np.int64, copy=True)
    if a.ndim != 2 or a.size == 0:
        return 0, False
    m, n = a.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        column = np.abs(a[rank:, col])
        nz = np.nonzero(column)[0]
        if nz.size == 0:
            continue
        piv = rank + nz[np.argmin(column[nz])]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        rows = rank + 1 + np.nonzero(a[rank + 1:, col])[0]
        if rows.size:
            pv = a[rank, col]
            g = np.gcd(a[rows, col], pv)
            fp = pv // g
            fa = a[rows, col] // g
            if (np.abs(a[rows]).max() >= LIMIT or np.abs(a[rank]).max() >= LIMIT
                    or np.abs(fp).max() >= LIMIT or np.abs(fa).max() >= LIMIT):
                return -1, True
            a[rows] = a[rows] * fp[:, None] - np.outer(fa, a[rank])
            g = np.gcd.reduce(a[rows], axis=1)
            g[g == 0] = 1
            a[rows] //= np.abs(g)[:, None]
        rank += 1
    return rank, False


def _commutant_matrix(phi, phi_deg, end_deg, eq_off, var_off, neq, nvar):
    r = phi.shape[0]
    mat = np.zeros((neq, nvar), dtype=np.int64)
    for p in range(r):
        for m in range(r):
            d = phi_deg[p, m]
            if d < 0 or not phi[p, m, :d + 1].any():
                continue
            coeffs = phi[p, m, :d + 1]
            for q in range(r):
                # Phi_{pm} F_{mq} lands in equation block (p, q)
                dq = end_deg[m, q]
                if dq >= 0:
                    for j in range(dq + 1):
                        mat[eq_off[p, q] + j:eq_off[p, q] + j + d + 1, var_off[m, q] + j] += coeffs
                # F_{qp} Phi_{pm} lands in equation block (q, m)
                dq = end_deg[q, p]
                if dq >= 0:
                    for j in range(dq + 1):
                        mat[eq_off[q, m] + j:eq_off[q, m] + j + d + 1, var_off[q, p] + j] -= coeffs
    return mat


def commutant_ranks(fields, phi_deg, end_deg, eq_off, var_off, neq, nvar):
    res = np.empty(fields.shape[0], dtype=np.int64)
    for k in range(fields.shape[0]):
        mat = _commutant_matrix(fields[k], phi_deg, end_deg, eq_off, var_off, neq, nvar)
        mat = mat[mat.any(axis=1)][:, mat.any(axis=0)] if mat.size else mat
        rank, overflow = int_rank(mat)
        res[k] = -1 if overflow else rank
    return res
