"""
Numba kernels for boolean sparse products.
"""

import numpy as np
from numba import njit


@njit(nogil=True, cache=True)
def bool_spgemm_block(a_indptr, a_indices, b_indptr, b_indices, n_cols, row_start, row_end, dense_fraction):
    """
    Rows ``[row_start, row_end)`` of the boolean product A·B.

    Each output row is accumulated in a marker array. Rows whose result
    holds more than ``dense_fraction * n_cols`` columns are read back by a
    linear scan of the marker (bitset path); sparser rows sort their touched
    columns instead.

    Returns:
        (indptr, indices) of the block, rows relative to ``row_start``
    """
    n_rows = row_end - row_start
    out_indptr = np.zeros(n_rows + 1, dtype=np.int64)
    cap = 1024
    out = np.empty(cap, dtype=np.int64)
    pos = 0
    mark = np.full(n_cols, -1, dtype=np.int64)
    touched = np.empty(n_cols, dtype=np.int64)
    dense_cut = dense_fraction * n_cols

    for i in range(row_start, row_end):
        count = 0
        for jj in range(a_indptr[i], a_indptr[i + 1]):
            k = a_indices[jj]
            for kk in range(b_indptr[k], b_indptr[k + 1]):
                c = b_indices[kk]
                if mark[c] != i:
                    mark[c] = i
                    touched[count] = c
                    count += 1

        if pos + count > cap:
            cap = max(2 * cap, pos + count)
            grown = np.empty(cap, dtype=np.int64)
            grown[:pos] = out[:pos]
            out = grown

        if count > dense_cut:
            w = pos
            for c in range(n_cols):
                if mark[c] == i:
                    out[w] = c
                    w += 1
        else:
            out[pos:pos + count] = np.sort(touched[:count])
        pos += count
        out_indptr[i - row_start + 1] = pos

    return out_indptr, out[:pos].copy()
