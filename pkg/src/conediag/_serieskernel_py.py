"""Pure-Python series-fill kernels, interface-identical to the compiled ones.

Used when the compiled extension is unavailable or when the environment
variable CONEDIAG_PURE_PYTHON=1 forces the fallback. Accumulation order
matches the compiled kernels exactly, so float results are bit-identical
and exact results are equal as rationals.
"""

from __future__ import annotations

import numpy as np


def fill_box_float(rs, order, svecs, soffs, coeffs, bfac, axis_pref, size):
    """Fill a dense float64 coefficient box in the given order.

    rs[i] is the multi-index whose row-major flat index is order[i];
    svecs/soffs/coeffs/bfac describe the nonconstant terms of P, with
    bfac[t][j] = (beta - 1) * svecs[t][j].
    """
    out = [0.0] * int(size)
    rs_l = rs.tolist()
    order_l = order.tolist()
    svecs_l = svecs.tolist()
    soffs_l = soffs.tolist()
    coeffs_l = list(coeffs.tolist())
    bfac_l = bfac.tolist()
    d = len(rs_l[0])
    m = len(soffs_l)
    out[order_l[0]] = 1.0
    for i in range(1, len(order_l)):
        idx = order_l[i]
        r = rs_l[i]
        j = axis_pref
        if j < 0 or r[j] == 0:
            j = 0
            while r[j] == 0:
                j += 1
        rj = r[j]
        acc = 0.0
        for t in range(m):
            s = svecs_l[t]
            ok = True
            for k in range(d):
                if r[k] < s[k]:
                    ok = False
                    break
            if not ok:
                continue
            acc = acc + coeffs_l[t] * (rj + bfac_l[t][j]) * out[idx - soffs_l[t]]
        out[idx] = -acc / rj
    return np.array(out, dtype=np.float64)


def fill_box_exact(rs, order, svecs, soffs, coeffs, bfac_flat, axis_pref, size, one, zero):
    """Exact-rational twin of fill_box_float.

    coeffs is a list of rationals, bfac_flat a flat list of length m*d with
    bfac_flat[t*d + j] = (beta - 1) * svecs[t][j]. Returns a flat list.
    """
    out = [None] * int(size)
    rs_l = rs.tolist()
    order_l = order.tolist()
    svecs_l = svecs.tolist()
    soffs_l = soffs.tolist()
    d = len(rs_l[0])
    m = len(soffs_l)
    out[order_l[0]] = one
    for i in range(1, len(order_l)):
        idx = order_l[i]
        r = rs_l[i]
        j = axis_pref
        if j < 0 or r[j] == 0:
            j = 0
            while r[j] == 0:
                j += 1
        rj = r[j]
        acc = zero
        for t in range(m):
            s = svecs_l[t]
            ok = True
            for k in range(d):
                if r[k] < s[k]:
                    ok = False
                    break
            if not ok:
                continue
            acc = acc + coeffs[t] * (rj + bfac_flat[t * d + j]) * out[idx - soffs_l[t]]
        out[idx] = (-acc) / rj
    return out
