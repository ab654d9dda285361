"""Pure-Python versions of the hot loops; used when the extension is absent."""
import math

import numpy as np


def ladder_word_coo(levels, n_modes, modes, daggers):
    """COO triplets of a product of truncated ladder operators.

    The word X_1 X_2 ... X_k (X = a or a^dagger on ``modes[i]``) acts right
    to left on every basis state of ``n_modes`` oscillators with occupations
    0..levels-1, ordered lexicographically with mode 0 most significant.
    Raising past the cutoff gives zero, exactly as for the product of the
    truncated matrices.
    """
    dim = levels ** n_modes
    strides = [levels ** (n_modes - 1 - k) for k in range(n_modes)]
    word = list(zip(modes, daggers))[::-1]
    rows, cols, vals = [], [], []
    occ = [0] * n_modes
    for col in range(dim):
        rem = col
        for k in range(n_modes):
            occ[k], rem = divmod(rem, strides[k])
        amp = 1.0
        row = col
        cur = list(occ)
        for m, dag in word:
            n = cur[m]
            if dag:
                if n == levels - 1:
                    amp = 0.0
                    break
                amp *= math.sqrt(n + 1)
                cur[m] = n + 1
                row += strides[m]
            else:
                if n == 0:
                    amp = 0.0
                    break
                amp *= math.sqrt(n)
                cur[m] = n - 1
                row -= strides[m]
        if amp != 0.0:
            rows.append(row)
            cols.append(col)
            vals.append(amp)
    return (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64),
            np.array(vals, dtype=np.float64))


def casimir_coefficients(s, two_m, n_max):
    """alpha_0..alpha_nmax of the squeezing-operator recursion, alpha_0 = 1.

    2is alpha_0 = alpha_1 sqrt(2m+1)
    2is alpha_n = alpha_{n+1} sqrt((n+1)(n+2m+1)) - alpha_{n-1} sqrt(n(n+2m))
    """
    out = np.zeros(n_max + 1, dtype=np.complex128)
    out[0] = 1.0
    if n_max == 0:
        return out
    two_is = 2j * s
    out[1] = two_is / math.sqrt(two_m + 1)
    prev, cur = complex(out[0]), complex(out[1])
    for n in range(1, n_max):
        nxt = (two_is * cur + prev * math.sqrt(n * (n + two_m))) / math.sqrt((n + 1) * (n + two_m + 1))
        out[n + 1] = nxt
        prev, cur = cur, nxt
    return out
