"""numba versions of the field kernels; same signatures as the numpy path."""

import numpy as np
from numba import njit


@njit(cache=True)
def _add(a, b, p, K):
    if p == 2:
        return a ^ b
    r = 0
    place = 1
    for _ in range(K):
        r += ((a % p + b % p) % p) * place
        a //= p
        b //= p
        place *= p
    return r


@njit(cache=True)
def _sub(a, b, p, K):
    if p == 2:
        return a ^ b
    r = 0
    place = 1
    for _ in range(K):
        r += ((a % p - b % p + p) % p) * place
        a //= p
        b //= p
        place *= p
    return r


@njit(cache=True)
def _mul(a, b, exp, log, Q):
    if a == 0 or b == 0:
        return 0
    return exp[(log[a] + log[b]) % (Q - 1)]


@njit(cache=True)
def build_exp(mulmat, p, K, Q):
    n = Q - 1
    exp = np.empty(n, dtype=np.int64)
    cur = np.zeros(K, dtype=np.int64)
    nxt = np.zeros(K, dtype=np.int64)
    cur[0] = 1
    for i in range(n):
        code = 0
        for j in range(K - 1, -1, -1):
            code = code * p + cur[j]
        exp[i] = code
        for r in range(K):
            s = 0
            for c in range(K):
                s += mulmat[r, c] * cur[c]
            nxt[r] = s % p
        for r in range(K):
            cur[r] = nxt[r]
    return exp


@njit(cache=True)
def _horner_log(logc, lx, zech, n):
    # Horner in the log domain: multiply by x adds lx, adding c goes through zech
    lv = logc[0]
    for i in range(1, len(logc)):
        if lv >= 0:
            lv += lx
            if lv >= n:
                lv -= n
        lc = logc[i]
        if lc < 0:
            continue
        if lv < 0:
            lv = lc
            continue
        d = lv - lc
        if d < 0:
            d += n
        z = zech[d]
        if z < 0:
            lv = -1
        else:
            lv = lc + z
            if lv >= n:
                lv -= n
    return lv


@njit(cache=True)
def _logs(coeffs, log):
    out = np.empty(len(coeffs), dtype=np.int64)
    for i in range(len(coeffs)):
        out[i] = log[coeffs[i]]
    return out


@njit(cache=True)
def eval_poly_all(coeffs, exp, log, zech, p, K, Q):
    vals = np.empty(Q, dtype=np.int64)
    vals[0] = coeffs[len(coeffs) - 1]
    logc = _logs(coeffs, log)
    n = Q - 1
    for x in range(1, Q):
        lv = _horner_log(logc, log[x], zech, n)
        vals[x] = exp[lv] if lv >= 0 else 0
    return vals


@njit(cache=True)
def count_hyperelliptic(coeffs, exp, log, zech, p, K, Q):
    logc = _logs(coeffs, log)
    n = Q - 1
    c0 = coeffs[len(coeffs) - 1]
    total = 1 if c0 == 0 else (2 if log[c0] % 2 == 0 else 0)
    for x in range(1, Q):
        lv = _horner_log(logc, log[x], zech, n)
        if lv < 0:
            total += 1
        elif lv % 2 == 0:
            total += 2
    return total


@njit(cache=True)
def count_superelliptic(branch, powers, d, exp, log, zech, p, K, Q):
    n = Q - 1
    # log(x - b) = log(-b) + zech[log x - log(-b)] for x, b nonzero
    lneg = np.empty(len(branch), dtype=np.int64)
    for i in range(len(branch)):
        lneg[i] = log[_sub(0, branch[i], p, K)]
    total = 0
    for x in range(Q):
        lx = log[x]
        acc = 0
        at_branch = False
        for i in range(len(branch)):
            if branch[i] == 0:
                ld = lx
            elif x == 0:
                ld = lneg[i]
            else:
                t = lx - lneg[i]
                if t < 0:
                    t += n
                z = zech[t]
                if z < 0:
                    ld = -1
                else:
                    ld = lneg[i] + z
                    if ld >= n:
                        ld -= n
            if ld < 0:
                at_branch = True
                break
            acc = (acc + powers[i] * ld) % n
        if at_branch:
            total += 1
        elif acc % d == 0:
            total += d
    return total


@njit(cache=True)
def polymul_mod(a, b, p, dmax=-1):
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    n = len(a) + len(b) - 1
    if dmax >= 0 and dmax + 1 < n:
        n = dmax + 1
    out = np.zeros(n, dtype=np.int64)
    for i in range(min(len(a), n)):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] = (out[i + j] + ai * b[j]) % p
    return out


@njit(cache=True)
def polyrem_mod(a, m, p):
    """a mod m over F_p, little-endian, result trimmed."""
    out = a % p
    dm = len(m) - 1
    lead = m[dm] % p
    inv = 1
    e = p - 2
    base = lead
    while e:
        if e & 1:
            inv = inv * base % p
        base = base * base % p
        e >>= 1
    top = len(out) - 1
    while top >= dm:
        c = out[top] * inv % p
        if c:
            shift = top - dm
            for i in range(dm + 1):
                out[shift + i] = (out[shift + i] - c * m[i]) % p
        top -= 1
    n = min(len(out), dm)
    while n > 0 and out[n - 1] == 0:
        n -= 1
    return out[:n].copy()
