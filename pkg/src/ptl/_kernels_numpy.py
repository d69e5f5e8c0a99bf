"""Pure-numpy kernels over finite fields encoded as integers.

An element of F_{p^K} is stored as the integer sum(c_i * p**i) of its
coefficient vector in the power basis of the defining modulus.  Products go
through discrete exp/log tables; sums are taken digit by digit.
"""

import numpy as np


def to_digits(codes, p, K):
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty(codes.shape + (K,), dtype=np.int64)
    rest = codes.copy()
    for i in range(K):
        out[..., i] = rest % p
        rest //= p
    return out


def from_digits(digits, p):
    digits = np.asarray(digits, dtype=np.int64)
    K = digits.shape[-1]
    codes = np.zeros(digits.shape[:-1], dtype=np.int64)
    for i in reversed(range(K)):
        codes = codes * p + digits[..., i]
    return codes


def add_codes(a, b, p, K):
    if p == 2:
        return np.bitwise_xor(a, b)
    return from_digits((to_digits(a, p, K) + to_digits(b, p, K)) % p, p)


def sub_codes(a, b, p, K):
    if p == 2:
        return np.bitwise_xor(a, b)
    return from_digits((to_digits(a, p, K) - to_digits(b, p, K)) % p, p)


def mul_codes(a, b, exp, log, Q):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    out = np.zeros(a.shape, dtype=np.int64)
    nz = (a != 0) & (b != 0)
    out[nz] = exp[(log[a[nz]] + log[b[nz]]) % (Q - 1)]
    return out


def _matpow_mod(mat, e, p):
    n = mat.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = mat % p
    while e:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result


def build_exp(mulmat, p, K, Q):
    """Powers g^0..g^(Q-2) of the element whose multiplication matrix is ``mulmat``."""
    n = Q - 1
    exp = np.empty(n, dtype=np.int64)
    exp[0] = 1
    filled = 1
    while filled < n:
        step = min(filled, n - filled)
        shift = _matpow_mod(mulmat, filled, p)
        digits = to_digits(exp[:step], p, K)
        exp[filled:filled + step] = from_digits((digits @ shift.T) % p, p)
        filled += step
    return exp


def zech_table(exp, log, p, K):
    """zech[k] = log(1 + g^k), -1 where 1 + g^k = 0."""
    return log[add_codes(exp, np.int64(1), p, K)]


def eval_poly_all(coeffs, exp, log, zech, p, K, Q):
    """Values of the polynomial (coefficient codes, highest degree first) at every code."""
    xs = np.arange(Q, dtype=np.int64)
    vals = np.full(Q, coeffs[0], dtype=np.int64)
    for c in coeffs[1:]:
        vals = mul_codes(vals, xs, exp, log, Q)
        if c:
            vals = add_codes(vals, np.int64(c), p, K)
    return vals


def count_hyperelliptic(coeffs, exp, log, zech, p, K, Q):
    vals = eval_poly_all(coeffs, exp, log, zech, p, K, Q)
    zero = vals == 0
    logs = log[vals[~zero]]
    squares = int(np.count_nonzero(logs % 2 == 0))
    return int(np.count_nonzero(zero)) + 2 * squares


def count_superelliptic(branch, powers, d, exp, log, zech, p, K, Q):
    xs = np.arange(Q, dtype=np.int64)
    total = np.zeros(Q, dtype=np.int64)
    hit = np.zeros(Q, dtype=bool)
    for b, a in zip(branch, powers):
        diff = sub_codes(xs, np.int64(b), p, K)
        at_branch = diff == 0
        hit |= at_branch
        total += np.where(at_branch, 0, a * log[np.where(at_branch, 1, diff)])
    good = (~hit) & (total % (Q - 1) % d == 0)
    return int(np.count_nonzero(hit)) + d * int(np.count_nonzero(good))


def polymul_mod(a, b, p, dmax=-1):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    n = len(a) + len(b) - 1
    if dmax >= 0:
        n = min(n, dmax + 1)
    out = np.zeros(n, dtype=np.int64)
    # column-wise accumulation keeps every partial sum below 2^63
    for i in range(min(len(a), n)):
        if a[i]:
            hi = min(len(b), n - i)
            out[i:i + hi] = (out[i:i + hi] + a[i] * b[:hi]) % p
    return out


def polyrem_mod(a, m, p):
    """a mod m over F_p, little-endian, result trimmed."""
    out = np.asarray(a, dtype=np.int64) % p
    m = np.asarray(m, dtype=np.int64)
    dm = len(m) - 1
    inv = pow(int(m[dm]), p - 2, p)
    for top in range(len(out) - 1, dm - 1, -1):
        c = int(out[top]) * inv % p
        if c:
            out[top - dm:top + 1] = (out[top - dm:top + 1] - c * m) % p
    out = out[:dm]
    nz = np.flatnonzero(out)
    return out[: nz[-1] + 1] if len(nz) else out[:0]
