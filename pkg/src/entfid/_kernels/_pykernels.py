"""Pure-Python twin of the compiled kernels.

Every routine here mirrors ``_ckernels.pyx`` operation for operation, so the
two backends agree to rounding. Matrices are handled as flat row-major lists
of Python complex numbers; numpy only appears at the boundary.
"""
import math

import numpy as np

from ..errors import NoConvergence, NotPSD

OFF_TOL = 1e-12
MAX_SWEEPS = 100
PSD_TOL = 1e-10

# diagonal of the anti-diagonal matrix sigma_y (x) sigma_y
_YY = (-1.0, 1.0, 1.0, -1.0)


def _jacobi(a, n, want_vectors):
    """Cyclic Jacobi on a flat Hermitian matrix ``a`` (modified in place)."""
    v = None
    if want_vectors:
        v = [0j] * (n * n)
        for i in range(n):
            v[i * n + i] = 1 + 0j
    for sweep in range(MAX_SWEEPS + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                z = a[p * n + q]
                off += z.real * z.real + z.imag * z.imag
        if math.sqrt(2.0 * off) < OFF_TOL:
            break
        if sweep == MAX_SWEEPS:
            raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p * n + q]
                mag = math.hypot(apq.real, apq.imag)
                if mag == 0.0:
                    continue
                app = a[p * n + p].real
                aqq = a[q * n + q].real
                g = 100.0 * mag
                if sweep > 3 and abs(app) + g == abs(app) and abs(aqq) + g == abs(aqq):
                    a[p * n + q] = 0j
                    a[q * n + p] = 0j
                    continue
                theta = (aqq - app) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.hypot(theta, 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                e = apq / mag
                upq = s * e
                uqp = -s * e.conjugate()
                cupq = upq.conjugate()
                cuqp = uqp.conjugate()
                for k in range(n):
                    akp = a[k * n + p]
                    akq = a[k * n + q]
                    a[k * n + p] = akp * c + akq * uqp
                    a[k * n + q] = akp * upq + akq * c
                for k in range(n):
                    apk = a[p * n + k]
                    aqk = a[q * n + k]
                    a[p * n + k] = c * apk + cuqp * aqk
                    a[q * n + k] = cupq * apk + c * aqk
                a[p * n + q] = 0j
                a[q * n + p] = 0j
                a[p * n + p] = complex(a[p * n + p].real, 0.0)
                a[q * n + q] = complex(a[q * n + q].real, 0.0)
                if want_vectors:
                    for k in range(n):
                        vkp = v[k * n + p]
                        vkq = v[k * n + q]
                        v[k * n + p] = vkp * c + vkq * uqp
                        v[k * n + q] = vkp * upq + vkq * c

    w = [a[i * n + i].real for i in range(n)]
    # stable descending insertion sort, same as the compiled twin
    order = list(range(n))
    for i in range(1, n):
        j = i
        while j > 0 and w[order[j - 1]] < w[order[j]]:
            order[j - 1], order[j] = order[j], order[j - 1]
            j -= 1
    w_sorted = [w[k] for k in order]
    if not want_vectors:
        return w_sorted, None
    v_sorted = [0j] * (n * n)
    for col, k in enumerate(order):
        for r in range(n):
            v_sorted[r * n + col] = v[r * n + k]
    return w_sorted, v_sorted


def _flat(a):
    return [complex(x) for x in np.asarray(a, dtype=np.complex128).ravel()]


def _sqrt_psd4(rho):
    a = list(rho)
    w, v = _jacobi(a, 4, True)
    out = [0j] * 16
    for k in range(4):
        lam = w[k]
        if lam < -PSD_TOL:
            raise NotPSD(f"eigenvalue {lam:.3e} below -{PSD_TOL:g}")
        if lam <= 0.0:
            continue
        r = math.sqrt(lam)
        for i in range(4):
            vi = r * v[i * 4 + k]
            for j in range(4):
                out[i * 4 + j] += vi * v[j * 4 + k].conjugate()
    return out


def _wootters4(rho):
    s = _sqrt_psd4(rho)
    # b = Y conj(s); A = s b has singular values lambda_1..4
    b = [_YY[i] * s[(3 - i) * 4 + j].conjugate() for i in range(4) for j in range(4)]
    h = [0j] * 64
    for i in range(4):
        for j in range(4):
            acc = 0j
            for k in range(4):
                acc += s[i * 4 + k] * b[k * 4 + j]
            h[i * 8 + 4 + j] = acc
            h[(4 + j) * 8 + i] = acc.conjugate()
    w, _ = _jacobi(h, 8, False)
    lam = w[:4]
    for i in range(4):
        if lam[i] < -PSD_TOL:
            raise NotPSD(f"Wootters eigenvalue {lam[i]:.3e} below -{PSD_TOL:g}")
        if lam[i] < 0.0:
            lam[i] = 0.0
    return lam


def _concurrence4(rho):
    lam = _wootters4(rho)
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return min(max(c, 0.0), 1.0)


def _pt_eigvals4(rho):
    pt = [0j] * 16
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    pt[(2 * i + j) * 4 + 2 * k + l] = rho[(2 * k + j) * 4 + 2 * i + l]
    w, _ = _jacobi(pt, 4, False)
    return w


def _negativity4(rho):
    w = _pt_eigvals4(rho)
    tn = 0.0
    for x in w:
        tn += abs(x)
    return min(max(tn - 1.0, 0.0), 1.0)


def eof_from_concurrence(c):
    if c <= 0.0:
        return 0.0
    if c >= 1.0:
        return 1.0
    r = math.sqrt((1.0 - c) * (1.0 + c))
    hi = 0.5 * (1.0 + r)
    lo = c * c / (2.0 * (1.0 + r))
    # hi = 1 - lo, so log1p keeps the hi term when lo is below machine epsilon
    return (-hi * math.log1p(-lo) - lo * math.log(lo)) / math.log(2.0)


def herm_eig(a, want_vectors=True):
    arr = np.asarray(a, dtype=np.complex128)
    n = arr.shape[0]
    w, v = _jacobi(_flat(arr), n, want_vectors)
    w = np.array(w)
    if v is None:
        return w, None
    return w, np.array(v, dtype=np.complex128).reshape(n, n)


def wootters_lambdas(rho):
    return np.array(_wootters4(_flat(rho)))


def concurrence(rho):
    return _concurrence4(_flat(rho))


def negativity(rho):
    return _negativity4(_flat(rho))


def pt_eigvals(rho):
    return np.array(_pt_eigvals4(_flat(rho)))


def _clip01(x):
    return min(max(x, 0.0), 1.0)


def sweep(psi, kraus):
    """Fidelity quadruples (f_e, f_ef, f_c, f_n) for one state over a stack
    of channels ``kraus`` shaped (P, m, 2, 2)."""
    psi = [complex(x) for x in np.asarray(psi, dtype=np.complex128)]
    kraus = np.asarray(kraus, dtype=np.complex128)
    rho_i = [psi[i] * psi[j].conjugate() for i in range(4) for j in range(4)]
    c_i = _concurrence4(rho_i)
    e_i = eof_from_concurrence(c_i)
    n_i = _negativity4(rho_i)
    out = np.empty((kraus.shape[0], 4))
    for row, elements in enumerate(kraus):
        rho_f = [0j] * 16
        f_e = 0.0
        for k in elements:
            k00, k01, k10, k11 = (complex(x) for x in k.ravel())
            phi = [
                k00 * psi[0] + k01 * psi[1],
                k10 * psi[0] + k11 * psi[1],
                k00 * psi[2] + k01 * psi[3],
                k10 * psi[2] + k11 * psi[3],
            ]
            overlap = 0j
            for i in range(4):
                overlap += psi[i].conjugate() * phi[i]
                for j in range(4):
                    rho_f[i * 4 + j] += phi[i] * phi[j].conjugate()
            f_e += overlap.real * overlap.real + overlap.imag * overlap.imag
        c_f = _concurrence4(rho_f)
        e_f = eof_from_concurrence(c_f)
        n_f = _negativity4(rho_f)
        out[row, 0] = _clip01(f_e)
        out[row, 1] = _clip01(1.0 - abs(e_i - e_f))
        out[row, 2] = _clip01(1.0 - abs(c_i - c_f))
        out[row, 3] = _clip01(1.0 - abs(n_i - n_f))
    return out


def _count_inversions(ys):
    """Strict inversions (i < j, ys[i] > ys[j]) via merge sort."""
    n = len(ys)
    buf = list(ys)
    tmp = [0.0] * n
    inv = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if buf[j] < buf[i]:
                    tmp[k] = buf[j]
                    inv += mid - i
                    j += 1
                else:
                    tmp[k] = buf[i]
                    i += 1
                k += 1
            while i < mid:
                tmp[k] = buf[i]
                i += 1
                k += 1
            while j < hi:
                tmp[k] = buf[j]
                j += 1
                k += 1
        buf, tmp = tmp, buf
        width *= 2
    return inv


def _tied_pairs(sorted_vals):
    total = 0
    run = 1
    for a, b in zip(sorted_vals, sorted_vals[1:]):
        if a == b:
            run += 1
        else:
            total += run * (run - 1) // 2
            run = 1
    return total + run * (run - 1) // 2


def tau_numerator(x, y):
    """Sum over i<j of sgn(x_i - x_j) * sgn(y_i - y_j), in O(n log n)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = x.shape[0]
    order = np.lexsort((y, x))
    xs = x[order].tolist()
    ys = y[order].tolist()
    x_ties = _tied_pairs(xs)
    xy_ties = 0
    run = 1
    for i in range(1, n):
        if xs[i] == xs[i - 1] and ys[i] == ys[i - 1]:
            run += 1
        else:
            xy_ties += run * (run - 1) // 2
            run = 1
    xy_ties += run * (run - 1) // 2
    y_ties = _tied_pairs(sorted(ys))
    discordant = _count_inversions(ys)
    return n * (n - 1) // 2 - x_ties - y_ties + xy_ties - 2 * discordant
