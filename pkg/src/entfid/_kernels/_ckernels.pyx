# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: complex Hermitian Jacobi, two-qubit measures, fused
sweep evaluation and Kendall pair counting.

Mirrors ``_pykernels`` operation for operation.
"""
import numpy as np

from libc.math cimport sqrt, fabs, hypot, log, log1p, M_LN2
from libc.stdlib cimport malloc, free

from entfid.errors import NoConvergence, NotPSD

cdef double OFF_TOL = 1e-12
cdef int MAX_SWEEPS = 100
cdef double PSD_TOL = 1e-10
cdef double YY[4]
YY[:] = [-1.0, 1.0, 1.0, -1.0]

# return codes from nogil helpers
cdef enum:
    OK = 0
    ERR_NOCONV = -1
    ERR_NOTPSD = -2


cdef inline double complex cconj(double complex z) nogil:
    return z.real - 1j * z.imag


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double clip01(double x) nogil:
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return x


cdef int jacobi(double complex *a, int n, double *w, double complex *v, bint want_v) nogil:
    cdef int i, j, k, p, q, sweep
    cdef double off, mag, app, aqq, g, theta, t, c, s
    cdef double complex apq, e, upq, uqp, cupq, cuqp, x0, x1
    cdef int order[8]
    cdef double wtmp[8]
    cdef double complex vtmp[64]

    if want_v:
        for i in range(n * n):
            v[i] = 0
        for i in range(n):
            v[i * n + i] = 1
    sweep = 0
    while True:
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += cabs2(a[p * n + q])
        if sqrt(2.0 * off) < OFF_TOL:
            break
        if sweep == MAX_SWEEPS:
            return ERR_NOCONV
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p * n + q]
                mag = hypot(apq.real, apq.imag)
                if mag == 0.0:
                    continue
                app = a[p * n + p].real
                aqq = a[q * n + q].real
                g = 100.0 * mag
                if sweep > 3 and fabs(app) + g == fabs(app) and fabs(aqq) + g == fabs(aqq):
                    a[p * n + q] = 0
                    a[q * n + p] = 0
                    continue
                theta = (aqq - app) / (2.0 * mag)
                t = 1.0 / (fabs(theta) + hypot(theta, 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                e = apq / mag
                upq = s * e
                uqp = -s * cconj(e)
                cupq = cconj(upq)
                cuqp = cconj(uqp)
                for k in range(n):
                    x0 = a[k * n + p]
                    x1 = a[k * n + q]
                    a[k * n + p] = x0 * c + x1 * uqp
                    a[k * n + q] = x0 * upq + x1 * c
                for k in range(n):
                    x0 = a[p * n + k]
                    x1 = a[q * n + k]
                    a[p * n + k] = c * x0 + cuqp * x1
                    a[q * n + k] = cupq * x0 + c * x1
                a[p * n + q] = 0
                a[q * n + p] = 0
                a[p * n + p] = a[p * n + p].real
                a[q * n + q] = a[q * n + q].real
                if want_v:
                    for k in range(n):
                        x0 = v[k * n + p]
                        x1 = v[k * n + q]
                        v[k * n + p] = x0 * c + x1 * uqp
                        v[k * n + q] = x0 * upq + x1 * c
        sweep += 1

    for i in range(n):
        wtmp[i] = a[i * n + i].real
        order[i] = i
    for i in range(1, n):
        j = i
        while j > 0 and wtmp[order[j - 1]] < wtmp[order[j]]:
            k = order[j - 1]
            order[j - 1] = order[j]
            order[j] = k
            j -= 1
    for i in range(n):
        w[i] = wtmp[order[i]]
    if want_v:
        for i in range(n * n):
            vtmp[i] = v[i]
        for j in range(n):
            for i in range(n):
                v[i * n + j] = vtmp[i * n + order[j]]
    return OK


cdef int sqrt_psd4(const double complex *rho, double complex *out) nogil:
    cdef double complex a[16]
    cdef double complex v[16]
    cdef double w[4]
    cdef double r
    cdef double complex vi
    cdef int i, j, k, rc
    for i in range(16):
        a[i] = rho[i]
        out[i] = 0
    rc = jacobi(a, 4, w, v, True)
    if rc != OK:
        return rc
    for k in range(4):
        if w[k] < -PSD_TOL:
            return ERR_NOTPSD
        if w[k] <= 0.0:
            continue
        r = sqrt(w[k])
        for i in range(4):
            vi = r * v[i * 4 + k]
            for j in range(4):
                out[i * 4 + j] = out[i * 4 + j] + vi * cconj(v[j * 4 + k])
    return OK


cdef int wootters4(const double complex *rho, double *lam) nogil:
    cdef double complex s[16]
    cdef double complex b[16]
    cdef double complex h[64]
    cdef double w[8]
    cdef double complex acc
    cdef int i, j, k, rc
    rc = sqrt_psd4(rho, s)
    if rc != OK:
        return rc
    for i in range(4):
        for j in range(4):
            b[i * 4 + j] = YY[i] * cconj(s[(3 - i) * 4 + j])
    for i in range(64):
        h[i] = 0
    for i in range(4):
        for j in range(4):
            acc = 0
            for k in range(4):
                acc = acc + s[i * 4 + k] * b[k * 4 + j]
            h[i * 8 + 4 + j] = acc
            h[(4 + j) * 8 + i] = cconj(acc)
    rc = jacobi(h, 8, w, NULL, False)
    if rc != OK:
        return rc
    for i in range(4):
        if w[i] < -PSD_TOL:
            return ERR_NOTPSD
        lam[i] = w[i] if w[i] > 0.0 else 0.0
    return OK


cdef int concurrence4(const double complex *rho, double *c) nogil:
    cdef double lam[4]
    cdef int rc = wootters4(rho, lam)
    if rc != OK:
        return rc
    c[0] = clip01(lam[0] - lam[1] - lam[2] - lam[3])
    return OK


cdef int pt_eigvals4(const double complex *rho, double *w) nogil:
    cdef double complex pt[16]
    cdef int i, j, k, l
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    pt[(2 * i + j) * 4 + 2 * k + l] = rho[(2 * k + j) * 4 + 2 * i + l]
    return jacobi(pt, 4, w, NULL, False)


cdef int negativity4(const double complex *rho, double *neg) nogil:
    cdef double w[4]
    cdef double tn = 0.0
    cdef int i
    cdef int rc = pt_eigvals4(rho, w)
    if rc != OK:
        return rc
    for i in range(4):
        tn += fabs(w[i])
    neg[0] = clip01(tn - 1.0)
    return OK


cdef double eof_c(double c) nogil:
    cdef double r, hi, lo
    if c <= 0.0:
        return 0.0
    if c >= 1.0:
        return 1.0
    r = sqrt((1.0 - c) * (1.0 + c))
    hi = 0.5 * (1.0 + r)
    lo = c * c / (2.0 * (1.0 + r))
    # hi = 1 - lo, so log1p keeps the hi term when lo is below machine epsilon
    return (-hi * log1p(-lo) - lo * log(lo)) / M_LN2


cdef raise_rc(int rc):
    if rc == ERR_NOCONV:
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    if rc == ERR_NOTPSD:
        raise NotPSD(f"eigenvalue below -{PSD_TOL:g}")


def _as4(rho):
    arr = np.ascontiguousarray(rho, dtype=np.complex128)
    if arr.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    return arr


def eof_from_concurrence(double c):
    return eof_c(c)


def herm_eig(a, bint want_vectors=True):
    arr = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef int n = arr.shape[0]
    if n > 8 or arr.shape[1] != n:
        raise ValueError("compiled Jacobi supports square matrices up to 8x8")
    w = np.empty(n, dtype=np.float64)
    v = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] av = arr
    cdef double[::1] wv = w
    cdef double complex[:, ::1] vv = v
    cdef int rc
    with nogil:
        rc = jacobi(&av[0, 0], n, &wv[0], &vv[0, 0], want_vectors)
    raise_rc(rc)
    return w, (v if want_vectors else None)


def wootters_lambdas(rho):
    arr = _as4(rho)
    lam = np.empty(4, dtype=np.float64)
    cdef const double complex[:, ::1] av = arr
    cdef double[::1] lv = lam
    cdef int rc
    with nogil:
        rc = wootters4(&av[0, 0], &lv[0])
    raise_rc(rc)
    return lam


def concurrence(rho):
    arr = _as4(rho)
    cdef const double complex[:, ::1] av = arr
    cdef double c = 0.0
    cdef int rc
    with nogil:
        rc = concurrence4(&av[0, 0], &c)
    raise_rc(rc)
    return c


def negativity(rho):
    arr = _as4(rho)
    cdef const double complex[:, ::1] av = arr
    cdef double neg = 0.0
    cdef int rc
    with nogil:
        rc = negativity4(&av[0, 0], &neg)
    raise_rc(rc)
    return neg


def pt_eigvals(rho):
    arr = _as4(rho)
    w = np.empty(4, dtype=np.float64)
    cdef double complex[:, ::1] av = arr
    cdef double[::1] wv = w
    cdef int rc
    with nogil:
        rc = pt_eigvals4(&av[0, 0], &wv[0])
    raise_rc(rc)
    return w


cdef int sweep_core(const double complex *psi, const double complex *kraus,
                    int P, int m, double *out) nogil:
    cdef double complex rho_i[16]
    cdef double complex rho_f[16]
    cdef double complex phi[4]
    cdef double complex overlap
    cdef const double complex *kk
    cdef double c_i, e_i, n_i, c_f, e_f, n_f, f_e
    cdef int i, j, row, r, rc
    for i in range(4):
        for j in range(4):
            rho_i[i * 4 + j] = psi[i] * cconj(psi[j])
    rc = concurrence4(rho_i, &c_i)
    if rc != OK:
        return rc
    e_i = eof_c(c_i)
    rc = negativity4(rho_i, &n_i)
    if rc != OK:
        return rc
    for row in range(P):
        for i in range(16):
            rho_f[i] = 0
        f_e = 0.0
        for r in range(m):
            kk = kraus + (row * m + r) * 4
            phi[0] = kk[0] * psi[0] + kk[1] * psi[1]
            phi[1] = kk[2] * psi[0] + kk[3] * psi[1]
            phi[2] = kk[0] * psi[2] + kk[1] * psi[3]
            phi[3] = kk[2] * psi[2] + kk[3] * psi[3]
            overlap = 0
            for i in range(4):
                overlap = overlap + cconj(psi[i]) * phi[i]
                for j in range(4):
                    rho_f[i * 4 + j] = rho_f[i * 4 + j] + phi[i] * cconj(phi[j])
            f_e += cabs2(overlap)
        rc = concurrence4(rho_f, &c_f)
        if rc != OK:
            return rc
        e_f = eof_c(c_f)
        rc = negativity4(rho_f, &n_f)
        if rc != OK:
            return rc
        out[row * 4 + 0] = clip01(f_e)
        out[row * 4 + 1] = clip01(1.0 - fabs(e_i - e_f))
        out[row * 4 + 2] = clip01(1.0 - fabs(c_i - c_f))
        out[row * 4 + 3] = clip01(1.0 - fabs(n_i - n_f))
    return OK


def sweep(psi, kraus):
    """Fidelity quadruples (f_e, f_ef, f_c, f_n) for one state over a stack
    of channels ``kraus`` shaped (P, m, 2, 2)."""
    pv = np.ascontiguousarray(psi, dtype=np.complex128)
    kv = np.ascontiguousarray(kraus, dtype=np.complex128)
    if pv.shape != (4,) or kv.ndim != 4 or kv.shape[2:] != (2, 2):
        raise ValueError("sweep expects psi of shape (4,) and kraus of shape (P, m, 2, 2)")
    cdef int P = kv.shape[0]
    cdef int m = kv.shape[1]
    out = np.empty((P, 4), dtype=np.float64)
    if P == 0 or m == 0:
        return out
    cdef const double complex[::1] pmv = pv
    cdef const double complex[:, :, :, ::1] kmv = kv
    cdef double[:, ::1] omv = out
    cdef int rc
    with nogil:
        rc = sweep_core(&pmv[0], &kmv[0, 0, 0, 0], P, m, &omv[0, 0])
    raise_rc(rc)
    return out


cdef void merge_sort_idx(long *idx, long *tmp, long n, const double *x, const double *y) nogil:
    # bottom-up stable merge sort of indices by (x, y)
    cdef long width = 1, lo, mid, hi, i, j, k
    cdef long *src = idx
    cdef long *dst = tmp
    cdef long *sw
    cdef bint take_right
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width if lo + width < n else n
            hi = lo + 2 * width if lo + 2 * width < n else n
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                take_right = x[src[j]] < x[src[i]] or (x[src[j]] == x[src[i]] and y[src[j]] < y[src[i]])
                if take_right:
                    dst[k] = src[j]
                    j += 1
                else:
                    dst[k] = src[i]
                    i += 1
                k += 1
            while i < mid:
                dst[k] = src[i]
                i += 1
                k += 1
            while j < hi:
                dst[k] = src[j]
                j += 1
                k += 1
            lo += 2 * width
        sw = src
        src = dst
        dst = sw
        width *= 2
    if src != idx:
        for i in range(n):
            idx[i] = src[i]


cdef long long count_inversions(double *buf, double *tmp, long n) nogil:
    cdef long width = 1, lo, mid, hi, i, j, k
    cdef long long inv = 0
    cdef double *src = buf
    cdef double *dst = tmp
    cdef double *sw
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width if lo + width < n else n
            hi = lo + 2 * width if lo + 2 * width < n else n
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                if src[j] < src[i]:
                    dst[k] = src[j]
                    inv += mid - i
                    j += 1
                else:
                    dst[k] = src[i]
                    i += 1
                k += 1
            while i < mid:
                dst[k] = src[i]
                i += 1
                k += 1
            while j < hi:
                dst[k] = src[j]
                j += 1
                k += 1
            lo += 2 * width
        sw = src
        src = dst
        dst = sw
        width *= 2
    if src != buf:
        for i in range(n):
            buf[i] = src[i]
    return inv


cdef long long tied_pairs_sorted(const double *v, long n) nogil:
    cdef long long total = 0, run = 1
    cdef long i
    for i in range(1, n):
        if v[i] == v[i - 1]:
            run += 1
        else:
            total += run * (run - 1) // 2
            run = 1
    return total + run * (run - 1) // 2


def tau_numerator(x, y):
    """Sum over i<j of sgn(x_i - x_j) * sgn(y_i - y_j), in O(n log n)."""
    xa = np.ascontiguousarray(x, dtype=np.float64)
    ya = np.ascontiguousarray(y, dtype=np.float64)
    cdef long n = xa.shape[0]
    if n < 2:
        return 0
    cdef const double[::1] xv = xa
    cdef const double[::1] yv = ya
    cdef long *idx = <long *> malloc(n * sizeof(long))
    cdef long *itmp = <long *> malloc(n * sizeof(long))
    cdef double *ys = <double *> malloc(n * sizeof(double))
    cdef double *dtmp = <double *> malloc(n * sizeof(double))
    cdef long i
    cdef long long run, x_ties, xy_ties, y_ties, disc, total
    if idx == NULL or itmp == NULL or ys == NULL or dtmp == NULL:
        free(idx); free(itmp); free(ys); free(dtmp)
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                idx[i] = i
            merge_sort_idx(idx, itmp, n, &xv[0], &yv[0])
            x_ties = 0
            xy_ties = 0
            run = 1
            for i in range(1, n):
                if xv[idx[i]] == xv[idx[i - 1]]:
                    run += 1
                else:
                    x_ties += run * (run - 1) // 2
                    run = 1
            x_ties += run * (run - 1) // 2
            run = 1
            for i in range(1, n):
                if xv[idx[i]] == xv[idx[i - 1]] and yv[idx[i]] == yv[idx[i - 1]]:
                    run += 1
                else:
                    xy_ties += run * (run - 1) // 2
                    run = 1
            xy_ties += run * (run - 1) // 2
            for i in range(n):
                ys[i] = yv[idx[i]]
            disc = count_inversions(ys, dtmp, n)
            # ys is now sorted ascending
            y_ties = tied_pairs_sorted(ys, n)
            total = <long long> n * (n - 1) // 2
        return total - x_ties - y_ties + xy_ties - 2 * disc
    finally:
        free(idx)
        free(itmp)
        free(ys)
        free(dtmp)
