# Compiled spectral kernels for n <= 8 matrices: cyclic Jacobi eigenvalues,
# batched skew-square spectra, and the finite-difference residual gradient
# that dominates the search loop. Mirrors _pyref's contracts exactly.

from libc.math cimport sqrt, fabs

import numpy as np

DEF MAXN = 8

cdef double JACOBI_TOL = 1e-13
cdef int MAX_SWEEPS = 100


cdef void _jacobi_values(double* a, int n) noexcept nogil:
    # In-place cyclic Jacobi on a row-major symmetric n*n buffer; on exit the
    # diagonal holds the (unsorted) eigenvalues. Rotations whose pivot cannot
    # affect convergence (|apq| below thresh/2n) are skipped, which makes the
    # routine cheap on near-diagonal input.
    cdef int sweep, p, q, i
    cdef double norm0 = 0.0, off, apq, theta, t, c, s, tau, aip, aiq, thresh
    cdef double skip
    for i in range(n * n):
        norm0 += a[i] * a[i]
    norm0 = sqrt(norm0)
    thresh = JACOBI_TOL * norm0
    skip = thresh / (2 * n)
    for sweep in range(MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p * n + q] * a[p * n + q]
        if sqrt(off) <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p * n + q]
                if fabs(apq) <= skip:
                    continue
                theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq)
                t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p * n + p] -= t * apq
                a[q * n + q] += t * apq
                a[p * n + q] = 0.0
                a[q * n + p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i * n + p]
                        aiq = a[i * n + q]
                        a[i * n + p] = aip - s * (aiq + tau * aip)
                        a[p * n + i] = a[i * n + p]
                        a[i * n + q] = aiq + s * (aip - tau * aiq)
                        a[q * n + i] = a[i * n + q]


cdef void _jacobi_full(double* a, double* v, int n) noexcept nogil:
    # Jacobi with accumulation of the rotations: v ends row-major with the
    # eigenvector for a's i-th diagonal entry in column i.
    cdef int sweep, p, q, i
    cdef double norm0 = 0.0, off, apq, theta, t, c, s, tau, aip, aiq, thresh
    cdef double vip, viq
    for i in range(n * n):
        norm0 += a[i] * a[i]
        v[i] = 0.0
    for i in range(n):
        v[i * n + i] = 1.0
    norm0 = sqrt(norm0)
    thresh = JACOBI_TOL * norm0
    for sweep in range(MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p * n + q] * a[p * n + q]
        if sqrt(off) <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p * n + q]
                if apq == 0.0:
                    continue
                theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq)
                t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p * n + p] -= t * apq
                a[q * n + q] += t * apq
                a[p * n + q] = 0.0
                a[q * n + p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i * n + p]
                        aiq = a[i * n + q]
                        a[i * n + p] = aip - s * (aiq + tau * aip)
                        a[p * n + i] = a[i * n + p]
                        a[i * n + q] = aiq + s * (aip - tau * aiq)
                        a[q * n + i] = a[i * n + q]
                for i in range(n):
                    vip = v[i * n + p]
                    viq = v[i * n + q]
                    v[i * n + p] = vip - s * (viq + tau * vip)
                    v[i * n + q] = viq + s * (vip - tau * viq)


cdef void _square_into(const double* m, double* out, int n) noexcept nogil:
    cdef int i, j, l
    cdef double acc
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for l in range(n):
                acc += m[i * n + l] * m[l * n + j]
            out[i * n + j] = acc


cdef void _congruence(const double* v, const double* m, double* out,
                      double* scratch, int n) noexcept nogil:
    # out = v^T m v (all row-major n*n); scratch holds m @ v.
    cdef int i, j, l
    cdef double acc
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for l in range(n):
                acc += m[i * n + l] * v[l * n + j]
            scratch[i * n + j] = acc
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for l in range(n):
                acc += v[l * n + i] * scratch[l * n + j]
            out[i * n + j] = acc


cdef void _sort_ascending(double* w, int n) noexcept nogil:
    cdef int i, j
    cdef double key
    for i in range(1, n):
        key = w[i]
        j = i - 1
        while j >= 0 and w[j] > key:
            w[j + 1] = w[j]
            j -= 1
        w[j + 1] = key


cdef double _pair_sum(const double* spec, int rows, int n) noexcept nogil:
    cdef int p, q, i
    cdef double total = 0.0, acc, d
    for p in range(rows - 1):
        for q in range(p + 1, rows):
            acc = 0.0
            for i in range(n):
                d = spec[p * n + i] - spec[q * n + i]
                acc += d * d
            total += sqrt(acc)
    return total


def jacobi_eigh(a):
    """Jacobi eigen-decomposition; same contract as _pyref.jacobi_eigh."""
    cdef double[:, ::1] a_in = np.ascontiguousarray(a, dtype=np.float64)
    cdef int n = a_in.shape[0]
    if n > MAXN:
        raise ValueError("jacobi_eigh supports n <= 8")
    cdef double buf[MAXN * MAXN]
    cdef double vbuf[MAXN * MAXN]
    cdef int i, j, best
    for i in range(n):
        for j in range(n):
            buf[i * n + j] = a_in[i, j]
    _jacobi_full(buf, vbuf, n)
    w = np.empty(n, dtype=np.float64)
    v = np.empty((n, n), dtype=np.float64)
    cdef double[::1] w_out = w
    cdef double[:, ::1] v_out = v
    order = np.argsort([buf[i * n + i] for i in range(n)], kind="stable")
    cdef long[::1] ord_view = np.ascontiguousarray(order, dtype=np.int64)
    for j in range(n):
        w_out[j] = buf[ord_view[j] * n + ord_view[j]]
        for i in range(n):
            v_out[i, j] = vbuf[i * n + ord_view[j]]
    # Deterministic sign: largest-magnitude entry positive.
    cdef double mx, av
    for j in range(n):
        best = 0
        mx = fabs(v_out[0, j])
        for i in range(1, n):
            av = fabs(v_out[i, j])
            if av > mx:
                mx = av
                best = i
        if v_out[best, j] < 0.0:
            for i in range(n):
                v_out[i, j] = -v_out[i, j]
    return w, v


def skew_square_spectra(batch):
    """Ascending eigenvalues of S @ S per skew matrix in an (N, n, n) batch."""
    cdef double[:, :, ::1] b = np.ascontiguousarray(batch, dtype=np.float64)
    cdef int count = b.shape[0]
    cdef int n = b.shape[1]
    if n > MAXN:
        raise ValueError("skew_square_spectra supports n <= 8")
    out = np.empty((count, n), dtype=np.float64)
    cdef double[:, ::1] out_v = out
    cdef double sq[MAXN * MAXN]
    cdef double w[MAXN]
    cdef int m, i
    for m in range(count):
        _square_into(&b[m, 0, 0], sq, n)
        _jacobi_values(sq, n)
        for i in range(n):
            w[i] = sq[i * n + i]
        _sort_ascending(w, n)
        for i in range(n):
            out_v[m, i] = w[i]
    return out


def pair_residual(spectra):
    """Sum over row pairs p < q of the euclidean distance between rows."""
    cdef double[:, ::1] s = np.ascontiguousarray(spectra, dtype=np.float64)
    return _pair_sum(&s[0, 0], s.shape[0], s.shape[1])


def fd_gradient(cmats, s0, double delta):
    """Residual f0 and one-sided FD gradient; see _pyref.fd_gradient.

    Each perturbed solve is warm-started in the base operator's eigenvector
    frame: V0^T (S0 + delta*C)^2 V0 is within O(delta) of diagonal, so the
    Jacobi sweep on it is nearly free.
    """
    cdef double[:, :, :, ::1] c = np.ascontiguousarray(cmats, dtype=np.float64)
    cdef double[:, :, ::1] base = np.ascontiguousarray(s0, dtype=np.float64)
    cdef int planes = c.shape[0]
    cdef int ncoeff = c.shape[1]
    cdef int n = c.shape[2]
    if n > MAXN:
        raise ValueError("fd_gradient supports n <= 8")
    base_spec = np.empty((planes, n), dtype=np.float64)
    spec_k = np.empty((planes, n), dtype=np.float64)
    grad = np.empty(ncoeff, dtype=np.float64)
    frames = np.empty((planes, n, n), dtype=np.float64)
    cdef double[:, ::1] base_v = base_spec
    cdef double[:, ::1] spec_v = spec_k
    cdef double[::1] grad_v = grad
    cdef double[:, :, ::1] frame_v = frames
    cdef double mat[MAXN * MAXN]
    cdef double sq[MAXN * MAXN]
    cdef double rot[MAXN * MAXN]
    cdef double scratch[MAXN * MAXN]
    cdef double w[MAXN]
    cdef double f0, fk
    cdef int p, k, i, j
    for p in range(planes):
        _square_into(&base[p, 0, 0], sq, n)
        _jacobi_full(sq, rot, n)
        for i in range(n):
            w[i] = sq[i * n + i]
            for j in range(n):
                frame_v[p, i, j] = rot[i * n + j]
        _sort_ascending(w, n)
        for i in range(n):
            base_v[p, i] = w[i]
    f0 = _pair_sum(&base_v[0, 0], planes, n)
    for k in range(ncoeff):
        for p in range(planes):
            for i in range(n):
                for j in range(n):
                    mat[i * n + j] = base[p, i, j] + delta * c[p, k, i, j]
            _square_into(mat, sq, n)
            _congruence(&frame_v[p, 0, 0], sq, mat, scratch, n)
            _jacobi_values(mat, n)
            for i in range(n):
                w[i] = mat[i * n + i]
            _sort_ascending(w, n)
            for i in range(n):
                spec_v[p, i] = w[i]
        fk = _pair_sum(&spec_v[0, 0], planes, n)
        grad_v[k] = (fk - f0) / delta
    return f0, grad
