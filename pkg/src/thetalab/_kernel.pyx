# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-sum kernels (see _kernel_py for the reference contract)."""

cdef extern from "complex.h":
    double complex cexp(double complex) nogil

cdef double PI = 3.141592653589793238462643383279502884

BACKEND = "cython"


def theta_sum(double a1, double a2,
              double complex z11, double complex z12, double complex z22,
              double complex w1, double complex w2, int radius):
    cdef double complex acc = 0
    cdef double complex q
    cdef double m1, m2
    cdef int i, j
    with nogil:
        for i in range(-radius, radius + 1):
            m1 = i + a1
            for j in range(-radius, radius + 1):
                m2 = j + a2
                q = (1j * PI) * (m1 * m1 * z11 + 2.0 * m1 * m2 * z12 + m2 * m2 * z22) \
                    + (2j * PI) * (m1 * w1 + m2 * w2)
                acc = acc + cexp(q)
    return complex(acc)


def theta_sum_grad(double a1, double a2,
                   double complex z11, double complex z12, double complex z22,
                   double complex w1, double complex w2, int radius):
    cdef double complex acc = 0, acc1 = 0, acc2 = 0
    cdef double complex q, t
    cdef double m1, m2
    cdef int i, j
    with nogil:
        for i in range(-radius, radius + 1):
            m1 = i + a1
            for j in range(-radius, radius + 1):
                m2 = j + a2
                q = (1j * PI) * (m1 * m1 * z11 + 2.0 * m1 * m2 * z12 + m2 * m2 * z22) \
                    + (2j * PI) * (m1 * w1 + m2 * w2)
                t = cexp(q)
                acc = acc + t
                acc1 = acc1 + m1 * t
                acc2 = acc2 + m2 * t
    return complex(acc), complex((2j * PI) * acc1), complex((2j * PI) * acc2)
