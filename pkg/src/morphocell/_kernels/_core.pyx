# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sampling lane: a small stack machine over postfix programs.

The guard semantics mirror the pure-Python lane exactly.  A domain failure
(zero divisor, ln of a non-positive value, sqrt of a negative value, a
negative base with a non-integer exponent, zero to a negative power, or a
trigonometric function of infinity) aborts the point and yields NaN, and a
non-finite final value is likewise stored as NaN.  Both lanes call the same
C library functions in the same order, so valid points agree bit for bit.
"""

from libc.math cimport (
    INFINITY,
    NAN,
    atan2,
    cos,
    exp,
    fabs,
    floor,
    isfinite,
    log,
    pow,
    sin,
    sqrt,
)
from libc.stdlib cimport free, malloc

import numpy as np


cdef inline double _run(
    const int* codes,
    const int* cargs,
    const double* consts,
    int ncodes,
    double* stack,
    double x,
    double y,
    double z,
    double t,
) noexcept nogil:
    cdef int pc = 0, sp = 0, op
    cdef double a, b
    while pc < ncodes:
        op = codes[pc]
        if op == 0:
            stack[sp] = consts[cargs[pc]]
            sp += 1
        elif op == 1:
            stack[sp] = x
            sp += 1
        elif op == 2:
            stack[sp] = y
            sp += 1
        elif op == 3:
            stack[sp] = z
            sp += 1
        elif op == 4:
            stack[sp] = t
            sp += 1
        elif op == 5:
            stack[sp - 1] = -stack[sp - 1]
        elif op == 6:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] + stack[sp]
        elif op == 7:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] - stack[sp]
        elif op == 8:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] * stack[sp]
        elif op == 9:
            b = stack[sp - 1]
            if b == 0.0:
                return NAN
            sp -= 1
            stack[sp - 1] = stack[sp - 1] / b
        elif op == 10:
            b = stack[sp - 1]
            sp -= 1
            a = stack[sp - 1]
            if a == 0.0:
                if b == 0.0:
                    stack[sp - 1] = 1.0
                elif b < 0.0:
                    return NAN
                else:
                    stack[sp - 1] = pow(a, b)
            elif a < 0.0 and not (isfinite(b) and floor(b) == b):
                return NAN
            else:
                stack[sp - 1] = pow(a, b)
        elif op == 11:
            stack[sp - 1] = fabs(stack[sp - 1])
        elif op == 12:
            a = stack[sp - 1]
            if a < 0.0:
                return NAN
            stack[sp - 1] = sqrt(a)
        elif op == 13:
            stack[sp - 1] = exp(stack[sp - 1])
        elif op == 14:
            a = stack[sp - 1]
            if a <= 0.0:
                return NAN
            stack[sp - 1] = log(a)
        elif op == 15:
            a = stack[sp - 1]
            if a == INFINITY or a == -INFINITY:
                return NAN
            stack[sp - 1] = sin(a)
        elif op == 16:
            a = stack[sp - 1]
            if a == INFINITY or a == -INFINITY:
                return NAN
            stack[sp - 1] = cos(a)
        elif op == 17:
            b = stack[sp - 1]
            sp -= 1
            stack[sp - 1] = atan2(stack[sp - 1], b)
        elif op == 18:
            b = stack[sp - 1]
            sp -= 1
            a = stack[sp - 1]
            stack[sp - 1] = b if b < a else a
        else:
            b = stack[sp - 1]
            sp -= 1
            a = stack[sp - 1]
            stack[sp - 1] = b if b > a else a
        pc += 1
    a = stack[0]
    if not isfinite(a):
        return NAN
    return a


def sample_2d(program, xs, ys, double t):
    cdef const int[::1] codes = program.codes
    cdef const int[::1] cargs = program.cargs
    cdef const double[::1] consts = program.consts
    cdef const double[::1] xv = xs
    cdef const double[::1] yv = ys
    cdef int ncodes = codes.shape[0]
    cdef Py_ssize_t nx = xv.shape[0], ny = yv.shape[0], i, j
    out = np.empty((ny, nx), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef const int* pc = &codes[0]
    cdef const int* pa = &cargs[0]
    cdef const double* pk = NULL
    if consts.shape[0] > 0:
        pk = &consts[0]
    cdef int need = program.stack_need
    if need < 1:
        need = 1
    cdef double* stk = <double*> malloc(need * sizeof(double))
    if stk == NULL:
        raise MemoryError()
    try:
        with nogil:
            for j in range(ny):
                for i in range(nx):
                    o[j, i] = _run(pc, pa, pk, ncodes, stk, xv[i], yv[j], 0.0, t)
    finally:
        free(stk)
    return out


def sample_3d(program, xs, ys, zs, double t):
    cdef const int[::1] codes = program.codes
    cdef const int[::1] cargs = program.cargs
    cdef const double[::1] consts = program.consts
    cdef const double[::1] xv = xs
    cdef const double[::1] yv = ys
    cdef const double[::1] zv = zs
    cdef int ncodes = codes.shape[0]
    cdef Py_ssize_t nx = xv.shape[0], ny = yv.shape[0], nz = zv.shape[0], i, j, k
    out = np.empty((nz, ny, nx), dtype=np.float64)
    cdef double[:, :, ::1] o = out
    cdef const int* pc = &codes[0]
    cdef const int* pa = &cargs[0]
    cdef const double* pk = NULL
    if consts.shape[0] > 0:
        pk = &consts[0]
    cdef int need = program.stack_need
    if need < 1:
        need = 1
    cdef double* stk = <double*> malloc(need * sizeof(double))
    if stk == NULL:
        raise MemoryError()
    try:
        with nogil:
            for k in range(nz):
                for j in range(ny):
                    for i in range(nx):
                        o[k, j, i] = _run(
                            pc, pa, pk, ncodes, stk, xv[i], yv[j], zv[k], t
                        )
    finally:
        free(stk)
    return out
