# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled evaluation kernel; mirrors _kernel_py.run exactly."""
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static int sf_add(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    static int sf_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    static int sf_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    """
    int sf_add(long long a, long long b, long long *r) nogil
    int sf_sub(long long a, long long b, long long *r) nogil
    int sf_mul(long long a, long long b, long long *r) nogil

cdef enum:
    CONST, X, IH, ADD, SUB, MUL, MIN, MAX, NEG

IMPLEMENTATION = "cython"


def run(const long long[:] heads, const long long[:] arg_ptr, const long long[:] args,
        const long long[:] prog, const long long[:] prog_ptr, long long stack_size,
        xs, ihs, long long[:] out):
    """Evaluate nodes in postorder. Returns -1 on success, else the index
    of the node whose expression overflowed."""
    cdef long long[:] xv = out if xs is None else xs
    cdef long long[:] iv = out if ihs is None else ihs
    cdef Py_ssize_t n = heads.shape[0]
    cdef long long *stack = <long long *> malloc((stack_size + 1) * sizeof(long long))
    cdef Py_ssize_t i, pc, end, sp, base
    cdef long long op, a, r
    cdef int bad = 0
    if stack == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                pc = prog_ptr[heads[i]]
                end = prog_ptr[heads[i] + 1]
                base = arg_ptr[i]
                sp = 0
                while pc < end:
                    op = prog[pc]
                    a = prog[pc + 1]
                    pc += 2
                    if op == CONST:
                        stack[sp] = a
                        sp += 1
                    elif op == X:
                        stack[sp] = xv[args[base + a]]
                        sp += 1
                    elif op == IH:
                        stack[sp] = iv[args[base + a]]
                        sp += 1
                    elif op == NEG:
                        if sf_sub(0, stack[sp - 1], &r):
                            bad = 1
                            break
                        stack[sp - 1] = r
                    else:
                        sp -= 1
                        if op == ADD:
                            bad = sf_add(stack[sp - 1], stack[sp], &r)
                        elif op == SUB:
                            bad = sf_sub(stack[sp - 1], stack[sp], &r)
                        elif op == MUL:
                            bad = sf_mul(stack[sp - 1], stack[sp], &r)
                        elif op == MIN:
                            r = stack[sp - 1] if stack[sp - 1] <= stack[sp] else stack[sp]
                        else:
                            r = stack[sp - 1] if stack[sp - 1] >= stack[sp] else stack[sp]
                        if bad:
                            break
                        stack[sp - 1] = r
                if bad:
                    break
                out[i] = stack[0]
    finally:
        free(stack)
    return i if bad else -1
