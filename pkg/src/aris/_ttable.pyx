# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled truth-table kernel.

Same contract as aris._ttable_py.truth_column, computed 64 assignments at
a time: within a 64-bit word the columns of atoms 0..5 are fixed bit
patterns, and an atom with index >= 6 is constant per word.
"""
from libc.stdlib cimport free, malloc
from libc.string cimport memset

BACKEND = "compiled"

cdef unsigned long long ALL = 0xFFFFFFFFFFFFFFFFULL

cdef unsigned long long PAT[6]
PAT[0] = 0xAAAAAAAAAAAAAAAAULL
PAT[1] = 0xCCCCCCCCCCCCCCCCULL
PAT[2] = 0xF0F0F0F0F0F0F0F0ULL
PAT[3] = 0xFF00FF00FF00FF00ULL
PAT[4] = 0xFFFF0000FFFF0000ULL
PAT[5] = 0xFFFFFFFF00000000ULL

DEF OP_ATOM = 0
DEF OP_TOP = 1
DEF OP_BOTTOM = 2
DEF OP_NOT = 3
DEF OP_AND = 4
DEF OP_OR = 5
DEF OP_XOR = 6
DEF OP_IMPLIES = 7
DEF OP_IFF = 8


def truth_column(ops, args, int natoms):
    """Truth column of one postfix program, as a 2**natoms-bit integer."""
    cdef Py_ssize_t nops = len(ops)
    cdef Py_ssize_t nwords = 1 if natoms <= 6 else (1 << (natoms - 6))
    cdef int *cops = <int *>malloc(nops * sizeof(int))
    cdef int *cargs = <int *>malloc(nops * sizeof(int))
    cdef unsigned long long *stack = <unsigned long long *>malloc(
        (nops + 1) * sizeof(unsigned long long))
    cdef unsigned char *out = <unsigned char *>malloc(nwords * 8)
    if cops == NULL or cargs == NULL or stack == NULL or out == NULL:
        free(cops); free(cargs); free(stack); free(out)
        raise MemoryError()
    cdef Py_ssize_t k, w, j
    cdef int op, a, m, sp
    cdef unsigned long long v, acc
    try:
        for k in range(nops):
            cops[k] = ops[k]
            cargs[k] = args[k]
        memset(out, 0, nwords * 8)
        for w in range(nwords):
            sp = 0
            for k in range(nops):
                op = cops[k]
                a = cargs[k]
                if op == OP_ATOM:
                    if a < 6:
                        v = PAT[a]
                    else:
                        v = ALL if (w >> (a - 6)) & 1 else 0
                    stack[sp] = v; sp += 1
                elif op == OP_TOP:
                    stack[sp] = ALL; sp += 1
                elif op == OP_BOTTOM:
                    stack[sp] = 0; sp += 1
                elif op == OP_NOT:
                    stack[sp - 1] = ~stack[sp - 1]
                elif op == OP_AND:
                    acc = stack[sp - 1]
                    for m in range(a - 1):
                        sp -= 1
                        acc &= stack[sp - 1]
                    stack[sp - 1] = acc
                elif op == OP_OR:
                    acc = stack[sp - 1]
                    for m in range(a - 1):
                        sp -= 1
                        acc |= stack[sp - 1]
                    stack[sp - 1] = acc
                elif op == OP_XOR:
                    sp -= 1
                    stack[sp - 1] = stack[sp - 1] ^ stack[sp]
                elif op == OP_IMPLIES:
                    sp -= 1
                    stack[sp - 1] = (~stack[sp - 1]) | stack[sp]
                elif op == OP_IFF:
                    sp -= 1
                    stack[sp - 1] = ~(stack[sp - 1] ^ stack[sp])
                else:
                    raise ValueError(f"bad opcode {op}")
            if sp != 1:
                raise ValueError("malformed program")
            v = stack[0]
            for j in range(8):
                out[w * 8 + j] = <unsigned char>((v >> (8 * j)) & 0xFF)
        column = int.from_bytes(out[:nwords * 8], "little")
    finally:
        free(cops)
        free(cargs)
        free(stack)
        free(out)
    if natoms < 6:
        # keep the shift in Python-object arithmetic: 1 << 32 overflows C int
        nbits = <object>(1 << natoms)
        column = column & ((1 << nbits) - 1)
    return column
