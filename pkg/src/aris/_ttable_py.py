"""Pure-Python truth-table kernel.

A formula over n atoms is evaluated simultaneously on all 2**n assignments
by manipulating whole truth columns as Python integers: bit j of a column
is the formula's value under assignment j, where atom i is true iff bit i
of j is set.  Programs are postfix opcode/argument lists produced by
``aris.semantics``; the compiled kernel in ``aris._ttable`` computes the
same function word by word.
"""
from __future__ import annotations

from functools import lru_cache

BACKEND = "python"

# Opcodes shared with the compiled kernel.
OP_ATOM = 0
OP_TOP = 1
OP_BOTTOM = 2
OP_NOT = 3
OP_AND = 4
OP_OR = 5
OP_XOR = 6
OP_IMPLIES = 7
OP_IFF = 8


@lru_cache(maxsize=64)
def _atom_columns(natoms: int) -> tuple[int, ...]:
    size = 1 << natoms
    cols = []
    for i in range(natoms):
        block = 1 << i
        chunk = ((1 << block) - 1) << block
        width = block * 2
        while width < size:
            chunk |= chunk << width
            width *= 2
        cols.append(chunk)
    return tuple(cols)


def truth_column(ops: list[int], args: list[int], natoms: int) -> int:
    """Truth column of one postfix program, as a 2**natoms-bit integer."""
    mask = (1 << (1 << natoms)) - 1
    cols = _atom_columns(natoms)
    stack: list[int] = []
    push = stack.append
    pop = stack.pop
    for op, a in zip(ops, args):
        if op == OP_ATOM:
            push(cols[a])
        elif op == OP_TOP:
            push(mask)
        elif op == OP_BOTTOM:
            push(0)
        elif op == OP_NOT:
            push(mask ^ pop())
        elif op == OP_AND:
            acc = pop()
            for _ in range(a - 1):
                acc &= pop()
            push(acc)
        elif op == OP_OR:
            acc = pop()
            for _ in range(a - 1):
                acc |= pop()
            push(acc)
        elif op == OP_XOR:
            b = pop()
            push(pop() ^ b)
        elif op == OP_IMPLIES:
            b = pop()
            push((mask ^ pop()) | b)
        elif op == OP_IFF:
            b = pop()
            push(mask ^ (pop() ^ b))
        else:
            raise ValueError(f"bad opcode {op}")
    if len(stack) != 1:
        raise ValueError("malformed program")
    return stack[0]
