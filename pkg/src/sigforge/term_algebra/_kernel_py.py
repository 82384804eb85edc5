"""Pure-Python evaluation kernel, used when the compiled one is absent."""
from __future__ import annotations

CONST, X, IH, ADD, SUB, MUL, MIN, MAX, NEG = range(9)
LO, HI = -(2 ** 63), 2 ** 63 - 1

IMPLEMENTATION = "python"


def run(heads, arg_ptr, args, prog, prog_ptr, stack_size, xs, ihs, out) -> int:
    """Evaluate nodes in postorder. Returns -1 on success, else the index
    of the node whose expression overflowed."""
    xv = out if xs is None else xs
    iv = out if ihs is None else ihs
    for i in range(len(heads)):
        h = heads[i]
        pc, end = prog_ptr[h], prog_ptr[h + 1]
        base = arg_ptr[i]
        stack: list[int] = []
        push = stack.append
        while pc < end:
            op, a = prog[pc], prog[pc + 1]
            pc += 2
            if op == CONST:
                push(a)
            elif op == X:
                push(xv[args[base + a]])
            elif op == IH:
                push(iv[args[base + a]])
            elif op == NEG:
                r = -stack[-1]
                if r > HI:
                    return i
                stack[-1] = r
            else:
                y = stack.pop()
                x = stack[-1]
                if op == ADD:
                    r = x + y
                elif op == SUB:
                    r = x - y
                elif op == MUL:
                    r = x * y
                elif op == MIN:
                    r = min(x, y)
                else:
                    r = max(x, y)
                if r < LO or r > HI:
                    return i
                stack[-1] = r
        out[i] = stack[0]
    return -1
