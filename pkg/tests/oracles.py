"""Independent reference implementations used to cross-check the library.

None of these import the code they check: named terms are substituted by
plain string-keyed recursion and terms are counted by closed recurrences.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


# named terms with capture-avoiding substitution


@dataclass(frozen=True)
class NVar:
    name: str


@dataclass(frozen=True)
class NNode:
    """A former `tag` with plain data `extra` and children under bound names."""
    tag: str
    extra: tuple
    kids: tuple  # of (bound names, child)


_counter = itertools.count()


def free(t) -> set[str]:
    if isinstance(t, NVar):
        return {t.name}
    out: set[str] = set()
    for names, k in t.kids:
        out |= free(k) - set(names)
    return out


def nsubst(t, s: dict):
    """Parallel substitution of named terms, renaming binders that would capture."""
    if isinstance(t, NVar):
        return s.get(t.name, t)
    kids = []
    for names, k in t.kids:
        s2 = {x: v for x, v in s.items() if x not in names}
        danger = set().union(set(), *(free(s2[x]) for x in free(k) if x in s2))
        new = []
        for x in names:
            if x in danger:
                y = f"{x}_{next(_counter)}"
                s2[x] = NVar(y)
                x = y
            new.append(x)
        kids.append((tuple(new), nsubst(k, s2)))
    return NNode(t.tag, t.extra, tuple(kids))


def nameless(t, scope: tuple[str, ...] = ()):
    """Nameless shape of a named term, for alpha comparison."""
    if isinstance(t, NVar):
        return ("v", scope[::-1].index(t.name)) if t.name in scope else ("free", t.name)
    return (t.tag, t.extra, tuple(nameless(k, scope + names) for names, k in t.kids))


# counting closed terms of simple signatures


def count_terms(arities: tuple[int, ...], depth: int) -> int:
    """Closed terms of spine depth <= depth (a constant has depth 1)."""
    @lru_cache(maxsize=None)
    def c(d: int) -> int:
        if d <= 0:
            return 0
        return sum(c(d - 1) ** k for k in arities)

    return c(depth)


def nat_value(term: str) -> int:
    """Value of a numeral `suc (suc ... zero)` read off the source text."""
    return term.count("suc")


def triangular(n: int) -> int:
    """Sum of k + 1 for k below n, by a plain loop."""
    total = 0
    for k in range(n):
        total += k + 1
    return total
