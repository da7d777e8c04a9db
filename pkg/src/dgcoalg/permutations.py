"""Permutations as tuples of 1-based images, plus the operadic block composite.

A permutation ``s`` of ``{1..n}`` is stored as ``(s(1), ..., s(n))``.
The action convention used throughout the package: ``s . mu`` is the
operation whose input ``s(i)`` plays the role of input ``i`` of ``mu``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations as _iter_perms


def identity(n: int) -> tuple:
    return tuple(range(1, n + 1))


def compose(s: tuple, t: tuple) -> tuple:
    """``s o t`` (apply ``t`` first)."""
    return tuple(s[i - 1] for i in t)


def inverse(s: tuple) -> tuple:
    out = [0] * len(s)
    for i, v in enumerate(s, 1):
        out[v - 1] = i
    return tuple(out)


def transposition(n: int, i: int) -> tuple:
    """The adjacent transposition ``s_i`` swapping ``i`` and ``i+1``."""
    if not 1 <= i < n:
        raise ValueError(f"s_{i} not in S_{n}")
    p = list(range(1, n + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def all_permutations(n: int) -> list:
    """``S_n`` in lexicographic order of image tuples."""
    return [tuple(p) for p in _iter_perms(range(1, n + 1))]


def sign(s: tuple) -> int:
    inv = 0
    n = len(s)
    for i in range(n):
        for j in range(i + 1, n):
            if s[i] > s[j]:
                inv += 1
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def reduced_word(s: tuple) -> tuple:
    """Indices ``(i_1, ..., i_k)`` with ``s = s_{i_1} o ... o s_{i_k}``."""
    # bubble sort the image list; each swap of positions (j, j+1) is right
    # multiplication by s_j
    p = list(s)
    word = []
    n = len(p)
    changed = True
    while changed:
        changed = False
        for j in range(n - 1):
            if p[j] > p[j + 1]:
                p[j], p[j + 1] = p[j + 1], p[j]
                word.append(j + 1)
                changed = True
    # s o s_{w1} o ... o s_{wk} = id  =>  s = s_{wk} o ... o s_{w1}
    return tuple(reversed(word))


def koszul_sign(degrees, order) -> int:
    """Koszul exponent parity for reordering graded items.

    ``order`` lists original indices in their new order; the result is the
    parity (0/1) of the sum of ``deg_a * deg_b`` over inverted pairs.
    """
    e = 0
    order = list(order)
    for x in range(len(order)):
        dx = degrees[order[x]]
        if dx % 2 == 0:
            continue
        for y in range(x + 1, len(order)):
            if order[x] > order[y] and degrees[order[y]] % 2:
                e += 1
    return e % 2


def partial_composite(s: tuple, i: int, t: tuple) -> tuple:
    """The permutation ``rho`` with ``rho.(a o_i b) = (s.a) o_{s(i)} (t.b)``."""
    n, m = len(s), len(t)
    si = s[i - 1]
    out = []
    for j in range(1, n + 1):
        if j == i:
            out.extend(si + t[l] - 1 for l in range(m))
        else:
            v = s[j - 1]
            out.append(v if v < si else v + m - 1)
    return tuple(out)


def block_permutation(s: tuple, sizes) -> tuple:
    """Permute consecutive blocks of the given sizes according to ``s``.

    Block ``j`` (of size ``sizes[j-1]``) is moved to block position
    ``s(j)``; inside blocks the order is kept.
    """
    k = len(s)
    new_sizes = [0] * k
    for j in range(k):
        new_sizes[s[j] - 1] = sizes[j]
    starts = [0] * k
    acc = 0
    for pos in range(k):
        starts[pos] = acc
        acc += new_sizes[pos]
    out = []
    for j in range(k):
        base = starts[s[j] - 1]
        out.extend(base + l + 1 for l in range(sizes[j]))
    return tuple(out)


def standardize(values) -> tuple:
    """Ranks of distinct values (1-based), e.g. ``(5, 2, 9) -> (2, 1, 3)``."""
    srt = sorted(values)
    rk = {v: r for r, v in enumerate(srt, 1)}
    return tuple(rk[v] for v in values)
