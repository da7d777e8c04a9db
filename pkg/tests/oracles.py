"""Independent brute-force oracles.  Nothing here imports the package."""

from fractions import Fraction
from itertools import combinations, permutations


def dense_rank(rows, p=None) -> int:
    """Rank of a dense integer matrix over F_p (``p`` prime) or Q (``p=None``)."""
    if p is None:
        M = [[Fraction(x) for x in r] for r in rows]
    else:
        M = [[x % p for x in r] for r in rows]
    if not M or not M[0]:
        return 0
    rank, ncols = 0, len(M[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = (1 / M[rank][col]) if p is None else pow(M[rank][col], p - 2, p)
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col] * inv
                M[r] = [(a - f * b) if p is None else (a - f * b) % p for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def complex_betti(facets, p=None) -> dict:
    """Betti numbers of the ordered simplicial complex spanned by ``facets``."""
    simplices = set()
    for f in facets:
        f = tuple(sorted(f))
        for r in range(1, len(f) + 1):
            simplices.update(combinations(f, r))
    by_dim: dict = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    for d in by_dim:
        by_dim[d].sort()
    top = max(by_dim)
    ranks = {}
    for d in range(1, top + 1):
        idx = {s: i for i, s in enumerate(by_dim[d - 1])}
        rows = []
        for s in by_dim[d]:
            row = [0] * len(idx)
            for i in range(len(s)):
                row[idx[s[:i] + s[i + 1:]]] += (-1) ** i
            rows.append(row)
        ranks[d] = dense_rank(rows, p)
    return {d: len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(top + 1)}


def aw_oracle(verts):
    """Front-face/back-face coproduct on the simplex with the given vertex list."""
    m = len(verts) - 1
    return {(tuple(verts[:k + 1]), tuple(verts[k:])): 1 for k in range(m + 1)}


def planar_binary_trees(leaves):
    """All planar binary trees with the given leaf sequence (nested pairs)."""
    if len(leaves) == 1:
        return [leaves[0]]
    out = []
    for cut in range(1, len(leaves)):
        for a in planar_binary_trees(leaves[:cut]):
            for b in planar_binary_trees(leaves[cut:]):
                out.append((a, b))
    return out


def _unordered(t):
    if not isinstance(t, tuple):
        return t
    a, b = _unordered(t[0]), _unordered(t[1])
    return frozenset([a, b]) if a != b else (a, b)


def free_binary_dim(n: int, regular: bool) -> int:
    """Dimension of the free operad on one binary generator spanning k[S_2]
    (``regular``) or the trivial representation, in arity ``n``."""
    trees = set()
    for order in permutations(range(1, n + 1)):
        for t in planar_binary_trees(list(order)):
            trees.add(t if regular else _unordered(t))
    return len(trees)


def set_partitions(elements):
    elements = list(elements)
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def composite_dim(dim_m: dict, dim_n: dict, n: int) -> int:
    """Total dimension of ``(M o N)(n)`` for ``N(0) = 0``.

    ``S_k`` permutes the ordered partitions freely, so the coinvariants of
    ``M(k) (x) (ordered partitions)`` have dimension ``dim M(k)`` times the
    number of unordered partitions, each weighted by the block dimensions.
    """
    total = 0
    for part in set_partitions(range(1, n + 1)):
        w = dim_m.get(len(part), 0)
        for b in part:
            w *= dim_n.get(len(b), 0)
        total += w
    return total


def betti_from_matrices(counts: dict, boundaries: dict, p=None) -> dict:
    """Betti numbers from cell counts and dense boundary matrices
    ``boundaries[d]`` (rows = d-cells, columns = (d-1)-cells)."""
    ranks = {d: dense_rank(m, p) for d, m in boundaries.items()}
    return {d: c - ranks.get(d, 0) - ranks.get(d + 1, 0) for d, c in counts.items()}
