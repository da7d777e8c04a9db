"""The Barratt-Eccles operad, the surjection operad, table reduction and the
interval-cut action on normalized chains of simplicial sets.

Permutations are tuples of values ``(w(1), ..., w(n))``; ``sigma . w`` is
``sigma o w``.  A surjection ``u`` is the tuple ``(u(1), ..., u(n+d))``.
Signs: the surjection differential uses the caesura rule (removing the k-th
caesura costs ``(-1)^(k-1)``, removing a final occurrence whose previous
occurrence is the k-th caesura costs ``(-1)^k``); the interval-cut action
uses the Koszul sign of sorting intervals by value, where an interval has
degree equal to its length plus one when it is not the last occurrence of
its value, times the parity of the cut points closing those inner intervals.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from . import linalg
from . import permutations as perm
from .chain_complex import ChainComplex
from .coalgebra import PCoalgebra
from .field import Field
from .operad import Operad, Report
from .simplicial import SimplicialSet, normalized_chains, simplicial_map_chains


def _nondegenerate(seq) -> bool:
    return all(seq[k] != seq[k + 1] for k in range(len(seq) - 1))


@lru_cache(maxsize=None)
def barratt_eccles_basis(n: int, d: int) -> tuple:
    """Tuples ``(w_0, ..., w_d)`` of permutations with adjacent entries distinct."""
    if n < 1 or d < 0:
        return ()
    P = perm.all_permutations(n)
    out = [(w,) for w in P]
    for _ in range(d):
        out = [e + (w,) for e in out for w in P if w != e[-1]]
    return tuple(out)


def _shuffle_paths(p: int, q: int):
    """Lattice paths (0,0) -> (p,q) as step words (1 = second coordinate);
    the sign parity counts pairs (second step, later first step)."""
    for pos in combinations(range(p + q), q):
        steps = [0] * (p + q)
        for k in pos:
            steps[k] = 1
        inv = 0
        seen_b = 0
        for st in steps:
            if st:
                seen_b += 1
            else:
                inv += seen_b
        yield steps, inv


class BarrattEcclesOperad(Operad):
    """``E(n)`` = normalized chains on ``E S_n``, truncated to arity and degree bounds.

    ``E(0) = 0``.  Composition is the Eilenberg-Zilber shuffle product of
    simplices with the vertexwise composite of permutations.
    """

    def __init__(self, field: Field, max_arity: int = 3, max_deg: int = 4):
        self.field = field
        self.max_arity = max_arity
        self.max_deg = max_deg
        self.window = (0, max_deg)

    def basis(self, n, d):
        if not 1 <= n <= self.max_arity or not 0 <= d <= self.max_deg:
            return []
        return list(barratt_eccles_basis(n, d))

    def degrees(self, n):
        if not 1 <= n <= self.max_arity:
            return []
        return [0] if n == 1 else list(range(self.max_deg + 1))

    def degree_of(self, n, x):
        return len(x) - 1

    def d(self, n, x):
        F = self.field
        out: dict = {}
        if len(x) == 1:
            return out
        for i in range(len(x)):
            f = x[:i] + x[i + 1:]
            if _nondegenerate(f):
                linalg.axpy(F, out, F.sign(i), {f: F.one})
        return out

    def act(self, n, i, x):
        s = perm.transposition(n, i)
        return {tuple(perm.compose(s, w) for w in x): self.field.one}

    def compose(self, n, i, m, a, b):
        p, q = len(a) - 1, len(b) - 1
        if n + m - 1 > self.max_arity or p + q > self.max_deg:
            return None
        F = self.field
        out: dict = {}
        for steps, inv in _shuffle_paths(p, q):
            x, y = 0, 0
            seq = [_vertex_composite(a[0], i, b[0])]
            for st in steps:
                if st:
                    y += 1
                else:
                    x += 1
                seq.append(_vertex_composite(a[x], i, b[y]))
            if _nondegenerate(seq):
                linalg.axpy(F, out, F.sign(inv), {tuple(seq): F.one})
        return out

    @property
    def unit(self):
        return {((1,),): self.field.one}


def _vertex_composite(w: tuple, i: int, u: tuple) -> tuple:
    return perm.partial_composite(w, perm.inverse(w)[i - 1], u)


def barratt_eccles_component(n: int, max_deg: int, field: Field) -> ChainComplex:
    return BarrattEcclesOperad(field, max(n, 1), max_deg).component(n)


# ---------------------------------------------------------------------------
# surjections


@lru_cache(maxsize=None)
def surjections(n: int, d: int) -> tuple:
    """Nondegenerate surjections ``{1..n+d} -> {1..n}``."""
    out = []

    def rec(seq):
        if len(seq) == n + d:
            if len(set(seq)) == n:
                out.append(tuple(seq))
            return
        missing = n - len(set(seq))
        if n + d - len(seq) < missing:
            return
        for v in range(1, n + 1):
            if not seq or seq[-1] != v:
                rec(seq + [v])
    rec([])
    return tuple(out)


def _is_last(u: tuple, j: int) -> bool:
    return u[j] not in u[j + 1:]


def is_surjection(u: tuple, n: int | None = None) -> bool:
    n = max(u, default=0) if n is None else n
    return set(u) == set(range(1, n + 1)) and _nondegenerate(u)


def surjection_d(u: tuple, field: Field) -> dict:
    F = field
    caes = [j for j in range(len(u)) if not _is_last(u, j)]
    out: dict = {}
    for j in range(len(u)):
        v = u[:j] + u[j + 1:]
        if set(v) != set(u) or not _nondegenerate(v):
            continue
        if j in caes:
            e = caes.index(j)
        else:
            prev = max(i for i in range(j) if u[i] == u[j])
            e = caes.index(prev) + 1
        linalg.axpy(F, out, F.sign(e), {v: F.one})
    return out


def surjection_act(u: tuple, sigma: tuple) -> tuple:
    return tuple(sigma[v - 1] for v in u)


def _compositions(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for a in range(1, total - parts + 2):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def table_reduction(e: tuple, field: Field) -> dict:
    """Table reduction of ``(w_0, ..., w_d)`` to a sum of surjections.

    For every ``r_0 + ... + r_d = n + d`` with ``r_j >= 1``, row ``j`` is the
    first ``r_j`` values of ``w_j`` not yet used in a non-final position of
    an earlier row; the surjection is the concatenation of the rows.
    """
    d = len(e) - 1
    n = len(e[0])
    out: dict = {}
    for r in _compositions(n + d, d + 1):
        used: set = set()
        u: list = []
        for j, w in enumerate(e):
            avail = [x for x in w if x not in used]
            if r[j] > len(avail):
                break
            row = avail[:r[j]]
            u.extend(row)
            used.update(row[:-1])
        else:
            u = tuple(u)
            if is_surjection(u, n):
                linalg.axpy(field, out, field.one, {u: field.one})
    return out


# ---------------------------------------------------------------------------
# interval cuts


def interval_cuts(u: tuple, m: int):
    """Yield ``(faces, sign_parity)``: vertex tuples per value of ``u`` for each
    nondegenerate cut of ``{0..m}`` into ``len(u)`` intervals."""
    L = len(u)
    n = max(u)
    last = [_is_last(u, r) for r in range(L)]
    order = sorted(range(L), key=lambda r: (u[r], r))
    for cuts in combinations_with_replacement(range(m + 1), L - 1):
        ks = (0,) + cuts + (m,)
        faces = [[] for _ in range(n)]
        ok = True
        for r in range(L):
            f = faces[u[r] - 1]
            lo = ks[r]
            if f and f[-1] >= lo:
                ok = False
                break
            f.extend(range(lo, ks[r + 1] + 1))
        if not ok:
            continue
        degs = [ks[r + 1] - ks[r] + (0 if last[r] else 1) for r in range(L)]
        e = perm.koszul_sign(degs, order)
        e += sum(ks[r + 1] for r in range(L - 1) if not last[r])
        yield tuple(tuple(f) for f in faces), e % 2


def surjection_action(u: tuple, X: SimplicialSet, sigma, field: Field) -> dict:
    """Interval-cut action of ``u`` on the nondegenerate simplex ``sigma``."""
    F = field
    m = X.dim_of[sigma]
    out: dict = {}
    for faces, e in interval_cuts(u, m):
        t = []
        for f in faces:
            y = X.face_by_vertices(sigma, f)
            if y is None:
                break
            t.append(y)
        else:
            linalg.axpy(F, out, F.sign(e), {tuple(t): F.one})
    return out


def alexander_whitney(X: SimplicialSet, sigma, field: Field) -> dict:
    """Direct front-face/back-face coproduct."""
    m = X.dim_of[sigma]
    out: dict = {}
    for k in range(m + 1):
        a = X.face_by_vertices(sigma, range(k + 1))
        b = X.face_by_vertices(sigma, range(k, m + 1))
        if a is not None and b is not None:
            linalg.axpy(field, out, field.one, {(a, b): field.one})
    return out


aw_coproduct = alexander_whitney


def e_coalgebra_structure(X: SimplicialSet, field: Field, max_arity: int = 3,
                          max_deg: int = 4) -> PCoalgebra:
    """Normalized chains of ``X`` as a coalgebra over the truncated Barratt-Eccles operad."""
    E = BarrattEcclesOperad(field, max_arity, max_deg)
    C = normalized_chains(X, field)
    F = field
    surj_cache: dict = {}

    def act_surj(u):
        if u not in surj_cache:
            v: dict = {}
            for x in C.labels():
                for t, c in surjection_action(u, X, x, F).items():
                    v[(x, t)] = c
            surj_cache[u] = v
        return surj_cache[u]

    def coop(n, e):
        out: dict = {}
        for u, c in table_reduction(e, F).items():
            linalg.axpy(F, out, c, act_surj(u))
        return out

    return PCoalgebra(E, C, coop, name=f"C({X.name})", max_arity=max_arity)


# ---------------------------------------------------------------------------
# property checks


def check_table_reduction(n: int, max_deg: int, field: Field) -> Report:
    """``d TR = TR d`` and equivariance on every basis element of ``E(n)`` up to ``max_deg``."""
    F = field
    E = BarrattEcclesOperad(F, n, max_deg)
    R = Report(f"table reduction E({n}) to degree {max_deg}")
    for d in range(max_deg + 1):
        for e in E.basis(n, d):
            tr = table_reduction(e, F)
            if any(len(u) != n + d for u in tr):
                R.record("degree", False, {"element": e})
                continue
            R.record("degree", True)
            lhs: dict = {}
            for u, c in tr.items():
                linalg.axpy(F, lhs, c, surjection_d(u, F))
            rhs: dict = {}
            for f, c in E.d(n, e).items():
                linalg.axpy(F, rhs, c, table_reduction(f, F))
            R.record("chain map", lhs == rhs, {"element": e, "d TR": lhs, "TR d": rhs})
            for i in range(1, n):
                s = perm.transposition(n, i)
                moved = {surjection_act(u, s): c for u, c in tr.items()}
                (se,) = E.act(n, i, e)
                R.record("equivariance", moved == table_reduction(se, F), {"element": e, "i": i})
    return R


def check_naturality(X: SimplicialSet, Y: SimplicialSet, vertex_map: dict, field: Field,
                     max_arity: int = 3, max_deg: int = 2) -> Report:
    """``f^{(x)n} Delta_e = Delta_e f`` for the simplicial map given on vertices."""
    F = field
    f = simplicial_map_chains(X, Y, vertex_map, F)
    SX = e_coalgebra_structure(X, F, max_arity, max_deg)
    SY = e_coalgebra_structure(Y, F, max_arity, max_deg)
    R = Report(f"naturality {X.name} -> {Y.name}")
    for n in range(1, max_arity + 1):
        for e in SX.operad.all_basis(n):
            for x in SX.carrier.labels():
                lhs: dict = {}
                for t, c in SX.apply(n, e, x).items():
                    img = {(): F.one}
                    for y in t:
                        img = {s + (z,): F.mul(a, b) for s, a in img.items()
                               for z, b in f.image_of(y).items()}
                    linalg.axpy(F, lhs, c, img)
                rhs: dict = {}
                for y, c in f.image_of(x).items():
                    linalg.axpy(F, rhs, c, SY.apply(n, e, y))
                R.record("naturality", lhs == rhs, {"element": e, "simplex": x})
    return R


def augmentation(C: ChainComplex, x) -> int:
    return C.field.one if C.degree_of(x) == 0 else C.field.zero


def check_counit(S: PCoalgebra) -> Report:
    """``(eps (x) id) Delta = id = (id (x) eps) Delta`` for the arity-2 degree-0 cooperations."""
    F = S.field
    C = S.carrier
    R = Report(f"counit on {S.name}")
    for e in S.operad.basis(2, 0):
        for x in C.labels():
            left: dict = {}
            right: dict = {}
            for (a, b), c in S.apply(2, e, x).items():
                linalg.axpy(F, left, F.mul(c, augmentation(C, a)), {b: F.one})
                linalg.axpy(F, right, F.mul(c, augmentation(C, b)), {a: F.one})
            R.record("counit", left == {x: F.one} == right, {"element": e, "simplex": x})
    return R


def cup_i_element(i: int) -> tuple:
    """``(id, tau, id, ...)`` of degree ``i`` in ``E(2)``; it reduces to ``(1,2,1,2,...)``."""
    return tuple((1, 2) if k % 2 == 0 else (2, 1) for k in range(i + 1))
