"""Free operads on decorated trees, quasi-free (cell) presentations and
cell attachment.

A tree is either a leaf (an ``int``, its label) or a vertex
``(decoration, children)`` where ``children`` is a tuple of trees and the
decoration is a basis label of ``M(len(children))``.  Canonical trees have the
children of every vertex sorted by their least leaf.  The Koszul order of the
decorations is preorder (a vertex before its children, children left to right).

Sign rule for the derivation on a quasi-free operad: the differential passes
every decoration before a vertex in preorder, and a generator's boundary tree
is substituted in place of the vertex with the Koszul sign of interleaving
its decorations with the subtrees hanging below.
"""

from __future__ import annotations

from functools import lru_cache
from fractions import Fraction
from itertools import product
from typing import Callable, Mapping

from . import linalg
from . import permutations as perm
from .chain_complex import ChainComplex, GradedVectorSpace, label_key, label_str
from .field import Field
from .operad import Operad, OperadMorphism, Report, check_operad
from .symmetric_sequence import (SymmetricSequence, TruncationError, _set_partitions_sorted,
                                 zero_sequence)


class StabilizationError(ValueError):
    """The free-operad recursion does not stabilize inside the truncation."""


def is_leaf(t) -> bool:
    return isinstance(t, int)


def min_leaf(t) -> int:
    while not is_leaf(t):
        t = t[1][0]
    return t


def leaves(t) -> list:
    if is_leaf(t):
        return [t]
    out = []
    for c in t[1]:
        out.extend(leaves(c))
    return out


def relabel_leaves(t, f: Callable):
    if is_leaf(t):
        return f(t)
    return (t[0], tuple(relabel_leaves(c, f) for c in t[1]))


def standardize_tree(t):
    rk = {v: r for r, v in enumerate(sorted(leaves(t)), 1)}
    return relabel_leaves(t, rk.__getitem__)


def vertex_count(t) -> int:
    if is_leaf(t):
        return 0
    return 1 + sum(vertex_count(c) for c in t[1])


def decorations(t) -> list:
    """Decorations with their arity, in preorder."""
    if is_leaf(t):
        return []
    out = [(len(t[1]), t[0])]
    for c in t[1]:
        out.extend(decorations(c))
    return out


class FreeOperad(Operad):
    """``T(M)`` truncated to arity ``<= max_arity`` and degrees in ``window``.

    ``boundary(p, dec)`` optionally gives extra generator differentials as
    vectors of canonical trees with leaves ``1..p`` (quasi-free case); the
    internal differential of ``M`` is always included.
    """

    def __init__(self, M: SymmetricSequence, max_arity: int, window: tuple | None = None,
                 boundary: Callable | None = None):
        if not M.is_zero_at(0):
            raise NotImplementedError("generators in arity 0 are not supported")
        self.M = M
        self.field = M.field
        self.max_arity = max_arity
        self.window = tuple(window) if window is not None else None
        self._boundary = boundary
        self._deg: dict = {}
        for p in range(1, min(M.max_arity, max_arity) + 1):
            C = M.component(p)
            for x in C.labels():
                self._deg[(p, x)] = C.degree_of(x)
        self._budget = None
        self._bases: dict = {}
        self._dcache: dict = {}

    # ---------------------------------------------------------------- basics
    def dec_degree(self, p: int, dec) -> int:
        return self._deg[(p, dec)]

    def tree_degree(self, t) -> int:
        if is_leaf(t):
            return 0
        return self._deg[(len(t[1]), t[0])] + sum(self.tree_degree(c) for c in t[1])

    def degree_of(self, n, x):
        return self.tree_degree(x)

    @property
    def unit(self):
        return {1: self.field.one}

    @property
    def _unary_budget(self) -> int:
        """Bound on unary vertices; computed on first basis request so that
        differentials of individual trees work without it."""
        if self._budget is None:
            self._budget = self._compute_unary_budget()
        return self._budget

    def _compute_unary_budget(self) -> int:
        if self.M.is_zero_at(1) or self.max_arity < 1:
            return 0
        u = [self._deg[(1, x)] for x in self.M.component(1).labels()]
        if 0 in u or (min(u) < 0 < max(u)):
            raise StabilizationError("unary generators of degree 0 or of both signs "
                                     "give infinitely many trees in a fixed degree")
        if self.window is None:
            raise StabilizationError("unary generators need a degree window")
        lo, hi = self.window
        others = [d for (p, _), d in self._deg.items() if p >= 2]
        k = max(self.max_arity - 1, 0)
        nmin = k * min([0] + others)
        nmax = k * max([0] + others)
        if min(u) > 0:
            return max(0, (hi - nmin) // min(u))
        return max(0, (nmax - lo) // (-max(u)))

    # ---------------------------------------------------------------- basis
    def _trees_std(self, k: int, U: int) -> list:
        """Canonical trees on leaves ``1..k`` with at most ``U`` unary vertices."""
        key = (k, U)
        cache = self.__dict__.setdefault("_std_cache", {})
        if key in cache:
            return cache[key]
        out = []
        if k == 1:
            out.append((1, 0))
        for p in range(1, k + 1):
            if p == 1 and U == 0:
                continue
            if p > self.M.max_arity or self.M.is_zero_at(p):
                continue
            decs = self.M.component(p).labels()
            budget = U - (1 if p == 1 else 0)
            for blocks in _set_partitions_sorted(tuple(range(1, k + 1)), p):
                child_opts = []
                for b in blocks:
                    opts = []
                    for t, u in self._trees_std(len(b), budget):
                        mp = dict(zip(range(1, len(b) + 1), b))
                        opts.append((relabel_leaves(t, mp.__getitem__), u))
                    child_opts.append(opts)
                for combo in product(*child_opts):
                    used = sum(u for _, u in combo) + (1 if p == 1 else 0)
                    if used > U:
                        continue
                    children = tuple(t for t, _ in combo)
                    for dec in decs:
                        out.append(((dec, children), used))
        cache[key] = out
        return out

    def _basis_arity(self, n: int) -> dict:
        if n in self._bases:
            return self._bases[n]
        b: dict = {}
        if 1 <= n <= self.max_arity:
            for t, _ in self._trees_std(n, self._unary_budget):
                dg = self.tree_degree(t)
                if self.in_window(dg):
                    b.setdefault(dg, []).append(t)
        for dg in b:
            b[dg].sort(key=label_key)
        self._bases[n] = b
        return b

    def basis(self, n, d):
        return self._basis_arity(n).get(d, [])

    def degrees(self, n):
        return sorted(self._basis_arity(n))

    # ---------------------------------------------------------------- canonical form
    def canonicalize(self, t, coeff=None) -> dict:
        """Vector of canonical trees equal to the (possibly unsorted) tree ``t``."""
        F = self.field
        coeff = F.one if coeff is None else coeff
        if is_leaf(t):
            return {t: coeff}
        dec, children = t
        p = len(children)
        child_vecs = [self.canonicalize(c) for c in children]
        out: dict = {}
        for combo in product(*[list(v.items()) for v in child_vecs]):
            c = coeff
            kids = []
            for (ct, cc) in combo:
                c = F.mul(c, cc)
                kids.append(ct)
            order = sorted(range(p), key=lambda j: min_leaf(kids[j]))
            pos = [0] * p
            for newpos, j in enumerate(order, 1):
                pos[j] = newpos
            sigma = tuple(pos)
            e = perm.koszul_sign([self.tree_degree(k) for k in kids], order)
            c = F.mul(c, F.sign(e))
            new_kids = tuple(kids[j] for j in order)
            for dec2, cd in self.M.act(p, sigma, {dec: F.one}).items():
                linalg.axpy(F, out, F.mul(c, cd), {(dec2, new_kids): F.one})
        return out

    def canonicalize_vec(self, v: Mapping) -> dict:
        out: dict = {}
        for t, c in v.items():
            linalg.axpy(self.field, out, c, self.canonicalize(t))
        return out

    # ---------------------------------------------------------------- structure
    def act(self, n, i, x):
        def sw(l):
            return i + 1 if l == i else i if l == i + 1 else l
        return self.canonicalize(relabel_leaves(x, sw))

    def compose(self, n, i, m, a, b):
        if n + m - 1 > self.max_arity:
            return None
        if not self.in_window(self.tree_degree(a) + self.tree_degree(b)):
            return None
        F = self.field
        tree, after = self._graft(a, i, m, b)
        return {tree: F.sign(self.tree_degree(b) * after)}

    def _graft(self, a, i, m, b):
        """Graft ``b`` at leaf ``i`` of ``a``; also return the degree after leaf i."""
        shifted_b = relabel_leaves(b, lambda l: l + i - 1)
        state = {"seen": False, "after": 0}

        def go(t):
            if is_leaf(t):
                if t == i:
                    state["seen"] = True
                    return shifted_b
                return t if t < i else t + m - 1
            if state["seen"]:
                state["after"] += self._deg[(len(t[1]), t[0])]
            return (t[0], tuple(go(c) for c in t[1]))

        return go(a), state["after"]

    def graft_trees(self, a, i, b) -> dict:
        """``a o_i b`` on trees without truncation checks."""
        tree, after = self._graft(a, i, len(leaves(b)), b)
        return {tree: self.field.sign(self.tree_degree(b) * after)}

    def vertex_boundary(self, p: int, dec) -> dict:
        """Differential of a single generator as canonical trees on ``1..p``."""
        F = self.field
        out: dict = {}
        kids = tuple(range(1, p + 1))
        for y, c in self.M.component(p).d.image_of(dec).items():
            linalg.axpy(F, out, c, {(y, kids): F.one})
        if self._boundary is not None:
            linalg.axpy(F, out, F.one, self._boundary(p, dec))
        return out

    def substitute(self, s, children: tuple):
        """Replace leaf ``j`` of ``s`` by ``children[j-1]``; returns (tree, sign exponent)."""
        cdeg = [self.tree_degree(c) for c in children]
        state = {"emitted": 0, "e": 0}

        def go(t):
            if is_leaf(t):
                state["emitted"] += cdeg[t - 1]
                return children[t - 1]
            state["e"] += self._deg[(len(t[1]), t[0])] * state["emitted"]
            return (t[0], tuple(go(c) for c in t[1]))

        return go(s), state["e"] % 2

    def d(self, n, x):
        return self.d_tree(x)

    def d_tree(self, t) -> dict:
        if is_leaf(t):
            return {}
        if t in self._dcache:
            return self._dcache[t]
        F = self.field
        dec, children = t
        p = len(children)
        out: dict = {}
        for s, c in self.vertex_boundary(p, dec).items():
            tree, e = self.substitute(s, children)
            linalg.axpy(F, out, F.mul(c, F.sign(e)), {tree: F.one})
        acc = self._deg[(p, dec)]
        for j, ch in enumerate(children):
            sgn = F.sign(acc)
            for dc, c in self.d_tree(ch).items():
                new = children[:j] + (dc,) + children[j + 1:]
                linalg.axpy(F, out, F.mul(sgn, c), {(dec, new): F.one})
            acc += self.tree_degree(ch)
        self._dcache[t] = out
        return out

    # ---------------------------------------------------------------- input/output
    def from_planar(self, planar, name_to_dec: Callable | None = None) -> dict:
        """Vector for a nested-list tree ``[name, child, child, ...]`` (leaves are ints)."""
        def conv(t):
            if isinstance(t, int):
                return t
            name, *kids = t
            dec = name_to_dec(name, len(kids)) if name_to_dec else name
            return (dec, tuple(conv(k) for k in kids))
        return self.canonicalize(conv(planar))

    def check_d_squared(self) -> Report:
        R = Report("d^2 = 0 on all basis trees")
        for n in range(1, self.max_arity + 1):
            for t in self.all_basis(n):
                dd = self.d_vec(n, self.d_tree(t))
                R.record("d^2=0", not dd, {"arity": n, "tree": t, "d^2": dd})
        return R


def tree_to_planar(t, dec_name: Callable | None = None):
    """Nested-list form of a tree, for output."""
    if is_leaf(t):
        return t
    name = dec_name(t[0]) if dec_name else label_str(t[0])
    return [name] + [tree_to_planar(c, dec_name) for c in t[1]]


def free_operad(M: SymmetricSequence, A: int, window: tuple | None = None) -> FreeOperad:
    return FreeOperad(M, A, window)


def evaluate_tree(T: FreeOperad, t, image: Callable, Q: Operad):
    """Image of a tree under the morphism ``T -> Q`` with generator images ``image(p, dec)``.

    Returns None when a composite leaves Q's truncation.
    """
    F = Q.field
    if is_leaf(t):
        return dict(Q.unit)
    dec, children = t
    p = len(children)
    parts = []
    labels = []
    for c in children:
        ls = sorted(leaves(c))
        v = evaluate_tree(T, standardize_tree(c), image, Q)
        if v is None:
            return None
        parts.append((len(ls), v))
        labels.extend(ls)
    g = Q.gamma(image(p, dec), p, parts)
    if g is None:
        return None
    n = len(labels)
    # position j in block order carries leaf labels[j]
    rho = tuple(labels)
    return Q.act_perm(n, rho, g)


def free_morphism(T: FreeOperad, Q: Operad, image: Callable, name: str = "phi") -> OperadMorphism:
    def img(n, x):
        v = evaluate_tree(T, x, image, Q)
        if v is None:
            raise TruncationError("image leaves the target truncation")
        return v
    return OperadMorphism(T, Q, img, name)


# ---------------------------------------------------------------------------
# quasi-free presentations


class CellError(ValueError):
    """An attachment violates the arity/degree/cycle preconditions."""


class QuasiFreePresentation:
    """Ordered generators ``(name, arity, degree, boundary)``.

    Generator ``name`` of arity ``p`` spans the regular representation
    ``k[S_p]`` with basis labels ``(name, s)``; the boundary is a dict of
    canonical trees (decorated by such labels) to coefficients.
    """

    def __init__(self, field: Field, generators: list | None = None):
        self.field = field
        self.generators: list = []
        for g in generators or []:
            self.generators.append(dict(g))

    def __len__(self):
        return len(self.generators)

    def names(self) -> list:
        return [g["name"] for g in self.generators]

    def generator(self, name: str) -> dict:
        for g in self.generators:
            if g["name"] == name:
                return g
        raise KeyError(name)

    def sequence(self, upto: int | None = None) -> SymmetricSequence:
        """The generating symmetric sequence ``M`` (zero differential)."""
        from .chain_complex import ChainComplex
        from .symmetric_sequence import _from_permutation_rep
        F = self.field
        gens = self.generators if upto is None else self.generators[:upto]
        by_arity: dict = {}
        for g in gens:
            by_arity.setdefault(g["arity"], []).append(g)
        A = max(by_arity, default=0)
        comps, acts = {}, {}
        for p, gs in by_arity.items():
            basis: dict = {}
            for g in gs:
                basis.setdefault(g["degree"], []).extend((g["name"], s) for s in perm.all_permutations(p))
            C = ChainComplex(F, GradedVectorSpace(basis), {}, check=False)
            comps[p] = C

            def act(i, x, p=p):
                nm, s = x
                return F.one, (nm, perm.compose(perm.transposition(p, i), s))
            acts[p] = _from_permutation_rep(F, p, C, act)
        return SymmetricSequence(F, comps, acts, A, complete=True)

    def realize(self, A: int, window: tuple | None = None, check: bool = True) -> FreeOperad:
        """The quasi-free operad truncated to arity ``A`` and ``window``."""
        M = self.sequence()
        holder = {}

        def boundary(p, dec):
            nm, s = dec
            b = self.generator(nm)["boundary"]
            if not b or s == perm.identity(p):
                return dict(b)
            return holder["T"].act_perm(p, s, b)

        T = FreeOperad(M, A, window, boundary=boundary)
        holder["T"] = T
        if check:
            R = T.check_d_squared()
            if not R.passed:
                raise CellError(f"d^2 != 0: {R.witnesses[0]}")
        return T

    def attach_cell(self, name: str, p: int, k: int, boundary) -> "QuasiFreePresentation":
        """New presentation with a generator ``name`` of arity p, degree k, ``d(name) = boundary``.

        ``boundary`` is a dict of canonical trees, or a list of
        ``(coeff, planar_tree)`` pairs using earlier generator names.
        """
        F = self.field
        if name in self.names():
            raise CellError(f"generator {name!r} already exists")
        if p < 1:
            raise CellError("cells of arity 0 are not supported")
        T = self.realize(p, (k - 2, k - 1), check=False) if self.generators else None
        b = self._coerce_boundary(boundary, T)
        if b:
            for t in b:
                ls = sorted(leaves(t))
                if ls != list(range(1, p + 1)):
                    raise CellError(f"boundary tree {tree_to_planar(t)} has the wrong arity")
                if T.tree_degree(t) != k - 1:
                    raise CellError(f"boundary tree {tree_to_planar(t)} has degree "
                                    f"{T.tree_degree(t)}, expected {k - 1}")
            db = T.d_vec(p, b)
            if db:
                raise CellError(f"boundary is not a cycle; d(boundary) = {db}")
        new = QuasiFreePresentation(F, self.generators)
        new.generators.append({"name": name, "arity": p, "degree": k, "boundary": b})
        return new

    def _coerce_boundary(self, boundary, T) -> dict:
        F = self.field
        if not boundary:
            return {}
        if isinstance(boundary, dict):
            return {t: F(c) for t, c in boundary.items() if F(c)}
        if T is None:
            raise CellError("nonzero boundary without earlier generators")
        known = set(self.names())
        out: dict = {}
        for c, planar in boundary:
            def conv(name, ar):
                s = perm.identity(ar)
                if isinstance(name, str) and name.endswith("]") and "[" in name:
                    # decorated form "name[s(1), ..., s(p)]" as written by planar_boundary
                    name, rest = name.split("[", 1)
                    s = tuple(int(v) for v in rest[:-1].split(","))
                    if sorted(s) != list(range(1, ar + 1)):
                        raise CellError(f"bad permutation in decoration {name}[{rest}")
                if name not in known:
                    raise CellError(f"unknown generator {name!r} in boundary")
                if self.generator(name)["arity"] != ar:
                    raise CellError(f"generator {name!r} used with arity {ar}")
                return (name, s)
            linalg.axpy(F, out, F(c), T.from_planar(planar, conv))
        return out

    def planar_boundary(self, name: str) -> list:
        b = self.generator(name)["boundary"]
        return [(c, tree_to_planar(t, lambda dec: _dec_name(dec))) for t, c in
                sorted(b.items(), key=lambda kv: label_key(kv[0]))]


def _dec_name(dec) -> str:
    nm, s = dec
    if s == perm.identity(len(s)):
        return nm
    return f"{nm}{list(s)}"


def empty_presentation(field: Field) -> QuasiFreePresentation:
    return QuasiFreePresentation(field)


def attach_cell(P: QuasiFreePresentation, p: int, k: int, boundary, name: str | None = None):
    if name is None:
        name = f"x{len(P) + 1}"
    return P.attach_cell(name, p, k, boundary)


def realize(P: QuasiFreePresentation, A: int, window: tuple | None = None) -> FreeOperad:
    return P.realize(A, window)


def ainfty_boundary(n: int) -> list:
    """``d m_n`` as ``(coeff, planar tree)`` pairs.

    ``d m_n = sum (-1)^{n + r + rs + s} m_{r+1+t} o_{r+1} m_s`` over
    ``r+s+t = n``, ``2 <= s <= n-1``.  Under a morphism to ``coEnd_C`` this
    is the relation ``sum (-1)^{r+st} (id^r (x) D_s (x) id^t) D_{r+1+t} = 0``
    once the composite twist of ``coEnd`` is unwound.
    """
    out = []
    for s in range(2, n):
        for r in range(0, n - s + 1):
            t = n - r - s
            e = (n + r + r * s + s) % 2
            inner = [f"m{s}"] + list(range(r + 1, r + s + 1))
            outer = [f"m{r + 1 + t}"] + list(range(1, r + 1)) + [inner] + list(range(r + s + 1, n + 1))
            out.append((-1 if e else 1, outer))
    return out


def ainfty_presentation(field: Field, N: int) -> QuasiFreePresentation:
    """Generators ``m_2 .. m_N`` with ``|m_n| = n - 2``."""
    P = QuasiFreePresentation(field)
    for n in range(2, N + 1):
        P = P.attach_cell(f"m{n}", n, n - 2, ainfty_boundary(n))
    return P
