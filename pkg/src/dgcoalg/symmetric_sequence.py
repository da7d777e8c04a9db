"""dg symmetric sequences, the generating spheres and disks, and the
composition product.

A symmetric sequence stores, for each arity ``n <= max_arity``, a chain
complex and the action of the adjacent transpositions ``s_1 .. s_{n-1}``.
``complete=True`` declares every arity above ``max_arity`` to be zero;
otherwise those arities are unknown and any computation needing them fails.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

from . import linalg
from . import permutations as perm
from .chain_complex import ChainComplex, GradedVectorSpace, LinearMap, label_key
from .field import Field


class TruncationError(ValueError):
    """A computation needs data outside the declared truncation."""


class SymmetricSequence:
    def __init__(self, field: Field, components: Mapping[int, ChainComplex],
                 actions: Mapping[int, list] | None = None, max_arity: int | None = None,
                 complete: bool = True):
        self.field = field
        if max_arity is None:
            max_arity = max(components) if components else 0
        self.max_arity = max_arity
        self.complete = complete
        self.components = {}
        self.actions = {}
        actions = actions or {}
        for n in range(max_arity + 1):
            C = components.get(n)
            if C is None:
                C = ChainComplex.zero(field)
            self.components[n] = C
            acts = list(actions.get(n, []))
            if C.dim() and len(acts) != max(n - 1, 0):
                raise ValueError(f"arity {n}: need {max(n - 1, 0)} transposition actions")
            if not C.dim():
                acts = [LinearMap.zero(field, C.space, C.space) for _ in range(max(n - 1, 0))]
            self.actions[n] = acts

    def __repr__(self):
        dims = {n: C.dims() for n, C in self.components.items() if C.dim()}
        return f"SymmetricSequence({self.field}, A={self.max_arity}, dims={dims})"

    def component(self, n: int) -> ChainComplex:
        if n > self.max_arity:
            if self.complete:
                return ChainComplex.zero(self.field)
            raise TruncationError(f"arity {n} beyond truncation {self.max_arity}")
        return self.components[n]

    def is_zero_at(self, n: int) -> bool:
        return n > self.max_arity and self.complete or (
            n <= self.max_arity and self.components[n].dim() == 0)

    def dims(self, n: int) -> dict:
        return self.component(n).dims()

    def support(self) -> list:
        return [n for n, C in self.components.items() if C.dim()]

    # action -----------------------------------------------------------------
    def transpose(self, n: int, i: int, v: Mapping) -> dict:
        """Apply ``s_i`` (1-based) to a vector of arity ``n``."""
        return self.actions[n][i - 1].apply(v)

    def act(self, n: int, s: tuple, v: Mapping) -> dict:
        """Apply an arbitrary permutation ``s`` in ``S_n``."""
        out = dict(v)
        for i in reversed(perm.reduced_word(s)):
            out = self.actions[n][i - 1].apply(out)
        return out

    # verification -------------------------------------------------------------
    def check(self) -> list:
        """Failures of the symmetric-sequence axioms (empty list = pass)."""
        failures = []
        F = self.field
        for n, C in self.components.items():
            acts = self.actions[n]
            for i, a in enumerate(acts, 1):
                for x in C.labels():
                    # chain map: d s = s d
                    if C.differential(a.image_of(x)) != a.apply(C.d.image_of(x)):
                        failures.append(("chain_map", n, i, x))
                    if a.apply(a.image_of(x)) != {x: F.one}:
                        failures.append(("involution", n, i, x))
            for i in range(1, n - 1):
                for x in C.labels():
                    a, b = acts[i - 1], acts[i]
                    lhs = a.apply(b.apply(a.image_of(x)))
                    rhs = b.apply(a.apply(b.image_of(x)))
                    if lhs != rhs:
                        failures.append(("braid", n, i, x))
            for i in range(1, n):
                for j in range(i + 2, n):
                    for x in C.labels():
                        a, b = acts[i - 1], acts[j - 1]
                        if a.apply(b.image_of(x)) != b.apply(a.image_of(x)):
                            failures.append(("commute", n, i, j, x))
        return failures

    def relabel(self, f) -> "SymmetricSequence":
        comps = {n: C.relabel(f) for n, C in self.components.items()}
        acts = {}
        for n, lst in self.actions.items():
            acts[n] = [LinearMap(self.field, comps[n].space, comps[n].space, 0,
                                 {f(x): {f(y): c for y, c in v.items()} for x, v in a.images.items()},
                                 check=False) for a in lst]
        return SymmetricSequence(self.field, comps, acts, self.max_arity, self.complete)


def _from_permutation_rep(field: Field, n: int, complex_: ChainComplex, act_label) -> list:
    """Transposition actions for a basis permuted by ``act_label(i, x) -> (coeff, y)``."""
    out = []
    for i in range(1, n):
        ims = {}
        for x in complex_.labels():
            c, y = act_label(i, x)
            if c:
                ims[x] = {y: c}
        out.append(LinearMap(field, complex_.space, complex_.space, 0, ims, check=False))
    return out


def unit_sequence(field: Field, max_arity: int = 1, label="id") -> SymmetricSequence:
    """``I``: the ground field in arity 1, degree 0; zero elsewhere."""
    comps = {1: ChainComplex(field, GradedVectorSpace({0: [label]}), {}, check=False)}
    return SymmetricSequence(field, comps, {1: []}, max(max_arity, 1), complete=True)


def regular_sequence(field: Field, p: int, degrees: Mapping[int, str], differential=None,
                     name_of=None) -> SymmetricSequence:
    """Copies of the regular representation ``k[S_p]`` in arity ``p``.

    ``degrees`` maps degree -> name; basis labels are ``(name, s)`` for
    ``s`` in ``S_p``.  ``differential`` maps name -> name (identity on the
    permutation part).
    """
    perms = perm.all_permutations(p)
    basis = {d: [(nm, s) for s in perms] for d, nm in degrees.items()}
    space = GradedVectorSpace(basis)
    dmap = {}
    if differential:
        for a, b in differential.items():
            for s in perms:
                dmap[(a, s)] = {(b, s): field.one}
    C = ChainComplex(field, space, dmap)

    def act(i, x):
        nm, s = x
        return field.one, (nm, perm.compose(perm.transposition(p, i), s))

    acts = _from_permutation_rep(field, p, C, act)
    return SymmetricSequence(field, {p: C}, {p: acts}, p, complete=True)


def sphere_sequence(field: Field, k: int, p: int, name="x") -> SymmetricSequence:
    """``S^k(p)``: ``k[S_p]`` in arity ``p`` and degree ``k``."""
    return regular_sequence(field, p, {k: name})


def disk_sequence(field: Field, k: int, p: int, top="y", bottom="x") -> SymmetricSequence:
    """``D^k(p)``: ``k[S_p]`` in degrees ``k`` and ``k-1``, d = identity."""
    return regular_sequence(field, p, {k: top, k - 1: bottom}, {top: bottom})


def character_sequence(field: Field, p: int, k: int, sign: bool = False, name="c") -> SymmetricSequence:
    """One-dimensional trivial (or sign) representation in arity ``p``, degree ``k``."""
    C = ChainComplex(field, GradedVectorSpace({k: [name]}), {}, check=False)
    c = field.neg(field.one) if sign else field.one
    acts = _from_permutation_rep(field, p, C, lambda i, x: (c, x))
    return SymmetricSequence(field, {p: C}, {p: acts}, p, complete=True)


def direct_sum(*seqs: SymmetricSequence, tags: Iterable | None = None) -> SymmetricSequence:
    """Arity-wise direct sum; labels become ``(tag, x)``."""
    F = seqs[0].field
    tags = list(tags) if tags is not None else list(range(len(seqs)))
    A = max(s.max_arity for s in seqs)
    complete = all(s.complete for s in seqs)
    comps, acts = {}, {}
    for n in range(A + 1):
        basis: dict = {}
        dmap = {}
        parts = []
        for t, s in zip(tags, seqs):
            if n > s.max_arity:
                if not s.complete:
                    raise TruncationError("direct sum of unequal truncations")
                continue
            C = s.components[n]
            parts.append((t, s, C))
            for d, labs in C.space.basis.items():
                basis.setdefault(d, []).extend((t, x) for x in labs)
            for x, v in C.d.images.items():
                dmap[(t, x)] = {(t, y): c for y, c in v.items()}
        C = ChainComplex(F, GradedVectorSpace(basis), dmap, check=False)
        comps[n] = C
        lst = []
        for i in range(1, n):
            ims = {}
            for t, s, Cs in parts:
                for x, v in s.actions[n][i - 1].images.items():
                    ims[(t, x)] = {(t, y): c for y, c in v.items()}
            lst.append(LinearMap(F, C.space, C.space, 0, ims, check=False))
        acts[n] = lst
    return SymmetricSequence(F, comps, acts, A, complete)


def zero_sequence(field: Field, max_arity: int = 0) -> SymmetricSequence:
    return SymmetricSequence(field, {}, {}, max_arity, complete=True)


# ---------------------------------------------------------------------------
# composition product


def _set_partitions_sorted(elements: tuple, k: int):
    """Partitions of ``elements`` into ``k`` nonempty blocks sorted by minimum."""
    if k == 0:
        if not elements:
            yield ()
        return
    if len(elements) < k:
        return
    first, rest = elements[0], elements[1:]
    # block containing `first`
    for r in range(0, len(rest) + 1):
        for others in combinations(rest, r):
            block = (first,) + others
            remaining = tuple(x for x in rest if x not in others)
            for tail in _set_partitions_sorted(remaining, k - 1):
                yield (block,) + tail


def _tensor_labels(factors: list) -> list:
    """All (degree, tuple-of-labels) combinations for a list of complexes."""
    out = [(0, ())]
    for C in factors:
        new = []
        for d0, t in out:
            for d1, labs in C.space.basis.items():
                for x in labs:
                    new.append((d0 + d1, t + (x,)))
        out = new
    return out


class CompositeLabel(tuple):
    """Basis label ``(mu, nus, blocks)`` of a composition product."""

    __slots__ = ()

    def __new__(cls, mu, nus, blocks):
        return tuple.__new__(cls, (mu, tuple(nus), tuple(tuple(b) for b in blocks)))

    @property
    def mu(self):
        return self[0]

    @property
    def nus(self):
        return self[1]

    @property
    def blocks(self):
        return self[2]


class CompositionProduct(SymmetricSequence):
    """``M o N`` truncated at arity ``A`` with orbit-representative bases.

    Representatives: nonempty blocks sorted by minimum, followed by the
    empty blocks (only when ``N(0) != 0``).  With empty blocks the
    stabilizer permuting them is quotiented out by normal forms.
    """

    def __init__(self, M: SymmetricSequence, N: SymmetricSequence, A: int, window=None):
        self.M, self.N = M, N
        self.field = M.field
        self.window = window
        self.max_arity = A
        self.complete = False
        n0 = not N.is_zero_at(0)
        if n0 and not M.complete:
            raise TruncationError("N(0) != 0 requires M of finite support")
        self.components = {}
        self._quotients = {}
        for n in range(A + 1):
            self.components[n], self._quotients[n] = self._build_arity(n, n0)
        self.actions = {n: self._residual_actions(n) for n in self.components}

    # construction -------------------------------------------------------------
    def _max_k(self, n: int, n0: bool) -> int:
        M = self.M
        if n0:
            return M.max_arity
        if n > M.max_arity:
            if not M.complete:
                raise TruncationError(f"M({M.max_arity + 1}..{n}) unknown")
            return M.max_arity
        return n

    def _factor(self, size: int) -> ChainComplex:
        return self.N.component(size)

    def _raw_terms(self, n: int, n0: bool):
        """Yield (k, blocks, factor complexes) for the orbit representatives."""
        elements = tuple(range(1, n + 1))
        for k in range(0, self._max_k(n, n0) + 1):
            Mk = self.M.component(k)
            if not Mk.dim():
                continue
            for e in (range(0, k + 1) if n0 else (0,)):
                for nonempty in _set_partitions_sorted(elements, k - e):
                    blocks = nonempty + ((),) * e
                    factors = [self._factor(len(b)) for b in blocks]
                    if any(not f.dim() for f in factors):
                        continue
                    yield k, e, blocks, [Mk] + factors

    def _build_arity(self, n: int, n0: bool):
        F = self.field
        labels_by_deg: dict = {}
        raw_deg = {}
        groups = []
        for k, e, blocks, factors in self._raw_terms(n, n0):
            group = []
            for deg, t in _tensor_labels(factors):
                lab = CompositeLabel(t[0], t[1:], blocks)
                raw_deg[lab] = deg
                group.append(lab)
            groups.append((k, e, blocks, factors, group))
        # stabilizer relations (empty blocks)
        relations = []
        for k, e, blocks, factors, group in groups:
            if e < 2:
                continue
            for lab in group:
                for pos in range(k - e + 1, k):   # swap empty blocks pos, pos+1
                    img = self._swap_blocks(lab, pos)
                    rel = linalg.axpy(F, {lab: F.one}, F.neg(F.one), img)
                    if rel:
                        relations.append(rel)
        key = _composite_key
        quot = linalg.Quotient(F, relations, key) if relations else None
        for lab, deg in raw_deg.items():
            if quot is not None and quot.is_pivot(lab):
                continue
            if self.window is not None and not (self.window[0] <= deg <= self.window[1]):
                continue
            labels_by_deg.setdefault(deg, []).append(lab)
        for d in labels_by_deg:
            labels_by_deg[d].sort(key=key)
        space = GradedVectorSpace(labels_by_deg)
        dmap = {}
        for lab in space.labels():
            v = self._raw_differential(lab, raw_deg)
            if quot is not None:
                v = quot.normal_form(v)
            v = {x: c for x, c in v.items() if x in space.degree_of}
            if v:
                dmap[lab] = v
        return ChainComplex(F, space, dmap, check=False), quot

    def _raw_differential(self, lab: CompositeLabel, raw_deg) -> dict:
        F = self.M.field
        mu, nus, blocks = lab
        out: dict = {}
        k = len(nus)
        Mk = self.M.component(k)
        for y, c in Mk.d.image_of(mu).items():
            linalg.axpy(F, out, c, {CompositeLabel(y, nus, blocks): F.one})
        acc = Mk.degree_of(mu)
        for i, nu in enumerate(nus):
            Ni = self.N.component(len(blocks[i]))
            dv = Ni.d.image_of(nu)
            if dv:
                s = F.sign(acc)
                for y, c in dv.items():
                    nn = nus[:i] + (y,) + nus[i + 1:]
                    linalg.axpy(F, out, F.mul(s, c), {CompositeLabel(mu, nn, blocks): F.one})
            acc += Ni.degree_of(nu)
        return out

    def _swap_blocks(self, lab: CompositeLabel, pos: int) -> dict:
        """Identify via the block transposition at positions ``pos, pos+1`` (1-based)."""
        F = self.M.field
        mu, nus, blocks = lab
        k = len(nus)
        a, b = pos - 1, pos
        da = self.N.component(len(blocks[a])).degree_of(nus[a])
        db = self.N.component(len(blocks[b])).degree_of(nus[b])
        s = F.sign(da * db)
        new_nus = list(nus)
        new_nus[a], new_nus[b] = nus[b], nus[a]
        new_blocks = list(blocks)
        new_blocks[a], new_blocks[b] = blocks[b], blocks[a]
        mus = self.M.transpose(k, pos, {mu: F.one})
        return {CompositeLabel(m, new_nus, new_blocks): F.mul(s, c) for m, c in mus.items()}

    def normal_form(self, n: int, v: Mapping) -> dict:
        quot = self._quotients.get(n)
        if quot is not None:
            v = quot.normal_form(v)
        space = self.components[n].space
        return {x: c for x, c in v.items() if x in space.degree_of}

    def canonicalize(self, n: int, lab_mu, nus, blocks, coeff=None) -> dict:
        """Vector of an arbitrary (possibly unsorted) block tuple in the basis."""
        F = self.M.field
        coeff = F.one if coeff is None else coeff
        k = len(nus)
        nus = list(nus)
        blocks = [tuple(b) for b in blocks]
        # the permutation sending current position i to its sorted position
        def sort_key(i):
            b = blocks[i]
            return (0, b[0]) if b else (1, i)
        order = sorted(range(k), key=sort_key)
        new_pos = [0] * k
        for newp, i in enumerate(order):
            new_pos[i] = newp + 1
        sigma = tuple(new_pos)
        degs = [self.N.component(len(blocks[i])).degree_of(nus[i]) for i in range(k)]
        e = perm.koszul_sign(degs, order)
        mus = self.M.act(k, sigma, {lab_mu: F.one}) if k > 1 else {lab_mu: F.one}
        nn = tuple(nus[i] for i in order)
        bb = tuple(blocks[i] for i in order)
        c0 = F.mul(coeff, F.sign(e))
        v = {CompositeLabel(m, nn, bb): F.mul(c0, c) for m, c in mus.items()}
        return self.normal_form(n, v)

    def _residual_actions(self, n: int) -> list:
        F = self.M.field
        C = self.components[n]
        out = []
        for j in range(1, n):
            ims = {}
            for lab in C.labels():
                v = self._act_transposition(n, j, lab)
                if v:
                    ims[lab] = v
            out.append(LinearMap(F, C.space, C.space, 0, ims, check=False))
        return out

    def _act_transposition(self, n: int, j: int, lab: CompositeLabel) -> dict:
        F = self.M.field
        mu, nus, blocks = lab
        swap = {j: j + 1, j + 1: j}
        new_nus = list(nus)
        new_blocks = []
        coeff = F.one
        vecs = []
        for i, b in enumerate(blocks):
            nb = tuple(sorted(swap.get(x, x) for x in b))
            if j in b and j + 1 in b:
                pos = b.index(j) + 1
                vecs.append((i, self.N.transpose(len(b), pos, {nus[i]: F.one})))
            new_blocks.append(nb)
        # expand any within-block actions
        base = [(coeff, tuple(new_nus))]
        for i, vec in vecs:
            nxt = []
            for c, nn in base:
                for y, e in vec.items():
                    t = list(nn)
                    t[i] = y
                    nxt.append((F.mul(c, e), tuple(t)))
            base = nxt
        out: dict = {}
        for c, nn in base:
            linalg.axpy(F, out, F.one, self.canonicalize(n, mu, nn, new_blocks, c))
        return out


def _composite_key(lab):
    return label_key(lab)


def compose_product(M: SymmetricSequence, N: SymmetricSequence, A: int, window=None) -> CompositionProduct:
    """The composition product ``(M o N)(n)`` for ``n <= A``."""
    if M.field != N.field:
        raise ValueError("field mismatch")
    return CompositionProduct(M, N, A, window)


def unit_iso_left(MN: CompositionProduct, n: int) -> dict:
    """Relabeling ``(I o M)(n) -> M(n)`` on basis labels."""
    return {lab: lab.nus[0] for lab in MN.components[n].labels()}


def unit_iso_right(MN: CompositionProduct, n: int) -> dict:
    """Relabeling ``(M o I)(n) -> M(n)`` on basis labels."""
    return {lab: lab.mu for lab in MN.components[n].labels()}
