"""Truncated dg operads stored by partial composites, the (co)endomorphism
operads, the associative operad, operad morphisms and the axiom pack.

Conventions
-----------
* ``s . a`` relabels inputs: input ``s(i)`` of ``s . a`` is input ``i`` of ``a``.
* ``a o_i b`` plugs ``b`` into input ``i`` of ``a``.
* parallel associativity carries the Koszul sign:
  ``(a o_i b) o_{j+m-1} c = (-1)^{|b||c|} (a o_j c) o_i b`` for ``i < j``.
* ``d(a o_i b) = da o_i b + (-1)^{|a|} a o_i db``.

A truncated operad knows its components for arities ``<= max_arity`` and
degrees inside ``window``; composites landing outside return ``None``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Callable, Mapping

from . import linalg
from . import permutations as perm
from .chain_complex import (ChainComplex, GradedVectorSpace, LinearMap, label_key,
                            tensor_differential, tensor_power)
from .field import Field
from .symmetric_sequence import SymmetricSequence, TruncationError


class Operad:
    """Abstract truncated dg operad.

    Subclasses implement ``basis``, ``degree_of``, ``d``, ``act``,
    ``compose`` and ``unit``; everything else is derived.
    """

    field: Field
    max_arity: int
    window: tuple | None = None

    # --- to implement -----------------------------------------------------------
    def basis(self, n: int, d: int) -> list:
        raise NotImplementedError

    def degrees(self, n: int) -> list:
        raise NotImplementedError

    def degree_of(self, n: int, x) -> int:
        raise NotImplementedError

    def d(self, n: int, x) -> dict:
        raise NotImplementedError

    def act(self, n: int, i: int, x) -> dict:
        """``s_i . x`` for the adjacent transposition ``s_i``."""
        raise NotImplementedError

    def compose(self, n: int, i: int, m: int, a, b):
        """``a o_i b`` for ``a`` in arity n, ``b`` in arity m; None if truncated."""
        raise NotImplementedError

    @property
    def unit(self) -> dict:
        raise NotImplementedError

    # --- derived --------------------------------------------------------------
    def in_window(self, deg: int) -> bool:
        w = self.window
        return w is None or w[0] <= deg <= w[1]

    def all_basis(self, n: int) -> list:
        return [x for dd in self.degrees(n) for x in self.basis(n, dd)]

    def dim(self, n: int, d: int | None = None) -> int:
        if d is None:
            return sum(len(self.basis(n, dd)) for dd in self.degrees(n))
        return len(self.basis(n, d))

    def dims(self, n: int) -> dict:
        return {dd: len(self.basis(n, dd)) for dd in self.degrees(n) if self.basis(n, dd)}

    def component(self, n: int) -> ChainComplex:
        """Arity-``n`` component as a chain complex (degree-truncated)."""
        cache = self.__dict__.setdefault("_component_cache", {})
        if n in cache:
            return cache[n]
        space = GradedVectorSpace({dd: self.basis(n, dd) for dd in self.degrees(n)})
        ims = {}
        for x in space.labels():
            v = {y: c for y, c in self.d(n, x).items() if y in space.degree_of}
            if v:
                ims[x] = v
        C = ChainComplex(self.field, space, ims, check=False)
        cache[n] = C
        return C

    def underlying(self) -> SymmetricSequence:
        comps = {n: self.component(n) for n in range(self.max_arity + 1)}
        acts = {}
        for n, C in comps.items():
            acts[n] = [LinearMap(self.field, C.space, C.space, 0,
                                 {x: self.act(n, i, x) for x in C.labels()}, check=False)
                       for i in range(1, n)]
        return SymmetricSequence(self.field, comps, acts, self.max_arity, complete=False)

    def degree_vec(self, n: int, v: Mapping):
        degs = {self.degree_of(n, x) for x in v}
        if len(degs) > 1:
            raise ValueError("inhomogeneous operad element")
        return degs.pop() if degs else None

    def d_vec(self, n: int, v: Mapping) -> dict:
        F = self.field
        out: dict = {}
        for x, c in v.items():
            linalg.axpy(F, out, c, self.d(n, x))
        return out

    def act_vec(self, n: int, i: int, v: Mapping) -> dict:
        F = self.field
        out: dict = {}
        for x, c in v.items():
            linalg.axpy(F, out, c, self.act(n, i, x))
        return out

    def act_perm(self, n: int, s: tuple, v: Mapping) -> dict:
        out = dict(v)
        for i in reversed(perm.reduced_word(s)):
            out = self.act_vec(n, i, out)
        return out

    def compose_vec(self, n: int, i: int, m: int, va: Mapping, vb: Mapping):
        """Bilinear extension of ``compose``; None if any term is truncated."""
        F = self.field
        out: dict = {}
        for a, ca in va.items():
            for b, cb in vb.items():
                r = self.compose(n, i, m, a, b)
                if r is None:
                    return None
                linalg.axpy(F, out, F.mul(ca, cb), r)
        return out

    def gamma(self, v: Mapping, k: int, parts: list):
        """Total composite ``gamma(v; w_1, ..., w_k)`` with ``parts=[(m_j, w_j)]``.

        Computed left to right: ``(..(v o_1 w_1) o_{1+m_1} w_2 ..)``; inputs are in
        block order.  None if truncated.
        """
        cur = dict(v)
        ar = k
        pos = 1
        for m, w in parts:
            cur = self.compose_vec(ar, pos, m, cur, w)
            if cur is None:
                return None
            ar = ar + m - 1
            pos += m
        return cur

    def is_complete(self, n: int, d: int) -> bool:
        return n <= self.max_arity and self.in_window(d)


# ---------------------------------------------------------------------------
# (co)endomorphism operads


class _HomOperad(Operad):
    """Shared lazy bookkeeping for End and coEnd (bases built on demand)."""

    def __init__(self, V: ChainComplex, max_arity: int):
        self.V = V
        self.field = V.field
        self.max_arity = max_arity
        self.window = None
        self._deg = V.space.degree_of
        self._vt = V.d.transpose_images()
        self._basis: dict = {}
        self._powers: dict = {}

    def power(self, n: int) -> ChainComplex:
        if n not in self._powers:
            self._powers[n] = tensor_power(self.V, n)
        return self._powers[n]

    def _pairs(self, n: int) -> dict:
        raise NotImplementedError

    def basis(self, n, d):
        if n > self.max_arity:
            return []
        if n not in self._basis:
            self._basis[n] = self._pairs(n)
        return self._basis[n].get(d, [])

    def degrees(self, n):
        if n > self.max_arity:
            return []
        self.basis(n, 0)
        return sorted(self._basis[n])

    def _tdeg(self, t) -> int:
        return sum(self._deg[y] for y in t)

    def _tensor_transpose(self, t) -> dict:
        """Pure tensors ``s`` with the coefficient of ``t`` in ``d(s)``."""
        F = self.field
        out: dict = {}
        acc = 0
        for i, x in enumerate(t):
            sg = F.sign(acc)
            for src, c in self._vt.get(x, {}).items():
                key = t[:i] + (src,) + t[i + 1:]
                # d(src) contributes at position i with sign (-1)^{sum of earlier degrees}
                linalg.axpy(F, out, F.mul(sg, c), {key: F.one})
            acc += self._deg[x]
        return out


class EndomorphismOperad(_HomOperad):
    """``End_V(n) = [V^{(x)n}, V]``; basis ``(t, v)`` = elementary map t -> v."""

    def _pairs(self, n):
        b: dict = {}
        T = self.power(n)
        for t in T.labels():
            for v in self.V.labels():
                b.setdefault(self._deg[v] - T.degree_of(t), []).append((t, v))
        return b

    def degree_of(self, n, x):
        t, v = x
        return self._deg[v] - self._tdeg(t)

    def d(self, n, x):
        F = self.field
        t, v = x
        out: dict = {}
        for y, c in self.V.d.image_of(v).items():
            linalg.axpy(F, out, c, {(t, y): F.one})
        # - (-1)^{|f|} f o d: f o d sends s to the coefficient of t in d(s)
        s = F.neg(F.sign(self.degree_of(n, x)))
        for src, c in self._tensor_transpose(t).items():
            linalg.axpy(F, out, F.mul(s, c), {(src, v): F.one})
        return out

    def act(self, n, i, x):
        F = self.field
        t, v = x
        # (s.f)(x_1..x_n) = +- f(x_{s(1)}, ..): elementary t -> t' with t'_{s(j)} = t_j
        s = perm.transposition(n, i)
        tp = [None] * n
        for j in range(n):
            tp[s[j] - 1] = t[j]
        tp = tuple(tp)
        degs = [self._deg[y] for y in tp]
        order = [s[j] - 1 for j in range(n)]
        e = perm.koszul_sign(degs, order)
        return {(tp, v): F.sign(e)}

    def compose(self, n, i, m, a, b):
        F = self.field
        if n + m - 1 > self.max_arity:
            return None
        t, v = a
        u, w = b
        if t[i - 1] != w:
            return {}
        gdeg = self.degree_of(m, b)
        e = gdeg * self._tdeg(t[:i - 1])
        return {(t[:i - 1] + u + t[i:], v): F.sign(e)}

    @property
    def unit(self):
        F = self.field
        return {((x,), x): F.one for x in self.V.labels()}


class CoendomorphismOperad(_HomOperad):
    """``coEnd_V(n) = [V, V^{(x)n}]``; basis ``(v, t)`` = elementary map v -> t.

    ``D o_i D' = (-1)^{|D||D'|} (id^{i-1} (x) D' (x) id^{n-i}) D``.
    """

    def _pairs(self, n):
        b: dict = {}
        T = self.power(n)
        for v in self.V.labels():
            for t in T.labels():
                b.setdefault(T.degree_of(t) - self._deg[v], []).append((v, t))
        return b

    def degree_of(self, n, x):
        v, t = x
        return self._tdeg(t) - self._deg[v]

    def d(self, n, x):
        F = self.field
        v, t = x
        out: dict = {}
        for y, c in tensor_differential(self.V, t).items():
            linalg.axpy(F, out, c, {(v, y): F.one})
        s = F.neg(F.sign(self.degree_of(n, x)))
        for src, c in self._vt.get(v, {}).items():
            linalg.axpy(F, out, F.mul(s, c), {(src, t): F.one})
        return out

    def act(self, n, i, x):
        F = self.field
        v, t = x
        s = perm.transposition(n, i)
        tp = [None] * n
        for j in range(n):
            tp[s[j] - 1] = t[j]
        sinv = perm.inverse(s)
        order = [sinv[p] - 1 for p in range(n)]
        degs = [self._deg[y] for y in t]
        e = perm.koszul_sign(degs, order)
        return {(v, tuple(tp)): F.sign(e)}

    def compose(self, n, i, m, a, b):
        F = self.field
        if n + m - 1 > self.max_arity:
            return None
        v, t = a
        w, u = b
        if t[i - 1] != w:
            return {}
        gdeg = self.degree_of(m, b)
        e = gdeg * self._tdeg(t[:i - 1])
        # the twist (-1)^{|a||b|} makes d a derivation in the operadic order
        e += gdeg * self.degree_of(n, a)
        return {(v, t[:i - 1] + u + t[i:]): F.sign(e)}

    @property
    def unit(self):
        F = self.field
        return {(x, (x,)): F.one for x in self.V.labels()}


def endomorphism_operad(V: ChainComplex, A: int) -> EndomorphismOperad:
    return EndomorphismOperad(V, A)


def coendomorphism_operad(V: ChainComplex, A: int) -> CoendomorphismOperad:
    return CoendomorphismOperad(V, A)


# ---------------------------------------------------------------------------
# associative operad k[S_n] in degree 0


class AssociativeOperad(Operad):
    """``Ass(n) = k[S_n]`` in degree 0; basis permutations ``w``.

    ``w`` is the operation listing its inputs in the order ``w(1), ..., w(n)``;
    the composite is ``w o_j u = rho(w, w^{-1}(j), u)`` so that
    ``id o_i id = id``.
    """

    def __init__(self, field: Field, max_arity: int, include_zero: bool = False):
        self.field = field
        self.max_arity = max_arity
        self.window = (0, 0)
        self.include_zero = include_zero

    def basis(self, n, d):
        if d != 0 or n > self.max_arity or (n == 0 and not self.include_zero):
            return []
        return perm.all_permutations(n)

    def degrees(self, n):
        return [0] if self.basis(n, 0) else []

    def degree_of(self, n, x):
        return 0

    def d(self, n, x):
        return {}

    def act(self, n, i, x):
        return {perm.compose(perm.transposition(n, i), x): self.field.one}

    def compose(self, n, i, m, a, b):
        if n + m - 1 > self.max_arity:
            return None
        j = perm.inverse(a)[i - 1]
        return {perm.partial_composite(a, j, b): self.field.one}

    @property
    def unit(self):
        return {(1,): self.field.one}


# ---------------------------------------------------------------------------
# axiom pack


@dataclass
class Report:
    """Named pass/fail record with witnesses (machine-readable)."""

    name: str
    checks: dict = dc_field(default_factory=dict)     # check -> [n_pass, n_fail, n_skipped]
    witnesses: list = dc_field(default_factory=list)

    def record(self, check: str, ok: bool | None, witness=None, max_witnesses: int = 20):
        c = self.checks.setdefault(check, [0, 0, 0])
        if ok is None:
            c[2] += 1
        elif ok:
            c[0] += 1
        else:
            c[1] += 1
            if len([w for w in self.witnesses if w["check"] == check]) < max_witnesses:
                self.witnesses.append({"check": check, "witness": witness})

    @property
    def passed(self) -> bool:
        return all(c[1] == 0 for c in self.checks.values())

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def merge(self, other: "Report"):
        for k, (a, b, c) in other.checks.items():
            cur = self.checks.setdefault(k, [0, 0, 0])
            cur[0] += a
            cur[1] += b
            cur[2] += c
        self.witnesses.extend(other.witnesses)
        return self

    def to_json(self):
        return {
            "name": self.name,
            "status": self.status,
            "checks": {k: {"pass": a, "fail": b, "skipped": c} for k, (a, b, c) in sorted(self.checks.items())},
            "witnesses": [_jsonable(w) for w in self.witnesses],
        }

    def __str__(self):
        lines = [f"{self.name}: {self.status}"]
        for k, (a, b, c) in sorted(self.checks.items()):
            lines.append(f"  {k}: {a} pass, {b} fail, {c} truncated")
        return "\n".join(lines)


def _jsonable(x):
    from .chain_complex import label_str
    if isinstance(x, dict):
        return {(k if isinstance(k, str) else label_str(k)): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, float, bool)) or x is None:
        return x
    return str(x)


def _pick(rng, seq, k):
    seq = list(seq)
    if k is None or len(seq) <= k:
        return seq
    return rng.sample(seq, k)


def _vec_eq(a, b):
    return a is not None and b is not None and a == b


def check_operad(P: Operad, max_arity: int | None = None, samples: int | None = 60,
                 seed: int = 0, name: str = "operad axioms") -> Report:
    """Unit, equivariance, both associativities and the chain-map property.

    Every check is exact.  With ``samples=None`` all basis elements are
    used; otherwise that many random basis triples per check.
    """
    rng = random.Random(seed)
    F = P.field
    R = Report(name)
    A = P.max_arity if max_arity is None else min(max_arity, P.max_arity)
    elems = {n: P.all_basis(n) for n in range(A + 1)}
    pool = [(n, x) for n in elems for x in elems[n]]
    if not pool:
        return R
    unit = P.unit

    # d^2 = 0, action is a chain map of order 2, Coxeter relations
    for n, x in _pick(rng, pool, samples):
        R.record("d^2=0", not P.d_vec(n, P.d(n, x)), (n, x))
        for i in range(1, n):
            sx = P.act(n, i, x)
            R.record("action chain map", P.d_vec(n, sx) == P.act_vec(n, i, P.d(n, x)), (n, i, x))
            R.record("s_i^2=id", P.act_vec(n, i, sx) == {x: F.one}, (n, i, x))
            if i + 1 < n:
                lhs = P.act_vec(n, i, P.act_vec(n, i + 1, sx))
                rhs = P.act_vec(n, i + 1, P.act_vec(n, i, P.act(n, i + 1, x)))
                R.record("braid relation", lhs == rhs, (n, i, x))
            for j in range(i + 2, n):
                lhs = P.act_vec(n, i, P.act(n, j, x))
                rhs = P.act_vec(n, j, sx)
                R.record("far commutation", lhs == rhs, (n, i, j, x))

    # unit laws
    for n, x in _pick(rng, pool, samples):
        left = P.compose_vec(1, 1, n, unit, {x: F.one})
        R.record("unit left", _vec_eq(left, {x: F.one}) if left is not None else None, (n, x))
        for i in range(1, n + 1):
            right = P.compose_vec(n, i, 1, {x: F.one}, unit)
            R.record("unit right", _vec_eq(right, {x: F.one}) if right is not None else None, (n, i, x))

    by_arity = {n: [(n, x) for x in elems[n]] for n in elems}

    def fitting(room):
        # a random basis element of arity 1..room, or None
        cand = [m for m in range(1, room + 1) if by_arity.get(m)]
        if not cand:
            return None
        return rng.choice(by_arity[rng.choice(cand)])

    # samples are drawn among composable elements only, so truncation does
    # not silently eat the budget
    outer = [e for e in pool if e[0] >= 1]
    if samples:
        pairs = []
        for _ in range(samples):
            a = rng.choice(outer)
            b = fitting(A - a[0] + 1)
            if b is not None:
                pairs.append((a, b))
    else:
        pairs = [(a, b) for a in pool for b in pool]
    for (n, a), (m, b) in pairs:
        if n == 0 or n + m - 1 > A:
            continue
        da = P.degree_of(n, a)
        for i in range(1, n + 1):
            ab = P.compose(n, i, m, a, b)
            if ab is None:
                R.record("chain map of o_i", None)
                continue
            lhs = P.d_vec(n + m - 1, ab)
            t1 = P.compose_vec(n, i, m, P.d(n, a), {b: F.one})
            t2 = P.compose_vec(n, i, m, {a: F.one}, P.d(m, b))
            if t1 is None or t2 is None:
                R.record("chain map of o_i", None)
            else:
                rhs = linalg.axpy(F, dict(t1), F.sign(da), t2)
                R.record("chain map of o_i", lhs == rhs, (n, i, m, a, b))
            # equivariance in a
            for k in range(1, n):
                s = perm.transposition(n, k)
                lhs = P.compose_vec(n, s[i - 1], m, P.act(n, k, a), {b: F.one})
                rho = perm.partial_composite(s, i, perm.identity(m))
                rhs = P.act_perm(n + m - 1, rho, ab)
                R.record("equivariance (outer)", _vec_eq(lhs, rhs) if lhs is not None else None,
                         (n, i, m, a, b, k))
            for k in range(1, m):
                t = perm.transposition(m, k)
                lhs = P.compose_vec(n, i, m, {a: F.one}, P.act(m, k, b))
                rho = perm.partial_composite(perm.identity(n), i, t)
                rhs = P.act_perm(n + m - 1, rho, ab)
                R.record("equivariance (inner)", _vec_eq(lhs, rhs) if lhs is not None else None,
                         (n, i, m, a, b, k))

    if samples:
        triples = []
        for _ in range(samples):
            a = rng.choice(outer)
            b = fitting(A - a[0] + 1)
            c = None if b is None else fitting(A - a[0] - b[0] + 2)
            if c is not None:
                triples.append((a, b, c))
    else:
        triples = [(a, b, c) for a in pool for b in pool for c in pool]
    for (n, a), (m, b), (l, c) in triples:
        if n == 0:
            continue
        db, dc = P.degree_of(m, b), P.degree_of(l, c)
        # sequential
        if m >= 1 and n + m + l - 2 <= A:
            for i in range(1, n + 1):
                ab = P.compose(n, i, m, a, b)
                for j in range(1, m + 1):
                    bc = P.compose(m, j, l, b, c)
                    if ab is None or bc is None:
                        R.record("sequential associativity", None)
                        continue
                    lhs = P.compose_vec(n + m - 1, i + j - 1, l, ab, {c: F.one})
                    rhs = P.compose_vec(n, i, m + l - 1, {a: F.one}, bc)
                    ok = None if lhs is None or rhs is None else lhs == rhs
                    R.record("sequential associativity", ok, (a, i, b, j, c))
        # parallel
        if n >= 2 and n + m + l - 2 <= A:
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    ab = P.compose(n, i, m, a, b)
                    ac = P.compose(n, j, l, a, c)
                    if ab is None or ac is None:
                        R.record("parallel associativity", None)
                        continue
                    lhs = P.compose_vec(n + m - 1, j + m - 1, l, ab, {c: F.one})
                    rhs = P.compose_vec(n + l - 1, i, m, ac, {b: F.one})
                    if lhs is None or rhs is None:
                        R.record("parallel associativity", None)
                        continue
                    rhs = linalg.scale(F, F.sign(db * dc), rhs)
                    R.record("parallel associativity", lhs == rhs, (a, i, b, j, c))
    return R


# ---------------------------------------------------------------------------
# morphisms


class OperadMorphism:
    """A morphism ``P -> Q`` given by images of basis elements.

    ``image(n, x)`` returns a vector of ``Q(n)``.  Free/quasi-free sources
    build it from generator images (see ``trees.QuasiFreeOperad.morphism``).
    """

    def __init__(self, source: Operad, target: Operad, image: Callable, name: str = "phi"):
        self.source = source
        self.target = target
        self._image = image
        self.name = name
        self._cache: dict = {}

    def __call__(self, n: int, x) -> dict:
        key = (n, x)
        if key not in self._cache:
            self._cache[key] = self._image(n, x)
        return self._cache[key]

    def image_vec(self, n: int, v: Mapping) -> dict:
        F = self.target.field
        out: dict = {}
        for x, c in v.items():
            linalg.axpy(F, out, c, self(n, x))
        return out

    def then(self, other: "OperadMorphism") -> "OperadMorphism":
        """``other o self``."""
        return OperadMorphism(self.source, other.target,
                              lambda n, x: other.image_vec(n, self(n, x)),
                              name=f"{other.name}.{self.name}")


def identity_morphism(P: Operad) -> OperadMorphism:
    return OperadMorphism(P, P, lambda n, x: {x: P.field.one}, name="id")


def verify_morphism(phi: OperadMorphism, max_arity: int | None = None, samples: int | None = None,
                    seed: int = 0) -> Report:
    """Check that ``phi`` commutes with differentials, actions, units, composites."""
    P, Q = phi.source, phi.target
    F = P.field
    R = Report(f"morphism {phi.name}")
    rng = random.Random(seed)
    A = P.max_arity if max_arity is None else min(max_arity, P.max_arity)
    pool = [(n, x) for n in range(A + 1) for x in P.all_basis(n)]
    R.record("unit", phi.image_vec(1, P.unit) == Q.unit, "unit")
    for n, x in _pick(rng, pool, samples):
        fx = phi(n, x)
        if Q.degree_vec(n, fx) not in (None, P.degree_of(n, x)):
            R.record("degree", False, (n, x))
        R.record("differential", phi.image_vec(n, P.d(n, x)) == Q.d_vec(n, fx), (n, x))
        for i in range(1, n):
            R.record("equivariance", phi.image_vec(n, P.act(n, i, x)) == Q.act_vec(n, i, fx), (n, i, x))
    by_arity: dict = {}
    for n, x in pool:
        by_arity.setdefault(n, []).append(x)
    shapes = [(n, m) for n in by_arity for m in by_arity if n >= 1 and n + m - 1 <= A]
    if samples is None:
        pairs = [((n, a), (m, b)) for n, m in shapes for a in by_arity[n] for b in by_arity[m]]
    else:
        pairs = []
        for _ in range(samples if shapes else 0):
            n, m = rng.choice(shapes)
            pairs.append(((n, rng.choice(by_arity[n])), (m, rng.choice(by_arity[m]))))
    for (n, a), (m, b) in pairs:
        for i in range(1, n + 1):
            ab = P.compose(n, i, m, a, b)
            if ab is None:
                R.record("composition", None)
                continue
            lhs = phi.image_vec(n + m - 1, ab)
            rhs = Q.compose_vec(n, i, m, phi(n, a), phi(m, b))
            if rhs is None:
                R.record("composition", None)
                continue
            R.record("composition", lhs == rhs, {"a": a, "i": i, "b": b})
    return R


def operad_morphism(P: Operad, Q: Operad, images, name: str = "phi") -> OperadMorphism:
    """Morphism from a callable ``(n, x) -> vector`` or a dict keyed ``(n, x)``."""
    if callable(images):
        return OperadMorphism(P, Q, images, name)
    table = dict(images)
    return OperadMorphism(P, Q, lambda n, x: dict(table.get((n, x), {})), name)
