"""Sparse exact linear algebra over a :class:`~dgcoalg.field.Field`.

Vectors are dicts ``{key: nonzero coefficient}``.  Pivots are chosen as the
least key under an explicit ordering, so every reduction is deterministic.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping

from .field import Field

Vector = dict


def axpy(F: Field, y: dict, c, x: Mapping) -> dict:
    """In place ``y += c * x``; returns ``y``."""
    if not c:
        return y
    one = c == F.one
    for k, v in x.items():
        t = v if one else F.mul(c, v)
        if k in y:
            s = F.add(y[k], t)
            if s:
                y[k] = s
            else:
                del y[k]
        elif t:
            y[k] = t
    return y


def add(F: Field, x: Mapping, y: Mapping) -> dict:
    return axpy(F, dict(x), F.one, y)


def sub(F: Field, x: Mapping, y: Mapping) -> dict:
    return axpy(F, dict(x), F.neg(F.one), y)


def scale(F: Field, c, x: Mapping) -> dict:
    if not c:
        return {}
    return {k: F.mul(c, v) for k, v in x.items()}


def linear_combination(F: Field, terms: Iterable[tuple]) -> dict:
    """Sum of ``c * x`` over ``(c, x)`` pairs."""
    out: dict = {}
    for c, x in terms:
        axpy(F, out, c, x)
    return out


class Echelon:
    """Incrementally built reduced row-echelon basis of a subspace.

    ``key`` orders coordinates; the pivot of a row is its least coordinate.
    Optionally tracks, for each row, a combination vector (``tag``) so that
    kernels and preimages can be read off.
    """

    def __init__(self, F: Field, key: Callable[[Hashable], object] | None = None,
                 track: bool = False):
        self.F = F
        self.key = key if key is not None else (lambda k: k)
        self.rows: dict = {}       # pivot -> row (pivot coefficient 1)
        self.tags: dict = {}       # pivot -> combination
        self.track = track

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivot(self, v: Mapping):
        return min(v, key=self.key)

    def reduce(self, v: Mapping, tag: Mapping | None = None):
        """Reduce ``v`` against the rows; returns ``(residual, tag')``.

        ``tag'`` is ``tag`` minus the tracked combinations used, so that
        ``residual = v - sum(...)`` corresponds to the combination ``tag'``.
        """
        F = self.F
        r = dict(v)
        t = dict(tag) if tag is not None else None
        for p in [p for p in r if p in self.rows]:
            c = r.get(p)
            if c:
                axpy(F, r, F.neg(c), self.rows[p])
                if t is not None:
                    axpy(F, t, F.neg(c), self.tags[p])
        return r, t

    def coordinates(self, v: Mapping):
        """Coefficients of ``v`` on the rows (by pivot), or None if outside."""
        r = dict(v)
        coords = {}
        F = self.F
        for p in sorted(self.rows, key=self.key):
            c = r.get(p)
            if c:
                coords[p] = c
                axpy(F, r, F.neg(c), self.rows[p])
        if r:
            return None
        return coords

    def contains(self, v: Mapping) -> bool:
        r, _ = self.reduce(v)
        return not r

    def add(self, v: Mapping, tag: Mapping | None = None):
        """Insert ``v``; returns ``(new_pivot or None, residual_tag)``.

        When ``v`` is dependent the returned tag is a relation (used for
        kernels).
        """
        F = self.F
        r, t = self.reduce(v, tag if self.track else None)
        if not r:
            return None, t
        p = self.pivot(r)
        inv = F.inv(r[p])
        if inv != F.one:
            r = scale(F, inv, r)
            if t is not None:
                t = scale(F, inv, t)
        # keep fully reduced
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(F, row, F.neg(c), r)
                if self.track:
                    axpy(F, self.tags[q], F.neg(c), t)
        self.rows[p] = r
        if self.track:
            self.tags[p] = t if t is not None else {}
        return p, None

    def basis(self) -> list:
        return [self.rows[p] for p in sorted(self.rows, key=self.key)]

    def pivots(self) -> list:
        return sorted(self.rows, key=self.key)


def rank(F: Field, vectors: Iterable[Mapping], key=None) -> int:
    E = Echelon(F, key)
    for v in vectors:
        E.add(v)
    return E.rank


def row_space(F: Field, vectors: Iterable[Mapping], key=None) -> Echelon:
    E = Echelon(F, key)
    for v in vectors:
        E.add(v)
    return E


def kernel(F: Field, columns: Mapping, source_order: Iterable, key=None,
           canonical: bool = True) -> list:
    """Basis of the kernel of the map ``j -> columns[j]``.

    ``source_order`` lists source basis keys; missing columns are zero.
    Returned vectors are keyed by source keys and, when ``canonical``, in
    reduced echelon form with respect to the source order.
    """
    src = list(source_order)
    E = Echelon(F, key, track=True)
    rel = []
    for j in src:
        col = columns.get(j, {})
        p, t = E.add(col, {j: F.one})
        if p is None:
            rel.append(t)
    if not canonical or not rel:
        return rel
    pos = {j: i for i, j in enumerate(src)}
    K = Echelon(F, pos.__getitem__)
    for v in rel:
        K.add(v)
    return K.basis()


def solve(F: Field, columns: Mapping, source_order: Iterable, b: Mapping, key=None):
    """A solution ``x`` (keyed by source) of ``sum x_j columns[j] = b``.

    Free variables are set to zero, with pivots taken in ``source_order``
    (lexicographically-first choice).  Returns None if ``b`` is not in the
    column span.
    """
    E = Echelon(F, key, track=True)
    for j in source_order:
        E.add(columns.get(j, {}), {j: F.one})
    r, t = E.reduce(b, {})
    if r:
        return None
    return scale(F, F.neg(F.one), t) if t else {}


class Quotient:
    """Quotient of a coordinate space by a subspace, with normal forms.

    Standard coordinates not occurring as pivots of the relation subspace
    form the quotient basis; ``normal_form`` rewrites any vector on them.
    """

    def __init__(self, F: Field, relations: Iterable[Mapping], key=None):
        self.F = F
        self.E = row_space(F, relations, key)

    def is_pivot(self, k) -> bool:
        return k in self.E.rows

    def normal_form(self, v: Mapping) -> dict:
        r, _ = self.E.reduce(v)
        return r
