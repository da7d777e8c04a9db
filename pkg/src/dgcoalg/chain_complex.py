"""Graded vector spaces, linear maps and chain complexes over an exact field.

Conventions: homological grading, differentials of degree -1, Koszul signs.
Basis labels are hashable values (strings, ints, nested tuples); they are
unique across the whole space so a label determines its degree.  Vectors
are sparse dicts ``{label: coefficient}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from . import linalg
from .field import Field


@lru_cache(maxsize=None)
def label_key(x):
    """Deterministic total order on nested labels of mixed type."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, len(x), tuple(label_key(y) for y in x))
    if x is None:
        return (-1,)
    return (3, repr(x))


def label_str(x) -> str:
    """Canonical string form of a label (used by the JSON formats)."""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(label_str(y) for y in x) + ")"
    return str(x)


class GradedVectorSpace:
    """Finite graded vector space with ordered basis labels per degree."""

    __slots__ = ("basis", "degree_of", "_order")

    def __init__(self, basis: Mapping[int, Iterable]):
        self.basis = {}
        self.degree_of = {}
        for d in sorted(basis):
            labels = tuple(basis[d])
            if not labels:
                continue
            for x in labels:
                if x in self.degree_of:
                    raise ValueError(f"duplicate basis label {x!r}")
                self.degree_of[x] = d
            self.basis[d] = labels
        self._order = None

    @property
    def order(self) -> dict:
        if self._order is None:
            self._order = {x: i for i, x in enumerate(self.labels())}
        return self._order

    def key(self, x):
        o = self.order
        return (0, o[x]) if x in o else (1, label_key(x))

    def labels(self) -> list:
        return [x for d in sorted(self.basis) for x in self.basis[d]]

    def degrees(self) -> list:
        return sorted(self.basis)

    def dim(self, d: int | None = None) -> int:
        if d is None:
            return len(self.degree_of)
        return len(self.basis.get(d, ()))

    def dims(self) -> dict:
        return {d: len(b) for d, b in self.basis.items()}

    def __contains__(self, x):
        return x in self.degree_of

    def __eq__(self, other):
        return isinstance(other, GradedVectorSpace) and self.basis == other.basis

    def __repr__(self):
        return f"GradedVectorSpace(dims={self.dims()})"

    def is_homogeneous(self, v: Mapping):
        degs = {self.degree_of[x] for x in v}
        return len(degs) <= 1

    def vector_degree(self, v: Mapping):
        degs = {self.degree_of[x] for x in v}
        if len(degs) > 1:
            raise ValueError("inhomogeneous vector")
        return degs.pop() if degs else None

    def relabel(self, f: Callable) -> "GradedVectorSpace":
        return GradedVectorSpace({d: [f(x) for x in b] for d, b in self.basis.items()})


class LinearMap:
    """Homogeneous linear map of degree ``degree`` between graded spaces.

    Stored sparsely as ``images[source_label] = target vector``.  Blocks
    (per-degree matrices) are derived on demand.
    """

    __slots__ = ("field", "source", "target", "degree", "images")

    def __init__(self, field: Field, source: GradedVectorSpace, target: GradedVectorSpace,
                 degree: int, images: Mapping, check: bool = True):
        self.field = field
        self.source = source
        self.target = target
        self.degree = degree
        self.images = {x: dict(v) for x, v in images.items() if v}
        if check:
            for x, v in self.images.items():
                if x not in source.degree_of:
                    raise ValueError(f"{x!r} not in source basis")
                want = source.degree_of[x] + degree
                for y in v:
                    if y not in target.degree_of:
                        raise ValueError(f"{y!r} not in target basis")
                    if target.degree_of[y] != want:
                        raise ValueError(
                            f"image of {x!r} has a term {y!r} of degree "
                            f"{target.degree_of[y]}, expected {want}")

    @classmethod
    def zero(cls, field, source, target, degree=0):
        return cls(field, source, target, degree, {}, check=False)

    @classmethod
    def identity(cls, field, space):
        return cls(field, space, space, 0, {x: {x: field.one} for x in space.labels()},
                   check=False)

    def __call__(self, v: Mapping) -> dict:
        return self.apply(v)

    def apply(self, v: Mapping) -> dict:
        F = self.field
        out: dict = {}
        for x, c in v.items():
            im = self.images.get(x)
            if im:
                linalg.axpy(F, out, c, im)
        return out

    def image_of(self, x) -> dict:
        return self.images.get(x, {})

    def block(self, d: int) -> list:
        """Matrix (list of rows) from source degree ``d`` to ``d + degree``."""
        rows = self.target.basis.get(d + self.degree, ())
        cols = self.source.basis.get(d, ())
        F = self.field
        return [[self.images.get(c, {}).get(r, F.zero) for c in cols] for r in rows]

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self o other``."""
        if other.target != self.source:
            raise ValueError("shape mismatch in composition")
        ims = {x: self.apply(v) for x, v in other.images.items()}
        return LinearMap(self.field, other.source, self.target,
                         self.degree + other.degree, ims, check=False)

    def __matmul__(self, other):
        return self.compose(other)

    def _same_shape(self, other):
        if (self.source != other.source or self.target != other.target
                or self.degree != other.degree):
            raise ValueError("shape mismatch")

    def __add__(self, other):
        self._same_shape(other)
        F = self.field
        ims = {x: dict(v) for x, v in self.images.items()}
        for x, v in other.images.items():
            ims[x] = linalg.axpy(F, ims.get(x, {}), F.one, v)
        return LinearMap(F, self.source, self.target, self.degree, ims, check=False)

    def __sub__(self, other):
        return self + other.scaled(self.field.neg(self.field.one))

    def scaled(self, c):
        F = self.field
        return LinearMap(F, self.source, self.target, self.degree,
                         {x: linalg.scale(F, c, v) for x, v in self.images.items()},
                         check=False)

    def is_zero(self) -> bool:
        return not any(self.images.values())

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.degree == other.degree
                and {x: v for x, v in self.images.items() if v}
                == {x: v for x, v in other.images.items() if v})

    def __repr__(self):
        return (f"LinearMap(degree={self.degree}, {self.source.dim()}->"
                f"{self.target.dim()}, nnz={sum(len(v) for v in self.images.values())})")

    def rank(self) -> int:
        return linalg.rank(self.field, self.images.values(), self.target.key)

    def transpose_images(self) -> dict:
        """``{target_label: {source_label: coeff}}``."""
        out: dict = {}
        for x, v in self.images.items():
            for y, c in v.items():
                out.setdefault(y, {})[x] = c
        return out


class ChainComplex:
    """A graded space with a degree -1 differential squaring to zero."""

    __slots__ = ("field", "space", "d")

    def __init__(self, field: Field, space: GradedVectorSpace, differential: Mapping | LinearMap | None = None,
                 check: bool = True):
        self.field = field
        self.space = space
        if differential is None:
            differential = {}
        if isinstance(differential, LinearMap):
            d = differential
            if d.degree != -1:
                raise ValueError("differential must have degree -1")
        else:
            d = LinearMap(field, space, space, -1, differential, check=check)
        self.d = d
        if check:
            for x in space.labels():
                if d.apply(d.image_of(x)):
                    raise ValueError(f"d^2 != 0 on basis vector {x!r}")

    # conveniences ---------------------------------------------------------
    @classmethod
    def concentrated(cls, field, labels_by_degree: Mapping[int, Iterable], differential=None):
        return cls(field, GradedVectorSpace(labels_by_degree), differential)

    @classmethod
    def zero(cls, field):
        return cls(field, GradedVectorSpace({}), {}, check=False)

    def labels(self):
        return self.space.labels()

    def degree_of(self, x) -> int:
        return self.space.degree_of[x]

    def dim(self, d=None):
        return self.space.dim(d)

    def dims(self):
        return self.space.dims()

    def differential(self, v: Mapping) -> dict:
        return self.d.apply(v)

    def identity(self) -> LinearMap:
        return LinearMap.identity(self.field, self.space)

    def __eq__(self, other):
        return (isinstance(other, ChainComplex) and self.field == other.field
                and self.space == other.space and self.d == other.d)

    def __repr__(self):
        return f"ChainComplex({self.field}, dims={self.dims()})"

    def euler_characteristic(self) -> int:
        return sum((-1) ** (d % 2) * n for d, n in self.dims().items())

    def relabel(self, f: Callable) -> "ChainComplex":
        space = self.space.relabel(f)
        d = {f(x): {f(y): c for y, c in v.items()} for x, v in self.d.images.items()}
        return ChainComplex(self.field, space, d, check=False)

    def truncate(self, lo: int, hi: int) -> "ChainComplex":
        """Brutal truncation to degrees in ``[lo, hi]`` (differential cut)."""
        basis = {d: b for d, b in self.space.basis.items() if lo <= d <= hi}
        space = GradedVectorSpace(basis)
        ims = {}
        for x, v in self.d.images.items():
            if x in space.degree_of:
                w = {y: c for y, c in v.items() if y in space.degree_of}
                if w:
                    ims[x] = w
        return ChainComplex(self.field, space, ims, check=False)


def unit_complex(field: Field, label=()) -> ChainComplex:
    """The ground field in degree 0 (basis label ``()`` by default)."""
    return ChainComplex(field, GradedVectorSpace({0: [label]}), {}, check=False)


def sphere(field: Field, k: int, label="e") -> ChainComplex:
    """One basis vector in degree ``k``, zero differential."""
    return ChainComplex(field, GradedVectorSpace({k: [label]}), {}, check=False)


def disk(field: Field, k: int, top="y", bottom="x") -> ChainComplex:
    """Basis ``top`` in degree k and ``bottom`` in degree k-1 with d(top)=bottom."""
    return ChainComplex(field, GradedVectorSpace({k: [top], k - 1: [bottom]}),
                        {top: {bottom: field.one}})


def direct_sum(*parts: ChainComplex) -> ChainComplex:
    """Direct sum; labels become ``(i, x)`` for the i-th summand."""
    F = parts[0].field
    basis: dict = {}
    d = {}
    for i, C in enumerate(parts):
        for deg, labs in C.space.basis.items():
            basis.setdefault(deg, []).extend((i, x) for x in labs)
        for x, v in C.d.images.items():
            d[(i, x)] = {(i, y): c for y, c in v.items()}
    return ChainComplex(F, GradedVectorSpace(basis), d, check=False)


def summand_inclusion(total: ChainComplex, part: ChainComplex, i: int) -> LinearMap:
    F = total.field
    return LinearMap(F, part.space, total.space, 0,
                     {x: {(i, x): F.one} for x in part.labels()})


def shift(C: ChainComplex, k: int, tag="s") -> ChainComplex:
    """Suspension ``C[k]``: degrees raised by ``k``, d -> (-1)^k d."""
    F = C.field
    s = F.sign(k)
    basis = {d + k: [(tag, x) for x in b] for d, b in C.space.basis.items()}
    d = {(tag, x): {(tag, y): F.mul(s, c) for y, c in v.items()} for x, v in C.d.images.items()}
    return ChainComplex(F, GradedVectorSpace(basis), d, check=False)


# ---------------------------------------------------------------------------
# tensor products


def tensor(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    """Tensor product with labels ``(a, b)`` and the Koszul differential."""
    F = A.field
    if B.field != F:
        raise ValueError("field mismatch")
    basis: dict = {}
    for da, la in A.space.basis.items():
        for db, lb in B.space.basis.items():
            basis.setdefault(da + db, []).extend((a, b) for a in la for b in lb)
    d = {}
    for da, la in A.space.basis.items():
        s = F.sign(da)
        for a in la:
            dA = A.d.image_of(a)
            for b in B.labels():
                v = {(x, b): c for x, c in dA.items()}
                dB = B.d.image_of(b)
                if dB:
                    linalg.axpy(F, v, s, {(a, y): c for y, c in dB.items()})
                if v:
                    d[(a, b)] = v
    return ChainComplex(F, GradedVectorSpace(basis), d, check=False)


def tensor_power(C: ChainComplex, n: int) -> ChainComplex:
    """``C^{(x)n}`` with flat tuple labels; ``n = 0`` gives the unit ``()``."""
    F = C.field
    basis: dict = {0: [()]}
    for _ in range(n):
        new: dict = {}
        for d0, labs in basis.items():
            for d1, l1 in C.space.basis.items():
                new.setdefault(d0 + d1, []).extend(t + (x,) for t in labs for x in l1)
        basis = new
    space = GradedVectorSpace(basis)
    dmap = {}
    for t in space.labels():
        v = tensor_differential(C, t)
        if v:
            dmap[t] = v
    return ChainComplex(F, space, dmap, check=False)


def tensor_differential(C: ChainComplex, t: tuple) -> dict:
    """Koszul differential of a pure tensor ``t`` in ``C^{(x)n}``."""
    F = C.field
    out: dict = {}
    acc = 0
    for i, x in enumerate(t):
        dx = C.d.image_of(x)
        if dx:
            s = F.sign(acc)
            for y, c in dx.items():
                key = t[:i] + (y,) + t[i + 1:]
                linalg.axpy(F, out, s, {key: c})
        acc += C.space.degree_of[x]
    return out


def tensor_vectors(F: Field, vectors: Iterable[Mapping]) -> dict:
    """Pure tensor of vectors (no signs): labels are flat concatenations.

    Each input vector has tuple labels (pieces of a tensor power) or plain
    labels (wrapped as 1-tuples via ``flat``).
    """
    out = {(): F.one}
    for v in vectors:
        new: dict = {}
        for t, c in out.items():
            for y, e in v.items():
                key = t + (y if isinstance(y, tuple) else (y,))
                s = F.mul(c, e)
                if key in new:
                    s2 = F.add(new[key], s)
                    if s2:
                        new[key] = s2
                    else:
                        del new[key]
                elif s:
                    new[key] = s
        out = new
    return out


def apply_at(F: Field, degree_of: Mapping, t: tuple, i: int, g: Callable, g_degree: int) -> dict:
    """``(id^{i} (x) g (x) id^{n-i-1})(t)`` for a pure tensor ``t`` (0-based ``i``).

    ``g`` maps a label to a vector of tuple labels; the Koszul sign is
    ``(-1)^{|g| (|t_0| + ... + |t_{i-1}|)}``.
    """
    piece = g(t[i])
    if not piece:
        return {}
    e = g_degree * sum(degree_of[x] for x in t[:i]) if g_degree % 2 else 0
    s = F.sign(e)
    pre, post = t[:i], t[i + 1:]
    return {pre + y + post: F.mul(s, c) for y, c in piece.items()}


# ---------------------------------------------------------------------------
# hom complexes


def hom_complex(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    """Internal hom ``[A, B]``: basis labels ``(a, b)`` = elementary map a -> b.

    Differential ``D(f) = d_B f - (-1)^{|f|} f d_A``.
    """
    F = A.field
    basis: dict = {}
    for da, la in A.space.basis.items():
        for db, lb in B.space.basis.items():
            basis.setdefault(db - da, []).extend((a, b) for a in la for b in lb)
    space = GradedVectorSpace(basis)
    dAt = A.d.transpose_images()
    d = {}
    for (a, b) in space.labels():
        r = B.space.degree_of[b] - A.space.degree_of[a]
        v: dict = {}
        for y, c in B.d.image_of(b).items():
            linalg.axpy(F, v, c, {(a, y): F.one})
        s = F.neg(F.sign(r))
        for x, c in dAt.get(a, {}).items():
            linalg.axpy(F, v, F.mul(s, c), {(x, b): F.one})
        if v:
            d[(a, b)] = v
    return ChainComplex(F, space, d, check=False)


def hom_vector_to_map(F: Field, A: GradedVectorSpace, B: GradedVectorSpace, degree: int,
                      v: Mapping) -> LinearMap:
    ims: dict = {}
    for (a, b), c in v.items():
        ims.setdefault(a, {})
        linalg.axpy(F, ims[a], c, {b: F.one})
    return LinearMap(F, A, B, degree, ims)


def map_to_hom_vector(f: LinearMap) -> dict:
    return {(a, b): c for a, v in f.images.items() for b, c in v.items()}


def hom_differential(f: LinearMap, dA: LinearMap, dB: LinearMap) -> LinearMap:
    """``D(f) = d_B f - (-1)^{|f|} f d_A`` for ``f: A -> B``."""
    F = f.field
    left = dB.compose(f)
    right = f.compose(dA).scaled(F.sign(f.degree))
    return left - right


def boundary_of_map(f: LinearMap, A: ChainComplex, B: ChainComplex) -> LinearMap:
    return hom_differential(f, A.d, B.d)


def is_chain_map(f: LinearMap, A: ChainComplex | None = None, B: ChainComplex | None = None) -> bool:
    """True iff ``D(f) = 0`` for the hom differential.

    ``A``/``B`` default to the complexes whose spaces are the map's source
    and target; pass them explicitly when ``f`` is between complexes.
    """
    if A is None or B is None:
        raise ValueError("source and target complexes required")
    return boundary_of_map(f, A, B).is_zero()


# ---------------------------------------------------------------------------
# homology


@dataclass
class Homology:
    """Homology of a complex with chosen cycle representatives."""

    complex: ChainComplex
    space: GradedVectorSpace
    representatives: dict            # homology label -> cycle vector
    _coords: dict = dc_field(default_factory=dict, repr=False)   # degree -> Echelon

    def betti(self) -> dict:
        return self.space.dims()

    def dim(self, d: int) -> int:
        return self.space.dim(d)

    def class_of(self, z: Mapping) -> dict:
        """Coordinates of a homogeneous cycle ``z`` in the homology basis."""
        C = self.complex
        if not z:
            return {}
        if C.differential(z):
            raise ValueError("not a cycle")
        d = C.space.vector_degree(z)
        E = self._coords.get(d)
        if E is None:
            return {}
        r, t = E.reduce(z, {})
        if r:
            raise AssertionError("cycle outside span of boundaries and representatives")
        F = C.field
        return {k: F.neg(c) for k, c in t.items() if not (isinstance(k, tuple) and k and k[0] == "__b")}

    def is_boundary(self, z: Mapping) -> bool:
        return not self.class_of(z)


def cycles(C: ChainComplex, d: int) -> list:
    labs = C.space.basis.get(d, ())
    return linalg.kernel(C.field, C.d.images, labs, C.space.key)


def boundaries(C: ChainComplex, d: int) -> linalg.Echelon:
    E = linalg.Echelon(C.field, C.space.key)
    for x in C.space.basis.get(d + 1, ()):
        E.add(C.d.image_of(x))
    return E


def homology(C: ChainComplex, label: str = "H") -> Homology:
    """Homology with representatives: a cycle basis complementary to boundaries.

    Representatives are the kernel basis vectors (in echelon order) that are
    independent modulo the boundaries.
    """
    F = C.field
    basis: dict = {}
    reps = {}
    coords = {}
    for d in C.space.degrees():
        B = boundaries(C, d)
        E = linalg.Echelon(F, C.space.key, track=True)
        for i, row in enumerate(B.basis()):
            E.add(row, {("__b", d, i): F.one})
        labs = []
        for z in cycles(C, d):
            p, _ = E.add(z, {(label, d, len(labs)): F.one})
            if p is not None:
                h = (label, d, len(labs))
                labs.append(h)
                reps[h] = z
        if labs:
            basis[d] = labs
        coords[d] = E
    return Homology(C, GradedVectorSpace(basis), reps, coords)


def betti_numbers(C: ChainComplex) -> dict:
    """``dim H_d`` for every degree with nonzero homology (rank formula)."""
    out = {}
    for d in C.space.degrees():
        z = C.dim(d) - linalg.rank(C.field, (C.d.image_of(x) for x in C.space.basis[d]), C.space.key)
        b = boundaries(C, d).rank
        if z - b:
            out[d] = z - b
    return out


def is_quasi_iso(f: LinearMap, A: ChainComplex, B: ChainComplex) -> bool:
    """Whether the degree-0 chain map ``f: A -> B`` induces an iso on homology."""
    if f.degree != 0 or not is_chain_map(f, A, B):
        return False
    HA = homology(A)
    HB = homology(B)
    degs = set(HA.space.basis) | set(HB.space.basis)
    F = A.field
    for d in degs:
        if HA.dim(d) != HB.dim(d):
            return False
        if HA.dim(d) == 0:
            continue
        E = boundaries(B, d)
        base = E.rank
        for h in HA.space.basis[d]:
            E.add(f.apply(HA.representatives[h]))
        if E.rank - base != HA.dim(d):
            return False
    return True


def mapping_cone(f: LinearMap, A: ChainComplex, B: ChainComplex) -> ChainComplex:
    """Cone of a degree-0 chain map: ``B + A[1]`` with d(sa) = f(a) - s(da)."""
    F = f.field
    basis: dict = {}
    for d, labs in B.space.basis.items():
        basis.setdefault(d, []).extend(("B", x) for x in labs)
    for d, labs in A.space.basis.items():
        basis.setdefault(d + 1, []).extend(("sA", x) for x in labs)
    dd = {}
    for x in B.labels():
        v = {("B", y): c for y, c in B.d.image_of(x).items()}
        if v:
            dd[("B", x)] = v
    for x in A.labels():
        v = {("B", y): c for y, c in f.image_of(x).items()}
        linalg.axpy(F, v, F.neg(F.one), {("sA", y): c for y, c in A.d.image_of(x).items()})
        if v:
            dd[("sA", x)] = v
    return ChainComplex(F, GradedVectorSpace(basis), dd)
