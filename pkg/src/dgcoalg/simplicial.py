"""Finite simplicial sets given by nondegenerate simplices, and their
normalized chains.

A (possibly degenerate) simplex is stored in normal form ``(base, epi)``:
``base`` is a nondegenerate simplex id and ``epi`` is a monotone surjection
``[n] -> [dim base]`` written as the tuple of its values.  The simplex is
``epi^*(base)``; it is nondegenerate exactly when ``epi`` is the identity.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

from .chain_complex import ChainComplex, GradedVectorSpace, LinearMap
from .field import Field


class SimplicialError(ValueError):
    pass


def _degens_to_epi(n_base: int, degens: Iterable[int]) -> tuple:
    """Epi of ``s_{j1} s_{j2} ... s_{jk} base`` (operators listed outermost first)."""
    epi = tuple(range(n_base + 1))
    for j in reversed(list(degens)):
        m = len(epi) - 1
        if not 0 <= j <= m:
            raise SimplicialError(f"degeneracy s_{j} out of range in dimension {m}")
        # s_j: [m+1] -> [m], i -> i for i <= j, i-1 otherwise; applied first
        epi = tuple(epi[i if i <= j else i - 1] for i in range(m + 2))
    return epi


def _epi_to_degens(epi: tuple) -> list:
    """Normal form s_{j1} ... s_{jk} with j1 > ... > jk."""
    return sorted((i for i in range(len(epi) - 1) if epi[i] == epi[i + 1]), reverse=True)


class SimplicialSet:
    """Finite simplicial set.  ``faces[x]`` lists ``(base, epi)`` for d_0 x, ..., d_n x."""

    def __init__(self, simplices: Mapping[int, Iterable], faces: Mapping, name: str = "X",
                 check: bool = True):
        self.simplices = {int(d): list(v) for d, v in simplices.items() if list(v)}
        self.faces = {x: [tuple((b, tuple(e))) for b, e in fs] for x, fs in faces.items()}
        self.name = name
        self.dim_of = {}
        for d, xs in self.simplices.items():
            for x in xs:
                if x in self.dim_of:
                    raise SimplicialError(f"duplicate simplex id {x!r}")
                self.dim_of[x] = d
        self._vertex_cache: dict = {}
        if check:
            self.check()

    @property
    def dimension(self) -> int:
        return max(self.simplices, default=-1)

    def all_simplices(self) -> list:
        return [x for d in sorted(self.simplices) for x in self.simplices[d]]

    def is_empty(self) -> bool:
        return not self.dim_of

    def check(self):
        for x, d in self.dim_of.items():
            fs = self.faces.get(x, [])
            if d == 0:
                if fs:
                    raise SimplicialError(f"vertex {x!r} has faces")
                continue
            if len(fs) != d + 1:
                raise SimplicialError(f"simplex {x!r} of dimension {d} has {len(fs)} faces")
            for i, (b, e) in enumerate(fs):
                if b not in self.dim_of:
                    raise SimplicialError(f"face {i} of {x!r} refers to unknown simplex {b!r}")
                if len(e) != d or e[0] != 0 or e[-1] != self.dim_of[b] or \
                        any(e[k + 1] - e[k] not in (0, 1) for k in range(len(e) - 1)):
                    raise SimplicialError(f"face {i} of {x!r} is not a normal form of dimension {d - 1}")
        for x, d in self.dim_of.items():
            if d < 2:
                continue
            for j in range(d + 1):
                for i in range(j):
                    a = self.face((x, tuple(range(d + 1))), j)
                    a = self.face(a, i)
                    b = self.face((x, tuple(range(d + 1))), i)
                    b = self.face(b, j - 1)
                    if a != b:
                        raise SimplicialError(
                            f"simplicial identity d_{i} d_{j} = d_{j - 1} d_{i} fails on {x!r}")

    def nondegenerate(self, x) -> tuple:
        return (x, tuple(range(self.dim_of[x] + 1)))

    def face(self, simplex: tuple, i: int) -> tuple:
        n = len(simplex[1]) - 1
        return self.restrict(simplex, tuple(k for k in range(n + 1) if k != i))

    def restrict(self, simplex: tuple, verts: tuple) -> tuple:
        """The face (or degeneracy) ``delta^* simplex`` for a monotone map given by ``verts``."""
        base, epi = simplex
        comp = tuple(epi[v] for v in verts)
        image = sorted(set(comp))
        eps = tuple(image.index(c) for c in comp)
        b, e = self._restrict_nd(base, tuple(image))
        return (b, tuple(e[k] for k in eps))

    def _restrict_nd(self, x, verts: tuple) -> tuple:
        key = (x, verts)
        hit = self._vertex_cache.get(key)
        if hit is not None:
            return hit
        d = self.dim_of[x]
        if len(verts) == d + 1:
            res = (x, verts)
        else:
            missing = next(k for k in range(d + 1) if k not in verts)
            b, e = self.faces[x][missing]
            # vertices of d_missing x are [0..d] minus missing, renumbered
            sub = tuple(v if v < missing else v - 1 for v in verts)
            res = self.restrict((b, e), sub)
        self._vertex_cache[key] = res
        return res

    def face_by_vertices(self, x, verts: Iterable[int]):
        """Nondegenerate id of the face of ``x`` spanned by ``verts``, or None if degenerate."""
        verts = tuple(verts)
        if any(verts[k] >= verts[k + 1] for k in range(len(verts) - 1)):
            return None
        b, e = self._restrict_nd(x, verts)
        return b if len(set(e)) == len(e) else None

    def to_json(self) -> dict:
        out: dict = {}
        for d in sorted(self.simplices):
            rows = []
            for x in self.simplices[d]:
                rows.append({"id": x, "faces": [{"base": b, "degens": _epi_to_degens(e)}
                                                for b, e in self.faces.get(x, [])]})
            out[str(d)] = rows
        return {"simplices": out}

    @classmethod
    def from_json(cls, data: Mapping, name: str = "X") -> "SimplicialSet":
        if not isinstance(data, Mapping) or "simplices" not in data:
            raise SimplicialError("expected an object with key 'simplices'")
        simplices: dict = {}
        raw: dict = {}
        for d, rows in data["simplices"].items():
            try:
                dd = int(d)
            except ValueError:
                raise SimplicialError(f"simplices: dimension key {d!r} is not an integer") from None
            for k, row in enumerate(rows):
                if "id" not in row:
                    raise SimplicialError(f"simplices.{d}[{k}]: missing 'id'")
                simplices.setdefault(dd, []).append(row["id"])
                raw[row["id"]] = (dd, row.get("faces", []), f"simplices.{d}[{k}]")
        dims = {x: v[0] for x, v in raw.items()}
        faces = {}
        for x, (dd, fs, where) in raw.items():
            out = []
            for i, f in enumerate(fs):
                if isinstance(f, str):
                    f = {"base": f, "degens": []}
                if f.get("base") not in dims:
                    raise SimplicialError(f"{where}.faces[{i}]: unknown base {f.get('base')!r}")
                epi = _degens_to_epi(dims[f["base"]], f.get("degens", []))
                out.append((f["base"], epi))
            faces[x] = out
        return cls(simplices, faces, name=name)

    def __eq__(self, other):
        return isinstance(other, SimplicialSet) and self.to_json() == other.to_json()

    def __repr__(self):
        return f"SimplicialSet({self.name}, {[len(self.simplices.get(d, [])) for d in range(self.dimension + 1)]})"


def simplex_id(verts: tuple) -> str:
    return "[" + ",".join(str(v) for v in verts) + "]" if any(v > 9 for v in verts) \
        else "[" + "".join(str(v) for v in verts) + "]"


def simplicial_complex(facets: Iterable[Iterable[int]], name: str = "K") -> SimplicialSet:
    """Ordered simplicial complex generated by ``facets`` (vertices ordered by value)."""
    all_s: set = set()
    for f in facets:
        f = tuple(sorted(f))
        for r in range(1, len(f) + 1):
            all_s.update(combinations(f, r))
    simplices: dict = {}
    faces: dict = {}
    for s in sorted(all_s, key=lambda s: (len(s), s)):
        d = len(s) - 1
        sid = simplex_id(s)
        simplices.setdefault(d, []).append(sid)
        if d:
            faces[sid] = [(simplex_id(s[:i] + s[i + 1:]), tuple(range(d))) for i in range(d + 1)]
    return SimplicialSet(simplices, faces, name=name)


def standard_simplex(n: int) -> SimplicialSet:
    return simplicial_complex([range(n + 1)], name=f"Delta^{n}")


def boundary_simplex(n: int) -> SimplicialSet:
    if n == 0:
        return SimplicialSet({}, {}, name="dDelta^0")
    return simplicial_complex([tuple(v for v in range(n + 1) if v != i) for i in range(n + 1)],
                              name=f"dDelta^{n}")


def minimal_circle() -> SimplicialSet:
    return SimplicialSet({0: ["v"], 1: ["e"]}, {"e": [("v", (0,)), ("v", (0,))]}, name="S^1")


RP2_FACETS = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
              (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)]


def rp2() -> SimplicialSet:
    return simplicial_complex(RP2_FACETS, name="RP^2")


def torus() -> SimplicialSet:
    facets = []
    for i in range(7):
        facets.append((i, (i + 1) % 7, (i + 3) % 7))
        facets.append((i, (i + 2) % 7, (i + 3) % 7))
    return simplicial_complex(facets, name="T^2")


def builtin(name: str) -> SimplicialSet:
    """Built-in spaces: delta<n>, boundary<n>, circle, rp2, torus."""
    low = name.lower()
    if low.startswith("delta"):
        return standard_simplex(int(low[5:]))
    if low.startswith("boundary"):
        return boundary_simplex(int(low[8:]))
    if low in ("circle", "s1"):
        return minimal_circle()
    if low == "rp2":
        return rp2()
    if low == "torus":
        return torus()
    raise SimplicialError(f"unknown built-in space {name!r}")


BUILTINS = ["delta0", "boundary2", "circle", "rp2", "torus"]


def normalized_chains(X: SimplicialSet, field: Field) -> ChainComplex:
    basis = {d: list(xs) for d, xs in X.simplices.items()}
    images = {}
    for x, d in X.dim_of.items():
        v: dict = {}
        for i, (b, e) in enumerate(X.faces.get(x, [])):
            if len(set(e)) == len(e):
                c = field.add(v.get(b, field.zero), field.sign(i))
                if c:
                    v[b] = c
                else:
                    v.pop(b, None)
        images[x] = v
    return ChainComplex(field, GradedVectorSpace(basis), images)


def simplicial_map_chains(X: SimplicialSet, Y: SimplicialSet, vertex_map: Mapping, field: Field) -> LinearMap:
    """Chain map induced by a map of ordered simplicial complexes given on vertices.

    Simplex ids must be vertex lists as produced by ``simplicial_complex``;
    the vertex map has to be order preserving on every simplex.
    """
    images = {}
    for x, d in X.dim_of.items():
        verts = _parse_id(x)
        w = tuple(vertex_map[v] for v in verts)
        if any(w[k] > w[k + 1] for k in range(len(w) - 1)):
            raise SimplicialError(f"vertex map is not order preserving on {x}")
        images[x] = {} if len(set(w)) < len(w) else {simplex_id(w): field.one}
    return LinearMap(field, normalized_chains(X, field).space, normalized_chains(Y, field).space, 0, images)


def _parse_id(x: str) -> tuple:
    body = x[1:-1]
    return tuple(int(c) for c in (body.split(",") if "," in body else body))
