"""Cochain operations induced by the Barratt-Eccles structure on chains:
cup-i products, Steenrod squares and cohomology of simplicial sets.

A cochain of degree ``q`` is a dict ``{simplex: value}`` on ``q``-simplices.
Cochains live in a chain complex in degree ``-q`` (labels ``("c", x)``) so
the homology routines compute cohomology directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .barratt_eccles import cup_i_element, e_coalgebra_structure
from .chain_complex import ChainComplex, GradedVectorSpace, Homology, homology
from .coalgebra import PCoalgebra
from .field import F2, Field
from .simplicial import SimplicialSet, normalized_chains


class CocycleError(ValueError):
    pass


def cochain_complex(X: SimplicialSet, field: Field) -> ChainComplex:
    C = normalized_chains(X, field)
    basis = {-d: [("c", x) for x in xs] for d, xs in C.space.basis.items()}
    images: dict = {}
    for y in C.labels():
        # delta(x^*) = sum over y with x in d y of coeff * y^*, with the sign (-1)^{|x|+1}
        for x, c in C.differential({y: field.one}).items():
            s = field.sign(C.degree_of(x) + 1)
            linalg.axpy(field, images.setdefault(("c", x), {}), field.mul(s, c), {("c", y): field.one})
    return ChainComplex(field, GradedVectorSpace(basis), images)


def as_cochain_vector(f: dict) -> dict:
    return {("c", x): c for x, c in f.items() if c}


def from_cochain_vector(v: dict) -> dict:
    return {x: c for (_, x), c in v.items()}


def coboundary(X: SimplicialSet, f: dict, field: Field) -> dict:
    K = cochain_complex(X, field)
    return from_cochain_vector(K.differential(as_cochain_vector(f)))


def is_cocycle(X: SimplicialSet, f: dict, field: Field) -> bool:
    return not coboundary(X, f, field)


@dataclass
class Cohomology:
    space: SimplicialSet
    field: Field
    homology: Homology

    def betti(self) -> dict:
        return {-d: b for d, b in self.homology.betti().items()}

    def generators(self, q: int) -> list:
        """Cocycle representatives of a basis of ``H^q``."""
        return [from_cochain_vector(self.homology.representatives[h])
                for h in self.homology.space.basis.get(-q, [])]

    def class_of(self, f: dict) -> dict:
        return self.homology.class_of(as_cochain_vector(f))

    def is_zero(self, f: dict) -> bool:
        return not self.class_of(f)


def cohomology(X: SimplicialSet, field: Field) -> Cohomology:
    return Cohomology(X, field, homology(cochain_complex(X, field), label="H^"))


def cochain_degree(X: SimplicialSet, f: dict) -> int:
    degs = {X.dim_of[x] for x in f}
    if len(degs) > 1:
        raise CocycleError("inhomogeneous cochain")
    return degs.pop() if degs else 0


def cochain_operation(S: PCoalgebra, n: int, e, cochains: list, degrees: list) -> dict:
    """``(f_1 (x) ... (x) f_n) o Delta_e`` with the Koszul evaluation sign."""
    F = S.field
    out: dict = {}
    e_koszul = sum(degrees[i] * degrees[k] for i in range(n) for k in range(i + 1, n))
    for (x, t), c in S.delta(n, e).items():
        v = c
        for f, y in zip(cochains, t):
            v = F.mul(v, f.get(y, F.zero))
            if not v:
                break
        if v:
            linalg.axpy(F, out, F.mul(F.sign(e_koszul), v), {x: F.one})
    return out


def _degree(S: PCoalgebra, f: dict) -> int:
    degs = {S.carrier.degree_of(x) for x in f}
    if len(degs) > 1:
        raise CocycleError("inhomogeneous cochain")
    return degs.pop() if degs else 0


def cup_i(S: PCoalgebra, i: int, f: dict, g: dict) -> dict:
    return cochain_operation(S, 2, cup_i_element(i), [f, g], [_degree(S, f), _degree(S, g)])


def cup(S: PCoalgebra, f: dict, g: dict) -> dict:
    return cup_i(S, 0, f, g)


def structure(X: SimplicialSet, field: Field = F2, max_deg: int | None = None) -> PCoalgebra:
    """Arity-2 part of the chain-level structure, large enough for all cup-i on ``X``."""
    return e_coalgebra_structure(X, field, 2, max(X.dimension, 0) if max_deg is None else max_deg)


@dataclass
class SquareResult:
    i: int
    degree: int
    cochain: dict
    coordinates: dict

    @property
    def is_zero(self) -> bool:
        return not self.coordinates

    def to_json(self) -> dict:
        return {"i": self.i, "degree": self.degree,
                "cochain": {str(x): int(c) for x, c in sorted(self.cochain.items(), key=lambda kv: str(kv[0]))},
                "class": {"/".join(map(str, h)): int(c) for h, c in self.coordinates.items()},
                "zero": self.is_zero}


def steenrod_square(X: SimplicialSet, i: int, x: dict, S: PCoalgebra | None = None,
                    H: Cohomology | None = None) -> SquareResult:
    """``Sq^i(x) = x cup_{q-i} x`` over F_2 for a cocycle ``x`` of degree ``q``."""
    F = F2
    x = {s: F(c) for s, c in x.items() if F(c)}
    for s in x:
        if s not in X.dim_of:
            raise CocycleError(f"unknown simplex {s!r}")
    q = cochain_degree(X, x)
    if not is_cocycle(X, x, F):
        raise CocycleError("the class representative is not a cocycle")
    if i < 0 or i > q or not x:
        return SquareResult(i, q + i, {}, {})
    S = structure(X, F) if S is None else S
    H = cohomology(X, F) if H is None else H
    y = cup_i(S, q - i, x, x)
    return SquareResult(i, q + i, y, H.class_of(y))


def commutativity_defect(S: PCoalgebra, f: dict, g: dict) -> tuple:
    """``(x cup y - (-1)^{|x||y|} y cup x, -delta(x cup_1 y))``; equal for cocycles."""
    F = S.field
    p, q = _degree(S, f), _degree(S, g)
    diff = dict(cup(S, f, g))
    linalg.axpy(F, diff, F.neg(F.sign(p * q)), cup(S, g, f))
    C = S.carrier
    w = cup_i(S, 1, f, g)
    dw: dict = {}
    for y in C.labels():
        for x, c in C.differential({y: F.one}).items():
            if x in w:
                # (delta w)(y) = (-1)^{|w|+1} w(dy)
                linalg.axpy(F, dw, F.mul(F.sign(C.degree_of(x) + 1), F.mul(c, w[x])), {y: F.one})
    return diff, {k: F.neg(v) for k, v in dw.items()}
