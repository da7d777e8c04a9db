"""dg P-coalgebras in structural-map form, A-infinity coalgebras,
restriction, cell-wise gluing and the lift along a quasi-isomorphism.

A cooperation ``Delta_e: C -> C^{(x)n}`` is stored as a vector of the
coendomorphism operad, i.e. a dict ``{(x, t): c}`` meaning ``x -> c * t`` with
``t`` a tuple of basis labels.  A P-coalgebra is then exactly an operad
morphism ``P -> coEnd_C`` and is verified as one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping

from . import linalg
from . import permutations as perm
from .chain_complex import (ChainComplex, GradedVectorSpace, LinearMap, apply_at, hom_complex,
                            homology, is_chain_map, is_quasi_iso, tensor_power, tensor_vectors)
from .field import Field
from .operad import (CoendomorphismOperad, Operad, OperadMorphism, Report, verify_morphism)
from .trees import (CellError, FreeOperad, QuasiFreePresentation, evaluate_tree, free_morphism,
                    is_leaf)


# ---------------------------------------------------------------------------
# conversions


def coop_from_map(f: LinearMap) -> dict:
    """coEnd vector of a map into a tensor power (tuple labels)."""
    return {(x, t): c for x, v in f.images.items() for t, c in v.items()}


def coop_images(vec: Mapping) -> dict:
    """``{x: {t: c}}`` from a coEnd vector."""
    out: dict = {}
    for (x, t), c in vec.items():
        out.setdefault(x, {})[t] = c
    return out


def coop_apply(F: Field, vec: Mapping, v: Mapping) -> dict:
    ims = coop_images(vec)
    out: dict = {}
    for x, c in v.items():
        if x in ims:
            linalg.axpy(F, out, c, ims[x])
    return out


def tensor_power_map(F: Field, f: LinearMap, p: int) -> Callable:
    """``t -> f^{(x)p}(t)`` for a degree-0 map ``f`` (labels are tuples)."""
    if f.degree != 0:
        raise ValueError("only degree-0 maps are tensored")

    def go(t):
        return tensor_vectors(F, [{(y,): c for y, c in f.image_of(x).items()} for x in t])
    return go


def postcompose_tensor(F: Field, vec: Mapping, g: Callable) -> dict:
    """coEnd-style vector ``x -> g(t)`` for ``x -> t`` (g maps tuples to vectors)."""
    out: dict = {}
    for (x, t), c in vec.items():
        for u, e in g(t).items():
            linalg.axpy(F, out, F.mul(c, e), {(x, u): F.one})
    return out


def precompose(F: Field, vec: Mapping, f: LinearMap) -> dict:
    """``Delta o f`` as a vector keyed ``(source label, tuple)``."""
    ims = coop_images(vec)
    out: dict = {}
    for w, v in f.images.items():
        for x, c in v.items():
            for t, e in ims.get(x, {}).items():
                linalg.axpy(F, out, F.mul(c, e), {(w, t): F.one})
    return out


# ---------------------------------------------------------------------------
# P-coalgebras


class PCoalgebra:
    """A carrier ``C`` with cooperations ``Delta_e`` for basis elements ``e`` of ``P``."""

    def __init__(self, operad: Operad, carrier: ChainComplex, cooperation: Callable,
                 name: str = "C", max_arity: int | None = None):
        self.operad = operad
        self.carrier = carrier
        self.field = carrier.field
        self._coop = cooperation
        self.name = name
        A = operad.max_arity if max_arity is None else max_arity
        self.coend = CoendomorphismOperad(carrier, A)
        self._cache: dict = {}

    def delta(self, n: int, e) -> dict:
        key = (n, e)
        if key not in self._cache:
            self._cache[key] = self._coop(n, e)
        return self._cache[key]

    def delta_vec(self, n: int, v: Mapping) -> dict:
        F = self.field
        out: dict = {}
        for e, c in v.items():
            linalg.axpy(F, out, c, self.delta(n, e))
        return out

    def apply(self, n: int, e, x) -> dict:
        """``Delta_e(x)`` as a vector of tuples."""
        return coop_apply(self.field, self.delta(n, e), {x: self.field.one})

    def as_morphism(self) -> OperadMorphism:
        return OperadMorphism(self.operad, self.coend, self.delta, name=f"structure of {self.name}")

    def table(self, n: int, e) -> dict:
        return coop_images(self.delta(n, e))


def verify_pcoalgebra(C: PCoalgebra, max_arity: int | None = None, samples: int | None = None,
                      seed: int = 0) -> Report:
    """Unit, equivariance, chain-map and composition compatibility, plus degrees.

    The composition rule checked is
    ``Delta_{e o_i f} = (-1)^{|e||f|} (id^{i-1} (x) Delta_f (x) id^{n-i}) Delta_e``.
    """
    R = verify_morphism(C.as_morphism(), max_arity=max_arity, samples=samples, seed=seed)
    R.name = f"P-coalgebra {C.name}"
    return R


def trivial_coalgebra(P: Operad, C: ChainComplex) -> PCoalgebra:
    """The unit acts by the identity, every other basis element by zero."""
    F = C.field
    unit = P.unit
    ident = {(x, (x,)): F.one for x in C.labels()}

    def coop(n, e):
        if n == 1 and unit == {e: F.one}:
            return dict(ident)
        return {}
    return PCoalgebra(P, C, coop, name="trivial")


def restrict(phi: OperadMorphism, C: PCoalgebra) -> PCoalgebra:
    """Pull the structure of a Q-coalgebra back along ``phi: P -> Q``."""
    if phi.target is not C.operad:
        raise ValueError("morphism target differs from the coalgebra's operad")
    return PCoalgebra(phi.source, C.carrier, lambda n, e: C.delta_vec(n, phi(n, e)),
                      name=f"{phi.name}^*{C.name}")


def same_structure(C: PCoalgebra, D: PCoalgebra, max_arity: int | None = None) -> bool:
    P = C.operad
    A = P.max_arity if max_arity is None else max_arity
    return all(C.delta(n, e) == D.delta(n, e) for n in range(A + 1) for e in P.all_basis(n))


# ---------------------------------------------------------------------------
# A-infinity coalgebras


class AInftyCoalgebra:
    """Graded space with ``Delta_n: C -> C^{(x)n}`` of degree ``n - 2``.

    ``maps[n]`` is a coEnd vector; ``Delta_1`` is read from the carrier's
    differential.
    """

    def __init__(self, carrier: ChainComplex, maps: Mapping[int, Mapping]):
        self.carrier = carrier
        self.field = carrier.field
        self.maps = {n: dict(v) for n, v in maps.items() if n >= 2}

    def images(self, n: int) -> dict:
        if n == 1:
            return {x: {(y,): c for y, c in v.items()} for x, v in self.carrier.d.images.items()}
        return coop_images(self.maps.get(n, {}))

    def relation(self, n: int, x) -> dict:
        """``sum (-1)^{r+st} (id^r (x) Delta_s (x) id^t) Delta_{r+1+t} (x)``."""
        F = self.field
        deg = self.carrier.space.degree_of
        out: dict = {}
        for s in range(1, n + 1):
            ims_s = self.images(s)
            g = lambda y, ims_s=ims_s: ims_s.get(y, {})
            for r in range(0, n - s + 1):
                t = n - s - r
                sg = F.sign(r + s * t)
                for u, c in self.images(r + 1 + t).get(x, {}).items():
                    linalg.axpy(F, out, F.mul(sg, c), apply_at(F, deg, u, r, g, s - 2))
        return out


def verify_ainfty(A: AInftyCoalgebra, N: int) -> Report:
    R = Report(f"A-infinity relations through n = {N}")
    deg = A.carrier.space.degree_of
    for n in range(2, N + 1):
        for x, v in A.images(n).items():
            for t, c in v.items():
                ok = sum(deg[y] for y in t) == deg[x] + n - 2
                R.record("degree", ok, {"n": n, "x": x, "term": t})
    for n in range(1, N + 1):
        for x in A.carrier.labels():
            rel = A.relation(n, x)
            R.record(f"relation n={n}", not rel, {"n": n, "x": x, "value": rel})
    return R


def ainfty_as_pcoalgebra(A: AInftyCoalgebra, N: int) -> PCoalgebra:
    """The same data as a coalgebra over the quasi-free A-infinity operad."""
    from .trees import ainfty_presentation
    T = ainfty_presentation(A.field, N).realize(N, check=False)
    coend = CoendomorphismOperad(A.carrier, N)

    def image(p, dec):
        nm, s = dec
        return coend.act_perm(p, s, A.maps.get(p, {}))

    phi = free_morphism(T, coend, image, name="A-infinity structure")
    C = PCoalgebra(T, A.carrier, phi, name="A-infinity")
    C.coend = coend
    return C


# ---------------------------------------------------------------------------
# coalgebras over quasi-free operads and gluing


class CellCoalgebra:
    """A coalgebra over a quasi-free operad, given by its generator cooperations."""

    def __init__(self, presentation: QuasiFreePresentation, carrier: ChainComplex,
                 generators: Mapping[str, Mapping]):
        self.presentation = presentation
        self.carrier = carrier
        self.field = carrier.field
        self.generators = {k: dict(v) for k, v in generators.items()}
        A = max([g["arity"] for g in presentation.generators] + [1])
        self.coend = CoendomorphismOperad(carrier, max(A, 1) * 2)

    def image(self, p: int, dec) -> dict:
        nm, s = dec
        return self.coend.act_perm(p, s, self.generators.get(nm, {}))

    def evaluate(self, p: int, poly: Mapping) -> dict:
        """Evaluate a tree polynomial of arity ``p`` in this structure."""
        F = self.field
        coend = CoendomorphismOperad(self.carrier, max(p, self.coend.max_arity))
        out: dict = {}
        for t, c in poly.items():
            v = evaluate_tree(None, t, self.image, coend)
            linalg.axpy(F, out, c, v)
        return out

    def generator_report(self) -> Report:
        """``d(Delta_g) = boundary evaluated`` for each generator, plus degrees."""
        R = Report("generator conditions")
        for g in self.presentation.generators:
            nm, p, k = g["name"], g["arity"], g["degree"]
            vec = self.generators.get(nm, {})
            for key in vec:
                if self.coend.degree_of(p, key) != k:
                    R.record("degree", False, {"generator": nm, "term": key})
            lhs = self.coend.d_vec(p, vec)
            rhs = self.evaluate(p, g["boundary"])
            resid = linalg.sub(self.field, lhs, rhs)
            R.record("boundary", not resid, {"generator": nm, "residual": resid})
        return R

    def as_pcoalgebra(self, A: int | None = None, window: tuple | None = None) -> PCoalgebra:
        if A is None:
            A = max([g["arity"] for g in self.presentation.generators] + [1]) + 1
        T = self.presentation.realize(A, window, check=False)
        coend = CoendomorphismOperad(self.carrier, A)
        phi = free_morphism(T, coend, self.image, name="cell structure")
        C = PCoalgebra(T, self.carrier, phi, name="cell coalgebra")
        C.coend = coend
        return C

    def __eq__(self, other):
        return (isinstance(other, CellCoalgebra) and self.carrier == other.carrier
                and self.presentation.names() == other.presentation.names()
                and all(self.generators.get(k, {}) == other.generators.get(k, {})
                        for k in self.presentation.names()))


def glue_cell_coalgebra(C: CellCoalgebra, delta_new: Mapping, p: int, k: int, boundary,
                        name: str | None = None) -> CellCoalgebra:
    """Extend ``C`` along the cell ``(p, k, boundary)`` with ``Delta_new``.

    Fails with the residual ``d(Delta_new) - boundary(C)`` when the boundary
    condition does not hold.
    """
    if isinstance(delta_new, LinearMap):
        delta_new = coop_from_map(delta_new)
    name = name or f"x{len(C.presentation) + 1}"
    P2 = C.presentation.attach_cell(name, p, k, boundary)
    b = P2.generator(name)["boundary"]
    coend = CoendomorphismOperad(C.carrier, max(p, 1))
    for key in delta_new:
        if coend.degree_of(p, key) != k:
            raise CellError(f"cooperation term {key} does not have degree {k}")
    lhs = coend.d_vec(p, delta_new)
    rhs = C.evaluate(p, b)
    resid = linalg.sub(C.field, lhs, rhs)
    if resid:
        raise CellError(f"boundary condition fails; residual {resid}")
    gens = dict(C.generators)
    gens[name] = dict(delta_new)
    return CellCoalgebra(P2, C.carrier, gens)


def restrict_cells(D: CellCoalgebra, upto: int) -> CellCoalgebra:
    """Restriction along the inclusion of the first ``upto`` generators."""
    P = QuasiFreePresentation(D.field, D.presentation.generators[:upto])
    return CellCoalgebra(P, D.carrier, {n: D.generators[n] for n in P.names() if n in D.generators})


def cooperation_space(C: ChainComplex, p: int, k: int) -> list:
    """Basis labels of ``[C, C^{(x)p}]_k``."""
    return CoendomorphismOperad(C, p).basis(p, k)


def boundary_solutions(C: ChainComplex, p: int, k: int, target: Mapping):
    """All ``Delta`` of degree k with ``d(Delta) = target``: (particular, kernel basis) or None."""
    F = C.field
    co = CoendomorphismOperad(C, p)
    src = co.basis(p, k)
    cols = {x: co.d(p, x) for x in src}
    x0 = linalg.solve(F, cols, src, target)
    if x0 is None:
        return None
    ker = linalg.kernel(F, cols, src)
    return x0, ker


def enumerate_affine(F: Field, x0: Mapping, ker: list):
    """All points of ``x0 + span(ker)`` (finite fields only)."""
    for coeffs in product(F.elements(), repeat=len(ker)):
        v = dict(x0)
        for c, k in zip(coeffs, ker):
            linalg.axpy(F, v, c, k)
        yield v


# ---------------------------------------------------------------------------
# the lift along a quasi-isomorphism


def sphere_presentation(F: Field, p: int, k: int, name: str = "x") -> QuasiFreePresentation:
    """``T(S^{k-1}(p))``: one generator of degree ``k - 1``, zero boundary."""
    return QuasiFreePresentation(F).attach_cell(name, p, k - 1, {})


def disk_presentation(F: Field, p: int, k: int) -> QuasiFreePresentation:
    """``T(D^k(p))``: generators ``x`` (degree k-1) and ``y`` (degree k), ``dy = x``."""
    S = sphere_presentation(F, p, k)
    return S.attach_cell("y", p, k, [(1, ["x"] + list(range(1, p + 1)))])


def mapping_cylinder(W: ChainComplex, V: ChainComplex, f: LinearMap):
    """``Cyl(f)`` with the inclusion ``i``, projection ``q``, section ``r`` and homotopy ``h``.

    Basis ``("w", w)``, ``("s", w)`` (degree ``|w| + 1``), ``("v", v)``;
    ``d(s w) = w - f(w) - s(dw)``.  ``q i = f``, ``q r = id`` and
    ``r q - id = dh + hd`` with ``h(w) = -s w``.
    """
    F = W.field
    basis: dict = {}
    for d, labs in W.space.basis.items():
        basis.setdefault(d, []).extend(("w", w) for w in labs)
        basis.setdefault(d + 1, []).extend(("s", w) for w in labs)
    for d, labs in V.space.basis.items():
        basis.setdefault(d, []).extend(("v", v) for v in labs)
    dm = {}
    for w in W.labels():
        dw = W.d.image_of(w)
        if dw:
            dm[("w", w)] = {("w", y): c for y, c in dw.items()}
        v = {("w", w): F.one}
        linalg.axpy(F, v, F.neg(F.one), {("v", y): c for y, c in f.image_of(w).items()})
        linalg.axpy(F, v, F.neg(F.one), {("s", y): c for y, c in dw.items()})
        dm[("s", w)] = v
    for x in V.labels():
        dv = V.d.image_of(x)
        if dv:
            dm[("v", x)] = {("v", y): c for y, c in dv.items()}
    Cyl = ChainComplex(F, GradedVectorSpace(basis), dm)
    i = LinearMap(F, W.space, Cyl.space, 0, {w: {("w", w): F.one} for w in W.labels()})
    q_ims = {}
    for w in W.labels():
        if f.image_of(w):
            q_ims[("w", w)] = dict(f.image_of(w))
    for x in V.labels():
        q_ims[("v", x)] = {x: F.one}
    q = LinearMap(F, Cyl.space, V.space, 0, q_ims)
    r = LinearMap(F, V.space, Cyl.space, 0, {x: {("v", x): F.one} for x in V.labels()})
    h = LinearMap(F, Cyl.space, Cyl.space, 1,
                  {("w", w): {("s", w): F.neg(F.one)} for w in W.labels()})
    return Cyl, i, q, r, h


@dataclass
class LiftResult:
    structure: CellCoalgebra        # T(D^k(p))-coalgebra on V
    homotopy: dict                  # H: W -> V^{(x)p}, keys (w, t)
    report: Report


class LiftError(ValueError):
    pass


def lift_cell_structure(W: CellCoalgebra, V: ChainComplex, delta_Vx: Mapping, f: LinearMap,
                        p: int, k: int) -> LiftResult:
    """Lift a ``T(D^k(p))``-structure on ``W`` to ``V`` along ``f``.

    ``W`` carries generators ``x`` and ``y`` with ``dy = x``; ``V`` carries
    ``Delta^V_x`` and ``f`` is a quasi-isomorphism with
    ``f^{(x)p} Delta^W_x = Delta^V_x f``.  Returns ``Delta^V_y`` with
    ``d(Delta^V_y) = Delta^V_x`` and ``H`` with
    ``Delta^V_y f - f^{(x)p} Delta^W_y = d(H)``.
    """
    F = V.field
    if not is_chain_map(f, W.carrier, V):
        raise LiftError("f is not a chain map")
    if not is_quasi_iso(f, W.carrier, V):
        raise LiftError("f is not a quasi-isomorphism")
    fp = tensor_power_map(F, f, p)
    Wx, Wy = W.generators.get("x", {}), W.generators.get("y", {})
    if postcompose_tensor(F, Wx, fp) != precompose(F, delta_Vx, f):
        raise LiftError("f does not commute with the x-cooperations")

    Cyl, i, q, r, h = mapping_cylinder(W.carrier, V, f)
    Vp = tensor_power(V, p)
    H = hom_complex(Cyl, Vp)
    # fixed part: Y(w) = f^p Delta^W_y (w)
    Y0 = {(("w", w), t): c for (w, t0), c0 in postcompose_tensor(F, Wy, fp).items()
          for t, c in [(t0, c0)]}
    target = {(a, t): c for (a, t), c in precompose(F, delta_Vx, q).items()}
    dY0: dict = {}
    for key, c in Y0.items():
        linalg.axpy(F, dY0, c, H.d.image_of(key))
    rhs = linalg.sub(F, target, dY0)
    unknown_v = [lab for lab in H.space.basis.get(k, []) if lab[0][0] == "v"]
    unknown_s = [lab for lab in H.space.basis.get(k, []) if lab[0][0] == "s"]
    sol = None
    for src in (unknown_v, unknown_v + unknown_s):
        cols = {lab: H.d.image_of(lab) for lab in src}
        sol = linalg.solve(F, cols, src, rhs)
        if sol is not None:
            break
    if sol is None:
        raise LiftError("no lift exists in the given degree window")
    Y = linalg.add(F, Y0, sol)
    Yv = {(a[1], t): c for (a, t), c in Y.items() if a[0] == "v"}
    sgn = F.neg(F.sign(k))
    Hmap = {(a[1], t): F.mul(sgn, c) for (a, t), c in Y.items() if a[0] == "s"}
    gens = {"x": dict(delta_Vx), "y": Yv}
    lifted = CellCoalgebra(W.presentation, V, gens)

    R = lifted.generator_report()
    R.name = "lift"
    # lower triangle up to the homotopy
    HW = hom_complex(W.carrier, Vp)
    dH: dict = {}
    for key, c in Hmap.items():
        linalg.axpy(F, dH, c, HW.d.image_of(key))
    diff = linalg.sub(F, precompose(F, Yv, f), postcompose_tensor(F, Wy, fp))
    R.record("homotopy", linalg.sub(F, dH, diff) == {}, {"residual": linalg.sub(F, dH, diff)})
    R.record("restriction strict", lifted.generators["x"] == dict(delta_Vx), "x")
    return LiftResult(lifted, Hmap, R)


def random_lift_instance(seed: int, F: Field | None = None, p: int = 2, k: int = 1,
                         max_dim: int = 4, max_tries: int = 2000):
    """A random ``(W, V, Delta^V_x, f)`` with ``V = H(W)`` and strict ``f``.

    Rejection sampling over random complexes, structures and maps until the
    transferred x-structure exists.
    """
    from .field import F2
    F = F or F2
    rng = random.Random(seed)
    D = disk_presentation(F, p, k)
    for _ in range(max_tries):
        dims = [rng.randint(0, 2) for _ in range(2)]
        if sum(dims) == 0 or sum(dims) > max_dim:
            continue
        basis = {0: [f"a{j}" for j in range(dims[0])], 1: [f"b{j}" for j in range(dims[1])]}
        basis = {d: b for d, b in basis.items() if b}
        dmap = {}
        for b in basis.get(1, []):
            v = {a: F.one for a in basis.get(0, []) if rng.random() < 0.5}
            if v:
                dmap[b] = v
        Wc = ChainComplex(F, GradedVectorSpace(basis), dmap)
        co = CoendomorphismOperad(Wc, p)
        ys = co.basis(p, k)
        Wy = {y: F.one for y in ys if rng.random() < 0.4}
        Wx = co.d_vec(p, Wy)
        Hh = homology(Wc)
        V = ChainComplex(F, Hh.space, {}, check=False)
        # f: classes of cycles, random on the rest; keep only quasi-isos
        ims = {}
        for w in Wc.labels():
            d = Wc.space.degree_of[w]
            targets = V.space.basis.get(d, [])
            v = {t: F.one for t in targets if rng.random() < 0.5}
            if v:
                ims[w] = v
        f = LinearMap(F, Wc.space, V.space, 0, ims)
        if not is_chain_map(f, Wc, V) or not is_quasi_iso(f, Wc, V):
            continue
        # solve Delta^V_x f = f^p Delta^W_x for Delta^V_x
        coV = CoendomorphismOperad(V, p)
        src = coV.basis(p, k - 1)
        cols = {x: precompose(F, {x: F.one}, f) for x in src}
        want = postcompose_tensor(F, Wx, tensor_power_map(F, f, p))
        sol = linalg.solve(F, cols, src, want)
        if sol is None:
            continue
        Wcoal = CellCoalgebra(D, Wc, {"x": Wx, "y": Wy})
        return Wcoal, V, sol, f
    raise RuntimeError("no instance found")


# ---------------------------------------------------------------------------
# devissage: counts and random round trips


def _all_vectors(F: Field, labels: list):
    for coeffs in product(F.elements(), repeat=len(labels)):
        yield {x: c for x, c in zip(labels, coeffs) if c}


def enumerate_cell_coalgebras(P: QuasiFreePresentation, C: ChainComplex) -> list:
    """Every structure over ``P`` on ``C``, by brute force over all generator
    cooperations (finite fields only).  Each generator is tested as soon as
    the earlier ones are fixed, since its condition only involves those."""
    F = C.field
    partial = [{}]
    for j, g in enumerate(P.generators):
        Pj = QuasiFreePresentation(F, P.generators[:j + 1])
        space = cooperation_space(C, g["arity"], g["degree"])
        nxt = []
        for gens in partial:
            for vec in _all_vectors(F, space):
                trial = dict(gens)
                trial[g["name"]] = vec
                D = CellCoalgebra(Pj, C, trial)
                lhs = D.coend.d_vec(g["arity"], vec)
                rhs = D.evaluate(g["arity"], g["boundary"])
                if lhs == rhs:
                    nxt.append(trial)
        partial = nxt
    return [CellCoalgebra(P, C, gens) for gens in partial]


def pullback_count(P: QuasiFreePresentation, C: ChainComplex) -> int:
    """Number of structures over ``P`` on ``C`` computed as the pullback of
    ``Coalg(P_alpha) -> Coalg(T(S)) <- Coalg(T(D))`` along the last cell: for
    each structure over ``P_alpha``, the fibre is the affine space of
    ``Delta_y`` with ``d(Delta_y) = boundary``."""
    F = C.field
    g = P.generators[-1]
    Palpha = QuasiFreePresentation(F, P.generators[:-1])
    total = 0
    for Ca in enumerate_cell_coalgebras(Palpha, C):
        target = Ca.evaluate(g["arity"], g["boundary"])
        sol = boundary_solutions(C, g["arity"], g["degree"], target)
        if sol is not None:
            total += F.characteristic ** len(sol[1])
    return total


def random_complex(rng: random.Random, F: Field, degrees: list, max_dim: int) -> ChainComplex:
    """A random complex with basis in the given degrees and total dimension <= max_dim."""
    while True:
        basis: dict = {}
        n = rng.randint(1, max_dim)
        for j in range(n):
            basis.setdefault(rng.choice(degrees), []).append(f"c{j}")
        # d = composite of random maps chosen so that d^2 = 0: use a random
        # filtration-style d from degree d to d-1 and retry on failure
        dmap: dict = {}
        for dd, labs in basis.items():
            for x in labs:
                for y in basis.get(dd - 1, []):
                    if rng.random() < 0.4:
                        dmap.setdefault(x, {})[y] = F(rng.randint(1, max(F.characteristic - 1, 1)))
        try:
            return ChainComplex(F, GradedVectorSpace(basis), dmap)
        except ValueError:
            continue


def random_cell_instance(seed: int, p: int, k: int, F: Field | None = None, max_dim: int = 3,
                         max_tries: int = 500):
    """``(C_alpha, Delta_y)``: a ``T(S^{k-1}(p))``-coalgebra and a cooperation of
    degree ``k`` filling the boundary ``x``."""
    from .field import F2
    F = F or F2
    rng = random.Random(seed)
    S = sphere_presentation(F, p, k)
    for _ in range(max_tries):
        C = random_complex(rng, F, list(range(k - 2, k + 2)), max_dim)
        cycles = boundary_solutions(C, p, k - 1, {})
        x = _random_point(rng, F, cycles)
        sol = boundary_solutions(C, p, k, x)
        if sol is None:
            continue
        y = _random_point(rng, F, sol)
        return CellCoalgebra(S, C, {"x": x}), y
    raise RuntimeError("no instance found")


def _random_point(rng: random.Random, F: Field, sol) -> dict:
    x0, ker = sol
    v = dict(x0)
    for kv in ker:
        c = F(rng.randint(0, max(F.characteristic - 1, 1)) if F.characteristic else rng.randint(-2, 2))
        linalg.axpy(F, v, c, kv)
    return v


# ---------------------------------------------------------------------------
# A-infinity examples and negative controls


def truncated_polynomial_dual(F: Field, n: int = 3, t_degree: int = 1, counital: bool = False) -> AInftyCoalgebra:
    """Dual of ``k[t]/t^n`` as a strict coalgebra: ``x_k`` dual to ``t^k`` in degree
    ``k * t_degree``, ``Delta_2(x_k) = sum_{i+j=k} x_i (x) x_j``.  Without the
    counit only ``i, j >= 1`` occur (dual of the augmentation ideal)."""
    lo = 0 if counital else 1
    basis: dict = {}
    for k in range(lo, n):
        basis.setdefault(k * t_degree, []).append(f"x{k}")
    C = ChainComplex(F, GradedVectorSpace(basis), {})
    d2: dict = {}
    for k in range(lo, n):
        for i in range(lo, k - lo + 1):
            j = k - i
            if j >= lo:
                linalg.axpy(F, d2, F.one, {(f"x{k}", (f"x{i}", f"x{j}")): F.one})
    return AInftyCoalgebra(C, {2: d2})


def ainfty_perturbation_terms(A: AInftyCoalgebra, N: int, involving=None) -> list:
    """Degree-correct elementary terms ``(n, (x, t))`` with ``2 <= n < N``.

    ``Delta_N`` itself is left alone: through relation ``N`` it only meets
    ``Delta_1``.  With ``involving`` only terms mentioning that basis label
    are kept."""
    out = []
    for n in range(2, N):
        for key in CoendomorphismOperad(A.carrier, n).basis(n, n - 2):
            if involving is None or involving == key[0] or involving in key[1]:
                out.append((n, key))
    return out


def perturb_ainfty(A: AInftyCoalgebra, seed: int, N: int = 4, involving=None) -> tuple:
    """Add a random nonzero multiple of a random degree-correct elementary term.

    Returns ``(perturbed, (n, term, coefficient))``."""
    rng = random.Random(seed)
    F = A.field
    terms = ainfty_perturbation_terms(A, N, involving)
    if not terms:
        raise ValueError("no degree-correct terms to perturb")
    n, key = rng.choice(terms)
    c = F(rng.randint(1, F.characteristic - 1)) if F.characteristic else F(rng.choice([-2, -1, 1, 2]))
    maps = {m: dict(v) for m, v in A.maps.items()}
    linalg.axpy(F, maps.setdefault(n, {}), c, {key: F.one})
    return AInftyCoalgebra(A.carrier, maps), (n, key, c)
