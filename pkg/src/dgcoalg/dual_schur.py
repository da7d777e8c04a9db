"""Truncated dual Schur functors, the lax structure ``phi``, cofree
coalgebras as a pullback and the cofree comonad recursion.

An element of ``S^c(M)(V) = prod_n [M(n), V^{(x)n}]^{S_n}`` is a dict keyed
``(n, mu, t)``: the map sending the basis element ``mu`` of ``M(n)`` to the
pure tensor ``t`` (a tuple of labels of ``V``).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Mapping

from . import linalg
from . import permutations as perm
from .chain_complex import (ChainComplex, GradedVectorSpace, LinearMap, direct_sum, label_key,
                            tensor_differential, tensor_power)
from .field import Field
from .operad import Operad, Report
from .symmetric_sequence import (CompositionProduct, SymmetricSequence, TruncationError,
                                 compose_product)


def place_transposition(F: Field, deg: Mapping, t: tuple, i: int):
    """``s_i`` acting on a pure tensor: swap factors i, i+1 with the Koszul sign."""
    a, b = t[i - 1], t[i]
    return t[:i - 1] + (b, a) + t[i + 1:], F.sign(deg[a] * deg[b])


def place_permutation(F: Field, deg: Mapping, t: tuple, s: tuple):
    """``s . t``: factor ``j`` moves to position ``s(j)``; returns (tuple, sign)."""
    n = len(t)
    out = [None] * n
    for j in range(n):
        out[s[j] - 1] = t[j]
    sinv = perm.inverse(s)
    order = [sinv[p] - 1 for p in range(n)]
    e = perm.koszul_sign([deg[x] for x in t], order)
    return tuple(out), F.sign(e)


@dataclass
class DualSchurValue:
    """``S^c(M)(V)`` as a chain complex with the invariant maps it stands for."""

    M: SymmetricSequence
    V: ChainComplex
    max_arity: int
    window: tuple | None
    complex: ChainComplex
    vectors: dict                    # basis label -> element dict keyed (n, mu, t)
    echelon: dict = dc_field(default_factory=dict)   # degree -> Echelon of vectors

    def coordinates(self, elem: Mapping):
        """Coordinates of an element in the basis, or None if outside."""
        out: dict = {}
        by_deg: dict = {}
        for key, c in elem.items():
            by_deg.setdefault(self.element_degree(key), {})[key] = c
        for d, v in by_deg.items():
            E = self.echelon.get(d)
            if E is None:
                return None
            co = E.coordinates(v)
            if co is None:
                return None
            piv = self._pivot_label[d]
            for p, c in co.items():
                out[piv[p]] = c
        return out

    def element_degree(self, key) -> int:
        n, mu, t = key
        return sum(self.V.space.degree_of[x] for x in t) - self.M.component(n).degree_of(mu)

    def evaluate(self, label_or_elem, n: int, mu) -> dict:
        """``f(mu)`` as a vector of tuples."""
        elem = self.vectors[label_or_elem] if not isinstance(label_or_elem, dict) else label_or_elem
        return {t: c for (m, nu, t), c in elem.items() if m == n and nu == mu}


def _tensor_labels_of_degree(V: ChainComplex, n: int, deg: int, cache: dict) -> list:
    key = (n, deg)
    if key not in cache:
        T = cache.get(("T", n))
        if T is None:
            T = tensor_power(V, n)
            cache[("T", n)] = T
        cache[key] = T.space.basis.get(deg, [])
    return cache[key]


def _action_transpose(M: SymmetricSequence, n: int, i: int) -> dict:
    """For each ``mu``: ``{nu: coefficient of mu in s_i nu}``."""
    return M.actions[n][i - 1].transpose_images()


def dual_schur_apply(M: SymmetricSequence, V: ChainComplex, A: int, window: tuple | None = None,
                     label: str = "f") -> DualSchurValue:
    """Strict invariants of ``[M(n), V^{(x)n}]`` for ``n <= A``, as a chain complex."""
    F = M.field
    if A > M.max_arity and not M.complete:
        raise TruncationError(f"M is only known up to arity {M.max_arity}")
    deg = V.space.degree_of
    cache: dict = {}
    per_deg: dict = {}          # degree -> list of hom keys
    for n in range(0, A + 1):
        Mn = M.component(n)
        if not Mn.dim():
            continue
        Vdegs = sorted(set(sum(c) for c in product(V.space.degrees(), repeat=n))) if n else [0]
        for mu in Mn.labels():
            a = Mn.degree_of(mu)
            for b in Vdegs:
                d = b - a
                if window is not None and not (window[0] <= d <= window[1]):
                    continue
                for t in _tensor_labels_of_degree(V, n, b, cache):
                    per_deg.setdefault(d, []).append((n, mu, t))
    vectors: dict = {}
    basis: dict = {}
    echelons: dict = {}
    pivot_label: dict = {}
    for d in sorted(per_deg):
        keys = per_deg[d]
        cols = {}
        for key in keys:
            n, mu, t = key
            col: dict = {}
            for i in range(1, n):
                # (s_i f)(nu) = s_i . f(s_i nu): e_{mu,t} contributes e_{nu, s_i t}
                tt, sg = place_transposition(F, deg, t, i)
                for nu, c in _action_transpose(M, n, i).get(mu, {}).items():
                    linalg.axpy(F, col, F.mul(sg, c), {(i, (n, nu, tt)): F.one})
                linalg.axpy(F, col, F.neg(F.one), {(i, key): F.one})
            cols[key] = col
        ker = linalg.kernel(F, cols, keys)
        E = linalg.Echelon(F, {k: j for j, k in enumerate(keys)}.__getitem__)
        labs = []
        for j, v in enumerate(ker):
            lab = (label, d, j)
            vectors[lab] = v
            labs.append(lab)
            E.add(v)
        # pivots of a reduced kernel basis are the least keys of each vector
        pl = {}
        for lab in labs:
            v = vectors[lab]
            pl[min(v, key=E.key)] = lab
        if labs:
            basis[d] = labs
            echelons[d] = E
            pivot_label[d] = pl
    space = GradedVectorSpace(basis)
    out = DualSchurValue(M, V, A, window, None, vectors, echelons)
    out._pivot_label = pivot_label
    dmap = {}
    transposes: dict = {}
    for lab, v in vectors.items():
        dv = hom_element_differential(M, V, v, transposes)
        if dv and window is not None:
            # brutal truncation: the part falling below the window is dropped
            dv = {key: c for key, c in dv.items() if out.element_degree(key) >= window[0]}
        if dv:
            co = out.coordinates(dv)
            if co is None:
                raise TruncationError("differential leaves the window; widen it")
            if co:
                dmap[lab] = co
    out.complex = ChainComplex(F, space, dmap)
    return out


def hom_element_differential(M: SymmetricSequence, V: ChainComplex, elem: Mapping,
                             transposes: dict | None = None) -> dict:
    """``D f = d_V f - (-1)^{|f|} f d_M`` on an element keyed ``(n, mu, t)``."""
    F = M.field
    deg = V.space.degree_of
    transposes = {} if transposes is None else transposes
    out: dict = {}
    for (n, mu, t), c in elem.items():
        Mn = M.component(n)
        fd = sum(deg[x] for x in t) - Mn.degree_of(mu)
        for u, e in tensor_differential(V, t).items():
            linalg.axpy(F, out, F.mul(c, e), {(n, mu, u): F.one})
        # (f d)(nu) = f(d nu): nu with mu in d(nu)
        s = F.neg(F.sign(fd))
        if n not in transposes:
            transposes[n] = Mn.d.transpose_images()
        for nu, e in transposes[n].get(mu, {}).items():
            linalg.axpy(F, out, F.mul(F.mul(s, c), e), {(n, nu, t): F.one})
    return out


def dual_schur_map(g: LinearMap, src: DualSchurValue, tgt: DualSchurValue) -> LinearMap:
    """``S^c(M)(g)`` for a degree-0 map ``g: V -> V'``, i.e. ``f -> g^{(x)n} f``."""
    F = g.field
    ims = {}
    for lab, elem in src.vectors.items():
        img: dict = {}
        for (n, mu, t), c in elem.items():
            for tt, e in _tensor_image(F, g, t).items():
                linalg.axpy(F, img, F.mul(c, e), {(n, mu, tt): F.one})
        co = tgt.coordinates(img)
        if co is None:
            raise TruncationError("image is not an invariant element of the target")
        if co:
            ims[lab] = co
    return LinearMap(F, src.complex.space, tgt.complex.space, 0, ims)


# ---------------------------------------------------------------------------
# lax monoidal structure


def _evaluate_on_composite(F: Field, MN: CompositionProduct, lab, fval: Mapping, W: DualSchurValue,
                           Vdeg: Mapping) -> dict:
    """``phi(f)`` at a composition-product basis label ``(mu; nu_1..nu_k; S)``.

    ``fval`` is ``f(mu)`` as ``{(w_1..w_k): c}`` with ``w_j`` basis labels of
    ``W = S^c(N)(V)``.
    """
    mu, nus, blocks = lab
    k = len(nus)
    N = MN.N
    ndeg = [N.component(len(b)).degree_of(nu) for b, nu in zip(blocks, nus)]
    out: dict = {}
    for ws, c in fval.items():
        # (w_1 (x) .. (x) w_k)(nu_1 (x) .. (x) nu_k), Koszul sign moving w_j past nu_i, i < j
        wdeg = [W.complex.degree_of(w) for w in ws]
        e = 0
        for j in range(k):
            e += wdeg[j] * sum(ndeg[:j])
        pieces = []
        for w, b, nu in zip(ws, blocks, nus):
            pieces.append(W.evaluate(w, len(b), nu))
        acc = {(): F.mul(c, F.sign(e))}
        for pc in pieces:
            new: dict = {}
            for t0, c0 in acc.items():
                for t1, c1 in pc.items():
                    linalg.axpy(F, new, F.mul(c0, c1), {t0 + t1: F.one})
            acc = new
        # block order -> leaf labels
        rho = tuple(x for b in blocks for x in b)
        for t, cc in acc.items():
            tt, sg = place_permutation(F, Vdeg, t, rho)
            linalg.axpy(F, out, F.mul(cc, sg), {tt: F.one})
    return out


def lax_structure(M: SymmetricSequence, N: SymmetricSequence, V: ChainComplex, A: int,
                  window: tuple | None = None, inner_window: tuple | None = None):
    """``phi: S^c(M)(S^c(N)(V)) -> S^c(M o N)(V)`` as a LinearMap.

    Returns ``(phi, source, target, MN)``; the image of each basis element
    is computed as an element keyed ``(n, lab, t)`` and expressed in the
    target basis (raising if it is not invariant).
    """
    F = M.field
    W = dual_schur_apply(N, V, A, inner_window)
    S = dual_schur_apply(M, W.complex, A, window, label="g")
    MN = compose_product(M, N, A)
    T = dual_schur_apply(MN, V, A, window, label="h")
    ims = {}
    for lab, elem in S.vectors.items():
        img = phi_element(F, MN, elem, W, V, A)
        co = T.coordinates(img)
        if co is None:
            raise TruncationError("phi(f) is not an invariant element inside the window")
        if co:
            ims[lab] = co
    phi = LinearMap(F, S.complex.space, T.complex.space, 0, ims)
    return phi, S, T, MN


def phi_element(F: Field, MN: CompositionProduct, elem: Mapping, W: DualSchurValue,
                V: ChainComplex, A: int) -> dict:
    by_mu: dict = {}
    for (k, mu, ws), c in elem.items():
        by_mu.setdefault((k, mu), {})[ws] = c
    out: dict = {}
    for n in range(A + 1):
        for lab in MN.components[n].labels():
            k = len(lab.nus)
            fval = by_mu.get((k, lab.mu))
            if not fval:
                continue
            for t, c in _evaluate_on_composite(F, MN, lab, fval, W, V.space.degree_of).items():
                linalg.axpy(F, out, c, {(n, lab, t): F.one})
    return out


# ---------------------------------------------------------------------------
# cofree coalgebras


def _gamma_label(P: Operad, lab) -> dict | None:
    """Total composite of a composition-product label of ``P o P`` in ``P``."""
    mu, nus, blocks = lab
    k = len(nus)
    parts = [(len(b), {nu: P.field.one}) for b, nu in zip(blocks, nus)]
    g = P.gamma({mu: P.field.one}, k, parts)
    if g is None:
        return None
    n = sum(len(b) for b in blocks)
    rho = tuple(x for b in blocks for x in b)
    return P.act_perm(n, rho, g)


@dataclass
class CofreeResult:
    complex: ChainComplex           # L(P)(V)
    ambient: DualSchurValue         # S^c(P)(V)
    inclusion: dict                 # L label -> element of S^c(P)(V) (keyed (n, mu, t))
    structure: object               # PCoalgebra over P
    provenance: dict
    iterations: int
    counit: dict | None = None       # L label -> vector of V


def cofree_coalgebra(P: Operad, V: ChainComplex, A: int | None = None,
                     window: tuple | None = None) -> CofreeResult:
    """``L(P)(V)`` inside ``S^c(P)(V)`` as the pullback along ``phi`` and ``S^c(gamma)``.

    The pullback is cut down further until the induced cooperations land in
    ``L^{(x)k}`` (the largest sub-coalgebra); the number of extra rounds is
    reported.  Returns the complex together with its P-coalgebra structure.
    """
    from .coalgebra import PCoalgebra
    F = P.field
    A = P.max_arity if A is None else A
    Pseq = P.underlying()
    W = dual_schur_apply(Pseq, V, A, window, label="L")
    S = dual_schur_apply(Pseq, W.complex, A, window, label="g")
    PP = compose_product(Pseq, Pseq, A, P.window)
    # image of phi, with tags to read off preimages
    E = linalg.Echelon(F, lambda k: label_key(k), track=True)
    for lab, elem in S.vectors.items():
        E.add(phi_element(F, PP, elem, W, V, A), {lab: F.one})

    def gamma_star(elem):
        """``x o gamma`` keyed ``(n, composite label, t)``."""
        out: dict = {}
        for n in range(A + 1):
            for lab in PP.components[n].labels():
                g = _gamma_label(P, lab)
                if g is None:
                    raise TruncationError("a composite leaves the operad truncation")
                for p, c in g.items():
                    for (m, mu, t), e in elem.items():
                        if m == n and mu == p:
                            linalg.axpy(F, out, F.mul(c, e), {(n, lab, t): F.one})
        return out

    # pullback: x with gamma_star(x) in im(phi); record the preimage y_x
    labels = W.complex.labels()
    resid_cols = {}
    pre = {}
    for lab in labels:
        z = gamma_star(W.vectors[lab])
        r, t = E.reduce(z, {})
        resid_cols[lab] = r
        # z - sum = r; so for r = 0 the preimage is -t
        pre[lab] = linalg.scale(F, F.neg(F.one), t) if t else {}
    ker = linalg.kernel(F, resid_cols, labels, key=label_key)
    # L as a subspace of W with basis vectors in W-coordinates
    sub = ker
    rounds = 0
    while True:
        coal = _structure_on_subspace(F, P, A, W, S, pre, sub)
        bad_cols = {}
        for j, v in enumerate(sub):
            bad_cols[j] = coal["residuals"][j]
        keep = linalg.kernel(F, bad_cols, list(range(len(sub))))
        if len(keep) == len(sub):
            break
        rounds += 1
        new = []
        for kv in keep:
            vec: dict = {}
            for j, c in kv.items():
                linalg.axpy(F, vec, c, sub[j])
            new.append(vec)
        sub = _rref(F, new, labels)
    # build L
    sub = _rref(F, sub, labels)
    basis: dict = {}
    incl = {}
    for j, v in enumerate(sub):
        d = W.complex.degree_of(next(iter(v)))
        lab = ("L", d, j)
        basis.setdefault(d, []).append(lab)
        incl[lab] = v
    space = GradedVectorSpace(basis)
    Lsub = linalg.Echelon(F, label_key)
    piv = {}
    for lab, v in incl.items():
        Lsub.add(v)
    for lab, v in incl.items():
        piv[min(v, key=label_key)] = lab

    def coords(v):
        co = Lsub.coordinates(v)
        if co is None:
            raise TruncationError("vector outside L")
        return {piv[p]: c for p, c in co.items()}

    dmap = {}
    for lab, v in incl.items():
        dv = W.complex.differential(v)
        if dv:
            dmap[lab] = coords(dv)
    L = ChainComplex(F, space, dmap)
    struct = _structure_on_subspace(F, P, A, W, S, pre, list(incl.values()))
    lab_of = list(incl)

    def coop(n, e):
        out: dict = {}
        for j, lab in enumerate(lab_of):
            for t, c in struct["coops"][j].get((n, e), {}).items():
                tt = tuple(lab_of[i] for i in t)
                linalg.axpy(F, out, c, {(lab, tt): F.one})
        return out
    C = PCoalgebra(P, L, coop, name="cofree")
    provenance = {"max_arity": A, "window": list(window) if window else None,
                  "operad_window": list(P.window) if P.window else None,
                  "refinement_rounds": rounds, "ambient_dims": W.complex.dims(),
                  "dims": L.dims()}
    res = CofreeResult(L, W, incl, C, provenance, rounds)
    res.counit = _counit(F, P, V, incl, W)
    return res


def _rref(F, vecs, order):
    pos = {k: i for i, k in enumerate(order)}
    E = linalg.Echelon(F, pos.__getitem__)
    for v in vecs:
        E.add(v)
    return E.basis()


def _structure_on_subspace(F, P, A, W, S, pre, sub):
    """Cooperations of the subspace ``sub`` of ``W`` and residuals outside ``sub^{(x)k}``.

    ``Delta_mu(x) = y_x(mu)`` where ``phi(y_x) = x o gamma``.
    """
    # echelon of sub in W-coordinates; positions of pivot labels
    E = linalg.Echelon(F, label_key)
    for v in sub:
        E.add(v)
    piv_index = {}
    for j, v in enumerate(sub):
        piv_index[min(v, key=label_key)] = j
    rows = E.rows
    coops = []
    residuals = []
    for v in sub:
        xdeg = W.complex.degree_of(next(iter(v)))
        y: dict = {}
        for lab, c in v.items():
            linalg.axpy(F, y, c, pre[lab])
        # y is a combination of S basis labels; expand to elements keyed (k, mu, ws)
        elem: dict = {}
        for g, c in y.items():
            linalg.axpy(F, elem, c, S.vectors[g])
        by_op: dict = {}
        for (k, mu, ws), c in elem.items():
            by_op.setdefault((k, mu), {})[ws] = c
        cop = {}
        resid: dict = {}
        for (k, mu), vec in by_op.items():
            # coordinates in sub^{(x)k}: read the pivot tuples, then check
            co = {}
            for ws, c in vec.items():
                if all(w in piv_index for w in ws):
                    co[tuple(piv_index[w] for w in ws)] = c
            recon: dict = {}
            for idx, c in co.items():
                t = {(): F.one}
                for i in idx:
                    nt: dict = {}
                    for t0, c0 in t.items():
                        for w, cw in sub[i].items():
                            linalg.axpy(F, nt, F.mul(c0, cw), {t0 + (w,): F.one})
                    t = nt
                linalg.axpy(F, recon, c, t)
            r = linalg.sub(F, vec, recon)
            for ws, c in r.items():
                linalg.axpy(F, resid, c, {(k, mu, ws): F.one})
            if co:
                # currying C -> [P(k), C^k] from P(k) (x) C -> C^k costs (-1)^{|mu||x|}
                sg = F.sign(P.degree_of(k, mu) * xdeg)
                cop[(k, mu)] = {idx: F.mul(sg, c) for idx, c in co.items()}
        coops.append(cop)
        residuals.append(resid)
    return {"coops": coops, "residuals": residuals}


def _counit(F, P, V, incl, W):
    """``epsilon: L -> V``, evaluation at the unit."""
    unit = P.unit
    ims = {}
    for lab, v in incl.items():
        elem: dict = {}
        for w, c in v.items():
            linalg.axpy(F, elem, c, W.vectors[w])
        out: dict = {}
        for (n, mu, t), c in elem.items():
            if n == 1 and mu in unit:
                linalg.axpy(F, out, F.mul(c, unit[mu]), {t[0]: F.one})
        if out:
            ims[lab] = out
    return ims


def cofree_over_endofunctor(M: SymmetricSequence, V: ChainComplex, window: tuple,
                            A: int | None = None, max_iter: int = 64) -> tuple:
    """Iterate ``C^(n) = V x S^c(M)(C^(n-1))`` on the window until dimensions stabilize.

    Returns ``(complex, provenance)``.
    """
    if window is None:
        raise TruncationError("a degree window is required")
    A = M.max_arity if A is None else A
    lo, hi = window
    C = V.truncate(lo, hi)
    history = [C.dims()]
    for it in range(1, max_iter + 1):
        FC = dual_schur_apply(M, C, A, window, label=("c", it)).complex
        C_new = direct_sum(V, FC).truncate(lo, hi)
        history.append(C_new.dims())
        if history[-1] == history[-2]:
            return C_new, {"window": [lo, hi], "iterations": it, "dims_history": history}
        C = C_new
    raise TruncationError("the recursion did not stabilize on the window")


# ---------------------------------------------------------------------------
# universal property by exhaustive enumeration (finite fields)


def degree_zero_maps(A: ChainComplex, B: ChainComplex):
    """Every degree-0 linear map ``A -> B`` (finite fields only)."""
    F = A.field
    slots = [(x, y) for x in A.labels() for y in B.space.basis.get(A.degree_of(x), [])]
    for coeffs in product(F.elements(), repeat=len(slots)):
        ims: dict = {}
        for (x, y), c in zip(slots, coeffs):
            if c:
                ims.setdefault(x, {})[y] = c
        yield LinearMap(F, A.space, B.space, 0, ims, check=False)


def _is_chain(f: LinearMap, A: ChainComplex, B: ChainComplex) -> bool:
    for x in A.labels():
        if f.apply(A.differential({x: A.field.one})) != B.differential(f.image_of(x)):
            return False
    return True


def _tensor_image(F: Field, f: LinearMap, t: tuple) -> dict:
    out = {(): F.one}
    for y in t:
        out = {s + (z,): F.mul(a, b) for s, a in out.items() for z, b in f.image_of(y).items()}
        if not out:
            break
    return out


def is_coalgebra_map(g: LinearMap, C, D, max_arity: int) -> bool:
    """``Delta^D_e g = g^{(x)n} Delta^C_e`` for every basis element ``e`` up to ``max_arity``."""
    F = C.field
    P = C.operad
    for n in range(1, max_arity + 1):
        for e in P.all_basis(n):
            for x in C.carrier.labels():
                lhs: dict = {}
                for y, c in g.image_of(x).items():
                    linalg.axpy(F, lhs, c, D.apply(n, e, y))
                rhs: dict = {}
                for t, c in C.apply(n, e, x).items():
                    linalg.axpy(F, rhs, c, _tensor_image(F, g, t))
                if lhs != rhs:
                    return False
    return True


def universal_property_counts(C, res: CofreeResult, V: ChainComplex, max_arity: int | None = None) -> dict:
    """Count coalgebra maps ``C -> L(P)(V)`` and chain maps ``C -> V``, and check that
    composing with the counit is a bijection between the two sets."""
    F = V.field
    L = res.complex
    A = C.operad.max_arity if max_arity is None else max_arity
    eps = LinearMap(F, L.space, V.space, 0, res.counit or {}, check=False)
    chain_maps = {}
    for f in degree_zero_maps(C.carrier, V):
        if _is_chain(f, C.carrier, V):
            chain_maps[_map_key(f)] = f
    images = []
    n_coalg = 0
    for g in degree_zero_maps(C.carrier, L):
        if _is_chain(g, C.carrier, L) and is_coalgebra_map(g, C, res.structure, A):
            n_coalg += 1
            images.append(_map_key(eps.compose(g)))
    return {"coalgebra_maps": n_coalg, "chain_maps": len(chain_maps),
            "injective": len(set(images)) == len(images),
            "surjective": set(images) == set(chain_maps),
            "bijective": len(set(images)) == len(images) == len(chain_maps) and set(images) == set(chain_maps)}


def _map_key(f: LinearMap) -> tuple:
    return tuple(sorted(((label_key(x), tuple(sorted((label_key(y), c) for y, c in v.items())))
                         for x, v in f.images.items() if v)))
