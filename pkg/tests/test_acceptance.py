"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` for just the summary
lines, or through pytest, where the lines also appear in the terminal summary.
"""

import collections
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from dgcoalg.barratt_eccles import (BarrattEcclesOperad, alexander_whitney, check_table_reduction,
                                    e_coalgebra_structure)
from dgcoalg.chain_complex import ChainComplex, GradedVectorSpace, LinearMap, betti_numbers, is_chain_map
from dgcoalg.coalgebra import (CellCoalgebra, cooperation_space, disk_presentation, enumerate_cell_coalgebras,
                               glue_cell_coalgebra, lift_cell_structure, perturb_ainfty, pullback_count,
                               random_cell_instance, random_lift_instance, restrict_cells, sphere_presentation,
                               truncated_polynomial_dual, verify_ainfty, verify_pcoalgebra)
from dgcoalg.dual_schur import cofree_coalgebra, universal_property_counts
from dgcoalg.field import F2, QQ
from dgcoalg.operad import AssociativeOperad, CoendomorphismOperad, EndomorphismOperad, check_operad
from dgcoalg.simplicial import (BUILTINS, RP2_FACETS, boundary_simplex, builtin, minimal_circle,
                                normalized_chains, rp2, simplex_id, standard_simplex, torus)
from dgcoalg.steenrod import cohomology, cup, steenrod_square, structure
from dgcoalg.symmetric_sequence import (compose_product, sphere_sequence, unit_iso_left, unit_iso_right,
                                        unit_sequence, zero_sequence)
from dgcoalg.trees import ainfty_presentation, free_operad

from oracles import aw_oracle, betti_from_matrices, complex_betti, composite_dim, free_binary_dim
from test_chain_complex import random_complex
from test_dual_schur import complexes
from test_symmetric_sequence import random_sequence

FIELDS = [F2, QQ]
RESULTS: dict = {}


def record(n: int, title: str, ok: bool, detail: str = ""):
    RESULTS[n] = (ok, title, detail)
    line = f"criterion {n:2d} [{'PASS' if ok else 'FAIL'}] {title}" + (f" ({detail})" if detail else "")
    print(line)
    return ok


def summary_lines() -> list:
    return [f"criterion {n:2d} [{'PASS' if ok else 'FAIL'}] {title}" + (f" ({detail})" if detail else "")
            for n, (ok, title, detail) in sorted(RESULTS.items())]


# ---------------------------------------------------------------------------
# 1. axiom pack


def _operads(F):
    V = ChainComplex(F, GradedVectorSpace({0: ["a"], 1: ["b"], 2: ["c"]}), {"c": {"b": F.one}})
    return [EndomorphismOperad(V, 3), CoendomorphismOperad(V, 3), AssociativeOperad(F, 4),
            free_operad(sphere_sequence(F, 0, 2), 4), ainfty_presentation(F, 4).realize(4),
            BarrattEcclesOperad(F, 3, 2)]


def _cell_types():
    for p in (1, 2, 3):
        for k in range(-2, 3):
            # unary cells with a generator of degree 0 are infinite in each degree
            if p == 1 and k in (0, 1):
                continue
            yield p, k


def criterion_1():
    t0 = time.time()
    counts = collections.Counter()
    fails = collections.Counter()
    rng = random.Random(2024)
    for F in FIELDS:
        for _ in range(50):
            C = random_complex(rng, F, maxdim=3)
            ok = all(not C.differential(C.differential({x: F.one})) for x in C.labels())
            counts["complex d^2=0"] += 1
            fails["complex d^2=0"] += not ok
        for _ in range(50):
            M = random_sequence(rng, F)
            counts["sequence Coxeter"] += 1
            fails["sequence Coxeter"] += bool(M.check())
        for j, P in enumerate(_operads(F)):
            R = check_operad(P, samples=60, seed=j)
            for c, (a, b, _) in R.checks.items():
                counts[f"operad {c}"] += a + b
                fails[f"operad {c}"] += b
        for p, k in _cell_types():
            for s in range(2):
                Ca, y = random_cell_instance(s, p, k, F)
                D = glue_cell_coalgebra(Ca, y, p, k, [(1, ["x"] + list(range(1, p + 1)))], name="y")
                R = verify_pcoalgebra(D.as_pcoalgebra(None, (-6, 6)), samples=60, seed=s)
                for c, (a, b, _) in R.checks.items():
                    counts[f"coalgebra {c}"] += a + b
                    fails[f"coalgebra {c}"] += b
        for X in (standard_simplex(2), boundary_simplex(2)):
            R = verify_pcoalgebra(e_coalgebra_structure(X, F, 3, 2), samples=60)
            for c, (a, b, _) in R.checks.items():
                counts[f"coalgebra {c}"] += a + b
                fails[f"coalgebra {c}"] += b
    elapsed = time.time() - t0
    thin = sorted(c for c in counts if counts[c] < 50)
    bad = sorted(c for c in fails if fails[c])
    ok = not thin and not bad and elapsed < 60
    detail = f"{len(counts)} axioms, min {min(counts.values())} instances, {elapsed:.1f}s"
    if thin:
        detail += f", under 50: {thin}"
    if bad:
        detail += f", failing: {bad}"
    return ok, detail


def test_criterion_1_axiom_pack():
    ok, detail = criterion_1()
    assert record(1, "axiom pack", ok, detail), detail


# ---------------------------------------------------------------------------
# 2. composition product


def criterion_2():
    problems = []
    for F in FIELDS:
        rng = random.Random(11)
        I = unit_sequence(F)
        for _ in range(20):
            M = random_sequence(rng, F)
            L, R = compose_product(I, M, 4), compose_product(M, I, 4)
            for n in range(5):
                if not (L.dims(n) == M.dims(n) == R.dims(n)):
                    problems.append(("unit dims", n))
                for iso in (unit_iso_left(L, n), unit_iso_right(R, n)):
                    if sorted(map(repr, iso.values())) != sorted(map(repr, M.component(n).labels())):
                        problems.append(("unit iso", n))
        for _ in range(20):
            M, N, P = (random_sequence(rng, F) for _ in range(3))
            left = compose_product(compose_product(M, N, 4), P, 4)
            right = compose_product(M, compose_product(N, P, 4), 4)
            if any(left.dims(n) != right.dims(n) for n in range(5)):
                problems.append(("associativity", M, N, P))
        d = compose_product(sphere_sequence(F, 0, 2), sphere_sequence(F, 0, 2), 4).dims(4)
        if d != {0: 24} or composite_dim({2: 2}, {2: 2}, 4) != 24:
            problems.append(("S0(2) o S0(2)", d))
    return not problems, f"20 unit checks, 20 triples per field, arity 4 dim 24; problems: {len(problems)}"


def test_criterion_2_composition_product():
    ok, detail = criterion_2()
    assert record(2, "composition product", ok, detail), detail


# ---------------------------------------------------------------------------
# 3. free operad


def criterion_3():
    dims, dd = [], True
    for F in FIELDS:
        T = free_operad(sphere_sequence(F, 0, 2), 3)
        dims.append([T.dim(n) for n in (1, 2, 3)])
        dd = dd and ainfty_presentation(F, 4).realize(4).check_d_squared().passed
    oracle = [free_binary_dim(n, regular=True) for n in (1, 2, 3)]
    ok = oracle == [1, 2, 12] and all(d == oracle for d in dims) and dd
    return ok, f"dims {dims[0]}, oracle {oracle}, A-infinity d^2=0 through arity 4: {dd}"


def test_criterion_3_free_operad():
    ok, detail = criterion_3()
    assert record(3, "free operad", ok, detail), detail


# ---------------------------------------------------------------------------
# 4. A-infinity relations


def criterion_4():
    F = F2
    reduced = truncated_polynomial_dual(F, 3)
    full = truncated_polynomial_dual(F, 3, counital=True)
    base_ok = verify_ainfty(reduced, 4).passed and verify_ainfty(full, 4).passed
    caught = 0
    for seed in range(10):
        B, _ = perturb_ainfty(full, seed, 4, involving="x0")
        R = verify_ainfty(B, 4)
        caught += (not R.passed) and bool(R.witnesses)
    ok = base_ok and caught == 10
    return ok, f"dual of F2[t]/t^3 passes through N=4: {base_ok}; perturbations caught {caught}/10"


def test_criterion_4_ainfty():
    ok, detail = criterion_4()
    assert record(4, "A-infinity relation suite", ok, detail), detail


# ---------------------------------------------------------------------------
# 5. cofree coalgebra


def criterion_5():
    parts = []
    for F in FIELDS:
        V = ChainComplex(F, GradedVectorSpace({0: ["a"], 1: ["b"], 2: ["c"]}), {"b": {"a": F.one}})
        res = cofree_coalgebra(free_operad(zero_sequence(F, 1), 2), V, 2)
        eps = LinearMap(F, res.complex.space, V.space, 0, res.counit)
        parts.append(res.complex.dims() == V.dims() and eps.rank() == V.dim()
                     and is_chain_map(eps, res.complex, V))
    unit_ok = all(parts)
    P = free_operad(sphere_sequence(F2, 1, 1), 1, (0, 5))
    unit_c = ChainComplex(F2, GradedVectorSpace({0: ["v"]}), {})
    window_dims = cofree_coalgebra(P, unit_c, 1, (-5, 0)).complex.dims()
    window_ok = window_dims == {d: 1 for d in range(-5, 1)}
    pres = sphere_presentation(F2, 1, 2)
    total = bij = 0
    for V in complexes(2, (-1, 0)):
        if not V.dim():
            continue
        for Cc in complexes(2, (-1, 0, 1)):
            slots = cooperation_space(Cc, 1, 1)
            for mask in range(2 ** len(slots)):
                vec = {s: 1 for j, s in enumerate(slots) if mask >> j & 1}
                cell = CellCoalgebra(pres, Cc, {"x": vec})
                if not cell.generator_report().passed:
                    continue
                C = cell.as_pcoalgebra(1, (0, 5))
                res = cofree_coalgebra(C.operad, V, 1, (-6, 1))
                r = universal_property_counts(C, res, V)
                total += 1
                bij += r["bijective"] and r["coalgebra_maps"] == r["chain_maps"]
    ok = unit_ok and window_ok and total > 0 and bij == total
    return ok, (f"L(I)(V)=V: {unit_ok}; window dims {sorted(window_dims.items())}; "
                f"hom-set bijection {bij}/{total} instances")


def test_criterion_5_cofree():
    ok, detail = criterion_5()
    assert record(5, "cofree coalgebra", ok, detail), detail


# ---------------------------------------------------------------------------
# 6. devissage


def criterion_6():
    n = bad = 0
    for F in FIELDS:
        for p in (1, 2, 3):
            for k in range(-2, 3):
                for seed in range(20):
                    Ca, y = random_cell_instance(seed, p, k, F)
                    bd = [(1, ["x"] + list(range(1, p + 1)))]
                    D = glue_cell_coalgebra(Ca, y, p, k, bd, name="y")
                    ok1 = restrict_cells(D, 1) == Ca
                    ok2 = glue_cell_coalgebra(restrict_cells(D, 1), D.generators["y"], p, k, bd, name="y") == D
                    n += 1
                    bad += not (ok1 and ok2)
    presentations = [ainfty_presentation(F2, 3), disk_presentation(F2, 2, 1), sphere_presentation(F2, 2, 1)]
    m = mismatched = 0
    for P in presentations:
        for C in complexes(2, (-1, 0, 1)):
            m += 1
            mismatched += pullback_count(P, C) != len(enumerate_cell_coalgebras(P, C))
    ok = bad == 0 and mismatched == 0
    return ok, f"round trips {n - bad}/{n}; pullback counts {m - mismatched}/{m}"


def test_criterion_6_devissage():
    ok, detail = criterion_6()
    assert record(6, "devissage round trip", ok, detail), detail


# ---------------------------------------------------------------------------
# 7. isofibration lift


def criterion_7():
    good = 0
    for seed in range(10):
        W, V, dx, f = random_lift_instance(seed, F2)
        if W.carrier.dim() > 4:
            continue
        res = lift_cell_structure(W, V, dx, f, 2, 1)
        checks = res.report.checks
        strict = all(checks.get(c, [0, 1])[1] == 0 and checks.get(c, [0])[0] > 0
                     for c in ("restriction strict", "homotopy", "boundary"))
        good += strict and res.report.passed and verify_pcoalgebra(res.structure.as_pcoalgebra(3)).passed
    return good == 10, f"{good}/10 seeded lifts verified"


def test_criterion_7_lift():
    ok, detail = criterion_7()
    assert record(7, "isofibration lift", ok, detail), detail


# ---------------------------------------------------------------------------
# 8. chains functor


def criterion_8():
    aw_ok = True
    for F in FIELDS:
        for n in range(4):
            X = standard_simplex(n)
            S = e_coalgebra_structure(X, F, 2, 0)
            for x in X.all_simplices():
                verts = tuple(int(c) for c in x[1:-1])
                want = {(simplex_id(a), simplex_id(b)): F.one for a, b in aw_oracle(verts)}
                aw_ok = aw_ok and S.apply(2, ((1, 2),), x) == want == alexander_whitney(X, x, F)
    verified = {}
    for X in (boundary_simplex(2), rp2(), torus()):
        verified[X.name] = verify_pcoalgebra(e_coalgebra_structure(X, F2, 3, 4)).passed
    tr_ok = all(check_table_reduction(2, 4, F).passed and check_table_reduction(3, 2, F).passed
                for F in FIELDS)
    ok = aw_ok and all(verified.values()) and tr_ok
    return ok, f"AW on Delta^n n<=3: {aw_ok}; verified {verified}; table reduction chain map: {tr_ok}"


def test_criterion_8_chains_functor():
    ok, detail = criterion_8()
    assert record(8, "chains functor", ok, detail), detail


# ---------------------------------------------------------------------------
# 9. Steenrod squares


def criterion_9():
    t0 = time.time()
    X = rp2()
    H = cohomology(X, F2)
    (x,) = H.generators(1)
    sq1 = not steenrod_square(X, 1, x).is_zero
    n = bad = 0
    for name in BUILTINS:
        Y = builtin(name)
        HY, S = cohomology(Y, F2), structure(Y)
        for q in range(Y.dimension + 1):
            for g in HY.generators(q):
                n += 1
                top = steenrod_square(Y, q, g, S, HY).cochain == cup(S, g, g)
                high = all(steenrod_square(Y, i, g, S, HY).is_zero for i in range(q + 1, q + 4))
                bad += not (top and high)
    elapsed = time.time() - t0
    ok = sq1 and bad == 0 and n > 0 and elapsed < 120
    return ok, f"Sq^1 on RP^2 nonzero: {sq1}; {n - bad}/{n} classes; {elapsed:.1f}s"


def test_criterion_9_steenrod():
    ok, detail = criterion_9()
    assert record(9, "Steenrod validation", ok, detail), detail


# ---------------------------------------------------------------------------
# 10. homology goldens


def _torus_facets():
    out = []
    for i in range(7):
        out += [(i, (i + 1) % 7, (i + 3) % 7), (i, (i + 2) % 7, (i + 3) % 7)]
    return out


def criterion_10():
    cases = [("Delta^0", standard_simplex(0), [(0,)]),
             ("dDelta^2", boundary_simplex(2), [(0, 1), (1, 2), (0, 2)]),
             ("RP^2", rp2(), RP2_FACETS),
             ("T^2", torus(), _torus_facets())]
    got = {}
    ok = True
    for F, p in ((F2, 2), (QQ, None)):
        for name, X, facets in cases:
            b = {d: v for d, v in betti_numbers(normalized_chains(X, F)).items() if v}
            want = {d: v for d, v in complex_betti(facets, p).items() if v}
            ok = ok and b == want
            got[(name, str(F))] = b
        # one vertex, one loop: d(e) = v - v = 0
        want = {d: v for d, v in betti_from_matrices({0: 1, 1: 1}, {1: [[0]]}, p).items() if v}
        b = {d: v for d, v in betti_numbers(normalized_chains(minimal_circle(), F)).items() if v}
        ok = ok and b == want
    rp2_q = {d: v for d, v in betti_numbers(normalized_chains(rp2(), QQ)).items() if v}
    rp2_2 = {d: v for d, v in betti_numbers(normalized_chains(rp2(), F2)).items() if v}
    return ok, f"RP^2 over F2 {rp2_2}, over Q {rp2_q}; 5 spaces x 2 fields"


def test_criterion_10_homology():
    ok, detail = criterion_10()
    assert record(10, "homology goldens", ok, detail), detail


CRITERIA = [(1, "axiom pack", criterion_1), (2, "composition product", criterion_2),
            (3, "free operad", criterion_3), (4, "A-infinity relation suite", criterion_4),
            (5, "cofree coalgebra", criterion_5), (6, "devissage round trip", criterion_6),
            (7, "isofibration lift", criterion_7), (8, "chains functor", criterion_8),
            (9, "Steenrod validation", criterion_9), (10, "homology goldens", criterion_10)]


if __name__ == "__main__":
    failed = 0
    for n, title, fn in CRITERIA:
        try:
            ok, detail = fn()
        except Exception as e:  # report and keep going
            ok, detail = False, f"{type(e).__name__}: {e}"
        failed += not record(n, title, ok, detail)
    sys.exit(1 if failed else 0)
