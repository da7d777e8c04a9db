"""JSON formats for complexes, symmetric sequences, presentations, coalgebras
and simplicial sets, plus short textual specs for built-in objects.

Serialization is canonical: ``dumps(to_json(load(dumps(x))))`` reproduces
the original text.  Loaders raise ``FormatError`` carrying a location path.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .chain_complex import ChainComplex, GradedVectorSpace, LinearMap, label_key, label_str
from .coalgebra import AInftyCoalgebra, CellCoalgebra, truncated_polynomial_dual
from .field import F2, Field
from .simplicial import SimplicialError, SimplicialSet, builtin
from .symmetric_sequence import (SymmetricSequence, character_sequence, direct_sum, disk_sequence,
                                 sphere_sequence, unit_sequence)
from .trees import CellError, QuasiFreePresentation, ainfty_presentation


class FormatError(ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message

    def to_json(self) -> dict:
        return {"error": {"type": "format", "location": self.location, "message": self.message}}


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _need(data, key, where):
    if not isinstance(data, Mapping):
        raise FormatError(where, "expected an object")
    if key not in data:
        raise FormatError(where, f"missing key {key!r}")
    return data[key]


# ---------------------------------------------------------------------------
# fields and scalars


def parse_field(spec) -> Field:
    """``"Q"``, ``"2"``, ``2``, ``{"p": 2}`` or ``"F3"``."""
    if isinstance(spec, str):
        s = spec.strip()
        if s.upper() in ("Q", "QQ"):
            return Field(None)
        if s[:1] in "Ff":
            s = s[1:]
        try:
            return Field(int(s))
        except ValueError:
            raise FormatError("field", f"invalid field spec {spec!r}") from None
    try:
        return Field.from_json(spec)
    except ValueError as e:
        raise FormatError("field", str(e)) from None


def scalar_to_json(c) -> str:
    return str(c)


def scalar_from_json(F: Field, c, where: str):
    try:
        if isinstance(c, str):
            return F(Fraction(c)) if F.characteristic == 0 else F(_mod_fraction(Fraction(c), F))
        return F(c)
    except (ValueError, ZeroDivisionError) as e:
        raise FormatError(where, f"invalid coefficient {c!r}: {e}") from None


def _mod_fraction(q: Fraction, F: Field) -> int:
    p = F.characteristic
    if q.denominator % p == 0:
        raise ValueError(f"denominator divisible by {p}")
    return (q.numerator * pow(q.denominator, -1, p)) % p


# ---------------------------------------------------------------------------
# chain complexes


def _entries(images: Mapping, key_out=label_str) -> list:
    rows = []
    for x in sorted(images, key=label_key):
        for y, c in sorted(images[x].items(), key=lambda kv: label_key(kv[0])):
            rows.append({"from": label_str(x), "to": key_out(y), "coeff": scalar_to_json(c)})
    return rows


def complex_to_json(C: ChainComplex) -> dict:
    return {"field": C.field.to_json(),
            "basis": {str(d): [label_str(x) for x in C.space.basis[d]] for d in C.space.degrees()},
            "d": _entries(C.d.images)}


def complex_from_json(data: Mapping, where: str = "complex", field: Field | None = None) -> ChainComplex:
    F = field or parse_field(_need(data, "field", where))
    raw = _need(data, "basis", where)
    if not isinstance(raw, Mapping):
        raise FormatError(f"{where}.basis", "expected an object {degree: [labels]}")
    basis: dict = {}
    seen: set = set()
    for d, labs in raw.items():
        try:
            dd = int(d)
        except ValueError:
            raise FormatError(f"{where}.basis", f"degree key {d!r} is not an integer") from None
        if not isinstance(labs, list):
            raise FormatError(f"{where}.basis.{d}", "expected a list of labels")
        for j, x in enumerate(labs):
            if not isinstance(x, str):
                raise FormatError(f"{where}.basis.{d}[{j}]", "labels must be strings")
            if x in seen:
                raise FormatError(f"{where}.basis.{d}[{j}]", f"duplicate label {x!r}")
            seen.add(x)
        basis[dd] = list(labs)
    space = GradedVectorSpace(basis)
    images: dict = {}
    for j, row in enumerate(data.get("d", [])):
        loc = f"{where}.d[{j}]"
        a, b = _need(row, "from", loc), _need(row, "to", loc)
        for lab in (a, b):
            if lab not in space.degree_of:
                raise FormatError(loc, f"unknown label {lab!r}")
        if space.degree_of[b] != space.degree_of[a] - 1:
            raise FormatError(loc, f"entry {a!r} -> {b!r} does not have degree -1")
        if "deg" in row and int(row["deg"]) != space.degree_of[a]:
            raise FormatError(loc, f"'deg' {row['deg']} disagrees with the degree of {a!r}")
        c = scalar_from_json(F, row.get("coeff", "1"), loc)
        if c:
            v = images.setdefault(a, {})
            v[b] = F.add(v.get(b, F.zero), c)
    try:
        return ChainComplex(F, space, images)
    except ValueError as e:
        raise FormatError(f"{where}.d", str(e)) from None


def map_to_json(f: LinearMap) -> list:
    return _entries(f.images)


def map_from_json(F: Field, rows: list, A: ChainComplex, B: ChainComplex, degree: int = 0,
                  where: str = "map") -> LinearMap:
    images: dict = {}
    for j, row in enumerate(rows):
        loc = f"{where}[{j}]"
        a, b = _need(row, "from", loc), _need(row, "to", loc)
        if a not in A.space.degree_of or b not in B.space.degree_of:
            raise FormatError(loc, f"unknown label in {a!r} -> {b!r}")
        c = scalar_from_json(F, row.get("coeff", "1"), loc)
        if c:
            images.setdefault(a, {})[b] = c
    try:
        return LinearMap(F, A.space, B.space, degree, images)
    except ValueError as e:
        raise FormatError(where, str(e)) from None


# cooperations: coEnd vectors {(x, t): c}

def coop_to_json(vec: Mapping) -> list:
    rows = []
    for (x, t), c in sorted(vec.items(), key=lambda kv: label_key(kv[0])):
        rows.append({"from": label_str(x), "to": [label_str(y) for y in t], "coeff": scalar_to_json(c)})
    return rows


def coop_from_json(F: Field, rows: list, C: ChainComplex, arity: int | None, where: str) -> dict:
    out: dict = {}
    for j, row in enumerate(rows):
        loc = f"{where}[{j}]"
        x, t = _need(row, "from", loc), _need(row, "to", loc)
        if not isinstance(t, list):
            raise FormatError(loc, "'to' must be a list of labels")
        if arity is not None and len(t) != arity:
            raise FormatError(loc, f"expected {arity} tensor factors, got {len(t)}")
        for y in [x] + t:
            if y not in C.space.degree_of:
                raise FormatError(loc, f"unknown label {y!r}")
        c = scalar_from_json(F, row.get("coeff", "1"), loc)
        if c:
            key = (x, tuple(t))
            out[key] = F.add(out.get(key, F.zero), c)
            if not out[key]:
                del out[key]
    return out


# ---------------------------------------------------------------------------
# symmetric sequences


def sequence_to_json(M: SymmetricSequence) -> dict:
    comps = []
    for n in range(M.max_arity + 1):
        C = M.component(n)
        if not C.dim():
            continue
        cj = complex_to_json(C)
        del cj["field"]
        cj["arity"] = n
        cj["action"] = [_entries(a.images) for a in M.actions[n]]
        comps.append(cj)
    return {"field": M.field.to_json(), "max_arity": M.max_arity, "components": comps}


def sequence_from_json(data: Mapping, where: str = "sequence") -> SymmetricSequence:
    F = parse_field(_need(data, "field", where))
    comps, acts = {}, {}
    for j, cj in enumerate(_need(data, "components", where)):
        loc = f"{where}.components[{j}]"
        n = int(_need(cj, "arity", loc))
        C = complex_from_json(cj, loc, field=F)
        mats = cj.get("action", [])
        if len(mats) != max(n - 1, 0):
            raise FormatError(f"{loc}.action", f"need {max(n - 1, 0)} transposition matrices")
        acts[n] = [map_from_json(F, m, C, C, 0, f"{loc}.action[{i}]") for i, m in enumerate(mats)]
        comps[n] = C
    A = int(data.get("max_arity", max(comps, default=0)))
    M = SymmetricSequence(F, comps, acts, A, complete=True)
    bad = M.check()
    if bad:
        raise FormatError(where, f"not a symmetric sequence: {bad[0]}")
    return M


def parse_sequence_spec(spec: str, F: Field) -> SymmetricSequence:
    """``sphere:k:p``, ``disk:k:p``, ``trivial:p:k``, ``sign:p:k``, ``unit``; join with ``+``."""
    parts = []
    for j, item in enumerate(spec.split("+")):
        bits = item.strip().split(":")
        kind = bits[0].lower()
        try:
            nums = [int(b) for b in bits[1:]]
            if kind == "sphere":
                parts.append(sphere_sequence(F, nums[0], nums[1], name=f"x{j}" if "+" in spec else "x"))
            elif kind == "disk":
                parts.append(disk_sequence(F, nums[0], nums[1]))
            elif kind in ("trivial", "sign"):
                parts.append(character_sequence(F, nums[0], nums[1], sign=kind == "sign"))
            elif kind == "unit":
                parts.append(unit_sequence(F))
            else:
                raise FormatError("sequence", f"unknown sequence kind {kind!r}")
        except (IndexError, ValueError) as e:
            if isinstance(e, FormatError):
                raise
            raise FormatError("sequence", f"malformed spec {item!r}") from None
    return parts[0] if len(parts) == 1 else direct_sum(*parts)


# ---------------------------------------------------------------------------
# presentations


def presentation_to_json(P: QuasiFreePresentation) -> dict:
    gens = []
    for g in P.generators:
        gens.append({"name": g["name"], "arity": g["arity"], "degree": g["degree"],
                     "boundary": [[scalar_to_json(c), t] for c, t in P.planar_boundary(g["name"])]})
    return {"field": P.field.to_json(), "generators": gens}


def presentation_from_json(data: Mapping, where: str = "presentation", field: Field | None = None
                           ) -> QuasiFreePresentation:
    F = field or parse_field(_need(data, "field", where))
    P = QuasiFreePresentation(F)
    for j, g in enumerate(_need(data, "generators", where)):
        P = attach_from_json(P, g, f"{where}.generators[{j}]")
    return P


def attach_from_json(P: QuasiFreePresentation, g: Mapping, where: str = "cell") -> QuasiFreePresentation:
    F = P.field
    name = _need(g, "name", where)
    p, k = int(_need(g, "arity", where)), int(_need(g, "degree", where))
    terms = []
    for i, term in enumerate(g.get("boundary", [])):
        if not (isinstance(term, list) and len(term) == 2):
            raise FormatError(f"{where}.boundary[{i}]", "expected [coeff, tree]")
        terms.append((scalar_from_json(F, term[0], f"{where}.boundary[{i}]"), term[1]))
    try:
        return P.attach_cell(name, p, k, terms)
    except (CellError, ValueError, KeyError, TypeError) as e:
        raise FormatError(where, str(e)) from None


def parse_presentation_spec(spec: str, F: Field) -> QuasiFreePresentation:
    """``ainfty:N``, ``sphere:p:k`` (generator of degree k-1) or ``disk:p:k``."""
    from .coalgebra import disk_presentation, sphere_presentation
    bits = spec.split(":")
    try:
        if bits[0] == "ainfty":
            return ainfty_presentation(F, int(bits[1]))
        if bits[0] == "sphere":
            return sphere_presentation(F, int(bits[1]), int(bits[2]))
        if bits[0] == "disk":
            return disk_presentation(F, int(bits[1]), int(bits[2]))
    except (IndexError, ValueError):
        pass
    raise FormatError("presentation", f"unknown presentation spec {spec!r}")


# ---------------------------------------------------------------------------
# coalgebras


def cell_coalgebra_to_json(C: CellCoalgebra) -> dict:
    ops = []
    for g in C.presentation.generators:
        ops.append({"op": g["name"], "matrix": coop_to_json(C.generators.get(g["name"], {}))})
    return {"presentation": presentation_to_json(C.presentation),
            "carrier": complex_to_json(C.carrier), "cooperations": ops}


def cell_coalgebra_from_json(data: Mapping, where: str = "coalgebra") -> CellCoalgebra:
    carrier = complex_from_json(_need(data, "carrier", where), f"{where}.carrier")
    F = carrier.field
    pres = _need(data, "presentation", where)
    P = parse_presentation_spec(pres, F) if isinstance(pres, str) else \
        presentation_from_json(pres, f"{where}.presentation", field=F)
    gens = {}
    for j, op in enumerate(data.get("cooperations", [])):
        loc = f"{where}.cooperations[{j}]"
        nm = _need(op, "op", loc)
        try:
            g = P.generator(nm)
        except KeyError:
            raise FormatError(loc, f"unknown generator {nm!r}") from None
        gens[nm] = coop_from_json(F, op.get("matrix", []), carrier, g["arity"], f"{loc}.matrix")
    return CellCoalgebra(P, carrier, gens)


def ainfty_to_json(A: AInftyCoalgebra) -> dict:
    return {"carrier": complex_to_json(A.carrier),
            "maps": [{"arity": n, "matrix": coop_to_json(v)} for n, v in sorted(A.maps.items())]}


def ainfty_from_json(data: Mapping, where: str = "ainfty") -> AInftyCoalgebra:
    if isinstance(data, str):
        return parse_ainfty_spec(data)
    carrier = complex_from_json(_need(data, "carrier", where), f"{where}.carrier")
    maps = {}
    for j, m in enumerate(data.get("maps", [])):
        loc = f"{where}.maps[{j}]"
        n = int(_need(m, "arity", loc))
        if n < 2:
            raise FormatError(loc, "arity-1 data is the carrier differential")
        maps[n] = coop_from_json(carrier.field, m.get("matrix", []), carrier, n, f"{loc}.matrix")
    return AInftyCoalgebra(carrier, maps)


def parse_ainfty_spec(spec: str, F: Field | None = None) -> AInftyCoalgebra:
    """``poly-dual:n`` (reduced) or ``poly-dual-counital:n``: dual of ``k[t]/t^n``."""
    bits = spec.split(":")
    F = F or F2
    if bits[0] in ("poly-dual", "poly-dual-counital") and len(bits) == 2:
        return truncated_polynomial_dual(F, int(bits[1]), 1, counital=bits[0].endswith("counital"))
    raise FormatError("ainfty", f"unknown A-infinity spec {spec!r}")


def structure_table_to_json(S, max_arity: int) -> list:
    """All cooperations of a ``PCoalgebra`` on basis elements, arity by arity."""
    out = []
    for n in range(1, max_arity + 1):
        for e in S.operad.all_basis(n):
            vec = S.delta(n, e)
            out.append({"arity": n, "op": _op_json(e), "degree": S.operad.degree_of(n, e),
                        "matrix": coop_to_json(vec)})
    return out


def _op_json(e):
    if isinstance(e, tuple) and e and all(isinstance(w, tuple) for w in e):
        return [list(w) for w in e]
    return label_str(e)


# ---------------------------------------------------------------------------
# simplicial sets


def simplicial_from_json(data, where: str = "simplicial set") -> SimplicialSet:
    try:
        if isinstance(data, str):
            return builtin(data)
        if isinstance(data, Mapping) and "builtin" in data:
            return builtin(data["builtin"])
        return SimplicialSet.from_json(data)
    except SimplicialError as e:
        raise FormatError(where, str(e)) from None


def load_json(path: str):
    """Read a JSON file; ``builtin:NAME`` and ``spec:...`` strings pass through."""
    if path.startswith("builtin:"):
        return path[len("builtin:"):]
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise FormatError(path, "file not found") from None
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}:{e.lineno}:{e.colno}", e.msg) from None
