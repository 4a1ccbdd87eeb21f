"""The 9-dimensional filiform catalog and the constants derived from it.

Every algebra is given by the nine constants ``C^9_{r,s}`` of its row.  The
remaining brackets follow from the graded relations below together with
``[X_1, X_j] = X_{j+1}``.  Parameters are written ``a`` (alpha) and ``b``
(beta) inside expressions.

The classification lists stored here are kept exactly as printed.  They count
24 families and 14 isolated algebras (38 names), which agrees with the ten
algebras having a semisimple derivation plus the 28 characteristically
nilpotent ones, but not with a count of 21 families and 7 isolated algebras
for the characteristically nilpotent list alone.  The two are not reconciled.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .exact import ParseError, RationalFunction, parse_expr, rsum
from .lie import LieBracket

C9_KEYS = ("45", "36", "27", "35", "26", "34", "25", "24", "23")
PARAMS = ("a", "b")

# C^l_{i,j} for l < 9 as integer combinations of the C^9 row.
DERIVED = {
    (5, 2, 3): {"27": 1, "36": 3, "45": 2},
    (6, 2, 4): {"27": 1, "36": 3, "45": 2},
    (7, 2, 5): {"27": 1, "36": 2, "45": 1},
    (8, 2, 6): {"27": 1, "36": 1},
    (7, 3, 4): {"36": 1, "45": 1},
    (8, 3, 5): {"36": 1, "45": 1},
    (6, 2, 3): {"26": 1, "35": 2},
    (7, 2, 4): {"26": 1, "35": 2},
    (8, 2, 5): {"26": 1, "35": 1},
    (7, 2, 3): {"25": 1, "34": 1},
    (8, 2, 4): {"25": 1, "34": 1},
    (8, 3, 4): {"35": 1},
    (8, 2, 3): {"24": 1},
}


class SchemaError(ValueError):
    """Malformed catalog; ``pointer`` is a JSON pointer to the offending node."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class UnknownAlgebra(KeyError):
    pass


@dataclass
class C9Row:
    name: str
    params: list
    c9: dict
    excluded: list = field(default_factory=list)

    def constant(self, key: str) -> RationalFunction:
        return self.c9[key]


@dataclass
class DiagonalDerivationEntry:
    algebra: str
    weights: list
    row: C9Row
    representative: str = "reconstructed"


@dataclass
class Exclusion:
    algebra: str
    condition: str
    reason: str
    bindings: dict = field(default_factory=dict)


@dataclass
class Catalog:
    rows: list
    diag: list
    cn_list: list
    families: list
    isolated: list
    exclusions: list
    cases: list
    source: str = ""

    def row(self, name: str) -> C9Row:
        for r in self.rows:
            if r.name == name:
                return r
        for d in self.diag:
            if d.algebra == name:
                return d.row
        raise UnknownAlgebra(name)

    def diag_entry(self, name: str) -> DiagonalDerivationEntry:
        for d in self.diag:
            if d.algebra == name:
                return d
        raise UnknownAlgebra(name)

    def case(self, case_id: str) -> dict:
        for c in self.cases:
            if c["id"] == case_id:
                return c
        raise KeyError(case_id)

    def cases_for(self, name: str) -> list:
        return [c["id"] for c in self.cases if name in c["algebras"]]


def named_constants(row: C9Row) -> dict:
    """``{"C9_45": ..., "C5_23": ..., ...}``: every nonzero-slot constant by name."""
    out = {f"C9_{k}": row.c9[k] for k in C9_KEYS}
    for (l, i, j), combo in DERIVED.items():
        out[f"C{l}_{i}{j}"] = rsum(row.c9[k] * c for k, c in combo.items())
    return out


def derive_constants(row: C9Row) -> LieBracket:
    mu = LieBracket(9, name=row.name)
    for j in range(2, 9):
        mu.add(1, j, j + 1, 1)
    for (l, i, j), combo in DERIVED.items():
        mu.add(i, j, l, rsum(row.c9[k] * c for k, c in combo.items()))
    for k in C9_KEYS:
        mu.add(int(k[0]), int(k[1]), 9, row.c9[k])
    return mu


def eq5_residual(row: C9Row) -> RationalFunction:
    c45, c36, c27 = row.c9["45"], row.c9["36"], row.c9["27"]
    return -3 * c36 ** 2 + 2 * c27 * c45 + c36 * c45 + 2 * c45 ** 2


# --- loading -------------------------------------------------------------

def default_catalog_path() -> Path:
    env = os.environ.get("FILIFORM_CATALOG")
    if env:
        return Path(env)
    return Path(str(resources.files("filiform") / "data" / "catalog.json"))


def _expr(src, pointer, allowed=None):
    if not isinstance(src, str):
        raise SchemaError(pointer, f"expected an expression string, got {type(src).__name__}")
    try:
        f = parse_expr(src)
    except ParseError as e:
        raise ParseError(f"{pointer}: {e}", e.position, e.source) from None
    if allowed is not None and not f.variables() <= set(allowed):
        raise SchemaError(pointer, f"uses undeclared parameters {sorted(f.variables() - set(allowed))}")
    return f


def _need(obj, key, kind, pointer):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(pointer, f"missing key {key!r}")
    v = obj[key]
    if not isinstance(v, kind):
        raise SchemaError(f"{pointer}/{key}", f"expected {kind.__name__}")
    return v


def _row(obj, pointer, full=True) -> C9Row:
    name = _need(obj, "name" if "name" in obj else "algebra", str, pointer)
    params = _need(obj, "params", list, pointer)
    for n, p in enumerate(params):
        if p not in PARAMS:
            raise SchemaError(f"{pointer}/params/{n}", f"unknown parameter {p!r}")
    c9src = _need(obj, "c9", dict, pointer)
    for k in c9src:
        if k not in C9_KEYS:
            raise SchemaError(f"{pointer}/c9/{k}", "not a C^9 slot")
    missing = [k for k in C9_KEYS if k not in c9src]
    if full and missing:
        raise SchemaError(f"{pointer}/c9", f"missing slots {missing}")
    c9 = {k: _expr(c9src.get(k, "0"), f"{pointer}/c9/{k}", params) for k in C9_KEYS}
    excluded = [_expr(e, f"{pointer}/excluded/{n}", params) for n, e in enumerate(obj.get("excluded", []))]
    return C9Row(name, list(params), c9, excluded)


def _case(obj, pointer, known) -> dict:
    cid = _need(obj, "id", str, pointer)
    algebras = _need(obj, "algebras", list, pointer)
    for n, a in enumerate(algebras):
        if a not in known:
            raise SchemaError(f"{pointer}/algebras/{n}", f"unknown algebra {a!r}")
    ideal = _need(obj, "ideal", str, pointer)
    if ideal not in ("h1", "h2"):
        raise SchemaError(f"{pointer}/ideal", f"expected 'h1' or 'h2', got {ideal!r}")
    out = dict(obj)
    if "D" in obj:
        D = obj["D"]
        if not (isinstance(D, list) and len(D) == 8 and all(isinstance(r, list) and len(r) == 8 for r in D)):
            raise SchemaError(f"{pointer}/D", "expected an 8x8 matrix of expressions")
        out["D"] = [[_expr(x, f"{pointer}/D/{r}/{c}") for c, x in enumerate(row)] for r, row in enumerate(D)]
    if "g" in obj:
        g = obj["g"]
        if not (isinstance(g, list) and len(g) == 9 and all(isinstance(r, list) and len(r) == 9 for r in g)):
            raise SchemaError(f"{pointer}/g", "expected a 9x9 matrix of expressions")
        out["g"] = [[_expr(x, f"{pointer}/g/{r}/{c}") for c, x in enumerate(row)] for r, row in enumerate(g)]
    if "p" in obj:
        out["p"] = {k: _expr(v, f"{pointer}/p/{k}") for k, v in _need(obj, "p", dict, pointer).items()}
    if ideal == "h1" and "D" not in obj:
        k = _need(obj, "k", int, pointer)
        if k < 2:
            raise SchemaError(f"{pointer}/k", "k must be at least 2")
        out["d1"] = _expr(_need(obj, "d1", str, pointer), f"{pointer}/d1")
    if ideal == "h1":
        subst = _need(obj, "subst", str, pointer)
        if subst not in ("p0=t", "p0^2=t", "p0^3=t"):
            raise SchemaError(f"{pointer}/subst", f"unknown substitution law {subst!r}")
    if ideal == "h2" and "D" not in obj:
        raise SchemaError(pointer, "h2 cases need a D matrix")
    return out


def load_catalog(path=None) -> Catalog:
    path = Path(path) if path is not None else default_catalog_path()
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise SchemaError("", f"invalid JSON: {e}") from None
    return parse_catalog(data, str(path))


def parse_catalog(data: dict, source: str = "") -> Catalog:
    if not isinstance(data, dict):
        raise SchemaError("", "catalog must be a JSON object")
    rows = [_row(o, f"/algebras/{n}") for n, o in enumerate(_need(data, "algebras", list, ""))]
    names = [r.name for r in rows]
    if len(set(names)) != len(names):
        raise SchemaError("/algebras", "duplicate algebra names")
    diag = []
    for n, o in enumerate(_need(data, "diag_derivations", list, "")):
        p = f"/diag_derivations/{n}"
        weights = _need(o, "weights", list, p)
        if len(weights) != 9 or not all(isinstance(w, int) for w in weights):
            raise SchemaError(f"{p}/weights", "expected 9 integers")
        diag.append(DiagonalDerivationEntry(o["algebra"], weights, _row(o, p, full=False),
                                            o.get("representative", "reconstructed")))
    cn = _need(data, "cn_list", list, "")
    for n, a in enumerate(cn):
        if a not in names:
            raise SchemaError(f"/cn_list/{n}", f"unknown algebra {a!r}")
    cls = data.get("classification", {"families": [], "isolated": []})
    known = set(names) | {d.algebra for d in diag}
    exclusions = []
    for n, o in enumerate(data.get("exclusions", [])):
        p = f"/exclusions/{n}"
        exclusions.append(Exclusion(_need(o, "algebra", str, p), _need(o, "condition", str, p),
                                    _need(o, "reason", str, p), dict(o.get("bindings", {}))))
    cases = [_case(o, f"/cases/{n}", known) for n, o in enumerate(_need(data, "cases", list, ""))]
    return Catalog(rows, diag, list(cn), list(cls["families"]), list(cls["isolated"]),
                   exclusions, cases, source)
