"""JSON forms of scalars, input data and structure tables.

Dumps are canonical: sorted keys, fixed separators, table entries in
sorted index order, so identical inputs give identical bytes.  A scalar
serializes as {"L": conductor, "c": [coefficient fractions as strings]}
and round trips bit for bit.  Input files describing a datum are checked
against the schema shipped with the package before anything is built.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from math import lcm

import jsonschema

from . import linalg
from .cocycles import Cocycle2
from .comodule import ComoduleAlgebra, ModCatDatum
from .cyclo import CycloNumber, context
from .deformation import BiGaloisRep, LiftingDatum
from .errors import ValidationError
from .groups import AbelianGroup, Character, GroupElement, Subgroup
from .hopf import CheckReport, FiniteAlgebra, FiniteHopf, QlsDatum


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------- scalars

def cyclo_to_json(c: CycloNumber) -> dict:
    nums, den = c.raw()
    return {"L": c.L, "c": [str(Fraction(n, den)) for n in nums]}


def _pair_json(pair, L: int) -> dict:
    nums, den = pair
    return {"L": L, "c": [str(Fraction(n, den)) for n in nums]}


def cyclo_from_json(obj) -> CycloNumber:
    if isinstance(obj, int):
        return CycloNumber.from_rational(Fraction(obj), 1)
    if isinstance(obj, str):
        return CycloNumber.from_rational(Fraction(obj), 1)
    L = obj["L"]
    fracs = [Fraction(s) for s in obj["c"]]
    if len(fracs) != context(L).degree:
        raise ValidationError(
            f"scalar at conductor {L} needs {context(L).degree} coefficients")
    den = 1
    for f in fracs:
        den = lcm(den, f.denominator)
    nums = tuple(int(f * den) for f in fracs)
    return linalg.to_cyclo((nums, den), L)


def _pair_from_json(obj, L: int):
    return cyclo_from_json(obj).rebase(L).raw()


# ------------------------------------------------------- groups, cocycles

def group_to_json(G: AbelianGroup) -> dict:
    return {"orders": list(G.orders)}


def element_to_json(el: GroupElement) -> dict:
    return {"exps": list(el.exps)}


def cocycle_to_json(psi: Cocycle2) -> dict:
    table = [[list(a.exps), list(b.exps), cyclo_to_json(v)]
             for (a, b), v in sorted(psi.table.items(),
                                     key=lambda kv: (kv[0][0].exps,
                                                     kv[0][1].exps))]
    return {"table": table, "classTag": list(psi.class_tag())}


def cocycle_from_json(carrier, obj) -> Cocycle2:
    if "exponents" in obj:
        c = {(i, j): v for i, j, v in obj["exponents"]}
        return Cocycle2.from_exponents(carrier, c)
    if "table" in obj:
        group = carrier.group
        table = {}
        for ae, be, v in obj["table"]:
            a = group.element(tuple(ae))
            b = group.element(tuple(be))
            if a not in carrier or b not in carrier:
                raise ValidationError("cocycle table entry leaves the carrier")
            table[(a, b)] = cyclo_from_json(v)
        return Cocycle2(carrier, table)
    return Cocycle2.trivial(carrier)


# ----------------------------------------------------------- input datum

_SCHEMA = None


def input_schema() -> dict:
    global _SCHEMA
    if _SCHEMA is None:
        path = resources.files("qlsmodcat") / "schema" / "datum.schema.json"
        _SCHEMA = json.loads(path.read_text())
    return _SCHEMA


def validate_input(obj) -> None:
    try:
        jsonschema.validate(obj, input_schema())
    except jsonschema.ValidationError as e:
        raise ValidationError(
            f"input does not match the schema at {e.json_path}: {e.message}")


def datum_to_json(datum: QlsDatum, lifting: LiftingDatum = None,
                  mcd: ModCatDatum = None) -> dict:
    out = {
        "group": group_to_json(datum.group),
        "g": [list(el.exps) for el in datum.g],
        "chi": [list(ch.exps) for ch in datum.chi],
    }
    if lifting is not None:
        out["lifting"] = {
            "mu": [cyclo_to_json(c) for c in lifting.mu],
            "lambda": [[i, j, cyclo_to_json(c)]
                       for (i, j), c in sorted(lifting.lam.items())],
        }
    if mcd is not None:
        by_comp: dict = {}
        for a in range(mcd.n_letters):
            by_comp.setdefault(mcd.carriers[a].exps, []).append(
                [cyclo_to_json(c) for c in mcd.rows[a]])
        out["modcat"] = {
            "F": {"gens": [list(g.exps) for g in mcd.F.gens]},
            "psi": cocycle_to_json(mcd.psi),
            "w": [{"component": list(ge), "rows": rows}
                  for ge, rows in sorted(by_comp.items())],
            "xi": [cyclo_to_json(c) for c in mcd.xi],
            "alpha": [[a, b, cyclo_to_json(c)]
                      for (a, b), c in sorted(mcd.alpha.items())],
        }
    return out


def load_datum(obj):
    """Parse one input object into (datum, lifting, modcat datum)."""
    validate_input(obj)
    G = AbelianGroup(tuple(obj["group"]["orders"]))
    g = [G.element(tuple(e)) for e in obj["g"]]
    chi = [Character(G, tuple(e)) for e in obj["chi"]]
    datum = QlsDatum(G, g, chi)
    lifting = None
    if "lifting" in obj:
        sec = obj["lifting"]
        mu = [cyclo_from_json(v) for v in sec.get("mu", [])]
        lam = {(i, j): cyclo_from_json(v)
               for i, j, v in sec.get("lambda", [])}
        lifting = LiftingDatum(datum, mu=mu or None, lam=lam or None)
    mcd = None
    if "modcat" in obj:
        sec = obj["modcat"]
        F = Subgroup.generated(G, [G.element(tuple(e))
                                   for e in sec["F"]["gens"]])
        psi = cocycle_from_json(F, sec.get("psi", {}))
        w = {tuple(entry["component"]):
             [[cyclo_from_json(v) for v in row] for row in entry["rows"]]
             for entry in sec.get("w", [])}
        xi = [cyclo_from_json(v) for v in sec.get("xi", [])]
        alpha = {(a, b): cyclo_from_json(v)
                 for a, b, v in sec.get("alpha", [])}
        mcd = ModCatDatum(datum, F, psi, w=w or None, xi=xi or None,
                          alpha=alpha or None)
    return datum, lifting, mcd


# ------------------------------------------------------- structure dumps

def _label_json(lab) -> list:
    r, exps = lab
    return [list(r), list(exps)]


def _label_from_json(lab) -> tuple:
    r, exps = lab
    return (tuple(r), tuple(exps))


def _algebra_core(alg: FiniteAlgebra) -> dict:
    mult = []
    for (i, j) in sorted(alg.mult):
        cell = alg.mult[(i, j)]
        for k in sorted(cell):
            mult.append([i, j, k, _pair_json(cell[k], alg.L)])
    return {
        "dim": alg.dim,
        "L": alg.L,
        "labels": [_label_json(lab) for lab in alg.labels],
        "unit": [[i, _pair_json(alg.unit[i], alg.L)]
                 for i in sorted(alg.unit)],
        "mult": mult,
    }


def _core_tables(obj):
    labels = [_label_from_json(lab) for lab in obj["labels"]]
    L = obj["L"]
    mult: dict = {}
    for i, j, k, v in obj["mult"]:
        mult.setdefault((i, j), {})[k] = _pair_from_json(v, L)
    unit = {i: _pair_from_json(v, L) for i, v in obj["unit"]}
    return labels, L, mult, unit


def algebra_dump(alg: FiniteAlgebra) -> dict:
    return _algebra_core(alg)


def algebra_load(obj) -> FiniteAlgebra:
    return FiniteAlgebra(*_core_tables(obj))


def hopf_dump(H: FiniteHopf) -> dict:
    out = _algebra_core(H)
    out["comult"] = [[i, j, k, _pair_json(c, H.L)]
                     for i in range(H.dim)
                     for (j, k), c in sorted(H.comult[i].items())]
    out["counit"] = [_pair_json(H.counit[i], H.L) for i in range(H.dim)]
    out["antipode"] = [[i, k, _pair_json(c, H.L)]
                       for i in range(H.dim)
                       for k, c in sorted(H.antipode[i].items())]
    out["degree"] = list(H.degree) if H.degree is not None else None
    out["graded"] = bool(H.graded)
    return out


def hopf_load(obj) -> FiniteHopf:
    labels, L, mult, unit = _core_tables(obj)
    n = len(labels)
    comult = [dict() for _ in range(n)]
    for i, j, k, v in obj["comult"]:
        comult[i][(j, k)] = _pair_from_json(v, L)
    counit = [_pair_from_json(v, L) for v in obj["counit"]]
    antipode = [dict() for _ in range(n)]
    for i, k, v in obj["antipode"]:
        antipode[i][k] = _pair_from_json(v, L)
    return FiniteHopf(labels, L, mult, unit, comult, counit, antipode,
                      degree=obj.get("degree"), graded=obj.get("graded", False))


def comodule_dump(A: ComoduleAlgebra) -> dict:
    out = _algebra_core(A)
    out["coaction"] = [[i, u, j, _pair_json(c, A.L)]
                       for i in range(A.dim)
                       for (u, j), c in sorted(A.coaction[i].items())]
    out["degree"] = list(A.degree) if A.degree is not None else None
    out["hopf"] = hopf_dump(A.hopf)
    return out


def comodule_load(obj) -> ComoduleAlgebra:
    labels, L, mult, unit = _core_tables(obj)
    hopf = hopf_load(obj["hopf"])
    coaction = [dict() for _ in range(len(labels))]
    for i, u, j, v in obj["coaction"]:
        coaction[i][(u, j)] = _pair_from_json(v, L)
    return ComoduleAlgebra(labels, L, mult, unit, hopf, coaction,
                           degree=obj.get("degree"))


def bigalois_dump(B: BiGaloisRep) -> dict:
    alg = B.algebra
    out = {
        "algebra": _algebra_core(alg),
        "left_hopf": hopf_dump(B.left_hopf),
        "right_hopf": hopf_dump(B.right_hopf),
        "left_coaction": [[i, u, j, _pair_json(c, alg.L)]
                          for i in range(alg.dim)
                          for (u, j), c in sorted(B.left_coaction[i].items())],
        "right_coaction": [[i, j, h, _pair_json(c, alg.L)]
                           for i in range(alg.dim)
                           for (j, h), c in sorted(B.right_coaction[i].items())],
        "counit_functional": [_pair_json(c, alg.L)
                              for c in B.counit_functional],
    }
    return out


def bigalois_load(obj) -> BiGaloisRep:
    alg = algebra_load(obj["algebra"])
    n = alg.dim
    left = [dict() for _ in range(n)]
    for i, u, j, v in obj["left_coaction"]:
        left[i][(u, j)] = _pair_from_json(v, alg.L)
    right = [dict() for _ in range(n)]
    for i, j, h, v in obj["right_coaction"]:
        right[i][(j, h)] = _pair_from_json(v, alg.L)
    cb = [_pair_from_json(v, alg.L) for v in obj["counit_functional"]]
    return BiGaloisRep(alg, hopf_load(obj["left_hopf"]),
                       hopf_load(obj["right_hopf"]), left, right, cb)


# ------------------------------------------------------------ reports

def _plain(x):
    if isinstance(x, CycloNumber):
        return cyclo_to_json(x)
    if isinstance(x, GroupElement):
        return list(x.exps)
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def report_to_json(rep: CheckReport) -> dict:
    return {
        "subject": rep.subject,
        "ok": rep.ok,
        "failures": [{"check": name, "witness": _plain(w)}
                     for name, w in rep.failures],
    }
