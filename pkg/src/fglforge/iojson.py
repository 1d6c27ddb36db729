"""JSON schemas and text rendering for rings, elements, series and FGLs.

Rationals always serialize as exact strings ("p/q"), never floats, and all
emitted JSON uses sorted keys so identical inputs give byte-identical output.
"""

from __future__ import annotations

import json

from .errors import Unsupported
from .expressions import element_to_expr, parse_expression
from .rings import (
    CoefficientRing,
    Integers,
    IntegersMod,
    LaurentExtension,
    PLocalIntegers,
    QuotientByPrincipal,
    Rationals,
    RingElement,
)
from .series import TruncatedSeries1


def ring_to_json(ring: CoefficientRing) -> dict:
    if isinstance(ring, Integers):
        return {"kind": "integers"}
    if isinstance(ring, Rationals):
        return {"kind": "rationals"}
    if isinstance(ring, IntegersMod):
        return {"kind": "integers_mod", "modulus": ring.modulus}
    if isinstance(ring, PLocalIntegers):
        return {"kind": "p_local", "prime": ring.p}
    if isinstance(ring, LaurentExtension):
        return {
            "kind": "laurent",
            "base": ring_to_json(ring.base),
            "variable": ring.variable,
            "degree": ring.degree,
        }
    if isinstance(ring, QuotientByPrincipal):
        gen = RingElement(ring.base, dict(ring.modulus))
        return {
            "kind": "quotient",
            "base": ring_to_json(ring.base),
            "generator": element_to_expr(gen),
        }
    if hasattr(ring, "gens") and hasattr(ring, "max_degree"):
        return {
            "kind": "graded_polynomial",
            "generators": [{"name": n, "degree": d} for n, d in ring.gens],
            "max_degree": ring.max_degree,
        }
    raise Unsupported(f"{ring} has no JSON descriptor")


def ring_from_json(data: dict) -> CoefficientRing:
    kind = data["kind"]
    if kind == "integers":
        return Integers()
    if kind == "rationals":
        return Rationals()
    if kind == "integers_mod":
        return IntegersMod(int(data["modulus"]))
    if kind == "p_local":
        return PLocalIntegers(int(data["prime"]))
    if kind == "laurent":
        return LaurentExtension(
            ring_from_json(data["base"]),
            data.get("variable", "beta"),
            int(data.get("degree", 1)),
        )
    if kind == "quotient":
        base = ring_from_json(data["base"])
        gen = parse_expression(data["generator"], base)
        return QuotientByPrincipal(base, gen)
    if kind == "graded_polynomial":
        from .gradedpoly import GradedPolynomialRing

        return GradedPolynomialRing(
            [(g["name"], int(g["degree"])) for g in data["generators"]],
            int(data["max_degree"]),
        )
    raise Unsupported(f"unknown ring kind {kind!r}")


def element_to_json(elt: RingElement) -> dict:
    return {"ring": ring_to_json(elt.ring), "value": element_to_expr(elt)}


def element_from_json(data: dict) -> RingElement:
    ring = ring_from_json(data["ring"])
    return parse_expression(data["value"], ring)


def series1_to_json(f: TruncatedSeries1) -> dict:
    return {
        "ring": ring_to_json(f.ring),
        "precision": f.precision,
        "coeffs": [element_to_expr(c) for c in f.coeffs],
    }


def series1_from_json(data: dict) -> TruncatedSeries1:
    ring = ring_from_json(data["ring"])
    coeffs = [parse_expression(src, ring) for src in data["coeffs"]]
    return TruncatedSeries1(ring, coeffs, int(data["precision"]))


def series1_to_text(f: TruncatedSeries1, var: str = "x") -> str:
    """Human-readable rendering; canonical and stable."""
    terms = []
    for n, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        c_str = element_to_expr(c)
        if n == 0:
            terms.append(c_str)
            continue
        var_str = var if n == 1 else f"{var}^{n}"
        if c_str == "1":
            terms.append(var_str)
        elif c_str == "-1":
            terms.append("-" + var_str)
        else:
            if any(op in c_str[1:] for op in (" + ", " - ")):
                c_str = f"({c_str})"
            terms.append(f"{c_str}*{var_str}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


def fgl_to_json(fgl) -> dict:
    """Schema: unital coefficients (1,0), (0,1) are implicit and never emitted."""
    entries = []
    for (i, j), c in sorted(fgl.body.coeffs.items()):
        if i + j == 1:
            continue
        entries.append({"i": i, "j": j, "value": element_to_expr(c)})
    data = {
        "ring": ring_to_json(fgl.ring),
        "precision": fgl.precision,
        "coefficients": entries,
    }
    if fgl.grading is not None:
        data["grading"] = dict(sorted(fgl.grading.items()))
    return data


def fgl_from_json(data: dict):
    from .fgl import FormalGroupLaw
    from .series import TruncatedSeries2

    ring = ring_from_json(data["ring"])
    precision = int(data["precision"])
    coeffs = {
        (1, 0): ring.one(),
        (0, 1): ring.one(),
    }
    for entry in data.get("coefficients", []):
        i, j = int(entry["i"]), int(entry["j"])
        if (i, j) in ((1, 0), (0, 1)):
            raise ValueError("(1,0) and (0,1) are implicit and must not appear")
        if i < 1 or j < 1:
            raise ValueError(f"coefficient ({i},{j}) is forced by unitality")
        coeffs[(i, j)] = parse_expression(entry["value"], ring)
    body = TruncatedSeries2(ring, 2, coeffs, precision)
    grading = data.get("grading")
    if grading is not None:
        grading = {str(k): int(v) for k, v in grading.items()}
    return FormalGroupLaw(ring, precision, body, grading=grading)


def sequence_to_json(seq) -> dict:
    return {
        "window": [seq.lo, seq.hi],
        "values": [str(v) for v in seq.values],
    }


def sequence_from_json(data):
    from fractions import Fraction

    from .adams import AdamsSequence

    lo, hi = data["window"]
    values = [Fraction(v) for v in data["values"]]
    if len(values) != hi - lo + 1:
        raise ValueError("window size does not match the number of values")
    return AdamsSequence(lo, values)


def tower_to_json(tower) -> dict:
    ring = tower.levels[0].ring
    return {
        "ring": ring_to_json(ring),
        "precision": tower.precision,
        "depth": tower.depth,
        "levels": [[element_to_expr(c) for c in level.coeffs] for level in tower.levels],
    }


def tower_from_json(data):
    from .adams import OmegaTower

    ring = ring_from_json(data["ring"])
    precision = int(data["precision"])
    levels = [
        TruncatedSeries1(ring, [parse_expression(c, ring) for c in level], precision)
        for level in data["levels"]
    ]
    return OmegaTower(levels)


def twisted_to_json(element) -> dict:
    terms = []
    for j in sorted(element.terms):
        component = element.terms[j]
        if element.model == "sequence":
            entry = {"beta": j, "sequence": sequence_to_json(component)}
        else:
            entry = {"beta": j, "tower": tower_to_json(component)}
        terms.append(entry)
    return {"model": element.model, "terms": terms}


def twisted_from_json(data):
    from .adams import TwistedLaurent

    model = data["model"]
    terms = {}
    for entry in data["terms"]:
        j = int(entry["beta"])
        if model == "sequence":
            terms[j] = sequence_from_json(entry["sequence"])
        else:
            terms[j] = tower_from_json(entry["tower"])
    return TwistedLaurent(model, terms)


def algebroid_to_json(algebroid) -> dict:
    """Generator/degree tables of a truncated Hopf algebroid."""
    data = {
        "flavor": algebroid.flavor,
        "truncation": algebroid.truncation,
        "gamma_basis_by_degree": {},
    }
    for key in algebroid.gamma_basis():
        degree = algebroid.basis_degree(key)
        data["gamma_basis_by_degree"].setdefault(str(degree), []).append(
            algebroid.basis_label(key)
        )
    if hasattr(algebroid.base, "gens"):
        data["base_generators"] = [
            {"name": name, "degree": degree} for name, degree in algebroid.base.gens
        ]
        data["gamma_generators"] = [
            {"name": name, "degree": degree} for name, degree in algebroid.bring.gens
        ]
    else:
        data["objects"] = algebroid.n
    return data


def dual_functional_to_json(functional) -> dict:
    """Per-degree rows of an A-linear functional on the Gamma basis."""
    algebroid = functional.algebroid
    rows = {}
    for key in algebroid.gamma_basis():
        value = functional.values.get(key)
        if value is None:
            continue
        degree = str(algebroid.basis_degree(key))
        rows.setdefault(degree, []).append(
            {"basis": algebroid.basis_label(key), "value": element_to_expr(value)}
        )
    return {"algebroid": algebroid_to_json(functional.algebroid), "rows": rows}


def canonical_json(data) -> str:
    """Deterministic rendering used by every CLI emitter."""
    return json.dumps(data, sort_keys=True, separators=(",", ": "), indent=1)
