"""JSON serialization: exact rationals in, exact rationals out.

Rationals are serialized as "p/q" strings and parsed from "p/q", "p", plain
integers or [p, q] pairs; floats never appear in reports, so exactness
survives the round trip.  This module also parses function-spec files into
SliceFunction or PointFunction values.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Union

from .algebra import QUATERNION, AlgebraElement, AlgebraSignature, clifford
from .errors import FunctionSpecError, ParityViolationError, ZeroDenominatorError
from .multipoly import CoordPoly, RationalFn
from .slicefn import CircularDomain, PointFunction, SliceFunction, SliceWitness
from .stem import StemFunction, make_stem


def frac_to_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def frac_from_json(value: Any) -> Fraction:
    try:
        if isinstance(value, bool):
            raise ValueError
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return Fraction(int(value[0]), int(value[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise FunctionSpecError(f"bad rational {value!r}") from exc
    raise FunctionSpecError(f"bad rational {value!r}")


def signature_to_json(signature: AlgebraSignature) -> dict:
    if signature.kind == "quaternion":
        return {"kind": "quaternion"}
    return {"kind": "clifford", "m": signature.m}


def signature_from_json(obj: Any) -> AlgebraSignature:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FunctionSpecError("signature must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "quaternion":
        return QUATERNION
    if kind == "clifford":
        try:
            return clifford(int(obj["m"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FunctionSpecError(f"bad clifford signature: {exc}") from exc
    raise FunctionSpecError(f"unknown signature kind {kind!r}")


def element_to_json(value: AlgebraElement) -> dict:
    return {
        value.signature.blade_name(mask): frac_to_str(c)
        for mask, c in sorted(value.coeffs.items())
    }


def element_from_json(signature: AlgebraSignature, obj: Any) -> AlgebraElement:
    if not isinstance(obj, dict):
        raise FunctionSpecError(f"coefficient must be a blade map, got {obj!r}")
    coeffs = {}
    for name, raw in obj.items():
        try:
            mask = signature.blade_mask(name)
        except ValueError as exc:
            raise FunctionSpecError(str(exc)) from exc
        coeffs[mask] = frac_from_json(raw)
    return AlgebraElement(signature, coeffs)


def poly_to_terms(poly: CoordPoly) -> list[dict]:
    return [
        {"exponents": list(exps), "coefficient": element_to_json(coeff)}
        for exps, coeff in sorted(poly.terms.items())
    ]


def poly_from_terms(
    signature: AlgebraSignature, var_count: int, items: Any, what: str
) -> CoordPoly:
    if items is None:
        items = []
    if not isinstance(items, list):
        raise FunctionSpecError(f"{what} must be a list of terms")
    terms: dict[tuple[int, ...], AlgebraElement] = {}
    for item in items:
        if not isinstance(item, dict) or "exponents" not in item or "coefficient" not in item:
            raise FunctionSpecError(
                f"{what} entries need 'exponents' and 'coefficient'"
            )
        exps = item["exponents"]
        if not isinstance(exps, list) or len(exps) != var_count:
            raise FunctionSpecError(
                f"{what} exponent vector must have length {var_count}"
            )
        key = tuple(int(e) for e in exps)
        coeff = element_from_json(signature, item["coefficient"])
        terms[key] = terms.get(key, AlgebraElement.zero(signature)) + coeff
    try:
        return CoordPoly(signature, var_count, terms)
    except ValueError as exc:
        raise FunctionSpecError(f"{what}: {exc}") from exc


def stem_to_json(stem: StemFunction) -> dict:
    return {
        "f1_terms": poly_to_terms(stem.f1),
        "f2_terms": poly_to_terms(stem.f2),
    }


def domain_to_json(domain: CircularDomain) -> dict:
    if domain.shape == "ball":
        return {
            "shape": "ball",
            "center": frac_to_str(domain.center),
            "radius": frac_to_str(domain.radius),
        }
    return {
        "shape": "annulus",
        "center": frac_to_str(domain.center),
        "r_in": frac_to_str(domain.r_in),
        "r_out": frac_to_str(domain.r_out),
    }


def domain_from_json(obj: Any) -> CircularDomain:
    if obj is None:
        return CircularDomain.ball(0, 4)
    if not isinstance(obj, dict) or "shape" not in obj:
        raise FunctionSpecError("domain must be an object with a 'shape'")
    try:
        if obj["shape"] == "ball":
            return CircularDomain.ball(
                frac_from_json(obj.get("center", 0)), frac_from_json(obj["radius"])
            )
        if obj["shape"] == "annulus":
            return CircularDomain.annulus(
                frac_from_json(obj.get("center", 0)),
                frac_from_json(obj["r_in"]),
                frac_from_json(obj["r_out"]),
            )
    except (KeyError, ValueError) as exc:
        raise FunctionSpecError(f"bad domain: {exc}") from exc
    raise FunctionSpecError(f"unknown domain shape {obj['shape']!r}")


def witness_to_json(witness: SliceWitness) -> dict:
    return {
        "H": element_to_json(witness.unit_h.value),
        "K": element_to_json(witness.unit_k.value),
        "z": [frac_to_str(witness.z[0]), frac_to_str(witness.z[1])],
        "predicted": element_to_json(witness.predicted),
        "actual": element_to_json(witness.actual),
    }


def function_spec_from_json(obj: Any) -> Union[SliceFunction, PointFunction]:
    """Parse a function description into exactly one of the two carriers.

    Schema: {"signature": {...}, "domain": {...}, "representation":
    "stem" | "rational", then either f1_terms/f2_terms over (alpha, beta) or
    numerator_terms/denominator_terms over x_0..x_n; rationals are "p/q"
    strings, integers or [p, q] pairs.
    """
    if not isinstance(obj, dict):
        raise FunctionSpecError("function spec must be a JSON object")
    signature = signature_from_json(obj.get("signature", {"kind": "quaternion"}))
    domain = domain_from_json(obj.get("domain"))
    rep = obj.get("representation")
    if rep == "stem":
        f1 = poly_from_terms(signature, 2, obj.get("f1_terms"), "f1_terms")
        f2 = poly_from_terms(signature, 2, obj.get("f2_terms"), "f2_terms")
        try:
            stem = make_stem(f1, f2)
        except ParityViolationError as exc:
            raise FunctionSpecError(f"stem parity violated: {exc}") from exc
        return SliceFunction(domain, stem)
    if rep == "rational":
        n = signature.coord_count
        numer = poly_from_terms(signature, n, obj.get("numerator_terms"), "numerator_terms")
        den_items = obj.get("denominator_terms")
        real_value = None
        if obj.get("real_axis_value") is not None:
            real_value = element_from_json(signature, obj["real_axis_value"])
        if den_items is None:
            expr = RationalFn.from_poly(numer)
        else:
            denom = poly_from_terms(signature, n, den_items, "denominator_terms")
            if denom.is_zero():
                raise FunctionSpecError("denominator is identically zero")
            if not denom.is_real_scalar():
                raise FunctionSpecError("denominator must be real-scalar")
            try:
                expr = RationalFn(numer, ((denom, 1),))
            except ZeroDenominatorError as exc:
                raise FunctionSpecError(str(exc)) from exc
        return PointFunction(domain, expr, real_value=real_value)
    raise FunctionSpecError(
        f"representation must be 'stem' or 'rational', got {rep!r}"
    )


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj: Any) -> str:
    """Short deterministic digest of a JSON-able input description."""
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()[:16]
