"""Builtin named functions used as fixtures throughout the test campaigns.

These are the separating examples of the theory: the coordinate function and
its conjugate (honest slice functions), the rotation-twisted coordinate
v(x) = -u x u and its left-multiplied cousin v_r(x) = u x (slice-by-slice
polyanalytic of order two but not slice functions), and the bump-style
rational function that is continuous on every slice yet jumps at the origin.
All are addressable by name from the CLI without a spec file.
"""

from __future__ import annotations

from typing import Optional, Union

from .algebra import QUATERNION, AlgebraElement, AlgebraSignature, clifford
from .errors import FunctionSpecError
from .multipoly import CoordPoly, RationalFn
from .slicefn import CircularDomain, PointFunction, SliceFunction
from .stem import StemFunction


def default_domain() -> CircularDomain:
    return CircularDomain.ball(0, 4)


def coordinate_function(
    signature: AlgebraSignature, domain: Optional[CircularDomain] = None
) -> SliceFunction:
    """The identity slice function x, induced by the stem z."""
    return SliceFunction(domain or default_domain(), StemFunction.z(signature))


def conjugate_coordinate(
    signature: AlgebraSignature, domain: Optional[CircularDomain] = None
) -> SliceFunction:
    """The conjugation x-bar, induced by the stem z-bar."""
    return SliceFunction(domain or default_domain(), StemFunction.zbar(signature))


def _first_unit_element(signature: AlgebraSignature) -> AlgebraElement:
    return AlgebraElement.basis(signature, signature.imag_masks[0])


def _linear_point_function(
    signature: AlgebraSignature,
    domain: Optional[CircularDomain],
    coefficient_of,
) -> PointFunction:
    n = signature.coord_count
    basis = [AlgebraElement.one(signature)] + [
        AlgebraElement.basis(signature, mask) for mask in signature.imag_masks
    ]
    terms = {}
    for h, b in enumerate(basis):
        exps = tuple(1 if t == h else 0 for t in range(n))
        terms[exps] = coefficient_of(b)
    poly = CoordPoly(signature, n, terms)
    return PointFunction(domain or default_domain(), RationalFn.from_poly(poly))


def rotation_twisted_coordinate(
    signature: AlgebraSignature, domain: Optional[CircularDomain] = None
) -> PointFunction:
    """v(x) = -u x u with u the first imaginary basis unit (i resp. e_1).

    Fixes the slice of u pointwise and conjugates the orthogonal axes, so it
    is slice-by-slice polyanalytic of order two without being a slice function.
    """
    u = _first_unit_element(signature)
    return _linear_point_function(signature, domain, lambda b: -(u * b * u))


def left_multiplied_coordinate(
    signature: AlgebraSignature, domain: Optional[CircularDomain] = None
) -> PointFunction:
    """v_r(x) = u x with u the first imaginary basis unit."""
    u = _first_unit_element(signature)
    return _linear_point_function(signature, domain, lambda b: u * b)


def jump_example(
    signature: AlgebraSignature, domain: Optional[CircularDomain] = None
) -> PointFunction:
    """x_1^2 x_2 / (x_1^4 + sum_(h>=2) x_h^2) off the reals, 0 on the reals.

    Continuous on every slice, yet tends to 1/2 along x = e_1/h + e_2/h^2, so
    it is not continuous at the origin.
    """
    n = signature.coord_count
    zero = (0,) * n
    num_exp = tuple(2 if t == 1 else (1 if t == 2 else 0) for t in range(n))
    numer = CoordPoly(
        signature, n, {num_exp: AlgebraElement.one(signature)}
    )
    den_terms = {
        tuple(4 if t == 1 else 0 for t in range(n)): AlgebraElement.one(signature)
    }
    for h in range(2, n):
        exps = tuple(2 if t == h else 0 for t in range(n))
        den_terms[exps] = AlgebraElement.one(signature)
    denom = CoordPoly(signature, n, den_terms)
    return PointFunction(
        domain or default_domain(),
        RationalFn(numer, ((denom, 1),)),
        real_value=AlgebraElement.zero(signature),
    )


BUILTIN_NAMES = ("x", "xbar", "v", "v_r", "v_m", "bump")


def builtin_function(
    name: str,
    signature: Optional[AlgebraSignature] = None,
    domain: Optional[CircularDomain] = None,
) -> Union[SliceFunction, PointFunction]:
    """Look up a named fixture; "v_m" is the Cl(0,3) twisted coordinate."""
    if name == "x":
        return coordinate_function(signature or QUATERNION, domain)
    if name == "xbar":
        return conjugate_coordinate(signature or QUATERNION, domain)
    if name == "v":
        return rotation_twisted_coordinate(signature or QUATERNION, domain)
    if name == "v_r":
        return left_multiplied_coordinate(signature or QUATERNION, domain)
    if name == "v_m":
        return rotation_twisted_coordinate(signature or clifford(3), domain)
    if name == "bump":
        return jump_example(signature or QUATERNION, domain)
    raise FunctionSpecError(
        f"unknown builtin {name!r}; choose one of {', '.join(BUILTIN_NAMES)}"
    )
