"""Differential operators on point functions.

Two computation paths exist on purpose.  The slice-wise path restricts a
function to one slice plane and applies (d/da + I d/db)/2 there; the global
path applies the coordinate operators thetabar and the related first-order
operator G symbolically on the rational-function class, which is closed under
the quotient rule.  Their coincidence slice-by-slice is one of the nontrivial
identities the verification campaigns check.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .algebra import AlgebraElement, AlgebraSignature, ImaginaryUnit, _blade_mul
from .multipoly import CoordPoly, RationalFn, coord_im, coord_s, restrict_rf
from .slicefn import PointFunction, SliceFunction


class SlicePlanePoly:
    """A rational function of (alpha, beta) tagged with the slice unit.

    Produced by restrict_to_slice; the unit is recorded so iterated slice
    derivatives know which I multiplies the beta-derivative from the left.
    """

    __slots__ = ("rf", "unit")

    def __init__(self, rf: RationalFn, unit: ImaginaryUnit):
        if rf.var_count != 2:
            raise ValueError("slice-plane functions are bivariate")
        self.rf = rf
        self.unit = unit

    @property
    def signature(self) -> AlgebraSignature:
        return self.rf.signature

    def dbar(self) -> "SlicePlanePoly":
        """One application of (d/da + I d/db)/2 with I on the left."""
        da = self.rf.partial(0)
        db = self.rf.partial(1).scale_left(self.unit.value)
        return SlicePlanePoly((da + db) * Fraction(1, 2), self.unit)

    def dbar_n(self, n: int) -> "SlicePlanePoly":
        if n < 0:
            raise ValueError("order must be >= 0")
        out = self
        for _ in range(n):
            out = out.dbar()
        return out

    def eval_at(self, z: tuple) -> AlgebraElement:
        return self.rf.eval((Fraction(z[0]), Fraction(z[1])))

    def is_zero(self) -> bool:
        return self.rf.is_zero()

    def left_mul_poly(self, poly: CoordPoly) -> "SlicePlanePoly":
        return SlicePlanePoly(self.rf.mul_poly_left(poly), self.unit)

    def __add__(self, other):
        if not isinstance(other, SlicePlanePoly):
            return NotImplemented
        if other.unit != self.unit:
            raise ValueError("slice-plane values belong to different slices")
        return SlicePlanePoly(self.rf + other.rf, self.unit)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SlicePlanePoly(self.rf * other, self.unit)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SlicePlanePoly):
            return NotImplemented
        return self.unit == other.unit and self.rf == other.rf

    __hash__ = None

    def __repr__(self):
        return f"SlicePlanePoly({self.rf!r}, unit={self.unit!r})"


def plane_x(signature: AlgebraSignature, unit: ImaginaryUnit) -> CoordPoly:
    """The inclusion map of the slice as a plane polynomial: alpha + I beta."""
    return CoordPoly(
        signature,
        2,
        {(1, 0): AlgebraElement.one(signature), (0, 1): unit.value},
    )


def plane_xbar(signature: AlgebraSignature, unit: ImaginaryUnit) -> CoordPoly:
    """Conjugate inclusion alpha - I beta."""
    return CoordPoly(
        signature,
        2,
        {(1, 0): AlgebraElement.one(signature), (0, 1): -unit.value},
    )


def restrict_to_slice(g: PointFunction, unit: ImaginaryUnit) -> SlicePlanePoly:
    """Exact substitution x_0 <- alpha, x_h <- i_h * beta."""
    return SlicePlanePoly(restrict_rf(g.expr, unit.components()), unit)


def restrict_slice_function(f: SliceFunction, unit: ImaginaryUnit) -> SlicePlanePoly:
    """Slice restriction of an induced function, straight from its stem."""
    return SlicePlanePoly(RationalFn.from_poly(f.plane_poly(unit)), unit)


def dbar_slice(g: PointFunction, unit: ImaginaryUnit, order: int) -> SlicePlanePoly:
    """The n-th slice Cauchy-Riemann derivative along one slice."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return restrict_to_slice(g, unit).dbar_n(order)


def _thetabar_once(rf: RationalFn) -> RationalFn:
    sig = rf.signature
    n = rf.var_count
    radial = None
    for h in range(1, n):
        term = rf.partial(h).mul_poly_left(CoordPoly.variable(sig, n, h))
        radial = term if radial is None else radial + term
    im_over_s = RationalFn(coord_im(sig), ((coord_s(sig), 1),))
    return (rf.partial(0) + im_over_s * radial) * Fraction(1, 2)


def thetabar(g: PointFunction, order: int = 1) -> PointFunction:
    """The global slice Cauchy-Riemann operator, iterated ``order`` times.

    thetabar(g) = (dg/dx_0 + Im(x)/|Im(x)|^2 * sum_h x_h dg/dx_h) / 2, with the
    Im(x) factor multiplying from the left.  The result lives off the real
    axis: denominators gain powers of s = sum_h x_h^2.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    rf = g.expr
    for _ in range(order):
        rf = _thetabar_once(rf)
    return PointFunction(g.domain, rf)


def g_op(g: PointFunction) -> PointFunction:
    """The first-order companion operator |Im(x)|^2 d/dx_0 + Im(x) sum x_h d/dx_h.

    Defined on the whole domain (no denominator is introduced); it agrees with
    2 s * thetabar(g) off the real axis.
    """
    sig = g.signature
    n = g.expr.var_count
    radial = None
    for h in range(1, n):
        term = g.expr.partial(h).mul_poly_left(CoordPoly.variable(sig, n, h))
        radial = term if radial is None else radial + term
    out = g.expr.partial(0).mul_poly_left(coord_s(sig)) + radial.mul_poly_left(
        coord_im(sig)
    )
    return PointFunction(g.domain, out)


# -- floating-point finite-difference oracle -----------------------------------------


def element_to_float(value: AlgebraElement) -> dict[int, float]:
    return {mask: float(c) for mask, c in value.coeffs.items()}


def _float_mul(a: dict[int, float], b: dict[int, float]) -> dict[int, float]:
    acc: dict[int, float] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mask, sign = _blade_mul(ma, mb)
            acc[mask] = acc.get(mask, 0.0) + sign * ca * cb
    return acc


def _float_axpy(acc: dict[int, float], scale: float, other: dict[int, float]) -> None:
    for mask, v in other.items():
        acc[mask] = acc.get(mask, 0.0) + scale * v


def _fd_partial(
    g: PointFunction, coords: Sequence[float], index: int, step: float
) -> dict[int, float]:
    up = list(coords)
    down = list(coords)
    up[index] += step
    down[index] -= step
    plus = g.expr.eval_float(up)
    out: dict[int, float] = {}
    _float_axpy(out, 1.0 / (2.0 * step), plus)
    _float_axpy(out, -1.0 / (2.0 * step), g.expr.eval_float(down))
    return out


def _require_off_axis(coords: Sequence[float], step: float) -> float:
    s = sum(c * c for c in coords[1:])
    if s**0.5 <= 10.0 * step:
        raise ValueError("point is too close to the real axis for the oracle step")
    return s


def fd_thetabar(
    g: PointFunction, coords: Sequence[float], step: float = 1e-5
) -> dict[int, float]:
    s = _require_off_axis(coords, step)
    out = _fd_partial(g, coords, 0, step)
    radial: dict[int, float] = {}
    for h in range(1, len(coords)):
        _float_axpy(radial, coords[h], _fd_partial(g, coords, h, step))
    im = {
        mask: coords[h]
        for h, mask in enumerate(g.signature.imag_masks, start=1)
        if coords[h]
    }
    _float_axpy(out, 1.0 / s, _float_mul(im, radial))
    return {mask: 0.5 * v for mask, v in out.items()}


def fd_g_op(
    g: PointFunction, coords: Sequence[float], step: float = 1e-5
) -> dict[int, float]:
    s = _require_off_axis(coords, step)
    out: dict[int, float] = {}
    _float_axpy(out, s, _fd_partial(g, coords, 0, step))
    radial: dict[int, float] = {}
    for h in range(1, len(coords)):
        _float_axpy(radial, coords[h], _fd_partial(g, coords, h, step))
    im = {
        mask: coords[h]
        for h, mask in enumerate(g.signature.imag_masks, start=1)
        if coords[h]
    }
    _float_axpy(out, 1.0, _float_mul(im, radial))
    return out


def fd_dbar_slice(
    g: PointFunction,
    unit: ImaginaryUnit,
    z: tuple[float, float],
    step: float = 1e-5,
) -> dict[int, float]:
    """Central-difference estimate of the first slice derivative at z."""
    if abs(z[1]) <= 10.0 * step:
        raise ValueError("point is too close to the real axis for the oracle step")
    comps = [float(c) for c in unit.components()]

    def at(alpha: float, beta: float) -> dict[int, float]:
        return g.expr.eval_float([alpha] + [c * beta for c in comps])

    alpha, beta = z
    d_alpha: dict[int, float] = {}
    _float_axpy(d_alpha, 1.0 / (2.0 * step), at(alpha + step, beta))
    _float_axpy(d_alpha, -1.0 / (2.0 * step), at(alpha - step, beta))
    d_beta: dict[int, float] = {}
    _float_axpy(d_beta, 1.0 / (2.0 * step), at(alpha, beta + step))
    _float_axpy(d_beta, -1.0 / (2.0 * step), at(alpha, beta - step))
    unit_f = element_to_float(unit.value)
    out = dict(d_alpha)
    _float_axpy(out, 1.0, _float_mul(unit_f, d_beta))
    return {mask: 0.5 * v for mask, v in out.items()}


def finite_diff_oracle(
    g: PointFunction,
    point: Sequence[float],
    operator: str,
    unit: Optional[ImaginaryUnit] = None,
    step: float = 1e-5,
) -> dict[int, float]:
    """Numerical check value for one of the exact operators.

    ``operator`` is "dbar_slice" (point = (alpha, beta), needs ``unit``),
    "thetabar" or "g_op" (point = full coordinates).
    """
    if operator == "dbar_slice":
        if unit is None:
            raise ValueError("dbar_slice oracle needs a unit")
        return fd_dbar_slice(g, unit, (point[0], point[1]), step)
    if operator == "thetabar":
        return fd_thetabar(g, point, step)
    if operator == "g_op":
        return fd_g_op(g, point, step)
    raise ValueError(f"unknown operator {operator!r}")


def float_agrees(
    exact: AlgebraElement, approx: dict[int, float], rtol: float = 1e-6
) -> bool:
    """Componentwise comparison with relative tolerance (absolute near zero)."""
    masks = set(exact.coeffs) | set(approx)
    norm = max((abs(float(c)) for c in exact.coeffs.values()), default=0.0)
    scale = max(1.0, norm)
    return all(
        abs(float(exact.coeff(mask)) - approx.get(mask, 0.0)) <= rtol * scale
        for mask in masks
    )
