"""Multivariate polynomials and rational functions with algebra coefficients.

Variables are real-valued and central (they commute with everything); the
noncommutative coefficients sit on the left of each monomial, so a product of
terms multiplies coefficients in order.  Rational functions keep a polynomial
numerator over a real-scalar denominator stored in factored form: the quotient
rule bumps factor exponents instead of squaring expanded products, which keeps
iterated differentiation cheap without any gcd machinery.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

from .algebra import AlgebraElement, AlgebraSignature
from .errors import (
    ArityMismatchError,
    DenominatorVanishesError,
    SignatureMismatchError,
    ZeroDenominatorError,
)

Exponents = tuple[int, ...]
RationalLike = Union[Fraction, int]


class CoordPoly:
    """Polynomial in central real variables with AlgebraElement coefficients."""

    __slots__ = ("signature", "var_count", "terms", "_hash")

    def __init__(
        self,
        signature: AlgebraSignature,
        var_count: int,
        terms: Mapping[Exponents, AlgebraElement],
    ):
        clean: dict[Exponents, AlgebraElement] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != var_count:
                raise ArityMismatchError(
                    f"exponent vector {exps} has arity {len(exps)}, expected {var_count}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if coeff.signature != signature:
                raise SignatureMismatchError("coefficient signature mismatch")
            if not coeff.is_zero():
                clean[exps] = coeff
        self.signature = signature
        self.var_count = var_count
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, signature, var_count, raw: dict[Exponents, AlgebraElement]):
        """Fast path: assumes keys/signatures are valid, only prunes zeros."""
        obj = object.__new__(cls)
        obj.signature = signature
        obj.var_count = var_count
        obj.terms = {e: c for e, c in raw.items() if not c.is_zero()}
        obj._hash = None
        return obj

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, signature, var_count: int) -> "CoordPoly":
        return cls._make(signature, var_count, {})

    @classmethod
    def constant(cls, signature, var_count: int, value) -> "CoordPoly":
        if isinstance(value, (int, Fraction)):
            value = AlgebraElement.scalar(signature, value)
        return cls(signature, var_count, {(0,) * var_count: value})

    @classmethod
    def variable(cls, signature, var_count: int, index: int) -> "CoordPoly":
        if not 0 <= index < var_count:
            raise ValueError(f"variable index {index} out of range")
        exps = tuple(1 if h == index else 0 for h in range(var_count))
        return cls(signature, var_count, {exps: AlgebraElement.one(signature)})

    @classmethod
    def monomial(cls, signature, var_count, exps, coeff) -> "CoordPoly":
        return cls(signature, var_count, {tuple(exps): coeff})

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_real_scalar(self) -> bool:
        return all(c.is_scalar() for c in self.terms.values())

    def total_degree(self) -> int:
        """Maximum monomial degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self.terms), default=-1)

    def _require_compatible(self, other: "CoordPoly") -> None:
        if self.signature != other.signature:
            raise SignatureMismatchError("polynomial signature mismatch")
        if self.var_count != other.var_count:
            raise ArityMismatchError(
                f"var counts differ: {self.var_count} vs {other.var_count}"
            )

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, CoordPoly):
            return NotImplemented
        self._require_compatible(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            prev = acc.get(e)
            acc[e] = c if prev is None else prev + c
        return CoordPoly._make(self.signature, self.var_count, acc)

    def __neg__(self):
        return CoordPoly._make(
            self.signature, self.var_count, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, CoordPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CoordPoly):
            self._require_compatible(other)
            acc: dict[Exponents, AlgebraElement] = {}
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    key = tuple(x + y for x, y in zip(ea, eb))
                    prod = ca * cb
                    prev = acc.get(key)
                    acc[key] = prod if prev is None else prev + prod
            return CoordPoly._make(self.signature, self.var_count, acc)
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CoordPoly._make(
                self.signature, self.var_count, {e: c * q for e, c in self.terms.items()}
            )
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def scale_left(self, coeff: AlgebraElement) -> "CoordPoly":
        return CoordPoly._make(
            self.signature, self.var_count, {e: coeff * c for e, c in self.terms.items()}
        )

    def scale_right(self, coeff: AlgebraElement) -> "CoordPoly":
        return CoordPoly._make(
            self.signature, self.var_count, {e: c * coeff for e, c in self.terms.items()}
        )

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = CoordPoly.constant(self.signature, self.var_count, 1)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus ------------------------------------------------------------

    def partial(self, index: int) -> "CoordPoly":
        if not 0 <= index < self.var_count:
            raise ValueError(f"variable index {index} out of range")
        acc: dict[Exponents, AlgebraElement] = {}
        for e, c in self.terms.items():
            k = e[index]
            if k == 0:
                continue
            key = tuple(x - 1 if h == index else x for h, x in enumerate(e))
            prod = c * k
            prev = acc.get(key)
            acc[key] = prod if prev is None else prev + prod
        return CoordPoly._make(self.signature, self.var_count, acc)

    def eval(self, point: Sequence[RationalLike]) -> AlgebraElement:
        if len(point) != self.var_count:
            raise ArityMismatchError(
                f"point arity {len(point)} != var count {self.var_count}"
            )
        one = Fraction(1)
        pt = [p if isinstance(p, Fraction) else Fraction(p) for p in point]
        pows: list[dict[int, Fraction]] = [{0: one, 1: p} for p in pt]
        acc: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            scalar = one
            for i, k in enumerate(e):
                if not k:
                    continue
                cache = pows[i]
                v = cache.get(k)
                if v is None:
                    v = cache[1] ** k
                    cache[k] = v
                if not v:
                    scalar = None
                    break
                scalar = scalar * v
            if scalar is None:
                continue
            for mask, q in c.coeffs.items():
                prod = scalar * q
                prev = acc.get(mask)
                acc[mask] = prod if prev is None else prev + prod
        return AlgebraElement(self.signature, acc)

    def eval_float(self, point: Sequence[float]) -> dict[int, float]:
        acc: dict[int, float] = {}
        for e, c in self.terms.items():
            scalar = 1.0
            for p, k in zip(point, e):
                if k:
                    scalar *= p**k
            for mask, q in c.coeffs.items():
                acc[mask] = acc.get(mask, 0.0) + scalar * float(q)
        return acc

    # -- helpers for denominators ---------------------------------------------

    def scalar_coeff(self, exps: Exponents) -> Fraction:
        c = self.terms.get(tuple(exps))
        return c.scalar_part() if c is not None else Fraction(0)

    def _leading_key(self) -> Exponents:
        """Graded-lex maximal exponent vector (zero polynomial not allowed)."""
        return max(self.terms, key=lambda e: (sum(e), e))

    def sort_key(self):
        """Deterministic ordering key; meaningful for real-scalar polynomials."""
        items = []
        for e in sorted(self.terms):
            c = self.terms[e].scalar_part()
            items.append((e, c.numerator, c.denominator))
        return (self.var_count, tuple(items))

    # -- comparisons -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, CoordPoly):
            return NotImplemented
        return (
            self.signature == other.signature
            and self.var_count == other.var_count
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.signature, self.var_count, frozenset(self.terms.items()))
            )
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = [f"x^{list(e)}*({c!r})" for e, c in sorted(self.terms.items())]
        return "Poly(" + " + ".join(bits) + ")"


# -- coordinate building blocks -----------------------------------------------


def coord_x(signature: AlgebraSignature) -> CoordPoly:
    """The coordinate function x = x_0 + sum_h x_h e_h."""
    n = signature.coord_count
    terms = {}
    unit_exp = lambda h: tuple(1 if t == h else 0 for t in range(n))  # noqa: E731
    terms[unit_exp(0)] = AlgebraElement.one(signature)
    for h, mask in enumerate(signature.imag_masks, start=1):
        terms[unit_exp(h)] = AlgebraElement.basis(signature, mask)
    return CoordPoly(signature, n, terms)


def coord_xbar(signature: AlgebraSignature) -> CoordPoly:
    n = signature.coord_count
    unit_exp = lambda h: tuple(1 if t == h else 0 for t in range(n))  # noqa: E731
    terms = {unit_exp(0): AlgebraElement.one(signature)}
    for h, mask in enumerate(signature.imag_masks, start=1):
        terms[unit_exp(h)] = -AlgebraElement.basis(signature, mask)
    return CoordPoly(signature, n, terms)


def coord_im(signature: AlgebraSignature) -> CoordPoly:
    """Im(x) = sum_h x_h e_h as a polynomial."""
    n = signature.coord_count
    terms = {}
    for h, mask in enumerate(signature.imag_masks, start=1):
        exps = tuple(1 if t == h else 0 for t in range(n))
        terms[exps] = AlgebraElement.basis(signature, mask)
    return CoordPoly(signature, n, terms)


def coord_s(signature: AlgebraSignature) -> CoordPoly:
    """|Im(x)|^2 = sum_h x_h^2 as a real polynomial."""
    n = signature.coord_count
    terms = {}
    for h in range(1, n):
        exps = tuple(2 if t == h else 0 for t in range(n))
        terms[exps] = AlgebraElement.one(signature)
    return CoordPoly(signature, n, terms)


def restrict_poly(poly: CoordPoly, components: Sequence[Fraction]) -> CoordPoly:
    """Substitute x_0 <- alpha and x_h <- components[h-1] * beta.

    Returns a two-variable polynomial in (alpha, beta); the substitution scalars
    are the components of an imaginary unit, so this is the slice restriction.
    """
    if len(components) != poly.var_count - 1:
        raise ArityMismatchError(
            f"expected {poly.var_count - 1} components, got {len(components)}"
        )
    acc: dict[Exponents, AlgebraElement] = {}
    for e, c in poly.terms.items():
        scalar = Fraction(1)
        beta_deg = 0
        for comp, k in zip(components, e[1:]):
            if k:
                scalar *= comp**k
                beta_deg += k
        if not scalar:
            continue
        key = (e[0], beta_deg)
        prod = c * scalar
        prev = acc.get(key)
        acc[key] = prod if prev is None else prev + prod
    return CoordPoly._make(poly.signature, 2, acc)


# -- rational functions ---------------------------------------------------------


def _normalize_factor(poly: CoordPoly) -> tuple[CoordPoly, Fraction]:
    """Split a real-scalar polynomial into (primitive part, content).

    The primitive part has coprime integer coefficients and a positive leading
    coefficient under graded-lex order; poly == content * primitive.
    """
    if poly.is_zero():
        raise ZeroDenominatorError("zero denominator factor")
    if not poly.is_real_scalar():
        raise ValueError("denominator factors must be real-scalar polynomials")
    nums = []
    dens = []
    for c in poly.terms.values():
        q = c.scalar_part()
        nums.append(abs(q.numerator))
        dens.append(q.denominator)
    content = Fraction(gcd(*nums), lcm(*dens))
    lead = poly.scalar_coeff(poly._leading_key())
    if lead < 0:
        content = -content
    primitive = poly * (Fraction(1) / content)
    return primitive, content


def _merge_factors(
    factors: Iterable[tuple[CoordPoly, int]]
) -> tuple[tuple[CoordPoly, int], ...]:
    acc: dict[CoordPoly, int] = {}
    for p, k in factors:
        if k == 0:
            continue
        acc[p] = acc.get(p, 0) + k
    return tuple(sorted(acc.items(), key=lambda item: item[0].sort_key()))


class RationalFn:
    """Quotient of a CoordPoly by a product of real-scalar polynomial factors."""

    __slots__ = ("numer", "den_factors")

    def __init__(
        self,
        numer: CoordPoly,
        den_factors: Iterable[tuple[CoordPoly, int]] = (),
    ):
        scaled = numer
        clean: list[tuple[CoordPoly, int]] = []
        for p, k in den_factors:
            if k < 0:
                raise ValueError("denominator exponents must be nonnegative")
            if k == 0:
                continue
            if p.var_count != numer.var_count or p.signature != numer.signature:
                raise ArityMismatchError("denominator factor arity/signature mismatch")
            primitive, content = _normalize_factor(p)
            if content != 1:
                scaled = scaled * (Fraction(1) / content**k)
            if primitive.total_degree() > 0:
                clean.append((primitive, k))
            # constant primitive factors reduce to 1 and are dropped
        self.numer = scaled
        self.den_factors = _merge_factors(clean)

    @classmethod
    def _make(cls, numer, den_factors):
        """Fast path for already-normalized factors."""
        obj = object.__new__(cls)
        obj.numer = numer
        obj.den_factors = den_factors
        return obj

    @classmethod
    def from_poly(cls, poly: CoordPoly) -> "RationalFn":
        return cls._make(poly, ())

    @classmethod
    def from_ratio(cls, numer: CoordPoly, denom: CoordPoly) -> "RationalFn":
        return cls(numer, ((denom, 1),))

    # -- structure --------------------------------------------------------------

    @property
    def signature(self):
        return self.numer.signature

    @property
    def var_count(self):
        return self.numer.var_count

    def is_zero(self) -> bool:
        return self.numer.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den_factors

    def den_poly(self) -> CoordPoly:
        out = CoordPoly.constant(self.signature, self.var_count, 1)
        for p, k in self.den_factors:
            out = out * p**k
        return out

    # -- arithmetic ----------------------------------------------------------------

    def _require_compatible(self, other: "RationalFn") -> None:
        self.numer._require_compatible(other.numer)

    def __add__(self, other):
        if isinstance(other, CoordPoly):
            other = RationalFn.from_poly(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        self._require_compatible(other)
        mine = dict(self.den_factors)
        theirs = dict(other.den_factors)
        shared: dict[CoordPoly, int] = dict(mine)
        for p, k in theirs.items():
            shared[p] = max(shared.get(p, 0), k)
        cof_self = CoordPoly.constant(self.signature, self.var_count, 1)
        cof_other = CoordPoly.constant(self.signature, self.var_count, 1)
        for p, k in shared.items():
            d_self = k - mine.get(p, 0)
            d_other = k - theirs.get(p, 0)
            if d_self:
                cof_self = cof_self * p**d_self
            if d_other:
                cof_other = cof_other * p**d_other
        numer = self.numer * cof_self + other.numer * cof_other
        return RationalFn._make(numer, _merge_factors(shared.items()))

    def __neg__(self):
        return RationalFn._make(-self.numer, self.den_factors)

    def __sub__(self, other):
        if isinstance(other, CoordPoly):
            other = RationalFn.from_poly(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalFn):
            self._require_compatible(other)
            return RationalFn._make(
                self.numer * other.numer,
                _merge_factors(self.den_factors + other.den_factors),
            )
        if isinstance(other, (int, Fraction)):
            return RationalFn._make(self.numer * other, self.den_factors)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def scale_left(self, coeff: AlgebraElement) -> "RationalFn":
        return RationalFn._make(self.numer.scale_left(coeff), self.den_factors)

    def mul_poly_left(self, poly: CoordPoly) -> "RationalFn":
        return RationalFn._make(poly * self.numer, self.den_factors)

    def mul_poly_right(self, poly: CoordPoly) -> "RationalFn":
        return RationalFn._make(self.numer * poly, self.den_factors)

    # -- calculus --------------------------------------------------------------------

    def partial(self, index: int) -> "RationalFn":
        """Exact partial derivative via the quotient rule.

        Factors untouched by d/dx_index keep their exponent; each dependent
        factor F^k contributes through (dN*F - k*N*dF)/F^(k+1).
        """
        dependent = []
        independent = []
        for p, k in self.den_factors:
            dp = p.partial(index)
            (independent if dp.is_zero() else dependent).append((p, k, dp))
        d_numer = self.numer.partial(index)
        if not dependent:
            return RationalFn._make(d_numer, self.den_factors)
        prod_dep = CoordPoly.constant(self.signature, self.var_count, 1)
        for p, _, _ in dependent:
            prod_dep = prod_dep * p
        total = d_numer * prod_dep
        for i, (p, k, dp) in enumerate(dependent):
            cof = CoordPoly.constant(self.signature, self.var_count, k)
            for j, (q, _, _) in enumerate(dependent):
                if j != i:
                    cof = cof * q
            total = total - self.numer * (dp * cof)
        all_factors = [(p, k + 1) for p, k, _ in dependent]
        all_factors += [(p, k) for p, k, _ in independent]
        return RationalFn._make(total, _merge_factors(all_factors))

    # -- evaluation --------------------------------------------------------------------

    def eval(self, point: Sequence[RationalLike]) -> AlgebraElement:
        pt = [Fraction(p) for p in point]
        den = Fraction(1)
        for p, k in self.den_factors:
            v = p.eval(pt).scalar_part()
            if not v:
                raise DenominatorVanishesError(pt)
            den *= v**k
        return self.numer.eval(pt) * (Fraction(1) / den)

    def eval_float(self, point: Sequence[float]) -> dict[int, float]:
        den = 1.0
        for p, k in self.den_factors:
            v = p.eval_float(point).get(0, 0.0)
            den *= v**k
        out = self.numer.eval_float(point)
        return {mask: v / den for mask, v in out.items()}

    # -- comparisons -----------------------------------------------------------------------

    def __eq__(self, other):
        """Exact value equality (cross-multiplied numerator comparison)."""
        if isinstance(other, CoordPoly):
            other = RationalFn.from_poly(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        if (
            self.signature != other.signature
            or self.var_count != other.var_count
        ):
            return False
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        if not self.den_factors:
            return f"RationalFn({self.numer!r})"
        return f"RationalFn({self.numer!r} / {self.den_factors!r})"


def restrict_rf(rf: RationalFn, components: Sequence[Fraction]) -> RationalFn:
    """Slice restriction of a rational function; see restrict_poly.

    Raises ZeroDenominatorError if a denominator factor collapses to the zero
    polynomial under the substitution.
    """
    numer = restrict_poly(rf.numer, components)
    factors = []
    for p, k in rf.den_factors:
        q = restrict_poly(p, components)
        if q.is_zero():
            raise ZeroDenominatorError(
                "denominator vanishes identically on this slice"
            )
        factors.append((q, k))
    return RationalFn(numer, factors)
