"""Independent Baker-Campbell-Hausdorff computation of the group law.

Works in U(g) tensored with truncated polynomials in the 2n scalar
variables x_1..x_n, y_1..y_n: scalar variables commute with everything,
only the enveloping-algebra factors are noncommutative.  The group law
is log(exp(X) exp(Y)) with X = sum x_i e_i, Y = sum y_i e_i; every
scalar-monomial coefficient of the result must be a degree-1 element
(a Lie element), which is asserted as a hard internal check.
"""

from __future__ import annotations

from .algebra_core import MultiIndex, Scalar, TruncSeries, mi_add, mi_degree
from .errors import InputError, InternalConsistencyError, PreconditionError, ShapeError
from .fgl_dual import GroupLaw
from .liealg import LieAlgebra, validate_jacobi
from .uea_hopf import PBWPoly, pbw_multiply

__all__ = ["UEASeries", "uea_exp", "uea_log", "bch_group_law"]


class UEASeries:
    """An element of U(g) x (polynomials in the scalar variables), truncated.

    terms maps scalar multi-indices of degree <= order to exact PBWPoly
    coefficients; the enveloping-algebra parts are never truncated.
    """

    __slots__ = ("algebra", "num_scalar_vars", "order", "terms")

    def __init__(self, algebra: LieAlgebra, num_scalar_vars: int, order: int, terms=()):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "num_scalar_vars", num_scalar_vars)
        object.__setattr__(self, "order", order)
        clean = {}
        for exps, poly in dict(terms).items():
            exps = tuple(int(a) for a in exps)
            if len(exps) != num_scalar_vars:
                raise ShapeError("scalar multi-index has the wrong number of variables")
            if mi_degree(exps) > order:
                raise ShapeError("scalar multi-index exceeds the truncation order")
            if not isinstance(poly, PBWPoly):
                raise ShapeError("coefficients must be PBWPoly values")
            if not poly.is_zero():
                clean[exps] = poly
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("UEASeries is immutable")

    @classmethod
    def zero(cls, algebra: LieAlgebra, num_scalar_vars: int, order: int) -> "UEASeries":
        return cls(algebra, num_scalar_vars, order, {})

    @classmethod
    def one(cls, algebra: LieAlgebra, num_scalar_vars: int, order: int) -> "UEASeries":
        return cls(
            algebra,
            num_scalar_vars,
            order,
            {(0,) * num_scalar_vars: PBWPoly.one(algebra)},
        )

    def _check(self, other: "UEASeries"):
        if (
            self.num_scalar_vars != other.num_scalar_vars
            or self.order != other.order
            or self.algebra != other.algebra
        ):
            raise ShapeError("operands have mismatched algebra, variables, or order")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for exps, poly in other.terms.items():
            s = terms.get(exps)
            s = poly if s is None else s + poly
            if s.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = s
        return UEASeries(self.algebra, self.num_scalar_vars, self.order, terms)

    def __neg__(self):
        return UEASeries(
            self.algebra,
            self.num_scalar_vars,
            self.order,
            {e: -p for e, p in self.terms.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, factor) -> "UEASeries":
        factor = Scalar.coerce(factor)
        return UEASeries(
            self.algebra,
            self.num_scalar_vars,
            self.order,
            {e: p.scaled(factor) for e, p in self.terms.items()},
        )

    def __mul__(self, other):
        self._check(other)
        terms: dict = {}
        for ea, pa in self.terms.items():
            da = mi_degree(ea)
            for eb, pb in other.terms.items():
                if da + mi_degree(eb) > self.order:
                    continue
                key = mi_add(ea, eb)
                product = pbw_multiply(pa, pb)
                s = terms.get(key)
                s = product if s is None else s + product
                if s.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = s
        return UEASeries(self.algebra, self.num_scalar_vars, self.order, terms)

    def scalar_constant_part(self) -> PBWPoly:
        return self.terms.get(
            (0,) * self.num_scalar_vars, PBWPoly.zero(self.algebra)
        )

    def truncated_to(self, order: int) -> "UEASeries":
        if order > self.order:
            raise ShapeError("cannot raise the truncation order")
        return UEASeries(
            self.algebra,
            self.num_scalar_vars,
            order,
            {e: p for e, p in self.terms.items() if mi_degree(e) <= order},
        )

    def __eq__(self, other):
        if not isinstance(other, UEASeries):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.num_scalar_vars == other.num_scalar_vars
            and self.order == other.order
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"UEASeries({len(self.terms)} scalar terms, order {self.order})"


def uea_exp(v: UEASeries) -> UEASeries:
    """Sum of v^k / k! for k = 0..order; v must have no scalar-degree-0 term."""
    if not v.scalar_constant_part().is_zero():
        raise PreconditionError("exponential argument has a nonzero scalar-constant term")
    result = UEASeries.one(v.algebra, v.num_scalar_vars, v.order)
    power = result
    for k in range(1, v.order + 1):
        power = (power * v).scaled(Scalar(1) / Scalar(k))
        if not power.terms:
            break
        result = result + power
    return result


def uea_log(u: UEASeries) -> UEASeries:
    """Mercator series of u around 1; the scalar-degree-0 term must equal 1."""
    if u.scalar_constant_part() != PBWPoly.one(u.algebra):
        raise PreconditionError("logarithm argument must have scalar-constant term 1")
    w = u - UEASeries.one(u.algebra, u.num_scalar_vars, u.order)
    result = UEASeries.zero(u.algebra, u.num_scalar_vars, u.order)
    power = UEASeries.one(u.algebra, u.num_scalar_vars, u.order)
    for k in range(1, u.order + 1):
        power = power * w
        if not power.terms:
            break
        sign = Scalar(1 if k % 2 else -1) / Scalar(k)
        result = result + power.scaled(sign)
    return result


def bch_group_law(g: LieAlgebra, order: int) -> GroupLaw:
    """Brute-force group law: log(exp(X) exp(Y)) expanded and straightened.

    Raises InternalConsistencyError if any coefficient of the result
    fails to be a degree-1 element; that can only happen through an
    implementation bug, never on Jacobi-valid input.
    """
    if order < 1:
        raise InputError("order must be at least 1")
    jac = validate_jacobi(g)
    if jac:
        raise PreconditionError("structure constants violate the Jacobi identity", jac)
    n = g.dim
    nv = 2 * n

    def linear_series(offset: int) -> UEASeries:
        terms = {}
        for i in range(n):
            exps = tuple(1 if p == offset + i else 0 for p in range(nv))
            terms[exps] = PBWPoly.generator(g, i)
        return UEASeries(g, nv, order, terms)

    x_series = linear_series(0)
    y_series = linear_series(n)
    z = uea_log(uea_exp(x_series) * uea_exp(y_series))
    component_terms: list[dict[MultiIndex, Scalar]] = [dict() for _ in range(n)]
    for exps, poly in z.terms.items():
        if not poly.max_nondegree1():
            raise InternalConsistencyError(
                f"non-primitive coefficient at scalar monomial {exps}: {poly}"
            )
        vec = poly.degree_one_vector()
        for i in range(n):
            if not vec[i].is_zero():
                component_terms[i][exps] = vec[i]
    components = [TruncSeries(nv, order, terms) for terms in component_terms]
    return GroupLaw(g, order, components)
