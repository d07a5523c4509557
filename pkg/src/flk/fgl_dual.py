"""Truncated formal group laws in exponential coordinates.

A GroupLaw packages n series F_i(x, y) in 2n variables, truncated at a
fixed order: the finite jet of the group multiplication attached to a
Lie algebra.  The coordinates are the divided-power duals of the
symmetrized monomial basis of the enveloping algebra, which makes the
law literally the Baker-Campbell-Hausdorff series and lets an
independent exp/log computation cross-validate it coefficient by
coefficient.
"""

from __future__ import annotations

from typing import Sequence

from .algebra_core import (
    Scalar,
    TruncSeries,
    graded_lex_key,
    mi_degree,
    mi_factorial,
)
from .errors import (
    InputError,
    InsufficientOrderError,
    InternalConsistencyError,
    PreconditionError,
    ShapeError,
)
from .liealg import LieAlgebra, LinearMap, validate_jacobi
from .uea_hopf import (
    monomials_upto,
    pbw_multiply,
    symmetric_degree1_coefficients,
    symmetrized_monomial,
)

__all__ = [
    "GroupLaw",
    "InverseSeries",
    "group_law_from_uea",
    "fgl_axiom_check",
    "fgl_inverse",
    "lie_from_fgl",
    "fgl_equivariance_check",
]


class GroupLaw:
    """n truncated series in x_1..x_n, y_1..y_n: the multiplication jet."""

    __slots__ = ("algebra", "order", "components")

    def __init__(self, algebra: LieAlgebra, order: int, components: Sequence[TruncSeries]):
        components = tuple(components)
        n = algebra.dim
        if len(components) != n:
            raise ShapeError(f"{n} components required, got {len(components)}")
        for f in components:
            if f.num_vars != 2 * n:
                raise ShapeError("group law components must have 2n variables")
            if f.order != order:
                raise ShapeError("component order differs from the law's order")
            if not f.constant_term().is_zero():
                raise ShapeError("group law components must have zero constant term")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("GroupLaw is immutable")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def truncated_to(self, order: int) -> "GroupLaw":
        return GroupLaw(self.algebra, order, [f.truncated_to(order) for f in self.components])

    def var_names(self) -> list[str]:
        names = [f"x{i + 1}" for i in range(self.dim)]
        names += [f"y{i + 1}" for i in range(self.dim)]
        return names

    def __eq__(self, other):
        if not isinstance(other, GroupLaw):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.order == other.order
            and self.components == other.components
        )

    def serialize(self) -> list[dict]:
        """Canonical coefficient tables: one sorted list of terms per component."""
        n = self.dim
        out = []
        for f in self.components:
            rows = []
            for exps, coeff in sorted(f.terms.items(), key=lambda kv: graded_lex_key(kv[0])):
                rows.append(
                    {
                        "x_exponents": list(exps[:n]),
                        "y_exponents": list(exps[n:]),
                        "coefficient": str(coeff),
                    }
                )
            out.append(rows)
        return out

    def __repr__(self):
        return f"GroupLaw(dim {self.dim}, order {self.order})"


class InverseSeries:
    """The formal inverse: n series in x_1..x_n with ell(x) = -x + higher."""

    __slots__ = ("algebra", "order", "components")

    def __init__(self, algebra: LieAlgebra, order: int, components: Sequence[TruncSeries]):
        components = tuple(components)
        if len(components) != algebra.dim:
            raise ShapeError("one inverse component per basis vector required")
        for f in components:
            if f.num_vars != algebra.dim or f.order != order:
                raise ShapeError("inverse components must be n-variable series at the law's order")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("InverseSeries is immutable")

    def __eq__(self, other):
        if not isinstance(other, InverseSeries):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.order == other.order
            and self.components == other.components
        )


# ---------------------------------------------------------------------------
# Construction from the enveloping algebra


def group_law_from_uea(g: LieAlgebra, order: int) -> GroupLaw:
    """The group law of g read off the dual of enveloping-algebra multiplication.

    The coordinate functional attached to e_i picks the degree-1
    component in the symmetrized basis.  For exponent vectors a, b the
    coefficient of x^a y^b in F is deg1sym(sym(e^a) sym(e^b)) / (a! b!):
    the divided-power dual pairing of the coordinate with a product of
    symmetrized monomials.
    """
    if order < 1:
        raise InputError("order must be at least 1")
    jac = validate_jacobi(g)
    if jac:
        raise PreconditionError("structure constants violate the Jacobi identity", jac)
    n = g.dim
    term_maps: list[dict] = [dict() for _ in range(n)]
    x_monomials = monomials_upto(n, order)
    for a in x_monomials:
        da = mi_degree(a)
        if da > order:
            continue
        sym_a = symmetrized_monomial(g, a)
        for b in monomials_upto(n, order - da):
            if mi_degree(b) + da == 0:
                continue
            product = pbw_multiply(sym_a, symmetrized_monomial(g, b))
            vec = symmetric_degree1_coefficients(product)
            if all(c.is_zero() for c in vec):
                continue
            denom = Scalar(mi_factorial(a) * mi_factorial(b))
            key = tuple(a) + tuple(b)
            for i in range(n):
                if not vec[i].is_zero():
                    term_maps[i][key] = vec[i] / denom
    components = [TruncSeries(2 * n, order, terms) for terms in term_maps]
    return GroupLaw(g, order, components)


# ---------------------------------------------------------------------------
# Axioms


def _x_var(n: int, order: int, i: int) -> TruncSeries:
    return TruncSeries.variable(2 * n, order, i)


def _zero2n(n: int, order: int) -> TruncSeries:
    return TruncSeries.zero(2 * n, order)


def _series_diff_failures(code: str, component: int, lhs: TruncSeries, rhs: TruncSeries, n: int):
    diff = lhs - rhs
    failures = []
    for exps, coeff in sorted(diff.terms.items(), key=lambda kv: graded_lex_key(kv[0])):
        failures.append(
            {
                "code": code,
                "component": component,
                "exponents": list(exps),
                "lhs": str(lhs.terms.get(exps, Scalar.zero())),
                "rhs": str(rhs.terms.get(exps, Scalar.zero())),
            }
        )
    return failures


def fgl_axiom_check(law: GroupLaw) -> list[dict]:
    """Associativity, two-sided unit, and two-sided formal inverse, mod order+1.

    Coefficient-level mismatches are returned as report entries; an
    untouched law from a Jacobi-valid algebra yields an empty report.
    """
    n, order = law.dim, law.order
    failures: list[dict] = []
    # units: F(x, 0) = x, F(0, y) = y
    xvars = [_x_var(n, order, i) for i in range(n)]
    yvars = [_x_var(n, order, n + i) for i in range(n)]
    zeros = [_zero2n(n, order) for _ in range(n)]
    for i, f in enumerate(law.components):
        right = f.substitute(xvars + zeros)
        failures += _series_diff_failures("unit-right", i, right, xvars[i], n)
        left = f.substitute(zeros + yvars)
        failures += _series_diff_failures("unit-left", i, left, yvars[i], n)
    # associativity in 3n variables
    m = 3 * n
    x3 = [TruncSeries.variable(m, order, i) for i in range(n)]
    y3 = [TruncSeries.variable(m, order, n + i) for i in range(n)]
    z3 = [TruncSeries.variable(m, order, 2 * n + i) for i in range(n)]
    f_xy = [f.remap(m, list(range(2 * n))) for f in law.components]
    f_yz = [
        f.remap(m, list(range(n, 2 * n)) + list(range(2 * n, 3 * n)))
        for f in law.components
    ]
    for i, f in enumerate(law.components):
        lhs = f.substitute(f_xy + z3)
        rhs = f.substitute(x3 + f_yz)
        failures += _series_diff_failures("associativity", i, lhs, rhs, n)
    # inverse two-sidedness
    inv = fgl_inverse(law)
    xv = [TruncSeries.variable(n, order, i) for i in range(n)]
    zero_n = TruncSeries.zero(n, order)
    for i, f in enumerate(law.components):
        right = f.substitute(xv + list(inv.components))
        failures += _series_diff_failures("inverse-right", i, right, zero_n, n)
        left = f.substitute(list(inv.components) + xv)
        failures += _series_diff_failures("inverse-left", i, left, zero_n, n)
    return failures


def fgl_inverse(law: GroupLaw) -> InverseSeries:
    """Solve F(x, inv(x)) = 0 degree by degree; always exists and is unique."""
    n, order = law.dim, law.order
    xv = [TruncSeries.variable(n, order, i) for i in range(n)]
    inv = [s.scaled(-1) for s in xv]
    for _ in range(order):
        residual = [f.substitute(xv + inv) for f in law.components]
        if all(r.is_zero() for r in residual):
            break
        inv = [c - r for c, r in zip(inv, residual)]
    residual = [f.substitute(xv + inv) for f in law.components]
    if not all(r.is_zero() for r in residual):
        raise InternalConsistencyError("formal inverse iteration failed to converge")
    return InverseSeries(law.algebra, order, inv)


def lie_from_fgl(law: GroupLaw) -> LieAlgebra:
    """Recover structure constants from the antisymmetrized (1,1)-jet."""
    if law.order < 2:
        raise InsufficientOrderError("order >= 2 required to extract the bracket")
    n = law.dim
    brackets: dict = {}
    for i in range(n):
        for j in range(i + 1, n):
            key_ij = tuple(
                1 if p == i else 0 for p in range(n)
            ) + tuple(1 if p == j else 0 for p in range(n))
            key_ji = tuple(
                1 if p == j else 0 for p in range(n)
            ) + tuple(1 if p == i else 0 for p in range(n))
            entry = {}
            for k, f in enumerate(law.components):
                c = f.coefficient(key_ij) - f.coefficient(key_ji)
                if not c.is_zero():
                    entry[k] = c
            if entry:
                brackets[(i, j)] = entry
    return LieAlgebra(law.algebra.basis_names, brackets)


def fgl_equivariance_check(law: GroupLaw, gamma: LinearMap):
    """True iff F(gamma x, gamma y) = gamma F(x, y) mod order+1; else a witness."""
    n, order = law.dim, law.order
    if gamma.domain_dim != n or gamma.codomain_dim != n:
        raise ShapeError("equivariance candidate must be square of the algebra dimension")
    # images of the substitution x_i -> sum_j gamma[i][j] x_j (same for y)
    images = []
    for i in range(n):
        terms = {}
        for j in range(n):
            coeff = gamma.entry(i, j)
            if not coeff.is_zero():
                key = tuple(1 if p == j else 0 for p in range(2 * n))
                terms[key] = coeff
        images.append(TruncSeries(2 * n, order, terms))
    for i in range(n):
        terms = {}
        for j in range(n):
            coeff = gamma.entry(i, j)
            if not coeff.is_zero():
                key = tuple(1 if p == n + j else 0 for p in range(2 * n))
                terms[key] = coeff
        images.append(TruncSeries(2 * n, order, terms))
    for k in range(n):
        lhs = law.components[k].substitute(images)
        rhs = TruncSeries.zero(2 * n, order)
        for j in range(n):
            coeff = gamma.entry(k, j)
            if not coeff.is_zero():
                rhs = rhs + law.components[j].scaled(coeff)
        if lhs != rhs:
            diff = lhs - rhs
            exps = sorted(diff.terms, key=graded_lex_key)[0]
            witness = {
                "component": k,
                "exponents": list(exps),
                "lhs": str(lhs.terms.get(exps, Scalar.zero())),
                "rhs": str(rhs.terms.get(exps, Scalar.zero())),
            }
            return False, witness
    return True, None
