"""The universal enveloping algebra with its PBW basis and Hopf structure.

Elements are stored on the ordered monomial basis e1^a1 ... en^an (the
input basis order is the PBW order and is never reordered).  Products
are straightened with the rewrite e_j e_i = e_i e_j + [e_j, e_i] for
j > i; the rewrite strictly decreases (total degree, inversion count)
lexicographically, so straightening terminates.  Word straightenings and
monomial-pair products are memoized per algebra; the caches are
idempotent (a key always maps to the same value), so concurrent reads
and lost-update races are benign.
"""

from __future__ import annotations

import math
from itertools import permutations
from typing import Sequence

from . import _linalg
from .algebra_core import MultiIndex, Scalar, graded_lex_key, mi_degree
from .errors import InputError, ShapeError
from .liealg import LieAlgebra

__all__ = [
    "PBWPoly",
    "Tensor2",
    "HopfTable",
    "pbw_multiply",
    "coproduct",
    "counit",
    "antipode",
    "primitives_upto",
    "hopf_axiom_check",
    "export_hopf_table",
    "prim_of_table",
]


def _word_of(exps: MultiIndex) -> tuple[int, ...]:
    word = []
    for i, a in enumerate(exps):
        word.extend([i] * a)
    return tuple(word)


def _exps_of(word: Sequence[int], n: int) -> MultiIndex:
    exps = [0] * n
    for letter in word:
        exps[letter] += 1
    return tuple(exps)


def _merge(into: dict, key, coeff: Scalar):
    s = into.get(key, Scalar.zero()) + coeff
    if s.is_zero():
        into.pop(key, None)
    else:
        into[key] = s


class PBWPoly:
    """A finite linear combination of ordered PBW monomials of one algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebra, terms=()):
        object.__setattr__(self, "algebra", algebra)
        clean = {}
        for exps, coeff in dict(terms).items():
            exps = tuple(int(a) for a in exps)
            if len(exps) != algebra.dim or any(a < 0 for a in exps):
                raise ShapeError(f"bad PBW exponent vector {exps} for dim {algebra.dim}")
            coeff = Scalar.coerce(coeff)
            if not coeff.is_zero():
                clean[exps] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PBWPoly is immutable")

    @classmethod
    def zero(cls, algebra: LieAlgebra) -> "PBWPoly":
        return cls(algebra, {})

    @classmethod
    def one(cls, algebra: LieAlgebra) -> "PBWPoly":
        return cls(algebra, {(0,) * algebra.dim: Scalar.one()})

    @classmethod
    def generator(cls, algebra: LieAlgebra, i: int) -> "PBWPoly":
        exps = tuple(1 if j == i else 0 for j in range(algebra.dim))
        return cls(algebra, {exps: Scalar.one()})

    @classmethod
    def from_vector(cls, algebra: LieAlgebra, vec: Sequence) -> "PBWPoly":
        terms = {}
        for i, coeff in enumerate(vec):
            coeff = Scalar.coerce(coeff)
            if not coeff.is_zero():
                exps = tuple(1 if j == i else 0 for j in range(algebra.dim))
                terms[exps] = coeff
        return cls(algebra, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((mi_degree(e) for e in self.terms), default=0)

    def coefficient(self, exps: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(exps), Scalar.zero())

    def degree_one_vector(self):
        """Coefficients at the bare generators, as a plain vector."""
        out = []
        for i in range(self.algebra.dim):
            exps = tuple(1 if j == i else 0 for j in range(self.algebra.dim))
            out.append(self.terms.get(exps, Scalar.zero()))
        return tuple(out)

    def max_nondegree1(self) -> bool:
        """True iff every stored monomial has total degree exactly 1."""
        return all(mi_degree(e) == 1 for e in self.terms)

    def _same(self, other: "PBWPoly"):
        if self.algebra is other.algebra or self.algebra == other.algebra:
            return
        raise ShapeError("operands live over different Lie algebras")

    def __add__(self, other):
        self._same(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            _merge(terms, exps, coeff)
        return PBWPoly(self.algebra, terms)

    def __neg__(self):
        return PBWPoly(self.algebra, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, factor) -> "PBWPoly":
        factor = Scalar.coerce(factor)
        if factor.is_zero():
            return PBWPoly.zero(self.algebra)
        return PBWPoly(self.algebra, {e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other):
        return pbw_multiply(self, other)

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: graded_lex_key(kv[0]))

    def __eq__(self, other):
        if not isinstance(other, PBWPoly):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def monomial_text(self, exps: MultiIndex) -> str:
        if mi_degree(exps) == 0:
            return "1"
        parts = []
        for name, a in zip(self.algebra.basis_names, exps):
            if a == 1:
                parts.append(name)
            elif a > 1:
                parts.append(f"{name}^{a}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for exps, coeff in self.items_sorted():
            mono = self.monomial_text(exps)
            cs = str(coeff)
            if ("+" in cs[1:]) or ("-" in cs[1:]):
                cs = f"({cs})"
            if mono == "1":
                chunks.append(cs)
            elif cs == "1":
                chunks.append(mono)
            elif cs == "-1":
                chunks.append("-" + mono)
            else:
                chunks.append(cs + "*" + mono)
        text = chunks[0]
        for chunk in chunks[1:]:
            text += " - " + chunk[1:] if chunk.startswith("-") else " + " + chunk
        return text

    def __repr__(self):
        return f"PBWPoly({str(self)})"


# ---------------------------------------------------------------------------
# Straightening


def _straighten(algebra: LieAlgebra, word: tuple[int, ...]) -> dict:
    """Normal form of a generator word as {exponent vector: Scalar}.

    Rewrites the first descent e_j e_i (j > i) to e_i e_j + [e_j, e_i].
    The swap keeps the degree and lowers the inversion count; the bracket
    terms lower the degree, so (degree, inversions) strictly decreases.
    """
    cache = algebra._cache.setdefault("straighten", {})
    done = cache.get(word)
    if done is not None:
        return done
    descent = None
    for p in range(len(word) - 1):
        if word[p] > word[p + 1]:
            descent = p
            break
    if descent is None:
        result = {_exps_of(word, algebra.dim): Scalar.one()}
        cache[word] = result
        return result
    j, i = word[descent], word[descent + 1]
    swapped = word[:descent] + (i, j) + word[descent + 2:]
    result = dict(_straighten(algebra, swapped))
    # [e_j, e_i] = -c^k_{ij} e_k for i < j
    for k, coeff in algebra.c.get((i, j), {}).items():
        shorter = word[:descent] + (k,) + word[descent + 2:]
        for exps, c in _straighten(algebra, shorter).items():
            _merge(result, exps, c * (-coeff))
    cache[word] = result
    return result


def _monomial_product(algebra: LieAlgebra, a: MultiIndex, b: MultiIndex) -> dict:
    cache = algebra._cache.setdefault("pair_product", {})
    key = (a, b)
    done = cache.get(key)
    if done is None:
        done = _straighten(algebra, _word_of(a) + _word_of(b))
        cache[key] = done
    return done


def pbw_multiply(a: PBWPoly, b: PBWPoly) -> PBWPoly:
    """Exact product in the enveloping algebra, straightened to PBW form."""
    a._same(b)
    terms: dict = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            factor = ca * cb
            for exps, coeff in _monomial_product(a.algebra, ea, eb).items():
                _merge(terms, exps, factor * coeff)
    return PBWPoly(a.algebra, terms)


# ---------------------------------------------------------------------------
# Coalgebra structure


class Tensor2:
    """An element of U(g) tensor U(g) on pairs of PBW monomials."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebra, terms=()):
        object.__setattr__(self, "algebra", algebra)
        clean = {}
        for (ea, eb), coeff in dict(terms).items():
            coeff = Scalar.coerce(coeff)
            if not coeff.is_zero():
                clean[(tuple(ea), tuple(eb))] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor2 is immutable")

    def __add__(self, other):
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            _merge(terms, key, coeff)
        return Tensor2(self.algebra, terms)

    def __sub__(self, other):
        return self + other.scaled(Scalar(-1))

    def scaled(self, factor) -> "Tensor2":
        factor = Scalar.coerce(factor)
        return Tensor2(self.algebra, {k: c * factor for k, c in self.terms.items()})

    def __mul__(self, other: "Tensor2") -> "Tensor2":
        """Leg-wise product (a1 x a2)(b1 x b2) = a1 b1 x a2 b2."""
        terms: dict = {}
        for (a1, a2), ca in self.terms.items():
            for (b1, b2), cb in other.terms.items():
                factor = ca * cb
                left = _monomial_product(self.algebra, a1, b1)
                right = _monomial_product(self.algebra, a2, b2)
                for e1, c1 in left.items():
                    for e2, c2 in right.items():
                        _merge(terms, (e1, e2), factor * c1 * c2)
        return Tensor2(self.algebra, terms)

    def swapped(self) -> "Tensor2":
        return Tensor2(self.algebra, {(b, a): c for (a, b), c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Tensor2):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms


def _coproduct_monomial(algebra: LieAlgebra, exps: MultiIndex) -> dict:
    """Multinomial coproduct of one PBW monomial.

    Delta is an algebra map with primitive generators, and expanding the
    product over generators in PBW order keeps each tensor leg already
    ordered, so no straightening is needed here.
    """
    cache = algebra._cache.setdefault("coproduct", {})
    done = cache.get(exps)
    if done is not None:
        return done
    splits = [((0,) * len(exps), (0,) * len(exps), 1)]
    for pos, a in enumerate(exps):
        if a == 0:
            continue
        grown = []
        for left, right, mult in splits:
            for k in range(a + 1):
                new_left = left[:pos] + (k,) + left[pos + 1:]
                new_right = right[:pos] + (a - k,) + right[pos + 1:]
                grown.append((new_left, new_right, mult * math.comb(a, k)))
        splits = grown
    done = {(left, right): Scalar(mult) for left, right, mult in splits}
    cache[exps] = done
    return done


def coproduct(a: PBWPoly) -> Tensor2:
    """Delta(e_i) = e_i x 1 + 1 x e_i, extended as an algebra morphism."""
    terms: dict = {}
    for exps, coeff in a.terms.items():
        for key, mult in _coproduct_monomial(a.algebra, exps).items():
            _merge(terms, key, coeff * mult)
    return Tensor2(a.algebra, terms)


def counit(a: PBWPoly) -> Scalar:
    return a.coefficient((0,) * a.algebra.dim)


def antipode(a: PBWPoly) -> PBWPoly:
    """S(e_i) = -e_i extended as an algebra anti-morphism."""
    terms: dict = {}
    for exps, coeff in a.terms.items():
        word = _word_of(exps)
        sign = Scalar(-1 if len(word) % 2 else 1)
        for out, c in _straighten(a.algebra, word[::-1]).items():
            _merge(terms, out, coeff * sign * c)
    return PBWPoly(a.algebra, terms)


# ---------------------------------------------------------------------------
# The symmetrized (divided-power) basis

def symmetrized_monomial(algebra: LieAlgebra, exps: MultiIndex) -> PBWPoly:
    """Average of all generator-word rearrangements of e^exps, straightened.

    These elements span the coalgebra decomposition of U(g) by symmetric
    degree; expanding against them (rather than the raw PBW monomials)
    is what makes the dual coordinates exponential.
    """
    cache = algebra._cache.setdefault("symmetrized", {})
    done = cache.get(exps)
    if done is not None:
        return done
    word = _word_of(exps)
    if len(word) <= 1:
        done = PBWPoly(algebra, {tuple(exps): Scalar.one()})
        cache[exps] = done
        return done
    arrangements = set(permutations(word))
    # each distinct arrangement occurs len(word)!/len(arrangements) times
    weight = Scalar(1) / Scalar(math.factorial(len(word)))
    repeats = Scalar(math.factorial(len(word)) // len(arrangements))
    terms: dict = {}
    for arrangement in arrangements:
        for out, coeff in _straighten(algebra, arrangement).items():
            _merge(terms, out, coeff * weight * repeats)
    done = PBWPoly(algebra, terms)
    cache[exps] = done
    return done


def _deg1_symmetric_monomial(algebra: LieAlgebra, exps: MultiIndex) -> tuple:
    """Degree-1 coefficients of one PBW monomial in the symmetrized basis.

    The change of basis is unitriangular for the degree filtration
    (sym(m) = m + lower-degree terms), so peel the top and recurse.
    """
    cache = algebra._cache.setdefault("deg1sym", {})
    done = cache.get(exps)
    if done is not None:
        return done
    degree = mi_degree(exps)
    if degree == 0:
        done = (Scalar.zero(),) * algebra.dim
    elif degree == 1:
        done = tuple(
            Scalar.one() if a else Scalar.zero() for a in exps
        )
    else:
        remainder = PBWPoly(algebra, {exps: Scalar.one()}) - symmetrized_monomial(algebra, exps)
        done = symmetric_degree1_coefficients(remainder)
    cache[exps] = done
    return done


def symmetric_degree1_coefficients(poly: PBWPoly) -> tuple:
    """Coefficients of the bare generators when poly is expanded in the symmetrized basis."""
    out = [Scalar.zero()] * poly.algebra.dim
    for exps, coeff in poly.terms.items():
        contribution = _deg1_symmetric_monomial(poly.algebra, exps)
        for i in range(poly.algebra.dim):
            if not contribution[i].is_zero():
                out[i] = out[i] + coeff * contribution[i]
    return tuple(out)


# ---------------------------------------------------------------------------
# Monomial bookkeeping for finite-degree slices


def monomials_upto(n: int, bound: int) -> list[MultiIndex]:
    """All exponent vectors of total degree <= bound, graded-lex sorted."""
    out: list[MultiIndex] = []

    def grow(prefix, remaining, budget):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for a in range(budget + 1):
            grow(prefix + [a], remaining - 1, budget - a)

    for d in range(bound + 1):
        layer: list[MultiIndex] = []

        def exact(prefix, remaining, budget):
            if remaining == 1:
                layer.append(tuple(prefix + [budget]))
                return
            for a in range(budget + 1):
                exact(prefix + [a], remaining - 1, budget - a)

        if n == 0:
            if d == 0:
                layer.append(())
        else:
            exact([], n, d)
        out.extend(sorted(layer))
    return out


def primitives_upto(g: LieAlgebra, bound: int) -> list[PBWPoly]:
    """Basis of the primitive subspace of the degree <= bound slice.

    Solves Delta(p) = p x 1 + 1 x p exactly; the result is returned in
    reduced echelon form over the graded-lex monomial coordinates.
    """
    if bound < 1:
        raise InputError("degree bound must be at least 1")
    basis = monomials_upto(g.dim, bound)
    col_of = {m: i for i, m in enumerate(basis)}
    unit = (0,) * g.dim
    row_of: dict = {}
    entries: dict = {}
    for col, m in enumerate(basis):
        defect = dict(_coproduct_monomial(g, m))
        _merge(defect, (m, unit), Scalar(-1))
        _merge(defect, (unit, m), Scalar(-1))
        for key, coeff in defect.items():
            row = row_of.setdefault(key, len(row_of))
            entries[(row, col)] = coeff
    matrix = [
        [entries.get((r, c), Scalar.zero()) for c in range(len(basis))]
        for r in range(len(row_of))
    ]
    kernel = _linalg.kernel_basis(matrix, len(basis))
    polys = []
    for vec in kernel:
        terms = {basis[i]: coeff for i, coeff in enumerate(vec) if not coeff.is_zero()}
        polys.append(PBWPoly(g, terms))
    return polys


# ---------------------------------------------------------------------------
# Axiom checking


def hopf_axiom_check(g: LieAlgebra, bound: int) -> list[dict]:
    """Verify the Hopf axioms on every PBW monomial of degree <= bound.

    Checks coassociativity, both counit laws, both antipode laws, and
    Delta(ab) = Delta(a) Delta(b) on monomial pairs of total degree
    <= bound.  Failures are report content, not exceptions.
    """
    if bound < 1:
        raise InputError("degree bound must be at least 1")
    failures: list[dict] = []
    basis = monomials_upto(g.dim, bound)
    unit = (0,) * g.dim
    one = PBWPoly.one(g)

    def mono_name(exps):
        return PBWPoly.zero(g).monomial_text(exps)

    for m in basis:
        mono = PBWPoly(g, {m: Scalar.one()})
        delta = coproduct(mono)
        # coassociativity, computed by re-expanding a leg
        left: dict = {}
        right: dict = {}
        for (a, b), coeff in delta.terms.items():
            for (p, q), c2 in _coproduct_monomial(g, a).items():
                _merge(left, (p, q, b), coeff * c2)
            for (p, q), c2 in _coproduct_monomial(g, b).items():
                _merge(right, (a, p, q), coeff * c2)
        if left != right:
            failures.append({"code": "coassociativity", "monomial": mono_name(m)})
        # counit laws
        eps_left: dict = {}
        eps_right: dict = {}
        for (a, b), coeff in delta.terms.items():
            if a == unit:
                _merge(eps_left, b, coeff)
            if b == unit:
                _merge(eps_right, a, coeff)
        if eps_left != mono.terms or eps_right != mono.terms:
            failures.append({"code": "counit-law", "monomial": mono_name(m)})
        # antipode laws: m(S x id)Delta = counit * 1 = m(id x S)Delta
        expected = one.scaled(counit(mono))
        s_left = PBWPoly.zero(g)
        s_right = PBWPoly.zero(g)
        for (a, b), coeff in delta.terms.items():
            pa = PBWPoly(g, {a: Scalar.one()})
            pb = PBWPoly(g, {b: Scalar.one()})
            s_left = s_left + pbw_multiply(antipode(pa), pb).scaled(coeff)
            s_right = s_right + pbw_multiply(pa, antipode(pb)).scaled(coeff)
        if s_left != expected or s_right != expected:
            failures.append({"code": "antipode-law", "monomial": mono_name(m)})
    # multiplicativity of Delta on pairs
    for ma in basis:
        if mi_degree(ma) == 0:
            continue
        for mb in basis:
            if mi_degree(mb) == 0 or mi_degree(ma) + mi_degree(mb) > bound:
                continue
            pa = PBWPoly(g, {ma: Scalar.one()})
            pb = PBWPoly(g, {mb: Scalar.one()})
            lhs = coproduct(pbw_multiply(pa, pb))
            rhs = coproduct(pa) * coproduct(pb)
            if lhs != rhs:
                failures.append(
                    {
                        "code": "comultiplicativity",
                        "left": mono_name(ma),
                        "right": mono_name(mb),
                    }
                )
    return failures


# ---------------------------------------------------------------------------
# Finite table export and the Prim functor on tables


class HopfTable:
    """A finite filtered slice of a Hopf algebra as plain tables.

    mult maps (i, j) to a coefficient vector over the basis; entries
    whose exact product had terms above the degree bound are listed in
    ``truncated`` so consumers can refuse silently wrong data.  comult
    and counit are exact (the coproduct preserves total degree).
    """

    __slots__ = ("dimension", "labels", "mult", "truncated", "comult", "counit_vec", "unit_index")

    def __init__(self, dimension, labels, mult, truncated, comult, counit_vec, unit_index):
        self.dimension = dimension
        self.labels = tuple(labels)
        self.mult = dict(mult)
        self.truncated = frozenset(truncated)
        self.comult = {k: list(v) for k, v in dict(comult).items()}
        self.counit_vec = tuple(counit_vec)
        self.unit_index = unit_index
        if len(self.labels) != dimension or len(self.counit_vec) != dimension:
            raise ShapeError("table dimensions are inconsistent")
        for (i, j), vec in self.mult.items():
            if not (0 <= i < dimension and 0 <= j < dimension) or len(vec) != dimension:
                raise ShapeError("mult table dimensions are inconsistent")
        for i, triples in self.comult.items():
            if not 0 <= i < dimension:
                raise ShapeError("comult table dimensions are inconsistent")
            for (j, k, _) in triples:
                if not (0 <= j < dimension and 0 <= k < dimension):
                    raise ShapeError("comult table dimensions are inconsistent")


def export_hopf_table(g: LieAlgebra, bound: int) -> HopfTable:
    """Tables on the PBW monomial basis of degree <= bound.

    Products are truncated to the slice; any entry that lost terms is
    flagged.  Comultiplication and counit are exact on the slice.
    """
    if bound < 1:
        raise InputError("degree bound must be at least 1")
    basis = monomials_upto(g.dim, bound)
    index = {m: i for i, m in enumerate(basis)}
    unit = (0,) * g.dim
    mult = {}
    truncated = set()
    for i, ma in enumerate(basis):
        for j, mb in enumerate(basis):
            product = _monomial_product(g, ma, mb)
            vec = [Scalar.zero()] * len(basis)
            for exps, coeff in product.items():
                if mi_degree(exps) > bound:
                    truncated.add((i, j))
                else:
                    vec[index[exps]] = vec[index[exps]] + coeff
            mult[(i, j)] = tuple(vec)
    comult = {}
    for i, m in enumerate(basis):
        triples = []
        for (a, b), coeff in sorted(
            _coproduct_monomial(g, m).items(),
            key=lambda kv: (graded_lex_key(kv[0][0]), graded_lex_key(kv[0][1])),
        ):
            triples.append((index[a], index[b], coeff))
        comult[i] = triples
    counit_vec = tuple(
        Scalar.one() if m == unit else Scalar.zero() for m in basis
    )
    labels = tuple(PBWPoly.zero(g).monomial_text(m) for m in basis)
    return HopfTable(
        dimension=len(basis),
        labels=labels,
        mult=mult,
        truncated=truncated,
        comult=comult,
        counit_vec=counit_vec,
        unit_index=index[unit],
    )


def prim_of_table(table: HopfTable) -> list[tuple]:
    """Kernel of p -> Delta(p) - p x 1 - 1 x p computed from the table."""
    dim = table.dimension
    unit = table.unit_index
    row_of: dict = {}
    entries: dict = {}
    for col in range(dim):
        defect: dict = {}
        for (j, k, coeff) in table.comult.get(col, []):
            _merge(defect, (j, k), Scalar.coerce(coeff))
        _merge(defect, (col, unit), Scalar(-1))
        _merge(defect, (unit, col), Scalar(-1))
        for key, coeff in defect.items():
            row = row_of.setdefault(key, len(row_of))
            entries[(row, col)] = coeff
    matrix = [
        [entries.get((r, c), Scalar.zero()) for c in range(dim)]
        for r in range(len(row_of))
    ]
    return _linalg.kernel_basis(matrix, dim)
