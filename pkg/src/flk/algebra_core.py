"""Exact scalar arithmetic and truncated multivariate power series.

The ground field is Q(i), the Gaussian rationals: every scalar is
``a + b*i`` with rational ``a``, ``b`` kept in lowest terms.  All series
arithmetic is exact; a series only ever *forgets* terms above its
truncation order, it never rounds a coefficient.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    ScalarFormatError,
    ShapeError,
    SubstitutionError,
    TruncationError,
)

__all__ = [
    "Scalar",
    "MultiIndex",
    "mi_degree",
    "mi_add",
    "mi_factorial",
    "graded_lex_key",
    "TruncSeries",
    "series_add",
    "series_mul",
    "series_substitute",
    "series_coefficient",
]


class Scalar:
    """A Gaussian rational ``re + im*i`` with exact Fraction parts.

    Immutable; all field operations are exact.  The text form accepted by
    :meth:`parse` is ``a``, ``a/b``, ``a/b+c/d i``, ``2i``, ``-i`` and the
    like, with optional spaces between tokens.  Canonical emission (via
    ``str``) always uses lowest-terms fractions, omits denominator 1, and
    joins a nonzero imaginary part with an explicit sign: ``1/2+3i``,
    ``-1i``, ``0``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot interpret {value!r} as a Scalar")

    @classmethod
    def zero(cls) -> "Scalar":
        return _ZERO

    @classmethod
    def one(cls) -> "Scalar":
        return _ONE

    @classmethod
    def i(cls) -> "Scalar":
        return _I

    # -- the spec's integer field surface ------------------------------

    @property
    def re_num(self) -> int:
        return self.re.numerator

    @property
    def re_den(self) -> int:
        return self.re.denominator

    @property
    def im_num(self) -> int:
        return self.im.numerator

    @property
    def im_den(self) -> int:
        return self.im.denominator

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = Scalar.coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar.coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = Scalar.coerce(other)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def inverse(self) -> "Scalar":
        return _ONE / self

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- text ------------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse the scalar text syntax; raises ScalarFormatError."""
        tokens = _scalar_tokens(text)
        if not tokens:
            raise ScalarFormatError("empty scalar")
        pos = 0
        re_part = None
        im_part = None
        sign = 1
        first = True
        while pos < len(tokens):
            tok = tokens[pos]
            if tok in "+-":
                if first and tok == "-":
                    sign = -1
                    pos += 1
                elif first:
                    raise ScalarFormatError(f"unexpected {tok!r} in scalar {text!r}")
                else:
                    sign = -1 if tok == "-" else 1
                    pos += 1
                if pos >= len(tokens):
                    raise ScalarFormatError(f"dangling sign in scalar {text!r}")
            value, is_im, pos = _scalar_term(tokens, pos, text)
            value *= sign
            sign = 1
            first = False
            if is_im:
                if im_part is not None:
                    raise ScalarFormatError(f"two imaginary parts in scalar {text!r}")
                im_part = value
            else:
                if re_part is not None:
                    raise ScalarFormatError(f"two real parts in scalar {text!r}")
                re_part = value
        return cls(re_part or 0, im_part or 0)

    def __str__(self):
        if self.im == 0:
            return _frac_text(self.re)
        if self.re == 0:
            return _frac_text(self.im) + "i"
        joiner = "+" if self.im > 0 else "-"
        return _frac_text(self.re) + joiner + _frac_text(abs(self.im)) + "i"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


_ZERO = Scalar(0)
_ONE = Scalar(1)
_I = Scalar(0, 1)

_SCALAR_TOKEN = re.compile(r"\s*([0-9]+|[+\-/*i()])")


def _scalar_tokens(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _SCALAR_TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ScalarFormatError(f"bad character in scalar {text!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def _scalar_term(tokens, pos, text):
    """One signless term: ``num [/ num] [i]`` or bare ``i``."""
    if tokens[pos] == "i":
        return Fraction(1), True, pos + 1
    if not tokens[pos].isdigit():
        raise ScalarFormatError(f"unexpected {tokens[pos]!r} in scalar {text!r}")
    num = int(tokens[pos])
    pos += 1
    den = 1
    if pos < len(tokens) and tokens[pos] == "/":
        pos += 1
        if pos >= len(tokens) or not tokens[pos].isdigit():
            raise ScalarFormatError(f"missing denominator in scalar {text!r}")
        den = int(tokens[pos])
        if den == 0:
            raise ScalarFormatError(f"zero denominator in scalar {text!r}")
        pos += 1
    if pos < len(tokens) and tokens[pos] == "i":
        return Fraction(num, den), True, pos + 1
    return Fraction(num, den), False, pos


def _frac_text(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# Multi-indices

MultiIndex = tuple  # tuple[int, ...]; one exponent per variable


def mi_degree(alpha: Sequence[int]) -> int:
    return sum(alpha)


def mi_add(alpha: Sequence[int], beta: Sequence[int]) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def mi_factorial(alpha: Sequence[int]) -> int:
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def graded_lex_key(alpha: Sequence[int]):
    """Graded lexicographic sort key, earlier variables first within a degree.

    This one ordering is used for every serialization and report in the
    package; x1^2 sorts before x1*x2 sorts before x2^2.
    """
    return (sum(alpha), tuple(-a for a in alpha))


# ---------------------------------------------------------------------------
# Truncated series


class TruncSeries:
    """A multivariate power series truncated at a fixed total degree.

    ``terms`` maps multi-indices (tuples of exponents, one per variable)
    to nonzero Scalars; indices of degree above ``order`` are never
    stored.  Mixing different variable counts or orders in arithmetic is
    a hard ShapeError, never a silent re-truncation.
    """

    __slots__ = ("num_vars", "order", "terms")

    def __init__(self, num_vars: int, order: int, terms: Mapping = (), *, _trusted=False):
        if num_vars < 0 or order < 0:
            raise ShapeError("num_vars and order must be nonnegative")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "order", order)
        if _trusted:
            object.__setattr__(self, "terms", dict(terms))
            return
        clean = {}
        for alpha, coeff in dict(terms).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != num_vars:
                raise ShapeError(f"index {alpha} has {len(alpha)} entries, expected {num_vars}")
            if any(a < 0 for a in alpha):
                raise ShapeError(f"negative exponent in {alpha}")
            if mi_degree(alpha) > order:
                raise ShapeError(f"index {alpha} exceeds truncation order {order}")
            coeff = Scalar.coerce(coeff)
            if not coeff.is_zero():
                clean[alpha] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, order: int) -> "TruncSeries":
        return cls(num_vars, order, {}, _trusted=True)

    @classmethod
    def constant(cls, num_vars: int, order: int, value) -> "TruncSeries":
        value = Scalar.coerce(value)
        if value.is_zero():
            return cls.zero(num_vars, order)
        return cls(num_vars, order, {(0,) * num_vars: value}, _trusted=True)

    @classmethod
    def variable(cls, num_vars: int, order: int, index: int) -> "TruncSeries":
        if not 0 <= index < num_vars:
            raise ShapeError(f"variable index {index} out of range")
        if order < 1:
            return cls.zero(num_vars, order)
        alpha = tuple(1 if j == index else 0 for j in range(num_vars))
        return cls(num_vars, order, {alpha: _ONE}, _trusted=True)

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.num_vars, _ZERO)

    def coefficient(self, alpha: Sequence[int]) -> Scalar:
        alpha = tuple(alpha)
        if len(alpha) != self.num_vars:
            raise ShapeError(f"index length {len(alpha)} != {self.num_vars} variables")
        if mi_degree(alpha) > self.order:
            raise TruncationError(
                f"degree {mi_degree(alpha)} coefficient is beyond truncation order {self.order}"
            )
        return self.terms.get(alpha, _ZERO)

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: graded_lex_key(kv[0]))

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_vars, self.order, frozenset(self.terms.items())))

    # -- arithmetic -------------------------------------------------------

    def _check_shape(self, other: "TruncSeries"):
        if self.num_vars != other.num_vars:
            raise ShapeError(f"variable counts differ: {self.num_vars} vs {other.num_vars}")
        if self.order != other.order:
            raise ShapeError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check_shape(other)
        terms = dict(self.terms)
        for alpha, c in other.terms.items():
            s = terms.get(alpha, _ZERO) + c
            if s.is_zero():
                terms.pop(alpha, None)
            else:
                terms[alpha] = s
        return TruncSeries(self.num_vars, self.order, terms, _trusted=True)

    def __neg__(self):
        return TruncSeries(
            self.num_vars, self.order, {a: -c for a, c in self.terms.items()}, _trusted=True
        )

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, factor) -> "TruncSeries":
        factor = Scalar.coerce(factor)
        if factor.is_zero():
            return TruncSeries.zero(self.num_vars, self.order)
        return TruncSeries(
            self.num_vars,
            self.order,
            {a: c * factor for a, c in self.terms.items()},
            _trusted=True,
        )

    def __mul__(self, other):
        self._check_shape(other)
        terms: dict = {}
        for a, ca in self.terms.items():
            da = mi_degree(a)
            for b, cb in other.terms.items():
                if da + mi_degree(b) > self.order:
                    continue
                key = mi_add(a, b)
                s = terms.get(key, _ZERO) + ca * cb
                if s.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = s
        return TruncSeries(self.num_vars, self.order, terms, _trusted=True)

    def power(self, k: int) -> "TruncSeries":
        out = TruncSeries.constant(self.num_vars, self.order, 1)
        for _ in range(k):
            out = out * self
        return out

    def truncated_to(self, order: int) -> "TruncSeries":
        """Explicitly drop to a lower order (the only sanctioned re-truncation)."""
        if order > self.order:
            raise ShapeError(f"cannot raise truncation order {self.order} to {order}")
        terms = {a: c for a, c in self.terms.items() if mi_degree(a) <= order}
        return TruncSeries(self.num_vars, order, terms, _trusted=True)

    def remap(self, num_vars: int, positions: Sequence[int]) -> "TruncSeries":
        """Re-embed into a larger variable space; positions[i] is the new slot of variable i."""
        if len(positions) != self.num_vars:
            raise ShapeError("one target position per variable required")
        if len(set(positions)) != len(positions):
            raise ShapeError("target positions must be distinct")
        terms = {}
        for alpha, c in self.terms.items():
            beta = [0] * num_vars
            for i, a in enumerate(alpha):
                beta[positions[i]] = a
            terms[tuple(beta)] = c
        return TruncSeries(num_vars, self.order, terms, _trusted=True)

    def substitute(self, images: Sequence["TruncSeries"]) -> "TruncSeries":
        """Substitute images[i] for variable i; images must be constant-term free."""
        if len(images) != self.num_vars:
            raise ShapeError(f"{self.num_vars} images required, got {len(images)}")
        if not images:
            # zero-variable series are constants
            return TruncSeries(0, self.order, dict(self.terms), _trusted=True)
        nv, order = images[0].num_vars, images[0].order
        for g in images:
            if g.num_vars != nv or g.order != order:
                raise ShapeError("images must share variable count and order")
            if not g.constant_term().is_zero():
                raise SubstitutionError("substitution image has a nonzero constant term")
        if order != self.order:
            raise ShapeError(f"image order {order} differs from series order {self.order}")
        # cache powers of each image as needed
        powers: list[dict[int, TruncSeries]] = [dict() for _ in images]

        def image_power(i: int, k: int) -> TruncSeries:
            cached = powers[i].get(k)
            if cached is None:
                cached = images[i].power(k)
                powers[i][k] = cached
            return cached

        out = TruncSeries.zero(nv, order)
        for alpha, c in self.terms.items():
            # images sit in the maximal ideal, so |alpha| > order contributes nothing
            if mi_degree(alpha) > order:
                continue
            term = TruncSeries.constant(nv, order, c)
            for i, a in enumerate(alpha):
                if a:
                    term = term * image_power(i, a)
                if term.is_zero():
                    break
            out = out + term
        return out

    # -- text ---------------------------------------------------------------

    def to_text(self, var_names: Sequence[str]) -> str:
        if len(var_names) != self.num_vars:
            raise ShapeError("one name per variable required")
        if not self.terms:
            return "0"
        chunks = []
        for alpha, c in self.items_sorted():
            factors = [
                name if a == 1 else f"{name}^{a}"
                for name, a in zip(var_names, alpha)
                if a
            ]
            cs = str(c)
            if ("+" in cs[1:]) or ("-" in cs[1:]):
                cs = f"({cs})"
            if not factors:
                chunks.append(cs)
            elif cs == "1":
                chunks.append("*".join(factors))
            elif cs == "-1":
                chunks.append("-" + "*".join(factors))
            else:
                chunks.append(cs + "*" + "*".join(factors))
        text = chunks[0]
        for chunk in chunks[1:]:
            if chunk.startswith("-"):
                text += " - " + chunk[1:]
            else:
                text += " + " + chunk
        return text

    def __repr__(self):
        return f"TruncSeries({self.num_vars} vars, order {self.order}, {len(self.terms)} terms)"


# Spec operation surface ----------------------------------------------------


def series_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def series_substitute(f: TruncSeries, images: Iterable[TruncSeries]) -> TruncSeries:
    return f.substitute(list(images))


def series_coefficient(f: TruncSeries, alpha: Sequence[int]) -> Scalar:
    return f.coefficient(alpha)
