"""Parsing of the .flk input dialect and canonical report serialization.

The input format is a deliberately small line-oriented key-value dialect
(grammar in the README) rather than a general-purpose config language:
that keeps the scalar syntax and the error locations under this
package's control.  Every diagnostic carries a stable code and a source
location.  All emission is canonical: sorted keys, lowest-terms scalars,
graded-lex term order, byte-identical for identical inputs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Sequence

from .algebra_core import Scalar, graded_lex_key
from .errors import ParseError, ScalarFormatError
from .liealg import LieAlgebra, LinearMap
from .lie_pair import Component, LiePairDatum

__all__ = [
    "AlgebraSpecFile",
    "PairSpecFile",
    "Report",
    "parse_spec_file",
    "parse_algebra_spec",
    "parse_pair_spec",
    "emit_algebra_spec",
    "emit_pair_spec",
    "emit_report",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")

SCHEMA = "flk/1"


@dataclass
class AlgebraSpecFile:
    """Parsed algebra file: a name, a basis, and a sparse bracket table."""

    name: str
    basis: tuple
    brackets: dict  # (name_a, name_b) -> coefficient vector over basis

    def to_algebra(self) -> LieAlgebra:
        table = {}
        index = {n: i for i, n in enumerate(self.basis)}
        for (a, b), vec in self.brackets.items():
            entry = {k: c for k, c in enumerate(vec) if not c.is_zero()}
            if entry:
                table[(index[a], index[b])] = entry
        return LieAlgebra(self.basis, table)


@dataclass
class PairSpecFile:
    """Parsed pair file: ambient algebra, subalgebra data, and components."""

    algebra: AlgebraSpecFile
    sub_name: str | None = None
    sub_basis: tuple = ()
    sub_brackets: dict = field(default_factory=dict)
    iota: dict = field(default_factory=dict)  # l-name -> vector over q basis
    components: list = field(default_factory=list)  # (name, q_rows, l_rows)

    def is_pair(self) -> bool:
        return self.sub_name is not None or bool(self.components)

    def to_pair(self) -> LiePairDatum:
        q = self.algebra.to_algebra()
        l_index = {n: i for i, n in enumerate(self.sub_basis)}
        l_table = {}
        for (a, b), vec in self.sub_brackets.items():
            entry = {k: c for k, c in enumerate(vec) if not c.is_zero()}
            if entry:
                l_table[(l_index[a], l_index[b])] = entry
        l = LieAlgebra(self.sub_basis, l_table)
        iota_cols = [self.iota[name] for name in self.sub_basis]
        iota = LinearMap(l.dim, q.dim, iota_cols)
        components = []
        for name, q_rows, l_rows in self.components:
            components.append(
                Component(
                    name=name,
                    q_action=LinearMap.from_rows(q_rows),
                    l_action=LinearMap.from_rows(l_rows),
                )
            )
        return LiePairDatum(q=q, l=l, iota=iota, components=tuple(components))


# ---------------------------------------------------------------------------
# Tokenizing helpers


def _fail(code, line_no, col, message):
    raise ParseError(code, line_no, col, message)


def _check_ident(word, line_no, col):
    if not _IDENT.match(word):
        _fail("syntax", line_no, col, f"invalid identifier {word!r}")
    if word == "i":
        _fail("syntax", line_no, col, "'i' is reserved for the imaginary unit")
    return word


def _parse_scalar_at(text, line_no, col):
    try:
        return Scalar.parse(text)
    except ScalarFormatError as exc:
        _fail("bad-scalar", line_no, col, str(exc))


_TERM_TOKEN = re.compile(
    r"\s*(\(|\)|\*|\+|-|/|[0-9]+|i\b|[A-Za-z_][A-Za-z0-9_]*)"
)


def _parse_lincomb(text, basis, line_no, col0):
    """Linear combination over named basis vectors; returns a coefficient vector.

    Grammar: '0' or sign-separated terms 'coeff basisname' with optional
    '*'; a coefficient with both real and imaginary parts must be
    parenthesized so its inner sign cannot be read as a term separator.
    """
    index = {n: i for i, n in enumerate(basis)}
    vec = [Scalar.zero()] * len(basis)
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TERM_TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                _fail("syntax", line_no, col0 + pos, f"bad character {text[pos]!r}")
            break
        tokens.append((m.group(1), col0 + m.start(1)))
        pos = m.end()
    if not tokens:
        _fail("syntax", line_no, col0, "empty expression")
    if len(tokens) == 1 and tokens[0][0] == "0":
        return tuple(vec)
    t = 0
    sign = Scalar.one()
    expect_term = True
    while t < len(tokens):
        word, col = tokens[t]
        if word in "+-":
            if expect_term and word == "-":
                sign = -sign
                t += 1
                continue
            if expect_term:
                _fail("syntax", line_no, col, "unexpected sign")
            sign = Scalar(-1 if word == "-" else 1)
            t += 1
            expect_term = True
            continue
        # parse one term: [coeff ['*']] ident
        coeff = Scalar.one()
        if word == "(":
            close = None
            for u in range(t + 1, len(tokens)):
                if tokens[u][0] == ")":
                    close = u
                    break
            if close is None:
                _fail("syntax", line_no, col, "unbalanced '('")
            inner = " ".join(w for w, _ in tokens[t + 1:close])
            coeff = _parse_scalar_at(inner, line_no, col)
            t = close + 1
        elif word[0].isdigit() or word == "i":
            chunk = []
            while t < len(tokens) and (
                tokens[t][0][0].isdigit()
                or tokens[t][0] in ("/", "i")
            ):
                chunk.append(tokens[t][0])
                t += 1
            coeff = _parse_scalar_at("".join(chunk), line_no, col)
        if t < len(tokens) and tokens[t][0] == "*":
            t += 1
        if t >= len(tokens) or not _IDENT.match(tokens[t][0]) or tokens[t][0] == "i":
            # a bare scalar term with no basis name is not a linear combination
            _fail("syntax", line_no, col, "expected a basis name in the term")
        name, ncol = tokens[t]
        if name not in index:
            _fail("unknown-name", line_no, ncol, f"unknown basis name {name!r}")
        vec[index[name]] = vec[index[name]] + sign * coeff
        sign = Scalar.one()
        t += 1
        expect_term = False
    if expect_term:
        _fail("syntax", line_no, col0, "dangling separator in expression")
    return tuple(vec)


def _parse_matrix(text, line_no, col0):
    """Bracketed rows of scalars: [a, b; c, d]; '[]' is the 0x0 matrix."""
    stripped = text.strip()
    if not (stripped.startswith("[") and stripped.endswith("]")):
        _fail("bad-matrix", line_no, col0, "matrix must be enclosed in [ ]")
    inner = stripped[1:-1].strip()
    if not inner:
        return []
    rows = []
    width = None
    for row_text in inner.split(";"):
        entries = [e.strip() for e in row_text.split(",")]
        if any(not e for e in entries):
            _fail("bad-matrix", line_no, col0, "empty matrix entry")
        row = [_parse_scalar_at(e, line_no, col0) for e in entries]
        if width is None:
            width = len(row)
        elif len(row) != width:
            _fail("bad-matrix", line_no, col0, "matrix rows have unequal lengths")
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# File parsing


def parse_spec_file(text: str) -> PairSpecFile:
    """Parse an .flk file; algebra-only files come back with no pair sections."""
    name = None
    basis: list[str] = []
    brackets: dict = {}
    sub_name = None
    sub_basis: list[str] = []
    sub_brackets: dict = {}
    iota: dict = {}
    components: list = []
    section = "algebra"  # algebra | subalgebra | component
    current_component = None  # [name, q_rows, l_rows]

    def close_component(line_no):
        if current_component is None:
            return
        comp_name, q_rows, l_rows = current_component
        if q_rows is None:
            _fail("missing-section", line_no, 1,
                  f"component {comp_name!r} has no qaction")
        if l_rows is None:
            _fail("missing-section", line_no, 1,
                  f"component {comp_name!r} has no laction")
        components.append((comp_name, q_rows, l_rows))

    lines = text.splitlines()
    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = line.index(stripped[0]) + 1
        head, _, rest = stripped.partition(" ")
        rest = rest.strip()
        if head == "algebra":
            if name is not None:
                _fail("duplicate-section", line_no, col, "second 'algebra' line")
            name = _check_ident(rest, line_no, col)
        elif head == "basis":
            words = rest.split()
            if not words:
                _fail("syntax", line_no, col, "empty basis")
            target = basis if section == "algebra" else sub_basis
            if target:
                _fail("duplicate-section", line_no, col, "second 'basis' line in section")
            for w in words:
                _check_ident(w, line_no, col)
                if w in target:
                    _fail("duplicate-name", line_no, col, f"basis name {w!r} repeated")
                target.append(w)
        elif head == "bracket":
            key_text, eq, value = rest.partition("=")
            if not eq:
                _fail("syntax", line_no, col, "bracket line needs '='")
            pair_names = [w.strip() for w in key_text.split(",")]
            if len(pair_names) != 2:
                _fail("syntax", line_no, col, "bracket key must be 'a,b'")
            a, b = pair_names
            names = basis if section == "algebra" else sub_basis
            table = brackets if section == "algebra" else sub_brackets
            for w in (a, b):
                if w not in names:
                    _fail("unknown-name", line_no, col, f"unknown basis name {w!r}")
            vec = _parse_lincomb(value.strip(), names, line_no, col)
            if a == b:
                if any(not c.is_zero() for c in vec):
                    _fail("self-bracket", line_no, col,
                          f"nonzero self-bracket {a!r},{a!r} violates alternation")
                continue
            if names.index(a) > names.index(b):
                _fail("bracket-order", line_no, col,
                      f"bracket key {a},{b} must list the earlier basis name first")
            if (a, b) in table:
                _fail("duplicate-bracket", line_no, col, f"duplicate bracket key {a},{b}")
            table[(a, b)] = vec
        elif head == "subalgebra":
            if section != "algebra":
                _fail("syntax", line_no, col, "subalgebra must precede components")
            if sub_name is not None:
                _fail("duplicate-section", line_no, col, "second 'subalgebra' line")
            sub_name = _check_ident(rest, line_no, col)
            section = "subalgebra"
        elif head == "iota":
            if section != "subalgebra":
                _fail("syntax", line_no, col, "iota belongs to the subalgebra section")
            lname, eq, value = rest.partition("=")
            lname = lname.strip()
            if not eq:
                _fail("syntax", line_no, col, "iota line needs '='")
            if lname not in sub_basis:
                _fail("unknown-name", line_no, col, f"unknown subalgebra name {lname!r}")
            if lname in iota:
                _fail("duplicate-bracket", line_no, col, f"duplicate iota image for {lname!r}")
            iota[lname] = _parse_lincomb(value.strip(), basis, line_no, col)
        elif head == "component":
            close_component(line_no)
            comp_name = _check_ident(rest, line_no, col)
            if any(c[0] == comp_name for c in components) or (
                current_component and current_component[0] == comp_name
            ):
                _fail("duplicate-section", line_no, col,
                      f"duplicate component {comp_name!r}")
            current_component = [comp_name, None, None]
            section = "component"
        elif head in ("qaction", "laction"):
            if section != "component" or current_component is None:
                _fail("syntax", line_no, col, f"{head} belongs to a component section")
            if not rest.startswith("="):
                _fail("syntax", line_no, col, f"{head} line needs '='")
            value = rest[1:].strip()
            slot = 1 if head == "qaction" else 2
            if current_component[slot] is not None:
                _fail("duplicate-section", line_no, col,
                      f"second {head} for component {current_component[0]!r}")
            current_component[slot] = _parse_matrix(value, line_no, col)
        else:
            _fail("syntax", line_no, col, f"unknown directive {head!r}")
    close_component(len(lines) + 1)
    if name is None:
        _fail("missing-section", len(lines) + 1, 1, "no 'algebra' line")
    if not basis:
        _fail("missing-section", len(lines) + 1, 1, "no 'basis' line")
    spec = PairSpecFile(
        algebra=AlgebraSpecFile(name=name, basis=tuple(basis), brackets=brackets),
        sub_name=sub_name,
        sub_basis=tuple(sub_basis),
        sub_brackets=sub_brackets,
        iota=iota,
        components=components,
    )
    _validate_shapes(spec)
    return spec


def _validate_shapes(spec: PairSpecFile):
    nq = len(spec.algebra.basis)
    if spec.sub_name is not None and not spec.sub_basis:
        _fail("missing-section", 1, 1, "subalgebra section has no basis")
    for lname in spec.sub_basis:
        if lname not in spec.iota:
            _fail("missing-section", 1, 1, f"no iota image for subalgebra name {lname!r}")
    nl = len(spec.sub_basis)
    for comp_name, q_rows, l_rows in spec.components:
        if len(q_rows) != nq or any(len(r) != nq for r in q_rows):
            _fail("shape", 1, 1,
                  f"component {comp_name!r}: qaction must be {nq}x{nq}")
        if len(l_rows) != nl or any(len(r) != nl for r in l_rows):
            _fail("shape", 1, 1,
                  f"component {comp_name!r}: laction must be {nl}x{nl}")


def parse_algebra_spec(text: str) -> LieAlgebra:
    spec = parse_spec_file(text)
    if spec.is_pair():
        raise ParseError("syntax", 1, 1, "expected a plain algebra file, found pair sections")
    return spec.algebra.to_algebra()


def parse_pair_spec(text: str) -> LiePairDatum:
    return parse_spec_file(text).to_pair()


# ---------------------------------------------------------------------------
# Canonical emission


def _lincomb_text(vec: Sequence[Scalar], names: Sequence[str]) -> str:
    chunks = []
    for coeff, name in zip(vec, names):
        if coeff.is_zero():
            continue
        cs = str(coeff)
        if ("+" in cs[1:]) or ("-" in cs[1:]):
            chunks.append(f"({cs}) {name}")
        elif cs == "1":
            chunks.append(name)
        elif cs == "-1":
            chunks.append(f"-{name}")
        else:
            chunks.append(f"{cs} {name}")
    if not chunks:
        return "0"
    text = chunks[0]
    for chunk in chunks[1:]:
        if chunk.startswith("-"):
            text += " - " + chunk[1:]
        else:
            text += " + " + chunk
    return text


def _matrix_text(rows) -> str:
    if not rows:
        return "[]"
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in rows) + "]"


def emit_algebra_spec(spec: AlgebraSpecFile) -> str:
    lines = [f"algebra {spec.name}", "basis " + " ".join(spec.basis)]
    order = {n: i for i, n in enumerate(spec.basis)}
    for (a, b) in sorted(spec.brackets, key=lambda k: (order[k[0]], order[k[1]])):
        vec = spec.brackets[(a, b)]
        if all(c.is_zero() for c in vec):
            continue
        lines.append(f"bracket {a},{b} = " + _lincomb_text(vec, spec.basis))
    return "\n".join(lines) + "\n"


def emit_pair_spec(spec: PairSpecFile) -> str:
    text = emit_algebra_spec(spec.algebra)
    if spec.sub_name is not None:
        lines = [f"subalgebra {spec.sub_name}", "basis " + " ".join(spec.sub_basis)]
        order = {n: i for i, n in enumerate(spec.sub_basis)}
        for (a, b) in sorted(spec.sub_brackets, key=lambda k: (order[k[0]], order[k[1]])):
            vec = spec.sub_brackets[(a, b)]
            if all(c.is_zero() for c in vec):
                continue
            lines.append(f"bracket {a},{b} = " + _lincomb_text(vec, spec.sub_basis))
        for lname in spec.sub_basis:
            lines.append(f"iota {lname} = " + _lincomb_text(spec.iota[lname], spec.algebra.basis))
        text += "\n".join(lines) + "\n"
    for comp_name, q_rows, l_rows in spec.components:
        lines = [
            f"component {comp_name}",
            "qaction = " + _matrix_text(q_rows),
            "laction = " + _matrix_text(l_rows),
        ]
        text += "\n".join(lines) + "\n"
    return text


# ---------------------------------------------------------------------------
# Reports


@dataclass
class Report:
    """One command's outcome: named checks, failure objects, extra payload."""

    command: str
    checks: list = field(default_factory=list)  # (name, passed) pairs
    failures: list = field(default_factory=list)  # dicts with a stable "code"
    payload: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and all(passed for _, passed in self.checks)

    @property
    def status(self) -> str:
        return "ok" if self.ok else "fail"


def _canonical(value):
    """Recursively normalize payload values into JSON-ready material."""
    if isinstance(value, Scalar):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    return value


def emit_report(result: Report, format: str = "text") -> str:
    """Canonical serialization; identical reports produce identical bytes."""
    if format == "json":
        obj = {
            "schema": SCHEMA,
            "command": result.command,
            "status": result.status,
            "checks": [
                {"name": name, "passed": bool(passed)} for name, passed in result.checks
            ],
            "failures": [_canonical(f) for f in result.failures],
        }
        for key, value in sorted(result.payload.items()):
            obj[key] = _canonical(value)
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    lines = [f"command: {result.command}"]
    for key, value in sorted(result.payload.items()):
        rendered = _render_text_payload(value)
        if "\n" in rendered:
            lines.append(f"{key}:")
            lines.extend("  " + ln for ln in rendered.splitlines())
        else:
            lines.append(f"{key}: {rendered}")
    for cname, passed in result.checks:
        lines.append(f"check {cname}: {'pass' if passed else 'FAIL'}")
    for failure in result.failures:
        canon = _canonical(failure)
        code = canon.pop("code", "failure")
        detail = json.dumps(canon, sort_keys=True, separators=(",", ":")) if canon else ""
        lines.append(f"failure [{code}] {detail}".rstrip())
    lines.append(f"status: {result.status}")
    return "\n".join(lines) + "\n"


def _render_text_payload(value) -> str:
    value = _canonical(value)
    if isinstance(value, str):
        return value
    if isinstance(value, list) and all(isinstance(v, str) for v in value):
        return "\n".join(value) if any("=" in v or " " in v for v in value) else ", ".join(value)
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def series_term_list(series, n: int) -> list[dict]:
    """GroupLaw-component serialization rows, graded-lex sorted."""
    rows = []
    for exps, coeff in sorted(series.terms.items(), key=lambda kv: graded_lex_key(kv[0])):
        rows.append(
            {
                "x_exponents": list(exps[:n]),
                "y_exponents": list(exps[n:]),
                "coefficient": str(coeff),
            }
        )
    return rows
