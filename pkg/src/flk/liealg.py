"""Finite-dimensional Lie algebras over Q(i).

A LieAlgebra stores structure constants only for basis pairs i < j, so
antisymmetry holds by construction and the Jacobi identity is the one
axiom left to check.  LinearMap is the shared concrete carrier for every
linear or Lie-algebra map in the package (embeddings, actions,
differentials, projections).
"""

from __future__ import annotations

from typing import Mapping, Sequence

from . import _linalg
from ._linalg import Vector, as_vector, vec_add, vec_is_zero, vec_scale, vec_sub, zero_vector
from .algebra_core import Scalar
from .errors import InputError, InternalConsistencyError, PreconditionError, ShapeError

__all__ = [
    "LieAlgebra",
    "LinearMap",
    "validate_jacobi",
    "bracket",
    "is_lie_homomorphism",
    "is_ideal",
    "quotient_algebra",
    "semidirect_product",
    "is_derivation_action",
    "adjoint_rep",
]


class LieAlgebra:
    """Basis names plus the sparse structure tensor c^k_{ij} for i < j."""

    __slots__ = ("basis_names", "c", "_cache")

    def __init__(self, basis_names: Sequence[str], brackets: Mapping = ()):
        names = tuple(str(n) for n in basis_names)
        if len(set(names)) != len(names):
            raise InputError("basis names must be distinct")
        object.__setattr__(self, "basis_names", names)
        n = len(names)
        table: dict[tuple[int, int], dict[int, Scalar]] = {}
        for (i, j), row in dict(brackets).items():
            if not (0 <= i < j < n):
                raise ShapeError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < {n}")
            entry = {}
            for k, coeff in dict(row).items():
                if not 0 <= k < n:
                    raise ShapeError(f"bracket target index {k} out of range")
                coeff = Scalar.coerce(coeff)
                if not coeff.is_zero():
                    entry[k] = coeff
            if entry:
                table[(i, j)] = entry
        object.__setattr__(self, "c", table)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def index_of(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise InputError(f"unknown basis name {name!r}") from None

    def basis_vector(self, i: int) -> Vector:
        return tuple(
            Scalar.one() if j == i else Scalar.zero() for j in range(self.dim)
        )

    def bracket_basis(self, i: int, j: int) -> dict[int, Scalar]:
        """[e_i, e_j] as a sparse vector; antisymmetry synthesized for i > j."""
        if i == j:
            return {}
        if i < j:
            return dict(self.c.get((i, j), {}))
        return {k: -v for k, v in self.c.get((j, i), {}).items()}

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        u = as_vector(u)
        v = as_vector(v)
        if len(u) != self.dim or len(v) != self.dim:
            raise ShapeError(f"vectors must have length {self.dim}")
        out = [Scalar.zero()] * self.dim
        for (i, j), row in self.c.items():
            f = u[i] * v[j] - u[j] * v[i]
            if f.is_zero():
                continue
            for k, coeff in row.items():
                out[k] = out[k] + f * coeff
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.basis_names == other.basis_names and self.c == other.c

    def __repr__(self):
        return f"LieAlgebra({list(self.basis_names)!r}, {len(self.c)} bracket entries)"


class LinearMap:
    """Exact linear map; column j is the image of the j-th domain basis vector."""

    __slots__ = ("domain_dim", "codomain_dim", "columns")

    def __init__(self, domain_dim: int, codomain_dim: int, columns: Sequence[Sequence]):
        cols = tuple(as_vector(col) for col in columns)
        if len(cols) != domain_dim:
            raise ShapeError(f"{domain_dim} columns required, got {len(cols)}")
        for col in cols:
            if len(col) != codomain_dim:
                raise ShapeError(f"column length {len(col)} != codomain dim {codomain_dim}")
        object.__setattr__(self, "domain_dim", domain_dim)
        object.__setattr__(self, "codomain_dim", codomain_dim)
        object.__setattr__(self, "columns", cols)

    def __setattr__(self, name, value):
        raise AttributeError("LinearMap is immutable")

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, n, [[1 if i == j else 0 for i in range(n)] for j in range(n)])

    @classmethod
    def zero(cls, domain_dim: int, codomain_dim: int) -> "LinearMap":
        return cls(domain_dim, codomain_dim, [zero_vector(codomain_dim)] * domain_dim)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "LinearMap":
        rows = [as_vector(r) for r in rows]
        if not rows:
            return cls(0, 0, [])
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ShapeError("matrix rows have unequal lengths")
        cols = [[rows[i][j] for i in range(len(rows))] for j in range(width)]
        return cls(width, len(rows), cols)

    def rows(self) -> list[list[Scalar]]:
        return [
            [self.columns[j][i] for j in range(self.domain_dim)]
            for i in range(self.codomain_dim)
        ]

    def entry(self, i: int, j: int) -> Scalar:
        return self.columns[j][i]

    def apply(self, vec: Sequence) -> Vector:
        vec = as_vector(vec)
        if len(vec) != self.domain_dim:
            raise ShapeError(f"vector length {len(vec)} != domain dim {self.domain_dim}")
        out = [Scalar.zero()] * self.codomain_dim
        for j, coeff in enumerate(vec):
            if coeff.is_zero():
                continue
            col = self.columns[j]
            for i in range(self.codomain_dim):
                out[i] = out[i] + coeff * col[i]
        return tuple(out)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self after inner."""
        if inner.codomain_dim != self.domain_dim:
            raise ShapeError("composition dimensions do not match")
        cols = [self.apply(col) for col in inner.columns]
        return LinearMap(inner.domain_dim, self.codomain_dim, cols)

    def rank(self) -> int:
        return _linalg.rank(self.rows()) if self.codomain_dim else 0

    def is_injective(self) -> bool:
        return self.rank() == self.domain_dim

    def is_surjective(self) -> bool:
        return self.rank() == self.codomain_dim

    def inverse(self):
        if self.domain_dim != self.codomain_dim:
            return None
        inv_rows = _linalg.invert(self.rows())
        if inv_rows is None:
            return None
        return LinearMap.from_rows(inv_rows)

    def kernel(self) -> list[Vector]:
        if self.domain_dim == 0:
            return []
        rows = self.rows() if self.codomain_dim else [[Scalar.zero()] * self.domain_dim]
        return _linalg.kernel_basis(rows, self.domain_dim)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (
            self.domain_dim == other.domain_dim
            and self.codomain_dim == other.codomain_dim
            and self.columns == other.columns
        )

    def __repr__(self):
        return f"LinearMap({self.domain_dim} -> {self.codomain_dim})"


# ---------------------------------------------------------------------------
# Operations


def validate_jacobi(g: LieAlgebra) -> list[dict]:
    """Every basis triple violating the Jacobi identity, with its cyclic sum."""
    failures = []
    for i in range(g.dim):
        ei = g.basis_vector(i)
        for j in range(i + 1, g.dim):
            ej = g.basis_vector(j)
            bij = g.bracket(ei, ej)
            for k in range(j + 1, g.dim):
                ek = g.basis_vector(k)
                total = g.bracket(bij, ek)
                total = vec_add(total, g.bracket(g.bracket(ej, ek), ei))
                total = vec_add(total, g.bracket(g.bracket(ek, ei), ej))
                if not vec_is_zero(total):
                    failures.append(
                        {
                            "code": "jacobi",
                            "triple": [g.basis_names[i], g.basis_names[j], g.basis_names[k]],
                            "indices": [i, j, k],
                            "cyclic_sum": [str(x) for x in total],
                        }
                    )
    return failures


def bracket(g: LieAlgebra, u: Sequence, v: Sequence) -> Vector:
    return g.bracket(u, v)


def is_lie_homomorphism(f: LinearMap, g1: LieAlgebra, g2: LieAlgebra):
    """True iff f[u,v] = [fu,fv] on all basis pairs; returns (ok, witness pair)."""
    if f.domain_dim != g1.dim or f.codomain_dim != g2.dim:
        raise ShapeError("map dimensions do not match the algebras")
    for i in range(g1.dim):
        fi = f.columns[i]
        for j in range(i + 1, g1.dim):
            lhs = f.apply(g1.bracket(g1.basis_vector(i), g1.basis_vector(j)))
            rhs = g2.bracket(fi, f.columns[j])
            if lhs != rhs:
                return False, (g1.basis_names[i], g1.basis_names[j])
    return True, None


def is_ideal(g: LieAlgebra, subspace: Sequence[Sequence]) -> bool:
    """Exact check [g, span] subset of span; raises on a dependent spanning set."""
    vectors = [as_vector(v) for v in subspace]
    for v in vectors:
        if len(v) != g.dim:
            raise ShapeError(f"subspace vectors must have length {g.dim}")
    if vectors and _linalg.rank([list(v) for v in vectors]) != len(vectors):
        raise InputError("subspace spanning set is linearly dependent")
    for i in range(g.dim):
        ei = g.basis_vector(i)
        for v in vectors:
            if not _linalg.in_span(vectors, g.bracket(ei, v)):
                return False
    return True


def quotient_algebra(g: LieAlgebra, ideal: Sequence[Sequence]) -> tuple[LieAlgebra, LinearMap]:
    """Quotient by an ideal on the lexicographically first complement basis.

    Returns (quotient algebra, projection map g -> quotient).  The
    complement basis is the first full-rank subset of the input basis
    vectors modulo the ideal, scanned in basis order.
    """
    vectors = [as_vector(v) for v in ideal]
    if not is_ideal(g, vectors):
        raise PreconditionError("subspace is not an ideal")
    span = [list(v) for v in vectors]
    chosen: list[int] = []
    current = list(span)
    cur_rank = _linalg.rank(span) if span else 0
    for i in range(g.dim):
        candidate = current + [list(g.basis_vector(i))]
        if _linalg.rank(candidate) > cur_rank:
            chosen.append(i)
            current = candidate
            cur_rank += 1
    m = len(chosen)
    # projection: solve v = ideal part + sum coords * e_chosen for each basis vector
    columns_matrix = [list(v) for v in vectors] + [list(g.basis_vector(i)) for i in chosen]
    proj_cols = []
    for i in range(g.dim):
        coords = _linalg.solve(
            [[columns_matrix[c][r] for c in range(len(columns_matrix))] for r in range(g.dim)],
            list(g.basis_vector(i)),
        )
        if coords is None:
            raise InternalConsistencyError("complement construction failed to span")
        proj_cols.append(coords[len(vectors):])
    projection = LinearMap(g.dim, m, proj_cols)
    brackets: dict[tuple[int, int], dict[int, Scalar]] = {}
    for a in range(m):
        for b in range(a + 1, m):
            image = projection.apply(
                g.bracket(g.basis_vector(chosen[a]), g.basis_vector(chosen[b]))
            )
            entry = {k: c for k, c in enumerate(image) if not c.is_zero()}
            if entry:
                brackets[(a, b)] = entry
    names = tuple(g.basis_names[i] for i in chosen)
    return LieAlgebra(names, brackets), projection


def adjoint_rep(g: LieAlgebra, x: Sequence) -> LinearMap:
    """Matrix of eta -> [x, eta]."""
    x = as_vector(x)
    if len(x) != g.dim:
        raise ShapeError(f"vector length {len(x)} != dim {g.dim}")
    cols = [g.bracket(x, g.basis_vector(j)) for j in range(g.dim)]
    return LinearMap(g.dim, g.dim, cols)


def is_derivation_action(q: LieAlgebra, D: LinearMap):
    """True iff D[u,v] = [Du,v] + [u,Dv] on basis pairs; returns (ok, witness)."""
    if D.domain_dim != q.dim or D.codomain_dim != q.dim:
        raise ShapeError("derivation candidate must be square of the algebra dimension")
    for i in range(q.dim):
        for j in range(i + 1, q.dim):
            lhs = D.apply(q.bracket(q.basis_vector(i), q.basis_vector(j)))
            rhs = vec_add(
                q.bracket(D.columns[i], q.basis_vector(j)),
                q.bracket(q.basis_vector(i), D.columns[j]),
            )
            if lhs != rhs:
                return False, (q.basis_names[i], q.basis_names[j])
    return True, None


def _action_is_homomorphism(l: LieAlgebra, action: Sequence[LinearMap]):
    """Check tau -> action(tau) is a Lie homomorphism l -> Der(q) on basis pairs."""
    for i in range(l.dim):
        for j in range(i + 1, l.dim):
            lhs_cols = []
            br = l.bracket(l.basis_vector(i), l.basis_vector(j))
            n = action[0].domain_dim
            for col in range(n):
                acc = zero_vector(n)
                for k, coeff in enumerate(br):
                    if not coeff.is_zero():
                        acc = vec_add(acc, vec_scale(action[k].columns[col], coeff))
                lhs_cols.append(acc)
            commutator = []
            for col in range(n):
                a = action[i].apply(action[j].columns[col])
                b = action[j].apply(action[i].columns[col])
                commutator.append(vec_sub(a, b))
            if lhs_cols != commutator:
                return False, (l.basis_names[i], l.basis_names[j])
    return True, None


def semidirect_product(
    l: LieAlgebra, q: LieAlgebra, action: Sequence[LinearMap]
) -> LieAlgebra:
    """Semidirect sum on basis (l-basis, q-basis) twisted by the given derivations.

    action[j] gives the derivation of q attached to the j-th basis vector
    of l; the assignment must itself be a Lie homomorphism into Der(q).
    Bracket: [(t1,h1),(t2,h2)] = ([t1,t2], [h1,h2] + a(t1)h2 - a(t2)h1).
    """
    action = list(action)
    if len(action) != l.dim:
        raise ShapeError("one action map per basis vector of the acting algebra required")
    for idx, D in enumerate(action):
        ok, witness = is_derivation_action(q, D)
        if not ok:
            raise PreconditionError(
                f"action of {l.basis_names[idx]!r} is not a derivation; witness {witness}"
            )
    if l.dim:
        ok, witness = _action_is_homomorphism(l, action)
        if not ok:
            raise PreconditionError(
                f"action is not a Lie homomorphism into derivations; witness {witness}"
            )
    names = list(l.basis_names) + list(q.basis_names)
    if len(set(names)) != len(names):
        names = ["l." + n for n in l.basis_names] + ["q." + n for n in q.basis_names]
    nl, nq = l.dim, q.dim
    brackets: dict[tuple[int, int], dict[int, Scalar]] = {}

    def put(i, j, vec_l, vec_q):
        entry = {}
        for k, coeff in enumerate(vec_l):
            if not coeff.is_zero():
                entry[k] = coeff
        for k, coeff in enumerate(vec_q):
            if not coeff.is_zero():
                entry[nl + k] = coeff
        if entry:
            brackets[(i, j)] = entry

    for i in range(nl):
        for j in range(i + 1, nl):
            br = l.bracket(l.basis_vector(i), l.basis_vector(j))
            put(i, j, br, zero_vector(nq))
    for i in range(nl):
        for j in range(nq):
            # [tau_i, eta_j] = action(tau_i) eta_j
            put(i, nl + j, zero_vector(nl), action[i].columns[j])
    for i in range(nq):
        for j in range(i + 1, nq):
            br = q.bracket(q.basis_vector(i), q.basis_vector(j))
            put(nl + i, nl + j, zero_vector(nl), br)
    out = LieAlgebra(names, brackets)
    bad = validate_jacobi(out)
    if bad:
        raise InternalConsistencyError(
            f"semidirect product failed Jacobi although preconditions held: {bad[0]}"
        )
    return out
