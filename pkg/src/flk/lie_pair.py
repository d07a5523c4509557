"""Lie pair data and the semidirect / quotient constructions attached to it.

A LiePairDatum is the desk-scale stand-in for a pair (complex Lie
algebra q, real group L acting on q): L enters through its complexified
Lie algebra l, the embedding iota: l -> q, and a finite set of named
component generators, each acting on q and on l by automorphisms.  The
connected part of L contributes only the forced infinitesimal action
bracket-with-iota, so generator-level checks certify the whole generated
group (every validated condition is closed under products and inverses).
This Harish-Chandra-style datum cannot express conditions on a connected
component beyond the infinitesimal ones; that modeling gap is
documented, not patched over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import _linalg
from ._linalg import Vector, as_vector, vec_is_zero
from .algebra_core import Scalar
from .errors import (
    InputError,
    InternalConsistencyError,
    PreconditionError,
    ShapeError,
)
from .fgl_dual import (
    GroupLaw,
    fgl_axiom_check,
    fgl_equivariance_check,
    group_law_from_uea,
    lie_from_fgl,
)
from .liealg import (
    LieAlgebra,
    LinearMap,
    adjoint_rep,
    is_ideal,
    is_lie_homomorphism,
    quotient_algebra,
    semidirect_product,
    validate_jacobi,
)

__all__ = [
    "Component",
    "LiePairDatum",
    "GroupDatum",
    "PairHomomorphism",
    "validate_lie_pair",
    "validate_pair_homomorphism",
    "pair_semidirect",
    "theta_embedding",
    "kernel_ideal_check",
    "pair_quotient_map",
    "pair_check_suite",
    "pair_to_group_datum",
    "group_datum_to_pair",
    "pair_roundtrip_failures",
]


@dataclass(frozen=True)
class Component:
    """One named generator of the component group with its two actions."""

    name: str
    q_action: LinearMap
    l_action: LinearMap


@dataclass(frozen=True)
class LiePairDatum:
    """(q, l, iota, components): the computable shadow of a Lie pair."""

    q: LieAlgebra
    l: LieAlgebra
    iota: LinearMap
    components: tuple = ()

    def __post_init__(self):
        if self.iota.domain_dim != self.l.dim or self.iota.codomain_dim != self.q.dim:
            raise ShapeError("iota must map the subalgebra into the ambient algebra")
        object.__setattr__(self, "components", tuple(self.components))
        for comp in self.components:
            if comp.q_action.domain_dim != self.q.dim or comp.q_action.codomain_dim != self.q.dim:
                raise ShapeError(f"component {comp.name!r}: q action has the wrong shape")
            if comp.l_action.domain_dim != self.l.dim or comp.l_action.codomain_dim != self.l.dim:
                raise ShapeError(f"component {comp.name!r}: l action has the wrong shape")


@dataclass(frozen=True)
class GroupDatum:
    """A group law plus component actions and the recorded embedded subalgebra."""

    law: GroupLaw
    components: tuple = ()  # (name, q_action LinearMap) pairs
    l_embedding: tuple = ()  # vectors in q, in subalgebra-basis order

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(
            self, "l_embedding", tuple(as_vector(v) for v in self.l_embedding)
        )
        for v in self.l_embedding:
            if len(v) != self.law.dim:
                raise ShapeError("embedding vectors must have the ambient dimension")


@dataclass(frozen=True)
class PairHomomorphism:
    """A pair map: linear part on the ambient algebras plus a generator word map."""

    dphi: LinearMap
    component_map: dict = field(default_factory=dict)  # name -> tuple of word tokens


# ---------------------------------------------------------------------------
# Validation


def validate_lie_pair(pair: LiePairDatum) -> list[dict]:
    """Run every pair condition; failures (with witnesses) are report content."""
    failures: list[dict] = []
    failures += validate_jacobi(pair.q)
    for item in validate_jacobi(pair.l):
        failures.append({**item, "code": "jacobi", "where": "subalgebra"})
    q, l, iota = pair.q, pair.l, pair.iota
    if not iota.is_injective():
        failures.append({"code": "iota-not-injective"})
    ok, witness = is_lie_homomorphism(iota, l, q)
    if not ok:
        failures.append({"code": "iota-not-homomorphism", "pair": list(witness)})
    for comp in pair.components:
        q_inv = comp.q_action.inverse()
        if q_inv is None:
            failures.append(
                {"code": "component-not-automorphism", "component": comp.name,
                 "action": "q", "reason": "not-invertible"}
            )
        else:
            ok, witness = is_lie_homomorphism(comp.q_action, q, q)
            if not ok:
                failures.append(
                    {"code": "component-not-automorphism", "component": comp.name,
                     "action": "q", "reason": "not-homomorphism", "pair": list(witness)}
                )
        l_inv = comp.l_action.inverse()
        if l_inv is None:
            failures.append(
                {"code": "component-not-automorphism", "component": comp.name,
                 "action": "l", "reason": "not-invertible"}
            )
        else:
            ok, witness = is_lie_homomorphism(comp.l_action, l, l)
            if not ok:
                failures.append(
                    {"code": "component-not-automorphism", "component": comp.name,
                     "action": "l", "reason": "not-homomorphism", "pair": list(witness)}
                )
        # equivariance of iota under the generator
        if comp.q_action.compose(iota) != iota.compose(comp.l_action):
            failures.append(
                {"code": "iota-not-equivariant", "component": comp.name}
            )
        # conjugation consistency of the infinitesimal action
        if q_inv is not None and l_inv is not None:
            for t in range(l.dim):
                tau = l.basis_vector(t)
                lhs = comp.q_action.compose(
                    adjoint_rep(q, iota.apply(tau))
                ).compose(q_inv)
                rhs = adjoint_rep(q, iota.apply(comp.l_action.apply(tau)))
                if lhs != rhs:
                    failures.append(
                        {
                            "code": "ad-compatibility",
                            "component": comp.name,
                            "basis": l.basis_names[t],
                        }
                    )
    return failures


def _word_action(pair: LiePairDatum, word, which: str) -> LinearMap:
    """Product of generator actions named by word tokens (token or token^-1)."""
    dim = pair.q.dim if which == "q" else pair.l.dim
    out = LinearMap.identity(dim)
    actions = {
        c.name: (c.q_action if which == "q" else c.l_action) for c in pair.components
    }
    for token in word:
        inverse = token.endswith("^-1")
        name = token[:-3] if inverse else token
        if name not in actions:
            raise InputError(f"unknown component generator {name!r} in word")
        act = actions[name]
        if inverse:
            act_inv = act.inverse()
            if act_inv is None:
                raise InputError(f"generator {name!r} is not invertible")
            act = act_inv
        out = act.compose(out)
    return out


def validate_pair_homomorphism(
    hom: PairHomomorphism, p1: LiePairDatum, p2: LiePairDatum
) -> list[dict]:
    """Check the two pair-homomorphism diagrams on generators."""
    failures: list[dict] = []
    dphi = hom.dphi
    if dphi.domain_dim != p1.q.dim or dphi.codomain_dim != p2.q.dim:
        raise ShapeError("linear part has the wrong shape for these pairs")
    ok, witness = is_lie_homomorphism(dphi, p1.q, p2.q)
    if not ok:
        failures.append({"code": "not-lie-homomorphism", "pair": list(witness)})
    # iota diagram: dphi . iota1 must land in the image of iota2,
    # inducing the l-restriction
    image2 = [list(col) for col in p2.iota.columns]
    for t in range(p1.l.dim):
        target = dphi.apply(p1.iota.columns[t])
        if not _linalg.in_span([tuple(v) for v in image2], target):
            failures.append(
                {"code": "iota-diagram", "basis": p1.l.basis_names[t]}
            )
    # component diagram on generators: dphi . Ad_g = Ad_{h(g)} . dphi
    for comp in p1.components:
        word = tuple(hom.component_map.get(comp.name, ()))
        try:
            target_action = _word_action(p2, word, "q")
        except InputError as exc:
            failures.append(
                {"code": "component-word", "component": comp.name, "message": str(exc)}
            )
            continue
        if dphi.compose(comp.q_action) != target_action.compose(dphi):
            failures.append({"code": "component-diagram", "component": comp.name})
    return failures


# ---------------------------------------------------------------------------
# The semidirect / quotient constructions


def _require_valid(pair: LiePairDatum):
    failures = validate_lie_pair(pair)
    if failures:
        raise PreconditionError("Lie pair datum fails validation", failures)


def pair_semidirect(pair: LiePairDatum) -> LieAlgebra:
    """l semidirect q with the forced action tau -> ad_{iota(tau)}."""
    _require_valid(pair)
    return _semidirect_unchecked(pair)


def _semidirect_unchecked(pair: LiePairDatum) -> LieAlgebra:
    action = [
        adjoint_rep(pair.q, pair.iota.columns[t]) for t in range(pair.l.dim)
    ]
    return semidirect_product(pair.l, pair.q, action)


def theta_embedding(pair: LiePairDatum) -> LinearMap:
    """tau -> (tau, -iota(tau)), an injective homomorphism into the semidirect sum."""
    _require_valid(pair)
    theta = _theta_unchecked(pair)
    semi = _semidirect_unchecked(pair)
    if not theta.is_injective():
        raise InternalConsistencyError("theta embedding is not injective")
    ok, witness = is_lie_homomorphism(theta, pair.l, semi)
    if not ok:
        raise InternalConsistencyError(f"theta embedding is not a homomorphism at {witness}")
    return theta

def _theta_unchecked(pair: LiePairDatum) -> LinearMap:
    nl, nq = pair.l.dim, pair.q.dim
    cols = []
    for t in range(nl):
        top = [Scalar.one() if i == t else Scalar.zero() for i in range(nl)]
        bottom = [-c for c in pair.iota.columns[t]]
        cols.append(tuple(top) + tuple(bottom))
    return LinearMap(nl, nl + nq, cols)


def kernel_ideal_check(pair: LiePairDatum) -> bool:
    """Is the theta image an ideal of the semidirect sum?  True for valid pairs."""
    _require_valid(pair)
    return _kernel_ideal_unchecked(pair)


def _kernel_ideal_unchecked(pair: LiePairDatum) -> bool:
    semi = _semidirect_unchecked(pair)
    theta = _theta_unchecked(pair)
    return is_ideal(semi, list(theta.columns))


def pair_quotient_map(pair: LiePairDatum) -> LinearMap:
    """(tau, eta) -> iota(tau) + eta, verified as the quotient presentation.

    Verifies: surjective homomorphism onto q, kernel equal to the theta
    image, and the induced map from the quotient algebra is a Lie
    isomorphism onto q.  Violations raise InternalConsistencyError (they
    cannot occur for a valid pair).
    """
    _require_valid(pair)
    semi = _semidirect_unchecked(pair)
    theta = _theta_unchecked(pair)
    pi = _quotient_map_unchecked(pair)
    if not pi.is_surjective():
        raise InternalConsistencyError("quotient map is not surjective")
    ok, witness = is_lie_homomorphism(pi, semi, pair.q)
    if not ok:
        raise InternalConsistencyError(f"quotient map is not a homomorphism at {witness}")
    if not _linalg.spans_equal(pi.kernel(), list(theta.columns)):
        raise InternalConsistencyError("quotient-map kernel differs from the theta image")
    quotient, projection = quotient_algebra(semi, list(theta.columns))
    induced = _induced_iso(pair, projection, pi)
    ok, witness = is_lie_homomorphism(induced, quotient, pair.q)
    if not ok or induced.inverse() is None:
        raise InternalConsistencyError("induced quotient map is not an isomorphism")
    if induced.compose(projection) != pi:
        raise InternalConsistencyError("induced map does not factor the quotient map")
    return pi


def _quotient_map_unchecked(pair: LiePairDatum) -> LinearMap:
    nl, nq = pair.l.dim, pair.q.dim
    cols = [tuple(pair.iota.columns[t]) for t in range(nl)]
    cols += [tuple(pair.q.basis_vector(i)) for i in range(nq)]
    return LinearMap(nl + nq, nq, cols)


def _induced_iso(pair: LiePairDatum, projection: LinearMap, pi: LinearMap) -> LinearMap:
    """Solve induced . projection = pi on the semidirect basis."""
    m = projection.codomain_dim
    rows_a = [
        [projection.entry(r, c) for r in range(m)]
        for c in range(projection.domain_dim)
    ]
    cols = []
    # unknown columns of `induced`: for each quotient basis vector, its q image
    # determined by matching pi on the semidirect basis
    for i in range(pair.q.dim):
        rhs = [pi.entry(i, c) for c in range(pi.domain_dim)]
        sol = _linalg.solve(rows_a, rhs)
        if sol is None:
            raise InternalConsistencyError("induced map is not well defined")
        cols.append(sol)
    # cols currently hold rows of `induced`; transpose into columns
    induced_cols = [
        [Scalar.coerce(cols[i][j]) for i in range(pair.q.dim)] for j in range(m)
    ]
    return LinearMap(m, pair.q.dim, induced_cols)


def pair_check_suite(pair: LiePairDatum) -> tuple[list, list[dict]]:
    """The named construction checks in one deterministic report.

    Returns (checks, failures): checks are (name, passed) pairs; the
    failures list carries witnesses for anything that did not pass.
    """
    checks: list = []
    failures = validate_lie_pair(pair)
    checks.append(("pair-valid", not failures))
    if failures:
        return checks, failures
    semi = _semidirect_unchecked(pair)
    checks.append(("semidirect-jacobi", not validate_jacobi(semi)))
    theta = _theta_unchecked(pair)
    ok_inj = theta.is_injective()
    checks.append(("theta-injective", ok_inj))
    ok_hom, witness = is_lie_homomorphism(theta, pair.l, semi)
    checks.append(("theta-homomorphism", ok_hom))
    if not ok_hom:
        failures.append({"code": "theta-not-homomorphism", "pair": list(witness)})
    ideal_ok = _kernel_ideal_unchecked(pair)
    checks.append(("kernel-ideal", ideal_ok))
    if not ideal_ok:
        failures.append({"code": "theta-image-not-ideal"})
    pi = _quotient_map_unchecked(pair)
    checks.append(("quotient-surjective", pi.is_surjective()))
    ok_hom, witness = is_lie_homomorphism(pi, semi, pair.q)
    checks.append(("quotient-homomorphism", ok_hom))
    kernel_match = _linalg.spans_equal(pi.kernel(), list(theta.columns))
    checks.append(("kernel-equals-theta-image", kernel_match))
    induced_ok = True
    if ideal_ok:
        quotient, projection = quotient_algebra(semi, list(theta.columns))
        try:
            induced = _induced_iso(pair, projection, pi)
            ok1, _ = is_lie_homomorphism(induced, quotient, pair.q)
            induced_ok = (
                ok1
                and induced.inverse() is not None
                and induced.compose(projection) == pi
            )
        except InternalConsistencyError:
            induced_ok = False
    else:
        induced_ok = False
    checks.append(("induced-isomorphism", induced_ok))
    for name, passed in checks:
        if not passed and all(f.get("code") != name for f in failures):
            failures.append({"code": name})
    failures = [f for f in failures if f]
    return checks, failures


# ---------------------------------------------------------------------------
# The round-trip functors


def pair_to_group_datum(pair: LiePairDatum, order: int) -> GroupDatum:
    """Group law of q with the component actions transported and certified."""
    _require_valid(pair)
    law = group_law_from_uea(pair.q, order)
    for comp in pair.components:
        ok, witness = fgl_equivariance_check(law, comp.q_action)
        if not ok:
            raise InternalConsistencyError(
                f"component {comp.name!r} failed equivariance on a valid pair: {witness}"
            )
    components = tuple((comp.name, comp.q_action) for comp in pair.components)
    embedding = tuple(tuple(col) for col in pair.iota.columns)
    return GroupDatum(law=law, components=components, l_embedding=embedding)


def group_datum_to_pair(datum: GroupDatum) -> LiePairDatum:
    """Rebuild the Lie pair: bracket from the law, subalgebra from the embedding."""
    axiom_failures = fgl_axiom_check(datum.law)
    if axiom_failures:
        raise InputError(
            f"group law fails the axiom check: {axiom_failures[0]}"
        )
    q = lie_from_fgl(datum.law)
    vectors = [as_vector(v) for v in datum.l_embedding]
    k = len(vectors)
    if k:
        if _linalg.rank([list(v) for v in vectors]) != k:
            raise InputError("recorded subalgebra embedding is linearly dependent")
    # the embedded subspace must close under the recovered bracket
    sub_brackets: dict = {}
    span_rows = [
        [vectors[c][r] for c in range(k)] for r in range(q.dim)
    ]
    for a in range(k):
        for b in range(a + 1, k):
            br = q.bracket(vectors[a], vectors[b])
            coords = _linalg.solve(span_rows, list(br)) if k else None
            if coords is None:
                raise InputError(
                    "embedding-not-closed: bracket of embedded vectors leaves the "
                    f"subspace at pair ({a}, {b})"
                )
            entry = {c: x for c, x in enumerate(coords) if not x.is_zero()}
            if entry:
                sub_brackets[(a, b)] = entry
    l = LieAlgebra([f"l{i + 1}" for i in range(k)], sub_brackets)
    iota = LinearMap(k, q.dim, vectors)
    components = []
    for name, q_action in datum.components:
        ok, witness = fgl_equivariance_check(datum.law, q_action)
        if not ok:
            raise InputError(f"component {name!r} does not preserve the law: {witness}")
        l_cols = []
        for j in range(k):
            image = q_action.apply(vectors[j])
            coords = _linalg.solve(span_rows, list(image))
            if coords is None:
                raise InputError(
                    f"component {name!r} does not preserve the embedded subalgebra"
                )
            l_cols.append(coords)
        components.append(
            Component(name=name, q_action=q_action, l_action=LinearMap(k, k, l_cols))
        )
    pair = LiePairDatum(q=q, l=l, iota=iota, components=tuple(components))
    failures = validate_lie_pair(pair)
    if failures:
        raise InputError(f"reconstructed datum fails pair validation: {failures[0]}")
    return pair


def pair_roundtrip_failures(pair: LiePairDatum, order: int) -> list[dict]:
    """Exact comparison of a pair against its double-functor image.

    The subalgebra is reconstructed as an embedded subalgebra, so the
    comparison is on iota images (columns), ambient structure constants,
    and component actions; all equalities are coefficient-exact.
    """
    recovered = group_datum_to_pair(pair_to_group_datum(pair, order))
    failures: list[dict] = []
    if recovered.q != pair.q:
        failures.append({"code": "roundtrip-mismatch", "what": "structure-constants"})
    if tuple(recovered.iota.columns) != tuple(pair.iota.columns):
        failures.append({"code": "roundtrip-mismatch", "what": "iota-image"})
    if recovered.l.c != pair.l.c:
        failures.append({"code": "roundtrip-mismatch", "what": "subalgebra-brackets"})
    names1 = [c.name for c in pair.components]
    names2 = [c.name for c in recovered.components]
    if names1 != names2:
        failures.append({"code": "roundtrip-mismatch", "what": "component-names"})
    else:
        for c1, c2 in zip(pair.components, recovered.components):
            if c1.q_action != c2.q_action:
                failures.append(
                    {"code": "roundtrip-mismatch", "what": "component-q-action",
                     "component": c1.name}
                )
            if c1.l_action != c2.l_action:
                failures.append(
                    {"code": "roundtrip-mismatch", "what": "component-l-action",
                     "component": c1.name}
                )
    return failures
