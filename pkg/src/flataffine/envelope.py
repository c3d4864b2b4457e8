"""End-to-end envelope computation.

From a flat affine connection, a verified ambient basis of infinitesimal
affine transformations and a generator set, produce the product table of the
ambient space, the closure of the generators, and the associative envelope:
the opposite of the closure algebra.  Every verification step is recorded in
the report; precondition failures raise with the failing object named.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    LieAlgebraSC,
    SCAlgebra,
    Subspace,
    check_associative,
    commutator_algebra,
    opposite,
    restrict_to_subspace,
    subalgebra_closure,
)
from .geometry import (
    Connection,
    IATViolationError,
    NotFlatError,
    express_in_basis,
    is_flat_affine,
    is_infinitesimal_affine,
    lie_bracket,
    product_table,
)
from .render import render_table_text

OPPOSITE_CONVENTION = ("envelope constants are the opposite of the ambient "
                       "product restricted to the closure")


@dataclass(frozen=True)
class EnvelopeReport:
    ambient: SCAlgebra
    generator_names: tuple
    closure: Subspace
    envelope: SCAlgebra
    commutator: LieAlgebraSC
    checks: dict
    convention: str = OPPOSITE_CONVENTION

    def to_json_dict(self) -> dict:
        return {
            "convention": self.convention,
            "generators": list(self.generator_names),
            "ambient": self.ambient.to_json_dict(),
            "closure": {
                "ambient_dim": self.closure.ambient_dim,
                "rank": self.closure.rank,
                "rows": [[str(x) for x in row] for row in self.closure.rows],
                "named_basis": self.closure.named_basis(self.ambient.basis_names),
            },
            "envelope": self.envelope.to_json_dict(),
            "commutator": self.commutator.to_json_dict(),
            "checks": dict(self.checks),
        }

    def to_text(self) -> str:
        lines = [f"generators: {', '.join(self.generator_names)}",
                 f"closure rank: {self.closure.rank} "
                 f"(ambient dimension {self.closure.ambient_dim})"]
        named = self.closure.named_basis(self.ambient.basis_names)
        if named is not None:
            lines.append(f"closure basis: {', '.join(named)}")
        lines.append(f"note: {self.convention}")
        for name, outcome in self.checks.items():
            lines.append(f"check {name}: {'ok' if outcome else 'FAILED'}")
        lines.append("envelope multiplication table (rows = left factor):")
        lines.append(render_table_text(self.envelope))
        return "\n".join(lines)


def commutator_matches_brackets(conn: Connection, fields, table: SCAlgebra) -> bool:
    """Cross-check that antisymmetrized product-table constants equal the
    structure constants computed independently from Lie brackets of the
    fields."""
    n = table.dim
    for i in range(n):
        for j in range(n):
            bracket_coords = express_in_basis(lie_bracket(fields[i], fields[j]), fields)
            expected = [a - b for a, b in zip(table.c[i][j], table.c[j][i])]
            if list(bracket_coords) != expected:
                return False
    return True


def compute_envelope(conn: Connection, ambient_fields, names, generators) -> EnvelopeReport:
    """Run the envelope algorithm end to end.

    `generators` is a subset of `names`; generator fields are taken from the
    ambient list by name, never re-parsed.
    """
    fields = list(ambient_fields)
    names = list(names)
    if len(fields) != len(names):
        raise ValueError("one name per ambient field is required")
    generator_names = list(generators)
    for g in generator_names:
        if g not in names:
            raise KeyError(f"generator {g!r} is not among the ambient field names")
    checks = {}
    if not is_flat_affine(conn):
        raise NotFlatError("the ambient product requires a flat affine connection")
    checks["flat_affine"] = True
    for name, f in zip(names, fields):
        report = is_infinitesimal_affine(conn, f)
        if not report.holds:
            raise IATViolationError(name, report.witness)
        checks[f"iat:{name}"] = True
    ambient = product_table(conn, fields, names, check_iat=False)
    checks["ambient_associative"] = check_associative(ambient).holds
    checks["ambient_commutator_matches_lie_brackets"] = \
        commutator_matches_brackets(conn, fields, ambient)
    generator_vectors = [ambient.basis_vector(ambient.basis_index(g))
                         for g in generator_names]
    closure = subalgebra_closure(ambient, generator_vectors)
    checks["closure_product_closed"] = True  # post-verified inside the closure
    restricted = restrict_to_subspace(ambient, closure)
    envelope = opposite(restricted)
    checks["envelope_associative"] = check_associative(envelope).holds
    commutator = commutator_algebra(envelope)
    # the envelope is an opposite algebra, so its commutator is the negation
    # of the closure-restricted ambient commutator (= restricted Lie brackets)
    restricted_comm = commutator_algebra(restricted)
    checks["envelope_commutator_is_opposite_of_restricted_brackets"] = all(
        commutator.f[i][j] == tuple(-x for x in restricted_comm.f[i][j])
        for i in range(commutator.dim) for j in range(commutator.dim))
    return EnvelopeReport(
        ambient=ambient,
        generator_names=tuple(generator_names),
        closure=closure,
        envelope=envelope,
        commutator=commutator,
        checks=checks,
    )


def verify_bi_invariant_criterion(L: LieAlgebraSC, A: SCAlgebra) -> bool:
    """True iff A is associative and its commutators reproduce L entrywise."""
    if L.dim != A.dim:
        raise ValueError(
            f"dimension mismatch: Lie algebra has {L.dim}, algebra has {A.dim}")
    if not check_associative(A).holds:
        return False
    commutator = commutator_algebra(A)
    return commutator.f == L.f
