"""Finite-dimensional algebras given by structure constants over the rationals.

Conventions:
  * constants are stored as c[i][j][k] = coefficient of basis_k in the product
    basis_i · basis_j (all 0-based internally);
  * every witness and every JSON index is reported 1-based, matching the
    mathematical indexing of the checks;
  * the serialized form is
      {"dim": n, "basis": [names], "products": [{"left": i, "right": j,
       "result": ["p/q", ...]}]}
    with omitted products meaning zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an identity scan: holds, or the first failing triple (1-based)."""
    holds: bool
    witness: tuple | None = None


class JacobiError(ValueError):
    """Commutator constants violate the Jacobi identity."""

    def __init__(self, witness: tuple):
        super().__init__(
            f"Jacobi identity fails at basis triple {witness}; "
            "the product is neither associative nor left-symmetric")
        self.witness = witness


def _to_vector(values, dim: int) -> Vector:
    vec = tuple(Fraction(v) for v in values)
    if len(vec) != dim:
        raise ValueError(f"expected a vector of length {dim}, got {len(vec)}")
    return vec


class SCAlgebra:
    """An algebra presented by structure constants; no identity is assumed."""

    __slots__ = ("dim", "basis_names", "c", "unit_index")

    def __init__(self, basis_names, c, unit_index: int | None = None):
        self.basis_names = tuple(basis_names)
        self.dim = len(self.basis_names)
        if len(set(self.basis_names)) != self.dim:
            raise ValueError("basis names must be unique")
        n = self.dim
        if len(c) != n or any(len(row) != n for row in c):
            raise ValueError("structure constants must be n x n x n")
        self.c = tuple(tuple(_to_vector(vec, n) for vec in row) for row in c)
        if unit_index is not None and not (0 <= unit_index < n):
            raise ValueError("unit index out of range")
        self.unit_index = unit_index

    @classmethod
    def zero_algebra(cls, basis_names) -> "SCAlgebra":
        names = tuple(basis_names)
        n = len(names)
        z = [[[0] * n for _ in range(n)] for _ in range(n)]
        return cls(names, z)

    @classmethod
    def from_products(cls, basis_names, products, unit: str | None = None) -> "SCAlgebra":
        """Build from a sparse table {(left_name, right_name): {name: coeff}}."""
        names = tuple(basis_names)
        n = len(names)
        index = {name: i for i, name in enumerate(names)}
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (left, right), combo in products.items():
            row = c[index[left]][index[right]]
            for name, coeff in combo.items():
                row[index[name]] = Fraction(coeff)
        return cls(names, c, index[unit] if unit is not None else None)

    def basis_index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError(f"no basis element named {name!r}") from None

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(j == i)) for j in range(self.dim))

    def product(self, u, v) -> Vector:
        """Bilinear product of two coordinate vectors."""
        u = _to_vector(u, self.dim)
        v = _to_vector(v, self.dim)
        out = [Fraction(0)] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                scale = ui * vj
                for k, ck in enumerate(self.c[i][j]):
                    if ck:
                        out[k] += scale * ck
        return tuple(out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SCAlgebra)
                and self.basis_names == other.basis_names
                and self.c == other.c
                and self.unit_index == other.unit_index)

    def __hash__(self):
        return hash((self.basis_names, self.c, self.unit_index))

    def __repr__(self):
        return f"<SCAlgebra dim={self.dim} basis={self.basis_names}>"

    # ----- serialization --------------------------------------------------

    def to_json_dict(self) -> dict:
        products = []
        for i in range(self.dim):
            for j in range(self.dim):
                vec = self.c[i][j]
                if any(vec):
                    products.append({
                        "left": i + 1,
                        "right": j + 1,
                        "result": [str(x) for x in vec],
                    })
        doc = {"dim": self.dim, "basis": list(self.basis_names), "products": products}
        if self.unit_index is not None:
            doc["unit"] = self.unit_index + 1
        return doc

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SCAlgebra":
        n = doc["dim"]
        names = tuple(doc["basis"])
        if len(names) != n:
            raise ValueError("basis length does not match dim")
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for entry in doc.get("products", ()):
            i, j = entry["left"] - 1, entry["right"] - 1
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"product index out of range: {entry}")
            c[i][j] = [Fraction(x) for x in entry["result"]]
        unit = doc.get("unit")
        return cls(names, c, None if unit is None else unit - 1)


class LieAlgebraSC:
    """Bracket constants with antisymmetry and Jacobi checked at construction."""

    __slots__ = ("dim", "basis_names", "f")

    def __init__(self, basis_names, f):
        self.basis_names = tuple(basis_names)
        self.dim = len(self.basis_names)
        n = self.dim
        self.f = tuple(tuple(_to_vector(vec, n) for vec in row) for row in f)
        for i in range(n):
            for j in range(n):
                if any(a + b for a, b in zip(self.f[i][j], self.f[j][i])):
                    raise ValueError(f"bracket is not antisymmetric at ({i + 1}, {j + 1})")
        witness = _jacobi_witness(self.f, n)
        if witness is not None:
            raise JacobiError(witness)

    def bracket(self, u, v) -> Vector:
        u = _to_vector(u, self.dim)
        v = _to_vector(v, self.dim)
        out = [Fraction(0)] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                scale = ui * vj
                for k, fk in enumerate(self.f[i][j]):
                    if fk:
                        out[k] += scale * fk
        return tuple(out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieAlgebraSC)
                and self.basis_names == other.basis_names
                and self.f == other.f)

    def __hash__(self):
        return hash((self.basis_names, self.f))

    def __repr__(self):
        return f"<LieAlgebraSC dim={self.dim} basis={self.basis_names}>"

    def to_json_dict(self) -> dict:
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                vec = self.f[i][j]
                if any(vec):
                    brackets.append({
                        "left": i + 1,
                        "right": j + 1,
                        "result": [str(x) for x in vec],
                    })
        return {"dim": self.dim, "basis": list(self.basis_names), "brackets": brackets}


class Subspace:
    """A subspace of Q^n held as reduced row-echelon basis rows (canonical)."""

    __slots__ = ("ambient_dim", "rows")

    def __init__(self, ambient_dim: int, rows):
        self.ambient_dim = ambient_dim
        reduced, _ = linalg.rref([list(r) for r in rows])
        self.rows = tuple(tuple(r) for r in reduced)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, vector) -> bool:
        vec = _to_vector(vector, self.ambient_dim)
        return linalg.in_row_space([list(r) for r in self.rows], vec)

    def coordinates_of(self, vector):
        """Coordinates of a vector against the basis rows, or None."""
        vec = _to_vector(vector, self.ambient_dim)
        cols = [[row[c] for row in self.rows] for c in range(self.ambient_dim)]
        return linalg.solve(cols, list(vec))

    def named_basis(self, ambient_names):
        """Names of the rows when the span is exactly a coordinate subspace."""
        names = []
        for row in self.rows:
            hot = [k for k, x in enumerate(row) if x]
            if len(hot) != 1 or row[hot[0]] != 1:
                return None
            names.append(ambient_names[hot[0]])
        return names

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __repr__(self):
        return f"<Subspace rank={self.rank} of dim {self.ambient_dim}>"


# ----- identity checks ------------------------------------------------------


def _associator(A: SCAlgebra, i: int, j: int, k: int) -> Vector:
    """(b_i b_j) b_k - b_i (b_j b_k) as a coordinate vector."""
    n = A.dim
    left = [Fraction(0)] * n
    for l, cl in enumerate(A.c[i][j]):
        if cl:
            for m, cm in enumerate(A.c[l][k]):
                if cm:
                    left[m] += cl * cm
    right = [Fraction(0)] * n
    for l, cl in enumerate(A.c[j][k]):
        if cl:
            for m, cm in enumerate(A.c[i][l]):
                if cm:
                    right[m] += cl * cm
    return tuple(a - b for a, b in zip(left, right))


def check_left_symmetric(A: SCAlgebra) -> CheckReport:
    """Left-symmetric identity: the associator is symmetric in its first two slots.

    Checking on basis triples suffices by trilinearity.  The witness is the
    first failing (i, j, k) in lexicographic order, 1-based.
    """
    n = A.dim
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for k in range(n):
                if _associator(A, i, j, k) != _associator(A, j, i, k):
                    return CheckReport(False, (i + 1, j + 1, k + 1))
    return CheckReport(True)


def check_associative(A: SCAlgebra) -> CheckReport:
    n = A.dim
    zero = (Fraction(0),) * n
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if _associator(A, i, j, k) != zero:
                    return CheckReport(False, (i + 1, j + 1, k + 1))
    return CheckReport(True)


def _jacobi_witness(f, n: int):
    zero = (Fraction(0),) * n
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = [Fraction(0)] * n
                # [b_i,[b_j,b_k]] + [b_j,[b_k,b_i]] + [b_k,[b_i,b_j]]
                for (a, b, cidx) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = f[b][cidx]
                    for l, il in enumerate(inner):
                        if il:
                            for m, fm in enumerate(f[a][l]):
                                if fm:
                                    total[m] += il * fm
                if tuple(total) != zero:
                    return (i + 1, j + 1, k + 1)
    return None


def commutator_algebra(A: SCAlgebra) -> LieAlgebraSC:
    """Lie algebra of commutators, f[i][j] = c[i][j] - c[j][i].

    Raises JacobiError (with the first failing triple) when the commutators
    do not satisfy Jacobi, which signals the input is neither associative nor
    left-symmetric.
    """
    n = A.dim
    f = [[tuple(a - b for a, b in zip(A.c[i][j], A.c[j][i])) for j in range(n)]
         for i in range(n)]
    witness = _jacobi_witness(f, n)
    if witness is not None:
        raise JacobiError(witness)
    return LieAlgebraSC(A.basis_names, f)


# ----- subspaces and constructions ------------------------------------------


def subalgebra_closure(A: SCAlgebra, generators) -> Subspace:
    """Smallest subspace containing the generators and closed under the product.

    Iterates span <- span + span·span with row reduction until the rank
    stabilizes (at most dim rounds); the result is post-verified to be
    product-closed.
    """
    vectors = [list(_to_vector(g, A.dim)) for g in generators]
    rows, _ = linalg.rref(vectors)
    for _ in range(A.dim + 1):
        products = [list(A.product(u, v)) for u in rows for v in rows]
        new_rows, _ = linalg.rref(rows + products)
        if len(new_rows) == len(rows):
            break
        rows = new_rows
    for u in rows:
        for v in rows:
            if not linalg.in_row_space(rows, list(A.product(u, v))):
                raise AssertionError("closure iteration ended on a non-closed span")
    return Subspace(A.dim, rows)


def restrict_to_subspace(A: SCAlgebra, space: Subspace, basis_names=None) -> SCAlgebra:
    """The algebra induced on a product-closed subspace, in row coordinates."""
    rows = space.rows
    r = len(rows)
    if basis_names is None:
        named = space.named_basis(A.basis_names)
        basis_names = named if named is not None else [f"v{i + 1}" for i in range(r)]
    c = []
    for u in rows:
        row_constants = []
        for v in rows:
            coords = space.coordinates_of(A.product(u, v))
            if coords is None:
                raise ValueError("subspace is not closed under the product")
            row_constants.append(coords)
        c.append(row_constants)
    return SCAlgebra(basis_names, c)


def opposite(A: SCAlgebra) -> SCAlgebra:
    """Same space, reversed product: c'[i][j] = c[j][i]."""
    n = A.dim
    c = [[A.c[j][i] for j in range(n)] for i in range(n)]
    return SCAlgebra(A.basis_names, c, A.unit_index)


def adjoin_unit(A: SCAlgebra, unit_name: str = "1") -> SCAlgebra:
    """Append a two-sided unit as the last basis element.

    Old structure constants are unchanged at their indices.
    """
    if A.unit_index is not None:
        raise ValueError("algebra already has a designated unit")
    if unit_name in A.basis_names:
        raise ValueError(f"basis already contains {unit_name!r}")
    n = A.dim
    names = A.basis_names + (unit_name,)
    c = [[[Fraction(0)] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                c[i][j][k] = A.c[i][j][k]
    for i in range(n + 1):
        c[i][n][i] = Fraction(1)   # x · 1 = x
        c[n][i][i] = Fraction(1)   # 1 · x = x
    return SCAlgebra(names, c, unit_index=n)


def left_mult_matrix(A: SCAlgebra, v) -> list:
    """Matrix of x -> v·x in the basis (rows k, columns j)."""
    vec = _to_vector(v, A.dim)
    n = A.dim
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, vi in enumerate(vec):
        if not vi:
            continue
        for j in range(n):
            for k, ck in enumerate(A.c[i][j]):
                if ck:
                    m[k][j] += vi * ck
    return m


def is_unit(A: SCAlgebra, v) -> bool:
    """Invertibility of v in a unital associative algebra.

    True iff the left-multiplication matrix is invertible over the rationals;
    requires a designated unit.
    """
    if A.unit_index is None:
        raise ValueError("algebra has no designated unit element")
    return linalg.rank(left_mult_matrix(A, v)) == A.dim
