"""Matrix Lie algebras over the rationals.

An algebra here is a list of ambient matrices closed under the commutator.
Structure constants are computed once, exactly, at construction; everything
downstream (center, derived subalgebra, invariant-form checks, the graded
construction) works in coordinates with respect to the stored basis.

Classical families are produced as canonical kernel bases of their defining
linear equations, so two calls with the same parameters return identical
bases, entry for entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .exact_linalg import (
    Matrix,
    Q,
    Vec,
    is_zero_vec,
    kernel_basis,
    qnorm,
    rank,
    row_space_basis,
    solve_multi,
    vec_add,
    vec_scale,
    zero_vec,
)


class LieAlgebraError(ValueError):
    pass


class NotIndependentError(LieAlgebraError):
    """The proposed basis is linearly dependent."""


class NotClosedError(LieAlgebraError):
    """A commutator of basis elements left the span."""

    def __init__(self, i: int, j: int):
        super().__init__(f"commutator of basis elements {i} and {j} is outside the span")
        self.pair = (i, j)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def trace_product(a: Matrix, b: Matrix) -> Q:
    """Tr(a @ b) without forming the product."""
    acc: Q = 0
    for i, row in enumerate(a.entries):
        for k, x in enumerate(row):
            if x:
                y = b.entries[k][i]
                if y:
                    acc = acc + x * y
    return qnorm(acc)


@dataclass(frozen=True)
class MatrixLieAlgebra:
    """A Lie algebra of ambient_size x ambient_size matrices.

    structure[i][j] holds the coordinates of [basis[i], basis[j]] in the
    basis, so bracketing never re-solves a linear system.
    """

    ambient_size: int
    basis: tuple[Matrix, ...]
    structure: tuple[tuple[Vec, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket_coords(self, u: Sequence[Q], v: Sequence[Q]) -> Vec:
        """Coordinates of [u, v] for u, v given in coordinates."""
        acc = list(zero_vec(self.dim))
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.structure[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                cij = row[j]
                if cij:
                    f = ui * vj
                    for k, ck in enumerate(cij):
                        if ck:
                            acc[k] = acc[k] + f * ck
        return tuple(qnorm(x) for x in acc)

    def ad_matrix(self, u: Sequence[Q]) -> Matrix:
        """Matrix of v -> [u, v] in coordinates."""
        cols = [self.bracket_coords(u, unit_coords(self.dim, j)) for j in range(self.dim)]
        return Matrix(tuple(zip(*cols))) if cols else Matrix(())

    def matrix_of(self, coords: Sequence[Q]) -> Matrix:
        """Reconstruct the ambient matrix with the given coordinates."""
        if len(coords) != self.dim:
            raise ValueError("coordinate length does not match dimension")
        acc = Matrix.zeros(self.ambient_size, self.ambient_size)
        for c, b in zip(coords, self.basis):
            if c:
                acc = acc + b.scale(c)
        return acc

    def coords_of(self, m: Matrix) -> Vec | None:
        """Coordinates of an ambient matrix, or None if it lies outside."""
        stack = Matrix(tuple(b.flat() for b in self.basis)).transpose()
        return solve_multi(stack, Matrix(tuple((x,) for x in m.flat())))[0]


def unit_coords(dim: int, j: int) -> Vec:
    return tuple(1 if i == j else 0 for i in range(dim))


def build_algebra(ambient_size: int, basis: Sequence[Matrix]) -> MatrixLieAlgebra:
    """Assemble an algebra from a basis, verifying independence and closure."""
    basis = tuple(basis)
    for b in basis:
        if b.shape() != (ambient_size, ambient_size):
            raise LieAlgebraError("basis matrix has the wrong ambient size")
    d = len(basis)
    flat_stack = Matrix(tuple(b.flat() for b in basis))
    if d and rank(flat_stack) != d:
        raise NotIndependentError("basis is linearly dependent")

    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    coords: list[Vec | None] = []
    if pairs:
        rhs = Matrix(tuple(
            commutator(basis[i], basis[j]).flat() for i, j in pairs
        )).transpose()
        coords = solve_multi(flat_stack.transpose(), rhs)
    table = [[zero_vec(d)] * d for _ in range(d)]
    for (i, j), c in zip(pairs, coords):
        if c is None:
            raise NotClosedError(i, j)
        table[i][j] = c
        table[j][i] = vec_scale(-1, c)
    return MatrixLieAlgebra(ambient_size, basis, tuple(tuple(row) for row in table))


def standard_symplectic_form(n: int) -> Matrix:
    """The 2n x 2n block matrix [[0, I], [-I, 0]]."""
    z, i = Matrix.zeros(n, n), Matrix.identity(n)
    top = tuple(tuple(zr) + tuple(ir) for zr, ir in zip(z.entries, i.entries))
    bottom = tuple(tuple((-x for x in ir)) + tuple(zr) for ir, zr in zip(i.entries, z.entries))
    return Matrix(top + bottom)


def _solution_basis(n: int, defining: Callable[[Matrix], Matrix]) -> list[Matrix]:
    """Canonical basis of {A : defining(A) = 0} inside n x n matrices."""
    columns = []
    for p in range(n):
        for q in range(n):
            e = Matrix(tuple(tuple(1 if (i, j) == (p, q) else 0 for j in range(n))
                             for i in range(n)))
            columns.append(defining(e).flat())
    constraint = Matrix(tuple(columns)).transpose()
    out = []
    for v in kernel_basis(constraint):
        out.append(Matrix(tuple(v[i * n:(i + 1) * n] for i in range(n))))
    return out


def family(kind: str, n: int) -> MatrixLieAlgebra:
    """Classical families: gl(n), sl(n), so(n), and sp(n) on ambient size 2n."""
    if n < 1:
        raise LieAlgebraError("family parameter must be positive")
    if kind == "gl":
        basis = [Matrix(tuple(tuple(1 if (i, j) == (p, q) else 0 for j in range(n))
                              for i in range(n)))
                 for p in range(n) for q in range(n)]
        return build_algebra(n, basis)
    if kind == "sl":
        i_n = Matrix.identity(n)
        return build_algebra(n, _solution_basis(n, lambda a: _scalar_embed(a.trace(), i_n)))
    if kind == "so":
        return build_algebra(n, _solution_basis(n, lambda a: a + a.transpose()))
    if kind == "sp":
        j = standard_symplectic_form(n)
        return build_algebra(
            2 * n, _solution_basis(2 * n, lambda a: a @ j + j @ a.transpose()))
    raise LieAlgebraError(f"unknown family kind: {kind!r}")


def _scalar_embed(c: Q, identity: Matrix) -> Matrix:
    return identity.scale(c)


def direct_sum(algebras: Sequence[MatrixLieAlgebra]) -> MatrixLieAlgebra:
    """Block-diagonal sum; the bases concatenate in argument order."""
    total = sum(a.ambient_size for a in algebras)
    basis = []
    offset = 0
    for a in algebras:
        for b in a.basis:
            rows = []
            for i in range(total):
                if offset <= i < offset + a.ambient_size:
                    inner = b.entries[i - offset]
                    rows.append((0,) * offset + tuple(inner) + (0,) * (total - offset - a.ambient_size))
                else:
                    rows.append((0,) * total)
            basis.append(Matrix(tuple(rows)))
        offset += a.ambient_size
    return build_algebra(total, basis)


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric bilinear form on an algebra, stored as a Gram matrix."""

    gram: Matrix

    def evaluate(self, u: Sequence[Q], v: Sequence[Q]) -> Q:
        acc: Q = 0
        for i, ui in enumerate(u):
            if ui:
                row = self.gram.entries[i]
                for j, vj in enumerate(v):
                    if vj and row[j]:
                        acc = acc + ui * row[j] * vj
        return qnorm(acc)


def trace_form(alg: MatrixLieAlgebra) -> BilinearForm:
    """Gram matrix of (a, b) -> Tr(ab) on the stored basis."""
    d = alg.dim
    gram = [[trace_product(alg.basis[i], alg.basis[j]) for j in range(d)] for i in range(d)]
    return BilinearForm(Matrix(tuple(tuple(row) for row in gram)))


@dataclass(frozen=True)
class FormReport:
    symmetric: bool
    nondegenerate: bool
    invariant: bool
    symmetry_witness: tuple[int, int] | None = None
    kernel_witness: Vec | None = None
    invariance_witness: tuple[int, int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.symmetric and self.nondegenerate and self.invariant


def check_form(alg: MatrixLieAlgebra, form: BilinearForm) -> FormReport:
    """Verify symmetry, nondegeneracy, and invariance B([a,b],c) = B(a,[b,c])."""
    g = form.gram
    if g.shape() != (alg.dim, alg.dim):
        raise LieAlgebraError("Gram matrix size does not match the algebra dimension")
    symmetric, sym_wit = True, None
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            if g.entries[i][j] != g.entries[j][i]:
                symmetric, sym_wit = False, (i, j)
                break
        if not symmetric:
            break
    ker = kernel_basis(g)
    nondegenerate = not ker
    invariant, inv_wit = True, None
    d = alg.dim
    for i in range(d):
        if not invariant:
            break
        for j in range(d):
            if not invariant:
                break
            cij = alg.structure[i][j]
            for k in range(d):
                lhs: Q = 0
                if not is_zero_vec(cij):
                    for m, c in enumerate(cij):
                        if c and g.entries[m][k]:
                            lhs = lhs + c * g.entries[m][k]
                rhs: Q = 0
                cjk = alg.structure[j][k]
                if not is_zero_vec(cjk):
                    for m, c in enumerate(cjk):
                        if c and g.entries[i][m]:
                            rhs = rhs + c * g.entries[i][m]
                if lhs != rhs:
                    invariant, inv_wit = False, (i, j, k)
                    break
    return FormReport(symmetric, nondegenerate, invariant,
                      sym_wit, ker[0] if ker else None, inv_wit)


def center(alg: MatrixLieAlgebra) -> list[Vec]:
    """Canonical coordinate basis of {z : [z, g] = 0}."""
    d = alg.dim
    if d == 0:
        return []
    rows = []
    for j in range(d):
        for k in range(d):
            rows.append(tuple(alg.structure[i][j][k] for i in range(d)))
    return kernel_basis(Matrix(tuple(rows)))


def derived_subalgebra(alg: MatrixLieAlgebra) -> list[Vec]:
    """Canonical coordinate basis of the span of all commutators."""
    gens = []
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            c = alg.structure[i][j]
            if not is_zero_vec(c):
                gens.append(c)
    return row_space_basis(gens)


@dataclass(frozen=True)
class ScalarCenterReport:
    """Does the algebra split as a one-dimensional center acting by a nonzero
    scalar on the module, plus its derived subalgebra?

    The graded construction's distinguished grading element lives in exactly
    this situation, so the regularity decision procedure requires it.
    """

    holds: bool
    center_dim: int
    scalar: Q | None
    decomposes: bool
    reason: str


def scalar_center_report(alg: MatrixLieAlgebra,
                         action: Sequence[Matrix]) -> ScalarCenterReport:
    """Check the scalar-center hypothesis against the given action matrices."""
    if len(action) != alg.dim:
        raise LieAlgebraError("one action matrix per basis element is required")
    zs = center(alg)
    center_dim = len(zs)
    derived = derived_subalgebra(alg)
    decomposes = (center_dim + len(derived) == alg.dim
                  and rank(Matrix(tuple(zs + derived))) == alg.dim) if zs or derived else alg.dim == 0
    if center_dim != 1:
        return ScalarCenterReport(False, center_dim, None, decomposes,
                                  f"center dimension is {center_dim}, not 1")
    if not decomposes:
        return ScalarCenterReport(False, center_dim, None, False,
                                  "center and derived subalgebra do not span")
    z = zs[0]
    pi_z = None
    for c, m in zip(z, action):
        if c:
            pi_z = m.scale(c) if pi_z is None else pi_z + m.scale(c)
    if pi_z is None:
        return ScalarCenterReport(False, 1, None, decomposes, "center acts by zero")
    n = pi_z.rows
    scalar = pi_z.entries[0][0]
    if pi_z != Matrix.identity(n).scale(scalar):
        return ScalarCenterReport(False, 1, None, decomposes,
                                  "center generator does not act as a scalar")
    if not scalar:
        return ScalarCenterReport(False, 1, 0, decomposes, "center acts by zero")
    return ScalarCenterReport(True, 1, qnorm(scalar), True, "ok")
