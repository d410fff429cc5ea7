"""Representations, dual modules, and the Phi-map.

A standard pentad bundles an algebra, a representation, a dual module with
an invertible pairing, and a nondegenerate invariant form on the algebra.
The Phi-map sends a module vector and a dual vector to the unique algebra
element representing their matrix coefficient through the form; it is the
bracket U x dual(U) -> g of the graded algebra built downstream.

Sign conventions used throughout the package:
  [a, v] = pi(a) v          for a in g, v in U
  [v, a] = -pi(a) v
  [v, phi] = Phi(v (x) phi) for v in U, phi in the dual
  [phi, v] = -Phi(v (x) phi)
The dual action satisfies <pi(a)v, phi> + <v, pi*(a)phi> = 0 with the
pairing <v, phi> = transpose(v) . P . phi.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .exact_linalg import (
    Matrix,
    Q,
    Vec,
    inverse,
    kernel_basis,
    kronecker,
    qnorm,
    qstr,
    vec_add,
    vec_dot,
)
from .lie import (
    BilinearForm,
    MatrixLieAlgebra,
    check_form,
    commutator,
    direct_sum,
    unit_coords,
)


class PentadError(ValueError):
    pass


class HomomorphismError(PentadError):
    """The action matrices do not respect the bracket."""

    def __init__(self, i: int, j: int):
        super().__init__(
            f"action of [b_{i}, b_{j}] differs from the commutator of the actions")
        self.pair = (i, j)


@dataclass(frozen=True)
class Representation:
    """Action matrices for each algebra basis element, one-to-one.

    The homomorphism property is verified at construction; downstream code
    can therefore treat any Representation instance as a genuine module.
    """

    algebra: MatrixLieAlgebra
    action: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.action) != self.algebra.dim:
            raise PentadError("one action matrix per basis element is required")
        if not self.action:
            raise PentadError("zero-dimensional algebras are not supported here")
        m = self.action[0].rows
        for a in self.action:
            if a.shape() != (m, m):
                raise PentadError("action matrices must be square and equally sized")
        for i in range(len(self.action)):
            for j in range(i + 1, len(self.action)):
                lhs = commutator(self.action[i], self.action[j])
                if lhs != self.act(self.algebra.structure[i][j]):
                    raise HomomorphismError(i, j)

    @property
    def module_dim(self) -> int:
        return self.action[0].rows

    def act(self, coords: Sequence[Q]) -> Matrix:
        """Action matrix of the algebra element with the given coordinates."""
        acc = Matrix.zeros(self.module_dim, self.module_dim)
        for c, a in zip(coords, self.action):
            if c:
                acc = acc + a.scale(c)
        return acc

    def apply(self, coords: Sequence[Q], v: Sequence[Q]) -> Vec:
        """[a, v] for a given in algebra coordinates, without forming act()."""
        acc = [0] * self.module_dim
        for c, mat in zip(coords, self.action):
            if not c:
                continue
            for i, row in enumerate(mat.entries):
                s: Q = 0
                for x, vx in zip(row, v):
                    if x and vx:
                        s = s + x * vx
                if s:
                    acc[i] = acc[i] + c * s
        return tuple(qnorm(x) for x in acc)


@dataclass(frozen=True)
class DualModule:
    """Dual action matrices plus the pairing <v, phi> = t(v).P.phi.

    Compatibility with the primal action is not enforced here; it is one of
    the axioms check_standard reports on, so a broken dual module can still
    be constructed and diagnosed.
    """

    action: tuple[Matrix, ...]
    pairing: Matrix

    def __post_init__(self):
        if not self.action:
            raise PentadError("dual module needs at least one action matrix")
        m = self.pairing.rows
        if self.pairing.cols != m:
            raise PentadError("pairing matrix must be square")
        for a in self.action:
            if a.shape() != (m, m):
                raise PentadError("dual action matrices must match the pairing size")

    @property
    def dim(self) -> int:
        return self.pairing.rows


def dual_representation(rep: Representation, pairing: Matrix | None = None) -> DualModule:
    """Contragredient dual: pi*(a) = -inverse(P) . t(pi(a)) . P.

    With the default identity pairing this is plain negated transposition.
    """
    if pairing is None:
        return DualModule(tuple(a.transpose().scale(-1) for a in rep.action),
                          Matrix.identity(rep.module_dim))
    if pairing.shape() != (rep.module_dim, rep.module_dim):
        raise PentadError("pairing size must match the module dimension")
    p_inv = inverse(pairing)
    return DualModule(
        tuple((p_inv @ a.transpose() @ pairing).scale(-1) for a in rep.action),
        pairing)


@dataclass(frozen=True)
class StandardPentad:
    algebra: MatrixLieAlgebra
    rep: Representation
    dual: DualModule
    form: BilinearForm

    def __post_init__(self):
        if self.rep.algebra is not self.algebra and self.rep.algebra != self.algebra:
            raise PentadError("representation is over a different algebra")
        if self.dual.dim != self.rep.module_dim:
            raise PentadError("dual dimension must equal the module dimension")
        if self.form.gram.shape() != (self.algebra.dim, self.algebra.dim):
            raise PentadError("form size must match the algebra dimension")

    @property
    def module_dim(self) -> int:
        return self.rep.module_dim

    def pair(self, v: Sequence[Q], phi: Sequence[Q]) -> Q:
        """<v, phi> through the pairing matrix."""
        return qnorm(vec_dot(v, self.dual.pairing.apply(phi)))


@dataclass(frozen=True)
class AxiomFailure:
    axiom: str
    indices: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[AxiomFailure, ...]
    notes: tuple[str, ...]


def check_standard(p: StandardPentad) -> ValidationReport:
    """Verify every standard-pentad axiom, collecting witnesses for failures."""
    failures: list[AxiomFailure] = []

    form_report = check_form(p.algebra, p.form)
    if not form_report.symmetric:
        i, j = form_report.symmetry_witness
        failures.append(AxiomFailure(
            "form_symmetric", (i, j),
            f"B(b_{i},b_{j}) = {qstr(p.form.gram.entry(i, j))} but "
            f"B(b_{j},b_{i}) = {qstr(p.form.gram.entry(j, i))}"))
    if not form_report.nondegenerate:
        w = form_report.kernel_witness
        failures.append(AxiomFailure(
            "form_nondegenerate", (),
            "radical contains " + "(" + ", ".join(qstr(x) for x in w) + ")"))
    if not form_report.invariant:
        i, j, k = form_report.invariance_witness
        failures.append(AxiomFailure(
            "form_invariant", (i, j, k),
            f"B([b_{i},b_{j}],b_{k}) != B(b_{i},[b_{j},b_{k}])"))

    ker = kernel_basis(p.dual.pairing)
    if ker:
        failures.append(AxiomFailure(
            "pairing_invertible", (),
            "pairing kernel contains "
            + "(" + ", ".join(qstr(x) for x in ker[0]) + ")"))

    for i, (a, d) in enumerate(zip(p.rep.action, p.dual.action)):
        resid = a.transpose() @ p.dual.pairing + p.dual.pairing @ d
        if not resid.is_zero():
            r, c = next((r, c) for r in range(resid.rows)
                        for c in range(resid.cols) if resid.entry(r, c))
            failures.append(AxiomFailure(
                "dual_compatibility", (i,),
                f"t(pi(b_{i})).P + P.pi*(b_{i}) has entry "
                f"{qstr(resid.entry(r, c))} at ({r}, {c})"))

    # Representation already validated at construction, but re-verify so the
    # report stands on its own even for values built through replace().
    for i in range(p.algebra.dim):
        for j in range(i + 1, p.algebra.dim):
            lhs = commutator(p.rep.action[i], p.rep.action[j])
            if lhs != p.rep.act(p.algebra.structure[i][j]):
                failures.append(AxiomFailure(
                    "representation_homomorphism", (i, j),
                    "action does not respect the bracket"))

    notes = (
        "With B nondegenerate, a -> B(a, .) identifies the algebra with its "
        "dual space, so the Phi-map exists and is unique; no separate "
        "existence check is needed.",
    )
    return ValidationReport(not failures, tuple(failures), notes)


class PhiMap:
    """Solver for B(a, Phi(v (x) phi)) = <pi(a)v, phi>, tables precomputed.

    Construction inverts the form's gram matrix once; each apply() is then a
    handful of exact matrix-vector products.
    """

    def __init__(self, p: StandardPentad):
        self.pentad = p
        gram = p.form.gram
        if kernel_basis(gram):
            raise PentadError("form is degenerate; the Phi-map is not defined")
        self._gram_inv = inverse(gram)
        # row i of the table sends (v, phi) to <pi(b_i)v, phi> = t(v).W_i.phi
        self._tables = tuple(a.transpose() @ p.dual.pairing for a in p.rep.action)

    def apply(self, v: Sequence[Q], phi: Sequence[Q]) -> Vec:
        """Algebra coordinates of Phi(v (x) phi)."""
        t = tuple(qnorm(vec_dot(v, w.apply(phi))) for w in self._tables)
        return self._gram_inv.apply(t)


def phi_map(p: StandardPentad, v: Sequence[Q], phi: Sequence[Q]) -> Vec:
    """One-shot Phi-map evaluation; build a PhiMap for repeated calls."""
    return PhiMap(p).apply(v, phi)


@dataclass(frozen=True)
class EquivarianceReport:
    ok: bool
    witness: str | None = None
    seed: int = 0
    trials: int = 0

    def __bool__(self) -> bool:
        return self.ok


def random_int_vector(rng: random.Random, n: int) -> Vec:
    """Uniform integer entries in [-9, 9]; the shared sampling convention."""
    return tuple(rng.randint(-9, 9) for _ in range(n))


def check_equivariance(p: StandardPentad, trials: int = 20, seed: int = 0) -> EquivarianceReport:
    """Check Phi(pi(a)v (x) phi) + Phi(v (x) pi*(a)phi) = [a, Phi(v (x) phi)].

    Runs over every algebra basis element a and `trials` random (v, phi)
    pairs drawn from the seeded sampler.
    """
    phi_solver = PhiMap(p)
    rng = random.Random(seed)
    d, m = p.algebra.dim, p.module_dim
    for t in range(trials):
        v = random_int_vector(rng, m)
        phi = random_int_vector(rng, m)
        base = phi_solver.apply(v, phi)
        for i in range(d):
            av = p.rep.action[i].apply(v)
            aphi = p.dual.action[i].apply(phi)
            lhs = vec_add(phi_solver.apply(av, phi), phi_solver.apply(v, aphi))
            rhs = p.algebra.bracket_coords(unit_coords(d, i), base)
            if lhs != rhs:
                return EquivarianceReport(
                    False,
                    f"basis element {i}, trial {t}: "
                    f"v = {tuple(v)}, phi = {tuple(phi)}",
                    seed, trials)
    return EquivarianceReport(True, None, seed, trials)


def box_tensor(reps: Sequence[Representation]) -> Representation:
    """Outer tensor product over the direct sum of the factor algebras.

    A basis element of factor k acts as Id (x) ... (x) pi_k(b) (x) ... (x) Id
    on the row-major tensor module.
    """
    if not reps:
        raise PentadError("box_tensor needs at least one factor")
    algebra = direct_sum([r.algebra for r in reps])
    dims = [r.module_dim for r in reps]
    action: list[Matrix] = []
    for k, r in enumerate(reps):
        left = 1
        for d in dims[:k]:
            left *= d
        right = 1
        for d in dims[k + 1:]:
            right *= d
        for a in r.action:
            m = kronecker(Matrix.identity(left), a) if left > 1 else a
            if right > 1:
                m = kronecker(m, Matrix.identity(right))
            action.append(m)
    return Representation(algebra, tuple(action))


def mirror(p: StandardPentad) -> StandardPentad:
    """Swap the module and its dual.

    The mirrored pairing is the transpose, so <phi, v>' = <v, phi>, and the
    compatibility axiom transposes onto itself.  The graded construction
    runs the positive-degree machinery on the mirror to build the negative
    side.
    """
    return StandardPentad(
        p.algebra,
        Representation(p.algebra, p.dual.action),
        DualModule(p.rep.action, p.dual.pairing.transpose()),
        p.form)
