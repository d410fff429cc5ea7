"""Built-in pentads.

Every entry is a pure function of its integer parameters and passes
check_standard.  The headline entry is matrix_space_example: the algebra
gl(1) + sp(n) + so(3) acting on 2n x 3 matrices, realized row-major, with
the symplectic-times-identity pairing.  It is the standard test bed for the
whole pipeline because everything about it is known in closed form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .exact_linalg import Matrix, kronecker
from .lie import BilinearForm, family, standard_symplectic_form, trace_form
from .pentad import (
    Representation,
    StandardPentad,
    box_tensor,
    dual_representation,
)


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: tuple[int, ...]
    builder: Callable[..., StandardPentad]
    description: str

    @property
    def display_name(self) -> str:
        if not self.parameters:
            return self.name
        return f"{self.name}({','.join(str(p) for p in self.parameters)})"

    def build(self) -> StandardPentad:
        return self.builder(*self.parameters)


def gl1_scalar() -> StandardPentad:
    """gl(1) acting on a line by multiplication; the smallest pentad."""
    alg = family("gl", 1)
    rep = Representation(alg, (Matrix.identity(1),))
    return StandardPentad(alg, rep, dual_representation(rep), trace_form(alg))


def _gl2_pentad(form: BilinearForm) -> StandardPentad:
    alg = family("gl", 2)
    rep = Representation(alg, alg.basis)
    return StandardPentad(alg, rep, dual_representation(rep), form)


def gl2_standard() -> StandardPentad:
    """gl(2) on its standard module, with B(X,Y) = Tr(XY) - (1/3)Tr(X)Tr(Y).

    The center summand is rescaled so that the degree-2 component of the
    graded algebra vanishes and the whole algebra closes as sl(3) with
    dimensions (0, 2, 4, 2, 0).  The plain trace form keeps growing one more
    step; that variant ships as gl2_trace.
    """
    alg = family("gl", 2)
    tr = tuple(b.trace() for b in alg.basis)
    gram = trace_form(alg).gram
    adjusted = Matrix(tuple(
        tuple(gram.entry(i, j) - Fraction(tr[i] * tr[j], 3) for j in range(4))
        for i in range(4)))
    return _gl2_pentad(BilinearForm(adjusted))


def gl2_trace() -> StandardPentad:
    """gl(2) on its standard module with the plain trace form.

    Grades out to dimensions (1, 2, 4, 2, 1), a copy of sp(4).
    """
    return _gl2_pentad(trace_form(family("gl", 2)))


def gl1_so_vector(m: int = 3) -> StandardPentad:
    """gl(1) + so(m) acting on the m-dimensional vector module."""
    if m < 2:
        raise CatalogError("gl1_so_vector needs m >= 2")
    scalar = Representation(family("gl", 1), (Matrix.identity(1),))
    vector = Representation(family("so", m), family("so", m).basis)
    rep = box_tensor([scalar, vector])
    return StandardPentad(rep.algebra, rep, dual_representation(rep),
                          trace_form(rep.algebra))


def matrix_space_example(n: int = 2) -> StandardPentad:
    """gl(1) + sp(n) + so(3) on 2n x 3 matrices, flattened row-major.

    The scalar acts by multiplication, the symplectic factor from the left,
    the orthogonal factor by minus right multiplication.  The pairing of a
    matrix v with a dual matrix u is Tr(t(v).J.u) for the standard
    symplectic J, i.e. the matrix kron(J, Id_3) on flat vectors.  The form
    on the algebra is the ambient trace form, which restricts blockwise.
    """
    if n < 2:
        raise CatalogError("matrix_space_example needs n >= 2")
    scalar = Representation(family("gl", 1), (Matrix.identity(1),))
    left = Representation(family("sp", n), family("sp", n).basis)
    right = Representation(family("so", 3), family("so", 3).basis)
    rep = box_tensor([scalar, left, right])
    pairing = kronecker(standard_symplectic_form(n), Matrix.identity(3))
    return StandardPentad(rep.algebra, rep,
                          dual_representation(rep, pairing),
                          trace_form(rep.algebra))


_REGISTRY: dict[str, tuple[Callable[..., StandardPentad], tuple[int, ...], str]] = {
    "gl1_scalar": (gl1_scalar, (), "gl(1) on a line; regular, extends to sl(2)"),
    "gl2_standard": (gl2_standard, (),
                     "gl(2) standard module, center-rescaled form; extends to sl(3)"),
    "gl2_trace": (gl2_trace, (),
                  "gl(2) standard module, plain trace form; extends to sp(4)"),
    "gl1_so_vector": (gl1_so_vector, (3,),
                      "gl(1) + so(m) on the vector module"),
    "matrix_space_example": (matrix_space_example, (2,),
                             "gl(1) + sp(n) + so(3) on 2n x 3 matrices"),
}

# accepted alternate spelling for the matrix-space entry
_ALIASES = {"paper_example": "matrix_space_example"}

_SPEC_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(\s*([^()]*?)\s*\))?\s*$")


def resolve(spec: str) -> CatalogEntry:
    """Parse 'name' or 'name(3)' into a catalog entry with bound parameters."""
    m = _SPEC_RE.match(spec)
    if not m:
        raise CatalogError(f"cannot parse catalog reference {spec!r}")
    name, args = m.group(1), m.group(2)
    name = _ALIASES.get(name, name)
    if name not in _REGISTRY:
        raise CatalogError(f"unknown catalog entry {name!r}")
    builder, defaults, description = _REGISTRY[name]
    if args is None or args == "":
        params = defaults
    else:
        try:
            params = tuple(int(a.strip()) for a in args.split(","))
        except ValueError:
            raise CatalogError(f"parameters of {name!r} must be integers") from None
    if len(params) > len(defaults):
        raise CatalogError(f"{name!r} takes at most {len(defaults)} parameter(s)")
    return CatalogEntry(name, params, builder, description)


def catalog() -> list[CatalogEntry]:
    """The default entries, each with its default parameters."""
    return [CatalogEntry(name, defaults, builder, description)
            for name, (builder, defaults, description) in _REGISTRY.items()]
