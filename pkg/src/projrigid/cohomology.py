"""Twisted cohomology of a presented group with coefficients in a LieModule.

Cochains live in module coordinates.  A 1-cochain is the concatenation of
one coordinate vector per generator; a 2-cochain one vector per relator.
The cellular coboundary of the presentation 2-complex is the Fox matrix

    delta1 = ( Ad(d r_j / d x_i) )_{j, i}

and ``delta0 : a -> ((Ad(x_i) - 1) a)_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .field import FieldElement
from .lie import InvariantElement, LieModule, Representation, invariant_subspace
from .linalg import Matrix, SingularMatrixError, Subspace, image, kernel, membership, rank
from .presentations import (
    Presentation,
    Word,
    check_relators,
    fox_derivative,
    eval_ring,
)

__all__ = [
    "Cochain1",
    "Cochain2",
    "CohomologyReport",
    "CupProduct",
    "IntertwinerError",
    "NotACocycleError",
    "NotInvariantError",
    "coboundary",
    "coboundary_matrix",
    "check_intertwiner",
    "cohomology",
    "is_cocycle",
    "cup_product",
    "extend_cocycle",
    "extend_coordinates",
    "fox_block_matrix",
    "PAIRING_FORMS",
    "pairing_certificate",
    "pullback_by_automorphism",
    "restriction_nontrivial",
]


class NotACocycleError(ValueError):
    pass


class IntertwinerError(ValueError):
    pass


class NotInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class Cochain1:
    """A 1-cochain: one module element per generator."""

    module: LieModule
    vector: tuple

    @classmethod
    def from_matrices(cls, module: LieModule, mats: Sequence[Matrix]) -> Cochain1:
        vec: tuple = ()
        for m in mats:
            vec += module.coordinates(m)
        return cls(module, vec)

    @classmethod
    def zero(cls, module: LieModule, ngens: int) -> Cochain1:
        return cls(module, (FieldElement.zero(module.d),) * (ngens * module.dim))

    @property
    def ngens(self) -> int:
        return len(self.vector) // self.module.dim

    def value(self, i: int) -> tuple:
        n = self.module.dim
        return self.vector[i * n:(i + 1) * n]

    def matrix(self, i: int) -> Matrix:
        return self.module.element(self.value(i))

    def matrices(self) -> list[Matrix]:
        return [self.matrix(i) for i in range(self.ngens)]

    def __add__(self, other: Cochain1) -> Cochain1:
        if other.module is not self.module:
            raise ValueError("cochains in different modules")
        return Cochain1(self.module, tuple(x + y for x, y in zip(self.vector, other.vector)))

    def __sub__(self, other: Cochain1) -> Cochain1:
        return self + other.scale(-1)

    def scale(self, c) -> Cochain1:
        return Cochain1(self.module, tuple(x * c for x in self.vector))


@dataclass(frozen=True)
class Cochain2:
    """A 2-cochain: one module element per relator."""

    module: LieModule
    vector: tuple

    def value(self, j: int) -> tuple:
        n = self.module.dim
        return self.vector[j * n:(j + 1) * n]

    def matrix(self, j: int) -> Matrix:
        return self.module.element(self.value(j))


@lru_cache(maxsize=128)
def _fox_block(pres: Presentation, rep: Representation, kind: str) -> Matrix:
    m = LieModule(kind, rep.d)
    check_relators(pres, rep)
    blocks = []
    for r in pres.relators:
        blocks.append([eval_ring(rep, fox_derivative(r, i), m)
                       for i in range(len(pres.generators))])
    if not blocks:
        return Matrix.zeros(0, len(pres.generators) * m.dim, rep.d)
    return Matrix.block(blocks)


def fox_block_matrix(pres: Presentation, rep: Representation, m: LieModule) -> Matrix:
    """The coboundary delta1 on 1-cochains, of size (r*dim) x (g*dim)."""
    return _fox_block(pres, rep, m.kind)


@lru_cache(maxsize=128)
def _coboundary(pres: Presentation, rep: Representation, kind: str) -> Matrix:
    m = LieModule(kind, rep.d)
    ident = Matrix.identity(m.dim, rep.d)
    return Matrix.block([[rep.adjoint(i, m) - ident] for i in range(len(pres.generators))])


def coboundary_matrix(pres: Presentation, rep: Representation, m: LieModule) -> Matrix:
    """delta0 : a -> ((Ad rho(x_i) - 1) a)_i, of size (g*dim) x dim."""
    return _coboundary(pres, rep, m.kind)


def coboundary(a: Sequence[FieldElement] | Matrix, pres: Presentation,
               rep: Representation, m: LieModule) -> Cochain1:
    coords = m.coordinates(a) if isinstance(a, Matrix) else tuple(a)
    return Cochain1(m, coboundary_matrix(pres, rep, m).apply(coords))


@lru_cache(maxsize=128)
def _cocycles(pres: Presentation, rep: Representation, kind: str) -> Subspace:
    return kernel(_fox_block(pres, rep, kind))


def is_cocycle(z: Cochain1, pres: Presentation, rep: Representation) -> bool:
    return membership(_cocycles(pres, rep, z.module.kind), z.vector)


@dataclass
class CohomologyReport:
    module: str
    dim_z1: int
    dim_b1: int
    dim_h1: int
    dim_h0: int
    fox_rank: int
    z1: Subspace
    b1: Subspace
    h0: Subspace
    h1_basis: list = field(default_factory=list)
    dim_h2: Optional[int] = None
    h2_valid: bool = False

    def h1_cocycles(self, module: LieModule) -> list[Cochain1]:
        return [Cochain1(module, tuple(v)) for v in self.h1_basis]

    def as_dict(self) -> dict:
        out = {
            "module": self.module,
            "dim_Z1": self.dim_z1,
            "dim_B1": self.dim_b1,
            "dim_H1": self.dim_h1,
            "dim_H0": self.dim_h0,
            "fox_rank": self.fox_rank,
        }
        if self.dim_h2 is not None:
            out["dim_H2"] = self.dim_h2
            out["H2_valid"] = self.h2_valid
        return out


def cohomology(pres: Presentation, rep: Representation, m: LieModule,
               h2: bool = False, aspherical: bool = False) -> CohomologyReport:
    """H^0, H^1 (and optionally H^2 of the presentation complex).

    H^2 is the cokernel of the Fox matrix; it equals group cohomology only
    for aspherical presentations, which the caller asserts via ``aspherical``.
    """
    fox = fox_block_matrix(pres, rep, m)
    z1 = _cocycles(pres, rep, m.kind)
    b1 = image(coboundary_matrix(pres, rep, m))
    h0 = invariant_subspace([Word.letter(i) for i in range(len(pres.generators))], rep, m)
    if b1.dim != m.dim - h0.dim:
        raise ArithmeticError("coboundary rank disagrees with the invariant subspace")
    lifts = b1.complement_basis(z1)
    fox_rank = rank(fox)
    report = CohomologyReport(
        module=m.kind,
        dim_z1=z1.dim,
        dim_b1=b1.dim,
        dim_h1=z1.dim - b1.dim,
        dim_h0=h0.dim,
        fox_rank=fox_rank,
        z1=z1,
        b1=b1,
        h0=h0,
        h1_basis=lifts,
    )
    if h2:
        report.dim_h2 = fox.rows - fox_rank
        report.h2_valid = aspherical
    return report


def extend_coordinates(z: Cochain1, w: Word, rep: Representation) -> tuple:
    """Value of the crossed homomorphism determined by ``z`` on the word ``w``.

    Uses z(uv) = z(u) + Ad(u) z(v) and z(x^-1) = -Ad(x^-1) z(x).
    """
    m = z.module
    zero = FieldElement.zero(m.d)
    val = [zero] * m.dim
    prefix = Matrix.identity(m.dim, m.d)
    for g, sign in w.letters():
        if sign > 0:
            step = z.value(g)
            nxt = rep.adjoint(g, m)
        else:
            step = tuple(-x for x in rep.adjoint(g, m, inverse=True).apply(z.value(g)))
            nxt = rep.adjoint(g, m, inverse=True)
        add = prefix.apply(step)
        val = [x + y for x, y in zip(val, add)]
        prefix = prefix @ nxt
    return tuple(val)


def _require_cocycle(z: Cochain1, pres: Optional[Presentation], rep: Representation):
    if pres is not None and not is_cocycle(z, pres, rep):
        raise NotACocycleError("cochain does not satisfy the cocycle condition")


def extend_cocycle(z: Cochain1, w: Word, rep: Representation,
                   pres: Optional[Presentation] = None) -> Matrix:
    """z(w) as a 4x4 matrix.  Passing ``pres`` verifies that z is a cocycle."""
    _require_cocycle(z, pres, rep)
    return z.module.element(extend_coordinates(z, w, rep))


def restriction_nontrivial(z: Cochain1, gamma: Word, rep: Representation,
                           pres: Optional[Presentation] = None) -> bool:
    """Whether the class of z restricts nontrivially to the cyclic group <gamma>."""
    _require_cocycle(z, pres, rep)
    m = z.module
    val = extend_coordinates(z, gamma, rep)
    ad = rep.adjoint_word(gamma, m) - Matrix.identity(m.dim, m.d)
    return not membership(image(ad), val)


PAIRING_FORMS = ("trace", "killing")


def pairing_certificate(z: Cochain1, gamma: Word, a: InvariantElement | Matrix,
                        rep: Representation, pres: Optional[Presentation] = None,
                        form: str = "trace") -> FieldElement:
    """Pairing of z(gamma) with an element ``a`` fixed by Ad(rho(gamma)).

    ``form="trace"`` gives tr(z(gamma) a); ``form="killing"`` gives
    B = 8 tr(z(gamma) a).  The two differ by a factor 8, so either one
    certifies that z restricts nontrivially to <gamma> when it is nonzero.
    """
    if form not in PAIRING_FORMS:
        raise ValueError(f"unknown pairing form {form!r}")
    mat = a.matrix if isinstance(a, InvariantElement) else a
    g = rep.word_matrix(gamma)
    if g @ mat != mat @ g:
        raise NotInvariantError("pairing element is not invariant under the word")
    val = (extend_cocycle(z, gamma, rep, pres) @ mat).trace()
    return val * 8 if form == "killing" else val


# ---------------------------------------------------------------------------
# cup product
# ---------------------------------------------------------------------------

@dataclass
class CupProduct:
    cochain: Cochain2           # values in gl(4)
    class_vector: tuple          # canonical representative modulo image(delta1)

    @property
    def is_zero_class(self) -> bool:
        return not any(self.class_vector)


@lru_cache(maxsize=64)
def _gl4_coboundaries(pres: Presentation, rep: Representation) -> Subspace:
    return image(fox_block_matrix(pres, rep, LieModule("gl4", rep.d)))


def cup_cochain_values(z1: Cochain1, z2: Cochain1, rep: Representation,
                       relator: Word) -> Matrix:
    """Value of the gl(4)-valued cup product of z1 and z2 on one relator.

    For r = s_1 ... s_m with prefixes p_i = s_1 ... s_i this is

        sum_{i=1}^{m-1} z1(p_i) Ad(p_i)(z2(s_{i+1}))
          - sum_{s_{i+1} = x^-1} Ad(p_i)(z1(x^-1) Ad(x^-1)(z2(x)))

    The second sum comes from the 2-chains [x^-1 | x] needed so that the
    relator cell maps to a chain whose boundary is the Fox expansion.
    """
    d = rep.d
    ngen = len(rep.generators)
    # letter values as 4x4 matrices: z(x) and z(x^-1) = -x^-1 z(x) x
    v1, v2 = {}, {}
    for g in range(ngen):
        x, xi = rep.matrix(g), rep.inverse(g)
        a1, a2 = z1.matrix(g), z2.matrix(g)
        v1[g, 1], v2[g, 1] = a1, a2
        v1[g, -1], v2[g, -1] = -(xi @ a1 @ x), -(xi @ a2 @ x)
    total = Matrix.zeros(4, 4, d)
    z1p = Matrix.zeros(4, 4, d)          # z1(p_i)
    prefix_mat = Matrix.identity(4, d)   # rho(p_i)
    prefix_inv = Matrix.identity(4, d)
    for idx, (g, sign) in enumerate(relator.letters()):
        if sign < 0:
            inner = v1[g, -1] @ (rep.inverse(g) @ v2[g, 1] @ rep.matrix(g))
            total = total - prefix_mat @ inner @ prefix_inv
        if idx > 0:
            total = total + z1p @ (prefix_mat @ v2[g, sign] @ prefix_inv)
        z1p = z1p + prefix_mat @ v1[g, sign] @ prefix_inv
        if sign > 0:
            prefix_mat = prefix_mat @ rep.matrix(g)
            prefix_inv = rep.inverse(g) @ prefix_inv
        else:
            prefix_mat = prefix_mat @ rep.inverse(g)
            prefix_inv = rep.matrix(g) @ prefix_inv
    return total


def cup_product(z1: Cochain1, z2: Cochain1, rep: Representation,
                pres: Presentation) -> CupProduct:
    """Cup product of two cocycles composed with matrix multiplication, in H^2(gl4)."""
    _require_cocycle(z1, pres, rep)
    _require_cocycle(z2, pres, rep)
    gl4 = LieModule("gl4", rep.d)
    vec: tuple = ()
    for r in pres.relators:
        vec += gl4.coordinates(cup_cochain_values(z1, z2, rep, r))
    cochain = Cochain2(gl4, vec)
    return CupProduct(cochain, _gl4_coboundaries(pres, rep).reduce(vec))


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

def check_intertwiner(phi: Mapping[int, Word], a: Matrix, rep: Representation) -> None:
    try:
        ai = a.inverse()
    except SingularMatrixError as exc:
        raise IntertwinerError("intertwiner is singular") from exc
    for i, g in enumerate(rep.generators):
        if rep.word_matrix(phi[i]) != a @ rep.matrix(i) @ ai:
            raise IntertwinerError(f"rho(phi({g})) != A rho({g}) A^-1")


def pullback_by_automorphism(z: Cochain1, phi: Mapping[int, Word], a: Matrix,
                             rep: Representation,
                             pres: Optional[Presentation] = None) -> Cochain1:
    """The cocycle x_i -> Ad(A^-1)(z(phi(x_i))).

    Requires rho(phi(x_i)) = A rho(x_i) A^-1 for every generator.
    """
    check_intertwiner(phi, a, rep)
    m = z.module
    ai = a.inverse()
    mats = []
    for i in range(len(rep.generators)):
        val = m.element(extend_coordinates(z, phi[i], rep))
        mats.append(ai @ val @ a)
    out = Cochain1.from_matrices(m, mats)
    if pres is not None and not is_cocycle(out, pres, rep):
        raise NotACocycleError("pullback is not a cocycle; is phi an automorphism?")
    return out
