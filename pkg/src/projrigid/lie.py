"""Coefficient modules for PSO(3,1): so(3,1), v, sl(4), gl(4).

``J = diag(1, 1, 1, -1)``.  With ``x* = x^t J`` the module v has the basis

    v_i = e_i e_i* + e_4 e_4*          (i = 1, 2, 3)
    v_4 = e_1 e_2* + e_2 e_1*,  v_5 = e_1 e_3* + e_3 e_1*,  v_6 = -(e_1 e_4* + e_4 e_1*)
    v_7 = e_2 e_3* + e_3 e_2*,  v_8 = e_2 e_4* + e_4 e_2*,  v_9 = e_3 e_4* + e_4 e_3*

The sign of v_6 (= E_14 - E_41) is the one under which the standard
figure-eight adjoint matrices come out entrywise; the other eight follow the
formula as written.

so(3,1) uses ``[r12, r13, r23, b1, b2, b3]`` with ``r_ij = E_ij - E_ji`` and
``b_i = E_i4 + E_4i``; sl(4) is the so(3,1) basis followed by the v basis and
gl(4) uses the elementary matrices E_11, E_12, ..., E_44 in row-major order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .field import FieldElement
from .linalg import Matrix, Subspace, kernel, membership, rank
from .presentations import Word

__all__ = [
    "InvariantElement",
    "LieModule",
    "ModuleError",
    "NotInSL2Error",
    "NotInSO31Error",
    "Representation",
    "J",
    "adjoint_on_module",
    "decompose_sl4",
    "invariant_subspace",
    "invariant_subspace_of",
    "killing",
    "lift_sl2c",
    "su31_root_check",
]

MODULE_KINDS = ("so31", "v", "sl4", "gl4")


class ModuleError(ValueError):
    """A matrix does not lie in the span of a module basis."""


class NotInSL2Error(ValueError):
    pass


class NotInSO31Error(ValueError):
    pass


def J(d: int = 1) -> Matrix:
    return Matrix.diag([1, 1, 1, -1], d)


def _unit(i: int, j: int, d: int) -> Matrix:
    m = Matrix.zeros(4, 4, d)
    m._data[i][j] = FieldElement.one(d)
    return m


def _e(i: int, d: int) -> Matrix:
    col = Matrix.zeros(4, 1, d)
    col._data[i][0] = FieldElement.one(d)
    return col


def _sym(x: Matrix, y: Matrix, d: int) -> Matrix:
    """x y* + y x* for column vectors x, y."""
    jj = J(d)
    return x @ (x.T @ jj) if x is y else x @ (y.T @ jj) + y @ (x.T @ jj)


def _so31_basis(d: int) -> list[Matrix]:
    out = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        out.append(_unit(i, j, d) - _unit(j, i, d))
    for i in range(3):
        out.append(_unit(i, 3, d) + _unit(3, i, d))
    return out


def _v_basis(d: int) -> list[Matrix]:
    e = [_e(i, d) for i in range(4)]
    out = [_sym(e[i], e[i], d) + _sym(e[3], e[3], d) for i in range(3)]
    for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
        out.append(_sym(e[i], e[j], d))
    out[5] = -out[5]
    return out


def _gl4_basis(d: int) -> list[Matrix]:
    return [_unit(i, j, d) for i in range(4) for j in range(4)]


def _flat(m: Matrix) -> tuple:
    return tuple(x for r in m._data for x in r)


class LieModule:
    """A coefficient module with a fixed ordered basis of 4x4 matrices."""

    _cache: dict = {}

    def __new__(cls, kind: str, d: int = 1):
        key = (kind, d)
        if key not in cls._cache:
            obj = super().__new__(cls)
            obj._setup(kind, d)
            cls._cache[key] = obj
        return cls._cache[key]

    def _setup(self, kind: str, d: int):
        if kind not in MODULE_KINDS:
            raise ValueError(f"unknown module kind {kind!r}; expected one of {MODULE_KINDS}")
        self.kind = kind
        self.d = d
        if kind == "so31":
            basis = _so31_basis(d)
        elif kind == "v":
            basis = _v_basis(d)
        elif kind == "sl4":
            basis = _so31_basis(d) + _v_basis(d)
        else:
            basis = _gl4_basis(d)
        self.basis: tuple[Matrix, ...] = tuple(basis)
        self.dim = len(basis)
        # coordinates are read off a set of pivot entries of the flattened basis
        flat = Matrix([_flat(b) for b in basis], d)          # dim x 16
        span = Subspace(flat.tolist(), 16, d)
        self._pivots = span.pivots
        square = Matrix([[_flat(b)[p] for p in self._pivots] for b in basis], d)
        self._solver = square.inverse()                      # rows: basis, cols: pivots

    def __repr__(self):
        return f"LieModule({self.kind!r}, d={self.d})"

    def __reduce__(self):
        return (LieModule, (self.kind, self.d))

    def coordinates(self, x: Matrix) -> tuple:
        flat = _flat(x)
        picked = [flat[p] for p in self._pivots]
        coords = self._solver.T.apply(picked)
        if self.element(coords) != x:
            raise ModuleError(f"matrix is not in the {self.kind} module")
        return coords

    def element(self, coords: Sequence[FieldElement]) -> Matrix:
        acc = Matrix.zeros(4, 4, self.d)
        for c, b in zip(coords, self.basis):
            if c:
                acc = acc + b.scale(c)
        return acc

    def contains(self, x: Matrix) -> bool:
        try:
            self.coordinates(x)
        except ModuleError:
            return False
        return True

    def gram(self) -> Matrix:
        """Killing form Gram matrix of the basis."""
        return Matrix([[killing(a, b) for b in self.basis] for a in self.basis], self.d)


def killing(x: Matrix, y: Matrix) -> FieldElement:
    """Killing form of sl(4): 8 * trace(x y)."""
    return (x @ y).trace() * 8


def decompose_sl4(x: Matrix) -> tuple[Matrix, Matrix]:
    """Split a traceless matrix into its so(3,1) and v parts."""
    if x.trace():
        raise ValueError("decompose_sl4 needs a traceless matrix")
    jj = J(x.d)
    flipped = jj @ x.T @ jj
    half = Fraction(1, 2)
    return (x - flipped).scale(half), (x + flipped).scale(half)


def _in_so31_group(a: Matrix) -> bool:
    jj = J(a.d)
    return (a.T @ jj @ a == jj and a.det() == 1
            and all(x.is_real() for r in a._data for x in r))


def adjoint_on_module(g: Matrix, m: LieModule, g_inv: Matrix | None = None) -> Matrix:
    """Matrix of X -> g X g^-1 in the basis of ``m``."""
    if g_inv is None:
        g_inv = g.inverse()
    cols = []
    for b in m.basis:
        try:
            cols.append(m.coordinates(g @ b @ g_inv))
        except ModuleError as exc:
            raise ModuleError(
                f"conjugation does not preserve the {m.kind} module "
                "(matrix outside SO(3,1)?)") from exc
    return Matrix.from_columns(cols, m.d)


# ---------------------------------------------------------------------------
# SL(2,C) -> SO(3,1)
#
# A in SL(2,C) acts on 2x2 Hermitian matrices by X -> A X A^*.  The ordered
# real basis (H_1, H_2, H_3, H_4) = (-sigma_2, sigma_1, sigma_3, I) with
#     sigma_1 = [[0, 1], [1, 0]], sigma_2 = [[0, -i], [i, 0]], sigma_3 = [[1, 0], [0, -1]]
# has det X = x_4^2 - x_1^2 - x_2^2 - x_3^2.  This ordering and these signs are
# the ones that send [[1, 1], [0, 1]] and [[1, 0], [(1 - i sqrt3)/2, 1]] to the
# SO(3,1) figure-eight holonomy bundled in data/figure8.json; golden tests
# pin them.
# ---------------------------------------------------------------------------

def _hermitian_basis(d: int):
    i = FieldElement.imag_unit(d)
    z, o = FieldElement.zero(d), FieldElement.one(d)
    s1 = Matrix([[z, o], [o, z]], d)
    s2 = Matrix([[z, -i], [i, z]], d)
    s3 = Matrix([[o, z], [z, -o]], d)
    return [-s2, s1, s3, Matrix.identity(2, d)]


def _hermitian_coordinates(x: Matrix) -> tuple:
    half = Fraction(1, 2)
    p, q, s = x[0, 0], x[0, 1], x[1, 1]
    return (
        q.imag_part(),           # -sigma_2 coefficient: q = x_2 + i x_1
        q.real_part(),
        (p - s) * half,
        (p + s) * half,
    )


def lift_sl2c(a: Matrix) -> Matrix:
    """Image of ``a`` in SO(3,1) under the spin covering SL(2,C) -> SO(3,1)."""
    if a.shape != (2, 2):
        raise ValueError("lift_sl2c needs a 2x2 matrix")
    if a.det() != 1:
        raise NotInSL2Error("lift_sl2c needs a matrix of determinant 1")
    a_star = a.T.conj_i()
    cols = [_hermitian_coordinates(a @ h @ a_star) for h in _hermitian_basis(a.d)]
    out = Matrix.from_columns(cols, a.d)
    assert _in_so31_group(out)
    return out


class Representation:
    """Images of the generators of a presented group in SO(3,1).

    Built either from SL(2,C) matrices (lifted) or directly from SO(3,1)
    matrices; membership in SO(3,1) is checked exactly.
    """

    def __init__(self, generators: Sequence[str], matrices: Mapping[str, Matrix],
                 d: int, form: str = "so31", source: Mapping[str, Matrix] | None = None):
        self.generators = tuple(generators)
        self.d = d
        self.form = form
        self.source = dict(source) if source is not None else dict(matrices)
        missing = [g for g in self.generators if g not in matrices]
        if missing:
            raise ValueError(f"no matrix for generators {missing}")
        jj = J(d)
        self._mats = []
        self._invs = []
        for g in self.generators:
            a = matrices[g]
            if a.shape != (4, 4) or a.d != d:
                raise ValueError(f"generator {g}: expected a 4x4 matrix over d={d}")
            if not _in_so31_group(a):
                raise NotInSO31Error(f"generator {g} is not in SO(3,1)")
            self._mats.append(a)
            self._invs.append(jj @ a.T @ jj)
        self._word_cache: dict = {}
        self._adj_cache: dict = {}

    @classmethod
    def from_sl2c(cls, generators: Sequence[str], matrices: Mapping[str, Matrix],
                  d: int) -> Representation:
        lifted = {g: lift_sl2c(matrices[g]) for g in generators}
        return cls(generators, lifted, d, form="sl2c", source=matrices)

    @classmethod
    def from_so31(cls, generators: Sequence[str], matrices: Mapping[str, Matrix],
                  d: int) -> Representation:
        return cls(generators, matrices, d, form="so31")

    def matrix(self, g: int | str) -> Matrix:
        return self._mats[self._index(g)]

    def inverse(self, g: int | str) -> Matrix:
        return self._invs[self._index(g)]

    def _index(self, g) -> int:
        return self.generators.index(g) if isinstance(g, str) else g

    @property
    def matrices(self) -> dict[str, Matrix]:
        return dict(zip(self.generators, self._mats))

    def word_matrix(self, w: Word) -> Matrix:
        hit = self._word_cache.get(w)
        if hit is not None:
            return hit
        acc = Matrix.identity(4, self.d)
        for g, n in w:
            base = self._mats[g] if n > 0 else self._invs[g]
            for _ in range(abs(n)):
                acc = acc @ base
        if len(self._word_cache) < 4096:
            self._word_cache[w] = acc
        return acc

    def adjoint(self, g: int, m: LieModule, inverse: bool = False) -> Matrix:
        key = (m.kind, g, inverse)
        hit = self._adj_cache.get(key)
        if hit is None:
            a, ai = self._mats[g], self._invs[g]
            hit = adjoint_on_module(ai, m, a) if inverse else adjoint_on_module(a, m, ai)
            self._adj_cache[key] = hit
        return hit

    def adjoint_word(self, w: Word, m: LieModule) -> Matrix:
        key = (m.kind, w)
        hit = self._adj_cache.get(key)
        if hit is not None:
            return hit
        acc = Matrix.identity(m.dim, self.d)
        for g, n in w:
            base = self.adjoint(g, m, inverse=n < 0)
            for _ in range(abs(n)):
                acc = acc @ base
        if len(self._adj_cache) < 4096:
            self._adj_cache[key] = acc
        return acc

    def conjugate(self, c: Matrix) -> Representation:
        """The representation g -> c rho(g) c^-1 (``c`` in SO(3,1))."""
        ci = c.inverse()
        mats = {g: c @ a @ ci for g, a in zip(self.generators, self._mats)}
        return Representation(self.generators, mats, self.d, form="so31")


@dataclass(frozen=True)
class InvariantElement:
    """A 4x4 matrix fixed by the adjoint action of every listed word."""

    matrix: Matrix
    words: tuple[Word, ...] = field(default=())

    def check(self, rep: Representation) -> None:
        for w in self.words:
            g = rep.word_matrix(w)
            if g @ self.matrix != self.matrix @ g:
                raise ValueError(f"element is not invariant under {w!r}")


def invariant_subspace_of(mats: Iterable[Matrix], m: LieModule) -> Subspace:
    """Common fixed vectors (module coordinates) of the adjoint actions of ``mats``."""
    blocks = []
    ident = Matrix.identity(m.dim, m.d)
    for g in mats:
        blocks.append([adjoint_on_module(g, m) - ident])
    if not blocks:
        return Subspace([tuple(r) for r in ident._data], m.dim, m.d)
    return kernel(Matrix.block(blocks))


def invariant_subspace(words: Iterable[Word], rep: Representation, m: LieModule) -> Subspace:
    blocks = []
    ident = Matrix.identity(m.dim, m.d)
    for w in words:
        blocks.append([rep.adjoint_word(w, m) - ident])
    if not blocks:
        return Subspace([tuple(r) for r in ident._data], m.dim, m.d)
    return kernel(Matrix.block(blocks))


# ---------------------------------------------------------------------------
# su(3,1) root spaces
# ---------------------------------------------------------------------------

@dataclass
class Su31Report:
    dims: dict[int, int]
    orthogonal: bool
    radical_dim: int
    radical_is_nilradical: bool
    basis_checked: bool

    @property
    def ok(self) -> bool:
        return (self.dims == {-2: 1, -1: 4, 0: 5, 1: 4, 2: 1} and self.orthogonal
                and self.radical_is_nilradical and self.basis_checked)

    def as_dict(self) -> dict:
        return {
            "root_space_dims": {str(k): v for k, v in sorted(self.dims.items())},
            "total_dim": sum(self.dims.values()),
            "killing_orthogonal_k_neq_minus_l": self.orthogonal,
            "radical_dim": self.radical_dim,
            "radical_equals_g1_plus_g2": self.radical_is_nilradical,
            "basis_in_su31": self.basis_checked,
            "ok": self.ok,
        }


def su31_root_check() -> Su31Report:
    """Root-space decomposition of su(3,1) under ad(eta), done over Q(i).

    su(3,1) is treated as the real span of so(3,1) and i*v (15 dimensions);
    a complex matrix X in it has real coordinates (so31 coords of Re X,
    v coords of Im X).
    """
    d = 1
    so, vv = LieModule("so31", d), LieModule("v", d)
    i = FieldElement.imag_unit(d)
    basis = list(so.basis) + [b.scale(i) for b in vv.basis]
    jj = J(d)

    basis_checked = all(
        (b.T.conj_i() @ jj == -(jj @ b)) and not b.trace() for b in basis)

    def real_coords(x: Matrix) -> tuple:
        re = Matrix([[e.real_part() for e in r] for r in x._data], d)
        im = Matrix([[e.imag_part() for e in r] for r in x._data], d)
        return so.coordinates(re) + vv.coordinates(im)

    eta = Matrix.zeros(4, 4, d)
    eta._data[2][3] = FieldElement.one(d)
    eta._data[3][2] = FieldElement.one(d)
    ad_eta = Matrix.from_columns([real_coords(eta @ b - b @ eta) for b in basis], d)
    ident = Matrix.identity(15, d)

    spaces = {k: kernel(ad_eta - ident.scale(k)) for k in range(-2, 3)}
    dims = {k: s.dim for k, s in spaces.items()}

    def to_matrix(coords) -> Matrix:
        acc = Matrix.zeros(4, 4, d)
        for c, b in zip(coords, basis):
            if c:
                acc = acc + b.scale(c)
        return acc

    mats = {k: [to_matrix(v) for v in s.basis] for k, s in spaces.items()}
    orthogonal = True
    for k in mats:
        for l in mats:
            if k == -l:
                continue
            if any(killing(x, y) for x in mats[k] for y in mats[l]):
                orthogonal = False

    plus = spaces[0].basis + spaces[1].basis + spaces[2].basis
    plus_mats = [to_matrix(v) for v in plus]
    gram = Matrix([[killing(x, y) for y in plus_mats] for x in plus_mats], d)
    rad_coeffs = kernel(gram)
    rad_vectors = []
    for c in rad_coeffs.basis:
        vec = [FieldElement.zero(d)] * 15
        for coef, v in zip(c, plus):
            if coef:
                vec = [a + coef * b for a, b in zip(vec, v)]
        rad_vectors.append(vec)
    radical = Subspace(rad_vectors, 15, d)
    nilradical = Subspace(spaces[1].basis + spaces[2].basis, 15, d)
    return Su31Report(dims, orthogonal, radical.dim, radical == nilradical, basis_checked)
