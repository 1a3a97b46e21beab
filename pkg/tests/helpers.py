"""Shared constructors for tests: exact matrices, datasets, test holonomies."""

from fractions import Fraction

from projrigid.field import FieldElement, parse_element
from projrigid.lie import J, Representation
from projrigid.linalg import Matrix
from projrigid.presentations import parse_presentation


def M(rows, d):
    return Matrix([[parse_element(str(s), d) for s in r] for r in rows], d)


def diag(entries, d):
    return Matrix.diag([parse_element(str(s), d) for s in entries], d)


def column(entries, d):
    return Matrix([[parse_element(str(s), d)] for s in entries], d)


V_MINUS = ("0", "0", "-1", "1")
V_PLUS = ("0", "0", "1", "1")


def translation(w1, w2, d):
    """Real parabolic fixing v_- with translation vector (w1, w2) in v_-^perp.

    T = exp(N) with N = w v_-^t J - v_- w^t J, and N^3 = 0.
    """
    jj = J(d)
    w = column([w1, w2, 0, 0], d)
    vm = column(V_MINUS, d)
    n = w @ vm.T @ jj - vm @ w.T @ jj
    return Matrix.identity(4, d) + n + (n @ n).scale(Fraction(1, 2))


def rotation(c, s, d, plane=(0, 1)):
    """Rotation with cosine c and sine s in the given coordinate plane."""
    m = Matrix.identity(4, d)
    rows = [list(r) for r in m.tolist()]
    i, j = plane
    cc, ss = parse_element(str(c), d), parse_element(str(s), d)
    rows[i][i], rows[i][j], rows[j][i], rows[j][j] = cc, -ss, ss, cc
    return Matrix(rows, d)


def boost(ch, sh, d, axis=2):
    m = Matrix.identity(4, d)
    rows = [list(r) for r in m.tolist()]
    c, s = parse_element(str(ch), d), parse_element(str(sh), d)
    rows[axis][axis], rows[axis][3], rows[3][axis], rows[3][3] = c, s, s, c
    return Matrix(rows, d)


TORUS = parse_presentation("< m, l | m*l*m^-1*l^-1 >",
                           cusps=[{"meridian": "m", "longitude": "l"}])

# (cos phi, sin phi, cos 2phi, sin 2phi, d) for exactly representable angles
ANGLES = {
    "pi/2": ("0", "1", "-1", "0", 1),
    "2pi/3": ("-1/2", "1/2*r", "-1/2", "-1/2*r", 3),
    "pi/3": ("1/2", "1/2*r", "-1/2", "1/2*r", 3),
    "pi/4": ("1/2*r", "1/2*r", "0", "1", 2),
}


def angle_torus(name):
    """Torus group with lambda along (1,0) and mu along (cos phi, -sin phi).

    Returns (rep, a_lambda, a_mu, cos2phi).
    """
    c, s, c2, s2, d = ANGLES[name]
    cc, ss = parse_element(c, d), parse_element(s, d)
    lam = translation("1", "0", d)
    mu = translation(str(cc), str(-ss), d)
    rep = Representation.from_so31(["m", "l"], {"m": mu, "l": lam}, d)
    c2e, s2e = parse_element(c2, d), parse_element(s2, d)
    a_lam = diag(["-1", "3", "-1", "-1"], d)
    one = FieldElement.one(d)
    z = FieldElement.zero(d)
    a_mu = Matrix([[one - 2 * c2e, 2 * s2e, z, z],
                   [2 * s2e, one + 2 * c2e, z, z],
                   [z, z, -one, z],
                   [z, z, z, -one]], d)
    return rep, a_lam, a_mu, c2e
