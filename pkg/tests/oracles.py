"""Independent floating-point oracles used to cross-check the exact code.

Nothing here imports the exact linear algebra; inputs are converted to
complex numpy arrays up front and all computations are done in floats.
"""

import numpy as np

TOL = 1e-9


def to_complex(m):
    """Exact Matrix (or nested list of FieldElements) -> complex ndarray."""
    rows = m.tolist() if hasattr(m, "tolist") else m
    return np.array([[complex(x.to_float()) for x in r] for r in rows], dtype=complex)


def float_rank(a, tol=TOL):
    """Row reduction with partial pivoting; pivots below ``tol`` count as zero."""
    a = np.array(a, dtype=complex, copy=True)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) <= tol:
            continue
        a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        r += 1
    return r


def float_lift(a):
    """SL(2,C) -> SO(3,1) by conjugation of Hermitian matrices, all in floats.

    Basis (-sigma_2, sigma_1, sigma_3, I); coordinates recovered by the
    trace pairing tr(H_i H_j) = 2 delta_ij.
    """
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    basis = [-s2, s1, s3, np.eye(2, dtype=complex)]
    a = np.asarray(a, dtype=complex)
    out = np.zeros((4, 4))
    for j, h in enumerate(basis):
        img = a @ h @ a.conj().T
        for i, k in enumerate(basis):
            out[i, j] = (np.trace(img @ k) / 2).real
    return out


def v_basis_float():
    """The 9 basis matrices of v in floats, with the v_6 sign convention."""
    J = np.diag([1.0, 1.0, 1.0, -1.0])

    def E(i, j):
        m = np.zeros((4, 4))
        m[i, j] = 1.0
        return m

    def sym(i, j):
        return E(i, j) @ J + E(j, i) @ J

    out = [E(i, i) @ J + E(3, 3) @ J for i in range(3)]
    out += [sym(0, 1), sym(0, 2), -sym(0, 3), sym(1, 2), sym(1, 3), sym(2, 3)]
    return out


def _coords(x, basis):
    a = np.array([b.ravel() for b in basis]).T
    c, *_ = np.linalg.lstsq(a, x.ravel(), rcond=None)
    return c


def adjoint_float(g, basis):
    gi = np.linalg.inv(g)
    return np.array([_coords(g @ b @ gi, basis) for b in basis]).T


def word_float(mats, letters):
    out = np.eye(4)
    for g, s in letters:
        out = out @ (mats[g] if s > 0 else np.linalg.inv(mats[g]))
    return out


def float_flexing(mats, relator, gamma, tol=1e-7):
    """Does some H^1(v) class restrict nontrivially to <gamma>?  Floats only.

    ``mats`` are 4x4 float holonomies, ``relator`` and ``gamma`` lists of
    (generator, +-1) letters.  Cocycles come from an SVD null space of the
    Fox matrix, built by summing over prefixes directly.
    """
    basis = v_basis_float()
    n = len(basis)
    ngen = len(mats)
    ad = [adjoint_float(m, basis) for m in mats]
    adi = [np.linalg.inv(a) for a in ad]

    def fox_row(word):
        blocks = [np.zeros((n, n)) for _ in range(ngen)]
        prefix = np.eye(n)
        for g, s in word:
            if s > 0:
                blocks[g] = blocks[g] + prefix
                prefix = prefix @ ad[g]
            else:
                prefix = prefix @ adi[g]
                blocks[g] = blocks[g] - prefix
        return np.hstack(blocks), prefix

    fox, _ = fox_row(relator)
    _, sv, vh = np.linalg.svd(fox)
    rank = int((sv > tol).sum())
    z1 = vh[rank:].T
    # z(gamma) = row @ z; coboundaries land in image(Ad(gamma) - 1)
    row, ad_gamma = fox_row(gamma)
    img = ad_gamma - np.eye(n)
    base_rank = np.linalg.matrix_rank(img, tol)
    for k in range(z1.shape[1]):
        val = row @ z1[:, k]
        if np.linalg.matrix_rank(np.column_stack([img, val]), tol) > base_rank:
            return True
    return False
