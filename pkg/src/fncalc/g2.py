"""G2 structure algebra on R^7, with Kahler and Spin(7) companions.

The fixed sign convention for the positive 3-form is

    phi = e^123 + e^145 + e^167 + e^246 - e^257 - e^347 - e^356

and its Hodge dual is always computed, never hand-entered.  The induced
metric follows the classical density construction: B(x,y) vol = i_x phi ^
i_y phi ^ phi, then g = c (det B)^{-1/9} B with the constant c pinned so
the standard form yields the identity metric (c = 6^{-2/9}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .exterior import (
    DegreeError,
    DifferentialForm,
    ModelSpace,
    VectorValuedForm,
    affine_space,
    contract_metric,
    hodge_star,
    insert_frame,
    wedge,
)
from .multiindex import all_indices, complement_sign, index_position, insertion_terms, space_dim
from .scalars import GaussianRational

PHI_TERMS = (
    ((1, 2, 3), 1),
    ((1, 4, 5), 1),
    ((1, 6, 7), 1),
    ((2, 4, 6), 1),
    ((2, 5, 7), -1),
    ((3, 4, 7), -1),
    ((3, 5, 6), -1),
)


class NonPositiveFormError(ValueError):
    """The 3-form fails to induce a positive metric at the point."""


@dataclass(frozen=True)
class G2Structure:
    space: ModelSpace
    phi: DifferentialForm

    def __post_init__(self):
        if self.space.dim != 7:
            raise ValueError("G2 structures live on 7-dimensional spaces")
        if self.phi.degree != 3:
            raise DegreeError("a G2 structure is a 3-form")


@dataclass(frozen=True)
class PointwiseMetric:
    """Induced metric at a point; exact entries when the flat calculation
    applies, IEEE doubles otherwise."""

    point: tuple
    matrix: tuple
    exact: bool

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.matrix])


def standard_phi(space: ModelSpace | None = None) -> G2Structure:
    """The standard positive 3-form in the fixed convention."""
    space = space or affine_space(7)
    if space.dim != 7:
        raise ValueError("the standard G2 form needs dimension 7")
    terms = {
        idx: _const(space, sign) for idx, sign in PHI_TERMS
    }
    return G2Structure(space, DifferentialForm(space, 3, terms))


def _const(space, value):
    from .exterior import CoefficientFunction

    return CoefficientFunction.constant(space, value)


def _eval_at_point(form: DifferentialForm, point) -> DifferentialForm:
    """Freeze a form to constant coefficients at a rational point."""
    out = {}
    for idx, coeff in form.terms.items():
        val = coeff.eval_exact(point)
        if val:
            out[idx] = _const(form.space, val)
    return DifferentialForm(form.space, form.degree, out)


def gram_matrix(phi: DifferentialForm, point) -> list[list[GaussianRational]]:
    """Exact density matrix B with B(x,y) vol = i_x phi ^ i_y phi ^ phi."""
    space = phi.space
    pt = _eval_at_point(phi, point) if not phi.is_constant() else phi
    contractions = [insert_frame(i, pt) for i in range(1, 8)]
    vol_idx = tuple(range(1, 8))
    B = []
    for i in range(7):
        row = []
        for j in range(7):
            w = wedge(wedge(contractions[i], contractions[j]), pt)
            coeff = w.terms.get(vol_idx)
            row.append(coeff.constant_value() if coeff else GaussianRational(0))
        B.append(row)
    return B


def _det(M) -> GaussianRational:
    n = len(M)
    rows = [list(r) for r in M]
    det = GaussianRational(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return GaussianRational(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        pv = rows[c][c]
        det = det * pv
        for i in range(c + 1, n):
            f = rows[i][c] / pv
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


_SIX_IDENTITY = None


def metric_from_3form(structure: G2Structure, point=(0,) * 7) -> PointwiseMetric:
    """Metric induced by a positive 3-form at a point.

    Exact (identity) on the standard form; numerically normalized through
    (det B)^{-1/9} otherwise, since the ninth root leaves the rationals.
    """
    B = gram_matrix(structure.phi, point)
    det = _det(B)
    if not det or det.im or det.re <= 0:
        raise NonPositiveFormError(f"density determinant {det} is not positive")
    six = GaussianRational(6)
    if all(
        B[i][j] == (six if i == j else GaussianRational(0))
        for i in range(7)
        for j in range(7)
    ):
        one = GaussianRational(1)
        zero = GaussianRational(0)
        matrix = tuple(
            tuple(one if i == j else zero for j in range(7)) for i in range(7)
        )
        return PointwiseMetric(tuple(point), matrix, exact=True)
    for row in B:
        for x in row:
            if x.im:
                raise NonPositiveFormError("density matrix is not real")
    Bf = np.array([[float(x.re) for x in row] for row in B])
    g = (6.0 ** (-2.0 / 9.0)) * float(det.re) ** (-1.0 / 9.0) * Bf
    eigs = np.linalg.eigvalsh(g)
    if eigs.min() <= 1e-9:
        raise NonPositiveFormError(f"induced metric is not positive definite: {eigs}")
    return PointwiseMetric(tuple(point), tuple(map(tuple, g.tolist())), exact=False)


def chi(structure: G2Structure) -> VectorValuedForm:
    """The cross-product-type tensor: metric contraction of the Hodge dual
    of phi.  Exact, for structures whose induced metric is the flat one."""
    metric = metric_from_3form(structure, (0,) * 7)
    if not metric.exact:
        raise NonPositiveFormError(
            "exact chi needs the flat induced metric; use cayley_map pointwise"
        )
    return contract_metric(hodge_star(structure.phi))


# ---------------------------------------------------------------------------
# pointwise numeric lane
# ---------------------------------------------------------------------------


def _form_to_tensor(coeffs: dict, degree: int) -> np.ndarray:
    """Antisymmetric ndarray from sparse index coefficients (float)."""
    T = np.zeros((7,) * degree)
    from itertools import permutations

    for idx, val in coeffs.items():
        base = tuple(i - 1 for i in idx)
        for perm, sign in _perms_with_signs(degree):
            T[tuple(base[p] for p in perm)] = sign * val
    return T


@lru_cache(maxsize=None)
def _perms_with_signs(degree: int):
    from itertools import permutations

    out = []
    for perm in permutations(range(degree)):
        inv = sum(
            1
            for a in range(degree)
            for b in range(a + 1, degree)
            if perm[a] > perm[b]
        )
        out.append((perm, -1 if inv % 2 else 1))
    return tuple(out)


def _tensor_to_coeffs(T: np.ndarray, degree: int) -> dict:
    out = {}
    for idx in all_indices(7, degree):
        out[idx] = float(T[tuple(i - 1 for i in idx)])
    return out


def _star_coeffs(coeffs: dict, degree: int) -> dict:
    out = {}
    for idx, val in coeffs.items():
        sign, comp = complement_sign(idx, 7)
        out[comp] = out.get(comp, 0.0) + sign * val
    return out


def _insert_coeffs(coeffs: dict, i: int) -> dict:
    out: dict = {}
    for idx, val in coeffs.items():
        for j, sign, rest in insertion_terms(idx):
            if j == i:
                out[rest] = out.get(rest, 0.0) + sign * val
    return out


def cayley_map(structure: G2Structure, point=(0.0,) * 7) -> np.ndarray:
    """Pointwise chi for a (possibly non-flat) positive 3-form.

    Returns the (7,7,7,7) array T with T[a,b,c,:] the value on
    (e_a, e_b, e_c); computed in a metric-orthonormal frame and pushed back
    to standard coordinates.  Double precision.
    """
    phi_pt = {
        idx: coeff.eval_complex(point).real
        for idx, coeff in structure.phi.terms.items()
    }
    g = metric_from_3form(structure, _rationalize(point)).as_array()
    R = np.linalg.cholesky(g).T  # g = R^T R, R upper triangular
    F = np.linalg.inv(R)  # columns form a g-orthonormal, oriented frame

    P = _form_to_tensor(phi_pt, 3)
    PF = np.einsum("pa,qb,rc,pqr->abc", F, F, F, P)
    phiF = _tensor_to_coeffs(PF, 3)
    starF = _star_coeffs(phiF, 3)
    # contraction with the metric: identity in the orthonormal frame
    chiF = {}
    for i in range(1, 8):
        chiF[i] = _insert_coeffs(starF, i)
    C = np.zeros((7, 7, 7, 7))
    for s in range(1, 8):
        C[:, :, :, s - 1] = _form_to_tensor(chiF[s], 3)
    Finv = np.linalg.inv(F)
    T1 = np.einsum("pqrs,ds->pqrd", C, F)
    return np.einsum("pa,qb,rc,pqrd->abcd", Finv, Finv, Finv, T1)


def _rationalize(point):
    out = []
    for x in point:
        if isinstance(x, (int, Fraction)):
            out.append(x)
        else:
            out.append(Fraction(x).limit_denominator(10**9))
    return tuple(out)


def pullback_3form(A: np.ndarray, structure: G2Structure) -> G2Structure:
    """Exact pullback A*phi for a rational matrix A (A*phi)(x,y,z) =
    phi(Ax, Ay, Az); A given as a nested sequence of ints/Fractions."""
    space = structure.space
    rows = [
        [GaussianRational(Fraction(A[i][j])) for j in range(7)] for i in range(7)
    ]
    # e^i = sum_b A[i][b] f^b expresses the old coframe in the pulled-back one
    from .exterior import transform_terms

    # pullback on the coframe: A*(e^i) = sum_a A[i][a] e^a, i.e. substitute
    terms = transform_terms(space, structure.phi.terms, rows)
    return G2Structure(space, DifferentialForm(space, 3, terms))


def pullback_chi_tensor(A: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Natural action of A on a tangent-valued 3-form at a point:
    (A*T)(x,y,z) = A^{-1} T(Ax, Ay, Az)."""
    Ainv = np.linalg.inv(A)
    return np.einsum("pa,qb,rc,ds,pqrs->abcd", A, A, A, Ainv, T)


def _chi_field_coeffs(structure: G2Structure, point) -> list[dict]:
    """Per-frame-direction sparse 3-form coefficients of the pointwise
    cross-product tensor at a float point."""
    T = cayley_map(structure, tuple(point))
    return [_tensor_to_coeffs(T[:, :, :, s], 3) for s in range(7)]


def _wedge_coeffs(a: dict, b: dict) -> dict:
    from .multiindex import merge_sign

    out: dict = {}
    for i1, v1 in a.items():
        if not v1:
            continue
        for i2, v2 in b.items():
            if not v2:
                continue
            ms = merge_sign(i1, i2)
            if ms is None:
                continue
            sign, merged = ms
            out[merged] = out.get(merged, 0.0) + sign * v1 * v2
    return out


def numeric_bracket_of_chi(structure: G2Structure, point, h: float = 1e-5) -> float:
    """Largest component of [chi, chi] at a point, with derivatives taken by
    central finite differences.  A falsification probe: nonzero for
    structures that are not torsion-free."""
    point = tuple(float(x) for x in point)

    def field(p):
        return _chi_field_coeffs(structure, p)

    center = field(point)
    plus = []
    minus = []
    for m in range(7):
        pp = list(point)
        pp[m] += h
        plus.append(field(tuple(pp)))
        pm = list(point)
        pm[m] -= h
        minus.append(field(tuple(pm)))

    def partial(m, comp):
        a, b = plus[m][comp], minus[m][comp]
        keys = set(a) | set(b)
        return {key: (a.get(key, 0.0) - b.get(key, 0.0)) / (2 * h) for key in keys}

    total: dict = {}

    def add_into(target_comp, coeffs, sign=1.0):
        bucket = total.setdefault(target_comp, {})
        for key, val in coeffs.items():
            bucket[key] = bucket.get(key, 0.0) + sign * val

    from .multiindex import merge_sign

    d_alpha = []
    for i in range(7):
        acc: dict = {}
        for m in range(7):
            for idx, val in partial(m, i).items():
                if not val:
                    continue
                ms = merge_sign((m + 1,), idx)
                if ms is None:
                    continue
                sgn, merged = ms
                acc[merged] = acc.get(merged, 0.0) + sgn * val
        d_alpha.append(acc)

    for i in range(7):
        alpha = center[i]
        for j in range(7):
            beta = center[j]
            # alpha_i ^ (d_i beta_j) into component j
            add_into(j, _wedge_coeffs(alpha, partial(i, j)))
            # -(d_j alpha_i) ^ beta_j into component i
            add_into(i, _wedge_coeffs(partial(j, i), beta), sign=-1.0)
            # odd degree: -(d alpha_i ^ iota_i beta_j) into j, -(iota_j alpha_i ^ d beta_j) into i
            add_into(j, _wedge_coeffs(d_alpha[i], _insert_coeffs(beta, i + 1)), sign=-1.0)
            add_into(i, _wedge_coeffs(_insert_coeffs(alpha, j + 1), d_alpha[j]), sign=-1.0)

    worst = 0.0
    for bucket in total.values():
        for val in bucket.values():
            worst = max(worst, abs(val))
    return worst


def chi_tensor_exact(structure: G2Structure) -> np.ndarray:
    """Float tensor of the exact chi (for code-path comparisons)."""
    X = chi(structure)
    C = np.zeros((7, 7, 7, 7))
    for s in range(1, 8):
        comp = {
            idx: complex(c.constant_value()).real
            for idx, c in X.components[s - 1].terms.items()
        }
        C[:, :, :, s - 1] = _form_to_tensor(comp, 3)
    return C


# ---------------------------------------------------------------------------
# nondegeneracy and type decomposition
# ---------------------------------------------------------------------------


def multisymplectic_check(psi: DifferentialForm) -> bool:
    """Whether v -> i_v psi is injective (constant-coefficient forms)."""
    if not psi.is_constant():
        raise ValueError("multi-symplectic check expects constant coefficients")
    n = psi.space.dim
    if psi.degree < 1:
        return False
    pos = index_position(n, psi.degree - 1)
    rows = [[GaussianRational(0)] * n for _ in range(space_dim(n, psi.degree - 1))]
    for i in range(1, n + 1):
        c = insert_frame(i, psi)
        for idx, coeff in c.terms.items():
            rows[pos[idx]][i - 1] = coeff.constant_value()
    return linalg.rank(rows) == n


def _operator_matrix(space: ModelSpace, degree_in: int, degree_out: int, op):
    """Matrix of a linear operator on constant forms in the coframe basis."""
    rows_idx = all_indices(space.dim, degree_out)
    pos = index_position(space.dim, degree_out)
    cols_idx = all_indices(space.dim, degree_in)
    M = [
        [GaussianRational(0)] * len(cols_idx) for _ in range(len(rows_idx))
    ]
    for c, idx in enumerate(cols_idx):
        image = op(DifferentialForm.coframe(space, idx))
        for out_idx, coeff in image.terms.items():
            M[pos[out_idx]][c] = coeff.constant_value()
    return M


@lru_cache(maxsize=None)
def _degree2_projections():
    """Exact projection matrices onto the 7- and 14-dimensional pieces of
    Lambda^2, from the eigenvalues of beta -> *(phi ^ beta)."""
    space = affine_space(7)
    phi = standard_phi(space).phi
    T = _operator_matrix(space, 2, 2, lambda b: hodge_star(wedge(phi, b)))
    n = len(T)
    one = GaussianRational(1)
    third = GaussianRational(Fraction(1, 3))
    P7 = [[(T[i][j] + (one if i == j else 0)) * third for j in range(n)] for i in range(n)]
    P14 = [
        [((one * 2 if i == j else GaussianRational(0)) - T[i][j]) * third for j in range(n)]
        for i in range(n)
    ]
    return P7, P14


@lru_cache(maxsize=None)
def _degree3_projections():
    """Exact orthogonal projections onto the 1-, 7-, 27-dimensional pieces
    of Lambda^3 (spans of phi and of the frame insertions of its dual)."""
    space = affine_space(7)
    phi = standard_phi(space).phi
    star_phi = hodge_star(phi)
    pos = index_position(7, 3)
    dim = space_dim(7, 3)

    def col(form):
        v = [GaussianRational(0)] * dim
        for idx, coeff in form.terms.items():
            v[pos[idx]] = coeff.constant_value()
        return v

    def gram_projection(cols):
        B = linalg.columns_from_vectors(cols)
        Bt = linalg.transpose(B)
        G = linalg.matmul(Bt, B, GaussianRational(0))
        Ginv = linalg.invert(G)
        return linalg.matmul(
            linalg.matmul(B, Ginv, GaussianRational(0)), Bt, GaussianRational(0)
        )

    P1 = gram_projection([col(phi)])
    P7 = gram_projection([col(insert_frame(i, star_phi)) for i in range(1, 8)])
    P27 = [
        [
            (GaussianRational(1) if i == j else GaussianRational(0))
            - P1[i][j]
            - P7[i][j]
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    return P1, P7, P27


G2_COMPONENTS = {"2_7": (2, 0), "2_14": (2, 1), "3_1": (3, 0), "3_7": (3, 1), "3_27": (3, 2)}


def g2_type_project(a: DifferentialForm, component: str) -> DifferentialForm:
    """Projection onto an irreducible G2 type component of a 2- or 3-form."""
    if component not in G2_COMPONENTS:
        raise ValueError(f"unknown component {component!r}")
    degree, slot = G2_COMPONENTS[component]
    if a.degree != degree:
        raise DegreeError(f"component {component} needs degree {degree}")
    if a.space.dim != 7:
        raise ValueError("G2 projections need dimension 7")
    mats = _degree2_projections() if degree == 2 else _degree3_projections()
    return apply_constant_matrix(a, mats[slot], degree)


def apply_constant_matrix(a: DifferentialForm, matrix, degree_out: int) -> DifferentialForm:
    """Apply an exact constant operator matrix to a form's coefficients."""
    from .exterior import CoefficientFunction

    in_idx = all_indices(a.space.dim, a.degree)
    out_idx = all_indices(a.space.dim, degree_out)
    pos_in = index_position(a.space.dim, a.degree)
    out: dict = {}
    for idx, coeff in a.terms.items():
        c = pos_in[idx]
        for r, target in enumerate(out_idx):
            entry = matrix[r][c]
            if not entry:
                continue
            val = coeff * entry
            new = out.get(target)
            new = val if new is None else new + val
            if new:
                out[target] = new
            else:
                out.pop(target, None)
    return DifferentialForm(a.space, degree_out, out)


def projection_matrix_rank(component: str) -> int:
    degree, slot = G2_COMPONENTS[component]
    mats = _degree2_projections() if degree == 2 else _degree3_projections()
    return linalg.rank(list(mats[slot]))


# ---------------------------------------------------------------------------
# companion structures
# ---------------------------------------------------------------------------


def kahler_form(m: int) -> DifferentialForm:
    """omega = sum_i e^{2i-1,2i} on R^{2m}."""
    space = affine_space(2 * m)
    terms = {
        (2 * i - 1, 2 * i): _const(space, 1) for i in range(1, m + 1)
    }
    return DifferentialForm(space, 2, terms)


def spin7_form() -> DifferentialForm:
    """The parallel 4-form e^8 ^ phi + *7(phi) on R^8 in the fixed phi
    convention."""
    r8 = affine_space(8)
    phi7 = standard_phi().phi
    phi8 = DifferentialForm(
        r8, 3, {idx: _const(r8, c.constant_value()) for idx, c in phi7.terms.items()}
    )
    star7 = hodge_star(phi7)
    star7_8 = DifferentialForm(
        r8, 4, {idx: _const(r8, c.constant_value()) for idx, c in star7.terms.items()}
    )
    e8 = DifferentialForm.coframe(r8, (8,))
    return wedge(e8, phi8) + star7_8


def auxiliary_structures() -> dict:
    """The companion parallel forms used by the Maurer-Cartan suites."""
    return {
        "kahler_r4": kahler_form(2),
        "kahler_r6": kahler_form(3),
        "spin7": spin7_form(),
    }
