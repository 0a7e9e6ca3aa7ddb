"""Exact exterior calculus on flat model spaces R^n and T^n.

Scalar coefficients are finite exact sums: polynomials in the coordinates on
the affine flavor, finite Fourier sums exp(i<k,x>) on the toroidal flavor.
Differential forms are sparse maps from strictly increasing multi-indices to
such coefficient functions; tangent-valued forms are tuples of component
forms K = sum_i alpha_i (x) e_i in the global orthonormal frame.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .multiindex import (
    all_indices,
    check_multi_index,
    complement_sign,
    insertion_terms,
    merge_sign,
)
from .scalars import GaussianRational, ONE


class SpaceMismatch(ValueError):
    """Operands live on different model spaces."""


class DegreeError(ValueError):
    """Operation applied at a contractually invalid form degree."""


AFFINE = "affine"
TOROIDAL = "toroidal"


@dataclass(frozen=True)
class ModelSpace:
    """Flat R^n (affine) or T^n = R^n/2piZ^n (toroidal) with the identity
    metric and standard orientation e^1^...^e^n."""

    dim: int
    flavor: str = AFFINE

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("model space dimension must be >= 1")
        if self.flavor not in (AFFINE, TOROIDAL):
            raise ValueError(f"unknown flavor {self.flavor!r}")

    @property
    def is_affine(self) -> bool:
        return self.flavor == AFFINE

    def __str__(self) -> str:
        return f"{'R' if self.is_affine else 'T'}^{self.dim}"


def affine_space(n: int) -> ModelSpace:
    return ModelSpace(n, AFFINE)


def torus_space(n: int) -> ModelSpace:
    return ModelSpace(n, TOROIDAL)


def _same_space(a, b) -> None:
    if a.space != b.space:
        raise SpaceMismatch(f"mixed model spaces {a.space} and {b.space}")


class CoefficientFunction:
    """Exact scalar function: finite monomial or Fourier sum.

    Keys are exponent tuples (affine) or integer frequency vectors
    (toroidal), values Gaussian rationals; zero coefficients are pruned so
    equality is canonical.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: ModelSpace, terms: dict | None = None):
        pruned = {}
        if terms:
            for key, val in terms.items():
                if not isinstance(val, GaussianRational):
                    val = GaussianRational(val)
                if not val:
                    continue
                if len(key) != space.dim:
                    raise ValueError(f"key {key} has wrong arity for {space}")
                if space.is_affine and any(e < 0 for e in key):
                    raise ValueError(f"negative exponent in monomial {key}")
                pruned[key] = val
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "terms", pruned)

    def __setattr__(self, *_):
        raise AttributeError("CoefficientFunction is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, space: ModelSpace) -> "CoefficientFunction":
        return cls(space, {})

    @classmethod
    def constant(cls, space: ModelSpace, value) -> "CoefficientFunction":
        return cls(space, {(0,) * space.dim: value})

    @classmethod
    def coordinate(cls, space: ModelSpace, j: int) -> "CoefficientFunction":
        """The coordinate function x^j (affine flavor only)."""
        if not space.is_affine:
            raise ValueError("coordinate functions exist on the affine flavor only")
        key = tuple(1 if i == j else 0 for i in range(1, space.dim + 1))
        return cls(space, {key: ONE})

    @classmethod
    def fourier(cls, space: ModelSpace, freq: tuple[int, ...], value=ONE) -> "CoefficientFunction":
        """The basis function value * exp(i<freq, x>) (toroidal flavor)."""
        if space.is_affine:
            raise ValueError("Fourier terms exist on the toroidal flavor only")
        return cls(space, {tuple(freq): value})

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "CoefficientFunction") -> "CoefficientFunction":
        _same_space(self, other)
        out = dict(self.terms)
        for key, val in other.terms.items():
            new = out.get(key)
            new = val if new is None else new + val
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return CoefficientFunction(self.space, out)

    def __neg__(self) -> "CoefficientFunction":
        return CoefficientFunction(self.space, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "CoefficientFunction") -> "CoefficientFunction":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        _same_space(self, other)
        out: dict = {}
        # basis functions multiply by adding keys in both flavors
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                val = v1 * v2
                new = out.get(key)
                new = val if new is None else new + val
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        return CoefficientFunction(self.space, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "CoefficientFunction":
        c = c if isinstance(c, GaussianRational) else GaussianRational(c)
        if not c:
            return CoefficientFunction.zero(self.space)
        return CoefficientFunction(self.space, {k: v * c for k, v in self.terms.items()})

    def deriv(self, j: int) -> "CoefficientFunction":
        """Exact coordinate derivative d/dx^j (1-based)."""
        if not 1 <= j <= self.space.dim:
            raise ValueError(f"coordinate index {j} out of range")
        out = {}
        pos = j - 1
        if self.space.is_affine:
            for key, val in self.terms.items():
                e = key[pos]
                if e == 0:
                    continue
                dkey = key[:pos] + (e - 1,) + key[pos + 1:]
                new = val * e + out.get(dkey, GaussianRational(0))
                if new:
                    out[dkey] = new
                else:
                    out.pop(dkey, None)
        else:
            for key, val in self.terms.items():
                kj = key[pos]
                if kj == 0:
                    continue
                out[key] = val * GaussianRational(0, Fraction(kj))
        return CoefficientFunction(self.space, out)

    # -- queries -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        zero_key = (0,) * self.space.dim
        return all(k == zero_key for k in self.terms)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("coefficient function is not constant")
        return self.terms.get((0,) * self.space.dim, GaussianRational(0))

    def eval_exact(self, point) -> GaussianRational:
        """Exact evaluation at a rational point (affine flavor only)."""
        if not self.space.is_affine:
            raise ValueError("exact evaluation requires the affine flavor")
        coords = [c if isinstance(c, GaussianRational) else GaussianRational(c) for c in point]
        total = GaussianRational(0)
        for key, val in self.terms.items():
            term = val
            for c, e in zip(coords, key):
                for _ in range(e):
                    term = term * c
            total = total + term
        return total

    def eval_complex(self, point) -> complex:
        """Numeric evaluation at a float point, both flavors."""
        import cmath

        total = 0j
        if self.space.is_affine:
            for key, val in self.terms.items():
                term = complex(val)
                for c, e in zip(point, key):
                    term *= c ** e
                total += term
        else:
            for key, val in self.terms.items():
                phase = sum(k * c for k, c in zip(key, point))
                total += complex(val) * cmath.exp(1j * phase)
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoefficientFunction):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.space, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms):
            bits.append(f"{self.terms[key]}*{key}")
        return " + ".join(bits)


class DifferentialForm:
    """Sparse exact differential form of explicit degree.

    The degree is stored, never inferred, so the zero form of each degree is
    well defined; degrees above the space dimension are allowed and force
    the zero form (wedge products land there).
    """

    __slots__ = ("space", "degree", "terms")

    def __init__(self, space: ModelSpace, degree: int, terms: dict | None = None):
        if degree < 0:
            raise DegreeError(f"negative form degree {degree}")
        pruned = {}
        if terms and degree <= space.dim:
            for idx, coeff in terms.items():
                idx = tuple(idx)
                if len(idx) != degree:
                    raise ValueError(f"index {idx} does not match degree {degree}")
                check_multi_index(idx, space.dim)
                if coeff.space != space:
                    raise SpaceMismatch("coefficient on a different model space")
                if coeff:
                    pruned[idx] = coeff
        elif terms:
            for idx, coeff in terms.items():
                if coeff:
                    raise DegreeError(f"nonzero term of degree {degree} on {space}")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", pruned)

    def __setattr__(self, *_):
        raise AttributeError("DifferentialForm is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, space: ModelSpace, degree: int) -> "DifferentialForm":
        return cls(space, degree, {})

    @classmethod
    def from_scalar(cls, f: CoefficientFunction) -> "DifferentialForm":
        return cls(f.space, 0, {(): f})

    @classmethod
    def unit(cls, space: ModelSpace) -> "DifferentialForm":
        return cls.from_scalar(CoefficientFunction.constant(space, 1))

    @classmethod
    def coframe(cls, space: ModelSpace, idx: tuple[int, ...], coeff=None) -> "DifferentialForm":
        """Basis form c * e^idx with constant c (default 1)."""
        idx = tuple(idx)
        f = CoefficientFunction.constant(space, 1 if coeff is None else coeff)
        return cls(space, len(idx), {idx: f})

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        _same_space(self, other)
        if self.degree != other.degree:
            raise DegreeError(f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self.terms)
        for idx, coeff in other.terms.items():
            new = out.get(idx)
            new = coeff if new is None else new + coeff
            if new:
                out[idx] = new
            else:
                out.pop(idx, None)
        return DifferentialForm(self.space, self.degree, out)

    def __neg__(self) -> "DifferentialForm":
        return DifferentialForm(
            self.space, self.degree, {i: -c for i, c in self.terms.items()}
        )

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return self + (-other)

    def scale(self, c) -> "DifferentialForm":
        if isinstance(c, (int, Fraction)):
            c = GaussianRational(c)
        return DifferentialForm(
            self.space, self.degree, {i: f * c for i, f in self.terms.items()}
        )

    def mul_function(self, f: CoefficientFunction) -> "DifferentialForm":
        return DifferentialForm(
            self.space, self.degree, {i: g * f for i, g in self.terms.items()}
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (
            self.space == other.space
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.space, self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        from .grammar import serialize_form

        return f"<{self.degree}-form {serialize_form(self)!r} on {self.space}>"


class VectorField:
    """Exact vector field X = sum_i X^i e_i."""

    __slots__ = ("space", "components")

    def __init__(self, space: ModelSpace, components):
        components = tuple(components)
        if len(components) != space.dim:
            raise ValueError("component count must equal the space dimension")
        for f in components:
            if f.space != space:
                raise SpaceMismatch("component on a different model space")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "components", components)

    def __setattr__(self, *_):
        raise AttributeError("VectorField is immutable")

    @classmethod
    def zero(cls, space: ModelSpace) -> "VectorField":
        return cls(space, [CoefficientFunction.zero(space)] * space.dim)

    @classmethod
    def frame(cls, space: ModelSpace, i: int) -> "VectorField":
        """The constant frame field e_i (1-based)."""
        comps = [CoefficientFunction.zero(space)] * space.dim
        comps[i - 1] = CoefficientFunction.constant(space, 1)
        return cls(space, comps)

    @classmethod
    def from_constant(cls, space: ModelSpace, values) -> "VectorField":
        return cls(space, [CoefficientFunction.constant(space, v) for v in values])

    def __add__(self, other: "VectorField") -> "VectorField":
        _same_space(self, other)
        return VectorField(
            self.space, [a + b for a, b in zip(self.components, other.components)]
        )

    def __neg__(self) -> "VectorField":
        return VectorField(self.space, [-a for a in self.components])

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def scale(self, c) -> "VectorField":
        return VectorField(self.space, [f.scale(c) for f in self.components])

    def __bool__(self) -> bool:
        return any(self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.space == other.space and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.space, self.components))


class VectorValuedForm:
    """Tangent-bundle-valued form K = sum_i alpha_i (x) e_i.

    Components are degree-k forms indexed by the frame direction they are
    tensored with; the degree-0 case is interconvertible with VectorField.
    """

    __slots__ = ("space", "degree", "components")

    def __init__(self, space: ModelSpace, degree: int, components):
        components = tuple(components)
        if len(components) != space.dim:
            raise ValueError("component count must equal the space dimension")
        for a in components:
            if a.space != space:
                raise SpaceMismatch("component on a different model space")
            if a.degree != degree:
                raise DegreeError("components must share the stated degree")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "components", components)

    def __setattr__(self, *_):
        raise AttributeError("VectorValuedForm is immutable")

    @classmethod
    def zero(cls, space: ModelSpace, degree: int) -> "VectorValuedForm":
        return cls(space, degree, [DifferentialForm.zero(space, degree)] * space.dim)

    @classmethod
    def decomposable(cls, form: DifferentialForm, i: int) -> "VectorValuedForm":
        """form (x) e_i."""
        comps = [DifferentialForm.zero(form.space, form.degree)] * form.space.dim
        comps[i - 1] = form
        return cls(form.space, form.degree, comps)

    @classmethod
    def from_vector_field(cls, X: VectorField) -> "VectorValuedForm":
        return cls(
            X.space, 0, [DifferentialForm.from_scalar(f) for f in X.components]
        )

    def to_vector_field(self) -> VectorField:
        if self.degree != 0:
            raise DegreeError("only degree-0 tangent-valued forms are vector fields")
        return VectorField(
            self.space,
            [a.terms.get((), CoefficientFunction.zero(self.space)) for a in self.components],
        )

    def __add__(self, other: "VectorValuedForm") -> "VectorValuedForm":
        _same_space(self, other)
        if self.degree != other.degree:
            raise DegreeError("cannot add tangent-valued forms of different degrees")
        return VectorValuedForm(
            self.space,
            self.degree,
            [a + b for a, b in zip(self.components, other.components)],
        )

    def __neg__(self) -> "VectorValuedForm":
        return VectorValuedForm(self.space, self.degree, [-a for a in self.components])

    def __sub__(self, other: "VectorValuedForm") -> "VectorValuedForm":
        return self + (-other)

    def scale(self, c) -> "VectorValuedForm":
        return VectorValuedForm(self.space, self.degree, [a.scale(c) for a in self.components])

    def __bool__(self) -> bool:
        return any(self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorValuedForm):
            return NotImplemented
        return (
            self.space == other.space
            and self.degree == other.degree
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash((self.space, self.degree, self.components))

    def __repr__(self) -> str:
        return f"<{self.degree}-form with values in T{self.space}>"


# ---------------------------------------------------------------------------
# first-order and algebraic operators
# ---------------------------------------------------------------------------


def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    """Graded-commutative exterior product."""
    _same_space(a, b)
    degree = a.degree + b.degree
    if degree > a.space.dim:
        return DifferentialForm.zero(a.space, degree)
    out: dict = {}
    for i1, c1 in a.terms.items():
        for i2, c2 in b.terms.items():
            ms = merge_sign(i1, i2)
            if ms is None:
                continue
            sign, merged = ms
            val = c1 * c2
            if sign < 0:
                val = -val
            new = out.get(merged)
            new = val if new is None else new + val
            if new:
                out[merged] = new
            else:
                out.pop(merged, None)
    return DifferentialForm(a.space, degree, out)


def wedge_many(*forms: DifferentialForm) -> DifferentialForm:
    result = forms[0]
    for f in forms[1:]:
        result = wedge(result, f)
    return result


def ext_deriv(a: DifferentialForm) -> DifferentialForm:
    """Exterior derivative; raises degree by one, d o d = 0."""
    out: dict = {}
    for idx, coeff in a.terms.items():
        for j in range(1, a.space.dim + 1):
            dc = coeff.deriv(j)
            if not dc:
                continue
            ms = merge_sign((j,), idx)
            if ms is None:
                continue
            sign, merged = ms
            val = dc if sign > 0 else -dc
            new = out.get(merged)
            new = val if new is None else new + val
            if new:
                out[merged] = new
            else:
                out.pop(merged, None)
    return DifferentialForm(a.space, a.degree + 1, out)


def insert_vector(X: VectorField, a: DifferentialForm) -> DifferentialForm:
    """Interior product iota_X, a derivation of degree -1."""
    _same_space(X, a)
    if a.degree == 0:
        return DifferentialForm.zero(a.space, 0)
    out: dict = {}
    for idx, coeff in a.terms.items():
        for j, sign, rest in insertion_terms(idx):
            xj = X.components[j - 1]
            if not xj:
                continue
            val = coeff * xj
            if sign < 0:
                val = -val
            new = out.get(rest)
            new = val if new is None else new + val
            if new:
                out[rest] = new
            else:
                out.pop(rest, None)
    return DifferentialForm(a.space, a.degree - 1, out)


def insert_frame(i: int, a: DifferentialForm) -> DifferentialForm:
    """iota_{e_i} for a constant frame direction (fast path)."""
    if a.degree == 0:
        return DifferentialForm.zero(a.space, 0)
    out: dict = {}
    for idx, coeff in a.terms.items():
        for j, sign, rest in insertion_terms(idx):
            if j != i:
                continue
            val = coeff if sign > 0 else -coeff
            new = out.get(rest)
            new = val if new is None else new + val
            if new:
                out[rest] = new
            else:
                out.pop(rest, None)
    return DifferentialForm(a.space, a.degree - 1, out)


def insert_vvform(K: VectorValuedForm, a: DifferentialForm) -> DifferentialForm:
    """Insertion of a tangent-valued k-form, iota_{kappa (x) X} = kappa ^ iota_X;
    a derivation of degree k - 1."""
    _same_space(K, a)
    degree = K.degree + a.degree - 1
    if a.degree == 0:
        return DifferentialForm.zero(a.space, max(degree, 0))
    result = DifferentialForm.zero(a.space, degree)
    for i in range(1, a.space.dim + 1):
        alpha = K.components[i - 1]
        if not alpha:
            continue
        contracted = insert_frame(i, a)
        if not contracted:
            continue
        result = result + wedge(alpha, contracted)
    return result


def coefficient_deriv(a: DifferentialForm, j: int) -> DifferentialForm:
    """Termwise coordinate derivative = Lie derivative along the frame
    field e_j."""
    out = {}
    for idx, coeff in a.terms.items():
        dc = coeff.deriv(j)
        if dc:
            out[idx] = dc
    return DifferentialForm(a.space, a.degree, out)


def lie_vector_form(X: VectorField, a: DifferentialForm) -> DifferentialForm:
    """Cartan formula L_X = iota_X d + d iota_X; preserves degree."""
    _same_space(X, a)
    first = insert_vector(X, ext_deriv(a))
    if a.degree == 0:
        return first
    return first + ext_deriv(insert_vector(X, a))


def hodge_star(a: DifferentialForm) -> DifferentialForm:
    """Hodge star in the orthonormal coframe, a ^ *b = <a,b> vol.

    Acts on the frame indices only; coefficient functions pass through
    unchanged in both flavors.
    """
    n = a.space.dim
    if a.degree > n:
        raise DegreeError(f"cannot star a degree-{a.degree} form on {a.space}")
    out = {}
    for idx, coeff in a.terms.items():
        sign, comp = complement_sign(idx, n)
        out[comp] = coeff if sign > 0 else -coeff
    return DifferentialForm(a.space, n - a.degree, out)


def codifferential(a: DifferentialForm) -> DifferentialForm:
    """Formal adjoint of d: d* = (-1)^{n(l+1)+1} * d * on l-forms."""
    n, l = a.space.dim, a.degree
    if l == 0:
        return DifferentialForm.zero(a.space, 0)
    if l > n:
        return DifferentialForm.zero(a.space, l - 1)
    result = hodge_star(ext_deriv(hodge_star(a)))
    if (n * (l + 1) + 1) % 2:
        result = -result
    return result


def laplacian(a: DifferentialForm) -> DifferentialForm:
    """Hodge Laplacian d d* + d* d."""
    second = codifferential(ext_deriv(a))
    if a.degree == 0:
        return second
    return ext_deriv(codifferential(a)) + second


def contract_metric(psi: DifferentialForm) -> VectorValuedForm:
    """Contraction with the flat metric: sum_i (iota_{e_i} psi) (x) e_i,
    lowering the degree by one."""
    if psi.degree == 0:
        raise DegreeError("metric contraction needs a form of degree >= 1")
    comps = [insert_frame(i, psi) for i in range(1, psi.space.dim + 1)]
    return VectorValuedForm(psi.space, psi.degree - 1, comps)


def sharp(alpha: DifferentialForm) -> VectorField:
    """Musical isomorphism on 1-forms in the orthonormal frame."""
    if alpha.degree != 1:
        raise DegreeError("sharp applies to 1-forms")
    comps = [CoefficientFunction.zero(alpha.space)] * alpha.space.dim
    for (i,), coeff in alpha.terms.items():
        comps[i - 1] = coeff
    return VectorField(alpha.space, comps)


def flat(X: VectorField) -> DifferentialForm:
    """Musical isomorphism from vector fields to 1-forms."""
    return DifferentialForm(
        X.space, 1, {(i,): f for i, f in enumerate(X.components, start=1) if f}
    )


def evaluate(a: DifferentialForm, vectors) -> CoefficientFunction:
    """a(X_1, ..., X_p) by iterated insertion."""
    if len(vectors) != a.degree:
        raise DegreeError(f"degree-{a.degree} form takes {a.degree} arguments")
    current = a
    for X in vectors:
        current = insert_vector(X, current)
    return current.terms.get((), CoefficientFunction.zero(a.space))


def flat_pairing(a: DifferentialForm, b: DifferentialForm) -> CoefficientFunction:
    """Bilinear coefficient pairing <a,b> = sum_I a_I b_I (no conjugation),
    the pairing for which a ^ *b = <a,b> vol."""
    _same_space(a, b)
    if a.degree != b.degree:
        raise DegreeError("pairing needs equal degrees")
    total = CoefficientFunction.zero(a.space)
    for idx, coeff in a.terms.items():
        other = b.terms.get(idx)
        if other is not None:
            total = total + coeff * other
    return total


def volume_form(space: ModelSpace) -> DifferentialForm:
    return DifferentialForm.coframe(space, tuple(range(1, space.dim + 1)))


def transform_terms(space: ModelSpace, terms: dict, matrix) -> dict:
    """Re-expand sparse frame terms in a new constant coframe f^1..f^n.

    matrix[i][b] gives e^{i+1} = sum_b matrix[i][b] f^{b+1} (entries exact
    scalars).  The coefficient of f^A in the output is sum_I c_I det(M[I, A]).
    """
    n = space.dim
    out: dict = {}
    for idx, coeff in terms.items():
        p = len(idx)
        for target in all_indices(n, p):
            det = _minor_det(matrix, idx, target)
            if not det:
                continue
            val = coeff * det
            new = out.get(target)
            new = val if new is None else new + val
            if new:
                out[target] = new
            else:
                out.pop(target, None)
    return out


def coframe_transform(a: DifferentialForm, matrix) -> dict:
    """Re-expand a form in a new constant coframe (see transform_terms)."""
    return transform_terms(a.space, a.terms, matrix)


def _minor_det(matrix, rows: tuple[int, ...], cols: tuple[int, ...]) -> GaussianRational:
    # Laplace expansion; minors here are at most 4x4
    if not rows:
        return ONE
    if len(rows) == 1:
        return matrix[rows[0] - 1][cols[0] - 1]
    total = GaussianRational(0)
    r0 = rows[0]
    rest = rows[1:]
    for pos, c in enumerate(cols):
        entry = matrix[r0 - 1][c - 1]
        if not entry:
            continue
        sub = _minor_det(matrix, rest, cols[:pos] + cols[pos + 1:])
        term = entry * sub
        total = total + (term if pos % 2 == 0 else -term)
    return total
