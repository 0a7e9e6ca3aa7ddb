"""First-order operators and algebra on the flat models."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from fncalc.exterior import (
    CoefficientFunction,
    DegreeError,
    DifferentialForm,
    SpaceMismatch,
    VectorField,
    affine_space,
    codifferential,
    contract_metric,
    ext_deriv,
    evaluate,
    flat_pairing,
    hodge_star,
    insert_vector,
    insert_vvform,
    laplacian,
    lie_vector_form,
    torus_space,
    volume_form,
    wedge,
)
from fncalc.exterior import VectorValuedForm, insert_frame
from fncalc.sampling import random_form, random_vector_field
from fncalc.scalars import GaussianRational

R2 = affine_space(2)
R4 = affine_space(4)
R7 = affine_space(7)
T2 = torus_space(2)


def e(space, *idx):
    return DifferentialForm.coframe(space, idx)


def x(space, j):
    return CoefficientFunction.coordinate(space, j)


class TestWedge:
    def test_basis_product(self):
        assert wedge(e(R2, 1), e(R2, 2)) == e(R2, 1, 2)

    def test_antisymmetry_on_repeats(self):
        assert not wedge(e(R2, 1), e(R2, 1))

    def test_graded_commutativity_sign(self):
        assert wedge(e(R2, 2), e(R2, 1)) == -e(R2, 1, 2)

    def test_above_top_degree_is_zero(self):
        out = wedge(e(R2, 1, 2), e(R2, 1))
        assert out.degree == 3 and not out

    def test_space_mismatch_raises(self):
        with pytest.raises(SpaceMismatch):
            wedge(e(R2, 1), e(R4, 1))

    def test_bilinear_associative_graded_commutative_on_samples(self):
        rng = random.Random(2)
        for _ in range(30):
            p, q, r = rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)
            a = random_form(R4, p, rng)
            b = random_form(R4, q, rng)
            c = random_form(R4, r, rng)
            assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
            sign = -1 if (p * q) % 2 else 1
            assert wedge(a, b) == wedge(b, a).scale(sign)


class TestExteriorDerivative:
    def test_coordinate_differential(self):
        assert ext_deriv(DifferentialForm.from_scalar(x(R2, 1))) == e(R2, 1)

    def test_leibniz_on_monomial(self):
        a = e(R2, 2).mul_function(x(R2, 1))
        assert ext_deriv(a) == e(R2, 1, 2)

    def test_fourier_derivative(self):
        f = CoefficientFunction.fourier(T2, (1, 0))
        df = ext_deriv(DifferentialForm.from_scalar(f))
        expected = DifferentialForm(T2, 1, {(1,): f.scale(GaussianRational(0, 1))})
        assert df == expected

    def test_d_squared_zero_on_samples(self):
        rng = random.Random(3)
        for space in (R4, torus_space(3)):
            for _ in range(25):
                a = random_form(space, rng.randint(0, space.dim - 1), rng)
                assert not ext_deriv(ext_deriv(a))

    def test_derivation_over_wedge(self):
        rng = random.Random(4)
        for _ in range(20):
            p = rng.randint(0, 2)
            a = random_form(R4, p, rng)
            b = random_form(R4, rng.randint(0, 2), rng)
            sign = -1 if p % 2 else 1
            assert ext_deriv(wedge(a, b)) == wedge(ext_deriv(a), b) + wedge(
                a, ext_deriv(b)
            ).scale(sign)


class TestInsertion:
    def test_frame_insertions(self):
        assert insert_frame(1, e(R2, 1, 2)) == e(R2, 2)
        assert insert_frame(2, e(R2, 1, 2)) == -e(R2, 1)
        assert not insert_frame(3, e(R4, 1, 2))

    def test_insertion_kills_scalars(self):
        X = VectorField.frame(R2, 1)
        assert not insert_vector(X, DifferentialForm.from_scalar(x(R2, 1)))

    def test_degree_minus_one_derivation(self):
        rng = random.Random(5)
        for _ in range(20):
            X = random_vector_field(R4, rng)
            p = rng.randint(0, 2)
            q = rng.randint(0, 2)
            a = random_form(R4, p, rng)
            b = random_form(R4, q, rng)
            sign = -1 if p % 2 else 1
            lhs = insert_vector(X, wedge(a, b))
            rhs = wedge(a, insert_vector(X, b)).scale(sign) if q else DifferentialForm.zero(R4, lhs.degree)
            if p:  # insertion of a scalar factor contributes nothing
                rhs = rhs + wedge(insert_vector(X, a), b)
            assert lhs == rhs


class TestVectorValuedInsertion:
    def test_decomposable_definition(self):
        K = VectorValuedForm.decomposable(e(R4, 1), 2)
        assert insert_vvform(K, e(R4, 2)) == e(R4, 1)
        assert insert_vvform(K, e(R4, 2, 3)) == e(R4, 1, 3)

    def test_kills_scalars(self):
        K = VectorValuedForm.decomposable(e(R4, 1), 1)
        f = DifferentialForm.from_scalar(x(R4, 1))
        assert not insert_vvform(K, f)

    def test_derivation_of_degree_k_minus_one(self):
        rng = random.Random(6)
        for _ in range(15):
            k = rng.randint(1, 2)
            K = VectorValuedForm(
                R4, k, [random_form(R4, k, rng) for _ in range(4)]
            )
            p = rng.randint(0, 2)
            a = random_form(R4, p, rng)
            b = random_form(R4, rng.randint(0, 2), rng)
            sign = -1 if ((k - 1) * p) % 2 else 1
            lhs = insert_vvform(K, wedge(a, b))
            rhs = wedge(insert_vvform(K, a), b) + wedge(a, insert_vvform(K, b)).scale(sign)
            assert lhs == rhs


class TestLieDerivative:
    def test_translation_derivative(self):
        a = e(R2, 2).mul_function(x(R2, 1))
        assert lie_vector_form(VectorField.frame(R2, 1), a) == e(R2, 2)

    def test_constant_form_is_invariant(self):
        assert not lie_vector_form(VectorField.frame(R2, 1), e(R2, 2))

    def test_scaling_field(self):
        # Cartan formula on the radial-type field x^1 e_1 applied to e^1
        X = VectorField(R2, [x(R2, 1), CoefficientFunction.zero(R2)])
        assert lie_vector_form(X, e(R2, 1)) == e(R2, 1)


class TestHodgeStar:
    def test_complementary_block(self):
        assert hodge_star(e(R7, 1, 2, 3)) == e(R7, 4, 5, 6, 7)

    def test_unit_to_volume(self):
        assert hodge_star(DifferentialForm.unit(R7)) == volume_form(R7)

    def test_involution_sign(self):
        rng = random.Random(7)
        for space in (R4, R7):
            for _ in range(15):
                l = rng.randint(0, space.dim)
                a = random_form(space, l, rng)
                sign = -1 if (l * (space.dim - l)) % 2 else 1
                assert hodge_star(hodge_star(a)) == a.scale(sign)

    def test_pairing_identity(self):
        # a ^ *b = <a,b> vol with the bilinear coefficient pairing
        rng = random.Random(8)
        for _ in range(20):
            l = rng.randint(0, 4)
            a = random_form(R4, l, rng)
            b = random_form(R4, l, rng)
            lhs = wedge(a, hodge_star(b))
            rhs = volume_form(R4).mul_function(flat_pairing(a, b))
            assert lhs == rhs

    def test_coefficients_pass_through_on_torus(self):
        f = CoefficientFunction.fourier(T2, (1, -1))
        a = DifferentialForm(T2, 1, {(1,): f})
        assert hodge_star(a) == DifferentialForm(T2, 1, {(2,): f})


class TestCodifferentialLaplacian:
    def test_zero_on_scalars(self):
        assert not codifferential(DifferentialForm.from_scalar(x(R4, 1)))

    def test_linear_coefficient_divergence(self):
        for space in (R2, R4, R7):
            a = DifferentialForm(space, 1, {(1,): x(space, 1)})
            expected = DifferentialForm.from_scalar(
                CoefficientFunction.constant(space, -1)
            )
            assert codifferential(a) == expected

    def test_constant_forms_are_coclosed(self):
        assert not codifferential(e(R4, 1, 2))

    def test_codifferential_squares_to_zero(self):
        rng = random.Random(9)
        for _ in range(20):
            a = random_form(R4, rng.randint(1, 4), rng)
            assert not codifferential(codifferential(a))

    def test_laplacian_of_constant(self):
        assert not laplacian(e(R4, 1, 2))

    def test_laplacian_fourier_eigenvalue(self):
        t = torus_space(2)
        f = CoefficientFunction.fourier(t, (1, 0))
        a = DifferentialForm.from_scalar(f)
        assert laplacian(a) == a

    def test_laplacian_mode_formula_vs_expansion(self):
        t3 = torus_space(3)
        f = CoefficientFunction.fourier(t3, (1, 1, 0))
        a = DifferentialForm(t3, 1, {(3,): f})
        direct = ext_deriv(codifferential(a)) + codifferential(ext_deriv(a))
        assert laplacian(a) == a.scale(2) == direct

    def test_laplacian_commutes_with_d_dstar_star(self):
        rng = random.Random(10)
        for space in (torus_space(3), R4):
            for _ in range(12):
                a = random_form(space, rng.randint(0, 3), rng)
                assert laplacian(ext_deriv(a)) == ext_deriv(laplacian(a))
                assert laplacian(codifferential(a)) == codifferential(laplacian(a))
                assert laplacian(hodge_star(a)) == hodge_star(laplacian(a))


class TestMetricContraction:
    def test_two_form_expansion(self):
        out = contract_metric(e(R2, 1, 2))
        assert out.components[0] == e(R2, 2)
        assert out.components[1] == -e(R2, 1)

    def test_three_form_expansion(self):
        out = contract_metric(e(R4, 1, 2, 3))
        assert out.components[0] == e(R4, 2, 3)
        assert out.components[1] == -e(R4, 1, 3)
        assert out.components[2] == e(R4, 1, 2)
        assert not out.components[3]

    def test_symplectic_style_form(self):
        omega = e(R4, 1, 2) + e(R4, 3, 4)
        out = contract_metric(omega)
        assert out.components[0] == e(R4, 2)
        assert out.components[1] == -e(R4, 1)
        assert out.components[2] == e(R4, 4)
        assert out.components[3] == -e(R4, 3)

    def test_degree_zero_rejected(self):
        with pytest.raises(DegreeError):
            contract_metric(DifferentialForm.unit(R4))


class TestEvaluation:
    def test_evaluate_matches_insertions(self):
        a = e(R4, 1, 2)
        v = evaluate(a, [VectorField.frame(R4, 1), VectorField.frame(R4, 2)])
        assert v.constant_value() == GaussianRational(1)
        v = evaluate(a, [VectorField.frame(R4, 2), VectorField.frame(R4, 1)])
        assert v.constant_value() == GaussianRational(-1)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=0, max_value=2),
    st.randoms(use_true_random=False),
)
def test_wedge_degree_bookkeeping(p, q, rnd):
    a = random_form(R4, p, rnd)
    b = random_form(R4, q, rnd)
    assert wedge(a, b).degree == p + q


def test_mixed_flavor_coefficients_rejected():
    with pytest.raises(ValueError):
        CoefficientFunction(R2, {(-1, 0): GaussianRational(1)})
    with pytest.raises(SpaceMismatch):
        DifferentialForm(R2, 1, {(1,): x(R4, 1)})


def test_degree_stored_explicitly_for_zero_forms():
    z = DifferentialForm.zero(R4, 3)
    assert z.degree == 3 and not z
    assert (z + z).degree == 3
    with pytest.raises(DegreeError):
        z + DifferentialForm.zero(R4, 2)
