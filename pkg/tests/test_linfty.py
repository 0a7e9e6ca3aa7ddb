"""Derived brackets on flat associative planes."""

import random
from itertools import combinations

import pytest

from fncalc import linfty
from fncalc.exterior import (
    CoefficientFunction,
    DegreeError,
    DifferentialForm,
    VectorValuedForm,
)
from fncalc.multiindex import all_indices
from fncalc.sampling import random_form
from fncalc.scalars import GaussianRational

P = linfty.PLANE_SPACE
AMB = linfty.AMBIENT
MODEL = linfty.FlatAssociativeModel.from_plane((1, 2, 3))


def nv(form, slot, model=MODEL):
    return linfty.NormalValuedForm.decomposable(model, form, slot)


def coordinate(j):
    return DifferentialForm.from_scalar(CoefficientFunction.coordinate(P, j))


def rand_nv(rng, model=MODEL, degrees=(0, 0, 1, 2)):
    deg = degrees[rng.randrange(len(degrees))]
    comps = [DifferentialForm.zero(P, deg)] * 4
    comps[rng.randrange(4)] = random_form(P, deg, rng)
    return linfty.NormalValuedForm(model, deg, comps)


class TestModel:
    def test_plane_normal_partition(self):
        m = linfty.FlatAssociativeModel.from_plane((1, 4, 5))
        assert m.normal == (2, 3, 6, 7)
        with pytest.raises(ValueError):
            linfty.FlatAssociativeModel.from_plane((1, 2))
        with pytest.raises(ValueError):
            linfty.FlatAssociativeModel((1, 2, 3), (4, 5, 6, 6))

    def test_associativity_classification(self):
        for plane, expected in (((1, 2, 3), True), ((1, 4, 5), True), ((1, 2, 4), False)):
            model = linfty.FlatAssociativeModel.from_plane(plane)
            flag, witness = linfty.is_associative(model)
            assert flag == expected
            if not expected:
                slots = [s for s in range(4) if witness.components[s]]
                assert [model.normal[s] for s in slots] == [7]


class TestLiftAndProjection:
    def test_constant_normal_field_lifts_to_frame_vector(self):
        lifted = linfty.vertical_lift(nv(DifferentialForm.unit(P), 1))
        vf = lifted.to_vector_field()
        assert vf.components[3].constant_value() == GaussianRational(1)
        assert sum(1 for c in vf.components if c) == 1

    def test_coframe_lift(self):
        lifted = linfty.vertical_lift(nv(DifferentialForm.coframe(P, (1,)), 2))
        assert lifted.components[4] == DifferentialForm.coframe(AMB, (1,))

    def test_polynomial_lift(self):
        a = DifferentialForm.coframe(P, (2,)).mul_function(
            CoefficientFunction.coordinate(P, 1)
        )
        lifted = linfty.vertical_lift(nv(a, 3))
        expect = DifferentialForm.coframe(AMB, (2,)).mul_function(
            CoefficientFunction.coordinate(AMB, 1)
        )
        assert lifted.components[5] == expect

    def test_projection_examples(self):
        K = VectorValuedForm.decomposable(DifferentialForm.coframe(AMB, (1,)), 4)
        pr = linfty.project_P(K, MODEL)
        assert pr.components[0] == DifferentialForm.coframe(P, (1,))
        K = VectorValuedForm.decomposable(DifferentialForm.coframe(AMB, (4,)), 5)
        assert not linfty.project_P(K, MODEL)
        K = VectorValuedForm.decomposable(DifferentialForm.coframe(AMB, (1,)), 2)
        assert not linfty.project_P(K, MODEL)

    def test_projection_restricts_coefficients(self):
        x4 = CoefficientFunction.coordinate(AMB, 4)
        K = VectorValuedForm.decomposable(
            DifferentialForm.coframe(AMB, (1,)).mul_function(x4), 5
        )
        assert not linfty.project_P(K, MODEL)

    def test_lift_then_project_is_identity(self):
        rng = random.Random(0)
        for _ in range(15):
            w = rand_nv(rng)
            assert linfty.project_P(linfty.vertical_lift(w), MODEL) == w


class TestBrackets:
    def test_unary_on_constants_vanishes(self):
        assert not linfty.differential(MODEL, nv(DifferentialForm.unit(P), 2))

    def test_unary_trivial_above_degree_zero(self):
        rng = random.Random(1)
        for deg in (1, 2, 3):
            w = rand_nv(rng, degrees=(deg,))
            assert not linfty.differential(MODEL, w)

    def test_unary_on_linear_field(self):
        out = linfty.differential(MODEL, nv(coordinate(1), 1))
        assert out.degree == 3
        assert any(out.components)

    def test_both_routes_agree(self):
        rng = random.Random(2)
        for _ in range(20):
            fields = [rand_nv(rng, degrees=(0,)) for _ in range(rng.randint(1, 3))]
            assert linfty.multibracket(MODEL, fields) == linfty.mk_via_lie(MODEL, fields)

    def test_lie_route_rejects_positive_degree(self):
        with pytest.raises(DegreeError):
            linfty.mk_via_lie(MODEL, [nv(DifferentialForm.coframe(P, (1,)), 1)])

    def test_frozen_pair_example(self):
        V = nv(coordinate(1), 1)
        W = nv(coordinate(2), 2)
        out = linfty.multibracket(MODEL, [V, W])
        assert out == linfty.mk_via_lie(MODEL, [V, W])
        assert out == linfty.multibracket(MODEL, [W, V])

    def test_zero_arity_on_associative_plane_is_zero(self):
        assert not linfty.multibracket(MODEL, [])

    def test_zero_arity_reports_curved_element_elsewhere(self):
        model = linfty.FlatAssociativeModel.from_plane((1, 2, 4))
        curved = linfty.multibracket(model, [])
        assert curved
        slots = [model.normal[s] for s in range(4) if curved.components[s]]
        assert slots == [7]

    def test_graded_symmetry_under_adjacent_swaps(self):
        rng = random.Random(3)
        for _ in range(15):
            args = [rand_nv(rng) for _ in range(rng.randint(2, 3))]
            i = rng.randrange(len(args) - 1)
            swapped = list(args)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            s = -1 if (args[i].parity and args[i + 1].parity) else 1
            assert linfty.multibracket(MODEL, swapped).scale(s) == linfty.multibracket(
                MODEL, args
            )


class TestJacobi:
    def test_shuffle_enumeration(self):
        assert sorted(linfty.shuffles(1, 1)) == [((0,), (1,)), ((1,), (0,))]
        assert len(list(linfty.shuffles(2, 1))) == 3
        assert len(list(linfty.shuffles(2, 2))) == 6

    def test_koszul_signs(self):
        assert linfty.koszul_sign([1, 1], (1, 0)) == -1
        assert linfty.koszul_sign([1, 0], (1, 0)) == 1
        assert linfty.koszul_sign([1, 1, 1], (2, 0, 1)) == 1  # two odd swaps

    def test_identities_on_degree_zero_samples(self):
        rng = random.Random(4)
        for _ in range(8):
            for n in (1, 2, 3):
                args = [rand_nv(rng, degrees=(0,)) for _ in range(n)]
                assert not linfty.jacobi_defect(MODEL, args)

    def test_identities_on_mixed_degrees(self):
        rng = random.Random(5)
        for _ in range(6):
            n = rng.randint(2, 3)
            args = [rand_nv(rng) for _ in range(n)]
            assert not linfty.jacobi_defect(MODEL, args)

    def test_printed_strict_identities(self):
        rng = random.Random(6)
        for _ in range(6):
            a, b = rand_nv(rng), rand_nv(rng)
            assert not linfty.strict_identity_n2(MODEL, a, b)
            x, y, z = rand_nv(rng), rand_nv(rng), rand_nv(rng)
            assert not linfty.strict_identity_n3(MODEL, x, y, z)

    def test_second_associative_plane(self):
        model = linfty.FlatAssociativeModel.from_plane((1, 4, 5))
        rng = random.Random(7)
        for n in (1, 2):
            args = [rand_nv(rng, model=model, degrees=(0,)) for _ in range(n)]
            assert not linfty.jacobi_defect(model, args)


class TestVData:
    def test_lifted_image_is_abelian_systematically(self):
        # every coframe/normal combination of form degree <= 2
        pool = []
        for deg in (0, 1, 2):
            for idx in all_indices(3, deg):
                for slot in range(1, 5):
                    pool.append(nv(DifferentialForm.coframe(P, idx), slot))
        for w1, w2 in combinations(pool[:14], 2):
            assert linfty.lifted_bracket_vanishes(w1, w2)
        rng = random.Random(8)
        for _ in range(20):
            w1, w2 = rand_nv(rng), rand_nv(rng)
            assert linfty.lifted_bracket_vanishes(w1, w2)

    def test_projection_kernel_closed(self):
        rng = random.Random(9)
        x4 = DifferentialForm.from_scalar(CoefficientFunction.coordinate(AMB, 4))
        kernel_elements = [
            VectorValuedForm.decomposable(random_form(AMB, 1, rng), 1),
            VectorValuedForm.decomposable(DifferentialForm.coframe(AMB, (4,)), 5),
            VectorValuedForm.decomposable(x4, 6),
            VectorValuedForm.decomposable(random_form(AMB, 2, rng), 3),
        ]
        for A in kernel_elements:
            for B in kernel_elements:
                assert linfty.kernel_closed_under_bracket(MODEL, A, B)

    def test_kernel_check_guards_inputs(self):
        not_in_kernel = VectorValuedForm.decomposable(
            DifferentialForm.coframe(AMB, (1,)), 4
        )
        with pytest.raises(ValueError):
            linfty.kernel_closed_under_bracket(MODEL, not_in_kernel, not_in_kernel)

    def test_square_zero_element(self):
        assert linfty.maurer_cartan_chi()

    def test_identity_pullback_consistency(self):
        # the exponential map of the flat model is the identity, so the
        # pulled-back tensor is the tensor itself and pullback commutes
        # with the bracket as a code-path identity
        from fncalc.exterior import contract_metric, hodge_star
        from fncalc.g2 import standard_phi

        fresh = contract_metric(hodge_star(standard_phi(AMB).phi))
        cached = linfty.ambient_chi()
        assert fresh == cached
        rng = random.Random(10)
        K = linfty.vertical_lift(rand_nv(rng))
        from fncalc.bracket import fn_bracket

        assert fn_bracket(fresh, K) == fn_bracket(cached, K)
