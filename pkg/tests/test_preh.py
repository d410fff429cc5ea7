"""Generic points, sl2 partners, and the regularity decision procedure."""

from dataclasses import replace

import pytest

from pentads.catalog import resolve
from pentads.exact_linalg import Matrix, is_zero_vec, kernel_basis, rank
from pentads.graded import GradingElement, grading_element
from pentads.lie import family, trace_form, unit_coords
from pentads.pentad import (
    DualModule,
    Representation,
    StandardPentad,
    dual_representation,
    phi_map,
)
from pentads.preh import (
    GradingElementError,
    ScalarCenterError,
    Sl2Triple,
    ad_on_dual,
    decide_regularity,
    find_generic,
    has_unique_module_partner,
    has_unique_partner,
    is_generic,
    module_partner_map,
    relative_invariant_indicator,
    sl2_partner,
    verify_certificate,
)

# Known generic points of the matrix-space entries (block-identity 2n x 3
# matrices, flattened row-major) and the unique partner of the first one.
GENERIC_X2 = (1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0)
PARTNER_Y2 = (0, 0, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0)
GENERIC_X3 = (1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0)


def scalar_pentad(n):
    """gl(1) acting by the identity on an n-dimensional module."""
    alg = family("gl", 1)
    rep = Representation(alg, (Matrix.identity(n),))
    return StandardPentad(alg, rep, dual_representation(rep), trace_form(alg))


def h0_of(p):
    return grading_element(p).element


class TestAdOnDual:
    def test_scalar_pentad(self):
        p = resolve("gl1_scalar").build()
        assert ad_on_dual(p, (1,)) == Matrix.from_rows([[1]])
        assert ad_on_dual(p, (0,)) == Matrix.zeros(1, 1)

    def test_shape(self):
        p = resolve("gl1_so_vector(3)").build()
        assert ad_on_dual(p, (1, 2, 3)).shape() == (4, 3)

    def test_block_identity_has_full_rank(self):
        p = resolve("matrix_space_example(2)").build()
        assert rank(ad_on_dual(p, GENERIC_X2)) == 12

    def test_linearity_in_x(self):
        p = resolve("gl2_trace").build()
        a = ad_on_dual(p, (1, 0)) + ad_on_dual(p, (0, 1))
        assert a == ad_on_dual(p, (1, 1))


class TestIsGeneric:
    def test_scalar_pentad(self):
        p = resolve("gl1_scalar").build()
        assert is_generic(p, (1,)) is True
        assert is_generic(p, (0,)) is False

    def test_block_identity_is_generic(self):
        p = resolve("matrix_space_example(2)").build()
        assert is_generic(p, GENERIC_X2) is True
        assert is_generic(p, unit_coords(12, 0)) is False

    def test_block_identity_generic_n3(self):
        p = resolve("matrix_space_example(3)").build()
        assert is_generic(p, GENERIC_X3) is True


class TestFindGeneric:
    def test_scalar_pentad_first_unit(self):
        res = find_generic(resolve("gl1_scalar").build())
        assert res.found
        assert res.x == (1,)
        assert (res.rank, res.needed, res.attempts_used) == (1, 1, 1)

    def test_matrix_space_entry(self):
        p = resolve("matrix_space_example(2)").build()
        res = find_generic(p)
        assert res.found
        assert is_generic(p, res.x)

    def test_dimension_obstruction(self):
        res = find_generic(scalar_pentad(5))
        assert not res.found
        assert res.attempts_used == 0
        assert "exceeds algebra dimension" in res.reason

    def test_zero_action_exhausts_budget(self):
        alg = family("sl", 2)
        rep = Representation(alg, (Matrix.zeros(1, 1),) * 3)
        p = StandardPentad(alg, rep, dual_representation(rep), trace_form(alg))
        res = find_generic(p, attempts=5)
        assert not res.found
        assert res.attempts_used == 5
        assert res.rank == 0
        assert "best rank 0 of 1" in res.reason

    def test_deterministic_per_seed(self):
        p = resolve("matrix_space_example(2)").build()
        assert find_generic(p, seed=3) == find_generic(p, seed=3)


class TestSl2Partner:
    def test_scalar_pentad(self):
        p = resolve("gl1_scalar").build()
        res = sl2_partner(p, h0_of(p), (1,))
        assert res.status == "unique"
        assert res.y == (2,)
        assert res.triple == Sl2Triple(p, (2,), (2,), (1,))

    def test_matrix_space_partner_is_pinned(self):
        p = resolve("matrix_space_example(2)").build()
        res = sl2_partner(p, h0_of(p), GENERIC_X2)
        assert res.status == "unique"
        assert res.y == PARTNER_Y2
        reshaped = Matrix(tuple(PARTNER_Y2[3 * i:3 * i + 3] for i in range(4)))
        assert rank(reshaped) == 2

    def test_zero_point_has_no_partner(self):
        p = resolve("matrix_space_example(2)").build()
        assert sl2_partner(p, h0_of(p), (0,) * 12).status == "none"

    def test_gl2_entries_have_no_partner(self):
        for spec in ("gl2_standard", "gl2_trace"):
            p = resolve(spec).build()
            x = find_generic(p).x
            assert sl2_partner(p, h0_of(p), x).status == "none"

    def test_affine_classification(self):
        # gl(1) on a plane: every nonzero x solves, never uniquely
        p = scalar_pentad(2)
        res = sl2_partner(p, h0_of(p), (1, 1))
        assert res.status == "affine"
        assert res.y == (2, 0)
        assert res.kernel == ((-1, 1),)
        assert res.triple is None

    def test_raw_vector_h_is_verified(self):
        p = resolve("gl1_scalar").build()
        assert sl2_partner(p, (2,), (1,)).status == "unique"
        # h acting by 1 on x cannot open a triple
        assert sl2_partner(p, (1,), (1,)).status == "none"

    def test_uniqueness_matches_genericity(self):
        # solvable systems split unique/affine exactly along genericity
        for spec in ("gl1_scalar", "gl2_standard", "gl1_so_vector(3)",
                     "matrix_space_example(2)"):
            p = resolve(spec).build()
            h = h0_of(p)
            samples = [find_generic(p).x, unit_coords(p.module_dim, 0)]
            for x in samples:
                if x is None:
                    continue
                res = sl2_partner(p, h, x)
                if res.status == "unique":
                    assert is_generic(p, x)
                if res.status == "affine":
                    assert not is_generic(p, x)
                if res.status != "none":
                    assert has_unique_partner(p, h, x) == is_generic(p, x)


class TestSl2Triple:
    def test_relations_enforced(self):
        p = resolve("gl1_scalar").build()
        Sl2Triple(p, (2,), (2,), (1,))
        with pytest.raises(ValueError, match=r"\[x, y\] = h"):
            Sl2Triple(p, (3,), (2,), (1,))
        with pytest.raises(ValueError, match=r"\[h, x\] = 2x"):
            Sl2Triple(p, (2,), (4,), (1,))


class TestModulePartner:
    def test_scalar_pentad(self):
        p = resolve("gl1_scalar").build()
        assert has_unique_module_partner(p, h0_of(p), (2,)) is True
        assert has_unique_module_partner(p, h0_of(p), (0,)) is False

    def test_pinned_partner_has_kernel(self):
        p = resolve("matrix_space_example(2)").build()
        assert has_unique_module_partner(p, h0_of(p), PARTNER_Y2) is False
        # and the obstruction is a genuine kernel vector
        ker = kernel_basis(module_partner_map(p, PARTNER_Y2))
        assert ker
        assert is_zero_vec(module_partner_map(p, PARTNER_Y2).apply(ker[0]))

    def test_regular_entry_passes(self):
        p = resolve("gl1_so_vector(3)").build()
        v = decide_regularity(p)
        assert has_unique_module_partner(p, h0_of(p), v.y) is True


class TestRelativeInvariantIndicator:
    def test_matrix_space_entry(self):
        p = resolve("matrix_space_example(2)").build()
        h = h0_of(p)
        assert relative_invariant_indicator(p, h, GENERIC_X2) is True
        assert relative_invariant_indicator(p, h, (0,) * 12) is False

    def test_scalar_pentad(self):
        p = resolve("gl1_scalar").build()
        assert relative_invariant_indicator(p, h0_of(p), (1,)) is True


class TestDecideRegularity:
    def test_scalar_entry_regular(self):
        v = decide_regularity(resolve("gl1_scalar").build())
        assert v.outcome == "Regular"
        assert (v.h0, v.x, v.y) == ((2,), (1,), (2,))
        assert v.ranks == {"dual_partner_injectivity": (1, 1),
                           "module_partner_injectivity": (1, 1)}
        assert v.witness is None

    def test_so_vector_regular(self):
        v = decide_regularity(resolve("gl1_so_vector(3)").build())
        assert v.outcome == "Regular"
        assert v.x == (1, 0, 0)
        assert v.y == (2, 0, 0)
        assert all(got == need for got, need in v.ranks.values())

    @pytest.mark.parametrize("spec", ["gl2_standard", "gl2_trace"])
    def test_gl2_entries_not_regular(self, spec):
        v = decide_regularity(resolve(spec).build())
        assert v.outcome == "NotRegular"
        assert v.witness == {"clause": "no_dual_partner"}

    @pytest.mark.parametrize("n", [2, 3])
    def test_matrix_space_not_regular(self, n):
        p = resolve(f"matrix_space_example({n})").build()
        v = decide_regularity(p)
        assert v.outcome == "NotRegular"
        assert v.witness["clause"] == "module_partner_kernel"
        w = v.witness["vector"]
        assert not is_zero_vec(w)
        assert is_zero_vec(module_partner_map(p, v.y).apply(w))

    def test_inconclusive_when_module_outgrows_algebra(self):
        v = decide_regularity(scalar_pentad(5))
        assert v.outcome == "Inconclusive"
        assert v.x is None and v.y is None
        assert "exceeds algebra dimension" in v.witness["reason"]

    def test_center_hypothesis_enforced(self):
        alg = family("sl", 2)
        rep = Representation(alg, alg.basis)
        p = StandardPentad(alg, rep, dual_representation(rep), trace_form(alg))
        with pytest.raises(ScalarCenterError):
            decide_regularity(p)

    def test_broken_dual_has_no_grading_element(self):
        p = resolve("gl1_scalar").build()
        broken = replace(p, dual=DualModule((Matrix.from_rows([[5]]),),
                                            p.dual.pairing))
        with pytest.raises(GradingElementError, match="absent"):
            decide_regularity(broken)

    @pytest.mark.parametrize("spec", [
        "gl1_scalar", "gl2_standard", "gl2_trace", "gl1_so_vector(3)",
        "matrix_space_example(2)",
    ])
    def test_outcome_is_seed_invariant(self, spec):
        p = resolve(spec).build()
        outcomes = {decide_regularity(p, seed=s).outcome for s in range(5)}
        assert len(outcomes) == 1

    @pytest.mark.parametrize("spec", [
        "gl1_scalar", "gl2_standard", "gl1_so_vector(3)",
        "matrix_space_example(2)",
    ])
    def test_certificates_replay(self, spec):
        p = resolve(spec).build()
        v = decide_regularity(p)
        assert verify_certificate(p, v) is True

    def test_inconclusive_replays(self):
        p = scalar_pentad(5)
        assert verify_certificate(p, decide_regularity(p)) is True

    def test_tampered_certificate_fails(self):
        p = resolve("gl1_scalar").build()
        v = decide_regularity(p)
        assert verify_certificate(p, replace(v, y=(3,))) is False
        assert verify_certificate(p, replace(v, outcome="NotRegular")) is False
        assert verify_certificate(p, replace(v, h0=(4,))) is False


class TestSymmetryInvariance:
    def test_module_symmetries_preserve_classification(self):
        # transvection on the symplectic side, rotation on the orthogonal
        # side; both fix genericity and the partner classification
        p = resolve("matrix_space_example(2)").build()
        h = h0_of(p)
        j = Matrix.from_rows([[0, 0, 1, 0], [0, 0, 0, 1],
                              [-1, 0, 0, 0], [0, -1, 0, 0]])
        t = Matrix.from_rows([[1, 0, -1, 0], [0, 1, 0, 0],
                              [0, 0, 1, 0], [0, 0, 0, 1]])
        assert t.transpose() @ j @ t == j
        r = Matrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        assert r.transpose() @ r == Matrix.identity(3)

        def transform(flat):
            mat = Matrix(tuple(flat[3 * i:3 * i + 3] for i in range(4)))
            return (t @ mat @ r).flat()

        for x in (GENERIC_X2, unit_coords(12, 0)):
            moved = transform(x)
            assert is_generic(p, moved) == is_generic(p, x)
            assert (sl2_partner(p, h, moved).status
                    == sl2_partner(p, h, x).status)
