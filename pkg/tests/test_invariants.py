import pytest

from milnorq import (
    Config,
    ExtClass,
    ResourceGuardError,
    apply_word,
    dickson_classes,
    dickson_polynomial,
    group_generators,
    invariant_dimension,
    is_invariant,
    membership_dickson,
    milnor_q,
    moore_class,
    orbit_size,
    parse_class,
    predicted_dimension,
    substitute_linear,
)
from milnorq.invariants import (
    GroupSpec,
    decomposition_text,
    dickson_polynomial_naive,
    dickson_polynomial_shift,
    primitive_root,
    ring_generators,
)
from conftest import random_homogeneous_poly, random_subst


class TestDicksonPolynomial:
    def test_rank_one_explicit(self):
        cfg = Config(3, 1)
        f = dickson_polynomial(cfg)
        assert f.support() == [1, 3]
        assert f.coefficient(3) == ExtClass.one(cfg)
        assert f.coefficient(1) == -(ExtClass.t(cfg, 1) ** 2)
        assert f == dickson_polynomial_naive(cfg)

    def test_rank_two_support_and_bottom_coefficient(self):
        cfg = Config(3, 2)
        f = dickson_polynomial(cfg)
        assert f.support() == [1, 3, 9]
        e2 = apply_word([("Q", 0), ("Q", 1)], ExtClass.dt_top(cfg))
        # (-1)^n c_{n,0} is the coefficient of X, and c_{2,0} = e2^2
        assert f.coefficient(1) == e2 * e2
        assert not f.coefficient(2)

    @pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (5, 2)])
    def test_recursion_equals_naive_product(self, p, n):
        cfg = Config(p, n)
        f = dickson_polynomial(cfg)
        assert f == dickson_polynomial_naive(cfg)
        assert f == dickson_polynomial_shift(cfg)

    def test_resource_guard(self):
        with pytest.raises(ResourceGuardError):
            dickson_polynomial(Config(5, 4))


class TestDicksonClasses:
    def test_rank_one(self):
        cfg = Config(3, 1)
        ds = dickson_classes(cfg)
        assert ds.e == ExtClass.t(cfg, 1)
        assert list(ds.c) == [ExtClass.t(cfg, 1) ** 2]

    def test_rank_two_values(self):
        cfg = Config(3, 2)
        ds = dickson_classes(cfg)
        assert ds.e == parse_class("t1^3*t2 - t1*t2^3", cfg)
        assert ds.c[-1] == ds.e**2

    @pytest.mark.parametrize(
        "p,n,degrees",
        [
            (3, 2, {"e": 8, "c": [12, 16]}),
            (5, 3, {"e": 62, "c": [200, 240, 248]}),
        ],
    )
    def test_degrees(self, p, n, degrees):
        ds = dickson_classes(Config(p, n))
        assert ds.e.degree() == degrees["e"]
        assert [ci.degree() for ci in ds.c] == degrees["c"]

    @pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 2), (7, 2), (3, 3), (5, 3)])
    def test_power_identity(self, p, n):
        ds = dickson_classes(Config(p, n))
        assert ds.e ** (p - 1) == ds.c[-1]

    def test_e_transforms_by_the_determinant(self, rng):
        for p, n in [(3, 2), (5, 2), (3, 3)]:
            cfg = Config(p, n)
            ds = dickson_classes(cfg)
            for _ in range(5):
                g = random_subst(rng, cfg)
                assert substitute_linear(g, ds.e) == ds.e.scale(g.det)

    def test_json_shape(self):
        cfg = Config(3, 1)
        data = dickson_classes(cfg).to_json()
        assert data["p"] == 3 and data["n"] == 1
        assert data["e"]["terms"] == [{"coeff": 1, "exps": [1], "dts": []}]
        assert len(data["c"]) == 1


class TestMoore:
    def test_rank_two_term_count(self):
        x = moore_class(Config(3, 2))
        assert sum(len(poly) for poly in x.parts.values()) == 2

    def test_rank_three_term_count(self):
        x = moore_class(Config(3, 3))
        assert sum(len(poly) for poly in x.parts.values()) == 6

    @pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 2), (7, 2), (3, 3), (5, 3)])
    def test_equals_operation_word(self, p, n):
        cfg = Config(p, n)
        word = [("Q", i) for i in range(n)]
        assert moore_class(cfg) == apply_word(word, ExtClass.dt_top(cfg))


class TestGroups:
    def test_generator_counts(self):
        assert len(group_generators(Config(3, 2), "SL").generators) == 2
        assert len(group_generators(Config(3, 3), "SL").generators) == 6
        assert len(group_generators(Config(3, 1), "SL").generators) == 0
        gl1 = group_generators(Config(3, 1), "GL")
        assert [g.rows for g in gl1.generators] == [((2,),)]

    def test_primitive_roots(self):
        assert primitive_root(3) == 2
        assert primitive_root(5) == 2
        assert primitive_root(7) == 3
        assert primitive_root(97) == 5

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            group_generators(Config(3, 2), "PSL")


class TestInvariance:
    def test_bottom_dickson_class_is_gl_invariant(self):
        cfg = Config(3, 2)
        ds = dickson_classes(cfg)
        assert is_invariant(ds.c[-1], group_generators(cfg, "GL"))

    def test_e_is_sl_but_not_gl_invariant(self):
        cfg = Config(3, 2)
        ds = dickson_classes(cfg)
        assert is_invariant(ds.e, group_generators(cfg, "SL"))
        assert not is_invariant(ds.e, group_generators(cfg, "GL"))

    @pytest.mark.parametrize("p", [3, 5])
    def test_top_exterior_class_is_sl_invariant(self, p):
        cfg = Config(p, 2)
        assert is_invariant(ExtClass.dt_top(cfg), group_generators(cfg, "SL"))

    def test_verdicts_survive_inverse_transpose_generators(self):
        # the generator sets are closed under the convention swap, so
        # invariance decided with g^(-T) generators must agree
        cfg = Config(3, 2)
        ds = dickson_classes(cfg)
        for kind in ("SL", "GL"):
            group = group_generators(cfg, kind)
            swapped = GroupSpec(
                kind,
                cfg,
                tuple(g.inverse().transpose() for g in group.generators),
            )
            for x in [ds.e, ds.c[0], ds.c[1], ds.e**2, ExtClass.t(cfg, 1)]:
                assert is_invariant(x, group) == is_invariant(x, swapped)


class TestMembership:
    def test_square_of_e_decomposes_to_the_bottom_class(self):
        cfg = Config(3, 2)
        ds = dickson_classes(cfg)
        dec = membership_dickson(ds.e**2, "D")
        assert dec == {(0, 1): 1}
        assert decomposition_text(cfg, "D", dec) == "c0"

    def test_e_itself_is_not_in_d(self):
        cfg = Config(3, 2)
        assert membership_dickson(dickson_classes(cfg).e, "D") is None

    def test_e_is_an_sd_generator(self):
        cfg = Config(3, 3)
        ds = dickson_classes(cfg)
        dec = membership_dickson(ds.e, "SD")
        assert dec == {(1, 0, 0): 1}
        assert decomposition_text(cfg, "SD", dec) == "e"

    def test_scalars_and_zero(self):
        cfg = Config(3, 2)
        assert membership_dickson(ExtClass.zero(cfg), "D") == {}
        assert membership_dickson(ExtClass.scalar(cfg, 2), "D") == {(0, 0): 2}

    def test_rejects_non_homogeneous_and_exterior_input(self):
        cfg = Config(3, 2)
        t1 = ExtClass.t(cfg, 1)
        with pytest.raises(ValueError):
            membership_dickson(t1 + t1 * t1, "D")
        with pytest.raises(ValueError):
            membership_dickson(ExtClass.dt(cfg, 1), "D")

    def test_mixed_degree_products_decompose(self):
        cfg = Config(3, 2)
        c1, c0 = dickson_classes(cfg).c
        x = 2 * c1**4 + c0**3  # degree 48 is reachable in two ways
        dec = membership_dickson(x, "D")
        assert dec == {(4, 0): 2, (0, 3): 1}
        assert decomposition_text(cfg, "D", dec) == "c0^3 + 2*c1^4"

    @pytest.mark.parametrize("p,n", [(3, 2), (5, 2)])
    def test_agreement_with_invariance(self, p, n, rng):
        cfg = Config(p, n)
        gl = group_generators(cfg, "GL")
        sl = group_generators(cfg, "SL")
        for _ in range(40):
            d = 2 * rng.randint(0, p**2 - 1)
            x = random_homogeneous_poly(rng, cfg, d)
            assert (membership_dickson(x, "D") is not None) == is_invariant(x, gl)
            assert (membership_dickson(x, "SD") is not None) == is_invariant(x, sl)


class TestOrbits:
    def test_transitive_cases(self):
        assert orbit_size(Config(3, 2), group_generators(Config(3, 2), "SL"), (1, 0)) == 8
        cfg = Config(5, 3)
        assert orbit_size(cfg, group_generators(cfg, "SL"), (1, 0, 0)) == 124

    def test_rank_one_is_not_transitive(self):
        cfg = Config(3, 1)
        assert orbit_size(cfg, group_generators(cfg, "SL"), (1,)) == 1
        assert orbit_size(cfg, group_generators(cfg, "GL"), (1,)) == 2

    def test_zero_vector_rejected(self):
        cfg = Config(3, 2)
        with pytest.raises(ValueError):
            orbit_size(cfg, group_generators(cfg, "SL"), (0, 0))


class TestInvariantDimension:
    def test_degree_two_rank_two(self):
        cfg = Config(3, 2)
        dim, basis = invariant_dimension(cfg, 2, group_generators(cfg, "SL"))
        assert dim == 1
        assert basis == [ExtClass.dt_top(cfg)]

    @pytest.mark.parametrize("p", [3, 5])
    def test_degree_four_rank_three(self, p):
        cfg = Config(p, 3)
        dim, basis = invariant_dimension(cfg, 4, group_generators(cfg, "SL"))
        assert dim == 1
        assert basis == [milnor_q(0, ExtClass.dt_top(cfg))]

    def test_degree_zero(self):
        for cfg in (Config(3, 2), Config(5, 3)):
            dim, basis = invariant_dimension(cfg, 0, group_generators(cfg, "GL"))
            assert dim == 1
            assert basis == [ExtClass.one(cfg)]

    def test_trivial_group_keeps_everything(self):
        cfg = Config(3, 1)
        dim, basis = invariant_dimension(cfg, 2, group_generators(cfg, "SL"))
        assert dim == 1 and basis == [ExtClass.t(cfg, 1)]

    def test_basis_members_are_invariant(self):
        cfg = Config(3, 2)
        group = group_generators(cfg, "SL")
        for d in range(0, 12):
            _, basis = invariant_dimension(cfg, d, group)
            for b in basis:
                assert is_invariant(b, group)


class TestPredictedDimension:
    def test_low_degrees_rank_two(self):
        cfg = Config(3, 2)
        assert predicted_dimension(cfg, 2, "SM") == 1
        assert predicted_dimension(cfg, 3, "SM") == 1
        assert predicted_dimension(cfg, 1, "SM") == 0

    def test_matches_computed_invariants(self):
        for p, n, dmax, kind, ring in [
            (3, 2, 16, "SL", "SM"),
            (3, 2, 16, "GL", "M"),
            (3, 3, 8, "SL", "SM"),
        ]:
            cfg = Config(p, n)
            group = group_generators(cfg, kind)
            for d in range(dmax + 1):
                dim, _ = invariant_dimension(cfg, d, group)
                assert dim == predicted_dimension(cfg, d, ring), (p, n, d, ring)

    def test_base_ring_series(self):
        cfg = Config(3, 2)
        # SD_2 is a polynomial algebra on degrees 8 and 12
        expected = {0: 1, 8: 1, 12: 1, 16: 1, 20: 1, 24: 2}
        for d, value in expected.items():
            assert predicted_dimension(cfg, d, "SD") == value
        with pytest.raises(ValueError):
            predicted_dimension(cfg, -1, "SD")
        with pytest.raises(ValueError):
            predicted_dimension(cfg, 4, "XX")


class TestRingGenerators:
    def test_names_and_degrees(self):
        cfg = Config(3, 3)
        names, gens = ring_generators(cfg, "SD")
        assert names == ["e", "c2", "c1"]
        assert [g.degree() for g in gens] == [26, 36, 48]
        names, gens = ring_generators(cfg, "D")
        assert names == ["c2", "c1", "c0"]
        assert [g.degree() for g in gens] == [36, 48, 52]
