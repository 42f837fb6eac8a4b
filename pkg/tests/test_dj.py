import itertools

import pytest

from gpcubes.cubes import hat_graph
from gpcubes.dj import (
    DJPair,
    ambient_graph,
    build_y_ball,
    doubled_graph,
    iso_check,
)
from gpcubes.groups import parse_graph


@pytest.fixture(scope="module")
def pairs(graphs):
    return {
        name: DJPair(graphs[name])
        for name in ("single_inf", "single_z3", "free2", "z_squared", "mixed", "inf_dihedral")
    }


class TestAmbientGraph:
    def test_single_infinite(self, graphs):
        g = ambient_graph(graphs["single_inf"])
        assert set(g.vertices) == {"a+", "a0"}
        assert g.order("a+") == 2 and g.order("a0") == 2
        assert not g.adjacent("a+", "a0")  # infinite dihedral inside

    def test_mixed(self, graphs):
        g = ambient_graph(graphs["mixed"])
        assert set(g.vertices) == {"u", "a+", "a0"}
        assert g.order("u") == 3
        assert g.adjacent("a+", "u")  # a and u commuted in the original
        assert g.adjacent("a0", "u")  # a0 commutes with everything else
        assert not g.adjacent("a0", "a+")

    def test_commuting_pair(self, graphs):
        g = ambient_graph(graphs["z_squared"])
        assert g.adjacent("a+", "b+")
        assert g.adjacent("a0", "b0") and g.adjacent("a0", "b+")
        assert not g.adjacent("a0", "a+") and not g.adjacent("b0", "b+")

    def test_name_collision(self):
        with pytest.raises(ValueError):
            ambient_graph(parse_graph("s:inf\ns0:2\n"))

    def test_doubled_graph_is_the_hat_graph(self, graphs):
        for g in graphs.values():
            assert doubled_graph(g) == hat_graph(g)


class TestEmbeddings:
    def test_beta_letters(self, pairs):
        p = pairs["mixed"]
        assert p.beta(p.gp.generator("u", 2)).letters == (("u", 2),)
        assert p.beta(p.gp.generator("a")).letters == (("a+", 1), ("a0", 1))
        assert p.beta(p.gp.generator("a", -1)).letters == (("a0", 1), ("a+", 1))

    def test_alpha_letters(self, pairs):
        p = pairs["single_inf"]
        gpd = p.gp_doubled
        assert p.alpha(gpd.generator("a+")).letters == (("a+", 1),)
        assert p.alpha(gpd.generator("a-")).letters == (("a0", 1), ("a+", 1), ("a0", 1))

    def test_beta_is_a_homomorphism(self, pairs):
        p = pairs["mixed"]
        ball = sorted(p.gp.enumerate_ball(2), key=p.gp.sort_key)
        for g, h in itertools.product(ball, repeat=2):
            assert p.beta(p.gp.multiply(g, h)) == p.gp_ambient.multiply(
                p.beta(g), p.beta(h)
            )

    def test_alpha_is_a_homomorphism(self, pairs):
        p = pairs["mixed"]
        gpd = p.gp_doubled
        ball = sorted(gpd.enumerate_ball(2), key=gpd.sort_key)
        for g, h in itertools.product(ball, repeat=2):
            assert p.alpha(gpd.multiply(g, h)) == p.gp_ambient.multiply(
                p.alpha(g), p.alpha(h)
            )

    def test_injective_on_ball(self, pairs):
        for name in ("single_inf", "free2", "mixed"):
            p = pairs[name]
            ball = p.gp.enumerate_ball(4, max_elements=5000)
            assert len({p.beta(g) for g in ball}) == len(ball)
            balld = p.gp_doubled.enumerate_ball(4, max_elements=5000)
            assert len({p.alpha(g) for g in balld}) == len(balld)


class TestESubgroup:
    def test_size_and_orders(self, pairs):
        p = pairs["z_squared"]
        es = p.e_elements()
        assert len(es) == 4
        gp2 = p.gp_ambient
        for x in es.values():
            assert gp2.multiply(x, x).is_identity
        # elementwise commuting
        for x, y in itertools.product(es.values(), repeat=2):
            assert gp2.multiply(x, y) == gp2.multiply(y, x)

    def test_trivial_without_infinite_generators(self, pairs):
        assert set(pairs["inf_dihedral"].e_elements()) == {frozenset()}

    def test_projection(self, pairs):
        p = pairs["z_squared"]
        gp2 = p.gp_ambient
        assert p.e_projection(gp2.generator("a0")) == {"a"}
        assert p.e_projection(gp2.generator("a+")) == {"a"}
        assert p.e_projection(gp2.multiply(gp2.generator("a+"), gp2.generator("a0"))) == frozenset()

    def test_projection_kills_the_embedded_group(self, pairs):
        p = pairs["mixed"]
        for g in p.gp.enumerate_ball(3):
            assert p.e_projection(p.beta(g)) == frozenset()

    def test_projection_reads_off_the_factor(self, pairs):
        p = pairs["mixed"]
        for g in p.gp_ambient.enumerate_ball(3):
            assert p.e_projection(g) == p.factorize(g)[1]


class TestFactorization:
    def test_every_ambient_element_factors(self, pairs):
        for name in ("single_inf", "z_squared", "mixed"):
            p = pairs[name]
            for g in p.gp_ambient.enumerate_ball(3):
                a, e = p.factorize(g)  # verifies beta(a) * e_hat(e) == g itself
                assert e <= set(p.graph.infinite_vertices)

    def test_roundtrip_unique(self, pairs):
        # (a, e) -> beta(a) e_hat(e) -> (a, e) over a ball times all of E
        p = pairs["mixed"]
        for a in p.gp.enumerate_ball(2):
            for e, ehat in p.e_elements().items():
                g = p.gp_ambient.multiply(p.beta(a), ehat)
                assert p.factorize(g) == (a, e)

    def test_roundtrip_doubled(self, pairs):
        p = pairs["z_squared"]
        gpd = p.gp_doubled
        for a in gpd.enumerate_ball(2):
            for e, ehat in p.e_elements().items():
                g = p.gp_ambient.multiply(p.alpha(a), ehat)
                assert p.factorize_doubled(g) == (a, e)

    def test_factor_lengths_agree(self, pairs):
        # the two factorizations of one element have parts of equal length
        p = pairs["mixed"]
        for g in p.gp_ambient.enumerate_ball(3):
            a, _ = p.factorize(g)
            ad, _ = p.factorize_doubled(g)
            assert a.length == ad.length


class TestConjugation:
    def test_action_on_the_embedded_group(self, pairs):
        p = pairs["mixed"]
        gp2 = p.gp_ambient
        for g in p.gp.enumerate_ball(2):
            for e, ehat in p.e_elements().items():
                lhs = p.beta(p.conj_by_e(e, g))
                assert lhs == gp2.multiply(gp2.multiply(ehat, p.beta(g)), ehat)

    def test_action_on_the_doubled_group(self, pairs):
        p = pairs["z_squared"]
        gp2 = p.gp_ambient
        gpd = p.gp_doubled
        for g in gpd.enumerate_ball(2):
            for e, ehat in p.e_elements().items():
                lhs = p.alpha(p.conj_by_e_doubled(e, g))
                assert lhs == gp2.multiply(gp2.multiply(ehat, p.alpha(g)), ehat)

    def test_sign_flip(self, pairs):
        p = pairs["single_inf"]
        g = p.gp.generator("a", 2)
        assert p.conj_by_e(frozenset(["a"]), g) == p.gp.generator("a", -2)
        gd = p.gp_doubled.generator("a+")
        assert p.conj_by_e_doubled(frozenset(["a"]), gd) == p.gp_doubled.generator("a-")


class TestSaturatedSets:
    def test_signed_subsets_saturate_equally(self, pairs):
        # after multiplying by E the two embeddings agree on the standard
        # subsets, sign by sign
        from gpcubes.dj import _saturate

        p = pairs["single_inf"]
        gp = p.gp
        gpd = p.gp_doubled
        plus = _saturate(p, {p.beta(x) for x in (gp.identity, gp.generator("a"))})
        minus = _saturate(p, {p.beta(x) for x in (gp.identity, gp.generator("a", -1))})
        plus_d = _saturate(p, {p.alpha(x) for x in (gpd.identity, gpd.generator("a+"))})
        minus_d = _saturate(p, {p.alpha(x) for x in (gpd.identity, gpd.generator("a-"))})
        assert plus == plus_d and minus == minus_d
        assert plus != minus


class TestIsoCheck:
    def test_single_infinite(self, graphs):
        report = iso_check(graphs["single_inf"], 2)
        assert report["ok"], report
        assert report["vertices"] == report["vertices_common"] == 9

    def test_flat_plane(self, graphs):
        report = iso_check(graphs["z_squared"], 2)
        assert report["ok"], report
        assert report["vertices"] == report["vertices_common"] == 33
        assert report["edges"] == report["edges_doubled"] == 48

    def test_mixed(self, graphs):
        report = iso_check(graphs["mixed"], 2)
        assert report["ok"], report
        assert report["vertices_common"] == 24

    def test_trivial_e(self, graphs):
        # without infinite generators all three complexes are one and the same
        report = iso_check(graphs["inf_dihedral"], 3)
        assert report["ok"]
        assert report["vertices"] == report["vertices_common"] == 13

    def test_y_ball_matches_vertex_count(self, graphs):
        p = DJPair(graphs["single_inf"])
        assert len(build_y_ball(p, 2)) == 9
