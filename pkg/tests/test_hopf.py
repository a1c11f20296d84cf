import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from hgcount import catalog
from hgcount.catalog import cyclic, symmetric
from hgcount.errors import CapExceeded, HGError
from hgcount.groups import GroupHom
from hgcount.hopf import (
    CocyclePair, byott_count, cocycle_pairs, direct_enumerate_E, enumerate_regular_cocycle,
    enumerate_regular_dfs, full_report, holomorph, regular_reps,
)
from hgcount.perm import Permutation, PermSet, Regularity, compose, generate_closure, regularity_check

SMALL = [g.label for o in (1, 2, 3, 4, 6, 8) for g in catalog.groups_of_order(o)]


def brute_normalizer(perms: PermSet) -> set:
    """Normalizer of a permutation group in the full symmetric group, by brute force."""
    members = set(perms.elements)
    out = set()
    for p in itertools.permutations(range(perms.degree)):
        p = Permutation(p)
        pi = p.inverse()
        if all(compose(compose(p, x), pi) in members for x in perms):
            out.add(p)
    return out


class TestRegularReps:
    def test_s3_formulas(self):
        g = symmetric(3)
        reps = regular_reps(g)
        for s in range(6):
            for x in range(6):
                assert reps.lam[s][x] == g.mul[s][x]
                assert reps.rho[s][x] == g.mul[x][g.inv[s]]

    def test_s4_images_meet_trivially(self):
        reps = regular_reps(symmetric(4))
        common = set(reps.lambda_image.elements) & set(reps.rho_image.elements)
        assert common == {Permutation.identity(24)}

    def test_abelian_images_coincide(self):
        reps = regular_reps(catalog.resolve("C4xC2"))
        assert reps.lambda_image.carrier == reps.rho_image.carrier

    @pytest.mark.parametrize("label", SMALL + ["S4", "SL(2,3)", "C3:Q8"])
    def test_both_regular_and_commuting(self, label):
        reps = regular_reps(catalog.resolve(label))
        assert regularity_check(reps.lambda_image.carrier) is Regularity.REGULAR
        assert regularity_check(reps.rho_image.carrier) is Regularity.REGULAR
        for a in reps.lam:
            for b in reps.rho:
                assert compose(a, b) == compose(b, a)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            regular_reps(symmetric(4), cap=10)


class TestHolomorph:
    @pytest.mark.parametrize("label,order", [("C5", 20), ("S4", 576), ("C2xC2", 24), ("C1", 1), ("Q8", 192)])
    def test_order(self, label, order):
        assert holomorph(catalog.resolve(label)).group.order == order

    @pytest.mark.parametrize("label", ["C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3"])
    def test_is_normalizer_of_lambda(self, label):
        n = catalog.resolve(label)
        hol = holomorph(n)
        reps = regular_reps(n)
        assert set(hol.group.elements) == brute_normalizer(reps.lambda_image.carrier)
        assert set(hol.group.elements) == brute_normalizer(reps.rho_image.carrier)

    def test_factorization_unique(self):
        n = catalog.resolve("D4")
        hol = holomorph(n)
        seen = set()
        for h in hol.group:
            m, a = hol.factor(h)
            assert hol.element(m, a) == h
            seen.add((m, a))
        assert len(seen) == hol.group.order == n.order * hol.aut.order

    def test_cap(self):
        with pytest.raises(CapExceeded):
            holomorph(catalog.resolve("C2xC2xC2"), cap=100)


class TestDFS:
    def test_c6_filter_s3(self):
        assert len(enumerate_regular_dfs(holomorph(cyclic(6)), symmetric(3))) == 1

    def test_s3_filter_s3(self):
        recs = enumerate_regular_dfs(holomorph(symmetric(3)), symmetric(3))
        assert len(recs) == 2
        for r in recs:
            assert r.witness.is_bijective and r.iso_type == "S3"

    @pytest.mark.parametrize("label", ["C4", "C2xC2", "S3", "D4", "Q8"])
    def test_unfiltered_contains_rho(self, label):
        n = catalog.resolve(label)
        hol = holomorph(n)
        subs = {r.subgroup for r in enumerate_regular_dfs(hol)}
        assert regular_reps(n).rho_image.carrier in subs
        for s in subs:
            assert regularity_check(s) is Regularity.REGULAR
            assert set(s.elements) <= set(hol.group.elements)

    @pytest.mark.parametrize("label", ["C2xC2", "C6", "S3"])
    def test_matches_brute_force(self, label):
        n = catalog.resolve(label)
        hol = holomorph(n)
        brute = set()
        # every regular subgroup of order n is generated by at most 2 elements here
        for a, b in itertools.combinations_with_replacement(hol.group.elements, 2):
            s = generate_closure([a, b])
            if len(s) == n.order and regularity_check(s) is Regularity.REGULAR:
                brute.add(s)
        assert {r.subgroup for r in enumerate_regular_dfs(hol)} == brute

    def test_bound(self):
        with pytest.raises(CapExceeded):
            enumerate_regular_dfs(holomorph(cyclic(6)), bound=5)

    def test_effort_cap(self):
        with pytest.raises(CapExceeded):
            enumerate_regular_dfs(holomorph(catalog.resolve("D4")), effort_cap=2)

    def test_workers_agree(self):
        hol = holomorph(catalog.resolve("C2xC2xC2"))
        one = [r.subgroup for r in enumerate_regular_dfs(hol, workers=1)]
        two = [r.subgroup for r in enumerate_regular_dfs(hol, workers=2)]
        assert one == two


class TestCocycle:
    def test_s3_on_c6(self):
        recs, pairs = enumerate_regular_cocycle(symmetric(3), cyclic(6))
        assert len(recs) == 1 and pairs == 6

    def test_c4_contains_rho(self):
        n = cyclic(4)
        recs, _ = enumerate_regular_cocycle(n, n)
        assert regular_reps(n).rho_image.carrier in {r.subgroup for r in recs}

    def test_pairs_validate(self):
        G, N = symmetric(3), symmetric(3)
        pairs = list(cocycle_pairs(G, N))
        assert len(pairs) == 12
        hol = holomorph(N)
        subs = {p.subgroup(hol) for p in pairs}
        assert subs == {r.subgroup for r in enumerate_regular_dfs(hol, G)}

    def test_bad_pair_rejected(self):
        G = N = cyclic(4)
        hol = holomorph(N)
        f = GroupHom(G, hol.aut, [0] * 4)
        with pytest.raises(HGError, match="1 to 1"):
            CocyclePair(G, N, f, (1, 0, 2, 3))
        with pytest.raises(HGError, match="bijective"):
            CocyclePair(G, N, f, (0, 1, 1, 2))
        # with trivial f the relation says g is a homomorphism; C4 has only 2 automorphisms
        non_hom = next(p for p in itertools.permutations(range(1, 4))
                       if not _is_hom(G, N, (0,) + p))
        with pytest.raises(HGError, match="cocycle"):
            CocyclePair(G, N, f, (0,) + non_hom)

    def test_s4_vs_abelian_matches_dfs(self):
        G, N = symmetric(4), catalog.resolve("C6xC2xC2")
        recs, pairs = enumerate_regular_cocycle(G, N)
        dfs = enumerate_regular_dfs(holomorph(N), G)
        assert {r.subgroup for r in recs} == {r.subgroup for r in dfs}
        assert len(recs) == 672 and pairs == 24 * 672

    def test_order_mismatch(self):
        with pytest.raises(HGError):
            enumerate_regular_cocycle(cyclic(2), cyclic(3))


def _is_hom(G, N, g):
    return all(g[G.mul[s][t]] == N.mul[g[s]][g[t]] for s in range(G.order) for t in range(G.order))


class TestByott:
    @pytest.mark.parametrize("g,n,expected", [
        ("S3", "C6", 3), ("S3", "S3", 2), ("C6", "S3", 2), ("C6", "C6", 1),
        ("C4", "C2xC2", 1), ("C2xC2", "C4", 3), ("S4", "A4xC2", 36), ("S4", "C24", 0),
    ])
    def test_examples(self, g, n, expected):
        assert byott_count(catalog.resolve(g), catalog.resolve(n)).e_count == expected

    @pytest.mark.parametrize("label", SMALL)
    def test_floor_self(self, label):
        n = catalog.resolve(label)
        rep = byott_count(n, n)
        assert rep.regular_in_hol_count >= 1
        assert rep.e_count >= 1

    @settings(max_examples=20)
    @given(st.sampled_from([1, 2, 3, 4, 6, 8]).flatmap(
        lambda o: st.tuples(st.sampled_from(catalog.groups_of_order(o)),
                            st.sampled_from(catalog.groups_of_order(o)))))
    def test_integral_and_ratio(self, pair):
        G, N = pair
        rep = byott_count(G, N)
        assert rep.e_count * rep.aut_N_order == rep.aut_G_order * rep.regular_in_hol_count
        assert rep.cocycle_pairs == rep.aut_G_order * rep.regular_in_hol_count
        assert rep.strategies_agree

    def test_trivial_group(self):
        rep = byott_count(cyclic(1), cyclic(1))
        assert (rep.regular_in_hol_count, rep.aut_G_order, rep.aut_N_order, rep.e_count) == (1, 1, 1, 1)

    def test_order_mismatch(self):
        with pytest.raises(HGError):
            byott_count(cyclic(4), cyclic(6))

    def test_json_fields(self):
        out = byott_count(symmetric(3), cyclic(6)).to_json()
        assert list(out) == ["G", "N", "regular_in_hol", "aut_G", "aut_N", "e_count",
                             "strategies_agree", "elapsed_ms"]
        assert out["elapsed_ms"] is None
        assert json.loads(json.dumps(out)) == out
        timed = byott_count(symmetric(3), cyclic(6)).to_json(timings=True)
        assert set(timed["elapsed_ms"]) == {"aut", "dfs", "cocycle"}

    def test_workers_deterministic(self):
        G, N = catalog.resolve("D4"), catalog.resolve("C2xC2xC2")
        a = byott_count(G, N, workers=1).to_json()
        b = byott_count(G, N, workers=2).to_json()
        assert json.dumps(a) == json.dumps(b)


class TestDirectOracle:
    def test_s3(self):
        rep = direct_enumerate_E(symmetric(3))
        assert rep.buckets == {"C6": 3, "S3": 2} and rep.total == 5

    def test_c2(self):
        assert direct_enumerate_E(cyclic(2)).total == 1

    @pytest.mark.parametrize("label", [g.label for o in (4, 6) for g in catalog.groups_of_order(o)])
    def test_matches_byott(self, label):
        G = catalog.resolve(label)
        groups = catalog.groups_of_order(G.order)
        direct = direct_enumerate_E(G, groups).buckets
        assert direct == {N.label: byott_count(G, N).e_count for N in groups}

    def test_order8_extended(self):
        G = catalog.resolve("Q8")
        groups = catalog.groups_of_order(8)
        direct = direct_enumerate_E(G, groups, extended=True)
        assert direct.buckets == {N.label: byott_count(G, N).e_count for N in groups}
        assert direct.total == 22

    def test_bound(self):
        with pytest.raises(CapExceeded):
            direct_enumerate_E(catalog.resolve("D4"))

    def test_full_report_cross_checks(self):
        rep = full_report(symmetric(3))
        assert rep.total == rep.oracle_total == 5
        assert list(rep.to_json()) == ["G", "rows", "total", "oracle_total"]
