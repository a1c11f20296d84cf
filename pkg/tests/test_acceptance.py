"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the lines as they
happen; they are also repeated in the terminal summary.
"""

import contextlib
import itertools
import math
import time

import pytest

from hgcount import catalog
from hgcount.catalog import alternating, cyclic, symmetric
from hgcount.formulas import count_sn_anc2, count_sn_sn, formula_values, involution_term, total_e_sn
from hgcount.groups import automorphism_group, centralizer, direct_product, isomorphism_test
from hgcount.hopf import (
    byott_count, direct_enumerate_E, enumerate_regular_cocycle, enumerate_regular_dfs, full_report,
    holomorph, regular_reps,
)
from hgcount.perm import Permutation, Regularity, compose, cycle_type, generate_closure, regularity_check
from hgcount.verify import alternating_extension, involutions_and_identity, is_even, normal_subgroup_scan, zeta

RESULTS: list[str] = []

ORDER24 = {"S4": 8, "A4xC2": 36, "S3xC2xC2": 24, "C6xC2xC2": 48}


@contextlib.contextmanager
def criterion(num, title, limit=None):
    t = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        line = f"FAIL  [{num}] {title}: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        RESULTS.append(line)
        print(line)
        raise
    elapsed = time.perf_counter() - t
    if limit is not None and elapsed >= limit:
        line = f"FAIL  [{num}] {title}: took {elapsed:.2f} s, limit {limit} s"
        RESULTS.append(line)
        print(line)
        pytest.fail(line)
    line = f"PASS  [{num}] {title} ({elapsed:.2f} s)"
    RESULTS.append(line)
    print(line)


def test_c01_s3_exact():
    with criterion(1, "#E(S3,S3)=2, #E(S3,C6)=3, total 5, under 1 s", limit=1.0):
        S3, C6 = symmetric(3), cyclic(6)
        a = byott_count(S3, S3).e_count
        b = byott_count(S3, C6).e_count
        assert (a, b, a + b) == (2, 3, 5)


def test_c02_order24():
    with criterion(2, "#E(S4,N) over 15 groups of order 24 gives 8/36/24/48, else 0, total 116", limit=30 * 60):
        groups = catalog.groups_of_order(24)
        assert len(groups) == 15
        rep = full_report(symmetric(4), groups)
        got = {r.N_label: r.e_count for r in rep.rows}
        assert got == {g.label: ORDER24.get(g.label, 0) for g in groups}
        assert rep.total == 116


def test_c03_formulas():
    with criterion(3, "total(5)=52, 92 + 60 + 72 + 0 = 224, exact to n=50, under 1 s", limit=1.0):
        assert total_e_sn(5).value == 52
        v = {c.kind: c.value for c in formula_values(6)}
        assert (v["Sn_type"], v["AnC2_type"], v["M10_type"], v["PGL29_type"], v["total"]) == (92, 60, 72, 0, 224)
        assert v["Sn_type"] + v["AnC2_type"] + v["M10_type"] + v["PGL29_type"] == 224
        for n in range(5, 51):
            t = total_e_sn(n).value
            assert isinstance(t, int)
            if n != 6:
                assert t == count_sn_sn(n).value + count_sn_anc2(n).value
        assert total_e_sn(50).value > 2**64


def test_c04_direct_vs_byott():
    with criterion(4, "direct enumeration equals Byott counts for all 7 groups of order <= 6", limit=60):
        seen = 0
        for order in (1, 2, 3, 4, 6):
            groups = catalog.groups_of_order(order)
            for G in groups:
                direct = direct_enumerate_E(G, groups).buckets
                assert direct == {N.label: byott_count(G, N).e_count for N in groups}, G.label
                seen += 1
        assert seen == 7


def _same_sets(G, N):
    dfs = {r.subgroup for r in enumerate_regular_dfs(holomorph(N), G)}
    coc = {r.subgroup for r in enumerate_regular_cocycle(G, N)[0]}
    return dfs == coc


def test_c05_strategy_equivalence():
    with criterion(5, "DFS and cocycle subgroup sets agree for (S4, all N of order 24) and all pairs of order <= 8"):
        S4 = symmetric(4)
        for N in catalog.groups_of_order(24):
            assert _same_sets(S4, N), N.label
        for order in (1, 2, 3, 4, 6, 8):
            groups = catalog.groups_of_order(order)
            for G, N in itertools.product(groups, repeat=2):
                assert _same_sets(G, N), (G.label, N.label)


def test_c06_summand_semantics():
    with criterion(6, "summand counts products of exactly k disjoint transpositions, n <= 8"):
        for n in range(1, 9):
            counts = [0] * (n // 2 + 1)
            for p in itertools.permutations(range(n)):
                ct = cycle_type(p)
                if all(c == 2 for c in ct):
                    counts[len(ct)] += 1
            assert counts == [involution_term(n, k) for k in range(n // 2 + 1)], n


def test_c07_semidirect():
    with criterion(7, "A_n:C2 by an involution is S_n iff it is odd, else A_n x C2, n in {4,5}", limit=300):
        for n in (4, 5):
            Sn = symmetric(n)
            AnC2 = direct_product(alternating(n), cyclic(2))
            invs = involutions_and_identity(n)
            assert len(invs) == (10 if n == 4 else 26)
            for s0 in invs:
                G = alternating_extension(n, s0)
                odd = not is_even(s0)
                assert (isomorphism_test(G, Sn) is not None) == odd, s0
                assert (isomorphism_test(G, AnC2) is not None) == (not odd), s0


def test_c08_centralizer():
    with criterion(8, "|Cent_Sn((1 2)(3 4))| = 2|Cent_An((1 2)(3 4))|, n in {5,6,7}", limit=60):
        for n in (5, 6, 7):
            z = zeta(n)
            cs = centralizer(symmetric(n), z).order
            ca = centralizer(alternating(n), z).order
            assert cs == 2 * ca
            # |Cent_Sn(z)| = 8 (n-4)! for a double transposition
            assert cs == 8 * math.factorial(n - 4)


def test_c09_normal_a4_scan():
    with criterion(9, "exactly S4 and A4xC2 have a normal A4 among order-24 groups", limit=300):
        hits = normal_subgroup_scan(catalog.groups_of_order(24), alternating(4))
        assert sorted(hits) == ["A4xC2", "S4"]


def test_c10_invariants():
    with criterion(10, "regularity agreement, lambda/rho commutation, integrality, pair ratio, "
                       "Hol as normalizer, |Aut S_n| = n!"):
        # regularity: the two routes agree (checked inside), and the result matches a direct test
        for gens in itertools.combinations(itertools.permutations(range(4)), 2):
            sub = generate_closure([Permutation(g) for g in gens])
            res = regularity_check(sub)
            transitive = len({p[0] for p in sub}) == sub.degree
            free = all(p.is_identity() or all(p[i] != i for i in range(sub.degree)) for p in sub)
            assert (res is Regularity.REGULAR) == (transitive and free)
        small = [g for o in (1, 2, 3, 4, 6, 8, 24) for g in catalog.groups_of_order(o)]
        for g in small:
            reps = regular_reps(g)
            assert all(compose(a, b) == compose(b, a) for a in reps.lam for b in reps.rho)
        for order in (1, 2, 3, 4, 6, 8):
            groups = catalog.groups_of_order(order)
            for G, N in itertools.product(groups, repeat=2):
                rep = byott_count(G, N)
                assert (rep.aut_G_order * rep.regular_in_hol_count) % rep.aut_N_order == 0
                assert rep.cocycle_pairs == rep.aut_G_order * rep.regular_in_hol_count
        for order in (1, 2, 3, 4, 6):
            for N in catalog.groups_of_order(order):
                lam = regular_reps(N).lambda_image.carrier
                members = set(lam.elements)
                normalizer = set()
                for p in itertools.permutations(range(order)):
                    p = Permutation(p)
                    pi = p.inverse()
                    if all(compose(compose(p, x), pi) in members for x in lam):
                        normalizer.add(p)
                assert set(holomorph(N).group.elements) == normalizer, N.label
        for n in (3, 4, 5):
            assert automorphism_group(symmetric(n), bound=120)[0].order == math.factorial(n)
