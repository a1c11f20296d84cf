"""Regular subgroups of holomorphs and Hopf-Galois structure counts.

Two independent enumerators find the regular subgroups of Hol(N) that are
isomorphic to G:

* :func:`enumerate_regular_dfs` searches the holomorph's elements directly,
  choosing for each uncovered point the unique subgroup element that sends
  the base point there.
* :func:`enumerate_regular_cocycle` builds every subgroup
  ``{ρ(g(σ))·f(σ)}`` from a homomorphism f: G → Aut(N) and a bijective map
  g: G → N with ``g(στ) = g(σ)·f(σ)(g(τ))``.

:func:`byott_count` runs both, insists they agree, and turns the count into
the number of Hopf-Galois structures of type N on a G-extension via
``#E(G,N) = |Aut(G)| / |Aut(N)| · #{regular subgroups of Hol(N) ≅ G}``.
:func:`direct_enumerate_E` is a brute-force oracle over all of Perm(G).
"""

from __future__ import annotations

import itertools
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import catalog as _catalog
from .errors import CapExceeded, HGError, StrategyMismatch
from .groups import (
    DEFAULT_AUT_BOUND, DEFAULT_EFFORT_CAP, FiniteGroup, GroupHom,
    _Effort, automorphism_group, homomorphisms, isomorphism_test,
)
from .perm import DEFAULT_CLOSURE_CAP, Permutation, PermSet, compose, cycle_type, inverse_order

log = logging.getLogger(__name__)

DEFAULT_ENUM_BOUND = 24
DIRECT_ORACLE_BOUND = 6
DIRECT_ORACLE_EXTENDED_BOUND = 8


@dataclass(frozen=True)
class RegularRep:
    source: FiniteGroup
    lambda_image: FiniteGroup
    rho_image: FiniteGroup
    lam: tuple[Permutation, ...]
    rho: tuple[Permutation, ...]


def regular_reps(g: FiniteGroup, cap: int = DEFAULT_CLOSURE_CAP) -> RegularRep:
    """Left and right regular representations on g's element indices.

    ``lam[σ](x) = σx`` and ``rho[σ](x) = xσ⁻¹``.
    """
    if g.order > cap:
        raise CapExceeded(f"regular representation of order {g.order} exceeds cap {cap}")
    mul, inv = g.mul, g.inv
    n = g.order
    lam = tuple(Permutation._trusted(mul[s]) for s in range(n))
    rho = tuple(Permutation._trusted(mul[x][inv[s]] for x in range(n)) for s in range(n))
    for s in range(n):
        for t in range(n):
            if compose(lam[s], lam[t]) != lam[mul[s][t]]:
                raise HGError("left regular representation is not a homomorphism")
    lam_img = FiniteGroup(PermSet.from_iterable(lam, n), f"λ({g.label})" if g.label else None)
    rho_img = FiniteGroup(PermSet.from_iterable(rho, n), f"ρ({g.label})" if g.label else None)
    for img in (lam_img, rho_img):
        if img.order != n or len({p[0] for p in img}) != n:
            raise HGError("regular representation image is not regular")
    return RegularRep(g, lam_img, rho_img, lam, rho)


def aut_of(g: FiniteGroup, bound: int = DEFAULT_AUT_BOUND) -> FiniteGroup:
    """Automorphism group of g, computed once per group object."""
    if g.order > bound:
        raise CapExceeded(f"automorphism search for order {g.order} exceeds bound {bound}", stage="aut")
    cached = getattr(g, "_hg_aut", None)
    if cached is None:
        cached = automorphism_group(g, bound)[0]
        g._hg_aut = cached
    return cached


@dataclass(frozen=True, eq=False)
class Holomorph:
    """Hol(N) = ρ(N)·Aut(N) acting on N's element indices.

    ``factor(h)`` gives the unique (m, a) with h = ρ(m)∘aut[a], as indices
    into ``base`` and ``aut``.
    """

    base: FiniteGroup
    aut: FiniteGroup
    group: FiniteGroup
    rho: tuple[Permutation, ...]
    decomposition: dict

    def factor(self, h: Sequence[int]) -> tuple[int, int]:
        return self.decomposition[tuple(h)]

    def element(self, m: int, a: int) -> Permutation:
        return compose(self.rho[m], self.aut.element(a))


def holomorph(n: FiniteGroup, aut_bound: int = DEFAULT_AUT_BOUND,
              cap: int = DEFAULT_CLOSURE_CAP) -> Holomorph:
    aut = aut_of(n, aut_bound)
    size = n.order * aut.order
    if size > cap:
        raise CapExceeded(f"holomorph of order {size} exceeds cap {cap}")
    cached = getattr(n, "_hg_hol", None)
    if cached is not None:
        return cached
    reps = regular_reps(n, cap)
    rho_gens = [reps.rho[i] for i in n.generating_set]
    aut_gens = [aut.element(i) for i in aut.generating_set]
    gens = rho_gens + aut_gens or [Permutation.identity(n.order)]
    group = FiniteGroup.from_generators(gens, f"Hol({n.label})" if n.label else None, cap)
    if group.order != size:
        raise HGError(f"holomorph has order {group.order}, expected {size}")
    inv = n.inv
    rho_inv = [inverse_order(r)[0] for r in reps.rho]
    decomposition = {}
    for h in group:
        # ρ(m)∘φ sends the identity (point 0) to m⁻¹
        m = inv[h[0]]
        a = aut.index(compose(rho_inv[m], h))
        decomposition[h] = (m, a)
    hol = Holomorph(n, aut, group, reps.rho, decomposition)
    n._hg_hol = hol
    return hol


@dataclass(frozen=True)
class CocyclePair:
    """f: G → Aut(N) and bijective g: G → N with g(στ) = g(σ)·f(σ)(g(τ)).

    ``f`` maps into ``Hol(N).aut``; ``g`` is a tuple of N indices.
    """

    G: FiniteGroup
    N: FiniteGroup
    f: GroupHom
    g: tuple[int, ...]

    def __post_init__(self):
        G, N = self.G, self.N
        if len(self.g) != G.order or self.g[0] != 0:
            raise HGError("g must be defined on all of G and send 1 to 1")
        if sorted(self.g) != list(range(N.order)):
            raise HGError("g is not bijective")
        auts = [self.f.target.element(a) for a in self.f.table]
        gm, nm = G.mul, N.mul
        for s in range(G.order):
            for t in range(G.order):
                if self.g[gm[s][t]] != nm[self.g[s]][auts[s][self.g[t]]]:
                    raise HGError("cocycle relation fails")

    def subgroup(self, hol: Holomorph) -> PermSet:
        return PermSet.from_iterable(
            (hol.element(self.g[s], self.f.table[s]) for s in range(self.G.order)), self.N.order)


@dataclass(frozen=True)
class RegularSubgroupRecord:
    subgroup: PermSet
    iso_type: str | None
    witness: GroupHom | None
    origin: str


@dataclass
class HGCountReport:
    G_label: str
    N_label: str
    regular_in_hol_count: int
    aut_G_order: int
    aut_N_order: int
    e_count: int
    strategies_agree: bool
    cocycle_pairs: int
    elapsed: dict = field(default_factory=dict)

    def to_json(self, timings: bool = False) -> dict:
        return {
            "G": self.G_label,
            "N": self.N_label,
            "regular_in_hol": self.regular_in_hol_count,
            "aut_G": self.aut_G_order,
            "aut_N": self.aut_N_order,
            "e_count": self.e_count,
            "strategies_agree": self.strategies_agree,
            "elapsed_ms": {k: round(v * 1000, 3) for k, v in self.elapsed.items()} if timings else None,
        }


# ---------------------------------------------------------------------------
# depth-first search for regular subgroups inside an explicit element pool


class _SearchContext:
    def __init__(self, pool: Sequence[tuple], degree: int, filter_group: FiniteGroup | None,
                 effort_cap: int):
        self.degree = degree
        self.effort_cap = effort_cap
        order_of = {}
        cands: list[list[tuple]] = [[] for _ in range(degree)]
        allowed = None
        if filter_group is not None:
            hist: dict[int, int] = {}
            for o in filter_group.element_orders:
                hist[o] = hist.get(o, 0) + 1
            self.max_count = hist
            allowed = set(hist)
        else:
            self.max_count = None
        for p in pool:
            p = tuple(p)
            ct = cycle_type(p)
            if not ct:
                order_of[p] = 1
                continue
            # elements of a regular subgroup move every point and all their
            # cycles have equal length
            if sum(ct) != degree or ct[0] != ct[-1]:
                continue
            if allowed is not None and ct[0] not in allowed:
                continue
            order_of[p] = ct[0]
            cands[p[0]].append(p)
        self.order_of = order_of
        self.cands = cands

    def extend(self, H: dict, gens: list, h: tuple) -> dict | None:
        """Group generated by H and h, or None if it is not semiregular."""
        seen = dict(H)
        order_of = self.order_of
        newq = []
        for x in H.values():
            y = tuple(map(x.__getitem__, h))
            q = seen.get(y[0])
            if q is None:
                if y not in order_of:
                    return None
                seen[y[0]] = y
                newq.append(y)
            elif q != y:
                return None
        allg = gens + [h]
        while newq:
            x = newq.pop()
            get = x.__getitem__
            for g in allg:
                y = tuple(map(get, g))
                q = seen.get(y[0])
                if q is None:
                    if y not in order_of:
                        return None
                    seen[y[0]] = y
                    newq.append(y)
                elif q != y:
                    return None
        if self.max_count is not None:
            counts: dict[int, int] = {}
            for y in seen.values():
                o = order_of[y]
                c = counts.get(o, 0) + 1
                if c > self.max_count.get(o, 0):
                    return None
                counts[o] = c
        return seen

    def search(self, H: dict, gens: list, effort: _Effort, out: list) -> None:
        d = self.degree
        if len(H) == d:
            out.append(frozenset(H.values()))
            return
        x = 0
        while x in H:
            x += 1
        for h in self.cands[x]:
            effort.tick()
            H2 = self.extend(H, gens, h)
            if H2 is not None:
                self.search(H2, gens + [h], effort, out)

    def root(self) -> dict:
        ident = tuple(range(self.degree))
        return {0: ident}


_WORKER_CTX: _SearchContext | None = None


def _branch(first: int) -> list[frozenset]:
    ctx = _WORKER_CTX
    effort = _Effort(ctx.effort_cap, "regular subgroup search", "enumerate")
    out: list[frozenset] = []
    root = ctx.root()
    x = 1
    h = ctx.cands[x][first]
    H2 = ctx.extend(root, [], h)
    if H2 is not None:
        ctx.search(H2, [h], effort, out)
    return out


def _regular_subgroups(pool: Sequence[tuple], degree: int, filter_group: FiniteGroup | None = None,
                       effort_cap: int = DEFAULT_EFFORT_CAP, workers: int = 1) -> list[PermSet]:
    """All regular subgroups of degree ``degree`` made of elements of ``pool``.

    ``pool`` must be closed under composition. With ``filter_group`` the
    search prunes subgroups that cannot embed in it (element order counts)
    but does not test isomorphism itself.
    """
    ctx = _SearchContext(pool, degree, filter_group, effort_cap)
    if degree == 1:
        return [PermSet.from_iterable([(0,)])]
    if workers > 1 and len(ctx.cands[1]) > 1:
        global _WORKER_CTX
        _WORKER_CTX = ctx
        try:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                parts = list(ex.map(_branch, range(len(ctx.cands[1]))))
        finally:
            _WORKER_CTX = None
        found = [s for part in parts for s in part]
    else:
        found = []
        ctx.search(ctx.root(), [], _Effort(effort_cap, "regular subgroup search", "enumerate"), found)
    unique = {s: None for s in found}
    return sorted((PermSet.from_iterable(s, degree) for s in unique), key=lambda p: p.elements)


def _default_workers() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def enumerate_regular_dfs(hol: Holomorph, iso_filter: FiniteGroup | None = None,
                          bound: int = DEFAULT_ENUM_BOUND, effort_cap: int = DEFAULT_EFFORT_CAP,
                          workers: int = 1) -> list[RegularSubgroupRecord]:
    """Regular subgroups of the holomorph, optionally only those ≅ ``iso_filter``."""
    n = hol.base.order
    if n > bound:
        raise CapExceeded(f"DFS enumeration for order {n} exceeds bound {bound}")
    subs = _regular_subgroups(hol.group.elements, n, iso_filter, effort_cap, workers)
    records = []
    for s in subs:
        witness = None
        label = None
        if iso_filter is not None:
            witness = isomorphism_test(iso_filter, FiniteGroup(s))
            if witness is None:
                continue
            label = iso_filter.label
        records.append(RegularSubgroupRecord(s, label, witness, "dfs"))
    return records


# ---------------------------------------------------------------------------
# cocycle construction


def _cocycle_maps(G: FiniteGroup, N: FiniteGroup, f_table: Sequence[int], auts: Sequence[tuple],
                  effort: _Effort):
    """Yield every bijective g: G → N satisfying the cocycle relation with f."""
    gens = G.generating_set
    n = G.order
    gmul, nmul = G.mul, N.mul
    phis = [auts[a] for a in f_table]
    if not gens:
        yield (0,)
        return
    vals: list[int] = []

    def extend(k: int):
        gm = {0: 0}
        queue = [0]
        pairs = list(zip(gens[:k], vals))
        for x in queue:
            gx = nmul[gm[x]]
            phi = phis[x]
            row = gmul[x]
            for s, v in pairs:
                y = row[s]
                w = gx[phi[v]]
                old = gm.get(y)
                if old is None:
                    gm[y] = w
                    queue.append(y)
                elif old != w:
                    return None
        if len(set(gm.values())) != len(gm):
            return None
        return gm

    def rec(depth: int):
        for v in range(1, N.order):
            effort.tick()
            vals.append(v)
            gm = extend(depth + 1)
            if gm is not None:
                if depth + 1 == len(gens):
                    if len(gm) == n:
                        yield tuple(gm[i] for i in range(n))
                else:
                    yield from rec(depth + 1)
            vals.pop()

    yield from rec(0)


def cocycle_pairs(G: FiniteGroup, N: FiniteGroup, aut_bound: int = DEFAULT_AUT_BOUND,
                  effort_cap: int = DEFAULT_EFFORT_CAP):
    """Iterate over all validated :class:`CocyclePair` objects for (G, N)."""
    hol = holomorph(N, aut_bound)
    auts = hol.aut.elements
    effort = _Effort(effort_cap, "cocycle search", "enumerate")
    for f in homomorphisms(G, hol.aut, effort_cap):
        for g in _cocycle_maps(G, N, f.table, auts, effort):
            yield CocyclePair(G, N, f, g)


def enumerate_regular_cocycle(G: FiniteGroup, N: FiniteGroup, aut_bound: int = DEFAULT_AUT_BOUND,
                              bound: int = DEFAULT_ENUM_BOUND, effort_cap: int = DEFAULT_EFFORT_CAP,
                              ) -> tuple[list[RegularSubgroupRecord], int]:
    """Regular subgroups of Hol(N) isomorphic to G, plus the raw (f, g) pair count."""
    if G.order != N.order:
        raise HGError(f"|G| = {G.order} differs from |N| = {N.order}")
    if N.order > bound:
        raise CapExceeded(f"cocycle enumeration for order {N.order} exceeds bound {bound}")
    hol = holomorph(N, aut_bound)
    auts = hol.aut.elements
    rho = hol.rho
    effort = _Effort(effort_cap, "cocycle search", "enumerate")
    n = G.order
    pairs = 0
    found: dict[frozenset, tuple[int, ...]] = {}
    for f in homomorphisms(G, hol.aut, effort_cap):
        ft = f.table
        for g in _cocycle_maps(G, N, ft, auts, effort):
            pairs += 1
            elems = [tuple(map(rho[g[s]].__getitem__, auts[ft[s]])) for s in range(n)]
            key = frozenset(elems)
            if key not in found:
                found[key] = tuple(elems)
    records = []
    for key, elems in found.items():
        ps = PermSet.from_iterable(elems, n)
        R = FiniteGroup(ps)
        witness = GroupHom(G, R, [R.index(e) for e in elems])
        records.append(RegularSubgroupRecord(ps, G.label, witness, "cocycle"))
    records.sort(key=lambda r: r.subgroup.elements)
    return records, pairs


# ---------------------------------------------------------------------------
# counting


def byott_count(G: FiniteGroup, N: FiniteGroup, aut_bound: int = DEFAULT_AUT_BOUND,
                effort_cap: int = DEFAULT_EFFORT_CAP, workers: int = 1,
                cap: int = DEFAULT_CLOSURE_CAP) -> HGCountReport:
    """#E(G, N) from both enumeration strategies, which must agree."""
    if G.order != N.order:
        raise HGError(f"|G| = {G.order} differs from |N| = {N.order}")
    elapsed = {}
    t0 = time.perf_counter()
    aut_G = aut_of(G, aut_bound)
    hol = holomorph(N, aut_bound, cap)
    t1 = time.perf_counter()
    elapsed["aut"] = t1 - t0
    dfs = enumerate_regular_dfs(hol, G, bound=aut_bound, effort_cap=effort_cap, workers=workers)
    t2 = time.perf_counter()
    elapsed["dfs"] = t2 - t1
    coc, pairs = enumerate_regular_cocycle(G, N, aut_bound, bound=aut_bound, effort_cap=effort_cap)
    t3 = time.perf_counter()
    elapsed["cocycle"] = t3 - t2
    dfs_set = {r.subgroup for r in dfs}
    coc_set = {r.subgroup for r in coc}
    if dfs_set != coc_set:
        raise StrategyMismatch(
            f"({G.label}, {N.label}): DFS found {len(dfs_set)} subgroups, cocycle route {len(coc_set)}")
    if pairs != aut_G.order * len(coc_set):
        raise StrategyMismatch(f"({G.label}, {N.label}): {pairs} pairs for {len(coc_set)} subgroups")
    count = len(dfs_set)
    num = aut_G.order * count
    if num % hol.aut.order:
        raise HGError(f"|Aut(G)|·count = {num} not divisible by |Aut(N)| = {hol.aut.order}")
    log.debug("byott %s %s: %d subgroups in %.2fs", G.label, N.label, count, t3 - t0)
    return HGCountReport(
        G_label=G.label or "G", N_label=N.label or "N",
        regular_in_hol_count=count, aut_G_order=aut_G.order, aut_N_order=hol.aut.order,
        e_count=num // hol.aut.order, strategies_agree=True, cocycle_pairs=pairs, elapsed=elapsed,
    )


@dataclass
class EReport:
    G_label: str
    buckets: dict[str, int]
    total: int


def direct_enumerate_E(G: FiniteGroup, catalog_groups: Sequence[FiniteGroup] | None = None,
                       extended: bool = False, effort_cap: int = DEFAULT_EFFORT_CAP) -> EReport:
    """Regular subgroups of Perm(G) normalized by λ(G), by brute force.

    Buckets are keyed by the catalog label of each subgroup's isomorphism type.
    """
    n = G.order
    limit = DIRECT_ORACLE_EXTENDED_BOUND if extended else DIRECT_ORACLE_BOUND
    if n > limit:
        raise CapExceeded(f"direct enumeration for order {n} exceeds bound {limit}")
    if catalog_groups is None:
        catalog_groups = _catalog.groups_of_order(n)
    reps = regular_reps(G)
    lam_gens = [reps.lam[i] for i in G.generating_set]
    lam_invs = [inverse_order(p)[0] for p in lam_gens]
    pool = list(itertools.permutations(range(n)))
    subs = _regular_subgroups(pool, n, None, effort_cap)
    buckets = {c.label: 0 for c in catalog_groups}
    for s in subs:
        members = set(s.elements)
        if not all(tuple(map(l.__getitem__, map(x.__getitem__, li))) in members
                   for l, li in zip(lam_gens, lam_invs) for x in s.elements):
            continue
        R = FiniteGroup(s)
        for c in catalog_groups:
            if isomorphism_test(R, c) is not None:
                buckets[c.label] += 1
                break
        else:
            raise HGError(f"regular subgroup of order {n} matches no catalog group")
    return EReport(G.label or "G", buckets, sum(buckets.values()))


@dataclass
class FullReport:
    G_label: str
    rows: list[HGCountReport]
    total: int
    oracle_total: int | None

    def to_json(self, timings: bool = False) -> dict:
        return {
            "G": self.G_label,
            "rows": [r.to_json(timings) for r in self.rows],
            "total": self.total,
            "oracle_total": self.oracle_total,
        }


def full_report(G: FiniteGroup, catalog_of_order: Sequence[FiniteGroup] | None = None,
                aut_bound: int = DEFAULT_AUT_BOUND, effort_cap: int = DEFAULT_EFFORT_CAP,
                workers: int = 1) -> FullReport:
    """#E(G, N) for every N in the catalog of order |G|, and the total #E(G)."""
    if catalog_of_order is None:
        catalog_of_order = _catalog.groups_of_order(G.order)
    rows = [byott_count(G, N, aut_bound, effort_cap, workers) for N in catalog_of_order]
    total = sum(r.e_count for r in rows)
    oracle_total = None
    if G.order <= DIRECT_ORACLE_BOUND:
        oracle = direct_enumerate_E(G, catalog_of_order, effort_cap=effort_cap)
        by_label = {r.N_label: r.e_count for r in rows}
        if oracle.buckets != by_label:
            raise StrategyMismatch(f"direct enumeration {oracle.buckets} != Byott counts {by_label}")
        oracle_total = oracle.total
    return FullReport(G.label or "G", rows, total, oracle_total)
