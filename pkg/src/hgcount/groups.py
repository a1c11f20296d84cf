"""Concrete finite permutation groups and the searches built on them.

A :class:`FiniteGroup` stores its elements in canonical (lexicographic)
order, so index 0 is always the identity. Anything that needs speed works on
element indices through the lazily built multiplication table.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import asdict, dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, DegreeMismatch, HGError, NotASubgroup
from .perm import DEFAULT_CLOSURE_CAP, Permutation, PermSet, compose, generate_closure, inverse_order

DEFAULT_AUT_BOUND = 24
DEFAULT_ISO_BOUND = 720
DEFAULT_EFFORT_CAP = 2_000_000


class FiniteGroup:
    """A group given by its full, canonically ordered element set."""

    def __init__(self, carrier: PermSet, label: str | None = None):
        if not len(carrier) or carrier.elements[0] != tuple(range(carrier.degree)):
            raise NotASubgroup("carrier does not contain the identity")
        self.carrier = carrier
        self.label = label
        self._index = {p: i for i, p in enumerate(carrier.elements)}

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence[int]], label: str | None = None,
                        cap: int = DEFAULT_CLOSURE_CAP) -> "FiniteGroup":
        return cls(generate_closure(gens, cap), label)

    @classmethod
    def from_elements(cls, elems: Iterable[Sequence[int]], label: str | None = None,
                      degree: int | None = None) -> "FiniteGroup":
        """Wrap an explicit element list, checking closure exhaustively."""
        carrier = PermSet.from_iterable(elems, degree)
        if not carrier.is_closed():
            raise NotASubgroup(f"element set of size {len(carrier)} is not closed")
        return cls(carrier, label)

    def __repr__(self) -> str:
        name = self.label or "group"
        return f"<FiniteGroup {name} order={self.order} degree={self.degree}>"

    def __len__(self) -> int:
        return len(self.carrier)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.carrier.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._index

    @property
    def order(self) -> int:
        return len(self.carrier)

    @property
    def degree(self) -> int:
        return self.carrier.degree

    @property
    def elements(self) -> tuple[Permutation, ...]:
        return self.carrier.elements

    identity_index = 0

    def index(self, p: Sequence[int]) -> int:
        try:
            return self._index[tuple(p)]
        except KeyError:
            raise NotASubgroup(f"{p} is not an element of {self.label or 'the group'}") from None

    def element(self, i: int) -> Permutation:
        return self.carrier.elements[i]

    @cached_property
    def mul(self) -> list[list[int]]:
        """``mul[i][j]`` is the index of element i composed with element j."""
        idx = self._index
        elems = self.carrier.elements
        table = []
        for a in elems:
            get = a.__getitem__
            table.append([idx[tuple(map(get, b))] for b in elems])
        return table

    @cached_property
    def inv(self) -> list[int]:
        return [self._index[inverse_order(p)[0]] for p in self.carrier.elements]

    @cached_property
    def element_orders(self) -> list[int]:
        return [inverse_order(p)[1] for p in self.carrier.elements]

    @cached_property
    def conjugacy_classes(self) -> list[frozenset[int]]:
        mul, inv = self.mul, self.inv
        cls_of = [-1] * self.order
        classes = []
        for x in range(self.order):
            if cls_of[x] >= 0:
                continue
            cl = frozenset(mul[mul[g][x]][inv[g]] for g in range(self.order))
            for y in cl:
                cls_of[y] = len(classes)
            classes.append(cl)
        return classes

    @cached_property
    def class_size(self) -> list[int]:
        sizes = [0] * self.order
        for cl in self.conjugacy_classes:
            for y in cl:
                sizes[y] = len(cl)
        return sizes

    @cached_property
    def is_abelian(self) -> bool:
        mul = self.mul
        n = self.order
        return all(mul[i][j] == mul[j][i] for i in range(n) for j in range(i + 1, n))

    def closure_indices(self, gens: Iterable[int]) -> frozenset[int]:
        return _closure_idx(self.mul, gens)

    def subgroup(self, indices: Iterable[int], label: str | None = None) -> "FiniteGroup":
        """The subgroup generated by the given element indices."""
        sub = self.closure_indices(indices)
        return FiniteGroup(PermSet.from_iterable((self.element(i) for i in sub), self.degree), label)

    @cached_property
    def center(self) -> "FiniteGroup":
        mul = self.mul
        n = self.order
        z = [i for i in range(n) if all(mul[i][j] == mul[j][i] for j in range(n))]
        return self.subgroup(z, "Z")

    @cached_property
    def derived_subgroup(self) -> "FiniteGroup":
        mul, inv = self.mul, self.inv
        n = self.order
        comms = {mul[mul[inv[x]][inv[y]]][mul[x][y]] for x in range(n) for y in range(n)}
        return self.subgroup(comms, "[G,G]")

    @property
    def is_perfect(self) -> bool:
        return self.derived_subgroup.order == self.order

    @cached_property
    def fingerprint(self) -> "IsoFingerprint":
        return IsoFingerprint(
            order=self.order,
            element_order_histogram=tuple(sorted(Counter(self.element_orders).items())),
            center_order=self.center.order,
            derived_order=self.derived_subgroup.order,
            abelian=self.is_abelian,
            conj_class_sizes=tuple(sorted(len(c) for c in self.conjugacy_classes)),
        )

    @cached_property
    def exponent(self) -> int:
        from math import lcm
        out = 1
        for o in self.element_orders:
            out = lcm(out, o)
        return out

    @cached_property
    def generating_set(self) -> tuple[int, ...]:
        """Greedy small generating set, as element indices.

        Each step adds the element that enlarges the generated subgroup the
        most; ties go to the smaller index.
        """
        mul = self.mul
        gens: list[int] = []
        current = frozenset([0])
        while len(current) < self.order:
            best, best_sub = None, current
            for x in range(self.order):
                if x in current:
                    continue
                sub = _closure_idx(mul, gens + [x])
                if len(sub) > len(best_sub):
                    best, best_sub = x, sub
                    if len(sub) == self.order:
                        break
            gens.append(best)
            current = best_sub
        return tuple(gens)


def _closure_idx(mul: Sequence[Sequence[int]], gens: Iterable[int]) -> frozenset[int]:
    gens = [g for g in dict.fromkeys(gens) if g != 0]
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        row = mul[x]
        for g in gens:
            y = row[g]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


@dataclass(frozen=True)
class IsoFingerprint:
    order: int
    element_order_histogram: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int
    abelian: bool
    conj_class_sizes: tuple[int, ...]

    def to_json(self) -> dict:
        d = asdict(self)
        d["element_order_histogram"] = [list(p) for p in self.element_order_histogram]
        d["conj_class_sizes"] = list(self.conj_class_sizes)
        return d

    def hash_hex(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


class GroupHom:
    """Homomorphism stored as a full table of target indices.

    The homomorphism property is checked on every pair at construction.
    """

    def __init__(self, source: FiniteGroup, target: FiniteGroup, table: Sequence[int]):
        table = tuple(table)
        if len(table) != source.order:
            raise HGError("hom table length differs from source order")
        if table[0] != 0:
            raise HGError("hom does not send identity to identity")
        smul, tmul = source.mul, target.mul
        for x in range(source.order):
            tx, row = tmul[table[x]], smul[x]
            for y in range(source.order):
                if table[row[y]] != tx[table[y]]:
                    raise HGError("table is not a homomorphism")
        self.source = source
        self.target = target
        self.table = table

    def __call__(self, p: Sequence[int]) -> Permutation:
        return self.target.element(self.table[self.source.index(p)])

    @property
    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.table)) == self.source.order

    def kernel_order(self) -> int:
        return self.table.count(0)


@dataclass(frozen=True)
class GroupAction:
    """``actor`` acting on ``target`` by automorphisms.

    ``action`` maps into the group of automorphism permutations (of target's
    element indices) generated by the images of actor's generators.
    """

    actor: FiniteGroup
    target: FiniteGroup
    action: GroupHom

    @classmethod
    def by_generator_images(cls, actor: FiniteGroup, target: FiniteGroup,
                            gens: Sequence[Sequence[int]], images: Sequence[Sequence[int]]) -> "GroupAction":
        if len(gens) != len(images):
            raise HGError("one automorphism is needed per actor generator")
        n = target.order
        for im in images:
            if not is_automorphism(target, im):
                raise HGError("action image is not an automorphism of the target")
        auts = FiniteGroup.from_generators([tuple(im) for im in images] or [tuple(range(n))])
        gen_idx = [actor.index(g) for g in gens]
        img_idx = [auts.index(tuple(im)) for im in images]
        if _closure_idx(actor.mul, gen_idx) != frozenset(range(actor.order)):
            raise HGError("listed actor elements do not generate the actor")
        phi = _extend(actor.mul, gen_idx, img_idx, auts.mul)
        if phi is None:
            raise HGError("generator images do not define an action (not a homomorphism)")
        return cls(actor, target, GroupHom(actor, auts, [phi[i] for i in range(actor.order)]))

    @classmethod
    def trivial(cls, actor: FiniteGroup, target: FiniteGroup) -> "GroupAction":
        gens = [actor.element(i) for i in actor.generating_set] or [actor.element(0)]
        ident = tuple(range(target.order))
        return cls.by_generator_images(actor, target, gens, [ident] * len(gens))

    @classmethod
    def by_conjugation(cls, actor: FiniteGroup, target: FiniteGroup,
                       gens: Sequence[Sequence[int]], conjugators: Sequence[Sequence[int]]) -> "GroupAction":
        """Actor generator k acts as x ↦ c x c⁻¹ with c = ``conjugators[k]``.

        Each conjugator is a permutation of target's points normalizing it.
        """
        images = [conjugation_automorphism(target, c) for c in conjugators]
        return cls.by_generator_images(actor, target, gens, images)

    def automorphism(self, actor_index: int) -> Permutation:
        return self.action.target.element(self.action.table[actor_index])


def is_automorphism(g: FiniteGroup, perm: Sequence[int]) -> bool:
    n = g.order
    if sorted(perm) != list(range(n)):
        return False
    mul = g.mul
    return all(perm[mul[x][y]] == mul[perm[x]][perm[y]] for x in range(n) for y in range(n))


def conjugation_automorphism(g: FiniteGroup, c: Sequence[int]) -> Permutation:
    """x ↦ c x c⁻¹ as a permutation of g's element indices."""
    c = tuple(c)
    if len(c) != g.degree:
        raise DegreeMismatch("conjugator degree differs from group degree")
    c_inv = inverse_order(c)[0]
    return Permutation._trusted(g.index(compose(compose(c, x), c_inv)) for x in g.elements)


def structure_invariants(g: FiniteGroup) -> dict:
    return {
        "fingerprint": g.fingerprint,
        "center": g.center,
        "derived_subgroup": g.derived_subgroup,
        "is_perfect": g.is_perfect,
    }


def centralizer(g: FiniteGroup, x: Sequence[int]) -> FiniteGroup:
    """Elements of g commuting with x; works without a multiplication table."""
    g.index(x)
    x = tuple(x)
    elems = [y for y in g if compose(y, x) == compose(x, y)]
    return FiniteGroup(PermSet.from_iterable(elems, g.degree), "Cent")


def normal_subgroups(g: FiniteGroup) -> list[FiniteGroup]:
    """All normal subgroups, found as joins of normal closures of classes."""
    mul = g.mul
    classes = g.conjugacy_classes
    found = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for k in frontier:
            for cl in classes:
                if cl <= k:
                    continue
                # a union of classes generates a normal subgroup
                j = _closure_idx(mul, k | cl)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    subs = sorted(found, key=lambda s: (len(s), sorted(s)))
    return [FiniteGroup(PermSet.from_iterable((g.element(i) for i in s), g.degree)) for s in subs]


def direct_product(a: FiniteGroup, b: FiniteGroup, cap: int = DEFAULT_CLOSURE_CAP,
                   label: str | None = None) -> FiniteGroup:
    """a × b acting on the disjoint union of their point sets."""
    if a.order * b.order > cap:
        raise CapExceeded(f"direct product of order {a.order * b.order} exceeds cap {cap}")
    da = a.degree
    elems = [tuple(x) + tuple(da + i for i in y) for x in a for y in b]
    if label is None and a.label and b.label:
        label = f"{a.label}x{b.label}"
    return FiniteGroup(PermSet.from_iterable(elems), label)


def semidirect_product(a: FiniteGroup, b: FiniteGroup, act: GroupAction,
                       cap: int = DEFAULT_CLOSURE_CAP, label: str | None = None) -> FiniteGroup:
    """a ⋊ b with (x, s)(y, t) = (x · s(y), s t), via its left regular representation."""
    if act.actor is not b or act.target is not a:
        if act.actor.carrier != b.carrier or act.target.carrier != a.carrier:
            raise HGError("action does not match the given factors")
    na, nb = a.order, b.order
    n = na * nb
    if n > cap:
        raise CapExceeded(f"semidirect product of order {n} exceeds cap {cap}")
    amul, bmul = a.mul, b.mul
    auts = [act.automorphism(j) for j in range(nb)]
    # pair (x, s) has point index x * nb + s
    elems = []
    for x in range(na):
        arow = amul[x]
        for s in range(nb):
            phi, brow = auts[s], bmul[s]
            elems.append(tuple(arow[phi[y]] * nb + brow[t] for y in range(na) for t in range(nb)))
    return FiniteGroup(PermSet.from_iterable(elems, n), label)


def _extend(smul, gens, imgs, tmul):
    """Extend generator images to a map on the generated subgroup.

    Walks the Cayley graph from the identity; returns the map as a dict, or
    None if two paths disagree (no homomorphism with these images).
    """
    phi = {0: 0}
    queue = [0]
    pairs = list(zip(gens, imgs))
    for x in queue:
        px = tmul[phi[x]]
        row = smul[x]
        for s, t in pairs:
            y = row[s]
            v = px[t]
            w = phi.get(y)
            if w is None:
                phi[y] = v
                queue.append(y)
            elif w != v:
                return None
    return phi


class _Effort:
    def __init__(self, cap: int, what: str, stage: str):
        self.left = cap
        self.cap = cap
        self.what = what
        self.stage = stage

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise CapExceeded(f"{self.what} exceeded effort cap {self.cap}", stage=self.stage)


def _search_homs(src: FiniteGroup, tgt: FiniteGroup, candidates: Sequence[Sequence[int]],
                 *, bijective: bool, effort: _Effort) -> Iterator[dict]:
    """Backtrack over images of ``src.generating_set``; yield full maps."""
    gens = src.generating_set
    smul, tmul = src.mul, tgt.mul
    n = src.order
    if not gens:
        yield {0: 0}
        return
    imgs: list[int] = []

    def rec(depth: int):
        for c in candidates[depth]:
            effort.tick()
            imgs.append(c)
            phi = _extend(smul, gens[: depth + 1], imgs, tmul)
            if phi is not None and (not bijective or len(set(phi.values())) == len(phi)):
                if depth + 1 == len(gens):
                    if not bijective or len(phi) == n == tgt.order:
                        yield phi
                else:
                    yield from rec(depth + 1)
            imgs.pop()

    yield from rec(0)


def _iso_candidates(src: FiniteGroup, tgt: FiniteGroup) -> list[list[int]]:
    keyed: dict[tuple[int, int], list[int]] = {}
    for y in range(tgt.order):
        keyed.setdefault((tgt.element_orders[y], tgt.class_size[y]), []).append(y)
    return [keyed.get((src.element_orders[s], src.class_size[s]), []) for s in src.generating_set]


def automorphism_group(g: FiniteGroup, bound: int = DEFAULT_AUT_BOUND,
                       effort_cap: int = DEFAULT_EFFORT_CAP) -> tuple[FiniteGroup, list[Permutation]]:
    """All automorphisms of ``g`` as permutations of its element indices.

    Returns the automorphism group and a small generating set for it.
    """
    if g.order > bound:
        raise CapExceeded(f"automorphism search for order {g.order} exceeds bound {bound}", stage="aut")
    effort = _Effort(effort_cap, "automorphism search", "aut")
    n = g.order
    auts = [tuple(phi[i] for i in range(n))
            for phi in _search_homs(g, g, _iso_candidates(g, g), bijective=True, effort=effort)]
    label = f"Aut({g.label})" if g.label else None
    aut = FiniteGroup(PermSet.from_iterable(auts, n), label)
    gens = [aut.element(i) for i in aut.generating_set] if aut.order <= 2000 else list(aut.elements[1:])
    return aut, gens


def isomorphism_test(a: FiniteGroup, b: FiniteGroup, bound: int = DEFAULT_ISO_BOUND,
                     effort_cap: int = DEFAULT_EFFORT_CAP) -> GroupHom | None:
    """Return an isomorphism a → b, or None when the groups differ."""
    if a.order != b.order:
        return None
    if a.order > bound:
        raise CapExceeded(f"isomorphism test for order {a.order} exceeds bound {bound}", stage="aut")
    if a.fingerprint != b.fingerprint:
        return None
    effort = _Effort(effort_cap, "isomorphism search", "aut")
    for phi in _search_homs(a, b, _iso_candidates(a, b), bijective=True, effort=effort):
        return GroupHom(a, b, [phi[i] for i in range(a.order)])
    return None


def homomorphisms(src: FiniteGroup, tgt: FiniteGroup,
                  effort_cap: int = DEFAULT_EFFORT_CAP) -> list[GroupHom]:
    """All homomorphisms src → tgt, in canonical order of their tables."""
    cands = []
    for s in src.generating_set:
        o = src.element_orders[s]
        cands.append([y for y in range(tgt.order) if o % tgt.element_orders[y] == 0])
    effort = _Effort(effort_cap, "homomorphism search", "enumerate")
    tables = sorted(tuple(phi[i] for i in range(src.order))
                    for phi in _search_homs(src, tgt, cands, bijective=False, effort=effort))
    return [GroupHom(src, tgt, t) for t in tables]
