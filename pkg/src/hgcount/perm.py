"""Permutations of {0..d-1}, closure of generator sets, and the regularity test.

Points are 0-based internally and 1-based in cycle notation. Composition
applies the right factor first: ``compose(a, b)(x) == a(b(x))``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceeded, DegreeMismatch, NotASubgroup, ParseError

DEFAULT_CLOSURE_CAP = 20000

_CYCLES_RE = re.compile(r"^\s*(?:\(\s*[0-9,\s]*\)\s*)*$")
_ONE_CYCLE_RE = re.compile(r"\(([^)]*)\)")


class Permutation(tuple):
    """Immutable bijection stored as its image tuple.

    Plain tuples with the same entries compare and hash equal, so hot loops
    elsewhere may use bare tuples and mix them freely with instances of this
    class.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(images)
        d = len(images)
        if d < 1:
            raise ParseError("permutation degree must be at least 1")
        if sorted(images) != list(range(d)):
            raise ParseError(f"not a bijection on {d} points: {images}")
        return super().__new__(cls, images)

    @classmethod
    def _trusted(cls, images: Iterable[int]) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise ParseError("permutation degree must be at least 1")
        return cls._trusted(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other):
        if isinstance(other, tuple):
            return compose(self, other)
        return NotImplemented

    def __call__(self, point: int) -> int:
        return self[point]

    def inverse(self) -> "Permutation":
        return inverse_order(self)[0]

    def order(self) -> int:
        return inverse_order(self)[1]

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its least point."""
        return _cycles(self)

    def cycle_string(self) -> str:
        cyc = _cycles(self)
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cyc)

    def __str__(self) -> str:
        return self.cycle_string()

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={len(self)})"


def _cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = p[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    """Sorted lengths of the nontrivial cycles."""
    return tuple(sorted(len(c) for c in _cycles(p)))


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1 2)(3 4)"``.

    Commas are accepted as separators inside a cycle. The empty string and
    ``"()"`` both denote the identity.
    """
    if degree < 1:
        raise ParseError(f"degree must be positive, got {degree}")
    if not _CYCLES_RE.match(text):
        raise ParseError(f"malformed cycle notation: {text!r}")
    images = list(range(degree))
    used: set[int] = set()
    for body in _ONE_CYCLE_RE.findall(text):
        tokens = body.replace(",", " ").split()
        pts = []
        for tok in tokens:
            label = int(tok)
            if label < 1 or label > degree:
                raise ParseError(f"point {label} outside 1..{degree} in {text!r}")
            if label in used:
                raise ParseError(f"point {label} repeated in {text!r}")
            used.add(label)
            pts.append(label - 1)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return Permutation._trusted(images)


def compose(a: Sequence[int], b: Sequence[int]) -> Permutation:
    """Return a∘b, i.e. the map x ↦ a(b(x))."""
    if len(a) != len(b):
        raise DegreeMismatch(f"cannot compose degrees {len(a)} and {len(b)}")
    return Permutation._trusted(map(a.__getitem__, b))


def inverse_order(p: Sequence[int]) -> tuple[Permutation, int]:
    """Return ``(p⁻¹, order of p)``; the order is the lcm of cycle lengths."""
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    order = 1
    for c in _cycles(p):
        order = math.lcm(order, len(c))
    return Permutation._trusted(inv), order


@dataclass(frozen=True)
class PermSet:
    """Deduplicated, lexicographically sorted set of same-degree permutations."""

    degree: int
    elements: tuple[Permutation, ...]

    @classmethod
    def from_iterable(cls, perms: Iterable[Sequence[int]], degree: int | None = None) -> "PermSet":
        elems = sorted(set(tuple(p) for p in perms))
        if degree is None:
            if not elems:
                raise ParseError("empty PermSet needs an explicit degree")
            degree = len(elems[0])
        for e in elems:
            if len(e) != degree:
                raise DegreeMismatch(f"mixed degrees {len(e)} and {degree} in PermSet")
        return cls(degree, tuple(Permutation._trusted(e) for e in elems))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._members

    @property
    def _members(self) -> frozenset:
        cached = self.__dict__.get("_member_cache")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_member_cache", cached)
        return cached

    def is_closed(self) -> bool:
        members = self._members
        return all(compose(x, y) in members for x in self.elements for y in self.elements)


def generate_closure(gens: Sequence[Sequence[int]], cap: int = DEFAULT_CLOSURE_CAP) -> PermSet:
    """All elements of the group generated by ``gens``, found breadth first.

    Raises :class:`CapExceeded` once more than ``cap`` elements appear.
    """
    gens = [tuple(g) for g in gens]
    if not gens:
        raise ParseError("generate_closure needs at least one generator")
    d = len(gens[0])
    for g in gens:
        if len(g) != d:
            raise DegreeMismatch("generators have different degrees")
    ident = tuple(range(d))
    gens = [g for g in dict.fromkeys(gens) if g != ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(map(x.__getitem__, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"closure exceeded {cap} elements")
        frontier = nxt
    return PermSet.from_iterable(seen, d)


class Regularity(enum.Enum):
    REGULAR = "regular"
    TRANSITIVE_NOT_FREE = "transitive_not_free"
    FREE_NOT_TRANSITIVE = "free_not_transitive"
    NEITHER = "neither"


def regularity_check(sub: PermSet) -> Regularity:
    """Classify how a permutation group acts on its points.

    Two routes are computed: the evaluation map η ↦ η(0), and the pair
    (single orbit, no fixed points for non-identity elements). When
    ``|sub| == degree`` the routes must agree.
    """
    if not sub.is_closed():
        raise NotASubgroup("set is not closed under composition")
    d = sub.degree
    ident = tuple(range(d))

    xi_images = {p[0] for p in sub}
    xi_bijective = len(sub) == d and len(xi_images) == d

    orbit = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for p in sub:
            y = p[x]
            if y not in orbit:
                orbit.add(y)
                stack.append(y)
    transitive = len(orbit) == d
    free = all(p[i] != i for p in sub if p != ident for i in range(d))

    if len(sub) == d and xi_bijective != (transitive and free):
        raise AssertionError("regularity routes disagree")
    if transitive and free:
        return Regularity.REGULAR
    if transitive:
        return Regularity.TRANSITIVE_NOT_FREE
    if free:
        return Regularity.FREE_NOT_TRANSITIVE
    return Regularity.NEITHER
