"""Named groups, the bundled catalog of small orders, and group-spec parsing.

Group spec grammar::

    S<n> | A<n> | C<n> | D<n> | Q8     named constructors (D<n> has order 2n)
    <spec>x<spec>x...                  direct product
    gens:<degree>:<cycles>;<cycles>    explicit generators, 1-based cycles
    order:<n>                          every catalogued group of order n
    <catalog label>                    e.g. SL(2,3), C3:Q8

Catalog file format: UTF-8 text, one JSON object per line with keys
``label``, ``degree``, ``generators`` (cycle strings), ``expected_order`` and
``expected_fingerprint_hash``. Blank lines and lines starting with ``#`` are
ignored. The path can be overridden with ``HG_CATALOG_PATH``.
"""

from __future__ import annotations

import itertools
import json
import os
import re
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import CatalogError, HGError, ParseError
from .groups import FiniteGroup, direct_product, isomorphism_test
from .perm import DEFAULT_CLOSURE_CAP, Permutation, parse_cycles

CATALOG_ENV = "HG_CATALOG_PATH"
RECORD_KEYS = ("label", "degree", "generators", "expected_order", "expected_fingerprint_hash")

_NAMED = re.compile(r"^([SACD])(\d+)$")


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise CatalogError(f"S{n}: degree must be positive")
    if n == 1:
        return FiniteGroup.from_generators([Permutation.identity(1)], "S1")
    gens = [parse_cycles("(1 2)", n)]
    if n > 2:
        gens.insert(0, parse_cycles("(" + " ".join(map(str, range(1, n + 1))) + ")", n))
    return FiniteGroup.from_generators(gens, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise CatalogError(f"A{n}: degree must be positive")
    if n < 3:
        return FiniteGroup.from_generators([Permutation.identity(n)], f"A{n}")
    gens = [parse_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)]
    return FiniteGroup.from_generators(gens, f"A{n}")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise CatalogError(f"C{n}: order must be positive")
    if n == 1:
        return FiniteGroup.from_generators([Permutation.identity(1)], "C1")
    return FiniteGroup.from_generators([Permutation(list(range(1, n)) + [0])], f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n."""
    if n < 3:
        raise CatalogError(f"D{n}: need n >= 3 (order 2n)")
    rot = Permutation(list(range(1, n)) + [0])
    refl = Permutation([n - 1 - i for i in range(n)])
    return FiniteGroup.from_generators([rot, refl], f"D{n}")


def quaternion() -> FiniteGroup:
    return FiniteGroup.from_generators(
        [parse_cycles("(1 2 3 4)(5 6 7 8)", 8), parse_cycles("(1 5 3 7)(2 8 4 6)", 8)], "Q8")


def catalog_path() -> Path:
    override = os.environ.get(CATALOG_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("hgcount") / "data" / "catalog.jsonl"))


def _parse_record(line: str, lineno: int) -> dict:
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"line {lineno}: invalid JSON ({exc})") from None
    if not isinstance(rec, dict) or tuple(rec) != RECORD_KEYS:
        raise CatalogError(f"line {lineno}: keys must be exactly {list(RECORD_KEYS)} in that order")
    return rec


def build_record(rec: dict, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    label = rec["label"]
    try:
        gens = [parse_cycles(c, rec["degree"]) for c in rec["generators"]]
    except ParseError as exc:
        raise CatalogError(f"{label}: bad generator ({exc})") from None
    if not gens:
        raise CatalogError(f"{label}: no generators")
    g = FiniteGroup.from_generators(gens, label, cap)
    if g.order != rec["expected_order"]:
        raise CatalogError(f"{label}: order {g.order}, catalog says {rec['expected_order']}")
    fp = g.fingerprint.hash_hex()
    if fp != rec["expected_fingerprint_hash"]:
        raise CatalogError(f"{label}: fingerprint {fp}, catalog says {rec['expected_fingerprint_hash']}")
    return g


@lru_cache(maxsize=4)
def _load(path: str) -> tuple[dict, ...]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from None
    records = []
    labels = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        rec = _parse_record(line, lineno)
        if rec["label"] in labels:
            raise CatalogError(f"line {lineno}: duplicate label {rec['label']}")
        labels.add(rec["label"])
        records.append(rec)
    return tuple(records)


def records() -> tuple[dict, ...]:
    return _load(str(catalog_path()))


@lru_cache(maxsize=64)
def _group_for(path: str, label: str) -> FiniteGroup:
    for rec in _load(path):
        if rec["label"] == label:
            return build_record(rec)
    raise CatalogError(f"unknown catalog label {label}")


@lru_cache(maxsize=16)
def _order_list(path: str, order: int) -> tuple[FiniteGroup, ...]:
    groups = tuple(_group_for(path, r["label"]) for r in _load(path) if r["expected_order"] == order)
    for a, b in itertools.combinations(groups, 2):
        if isomorphism_test(a, b) is not None:
            raise CatalogError(f"order {order}: {a.label} and {b.label} are isomorphic")
    return groups


def catalog_orders() -> list[int]:
    return sorted({r["expected_order"] for r in records()})


def groups_of_order(order: int) -> list[FiniteGroup]:
    """All catalogued groups of ``order``, validated pairwise non-isomorphic."""
    groups = _order_list(str(catalog_path()), order)
    if not groups:
        raise CatalogError(f"no catalog for order {order} (have {catalog_orders()})")
    return list(groups)


def lookup(label: str) -> FiniteGroup:
    return _group_for(str(catalog_path()), label)


def identify(g: FiniteGroup) -> str | None:
    """Catalog label of the unique catalogued group isomorphic to ``g``."""
    try:
        candidates = groups_of_order(g.order)
    except CatalogError:
        return None
    for c in candidates:
        if isomorphism_test(g, c) is not None:
            return c.label
    return None


def catalog(spec: str, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup | list[FiniteGroup]:
    """Resolve a group spec; ``order:<n>`` gives a list, anything else one group."""
    spec = spec.strip()
    if spec.startswith("order:"):
        try:
            n = int(spec[len("order:"):])
        except ValueError:
            raise ParseError(f"bad order in {spec!r}", spec=spec) from None
        return groups_of_order(n)
    return resolve(spec, cap)


def resolve(spec: str, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    spec = spec.strip()
    try:
        return _resolve(spec, cap)
    except HGError as exc:
        if exc.spec is None:
            exc.spec = spec
        raise


def _resolve(spec: str, cap: int) -> FiniteGroup:
    if not spec:
        raise ParseError("empty group spec")
    if spec.startswith("gens:"):
        return _from_gens(spec, cap)
    if any(r["label"] == spec for r in records()):
        return lookup(spec)
    if spec == "Q8":
        return quaternion()
    m = _NAMED.match(spec)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"S": symmetric, "A": alternating, "C": cyclic, "D": dihedral}[kind](n)
    if "x" in spec:
        factors = spec.split("x")
        if any(not f for f in factors):
            raise ParseError(f"empty factor in {spec!r}")
        g = _resolve(factors[0], cap)
        for f in factors[1:]:
            g = direct_product(g, _resolve(f, cap), cap)
        g.label = spec
        return g
    raise CatalogError(f"unknown group name {spec!r}")


def _from_gens(spec: str, cap: int) -> FiniteGroup:
    parts = spec.split(":", 2)
    if len(parts) != 3:
        raise ParseError(f"expected gens:<degree>:<cycles;...>, got {spec!r}")
    try:
        degree = int(parts[1])
    except ValueError:
        raise ParseError(f"bad degree in {spec!r}") from None
    gens = [parse_cycles(c, degree) for c in parts[2].split(";")]
    return FiniteGroup.from_generators(gens, spec, cap)
