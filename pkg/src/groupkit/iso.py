"""Isomorphism testing, automorphism enumeration, and invariant fingerprints."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Group, element_order, exponent, is_abelian
from .errors import OrderBound
from .subgroups import Subgroup, center, commutator, derived_subgroup, whole_subgroup

DEFAULT_AUTOMORPHISM_CAP = 64


@dataclass(frozen=True)
class Fingerprint:
    """Cheap isomorphism invariants; equality is necessary, never sufficient."""

    order: int
    order_histogram: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int
    exponent: int
    abelian: bool
    derived_series_length: int


@dataclass(frozen=True)
class Iso:
    """An index map witnessing source ≅ target."""

    source: Group
    target: Group
    map: tuple[int, ...]


def fingerprint(group: Group) -> Fingerprint:
    cached = group._cache.get("fingerprint")
    if cached is None:
        histogram: dict[int, int] = {}
        for x in range(group.order):
            k = element_order(group, x)
            histogram[k] = histogram.get(k, 0) + 1
        series_len = 0
        current = whole_subgroup(group)
        while True:
            nxt = commutator(group, current, current)
            if nxt.bits == current.bits:
                break
            series_len += 1
            current = nxt
        cached = Fingerprint(
            order=group.order,
            order_histogram=tuple(sorted(histogram.items())),
            center_order=center(group).order,
            derived_order=derived_subgroup(group).order,
            exponent=exponent(group),
            abelian=is_abelian(group),
            derived_series_length=series_len,
        )
        group._cache["fingerprint"] = cached
    return cached


def is_isomorphism(source: Group, target: Group, mapping) -> bool:
    """Full check: bijection fixing 0 with map[x*y] = map[x]*map[y] everywhere."""
    n = source.order
    if target.order != n or len(mapping) != n:
        return False
    m = np.asarray(mapping, dtype=np.int64)
    if m[0] != 0 or len(np.unique(m)) != n:
        return False
    src = np.asarray(source.table, dtype=np.int64)
    tgt = np.asarray(target.table, dtype=np.int64)
    return bool(np.array_equal(m[src], tgt[np.ix_(m, m)]))


def _element_orders(group: Group) -> list[int]:
    cached = group._cache.get("element_orders")
    if cached is None:
        cached = [element_order(group, x) for x in range(group.order)]
        group._cache["element_orders"] = cached
    return cached


def _search_isomorphisms(source: Group, target: Group, *, find_all: bool) -> list[tuple[int, ...]]:
    """Backtracking generator-image search; yields maps in lexicographic order.

    The next generator is always the least element outside the current span
    and its candidate images are tried ascending, so the first solution found
    is the lexicographically least map array.
    """
    n = source.order
    stab = source.table
    ttab = target.table
    sorder = _element_orders(source)
    torder = _element_orders(target)
    by_order: dict[int, list[int]] = {}
    for t in range(n):
        by_order.setdefault(torder[t], []).append(t)
    for k in set(sorder):
        if len(by_order.get(k, ())) != sorder.count(k):
            return []

    mapping = [-1] * n
    mapping[0] = 0
    used = 1
    span = [0]
    results: list[tuple[int, ...]] = []

    def try_extend(s: int, t: int) -> list[int] | None:
        nonlocal used
        added: list[int] = []
        pending = [(s, t)]
        ok = True
        while pending:
            x, y = pending.pop()
            mx = mapping[x]
            if mx != -1:
                if mx != y:
                    ok = False
                    break
                continue
            if (used >> y) & 1:
                ok = False
                break
            mapping[x] = y
            used |= 1 << y
            span.append(x)
            added.append(x)
            xrow, yrow = stab[x], ttab[y]
            for e in span:
                me = mapping[e]
                pending.append((xrow[e], yrow[me]))
                pending.append((stab[e][x], ttab[me][y]))
        if ok:
            return added
        for x in reversed(added):
            used &= ~(1 << mapping[x])
            mapping[x] = -1
            span.pop()
        return None

    def undo(added: list[int]) -> None:
        nonlocal used
        for x in reversed(added):
            used &= ~(1 << mapping[x])
            mapping[x] = -1
            span.pop()

    def dfs() -> bool:
        s = -1
        for i in range(1, n):
            if mapping[i] == -1:
                s = i
                break
        if s == -1:
            results.append(tuple(mapping))
            return not find_all
        for t in by_order[sorder[s]]:
            if (used >> t) & 1:
                continue
            added = try_extend(s, t)
            if added is None:
                continue
            done = dfs()
            undo(added)
            if done:
                return True
        return False

    dfs()
    return results


def find_isomorphism(source: Group, target: Group) -> Iso | None:
    """An isomorphism witness, or None.

    Deterministic: when isomorphisms exist the one with the lexicographically
    least map array is returned.
    """
    if source.order != target.order:
        return None
    if fingerprint(source) != fingerprint(target):
        return None
    found = _search_isomorphisms(source, target, find_all=False)
    if not found:
        return None
    return Iso(source, target, found[0])


def automorphisms(group: Group, *, cap: int = DEFAULT_AUTOMORPHISM_CAP) -> list[Iso]:
    """All isomorphisms G -> G, ordered by map array."""
    if group.order > cap:
        raise OrderBound(group.order, cap, "automorphism-search order")
    cached = group._cache.get("automorphisms")
    if cached is None:
        cached = [
            Iso(group, group, m)
            for m in _search_isomorphisms(group, group, find_all=True)
        ]
        group._cache["automorphisms"] = cached
    return list(cached)


class IsoCache:
    """Memoized isomorphism lookups keyed by multiplication tables.

    Extracted subgroups and quotients frequently repeat the same table, so
    callers doing bulk premise enumeration share one cache per run.
    """

    def __init__(self):
        self._maps: dict[tuple, tuple[int, ...] | None] = {}

    def iso_map(self, source: Group, target: Group) -> tuple[int, ...] | None:
        if source.order != target.order:
            return None
        key = (source.table, target.table)
        if key in self._maps:
            return self._maps[key]
        iso = find_isomorphism(source, target)
        out = iso.map if iso is not None else None
        self._maps[key] = out
        return out

    def isomorphic(self, source: Group, target: Group) -> bool:
        return self.iso_map(source, target) is not None


def subgroup_iso_classes(group: Group, subs: list[Subgroup], cache: IsoCache) -> list[int]:
    """Partition extracted subgroups into isomorphism classes.

    Returns one class id per input subgroup; ids are indices into the list of
    first representatives, so they are deterministic for a fixed input order.
    """
    from .subgroups import subgroup_as_group

    reps: list[Group] = []
    out = []
    for sub in subs:
        extracted, _ = subgroup_as_group(sub)
        assigned = -1
        for idx, rep in enumerate(reps):
            if cache.isomorphic(extracted, rep):
                assigned = idx
                break
        if assigned == -1:
            reps.append(extracted)
            assigned = len(reps) - 1
        out.append(assigned)
    return out
