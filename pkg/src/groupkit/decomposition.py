"""Internal direct products, complements, and indecomposable decompositions."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from .core import Group, element_order, exponent, is_abelian
from .errors import NotASplitting, NotNormal, PreconditionFailed
from .iso import IsoCache
from .subgroups import (
    DEFAULT_LATTICE_CAP,
    Subgroup,
    all_subgroups,
    bits_of,
    is_normal_bits,
    normal_subgroups,
    set_product,
    subgroup_as_group,
    trivial_subgroup,
    whole_subgroup,
)

log = logging.getLogger(__name__)

# Inputs where the constructive complement algorithm had to fall back to a
# brute-force search; stays empty unless its correctness argument fails.
CYCLIC_COMPLEMENT_FALLBACKS: list[tuple[int, tuple[int, ...]]] = []


@dataclass(frozen=True)
class Splitting:
    """A decomposition of a parent group into internal direct factors."""

    parent: Group
    factors: tuple[Subgroup, ...]


def _join_normals(group: Group, factors) -> Subgroup:
    """Join of normal subgroups: iterated product sets (each one a subgroup)."""
    acc = trivial_subgroup(group)
    for f in factors:
        bits, _ = set_product(group, acc, f)
        acc = Subgroup(group, bits)
    return acc


def is_internal_direct(group: Group, factors) -> bool:
    """True iff the factors decompose the group as an internal direct product.

    Requires every factor normal, factor orders multiplying to |G|, each
    factor meeting the join of the others trivially, and (a consequence that
    is re-checked) elementwise commuting between distinct factors.
    """
    factors = list(factors)
    prod = 1
    for f in factors:
        if not is_normal_bits(group, f.bits):
            return False
        prod *= f.order
    if prod != group.order:
        return False
    for i, f in enumerate(factors):
        others = _join_normals(group, factors[:i] + factors[i + 1:])
        if f.bits & others.bits != 1:
            return False
    if _join_normals(group, factors).order != group.order:
        return False
    table = group.table
    for i, f in enumerate(factors):
        fm = f.members()
        for g in factors[i + 1:]:
            gm = g.members()
            for x in fm:
                row = table[x]
                if any(row[y] != table[y][x] for y in gm):
                    return False
    return True


def direct_complements(group: Group, normal: Subgroup, *,
                       cap: int = DEFAULT_LATTICE_CAP) -> list[Subgroup]:
    """All normal K with N∩K = 1 and |N|·|K| = |G|, canonically ordered.

    Empty iff N is not a direct factor.  Normality of both sides plus the
    size and intersection conditions already force an internal direct
    product, so no further checks are needed per candidate.
    """
    if not is_normal_bits(group, normal.bits):
        raise NotNormal("complement search requires a normal subgroup")
    key = ("complements", normal.bits)
    cached = group._cache.get(key)
    if cached is None:
        want = group.order // normal.order if normal.order else 0
        cached = [
            k
            for k in normal_subgroups(group, cap=cap)
            if normal.order * k.order == group.order and normal.bits & k.bits == 1
        ]
        assert all(k.order == want for k in cached)
        group._cache[key] = cached
    return list(cached)


def all_direct_splittings(group: Group, *,
                          cap: int = DEFAULT_LATTICE_CAP) -> list[tuple[Subgroup, Subgroup]]:
    """Every unordered internal direct pair {H, K}, including {1, G}."""
    cached = group._cache.get("splittings")
    if cached is None:
        normals = normal_subgroups(group, cap=cap)
        out = []
        for i, h in enumerate(normals):
            for k in normals[i:]:
                if h.order * k.order == group.order and h.bits & k.bits == 1:
                    out.append((h, k))
        cached = out
        group._cache["splittings"] = cached
    return list(cached)


def _first_nontrivial_splitting(group: Group, *, cap: int,
                                rng: random.Random | None) -> tuple[Subgroup, Subgroup] | None:
    """First pair of all_direct_splittings with both sides nontrivial.

    Scans normals lazily instead of materializing every splitting; with an
    rng the scan order (and hence which Remak decomposition is found) is
    shuffled, which must not change factor isomorphism classes.
    """
    normals = normal_subgroups(group, cap=cap)
    candidates = [n for n in normals if 1 < n.order < group.order]
    if rng is not None:
        candidates = list(candidates)
        rng.shuffle(candidates)
    for n in candidates:
        comps = [
            k for k in candidates
            if n.order * k.order == group.order and n.bits & k.bits == 1
        ]
        if comps:
            if rng is not None:
                return n, rng.choice(comps)
            return n, comps[0]
    return None


def remak_decomposition(group: Group, *, cap: int = DEFAULT_LATTICE_CAP,
                        rng: random.Random | None = None) -> Splitting:
    """Split recursively into indecomposable internal direct factors."""
    if rng is None:
        cached = group._cache.get("remak")
        if cached is not None:
            return cached

    def recurse(g: Group) -> list[Subgroup]:
        pair = _first_nontrivial_splitting(g, cap=cap, rng=rng)
        if pair is None:
            return [whole_subgroup(g)]
        out = []
        for part in pair:
            part_group, members = subgroup_as_group(part)
            for f in recurse(part_group):
                out.append(Subgroup(g, bits_of(members[i] for i in f.members())))
        return out

    factors = sorted(recurse(group), key=Subgroup.sort_key)
    splitting = Splitting(group, tuple(factors))
    if rng is None:
        group._cache["remak"] = splitting
    return splitting


def _nontrivial_factor_groups(group: Group, *, cap: int) -> list[Group]:
    out = []
    for f in remak_decomposition(group, cap=cap).factors:
        if f.order > 1:
            out.append(subgroup_as_group(f)[0])
    return out


def is_coprime(group1: Group, group2: Group, *, cap: int = DEFAULT_LATTICE_CAP,
               cache: IsoCache | None = None) -> bool:
    """True iff no nontrivial direct factor of one is isomorphic to one of the other.

    Implemented over indecomposable Remak factors; by uniqueness of the
    decomposition this is equivalent to quantifying over all direct factors.
    """
    cache = cache or IsoCache()
    for f1 in _nontrivial_factor_groups(group1, cap=cap):
        for f2 in _nontrivial_factor_groups(group2, cap=cap):
            if cache.isomorphic(f1, f2):
                return False
    return True


@dataclass(frozen=True)
class CoprimeViolation:
    """Falsification record: coprime direct factors failed to combine."""

    parent: Group
    a: Subgroup
    b: Subgroup
    reason: str


def combine_coprime_factors(group: Group, a: Subgroup, b: Subgroup, *,
                            cap: int = DEFAULT_LATTICE_CAP,
                            cache: IsoCache | None = None) -> Subgroup | CoprimeViolation:
    """Verify that coprime direct factors intersect trivially and combine.

    Returns the direct factor A·B, or a violation record if a check fails
    (which would falsify the combination property for direct factors).
    """
    for name, sub in (("A", a), ("B", b)):
        try:
            if not direct_complements(group, sub, cap=cap):
                raise PreconditionFailed(f"{name} is not a direct factor")
        except NotNormal:
            raise PreconditionFailed(f"{name} is not normal, hence not a direct factor")
    if not is_coprime(subgroup_as_group(a)[0], subgroup_as_group(b)[0],
                      cap=cap, cache=cache):
        raise PreconditionFailed("A and B are not coprime")
    if a.bits & b.bits != 1:
        return CoprimeViolation(group, a, b, "A∩B is nontrivial")
    bits, is_sub = set_product(group, a, b)
    if not is_sub:
        return CoprimeViolation(group, a, b, "A·B is not a subgroup")
    ab = Subgroup(group, bits)
    if not direct_complements(group, ab, cap=cap):
        return CoprimeViolation(group, a, b, "A·B has no normal complement")
    return ab


def _factor_projection(group: Group, h: Subgroup, k: Subgroup) -> list[int]:
    """Index map g = h·k -> k for a direct splitting {H, K} (cached)."""
    key = ("proj", h.bits, k.bits)
    cached = group._cache.get(key)
    if cached is None:
        table = group.table
        cached = [-1] * group.order
        for x in h.members():
            row = table[x]
            for y in k.members():
                cached[row[y]] = y
        group._cache[key] = cached
    return cached


def project_onto_factor(group: Group, splitting: tuple[Subgroup, Subgroup],
                        x: Subgroup) -> Subgroup:
    """Image of a subgroup under the projection onto K along H."""
    h, k = splitting
    if not is_internal_direct(group, [h, k]):
        raise NotASplitting("projection requires an internal direct splitting")
    proj = _factor_projection(group, h, k)
    bits = 0
    for m in x.members():
        bits |= 1 << proj[m]
    return Subgroup(group, bits)


def is_directly_decomposable(group: Group, d: Subgroup, *,
                             cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """True iff D = (H∩D)·(K∩D) for every direct splitting G = H·K."""
    for h, k in all_direct_splittings(group, cap=cap):
        hd = Subgroup(group, h.bits & d.bits)
        kd = Subgroup(group, k.bits & d.bits)
        bits, _ = set_product(group, hd, kd)
        if bits != d.bits:
            return False
    return True


def _is_cyclic_subgroup(group: Group, sub: Subgroup) -> bool:
    return any(element_order(group, x) == sub.order for x in sub.members())


def _complement_constructive(group: Group, d: Subgroup, *, cap: int) -> Subgroup | None:
    """Inductive complement of a maximal-order cyclic D in an abelian p-group.

    Splits off an indecomposable factor B with complement C; if C∩D is
    trivial C itself works, otherwise B∩D must be trivial (subgroups of a
    cyclic p-group are totally ordered), D projects injectively into C, and
    the complement lifts as B · (complement inside C).  Returns None if the
    trivial-intersection dichotomy fails, which triggers the caller's
    brute-force fallback.
    """
    if d.order == group.order:
        return trivial_subgroup(group)
    factors = remak_decomposition(group, cap=cap).factors
    b = factors[0]
    c = _join_normals(group, factors[1:])
    if c.bits & d.bits == 1:
        return c
    if b.bits & d.bits != 1:
        log.warning(
            "trivial-intersection dichotomy failed: |G|=%d, D=%s, B=%s, C=%s",
            group.order, d.members(), b.members(), c.members(),
        )
        return None
    qd = project_onto_factor(group, (b, c), d)
    c_group, members = subgroup_as_group(c)
    pos = {m: i for i, m in enumerate(members)}
    qd_inner = Subgroup(c_group, bits_of(pos[m] for m in qd.members()))
    inner = _complement_constructive(c_group, qd_inner, cap=cap)
    if inner is None:
        return None
    lifted = Subgroup(group, bits_of(members[i] for i in inner.members()))
    bits, _ = set_product(group, b, lifted)
    return Subgroup(group, bits)


def cyclic_max_complement(group: Group, d: Subgroup, *,
                          cap: int = DEFAULT_LATTICE_CAP) -> Subgroup:
    """A direct complement of a maximal-order cyclic subgroup of an abelian p-group.

    Follows the constructive induction; the result is always revalidated and
    a brute-force search over all subgroups backs it up (and is recorded in
    CYCLIC_COMPLEMENT_FALLBACKS, since it should never be needed).
    """
    if not is_abelian(group):
        raise PreconditionFailed("group must be abelian")
    n = group.order
    if n > 1:
        p = min(f for f in range(2, n + 1) if n % f == 0)
        m = n
        while m % p == 0:
            m //= p
        if m != 1:
            raise PreconditionFailed(f"group order {n} is not a power of a prime")
    if not _is_cyclic_subgroup(group, d):
        raise PreconditionFailed("D must be cyclic")
    if d.order != exponent(group):
        raise PreconditionFailed(
            f"D has order {d.order}, but the maximal element order is {exponent(group)}"
        )
    result = _complement_constructive(group, d, cap=cap)
    if result is not None and is_internal_direct(group, [d, result]):
        return result
    log.warning("constructive complement failed; brute-forcing (|G|=%d)", n)
    CYCLIC_COMPLEMENT_FALLBACKS.append((n, tuple(d.members())))
    for s in all_subgroups(group, cap=cap):
        if s.order * d.order == n and s.bits & d.bits == 1:
            return s
    raise AssertionError("maximal-order cyclic subgroup must have a complement")
