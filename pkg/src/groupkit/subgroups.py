"""Subgroups as membership bitsets, lattice enumeration, and quotients.

A subgroup of a group of order n is a Python int whose bit i says whether
element i belongs; arbitrary-precision ints give word-parallel intersection,
union, and equality for free.  Bit 0 (the identity) is always set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Group, is_abelian
from .errors import IndexOutOfRange, NotNormal, NotPrime, OrderBound

DEFAULT_LATTICE_CAP = 64


def bits_of(members) -> int:
    out = 0
    for x in members:
        out |= 1 << x
    return out


def members_of(bits: int) -> list[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class Subgroup:
    """Membership bitset over a parent group's element indices."""

    parent: Group
    bits: int

    @property
    def order(self) -> int:
        return self.bits.bit_count()

    def members(self) -> list[int]:
        return members_of(self.bits)

    def contains(self, x: int) -> bool:
        return bool((self.bits >> x) & 1)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical order: by size, then lexicographic member list."""
        return (self.order, tuple(self.members()))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={self.members()})"


@dataclass(frozen=True)
class QuotientMap:
    """A quotient group together with the projection from its source."""

    source: Group
    target: Group
    projection: tuple[int, ...]


def trivial_subgroup(group: Group) -> Subgroup:
    return Subgroup(group, 1)


def whole_subgroup(group: Group) -> Subgroup:
    return Subgroup(group, (1 << group.order) - 1)


def generate_subgroup(group: Group, gens) -> Subgroup:
    """Least subgroup containing gens, by worklist closure."""
    table = group.table
    n = group.order
    gens = list(gens)
    for g in gens:
        if not 0 <= g < n:
            raise IndexOutOfRange(f"generator {g} out of range [0, {n})")
    bits = 1
    members = [0]
    frontier = gens
    while frontier:
        x = frontier.pop()
        if (bits >> x) & 1:
            continue
        bits |= 1 << x
        for y in members:
            for z in (table[x][y], table[y][x]):
                if not (bits >> z) & 1:
                    frontier.append(z)
        row = table[x]
        z = row[x]
        if not (bits >> z) & 1:
            frontier.append(z)
        members.append(x)
    return Subgroup(group, bits)


def is_subgroup_bits(group: Group, bits: int) -> bool:
    """True iff the bitset is nonempty and closed under the parent product."""
    if not bits & 1:
        return False
    table = group.table
    members = members_of(bits)
    for x in members:
        row = table[x]
        for y in members:
            if not (bits >> row[y]) & 1:
                return False
    return True


def is_normal_bits(group: Group, bits: int) -> bool:
    table = group.table
    inv = group.inv
    members = members_of(bits)
    for g in range(1, group.order):
        row = table[g]
        ig = inv[g]
        for s in members:
            if not (bits >> table[row[s]][ig]) & 1:
                return False
    return True


def _join_with_cyclic(group: Group, bits: int, members: list[int], g: int) -> int:
    """Bitset of <S ∪ {g}> given S's bits and member list."""
    table = group.table
    if is_abelian(group):
        # every element of the join is s * g^i, so walk cosets of S
        acc = bits
        x = g
        while not (bits >> x) & 1:
            for s in members:
                acc |= 1 << table[s][x]
            x = table[x][g]
        return acc
    acc = bits
    mem = list(members)
    frontier = [g]
    while frontier:
        x = frontier.pop()
        if (acc >> x) & 1:
            continue
        acc |= 1 << x
        for y in mem:
            for z in (table[x][y], table[y][x]):
                if not (acc >> z) & 1:
                    frontier.append(z)
        z = table[x][x]
        if not (acc >> z) & 1:
            frontier.append(z)
        mem.append(x)
    return acc


def all_subgroups(group: Group, *, cap: int = DEFAULT_LATTICE_CAP) -> list[Subgroup]:
    """Every subgroup exactly once, canonically sorted.

    Seeds with all cyclic subgroups, then closes under joins with the seeds;
    every subgroup is reached because it is a join of its cyclic subgroups.
    """
    if group.order > cap:
        raise OrderBound(group.order, cap, "subgroup lattice order")
    cached = group._cache.get("all_subgroups")
    if cached is None:
        table = group.table
        seeds: dict[int, int] = {}  # cyclic subgroup bits -> generator
        for x in range(1, group.order):
            bits = 1
            y = x
            while y != 0:
                bits |= 1 << y
                y = table[y][x]
            seeds.setdefault(bits, x)
        found: dict[int, list[int]] = {1: [0]}
        queue = deque([1])
        for bits in seeds:
            if bits not in found:
                found[bits] = members_of(bits)
                queue.append(bits)
        seed_list = sorted(seeds.items(), key=lambda kv: kv[1])
        while queue:
            bits = queue.popleft()
            members = found[bits]
            for seed_bits, g in seed_list:
                if seed_bits & ~bits == 0:
                    continue
                joined = _join_with_cyclic(group, bits, members, g)
                if joined not in found:
                    found[joined] = members_of(joined)
                    queue.append(joined)
        cached = sorted(
            (Subgroup(group, bits) for bits in found),
            key=Subgroup.sort_key,
        )
        group._cache["all_subgroups"] = cached
    return list(cached)


def normal_subgroups(group: Group, *, cap: int = DEFAULT_LATTICE_CAP) -> list[Subgroup]:
    cached = group._cache.get("normal_subgroups")
    if cached is None:
        cached = [
            s for s in all_subgroups(group, cap=cap) if is_normal_bits(group, s.bits)
        ]
        group._cache["normal_subgroups"] = cached
    return list(cached)


def center(group: Group) -> Subgroup:
    cached = group._cache.get("center")
    if cached is None:
        table = group.table
        n = group.order
        bits = 0
        for x in range(n):
            row = table[x]
            if all(row[y] == table[y][x] for y in range(n)):
                bits |= 1 << x
        cached = Subgroup(group, bits)
        group._cache["center"] = cached
    return cached


def center_of(group: Group, sub: Subgroup) -> Subgroup:
    """Center of a subgroup, computed inside it (a subgroup of the parent)."""
    table = group.table
    members = sub.members()
    bits = 0
    for x in members:
        row = table[x]
        if all(row[y] == table[y][x] for y in members):
            bits |= 1 << x
    return Subgroup(group, bits)


def commutator(group: Group, a: Subgroup, b: Subgroup) -> Subgroup:
    """Subgroup generated by all [x,y] = x^-1 y^-1 x y with x in A, y in B."""
    table = group.table
    inv = group.inv
    gens = set()
    for x in a.members():
        ix = inv[x]
        for y in b.members():
            gens.add(table[table[ix][inv[y]]][table[x][y]])
    return generate_subgroup(group, sorted(gens))


def derived_subgroup(group: Group) -> Subgroup:
    cached = group._cache.get("derived")
    if cached is None:
        whole = whole_subgroup(group)
        cached = commutator(group, whole, whole)
        group._cache["derived"] = cached
    return cached


def quotient(group: Group, normal: Subgroup) -> QuotientMap:
    """Quotient by a normal subgroup; cosets numbered by minimal member."""
    if not is_normal_bits(group, normal.bits):
        raise NotNormal("cannot form a quotient by a non-normal subgroup")
    table = group.table
    n = group.order
    members = normal.members()
    coset_of = [-1] * n
    reps = []
    for x in range(n):
        if coset_of[x] >= 0:
            continue
        idx = len(reps)
        reps.append(x)
        row = table[x]
        for z in members:
            coset_of[row[z]] = idx
    q = len(reps)
    qtable = [[coset_of[table[reps[i]][reps[j]]] for j in range(q)] for i in range(q)]
    target = Group(qtable)
    return QuotientMap(group, target, tuple(coset_of))


def project_bits(qmap: QuotientMap, bits: int) -> int:
    """Image bitset of a source bitset under the quotient projection."""
    out = 0
    for x in members_of(bits):
        out |= 1 << qmap.projection[x]
    return out


def set_product(group: Group, a: Subgroup, b: Subgroup) -> tuple[int, bool]:
    """The product set {xy : x in A, y in B} and whether it is a subgroup.

    AB is a subgroup iff AB = BA (always true when A or B is normal).
    """
    table = group.table
    amem = a.members()
    bmem = b.members()
    ab = 0
    for x in amem:
        row = table[x]
        for y in bmem:
            ab |= 1 << row[y]
    ba = 0
    for y in bmem:
        row = table[y]
        for x in amem:
            ba |= 1 << row[x]
    return ab, ab == ba


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def sylow(group: Group, p: int, *, cap: int = DEFAULT_LATTICE_CAP) -> Subgroup:
    """A Sylow p-subgroup: order p^v with p^v the largest power dividing |G|."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    n = group.order
    target = 1
    while n % (target * p) == 0:
        target *= p
    if target == 1:
        return trivial_subgroup(group)
    if is_abelian(group):
        from .core import element_order

        bits = 0
        for x in range(n):
            k = element_order(group, x)
            while k % p == 0:
                k //= p
            if k == 1:
                bits |= 1 << x
        return Subgroup(group, bits)
    for s in all_subgroups(group, cap=cap):
        if s.order == target:
            return s
    raise AssertionError("Sylow subgroup must exist")  # unreachable by Sylow's theorem


def power(group: Group, x: int, n: int) -> int:
    """x^n by square-and-multiply on table indices (n >= 0)."""
    table = group.table
    out = 0
    base = x
    while n:
        if n & 1:
            out = table[out][base]
        base = table[base][base]
        n >>= 1
    return out


def agemo(group: Group, n: int) -> Subgroup:
    """Smallest subgroup containing x^n for every x."""
    gens = sorted({power(group, x, n) for x in range(group.order)})
    return generate_subgroup(group, gens)


def subgroup_as_group(sub: Subgroup) -> tuple[Group, tuple[int, ...]]:
    """Extract a subgroup as a standalone group.

    Returns the new group and the member list mapping new indices to parent
    indices (ascending, so the identity stays at 0).  Cached on the parent.
    """
    parent = sub.parent
    key = ("as_group", sub.bits)
    cached = parent._cache.get(key)
    if cached is None:
        members = sub.members()
        pos = {m: i for i, m in enumerate(members)}
        table = parent.table
        new_table = [[pos[table[x][y]] for y in members] for x in members]
        cached = (Group(new_table), tuple(members))
        parent._cache[key] = cached
    return cached
