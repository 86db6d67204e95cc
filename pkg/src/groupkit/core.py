"""Finite groups as explicit Cayley tables, plus construction recipes.

Conventions fixed across the whole package:

- elements are indices 0..n-1 and the identity is always index 0;
- ``table[i][j]`` is the index of ``g_i * g_j``;
- product-style constructions number pairs ``(a, b) -> a * |B| + b``
  (first component major), so the identity lands at 0 automatically;
- quotient cosets are numbered by ascending minimal member index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import (
    IndexOutOfRange,
    InvalidAction,
    InvalidRecipe,
    MalformedTable,
    NoIdentity,
    NotAssociative,
    NotCentral,
    NotInvertible,
    NotLatin,
    OrderBound,
)

DEFAULT_ORDER_CAP = 512
DEFAULT_ASSOC_BOUND = 512


# ---------------------------------------------------------------------------
# recipes

@dataclass(frozen=True)
class Cyclic:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidRecipe(f"Cyclic order must be >= 1, got {self.n}")


@dataclass(frozen=True)
class Dihedral:
    """Dihedral group of order 2m (m rotations, m reflections)."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidRecipe(f"Dihedral parameter must be >= 1, got {self.m}")


@dataclass(frozen=True)
class Dicyclic:
    """Dicyclic group of order 4m; Dicyclic(2) is the quaternion group."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidRecipe(f"Dicyclic parameter must be >= 1, got {self.m}")


@dataclass(frozen=True)
class Symmetric:
    m: int

    def __post_init__(self):
        if not 1 <= self.m <= 5:
            raise InvalidRecipe(f"Symmetric parameter must be in 1..5, got {self.m}")


@dataclass(frozen=True)
class Product:
    left: "Recipe"
    right: "Recipe"


@dataclass(frozen=True)
class Semidirect:
    """Semidirect product ``acting ⋉ normal``.

    ``action`` lists ``(q, perm)`` pairs: element ``q`` of the acting group
    maps to the automorphism ``perm`` of the normal part (a full permutation
    of its indices).  The listed elements must generate the acting group and
    the images must extend to a homomorphism into Aut(normal); both are
    validated when the group is built.
    """

    normal: "Recipe"
    acting: "Recipe"
    action: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        norm = tuple(
            (int(q), tuple(int(x) for x in perm)) for q, perm in self.action
        )
        object.__setattr__(self, "action", norm)
        if not norm:
            raise InvalidRecipe("Semidirect action must list at least one generator")


@dataclass(frozen=True)
class CentralQuotient:
    """Quotient of ``inner`` by the central subgroup generated by ``gens``."""

    inner: "Recipe"
    gens: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(int(g) for g in self.gens))


Recipe = Cyclic | Dihedral | Dicyclic | Symmetric | Product | Semidirect | CentralQuotient


def recipe_dsl(recipe: Recipe) -> str:
    """Render a recipe in the text DSL (inverse of parse_recipe)."""
    if isinstance(recipe, Cyclic):
        return f"C({recipe.n})"
    if isinstance(recipe, Dihedral):
        return f"D({recipe.m})"
    if isinstance(recipe, Dicyclic):
        return f"Dic({recipe.m})"
    if isinstance(recipe, Symmetric):
        return f"S({recipe.m})"
    if isinstance(recipe, Product):
        return f"P({recipe_dsl(recipe.left)},{recipe_dsl(recipe.right)})"
    if isinstance(recipe, Semidirect):
        entries = ",".join(
            f"[{q},[{','.join(str(x) for x in perm)}]]" for q, perm in recipe.action
        )
        return (
            f"SD({recipe_dsl(recipe.normal)},{recipe_dsl(recipe.acting)},"
            f"action=[{entries}])"
        )
    if isinstance(recipe, CentralQuotient):
        gens = ",".join(str(g) for g in recipe.gens)
        return f"CQ({recipe_dsl(recipe.inner)},gens=[{gens}])"
    raise InvalidRecipe(f"unknown recipe object {recipe!r}")


class _DslParser:
    """Recursive-descent parser for the recipe DSL.

    Grammar: C(n) | D(m) | Dic(m) | S(m) | P(r,r)
           | SD(r,r,action=[[q,[i,...]],...]) | CQ(r,gens=[i,...])
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> InvalidRecipe:
        return InvalidRecipe(f"recipe DSL error at offset {self.pos}: {msg}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a name")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def int_list(self) -> list[int]:
        self.expect("[")
        items = []
        if self.peek() != "]":
            items.append(self.integer())
            while self.peek() == ",":
                self.expect(",")
                items.append(self.integer())
        self.expect("]")
        return items

    def recipe(self) -> Recipe:
        name = self.name()
        self.expect("(")
        if name == "C":
            out: Recipe = Cyclic(self.integer())
        elif name == "D":
            out = Dihedral(self.integer())
        elif name == "Dic":
            out = Dicyclic(self.integer())
        elif name == "S":
            out = Symmetric(self.integer())
        elif name == "P":
            left = self.recipe()
            self.expect(",")
            right = self.recipe()
            out = Product(left, right)
        elif name == "SD":
            normal = self.recipe()
            self.expect(",")
            acting = self.recipe()
            self.expect(",")
            if self.name() != "action":
                raise self.error("expected 'action'")
            self.expect("=")
            self.expect("[")
            entries = []
            while self.peek() != "]":
                self.expect("[")
                q = self.integer()
                self.expect(",")
                perm = self.int_list()
                self.expect("]")
                entries.append((q, tuple(perm)))
                if self.peek() == ",":
                    self.expect(",")
            self.expect("]")
            out = Semidirect(normal, acting, tuple(entries))
        elif name == "CQ":
            inner = self.recipe()
            self.expect(",")
            if self.name() != "gens":
                raise self.error("expected 'gens'")
            self.expect("=")
            gens = self.int_list()
            out = CentralQuotient(inner, tuple(gens))
        else:
            raise self.error(f"unknown constructor {name!r}")
        self.expect(")")
        return out


def parse_recipe(text: str) -> Recipe:
    parser = _DslParser(text)
    out = parser.recipe()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input")
    return out


# ---------------------------------------------------------------------------
# table validation

def validate_table(table, *, assoc_bound: int = DEFAULT_ASSOC_BOUND) -> None:
    """Check all group axioms on a square index table; raise on the first failure.

    Checks run in the order: shape/range, identity-at-0, Latin square,
    two-sided inverses, associativity.  Associativity (the O(n^3) part) is
    skipped for n > assoc_bound.
    """
    n = len(table)
    if n == 0:
        raise MalformedTable("table is empty")
    for i, row in enumerate(table):
        if len(row) != n:
            raise MalformedTable(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not isinstance(x, (int, np.integer)) or isinstance(x, bool):
                raise MalformedTable(f"row {i} contains non-integer entry {x!r}")
            if not 0 <= x < n:
                raise MalformedTable(f"row {i} entry {x} out of range [0, {n})")

    t = np.asarray(table, dtype=np.int64)
    ident = np.arange(n)
    if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
        raise NoIdentity("index 0 is not a two-sided identity")

    for i in range(n):
        row = np.sort(t[i])
        if not np.array_equal(row, ident):
            dup = int(row[np.flatnonzero(np.diff(row) == 0)[0]])
            raise NotLatin("row", i, dup)
    for j in range(n):
        col = np.sort(t[:, j])
        if not np.array_equal(col, ident):
            dup = int(col[np.flatnonzero(np.diff(col) == 0)[0]])
            raise NotLatin("column", j, dup)

    # Latin property gives exactly one 0 per row; invertibility needs it two-sided.
    right_inv = np.argmin(t != 0, axis=1)
    for i in range(n):
        if t[right_inv[i], i] != 0:
            raise NotInvertible(i)

    if n <= assoc_bound:
        for i in range(n):
            left = t[t[i]]          # (i*j)*k
            right = t[i][t]         # i*(j*k)
            if not np.array_equal(left, right):
                j, k = np.argwhere(left != right)[0]
                raise NotAssociative(i, int(j), int(k))


# ---------------------------------------------------------------------------
# the Group type

class Group:
    """Immutable finite group over indices 0..n-1 with identity at 0.

    Instances compare by identity; compare ``g.table`` directly when table
    equality is meant.  ``_cache`` holds derived data (subgroup lattice,
    centre, ...) keyed by the modules that compute it.
    """

    __slots__ = ("order", "table", "inv", "name", "recipe", "_cache")

    def __init__(self, table, *, name: str | None = None, recipe: Recipe | None = None,
                 validate: bool = True, assoc_bound: int = DEFAULT_ASSOC_BOUND):
        tbl = tuple(tuple(int(x) for x in row) for row in table)
        if validate:
            validate_table(tbl, assoc_bound=assoc_bound)
        self.order = len(tbl)
        self.table = tbl
        self.inv = tuple(row.index(0) for row in tbl)
        self.name = name
        self.recipe = recipe
        self._cache = {}

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.table[self.table[g][x]][self.inv[g]]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        label = self.name or (recipe_dsl(self.recipe) if self.recipe else "?")
        return f"Group({label}, order={self.order})"

    def __getstate__(self):
        return (self.order, self.table, self.inv, self.name, self.recipe)

    def __setstate__(self, state):
        order, table, inv, name, recipe = state
        self.order = order
        self.table = table
        self.inv = inv
        self.name = name
        self.recipe = recipe
        self._cache = {}


def element_order(group: Group, x: int) -> int:
    """Least k >= 1 with x^k = identity."""
    if not 0 <= x < group.order:
        raise IndexOutOfRange(f"index {x} out of range [0, {group.order})")
    table = group.table
    k = 1
    y = x
    while y != 0:
        y = table[y][x]
        k += 1
    return k


def exponent(group: Group) -> int:
    """lcm of the orders of all elements."""
    out = 1
    for x in range(group.order):
        out = math.lcm(out, element_order(group, x))
    return out


def is_abelian(group: Group) -> bool:
    cached = group._cache.get("abelian")
    if cached is None:
        table = group.table
        cached = all(
            table[i][j] == table[j][i]
            for i in range(group.order)
            for j in range(i + 1, group.order)
        )
        group._cache["abelian"] = cached
    return cached


# ---------------------------------------------------------------------------
# table builders

def _cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _dihedral_table(m: int) -> list[list[int]]:
    # index = j*m + i for a^i b^j, j in {0,1}; b a b^-1 = a^-1
    n = 2 * m
    table = [[0] * n for _ in range(n)]
    for i in range(m):
        for j in range(2):
            for k in range(m):
                for l in range(2):
                    rot = (i + k) % m if j == 0 else (i - k) % m
                    table[j * m + i][l * m + k] = ((j + l) % 2) * m + rot
    return table


def _dicyclic_table(m: int) -> list[list[int]]:
    # index = j*2m + i for a^i b^j; a^(2m)=1, b^2=a^m, b a b^-1 = a^-1
    n = 4 * m
    table = [[0] * n for _ in range(n)]
    for i in range(2 * m):
        for j in range(2):
            for k in range(2 * m):
                for l in range(2):
                    if j == 0:
                        rot, ref = (i + k) % (2 * m), l
                    elif l == 0:
                        rot, ref = (i - k) % (2 * m), 1
                    else:
                        rot, ref = (i - k + m) % (2 * m), 0
                    table[j * 2 * m + i][l * 2 * m + k] = ref * 2 * m + rot
    return table


def _symmetric_table(m: int) -> list[list[int]]:
    elems = sorted(permutations(range(m)))
    index = {p: i for i, p in enumerate(elems)}
    table = []
    for p in elems:
        table.append([index[tuple(p[q[x]] for x in range(m))] for q in elems])
    return table


def _product_table(a: Group, b: Group) -> list[list[int]]:
    nb = b.order
    n = a.order * nb
    table = [[0] * n for _ in range(n)]
    for a1 in range(a.order):
        for b1 in range(nb):
            row = table[a1 * nb + b1]
            ra = a.table[a1]
            rb = b.table[b1]
            for a2 in range(a.order):
                base = ra[a2] * nb
                for b2 in range(nb):
                    row[a2 * nb + b2] = base + rb[b2]
    return table


def _resolve_action(normal: Group, acting: Group,
                    action: tuple[tuple[int, tuple[int, ...]], ...]) -> list[tuple[int, ...]]:
    """Extend generator images to a full homomorphism acting -> Aut(normal).

    Returns phi as a list indexed by acting-group elements, each entry a
    permutation of the normal part.  Raises InvalidAction if an image is not
    an automorphism, the images clash with the acting group's relations, or
    the listed elements fail to generate the acting group.
    """
    nn = normal.order
    ntab = normal.table
    for q, perm in action:
        if not 0 <= q < acting.order:
            raise InvalidAction(f"acting element {q} out of range")
        if len(perm) != nn or sorted(perm) != list(range(nn)):
            raise InvalidAction(f"image for acting element {q} is not a permutation")
        for i in range(nn):
            for j in range(nn):
                if perm[ntab[i][j]] != ntab[perm[i]][perm[j]]:
                    raise InvalidAction(
                        f"image for acting element {q} is not an automorphism "
                        f"(fails at ({i},{j}))"
                    )

    phi: dict[int, tuple[int, ...]] = {0: tuple(range(nn))}
    frontier = [0]
    while frontier:
        q = frontier.pop()
        base = phi[q]
        for g, alpha in action:
            q2 = acting.table[q][g]
            composed = tuple(base[alpha[x]] for x in range(nn))  # phi(q)∘phi(g)
            known = phi.get(q2)
            if known is None:
                phi[q2] = composed
                frontier.append(q2)
            elif known != composed:
                raise InvalidAction(
                    "action images do not respect the acting group's relations"
                )
    if len(phi) != acting.order:
        raise InvalidAction("action generators do not generate the acting group")
    return [phi[q] for q in range(acting.order)]


def _semidirect_table(normal: Group, acting: Group,
                      action: tuple[tuple[int, tuple[int, ...]], ...]) -> list[list[int]]:
    # (q1,n1)(q2,n2) = (q1 q2, phi(q2^-1)(n1) * n2); pair (q,n) -> q*|N| + n
    phi = _resolve_action(normal, acting, action)
    nn = normal.order
    n = acting.order * nn
    table = [[0] * n for _ in range(n)]
    for q1 in range(acting.order):
        for n1 in range(nn):
            row = table[q1 * nn + n1]
            for q2 in range(acting.order):
                base = acting.table[q1][q2] * nn
                twist = phi[acting.inv[q2]]
                t1 = twist[n1]
                nrow = normal.table[t1]
                for n2 in range(nn):
                    row[q2 * nn + n2] = base + nrow[n2]
    return table


def _closure(table, gens) -> list[int]:
    """Members of the subgroup generated by gens (ascending); identity included."""
    bits = 1
    frontier = list(gens)
    while frontier:
        x = frontier.pop()
        if (bits >> x) & 1:
            continue
        bits |= 1 << x
        members = [i for i in range(len(table)) if (bits >> i) & 1]
        for y in members:
            for z in (table[x][y], table[y][x]):
                if not (bits >> z) & 1:
                    frontier.append(z)
    return [i for i in range(len(table)) if (bits >> i) & 1]


def _central_quotient_table(inner: Group, gens: tuple[int, ...]) -> tuple[list[list[int]], str | None]:
    n = inner.order
    table = inner.table
    for g in gens:
        if not 0 <= g < n:
            raise InvalidRecipe(f"CentralQuotient generator {g} out of range")
    members = _closure(table, gens)
    for z in members:
        for g in range(n):
            if table[z][g] != table[g][z]:
                raise NotCentral(
                    f"generated subgroup contains non-central element {z}"
                )
    member_bits = 0
    for z in members:
        member_bits |= 1 << z
    coset_of = [-1] * n
    reps = []
    for x in range(n):
        if coset_of[x] >= 0:
            continue
        idx = len(reps)
        reps.append(x)
        for z in members:
            coset_of[table[x][z]] = idx
    q = len(reps)
    out = [[coset_of[table[reps[i]][reps[j]]] for j in range(q)] for i in range(q)]
    return out, None


def construct(recipe: Recipe, *, name: str | None = None,
              order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Build and validate the group a recipe describes.

    Element numbering is deterministic (see module docstring), so equal
    recipes always produce identical tables.  Orders are checked against the
    cap bottom-up, before any combined table is filled in.
    """
    def check(order: int) -> int:
        if order > order_cap:
            raise OrderBound(order, order_cap)
        return order

    if isinstance(recipe, Cyclic):
        table = _cyclic_table(check(recipe.n))
    elif isinstance(recipe, Dihedral):
        check(2 * recipe.m)
        table = _dihedral_table(recipe.m)
    elif isinstance(recipe, Dicyclic):
        check(4 * recipe.m)
        table = _dicyclic_table(recipe.m)
    elif isinstance(recipe, Symmetric):
        check(math.factorial(recipe.m))
        table = _symmetric_table(recipe.m)
    elif isinstance(recipe, Product):
        left = construct(recipe.left, order_cap=order_cap)
        right = construct(recipe.right, order_cap=order_cap)
        check(left.order * right.order)
        table = _product_table(left, right)
    elif isinstance(recipe, Semidirect):
        normal = construct(recipe.normal, order_cap=order_cap)
        acting = construct(recipe.acting, order_cap=order_cap)
        check(normal.order * acting.order)
        table = _semidirect_table(normal, acting, recipe.action)
    elif isinstance(recipe, CentralQuotient):
        table, _ = _central_quotient_table(
            construct(recipe.inner, order_cap=order_cap), recipe.gens
        )
    else:
        raise InvalidRecipe(f"unknown recipe object {recipe!r}")
    return Group(table, name=name, recipe=recipe)
