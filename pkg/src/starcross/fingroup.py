"""Finite groups, subgroups, and coset spaces backed by dense multiplication tables.

Elements are the integers ``0 .. order-1`` and every product is a table
lookup.  Groups of order up to a few dozen are all the desk-scale
verifications need, so nothing here tries to be clever about element
representations.
"""

from __future__ import annotations

import itertools
import json

import numpy as np

from .errors import NoIdentity, NoInverse, NonAssociativeTable, NotASubgroup

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "CosetSpace",
    "make_group",
    "group_from_table",
    "group_from_json",
    "cyclic",
    "dihedral",
    "symmetric",
    "quaternion8",
    "product_group",
    "quotient_group",
    "left_cosets",
    "is_normal",
    "modular",
    "PRESET_NAMES",
]


class FiniteGroup:
    """A finite group on indices ``0..order-1`` with a dense multiplication table.

    The table is validated on construction: a two-sided identity must exist,
    every row must contain it (inverses), and associativity must hold for all
    triples.
    """

    def __init__(self, mul, name: str = "G", validate: bool = True):
        mul = np.asarray(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise NonAssociativeTable("multiplication table must be square")
        n = mul.shape[0]
        if n == 0 or mul.min() < 0 or mul.max() >= n:
            raise NonAssociativeTable("table entries must be element indices")
        self.order = n
        self.mul = mul
        self.name = name
        self.identity = self._find_identity()
        self.inv = self._find_inverses()
        if validate:
            self._check_associativity()
        self._perms = None  # set by symmetric() for cycle-notation helpers

    def _find_identity(self) -> int:
        n = self.order
        idx = np.arange(n)
        for e in range(n):
            if np.array_equal(self.mul[e], idx) and np.array_equal(self.mul[:, e], idx):
                return e
        raise NoIdentity(f"{self.name}: no two-sided identity")

    def _find_inverses(self) -> np.ndarray:
        n, e = self.order, self.identity
        inv = np.full(n, -1, dtype=np.int64)
        for g in range(n):
            hits = np.nonzero(self.mul[g] == e)[0]
            if hits.size != 1 or self.mul[hits[0], g] != e:
                raise NoInverse(f"{self.name}: element {g} has no two-sided inverse")
            inv[g] = hits[0]
        return inv

    def _check_associativity(self) -> None:
        left = self.mul[self.mul, :]           # left[a,b,c] = (ab)c
        right = self.mul[:, self.mul]          # right[a,b,c] = a(bc)
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise NonAssociativeTable(f"{self.name}: associativity fails at triple {tuple(bad)}")

    # -- basic operations ---------------------------------------------------

    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def invert(self, a: int) -> int:
        return int(self.inv[a])

    def conjugate(self, g: int, h: int) -> int:
        """Return g h g^{-1}."""
        return int(self.mul[self.mul[g, h], self.inv[g]])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.op(x, g)
            k += 1
        return k

    def center(self) -> list[int]:
        return [
            z for z in range(self.order)
            if np.array_equal(self.mul[z], self.mul[:, z])
        ]

    def elements(self) -> range:
        return range(self.order)

    # -- subgroups ------------------------------------------------------------

    def subgroup(self, members) -> "Subgroup":
        return Subgroup(self, members)

    def generated_subgroup(self, generators) -> "Subgroup":
        members = {self.identity}
        frontier = list(generators)
        while frontier:
            g = frontier.pop()
            if g in members:
                continue
            members.add(g)
            frontier.extend(self.op(g, h) for h in list(members))
            frontier.extend(self.op(h, g) for h in list(members))
        return Subgroup(self, sorted(members))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [self.identity])

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, range(self.order))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


class Subgroup:
    """A validated subgroup, stored as a sorted index list into the parent."""

    def __init__(self, parent: FiniteGroup, members):
        self.parent = parent
        members = sorted(int(m) for m in members)
        if len(set(members)) != len(members):
            raise NotASubgroup("duplicate members")
        if not members or any(m < 0 or m >= parent.order for m in members):
            raise NotASubgroup("members out of range")
        mset = set(members)
        if parent.identity not in mset:
            raise NotASubgroup("identity missing")
        for a in members:
            if parent.invert(a) not in mset:
                raise NotASubgroup(f"not closed under inverse at {a}")
            for b in members:
                if parent.op(a, b) not in mset:
                    raise NotASubgroup(f"not closed under product at ({a},{b})")
        self.members = tuple(members)
        self.order = len(members)
        self._pos = {m: i for i, m in enumerate(members)}

    def position(self, g: int) -> int:
        """Position of a parent element inside ``members`` (KeyError if absent)."""
        return self._pos[g]

    def __contains__(self, g: int) -> bool:
        return g in self._pos

    def as_group(self, name: str | None = None) -> FiniteGroup:
        """The subgroup as a standalone FiniteGroup on reindexed elements."""
        k = self.order
        tbl = np.empty((k, k), dtype=np.int64)
        for i, a in enumerate(self.members):
            for j, b in enumerate(self.members):
                tbl[i, j] = self._pos[self.parent.op(a, b)]
        return FiniteGroup(tbl, name=name or f"{self.parent.name}-sub{k}")

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={self.members})"


class CosetSpace:
    """The left coset space G/H with one representative per coset."""

    def __init__(self, parent: FiniteGroup, subgroup: Subgroup):
        if subgroup.parent is not parent:
            raise NotASubgroup("subgroup belongs to a different group")
        self.parent = parent
        self.subgroup = subgroup
        n = parent.order
        class_of = np.full(n, -1, dtype=np.int64)
        reps: list[int] = []
        for g in range(n):
            if class_of[g] >= 0:
                continue
            c = len(reps)
            reps.append(g)
            for h in subgroup.members:
                class_of[parent.op(g, h)] = c
        self.reps = tuple(reps)
        self.class_of = class_of
        self.size = len(reps)
        if self.size * subgroup.order != n:
            raise NotASubgroup("cosets do not partition the group")

    def coset_of(self, g: int) -> int:
        return int(self.class_of[g])

    def __repr__(self) -> str:
        return f"CosetSpace({self.parent.name}, {self.size} cosets)"


# -- constructors -------------------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise NonAssociativeTable("cyclic group needs n >= 1")
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; index a + n*b encodes r^a s^b."""
    if n < 1:
        raise NonAssociativeTable("dihedral group needs n >= 1")
    order = 2 * n
    tbl = np.empty((order, order), dtype=np.int64)
    for a, b in itertools.product(range(n), range(2)):
        for c, d in itertools.product(range(n), range(2)):
            # (r^a s^b)(r^c s^d) = r^(a + c) s^d if b == 0 else r^(a - c) s^(1 + d)
            aa = (a + c) % n if b == 0 else (a - c) % n
            bb = (b + d) % 2
            tbl[a + n * b, c + n * d] = aa + n * bb
    return FiniteGroup(tbl, name=f"D{n}")


def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n letters, n <= 5, elements in lexicographic order.

    Composition convention: (p*q)(i) = p(q(i)).
    """
    if not 1 <= n <= 5:
        raise NonAssociativeTable("symmetric(n) supports 1 <= n <= 5")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    order = len(perms)
    tbl = np.empty((order, order), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            tbl[i, j] = index[tuple(p[q[k]] for k in range(n))]
    g = FiniteGroup(tbl, name=f"S{n}")
    g._perms = perms
    return g


def quaternion8() -> FiniteGroup:
    """Quaternion group {±1, ±i, ±j, ±k}; index = axis + 4*sign_bit."""
    # multiplication of the units 1,i,j,k: (axis table, sign table)
    axis = np.array([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    sign = np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]])
    tbl = np.empty((8, 8), dtype=np.int64)
    for a, sa in itertools.product(range(4), (1, -1)):
        for b, sb in itertools.product(range(4), (1, -1)):
            s = sa * sb * sign[a, b]
            tbl[a + (0 if sa == 1 else 4), b + (0 if sb == 1 else 4)] = (
                axis[a, b] + (0 if s == 1 else 4)
            )
    return FiniteGroup(tbl, name="Q8")


PRESET_NAMES = ("C2", "C3", "C4", "C6", "S3", "S4", "D4", "Q8")


def make_group(spec, parameter: int | None = None, name: str | None = None) -> FiniteGroup:
    """Build a group from a preset name ("S3", "C4", ...) or an explicit table.

    String specs accept ``C<n>``, ``D<n>``, ``S<n>`` and ``Q8``; a family name
    plus ``parameter`` ("cyclic", 5) also works.  Anything array-like is
    treated as an explicit multiplication table and validated.
    """
    if isinstance(spec, str):
        s = spec.strip()
        families = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}
        if s.lower() in families:
            if parameter is None:
                raise NonAssociativeTable(f"family {s!r} needs a parameter")
            return families[s.lower()](parameter)
        if s.upper() == "Q8":
            return quaternion8()
        if len(s) >= 2 and s[0].upper() in "CDS" and s[1:].isdigit():
            return {"C": cyclic, "D": dihedral, "S": symmetric}[s[0].upper()](int(s[1:]))
        raise NonAssociativeTable(f"unknown group preset {spec!r}")
    return group_from_table(spec, name=name or "G")


def group_from_table(mul, name: str = "G") -> FiniteGroup:
    return FiniteGroup(mul, name=name)


def group_from_json(text_or_dict, name: str = "G") -> FiniteGroup:
    """Load a group from ``{"order": n, "mul": [[...]]}`` (dict or JSON text)."""
    data = json.loads(text_or_dict) if isinstance(text_or_dict, str) else text_or_dict
    mul = np.asarray(data["mul"], dtype=np.int64)
    if "order" in data and int(data["order"]) != mul.shape[0]:
        raise NonAssociativeTable("declared order disagrees with table size")
    return FiniteGroup(mul, name=data.get("name", name))


def product_group(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product with index (a, b) -> a * |g2| + b."""
    n1, n2 = g1.order, g2.order
    a = np.arange(n1 * n2)
    a1, a2 = a // n2, a % n2
    tbl = g1.mul[np.ix_(a1, a1)] * n2 + g2.mul[np.ix_(a2, a2)]
    g = FiniteGroup(tbl, name=f"{g1.name}x{g2.name}")
    return g


def pair_index(g2_order: int, a: int, b: int) -> int:
    return a * g2_order + b


def quotient_group(g: FiniteGroup, n_sub: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """The quotient G/N for normal N, plus the projection array g -> coset index."""
    if not is_normal(g, n_sub):
        from .errors import NotNormal

        raise NotNormal(f"{n_sub} is not normal in {g.name}")
    cs = CosetSpace(g, n_sub)
    k = cs.size
    tbl = np.empty((k, k), dtype=np.int64)
    for i, r in enumerate(cs.reps):
        for j, s in enumerate(cs.reps):
            tbl[i, j] = cs.coset_of(g.op(r, s))
    q = FiniteGroup(tbl, name=f"{g.name}/{n_sub.order}")
    return q, cs.class_of.copy()


# -- coset / normality / Haar hooks -------------------------------------------

def left_cosets(g: FiniteGroup, h: Subgroup) -> CosetSpace:
    return CosetSpace(g, h)


def is_normal(g: FiniteGroup, h: Subgroup) -> bool:
    mset = set(h.members)
    return all(
        g.conjugate(x, m) in mset for x in range(g.order) for m in h.members
    )


def modular(g: FiniteGroup, t: int) -> float:
    """Modular function hook; identically 1.0 on a finite group."""
    if not 0 <= t < g.order:
        raise IndexError(f"element {t} out of range for {g.name}")
    return 1.0


# -- permutation helpers (symmetric groups) -----------------------------------

def perm_index(g: FiniteGroup, perm) -> int:
    """Index of a permutation tuple inside symmetric(n)."""
    if g._perms is None:
        raise ValueError("perm_index only applies to symmetric() groups")
    return g._perms.index(tuple(perm))


def transposition(g: FiniteGroup, i: int, j: int) -> int:
    """Index of the transposition (i j) inside symmetric(n)."""
    if g._perms is None:
        raise ValueError("transposition only applies to symmetric() groups")
    n = len(g._perms[0])
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return perm_index(g, p)


def alternating_members(g: FiniteGroup) -> list[int]:
    """Indices of the even permutations of a symmetric() group."""
    if g._perms is None:
        raise ValueError("alternating_members only applies to symmetric() groups")
    out = []
    for i, p in enumerate(g._perms):
        inversions = sum(
            1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b]
        )
        if inversions % 2 == 0:
            out.append(i)
    return out
