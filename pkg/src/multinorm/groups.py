"""Finite groups from permutation generators, with subgroup-lattice operations.

Groups stand in for Galois groups via the usual dictionary, fixed once for
the whole package:

======================  =============================================
field between k and L   subgroup of G = Gal(L/k)
composite of fields     intersection of subgroups
intersection of fields  join of subgroups
Galois closure          normal core
field degree            subgroup index
======================  =============================================

A group is stored as a full multiplication table.  Element indices are
canonical: elements sorted by the lexicographic order of their permutation
images, with the identity forced first, so identical generating data from
any source produces identical tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BadIndex, NonBijective, NotNormal, OrderBound, ParentMismatch

DEFAULT_ORDER_BOUND = 64

Perm = tuple  # image tuple on 0..degree-1


def perm_from_spec(spec, degree: int) -> Perm:
    """Accept a permutation as an image array or as a list of cycles.

    Both forms are 0-indexed.  A flat list of ints of length ``degree`` is
    an image array; a list of lists is cycle notation.
    """
    if all(isinstance(x, int) for x in spec):
        if len(spec) != degree:
            raise NonBijective(
                f"image array has length {len(spec)}, expected {degree}")
        images = tuple(spec)
    else:
        images = list(range(degree))
        for cycle in spec:
            if not all(isinstance(x, int) for x in cycle):
                raise NonBijective(f"malformed cycle {cycle!r}")
            for k, x in enumerate(cycle):
                if not 0 <= x < degree:
                    raise NonBijective(f"cycle point {x} out of range")
                images[x] = cycle[(k + 1) % len(cycle)]
        images = tuple(images)
    if sorted(images) != list(range(degree)):
        raise NonBijective(f"not a bijection of 0..{degree - 1}: {images}")
    return images


def _compose(p: Perm, q: Perm) -> Perm:
    """(p ∘ q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group with elements 0..order-1; 0 is the identity."""

    order: int
    mul: tuple  # mul[a][b]
    inv: tuple
    perm_images: tuple  # retained for display / canonical order
    generator_indices: tuple

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != 0:
            x = self.mul[x][a]
            n += 1
        return n

    def conjugate(self, g: int, h: int) -> int:
        """g h g^{-1}."""
        return self.mul[self.mul[g][h]][self.inv[g]]

    def commutator(self, a: int, b: int) -> int:
        """a b a^{-1} b^{-1}."""
        return self.mul[self.mul[a][b]][self.mul[self.inv[a]][self.inv[b]]]

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a]
                   for a in self.elements() for b in self.elements())

    def describe(self, a: int) -> str:
        return str(self.perm_images[a])


@dataclass(frozen=True)
class Subgroup:
    """Subset of a group, closed under multiplication and inverse."""

    parent: FiniteGroup
    members: tuple  # strictly ascending, contains 0

    def __post_init__(self):
        mem = self.members
        if not mem or mem[0] != 0 or list(mem) != sorted(set(mem)):
            raise BadIndex(f"invalid member list {mem}")
        ms = set(mem)
        mul = self.parent.mul
        inv = self.parent.inv
        for a in mem:
            if inv[a] not in ms:
                raise BadIndex(f"not inverse-closed at {a}")
            for b in mem:
                if mul[a][b] not in ms:
                    raise BadIndex(f"not closed at ({a}, {b})")

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.members)

    def contains(self, other: "Subgroup") -> bool:
        return set(other.members) <= set(self.members)

    def is_normal(self) -> bool:
        G = self.parent
        ms = set(self.members)
        return all(G.conjugate(g, h) in ms
                   for g in G.elements() for h in self.members)


@dataclass(frozen=True)
class QuotientGroup:
    """Quotient G/N with projection and a chosen section."""

    quotient: FiniteGroup
    projection: tuple  # parent element -> quotient element
    section: tuple     # quotient element -> coset representative


def group_from_permutations(degree: int, generators: Sequence,
                            order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Group generated by permutations of {0..degree-1}.

    Generators may be image arrays or cycle lists (see
    :func:`perm_from_spec`); already-built image tuples pass through.
    """
    if degree < 1:
        raise NonBijective("degree must be positive")
    gens = []
    for g in generators:
        if isinstance(g, tuple) and all(isinstance(x, int) for x in g) \
                and len(g) == degree:
            images = g
            if sorted(images) != list(range(degree)):
                raise NonBijective(f"not a bijection: {images}")
        else:
            images = perm_from_spec(g, degree)
        gens.append(images)

    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose(g, p)
                if q not in seen:
                    if len(seen) >= order_bound:
                        raise OrderBound(
                            f"closure exceeds order bound {order_bound}")
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt

    elems = sorted(seen)
    elems.remove(ident)
    elems.insert(0, ident)
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    mul = tuple(tuple(index[_compose(elems[a], elems[b])] for b in range(n))
                for a in range(n))
    inv = []
    for a in range(n):
        row = mul[a]
        inv.append(row.index(0))
    return FiniteGroup(order=n, mul=mul, inv=tuple(inv),
                       perm_images=tuple(elems),
                       generator_indices=tuple(sorted({index[g] for g in gens})))


def subgroup_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of G containing the seed elements."""
    seed = list(seed)
    for s in seed:
        if not isinstance(s, int) or not 0 <= s < G.order:
            raise BadIndex(f"element index {s!r} out of range")
    gens = sorted(set(seed) | {0})
    members = _mul_closure(G.mul, gens)
    return Subgroup(parent=G, members=tuple(sorted(members)))


def _mul_closure(mul, gens) -> set:
    """Elements reachable from the identity by left-multiplying by gens."""
    members = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul[g][a]
                if b not in members:
                    members.add(b)
                    nxt.append(b)
        frontier = nxt
    return members


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(parent=G, members=(0,))


def whole_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(parent=G, members=tuple(G.elements()))


def cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups <g>, each listed once, in deterministic order."""
    seen = {}
    for g in G.elements():
        members = [0]
        x = g
        while x != 0:
            members.append(x)
            x = G.mul[x][g]
        key = tuple(sorted(members))
        seen.setdefault(key, None)
    keys = sorted(seen, key=lambda m: (len(m), m))
    return [Subgroup(parent=G, members=m) for m in keys]


def normal_core(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Largest normal subgroup of G contained in H: ∩_g gHg^{-1}."""
    _check_parent(G, H)
    core = set(H.members)
    for g in G.elements():
        core &= {G.conjugate(g, h) for h in H.members}
    return Subgroup(parent=G, members=tuple(sorted(core)))


def subgroup_join(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """Smallest subgroup containing A ∪ B."""
    _check_parent(G, A)
    _check_parent(G, B)
    return subgroup_closure(G, list(A.members) + list(B.members))


def subgroup_intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    if A.parent is not B.parent and A.parent != B.parent:
        raise ParentMismatch("subgroups of different groups")
    members = sorted(set(A.members) & set(B.members))
    return Subgroup(parent=A.parent, members=tuple(members))


def left_cosets(G: FiniteGroup, H: Subgroup) -> list[tuple]:
    """Left cosets gH as sorted tuples, ordered by minimal element."""
    _check_parent(G, H)
    seen = set()
    cosets = []
    for g in G.elements():
        if g in seen:
            continue
        coset = tuple(sorted(G.mul[g][h] for h in H.members))
        seen.update(coset)
        cosets.append(coset)
    cosets.sort(key=lambda c: c[0])
    return cosets


def quotient_group(G: FiniteGroup, N: Subgroup) -> QuotientGroup:
    """Quotient by a normal subgroup, as a permutation group on cosets."""
    _check_parent(G, N)
    if not N.is_normal():
        raise NotNormal("subgroup is not normal")
    cosets = left_cosets(G, N)
    coset_of = {}
    for ci, coset in enumerate(cosets):
        for g in coset:
            coset_of[g] = ci
    degree = len(cosets)
    perms = []
    for g in G.elements():
        perms.append(tuple(coset_of[G.mul[g][c[0]]] for c in cosets))
    Q = group_from_permutations(degree, sorted(set(perms)),
                                order_bound=max(degree, 1))
    pindex = {p: i for i, p in enumerate(Q.perm_images)}
    projection = tuple(pindex[perms[g]] for g in G.elements())
    section = []
    for q in Q.elements():
        section.append(min(g for g in G.elements() if projection[g] == q))
    return QuotientGroup(quotient=Q, projection=projection,
                         section=tuple(section))


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    """Subgroup generated by all commutators."""
    comms = {G.commutator(a, b) for a in G.elements() for b in G.elements()}
    return subgroup_closure(G, sorted(comms))


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """{g : gHg^{-1} = H}."""
    _check_parent(G, H)
    hs = set(H.members)
    members = [g for g in G.elements()
               if {G.conjugate(g, h) for h in H.members} == hs]
    return Subgroup(parent=G, members=tuple(sorted(members)))


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of G (brute force; fine for order <= 64)."""
    seen = {(0,): None}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for members in frontier:
            for g in G.elements():
                if g in members:
                    continue
                bigger = subgroup_closure(G, list(members) + [g]).members
                if bigger not in seen:
                    seen[bigger] = None
                    nxt.append(bigger)
        frontier = nxt
    keys = sorted(seen, key=lambda m: (len(m), m))
    return [Subgroup(parent=G, members=m) for m in keys]


@lru_cache(maxsize=None)
def _subgroup_as_group(parent: FiniteGroup, members: tuple) -> FiniteGroup:
    pos = {g: i for i, g in enumerate(members)}
    n = len(members)
    mul = tuple(tuple(pos[parent.mul[a][b]] for b in members) for a in members)
    inv = tuple(pos[parent.inv[a]] for a in members)
    gens = []
    have = {0}
    for i in range(n):
        if i not in have:
            gens.append(i)
            have = _mul_closure(mul, gens)
    return FiniteGroup(order=n, mul=mul, inv=inv,
                       perm_images=tuple(parent.perm_images[g] for g in members),
                       generator_indices=tuple(gens))


def subgroup_as_group(H: Subgroup) -> FiniteGroup:
    """H reindexed as a standalone group; index i maps to H.members[i].

    The canonical ordering is inherited: members are sorted by parent
    index, which is the permutation-image order with identity first.
    """
    return _subgroup_as_group(H.parent, H.members)


def subgroup_name(H: Subgroup) -> str:
    """Stable display name: minimal generator if cyclic, else member list."""
    G = H.parent
    for g in H.members:
        cyc = subgroup_closure(G, [g])
        if cyc.members == H.members:
            return f"<{g}>"
    return "{" + ",".join(str(m) for m in H.members) + "}"


def product_set(G: FiniteGroup, A: Iterable[int], B: Iterable[int]) -> set:
    return {G.mul[a][b] for a in A for b in B}


def _check_parent(G: FiniteGroup, H: Subgroup) -> None:
    if H.parent is not G and H.parent != G:
        raise ParentMismatch("subgroup belongs to a different group")
