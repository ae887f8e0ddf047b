"""Integer lattices with group action and the character-lattice constructors.

A ``GLattice`` is a free Z-module of finite rank on which a finite group
acts by unimodular integer matrices, one stored matrix per group element
(exhaustively validated).  The constructors here build the permutation
modules Z[G/H], their direct sums, the multinorm character lattice
(quotient of a sum of permutation modules by the diagonal norm vector) and
the norm-one character lattice Z[G/K]/Z, together with the short exact
sequences that define them.

Quotients are only taken by saturated sublattices, so every lattice here
is torsion free; attempts to quotient by a non-saturated sublattice raise
:class:`~multinorm.errors.NotSaturated`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DescentFailure,
    GroupMismatch,
    NotEquivariant,
    NotInjective,
    NotNested,
    NotSaturated,
)
from .groups import (
    FiniteGroup,
    QuotientGroup,
    Subgroup,
    left_cosets,
    subgroup_as_group,
    whole_subgroup,
)
from .intlinalg import (
    ColumnReduction,
    dense_to_cols,
    identity_matrix,
    mat_mul,
    smith_normal_form,
)

Matrix = tuple  # tuple of row tuples


def freeze(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def _identity(n: int) -> Matrix:
    return freeze(identity_matrix(n))


def same_group(a: FiniteGroup, b: FiniteGroup) -> bool:
    """Equal as indexed groups (generator bookkeeping may differ)."""
    return a.order == b.order and a.mul == b.mul


@dataclass(frozen=True)
class GLattice:
    """Free Z-module with a group acting by unimodular matrices."""

    group: FiniteGroup
    rank: int
    action: tuple  # one rank x rank matrix per group element
    basis_labels: tuple

    def __post_init__(self):
        G = self.group
        if len(self.action) != G.order or len(self.basis_labels) != self.rank:
            raise GroupMismatch("action table or labels of wrong length")
        ident = _identity(self.rank)
        if self.action[0] != ident:
            raise NotEquivariant("identity must act trivially")
        acts = self.action
        for g in G.elements():
            if freeze(mat_mul(acts[g], acts[G.inv[g]])) != ident:
                raise NotEquivariant(f"action of {g} is not invertible over Z")
        for g in G.elements():
            ag = acts[g]
            for h in G.elements():
                if freeze(mat_mul(ag, acts[h])) != acts[G.mul[g][h]]:
                    raise NotEquivariant(
                        f"action is not a homomorphism at ({g}, {h})")

    def act(self, g: int, vec: Sequence[int]) -> list[int]:
        return [sum(row[j] * vec[j] for j in range(self.rank) if row[j])
                for row in self.action[g]]


@dataclass(frozen=True)
class LatticeMorphism:
    """Equivariant map of lattices over the same group."""

    source: GLattice
    target: GLattice
    matrix: Matrix  # target.rank x source.rank

    def __post_init__(self):
        if not same_group(self.source.group, self.target.group):
            raise GroupMismatch("morphism endpoints over different groups")
        m = [list(r) for r in self.matrix]
        if len(m) != self.target.rank or any(
                len(r) != self.source.rank for r in m):
            raise NotEquivariant("matrix has wrong shape")
        for g in self.source.group.elements():
            lhs = mat_mul(m, [list(r) for r in self.source.action[g]])
            rhs = mat_mul([list(r) for r in self.target.action[g]], m)
            if lhs != rhs:
                raise NotEquivariant(f"matrix does not intertwine element {g}")

    def apply(self, vec: Sequence[int]) -> list[int]:
        return [sum(row[j] * vec[j] for j in range(self.source.rank) if row[j])
                for row in self.matrix]


@dataclass(frozen=True)
class LatticeSES:
    """Short exact sequence 0 -> A -> B -> C -> 0 of lattices.

    ``sub`` must be injective with saturated image and ``quot`` surjective;
    exactness in the middle is certified by Smith normal form.
    """

    sub: LatticeMorphism
    quot: LatticeMorphism

    def __post_init__(self):
        if not same_group(self.sub.target.group, self.quot.source.group):
            raise GroupMismatch("sub and quot over different groups")
        if self.sub.target.rank != self.quot.source.rank:
            raise NotEquivariant("sub target and quot source differ")
        a = self.sub.source.rank
        b = self.sub.target.rank
        c = self.quot.target.rank
        if a + c != b:
            raise NotEquivariant("ranks are not additive")
        comp = mat_mul([list(r) for r in self.quot.matrix],
                       [list(r) for r in self.sub.matrix])
        if any(any(row) for row in comp):
            raise NotEquivariant("quot o sub is nonzero")
        dsub = smith_normal_form(self.sub.matrix).diag if a else []
        if len([d for d in dsub if d]) != a:
            raise NotInjective("sub has a kernel")
        if any(d not in (0, 1) for d in dsub):
            raise NotSaturated("image of sub is not saturated")
        dq = smith_normal_form(self.quot.matrix).diag if c else []
        if [d for d in dq if d] != [1] * c:
            raise NotSaturated("quot is not a split surjection over Z")

    @property
    def middle(self) -> GLattice:
        return self.sub.target


def trivial_lattice(G: FiniteGroup, rank: int,
                    labels: tuple | None = None) -> GLattice:
    """Rank-n lattice with trivial action (the module Z^n)."""
    ident = _identity(rank)
    if labels is None:
        labels = tuple(f"e{i}" for i in range(rank))
    return GLattice(group=G, rank=rank,
                    action=tuple(ident for _ in G.elements()),
                    basis_labels=labels)


def permutation_lattice(G: FiniteGroup, H: Subgroup) -> GLattice:
    """Z[G/H]: basis the left cosets, permuted by left translation."""
    cosets = left_cosets(G, H)
    n = len(cosets)
    coset_of = {}
    for ci, coset in enumerate(cosets):
        for g in coset:
            coset_of[g] = ci
    action = []
    for g in G.elements():
        rows = [[0] * n for _ in range(n)]
        for j, coset in enumerate(cosets):
            rows[coset_of[G.mul[g][coset[0]]]][j] = 1
        action.append(freeze(rows))
    labels = tuple(f"g{c[0]}H" for c in cosets)
    return GLattice(group=G, rank=n, action=tuple(action), basis_labels=labels)


def direct_sum(parts: Sequence[GLattice]) -> GLattice:
    """Block-diagonal sum of lattices over one group."""
    if not parts:
        raise GroupMismatch("empty direct sum needs a group")
    G = parts[0].group
    for p in parts:
        if not same_group(p.group, G):
            raise GroupMismatch("direct sum over different groups")
    live = [p for p in parts if p.rank] or [parts[0]]
    if len(live) == 1:
        return live[0]
    parts = live
    rank = sum(p.rank for p in parts)
    action = []
    for g in G.elements():
        rows = [[0] * rank for _ in range(rank)]
        off = 0
        for p in parts:
            mat = p.action[g]
            for i in range(p.rank):
                row = rows[off + i]
                for j, v in enumerate(mat[i]):
                    if v:
                        row[off + j] = v
            off += p.rank
        action.append(freeze(rows))
    labels = []
    for bi, p in enumerate(parts):
        labels.extend(f"b{bi}:{lab}" for lab in p.basis_labels)
    return GLattice(group=G, rank=rank, action=tuple(action),
                    basis_labels=tuple(labels))


def diagonal_norm_embedding(G: FiniteGroup,
                            subgroups: Sequence[Subgroup]) -> LatticeMorphism:
    """Z -> ⊕_i Z[G/H_i], 1 |-> sum of all basis vectors (the norm vector)."""
    if not subgroups:
        raise GroupMismatch("need at least one subgroup")
    target = direct_sum([permutation_lattice(G, H) for H in subgroups])
    matrix = freeze([[1]] * target.rank)
    return LatticeMorphism(source=trivial_lattice(G, 1, labels=("1",)),
                           target=target, matrix=matrix)


def quotient_lattice(M: GLattice,
                     sub: LatticeMorphism) -> tuple[GLattice, LatticeMorphism]:
    """Torsion-free quotient of M by the image of ``sub``.

    Requires ``sub`` to be injective with saturated image; returns the
    quotient lattice together with the projection morphism.
    """
    if sub.target != M:
        raise GroupMismatch("sub does not map into M")
    s = sub.source.rank
    m = M.rank
    if s == 0:
        ident = _identity(m)
        return M, LatticeMorphism(source=M, target=M, matrix=ident)
    snf = smith_normal_form(sub.matrix)
    nonzero = [d for d in snf.diag if d]
    if len(nonzero) != s:
        raise NotInjective("sublattice map has a kernel")
    if any(d != 1 for d in nonzero):
        raise NotSaturated(
            f"quotient would have torsion (invariant factors {nonzero})")
    q = m - s
    proj = [snf.left[i] for i in range(s, m)]          # q x m
    section = [[snf.left_inv[i][j] for j in range(s, m)] for i in range(m)]
    action = []
    for g in M.group.elements():
        ag = mat_mul(proj, mat_mul([list(r) for r in M.action[g]], section))
        action.append(freeze(ag))
    labels = []
    for j in range(q):
        col = [section[i][j] for i in range(m)]
        hits = [i for i, v in enumerate(col) if v]
        if len(hits) == 1 and col[hits[0]] in (1, -1):
            labels.append(M.basis_labels[hits[0]])
        else:
            labels.append(f"q{j}")
    Q = GLattice(group=M.group, rank=q, action=tuple(action),
                 basis_labels=tuple(labels))
    return Q, LatticeMorphism(source=M, target=Q, matrix=freeze(proj))


def multinorm_character_lattice(
        G: FiniteGroup,
        subgroups: Sequence[Subgroup]) -> tuple[GLattice, LatticeSES]:
    """Character lattice of the multinorm torus for the given subgroups.

    T = (⊕_i Z[G/H_i]) / Z·(norm vector), with its defining short exact
    sequence; the rank is sum of indices minus one.
    """
    eps = diagonal_norm_embedding(G, subgroups)
    T, proj = quotient_lattice(eps.target, eps)
    return T, LatticeSES(sub=eps, quot=proj)


def normone_character_lattice(
        G: FiniteGroup, K: Subgroup) -> tuple[GLattice, LatticeSES]:
    """Character lattice Z[G/K]/Z of the norm-one torus of K's field."""
    return multinorm_character_lattice(G, [K])


def norm_character_map(G: FiniteGroup, K: Subgroup,
                       H: Subgroup) -> LatticeMorphism:
    """Z[G/K] -> Z[G/H]: a K-coset maps to the sum of its H-cosets."""
    if not K.contains(H):
        raise NotNested("H must be contained in K")
    source = permutation_lattice(G, K)
    target = permutation_lattice(G, H)
    kcosets = left_cosets(G, K)
    hcosets = left_cosets(G, H)
    kindex = {}
    for j, coset in enumerate(kcosets):
        for g in coset:
            kindex[g] = j
    rows = [[0] * len(kcosets) for _ in range(len(hcosets))]
    for i, hc in enumerate(hcosets):
        rows[i][kindex[hc[0]]] = 1
    return LatticeMorphism(source=source, target=target, matrix=freeze(rows))


def s_to_t_morphism(G: FiniteGroup, subgroups: Sequence[Subgroup],
                    K: Subgroup) -> LatticeMorphism:
    """Injective map from the norm-one lattice of K into the multinorm lattice.

    Descends the stacked coset-summation maps Z[G/K] -> Z[G/H_i] through
    both diagonal quotients.
    """
    from .groups import subgroup_join

    join = subgroups[0]
    for H in subgroups[1:]:
        join = subgroup_join(G, join, H)
    if join.members != K.members:
        warnings.warn("K is not the join of the field subgroups",
                      stacklevel=2)
    blocks = [norm_character_map(G, K, H) for H in subgroups]
    S, ses_s = normone_character_lattice(G, K)
    T, ses_t = multinorm_character_lattice(G, subgroups)
    nrows = sum(b.target.rank for b in blocks)
    stacked = [[0] * blocks[0].source.rank for _ in range(nrows)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b.matrix):
            stacked[off + i] = list(row)
        off += b.target.rank
    # descend: P_T . N . C_S, then check independence of the section
    proj_t = [list(r) for r in ses_t.quot.matrix]
    proj_s = [list(r) for r in ses_s.quot.matrix]
    snf_s = smith_normal_form(ses_s.sub.matrix)
    msrank = ses_s.middle.rank
    section_s = [[snf_s.left_inv[i][j] for j in range(1, msrank)]
                 for i in range(msrank)]
    descended = mat_mul(proj_t, mat_mul(stacked, section_s))
    if mat_mul(descended, proj_s) != mat_mul(proj_t, stacked):
        raise DescentFailure("diagonal images do not correspond")
    morphism = LatticeMorphism(source=S, target=T, matrix=freeze(descended))
    if S.rank:
        diag = smith_normal_form(descended).diag
        if len([d for d in diag if d]) != S.rank:
            raise NotInjective("descended map is not injective")
    return morphism


def restrict_lattice(M: GLattice, H: Subgroup) -> GLattice:
    """The same module viewed over the subgroup H."""
    if not same_group(H.parent, M.group):
        raise GroupMismatch("subgroup of a different group")
    if len(H.members) == M.group.order:
        return M
    HG = subgroup_as_group(H)
    return GLattice(group=HG, rank=M.rank,
                    action=tuple(M.action[g] for g in H.members),
                    basis_labels=M.basis_labels)


def fixed_sublattice(M: GLattice, H: Subgroup) -> LatticeMorphism:
    """Inclusion of the H-fixed vectors, as a morphism of H-lattices.

    The source carries the trivial action of H; the kernel construction
    makes the image saturated.
    """
    if not same_group(H.parent, M.group):
        raise GroupMismatch("subgroup of a different group")
    target = restrict_lattice(M, H)
    rows = []
    for h in H.members:
        if h == 0:
            continue
        mat = M.action[h]
        for i in range(M.rank):
            row = list(mat[i])
            row[i] -= 1
            rows.append(row)
    if rows:
        red = ColumnReduction(len(rows), dense_to_cols(rows),
                              track_inverse=False)
        cols = red.kernel_columns()
    else:
        cols = [{i: 1} for i in range(M.rank)]
    z = len(cols)
    matrix = freeze([[cols[j].get(i, 0) for j in range(z)]
                     for i in range(M.rank)])
    source = trivial_lattice(target.group, z,
                             labels=tuple(f"f{j}" for j in range(z)))
    return LatticeMorphism(source=source, target=target, matrix=matrix)


def invariant_lattice_over_quotient(
        M: GLattice, Gbar: QuotientGroup) -> tuple[GLattice, Matrix]:
    """Fixed sublattice under the kernel of Gbar, as a quotient-group lattice.

    Returns the lattice over ``Gbar.quotient`` together with the inclusion
    matrix of its basis into M.  The action is induced via the section and
    does not depend on the representatives chosen.
    """
    G = M.group
    if len(Gbar.projection) != G.order:
        raise GroupMismatch("quotient of a different group")
    n_members = [g for g in G.elements() if Gbar.projection[g] == 0]
    rows = []
    for h in n_members:
        if h == 0:
            continue
        mat = M.action[h]
        for i in range(M.rank):
            row = list(mat[i])
            row[i] -= 1
            rows.append(row)
    if rows:
        red = ColumnReduction(len(rows), dense_to_cols(rows))
        cols = red.kernel_columns()
        left = red.kernel_left_inverse()
    else:
        cols = [{i: 1} for i in range(M.rank)]
        left = [{i: 1} for i in range(M.rank)]
    z = len(cols)
    incl = [[cols[j].get(i, 0) for j in range(z)] for i in range(M.rank)]
    action = []
    for x in Gbar.quotient.elements():
        rep = Gbar.section[x]
        ai = mat_mul([list(r) for r in M.action[rep]], incl)
        induced = [[sum(left[i].get(k, 0) * ai[k][j] for k in left[i])
                    for j in range(z)] for i in range(z)]
        if mat_mul(incl, induced) != ai:
            raise NotEquivariant("fixed space is not stable under the action")
        action.append(freeze(induced))
    lat = GLattice(group=Gbar.quotient, rank=z, action=tuple(action),
                   basis_labels=tuple(f"f{j}" for j in range(z)))
    return lat, freeze(incl)
