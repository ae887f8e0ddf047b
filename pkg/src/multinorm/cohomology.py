"""Integral group cohomology on the inhomogeneous bar complex.

``H^n(G, M)`` for ``n <= 3`` is computed from the complex of maps
``G^n -> M`` with the standard differential

    (df)(g_1,...,g_{n+1}) = g_1 f(g_2,...,g_{n+1})
        + sum_i (-1)^i f(g_1,...,g_i g_{i+1},...,g_{n+1})
        + (-1)^{n+1} f(g_1,...,g_n),

using exact integer kernels and Smith normal form; every cohomology group
comes with explicit cocycle representatives and a coordinate map, so maps
between groups are integer matrices in fixed coordinates.

Local-global model
------------------
``sha_omega`` computes the joint kernel of restriction to every cyclic
subgroup.  For a module split by a finite extension, a class is locally
trivial at almost all completions exactly when its restriction to every
cyclic subgroup of the splitting group vanishes: unramified decomposition
groups are cyclic, every cyclic subgroup occurs as one infinitely often,
and only finitely many ramified places exist.  That bridge from "almost
all places" to "all cyclic subgroups" is the only arithmetic input; the
everywhere-local kernel is genuinely not a function of the group alone
and is exposed only through ``sha_relative`` with a caller-supplied
family of decomposition subgroups.

Rational coefficient groups are never represented directly: H^1(-, Q/Z)
is the dual of the abelianization (``h1_dual``) and H^2(-, Q/Z) is read
through the connecting isomorphism with H^3(-, Z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import (
    BudgetExceeded,
    InternalError,
    NotFixedModule,
    UnsupportedDegree,
)
from .groups import (
    FiniteGroup,
    QuotientGroup,
    Subgroup,
    cyclic_subgroups,
    derived_subgroup,
    subgroup_as_group,
    subgroup_name,
)
from .intlinalg import ColumnReduction, dense_to_cols, smith_normal_form
from .lattices import (
    GLattice,
    LatticeMorphism,
    LatticeSES,
    invariant_lattice_over_quotient,
    restrict_lattice,
    same_group,
)

DEFAULT_BUDGET = 2_000_000
MAX_DEGREE = 3


def _check_budget(G: FiniteGroup, rank: int, n: int, budget: int | None) -> None:
    if not 0 <= n <= MAX_DEGREE:
        raise UnsupportedDegree(f"degree {n} outside 0..{MAX_DEGREE}")
    limit = DEFAULT_BUDGET if budget is None else budget
    cost = G.order ** (n + 1) * max(rank, 1)
    if cost > limit:
        raise BudgetExceeded(
            f"cochain dimension {cost} exceeds budget {limit}")


def _act_cols(M: GLattice) -> list[list[dict]]:
    """Sparse columns of every action matrix."""
    out = []
    for g in M.group.elements():
        mat = M.action[g]
        cols = [dict() for _ in range(M.rank)]
        for i, row in enumerate(mat):
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = v
        out.append(cols)
    return out


def bar_differential_columns(G: FiniteGroup, M: GLattice, n: int) -> list[dict]:
    """Columns of d^n : C^n(G, M) -> C^{n+1}(G, M).

    Row/column indices are ``tuple_index * rank + basis_index`` with the
    tuple index in mixed radix, most significant first.
    """
    order, rank = G.order, M.rank
    act = _act_cols(M)
    inv = G.inv
    cols = []
    if n == 0:
        for b in range(rank):
            col: dict = {}
            for g in G.elements():
                base = g * rank
                for i, v in act[g][b].items():
                    col[base + i] = col.get(base + i, 0) + v
                col[base + b] = col.get(base + b, 0) - 1
            cols.append({k: v for k, v in col.items() if v})
        return cols

    powers = [order ** k for k in range(n + 2)]
    last_sign = -1 if (n + 1) % 2 else 1
    for s in product(range(order), repeat=n):
        t_s = 0
        for j, gj in enumerate(s):
            t_s += gj * powers[n - 1 - j]
        for b in range(rank):
            col = {}
            # g_1 . f(g_2..g_{n+1})
            for g1 in G.elements():
                base = (g1 * powers[n] + t_s) * rank
                for i, v in act[g1][b].items():
                    key = base + i
                    col[key] = col.get(key, 0) + v
            # merged arguments, signs alternating
            for i in range(1, n + 1):
                sign = -1 if i % 2 else 1
                prefix = 0
                for j in range(i - 1):
                    prefix += s[j] * powers[n - j]
                suffix = 0
                for j in range(i, n):
                    suffix += s[j] * powers[n - 1 - j]
                si = s[i - 1]
                for x in G.elements():
                    u = prefix + x * powers[n - i + 1] \
                        + G.mul[inv[x]][si] * powers[n - i] + suffix
                    key = u * rank + b
                    col[key] = col.get(key, 0) + sign
            # (-1)^{n+1} f(g_1..g_n)
            for g in G.elements():
                key = (t_s * order + g) * rank + b
                col[key] = col.get(key, 0) + last_sign
            cols.append({k: v for k, v in col.items() if v})
    return cols


def apply_bar_differential(G: FiniteGroup, M: GLattice, n: int,
                           vec) -> list[int]:
    """d^n applied to one dense cochain vector."""
    order, rank = G.order, M.rank
    out = [0] * (order ** (n + 1) * rank)
    if n == 0:
        for g in G.elements():
            img = M.act(g, vec)
            base = g * rank
            for i in range(rank):
                out[base + i] = img[i] - vec[i]
        return out
    powers = [order ** k for k in range(n + 2)]
    last_sign = -1 if (n + 1) % 2 else 1
    for u in product(range(order), repeat=n + 1):
        t_u = 0
        for j, gj in enumerate(u):
            t_u += gj * powers[n - j]
        base = t_u * rank
        # g_1 . f(tail)
        tail = 0
        for j in range(1, n + 1):
            tail += u[j] * powers[n - j]
        block = vec[tail * rank:(tail + 1) * rank]
        img = M.act(u[0], block)
        for i in range(rank):
            out[base + i] += img[i]
        # merged terms
        for i in range(1, n + 1):
            sign = -1 if i % 2 else 1
            idx = 0
            pos = 0
            for j in range(n + 1):
                if j == i - 1:
                    continue
                g = G.mul[u[i - 1]][u[i]] if j == i else u[j]
                idx += g * powers[n - 1 - pos]
                pos += 1
            for k in range(rank):
                out[base + k] += sign * vec[idx * rank + k]
        # last face
        head = 0
        for j in range(n):
            head += u[j] * powers[n - 1 - j]
        for k in range(rank):
            out[base + k] += last_sign * vec[head * rank + k]
    return out


class CohGroup:
    """A finite abelian H^n in fixed coordinates.

    ``relations[i]`` is the order of the i-th coordinate (0 means a free
    coordinate, possible only in degree 0); ``representatives[i]`` is an
    explicit cocycle generating it.
    """

    def __init__(self, group, lattice, degree, invariant_factors, free_rank,
                 representatives, solver=None):
        self.group = group
        self.lattice = lattice
        self.degree = degree
        self.invariant_factors = tuple(invariant_factors)
        self.free_rank = free_rank
        self.representatives = tuple(tuple(r) for r in representatives)
        self.relations = self.invariant_factors + (0,) * free_rank
        self._solver = solver

    @property
    def dim(self) -> int:
        return len(self.relations)

    @property
    def order(self) -> int:
        if self.free_rank:
            return 0
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def is_trivial(self) -> bool:
        return self.dim == 0

    def coordinate_of(self, cocycle) -> tuple[int, ...]:
        """Coordinates of a cocycle, reduced modulo the relations."""
        if self._solver is None:
            raise InternalError("this presentation has no cochain solver")
        kernel_cols, left_rows, coord_rows = self._solver
        c = list(cocycle)
        y = [sum(v * c[k] for k, v in row.items()) for row in left_rows]
        back = [0] * len(c)
        for k, col in enumerate(kernel_cols):
            if y[k]:
                for i, v in col.items():
                    back[i] += y[k] * v
        if back != c:
            raise InternalError("vector is not a cocycle of this group")
        coords = []
        for pos, rel in enumerate(self.relations):
            w = sum(coord_rows[pos][k] * y[k] for k in range(len(y))
                    if coord_rows[pos][k])
            coords.append(w % rel if rel else w)
        return tuple(coords)

    def reduce(self, coords) -> tuple[int, ...]:
        return tuple(c % d if d else c
                     for c, d in zip(coords, self.relations))

    def json_dict(self) -> dict:
        out = {"invariant_factors": list(self.invariant_factors)}
        if self.degree == 0:
            out["free_rank"] = self.free_rank
        return out

    def __repr__(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        parts += ["Z"] * self.free_rank
        body = " + ".join(parts) if parts else "0"
        return f"H^{self.degree} = {body}"


@lru_cache(maxsize=None)
def _cohomology(G: FiniteGroup, M: GLattice, n: int) -> CohGroup:
    if not same_group(G, M.group):
        raise InternalError("lattice is over a different group")
    rank = M.rank
    dim_n = G.order ** n * rank
    if rank == 0:
        return CohGroup(G, M, n, (), 0, (), solver=([], [], []))
    cols_n = bar_differential_columns(G, M, n)
    red = ColumnReduction(G.order ** (n + 1) * rank, cols_n)
    kernel = red.kernel_columns()
    left = red.kernel_left_inverse()
    z = len(kernel)
    if n == 0:
        reps = [tuple(col.get(i, 0) for i in range(dim_n)) for col in kernel]
        coord_rows = [[1 if k == j else 0 for k in range(z)]
                      for j in range(z)]
        return CohGroup(G, M, 0, (), z, reps,
                        solver=(kernel, left, coord_rows))
    prev = bar_differential_columns(G, M, n - 1)
    relmat = [[0] * len(prev) for _ in range(z)]
    for j, col in enumerate(prev):
        for k in range(z):
            row = left[k]
            small, big = (row, col) if len(row) < len(col) else (col, row)
            relmat[k][j] = sum(v * big.get(key, 0)
                               for key, v in small.items())
        # certify the image column lies in the kernel lattice
        back: dict = {}
        for k in range(z):
            c = relmat[k][j]
            if c:
                for i, v in kernel[k].items():
                    back[i] = back.get(i, 0) + c * v
        if {k: v for k, v in back.items() if v} != col:
            raise InternalError("boundary is not a cocycle (d o d != 0?)")
    snf = smith_normal_form(relmat) if prev else None
    diag = list(snf.diag) if snf else []
    diag += [0] * (z - len(diag))
    if any(d == 0 for d in diag):
        raise InternalError(
            f"H^{n} has free rank (SNF bug or infinite cohomology)")
    torsion = [(i, d) for i, d in enumerate(diag) if d >= 2]
    reps = []
    coord_rows = []
    for pos, d in torsion:
        gen = [0] * dim_n
        for k in range(z):
            c = snf.left_inv[k][pos]
            if c:
                for i, v in kernel[k].items():
                    gen[i] += c * v
        reps.append(tuple(gen))
        coord_rows.append(list(snf.left[pos]))
    return CohGroup(G, M, n, tuple(d for _, d in torsion), 0, reps,
                    solver=(kernel, left, coord_rows))


def cohomology_group(G: FiniteGroup, M: GLattice, n: int,
                     budget: int | None = None) -> CohGroup:
    """H^n(G, M) with invariant factors, representatives and coordinates."""
    _check_budget(G, M.rank, n, budget)
    from .cache import cache_fetch
    return cache_fetch(G, M, n, _cohomology)


class CohMap:
    """Map between cohomology groups, as a matrix on coordinates."""

    def __init__(self, source: CohGroup, target: CohGroup, matrix):
        self.source = source
        self.target = target
        rows = [list(r) for r in matrix]
        if len(rows) != target.dim or any(
                len(r) != source.dim for r in rows):
            raise InternalError("coordinate matrix has wrong shape")
        for i, rel in enumerate(target.relations):
            if rel:
                rows[i] = [v % rel for v in rows[i]]
        for j, rel in enumerate(source.relations):
            if not rel:
                continue
            for i, trel in enumerate(target.relations):
                v = rel * rows[i][j]
                if trel and v % trel:
                    raise InternalError("map is not well defined")
                if not trel and v:
                    raise InternalError("map is not well defined")
        self.matrix = tuple(tuple(r) for r in rows)

    def apply(self, coords) -> tuple[int, ...]:
        out = [sum(row[j] * coords[j] for j in range(self.source.dim))
               for row in self.matrix]
        return self.target.reduce(out)

    def compose(self, inner: "CohMap") -> "CohMap":
        """self o inner."""
        if inner.target is not self.source and \
                inner.target.relations != self.source.relations:
            raise InternalError("composition endpoints disagree")
        rows = [[sum(self.matrix[i][k] * inner.matrix[k][j]
                     for k in range(self.source.dim))
                 for j in range(inner.source.dim)]
                for i in range(self.target.dim)]
        return CohMap(inner.source, self.target, rows)

    def is_zero(self) -> bool:
        for i, rel in enumerate(self.target.relations):
            for v in self.matrix[i]:
                if rel and v % rel:
                    return False
                if not rel and v:
                    return False
        return True

    def is_injective(self) -> bool:
        return not subgroup_invariants(self.source, kernel_gens(self))

    def json_dict(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix]}


def cohmap_from_cochain_map(source: CohGroup, target: CohGroup,
                            fn) -> CohMap:
    cols = [target.coordinate_of(fn(rep)) for rep in source.representatives]
    rows = [[cols[j][i] for j in range(source.dim)]
            for i in range(target.dim)]
    return CohMap(source, target, rows)


def identity_cohmap(coh: CohGroup) -> CohMap:
    rows = [[1 if i == j else 0 for j in range(coh.dim)]
            for i in range(coh.dim)]
    return CohMap(coh, coh, rows)


def restriction_map(G: FiniteGroup, H: Subgroup, M: GLattice, n: int,
                    budget: int | None = None) -> CohMap:
    """res: H^n(G, M) -> H^n(H, M) by restricting cochains."""
    source = cohomology_group(G, M, n, budget)
    MH = restrict_lattice(M, H)
    target = cohomology_group(MH.group, MH, n, budget)
    rank = M.rank
    members = H.members
    h = len(members)
    if n == 0:
        def fn(vec):
            return list(vec)
    else:
        src_index = []
        powers = [G.order ** k for k in range(n)]
        for t in product(range(h), repeat=n):
            idx = 0
            for j, x in enumerate(t):
                idx += members[x] * powers[n - 1 - j]
            src_index.append(idx)

        def fn(vec):
            out = []
            for idx in src_index:
                out.extend(vec[idx * rank:(idx + 1) * rank])
            return out
    return cohmap_from_cochain_map(source, target, fn)


def induced_map(f: LatticeMorphism, n: int,
                budget: int | None = None) -> CohMap:
    """Coefficient map on cohomology induced by a lattice morphism."""
    G = f.source.group
    source = cohomology_group(G, f.source, n, budget)
    target = cohomology_group(G, f.target, n, budget)
    sr, tr = f.source.rank, f.target.rank
    mat = f.matrix
    blocks = G.order ** n

    def fn(vec):
        out = [0] * (blocks * tr)
        for t in range(blocks):
            src = vec[t * sr:(t + 1) * sr]
            base = t * tr
            for i in range(tr):
                out[base + i] = sum(mat[i][j] * src[j]
                                    for j in range(sr) if mat[i][j])
        return out
    return cohmap_from_cochain_map(source, target, fn)


def inflation_map(Gbar: QuotientGroup, M_fixed: GLattice, M: GLattice,
                  n: int, budget: int | None = None) -> CohMap:
    """inf: H^n(G/N, M^N) -> H^n(G, M).

    ``M_fixed`` must be exactly the lattice produced by
    :func:`~multinorm.lattices.invariant_lattice_over_quotient` (same
    basis); anything else raises NotFixedModule.
    """
    expected, incl = invariant_lattice_over_quotient(M, Gbar)
    if M_fixed.rank != expected.rank or M_fixed.action != expected.action \
            or not same_group(M_fixed.group, expected.group):
        raise NotFixedModule(
            "module is not the induced fixed sublattice in its canonical basis")
    G = M.group
    Q = Gbar.quotient
    source = cohomology_group(Q, M_fixed, n, budget)
    target = cohomology_group(G, M, n, budget)
    rank, zrank = M.rank, M_fixed.rank
    proj = Gbar.projection

    if n == 0:
        def fn(vec):
            out = [0] * rank
            for i in range(rank):
                out[i] = sum(incl[i][j] * vec[j] for j in range(zrank)
                             if incl[i][j])
            return out
    else:
        qpow = [Q.order ** k for k in range(n)]
        gpow = [G.order ** k for k in range(n)]
        index_map = []
        for t in product(range(G.order), repeat=n):
            qidx = 0
            for j, g in enumerate(t):
                qidx += proj[g] * qpow[n - 1 - j]
            index_map.append(qidx)

        def fn(vec):
            out = [0] * (len(index_map) * rank)
            for tg, qidx in enumerate(index_map):
                src = vec[qidx * zrank:(qidx + 1) * zrank]
                base = tg * rank
                for i in range(rank):
                    out[base + i] = sum(incl[i][j] * src[j]
                                        for j in range(zrank) if incl[i][j])
            return out
    return cohmap_from_cochain_map(source, target, fn)


def connecting_map(ses: LatticeSES, n: int, budget: int | None = None,
                   verify: bool = True) -> CohMap:
    """delta: H^n(G, C) -> H^{n+1}(G, A) by cocycle lifting.

    With ``verify`` the six-term exactness around delta is certified
    against the two induced maps.
    """
    if n > MAX_DEGREE - 1:
        raise UnsupportedDegree("connecting map would exceed degree 3")
    A, B, C = ses.sub.source, ses.middle, ses.quot.target
    G = B.group
    source = cohomology_group(G, C, n, budget)
    target = cohomology_group(G, A, n + 1, budget)
    quot_red = ColumnReduction(C.rank, dense_to_cols(ses.quot.matrix),
                               track_inverse=False)
    section = []
    for i in range(C.rank):
        e = [1 if k == i else 0 for k in range(C.rank)]
        s = quot_red.solve(e)
        if s is None:
            raise InternalError("quotient map has no integer section")
        section.append(s)  # section[i] is a B-vector lifting e_i
    sub_red = ColumnReduction(B.rank, dense_to_cols(ses.sub.matrix),
                              track_inverse=False)
    blocks = G.order ** n

    def fn(vec):
        lifted = [0] * (blocks * B.rank)
        for t in range(blocks):
            cblk = vec[t * C.rank:(t + 1) * C.rank]
            base = t * B.rank
            for i, ci in enumerate(cblk):
                if ci:
                    for k in range(B.rank):
                        lifted[base + k] += ci * section[i][k]
        dl = apply_bar_differential(G, B, n, lifted)
        out = []
        for t in range(G.order ** (n + 1)):
            blk = dl[t * B.rank:(t + 1) * B.rank]
            a = sub_red.solve(blk)
            if a is None:
                raise InternalError("differential of lift misses the sublattice")
            out.extend(a)
        return out

    delta = cohmap_from_cochain_map(source, target, fn)
    if verify:
        to_c = induced_map(ses.quot, n, budget)
        from_a = induced_map(ses.sub, n + 1, budget)
        if not exact_at(to_c, delta) or not exact_at(delta, from_a):
            raise InternalError("connecting map fails exactness")
    return delta


# -- subgroups of cohomology groups -------------------------------------

def kernel_gens(f: CohMap) -> list[list[int]]:
    """Generators (source coordinates) of ker(f)."""
    a, b = f.source.dim, f.target.dim
    rows = [list(f.matrix[i]) for i in range(b)]
    slack = [d for d in f.target.relations if d]
    for i in range(b):
        rows[i].extend(0 for _ in slack)
    k = 0
    for i, d in enumerate(f.target.relations):
        if d:
            rows[i][a + k] = d
            k += 1
    red = ColumnReduction(b, dense_to_cols(rows), track_inverse=False)
    gens = [[col.get(i, 0) for i in range(a)] for col in red.kernel_columns()]
    for j, d in enumerate(f.source.relations):
        if d:
            gens.append([d if i == j else 0 for i in range(a)])
    return gens


def image_gens(f: CohMap) -> list[list[int]]:
    """Generators (target coordinates) of im(f)."""
    return [[f.matrix[i][j] for i in range(f.target.dim)]
            for j in range(f.source.dim)]


def _span_with_relations(coh: CohGroup, gens) -> list[dict]:
    cols = []
    for g in gens:
        col = {i: v for i, v in enumerate(g) if v}
        cols.append(col)
    for j, d in enumerate(coh.relations):
        if d:
            cols.append({j: d})
    return cols


def subgroup_contains(coh: CohGroup, gens, vec) -> bool:
    """Does the subgroup generated by gens (plus relations) contain vec?"""
    red = ColumnReduction(coh.dim, _span_with_relations(coh, gens),
                          track_inverse=False)
    return red.solve(list(vec)) is not None


def subgroups_equal(coh: CohGroup, gens_a, gens_b) -> bool:
    red_a = ColumnReduction(coh.dim, _span_with_relations(coh, gens_a),
                            track_inverse=False)
    red_b = ColumnReduction(coh.dim, _span_with_relations(coh, gens_b),
                            track_inverse=False)
    return all(red_b.solve(list(g)) is not None for g in gens_a) and \
        all(red_a.solve(list(g)) is not None for g in gens_b)


def exact_at(f: CohMap, g: CohMap) -> bool:
    """im(f) == ker(g) inside f.target (== g.source)."""
    return subgroups_equal(f.target, image_gens(f), kernel_gens(g))


def subgroup_invariants(coh: CohGroup, gens) -> tuple[int, ...]:
    """Invariant factors of the subgroup generated by gens."""
    pres = presented_subgroup(coh, gens)
    return pres.invariant_factors


def presented_subgroup(ambient: CohGroup, gens) -> CohGroup:
    """The subgroup of ``ambient`` generated by ``gens`` (coordinates),
    presented with its own invariant factors and explicit cocycles."""
    if ambient.free_rank:
        raise InternalError("subgroup presentation needs a finite ambient")
    red = ColumnReduction(ambient.dim, _span_with_relations(ambient, gens))
    basis = [col for col in red.cols if col]
    # relations: express d_j e_j in the basis
    rel_targets = [(j, d) for j, d in enumerate(ambient.relations) if d]
    if basis:
        bred = ColumnReduction(ambient.dim, basis, track_inverse=False)
        relcols = []
        for j, d in rel_targets:
            sol = bred.solve({j: d})
            if sol is None:
                raise InternalError("ambient relations escape the subgroup")
            relcols.append(sol)
        relmat = [[relcols[c][k] for c in range(len(relcols))]
                  for k in range(len(basis))]
        snf = smith_normal_form(relmat)
        diag = list(snf.diag) + [0] * (len(basis) - len(snf.diag))
        if any(d == 0 for d in diag):
            raise InternalError("subgroup of a finite group came out infinite")
        torsion = [(i, d) for i, d in enumerate(diag) if d >= 2]
        gen_coords = []
        for pos, d in torsion:
            vec = [0] * ambient.dim
            for k, col in enumerate(basis):
                c = snf.left_inv[k][pos]
                if c:
                    for i, v in col.items():
                        vec[i] += c * v
            gen_coords.append(ambient.reduce(vec))
    else:
        torsion, gen_coords = [], []
    reps = []
    for coords in gen_coords:
        if ambient.representatives:
            dimc = len(ambient.representatives[0])
            vec = [0] * dimc
            for j, c in enumerate(coords):
                if c:
                    rep = ambient.representatives[j]
                    for i in range(dimc):
                        vec[i] += c * rep[i]
            reps.append(tuple(vec))
        else:
            reps.append(())
    pres = CohGroup(ambient.group, ambient.lattice, ambient.degree,
                    tuple(d for _, d in torsion), 0, reps)
    pres.ambient_coords = tuple(tuple(c) for c in gen_coords)
    return pres


@dataclass(eq=False)
class ShGroup:
    """Joint restriction kernel, as a subgroup of an ambient H^n."""

    ambient: CohGroup
    presentation: CohGroup
    inclusion: CohMap
    family: tuple

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.presentation.invariant_factors

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def coordinates_of_ambient(self, vec):
        """Express an ambient class in subgroup coordinates, or None."""
        cols = [list(c) for c in zip(*self.inclusion.matrix)] \
            if self.presentation.dim else []
        red = ColumnReduction(
            self.ambient.dim,
            _span_with_relations(self.ambient, cols))
        sol = red.solve(list(vec))
        if sol is None:
            return None
        return self.presentation.reduce(sol[:self.presentation.dim])

    def json_dict(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors),
                "family": list(self.family)}


def _sha_from_family(G: FiniteGroup, M: GLattice, subgroups, n: int,
                     budget: int | None) -> ShGroup:
    ambient = cohomology_group(G, M, n, budget)
    gens = [[1 if i == j else 0 for i in range(ambient.dim)]
            for j in range(ambient.dim)]
    names = []
    constraints: list[list[int]] = []
    slack_rels: list[int] = []
    for H in subgroups:
        names.append(subgroup_name(H))
        if len(H.members) == 1:
            continue
        res = restriction_map(G, H, M, n, budget)
        for i in range(res.target.dim):
            constraints.append(list(res.matrix[i]))
            slack_rels.append(res.target.relations[i])
    if constraints:
        a = ambient.dim
        rows = [row + [0] * len(slack_rels) for row in constraints]
        for k, d in enumerate(slack_rels):
            if d:
                rows[k][a + k] = d
        red = ColumnReduction(len(rows), dense_to_cols(rows),
                              track_inverse=False)
        gens = [[col.get(i, 0) for i in range(a)]
                for col in red.kernel_columns()]
        for j, d in enumerate(ambient.relations):
            gens.append([d if i == j else 0 for i in range(a)])
    pres = presented_subgroup(ambient, gens)
    incl_rows = [[pres.ambient_coords[j][i] for j in range(pres.dim)]
                 for i in range(ambient.dim)]
    incl = CohMap(pres, ambient, incl_rows)
    return ShGroup(ambient=ambient, presentation=pres, inclusion=incl,
                   family=tuple(names))


def sha_omega(G: FiniteGroup, M: GLattice, n: int,
              budget: int | None = None) -> ShGroup:
    """Classes of H^n(G, M) killed by every cyclic restriction.

    In the finite local-global model this is the group of classes locally
    trivial at almost all places (see the module docstring).
    """
    if n not in (1, 2):
        raise UnsupportedDegree("sha_omega is defined for degrees 1 and 2")
    return _sha_from_family(G, M, cyclic_subgroups(G), n, budget)


def sha_relative(G: FiniteGroup, M: GLattice, family, n: int,
                 budget: int | None = None) -> ShGroup:
    """Joint restriction kernel for a decomposition family.

    The family is united with all cyclic subgroups: a genuine family of
    decomposition groups always realizes every cyclic subgroup at the
    unramified places.
    """
    if n not in (1, 2):
        raise UnsupportedDegree("sha_relative is defined for degrees 1 and 2")
    if not family:
        raise UnsupportedDegree("family must be nonempty")
    merged = {H.members: H for H in cyclic_subgroups(G)}
    for H in family:
        merged.setdefault(H.members, H)
    ordered = [merged[m] for m in sorted(merged, key=lambda m: (len(m), m))]
    return _sha_from_family(G, M, ordered, n, budget)


# -- duals of abelianizations (H^1 with Q/Z coefficients) ----------------

@dataclass(eq=False)
class DualGroup:
    """H^1(G, Q/Z) = Hom(G, Q/Z), as the dual of the abelianization."""

    group: FiniteGroup
    invariant_factors: tuple
    characters: tuple      # characters[i][g] in Q/Z as Fraction in [0,1)
    basis_elements: tuple  # element of G generating the i-th cyclic factor

    @property
    def dim(self) -> int:
        return len(self.invariant_factors)

    def json_dict(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors)}


def abelianization_data(G: FiniteGroup):
    """(invariant factors, coordinate rows, basis columns) of G^ab."""
    n = G.order
    relcols = []
    for a in G.elements():
        for b in G.elements():
            col = {}
            for key, v in ((a, 1), (b, 1), (G.mul[a][b], -1)):
                col[key] = col.get(key, 0) + v
            col = {k: v for k, v in col.items() if v}
            if col:
                relcols.append(col)
    red = ColumnReduction(n, relcols, track_inverse=False)
    basis = [col for col in red.cols if col]
    relmat = [[col.get(i, 0) for col in basis] for i in range(n)]
    snf = smith_normal_form(relmat) if basis else None
    diag = (list(snf.diag) if snf else []) + [0] * 0
    diag += [0] * (n - len(diag))
    torsion = [(i, d) for i, d in enumerate(diag) if d >= 2]
    left = snf.left if snf else [[1 if i == j else 0 for j in range(n)]
                                 for i in range(n)]
    left_inv = snf.left_inv if snf else [list(r) for r in left]
    return torsion, left, left_inv


def h1_dual(G: FiniteGroup) -> DualGroup:
    """Characters of G: invariant factors of G/[G,G] with explicit duals."""
    torsion, left, left_inv = abelianization_data(G)
    n = G.order
    factors = []
    characters = []
    basis_elements = []
    for pos, d in torsion:
        factors.append(d)
        characters.append(tuple(Fraction(left[pos][g] % d, d)
                                for g in G.elements()))
        elem = 0
        for g in G.elements():
            e = left_inv[g][pos]
            if e:
                step = g if e > 0 else G.inv[g]
                for _ in range(abs(e)):
                    elem = G.mul[elem][step]
        basis_elements.append(elem)
    return DualGroup(group=G, invariant_factors=tuple(factors),
                     characters=tuple(characters),
                     basis_elements=tuple(basis_elements))


def dual_restriction_matrix(dual_g: DualGroup, H: Subgroup,
                            dual_h: DualGroup) -> list[list[int]]:
    """Matrix of res: Hom(G, Q/Z) -> Hom(H, Q/Z) in dual coordinates."""
    rows = []
    for i, d in enumerate(dual_h.invariant_factors):
        row = []
        for j in range(dual_g.dim):
            chi = dual_g.characters[j]
            val = chi[H.members[dual_h.basis_elements[i]]] * d
            if val.denominator != 1:
                raise InternalError("restricted character has wrong order")
            row.append(val.numerator % d)
        rows.append(row)
    return rows


def dual_restriction_is_zero(G: FiniteGroup, H: Subgroup) -> bool:
    dual_g = h1_dual(G)
    dual_h = h1_dual(subgroup_as_group(H))
    mat = dual_restriction_matrix(dual_g, H, dual_h)
    return all(v == 0 for row in mat for v in row)
