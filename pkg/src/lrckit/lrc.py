"""The two-step polynomial construction of locally repairable codes with
information locality: evaluation layouts, the encoder, generator and
parity-check synthesis, and locality verification.

A layout consists of an ordered h-subset S of the field (global-parity
evaluation points) and ordered sets A_1..A_{L+1} of field elements disjoint
from S, with |A_i| = r+delta-1 for i <= L and |A_{L+1}| = v+delta-1.
Codeword coordinates are block-major: block 1's points, block 2's points,
..., then the h global coordinates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .algebra import FiniteField, Matrix, Poly, interpolate, poly_from_roots
from .designs import Design
from .errors import (
    FieldTooSmall,
    InternalInvariantViolation,
    InvalidParameter,
)


@dataclass(frozen=True)
class LrcParams:
    """Parameters (r, delta, ell, v, h) with k = r*ell + v and
    n = k + (ell+1)(delta-1) + h."""

    r: int
    delta: int
    ell: int
    v: int
    h: int

    def __post_init__(self):
        if self.delta < 2 or self.ell < 1 or self.h < 0 or self.r < 1:
            raise InvalidParameter("need delta >= 2, ell >= 1, h >= 0, r >= 1")
        if not (0 < self.v <= self.r):
            raise InvalidParameter("need 0 < v <= r")

    @property
    def k(self) -> int:
        return self.r * self.ell + self.v

    @property
    def n(self) -> int:
        return self.k + (self.ell + 1) * (self.delta - 1) + self.h


class EvaluationLayout:
    """Field, global points S, and ordered evaluation sets A_1..A_{L+1}.

    ``truncated_tail`` records the evaluation points dropped when the last
    set was cut down from a full design block to v+delta-1 points; the
    truncated array arrangement keys its parity columns off them.
    """

    def __init__(self, fld: FiniteField, params: LrcParams, sets, s_points,
                 truncated_tail=()):
        self.field = fld
        self.params = params
        self.sets = [tuple(a) for a in sets]
        self.s_points = tuple(s_points)
        self.truncated_tail = tuple(truncated_tail)
        p = params
        if len(self.sets) != p.ell + 1:
            raise InvalidParameter(f"expected {p.ell + 1} evaluation sets")
        for i, a in enumerate(self.sets):
            want = p.r + p.delta - 1 if i < p.ell else p.v + p.delta - 1
            if len(a) != want:
                raise InvalidParameter(f"set {i} has size {len(a)}, expected {want}")
            if len(set(a)) != len(a):
                raise InvalidParameter(f"set {i} has repeated evaluation points")
            if set(a) & set(self.s_points):
                raise InvalidParameter(f"set {i} meets the global point set")
        if len(self.s_points) != p.h:
            raise InvalidParameter(f"expected {p.h} global points")
        if len(set(self.s_points)) != p.h:
            raise InvalidParameter("global points must be distinct")
        for x in list(self.s_points) + [x for a in self.sets for x in a]:
            if not (0 <= x < fld.q):
                raise InvalidParameter("evaluation point outside the field")
        self.block_offsets = []
        off = 0
        for a in self.sets:
            self.block_offsets.append(off)
            off += len(a)
        self.global_offset = off
        self.n = off + p.h
        if self.n != p.n:
            raise InternalInvariantViolation("coordinate bookkeeping mismatch")
        # max pairwise intersection of evaluation sets, used by bound checks
        self.intersection_bound = 0
        for i in range(len(self.sets)):
            si = set(self.sets[i])
            for j in range(i + 1, len(self.sets)):
                c = len(si & set(self.sets[j]))
                if c > self.intersection_bound:
                    self.intersection_bound = c

    # -- coordinate map ----------------------------------------------------

    def coord(self, block: int, t: int) -> int:
        """Flat coordinate of position t (0-based) in block (0-based)."""
        return self.block_offsets[block] + t

    def global_coord(self, i: int) -> int:
        return self.global_offset + i

    def locate(self, coord: int) -> tuple[int, int]:
        """(block, position) of a flat coordinate; global block is L+1."""
        if coord >= self.global_offset:
            return len(self.sets), coord - self.global_offset
        for b in range(len(self.sets) - 1, -1, -1):
            if coord >= self.block_offsets[b]:
                return b, coord - self.block_offsets[b]
        raise InvalidParameter("coordinate out of range")

    def interp_count(self, block: int) -> int:
        """Number of information positions of a block: |A_i| - delta + 1."""
        return len(self.sets[block]) - self.params.delta + 1

    def block_coords(self, block: int) -> tuple[int, ...]:
        off = self.block_offsets[block]
        return tuple(range(off, off + len(self.sets[block])))

    def g_poly(self, block: int) -> Poly:
        return poly_from_roots(self.field, self.sets[block])


def default_global_points(fld: FiniteField, h: int, forbidden=()) -> tuple[int, ...]:
    """The last h field elements in canonical order, skipping forbidden ones."""
    out = []
    x = fld.q - 1
    forbidden = set(forbidden)
    while len(out) < h and x >= 0:
        if x not in forbidden:
            out.append(x)
        x -= 1
    if len(out) < h:
        raise FieldTooSmall("not enough elements for the global point set")
    return tuple(out)


def build_layout(
    params: LrcParams,
    fld: FiniteField,
    design_or_blocks,
    s_points=None,
    block_indices=None,
) -> EvaluationLayout:
    """Build an evaluation layout from a Design (abstract points are embedded
    into the field) or from explicit ordered sets of field elements.

    Design point label i maps to the (i+1)-th element of F_q minus S in
    canonical order.  The last set is truncated to its first v+delta-1
    points.  ``block_indices`` selects which blocks to use (default: the
    first ell+1 in canonical order).
    """
    p = params
    if isinstance(design_or_blocks, Design):
        d = design_or_blocks
        if d.block_size != p.r + p.delta - 1:
            raise InvalidParameter(
                f"design block size {d.block_size} != r+delta-1 = {p.r + p.delta - 1}"
            )
        if s_points is None:
            s_points = default_global_points(fld, p.h)
        if d.num_points + p.h > fld.q:
            raise FieldTooSmall(
                f"need q >= {d.num_points + p.h} to embed {d.num_points} points"
            )
        avail = [x for x in fld.elements() if x not in set(s_points)]
        embed = avail[: d.num_points]
        raw = [tuple(embed[pt] for pt in b) for b in d.blocks]
    else:
        raw = [tuple(b) for b in design_or_blocks]
        if s_points is None:
            used = {x for b in raw for x in b}
            s_points = default_global_points(fld, p.h, forbidden=used)
    if block_indices is None:
        block_indices = range(p.ell + 1)
    chosen = [raw[i] for i in block_indices]
    if len(chosen) != p.ell + 1:
        raise InvalidParameter(f"need ell+1 = {p.ell + 1} blocks, got {len(chosen)}")
    last = chosen[p.ell]
    sets = list(chosen[: p.ell]) + [last[: p.v + p.delta - 1]]
    return EvaluationLayout(
        fld, params, sets, s_points, truncated_tail=last[p.v + p.delta - 1:]
    )


# ----------------------------------------------------------------------
# encoding


def _block_polys(layout: EvaluationLayout, info) -> list[Poly]:
    """Step 1: the interpolation polynomial of every block."""
    p = layout.params
    if len(info) != p.k:
        raise InvalidParameter(f"information vector must have length {p.k}")
    polys = []
    pos = 0
    for b, a in enumerate(layout.sets):
        cnt = layout.interp_count(b)
        pts = list(zip(a[:cnt], info[pos: pos + cnt]))
        pos += cnt
        polys.append(interpolate(layout.field, pts))
    return polys


def _global_poly(layout: EvaluationLayout, polys: list[Poly]) -> Poly:
    """Step 2 combination: sum_i f_i * prod_{j != i} g_j, computed with
    prefix/suffix products so no rational functions appear."""
    fld = layout.field
    gs = [layout.g_poly(b) for b in range(len(layout.sets))]
    n = len(gs)
    prefix = [Poly.one(fld)]
    for g in gs[:-1]:
        prefix.append(prefix[-1] * g)
    suffix = [Poly.one(fld)] * n
    for i in range(n - 2, -1, -1):
        suffix[i] = suffix[i + 1] * gs[i + 1]
    acc = Poly.zero(fld)
    for i, f in enumerate(polys):
        if not f.is_zero():
            acc = acc + f * prefix[i] * suffix[i]
    return acc


def encode(layout: EvaluationLayout, info) -> list[int]:
    """Map k information symbols to an n-symbol codeword.

    Information is consumed block-major: the first |A_i|-delta+1 points of
    each block carry its symbols; the global parities evaluate the step-2
    polynomial at the points of S.
    """
    polys = _block_polys(layout, info)
    word = []
    for b, a in enumerate(layout.sets):
        f = polys[b]
        word.extend(f(x) for x in a)
    f_comb = _global_poly(layout, polys)
    word.extend(f_comb(s) for s in layout.s_points)
    return word


def generator_matrix(layout: EvaluationLayout) -> Matrix:
    """Rows are the encodings of the standard basis vectors."""
    p = layout.params
    rows = []
    for u in range(p.k):
        e = [0] * p.k
        e[u] = 1
        rows.append(encode(layout, e))
    g = Matrix(layout.field, rows, p.n)
    return g


def parity_check_matrix(layout: EvaluationLayout) -> Matrix:
    """Structural parity check: delta-1 local rows per block expressing the
    non-information positions through interpolation, plus h global rows
    tying the global parities to the information positions.

    Every row has a unique pivot (a local parity or global coordinate), so
    the matrix has full row rank n-k and spans the nullspace of the
    generator matrix.
    """
    fld = layout.field
    p = layout.params
    n = layout.n
    rows = []
    lagr: list[list[Poly]] = []
    for b, a in enumerate(layout.sets):
        cnt = layout.interp_count(b)
        basis = []
        for u in range(cnt):
            num = poly_from_roots(fld, [x for i, x in enumerate(a[:cnt]) if i != u])
            basis.append(num.scale(fld.inv(num(a[u]))))
        lagr.append(basis)
        for t in range(cnt, len(a)):
            row = [0] * n
            theta = a[t]
            for u in range(cnt):
                row[layout.coord(b, u)] = fld.neg(basis[u](theta))
            row[layout.coord(b, t)] = 1
            rows.append(row)
    if p.h:
        g_at = [[layout.g_poly(b)(s) for b in range(len(layout.sets))]
                for s in layout.s_points]
        for j, s in enumerate(layout.s_points):
            delta_at_s = 1
            for val in g_at[j]:
                delta_at_s = fld.mul(delta_at_s, val)
            row = [0] * n
            for b, a in enumerate(layout.sets):
                scale = fld.mul(delta_at_s, fld.inv(g_at[j][b]))
                for u in range(layout.interp_count(b)):
                    row[layout.coord(b, u)] = fld.neg(fld.mul(scale, lagr[b][u](s)))
            row[layout.global_coord(j)] = 1
            rows.append(row)
    return Matrix(fld, rows, n)


# ----------------------------------------------------------------------
# linear codes with declared repair sets


@dataclass
class LinearCode:
    """A linear code given by a parity-check matrix, with declared repair
    sets.  ``local_rows`` optionally maps a repair-set index to the rows of
    H supported inside that repair set (used to puncture cheaply)."""

    field: FiniteField
    n: int
    k: int
    check: Matrix
    generator: Matrix | None = None
    repair_sets: list[tuple[int, ...]] = dc_field(default_factory=list)
    delta: int = 2
    local_rows: dict[int, tuple[int, ...]] | None = None
    no_locality_coords: tuple[int, ...] = ()


def build_code(layout: EvaluationLayout, with_generator: bool = False) -> LinearCode:
    p = layout.params
    h = parity_check_matrix(layout)
    local = {}
    row = 0
    for b, a in enumerate(layout.sets):
        cnt = len(a) - p.delta + 1
        local[b] = tuple(range(row, row + p.delta - 1))
        row += p.delta - 1
    code = LinearCode(
        field=layout.field,
        n=layout.n,
        k=p.k,
        check=h,
        generator=generator_matrix(layout) if with_generator else None,
        repair_sets=[layout.block_coords(b) for b in range(len(layout.sets))],
        delta=p.delta,
        local_rows=local,
    )
    return code


def punctured_check(code: LinearCode, coords: tuple[int, ...], set_index: int | None = None) -> Matrix:
    """Parity-check matrix of the code punctured to ``coords``: the dual
    vectors supported inside ``coords``, restricted to those positions.

    When structural local rows are declared for the repair set they are used
    directly; otherwise the shortened dual is computed by elimination.
    """
    h = code.check
    cset = set(coords)
    if set_index is not None and code.local_rows and set_index in code.local_rows:
        rows = [h.rows[i] for i in code.local_rows[set_index]]
        if all(all(j in cset or v == 0 for j, v in enumerate(r)) for r in rows):
            return Matrix(code.field, [[r[j] for j in coords] for r in rows], len(coords))
    outside = [j for j in range(code.n) if j not in cset]
    reordered = Matrix(code.field, [[r[j] for j in outside + list(coords)] for r in h.rows])
    rows, pivots = reordered.rref()
    cut = len(outside)
    kept = []
    for r, row in enumerate(rows):
        if r < len(pivots) and pivots[r] < cut:
            continue
        if any(row[:cut]):
            continue
        if any(row[cut:]):
            kept.append(row[cut:])
    return Matrix(code.field, kept, len(coords))


def projection_dimension(code: LinearCode, coords) -> int:
    """Dimension of the code projected onto ``coords``:
    |U| - ((n-k) - rank(H restricted to the complement of U))."""
    cset = set(coords)
    outside = [j for j in range(code.n) if j not in cset]
    full_rank = code.n - code.k
    return len(cset) - (full_rank - code.check.columns(outside).rank())


@dataclass
class LocalityReport:
    ok: bool
    punctured_distances: list[int]
    info_rank: int
    k: int

    @property
    def info_rank_ok(self) -> bool:
        return self.info_rank == self.k


def verify_locality(code: LinearCode) -> LocalityReport:
    """Check the declared repair sets: each punctured code must have minimum
    distance >= delta, and the union of repair sets must project onto a
    rank-k set of coordinates."""
    from .erasure import min_distance  # local import to avoid a cycle

    dists = []
    ok = True
    for i, rs in enumerate(code.repair_sets):
        pc = punctured_check(code, tuple(rs), set_index=i)
        if pc.nrows == 0:
            dists.append(1)  # punctured code is the full space
            ok = False
            continue
        d = min_distance(pc, d_max=pc.rank() + 1)
        dists.append(d)
        if d < code.delta:
            ok = False
    union = sorted({c for rs in code.repair_sets for c in rs})
    rank_u = projection_dimension(code, union)
    return LocalityReport(
        ok=ok and rank_u == code.k,
        punctured_distances=dists,
        info_rank=rank_u,
        k=code.k,
    )


def random_code(fld: FiniteField, n: int, k: int, seed: int) -> LinearCode:
    """Seeded random [n, k] code (negative-control material for tests)."""
    rng = random.Random(seed)
    while True:
        g = Matrix(fld, [[rng.randrange(fld.q) for _ in range(n)] for _ in range(k)], n)
        if g.rank() == k:
            break
    h = g.nullspace()
    return LinearCode(field=fld, n=n, k=k, check=h, generator=g)
