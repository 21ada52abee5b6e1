"""Erasure-pattern machinery: the admissibility test for the structured
polynomial decoder, the decoder itself, a generic linear-algebra decoding
oracle, exact minimum-distance search, and pattern enumeration.

Erasure patterns are stated in terms of evaluation points, grouped by the
repair set they hit, plus the erased global points; the coordinate-level
view is derived through the layout's coordinate map.  The structured
decoder receives erased coordinates as ``None`` and never reads them.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .algebra import FiniteField, Matrix, Poly, interpolate, poly_from_roots
from .errors import Inconsistent, Infeasible, InvalidParameter, NotAdmissible
from .lrc import EvaluationLayout, LinearCode, _block_polys, _global_poly


@dataclass(frozen=True)
class ErasurePattern:
    """Erased evaluation points per repair set, plus erased global points."""

    sets: tuple[frozenset[int], ...]
    globals_: frozenset[int]

    @staticmethod
    def make(layout: EvaluationLayout, per_set, global_points=()) -> "ErasurePattern":
        """Build a pattern from erased points per set (a list aligned with
        the layout's sets, or a dict keyed by set index) plus erased global
        points."""
        if isinstance(per_set, dict):
            per_set = [per_set.get(b, ()) for b in range(len(layout.sets))]
        sets = []
        for b, pts in enumerate(per_set):
            pts = frozenset(pts)
            if not pts <= set(layout.sets[b]):
                raise InvalidParameter(f"erasures outside evaluation set {b}")
            sets.append(pts)
        while len(sets) < len(layout.sets):
            sets.append(frozenset())
        g = frozenset(global_points)
        if not g <= set(layout.s_points):
            raise InvalidParameter("global erasures outside the global point set")
        return ErasurePattern(tuple(sets), g)

    @staticmethod
    def from_coords(layout: EvaluationLayout, coords) -> "ErasurePattern":
        per_set = [set() for _ in layout.sets]
        globs = set()
        for c in coords:
            b, t = layout.locate(c)
            if b == len(layout.sets):
                globs.add(layout.s_points[t])
            else:
                per_set[b].add(layout.sets[b][t])
        return ErasurePattern.make(layout, per_set, globs)

    def coords(self, layout: EvaluationLayout) -> tuple[int, ...]:
        out = []
        for b, pts in enumerate(self.sets):
            a = layout.sets[b]
            out.extend(layout.coord(b, t) for t, x in enumerate(a) if x in pts)
        for i, s in enumerate(layout.s_points):
            if s in self.globals_:
                out.append(layout.global_coord(i))
        return tuple(sorted(out))

    def weight(self) -> int:
        return sum(len(e) for e in self.sets) + len(self.globals_)


@dataclass
class AdmissibilityReport:
    admissible: bool
    heavy_sets: list[int]
    union_size: int
    budget: int   # h + delta - 1


def pattern_admissible(layout: EvaluationLayout, pat: ErasurePattern) -> AdmissibilityReport:
    """Sufficient condition for structured recovery: the union of erased
    points over heavy sets plus the global erasures fits within h+delta-1,
    and each heavy set meets the union of the other heavy sets in at most
    delta-1 evaluation points."""
    p = layout.params
    heavy = [i for i, e in enumerate(pat.sets) if len(e) >= p.delta]
    union = set()
    for i in heavy:
        union |= pat.sets[i]
    budget = p.h + p.delta - 1
    ok = len(union) + len(pat.globals_) <= budget
    if ok:
        for j in heavy:
            others = set()
            for t in heavy:
                if t != j:
                    others |= set(layout.sets[t])
            if len(set(layout.sets[j]) & others) > p.delta - 1:
                ok = False
                break
    return AdmissibilityReport(ok, heavy, len(union), budget)


def decode_structured(layout: EvaluationLayout, received, pat: ErasurePattern) -> list[int]:
    """Recover a codeword from an admissible pattern by the polynomial
    procedure: light sets are re-interpolated; for heavy sets the combined
    polynomial is split into a known part and an unknown part supported on
    the union of the heavy sets, the unknown part is interpolated from
    scaled survivors and surviving global parities, and the per-set
    polynomials are then read back off the exclusive points.

    ``received`` holds None at erased coordinates; those entries are never
    read.  Raises NotAdmissible or Inconsistent.
    """
    fld = layout.field
    p = layout.params
    rep = pattern_admissible(layout, pat)
    if not rep.admissible:
        raise NotAdmissible("pattern fails the admissibility conditions")
    erased = set(pat.coords(layout))
    for c in range(layout.n):
        if c not in erased and received[c] is None:
            raise InvalidParameter("survivor coordinate is missing")

    heavy = rep.heavy_sets
    heavy_set = set(heavy)
    polys: list[Poly | None] = [None] * len(layout.sets)
    for b, a in enumerate(layout.sets):
        if b in heavy_set:
            continue
        pts = [
            (x, received[layout.coord(b, t)])
            for t, x in enumerate(a)
            if x not in pat.sets[b]
        ]
        need = layout.interp_count(b)
        f = interpolate(fld, pts[:need])
        for x, y in pts[need:]:
            if f(x) != y:
                raise Inconsistent(f"survivors of set {b} are off-polynomial")
        polys[b] = f

    if heavy:
        union_pts = set()
        for t in heavy:
            union_pts |= set(layout.sets[t])
        union_sorted = sorted(union_pts)
        union_poly = poly_from_roots(fld, union_sorted)
        gs = [layout.g_poly(b) for b in range(len(layout.sets))]
        delta_poly = Poly.one(fld)
        for g in gs:
            delta_poly = delta_poly * g
        phi, rem = divmod(delta_poly, union_poly)
        assert rem.is_zero()
        known = Poly.zero(fld)
        for b in range(len(layout.sets)):
            if b in heavy_set or polys[b].is_zero():
                continue
            known = known + polys[b] * (delta_poly // gs[b])
        e_polys = {t: union_poly // gs[t] for t in heavy}

        erased_pts = set()
        for t in heavy:
            erased_pts |= pat.sets[t]
        values: list[tuple[int, int]] = []
        for x in union_sorted:
            if x in erased_pts:
                continue
            acc = 0
            for t in heavy:
                a = layout.sets[t]
                if x in a:
                    c = received[layout.coord(t, a.index(x))]
                    acc = fld.add(acc, fld.mul(e_polys[t](x), c))
            values.append((x, acc))
        for i, s in enumerate(layout.s_points):
            if s in pat.globals_:
                continue
            c = received[layout.global_coord(i)]
            values.append((s, fld.div(fld.sub(c, known(s)), phi(s))))

        need = len(union_pts) - p.delta + 1
        if len(values) < need:
            raise NotAdmissible("not enough survivors to pin the combined polynomial")
        f_comb = interpolate(fld, values[:need])
        for x, y in values[need:]:
            if f_comb(x) != y:
                raise Inconsistent("survivors disagree with the combined polynomial")

        for t in heavy:
            a = layout.sets[t]
            others = set()
            for j in heavy:
                if j != t:
                    others |= set(layout.sets[j])
            exclusive = [x for x in a if x not in others]
            need_t = layout.interp_count(t)
            pts = [(x, fld.div(f_comb(x), e_polys[t](x))) for x in exclusive[:need_t]]
            f = interpolate(fld, pts)
            for x in exclusive[need_t:]:
                if fld.mul(f(x), e_polys[t](x)) != f_comb(x):
                    raise Inconsistent(f"heavy set {t} recovery is inconsistent")
            polys[t] = f

    word = []
    for b, a in enumerate(layout.sets):
        word.extend(polys[b](x) for x in a)
    f_all = _global_poly(layout, polys)
    word.extend(f_all(s) for s in layout.s_points)
    for c in range(layout.n):
        if c not in erased and word[c] != received[c]:
            raise Inconsistent("decoded word disagrees with a survivor")
    return word


# ----------------------------------------------------------------------
# generic linear-algebra oracle


def recoverable(h: Matrix, coords) -> bool:
    """True iff the columns of H indexed by ``coords`` are independent,
    i.e. the erasure pattern has a unique completion."""
    cols = sorted(set(coords))
    if not cols:
        return True
    sup = h.column_supports()
    row_set: set[int] = set()
    for c in cols:
        row_set.update(sup[c])
    if len(row_set) < len(cols):
        return False
    rows = sorted(row_set)
    sub = Matrix(h.field, [[h.rows[i][c] for c in cols] for i in rows], len(cols))
    return sub.rank() == len(cols)


def decode_linear(code: LinearCode, erased, received) -> list[int] | None:
    """Unique-completion decoder: solve the parity checks for the erased
    coordinates.  Returns None when the erased columns are dependent
    (pattern not recoverable); raises Inconsistent when the survivors do
    not extend to a codeword."""
    h = code.check
    cols = sorted(set(erased))
    fld = code.field
    masked = [0 if j in set(cols) else received[j] for j in range(code.n)]
    syndrome = h.mul_vec(masked)
    if not cols:
        if any(syndrome):
            raise Inconsistent("received word is not a codeword")
        return list(received)
    sub = h.columns(cols)
    if sub.rank() < len(cols):
        return None
    sol = sub.solve([fld.neg(s) for s in syndrome])
    if sol is None:
        raise Inconsistent("survivors are inconsistent with the code")
    out = list(masked)
    for c, v in zip(cols, sol):
        out[c] = v
    return out


# ----------------------------------------------------------------------
# exact minimum distance


def _pass_serial_prime(cols, nrows, p, inv_table, size) -> bool:
    """True iff some <=size columns are dependent; DFS over independent
    prefixes in lexicographic order."""
    ncols = len(cols)

    def extend(pivots, start, depth):
        limit = ncols - (size - depth) + 1
        for j in range(start, limit if depth + 1 < size else ncols):
            v = list(cols[j])
            for pi, pvec in pivots:
                c = v[pi]
                if c:
                    v = [(a - c * b) % p for a, b in zip(v, pvec)]
            pi = -1
            for i in range(nrows):
                if v[i]:
                    pi = i
                    break
            if pi < 0:
                return True
            if depth + 1 < size:
                inv = inv_table[v[pi]]
                if inv != 1:
                    v = [a * inv % p for a in v]
                if extend(pivots + [(pi, v)], j + 1, depth + 1):
                    return True
        return False

    return extend([], 0, 0)


def _pass_serial_generic(cols, nrows, fld: FiniteField, size) -> bool:
    ncols = len(cols)
    sub, mul, inv = fld.sub, fld.mul, fld.inv

    def extend(pivots, start, depth):
        limit = ncols - (size - depth) + 1
        for j in range(start, limit if depth + 1 < size else ncols):
            v = list(cols[j])
            for pi, pvec in pivots:
                c = v[pi]
                if c:
                    v = [sub(a, mul(c, b)) for a, b in zip(v, pvec)]
            pi = -1
            for i in range(nrows):
                if v[i]:
                    pi = i
                    break
            if pi < 0:
                return True
            if depth + 1 < size:
                s = inv(v[pi])
                if s != 1:
                    v = [mul(a, s) for a in v]
                if extend(pivots + [(pi, v)], j + 1, depth + 1):
                    return True
        return False

    return extend([], 0, 0)


def _distance_pass_worker(args) -> bool:
    cols, nrows, field_spec, size, first_range = args
    p, m, modulus = field_spec
    if m == 1:
        inv_table = [0] * p
        for a in range(1, p):
            inv_table[a] = pow(a, p - 2, p)
        for j0 in first_range:
            if _first_fixed_pass(cols, nrows, (p, inv_table, None), size, j0):
                return True
    else:
        fld = FiniteField(p, m, modulus)
        for j0 in first_range:
            if _first_fixed_pass(cols, nrows, (None, None, fld), size, j0):
                return True
    return False


def _first_fixed_pass(cols, nrows, ops, size, j0) -> bool:
    """Run one pass restricted to subsets whose first column is j0."""
    p, inv_table, fld = ops
    v = list(cols[j0])
    pi = -1
    for i in range(nrows):
        if v[i]:
            pi = i
            break
    if pi < 0:
        return True
    if size == 1:
        return False
    if fld is None:
        inv = inv_table[v[pi]]
        if inv != 1:
            v = [a * inv % p for a in v]
        return _sub_extend_prime(cols, nrows, p, inv_table, size, [(pi, v)], j0 + 1, 1)
    s = fld.inv(v[pi])
    if s != 1:
        v = [fld.mul(a, s) for a in v]
    return _sub_extend_generic(cols, nrows, fld, size, [(pi, v)], j0 + 1, 1)


def _sub_extend_prime(cols, nrows, p, inv_table, size, pivots, start, depth) -> bool:
    ncols = len(cols)
    limit = ncols - (size - depth) + 1
    for j in range(start, limit if depth + 1 < size else ncols):
        v = list(cols[j])
        for pi, pvec in pivots:
            c = v[pi]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, pvec)]
        pi = -1
        for i in range(nrows):
            if v[i]:
                pi = i
                break
        if pi < 0:
            return True
        if depth + 1 < size:
            inv = inv_table[v[pi]]
            if inv != 1:
                v = [a * inv % p for a in v]
            if _sub_extend_prime(cols, nrows, p, inv_table, size, pivots + [(pi, v)], j + 1, depth + 1):
                return True
    return False


def _sub_extend_generic(cols, nrows, fld, size, pivots, start, depth) -> bool:
    ncols = len(cols)
    limit = ncols - (size - depth) + 1
    for j in range(start, limit if depth + 1 < size else ncols):
        v = list(cols[j])
        for pi, pvec in pivots:
            c = v[pi]
            if c:
                v = [fld.sub(a, fld.mul(c, b)) for a, b in zip(v, pvec)]
        pi = -1
        for i in range(nrows):
            if v[i]:
                pi = i
                break
        if pi < 0:
            return True
        if depth + 1 < size:
            s = fld.inv(v[pi])
            if s != 1:
                v = [fld.mul(a, s) for a in v]
            if _sub_extend_generic(cols, nrows, fld, size, pivots + [(pi, v)], j + 1, depth + 1):
                return True
    return False


def min_distance(
    h: Matrix,
    d_max: int | None = None,
    workers: int = 1,
    node_guard: int = 10**8,
) -> int:
    """Exact minimum distance of the code with parity-check matrix H: the
    smallest s such that some s columns of H are dependent.

    The search is incremental by size: pass s proves that no dependent
    subset of size < s exists before subsets of size s are examined, so the
    first hit is exact.  ``d_max`` bounds the search (default n - rank + 1,
    which always terminates).  Raises Infeasible when the projected number
    of rank tests exceeds ``node_guard``.
    """
    n = h.ncols
    if n == 0:
        raise InvalidParameter("empty matrix")
    if d_max is None:
        d_max = h.rank() + 1  # any rank+1 columns are dependent
    cols = [tuple(h.column(j)) for j in range(n)]
    fld = h.field
    field_spec = (fld.p, fld.m, tuple(fld.modulus))
    est = 0
    for s in range(1, d_max + 1):
        est += math.comb(n, s)
        if est > node_guard:
            raise Infeasible(
                f"distance search would need ~{est} rank tests (> {node_guard})"
            )
        if workers <= 1:
            if fld.m == 1:
                found = _pass_serial_prime(cols, h.nrows, fld.p, fld._inv, s)
            else:
                found = _pass_serial_generic(cols, h.nrows, fld, s)
        else:
            firsts = list(range(0, n - s + 1))
            chunks = [firsts[i::workers] for i in range(workers)]
            args = [(cols, h.nrows, field_spec, s, c) for c in chunks if c]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                found = any(ex.map(_distance_pass_worker, args))
        if found:
            return s
    raise Infeasible(f"no dependent subset of size <= {d_max} found")


def naive_min_distance(h: Matrix, d_max: int | None = None) -> int:
    """Reference implementation: rank of every column subset, smallest
    dependent size wins.  Only for cross-checking the search."""
    n = h.ncols
    if d_max is None:
        d_max = h.rank() + 1
    for s in range(1, d_max + 1):
        for sub in itertools.combinations(range(n), s):
            if h.columns(sub).rank() < s:
                return s
    raise Infeasible("no dependence found")


# ----------------------------------------------------------------------
# pattern enumeration


@dataclass(frozen=True)
class PatternSpec:
    """Pattern stream description.

    mode "exhaustive": either every coordinate subset of weight <=
    ``max_weight`` (including the empty pattern), or — when a shape is given
    — every choice of ``full_blocks`` fully erased sets, ``global_cells``
    erased global points, and ``extra_cells`` additional coordinates.

    mode "sampled": ``count`` draws of the shape from a PRNG seeded with
    ``seed`` (mandatory)."""

    mode: str = "exhaustive"
    max_weight: int | None = None
    full_blocks: int = 0
    global_cells: int = 0
    extra_cells: int = 0
    count: int | None = None
    seed: int | None = None


def pattern_iter(layout: EvaluationLayout, spec: PatternSpec):
    if spec.mode == "exhaustive":
        if spec.max_weight is not None:
            for w in range(spec.max_weight + 1):
                for coords in itertools.combinations(range(layout.n), w):
                    yield ErasurePattern.from_coords(layout, coords)
            return
        yield from _shaped_exhaustive(layout, spec)
        return
    if spec.mode != "sampled":
        raise InvalidParameter(f"unknown pattern mode {spec.mode!r}")
    if spec.seed is None or spec.count is None:
        raise InvalidParameter("sampled mode requires count and seed")
    rng = random.Random(spec.seed)
    nblocks = len(layout.sets)
    for _ in range(spec.count):
        if spec.max_weight is not None:
            w = rng.randint(0, spec.max_weight)
            coords = rng.sample(range(layout.n), w)
            yield ErasurePattern.from_coords(layout, coords)
            continue
        blocks = rng.sample(range(nblocks), spec.full_blocks)
        globs = rng.sample(layout.s_points, spec.global_cells)
        taken = set()
        for b in blocks:
            taken.update(layout.block_coords(b))
        taken.update(layout.global_coord(layout.s_points.index(s)) for s in globs)
        rest = [c for c in range(layout.n) if c not in taken]
        extras = rng.sample(rest, spec.extra_cells)
        coords = sorted(taken | set(extras))
        yield ErasurePattern.from_coords(layout, coords)


def _shaped_exhaustive(layout: EvaluationLayout, spec: PatternSpec):
    nblocks = len(layout.sets)
    for blocks in itertools.combinations(range(nblocks), spec.full_blocks):
        base = set()
        for b in blocks:
            base.update(layout.block_coords(b))
        for globs in itertools.combinations(range(layout.params.h), spec.global_cells):
            cur = base | {layout.global_coord(i) for i in globs}
            rest = [c for c in range(layout.n) if c not in cur]
            for extras in itertools.combinations(rest, spec.extra_cells):
                yield ErasurePattern.from_coords(layout, cur | set(extras))


def heavy_global_patterns(layout: EvaluationLayout, max_heavy: int):
    """Every pattern consisting of up to ``max_heavy`` heavy sets (each an
    erased subset of size >= delta within one evaluation set) plus any
    subset of the global points.  Exhaustive and deterministic."""
    p = layout.params
    nblocks = len(layout.sets)
    per_block: list[list[tuple[int, ...]]] = []
    for a in layout.sets:
        subs = []
        for sz in range(p.delta, len(a) + 1):
            subs.extend(itertools.combinations(a, sz))
        per_block.append(subs)
    glob_subsets = []
    for sz in range(p.h + 1):
        glob_subsets.extend(itertools.combinations(layout.s_points, sz))
    for w in range(max_heavy + 1):
        for blocks in itertools.combinations(range(nblocks), w):
            for choice in itertools.product(*[per_block[b] for b in blocks]):
                per_set = [()] * nblocks
                for b, pts in zip(blocks, choice):
                    per_set[b] = pts
                for globs in glob_subsets:
                    yield ErasurePattern.make(layout, per_set, globs)
