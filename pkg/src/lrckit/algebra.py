"""Exact arithmetic over prime-power finite fields, dense polynomials,
and matrices.

Field elements are plain Python ints in ``[0, q)``.  For an extension
field F_{p^m} the integer ``sum(c_i * p**i)`` encodes the element with
monomial-basis coordinates ``(c_0, ..., c_{m-1})``; for prime fields the
encoding is the residue itself.  All arithmetic is exact — no floating
point anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DuplicateNode, InvalidParameter

NEG_INF = float("-inf")  # degree of the zero polynomial


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Split q = p^m into (p, m); raises if q is not a prime power."""
    if q < 2:
        raise InvalidParameter(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                raise InvalidParameter(f"{q} is not a prime power")
            m = 0
            n = q
            while n % p == 0:
                n //= p
                m += 1
            if n != 1:
                raise InvalidParameter(f"{q} is not a prime power")
            return p, m
    raise InvalidParameter(f"{q} is not a prime power")


# ----------------------------------------------------------------------
# base-p polynomial helpers used for modulus search (coefficients are
# plain lists over F_p, independent of the FiniteField class)

def _pp_mod(num: list[int], den: list[int], p: int) -> list[int]:
    num = num[:]
    dd = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p)
    while len(num) - 1 >= dd and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dd:
            break
        shift = len(num) - 1 - dd
        factor = num[-1] * inv_lead % p
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * c) % p
        while num and num[-1] == 0:
            num.pop()
    return num


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(coeffs) - 1
    if coeffs[0] == 0:  # divisible by x
        return deg == 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            den = list(tail) + [1]
            if not _pp_mod(coeffs, den, p):
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree m over F_p.

    Candidates x^m + g(x) are scanned in increasing order of the integer
    encoding of g, i.e. lexicographic on the coefficient tuple read from
    the highest degree down.
    """
    for j in range(p**m):
        tail = [(j // p**i) % p for i in range(m)]
        cand = tail + [1]
        if _is_irreducible(cand, p):
            return cand
    raise InternalError_unreachable()  # pragma: no cover


class FiniteField:
    """Arithmetic context for F_{p^m}; elements are ints in [0, q).

    Extension-field moduli are the lexicographically smallest monic
    irreducible of the requested degree, so encodings are reproducible
    across runs.  Instances are immutable and safe to share.
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise InvalidParameter(f"characteristic {p} is not prime")
        if m < 1:
            raise InvalidParameter("extension degree must be >= 1")
        self.p = p
        self.m = m
        self.q = p**m
        if m == 1:
            self.modulus = (1 % p, 1) if modulus is None else tuple(modulus)
            self._inv = [0] * p
            for a in range(1, p):
                self._inv[a] = pow(a, p - 2, p)
        else:
            if modulus is None:
                mod = _smallest_irreducible(p, m)
            else:
                mod = [c % p for c in modulus]
                if len(mod) != m + 1 or mod[-1] != 1:
                    raise InvalidParameter("modulus must be monic of degree m")
                if not _is_irreducible(mod, p):
                    raise InvalidParameter("modulus is reducible")
            self.modulus = tuple(mod)
            self._build_tables()

    # -- encoding helpers -------------------------------------------------

    def coords(self, a: int) -> list[int]:
        """Monomial-basis coordinates (c_0..c_{m-1}) of an element."""
        p = self.p
        return [(a // p**i) % p for i in range(self.m)]

    def from_coords(self, cs: Iterable[int]) -> int:
        p = self.p
        return sum((c % p) * p**i for i, c in enumerate(cs))

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        mod = self.modulus

        def raw_mul(a: int, b: int) -> int:
            ca, cb = self.coords(a), self.coords(b)
            prod = [0] * (2 * m - 1)
            for i, x in enumerate(ca):
                if x:
                    for j, y in enumerate(cb):
                        prod[i + j] = (prod[i + j] + x * y) % p
            for d in range(2 * m - 2, m - 1, -1):
                c = prod[d]
                if c:
                    prod[d] = 0
                    for i in range(m):
                        prod[d - m + i] = (prod[d - m + i] - c * mod[i]) % p
            return self.from_coords(prod[:m])

        # discrete-log tables over a primitive element (smallest encoding)
        gen = None
        for g in range(2, q):
            seen = set()
            x = 1
            for _ in range(q - 1):
                x = raw_mul(x, g)
                seen.add(x)
            if len(seen) == q - 1:
                gen = g
                break
        if gen is None:  # pragma: no cover - q=2 handled by m==1 branch
            raise InternalError_unreachable()
        self.generator = gen
        self._exp = [1] * (2 * (q - 1))
        self._log = [0] * q
        x = 1
        for i in range(q - 1):
            self._exp[i] = x
            self._log[x] = i
            x = raw_mul(x, gen)
        for i in range(q - 1, 2 * (q - 1)):
            self._exp[i] = self._exp[i - (q - 1)]
        # additions are digit-wise mod p; cache a full table for small q
        self._add = None
        if q <= 512:
            self._add = [
                [self.from_coords([(x + y) % p for x, y in zip(self.coords(a), self.coords(b))])
                 for b in range(q)]
                for a in range(q)
            ]

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        p = self.p
        return self.from_coords([(x + y) % p for x, y in zip(self.coords(a), self.coords(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        p = self.p
        return self.from_coords([(-x) % p for x in self.coords(a)])

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self.m == 1:
            return self._inv[a]
        return self._exp[(self.q - 1) - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if self.m == 1:
            return pow(a, e, self.p) if e >= 0 else pow(self._inv[a], -e, self.p)
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("inversion of zero field element")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, {self.m})"


class InternalError_unreachable(AssertionError):
    pass


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    """Shared FiniteField instance for order q (canonical modulus)."""
    p, m = factor_prime_power(q)
    return FiniteField(p, m)


def subfield_embedding(small: FiniteField, big: FiniteField) -> list[int]:
    """Embedding table F_{p^a} -> F_{p^b} (a | b), fixing the prime field.

    The defining root of `small` is sent to the smallest-encoded root of
    small's modulus inside `big`, which pins the embedding uniquely.
    """
    if small.p != big.p or big.m % small.m != 0:
        raise InvalidParameter("no subfield embedding exists")
    if small.q == big.q:
        return list(range(small.q))
    mod = small.modulus
    root = None
    for x in big.elements():
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, x), c % big.p)
        if acc == 0:
            root = x
            break
    if root is None:  # pragma: no cover
        raise InternalError_unreachable()
    table = []
    for a in range(small.q):
        cs = small.coords(a)
        acc = 0
        for c in reversed(cs):
            acc = big.add(big.mul(acc, root), c)
        table.append(acc)
    return table


# ----------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial; coeffs[i] is the degree-i coefficient.

    The zero polynomial has an empty coefficient list and degree -inf.
    Instances are normalized (no trailing zeros) and treated as immutable.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, fld: FiniteField, coeffs: Iterable[int]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = fld
        self.coeffs = cs

    @staticmethod
    def zero(fld: FiniteField) -> "Poly":
        return Poly(fld, [])

    @staticmethod
    def one(fld: FiniteField) -> "Poly":
        return Poly(fld, [1])

    @staticmethod
    def x(fld: FiniteField) -> "Poly":
        return Poly(fld, [0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, tuple(self.coeffs)))

    def __add__(self, other: "Poly") -> "Poly":
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = a[:]
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return Poly(f, out)

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(f, [f.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(f)
        out = [0] * (len(a) + len(b) - 1)
        mul, add = f.mul, f.add
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly(f, out)

    def scale(self, c: int) -> "Poly":
        f = self.field
        return Poly(f, [f.mul(c, x) for x in self.coeffs])

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        f = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = self.coeffs[:]
        dd = len(other.coeffs) - 1
        quot = [0] * max(0, len(rem) - dd)
        inv_lead = f.inv(other.coeffs[-1])
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                factor = f.mul(c, inv_lead)
                quot[i - dd] = factor
                for j, oc in enumerate(other.coeffs):
                    rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(factor, oc))
        return Poly(f, quot), Poly(f, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def __repr__(self) -> str:
        return f"Poly({self.field!r}, {self.coeffs})"


def poly_from_roots(fld: FiniteField, roots: Iterable[int]) -> Poly:
    """Monic polynomial vanishing exactly on the given roots."""
    out = Poly.one(fld)
    for r in roots:
        out = out * Poly(fld, [fld.neg(r), 1])
    return out


def interpolate(fld: FiniteField, points: Sequence[tuple[int, int]]) -> Poly:
    """Lagrange interpolation; returns the unique poly of degree < #points
    through the given (x, y) pairs.  X-values must be pairwise distinct.
    """
    if not points:
        raise InvalidParameter("interpolation needs at least one point")
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise DuplicateNode("interpolation nodes must be distinct")
    n = len(points)
    # prefix[i] = prod_{j<i} (x - x_j), suffix[i] = prod_{j>i} (x - x_j)
    prefix = [Poly.one(fld)]
    for x in xs[:-1]:
        prefix.append(prefix[-1] * Poly(fld, [fld.neg(x), 1]))
    suffix = [Poly.one(fld)] * n
    for i in range(n - 2, -1, -1):
        suffix[i] = suffix[i + 1] * Poly(fld, [fld.neg(xs[i + 1]), 1])
    out = Poly.zero(fld)
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        num = prefix[i] * suffix[i]
        denom = num(xi)
        out = out + num.scale(fld.div(yi, denom))
    return out


# ----------------------------------------------------------------------
# matrices


class Matrix:
    """Row-major matrix of field elements with exact linear algebra."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_col_support")

    def __init__(self, fld: FiniteField, rows: Sequence[Sequence[int]], ncols: int | None = None):
        self.field = fld
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.rows:
            ncols = len(self.rows[0])
            for r in self.rows:
                if len(r) != ncols:
                    raise InvalidParameter("ragged matrix rows")
        elif ncols is None:
            ncols = 0
        self.ncols = ncols
        self._col_support = None

    @staticmethod
    def identity(fld: FiniteField, n: int) -> "Matrix":
        return Matrix(fld, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(fld: FiniteField, nrows: int, ncols: int) -> "Matrix":
        return Matrix(fld, [[0] * ncols for _ in range(nrows)], ncols)

    def copy_rows(self) -> list[list[int]]:
        return [r[:] for r in self.rows]

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.rows]

    def columns(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(self.field, [[r[j] for j in idx] for r in self.rows], len(idx))

    def stack(self, other: "Matrix") -> "Matrix":
        if other.ncols != self.ncols:
            raise InvalidParameter("column count mismatch in stack")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def mul_vec(self, v: Sequence[int]) -> list[int]:
        f = self.field
        out = []
        for row in self.rows:
            acc = 0
            for a, b in zip(row, v):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return out

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise InvalidParameter("dimension mismatch in matmul")
        f = self.field
        ot = other.transpose()
        return Matrix(
            self.field,
            [[_dot(f, r, c) for c in ot.rows] for r in self.rows],
            other.ncols,
        )

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple[list[list[int]], list[int]]:
        """Reduced row echelon form; returns (rows, pivot column list)."""
        f = self.field
        rows = self.copy_rows()
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            pr = None
            for i in range(r, len(rows)):
                if rows[i][c]:
                    pr = i
                    break
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = f.inv(rows[r][c])
            if inv != 1:
                rows[r] = [f.mul(inv, x) for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    factor = rows[i][c]
                    ri, rr = rows[i], rows[r]
                    for j in range(c, self.ncols):
                        if rr[j]:
                            ri[j] = f.sub(ri[j], f.mul(factor, rr[j]))
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return rows, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "Matrix":
        """Basis of the right nullspace, one vector per row."""
        f = self.field
        rows, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in set(pivots)]
        basis = []
        for fc in free:
            v = [0] * self.ncols
            v[fc] = 1
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(rows[r][fc])
            basis.append(v)
        return Matrix(self.field, basis, self.ncols)

    def solve(self, rhs: Sequence[int]) -> list[int] | None:
        """One solution of M x = rhs, or None when inconsistent."""
        f = self.field
        aug = Matrix(f, [row + [b] for row, b in zip(self.rows, rhs)], self.ncols + 1)
        rows, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [0] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = rows[r][self.ncols]
        return x

    def column_supports(self) -> list[tuple[int, ...]]:
        """Per-column tuple of nonzero row indices (cached)."""
        if self._col_support is None:
            sup: list[list[int]] = [[] for _ in range(self.ncols)]
            for i, row in enumerate(self.rows):
                for j, v in enumerate(row):
                    if v:
                        sup[j].append(i)
            self._col_support = [tuple(s) for s in sup]
        return self._col_support

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.ncols == other.ncols
        )

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols})"


def _dot(f: FiniteField, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = f.add(acc, f.mul(x, y))
    return acc


def same_row_space(a: Matrix, b: Matrix) -> bool:
    ra = a.rank()
    return ra == b.rank() == a.stack(b).rank()


# ----------------------------------------------------------------------
# matrix text format
#
#   [extension only]  line 0: "p m c0 c1 ... cm"   (modulus, low degree first)
#   line 1: "q rows cols"
#   then one matrix row of element encodings per line


def dump_matrix(mat: Matrix) -> str:
    f = mat.field
    lines = []
    if f.m > 1:
        lines.append(" ".join(str(x) for x in (f.p, f.m, *f.modulus)))
    lines.append(f"{f.q} {mat.nrows} {mat.ncols}")
    for row in mat.rows:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> Matrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidParameter("empty matrix file")
    first = [int(t) for t in lines[0].split()]
    if len(first) == 3:
        q, nrows, ncols = first
        if not is_prime(q):
            raise InvalidParameter("prime-field matrix file with composite q")
        fld = FiniteField(q)
        body = lines[1:]
    else:
        p, m, *mod = first
        fld = FiniteField(p, m, mod)
        q, nrows, ncols = (int(t) for t in lines[1].split())
        if q != fld.q:
            raise InvalidParameter("field order mismatch in matrix header")
        body = lines[2:]
    if len(body) != nrows:
        raise InvalidParameter("matrix row count mismatch")
    rows = []
    for ln in body:
        row = [int(t) for t in ln.split()]
        if len(row) != ncols or any(not (0 <= x < fld.q) for x in row):
            raise InvalidParameter("bad matrix row")
        rows.append(row)
    return Matrix(fld, rows, ncols)
