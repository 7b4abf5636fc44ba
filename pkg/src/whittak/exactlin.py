"""Exact scalars over the Gaussian rationals Q(i) and sparse linear algebra.

Everything downstream computes in this ground field; there is no floating
point anywhere in the package.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator


class Scalar:
    """A Gaussian rational re + im*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: "Scalar") -> "Scalar":
        a, b, c, d = self.re, self.im, other.re, other.im
        return Scalar(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        c, d = other.re, other.im
        n = c * c + d * d
        if n == 0:
            raise ZeroDivisionError("division by zero Scalar")
        a, b = self.re, self.im
        return Scalar((a * c + b * d) / n, (b * c - a * d) / n)

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return ONE / (self ** (-k))
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    # -- predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        return isinstance(other, Scalar) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def one_norm(self) -> Fraction:
        """|re| + |im|, used for pivot choice and spectrum bounds."""
        return abs(self.re) + abs(self.im)

    # -- text format --------------------------------------------------------

    _TERM = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?(\*?i)?$")

    @staticmethod
    def parse(text: str) -> "Scalar":
        """Parse "p/q" or "p/q+r/s*i" (signs optional, /1 may be omitted)."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty scalar string")
        # split into at most two signed terms
        terms = []
        start = 0
        for k in range(1, len(s)):
            if s[k] in "+-" and s[k - 1] not in "+-/*":
                terms.append(s[start:k])
                start = k
        terms.append(s[start:])
        if len(terms) > 2:
            raise ValueError(f"cannot parse scalar {text!r}")
        re_part, im_part = Fraction(0), Fraction(0)
        seen_im = seen_re = False
        for term in terms:
            m = Scalar._TERM.match(term)
            if not m:
                raise ValueError(f"cannot parse scalar {text!r}")
            sign, mag, imark = m.groups()
            if mag is None and not imark:
                raise ValueError(f"cannot parse scalar {text!r}")
            val = Fraction(mag) if mag is not None else Fraction(1)
            if sign == "-":
                val = -val
            if imark:
                if seen_im:
                    raise ValueError(f"duplicate imaginary part in {text!r}")
                im_part, seen_im = val, True
            else:
                if seen_re:
                    raise ValueError(f"duplicate real part in {text!r}")
                re_part, seen_re = val, True
        return Scalar(re_part, im_part)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        im_mag = str(abs(self.im))
        sign = "-" if self.im < 0 else "+"
        if not self.re:
            return f"{'-' if self.im < 0 else ''}{im_mag}*i"
        return f"{self.re}{sign}{im_mag}*i"

    def __repr__(self) -> str:
        return f"Scalar({self})"

    # -- exact square root --------------------------------------------------

    def sqrt(self) -> "Scalar | None":
        """An exact square root in Q(i), or None when none exists."""
        a, b = self.re, self.im
        if not self:
            return ZERO
        n = _frac_sqrt(a * a + b * b)
        if n is None:
            return None
        if b == 0:
            if a > 0:
                x = _frac_sqrt(a)
                return Scalar(x) if x is not None else None
            y = _frac_sqrt(-a)
            return Scalar(0, y) if y is not None else None
        x = _frac_sqrt((a + n) / 2)
        if x is None or x == 0:
            return None
        y = b / (2 * x)
        root = Scalar(x, y)
        return root if root * root == self else None


def _frac_sqrt(f: Fraction) -> Fraction | None:
    if f < 0:
        return None
    p, q = f.numerator, f.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp != p or rq * rq != q:
        return None
    return Fraction(rp, rq)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
MINUS_ONE = Scalar(-1)


def half() -> Scalar:
    return Scalar(Fraction(1, 2))


def sign(k: int) -> Scalar:
    """(-1)^k as a Scalar."""
    return MINUS_ONE if k % 2 else ONE


class SparseVector:
    """Finitely supported vector: basis index -> nonzero Scalar."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict[int, Scalar] | None = None):
        self.entries = {i: s for i, s in (entries or {}).items() if s}

    @staticmethod
    def unit(i: int, coeff: Scalar = ONE) -> "SparseVector":
        return SparseVector({i: coeff} if coeff else {})

    def get(self, i: int) -> Scalar:
        return self.entries.get(i, ZERO)

    def items(self):
        return self.entries.items()

    def support(self) -> list[int]:
        return sorted(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseVector) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __add__(self, other: "SparseVector") -> "SparseVector":
        out = dict(self.entries)
        for i, s in other.entries.items():
            add_term(out, i, s)
        return SparseVector(out)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        out = dict(self.entries)
        for i, s in other.entries.items():
            add_term(out, i, -s)
        return SparseVector(out)

    def __neg__(self) -> "SparseVector":
        return SparseVector({i: -s for i, s in self.entries.items()})

    def scale(self, s: Scalar) -> "SparseVector":
        if not s:
            return SparseVector()
        return SparseVector({i: s * v for i, v in self.entries.items()})

    def dot(self, other: "SparseVector") -> Scalar:
        if len(self.entries) > len(other.entries):
            self, other = other, self
        acc = ZERO
        for i, s in self.entries.items():
            t = other.entries.get(i)
            if t is not None:
                acc = acc + s * t
        return acc

    def __str__(self) -> str:
        return "{" + ", ".join(f"{i}: {s}" for i, s in sorted(self.entries.items())) + "}"

    __repr__ = __str__


def add_term(entries: dict[int, Scalar], i: int, s: Scalar) -> None:
    """In-place accumulate used by builders; keeps the no-zero invariant."""
    if not s:
        return
    cur = entries.get(i)
    if cur is None:
        entries[i] = s
    else:
        new = cur + s
        if new:
            entries[i] = new
        else:
            del entries[i]


class SparseMatrix:
    """rows x cols matrix with a dict of nonzero entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict[tuple[int, int], Scalar] | None = None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        for (r, c), s in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
            if s:
                self.entries[(r, c)] = s

    @staticmethod
    def identity(n: int) -> "SparseMatrix":
        return SparseMatrix(n, n, {(i, i): ONE for i in range(n)})

    @staticmethod
    def from_columns(cols: Iterable[SparseVector], rows: int) -> "SparseMatrix":
        entries = {}
        ncols = 0
        for j, v in enumerate(cols):
            ncols = j + 1
            for i, s in v.items():
                entries[(i, j)] = s
        return SparseMatrix(rows, ncols, entries)

    def get(self, r: int, c: int) -> Scalar:
        return self.entries.get((r, c), ZERO)

    def column(self, j: int) -> SparseVector:
        return SparseVector({r: s for (r, c), s in self.entries.items() if c == j})

    def mul_vec(self, v: SparseVector) -> SparseVector:
        cols = {}
        for (r, c), s in self.entries.items():
            cols.setdefault(c, []).append((r, s))
        out: dict[int, Scalar] = {}
        for c, coeff in v.items():
            for r, s in cols.get(c, ()):
                add_term(out, r, s * coeff)
        return SparseVector(out)

    def row_dicts(self) -> list[dict[int, Scalar]]:
        rows: list[dict[int, Scalar]] = [dict() for _ in range(self.rows)]
        for (r, c), s in self.entries.items():
            rows[r][c] = s
        return rows

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): s for (r, c), s in self.entries.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __str__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"

    __repr__ = __str__


def _rref(rows: list[dict[int, Scalar]], ncols: int) -> tuple[list[dict[int, Scalar]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot column list)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        best = -1
        best_len = -1
        for k in range(r, nrows):
            if c in rows[k]:
                if best == -1 or len(rows[k]) < best_len:
                    best, best_len = k, len(rows[k])
        if best == -1:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][c]
        if piv != ONE:
            inv = ONE / piv
            rows[r] = {j: inv * s for j, s in rows[r].items()}
        prow = rows[r]
        for k in range(nrows):
            if k == r:
                continue
            f = rows[k].get(c)
            if f is None:
                continue
            rk = rows[k]
            for j, s in prow.items():
                add_term(rk, j, -f * s)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(m: SparseMatrix) -> int:
    _, pivots = _rref(m.row_dicts(), m.cols)
    return len(pivots)


def kernel_basis(m: SparseMatrix) -> list[SparseVector]:
    """Basis of the right null space; m . v = 0 exactly for each v."""
    rows, pivots = _rref(m.row_dicts(), m.cols)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = {f: ONE}
        for r, c in enumerate(pivots):
            s = rows[r].get(f)
            if s is not None:
                v[c] = -s
        basis.append(SparseVector(v))
    return basis


def solve(m: SparseMatrix, b: SparseVector) -> SparseVector | None:
    """Some exact solution x of m . x = b, or None when inconsistent.

    Free variables are set to zero, so the solution has minimal support
    with respect to the pivot choice.
    """
    for i in b.support():
        if i >= m.rows:
            raise ValueError(f"rhs index {i} outside {m.rows} rows")
    aug = m.cols
    rows = m.row_dicts()
    for i, s in b.items():
        rows[i][aug] = s
    rows, pivots = _rref(rows, m.cols + 1)
    if aug in pivots:
        return None
    x: dict[int, Scalar] = {}
    for r, c in enumerate(pivots):
        s = rows[r].get(aug)
        if s is not None:
            x[c] = s
    return SparseVector(x)


def invert(m: SparseMatrix) -> list[SparseVector]:
    """Columns of m^{-1}; raises on a singular matrix."""
    if m.rows != m.cols:
        raise ValueError("only square matrices can be inverted")
    n = m.rows
    rows = m.row_dicts()
    for i in range(n):
        rows[i][n + i] = ONE
    rows, pivots = _rref(rows, 2 * n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    cols: list[dict[int, Scalar]] = [dict() for _ in range(n)]
    for r in range(n):
        for j, s in rows[r].items():
            if j >= n:
                cols[j - n][r] = s
    return [SparseVector(c) for c in cols]


class EchelonSpan:
    """Incrementally maintained span used for subalgebra closures.

    Rows are kept in forward echelon form; each row also records how it is
    expressed over the accepted member vectors, so `coordinates` can rewrite
    any span element over the members exactly.
    """

    def __init__(self):
        # (pivot index, echelon vector with unit pivot, member combination)
        self.rows: list[tuple[int, SparseVector, dict[int, Scalar]]] = []
        self.members: list[SparseVector] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: SparseVector, want_combo: bool = False):
        combo: dict[int, Scalar] = {}
        for p, w, wc in self.rows:
            coeff = v.get(p)
            if coeff:
                v = v - w.scale(coeff)
                if want_combo:
                    for m, cm in wc.items():
                        add_term(combo, m, coeff * cm)
        return (v, combo) if want_combo else v

    def add(self, v: SparseVector) -> bool:
        """Accept v as a member if it enlarges the span."""
        red, combo = self.reduce(v, want_combo=True)
        if not red:
            return False
        k = len(self.members)
        self.members.append(v)
        p = min(red.entries)
        inv = ONE / red.get(p)
        # red = v - sum combo[m]*member[m], so the unit-pivot row is
        # inv*v - sum inv*combo[m]*member[m]
        row_combo = {m: -(inv * cm) for m, cm in combo.items()}
        add_term(row_combo, k, inv)
        self.rows.append((p, red.scale(inv), row_combo))
        return True

    def coordinates(self, v: SparseVector) -> dict[int, Scalar] | None:
        """Coefficients over the members expressing v, or None if outside."""
        red, combo = self.reduce(v, want_combo=True)
        if red:
            return None
        return combo
