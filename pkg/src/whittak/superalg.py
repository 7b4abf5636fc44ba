"""Finite-dimensional Lie superalgebras with exact structure constants.

Builders for gl(m|n) with supertrace form and root data, structural
verification (grading, super Jacobi, form axioms), span closures, ad-h
gradings and centralizers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .exactlin import (
    ONE,
    ZERO,
    I,
    EchelonSpan,
    Scalar,
    SparseMatrix,
    SparseVector,
    add_term,
    kernel_basis,
    rank,
    sign,
)
from .reports import Check, Report

EVEN, ODD = 0, 1


class SuperAlgebra:
    """Labelled basis, parity vector, sparse bracket table, optional form."""

    def __init__(self, name, labels, parity, table, form=None):
        self.name = name
        self.labels = list(labels)
        self.parity = list(parity)
        self.table = {k: v for k, v in table.items() if v}
        self.form = form
        if len(self.labels) != len(self.parity):
            raise ValueError("labels and parity lengths differ")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket_basis(self, i: int, j: int) -> SparseVector:
        return self.table.get((i, j), _EMPTY)

    def bracket(self, x: SparseVector, y: SparseVector) -> SparseVector:
        out: dict[int, Scalar] = {}
        for i, a in x.items():
            for j, b in y.items():
                t = self.table.get((i, j))
                if t is None:
                    continue
                coeff = a * b
                for k, s in t.items():
                    add_term(out, k, coeff * s)
        return SparseVector(out)

    def form_pair(self, x: SparseVector, y: SparseVector) -> Scalar:
        if self.form is None:
            raise ValueError(f"{self.name} carries no bilinear form")
        acc = ZERO
        for i, a in x.items():
            for j, b in y.items():
                s = self.form.get(i, j)
                if s:
                    acc = acc + a * s * b
        return acc

    def parity_of(self, v: SparseVector) -> int:
        """Parity of a homogeneous vector; raises on mixed parity."""
        ps = {self.parity[i] for i in v.entries}
        if len(ps) > 1:
            raise ValueError("vector is not parity-homogeneous")
        return ps.pop() if ps else EVEN

    def ad_matrix(self, x: SparseVector) -> SparseMatrix:
        entries: dict[tuple[int, int], Scalar] = {}
        for j in range(self.dim):
            img = self.bracket(x, SparseVector.unit(j))
            for i, s in img.items():
                entries[(i, j)] = s
        return SparseMatrix(self.dim, self.dim, entries)

    def __repr__(self):
        return f"SuperAlgebra({self.name}, dim={self.dim})"


_EMPTY = SparseVector()


@dataclass(frozen=True)
class Root:
    """A root as a covector on the Cartan basis plus its root space."""

    covector: tuple[Scalar, ...]
    space: tuple[int, ...]
    parity: int


@dataclass
class RootDatum:
    cartan: tuple[int, ...]
    roots: tuple[Root, ...]
    positive: tuple[int, ...]
    simple: tuple[int, ...]

    def positive_roots(self):
        return [self.roots[i] for i in self.positive]

    def simple_roots(self):
        return [self.roots[i] for i in self.simple]

    def odd_simple(self) -> list[int]:
        return [i for i in self.simple if self.roots[i].parity == ODD]

    def root_index(self, covector: tuple[Scalar, ...]) -> int | None:
        for i, r in enumerate(self.roots):
            if r.covector == covector:
                return i
        return None

    def simple_coordinates(self, root: Root) -> tuple[int, ...] | None:
        """Nonnegative integer coordinates of a positive root over the simples."""
        simples = self.simple_roots()
        mat = SparseMatrix(
            len(self.cartan),
            len(simples),
            {
                (r, c): s.covector[r]
                for c, s in enumerate(simples)
                for r in range(len(self.cartan))
                if s.covector[r]
            },
        )
        from .exactlin import solve

        sol = solve(mat, SparseVector({r: v for r, v in enumerate(root.covector) if v}))
        if sol is None:
            return None
        coords = [0] * len(simples)
        for c, s in sol.items():
            if s.im or s.re.denominator != 1 or s.re < 0:
                return None
            coords[c] = int(s.re)
        return tuple(coords)


@dataclass(frozen=True)
class Weight:
    """Covector on the Cartan basis together with the central level."""

    values: tuple[Scalar, ...]
    level: Scalar = ZERO

    def __add__(self, other: "Weight") -> "Weight":
        if len(self.values) != len(other.values):
            raise ValueError("weights live on different Cartans")
        return Weight(
            tuple(a + b for a, b in zip(self.values, other.values)),
            self.level + other.level,
        )

    def __sub__(self, other: "Weight") -> "Weight":
        if len(self.values) != len(other.values):
            raise ValueError("weights live on different Cartans")
        return Weight(
            tuple(a - b for a, b in zip(self.values, other.values)),
            self.level - other.level,
        )

    def restrict(self) -> "Weight":
        return Weight(self.values, ZERO)

    def with_level(self, c: Scalar) -> "Weight":
        return Weight(self.values, c)


def gl_parity_sequence(m: int, n: int) -> list[int]:
    """Row parities for gl(m|n), maximally alternating.

    The even/odd rows interleave as evenly as possible so that the
    upper-triangular Borel of gl(n|n+1)-type algebras has a completely odd
    simple system, which is what the principal odd nilpotent needs.
    """
    seq: list[int] = []
    rem = [m, n]
    prev = -1
    while rem[0] or rem[1]:
        if rem[0] and rem[1]:
            if rem[0] > rem[1]:
                p = 0
            elif rem[1] > rem[0]:
                p = 1
            else:
                p = 1 - prev if prev in (0, 1) else 0
        else:
            p = 0 if rem[0] else 1
        seq.append(p)
        rem[p] -= 1
        prev = p
    return seq


def build_gl(m: int, n: int) -> tuple[SuperAlgebra, RootDatum]:
    """gl(m|n) on matrix units with the supertrace form and standard Borel."""
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("build_gl requires m + n >= 1")
    d = m + n
    rowp = gl_parity_sequence(m, n)

    def idx(a, b):
        return a * d + b

    def label(a, b):
        if d < 10:
            return f"E_{a + 1}{b + 1}"
        return f"E_{a + 1},{b + 1}"

    labels = [label(a, b) for a in range(d) for b in range(d)]
    parity = [rowp[a] ^ rowp[b] for a in range(d) for b in range(d)]

    table: dict[tuple[int, int], SparseVector] = {}
    for a, b, c, e in itertools.product(range(d), repeat=4):
        i, j = idx(a, b), idx(c, e)
        out: dict[int, Scalar] = {}
        if b == c:
            add_term(out, idx(a, e), ONE)
        if e == a:
            add_term(out, idx(c, b), -sign(parity[i] * parity[j]))
        if out:
            table[(i, j)] = SparseVector(out)

    form = SparseMatrix(
        d * d,
        d * d,
        {
            (idx(a, b), idx(b, a)): sign(rowp[a])
            for a in range(d)
            for b in range(d)
        },
    )
    alg = SuperAlgebra(f"gl({m}|{n})", labels, parity, table, form)

    cartan = tuple(idx(a, a) for a in range(d))
    roots = []
    positive = []
    simple = []
    for a in range(d):
        for b in range(d):
            if a == b:
                continue
            cov = tuple(ONE if c == a else (-ONE if c == b else ZERO) for c in range(d))
            roots.append(Root(cov, (idx(a, b),), rowp[a] ^ rowp[b]))
            k = len(roots) - 1
            if a < b:
                positive.append(k)
                if b == a + 1:
                    simple.append(k)
    rd = RootDatum(cartan, tuple(roots), tuple(positive), tuple(simple))
    return alg, rd


def verify_algebra(a: SuperAlgebra) -> Report:
    """Exact structural check: grading, anticommutativity, Jacobi, form axioms."""
    checks = []
    d = a.dim

    bad = None
    for (i, j), v in a.table.items():
        want = a.parity[i] ^ a.parity[j]
        for k in v.entries:
            if a.parity[k] != want:
                bad = f"[{a.labels[i]},{a.labels[j]}] has a parity-{a.parity[k]} term {a.labels[k]}"
                break
        if bad:
            break
    checks.append(Check("bracket respects parity", bad is None, bad))

    bad = None
    for i in range(d):
        for j in range(i, d):
            lhs = a.bracket_basis(i, j)
            rhs = a.bracket_basis(j, i).scale(-sign(a.parity[i] * a.parity[j]))
            if lhs != rhs:
                bad = f"[{a.labels[i]},{a.labels[j]}] != -(-1)^pq [{a.labels[j]},{a.labels[i]}]"
                break
        if bad:
            break
    checks.append(Check("super-anticommutativity", bad is None, bad))

    # With anticommutativity established, ordered triples cover all triples.
    bad = None
    for i in range(d):
        ei = SparseVector.unit(i)
        for j in range(i, d):
            pij = sign(a.parity[i] * a.parity[j])
            ej = SparseVector.unit(j)
            for k in range(j, d):
                inner = a.bracket_basis(j, k)
                lhs = a.bracket(ei, inner) if inner else _EMPTY
                t1 = a.bracket(a.bracket_basis(i, j), SparseVector.unit(k))
                t2 = a.bracket(ej, a.bracket_basis(i, k)).scale(pij)
                if lhs != t1 + t2:
                    bad = f"Jacobi fails at ({a.labels[i]},{a.labels[j]},{a.labels[k]})"
                    break
            if bad:
                break
        if bad:
            break
    checks.append(Check("super Jacobi identity", bad is None, bad))

    if a.form is not None:
        bad = None
        for (r, c), s in a.form.entries.items():
            if a.parity[r] != a.parity[c] and s:
                bad = f"form pairs {a.labels[r]} with {a.labels[c]} across parity"
                break
        checks.append(Check("form is even", bad is None, bad))

        bad = None
        for i in range(d):
            for j in range(i, d):
                if a.form.get(i, j) != sign(a.parity[i] * a.parity[j]) * a.form.get(j, i):
                    bad = f"supersymmetry fails at ({a.labels[i]},{a.labels[j]})"
                    break
            if bad:
                break
        checks.append(Check("form is supersymmetric", bad is None, bad))

        bad = None
        for i in range(d):
            for j in range(d):
                bij = a.bracket_basis(i, j)
                for k in range(d):
                    lhs = ZERO
                    for t, s in bij.items():
                        f = a.form.get(t, k)
                        if f:
                            lhs = lhs + s * f
                    rhs = ZERO
                    for t, s in a.bracket_basis(j, k).items():
                        f = a.form.get(i, t)
                        if f:
                            rhs = rhs + f * s
                    if lhs != rhs:
                        bad = f"invariance fails at ({a.labels[i]},{a.labels[j]},{a.labels[k]})"
                        break
                if bad:
                    break
            if bad:
                break
        checks.append(Check("form is invariant", bad is None, bad))

        nondeg = rank(a.form) == d
        checks.append(Check("form is non-degenerate", nondeg, None if nondeg else f"rank {rank(a.form)} < {d}"))

    return Report(f"algebra checks: {a.name}", checks)


def verify_root_datum(a: SuperAlgebra, rd: RootDatum) -> Report:
    """[h, x] = alpha(h) x on every root space, and spanning."""
    checks = []
    bad = None
    for r in rd.roots:
        for x in r.space:
            xv = SparseVector.unit(x)
            for pos, h in enumerate(rd.cartan):
                got = a.bracket(SparseVector.unit(h), xv)
                want = xv.scale(r.covector[pos])
                if got != want:
                    bad = f"[{a.labels[h]},{a.labels[x]}] != root value"
                    break
            if bad:
                break
        if bad:
            break
    checks.append(Check("root space eigen-equations", bad is None, bad))

    covered = set(rd.cartan)
    for r in rd.roots:
        covered.update(r.space)
    spanning = covered == set(range(a.dim))
    checks.append(Check("cartan and root spaces span", spanning, None))

    neg = {tuple(-v for v in rd.roots[i].covector) for i in rd.positive}
    allcov = {r.covector for r in rd.roots}
    pos_cov = {rd.roots[i].covector for i in rd.positive}
    partition = allcov == neg | pos_cov and not (neg & pos_cov)
    checks.append(Check("negatives are minus positives", partition, None))
    return Report("root datum checks", checks)


def subalgebra_from_span(
    a: SuperAlgebra, gens: list[SparseVector], name: str = "span"
) -> tuple[SuperAlgebra, SparseMatrix]:
    """Close parity-homogeneous generators under bracket.

    Returns the sub-superalgebra with induced structure constants plus the
    restricted form, and the inclusion matrix (columns = sub basis vectors).
    """
    span = EchelonSpan()
    parities: list[int] = []

    def accept(v: SparseVector):
        p = a.parity_of(v)  # raises on a non-homogeneous generator
        if span.add(v):
            parities.append(p)

    for g in gens:
        if g:
            accept(g)
    while True:
        added = False
        basis = list(span.members)
        n = len(basis)
        for i in range(n):
            for j in range(i, n):
                b = a.bracket(basis[i], basis[j])
                if b and span.coordinates(b) is None:
                    accept(b)
                    added = True
        if not added and len(span.members) == n:
            break

    basis = span.members
    k = len(basis)
    table: dict[tuple[int, int], SparseVector] = {}
    for i in range(k):
        for j in range(k):
            b = a.bracket(basis[i], basis[j])
            if not b:
                continue
            coords = span.coordinates(b)
            if coords is None:
                raise RuntimeError("span closure is not bracket-closed")
            table[(i, j)] = SparseVector(coords)
    form = None
    if a.form is not None:
        form = SparseMatrix(
            k, k, {(i, j): a.form_pair(basis[i], basis[j]) for i in range(k) for j in range(k)}
        )
    labels = [f"s{i}" for i in range(k)]
    sub = SuperAlgebra(name, labels, parities, table, form)
    embed = SparseMatrix.from_columns(basis, a.dim)
    return sub, embed


def weyl_vector(rd: RootDatum, level: Scalar = ZERO) -> Weight:
    """Half the even positive roots minus half the odd ones, as a covector."""
    n = len(rd.cartan)
    acc = [ZERO] * n
    for r in rd.positive_roots():
        s = Scalar(1, 0) if r.parity == EVEN else Scalar(-1, 0)
        for t in range(n):
            acc[t] = acc[t] + s * r.covector[t]
    h = Scalar(1) / Scalar(2)
    return Weight(tuple(h * v for v in acc), level)


@dataclass
class Grading:
    """Integer ad-h eigen decomposition, reported as degree blocks."""

    degrees: tuple[int, ...]
    blocks: list[tuple[int, list[SparseVector]]] = field(default_factory=list)

    def by_basis(self) -> dict[int, int]:
        return dict(enumerate(self.degrees))


def grading_by_adh(a: SuperAlgebra, h: SparseVector) -> Grading:
    """Integer grading of the basis by ad h eigenvalues.

    The fast path requires every basis vector to be an ad-h eigenvector with
    an integer eigenvalue (true for the diagonal Cartans used here); otherwise
    integer eigenspaces are collected and must jointly span.
    """
    d = a.dim
    degs: list[int | None] = []
    ok = True
    for j in range(d):
        img = a.bracket(h, SparseVector.unit(j))
        if not img:
            degs.append(0)
            continue
        if set(img.entries) != {j}:
            ok = False
            break
        lam = img.get(j)
        if lam.im or lam.re.denominator != 1:
            raise ValueError(f"ad h eigenvalue {lam} on {a.labels[j]} is not an integer")
        degs.append(int(lam.re))
    if ok:
        g = Grading(tuple(degs))
        found: dict[int, list[SparseVector]] = {}
        for j, deg in enumerate(degs):
            found.setdefault(deg, []).append(SparseVector.unit(j))
        g.blocks = sorted(found.items())
        return g

    ad = a.ad_matrix(h)
    bound = 0
    cols: dict[int, Scalar] = {}
    for (_, c), s in ad.entries.items():
        cols[c] = cols.get(c, ZERO) + Scalar(s.one_norm())
    for s in cols.values():
        bound = max(bound, int(s.re) + 1)
    blocks = []
    total = 0
    for deg in range(-bound, bound + 1):
        shifted = SparseMatrix(
            d, d, {**ad.entries}
        )
        for j in range(d):
            cur = shifted.entries.get((j, j), ZERO) - Scalar(deg)
            if cur:
                shifted.entries[(j, j)] = cur
            else:
                shifted.entries.pop((j, j), None)
        kb = kernel_basis(shifted)
        if kb:
            blocks.append((deg, kb))
            total += len(kb)
    if total != d:
        got = sorted(deg for deg, _ in blocks)
        raise ValueError(
            f"ad h is not integer-diagonalizable: degrees {got} cover {total} of {d} dimensions"
        )
    degs2: list[int] = [0] * d
    usable = True
    for deg, vecs in blocks:
        for v in vecs:
            if len(v) == 1:
                degs2[v.support()[0]] = deg
            else:
                usable = False
    g = Grading(tuple(degs2) if usable else tuple())
    g.blocks = blocks
    return g


def centralizer_dim(a: SuperAlgebra, x: SparseVector) -> int:
    """Dimension of ker(ad x) on a."""
    return a.dim - rank(a.ad_matrix(x))
