"""Central extension of s (x) Lambda(theta) by a one-dimensional center.

The bracket is the generator form
    [s1 (x) 1, s2 (x) f]      = [s1,s2] (x) f
    [s1 (x) th, s2 (x) th]    = (-1)^p(s2) (s1|s2) z
with the remaining case [s1 (x) th, s2 (x) 1] = (-1)^p(s2) [s1,s2] (x) th
forced by super-anticommutativity; this reproduces the twisted one-line
definition with the (-1)^{p(f1)p(s2)} factor. The odd invariant form and the
derivation cocycle live here too, as do the normalized dual bases used by the
Fock construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import ONE, ZERO, Scalar, SparseMatrix, SparseVector, add_term, rank, sign
from .reports import Check, Report
from .superalg import EVEN, ODD, RootDatum, SuperAlgebra, verify_algebra


@dataclass
class HatDecomposition:
    n_hat: tuple[int, ...]
    h_hat: tuple[int, ...]
    n_minus_hat: tuple[int, ...]


class TakiffAlgebra:
    """Base algebra, its central extension, and the index layout between them."""

    def __init__(self, base: SuperAlgebra, rd: RootDatum, total: SuperAlgebra, z_index: int):
        self.base = base
        self.rd = rd
        self.total = total
        self.z_index = z_index
        self.n1 = base.dim

    def one(self, i: int) -> int:
        return i

    def theta(self, i: int) -> int:
        return self.n1 + i

    def split(self, k: int) -> tuple[int, int]:
        """Total index -> (base index, theta exponent); z is not splittable."""
        if k == self.z_index:
            raise ValueError("z has no base component")
        return (k, 0) if k < self.n1 else (k - self.n1, 1)

    def split_vector(self, v: SparseVector) -> tuple[SparseVector, SparseVector, Scalar]:
        """Total vector -> (base part, theta part in base coords, z coefficient)."""
        one_part: dict[int, Scalar] = {}
        theta_part: dict[int, Scalar] = {}
        zc = ZERO
        for k, s in v.items():
            if k == self.z_index:
                zc = zc + s
            elif k < self.n1:
                one_part[k] = s
            else:
                theta_part[k - self.n1] = s
        return SparseVector(one_part), SparseVector(theta_part), zc

    def embed(self, v: SparseVector, theta_power: int = 0) -> SparseVector:
        off = self.n1 if theta_power else 0
        return SparseVector({off + i: s for i, s in v.items()})

    def __repr__(self):
        return f"TakiffAlgebra({self.base.name}, dim={self.total.dim})"


def build_takiff(s: SuperAlgebra, rd: RootDatum) -> tuple[TakiffAlgebra, HatDecomposition]:
    """Extend s (x) Lambda(theta) by the derivation cocycle's center."""
    if s.form is None:
        raise ValueError(f"{s.name} has no bilinear form; the extension needs one")
    if rank(s.form) != s.dim:
        raise ValueError(f"the form of {s.name} is degenerate")
    n = s.dim
    z = 2 * n
    labels = list(s.labels) + [f"{l}.th" for l in s.labels] + ["z"]
    parity = list(s.parity) + [p ^ 1 for p in s.parity] + [EVEN]

    table: dict[tuple[int, int], SparseVector] = {}
    for (i, j), v in s.table.items():
        table[(i, j)] = v
        table[(i, n + j)] = SparseVector({n + k: c for k, c in v.items()})
        sv = v.scale(sign(s.parity[j]))
        if sv:
            table[(n + i, j)] = SparseVector({n + k: c for k, c in sv.items()})
    for i in range(n):
        for j in range(n):
            f = s.form.get(i, j)
            if f:
                table[(n + i, n + j)] = SparseVector({z: sign(s.parity[j]) * f})

    total = SuperAlgebra(f"takiff({s.name})", labels, parity, table)
    t = TakiffAlgebra(s, rd, total, z)

    pos_spaces = [x for r in rd.positive_roots() for x in r.space]
    neg_cov = {tuple(-c for c in rd.roots[i].covector) for i in rd.positive}
    neg_spaces = [x for r in rd.roots if r.covector in neg_cov for x in r.space]
    n_hat = tuple(sorted([x for x in pos_spaces] + [n + x for x in pos_spaces]))
    n_minus = tuple(sorted([x for x in neg_spaces] + [n + x for x in neg_spaces]))
    h_hat = tuple(sorted([h for h in rd.cartan] + [n + h for h in rd.cartan] + [z]))
    return t, HatDecomposition(n_hat, h_hat, n_minus)


def theta_derivative(t: TakiffAlgebra, x: SparseVector) -> SparseVector:
    """d/dtheta on the theta-part layout (z must not appear)."""
    out: dict[int, Scalar] = {}
    for k, s in x.items():
        if k == t.z_index:
            raise ValueError("z has no theta derivative")
        if k >= t.n1:
            add_term(out, k - t.n1, s)
    return SparseVector(out)


def odd_form_prime(t: TakiffAlgebra, x: SparseVector, y: SparseVector) -> Scalar:
    """The odd invariant form on s (x) Lambda(theta).

    On basis elements: (b_i (x) 1 | b_j (x) th) = (b_i|b_j) and
    (b_i (x) th | b_j (x) 1) = (-1)^p(b_j) (b_i|b_j); same-layer pairs vanish.
    """
    acc = ZERO
    for k, a in x.items():
        if k == t.z_index:
            raise ValueError("z is not in the domain of the odd form")
        i, ti = t.split(k)
        for l, b in y.items():
            if l == t.z_index:
                raise ValueError("z is not in the domain of the odd form")
            j, tj = t.split(l)
            if ti + tj != 1:
                continue
            f = t.base.form.get(i, j)
            if not f:
                continue
            term = a * f * b
            if ti == 1:
                term = term * sign(t.base.parity[j])
            acc = acc + term
    return acc


def cocycle_alpha_d(t: TakiffAlgebra, x: SparseVector, y: SparseVector) -> Scalar:
    """alpha(x, y) = (dx/dtheta | y)'; nonzero only when both carry theta."""
    return odd_form_prime(t, theta_derivative(t, x), y)


def verify_takiff(t: TakiffAlgebra) -> Report:
    """Structural checks of the extension against its base algebra."""
    rep = Report(f"takiff checks: {t.total.name}")
    rep.merge(verify_algebra(t.total))

    tot, n, z = t.total, t.n1, t.z_index
    bad = None
    for b in range(tot.dim):
        if tot.bracket_basis(z, b) or tot.bracket_basis(b, z):
            bad = f"[z,{tot.labels[b]}] != 0"
            break
    rep.add("z is central", bad is None, bad)

    bad = None
    for i in range(n):
        for j in range(n):
            base_br = t.base.bracket_basis(i, j)
            if tot.bracket_basis(i, j) != base_br:
                bad = f"[{tot.labels[i]},{tot.labels[j]}] differs from base"
                break
            want = SparseVector({n + k: c for k, c in base_br.items()})
            if tot.bracket_basis(i, n + j) != want:
                bad = f"[{tot.labels[i]},{tot.labels[n + j]}] != bracket (x) theta"
                break
            want_z = SparseVector({z: sign(t.base.parity[j]) * t.base.form.get(i, j)})
            if tot.bracket_basis(n + i, n + j) != want_z:
                bad = f"[{tot.labels[n + i]},{tot.labels[n + j]}] != form z-term"
                break
        if bad:
            break
    rep.add("generator bracket rules", bad is None, bad)

    bad = None
    for i in range(2 * n):
        x = SparseVector.unit(i)
        px = tot.parity[i]
        for j in range(i, 2 * n):
            y = SparseVector.unit(j)
            lhs = cocycle_alpha_d(t, x, y)
            rhs = -sign(px * tot.parity[j]) * cocycle_alpha_d(t, y, x)
            if lhs != rhs:
                bad = f"cocycle skewsymmetry fails at ({tot.labels[i]},{tot.labels[j]})"
                break
        if bad:
            break
    rep.add("cocycle super-skewsymmetry", bad is None, bad)

    bad = None
    for i in range(2 * n):
        x = SparseVector.unit(i)
        for j in range(2 * n):
            y = SparseVector.unit(j)
            bxy_th = tot.bracket(x, y)
            bxy_strip = SparseVector({k: s for k, s in bxy_th.items() if k != z})
            for w in range(2 * n):
                wv = SparseVector.unit(w)
                byw = tot.bracket(y, wv)
                byw_strip = SparseVector({k: s for k, s in byw.items() if k != z})
                if odd_form_prime(t, bxy_strip, wv) != odd_form_prime(t, x, byw_strip):
                    bad = f"odd form invariance fails at ({tot.labels[i]},{tot.labels[j]},{tot.labels[w]})"
                    break
            if bad:
                break
        if bad:
            break
    rep.add("odd form invariance", bad is None, bad)
    return rep


def verify_hat_closure(t: TakiffAlgebra, hat: HatDecomposition) -> Report:
    rep = Report("triangular decomposition closure")
    nset = set(hat.n_hat)
    parts = sorted(set(hat.n_hat) | set(hat.h_hat) | set(hat.n_minus_hat))
    rep.add("partition covers the basis", parts == list(range(t.total.dim)), None)
    rep.add("z sits in the Cartan part", t.z_index in set(hat.h_hat), None)

    bad = None
    for i in hat.n_hat:
        for j in hat.n_hat:
            br = t.total.bracket_basis(i, j)
            if any(k not in nset for k in br.entries):
                bad = f"[{t.total.labels[i]},{t.total.labels[j]}] leaves the radical"
                break
        if bad:
            break
    rep.add("radical is bracket-closed", bad is None, bad)

    bad = None
    for h in hat.h_hat:
        for j in hat.n_hat:
            br = t.total.bracket_basis(h, j)
            if any(k not in nset for k in br.entries):
                bad = f"[{t.total.labels[h]},{t.total.labels[j]}] leaves the radical"
                break
        if bad:
            break
    rep.add("cartan part normalizes the radical", bad is None, bad)
    return rep


@dataclass
class DualBasis:
    """Root vectors with (E_a|F_a) = 1 and an orthonormal Cartan basis.

    upper[k] and lower[k] are dual under the form: (upper[i]|lower[j]) = d_ij.
    """

    E: list[SparseVector]
    F: list[SparseVector]
    H: list[SparseVector]
    upper: list[SparseVector]
    lower: list[SparseVector]
    upper_parity: list[int]

    @property
    def q(self) -> int:
        return len(self.upper)


def dual_bases(s: SuperAlgebra, rd: RootDatum) -> DualBasis:
    """Normalized dual bases of s with respect to its invariant form."""
    if s.form is None:
        raise ValueError("dual bases need the bilinear form")
    Es: list[SparseVector] = []
    Fs: list[SparseVector] = []
    for ridx in rd.positive:
        r = rd.roots[ridx]
        if len(r.space) != 1:
            raise ValueError("dual bases require one-dimensional root spaces")
        e = SparseVector.unit(r.space[0])
        neg = rd.root_index(tuple(-c for c in r.covector))
        if neg is None:
            raise ValueError(f"missing opposite root for {r.covector}")
        f0 = SparseVector.unit(rd.roots[neg].space[0])
        pairing = s.form_pair(e, f0)
        if not pairing:
            raise ValueError(f"root vectors pair to zero for root {r.covector}")
        Es.append(e)
        Fs.append(f0.scale(ONE / pairing))

    Hs: list[SparseVector] = []
    for h in rd.cartan:
        v = SparseVector.unit(h)
        for w in Hs:
            v = v - w.scale(s.form_pair(v, w))
        norm = s.form_pair(v, v)
        root = norm.sqrt()
        if root is None or not root:
            raise ValueError(
                f"cannot orthonormalize Cartan element {s.labels[h]} over Q(i): (v|v) = {norm}"
            )
        Hs.append(v.scale(ONE / root))

    upper = Es + Fs + Hs
    lower = (
        Fs
        + [Es[k].scale(sign(s.parity_of(Es[k]))) for k in range(len(Es))]
        + Hs
    )
    parities = [s.parity_of(v) for v in upper]
    db = DualBasis(Es, Fs, Hs, upper, lower, parities)
    for i in range(db.q):
        for j in range(db.q):
            want = ONE if i == j else ZERO
            got = s.form_pair(db.upper[i], db.lower[j])
            if got != want:
                raise ValueError(f"dual basis pairing ({i},{j}) = {got}, expected {want}")
    return db
