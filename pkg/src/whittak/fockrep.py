"""Fock realizations of the barred Heisenberg-Clifford subalgebra and lifts.

A basis vector is a monomial: polynomial variables for the barred negative
odd-root vectors, Grassmann variables for the barred negative even-root
vectors, and a Clifford word over the creation half of the barred Cartan.
All operator actions are exact and lazy; nothing is materialized as a matrix.

Sign conventions are fixed by the canonical word order
    poly letters (even) . grass letters . b_1 ... b_K . w
applied to the vacuum, with Koszul signs counted over the odd letters only.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .exactlin import (
    I,
    ONE,
    ZERO,
    Scalar,
    SparseMatrix,
    SparseVector,
    add_term,
    invert,
    rank,
    sign,
)
from .reports import Report
from .superalg import EVEN, ODD, SuperAlgebra, Weight, weyl_vector
from .takiff import DualBasis, TakiffAlgebra, dual_bases


class FockIndex(NamedTuple):
    poly: tuple[int, ...]
    grass: tuple[int, ...]
    cliff: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.poly) + sum(self.grass) + sum(self.cliff)

    @property
    def parity(self) -> int:
        return (sum(self.grass) + sum(self.cliff)) % 2


class ModuleVector:
    """Finite linear combination of module basis keys with nonzero scalars."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: s for k, s in (terms or {}).items() if s}

    def items(self):
        return self.terms.items()

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, s in other.terms.items():
            add_term(out, k, s)
        return ModuleVector(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, s in other.terms.items():
            add_term(out, k, -s)
        return ModuleVector(out)

    def __neg__(self):
        return ModuleVector({k: -s for k, s in self.terms.items()})

    def scale(self, s: Scalar):
        if not s:
            return ModuleVector()
        return ModuleVector({k: s * v for k, v in self.terms.items()})

    def coefficient(self, key) -> Scalar:
        return self.terms.get(key, ZERO)

    def __repr__(self):
        parts = [f"{s} * {k}" for k, s in list(self.terms.items())[:4]]
        more = "" if len(self.terms) <= 4 else f" ... ({len(self.terms)} terms)"
        return "ModuleVector(" + "; ".join(parts) + more + ")"


def clifford_module_dim(ell: int, level_nonzero: bool) -> int:
    """Dimension of the simple Clifford factor over an ell-dimensional Cartan."""
    return 2 ** ((ell + 1) // 2) if level_nonzero else 1


class FockModule:
    """Induced module of the barred subalgebra plus z, with the lifted action.

    eta is the twist: values on the barred positive odd-root vectors, keyed by
    position in the positive-root list. The lift of the untwisted base algebra
    follows phi(s) = (1/2c) sum_j phi(bar[s, u^j]) phi(bar u_j).
    """

    def __init__(self, takiff: TakiffAlgebra, c: Scalar, eta: dict[int, Scalar] | None = None):
        if not c:
            raise ValueError("the level must be nonzero")
        self.takiff = takiff
        self.base = takiff.base
        self.rd = takiff.rd
        self.c = c
        self.dual = dual_bases(self.base, self.rd)
        self.positives = self.rd.positive_roots()
        npos = len(self.positives)

        self.poly_slots = [i for i, r in enumerate(self.positives) if r.parity == ODD]
        self.grass_slots = [i for i, r in enumerate(self.positives) if r.parity == EVEN]
        self._poly_of = {p: k for k, p in enumerate(self.poly_slots)}
        self._grass_of = {p: k for k, p in enumerate(self.grass_slots)}

        ell = len(self.dual.H)
        self.n_pairs = ell // 2
        self.has_w = bool(ell % 2)
        self.n_cliff = self.n_pairs + (1 if self.has_w else 0)

        H = self.dual.H
        self.a_vecs = [H[2 * k] + H[2 * k + 1].scale(I) for k in range(self.n_pairs)]
        self.b_vecs = [H[2 * k] - H[2 * k + 1].scale(I) for k in range(self.n_pairs)]
        self.w_vec = H[ell - 1] if self.has_w else None

        # the annihilator span must be isotropic for the cocycle form
        iso = [self.dual.E[i] for i in range(npos)] + self.a_vecs
        for x in iso:
            for y in iso:
                if self.base.form_pair(x, y):
                    raise ValueError("annihilator span is not isotropic")

        self.slots: list[tuple] = (
            [("E", i) for i in range(npos)]
            + [("F", i) for i in range(npos)]
            + [("a", k) for k in range(self.n_pairs)]
            + [("b", k) for k in range(self.n_pairs)]
            + ([("w", 0)] if self.has_w else [])
        )
        cols = (
            [self.dual.E[i] for i in range(npos)]
            + [self.dual.F[i] for i in range(npos)]
            + self.a_vecs
            + self.b_vecs
            + ([self.w_vec] if self.has_w else [])
        )
        self._inv_cols = invert(SparseMatrix.from_columns(cols, self.base.dim))

        self.eta = {i: ZERO for i in range(npos)}
        for k, v in (eta or {}).items():
            if not 0 <= k < npos:
                raise ValueError(f"twist key {k} is not a positive-root position")
            if v and self.positives[k].parity == EVEN:
                raise ValueError("the twist is supported on barred odd-root vectors only")
            self.eta[k] = v
        self.rho = weyl_vector(self.rd, self.c)

    # -- bookkeeping ---------------------------------------------------------

    @property
    def twisted(self) -> bool:
        return any(self.eta.values())

    def vacuum(self) -> ModuleVector:
        idx = FockIndex(
            (0,) * len(self.poly_slots), (0,) * len(self.grass_slots), (0,) * self.n_cliff
        )
        return ModuleVector({idx: ONE})

    def basis_indices(self, max_degree: int) -> list[FockIndex]:
        out = []
        for grass in itertools.product((0, 1), repeat=len(self.grass_slots)):
            for cliff in itertools.product((0, 1), repeat=self.n_cliff):
                room = max_degree - sum(grass) - sum(cliff)
                if room < 0:
                    continue
                for poly in _exponents_up_to(len(self.poly_slots), room):
                    out.append(FockIndex(poly, grass, cliff))
        out.sort(key=lambda ix: (ix.degree, ix.poly, ix.grass, ix.cliff))
        return out

    def weight_of(self, idx: FockIndex) -> Weight:
        vals = list(self.rho.values)
        for k, m in enumerate(idx.poly):
            if m:
                cov = self.positives[self.poly_slots[k]].covector
                for t in range(len(vals)):
                    vals[t] = vals[t] - Scalar(m) * cov[t]
        for k, b in enumerate(idx.grass):
            if b:
                cov = self.positives[self.grass_slots[k]].covector
                for t in range(len(vals)):
                    vals[t] = vals[t] - cov[t]
        return Weight(tuple(vals), self.c)

    def _odd_before_grass(self, idx: FockIndex, gi: int) -> int:
        return sum(idx.grass[:gi])

    def _odd_before_cliff(self, idx: FockIndex, ci: int) -> int:
        return sum(idx.grass) + sum(idx.cliff[:ci])

    # -- adapted letter actions ----------------------------------------------

    def _apply_slot(self, slot: tuple, v: ModuleVector) -> ModuleVector:
        kind, k = slot
        out: dict[FockIndex, Scalar] = {}
        c = self.c
        half_c = c * Scalar(Fraction(1, 2))
        for idx, coeff in v.items():
            if kind == "F":
                if k in self._poly_of:
                    pi = self._poly_of[k]
                    poly = list(idx.poly)
                    poly[pi] += 1
                    add_term(out, FockIndex(tuple(poly), idx.grass, idx.cliff), coeff)
                else:
                    gi = self._grass_of[k]
                    if idx.grass[gi]:
                        continue
                    s = sign(self._odd_before_grass(idx, gi))
                    grass = list(idx.grass)
                    grass[gi] = 1
                    add_term(out, FockIndex(idx.poly, tuple(grass), idx.cliff), coeff * s)
            elif kind == "E":
                beta = sign(self.positives[k].parity)
                if k in self._poly_of:
                    pi = self._poly_of[k]
                    m = idx.poly[pi]
                    if not m:
                        continue
                    poly = list(idx.poly)
                    poly[pi] -= 1
                    add_term(
                        out,
                        FockIndex(tuple(poly), idx.grass, idx.cliff),
                        coeff * c * beta * Scalar(m),
                    )
                else:
                    gi = self._grass_of[k]
                    if not idx.grass[gi]:
                        continue
                    s = sign(self._odd_before_grass(idx, gi))
                    grass = list(idx.grass)
                    grass[gi] = 0
                    add_term(out, FockIndex(idx.poly, tuple(grass), idx.cliff), coeff * c * beta * s)
            elif kind == "b":
                if idx.cliff[k]:
                    continue
                s = sign(self._odd_before_cliff(idx, k))
                cliff = list(idx.cliff)
                cliff[k] = 1
                add_term(out, FockIndex(idx.poly, idx.grass, tuple(cliff)), coeff * s)
            elif kind == "a":
                if not idx.cliff[k]:
                    continue
                s = sign(self._odd_before_cliff(idx, k))
                cliff = list(idx.cliff)
                cliff[k] = 0
                add_term(
                    out, FockIndex(idx.poly, idx.grass, tuple(cliff)), coeff * Scalar(2) * c * s
                )
            else:  # w, the unpaired Clifford letter: w . w = c/2
                wi = self.n_cliff - 1
                s = sign(self._odd_before_cliff(idx, wi))
                cliff = list(idx.cliff)
                if idx.cliff[wi]:
                    cliff[wi] = 0
                    add_term(out, FockIndex(idx.poly, idx.grass, tuple(cliff)), coeff * half_c * s)
                else:
                    cliff[wi] = 1
                    add_term(out, FockIndex(idx.poly, idx.grass, tuple(cliff)), coeff * s)
        return ModuleVector(out)

    def _adapted_coords(self, x: SparseVector) -> list[tuple[int, Scalar]]:
        acc: dict[int, Scalar] = {}
        for j, s in x.items():
            for t, v in self._inv_cols[j].items():
                add_term(acc, t, s * v)
        return sorted(acc.items())

    # -- module actions -------------------------------------------------------

    def apply_barred(self, x: SparseVector, v: ModuleVector) -> ModuleVector:
        """Action of x (x) theta for any x in the base algebra."""
        if not v or not x:
            return ModuleVector()
        out = ModuleVector()
        twist = ZERO
        for t, coeff in self._adapted_coords(x):
            out = out + self._apply_slot(self.slots[t], v).scale(coeff)
            kind, k = self.slots[t]
            if kind == "E":
                e = self.eta[k]
                if e:
                    twist = twist + coeff * e
        if twist:
            out = out + v.scale(twist)
        return out

    def apply_lift(self, s: SparseVector, v: ModuleVector) -> ModuleVector:
        """Lifted action of s (x) 1 via the dual-basis formula."""
        if not v or not s:
            return ModuleVector()
        out = ModuleVector()
        for j in range(self.dual.q):
            w = self.apply_barred(self.dual.lower[j], v)
            if not w:
                continue
            br = self.base.bracket(s, self.dual.upper[j])
            if not br:
                continue
            out = out + self.apply_barred(br, w)
        return out.scale(ONE / (Scalar(2) * self.c))

    def apply_total_index(self, k: int, v: ModuleVector) -> ModuleVector:
        """Action of a basis element of the extended algebra by total index."""
        if k == self.takiff.z_index:
            return v.scale(self.c)
        i, th = self.takiff.split(k)
        e = SparseVector.unit(i)
        return self.apply_barred(e, v) if th else self.apply_lift(e, v)

    def apply_total(self, x: SparseVector, v: ModuleVector) -> ModuleVector:
        one_part, theta_part, zc = self.takiff.split_vector(x)
        out = ModuleVector()
        if one_part:
            out = out + self.apply_lift(one_part, v)
        if theta_part:
            out = out + self.apply_barred(theta_part, v)
        if zc:
            out = out + v.scale(zc * self.c)
        return out


def _exponents_up_to(n: int, total: int) -> Iterable[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _exponents_up_to(n - 1, total - first):
            yield (first,) + rest


def build_fock(takiff: TakiffAlgebra, c: Scalar, eta: dict[int, Scalar] | None = None) -> FockModule:
    return FockModule(takiff, c, eta)


def verify_relations(f: FockModule, max_degree: int) -> Report:
    """Defining commutators of the barred generators as operator identities.

    [Ebar_a, Fbar_a] = (-1)^p(E_a) c, [Hbar_i, Hbar_i] = c, everything else
    commutes; checked on every basis vector up to the degree bound.
    """
    rep = Report(f"barred generator relations: {f.base.name}, c = {f.c}")
    vectors = [ModuleVector({ix: ONE}) for ix in f.basis_indices(max_degree)]
    npos = len(f.positives)
    gens: list[tuple[str, int, SparseVector, int]] = []
    for i in range(npos):
        p = f.positives[i].parity
        gens.append(("E", i, f.dual.E[i], p ^ 1))
        gens.append(("F", i, f.dual.F[i], p ^ 1))
    for i, h in enumerate(f.dual.H):
        gens.append(("H", i, h, ODD))

    def expected(xg, yg) -> Scalar:
        (kx, ix, _, px), (ky, iy, _, _) = xg, yg
        if kx == "E" and ky == "F" and ix == iy:
            return sign(f.positives[ix].parity) * f.c
        if kx == "F" and ky == "E" and ix == iy:
            # the E-F value transported by super-anticommutativity is c for
            # both root parities
            return f.c
        if kx == "H" and ky == "H" and ix == iy:
            return f.c
        return ZERO

    bad = None
    for xg in gens:
        kx, ix, x, px = xg
        for yg in gens:
            ky, iy, y, py = yg
            want = expected(xg, yg)
            for v in vectors:
                lhs = f.apply_barred(x, f.apply_barred(y, v)) - f.apply_barred(
                    y, f.apply_barred(x, v)
                ).scale(sign(px * py))
                if lhs != v.scale(want):
                    bad = f"[{kx}bar[{ix}], {ky}bar[{iy}]] mismatch on {next(iter(v.terms))}"
                    break
            if bad:
                break
        if bad:
            break
    rep.add("generator commutator table", bad is None, bad)
    return rep


def verify_lift_identities(f: FockModule, max_degree: int) -> Report:
    """The two lift identities, exactly, on every basis vector up to degree."""
    rep = Report(f"lift identities: {f.base.name}, c = {f.c}, degree <= {max_degree}")
    vectors = [ModuleVector({ix: ONE}) for ix in f.basis_indices(max_degree)]
    base = f.base
    d = base.dim

    bad = None
    count = 0
    for si in range(d):
        s = SparseVector.unit(si)
        ps = base.parity[si]
        for k in range(f.dual.q):
            u = f.dual.lower[k]
            pu_bar = (f.dual.upper_parity[k] + 1) % 2
            br = base.bracket(s, u)
            sgn = sign(ps * pu_bar)
            for v in vectors:
                lhs = f.apply_lift(s, f.apply_barred(u, v)) - f.apply_barred(
                    u, f.apply_lift(s, v)
                ).scale(sgn)
                rhs = f.apply_barred(br, v)
                count += 1
                if lhs != rhs:
                    bad = f"[phi({base.labels[si]}), phi(bar u_{k})] != phi(bar[s,u_{k}])"
                    break
            if bad:
                break
        if bad:
            break
    rep.add("commutator with barred duals", bad is None, bad)

    bad = None
    for si in range(d):
        s = SparseVector.unit(si)
        ps = base.parity[si]
        for ti in range(d):
            t = SparseVector.unit(ti)
            pt = base.parity[ti]
            br = base.bracket(s, t)
            sgn = sign(ps * pt)
            for v in vectors:
                lhs = f.apply_lift(s, f.apply_lift(t, v)) - f.apply_lift(
                    t, f.apply_lift(s, v)
                ).scale(sgn)
                rhs = f.apply_lift(br, v)
                count += 1
                if lhs != rhs:
                    bad = (
                        f"[phi({base.labels[si]}), phi({base.labels[ti]})] != phi([s,t])"
                    )
                    break
            if bad:
                break
        if bad:
            break
    rep.add("commutator of two lifts", bad is None, bad)
    rep.data["identities_checked"] = count
    return rep


def verify_highest_weight(f: FockModule) -> Report:
    """Vacuum eigen-equations of the untwisted module."""
    if f.twisted:
        raise ValueError("highest-weight checks apply to the untwisted module")
    rep = Report(f"vacuum highest weight: {f.base.name}, c = {f.c}")
    vac = f.vacuum()

    bad = None
    for pos, h in enumerate(f.rd.cartan):
        got = f.apply_lift(SparseVector.unit(h), vac)
        if got != vac.scale(f.rho.values[pos]):
            bad = f"H = {f.base.labels[h]} does not act by the Weyl-vector value"
            break
    rep.add("Cartan acts by the shifted weight", bad is None, bad)

    bad = None
    for i, r in enumerate(f.positives):
        if f.apply_lift(f.dual.E[i], vac):
            bad = f"positive root vector {i} does not kill the vacuum"
            break
    rep.add("positive root vectors kill the vacuum", bad is None, bad)

    zgot = f.apply_total_index(f.takiff.z_index, vac)
    rep.add("z acts by the level", zgot == vac.scale(f.c), None)
    return rep


def verify_whittaker_covariance(
    f: FockModule,
    chi_hat: dict[int, Scalar],
    max_degree: int = 2,
    nilp_bound: int = 8,
) -> Report:
    """(X - chi_hat(X)) kills the vacuum and is nilpotent on low degrees.

    chi_hat holds the expected eigenvalues on the unbarred even positive root
    vectors, keyed by position in the positive-root list.
    """
    offenders = [
        i
        for i in f.poly_slots
        if f.eta.get(i) and f.rd.roots[f.rd.positive[i]] not in f.rd.simple_roots()
    ]
    if offenders:
        raise ValueError(f"twist supported outside the simple odd roots: positions {offenders}")

    rep = Report(f"whittaker covariance: {f.base.name}, c = {f.c}")
    vac = f.vacuum()
    bad = None
    for i in f.grass_slots:
        X = f.dual.E[i]
        val = chi_hat.get(i, ZERO)
        if f.apply_lift(X, vac) != vac.scale(val):
            bad = f"vacuum is not an eigenvector for even positive root {i}"
            break
    rep.add("vacuum eigen-equations", bad is None, bad)

    bad = None
    for i in f.grass_slots:
        X = f.dual.E[i]
        val = chi_hat.get(i, ZERO)
        for ix in f.basis_indices(max_degree):
            y = ModuleVector({ix: ONE})
            steps = 0
            while y and steps < nilp_bound:
                y = f.apply_lift(X, y) - y.scale(val)
                steps += 1
            if y:
                bad = f"(X - value) not nilpotent within {nilp_bound} steps at {ix}"
                break
        if bad:
            break
    rep.add("local nilpotency up to the bound", bad is None, bad)
    return rep


@dataclass
class FinDimModule:
    """Finite-dimensional module of the base algebra by action matrices."""

    algebra: SuperAlgebra
    dim: int
    parity: tuple[int, ...]
    actions: list[SparseMatrix]

    def check_relations(self) -> Report:
        rep = Report("finite-dimensional module relations")
        a = self.algebra
        bad = None
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = _mat_comm(self.actions[i], self.actions[j], sign(a.parity[i] * a.parity[j]))
                want = SparseMatrix(self.dim, self.dim)
                for k, s in a.bracket_basis(i, j).items():
                    for (r, c2), v in self.actions[k].entries.items():
                        add = want.entries.get((r, c2), ZERO) + s * v
                        if add:
                            want.entries[(r, c2)] = add
                        else:
                            want.entries.pop((r, c2), None)
                if lhs.entries != want.entries:
                    bad = f"bracket relation fails at ({a.labels[i]},{a.labels[j]})"
                    break
            if bad:
                break
        rep.add("action matrices satisfy the brackets", bad is None, bad)
        return rep


def _mat_comm(x: SparseMatrix, y: SparseMatrix, koszul: Scalar) -> SparseMatrix:
    out: dict[tuple[int, int], Scalar] = {}
    for (r, k), s in x.entries.items():
        for (k2, c), t in y.entries.items():
            if k == k2:
                add_term_mat(out, r, c, s * t)
    for (r, k), s in y.entries.items():
        for (k2, c), t in x.entries.items():
            if k == k2:
                add_term_mat(out, r, c, -koszul * s * t)
    return SparseMatrix(x.rows, y.cols, out)


def add_term_mat(entries, r, c, s):
    if not s:
        return
    cur = entries.get((r, c))
    new = s if cur is None else cur + s
    if new:
        entries[(r, c)] = new
    else:
        entries.pop((r, c), None)


def natural_module(a: SuperAlgebra, m: int, n: int) -> FinDimModule:
    """Column action of gl(m|n) matrix units on the natural superspace."""
    from .superalg import gl_parity_sequence

    d = m + n
    rowp = gl_parity_sequence(m, n)
    actions = []
    for i in range(a.dim):
        r, c = divmod(i, d)
        actions.append(SparseMatrix(d, d, {(r, c): ONE}))
    return FinDimModule(a, d, tuple(rowp), actions)


class TensorModule:
    """L (x) Fock with the barred part acting on the Fock factor only."""

    def __init__(self, L: FinDimModule, f: FockModule):
        rep = L.check_relations()
        if not rep.passed:
            raise ValueError(rep.failures()[0].witness)
        self.L = L
        self.f = f
        self.takiff = f.takiff
        self.c = f.c

    def vacuum_line(self) -> list[ModuleVector]:
        vac = next(iter(self.f.vacuum().terms))
        return [ModuleVector({(l, vac): ONE}) for l in range(self.L.dim)]

    def basis_keys(self, max_degree: int):
        return [
            (l, ix)
            for l in range(self.L.dim)
            for ix in self.f.basis_indices(max_degree)
        ]

    def apply_total_index(self, k: int, v: ModuleVector) -> ModuleVector:
        t = self.takiff
        if k == t.z_index:
            return v.scale(self.c)
        i, th = t.split(k)
        x = SparseVector.unit(i)
        out: dict = {}
        px = t.total.parity[k]
        for (l, ix), coeff in v.items():
            sgn = sign(px * self.L.parity[l])
            if th:
                moved = self.f.apply_barred(x, ModuleVector({ix: ONE}))
                for ix2, s in moved.items():
                    add_term(out, (l, ix2), coeff * sgn * s)
            else:
                col = self.L.actions[i].column(l)
                for l2, s in col.items():
                    add_term(out, (l2, ix), coeff * s)
                moved = self.f.apply_lift(x, ModuleVector({ix: ONE}))
                for ix2, s in moved.items():
                    add_term(out, (l, ix2), coeff * sgn * s)
        return ModuleVector(out)

    def weight_of_key(self, key, l_weights: list[Weight]) -> Weight:
        l, ix = key
        return l_weights[l] + self.f.weight_of(ix)


def tensor_with_findim(L: FinDimModule, f: FockModule) -> TensorModule:
    return TensorModule(L, f)


def cyclicity_spot_check(
    tm: TensorModule,
    seed: int = 0,
    samples: int = 20,
    sample_degree: int = 2,
    word_length: int = 3,
) -> Report:
    """Randomized cyclicity probe: words of bounded length reach the vacuum level.

    For each random nonzero vector of bounded degree, the span of its images
    under operator words of length <= word_length must contain a nonzero
    vector supported on degree-zero module keys.
    """
    from .exactlin import EchelonSpan

    rng = random.Random(seed)
    rep = Report(f"cyclicity spot check: {tm.f.base.name}, c = {tm.c}")
    rep.seed = seed
    keys = tm.basis_keys(sample_degree)
    ops = list(range(tm.takiff.total.dim))
    pool = [Scalar(k) for k in (-2, -1, 1, 2)] + [I]

    failures = 0
    for trial in range(samples):
        n_terms = rng.randint(1, 3)
        terms = {}
        for _ in range(n_terms):
            terms[rng.choice(keys)] = rng.choice(pool)
        v = ModuleVector(terms)
        if not v:
            continue

        key_ids: dict = {}

        def to_sparse(m: ModuleVector) -> SparseVector:
            out = {}
            for k, s in m.items():
                out[key_ids.setdefault(k, len(key_ids))] = s
            return SparseVector(out)

        span = EchelonSpan()
        frontier = [v]
        span.add(to_sparse(v))
        for _ in range(word_length):
            new_frontier = []
            for w in frontier:
                for op in ops:
                    img = tm.apply_total_index(op, w)
                    if img and span.add(to_sparse(img)):
                        new_frontier.append(img)
            frontier = new_frontier
            if not frontier:
                break

        rows = [vec for _, vec, _ in span.rows]
        deg0_ids = {i for k, i in key_ids.items() if k[1].degree == 0}
        restricted = []
        for r in rows:
            restricted.append(SparseVector({i: s for i, s in r.items() if i not in deg0_ids}))
        m = SparseMatrix.from_columns(restricted, max(key_ids.values(), default=0) + 1)
        if rank(m.transpose()) >= len(rows):
            failures += 1
    rep.add(
        f"all {samples} sampled vectors reach the vacuum level",
        failures == 0,
        None if failures == 0 else f"{failures} samples failed",
    )
    return rep
