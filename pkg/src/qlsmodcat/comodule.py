"""Comodule algebras over the Hopf kernel and their structure reports.

A module-category datum picks a subgroup F, a 2-cocycle on it, a graded
subspace W spanned by eigenvectors for the subgroup characters, and the
root and link scalars xi and alpha.  The main builder produces the
algebra generated by W and the twisted group basis {e_f} with its left
coaction, as exact tables.  The rest of the module computes filtrations,
coinvariants, the Galois map, simplicity and block reports, and the
degree-one generation checker.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import lcm

from . import linalg
from ._kernel import add as padd, is_zero as pis0, mul as pmul, neg as pneg, sub as psub
from .cocycles import Cocycle2
from .cyclo import CycloNumber, context, zeta
from .errors import (
    ConfluenceFailure,
    HypothesisViolated,
    IsoCheckFailed,
    ValidationError,
)
from .groups import GroupElement, Subgroup
from .hopf import (
    CheckReport,
    FiniteAlgebra,
    FiniteHopf,
    QlsDatum,
    build_bosonization,
    pair_multiply,
    rebase_vec,
    vec_addmul,
)
from .rewrite import NormalFormEngine


class ModCatDatum:
    """Subgroup, cocycle, eigenvector subspace and scalars for one algebra.

    ``w`` maps exponent tuples of grading elements to lists of rows; each
    row gives coordinates over that isotypic component's generators and
    must be an eigenvector for every subgroup character.  ``xi`` and
    ``alpha`` are indexed against the flattened row order.
    """

    def __init__(self, datum: QlsDatum, F: Subgroup, psi: Cocycle2,
                 w=None, xi=None, alpha=None):
        datum.require_valid()
        self.datum = datum
        if not isinstance(F, Subgroup) or F.group != datum.group:
            raise ValidationError("F must be a subgroup of the base group")
        self.F = F
        if psi.carrier != F:
            raise ValidationError("the cocycle must live on F")
        self.psi = psi
        self.psi_norm = psi if psi.is_unital() else psi.normalize()

        L = datum.conductor
        for v in self.psi_norm.table.values():
            L = lcm(L, v.L)

        carriers: list[GroupElement] = []
        positions: list[list[int]] = []
        raw_rows: list[list] = []
        for ge in sorted(w or {}):
            h = datum.group.element(tuple(ge))
            idcs = [i for i, el in enumerate(datum.g) if el == h]
            if not idcs:
                raise ValidationError(
                    f"component {tuple(ge)} carries no generators")
            for row in (w or {})[ge]:
                if len(row) != len(idcs):
                    raise ValidationError(
                        "row length does not match the component dimension")
                row = [c if isinstance(c, CycloNumber)
                       else CycloNumber.from_rational(Fraction(c), 1)
                       for c in row]
                for c in row:
                    L = lcm(L, c.L)
                carriers.append(h)
                positions.append(idcs)
                raw_rows.append(row)

        m = len(carriers)
        xi = list(xi) if xi is not None else [0] * m
        if len(xi) != m:
            raise ValidationError("need one power scalar per subspace row")
        alpha = dict(alpha) if alpha else {}
        for key in alpha:
            a, b = key
            if not 0 <= a < b < m:
                raise ValidationError(f"link index {key} is not strictly upper")
        for c in list(xi) + list(alpha.values()):
            if isinstance(c, CycloNumber):
                L = lcm(L, c.L)

        self.L = L
        self.carriers = carriers
        self.positions = positions
        self.rows = [[c.rebase(L) for c in row] for row in raw_rows]
        self.xi = [self._scalar(c) for c in xi]
        self.alpha = {k: self._scalar(c) for k, c in sorted(alpha.items())
                      if not self._scalar(c).is_zero()}

        # commutation scalars and heights; ambiguity makes the subspace
        # structurally unusable, so it fails here rather than in a report
        self.Q = [[datum.q_scalar(carriers[a], carriers[b]).rebase(L)
                   for b in range(m)] for a in range(m)]
        self.heights = [self.Q[a][a].order() for a in range(m)]

        # eigencharacter values, read off the first nonzero coordinate;
        # validate() rechecks the full row
        self.chiF = []
        for a in range(m):
            vals = {}
            lead = next((p for p, c in enumerate(self.rows[a])
                         if not c.is_zero()), None)
            for f in self.F:
                if lead is None:
                    vals[f] = CycloNumber.one(L)
                else:
                    vals[f] = datum.chi[self.positions[a][lead]](f).rebase(L)
            self.chiF.append(vals)

    def _scalar(self, c) -> CycloNumber:
        if isinstance(c, CycloNumber):
            return c.rebase(self.L)
        return CycloNumber.from_rational(Fraction(c), self.L)

    @property
    def n_letters(self) -> int:
        return len(self.carriers)

    def dim(self) -> int:
        out = self.F.order
        for n in self.heights:
            out *= n
        return out

    def validate(self) -> CheckReport:
        rep = CheckReport("modcat-datum")
        d = self.datum
        for a in range(self.n_letters):
            if all(c.is_zero() for c in self.rows[a]):
                rep.fail("row-zero", a)
        # independence within each component
        for h in sorted(set(self.carriers), key=lambda e: e.exps):
            rows = [{p: c.raw() for p, c in zip(self.positions[a], self.rows[a])
                     if not c.is_zero()}
                    for a in range(self.n_letters) if self.carriers[a] == h]
            if linalg.rank(rows, self.L) != len(rows):
                rep.fail("rows-dependent", h.exps)
        # full eigenvector condition
        for a in range(self.n_letters):
            for f in self.F:
                lam = self.chiF[a][f]
                for p, c in zip(self.positions[a], self.rows[a]):
                    if (d.chi[p](f) * c) != (lam * c):
                        rep.fail("row-not-eigenvector", (a, f.exps))
                        break
        for a, x in enumerate(self.xi):
            if x.is_zero():
                continue
            hN = self.carriers[a] ** self.heights[a]
            if hN not in self.F:
                rep.fail("power-scalar-forced-zero", a)
                continue
            for f in self.F:
                if self.chiF[a][f] ** self.heights[a] != self.psi_norm.beta(f, hN):
                    rep.fail("power-scalar-forced-zero", a)
                    break
        for (a, b), c in self.alpha.items():
            hh = self.carriers[a] * self.carriers[b]
            if hh not in self.F:
                rep.fail("link-scalar-forced-zero", (a, b))
                continue
            for f in self.F:
                if self.chiF[a][f] * self.chiF[b][f] != self.psi_norm.beta(f, hh):
                    rep.fail("link-scalar-forced-zero", (a, b))
                    break
        return rep

    def require_valid(self) -> None:
        rep = self.validate()
        if not rep.ok:
            raise ValidationError(f"invalid module-category datum: {rep!r}")


def validate_modcat_datum(mcd: ModCatDatum) -> CheckReport:
    return mcd.validate()


class ComoduleRules(NormalFormEngine):
    """Rewriting rules for the subspace generators over the twisted group basis."""

    def __init__(self, mcd: ModCatDatum):
        super().__init__(mcd.n_letters, mcd.heights, mcd.datum.group, mcd.L)
        self.mcd = mcd

    def group_product(self, f, g):
        return self.mcd.psi_norm(f, g).rebase(self.L), f * g

    def move_group_past(self, f, a):
        return self.mcd.chiF[a][f]

    def swap_descending(self, b, a):
        qinv = self.mcd.Q[a][b].inv()
        frags = [(qinv, (a, b))]
        al = self.mcd.alpha.get((a, b))
        if al is not None:
            frags.append((-(qinv * al),
                          (self.mcd.carriers[a] * self.mcd.carriers[b],)))
        return frags

    def cut_power(self, a):
        x = self.mcd.xi[a]
        if x.is_zero():
            return []
        return [(x, (self.mcd.carriers[a] ** self.mcd.heights[a],))]


class ComoduleAlgebra(FiniteAlgebra):
    """Algebra tables with a left coaction by a finite Hopf algebra.

    ``coaction`` is a list over the basis; each entry maps index pairs
    (coacting basis, own basis) to pairs.
    """

    def __init__(self, labels, L, mult, unit, hopf: FiniteHopf, coaction,
                 degree=None, mcd=None):
        super().__init__(labels, L, mult, unit)
        if hopf.L != L:
            raise ValidationError("coacting Hopf algebra at a different conductor")
        self.hopf = hopf
        self.coaction = coaction
        self.degree = list(degree) if degree is not None else None
        self.mcd = mcd

    def coact(self, vec: dict) -> dict:
        red = self.ctx.reduction
        out: dict = {}
        for i, c in vec.items():
            vec_addmul(out, self.coaction[i], c, red)
        return out

    def verify(self) -> CheckReport:
        rep = self.verify_algebra()
        rep.subject = "comodule-algebra"
        U = self.hopf
        red = self.ctx.reduction
        n = self.dim

        unit_target = {}
        for u0, c0 in U.unit.items():
            for i, c in self.unit.items():
                unit_target[(u0, i)] = pmul(c0, c, red)
        if self.coact(self.unit) != unit_target:
            rep.fail("coaction-unital", "1")

        for i in range(n):
            lam = self.coaction[i]
            left: dict = {}
            right: dict = {}
            for (u, a), c in lam.items():
                for (p, q), c2 in U.comult[u].items():
                    key = (p, q, a)
                    cur = left.get(key)
                    cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                    if pis0(cur):
                        left.pop(key, None)
                    else:
                        left[key] = cur
                for (u2, a2), c2 in self.coaction[a].items():
                    key = (u, u2, a2)
                    cur = right.get(key)
                    cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                    if pis0(cur):
                        right.pop(key, None)
                    else:
                        right[key] = cur
            if left != right:
                rep.fail("coaction-coassociative", self.labels[i])

            acc: dict = {}
            for (u, a), c in lam.items():
                vec_addmul(acc, {a: linalg.pone(self.L)}, pmul(c, U.counit[u], red), red)
            if acc != self.basis(i):
                rep.fail("coaction-counital", self.labels[i])

        for i in range(n):
            for j in range(n):
                prod = self.mult.get((i, j), {})
                want = pair_multiply(U, self, self.coaction[i], self.coaction[j])
                if self.coact(prod) != want:
                    rep.fail("coaction-multiplicative", (self.labels[i], self.labels[j]))
        return rep


def _coaction_tables(mcd: ModCatDatum, alg: FiniteAlgebra, U: FiniteHopf):
    group = mcd.datum.group
    theta = mcd.datum.theta
    m = mcd.n_letters
    one = linalg.pone(mcd.L)
    ident = group.identity()
    zero_v = (0,) * theta
    zero_w = (0,) * m
    unit_a = alg.index[(zero_w, ident.exps)]

    lam_letter = []
    for a in range(m):
        ea = tuple(1 if t == a else 0 for t in range(m))
        vec2 = {}
        for p, c in zip(mcd.positions[a], mcd.rows[a]):
            if c.is_zero():
                continue
            ep = tuple(1 if t == p else 0 for t in range(theta))
            vec2[(U.index[(ep, ident.exps)], unit_a)] = c.raw()
        vec2[(U.index[(zero_v, mcd.carriers[a].exps)],
              alg.index[(ea, ident.exps)])] = one
        lam_letter.append(vec2)

    lam_pow = []
    u1a1 = {(U.index[(zero_v, ident.exps)], unit_a): one}
    for a in range(m):
        powers = [u1a1]
        for _ in range(1, mcd.heights[a]):
            powers.append(pair_multiply(U, alg, powers[-1], lam_letter[a]))
        lam_pow.append(powers)

    coaction = []
    for r, fe in alg.labels:
        t = u1a1
        for a in range(m):
            if r[a]:
                t = pair_multiply(U, alg, t, lam_pow[a][r[a]])
        gidx = U.index[(zero_v, fe)]
        t = pair_multiply(U, alg, t,
                          {(gidx, alg.index[(zero_w, fe)]): one})
        coaction.append(t)
    return coaction


def _assemble(mcd: ModCatDatum, mult: dict, labels, degree) -> ComoduleAlgebra:
    ident = mcd.datum.group.identity()
    zero_w = (0,) * mcd.n_letters
    unit = {labels.index((zero_w, ident.exps)): linalg.pone(mcd.L)}
    alg = FiniteAlgebra(labels, mcd.L, mult, unit)
    U = build_bosonization(mcd.datum).rebased(mcd.L)
    coaction = _coaction_tables(mcd, alg, U)
    A = ComoduleAlgebra(labels, mcd.L, mult, unit, U, coaction,
                        degree=degree, mcd=mcd)
    rep = A.verify()
    if not rep.ok:
        raise ConfluenceFailure(
            f"built tables fail verification: {rep.checks_failed()}")
    return A


def _modcat_labels(mcd: ModCatDatum):
    rs = sorted(itertools.product(*[range(n) for n in mcd.heights]),
                key=lambda r: (sum(r), r))
    fs = sorted(mcd.F, key=lambda e: e.exps)
    labels = [(r, f.exps) for r in rs for f in fs]
    degree = [sum(r) for r, _ in labels]
    return labels, degree


def build_A(mcd: ModCatDatum) -> ComoduleAlgebra:
    """The comodule algebra generated by the subspace rows and the e_f."""
    mcd.require_valid()
    labels, degree = _modcat_labels(mcd)
    idx = {lab: i for i, lab in enumerate(labels)}
    rules = ComoduleRules(mcd)
    group = mcd.datum.group
    mult: dict = {}
    for i1, (r, fe) in enumerate(labels):
        w1 = rules.word_of(r, group.element(fe))
        for i2, (s, ge) in enumerate(labels):
            w2 = rules.word_of(s, group.element(ge))
            nf = rules.normalize(w1 + w2)
            cell = {idx[(t, g.exps)]: c.raw() for (t, g), c in nf.items()}
            if cell:
                mult[(i1, i2)] = cell
    return _assemble(mcd, mult, labels, degree)


def build_K(mcd: ModCatDatum) -> ComoduleAlgebra:
    """The graded model: same generators with all xi and alpha set to zero.

    Tables come from a closed form rather than the rewriting engine, so
    this is an independent path used to cross-check build_A.
    """
    mcd.require_valid()
    labels, degree = _modcat_labels(mcd)
    idx = {lab: i for i, lab in enumerate(labels)}
    m = mcd.n_letters
    heights = mcd.heights
    group = mcd.datum.group
    L = mcd.L
    qexp = [[mcd.Q[a][b] for b in range(m)] for a in range(m)]

    mult: dict = {}
    for i1, (r, fe) in enumerate(labels):
        f = group.element(fe)
        chif = [mcd.chiF[a][f] for a in range(m)]
        for i2, (s, ge) in enumerate(labels):
            if any(r[a] + s[a] >= heights[a] for a in range(m)):
                continue
            g = group.element(ge)
            coef = mcd.psi_norm(f, g).rebase(L)
            for a in range(m):
                if s[a]:
                    coef = coef * chif[a] ** s[a]
            for b in range(m):
                if not s[b]:
                    continue
                for a in range(b + 1, m):
                    if r[a]:
                        coef = coef * qexp[a][b] ** (r[a] * s[b])
            t = tuple(r[a] + s[a] for a in range(m))
            mult[(i1, i2)] = {idx[(t, (f * g).exps)]: coef.raw()}
    return _assemble(mcd, mult, labels, degree)


def regular_coaction(H: FiniteHopf) -> ComoduleAlgebra:
    """H as a left comodule algebra over itself via its coproduct."""
    coaction = [dict(cell) for cell in H.comult]
    return ComoduleAlgebra(H.labels, H.L, H.mult, dict(H.unit), H, coaction,
                           degree=H.degree)


def trivial_coaction(U: FiniteHopf, alg: FiniteAlgebra = None) -> ComoduleAlgebra:
    """alg with the coaction a -> 1 tensor a; the negative control."""
    if alg is None:
        alg = U
    U = U.rebased(alg.L)
    coaction = []
    for i in range(alg.dim):
        vec2 = {}
        for u0, c0 in U.unit.items():
            vec2[(u0, i)] = c0
        coaction.append(vec2)
    return ComoduleAlgebra(alg.labels, alg.L, alg.mult, alg.unit, U, coaction)


def loewy_filtration(A: ComoduleAlgebra) -> list:
    """Subspaces A_n = preimage of the degree-n part of the coaction."""
    U = A.hopf
    if U.degree is None:
        raise ValidationError("coacting Hopf algebra carries no degree data")
    nA = A.dim
    spaces = []
    n = 0
    while True:
        rows = []
        for i in range(nA):
            rows.append({u * nA + a: c for (u, a), c in A.coaction[i].items()
                         if U.degree[u] > n})
        kern = linalg.left_kernel(rows, U.dim * nA, A.L)
        spaces.append(linalg.span(kern, A.L))
        if spaces[-1].dim == nA:
            return spaces
        n += 1


def verify_loewy(A: ComoduleAlgebra, spaces=None) -> CheckReport:
    """Layer dimensions, monomial membership and product compatibility."""
    rep = CheckReport("loewy")
    if A.degree is None:
        rep.fail("no-degree-data", None)
        return rep
    if spaces is None:
        spaces = loewy_filtration(A)
    one = linalg.pone(A.L)
    top = len(spaces) - 1
    for n, sp in enumerate(spaces):
        want = sum(1 for d in A.degree if d <= n)
        if sp.dim != want:
            rep.fail("layer-dimension", (n, sp.dim, want))
        for i, d in enumerate(A.degree):
            if d <= n and not sp.contains({i: one}):
                rep.fail("monomial-missing", (n, A.labels[i]))
                break
    for i in range(top + 1):
        for j in range(top + 1):
            t = spaces[min(i + j, top)]
            ok = True
            for u in spaces[i].rows:
                for v in spaces[j].rows:
                    if not t.contains(A.multiply(u, v)):
                        rep.fail("product-degree", (i, j))
                        ok = False
                        break
                if not ok:
                    break
    return rep


def associated_graded(A: ComoduleAlgebra) -> FiniteAlgebra:
    """Layer-by-layer algebra of the filtration, checked against the model.

    The identification sends the class of each monomial basis element to
    the same label in the graded model, so the check is a direct table
    comparison; a mismatch raises IsoCheckFailed.
    """
    rep = verify_loewy(A)
    if not rep.ok:
        raise IsoCheckFailed(f"filtration does not match the monomial layers: {rep!r}")
    mult = {}
    for (i, j), cell in A.mult.items():
        d = A.degree[i] + A.degree[j]
        kept = {k: c for k, c in cell.items() if A.degree[k] == d}
        if kept:
            mult[(i, j)] = kept
    gr = FiniteAlgebra(A.labels, A.L, mult, dict(A.unit))
    if A.mcd is not None:
        K = build_K(A.mcd)
        if not (gr.labels == K.labels and gr.mult == K.mult
                and gr.unit == K.unit):
            raise IsoCheckFailed("graded tables differ from the graded model")
    return gr


def coinvariants(A: ComoduleAlgebra):
    """Subspace of a with coaction 1 tensor a, by an exact kernel solve."""
    U = A.hopf
    nA = A.dim
    rows = []
    for i in range(nA):
        row = {u * nA + a: c for (u, a), c in A.coaction[i].items()}
        for u0, c0 in U.unit.items():
            key = u0 * nA + i
            cur = row.get(key)
            cur = pneg(c0) if cur is None else psub(cur, c0)
            if pis0(cur):
                row.pop(key, None)
            else:
                row[key] = cur
        rows.append(row)
    kern = linalg.left_kernel(rows, U.dim * nA, A.L)
    return linalg.span(kern, A.L)


class GaloisReport:
    """Rank data for the map a tensor b -> a_(-1) tensor a_(0) b."""

    def __init__(self, rows, rank, source_dim, target_dim):
        self.rows = rows
        self.rank = rank
        self.source_dim = source_dim
        self.target_dim = target_dim

    @property
    def bijective(self) -> bool:
        return self.rank == self.source_dim == self.target_dim

    def __repr__(self):
        return (f"GaloisReport(rank={self.rank}, source={self.source_dim}, "
                f"target={self.target_dim}, bijective={self.bijective})")


def galois_map(A: ComoduleAlgebra) -> GaloisReport:
    U = A.hopf
    nA = A.dim
    red = A.ctx.reduction
    rows = []
    for i in range(nA):
        lam = A.coaction[i]
        for j in range(nA):
            flat: dict = {}
            for (u, a), c in lam.items():
                cell = A.mult.get((a, j))
                if not cell:
                    continue
                for k, c2 in cell.items():
                    key = u * nA + k
                    cur = flat.get(key)
                    cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                    if pis0(cur):
                        flat.pop(key, None)
                    else:
                        flat[key] = cur
            rows.append(flat)
    rank = linalg.rank(rows, A.L)
    return GaloisReport(rows, rank, nA * nA, U.dim * nA)


class GenerationReport:
    """Degree-by-degree comparison with the span of the degree-one part."""

    def __init__(self, levels, closure_ok):
        self.levels = levels
        self.closure_ok = closure_ok

    @property
    def ok(self) -> bool:
        return all(self.levels) and self.closure_ok

    def __repr__(self):
        return f"GenerationReport(levels={self.levels}, closure_ok={self.closure_ok})"


def check_degree_one_generation(datum: QlsDatum, components,
                                U: FiniteHopf = None) -> GenerationReport:
    """Verify the degree-one generation hypotheses, then the conclusion.

    ``components`` lists bases per degree, as sparse vectors over the
    basis of the ambient graded Hopf algebra.  Hypothesis failures raise
    HypothesisViolated; the returned report compares each degree with the
    span generated by the degree-one part.
    """
    if U is None:
        U = build_bosonization(datum)
    L = U.L
    ident = datum.group.identity().exps

    for n, vecs in enumerate(components):
        for v in vecs:
            for i in v:
                r, ge = U.labels[i]
                if sum(r) != n or ge != ident:
                    raise HypothesisViolated(
                        "component-degree",
                        f"degree {n} vector meets basis label {U.labels[i]}")
    k0 = linalg.span([dict(v) for v in components[0]], L) if components else None
    if k0 is None or k0.dim != 1 or not k0.contains(dict(U.unit)):
        raise HypothesisViolated("component-degree",
                                 "degree 0 part must be spanned by 1")

    W = [dict(v) for v in components[1]] if len(components) > 1 else []
    wspan = linalg.span(W, L)
    for g in sorted(set(datum.g), key=lambda e: e.exps):
        for v in W:
            proj = {}
            for i, c in v.items():
                r, _ = U.labels[i]
                if datum.g[r.index(1)] == g:
                    proj[i] = c
            if proj and not wspan.contains(proj):
                raise HypothesisViolated(
                    "degree-one-not-subcomodule",
                    f"projection to the {g.exps} component leaves the span")

    nU = U.dim
    by_deg = {}
    for u in range(nU):
        by_deg.setdefault(U.degree[u], []).append(u)
    for n, vecs in enumerate(components):
        target = linalg.Subspace(L)
        for i in range(n + 1):
            for u in by_deg.get(i, []):
                for wvec in components[n - i]:
                    target.insert({u * nU + k: c for k, c in wvec.items()})
        for v in vecs:
            dv = U.comultiply(dict(v))
            flat = {j * nU + k: c for (j, k), c in dv.items()}
            if not target.contains(flat):
                raise HypothesisViolated(
                    "coproduct-compatibility",
                    f"coproduct of a degree {n} vector leaves the allowed span")

    levels = []
    prev = linalg.span([dict(U.unit)], L)
    levels.append(prev.key() == linalg.span(
        [dict(v) for v in components[0]], L).key())
    for n in range(1, len(components)):
        gen = linalg.Subspace(L)
        for x in prev.rows:
            for wvec in W:
                gen.insert(U.multiply(x, wvec))
        levels.append(gen.key() == linalg.span(
            [dict(v) for v in components[n]], L).key())
        prev = gen
    nxt = linalg.Subspace(L)
    for x in prev.rows:
        for wvec in W:
            nxt.insert(U.multiply(x, wvec))
    return GenerationReport(levels, nxt.dim == 0)


class SimplicityReport:
    """Outcome of the operator span and invariant subspace search."""

    def __init__(self, verdict, operator_dim, full_dim, witness=None, hint=""):
        self.verdict = verdict
        self.operator_dim = operator_dim
        self.full_dim = full_dim
        self.witness = witness
        self.hint = hint

    @property
    def split_simple(self) -> bool:
        return self.verdict == "split-simple"

    def __repr__(self):
        return (f"SimplicityReport({self.verdict}, "
                f"operators {self.operator_dim}/{self.full_dim})")


def _operator_generators(A):
    nA = A.dim
    gens = []
    for k in range(nA):
        gens.append([A.mult.get((i, k), {}) for i in range(nA)])
    coaction = getattr(A, "coaction", None)
    if coaction is None:
        return gens
    support = sorted({u for lam in coaction for (u, _) in lam})
    for u in support:
        rows = []
        for i in range(nA):
            rows.append({a: c for (u2, a), c in coaction[i].items() if u2 == u})
        gens.append(rows)
    return gens


def _flat_op(rows, nA):
    out = {}
    for i, row in enumerate(rows):
        for j, c in row.items():
            out[i * nA + j] = c
    return out


def _sub_rows(r1, r2):
    out = []
    for a, b in zip(r1, r2):
        row = dict(a)
        for j, c in b.items():
            cur = row.get(j)
            cur = pneg(c) if cur is None else psub(cur, c)
            if pis0(cur):
                row.pop(j, None)
            else:
                row[j] = cur
        out.append(row)
    return out


def _operator_span(A: ComoduleAlgebra):
    nA = A.dim
    gens = _operator_generators(A)
    sp = linalg.Subspace(A.L)
    queue = []
    ident = [A.basis(i) for i in range(nA)]
    for rows in [ident] + gens:
        if sp.insert(_flat_op(rows, nA)):
            queue.append(rows)
    while queue and sp.dim < nA * nA:
        cur = queue.pop()
        for g in gens:
            prod = [linalg.combine(r, g, A.L) for r in cur]
            if sp.insert(_flat_op(prod, nA)):
                queue.append(prod)
    return sp, gens


def check_simplicity(A: ComoduleAlgebra, seed=0, tries=40) -> SimplicityReport:
    """Span the right multiplications and coaction slices, then decide.

    A full operator span certifies that the only invariant subspaces are
    trivial.  Otherwise kernels of sampled operators are closed up under
    the generators in search of a proper invariant subspace.
    """
    nA = A.dim
    full = nA * nA
    sp, gens = _operator_span(A)
    if sp.dim == full:
        return SimplicityReport("split-simple", sp.dim, full)

    rng = random.Random(seed)
    red = A.ctx.reduction

    def candidates():
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                yield _sub_rows(gens[i], gens[j])
        for _ in range(tries):
            rows = [dict() for _ in range(nA)]
            for g in gens:
                c = rng.randint(-2, 2)
                if c == 0:
                    continue
                pair = CycloNumber.from_rational(c, A.L).raw()
                for i in range(nA):
                    vec_addmul(rows[i], g[i], pair, red)
            yield rows

    for M in candidates():
        kern = linalg.left_kernel(M, nA, A.L)
        if not 0 < len(kern) < nA:
            continue
        sub = linalg.span([dict(v) for v in kern], A.L)
        changed = True
        while changed and sub.dim < nA:
            changed = False
            for v in list(sub.rows):
                for g in gens:
                    if sub.insert(linalg.combine(v, g, A.L)):
                        changed = True
        if 0 < sub.dim < nA:
            return SimplicityReport("reducible", sp.dim, full, witness=sub)
    return SimplicityReport(
        "undecided", sp.dim, full,
        hint="operator span is proper but no invariant subspace was found; "
             "retry at a larger conductor")


class SimpleModulesReport:
    """Radical dimension and matrix block data of an algebra's semisimple part."""

    def __init__(self, radical_dim, blocks, advice):
        self.radical_dim = radical_dim
        self.blocks = blocks
        self.advice = advice

    @property
    def all_split(self) -> bool:
        return all(b["split"] for b in self.blocks)

    @property
    def block_data(self):
        return tuple(sorted(b["block_dim"] for b in self.blocks))

    def module_dims(self):
        if not self.all_split:
            raise ValidationError("module dimensions need every block split")
        return sorted(b["module_dim"] for b in self.blocks)

    def __repr__(self):
        return (f"SimpleModulesReport(radical={self.radical_dim}, "
                f"blocks={self.blocks}, advice={self.advice})")


def _trace_radical(B: FiniteAlgebra):
    nB = B.dim
    red = B.ctx.reduction
    zero = linalg.pzero(B.L)
    tr = []
    for k in range(nB):
        acc = zero
        for j in range(nB):
            c = B.mult.get((k, j), {}).get(j)
            if c is not None:
                acc = padd(acc, c)
        tr.append(acc)
    rows = []
    for i in range(nB):
        row = {}
        for j in range(nB):
            cell = B.mult.get((i, j))
            if not cell:
                continue
            acc = zero
            for k, c in cell.items():
                acc = padd(acc, pmul(c, tr[k], red))
            if not pis0(acc):
                row[j] = acc
        rows.append(row)
    kern = linalg.left_kernel(rows, nB, B.L)
    return linalg.span(kern, B.L)


def _quotient_algebra(B: FiniteAlgebra, J):
    keep = [i for i in range(B.dim) if i not in set(J.pivots)]
    pos = {i: t for t, i in enumerate(keep)}

    def push(vec):
        return {pos[i]: c for i, c in J.reduce(vec).items()}

    mult = {}
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            cell = push(B.mult.get((i, j), {}))
            if cell:
                mult[(a, b)] = cell
    return FiniteAlgebra([B.labels[i] for i in keep], B.L, mult, push(dict(B.unit)))


def _center(B: FiniteAlgebra):
    nB = B.dim
    rows = []
    for k in range(nB):
        row = {}
        for b in range(nB):
            diff = dict(B.mult.get((k, b), {}))
            for j, c in B.mult.get((b, k), {}).items():
                cur = diff.get(j)
                cur = pneg(c) if cur is None else psub(cur, c)
                if pis0(cur):
                    diff.pop(j, None)
                else:
                    diff[j] = cur
            for j, c in diff.items():
                row[b * nB + j] = c
        rows.append(row)
    kern = linalg.left_kernel(rows, nB * nB, B.L)
    return linalg.span(kern, B.L)


def _field_domain(L: int):
    from sympy import I, QQ, exp, pi

    if context(L).degree == 1:
        return QQ, None
    z = exp(2 * pi * I / L)
    dom = QQ.algebraic_field(z)
    gen_pows = [dom.one]
    gen = dom.from_sympy(z)
    for _ in range(context(L).degree - 1):
        gen_pows.append(gen_pows[-1] * gen)
    return dom, gen_pows


def _to_dom(x: CycloNumber, dom, gen_pows, L: int):
    from sympy import QQ

    nums, den = x.raw()
    if gen_pows is None:
        return QQ(int(nums[0]), int(den))
    val = dom.zero
    for k, num in enumerate(nums):
        if num:
            val += dom.convert(QQ(int(num), int(den))) * gen_pows[k]
    return val


def _from_dom(val, gen_pows, L: int) -> CycloNumber:
    if gen_pows is None:
        return CycloNumber.from_rational(
            Fraction(int(val.numerator), int(val.denominator)), L)
    out = CycloNumber.zero(L)
    for k, q in enumerate(reversed(val.to_list())):
        if q:
            out = out + CycloNumber.from_rational(
                Fraction(int(q.numerator), int(q.denominator)), L) * zeta(L, k)
    return out


def _min_poly(B: FiniteAlgebra, y: dict, unit: dict):
    """Monic minimal polynomial of y over the corner with the given unit.

    Coefficients come back highest degree first, as CycloNumbers.
    """
    sp = linalg.Subspace(B.L)
    pows = [dict(unit)]
    sp.insert(dict(unit))
    cur = dict(unit)
    while True:
        cur = B.multiply(cur, y)
        if sp.contains(cur):
            sol = linalg.solve(pows, cur, B.dim, B.L) or {}
            m = len(pows)
            coeffs = [CycloNumber.one(B.L)]
            for k in range(m - 1, -1, -1):
                c = sol.get(k)
                coeffs.append(CycloNumber.zero(B.L) if c is None
                              else -linalg.to_cyclo(c, B.L))
            return coeffs
        sp.insert(dict(cur))
        pows.append(dict(cur))


def _eval_poly(B: FiniteAlgebra, coeffs, y: dict, unit: dict) -> dict:
    red = B.ctx.reduction
    acc: dict = {}
    for c in coeffs:
        acc = B.multiply(acc, y)
        if not c.is_zero():
            vec_addmul(acc, unit, c.raw(), red)
    return acc


def _poly_factors(coeffs, L: int):
    """Irreducible factors with multiplicity, each again highest first."""
    from sympy import Poly, symbols

    dom, gen_pows = _field_domain(L)
    t = symbols("t")
    p = Poly([_to_dom(c, dom, gen_pows, L) for c in coeffs], t, domain=dom)
    out = []
    for f, m in p.factor_list()[1]:
        fc = f.monic()
        out.append(([_from_dom(c, gen_pows, L) for c in fc.rep.to_list()], m))
    return out


def _cofactor_idempotent(coeffs, factor, L: int):
    """Coefficients of w with w = 1 mod factor and w = 0 mod cofactor."""
    from sympy import Poly, symbols

    dom, gen_pows = _field_domain(L)
    t = symbols("t")
    p = Poly([_to_dom(c, dom, gen_pows, L) for c in coeffs], t, domain=dom)
    f = Poly([_to_dom(c, dom, gen_pows, L) for c in factor], t, domain=dom)
    u = p.quo(f)
    s, v, h = f.gcdex(u)
    if not h.is_one:
        raise ArithmeticError("factor is not coprime to its cofactor")
    w = (v * u) % p
    return [_from_dom(c, gen_pows, L) for c in w.rep.to_list()]


def _split_idempotent(B: FiniteAlgebra, e: dict, z: dict):
    """Refine the idempotent e along the central element z, or return None."""
    x = B.multiply(z, e)
    coeffs = _min_poly(B, x, e)
    if len(coeffs) <= 2:
        return None
    factors = _poly_factors(coeffs, B.L)
    if len(factors) == 1:
        return None
    parts = []
    for fc, _ in factors:
        w = _cofactor_idempotent(coeffs, fc, B.L)
        parts.append(_eval_poly(B, w, x, e))
    return parts


def _corner_dims(B: FiniteAlgebra, e: dict, zrows):
    block = linalg.Subspace(B.L)
    for i in range(B.dim):
        block.insert(B.multiply(B.basis(i), e))
    zspan = linalg.Subspace(B.L)
    for zr in zrows:
        zspan.insert(B.multiply(dict(zr), e))
    return block, zspan.dim


def simple_modules(A: FiniteAlgebra, seed=0, tries=24) -> SimpleModulesReport:
    """Radical, central block decomposition and module dimensions.

    Works over the exact cyclotomic field at the algebra's conductor.
    Blocks whose center stays bigger than the ground field, or whose
    minimal left ideal resists certification, are reported unsplit with
    advice instead of guessed.
    """
    J = _trace_radical(A)
    B = _quotient_algebra(A, J) if J.dim else A
    Z = _center(B)
    rng = random.Random(seed)
    red = B.ctx.reduction

    ids = [dict(B.unit)]
    queue = [dict(z) for z in Z.rows]
    attempts = tries
    while True:
        while queue:
            z = queue.pop(0)
            nxt = []
            for e in ids:
                parts = _split_idempotent(B, e, z)
                nxt.extend(parts if parts is not None else [e])
            ids = nxt
        if attempts == 0 or all(
                _corner_dims(B, e, Z.rows)[1] == 1 for e in ids):
            break
        attempts -= 1
        mix: dict = {}
        for zr in Z.rows:
            c = rng.randint(-3, 3)
            if c:
                vec_addmul(mix, dict(zr), CycloNumber.from_rational(c, B.L).raw(), red)
        if mix:
            queue.append(mix)

    advice = []
    blocks = []
    for e in ids:
        block, center_dim = _corner_dims(B, e, Z.rows)
        entry = {"block_dim": block.dim, "center_dim": center_dim,
                 "split": False, "module_dim": None}
        if center_dim > 1:
            advice.append(
                f"a block of dimension {block.dim} has center of dimension "
                f"{center_dim} over the ground field; enlarge the conductor")
            blocks.append(entry)
            continue
        mdim = _module_dim(B, e, block, rng, tries)
        if mdim is None:
            advice.append(
                f"no minimal left ideal of a block of dimension {block.dim} "
                f"was certified; it may be a matrix algebra over a division "
                f"algebra, enlarge the conductor")
        else:
            entry["split"] = True
            entry["module_dim"] = mdim
        blocks.append(entry)
    blocks.sort(key=lambda b: (b["block_dim"], b["module_dim"] or 0))
    return SimpleModulesReport(J.dim, blocks, advice)


def _ideal_span(B: FiniteAlgebra, block, z: dict):
    out = linalg.Subspace(B.L)
    for row in block.rows:
        out.insert(B.multiply(dict(row), z))
    return out


def _module_dim(B: FiniteAlgebra, e: dict, block, rng, tries):
    """Dimension of a certified minimal left ideal of the corner, or None."""
    d = block.dim
    root = _exact_sqrt(d)
    if root is not None and root * root == d:
        if d == 1:
            return 1
        want = root
    else:
        return None

    def candidates():
        for row in block.rows:
            yield dict(row)
        red = B.ctx.reduction
        for _ in range(tries):
            mix: dict = {}
            for row in block.rows:
                c = rng.randint(-2, 2)
                if c:
                    vec_addmul(mix, dict(row),
                               CycloNumber.from_rational(c, B.L).raw(), red)
            if mix:
                yield mix

    for y in candidates():
        coeffs = _min_poly(B, y, e)
        for fc, _ in _poly_factors(coeffs, B.L):
            quo = _poly_quo(coeffs, fc, B.L)
            zdiv = _eval_poly(B, quo, y, e)
            if not zdiv:
                continue
            ideal = _ideal_span(B, block, zdiv)
            if ideal.dim == want:
                return want
            if ideal.dim < d:
                for row in list(ideal.rows)[:4]:
                    refined = _ideal_span(B, block, dict(row))
                    if refined.dim == want:
                        return want
    return None


def _poly_quo(coeffs, factor, L: int):
    from sympy import Poly, symbols

    dom, gen_pows = _field_domain(L)
    t = symbols("t")
    p = Poly([_to_dom(c, dom, gen_pows, L) for c in coeffs], t, domain=dom)
    f = Poly([_to_dom(c, dom, gen_pows, L) for c in factor], t, domain=dom)
    return [_from_dom(c, gen_pows, L) for c in p.quo(f).rep.to_list()]


def _exact_sqrt(n: int):
    r = int(n ** 0.5)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand * cand == n:
            return cand
    return None
