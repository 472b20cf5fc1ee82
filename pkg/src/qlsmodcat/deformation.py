"""Liftings of the graded Hopf algebras and cocycle deformation machinery.

A lifting keeps the group part and the generator coproducts but bends the
two relation families: generator powers may land on 1 minus a group
element (root scalars mu) and pairs of generators may link through
1 minus their product (link scalars lambda).  The second half of the
module deforms multiplication by a Hopf 2-cocycle and moves comodule
algebras along the resulting bi-Galois object by a cotensor product.
"""

from __future__ import annotations

import itertools
from math import lcm

from . import linalg
from ._kernel import add as padd, is_zero as pis0, mul as pmul, sub as psub
from .cocycles import Cocycle2
from .comodule import (
    ComoduleAlgebra,
    ModCatDatum,
    build_A,
    check_simplicity,
    coinvariants,
    simple_modules,
)
from .cyclo import CycloNumber, context, zeta
from .errors import (
    CocycleInvalid,
    ConfluenceFailure,
    DimensionMismatch,
    IsoCheckFailed,
    NotClosed,
    ValidationError,
)
from .groups import Subgroup
from .hopf import (
    CheckReport,
    FiniteAlgebra,
    FiniteHopf,
    QlsDatum,
    pair_multiply,
    tensor_multiply,
    vec_addmul,
)
from .rewrite import NormalFormEngine


class LiftingDatum:
    """A quantum linear space datum together with root and link scalars."""

    def __init__(self, datum: QlsDatum, mu=None, lam=None):
        self.datum = datum
        theta = datum.theta
        mu = list(mu) if mu is not None else [0] * theta
        if len(mu) != theta:
            raise ValidationError("need one root scalar per generator")
        lam = dict(lam) if lam is not None else {}
        for (i, j) in lam:
            if not 0 <= i < j < theta:
                raise ValidationError(f"link scalar index {(i, j)} not strictly upper")
        L = datum.conductor
        for c in list(mu) + list(lam.values()):
            if isinstance(c, CycloNumber):
                L = lcm(L, c.L)
        self.L = L
        self.mu = [self._scalar(c) for c in mu]
        self.lam = {(i, j): self._scalar(c) for (i, j), c in sorted(lam.items())
                    if not self._scalar(c).is_zero()}

    def _scalar(self, c) -> CycloNumber:
        if isinstance(c, CycloNumber):
            return c.rebase(self.L)
        return CycloNumber.from_rational(c, self.L)

    def validate(self) -> CheckReport:
        rep = self.datum.validate()
        rep.subject = "lifting"
        d = self.datum
        for i, m in enumerate(self.mu):
            if m.is_zero():
                continue
            if (d.g[i] ** d.N[i]).is_identity():
                rep.fail("root-scalar-forced-zero", i)
            if not (d.chi[i] ** d.N[i]).is_trivial():
                rep.fail("root-scalar-forced-zero", i)
        for (i, j), c in self.lam.items():
            if (d.g[i] * d.g[j]).is_identity():
                rep.fail("link-scalar-forced-zero", (i, j))
            if not (d.chi[i] * d.chi[j]).is_trivial():
                rep.fail("link-scalar-forced-zero", (i, j))
        return rep

    def require_valid(self) -> None:
        rep = self.validate()
        if not rep.ok:
            raise ValidationError(f"invalid lifting datum: {rep!r}")


def validate_lifting_datum(ld: LiftingDatum) -> CheckReport:
    return ld.validate()


class LiftingRules(NormalFormEngine):
    """Rewriting rules for the lifted relations."""

    def __init__(self, ld: LiftingDatum):
        d = ld.datum
        super().__init__(d.theta, d.N, d.group, ld.L)
        self.d = d
        self.mu = ld.mu
        self.lam = ld.lam

    def group_product(self, g, h):
        return self.one, g * h

    def move_group_past(self, g, a):
        return self.d.chi[a](g).rebase(self.L)

    def swap_descending(self, b, a):
        coef = self.d.chi[a](self.d.g[b]).rebase(self.L)
        frags = [(coef, (a, b))]
        lam = self.lam.get((a, b))
        if lam is not None:
            frags.append((-(coef * lam), ()))
            frags.append((coef * lam, (self.d.g[a] * self.d.g[b],)))
        return frags

    def cut_power(self, a):
        m = self.mu[a]
        if m.is_zero():
            return []
        return [(m, ()), (-m, ((self.d.g[a] ** self.d.N[a]),))]


def build_lifting(ld: LiftingDatum) -> FiniteHopf:
    """Hopf algebra tables for the lifting determined by (mu, lambda)."""
    ld.require_valid()
    d = ld.datum
    group, theta, N = d.group, d.theta, d.N
    L = ld.L
    one = linalg.pone(L)
    rules = LiftingRules(ld)

    rs = sorted(itertools.product(*[range(n) for n in N]),
                key=lambda r: (sum(r), r))
    gs = sorted(group, key=lambda e: e.exps)
    labels = [(r, g.exps) for r in rs for g in gs]
    idx = {lab: i for i, lab in enumerate(labels)}
    degree = [sum(r) for r, _ in labels]
    zero_r = (0,) * theta
    ident = group.identity()

    mult: dict = {}
    for i1, (r, ge) in enumerate(labels):
        w1 = rules.word_of(r, group.element(ge))
        for i2, (s, he) in enumerate(labels):
            w2 = rules.word_of(s, group.element(he))
            nf = rules.normalize(w1 + w2)
            cell = {idx[(t, g.exps)]: c.raw() for (t, g), c in nf.items()}
            if cell:
                mult[(i1, i2)] = cell

    unit = {idx[(zero_r, ident.exps)]: one}
    alg = FiniteAlgebra(labels, L, mult, unit)

    unit_idx = idx[(zero_r, ident.exps)]
    dx = []
    for i in range(theta):
        ei = tuple(1 if a == i else 0 for a in range(theta))
        dx.append({(idx[(ei, ident.exps)], unit_idx): one,
                   (idx[(zero_r, d.g[i].exps)], idx[(ei, ident.exps)]): one})
    dpow = []
    for i in range(theta):
        powers = [{(unit_idx, unit_idx): one}]
        for _ in range(1, N[i]):
            powers.append(tensor_multiply(alg, powers[-1], dx[i]))
        dpow.append(powers)

    comult = []
    counit = []
    for r, ge in labels:
        t = {(unit_idx, unit_idx): one}
        for i in range(theta):
            if r[i]:
                t = tensor_multiply(alg, t, dpow[i][r[i]])
        gidx = idx[(zero_r, ge)]
        t = tensor_multiply(alg, t, {(gidx, gidx): one})
        comult.append(t)
        counit.append(one if sum(r) == 0 else linalg.pzero(L))

    sx = []
    for i in range(theta):
        ei = tuple(1 if a == i else 0 for a in range(theta))
        coef = -(d.q[i].inv().rebase(L))
        sx.append({idx[(ei, d.g[i].inv().exps)]: coef.raw()})
    antipode = []
    for r, ge in labels:
        vec = alg.basis(idx[(zero_r, group.element(ge).inv().exps)])
        for i in reversed(range(theta)):
            for _ in range(r[i]):
                vec = alg.multiply(vec, sx[i])
        antipode.append(vec)

    return FiniteHopf(labels, L, mult, unit, comult, counit, antipode,
                      degree=degree, graded=False)


def _iterated_comult(H: FiniteHopf, i: int, legs: int) -> dict:
    """Coefficients of the (legs - 1)-fold coproduct of basis element i."""
    red = H.ctx.reduction
    cur = {(i,): linalg.pone(H.L)}
    for _ in range(legs - 1):
        nxt: dict = {}
        for key, c in cur.items():
            for (a, b), c2 in H.comult[key[-1]].items():
                k2 = key[:-1] + (a, b)
                acc = nxt.get(k2)
                acc = pmul(c, c2, red) if acc is None else padd(acc, pmul(c, c2, red))
                if pis0(acc):
                    nxt.pop(k2, None)
                else:
                    nxt[k2] = acc
        cur = nxt
    return cur


class HopfCocycle:
    """Convolution-invertible 2-cocycle on a finite Hopf algebra.

    The table maps basis index pairs to values; missing pairs are zero.
    Construction checks unitality and the cocycle identity on all basis
    triples, then solves for the convolution inverse; any failure raises
    CocycleInvalid.
    """

    def __init__(self, H: FiniteHopf, table: dict, check=True):
        self.H = H
        self.L = H.L
        self.table = {k: v for k, v in table.items() if not pis0(v)}
        if check:
            rep = self.validate()
            if not rep.ok:
                raise CocycleInvalid(
                    f"cocycle table fails: {rep.checks_failed()}")
        self.inverse = self._convolution_inverse()

    def value(self, i: int, j: int):
        v = self.table.get((i, j))
        return v if v is not None else linalg.pzero(self.L)

    def pair(self, x: dict, y: dict, table=None):
        red = self.H.ctx.reduction
        table = self.table if table is None else table
        acc = linalg.pzero(self.L)
        for i, c in x.items():
            for j, c2 in y.items():
                v = table.get((i, j))
                if v is not None:
                    acc = padd(acc, pmul(pmul(c, c2, red), v, red))
        return acc

    def validate(self) -> CheckReport:
        rep = CheckReport("hopf-cocycle")
        H = self.H
        red = H.ctx.reduction
        n = H.dim
        for j in range(n):
            if self.pair(dict(H.unit), H.basis(j)) != H.counit[j]:
                rep.fail("left-unital", H.labels[j])
            if self.pair(H.basis(j), dict(H.unit)) != H.counit[j]:
                rep.fail("right-unital", H.labels[j])
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = linalg.pzero(self.L)
                    for (p, p2), c in H.comult[i].items():
                        for (q, q2), c2 in H.comult[j].items():
                            s = self.table.get((p, q))
                            if s is None:
                                continue
                            m = H.mult.get((p2, q2))
                            if not m:
                                continue
                            c3 = pmul(pmul(c, c2, red), s, red)
                            for t, cm in m.items():
                                v = self.table.get((t, k))
                                if v is not None:
                                    left = padd(left, pmul(pmul(c3, cm, red), v, red))
                    right = linalg.pzero(self.L)
                    for (q, q2), c in H.comult[j].items():
                        for (t, t2), c2 in H.comult[k].items():
                            s = self.table.get((q, t))
                            if s is None:
                                continue
                            m = H.mult.get((q2, t2))
                            if not m:
                                continue
                            c3 = pmul(pmul(c, c2, red), s, red)
                            for w, cm in m.items():
                                v = self.table.get((i, w))
                                if v is not None:
                                    right = padd(right, pmul(pmul(c3, cm, red), v, red))
                    if left != right:
                        rep.fail("cocycle-identity",
                                 (H.labels[i], H.labels[j], H.labels[k]))
                        if len(rep.failures) > 8:
                            return rep
        return rep

    def _convolution_inverse(self) -> dict:
        H = self.H
        red = H.ctx.reduction
        n = H.dim
        rows = []
        for c in range(n):
            for d in range(n):
                row: dict = {}
                for a in range(n):
                    for (p, p2), ca in H.comult[a].items():
                        if p2 != c:
                            continue
                        for b in range(n):
                            for (q, q2), cb in H.comult[b].items():
                                if q2 != d:
                                    continue
                                s = self.table.get((p, q))
                                if s is None:
                                    continue
                                key = a * n + b
                                cur = row.get(key)
                                add = pmul(pmul(ca, cb, red), s, red)
                                cur = add if cur is None else padd(cur, add)
                                if pis0(cur):
                                    row.pop(key, None)
                                else:
                                    row[key] = cur
                rows.append(row)
        target = {}
        for a in range(n):
            for b in range(n):
                v = pmul(H.counit[a], H.counit[b], red)
                if not pis0(v):
                    target[a * n + b] = v
        sol = linalg.solve(rows, target, n * n, self.L)
        if sol is None:
            raise CocycleInvalid("table has no convolution inverse")
        out = {}
        for k, v in sol.items():
            out[(k // n, k % n)] = v
        return out


def trivial_sigma(H: FiniteHopf) -> HopfCocycle:
    red = H.ctx.reduction
    table = {}
    for i in range(H.dim):
        for j in range(H.dim):
            v = pmul(H.counit[i], H.counit[j], red)
            if not pis0(v):
                table[(i, j)] = v
    return HopfCocycle(H, table, check=False)


def group_sigma(H: FiniteHopf, psi: Cocycle2) -> HopfCocycle:
    """The cocycle supported on the group part of a bosonization-shaped H.

    psi must live on the full group; sigma vanishes off the group-like
    basis and copies psi on it.
    """
    by_exps = {f.exps: f for f in psi.carrier}
    table = {}
    for i, (r, ge) in enumerate(H.labels):
        if sum(r):
            continue
        if ge not in by_exps:
            raise ValidationError("cocycle carrier misses a group-like")
        for j, (s, he) in enumerate(H.labels):
            if sum(s):
                continue
            v = psi(by_exps[ge], by_exps[he]).rebase(H.L)
            table[(i, j)] = v.raw()
    return HopfCocycle(H, table)


def deform_hopf(H: FiniteHopf, sigma: HopfCocycle) -> FiniteHopf:
    """Same coalgebra, multiplication and antipode twisted by sigma."""
    if sigma.H is not H and not _same_hopf(sigma.H, H):
        raise ValidationError("cocycle lives on a different Hopf algebra")
    red = H.ctx.reduction
    n = H.dim
    mult: dict = {}
    for i in range(n):
        ti = _iterated_comult(H, i, 3)
        for j in range(n):
            tj = _iterated_comult(H, j, 3)
            cell: dict = {}
            for (i1, i2, i3), ci in ti.items():
                for (j1, j2, j3), cj in tj.items():
                    s = sigma.table.get((i1, j1))
                    if s is None:
                        continue
                    t = sigma.inverse.get((i3, j3))
                    if t is None:
                        continue
                    m = H.mult.get((i2, j2))
                    if not m:
                        continue
                    coef = pmul(pmul(pmul(ci, cj, red), s, red), t, red)
                    vec_addmul(cell, m, coef, red)
            if cell:
                mult[(i, j)] = cell
    antipode = []
    for i in range(n):
        vec: dict = {}
        for (x1, x2, x3, x4, x5), c in _iterated_comult(H, i, 5).items():
            s = sigma.pair(H.basis(x1), H.antipode[x2])
            if pis0(s):
                continue
            t = sigma.pair(H.antipode[x4], H.basis(x5), table=sigma.inverse)
            if pis0(t):
                continue
            vec_addmul(vec, H.antipode[x3], pmul(pmul(c, s, red), t, red), red)
        antipode.append(vec)
    out = FiniteHopf(H.labels, H.L, mult, dict(H.unit),
                     [dict(v) for v in H.comult], list(H.counit), antipode,
                     degree=H.degree, graded=False)
    rep = out.verify()
    if not rep.ok:
        raise CocycleInvalid(
            f"deformed tables fail Hopf axioms: {rep.checks_failed()}")
    return out


def deform_comodule_algebra(A: ComoduleAlgebra, sigma: HopfCocycle,
                            hopf: FiniteHopf = None) -> ComoduleAlgebra:
    """Twist the product to sigma(a, b) applied to the coaction legs.

    The coaction map is unchanged; the result is a comodule algebra over
    the deformed Hopf algebra, which is verified.
    """
    U = A.hopf
    if sigma.H is not U and not _same_hopf(sigma.H, U):
        raise ValidationError("cocycle does not live on the coacting Hopf algebra")
    red = A.ctx.reduction
    n = A.dim
    mult: dict = {}
    for i in range(n):
        for j in range(n):
            cell: dict = {}
            for (u, a), c in A.coaction[i].items():
                for (v, b), c2 in A.coaction[j].items():
                    s = sigma.table.get((u, v))
                    if s is None:
                        continue
                    m = A.mult.get((a, b))
                    if not m:
                        continue
                    vec_addmul(cell, m, pmul(pmul(c, c2, red), s, red), red)
            if cell:
                mult[(i, j)] = cell
    if hopf is None:
        hopf = deform_hopf(U, sigma)
    out = ComoduleAlgebra(A.labels, A.L, mult, dict(A.unit), hopf,
                          [dict(v) for v in A.coaction], degree=A.degree)
    rep = out.verify()
    if not rep.ok:
        raise CocycleInvalid(
            f"deformed comodule algebra fails verification: {rep.checks_failed()}")
    return out


def coideal_twist(H: FiniteHopf, rows, sigma: HopfCocycle) -> ComoduleAlgebra:
    """Twist a coideal subalgebra of H by sigma on the trailing legs.

    ``rows`` spans the subalgebra inside H.  The twisted product pays
    sigma on the second coproduct legs and multiplies the first ones,
    so the span must absorb every such product (NotClosed when it does
    not).  The coaction is the restricted coproduct, still over H, and
    the result is verified as a left H-comodule algebra.
    """
    if sigma.H is not H and not _same_hopf(sigma.H, H):
        raise ValidationError("cocycle does not live on the ambient Hopf algebra")
    red = H.ctx.reduction
    sp = linalg.span(rows, H.L)
    basis = sp.rows
    unit = linalg.solve(basis, dict(H.unit), H.dim, H.L)
    if unit is None:
        raise ValidationError("the span misses the unit")
    for x, y in itertools.product(basis, repeat=2):
        if not sp.contains(H.multiply(x, y)):
            raise ValidationError("the span is not a subalgebra")
    coaction = []
    for vec in basis:
        legs: dict = {}
        for (j, k), c in H.comultiply(vec).items():
            legs.setdefault(j, {})[k] = c
        lam: dict = {}
        for j, row in legs.items():
            coords = linalg.solve(basis, row, H.dim, H.L)
            if coords is None:
                raise ValidationError("the span is not a coideal")
            for t, c in coords.items():
                lam[(j, t)] = c
        coaction.append(lam)
    comults = [H.comultiply(vec) for vec in basis]
    mult: dict = {}
    for a, dx in enumerate(comults):
        for b, dy in enumerate(comults):
            cell: dict = {}
            for (j, k), c in dx.items():
                for (l, m), c2 in dy.items():
                    s = sigma.table.get((k, m))
                    if s is None:
                        continue
                    prod = H.mult.get((j, l))
                    if not prod:
                        continue
                    vec_addmul(cell, prod, pmul(pmul(c, c2, red), s, red), red)
            coords = linalg.solve(basis, cell, H.dim, H.L)
            if coords is None:
                raise NotClosed("the twisted product leaves the span")
            if coords:
                mult[(a, b)] = coords
    labels = [("k", piv) for piv in sp.pivots]
    out = ComoduleAlgebra(labels, H.L, mult, unit, H, coaction)
    rep = out.verify()
    if not rep.ok:
        raise CocycleInvalid(
            f"twisted coideal subalgebra fails verification: {rep.checks_failed()}")
    return out


class BiGaloisRep:
    """An algebra with commuting left and right comodule structures.

    The left and right coacting Hopf algebras may differ; the counit
    functional is the linear form used to collapse cotensor products.
    """

    def __init__(self, algebra: FiniteAlgebra, left_hopf: FiniteHopf,
                 right_hopf: FiniteHopf, left_coaction, right_coaction,
                 counit_functional):
        self.algebra = algebra
        self.left_hopf = left_hopf
        self.right_hopf = right_hopf
        self.left_coaction = left_coaction
        self.right_coaction = right_coaction
        self.counit_functional = counit_functional

    def verify(self) -> CheckReport:
        left = ComoduleAlgebra(self.algebra.labels, self.algebra.L,
                               self.algebra.mult, dict(self.algebra.unit),
                               self.left_hopf, self.left_coaction)
        rep = left.verify()
        rep.subject = "bigalois"
        H = self.right_hopf
        B = self.algebra
        red = B.ctx.reduction
        n = B.dim
        rho = self.right_coaction
        one = linalg.pone(B.L)

        unit_target: dict = {}
        for i, c in B.unit.items():
            for u0, c0 in H.unit.items():
                unit_target[(i, u0)] = pmul(c, c0, red)
        acc: dict = {}
        for i, c in B.unit.items():
            vec_addmul(acc, rho[i], c, red)
        if acc != unit_target:
            rep.fail("right-coaction-unital", "1")

        for i in range(n):
            left_side: dict = {}
            right_side: dict = {}
            counit_side: dict = {}
            for (b, u), c in rho[i].items():
                for (b2, u2), c2 in rho[b].items():
                    key = (b2, u2, u)
                    cur = left_side.get(key)
                    cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                    if pis0(cur):
                        left_side.pop(key, None)
                    else:
                        left_side[key] = cur
                for (u1, u2), c2 in H.comult[u].items():
                    key = (b, u1, u2)
                    cur = right_side.get(key)
                    cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                    if pis0(cur):
                        right_side.pop(key, None)
                    else:
                        right_side[key] = cur
                cur = counit_side.get(b)
                add = pmul(c, H.counit[u], red)
                cur = add if cur is None else padd(cur, add)
                if pis0(cur):
                    counit_side.pop(b, None)
                else:
                    counit_side[b] = cur
            if left_side != right_side:
                rep.fail("right-coaction-coassociative", B.labels[i])
            if counit_side != {i: one}:
                rep.fail("right-coaction-counital", B.labels[i])

        for i in range(n):
            for j in range(n):
                want = pair_multiply(B, H, rho[i], rho[j])
                got: dict = {}
                for k, c in B.mult.get((i, j), {}).items():
                    vec_addmul(got, rho[k], c, red)
                if got != want:
                    rep.fail("right-coaction-multiplicative",
                             (B.labels[i], B.labels[j]))

        lam = self.left_coaction
        for i in range(n):
            one_way: dict = {}
            other: dict = {}
            for (u, b), c in lam[i].items():
                for (b2, h), c2 in rho[b].items():
                    key = (u, b2, h)
                    cur = one_way.get(key)
                    cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                    if pis0(cur):
                        one_way.pop(key, None)
                    else:
                        one_way[key] = cur
            for (b, h), c in rho[i].items():
                for (u, b2), c2 in lam[b].items():
                    key = (u, b2, h)
                    cur = other.get(key)
                    cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                    if pis0(cur):
                        other.pop(key, None)
                    else:
                        other[key] = cur
            if one_way != other:
                rep.fail("coactions-commute", B.labels[i])
        return rep

    def left_galois_bijective(self) -> bool:
        B, U = self.algebra, self.left_hopf
        n = B.dim
        red = B.ctx.reduction
        rows = []
        for i in range(n):
            for j in range(n):
                flat: dict = {}
                for (u, b), c in self.left_coaction[i].items():
                    for k, c2 in B.mult.get((b, j), {}).items():
                        key = u * n + k
                        cur = flat.get(key)
                        cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                        if pis0(cur):
                            flat.pop(key, None)
                        else:
                            flat[key] = cur
                rows.append(flat)
        return linalg.rank(rows, B.L) == n * n == U.dim * n

    def right_galois_bijective(self) -> bool:
        B, H = self.algebra, self.right_hopf
        n = B.dim
        red = B.ctx.reduction
        rows = []
        for i in range(n):
            for j in range(n):
                flat: dict = {}
                for (b, h), c in self.right_coaction[j].items():
                    for k, c2 in B.mult.get((i, b), {}).items():
                        key = k * H.dim + h
                        cur = flat.get(key)
                        cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                        if pis0(cur):
                            flat.pop(key, None)
                        else:
                            flat[key] = cur
                rows.append(flat)
        return linalg.rank(rows, B.L) == n * n == n * H.dim


def _same_hopf(H1: FiniteHopf, H2: FiniteHopf) -> bool:
    return (H1.labels == H2.labels and H1.L == H2.L
            and H1.mult == H2.mult and H1.unit == H2.unit
            and H1.comult == H2.comult and H1.counit == H2.counit
            and H1.antipode == H2.antipode)


def sigma_bigalois(H: FiniteHopf, sigma: HopfCocycle) -> BiGaloisRep:
    """H with product twisted on the left legs only; coactions are the
    coproduct on both sides."""
    red = H.ctx.reduction
    n = H.dim
    mult: dict = {}
    for i in range(n):
        for j in range(n):
            cell: dict = {}
            for (p, p2), c in H.comult[i].items():
                for (q, q2), c2 in H.comult[j].items():
                    s = sigma.table.get((p, q))
                    if s is None:
                        continue
                    m = H.mult.get((p2, q2))
                    if not m:
                        continue
                    vec_addmul(cell, m, pmul(pmul(c, c2, red), s, red), red)
            if cell:
                mult[(i, j)] = cell
    algebra = FiniteAlgebra(H.labels, H.L, mult, dict(H.unit))
    lam = [dict(v) for v in H.comult]
    rho = [dict(v) for v in H.comult]
    rep = BiGaloisRep(algebra, deform_hopf(H, sigma), H, lam, rho,
                      list(H.counit))
    check = rep.verify()
    if not check.ok:
        raise CocycleInvalid(
            f"twisted algebra fails bicomodule checks: {check.checks_failed()}")
    return rep


def build_bigalois(ld: LiftingDatum) -> BiGaloisRep:
    """The connecting object between a lifting and its graded model.

    As an algebra this is the comodule algebra over the full group with
    trivial cocycle, full generating subspace and negated scalars; the
    graded Hopf algebra coacts on the left and the lifting on the right.
    """
    d = ld.datum
    theta = d.theta
    F = Subgroup.full(d.group)
    order = sorted(range(theta), key=lambda i: (d.g[i].exps, i))
    w: dict = {}
    xi = [0] * theta
    for a, oi in enumerate(order):
        pos = [t for t in order if d.g[t] == d.g[oi]]
        row = [1 if p == oi else 0 for p in sorted(pos)]
        w.setdefault(d.g[oi].exps, []).append(row)
        xi[a] = -ld.mu[oi]
    inv = {oi: a for a, oi in enumerate(order)}
    alpha: dict = {}
    for (i, j), lam_ij in ld.lam.items():
        a, b = inv[i], inv[j]
        if a < b:
            alpha[(a, b)] = -lam_ij
        else:
            alpha[(b, a)] = d.chi[i](d.g[j]) * lam_ij
    mcd = ModCatDatum(d, F, Cocycle2.trivial(F), w=w, xi=xi, alpha=alpha)
    B = build_A(mcd)
    H = build_lifting(ld).rebased(B.L)

    ident = d.group.identity()
    zero_r = (0,) * theta
    one = linalg.pone(B.L)
    rho_letter = []
    for a, oi in enumerate(order):
        ea_b = tuple(1 if t == a else 0 for t in range(theta))
        ea_h = tuple(1 if t == oi else 0 for t in range(theta))
        g = d.g[oi]
        rho_letter.append({
            (B.index[(ea_b, ident.exps)], H.index[(zero_r, ident.exps)]): one,
            (B.index[(zero_r, g.exps)], H.index[(ea_h, ident.exps)]): one,
        })
    rho_pow = []
    start = {(B.index[(zero_r, ident.exps)], H.index[(zero_r, ident.exps)]): one}
    for a in range(theta):
        powers = [start]
        for _ in range(1, mcd.heights[a]):
            powers.append(pair_multiply(B, H, powers[-1], rho_letter[a]))
        rho_pow.append(powers)
    rho = []
    for r, fe in B.labels:
        t = start
        for a in range(theta):
            if r[a]:
                t = pair_multiply(B, H, t, rho_pow[a][r[a]])
        t = pair_multiply(
            B, H, t,
            {(B.index[(zero_r, fe)], H.index[(zero_r, fe)]): one})
        rho.append(t)

    cb = [one if sum(r) == 0 else linalg.pzero(B.L) for r, _ in B.labels]
    rep = BiGaloisRep(B, B.hopf, H, [dict(v) for v in B.coaction], rho, cb)
    check = rep.verify()
    if not check.ok:
        raise ConfluenceFailure(
            f"connecting object fails verification: {check.checks_failed()}")
    return rep


def _flatten(vec: dict, nA: int) -> dict:
    return {b * nA + a: c for (b, a), c in vec.items()}


def _unflatten(flat: dict, nA: int) -> dict:
    return {(k // nA, k % nA): c for k, c in flat.items()}


def cotensor(B: BiGaloisRep, A: ComoduleAlgebra) -> ComoduleAlgebra:
    """Solutions of the matching equation in B tensor A, as an algebra.

    When A is coacted by B's right Hopf algebra the matching is direct;
    when it is coacted by the left one, the coactions are recast through
    the antipodes and the first leg multiplies opposite.  The result is
    a comodule algebra over the other side, of the same dimension as A.
    """
    if _same_hopf(A.hopf, B.right_hopf):
        return _cotensor_standard(B, A)
    if _same_hopf(A.hopf, B.left_hopf):
        return _cotensor_twisted(B, A)
    raise ValidationError("A is not a comodule over either side of B")


def _antipode_inverse(H: FiniteHopf):
    rows = [dict(v) for v in H.antipode]
    out = []
    for i in range(H.dim):
        sol = linalg.solve(rows, {i: linalg.pone(H.L)}, H.dim, H.L)
        if sol is None:
            raise ValidationError("antipode is not invertible")
        out.append(sol)
    return out


def _cotensor_core(B: BiGaloisRep, A: ComoduleAlgebra, match_rows, ncols,
                   first_alg: FiniteAlgebra, out_hopf: FiniteHopf,
                   coact_of):
    nB = B.algebra.dim
    nA = A.dim
    L = A.L
    red = A.ctx.reduction
    kern = linalg.left_kernel(match_rows, ncols, L)
    space = linalg.span([dict(v) for v in kern], L)
    if space.dim != nA:
        raise IsoCheckFailed(
            f"cotensor dimension {space.dim} differs from {nA}")

    cb = B.counit_functional
    basis = [dict(r) for r in space.rows]

    def collapse(flat: dict) -> dict:
        out: dict = {}
        for k, c in flat.items():
            b, a = k // nA, k % nA
            if pis0(cb[b]):
                continue
            cur = out.get(a)
            cur = pmul(cb[b], c, red) if cur is None else padd(cur, pmul(cb[b], c, red))
            if pis0(cur):
                out.pop(a, None)
            else:
                out[a] = cur
        return out

    images = [collapse(t) for t in basis]
    if linalg.rank(images, L) != nA:
        raise IsoCheckFailed("collapse map of the cotensor is not bijective")
    reps = []
    for i in range(nA):
        sol = linalg.solve(images, {i: linalg.pone(L)}, nA, L)
        vec: dict = {}
        for k, c in sol.items():
            vec_addmul(vec, basis[k], c, red)
        reps.append(vec)

    mult: dict = {}
    for i in range(nA):
        xi_t = _unflatten(reps[i], nA)
        for j in range(nA):
            prod = pair_multiply(first_alg, A, xi_t, _unflatten(reps[j], nA))
            flat = _flatten(prod, nA)
            if not space.contains(flat):
                raise NotClosed("cotensor is not closed under the product")
            cell = collapse(flat)
            if cell:
                mult[(i, j)] = cell
    unit = dict(A.unit)

    coaction = []
    for i in range(nA):
        out: dict = {}
        for (b, a), c in _unflatten(reps[i], nA).items():
            for (u, rest), c2 in coact_of(b).items():
                key = (u, rest, a)
                cur = out.get(key)
                cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                if pis0(cur):
                    out.pop(key, None)
                else:
                    out[key] = cur
        lam: dict = {}
        for (u, b2, a), c in out.items():
            if pis0(cb[b2]):
                continue
            key = (u, a)
            cur = lam.get(key)
            cur = pmul(cb[b2], c, red) if cur is None else padd(cur, pmul(cb[b2], c, red))
            if pis0(cur):
                lam.pop(key, None)
            else:
                lam[key] = cur
        coaction.append(lam)

    T = ComoduleAlgebra(list(A.labels), L, mult, unit, out_hopf, coaction)
    rep = T.verify()
    if not rep.ok:
        raise IsoCheckFailed(
            f"transported algebra fails verification: {rep.checks_failed()}")
    return T


def _cotensor_standard(B: BiGaloisRep, A: ComoduleAlgebra) -> ComoduleAlgebra:
    nB = B.algebra.dim
    nA = A.dim
    nH = B.right_hopf.dim
    red = A.ctx.reduction
    rows = []
    for b in range(nB):
        for a in range(nA):
            row: dict = {}
            for (b2, h), c in B.right_coaction[b].items():
                row[(b2 * nH + h) * nA + a] = c
            for (h, a2), c in A.coaction[a].items():
                key = (b * nH + h) * nA + a2
                cur = row.get(key)
                cur = (linalg.pzero(A.L) if cur is None else cur)
                cur = psub(cur, c)
                if pis0(cur):
                    row.pop(key, None)
                else:
                    row[key] = cur
            rows.append(row)

    def coact_of(b):
        return {(u, b2): c for (u, b2), c in B.left_coaction[b].items()}

    return _cotensor_core(B, A, rows, nB * nH * nA, B.algebra,
                          B.left_hopf, coact_of)


def _cotensor_twisted(B: BiGaloisRep, A: ComoduleAlgebra) -> ComoduleAlgebra:
    U = B.left_hopf
    H = B.right_hopf
    nB = B.algebra.dim
    nA = A.dim
    nU = U.dim
    red = A.ctx.reduction

    rho2 = []
    for b in range(nB):
        out: dict = {}
        for (u, b2), c in B.left_coaction[b].items():
            for k, c2 in U.antipode[u].items():
                key = (b2, k)
                cur = out.get(key)
                cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                if pis0(cur):
                    out.pop(key, None)
                else:
                    out[key] = cur
        rho2.append(out)

    rows = []
    for b in range(nB):
        for a in range(nA):
            row: dict = {}
            for (b2, u), c in rho2[b].items():
                row[(b2 * nU + u) * nA + a] = c
            for (u, a2), c in A.coaction[a].items():
                key = (b * nU + u) * nA + a2
                cur = row.get(key)
                cur = (linalg.pzero(A.L) if cur is None else cur)
                cur = psub(cur, c)
                if pis0(cur):
                    row.pop(key, None)
                else:
                    row[key] = cur
            rows.append(row)

    sinv = _antipode_inverse(H)

    def coact_of(b):
        out: dict = {}
        for (b2, h), c in B.right_coaction[b].items():
            for k, c2 in sinv[h].items():
                key = (k, b2)
                cur = out.get(key)
                cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                if pis0(cur):
                    out.pop(key, None)
                else:
                    out[key] = cur
        return out

    mult_op = {}
    for (i, j), cell in B.algebra.mult.items():
        mult_op[(j, i)] = cell
    Bop = FiniteAlgebra(B.algebra.labels, B.algebra.L, mult_op,
                        dict(B.algebra.unit))

    return _cotensor_core(B, A, rows, nB * nU * nA, Bop, H, coact_of)


def transport(B: BiGaloisRep, A: ComoduleAlgebra):
    """Move A along B and report which invariants survive.

    Returns the transported algebra and a report; a change of radical
    dimension or matrix block data is recorded as a failed check rather
    than raised, since equivalences need not preserve them.
    """
    T = cotensor(B, A)
    rep = CheckReport("transport")
    if T.dim != A.dim:
        rep.fail("dimension-preserved", (A.dim, T.dim))
    sv = check_simplicity(A).verdict
    dv = check_simplicity(T).verdict
    if sv != dv:
        rep.fail("simplicity-verdict-preserved", (sv, dv))
    co = coinvariants(T)
    if co.dim != 1:
        rep.fail("coinvariants-trivial", co.dim)
    src = simple_modules(A)
    dst = simple_modules(T)
    if src.radical_dim != dst.radical_dim:
        rep.fail("radical-dimension-preserved",
                 (src.radical_dim, dst.radical_dim))
    if src.block_data != dst.block_data:
        rep.fail("block-data-preserved", (src.block_data, dst.block_data))
    return T, rep
