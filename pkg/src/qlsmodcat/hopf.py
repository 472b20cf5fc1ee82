"""Finite-dimensional Hopf algebras presented by exact structure-constant tables.

The central builder turns a quantum linear space datum (group, grading
elements, characters) into the smash product of the nilpotent generator
algebra with the group algebra, with comultiplication, counit and
antipode materialized as sparse tables over a fixed cyclotomic field.
Everything downstream (comodule algebras, deformations, reports) works
against the two table classes defined here.
"""

from __future__ import annotations

import itertools

from . import linalg
from ._kernel import add as padd, is_zero as pis0, mul as pmul
from .cyclo import CycloNumber, context, zeta
from .errors import DimensionMismatch, OutOfRange, ValidationError
from .groups import AbelianGroup, Character, GroupElement


class CheckReport:
    """Collected failures of an exhaustive verification sweep."""

    def __init__(self, subject: str = ""):
        self.subject = subject
        self.failures: list[tuple[str, object]] = []

    def fail(self, check: str, witness) -> None:
        self.failures.append((check, witness))

    @property
    def ok(self) -> bool:
        return not self.failures

    def checks_failed(self) -> list[str]:
        seen = []
        for name, _ in self.failures:
            if name not in seen:
                seen.append(name)
        return seen

    def __repr__(self):
        if self.ok:
            return f"CheckReport({self.subject or 'ok'}: ok)"
        return "CheckReport(%s: failed %s)" % (
            self.subject or "?", ", ".join(self.checks_failed()))


def vec_addmul(acc: dict, vec: dict, coef, red) -> None:
    """acc += coef * vec in place, dropping entries that cancel."""
    for k, v in vec.items():
        term = pmul(coef, v, red)
        cur = acc.get(k)
        cur = term if cur is None else padd(cur, term)
        if pis0(cur):
            acc.pop(k, None)
        else:
            acc[k] = cur


def rebase_vec(vec: dict, L: int, M: int) -> dict:
    """Rewrite the pairs of a sparse vector from conductor L to M."""
    if M == L:
        return dict(vec)
    return {k: linalg.to_cyclo(v, L).rebase(M).raw() for k, v in vec.items()}


class FiniteAlgebra:
    """Associative unital algebra with a fixed basis and sparse exact tables.

    ``mult`` maps index pairs to sparse vectors ``{index: pair}``; absent
    cells are zero.  Instances are treated as immutable once built.
    """

    def __init__(self, labels, L: int, mult: dict, unit: dict):
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValidationError("duplicate basis labels")
        self.L = L
        self.ctx = context(L)
        self.mult = mult
        self.unit = dict(unit)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis(self, i: int) -> dict:
        if not 0 <= i < self.dim:
            raise DimensionMismatch(f"basis index {i} out of range")
        return {i: linalg.pone(self.L)}

    def scalar_vec(self, c: CycloNumber) -> dict:
        pair = c.rebase(self.L).raw()
        out = {}
        vec_addmul(out, self.unit, pair, self.ctx.reduction)
        return out

    def multiply(self, a: dict, b: dict) -> dict:
        n = self.dim
        red = self.ctx.reduction
        out: dict = {}
        for i, ca in a.items():
            if not 0 <= i < n:
                raise DimensionMismatch(f"vector index {i} out of range")
            for j, cb in b.items():
                if not 0 <= j < n:
                    raise DimensionMismatch(f"vector index {j} out of range")
                cell = self.mult.get((i, j))
                if not cell:
                    continue
                vec_addmul(out, cell, pmul(ca, cb, red), red)
        return out

    def power(self, a: dict, k: int) -> dict:
        out = dict(self.unit)
        for _ in range(k):
            out = self.multiply(out, a)
        return out

    def verify_algebra(self) -> CheckReport:
        rep = CheckReport("algebra")
        n = self.dim
        basis = [self.basis(i) for i in range(n)]
        for i in range(n):
            if self.multiply(self.unit, basis[i]) != basis[i]:
                rep.fail("unit-left", self.labels[i])
            if self.multiply(basis[i], self.unit) != basis[i]:
                rep.fail("unit-right", self.labels[i])
        for i in range(n):
            for j in range(n):
                ij = self.mult.get((i, j), {})
                for k in range(n):
                    left = self.multiply(ij, basis[k])
                    right = self.multiply(basis[i], self.mult.get((j, k), {}))
                    if left != right:
                        rep.fail("associativity",
                                 (self.labels[i], self.labels[j], self.labels[k]))
        return rep

    def same_tables(self, other) -> bool:
        return (isinstance(other, FiniteAlgebra)
                and self.labels == other.labels
                and self.L == other.L
                and self.unit == other.unit
                and self.mult == other.mult)

    def rebased(self, M: int) -> "FiniteAlgebra":
        """The same algebra with every pair rewritten at conductor M."""
        if M == self.L:
            return self
        mult = {k: rebase_vec(v, self.L, M) for k, v in self.mult.items()}
        return FiniteAlgebra(self.labels, M, mult, rebase_vec(self.unit, self.L, M))


def pair_multiply(first: FiniteAlgebra, second: FiniteAlgebra,
                  x: dict, y: dict) -> dict:
    """Componentwise product over first tensor second, keyed by index pairs."""
    if first.L != second.L:
        raise DimensionMismatch("tensor factors live at different conductors")
    red = first.ctx.reduction
    out: dict = {}
    for (j1, k1), c1 in x.items():
        for (j2, k2), c2 in y.items():
            left = first.mult.get((j1, j2))
            if not left:
                continue
            right = second.mult.get((k1, k2))
            if not right:
                continue
            coef = pmul(c1, c2, red)
            for m1, d1 in left.items():
                f = pmul(coef, d1, red)
                for m2, d2 in right.items():
                    term = pmul(f, d2, red)
                    key = (m1, m2)
                    cur = out.get(key)
                    cur = term if cur is None else padd(cur, term)
                    if pis0(cur):
                        out.pop(key, None)
                    else:
                        out[key] = cur
    return out


def tensor_multiply(alg: FiniteAlgebra, x: dict, y: dict) -> dict:
    """Componentwise product of vectors over alg tensor alg."""
    return pair_multiply(alg, alg, x, y)


class FiniteHopf(FiniteAlgebra):
    """FiniteAlgebra plus coalgebra and antipode tables.

    ``comult`` and ``antipode`` are lists aligned with the basis; ``counit``
    is a list of pairs.  ``degree`` records the coradical degree of each
    basis element; when ``graded`` is set the comultiplication is expected
    to preserve total degree exactly, otherwise only to filter it.
    """

    def __init__(self, labels, L, mult, unit, comult, counit, antipode,
                 degree=None, graded=False):
        super().__init__(labels, L, mult, unit)
        self.comult = comult
        self.counit = counit
        self.antipode = antipode
        self.degree = list(degree) if degree is not None else None
        self.graded = graded
        if self.degree is not None:
            if any(self.degree[i] > self.degree[i + 1]
                   for i in range(self.dim - 1)):
                raise ValidationError("basis labels are not sorted by degree")

    def filtration(self) -> list[int]:
        """Prefix dimensions of the degree filtration, one per degree."""
        if self.degree is None:
            return [self.dim]
        top = self.degree[-1] if self.degree else 0
        return [sum(1 for d in self.degree if d <= n) for n in range(top + 1)]

    def comultiply(self, a: dict) -> dict:
        red = self.ctx.reduction
        out: dict = {}
        for i, c in a.items():
            if not 0 <= i < self.dim:
                raise DimensionMismatch(f"vector index {i} out of range")
            vec_addmul(out, self.comult[i], c, red)
        return out

    def counit_value(self, a: dict):
        red = self.ctx.reduction
        acc = linalg.pzero(self.L)
        for i, c in a.items():
            acc = padd(acc, pmul(c, self.counit[i], red))
        return acc

    def antipode_vec(self, a: dict) -> dict:
        red = self.ctx.reduction
        out: dict = {}
        for i, c in a.items():
            vec_addmul(out, self.antipode[i], c, red)
        return out

    def same_tables(self, other) -> bool:
        return (isinstance(other, FiniteHopf)
                and super().same_tables(other)
                and self.comult == other.comult
                and self.counit == other.counit
                and self.antipode == other.antipode)

    def rebased(self, M: int) -> "FiniteHopf":
        if M == self.L:
            return self
        mult = {k: rebase_vec(v, self.L, M) for k, v in self.mult.items()}
        comult = [rebase_vec(v, self.L, M) for v in self.comult]
        counit = [linalg.to_cyclo(p, self.L).rebase(M).raw() for p in self.counit]
        antipode = [rebase_vec(v, self.L, M) for v in self.antipode]
        return FiniteHopf(self.labels, M, mult, rebase_vec(self.unit, self.L, M),
                          comult, counit, antipode,
                          degree=self.degree, graded=self.graded)

    def verify(self) -> CheckReport:
        rep = self.verify_algebra()
        rep.subject = "hopf"
        red = self.ctx.reduction
        n = self.dim
        one = linalg.pone(self.L)
        basis = [self.basis(i) for i in range(n)]

        unit2 = self.comultiply(self.unit)
        expected = {}
        for i, c in self.unit.items():
            for j, c2 in self.unit.items():
                expected[(i, j)] = pmul(c, c2, red)
        if unit2 != expected:
            rep.fail("comult-unital", "1")
        if self.counit_value(self.unit) != one:
            rep.fail("counit-unital", "1")

        for i in range(n):
            di = self.comult[i]
            left: dict = {}
            right: dict = {}
            for (j, k), c in di.items():
                for (p, q), c2 in self.comult[j].items():
                    key = (p, q, k)
                    cur = left.get(key)
                    cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                    if pis0(cur):
                        left.pop(key, None)
                    else:
                        left[key] = cur
                for (p, q), c2 in self.comult[k].items():
                    key = (j, p, q)
                    cur = right.get(key)
                    cur = pmul(c, c2, red) if cur is None else padd(cur, pmul(c, c2, red))
                    if pis0(cur):
                        right.pop(key, None)
                    else:
                        right[key] = cur
            if left != right:
                rep.fail("coassociativity", self.labels[i])

            lc: dict = {}
            rc: dict = {}
            for (j, k), c in di.items():
                vec_addmul(lc, {k: one}, pmul(c, self.counit[j], red), red)
                vec_addmul(rc, {j: one}, pmul(c, self.counit[k], red), red)
            if lc != basis[i] or rc != basis[i]:
                rep.fail("counit-law", self.labels[i])

            sl: dict = {}
            sr: dict = {}
            for (j, k), c in di.items():
                vec_addmul(sl, self.multiply(self.antipode[j], basis[k]), c, red)
                vec_addmul(sr, self.multiply(basis[j], self.antipode[k]), c, red)
            target = {}
            vec_addmul(target, self.unit, self.counit[i], red)
            if sl != target or sr != target:
                rep.fail("antipode", self.labels[i])

            if self.degree is not None:
                for (j, k) in di:
                    total = self.degree[j] + self.degree[k]
                    if total > self.degree[i] or (self.graded and total != self.degree[i]):
                        rep.fail("coradical-degree", (self.labels[i], self.labels[j], self.labels[k]))
                        break

        for i in range(n):
            for j in range(n):
                prod = self.mult.get((i, j), {})
                if self.comultiply(prod) != tensor_multiply(self, self.comult[i], self.comult[j]):
                    rep.fail("comult-multiplicative", (self.labels[i], self.labels[j]))
                if self.counit_value(prod) != pmul(self.counit[i], self.counit[j], red):
                    rep.fail("counit-multiplicative", (self.labels[i], self.labels[j]))
        return rep


def verify_hopf_axioms(H: FiniteHopf) -> CheckReport:
    """Exhaustive check of all Hopf axioms on the basis of H."""
    return H.verify()


def multiply(H: FiniteAlgebra, a: dict, b: dict) -> dict:
    """Bilinear extension of the multiplication table."""
    return H.multiply(a, b)


def coproduct(H: FiniteHopf, a: dict) -> dict:
    """Linear extension of the comultiplication table."""
    return H.comultiply(a)


class QlsDatum:
    """Grading elements and characters presenting a quantum linear space."""

    def __init__(self, group: AbelianGroup, g, chi):
        if len(g) != len(chi):
            raise ValidationError("need one character per grading element")
        self.group = group
        self.g = list(g)
        self.chi = list(chi)
        self.theta = len(self.g)
        for el in self.g:
            if not isinstance(el, GroupElement) or el.group != group:
                raise ValidationError("grading element does not live in the base group")
        for ch in self.chi:
            if not isinstance(ch, Character) or ch.carrier != group:
                raise ValidationError("character is not defined on the base group")
        self.q = [self.chi[i](self.g[i]) for i in range(self.theta)]
        self.N = [qi.order() for qi in self.q]

    @property
    def conductor(self) -> int:
        return self.group.exponent

    def isotypic(self) -> dict:
        comp: dict = {}
        for i, el in enumerate(self.g):
            comp.setdefault(el, []).append(i)
        return comp

    def q_scalar(self, h: GroupElement, g: GroupElement) -> CycloNumber:
        """The scalar moving a degree-h generator past a degree-g one."""
        indices = [j for j, el in enumerate(self.g) if el == g]
        if not indices:
            raise ValidationError("no generator in the requested component")
        vals = [self.chi[j](h) for j in indices]
        for v in vals[1:]:
            if v != vals[0]:
                raise ValidationError("component-wise commutation scalar is ambiguous")
        return vals[0]

    def q_matrix(self) -> dict:
        """All pairwise commutation scalars between nonzero components."""
        support = sorted(self.isotypic(), key=lambda e: e.exps)
        return {(h.exps, g.exps): self.q_scalar(h, g)
                for h in support for g in support}

    def validate(self) -> CheckReport:
        rep = CheckReport("datum")
        for i, qi in enumerate(self.q):
            if qi.is_one():
                rep.fail("self-pairing-one", i)
        for i in range(self.theta):
            for j in range(i + 1, self.theta):
                prod = self.chi[j](self.g[i]) * self.chi[i](self.g[j])
                if not prod.is_one():
                    rep.fail("pairing-not-inverse", (i, j, repr(prod)))
        for el, idcs in self.isotypic().items():
            if len(idcs) >= 2:
                for i in idcs:
                    if self.N[i] != 2:
                        rep.fail("height-not-two", (i, el.exps))
        return rep

    def require_valid(self) -> None:
        rep = self.validate()
        if not rep.ok:
            raise ValidationError(f"invalid datum: {rep!r}")


def validate_datum(d: QlsDatum) -> CheckReport:
    """Report every violated datum condition, empty when valid."""
    return d.validate()


def gaussian_binomial(l: int, k: int, q: CycloNumber) -> CycloNumber:
    """Coefficient of x^(l-k) y^k in (x+y)^l subject to yx = q xy."""
    if l < 0 or k < 0 or k > l:
        raise OutOfRange(f"(l, k) = ({l}, {k})")
    row = [CycloNumber.one(q.L)]
    for m in range(1, l + 1):
        nxt = [row[0]]
        qpow = CycloNumber.one(q.L)
        for j in range(1, m + 1):
            qpow = qpow * q
            entry = row[j - 1]
            if j < m:
                entry = entry + qpow * row[j]
            nxt.append(entry)
        row = nxt
    return row[k]


def build_bosonization(d: QlsDatum) -> FiniteHopf:
    """The graded Hopf algebra on monomials x^r times a group element."""
    d.require_valid()
    group, theta, N = d.group, d.theta, d.N
    L = group.exponent
    one = linalg.pone(L)

    rs = sorted(itertools.product(*[range(n) for n in N]),
                key=lambda r: (sum(r), r))
    gs = sorted(group, key=lambda e: e.exps)
    labels = [(r, g.exps) for r in rs for g in gs]
    idx = {lab: i for i, lab in enumerate(labels)}
    degree = [sum(r) for r, _ in labels]
    zero_r = (0,) * theta
    ident = group.identity()

    qexp = [[d.chi[j].eval_exponent(d.g[k]) for j in range(theta)]
            for k in range(theta)]

    mult: dict = {}
    for i1, (r, ge) in enumerate(labels):
        g = group.element(ge)
        chig = [d.chi[a].eval_exponent(g) for a in range(theta)]
        for i2, (s, he) in enumerate(labels):
            if any(r[a] + s[a] >= N[a] for a in range(theta)):
                continue
            e = 0
            for a in range(theta):
                if s[a]:
                    e += s[a] * chig[a]
            for j in range(theta):
                if not s[j]:
                    continue
                for k in range(j + 1, theta):
                    if r[k]:
                        e += r[k] * s[j] * qexp[k][j]
            t = tuple(r[a] + s[a] for a in range(theta))
            gh = g * group.element(he)
            mult[(i1, i2)] = {idx[(t, gh.exps)]: zeta(L, e).raw()}

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
        coef = -(d.q[i].inv())
        sx.append({idx[(ei, d.g[i].inv().exps)]: coef.raw()})
    antipode = []
    for r, ge in labels:
        vec = alg.basis(idx[(zero_r, group.element(ge).inv().exps)])
        for i in reversed(range(theta)):
            for _ in range(r[i]):
                vec = alg.multiply(vec, sx[i])
        antipode.append(vec)

    return FiniteHopf(labels, L, mult, unit, comult, counit, antipode,
                      degree=degree, graded=True)


def group_hopf(group: AbelianGroup) -> FiniteHopf:
    """The group algebra with its usual Hopf structure."""
    return build_bosonization(QlsDatum(group, [], []))
