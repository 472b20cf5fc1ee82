"""Cocycle twists, connecting objects and transport of algebras."""

import pytest

from qlsmodcat.cocycles import Cocycle2
from qlsmodcat.comodule import (
    ModCatDatum,
    build_A,
    regular_coaction,
    simple_modules,
)
from qlsmodcat.cyclo import CycloNumber
from qlsmodcat.deformation import (
    HopfCocycle,
    LiftingDatum,
    build_bigalois,
    build_lifting,
    coideal_twist,
    cotensor,
    deform_comodule_algebra,
    deform_hopf,
    group_sigma,
    sigma_bigalois,
    transport,
    trivial_sigma,
)
from qlsmodcat.errors import CocycleInvalid, NotClosed, ValidationError
from qlsmodcat.groups import AbelianGroup, Subgroup
from qlsmodcat.hopf import QlsDatum, build_bosonization, group_hopf
from qlsmodcat.linalg import pone
from qls_fixtures import sweedler_datum, z4_mu_datum, z22_lambda_datum


def plain_mcd():
    G = AbelianGroup((2, 2))
    datum = QlsDatum(G, [], [])
    F = Subgroup.full(G)
    return ModCatDatum(datum, F, Cocycle2.trivial(F))


def twisted_mcd():
    G = AbelianGroup((2, 2))
    datum = QlsDatum(G, [], [])
    F = Subgroup.full(G)
    return ModCatDatum(datum, F, Cocycle2.from_exponents(F, {(0, 1): 1}))


def group_setup():
    mcd = plain_mcd()
    A = build_A(mcd)
    psi = Cocycle2.from_exponents(mcd.F, {(0, 1): 1})
    return A, group_sigma(A.hopf, psi)


def test_trivial_cocycle_validates_and_is_self_inverse():
    H = build_bosonization(sweedler_datum())
    s = trivial_sigma(H)
    assert s.validate().ok
    assert s.inverse == s.table


def test_trivial_cocycle_deformation_is_identity():
    H = build_bosonization(sweedler_datum())
    H2 = deform_hopf(H, trivial_sigma(H))
    assert H2.mult == H.mult
    assert H2.antipode == H.antipode
    assert H2.comult == H.comult


def test_group_cocycle_table_and_inverse():
    A, s = group_setup()
    H = A.hopf
    # every value is +-1, so the convolution inverse must equal the table
    assert s.inverse == s.table
    minus = CycloNumber.from_rational(-1, H.L).raw()
    i = H.index[((), (1, 0))]
    j = H.index[((), (0, 1))]
    assert s.value(i, j) != s.value(j, i)
    assert s.value(i, j) == minus


def test_deform_hopf_of_cocommutative_is_unchanged():
    A, s = group_setup()
    H2 = deform_hopf(A.hopf, s)
    assert H2.mult == A.hopf.mult
    assert H2.antipode == A.hopf.antipode


def test_corrupted_table_is_rejected():
    A, s = group_setup()
    H = A.hopf
    bad = dict(s.table)
    i = H.index[((), (1, 0))]
    j = H.index[((), (0, 1))]
    nums, den = bad[(i, j)]
    bad[(i, j)] = (tuple(-n for n in nums), den)
    with pytest.raises(CocycleInvalid):
        HopfCocycle(H, bad)


def test_deformed_regular_algebra_is_twisted_group_algebra():
    A, s = group_setup()
    D = deform_comodule_algebra(A, s)
    M = build_A(twisted_mcd())
    assert D.labels == M.labels
    assert D.mult == M.mult
    assert D.coaction == M.coaction
    # the coacting Hopf algebra itself stays untouched
    assert D.hopf.mult == A.hopf.mult


def test_sigma_bigalois_cotensor_matches_direct_deformation():
    A, s = group_setup()
    B = sigma_bigalois(A.hopf, s)
    M = build_A(twisted_mcd())
    assert B.algebra.mult == M.mult
    assert B.left_galois_bijective()
    assert B.right_galois_bijective()
    T = cotensor(B, A)
    D = deform_comodule_algebra(A, s)
    assert T.labels == D.labels
    assert T.mult == D.mult
    assert T.coaction == D.coaction
    assert T.hopf.mult == D.hopf.mult


def test_root_lifting_bigalois_object():
    B = build_bigalois(LiftingDatum(z4_mu_datum(), mu=[1]))
    alg = B.algebra
    assert alg.dim == 8
    v = alg.index[((1,), (0,))]
    minus = CycloNumber.from_rational(-1, alg.L).raw()
    assert alg.mult[(v, v)] == {alg.index[((0,), (2,))]: minus}
    assert B.left_galois_bijective()
    assert B.right_galois_bijective()


def test_transport_of_root_lifting_changes_block_data():
    B = build_bigalois(LiftingDatum(z4_mu_datum(), mu=[1]))
    A = regular_coaction(B.right_hopf)
    src = simple_modules(A)
    assert src.radical_dim == 2
    assert src.block_data == (1, 1, 4)
    T, rep = transport(B, A)
    assert T.dim == 8
    dst = simple_modules(T)
    assert dst.radical_dim == 0
    assert dst.block_data == (4, 4)
    failed = rep.checks_failed()
    assert "dimension-preserved" not in failed
    assert "radical-dimension-preserved" in failed
    assert "block-data-preserved" in failed


def test_transport_along_trivial_lifting_preserves_blocks():
    B = build_bigalois(LiftingDatum(z4_mu_datum()))
    A = regular_coaction(B.right_hopf)
    T, rep = transport(B, A)
    assert T.dim == 8
    assert rep.ok


def test_cotensor_against_left_coacting_side():
    B = build_bigalois(LiftingDatum(z4_mu_datum(), mu=[1]))
    A = regular_coaction(B.left_hopf)
    T = cotensor(B, A)
    assert T.dim == 8
    want = simple_modules(B.algebra).block_data
    assert simple_modules(T).block_data == want


def test_cotensor_rejects_unrelated_comodule():
    B = build_bigalois(LiftingDatum(z4_mu_datum(), mu=[1]))
    A = regular_coaction(build_bosonization(sweedler_datum()))
    with pytest.raises(ValidationError):
        cotensor(B, A)


def test_linking_lifting_bigalois_and_transport():
    B = build_bigalois(LiftingDatum(z22_lambda_datum(), lam={(0, 1): 1}))
    assert B.algebra.dim == 16
    assert B.left_galois_bijective()
    assert B.right_galois_bijective()
    A = regular_coaction(B.right_hopf)
    src = simple_modules(A)
    assert src.radical_dim == 6
    assert src.block_data == (1, 1, 4, 4)
    T, rep = transport(B, A)
    assert T.dim == 16
    dst = simple_modules(T)
    assert dst.radical_dim == 0
    assert dst.block_data == (4, 4, 4, 4)
    assert "block-data-preserved" in rep.checks_failed()


def test_coideal_twist_of_full_group_algebra():
    G = AbelianGroup((2, 2))
    H = group_hopf(G)
    psi = Cocycle2.from_exponents(G, {(0, 1): 1})
    K = coideal_twist(H, [H.basis(i) for i in range(H.dim)],
                      group_sigma(H, psi))
    assert K.dim == 4
    assert K.verify().ok
    by_exps = {f.exps: f for f in psi.carrier}
    idx = {lab: i for i, lab in enumerate(H.labels)}
    for i, (_, ei) in enumerate(H.labels):
        for j, (_, ej) in enumerate(H.labels):
            prod = (G.element(ei) * G.element(ej)).exps
            want = {idx[((), prod)]: psi(by_exps[ei], by_exps[ej]).rebase(H.L).raw()}
            assert K.mult.get((i, j)) == want


def test_coideal_twist_flips_a_group_like_square():
    U = build_bosonization(z22_lambda_datum())
    idx = {lab: i for i, lab in enumerate(U.labels)}
    rows = [U.basis(idx[((0, 0), (0, 0))]), U.basis(idx[((0, 0), (1, 1))])]
    psi = Cocycle2.from_exponents(AbelianGroup((2, 2)), {(0, 1): 1})
    K = coideal_twist(U, rows, group_sigma(U, psi))
    plain = coideal_twist(U, rows, trivial_sigma(U))
    assert K.dim == plain.dim == 2
    assert K.unit == plain.unit == {0: CycloNumber.from_rational(1, U.L).raw()}
    minus = CycloNumber.from_rational(-1, U.L).raw()
    assert plain.mult[(1, 1)] == dict(plain.unit)
    assert K.mult[(1, 1)] == {0: minus}
    assert K.coaction == plain.coaction


def test_coideal_twist_trivial_sigma_restricts_the_plain_product():
    U = build_bosonization(z22_lambda_datum())
    idx = {lab: i for i, lab in enumerate(U.labels)}
    mono = [idx[((0, 0), (0, 0))], idx[((0, 0), (1, 0))],
            idx[((1, 0), (0, 0))], idx[((1, 0), (1, 0))]]
    K = coideal_twist(U, [U.basis(i) for i in mono], trivial_sigma(U))
    assert K.verify().ok
    for a in range(4):
        for b in range(4):
            want = U.multiply(U.basis(mono[a]), U.basis(mono[b]))
            want = {mono.index(t): c for t, c in want.items()}
            assert K.mult.get((a, b), {}) == want


def test_coideal_twist_rejects_a_non_coideal_span():
    U = build_bosonization(z22_lambda_datum())
    idx = {lab: i for i, lab in enumerate(U.labels)}
    cross = {idx[((1, 0), (0, 0))]: pone(U.L), idx[((0, 1), (0, 0))]: pone(U.L)}
    with pytest.raises(ValidationError):
        coideal_twist(U, [U.basis(idx[((0, 0), (0, 0))]), cross],
                      trivial_sigma(U))


def test_coideal_twist_guards_closure_of_the_span():
    U = build_bosonization(z22_lambda_datum())
    idx = {lab: i for i, lab in enumerate(U.labels)}
    unit_i = idx[((0, 0), (0, 0))]
    x0_i = idx[((1, 0), (0, 0))]
    table = dict(trivial_sigma(U).table)
    table[(unit_i, x0_i)] = pone(U.L)
    broken = HopfCocycle(U, table, check=False)
    with pytest.raises(NotClosed):
        coideal_twist(U, [U.basis(unit_i), U.basis(x0_i)], broken)
