"""Root datum sanity: pairings, order validity, Kostant counts, serialization."""

from __future__ import annotations

from itertools import combinations_with_replacement

from uqsp6.rootsys import (
    ALPHA,
    BETA_KAPPA,
    DELTA,
    KAPPA_POS,
    LEVI_POS,
    MU_FUND,
    NORMAL_ORDER,
    NU_ROOT,
    POS_ROOTS,
    RADICAL_POS,
    RHO,
    THETA,
    VWEIGHTS,
    XI_ROOT,
    alpha_coords,
    cartan_bracket,
    coroot_pair,
    dot,
    eps_coords,
    eps_text,
    height_alpha,
    ht2,
    kostant,
    lambda_pairing,
    normal_order_violations,
    norm2,
    parse_weight,
    root_level,
    wadd,
    weight_text,
    wsub,
)
from uqsp6.scalars import ExactField, QScalar


F = ExactField()


def test_cartan_matrix():
    # rows (alpha_i, alpha_j^vee): C3 with alpha3 long
    expected = ((2, -1, 0), (-1, 2, -1), (0, -2, 2))
    got = tuple(tuple(coroot_pair(ai, aj) for aj in ALPHA) for ai in ALPHA)
    assert got == expected


def test_simple_root_pairings():
    assert dot(ALPHA[0], ALPHA[1]) == -1
    assert dot(ALPHA[1], ALPHA[2]) == -2
    assert dot(ALPHA[0], ALPHA[2]) == 0
    assert norm2(ALPHA[0]) == 2 and norm2(ALPHA[1]) == 2 and norm2(ALPHA[2]) == 4
    assert root_level(ALPHA[2]) == 2


def test_positive_roots_closed_list():
    # 9 positive roots; rho is the half sum
    assert len(set(POS_ROOTS)) == 9
    s = (0, 0, 0)
    for r in POS_ROOTS:
        s = wadd(s, r)
    assert s == tuple(2 * x for x in RHO)


def test_distinguished_combinations():
    assert wadd(ALPHA[0], wadd(ALPHA[1], ALPHA[2])) == XI_ROOT
    assert wadd(ALPHA[0], ALPHA[1]) == NU_ROOT
    assert wadd(wadd(ALPHA[0], ALPHA[1]), wadd(ALPHA[1], ALPHA[2])) == THETA
    assert wadd(wadd(ALPHA[1], ALPHA[1]), ALPHA[2]) == DELTA
    assert alpha_coords(THETA) == (1, 2, 1)
    assert alpha_coords(DELTA) == (0, 2, 1)


def test_rho_coroot_pairings():
    table = {
        (1, -1, 0): 1, (1, 1, 0): 5, (1, 0, -1): 2, (1, 0, 1): 4,
        (0, 1, -1): 1, (0, 1, 1): 3, (2, 0, 0): 3, (0, 2, 0): 2, (0, 0, 2): 1,
    }
    for r, v in table.items():
        assert coroot_pair(RHO, r) == v


def test_split_of_positive_roots():
    assert set(LEVI_POS) | set(RADICAL_POS) | {(1, 1, 0), (2, 0, 0), (0, 2, 0)} \
        == set(POS_ROOTS)
    assert set(KAPPA_POS) - set(LEVI_POS) == {(1, 1, 0), (2, 0, 0), (0, 2, 0)}
    assert set(BETA_KAPPA) <= set(KAPPA_POS)
    # the seven non-Levi roots precede the Levi pair in the normal order
    cut = len(NORMAL_ORDER) - 2
    assert set(NORMAL_ORDER[cut:]) == set(LEVI_POS)


def test_normal_order_valid():
    assert normal_order_violations() == []


def test_textbook_order_is_invalid():
    # the order listing the radical first and 2e1 after e1+-e2 breaks
    # betweenness at (e1-e2) + (e1+e2) = 2e1, so it is not usable
    broken = ((1, 0, -1), (1, 0, 1), (0, 1, -1), (0, 1, 1),
              (1, -1, 0), (1, 1, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2))
    bad = normal_order_violations(broken)
    assert ((1, -1, 0), (2, 0, 0), (1, 1, 0)) in bad


def test_coordinate_conversions():
    for abc in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 2, 1), (3, 5, 2)]:
        assert alpha_coords(eps_coords(abc)) == abc
    assert eps_coords((1, 2, 1)) == THETA
    assert height_alpha(alpha_coords(THETA)) == 4
    assert ht2((1, 0, 0)) == 5 and ht2((0, 0, 1)) == 1
    for r in POS_ROOTS:
        assert ht2(r) == 2 * height_alpha(alpha_coords(r))


def test_vweights():
    assert len(VWEIGHTS) == 6
    assert VWEIGHTS[0] == MU_FUND[0]
    for w in VWEIGHTS:
        assert ht2(w) % 2 == 1
        try:
            alpha_coords(w)
        except ValueError:
            continue
        raise AssertionError(f"{w} should not be alpha-integral")


def _kostant_brute(abc):
    roots = [alpha_coords(r) for r in POS_ROOTS]
    target = tuple(abc)
    total = 0
    ht = height_alpha(abc)
    for n in range(ht + 1):
        for combo in combinations_with_replacement(roots, n):
            s = [0, 0, 0]
            for r in combo:
                s[0] += r[0]
                s[1] += r[1]
                s[2] += r[2]
            if tuple(s) == target:
                total += 1
    return total


def test_kostant_hand_values():
    assert kostant((0, 0, 0)) == 1
    assert kostant((1, 0, 0)) == 1
    assert kostant((1, 1, 0)) == 2
    assert kostant((2, 1, 0)) == 2
    assert kostant((0, 2, 1)) == 3
    assert kostant((0, 3, 1)) == 3
    assert kostant((0, 1, 2)) == 2
    assert kostant((1, 0, 1)) == 1
    assert kostant((1, 2, 1)) == 7
    assert kostant((0, -1, 0)) == 0


def test_kostant_matches_brute_enumeration():
    for a in range(3):
        for b in range(4):
            for c in range(3):
                if a + b + c <= 5:
                    assert kostant((a, b, c)) == _kostant_brute((a, b, c))


def test_lambda_pairing_units():
    q = QScalar.q()
    iota = QScalar.iota()
    assert lambda_pairing(F, (1, 0, 0)) == iota * q ** -1
    assert lambda_pairing(F, (0, 1, 0)) == iota * q ** -1
    assert lambda_pairing(F, (0, 0, 2)) == 1
    assert lambda_pairing(F, (1, 1, 0)) == -(q ** -2)
    assert lambda_pairing(F, ALPHA[1]) == iota * q ** -1
    assert lambda_pairing(F, (-1, -1, 0)) == -(q ** 2)
    # multiplicativity
    for g in [(1, 0, 0), (0, 1, -1), (2, -1, 3)]:
        for h in [(0, 1, 0), (1, 1, 0), (-1, 0, 1)]:
            assert lambda_pairing(F, wadd(g, h)) == \
                lambda_pairing(F, g) * lambda_pairing(F, h)


def test_cartan_bracket_matches_qint():
    # at an integral weight the Cartan bracket is a q-integer
    q = QScalar.q()
    for m in range(-6, 7):
        assert cartan_bracket(F, q ** m, 1) == F.qint(m)
        assert cartan_bracket(F, q ** (2 * m), 2) == F.qint(m, 2)


def test_weight_serialization_round_trip():
    for abc in [(0, 0, 0), (1, 2, 1), (-1, 0, 3)]:
        for plus in (False, True):
            t = weight_text(abc, plus)
            assert parse_weight(t) == (abc, plus)
    assert weight_text((1, 2, 1), True) == "[1,2,1]+lambda"


def test_eps_text():
    assert eps_text((1, -1, 0)) == "e1-e2"
    assert eps_text((2, 0, 0)) == "2e1"
    assert eps_text((0, 0, 0)) == "0"
    assert eps_text((-1, 0, 2)) == "-e1+2e3"


def test_wsub():
    assert wsub(THETA, ALPHA[0]) == (0, 2, 0)
