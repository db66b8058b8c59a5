"""Tests for the contravariant form: transport sanity, the three norm
routes and their agreement, the gauge constants, y-vector orthogonality
with the string-factor diagonal law, radicals, and determinants."""

from functools import lru_cache

import pytest

from uqsp6.scalars import ExactField
from uqsp6.uqneg import NegativeAlgebra
from uqsp6.highest import base_module, build_verma
from uqsp6.contraform import (
    GRAM_GAUGE_EXPONENT,
    RECURRENCE_EXPONENT_SHIFT,
    TwoLetterNormModel,
    brute_norm,
    contravariance_check,
    gram,
    gram_determinants,
    gram_gauge,
    norm_closed,
    norm_recurrence,
    norm_table,
    omega_relations_check,
    qint_sq,
    radical,
    resolve_recurrence_exponent,
    y_gram_report,
    y_string_factor,
)

F = ExactField()


@lru_cache(maxsize=None)
def shared_alg():
    return NegativeAlgebra(F)


@lru_cache(maxsize=None)
def verma_lam(bound=4):
    return build_verma(shared_alg(), (0, 0, 0), True, bound, "verma(lambda)")


@lru_cache(maxsize=None)
def base_m(bound=7):
    return base_module(shared_alg(), height_bound=bound)


def lamtheta_bracket(i):
    # [lambda_theta - i]_q = [i + 2]_q
    return F.qint(i + 2)


def lam2_bracket(shift=0):
    # [lambda_2 - shift]_q with q^{lambda_2} = iota/q
    num = F.iota() * (F.qpow(shift + 1) + F.qpow(-shift - 1))
    return num / (F.qpow(1) - F.qpow(-1))


# -- transport sanity --------------------------------------------------------

def test_form_contravariant_and_symmetric():
    ok, msg = contravariance_check(base_m(), max_height=4)
    assert ok, msg
    ok, msg = contravariance_check(verma_lam(), max_height=3)
    assert ok, msg


def test_transport_respects_defining_relations():
    ok, msg = omega_relations_check(base_m(), max_height=4)
    assert ok, msg
    ok, msg = omega_relations_check(verma_lam(), max_height=3)
    assert ok, msg


def test_top_normalization():
    assert gram(base_m(), (0, 0, 0)) == [[F.one]]


# -- the recurrence and its exponent -----------------------------------------

def test_recurrence_exponent_resolves_to_recorded_shift():
    assert RECURRENCE_EXPONENT_SHIFT == -1
    assert resolve_recurrence_exponent(F) == -1


def test_recurrence_boundaries():
    assert norm_recurrence(F, 0, 0) == F.one
    # single f2 letter: [lambda_2]
    assert norm_recurrence(F, 1, 0) == lam2_bracket()
    # single theta letter: [2]_q^2 since [lambda_theta] = [2]_q
    assert norm_recurrence(F, 0, 1) == F.qint(2) * F.qint(2)


def test_closed_form_small_cells():
    tilde, _ = norm_closed(F, 0, 2)
    # [2]! [2]^2 [lambda_theta][lambda_theta - 1] = [2]^4 [3]
    assert tilde == F.qint(2) ** 4 * F.qint(3)
    tilde, _ = norm_closed(F, 1, 0)
    assert tilde == lam2_bracket()
    tilde, _ = norm_closed(F, 2, 1)
    want = F.qint(2) ** 2 * lam2_bracket() * lam2_bracket(1) \
        * lamtheta_bracket(2)
    assert tilde == want


def test_recurrence_matches_closed_on_grid():
    for l in range(4):
        for k in range(4):
            assert norm_recurrence(F, l, k) == norm_closed(F, l, k)[0]


# -- the three routes agree ---------------------------------------------------

def test_norm_table_triple_agreement_small():
    rows = norm_table(shared_alg(), lmax=2, kmax=2, ambient_height=6)
    assert len(rows) == 9
    assert all(r["aux_match"] for r in rows)
    assert all(r["brute_match"] for r in rows)
    assert {r["route"] for r in rows} == {"gram", "contraction"}


def test_brute_norm_single_cells():
    got = brute_norm(shared_alg(), 1, 0)
    assert got == gram_gauge(F, 0) * norm_closed(F, 1, 0)[1]
    got = brute_norm(shared_alg(), 0, 1)
    assert got == gram_gauge(F, 1) * norm_closed(F, 0, 1)[1]


def test_gram_gauge_is_sign_by_theta_degree():
    assert GRAM_GAUGE_EXPONENT == "(-1)^k"
    assert gram_gauge(F, 0) == F.one
    assert gram_gauge(F, 3) == -F.one


def test_two_letter_model_tracks_recurrence():
    model = TwoLetterNormModel(F)
    for l in range(3):
        for k in range(3):
            assert model.aux_norm(l, k) == norm_recurrence(F, l, k)


# -- spec'd single matrix entry ----------------------------------------------

def test_alpha2_gram_entry_cross_checked():
    G = gram(base_m(), (0, 1, 0))
    assert len(G) == 1
    assert G[0][0] == gram_gauge(F, 0) * norm_closed(F, 1, 0)[1]


# -- y-vector orthogonality ---------------------------------------------------

def test_y_gram_diagonal_with_string_law():
    ok, detail, diag = y_gram_report(base_m(), up_to=7)
    assert ok, detail
    assert diag[(0, 0, 0, 0)] == F.one
    # ratios across (l,k) at (i,j) = (0,0) are gauge * c ratios
    r = diag[(2, 0, 0, 0)] / diag[(1, 0, 0, 0)]
    want = norm_closed(F, 2, 0)[1] / norm_closed(F, 1, 0)[1]
    assert r == want


def test_y_string_factor_smallest_cells():
    assert y_string_factor(F, 3, 0, 0) == F.one
    assert y_string_factor(F, 1, 1, 0) == -F.qpow(-1)
    # the long-root direction picks up a genuine [2]_q, not a unit
    assert y_string_factor(F, 1, 0, 1) == -F.qpow(-2) * F.qint(2)
    assert y_string_factor(F, 2, 1, 0) == -F.qpow(-2) * F.qint(2)
    assert y_string_factor(F, 2, 2, 0) == F.qpow(-2) * F.qint(2) ** 2


def test_bare_square_normalization_fails_where_measured():
    # the ([i][j])^2 pattern misses the string factors already at l=2, i=1
    got = y_string_factor(F, 2, 1, 0)
    assert got != F.qint(1) ** 2
    # and no power of q alone closes the gap: [2]_q is not a monomial
    assert F.qint(2) * F.qpow(2) != F.qpow(3)


def test_qint_sq_values():
    assert qint_sq(F, 1) == F.one
    assert qint_sq(F, 2) == F.qpow(2) + F.qpow(-2)


# -- radicals and determinants ------------------------------------------------

def test_verma_radical_is_the_quotiented_ideal():
    rad = radical(verma_lam(), up_to=2)
    offs = sorted(v.offset for v in rad)
    assert offs == [(0, 0, 1), (0, 0, 2), (0, 1, 1), (1, 0, 0),
                    (1, 0, 1), (1, 1, 0), (2, 0, 0)]
    for v in rad:
        for word in v.coords:
            assert "1" in word or "3" in word


def test_base_module_radical_empty():
    assert radical(base_m(), up_to=6) == []


def test_determinants():
    dets = gram_determinants(verma_lam(), up_to=2)
    zeros = sorted(o for o, d in dets.items() if not d)
    assert zeros == [(0, 0, 1), (0, 0, 2), (0, 1, 1), (1, 0, 0),
                     (1, 0, 1), (1, 1, 0), (2, 0, 0)]
    dets = gram_determinants(base_m(), up_to=5)
    assert dets and all(bool(d) for d in dets.values())
