"""Tests for the lowering-subalgebra normal-form engine and identity catalog."""

import random
from functools import lru_cache

import pytest

from uqsp6.rootsys import height_alpha, kostant
from uqsp6.scalars import ExactField, GaussRat, ProbeField
from uqsp6.uqneg import (
    AlgElem,
    NegativeAlgebra,
    composites,
    qcomm,
    run_catalog,
    word_content,
    words_of_content,
)

F = ExactField()


@lru_cache(maxsize=None)
def shared_alg():
    return NegativeAlgebra(F)


def contents_up_to(height):
    out = []
    for a in range(height + 1):
        for b in range(height + 1 - a):
            for c in range(height + 1 - a - b):
                out.append((a, b, c))
    return out


# -- words -------------------------------------------------------------------

def test_words_of_content_counts_and_order():
    from math import factorial
    for abc in contents_up_to(5):
        ws = words_of_content(abc)
        a, b, c = abc
        expected = factorial(a + b + c) // (factorial(a) * factorial(b) * factorial(c))
        assert len(ws) == expected
        assert list(ws) == sorted(ws)
        assert all(word_content(w) == abc for w in ws)


# -- deformed commutator basics ------------------------------------------------

def test_qcomm_antisymmetry():
    rng = random.Random(11)
    for _ in range(50):
        x = random_elem(rng)
        y = random_elem(rng)
        a = random_unit(rng)
        lhs = qcomm(x, y, a)
        rhs = qcomm(y, x, F.one / a).scaled(-a)
        assert lhs == rhs


def test_qcomm_jacobi_fuzz():
    # [x,[y,z]_a]_b = [[x,y]_c, z]_{ab/c} + c [y,[x,z]_{b/c}]_{a/c}
    # for arbitrary a, b and invertible c, in any associative algebra.
    rng = random.Random(20260819)
    for _ in range(100):
        x, y, z = (random_elem(rng) for _ in range(3))
        a, b, c = (random_unit(rng) for _ in range(3))
        lhs = qcomm(x, qcomm(y, z, a), b)
        rhs = qcomm(qcomm(x, y, c), z, a * b / c) \
            + qcomm(y, qcomm(x, z, b / c), a / c).scaled(c)
        assert not (lhs - rhs).terms


def random_coeff(rng):
    coeff = F.qpow(rng.randint(-2, 2)) * F.from_int(rng.randint(-3, 3))
    if rng.random() < 0.3:
        coeff = coeff * F.iota()
    return coeff


def random_elem(rng):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        w = "".join(rng.choice("123") for _ in range(rng.randint(0, 3)))
        coeff = random_coeff(rng)
        if coeff:
            v = terms.get(w)
            nv = coeff if v is None else v + coeff
            if nv:
                terms[w] = nv
            elif v is not None:
                del terms[w]
    return AlgElem(F, terms)


def random_homogeneous_elem(rng, content):
    words = words_of_content(content)
    terms = {}
    for w in rng.sample(words, min(3, len(words))):
        coeff = random_coeff(rng)
        if coeff:
            terms[w] = coeff
    return AlgElem(F, terms)


def random_unit(rng):
    u = F.qpow(rng.randint(-3, 3))
    for _ in range(rng.randint(0, 3)):
        u = u * F.iota()
    return u


# -- normal forms ----------------------------------------------------------------

def test_defining_relations_vanish():
    alg = shared_alg()
    rels = alg.relations()
    assert [name for name, _ in rels] == \
        ["serre_12", "serre_21", "serre_23", "serre_32", "serre_13"]
    expected_content = {
        "serre_12": (2, 1, 0), "serre_21": (1, 2, 0),
        "serre_23": (0, 3, 1), "serre_32": (0, 1, 2), "serre_13": (1, 0, 1),
    }
    for name, rel in rels:
        assert rel.content() == expected_content[name]
        assert alg.is_zero_mod_serre(rel)


def test_two_sided_ideal_membership():
    alg = shared_alg()
    rng = random.Random(7)
    for _, rel in alg.relations():
        for _ in range(5):
            u = "".join(rng.choice("123") for _ in range(rng.randint(0, 2)))
            v = "".join(rng.choice("123") for _ in range(rng.randint(0, 2)))
            left = AlgElem(F, {u: F.one})
            right = AlgElem(F, {v: F.one})
            assert alg.is_zero_mod_serre(left * rel * right)


def test_normal_form_is_idempotent_projection():
    alg = shared_alg()
    rng = random.Random(13)
    for _ in range(25):
        x = random_elem(rng)
        nx = alg.normal_form(x)
        assert alg.normal_form(nx) == nx
        assert alg.is_zero_mod_serre(x - nx)


def test_dimensions_match_kostant_partition_counts():
    alg = shared_alg()
    for abc in contents_up_to(8):
        assert alg.dim(abc) == kostant(abc), abc


def test_basis_words_closed_under_tail_removal():
    # The module layer peels one letter at a time off basis words, so the
    # tail of every basis word must itself be a basis word.
    alg = shared_alg()
    for abc in contents_up_to(6):
        for w in alg.basis_words(abc):
            if w:
                assert w[1:] in alg.basis_words(word_content(w[1:]))


def test_degree_bound_is_enforced():
    alg = NegativeAlgebra(F, degree_bound=3)
    assert alg.dim((1, 1, 1)) == kostant((1, 1, 1))
    with pytest.raises(ValueError, match="degree bound exceeded"):
        alg.rules((2, 2, 0))


# -- composites ---------------------------------------------------------------

def test_composites_have_expected_weights():
    alg = shared_alg()
    comp = composites(alg)
    expected = {
        "f12": (1, 1, 0), "f23": (0, 1, 1), "fdelta": (0, 2, 1),
        "fxi": (1, 1, 1), "ftheta": (1, 2, 1), "fthetabar": (1, 2, 1),
    }
    for name, abc in expected.items():
        assert comp[name].content() == abc
        assert not alg.is_zero_mod_serre(comp[name])
    assert alg.normal_form(comp["ftheta"]) != alg.normal_form(comp["fthetabar"])


# -- the left ideal J -----------------------------------------------------------

def test_left_ideal_membership_basics():
    alg = shared_alg()
    f1, f2, f3 = alg.gen(1), alg.gen(2), alg.gen(3)
    comp = composites(alg)
    assert alg.in_left_ideal(f1)
    assert alg.in_left_ideal(f3)
    assert alg.in_left_ideal(comp["fdelta"])
    assert not alg.in_left_ideal(f2)
    assert alg.in_left_ideal(f2 * f1)
    assert not alg.in_left_ideal(f1 * f2)
    assert not alg.in_left_ideal(f3 * f2)
    assert not alg.in_left_ideal(comp["ftheta"])


def test_left_ideal_dimensions():
    alg = shared_alg()
    assert alg.j_dim((1, 0, 0)) == 1
    assert alg.j_dim((0, 1, 0)) == 0
    assert alg.j_dim((0, 1, 1)) == 1
    # at weight 2*alpha2+alpha3 the quotient keeps exactly the fdelta line
    assert alg.dim((0, 2, 1)) - alg.j_dim((0, 2, 1)) == 1


def test_reduction_mod_left_ideal_is_projection():
    alg = shared_alg()
    rng = random.Random(29)
    for _ in range(15):
        content = (rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 1))
        x = random_homogeneous_elem(rng, content)
        if not x:
            continue
        r = alg.reduce_mod_left_ideal(x)
        if r:
            assert alg.reduce_mod_left_ideal(r) == r
        assert alg.in_left_ideal(x - r)


# -- the identity catalog ---------------------------------------------------------

def test_catalog_holds_exactly():
    records, _ = run_catalog(F)
    failed = [r["name"] for r in records if not r["holds"]]
    assert failed == []
    assert len(records) == 45


def test_catalog_solved_units():
    records, _ = run_catalog(F)
    by_name = {r["name"]: r for r in records}
    assert by_name["f1_fdelta_solve"]["detail"] == "a=q b=q^-1"
    assert by_name["theta_combo_unit_solve"]["detail"] == "c=q^-1"
    assert by_name["theta_combo_alt_variant"]["detail"] == \
        "q*ftheta+fthetabar in J: False"
    for k in range(1, 5):
        assert by_name[f"f1_through_f2pow_{k}"]["detail"] == "level=serre"
    assert by_name["f3_through_f2pow_1"]["detail"] == "level=serre"
    for k in range(2, 5):
        assert by_name[f"f3_through_f2pow_{k}"]["detail"] == "level=ideal"


def test_catalog_holds_at_probe_point():
    records, _ = run_catalog(ProbeField(GaussRat(7, 0, 3)))
    failed = [r["name"] for r in records if not r["holds"]]
    assert failed == []
