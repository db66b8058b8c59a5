"""Tests for weight-graded Verma truncations, their quotients, and the base
module: generator actions, singular vectors, characters, the y-vectors, the
contravariant form, and the keyed mixed identities."""

from functools import lru_cache

import pytest

from uqsp6.rootsys import height_alpha, kostant
from uqsp6.scalars import ExactField
from uqsp6.uqneg import NegativeAlgebra, composites
from uqsp6.highest import (
    DELTA_ALPHA,
    MIXED_KEYS,
    base_module,
    build_verma,
    char_product_formula,
    character,
    kernel_basis,
    levi_singular_vectors,
    mixed_identity_check,
    pseudo_parabolic,
    quotient_by_singulars,
    singular_vectors,
    y_basis,
    y_label_count,
)

F = ExactField()

THETA_OFFSET = (1, 2, 1)


@lru_cache(maxsize=None)
def shared_alg():
    return NegativeAlgebra(F)


@lru_cache(maxsize=None)
def verma_lam(bound=5):
    return build_verma(shared_alg(), (0, 0, 0), True, bound, "verma(lambda)")


@lru_cache(maxsize=None)
def base_m(bound=7):
    return base_module(shared_alg(), height_bound=bound)


def offsets_up_to(height):
    out = []
    for a in range(height + 1):
        for b in range(height + 1 - a):
            for c in range(height + 1 - a - b):
                out.append((a, b, c))
    return out


def lam2_bracket():
    # [lambda_2]_q with q^{lambda_2} = iota/q
    return F.iota() * (F.qpow(1) + F.qpow(-1)) / (F.qpow(1) - F.qpow(-1))


# -- Verma truncations --------------------------------------------------------

def test_verma_dims_match_kostant():
    v = verma_lam()
    assert v.dim((0, 0, 0)) == 1
    assert v.dim((0, 1, 0)) == 1
    for off in offsets_up_to(4):
        assert v.dim(off) == kostant(off)


def test_e2_on_f2_top_is_lambda2_bracket():
    v = verma_lam()
    got = v.apply_e(2, v.apply_f(2, v.highest_vector()))
    assert got.offset == (0, 0, 0)
    assert got.coords == {"": lam2_bracket()}


def test_lambda_cartan_units():
    v = verma_lam()
    alpha = ((1, -1, 0), (0, 1, -1), (0, 0, 2))
    top = (0, 0, 0)
    assert v.weight_unit(alpha[0], top) == F.one
    assert v.weight_unit(alpha[1], top) == F.iota() * F.qpow(-1)
    assert v.weight_unit(alpha[2], top) == F.one


def test_ef_commutator_matrices():
    for mod in (verma_lam(), build_verma(shared_alg(), (3, 2, 1), False, 4, "")):
        for off in offsets_up_to(2):
            for w in mod.basis(off):
                vec = mod.vector(off, {w: F.one})
                for i in (1, 2, 3):
                    for j in (1, 2, 3):
                        got = mod.apply_e(i, mod.apply_f(j, vec)) \
                            - mod.apply_f(j, mod.apply_e(i, vec))
                        want = vec.scaled(mod.h_bracket(i, off)) if i == j \
                            else vec.scaled(F.zero)
                        assert got.coords == want.coords, (mod.label, off, w, i, j)


def apply_e_word(mod, word, vec):
    for letter in reversed(word):
        vec = mod.apply_e(int(letter), vec)
    return vec


# coefficient level is q for the short simple roots and q^2 for the long one
E_SERRE = (
    ((F.one, "112"), (-F.qint(2), "121"), (F.one, "211")),
    ((F.one, "221"), (-F.qint(2), "212"), (F.one, "122")),
    ((F.one, "2223"), (-F.qint(3), "2232"), (F.qint(3), "2322"), (-F.one, "3222")),
    ((F.one, "332"), (-(F.qpow(2) + F.qpow(-2)), "323"), (F.one, "233")),
    ((F.one, "13"), (-F.one, "31")),
)


def test_e_serre_relations_as_operators():
    for mod in (verma_lam(), build_verma(shared_alg(), (4, 2, 1), False, 5, "")):
        offsets = [o for o in offsets_up_to(5) if height_alpha(o) >= 4]
        for rel in E_SERRE:
            for off in offsets:
                for w in mod.basis(off):
                    vec = mod.vector(off, {w: F.one})
                    total = {}
                    for c, word in rel:
                        img = apply_e_word(mod, word, vec)
                        for bw, bc in img.coords.items():
                            nv = total.get(bw, F.zero) + bc * c
                            if nv:
                                total[bw] = nv
                            elif bw in total:
                                del total[bw]
                    assert not total, (mod.label, rel, off, w)


# -- the base module ----------------------------------------------------------

def test_fdelta_top_not_singular_in_full_verma():
    # e2 (fdelta.1) = -i(q^2 - q^-2) f2 f3 . 1 != 0: the delta-direction
    # vector is singular only after the Chevalley quotient, so a one-stage
    # quotient by all three directions must be rejected.
    v = verma_lam()
    top = v.highest_vector()
    comp = composites(shared_alg())
    fd = v.apply_lowering(comp["fdelta"], top)
    got = v.apply_e(2, fd)
    want = v.apply_f(2, v.apply_f(3, top)) \
        .scaled(-F.iota() * (F.qpow(2) - F.qpow(-2)))
    assert got.coords == want.coords
    assert got.coords  # nonzero
    with pytest.raises(ValueError, match="input not singular"):
        quotient_by_singulars(v, [v.apply_f(1, top), v.apply_f(3, top), fd])


def test_base_module_dims():
    m = base_m()
    assert m.dim((0, 0, 0)) == 1
    assert m.dim((1, 0, 0)) == 0  # f1-direction killed
    assert m.dim((0, 1, 0)) == 1
    assert m.dim(DELTA_ALPHA) == 1  # f2^2-descendant survives, fdelta killed
    alg = shared_alg()
    for off in offsets_up_to(5):
        assert m.dim(off) == alg.dim(off) - alg.j_dim(off), off


def test_character_matches_product_formula():
    m = base_m()
    want = char_product_formula(6)
    assert character(m, 6) == want
    assert want[(0, 0, 0)] == 1
    assert want[THETA_OFFSET] == 2


def test_y_label_count_matches_dims():
    m = base_m()
    for off in offsets_up_to(6):
        assert y_label_count(off) == m.dim(off), off


def test_y_basis_examples():
    m = base_m()
    top = y_basis(m, 0, 0)
    assert top.offset == (0, 0, 0) and top.coords == {"": F.one}
    v = y_basis(m, 1, 0, i=1, j=1)  # f1 f3 f2 . 1
    assert not v.is_zero()
    with pytest.raises(ValueError, match="i, j <= l"):
        y_basis(m, 0, 1, i=1)


def test_singular_scan_empty_below_top():
    m = base_m()
    assert singular_vectors(m, (0, 0, 0)) == [m.highest_vector()]
    for off in offsets_up_to(5):
        if off == (0, 0, 0):
            continue
        assert singular_vectors(m, off) == [], off


def test_theta_vector_levi_invariant_but_not_singular():
    m = base_m()
    ft = y_basis(m, 0, 1)  # ftheta . 1
    assert not ft.is_zero()
    assert m.apply_e(1, ft).is_zero()
    assert m.apply_e(3, ft).is_zero()
    comp = composites(shared_alg())
    fxi1 = m.apply_lowering(comp["fxi"], m.highest_vector())
    got = m.apply_e(2, ft)
    assert got.coords == fxi1.scaled(-F.iota() * F.qpow(1)).coords
    assert got.coords  # e2 moves it: not singular
    levi = levi_singular_vectors(m, THETA_OFFSET)
    assert len(levi) == 1


def test_levi_invariant_family():
    m = base_m()
    for l in range(8):
        for k in range(2):
            if l + 4 * k > m.height_bound or (l, k) == (0, 0):
                continue
            v = y_basis(m, l, k)
            assert not v.is_zero(), (l, k)
            assert m.apply_e(1, v).is_zero(), (l, k)
            assert m.apply_e(3, v).is_zero(), (l, k)


def test_theta_vector_normalizes_the_ideal():
    m = base_m()
    ft = y_basis(m, 0, 1)
    comp = composites(shared_alg())
    assert m.apply_f(1, ft).is_zero()
    assert m.apply_f(3, ft).is_zero()
    assert m.apply_lowering(comp["fdelta"], ft).is_zero()


# -- pseudo-parabolic family ----------------------------------------------------

def test_delta_solver_inside_partial_quotient():
    v = verma_lam()
    top = v.highest_vector()
    partial = quotient_by_singulars(
        v, [v.apply_f(1, top), v.apply_f(3, top)], "partial")
    sols = singular_vectors(partial, DELTA_ALPHA)
    assert len(sols) == 1
    comp = composites(shared_alg())
    fd = partial.apply_lowering(comp["fdelta"], partial.highest_vector())
    # same line: cross-multiplied coordinates agree
    (sv,) = sols
    words = sorted(set(sv.coords) | set(fd.coords))
    assert len(words) >= 2
    w0 = words[0]
    for w in words[1:]:
        lhs = sv.coords.get(w, F.zero) * fd.coords.get(w0, F.zero)
        rhs = fd.coords.get(w, F.zero) * sv.coords.get(w0, F.zero)
        assert lhs == rhs, w


def test_pseudo_parabolic_zero_triple_is_base_module():
    m = base_m()
    p = pseudo_parabolic(shared_alg(), (0, 0, 0), height_bound=5)
    for off in offsets_up_to(5):
        assert p.dim(off) == m.dim(off), off
    assert p.gram_matrix(DELTA_ALPHA) == m.gram_matrix(DELTA_ALPHA)


def test_pseudo_parabolic_first_label():
    p = pseudo_parabolic(shared_alg(), (1, 0, 0), height_bound=5)
    assert p.dim((1, 0, 0)) == 1  # f1 . top survives: the relation is f1^2
    assert p.dim((2, 0, 0)) == 0


def test_pseudo_parabolic_beyond_truncation_note():
    p = pseudo_parabolic(shared_alg(), (0, 2, 0), height_bound=4)
    assert p.notes
    assert "beyond the height bound" in p.notes[-1]


# -- contravariant form ----------------------------------------------------------

def test_gram_symmetric_and_top_normalized():
    v = verma_lam()
    assert v.gram_matrix((0, 0, 0)) == [[F.one]]
    for off in offsets_up_to(4):
        G = v.gram_matrix(off)
        n = len(G)
        for s in range(n):
            for t in range(s):
                assert G[s][t] == G[t][s], (off, s, t)


def test_gram_f2_top_value():
    m = base_m()
    G = m.gram_matrix((0, 1, 0))
    assert G == [[F.iota() * F.qpow(1) * lam2_bracket()]]


def test_gram_descends_to_quotient():
    # every submodule row pairs to zero against every surviving basis word,
    # so restricting the parent matrix is legitimate
    m = base_m(6)
    parent = m.base
    for off in offsets_up_to(4):
        rows = m._submodule_rows(off)
        if not rows:
            continue
        for lead, rhs in rows.items():
            coords = {lead: F.one}
            coords.update({w: -c for w, c in rhs.items()})
            u = parent.vector(off, coords)
            for bw in m.basis(off):
                assert parent.pairing_value(u, parent.vector(off, {bw: F.one})) \
                    == F.zero, (off, lead, bw)


def test_gram_radical_empty_small():
    m = base_m()
    for off in offsets_up_to(5):
        G = m.gram_matrix(off)
        if not G:
            continue
        assert not kernel_basis(F, G, len(G)), off


# -- mixed raising/lowering identities -------------------------------------------

def test_mixed_identities_all_hold():
    for key in MIXED_KEYS:
        rep = mixed_identity_check(key)
        assert rep["holds"], rep
        if key.startswith("u_m_power"):
            assert "q^{-h2}" in rep["detail"]
        if key == "e2_action_coeffs":
            assert "lambda2-style" in rep["detail"]
            assert "neither" not in rep["detail"]


# -- guard rails -------------------------------------------------------------------

def test_degree_bound_errors():
    m = base_m()
    with pytest.raises(ValueError, match="degree bound exceeded"):
        m.dim((m.height_bound + 1, 0, 0))
    v = verma_lam()
    with pytest.raises(ValueError, match="degree bound exceeded"):
        v.apply_f(2, v.vector((0, v.height_bound, 0), {}))
