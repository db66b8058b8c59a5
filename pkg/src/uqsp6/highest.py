"""Truncated highest-weight modules with exact lowering and raising actions.

A truncation stores, per weight offset nu (alpha-coordinates of the drop below
the highest weight, up to a height bound N), a basis of reduced monomial
labels: the normal-form basis words of the lowering subalgebra, or a subset of
them for quotient modules.  Lowering generators act by prepending a letter and
re-normalizing; raising generators act through the memoized recursion

    e_i (f_j w) = f_j (e_i w) + delta_ij [h_i] w,

with the Cartan bracket evaluated at the weight of w, so only the pairing
oracle q^(hw, .) of the highest weight is ever needed.  Cartan elements act
weight-wise: q^{h} on the nu-offset space is the unit q^(hw - nu, .).

The contravariant bilinear form is generated from <1, 1> = 1 by

    <f_i u, v> = -q^{-(hw - nu + alpha_i, alpha_i)} <u, e_i v>,

which is the recursion induced by the raising-lowering transpose
f_i |-> -q^{-h_i} e_i.  Quotients by singular vectors inherit the form on
representative words because the generated submodule pairs to zero.

Quotient modules are realized weight-by-weight: the generated submodule is
spanned by letter-prefixed images of its own lower components plus the
defining singular vectors, triangularized against the lexicographic word
order; surviving (non-pivot) words label the quotient basis, and projection
is reduction against the pivot rows.
"""

from __future__ import annotations

import random

from .rootsys import (
    ALPHA,
    DELTA,
    cartan_bracket,
    dot,
    eps_coords,
    height_alpha,
    kostant,
    lambda_pairing,
    norm2,
    wadd,
    weight_text,
    wsub,
)
from .scalars import ExactField
from .uqneg import (
    AlgElem,
    NegativeAlgebra,
    _insert_rule,
    _reduce_against,
    composites,
    raising_words,
    word_content,
)

__all__ = [
    "ModuleVector", "VermaTruncation", "QuotientTruncation",
    "build_verma", "quotient_by_singulars", "pseudo_parabolic",
    "base_module", "singular_vectors", "levi_singular_vectors",
    "character", "char_product_formula",
    "y_basis", "y_label_count", "mixed_identity_check", "weight_oracle",
    "kernel_basis",
]


def weight_oracle(field, eps=(0, 0, 0), plus_lambda=False):
    """Pairing oracle g -> q^(hw, g) for hw = eps [+ lambda]."""
    def pair(g):
        u = field.qpow(dot(eps, g))
        if plus_lambda:
            u = u * lambda_pairing(field, g)
        return u
    return pair


def _acc(out, w, c):
    v = out.get(w)
    nv = c if v is None else v + c
    if nv:
        out[w] = nv
    elif v is not None:
        del out[w]


class ModuleVector:
    """A weight vector of a truncation: offset below the highest weight plus
    exact coordinates on that offset's basis words (zeros never stored)."""

    __slots__ = ("module", "offset", "coords")

    def __init__(self, module, offset, coords):
        self.module = module
        self.offset = tuple(offset)
        self.coords = {w: c for w, c in coords.items() if c}

    def is_zero(self):
        return not self.coords

    def __bool__(self):
        return bool(self.coords)

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return (self.module is other.module and self.offset == other.offset
                and self.coords == other.coords)

    def __add__(self, other):
        if other.module is not self.module or other.offset != self.offset:
            raise ValueError("vectors live in different weight spaces")
        out = dict(self.coords)
        for w, c in other.coords.items():
            _acc(out, w, c)
        return ModuleVector(self.module, self.offset, out)

    def __sub__(self, other):
        return self + other.scaled(-self.module.field.one)

    def scaled(self, scalar):
        return ModuleVector(self.module, self.offset,
                            {w: c * scalar for w, c in self.coords.items()})

    def __repr__(self):
        terms = ", ".join(f"{w or '1'}:{c!r}" for w, c in sorted(self.coords.items()))
        return f"ModuleVector({weight_text(self.offset)}, {terms or '0'})"


class _Truncation:
    """Shared weight-graded machinery for Verma truncations and quotients."""

    def __init__(self, alg, pairing, height_bound, label):
        self.alg = alg
        self.field = alg.field
        self.pair = pairing
        self.height_bound = height_bound
        self.label = label
        self.notes = []
        self._gram = {}

    # -- basis bookkeeping ---------------------------------------------------

    def _check_offset(self, offset):
        if min(offset) < 0:
            return False
        if height_alpha(offset) > self.height_bound:
            raise ValueError("degree bound exceeded")
        return True

    def dim(self, offset):
        return len(self.basis(offset))

    def vector(self, offset, coords):
        return ModuleVector(self, tuple(offset), coords)

    def highest_vector(self):
        return self.vector((0, 0, 0), {"": self.field.one})

    # -- generator actions ------------------------------------------------------

    def weight_unit(self, g, offset):
        """q^(hw - nu, g) for an eps-integral g: the Cartan action."""
        return self.pair(g) * self.field.qpow(-dot(eps_coords(offset), g))

    def h_bracket(self, i, offset):
        """[h_i] = (q^{h_i} - q^{-h_i})/(q - q^-1) at the offset's weight."""
        return cartan_bracket(self.field, self.weight_unit(ALPHA[i - 1], offset))

    def apply_f(self, i, vec):
        offset = wadd(vec.offset, _EI[i - 1])
        self._check_offset(offset)
        return self.vector(offset, self._f_raw(i, vec.coords))

    def apply_e(self, i, vec):
        # zero vectors keep their (possibly out-of-cone) offset so that sums
        # of operator compositions stay weight-consistent
        offset = wsub(vec.offset, _EI[i - 1])
        if min(offset) < 0:
            return self.vector(offset, {})
        return self.vector(offset, self._e_raw(i, vec.offset, vec.coords))

    def apply_lowering(self, x, vec):
        """Act by a free lowering-word element (letters are f-generators)."""
        rc = x.content()
        if rc is None:
            return self.vector(vec.offset, {})
        offset = wadd(vec.offset, rc)
        self._check_offset(offset)
        out = {}
        for word, c in x.terms.items():
            cur = {w: cv * c for w, cv in vec.coords.items()}
            for letter in reversed(word):
                cur = self._f_raw(int(letter), cur)
            for w, cv in cur.items():
                _acc(out, w, cv)
        return self.vector(offset, out)

    def apply_raising(self, x, vec):
        """Act by a raising-word element (letters are e-generators)."""
        rc = x.content()
        if rc is None:
            return self.vector(vec.offset, {})
        final = wsub(vec.offset, rc)
        out = {}
        for word, c in x.terms.items():
            offset = vec.offset
            cur = {w: cv * c for w, cv in vec.coords.items()}
            for letter in reversed(word):
                i = int(letter)
                noff = wsub(offset, _EI[i - 1])
                cur = self._e_raw(i, offset, cur) if min(noff) >= 0 else {}
                offset = noff
                if not cur:
                    break
            for w, cv in cur.items():
                _acc(out, w, cv)
        return self.vector(final, out)

    # -- matrices between weight spaces --------------------------------------------

    def e_matrix(self, i, offset):
        """Columns: e_i images of the offset's basis words, as coordinate dicts."""
        return [self._e_raw(i, offset, {w: self.field.one})
                for w in self.basis(offset)]

    def f_matrix(self, i, offset):
        return [self._f_raw(i, {w: self.field.one}) for w in self.basis(offset)]

    # -- contravariant form -------------------------------------------------------

    def gram_matrix(self, offset):
        """The contravariant Gram matrix on the offset's basis words."""
        offset = tuple(offset)
        got = self._gram.get(offset)
        if got is not None:
            return got
        B = self.basis(offset)
        if offset == (0, 0, 0):
            G = [[self.field.one]]
            self._gram[offset] = G
            return G
        G = [[None] * len(B) for _ in B]
        ecols = {}
        for s, ws in enumerate(B):
            j = int(ws[0])
            tail = ws[1:]
            sub = wsub(offset, _EI[j - 1])
            lower = self.gram_matrix(sub)
            lidx = {w: t for t, w in enumerate(self.basis(sub))}
            gj = ALPHA[j - 1]
            unit = -(self.field.one / self.pair(gj)) \
                * self.field.qpow(dot(eps_coords(offset), gj) - norm2(gj))
            if j not in ecols:
                ecols[j] = [self._e_raw(j, offset, {w: self.field.one}) for w in B]
            ti = lidx[tail]
            for t in range(len(B)):
                total = self.field.zero
                for u, c in ecols[j][t].items():
                    total = total + c * lower[ti][lidx[u]]
                G[s][t] = unit * total
        self._gram[offset] = G
        return G

    def pairing_value(self, u, v):
        """<u, v> for two vectors at the same offset."""
        if u.offset != v.offset:
            return self.field.zero
        B = self.basis(u.offset)
        idx = {w: t for t, w in enumerate(B)}
        G = self.gram_matrix(u.offset)
        total = self.field.zero
        for w1, c1 in u.coords.items():
            row = G[idx[w1]]
            for w2, c2 in v.coords.items():
                total = total + c1 * c2 * row[idx[w2]]
        return total


_EI = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
DELTA_ALPHA = (0, 2, 1)  # the doubled short root in simple-root coordinates


class VermaTruncation(_Truncation):
    """The universal highest-weight module, truncated at a height bound."""

    def __init__(self, alg, pairing, height_bound, label="verma"):
        super().__init__(alg, pairing, height_bound, label)
        self._ew = {}

    def basis(self, offset):
        offset = tuple(offset)
        if not self._check_offset(offset):
            return ()
        return self.alg.basis_words(offset)

    def _f_raw(self, i, coords):
        out = {}
        li = str(i)
        for w, c in coords.items():
            for bw, bc in self.alg._nf_word(li + w).items():
                _acc(out, bw, c * bc)
        return out

    def _e_raw(self, i, offset, coords):
        out = {}
        for w, c in coords.items():
            for bw, bc in self._e_word(i, w).items():
                _acc(out, bw, c * bc)
        return out

    def _e_word(self, i, w):
        got = self._ew.get((i, w))
        if got is not None:
            return got
        if not w:
            out = {}
        else:
            j = int(w[0])
            tail = w[1:]
            out = self._f_raw(j, self._e_word(i, tail))
            if i == j:
                b = self.h_bracket(i, word_content(tail))
                if b:
                    _acc(out, tail, b)
        self._ew[(i, w)] = out
        return out


class QuotientTruncation(_Truncation):
    """base modulo the submodule generated by singular vectors.

    The submodule component at each offset is spanned by letter-prefixed
    images of the component one step up plus the defining vectors; it is kept
    as triangular pivot rows over base coordinates, the non-pivot words label
    the quotient basis, and projection reduces against the rows.
    """

    def __init__(self, base, sing, label="quotient"):
        super().__init__(base.alg, base.pair, base.height_bound, label)
        self.base = base
        self.notes = list(base.notes)
        self._rows = {}
        self.generators = []
        for v in sing:
            if v.is_zero():
                continue
            for i in (1, 2, 3):
                image = base._e_raw(i, v.offset, v.coords) \
                    if min(wsub(v.offset, _EI[i - 1])) >= 0 else {}
                if image:
                    raise ValueError("input not singular")
            self.generators.append((v.offset, dict(v.coords)))

    def basis(self, offset):
        offset = tuple(offset)
        if not self._check_offset(offset):
            return ()
        rows = self._submodule_rows(offset)
        return tuple(w for w in self.base.basis(offset) if w not in rows)

    def _submodule_rows(self, offset):
        offset = tuple(offset)
        got = self._rows.get(offset)
        if got is not None:
            return got
        rows = {}
        for i in (1, 2, 3):
            sub = wsub(offset, _EI[i - 1])
            if min(sub) < 0:
                continue
            for lead, rhs in self._submodule_rows(sub).items():
                elem = {lead: self.field.one}
                for w, v in rhs.items():
                    elem[w] = -v
                _insert_rule(rows, self.base._f_raw(i, elem))
        for goff, coords in self.generators:
            if goff == offset:
                _insert_rule(rows, dict(coords))
        self._rows[offset] = rows
        return rows

    def project(self, offset, coords):
        cand = dict(coords)
        _reduce_against(self._submodule_rows(tuple(offset)), cand)
        return cand

    def _f_raw(self, i, coords):
        out = self.base._f_raw(i, coords)
        if not out:
            return out
        offset = word_content(next(iter(out)))
        return self.project(offset, out)

    def _e_raw(self, i, offset, coords):
        out = self.base._e_raw(i, offset, coords)
        if not out:
            return out
        return self.project(wsub(offset, _EI[i - 1]), out)

    def gram_matrix(self, offset):
        """Restriction of the base form to the surviving words: the generated
        submodule pairs to zero against everything, so the form descends."""
        offset = tuple(offset)
        got = self._gram.get(offset)
        if got is not None:
            return got
        B = self.basis(offset)
        baseB = self.base.basis(offset)
        idx = [baseB.index(w) for w in B]
        baseG = self.base.gram_matrix(offset)
        G = [[baseG[s][t] for t in idx] for s in idx]
        self._gram[offset] = G
        return G


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def build_verma(alg, eps=(0, 0, 0), plus_lambda=False, height_bound=8, label=""):
    pair = weight_oracle(alg.field, eps, plus_lambda)
    name = label or ("verma(" + weight_text(eps, plus_lambda) + ")")
    return VermaTruncation(alg, pair, height_bound, name)


def quotient_by_singulars(base, sing, label="quotient"):
    return QuotientTruncation(base, sing, label)


def base_module(alg, height_bound=8):
    """The irreducible base module: the Verma truncation at the distinguished
    non-integral highest weight modulo f1, f3 and fdelta applied to the top.

    fdelta on the top vector is NOT singular in the full Verma module — its
    e2-image is a nonzero multiple of f2 f3 on the top — but that image lies
    in the submodule generated by f3 on the top, so the quotient is taken in
    two stages with the Chevalley pair first.
    """
    verma = build_verma(alg, (0, 0, 0), True, height_bound, "verma(lambda)")
    top = verma.highest_vector()
    partial = quotient_by_singulars(
        verma, [verma.apply_f(1, top), verma.apply_f(3, top)], "M-partial")
    comp = composites(alg)
    gen = partial.apply_lowering(comp["fdelta"], partial.highest_vector())
    return quotient_by_singulars(partial, [gen], "M")


def pseudo_parabolic(alg, triple, height_bound=6):
    """The pseudo-parabolic quotient for a non-negative integer triple.

    Builds the Verma truncation at the shifted highest weight, quotients by
    the two Chevalley-power singular vectors, then solves for the singular
    vector in the doubled-short-root direction inside the partial quotient
    and quotients once more.  When that direction's expected offset lies
    beyond the height bound the last step contributes nothing below the
    bound; a note records the omission.
    """
    i1, i2, i3 = triple
    if min(triple) < 0:
        raise ValueError("pseudo-parabolic labels must be non-negative")
    # hw = the distinguished weight + i1*mu1 + i2*mu2 + i3*mu3, eps-coords
    shift = (i1 + i2, i2, i3)
    verma = build_verma(alg, shift, True, height_bound,
                        f"verma(lambda+{shift})")
    top = verma.highest_vector()
    v1 = top
    for _ in range(i1 + 1):
        v1 = verma.apply_f(1, v1)
    v3 = top
    for _ in range(i3 + 1):
        v3 = verma.apply_f(3, v3)
    label = f"Mtilde{tuple(triple)}"
    partial = quotient_by_singulars(verma, [v1, v3], label)
    delta_offset = tuple((i2 + 1) * x for x in DELTA_ALPHA)
    if height_alpha(delta_offset) > height_bound:
        partial.notes.append(
            "doubled-short-root singular vector at offset "
            + weight_text(delta_offset)
            + " lies beyond the height bound; quotient unaffected below it")
        return partial
    sols = singular_vectors(partial, delta_offset)
    if not sols:
        raise ValueError("no singular vector at expected weight")
    if len(sols) > 1:
        raise ValueError("singular space dimension > 1")
    return quotient_by_singulars(partial, sols, label)


# ---------------------------------------------------------------------------
# singular vectors, characters
# ---------------------------------------------------------------------------

def kernel_basis(field, rows, ncols):
    """Kernel of the matrix with the given rows, as coordinate lists."""
    zero, one = field.zero, field.one
    pivots = {}  # column -> fully reduced pivot row
    for r in rows:
        r = list(r)
        for col, piv in pivots.items():
            c = r[col]
            if c:
                for t in range(ncols):
                    r[t] = r[t] - c * piv[t]
        lead = next((t for t in range(ncols) if r[t]), None)
        if lead is None:
            continue
        inv = one / r[lead]
        r = [x * inv for x in r]
        for piv in pivots.values():
            c = piv[lead]
            if c:
                for t in range(ncols):
                    piv[t] = piv[t] - c * r[t]
        pivots[lead] = r
    out = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [zero] * ncols
        v[free] = one
        for col, piv in pivots.items():
            if piv[free]:
                v[col] = -piv[free]
        out.append(v)
    return out


def singular_vectors(m, offset):
    """Basis of the joint raising-kernel in the offset's weight space."""
    offset = tuple(offset)
    B = m.basis(offset)
    if not B:
        return []
    if offset == (0, 0, 0):
        return [m.highest_vector()]
    rows = []
    for i in (1, 2, 3):
        sub = wsub(offset, _EI[i - 1])
        if min(sub) < 0:
            continue
        target = m.basis(sub)
        cols = [m._e_raw(i, offset, {w: m.field.one}) for w in B]
        for tw in target:
            rows.append([col.get(tw, m.field.zero) for col in cols])
    out = []
    for v in kernel_basis(m.field, rows, len(B)):
        out.append(m.vector(offset, {w: c for w, c in zip(B, v) if c}))
    return out


def levi_singular_vectors(m, offset):
    """Basis of the kernel of the two outer raising operators (e1 and e3)
    in the offset's weight space.  Strictly weaker than singular_vectors:
    such a vector can still be moved by e2, e.g. the theta-offset vector of
    the base module."""
    offset = tuple(offset)
    B = m.basis(offset)
    if not B:
        return []
    rows = []
    for i in (1, 3):
        sub = wsub(offset, _EI[i - 1])
        if min(sub) < 0:
            continue
        target = m.basis(sub)
        cols = [m._e_raw(i, offset, {w: m.field.one}) for w in B]
        for tw in target:
            rows.append([col.get(tw, m.field.zero) for col in cols])
    out = []
    for v in kernel_basis(m.field, rows, len(B)):
        out.append(m.vector(offset, {w: c for w, c in zip(B, v) if c}))
    return out


def character(m, height_bound=None):
    """Weight-space dimensions as a map offset -> positive integer."""
    N = m.height_bound if height_bound is None else height_bound
    out = {}
    for offset in _offsets_to(N):
        d = m.dim(offset)
        if d:
            out[offset] = d
    return out


def char_product_formula(height_bound=8):
    """Coefficients of prod (1 - x^alpha)^-1 over the four non-Levi positive
    roots {e1-e3, e1+e3, e2-e3, e2+e3}, by offset up to the height bound."""
    roots = ((1, 1, 0), (1, 1, 1), (0, 1, 0), (0, 1, 1))

    def count(offset, k):
        if offset == (0, 0, 0):
            return 1
        if k < 0 or min(offset) < 0:
            return 0
        r = roots[k]
        total = 0
        cur = offset
        while min(cur) >= 0:
            total += count(cur, k - 1)
            cur = wsub(cur, r)
        return total

    out = {}
    for offset in _offsets_to(height_bound):
        c = count(offset, len(roots) - 1)
        if c:
            out[offset] = c
    return out


def _offsets_to(N):
    for h in range(N + 1):
        for a in range(h + 1):
            for b in range(h + 1 - a):
                yield (a, b, h - a - b)


def y_label_count(offset):
    """#{(i,j,l,k): i,j <= l, i*alpha1 + j*alpha3 + l*alpha2 + k*theta = offset}."""
    a, b, c = offset
    total = 0
    for k in range(min(a, c) + 1):
        i = a - k
        j = c - k
        l = b - 2 * k
        if l >= 0 and i <= l and j <= l:
            total += 1
    return total


def y_basis(m, l, k, i=0, j=0):
    """The image of f1^i f3^j f2^l ftheta^k applied to the top of M."""
    if i > l or j > l:
        raise ValueError("y-vector labels require i, j <= l")
    comp = composites(m.alg)
    x = AlgElem.unit(m.field)
    f1, f3, f2 = m.alg.gen(1), m.alg.gen(3), m.alg.gen(2)
    for _ in range(i):
        x = x * f1
    for _ in range(j):
        x = x * f3
    for _ in range(l):
        x = x * f2
    for _ in range(k):
        x = x * comp["ftheta"]
    return m.apply_lowering(x, m.highest_vector())


# ---------------------------------------------------------------------------
# mixed raising/lowering identity checks
# ---------------------------------------------------------------------------

MIXED_KEYS = (
    "e2_fxi_commute",
    "exi_f2_commute",
    "exi_fxi_cartan",
    "u_m_power_1",
    "u_m_power_2",
    "e1_ftheta",
    "e3_ftheta",
    "e2_action_coeffs",
)


def _random_dominant(rng):
    h3 = rng.randint(0, 3)
    h2 = h3 + rng.randint(0, 3)
    h1 = h2 + rng.randint(0, 3)
    return (h1, h2, h3)


def mixed_identity_check(key, field=None, seed=2024, verbose=False):
    """Verify one keyed raising/lowering identity as operators on Verma
    truncations at three random integral dominant highest weights and at the
    distinguished non-integral weight; returns a report dict."""
    if key not in MIXED_KEYS:
        raise KeyError(f"unknown mixed identity key: {key}")
    field = field or ExactField()
    alg = NegativeAlgebra(field)
    rng = random.Random(seed)
    hws = []
    while len(hws) < 3:
        hw = _random_dominant(rng)
        if hw not in hws:
            hws.append(hw)
    modules = [build_verma(alg, hw, False, 5, f"verma{hw}") for hw in hws]
    modules.append(build_verma(alg, (0, 0, 0), True, 5, "verma(lambda)"))
    details = []
    holds = True
    for mod in modules:
        ok, msg = _check_mixed_on(key, alg, mod, field)
        holds = holds and ok
        details.append(f"{mod.label}: {msg}")
    return {"key": key, "holds": holds, "detail": "; ".join(details)}


def _offsets_in(mod, max_height):
    return [o for o in _offsets_to(min(max_height, mod.height_bound))]


def _op_equal_on(mod, offsets, lhs, rhs):
    """Compare two vector-valued operators on every basis vector."""
    for off in offsets:
        for w in mod.basis(off):
            v = mod.vector(off, {w: mod.field.one})
            a, b = lhs(v), rhs(v)
            if a.coords != b.coords or (a.coords and a.offset != b.offset):
                return False, f"differs at {weight_text(off)} on {w or '1'}"
    return True, "holds"


def _check_mixed_on(key, alg, mod, F):
    comp = composites(alg)
    up = raising_words(F)
    exi, etheta = up["exi"], up["etheta"]
    fxi, ftheta, fdelta = comp["fxi"], comp["ftheta"], comp["fdelta"]
    one = F.one

    def e(i, v):
        return mod.apply_e(i, v)

    def f_elem(x, v):
        return mod.apply_lowering(x, v)

    def e_elem(x, v):
        return mod.apply_raising(x, v)

    if key == "e2_fxi_commute":
        offsets = _offsets_in(mod, mod.height_bound - 3)
        return _op_equal_on(mod, offsets,
                            lambda v: e(2, f_elem(fxi, v)),
                            lambda v: f_elem(fxi, e(2, v)))
    if key == "exi_f2_commute":
        offsets = _offsets_in(mod, mod.height_bound - 1)
        return _op_equal_on(mod, offsets,
                            lambda v: e_elem(exi, mod.apply_f(2, v)),
                            lambda v: mod.apply_f(2, e_elem(exi, v)))
    if key == "exi_fxi_cartan":
        xi_eps = (1, 0, 1)
        offsets = _offsets_in(mod, mod.height_bound - 3)

        def rhs(v):
            u = mod.weight_unit(xi_eps, v.offset)
            return v.scaled(F.qint(2) * cartan_bracket(F, u))

        return _op_equal_on(mod, offsets,
                            lambda v: e_elem(exi, f_elem(fxi, v))
                            - f_elem(fxi, e_elem(exi, v)),
                            rhs)
    if key in ("u_m_power_1", "u_m_power_2"):
        # the printed form of this identity lacks the trailing Cartan factor;
        # the engine-derived operator identity is
        #     [e2, ftheta^k] = [k]_q fxi ftheta^(k-1) q^{-h2}
        k = 1 if key.endswith("1") else 2
        # k = 1: offsets up to height 3 need bound 7; k = 2: top vector only
        bound = 7 if k == 1 else 8
        if mod.height_bound < bound:
            mod = VermaTruncation(alg, mod.pair, bound, mod.label + "-tall")
        offsets = _offsets_in(mod, 3) if k == 1 else [(0, 0, 0)]
        fthk = _elem_power(ftheta, k)
        fthk1 = _elem_power(ftheta, k - 1)

        def lhs(v):
            return e(2, f_elem(fthk, v)) - f_elem(fthk, e(2, v))

        def rhs(v):
            u = F.one / mod.weight_unit(ALPHA[1], v.offset)
            return f_elem(fxi, f_elem(fthk1, v)).scaled(F.qint(k) * u)

        ok, msg = _op_equal_on(mod, offsets, lhs, rhs)
        if ok:
            msg = "holds with trailing q^{-h2} (bare printed form fails)"
        return ok, msg
    if key == "e1_ftheta":
        offsets = _offsets_in(mod, mod.height_bound - 4)

        def rhs(v):
            u = mod.weight_unit(ALPHA[0], v.offset)
            return f_elem(fdelta, v).scaled(u)

        return _op_equal_on(mod, offsets,
                            lambda v: e(1, f_elem(ftheta, v))
                            - f_elem(ftheta, e(1, v)),
                            rhs)
    if key == "e3_ftheta":
        offsets = _offsets_in(mod, mod.height_bound - 4)
        return _op_equal_on(mod, offsets,
                            lambda v: e(3, f_elem(ftheta, v)),
                            lambda v: f_elem(ftheta, e(3, v)))
    if key == "e2_action_coeffs":
        return _solve_e2_action(alg, mod, F)
    raise AssertionError(key)


def _elem_power(x, n):
    out = AlgElem.unit(x.field)
    for _ in range(n):
        out = out * x
    return out


def _solve_e2_action(alg, mod, F):
    """Solve e2 f2^l ftheta^k top = A f2^(l-1) ftheta^k top
                                   + B f2^l fxi ftheta^(k-1) top
    in the base-module quotient over the given highest weight, and compare A
    against the two printed candidates (see the project ledger)."""
    comp = composites(alg)
    ftheta, fxi = comp["ftheta"], comp["fxi"]
    f2 = alg.gen(2)
    if isinstance(mod, VermaTruncation):
        # the identity lives in the quotient by f1, f3, fdelta at the top,
        # and the higher cells need height 7
        tall = VermaTruncation(alg, mod.pair, max(7, mod.height_bound),
                               mod.label + "-tall")
        top = tall.highest_vector()
        try:
            partial = quotient_by_singulars(
                tall, [tall.apply_f(1, top), tall.apply_f(3, top)], "partial")
            gen = partial.apply_lowering(comp["fdelta"],
                                         partial.highest_vector())
            mod = quotient_by_singulars(partial, [gen], tall.label + "/J")
        except ValueError:
            return True, "skipped: defining vectors not singular at this weight"
    results = []
    ok = True
    for l, k in ((1, 1), (2, 1), (3, 1)):
        if l + 4 * k > mod.height_bound:
            continue
        top = mod.highest_vector()
        base = mod.apply_lowering(_elem_power(f2, l) * _elem_power(ftheta, k), top)
        lhs = mod.apply_e(2, base)
        t1 = mod.apply_lowering(_elem_power(f2, l - 1) * _elem_power(ftheta, k), top)
        t2 = mod.apply_lowering(
            _elem_power(f2, l) * fxi * _elem_power(ftheta, k - 1), top)
        sol = _solve_pair(mod, lhs, t1, t2)
        if sol is None:
            ok = False
            results.append(f"(l={l},k={k}): unsolvable")
            continue
        A, B = sol
        lam2_like = _lambda2_bracket(mod, F, l + k - 1)
        lam3_like = -F.qint(l + k)
        tagA = "lambda2-style" if A == F.qint(l) * lam2_like else (
            "lambda3-style" if A == F.qint(l) * lam3_like else "neither")
        results.append(
            f"(l={l},k={k}): A matches {tagA}, B={_txt(B)}")
        if tagA == "neither":
            ok = False
    return ok, "; ".join(results) if results else "no cells within bound"


def _lambda2_bracket(mod, F, m):
    """[ (hw, alpha2^vee) - m ]_q evaluated through the pairing oracle."""
    unit = mod.pair(ALPHA[1]) * F.qpow(-m)
    return cartan_bracket(F, unit)


def _solve_pair(mod, target, t1, t2):
    words = sorted(set(target.coords) | set(t1.coords) | set(t2.coords))
    zero = mod.field.zero
    rows = [(t1.coords.get(w, zero), t2.coords.get(w, zero),
             target.coords.get(w, zero)) for w in words]
    piv = next((r for r in rows if r[0]), None)
    if piv is None:
        return None
    red = [(r[1] - piv[1] * r[0] / piv[0], r[2] - piv[2] * r[0] / piv[0])
           for r in rows]
    pivb = next((r for r in red if r[0]), None)
    if pivb is None:
        return None
    B = pivb[1] / pivb[0]
    A = (piv[2] - B * piv[1]) / piv[0]
    for r in rows:
        if r[2] != A * r[0] + B * r[1]:
            return None
    return A, B


def _txt(x):
    return x.to_text() if hasattr(x, "to_text") else repr(x)
