"""The six-dimensional module, tensor products with the pseudo-parabolic
quotients, singular-vector extraction, and branching certificates.

Vectors of the six-dimensional module are maps from the labels
(-1, -2, -3, 3, 2, 1) — weights -e1, -e2, -e3, e3, e2, e1 — to scalars.
Raising generators move right along the chain

    v(-1) -e1-> v(-2) -e2-> v(-3) -e3-> v(3) -e2-> v(2) -e1-> v(1)

and lowering generators move left.  The lowering edge scalars are forced by
the raising ones through the level-1 Cartan brackets
[e_i, f_j] = delta_ij (q^{h_i} - q^{-h_i})/(q - 1/q); the leftover
rescaling freedom is fixed by picking the canonical monomial representative
iota^t q^{k/2} on each raising edge, which needs a scalar field carrying
q^{1/2}.  The contravariant form is then diagonal with value 1 below the
long edge and [2]_q above it.  Orthogonality is exact; literal unit norms
would require adjoining a square root of [2]_q, so the diagonal is recorded
instead and all downstream comparisons are taken relative to it.

Tensor vectors in V (x) M are maps label -> module vector sharing one total
weight, acted on through the coproduct

    D(e_i) = e_i (x) q^{h_i} + 1 (x) e_i,
    D(f_i) = f_i (x) 1 + q^{-h_i} (x) f_i,

and carrying the product of the two contravariant forms.  Branching
reports compare the singular vectors found by exact kernel solves against
the six-fold shift pattern of predicted summands, with the classical side
recomputed through Weyl characters of the rank-3 subgroup of signed
permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .contraform import _det
from .highest import base_module, kernel_basis, pseudo_parabolic
from .rootsys import (
    ALPHA,
    VWEIGHTS,
    alpha_coords,
    cartan_bracket,
    coroot_pair,
    dot,
    eps_coords,
    height_alpha,
    norm2,
    root_level,
    wadd,
    weight_text,
    wsub,
)
from .scalars import ExactField
from .uqneg import NegativeAlgebra, _qbinom, composites

__all__ = [
    "VLABELS", "VWEIGHT", "VEDGES", "KAPPA_RHO",
    "SixDimModule", "build_V", "v_plus", "vplus_table_check",
    "defining_relations_check",
    "TensorModule", "tensor_act",
    "xi_weight", "branch_target", "predicted_summands",
    "BranchReport", "decompose", "branch_assertions",
    "classical_char_X", "classical_branch_multiplicities",
    "CharIdentityReport", "char_identity_check",
    "ModuleBank",
]


VLABELS = (-1, -2, -3, 3, 2, 1)   # chain order, lowest weight first

VWEIGHT = {1: (1, 0, 0), 2: (0, 1, 0), 3: (0, 0, 1),
           -1: (-1, 0, 0), -2: (0, -1, 0), -3: (0, 0, -1)}

# (generator, source, target) for the raising action
VEDGES = ((1, -1, -2), (2, -2, -3), (3, -3, 3), (2, 3, 2), (1, 2, 1))

KAPPA_RHO = (2, 1, 1)   # half-sum of the five positive roots fixed by sigma


# -- the six-dimensional module ----------------------------------------------

class SixDimModule:
    """The six-dimensional module with a solved edge gauge.

    Vectors are dicts label -> scalar with zero values never stored.  The
    raising scalars are canonical monomials, the lowering scalars are the
    unique solutions of the Cartan brackets, and form_diag records the
    diagonal of the contravariant form in this gauge.
    """

    def __init__(self, field):
        self.field = field
        if not hasattr(field, "half_qpow"):
            raise ValueError(
                "the edge gauge needs q^{1/2}; use a half-power field")
        self.e_edge = {1: {}, 2: {}, 3: {}}
        self.f_edge = {1: {}, 2: {}, 3: {}}
        self.form_diag = {}
        self._solve_gauge()

    def _solve_gauge(self):
        F = self.field
        for (i, x, y) in VEDGES:
            g = ALPHA[i - 1]
            # [e_i, f_i] on the edge target must equal the level-1 bracket
            back = cartan_bracket(F, F.qpow(dot(VWEIGHT[y], g)))
            # the form-transport unit from target to source
            u = -F.qpow(-(dot(VWEIGHT[x], g) + norm2(g)))
            want = F.qint(coroot_pair(VWEIGHT[y], g), root_level(g)) / u
            a = _monomial_sqrt(F, want)
            if a is None:
                raise ValueError("no consistent gauge")
            self.e_edge[i][x] = (y, a)
            self.f_edge[i][y] = (x, back / a)
        # transport the form diagonal up the chain from the lowest vector
        self.form_diag[VLABELS[0]] = F.one
        for (i, x, y) in VEDGES:
            g = ALPHA[i - 1]
            _, a = self.e_edge[i][x]
            _, b = self.f_edge[i][y]
            u = -F.qpow(-(dot(VWEIGHT[x], g) + norm2(g)))
            self.form_diag[y] = self.form_diag[x] * b / (a * u)

    # -- generator actions -----------------------------------------------

    def apply_e(self, i, vec):
        out = {}
        for l, c in vec.items():
            hit = self.e_edge[i].get(l)
            if hit:
                _vacc(out, hit[0], c * hit[1])
        return out

    def apply_f(self, i, vec):
        out = {}
        for l, c in vec.items():
            hit = self.f_edge[i].get(l)
            if hit:
                _vacc(out, hit[0], c * hit[1])
        return out

    def cartan_unit(self, g, vec):
        """q^(h, g) on a weight-homogeneous vector; g in eps-coordinates."""
        wts = {VWEIGHT[l] for l in vec}
        if len(wts) != 1:
            raise ValueError("vector is not weight-homogeneous")
        return self.field.qpow(dot(wts.pop(), g))

    def apply_raising(self, elem, vec):
        """Act by a raising-word element (letters are e-generators)."""
        out = {}
        for word, c in elem.terms.items():
            cur = {l: cv * c for l, cv in vec.items()}
            for ch in reversed(word):
                cur = self.apply_e(int(ch), cur)
                if not cur:
                    break
            for l, cv in cur.items():
                _vacc(out, l, cv)
        return out

    def apply_lowering(self, elem, vec):
        """Act by a lowering-word element (letters are f-generators)."""
        out = {}
        for word, c in elem.terms.items():
            cur = {l: cv * c for l, cv in vec.items()}
            for ch in reversed(word):
                cur = self.apply_f(int(ch), cur)
                if not cur:
                    break
            for l, cv in cur.items():
                _vacc(out, l, cv)
        return out

    def sigma_raising(self, elem, vec):
        """Act by the sigma-image of a lowering-word element: each word is
        reversed and its letters become raising generators, so the leftmost
        letter of the original word acts first."""
        out = {}
        for word, c in elem.terms.items():
            cur = {l: cv * c for l, cv in vec.items()}
            for ch in word:
                cur = self.apply_e(int(ch), cur)
                if not cur:
                    break
            for l, cv in cur.items():
                _vacc(out, l, cv)
        return out

    def apply_word(self, elem, vec, raising):
        """Uniform word action shared with the tensor spaces."""
        return self.apply_raising(elem, vec) if raising \
            else self.apply_lowering(elem, vec)

    def weight_rel(self, vec):
        """The weight of a homogeneous vector, in eps-coordinates."""
        wts = {VWEIGHT[l] for l in vec}
        if len(wts) != 1:
            raise ValueError("vector is not weight-homogeneous")
        return wts.pop()

    def vec_add(self, a, b):
        out = dict(a)
        for l, c in b.items():
            _vacc(out, l, c)
        return out

    def vec_scale(self, vec, c):
        return {l: cv * c for l, cv in vec.items()} if c \
            else {}

    # -- the contravariant form --------------------------------------------

    def pairing(self, u, v):
        total = self.field.zero
        for l, c in u.items():
            d = v.get(l)
            if d is not None:
                total = total + self.form_diag[l] * c * d
        return total

    # -- matrices ----------------------------------------------------------

    def matrix_e(self, i):
        return _op_matrix(self, lambda v: self.apply_e(i, v))

    def matrix_f(self, i):
        return _op_matrix(self, lambda v: self.apply_f(i, v))


def build_V(field):
    """Solve the six-dimensional module's edge gauge over the given field."""
    return SixDimModule(field)


def _vacc(out, l, c):
    v = out.get(l)
    nv = c if v is None else v + c
    if nv:
        out[l] = nv
    elif v is not None:
        del out[l]


def _monomial_sqrt(field, val):
    """A square root of the form iota^t q^{k/2}, if one exists."""
    s, i = field.half_qpow(1), field.iota()
    for t in range(4):
        for k in range(-8, 9):
            cand = i ** t * s ** k
            if cand * cand == val:
                return cand
    return None


def _op_matrix(vmod, op):
    """Columns of an operator over the label basis, as coordinate dicts."""
    return {l: op({l: vmod.field.one}) for l in VLABELS}


def doubled_short_lowering(field):
    """The composite lowering element of the doubled short root, whose
    sigma-image realizes the raising operator E_2 on the six-dimensional
    module."""
    return composites(NegativeAlgebra(field, degree_bound=8))["fdelta"]


# -- defining relations as 6x6 identities -------------------------------------

def defining_relations_check(field):
    """Verify the presentation on the six-dimensional module: the Cartan
    brackets of all generator pairs and the q-Serre relations, as exact
    matrix identities.  Returns a list of (name, holds)."""
    vmod = SixDimModule(field)
    F = field
    out = []
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            ok = True
            for l in VLABELS:
                v = {l: F.one}
                comm = _vsub(F, vmod.apply_e(i, vmod.apply_f(j, v)),
                             vmod.apply_f(j, vmod.apply_e(i, v)))
                if i == j:
                    br = cartan_bracket(F, F.qpow(dot(VWEIGHT[l], ALPHA[i - 1])))
                    want = {l: br} if br else {}
                else:
                    want = {}
                if comm != want:
                    ok = False
            out.append((f"[e{i},f{j}]", ok))
    for i, j in ((1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1)):
        n = 1 - _cartan_entry(i, j)
        lev = root_level(ALPHA[i - 1])
        for apply_x in ("e", "f"):
            act = (lambda k, v: vmod.apply_e(k, v)) if apply_x == "e" \
                else (lambda k, v: vmod.apply_f(k, v))
            ok = True
            for l in VLABELS:
                total = {}
                for k in range(n + 1):
                    v = {l: F.one}
                    for _ in range(n - k):
                        v = act(i, v)
                    v = act(j, v)
                    for _ in range(k):
                        v = act(i, v)
                    c = _qbinom(F, n, k, lev) * F.from_int(-1) ** k
                    for lab, cv in v.items():
                        _vacc(total, lab, cv * c)
            if total:
                ok = False
            out.append((f"serre({apply_x}{i},{apply_x}{j})", ok))
    return out


def _cartan_entry(i, j):
    return coroot_pair(ALPHA[j - 1], ALPHA[i - 1])


def _vsub(field, a, b):
    out = dict(a)
    for l, c in b.items():
        _vacc(out, l, -c)
    return out


# -- the checked kernel subspace ----------------------------------------------

def v_plus(vmod, triple):
    """Labels of the joint kernel of the three raising powers attached to
    the short simple system of the fixed subalgebra: the outer Chevalley
    generators for the first and third entries, the sigma-image of the
    doubled-short-root composite for the second."""
    if min(triple) < 0:
        raise ValueError("kernel labels must be non-negative")
    F = vmod.field
    fdelta = doubled_short_lowering(F)
    ops = (lambda v: vmod.apply_e(1, v),
           lambda v: vmod.sigma_raising(fdelta, v),
           lambda v: vmod.apply_e(3, v))
    out = []
    for l in VLABELS:
        kept = True
        for op, power in zip(ops, (p + 1 for p in triple)):
            vec = {l: F.one}
            for _ in range(power):
                vec = op(vec)
                if not vec:
                    break
            if vec:
                kept = False
                break
        if kept:
            out.append(l)
    return out


def vplus_table_check(field):
    """Cross-check the sigma-realized raising kernels against the chain's
    kernel table, including that all squares kill everything."""
    vmod = SixDimModule(field)
    F = vmod.field
    fdelta = doubled_short_lowering(F)

    def ker(op):
        return [l for l in VLABELS if not op({l: F.one})]

    e1 = lambda v: vmod.apply_e(1, v)
    e2 = lambda v: vmod.sigma_raising(fdelta, v)
    e3 = lambda v: vmod.apply_e(3, v)
    checks = [
        ("ker E1", ker(e1) == [l for l in VLABELS if l not in (-1, 2)]),
        ("ker E2", ker(e2) == [l for l in VLABELS if l != -2]),
        ("ker E3", ker(e3) == [l for l in VLABELS if l != -3]),
        ("squares", all(not op(op({l: F.one}))
                        for op in (e1, e2, e3) for l in VLABELS)),
    ]
    return checks


# -- tensor products -----------------------------------------------------------

class TensorModule:
    """V (x) M for a truncation M.

    Tensor vectors are dicts label -> module vector sharing one total
    weight, so each label determines its module offset.  Zero module
    vectors are never stored.
    """

    def __init__(self, vmod, module):
        self.vmod = vmod
        self.module = module
        self.field = module.field

    def top(self, label):
        """label (x) the highest vector."""
        return {label: self.module.highest_vector()}

    # -- coproduct actions --------------------------------------------------

    def apply_e(self, i, tv):
        out = {}
        for l, mv in tv.items():
            _tacc(out, l, self.module.apply_e(i, mv))
            hit = self.vmod.e_edge[i].get(l)
            if hit:
                l2, a = hit
                u = self.module.weight_unit(ALPHA[i - 1], mv.offset)
                _tacc(out, l2, mv.scaled(a * u))
        return {l: mv for l, mv in out.items() if mv}

    def apply_f(self, i, tv):
        out = {}
        for l, mv in tv.items():
            hit = self.vmod.f_edge[i].get(l)
            if hit:
                l2, b = hit
                _tacc(out, l2, mv.scaled(b))
            u = self.field.qpow(-dot(VWEIGHT[l], ALPHA[i - 1]))
            _tacc(out, l, self.module.apply_f(i, mv).scaled(u))
        return {l: mv for l, mv in out.items() if mv}

    def cartan_unit(self, g, tv):
        """q^(h, g) on the (homogeneous) total weight; g in eps-coordinates."""
        for l, mv in tv.items():
            return self.field.qpow(dot(VWEIGHT[l], g)) \
                * self.module.weight_unit(g, mv.offset)
        raise ValueError("zero vector has no weight")

    def apply_word(self, elem, tv, raising):
        """Act by a free word element letter by letter through the coproduct."""
        act = self.apply_e if raising else self.apply_f
        total = {}
        for word, c in elem.terms.items():
            cur = {l: mv.scaled(c) for l, mv in tv.items()}
            for ch in reversed(word):
                cur = act(int(ch), cur)
                if not cur:
                    break
            for l, mv in cur.items():
                _tacc(total, l, mv)
        return {l: mv for l, mv in total.items() if mv}

    def is_singular(self, tv):
        return all(not self.apply_e(i, tv) for i in (1, 2, 3))

    def weight_rel(self, tv):
        """The total weight relative to the shifted highest weight, in
        eps-coordinates."""
        for l, mv in tv.items():
            return wsub(VWEIGHT[l], eps_coords(mv.offset))
        raise ValueError("zero vector has no weight")

    def vec_add(self, a, b):
        out = dict(a)
        for l, mv in b.items():
            _tacc(out, l, mv)
        return {l: mv for l, mv in out.items() if mv}

    def vec_scale(self, tv, c):
        if not c:
            return {}
        return {l: mv.scaled(c) for l, mv in tv.items()}

    # -- the product form ---------------------------------------------------

    def pairing(self, u, v):
        total = self.field.zero
        for l, mu in u.items():
            mv = v.get(l)
            if mv is not None:
                total = total + self.vmod.form_diag[l] \
                    * self.module.pairing_value(mu, mv)
        return total

    # -- singular vectors ----------------------------------------------------

    def singular_at_shift(self, mu):
        """Basis of the joint raising kernel at total weight hw + mu, as a
        list of tensor vectors; mu in eps-coordinates."""
        F = self.field
        comps = []
        for l in VLABELS:
            off = wsub(VWEIGHT[l], mu)
            try:
                abc = alpha_coords(off)
            except ValueError:
                continue
            if min(abc) < 0 or height_alpha(abc) > self.module.height_bound:
                continue
            for w in self.module.basis(abc):
                comps.append((l, abc, w))
        if not comps:
            return []
        rows = {}
        for col, (l, abc, w) in enumerate(comps):
            tv = {l: self.module.vector(abc, {w: F.one})}
            for i in (1, 2, 3):
                for l2, mv in self.apply_e(i, tv).items():
                    for w2, c in mv.coords.items():
                        row = rows.setdefault((i, l2, w2), [F.zero] * len(comps))
                        row[col] = c
        sols = kernel_basis(F, list(rows.values()), len(comps))
        out = []
        for v in sols:
            by_label = {}
            for (l, abc, w), c in zip(comps, v):
                if c:
                    by_label.setdefault((l, abc), {})[w] = c
            out.append({l: self.module.vector(abc, coords)
                        for (l, abc), coords in by_label.items()})
        return out


def _tacc(out, l, mv):
    if not mv:
        return
    cur = out.get(l)
    out[l] = mv if cur is None else cur + mv


def tensor_act(tmod, kind, i, tv):
    """Apply one generator through the coproduct: kind in {'e', 'f', 'h'};
    'h' scales by the unit q^(total weight, alpha_i)."""
    if kind == "e":
        return tmod.apply_e(i, tv)
    if kind == "f":
        return tmod.apply_f(i, tv)
    if kind == "h":
        u = tmod.cartan_unit(ALPHA[i - 1], tv)
        return {l: mv.scaled(u) for l, mv in tv.items()}
    raise ValueError(f"unknown generator kind: {kind!r}")


# -- branching -------------------------------------------------------------------

def xi_weight(triple):
    """eps-coordinates of i1*mu1 + i2*mu2 + i3*mu3."""
    i1, i2, i3 = triple
    return (i1 + i2, i2, i3)


def branch_target(triple, mu):
    """The label triple of the shifted weight xi + mu (entries may be
    negative, in which case the summand is excluded)."""
    w = wadd(xi_weight(triple), mu)
    return (w[0] - w[1], w[1], w[2])


def predicted_summands(triple):
    """The six-fold shift pattern with negative triples excluded, in the
    weight order of the six-dimensional module."""
    out = []
    for mu in VWEIGHTS:
        t = branch_target(triple, mu)
        if min(t) >= 0:
            out.append(t)
    return tuple(out)


@dataclass
class BranchReport:
    triple: tuple
    bound: int
    predicted: tuple
    observed: tuple
    multiplicities: dict
    classical: dict
    vplus_labels: tuple
    gram_det_nonzero: bool
    stray: tuple
    notes: tuple

    def as_json_dict(self):
        return {
            "triple": list(self.triple),
            "bound": self.bound,
            "predicted": [list(t) for t in self.predicted],
            "observed": [list(t) for t in self.observed],
            "multiplicities": {_tkey(t): m
                               for t, m in sorted(self.multiplicities.items())},
            "classical_multiplicities": {_tkey(t): m
                                         for t, m in sorted(self.classical.items())},
            "vplus_labels": list(self.vplus_labels),
            "gram_det_nonzero": self.gram_det_nonzero,
            "stray": [list(t) for t in self.stray],
            "notes": list(self.notes),
        }


def _tkey(t):
    return ",".join(str(x) for x in t)


def decompose(field, triple, bound=6, bank=None):
    """Find all singular vectors of V (x) Mtilde at the six shifted weights,
    map them to label triples, and certify the product-form Gram on the
    singular span.  Exact over whatever scalar field the bank carries."""
    bank = bank or ModuleBank(field)
    tmod = bank.tensor(tuple(triple), bound)
    observed = []
    mult = {}
    stray = []
    gram_ok = True
    notes = []
    for mu in VWEIGHTS:
        sols = tmod.singular_at_shift(mu)
        if not sols:
            continue
        tgt = branch_target(triple, mu)
        observed.append(tgt)
        mult[tgt] = len(sols)
        if min(tgt) < 0:
            stray.append(tgt)
        G = [[tmod.pairing(a, b) for b in sols] for a in sols]
        if not _det(bank.field, G):
            gram_ok = False
            notes.append(f"degenerate Gram block at shift {weight_text(mu)}")
    return BranchReport(
        triple=tuple(triple),
        bound=bound,
        predicted=predicted_summands(triple),
        observed=tuple(observed),
        multiplicities=mult,
        classical=classical_branch_multiplicities(tuple(triple)),
        vplus_labels=tuple(v_plus(bank.vector_module(), triple)),
        gram_det_nonzero=gram_ok,
        stray=tuple(stray),
        notes=tuple(notes),
    )


def branch_assertions(report):
    """The per-report hard assertions shared by tests and the driver."""
    mult_match = all(report.multiplicities.get(t) == m
                     for t, m in report.classical.items()) \
        and set(report.multiplicities) == set(report.classical)
    return [
        ("observed equals predicted", report.observed == report.predicted),
        ("no stray singular weights", not report.stray),
        ("singular count equals kernel dimension",
         sum(report.multiplicities.values()) == len(report.vplus_labels)),
        ("multiplicities match classical side", mult_match),
        ("product-form Gram nondegenerate", report.gram_det_nonzero),
    ]


# -- classical characters --------------------------------------------------------

def _kappa_weyl():
    """The 16 signed permutations: +-swaps on (e1, e2) and a sign on e3."""
    out = []
    for swap in (False, True):
        for s1 in (1, -1):
            for s2 in (1, -1):
                for s3 in (1, -1):
                    sign = (-1 if swap else 1) * s1 * s2 * s3
                    out.append(((swap, s1, s2, s3), sign))
    return out


_KAPPA_WEYL = _kappa_weyl()


def _kappa_act(elem, w):
    swap, s1, s2, s3 = elem
    a, b, c = w
    if swap:
        a, b = b, a
    return (s1 * a, s2 * b, s3 * c)


def _alternating_sum(shift):
    out = {}
    for elem, sign in _KAPPA_WEYL:
        w = _kappa_act(elem, shift)
        out[w] = out.get(w, 0) + sign
    return {w: c for w, c in out.items() if c}


def _lattice_quotient(num, den):
    """Divide in the group ring of the weight lattice; the denominator's
    lexicographically largest term must have coefficient 1."""
    num = dict(num)
    top = max(den)
    out = {}
    while num:
        w = max(num)
        c = num[w]
        k = wsub(w, top)
        out[k] = c
        for dw, dc in den.items():
            key = wadd(k, dw)
            nv = num.get(key, 0) - c * dc
            if nv:
                num[key] = nv
            elif key in num:
                del num[key]
    return out


@lru_cache(maxsize=None)
def classical_char_X(triple):
    """Weight multiplicities of the classical module of highest weight xi
    over the fixed subalgebra, by the Weyl character formula over the
    sixteen signed permutations.  Keys are eps-coordinates."""
    if min(triple) < 0:
        raise ValueError("classical labels must be non-negative")
    num = _alternating_sum(wadd(xi_weight(triple), KAPPA_RHO))
    den = _alternating_sum(KAPPA_RHO)
    out = _lattice_quotient(num, den)
    if any(c <= 0 for c in out.values()):
        raise ArithmeticError("character division produced a negative term")
    return out


@lru_cache(maxsize=None)
def classical_branch_multiplicities(triple):
    """Decompose the classical product char(V) * char(X) into classical
    characters by peeling highest weights; returns triple -> multiplicity."""
    prod = {}
    for mu in VWEIGHTS:
        for w, c in classical_char_X(triple).items():
            key = wadd(w, mu)
            nv = prod.get(key, 0) + c
            if nv:
                prod[key] = nv
            elif key in prod:
                del prod[key]
    mult = {}
    while prod:
        w = max(prod)
        c = prod[w]
        if c <= 0 or w[0] < w[1] or w[1] < 0 or w[2] < 0:
            raise ArithmeticError(f"classical branching stuck at {w}")
        tgt = (w[0] - w[1], w[1], w[2])
        mult[tgt] = c
        for ww, cc in classical_char_X(tgt).items():
            nv = prod.get(ww, 0) - c * cc
            if nv:
                prod[ww] = nv
            elif ww in prod:
                del prod[ww]
    return mult


# -- the character identity -------------------------------------------------------

@dataclass
class CharIdentityReport:
    triple: tuple
    bound: int
    compared: int
    product_equal: bool
    factorization_equal: bool
    mismatches: tuple

    def holds(self):
        return self.product_equal and self.factorization_equal


def char_identity_check(triple, bound=6, bank=None):
    """Compare, coefficient by coefficient, the total-weight dimensions of
    V (x) Mtilde against the predicted branching sum — each summand the
    base-module character times a classical character — on every weight
    whose contributions all lie within the truncation bound.  Also checks
    the factorization of the Mtilde character itself."""
    triple = tuple(triple)
    bank = bank or ModuleBank(ExactField())
    mt = bank.mtilde(triple, bound)
    base = bank.base(bound)
    xi = xi_weight(triple)
    pred = predicted_summands(triple)
    xchars = {t: classical_char_X(t) for t in pred}
    xself = classical_char_X(triple)

    def mdim(m, off_eps):
        try:
            abc = alpha_coords(off_eps)
        except ValueError:
            return 0, True
        if min(abc) < 0:
            return 0, True
        if height_alpha(abc) > m.height_bound:
            return 0, False
        return m.dim(abc), True

    candidates = set()
    for mu in VWEIGHTS:
        for beta in _alpha_offsets(bound):
            candidates.add(wsub(wadd(xi, mu), eps_coords(beta)))
    for t in pred:
        for w in xchars[t]:
            for beta in _alpha_offsets(bound):
                candidates.add(wsub(w, eps_coords(beta)))

    compared = 0
    mismatches = []
    fact_ok = True
    for nu in sorted(candidates):
        lhs = 0
        rhs = 0
        fact_lhs = None
        fact_rhs = 0
        complete = True
        for mu in VWEIGHTS:
            d, ok = mdim(mt, wsub(wadd(xi, mu), nu))
            complete = complete and ok
            lhs += d
        for t in pred:
            for w, c in xchars[t].items():
                d, ok = mdim(base, wsub(w, nu))
                complete = complete and ok
                rhs += c * d
        d, ok = mdim(mt, wsub(xi, nu))
        fact_lhs = d
        complete = complete and ok
        for w, c in xself.items():
            d, ok = mdim(base, wsub(w, nu))
            complete = complete and ok
            fact_rhs += c * d
        if not complete:
            continue
        compared += 1
        if lhs != rhs:
            mismatches.append((nu, lhs, rhs))
        if fact_lhs != fact_rhs:
            fact_ok = False
    return CharIdentityReport(
        triple=triple,
        bound=bound,
        compared=compared,
        product_equal=not mismatches,
        factorization_equal=fact_ok,
        mismatches=tuple(mismatches[:5]),
    )


def _alpha_offsets(N):
    for h in range(N + 1):
        for a in range(h + 1):
            for b in range(h + 1 - a):
                yield (a, b, h - a - b)


# -- shared module cache ------------------------------------------------------------

class ModuleBank:
    """Caches the expensive truncations of one scalar field, keyed by label
    triple and height bound."""

    def __init__(self, field, degree_bound=12):
        self.field = field
        self.alg = NegativeAlgebra(field, degree_bound=degree_bound)
        self._six = None
        self._mt = {}
        self._base = {}

    def vector_module(self):
        if self._six is None:
            self._six = SixDimModule(self.field)
        return self._six

    def mtilde(self, triple, height):
        key = (tuple(triple), height)
        got = self._mt.get(key)
        if got is None:
            got = self._mt[key] = pseudo_parabolic(self.alg, key[0], height)
        return got

    def base(self, height):
        got = self._base.get(height)
        if got is None:
            got = self._base[height] = base_module(self.alg, height)
        return got

    def tensor(self, triple, height):
        return TensorModule(self.vector_module(), self.mtilde(triple, height))
