"""Contravariant-form machinery on module truncations.

The form is fixed by <top, top> = 1 and the transport rule
<f_j u, v> = unit(j, weight) <u, e_j v>; the truncations compute their Gram
matrices by that recursion.  This module verifies the transport is legitimate
(symmetry, contravariance on random vectors, compatibility with the defining
relations), evaluates the diagonal norms c_{l,k} three independent ways
(recurrence, closed product form, brute Gram), checks orthogonality of the
y-vectors — whose squared norms carry q-binomial string factors from the
outer letters on top of the c_{l,k} diagonal, see y_string_factor — and
computes form radicals.

The recurrence for the auxiliary norms carries an exponent that appears in
two variants (l+1 and l-1) in different sources; the l-1 variant is the one
confirmed by both the closed form and the brute Gram computation, and is
hard-recorded here as RECURRENCE_EXPONENT_SHIFT.
"""

from __future__ import annotations

from functools import lru_cache

from .rootsys import cartan_bracket, dot, eps_coords, weight_text
from .scalars import ExactField
from .highest import build_verma, kernel_basis, y_basis

__all__ = [
    "RECURRENCE_EXPONENT_SHIFT",
    "omega_transport",
    "gram",
    "contravariance_check",
    "omega_relations_check",
    "norm_recurrence",
    "norm_closed",
    "brute_norm",
    "norm_table",
    "resolve_recurrence_exponent",
    "radical",
    "gram_determinants",
    "y_gram_report",
    "y_string_factor",
    "qint_sq",
    "gram_gauge",
    "GRAM_GAUGE_EXPONENT",
    "TwoLetterNormModel",
]

# the shift s in q^{-lambda_theta + l + s}; resolved against the oracles
RECURRENCE_EXPONENT_SHIFT = -1

ALPHA2_EPS = (0, 1, -1)
XI_EPS = (1, 0, 1)


# ---------------------------------------------------------------------------
# the involution and its sanity checks
# ---------------------------------------------------------------------------

def omega_transport(m, i, vec):
    """The right-slot image of the lowering generator under the form:
    <f_i u, v> = <u, omega_transport(i, v)> on the weight space of u."""
    F = m.field
    g = (ALPHA2_EPS if i == 2 else ((1, -1, 0) if i == 1 else (0, 0, 2)))
    up = m.apply_e(i, vec)
    unit = -(F.one / m.pair(g)) \
        * F.qpow(dot(eps_coords(vec.offset), g) - dot(g, g))
    return up.scaled(unit)


def gram(m, offset):
    """The Gram matrix of the contravariant form on the offset's basis."""
    return m.gram_matrix(offset)


def contravariance_check(m, max_height=4, seed=6):
    """<f_i u, v> = <u, omega_transport(i, v)> for random u, v on every
    stored weight space up to the height; also symmetry of every matrix."""
    import random
    rng = random.Random(seed)
    F = m.field
    for offset in _offsets_to(min(max_height, m.height_bound)):
        B = m.basis(offset)
        if not B:
            continue
        G = m.gram_matrix(offset)
        for s in range(len(B)):
            for t in range(s):
                if G[s][t] != G[t][s]:
                    return False, f"asymmetric at {weight_text(offset)}"
        for i in (1, 2, 3):
            down = tuple(offset[x] + (1 if x == i - 1 else 0) for x in range(3))
            try:
                m._check_offset(down)
            except ValueError:
                continue
            if not m.basis(down):
                continue
            u = _random_vec(m, offset, rng)
            v = _random_vec(m, down, rng)
            lhs = m.pairing_value(m.apply_f(i, u), v)
            rhs = m.pairing_value(u, omega_transport(m, i, v))
            if lhs != rhs:
                return False, f"transport fails for f_{i} at {weight_text(offset)}"
    return True, "contravariant and symmetric"


def _random_vec(m, offset, rng):
    F = m.field
    coords = {}
    for w in m.basis(offset):
        c = F.from_int(rng.randint(-3, 3)) * F.qpow(rng.randint(-2, 2))
        if rng.random() < 0.25:
            c = c * F.iota()
        if c:
            coords[w] = c
    if not coords:
        B = m.basis(offset)
        coords[B[0]] = F.one
    return m.vector(offset, coords)


def omega_relations_check(m, max_height=4):
    """The transported images of the defining relations annihilate the form:
    pushing each f-side Serre relation into the right slot of the pairing
    gives the zero operator on every checked weight space."""
    F = m.field
    relations = _f_serre_relations(F)
    for offset in _offsets_to(min(max_height, m.height_bound)):
        for w in m.basis(offset):
            vec = m.vector(offset, {w: F.one})
            for rel in relations:
                total = {}
                final = None
                for c, word in rel:
                    img = vec
                    for letter in word:  # omega reverses the word order
                        img = omega_transport(m, int(letter), img)
                    final = img.offset
                    for bw, bc in img.coords.items():
                        nv = total.get(bw, F.zero) + bc * c
                        if nv:
                            total[bw] = nv
                        elif bw in total:
                            del total[bw]
                if total:
                    return False, f"relation image nonzero at {weight_text(offset)}"
    return True, "transport kills the defining relations"


def _f_serre_relations(F):
    two_long = F.qpow(2) + F.qpow(-2)
    return (
        ((F.one, "112"), (-F.qint(2), "121"), (F.one, "211")),
        ((F.one, "221"), (-F.qint(2), "212"), (F.one, "122")),
        ((F.one, "2223"), (-F.qint(3), "2232"),
         (F.qint(3), "2322"), (-F.one, "3222")),
        ((F.one, "332"), (-two_long, "323"), (F.one, "233")),
        ((F.one, "13"), (-F.one, "31")),
    )


def _offsets_to(N):
    for h in range(N + 1):
        for a in range(h + 1):
            for b in range(h + 1 - a):
                yield (a, b, h - a - b)


# ---------------------------------------------------------------------------
# the lambda-branch bracket values
# ---------------------------------------------------------------------------

def _lam2_unit(F):
    return F.iota() * F.qpow(-1)


def _lamtheta_unit(F):
    return -F.qpow(-2)


def lam2_bracket(F, shift=0):
    """[lambda_2 - shift]_q."""
    return cartan_bracket(F, _lam2_unit(F) * F.qpow(-shift))


def lamtheta_bracket(F, shift=0):
    """[lambda_theta - shift]_q; evaluates to [shift + 2]_q."""
    return cartan_bracket(F, _lamtheta_unit(F) * F.qpow(-shift))


def _qfact(F, n):
    out = F.one
    for i in range(2, n + 1):
        out = out * F.qint(i)
    return out


# ---------------------------------------------------------------------------
# diagonal norms three ways
# ---------------------------------------------------------------------------

def norm_recurrence(F, l, k, shift=RECURRENCE_EXPONENT_SHIFT):
    """The auxiliary norm by the two-term recurrence with boundary rows."""
    table = {}

    def get(a, b):
        got = table.get((a, b))
        if got is not None:
            return got
        if a == 0:
            out = _qfact(F, b) * F.qint(2) ** b
            for i in range(b):
                out = out * lamtheta_bracket(F, i)
        elif b == 0:
            out = _qfact(F, a)
            for i in range(a):
                out = out * lam2_bracket(F, i)
        else:
            qml = F.one / _lamtheta_unit(F) * F.qpow(a + shift)
            out = -get(a, b - 1) * F.qint(2) * F.qint(b) ** 2 * qml \
                + F.qpow(-b) * F.qint(a) * lam2_bracket(F, a - 1) * get(a - 1, b)
        table[(a, b)] = out
        return out

    return get(l, k)


def norm_closed(F, l, k):
    """The closed product form: the pair (auxiliary value, true norm)."""
    tilde = _qfact(F, l) * _qfact(F, k) * F.qint(2) ** k
    for i in range(l):
        tilde = tilde * lam2_bracket(F, i)
    for i in range(l, l + k):
        tilde = tilde * lamtheta_bracket(F, i)
    sign = -F.one if (l + k) % 2 else F.one
    unit = sign * F.qpow(k * (k - 5) + l * k + l * (l - 1)) \
        * _lam2_unit(F) ** (-l)
    return tilde, unit * tilde


def resolve_recurrence_exponent(F=None):
    """Try both exponent variants at (1,1) against the closed form and
    return the winning shift; the result backs RECURRENCE_EXPONENT_SHIFT."""
    F = F or ExactField()
    want = norm_closed(F, 1, 1)[0]
    winners = [s for s in (-1, 1) if norm_recurrence(F, 1, 1, shift=s) == want]
    if len(winners) != 1:
        raise AssertionError(f"exponent resolution inconclusive: {winners}")
    return winners[0]


# -- brute route 1: the full Gram recursion at small offsets ------------------

def brute_norm(alg, l, k):
    """<f2^l ftheta^k . top, itself> straight from the Gram recursion of a
    Verma truncation at the distinguished weight.  Only cells with offset
    height l + 4k within desk scale are reachable this way."""
    bound = l + 4 * k
    v = build_verma(alg, (0, 0, 0), True, bound, "verma(lambda)")
    y = y_basis(v, l, k)
    return v.pairing_value(y, y)


# -- brute route 2: the two-letter subalgebra model ---------------------------

class TwoLetterNormModel:
    """The auxiliary-norm contraction inside the rank-two subalgebra
    generated by the middle Chevalley pair and the cubic-root composite pair.

    Letters: 'x' is the middle lowering generator, 'y' the cubic-root
    composite; the theta composite is their q-bracket x y - q y x, and the
    raising side mirrors the ambient composites (the theta partner is the
    1/q-bracket of the letter partners).  The raising actions use only the
    four cross-brackets verified exactly at the ambient level: each letter's
    partner commutes with the other letter, and the diagonal brackets give
    Cartan values (the y-pair carrying a [2]_q factor).  The auxiliary norm
    is the top coefficient of e-partners applied to the lowered vector —
    a pure contraction, no transport gauge involved.  (A Gram-recursion
    model was tried first and rejected: the involution image of a composite
    generator is not proportional to the composite's raising partner, which
    an ambient 2x2 Gram block demonstrates.)  The ambient contraction
    reproduces the model on every cell of offset height <= 8, which is the
    recorded faithfulness certificate.
    """

    def __init__(self, field):
        self.F = field
        self._e = {}

    # weights: content (a, b) = (#x, #y) sits at hw - a*alpha2 - b*xi
    def _unit(self, g, a, b):
        F = self.F
        lam = F.iota() * F.qpow(-1)  # both pairings (hw, alpha2), (hw, xi)
        off = -a * dot(ALPHA2_EPS, g) - b * dot(XI_EPS, g)
        return lam * F.qpow(off)

    def _e_letter(self, letter, word):
        """e-partner of the letter applied to the word, as dict word->coeff."""
        key = (letter, word)
        got = self._e.get(key)
        if got is not None:
            return got
        F = self.F
        out = {}
        if word:
            head, tail = word[0], word[1:]
            for w, c in self._e_letter(letter, tail).items():
                _model_acc(out, head + w, c)
            if head == letter:
                a = tail.count("x")
                b = tail.count("y")
                g = ALPHA2_EPS if letter == "x" else XI_EPS
                br = cartan_bracket(F, self._unit(g, a, b))
                if letter == "y":
                    br = br * F.qint(2)
                if br:
                    _model_acc(out, tail, br)
        self._e[key] = out
        return out

    def _apply(self, letter, vec):
        out = {}
        for w, c in vec.items():
            for bw, bc in self._e_letter(letter, w).items():
                _model_acc(out, bw, c * bc)
        return out

    def e2(self, vec):
        return self._apply("x", vec)

    def e_xi(self, vec):
        return self._apply("y", vec)

    def e_theta(self, vec):
        """The theta partner: [raising-y, raising-x] with weight 1/q."""
        F = self.F
        a = self.e_xi(self.e2(vec))
        b = self.e2(self.e_xi(vec))
        for w, c in b.items():
            _model_acc(a, w, -F.qpow(-1) * c)
        return a

    def lowered(self, l, k):
        """The word expansion of x^l theta^k applied to the top."""
        F = self.F
        vec = {"": F.one}
        for _ in range(k):
            nxt = {}
            for w, c in vec.items():
                _model_acc(nxt, "xy" + w, c)
                _model_acc(nxt, "yx" + w, -F.qpow(1) * c)
            vec = nxt
        for _ in range(l):
            vec = {"x" + w: c for w, c in vec.items()}
        return vec

    def aux_norm(self, l, k):
        """<top, e_theta^k e_2^l x^l theta^k top>: the auxiliary norm."""
        vec = self.lowered(l, k)
        for _ in range(l):
            vec = self.e2(vec)
        for _ in range(k):
            vec = self.e_theta(vec)
        return vec.get("", self.F.zero)


def _model_acc(out, w, c):
    v = out.get(w)
    nv = c if v is None else v + c
    if nv:
        out[w] = nv
    elif v is not None:
        del out[w]


# The true Gram diagonal carries a k-parity unit against the printed closed
# form: <y_{l,k}, y_{l,k}> = (-1)^k * closed value, measured on every ambient
# cell.  The unit is recorded here and echoed in reports.
GRAM_GAUGE_EXPONENT = "(-1)^k"


def gram_gauge(F, k):
    return -F.one if k % 2 else F.one


def norm_table(alg, lmax=4, kmax=4, ambient_height=8):
    """Rows (l, k, recurrence, closed pair, brute, route, matches) for the
    triple-agreement suite.

    The brute route is the ambient Gram (against the closed norm times the
    recorded k-parity gauge) wherever the offset fits the height budget, and
    the two-letter contraction (against the closed auxiliary value) beyond."""
    F = alg.field
    model = TwoLetterNormModel(F)
    ambient = build_verma(alg, (0, 0, 0), True, ambient_height, "verma(lambda)")
    rows = []
    for l in range(lmax + 1):
        for k in range(kmax + 1):
            rec = norm_recurrence(F, l, k)
            tilde, c = norm_closed(F, l, k)
            if l + 4 * k <= ambient_height:
                y = y_basis(ambient, l, k)
                brute = ambient.pairing_value(y, y)
                route = "gram"
                match = brute == gram_gauge(F, k) * c
            else:
                brute = model.aux_norm(l, k)
                route = "contraction"
                match = brute == tilde
            rows.append({
                "l": l, "k": k,
                "recurrence": rec,
                "closed_aux": tilde,
                "closed": c,
                "brute": brute,
                "route": route,
                "aux_match": rec == tilde,
                "brute_match": match,
            })
    return rows


# ---------------------------------------------------------------------------
# radicals and determinants
# ---------------------------------------------------------------------------

def radical(m, up_to=None):
    """Kernels of the Gram matrices per weight space; empty means the
    truncation carries a nondegenerate form so far."""
    N = m.height_bound if up_to is None else up_to
    out = []
    for offset in _offsets_to(min(N, m.height_bound)):
        G = m.gram_matrix(offset)
        if not G:
            continue
        B = m.basis(offset)
        for v in kernel_basis(m.field, G, len(G)):
            out.append(m.vector(offset, {w: c for w, c in zip(B, v) if c}))
    return out


def gram_determinants(m, up_to=None):
    """Exact determinant per offset, by fraction-free elimination."""
    N = m.height_bound if up_to is None else up_to
    out = {}
    for offset in _offsets_to(min(N, m.height_bound)):
        G = m.gram_matrix(offset)
        if G:
            out[offset] = _det(m.field, G)
    return out


def _det(F, G):
    n = len(G)
    A = [row[:] for row in G]
    det = F.one
    for col in range(n):
        piv = None
        for r in range(col, n):
            if A[r][col]:
                piv = r
                break
        if piv is None:
            return F.zero
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det = det * A[col][col]
        inv = F.one / A[col][col]
        for r in range(col + 1, n):
            if not A[r][col]:
                continue
            f = A[r][col] * inv
            A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return det


# ---------------------------------------------------------------------------
# orthogonality of the y-vectors
# ---------------------------------------------------------------------------

def _y_labels(offset):
    a, b, c = offset
    out = []
    for k in range(min(a, c) + 1):
        i = a - k
        j = c - k
        l = b - 2 * k
        if l >= 0 and i <= l and j <= l:
            out.append((l, k, i, j))
    return out


def qint_sq(F, n):
    """The q^2-integer (q^{2n} - q^{-2n}) / (q^2 - q^{-2})."""
    return (F.qpow(2 * n) - F.qpow(-2 * n)) / (F.qpow(2) - F.qpow(-2))


def _qfact_sq(F, n):
    out = F.one
    for s in range(2, n + 1):
        out = out * qint_sq(F, s)
    return out


def y_string_factor(F, l, i, j):
    """Diagonal correction contributed by the outer letters of a y-vector.

    The middle block of a y-vector sits at the top of a string of length
    l+1 for each of the two outer lowering directions.  Stepping down i
    times along the short-root string multiplies the squared norm by

        (-1)^i q^{-i(l-i+1)} [i]_q! [l]_q! / [l-i]_q!

    and j steps along the long-root string contribute the q^2-analogue

        (-1)^j q^{-2j(l-j+1)} [2]_q^j [j]_{q^2}! [l]_{q^2}! / [l-j]_{q^2}!.

    The bare ([i]_q [j]_q)^2 pattern with no string factors fails already
    at (l,k,i,j) = (1,0,0,1): the factor [2]_q there is not a unit, and
    within a single weight space no regauging of the form can remove it
    (confirmed against a transport rule with no unit factors at all).
    """
    a = F.qpow(-i * (l - i + 1)) * _qfact(F, i)
    for s in range(l - i + 1, l + 1):
        a = a * F.qint(s)
    if i % 2:
        a = -a
    b = F.qpow(-2 * j * (l - j + 1)) * F.qint(2) ** j * _qfact_sq(F, j)
    for s in range(l - j + 1, l + 1):
        b = b * qint_sq(F, s)
    if j % 2:
        b = -b
    return a * b


def y_gram_report(m, up_to=None):
    """Pairwise form values of the y-vectors per weight space.

    Returns (ok, detail, diag).  ok asserts off-diagonal vanishing together
    with the diagonal law

        <y, y> = gram_gauge(k) * c_{l,k} * y_string_factor(l, i, j),

    so ratios across (l,k) at fixed outer exponents (i,j) are c-ratios times
    the string-factor ratio, and at (i,j) = (0,0) exactly gauge * c-ratios —
    the gauge-free content.  diag maps each label to its exact squared norm.
    """
    F = m.field
    N = m.height_bound if up_to is None else up_to
    diag = {}
    for offset in _offsets_to(min(N, m.height_bound)):
        labels = _y_labels(offset)
        if not labels:
            continue
        vecs = [y_basis(m, l, k, i, j) for (l, k, i, j) in labels]
        for s in range(len(labels)):
            for t in range(s):
                val = m.pairing_value(vecs[s], vecs[t])
                if val:
                    return False, (
                        f"off-diagonal pair {labels[s]} / {labels[t]} at "
                        f"{weight_text(offset)}"), diag
            got = m.pairing_value(vecs[s], vecs[s])
            l, k, i, j = labels[s]
            want = gram_gauge(F, k) * norm_closed(F, l, k)[1] \
                * y_string_factor(F, l, i, j)
            if got != want:
                return False, (
                    f"diagonal value off-pattern at {labels[s]}, "
                    f"{weight_text(offset)}"), diag
            diag[labels[s]] = got
    return True, "diagonal with the recorded string-factor law", diag
