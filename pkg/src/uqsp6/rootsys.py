"""Root datum of type C3 and weight bookkeeping.

Weights are held in two integer coordinate systems:

* eps-coordinates ``(g1, g2, g3)`` meaning g1*e1 + g2*e2 + g3*e3 in the
  standard orthonormal basis, with the symmetric pairing the plain dot
  product.  Every weight this package touches (roots, rho, the weights of
  the 6-dimensional module, integral highest weights) is integral here.

* alpha-coordinates ``(a, b, c)`` meaning a*alpha1 + b*alpha2 + c*alpha3 in
  the simple-root basis.  Word contents and module offsets live here; this
  is also the serialization basis ``[a,b,c]`` used in reports.

Simple roots: alpha1 = e1-e2 and alpha2 = e2-e3 short ((a,a)=2),
alpha3 = 2*e3 long ((a,a)=4).  Since eps-coordinates of alpha-integral
weights satisfy g1+g2+g3 even, conversion is exact both ways.

The distinguished highest weight of the base module (written ``lambda`` in
serialized weights) is not integral: it is fixed by the unit values

    q^(lambda, e1) = q^(lambda, e2) = iota/q,   q^(lambda, e3) = 1,

with iota the imaginary unit, so pairings against it are tracked as exact
units via :func:`lambda_pairing` rather than as integers.
"""

from __future__ import annotations

from functools import lru_cache

# -- simple roots and distinguished weights (eps-coordinates) ----------------

ALPHA = ((1, -1, 0), (0, 1, -1), (0, 0, 2))

RHO = (3, 2, 1)                  # half-sum of the nine positive roots
THETA = (1, 1, 0)                # highest root; alpha-coords (1,2,1)
DELTA = (0, 2, 0)                # 2*e2; alpha-coords (0,2,1)
XI_ROOT = (1, 0, 1)              # alpha1+alpha2+alpha3
NU_ROOT = (1, 0, -1)             # alpha1+alpha2

# positive roots in a fixed listing (not the normal order)
POS_ROOTS = (
    (1, -1, 0), (1, 1, 0), (1, 0, -1), (1, 0, 1),
    (0, 1, -1), (0, 1, 1), (2, 0, 0), (0, 2, 0), (0, 0, 2),
)

# symmetric-pair split: the Levi keeps e1-e2 and 2e3; the reflection fixes
# the five roots supported away from mixing e3 with e1, e2.
LEVI_POS = ((1, -1, 0), (0, 0, 2))
KAPPA_POS = ((1, -1, 0), (1, 1, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2))
RADICAL_POS = ((1, 0, -1), (1, 0, 1), (0, 1, -1), (0, 1, 1))  # outside kappa

# fundamental-type weights generating the branching lattice, and the
# corresponding short simple system of the kappa-part
MU_FUND = ((1, 0, 0), (1, 1, 0), (0, 0, 1))
BETA_KAPPA = ((1, -1, 0), (0, 2, 0), (0, 0, 2))

# weights of the 6-dimensional module, highest to lowest
VWEIGHTS = ((1, 0, 0), (0, 1, 0), (0, 0, 1),
            (0, 0, -1), (0, -1, 0), (-1, 0, 0))

# normal order on the positive roots: every root sits between each pair of
# roots it is the sum of, and the seven non-Levi roots precede the Levi pair.
NORMAL_ORDER = (
    (0, 1, -1),   # e2-e3
    (0, 2, 0),    # 2e2
    (0, 1, 1),    # e2+e3
    (1, 1, 0),    # e1+e2
    (1, 0, -1),   # e1-e3
    (2, 0, 0),    # 2e1
    (1, 0, 1),    # e1+e3
    (1, -1, 0),   # e1-e2
    (0, 0, 2),    # 2e3
)


# -- pairings -----------------------------------------------------------------

def dot(x, y):
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]


def norm2(alpha):
    return dot(alpha, alpha)


def root_level(alpha):
    """(alpha,alpha)/2: the bracket level q_alpha = q**root_level."""
    n = norm2(alpha)
    if n not in (2, 4):
        raise ValueError(f"not a root: {alpha}")
    return n // 2


def coroot_pair(x, alpha):
    """(x, alpha^vee) = 2 (x, alpha)/(alpha, alpha); must be an integer."""
    num = 2 * dot(x, alpha)
    den = norm2(alpha)
    if num % den:
        raise ValueError(f"non-integral coroot pairing of {x} with {alpha}")
    return num // den


# -- coordinate conversions ------------------------------------------------------

def eps_coords(abc):
    a, b, c = abc
    return (a, b - a, 2 * c - b)


def alpha_coords(g):
    g1, g2, g3 = g
    if (g1 + g2 + g3) % 2:
        raise ValueError(f"weight {g} is not integral in the simple-root basis")
    return (g1, g1 + g2, (g1 + g2 + g3) // 2)


def height_alpha(abc):
    return abc[0] + abc[1] + abc[2]


def ht2(g):
    """Twice the simple-root height of an eps-weight (integer even for
    alpha-integral weights, odd for the weights of the 6-dim module)."""
    return 5 * g[0] + 3 * g[1] + g[2]


def wsub(x, y):
    return (x[0] - y[0], x[1] - y[1], x[2] - y[2])


def wadd(x, y):
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2])


def wneg(x):
    return (-x[0], -x[1], -x[2])


# -- normal order check -----------------------------------------------------------

def normal_order_violations(order=NORMAL_ORDER):
    """All betweenness failures of a claimed normal order.

    For every pair x, y of positive roots with x+y again a positive root,
    x+y must lie strictly between x and y in the order.  Returns a list of
    offending triples (x, x+y, y); empty means the order is valid.
    """
    pos = {r: k for k, r in enumerate(order)}
    if sorted(pos) != sorted(POS_ROOTS):
        raise ValueError("order must list each positive root exactly once")
    bad = []
    for i, x in enumerate(POS_ROOTS):
        for y in POS_ROOTS[i + 1:]:
            s = wadd(x, y)
            if s not in pos:
                continue
            lo, hi = sorted((pos[x], pos[y]))
            if not lo < pos[s] < hi:
                bad.append((x, s, y))
    return bad


# -- Kostant partition function ------------------------------------------------------

_POS_ALPHA = tuple(sorted(alpha_coords(r) for r in POS_ROOTS))


@lru_cache(maxsize=None)
def _kostant(abc, k):
    if abc == (0, 0, 0):
        return 1
    if k < 0:
        return 0
    a, b, c = abc
    if a < 0 or b < 0 or c < 0:
        return 0
    r = _POS_ALPHA[k]
    return _kostant(abc, k - 1) + _kostant((a - r[0], b - r[1], c - r[2]), k)


def kostant(abc):
    """Number of multisets of positive roots with sum a*alpha1+b*alpha2+c*alpha3."""
    return _kostant(tuple(abc), len(_POS_ALPHA) - 1)


# -- highest-weight pairing oracles -----------------------------------------------------

def lambda_pairing(field, g):
    """The unit q^(lambda, g) for an eps-weight g, as a field element."""
    m = g[0] + g[1]
    return field.iota() ** (m % 4) * field.qpow(-m)


def integral_pairing(field, hw):
    """Pairing oracle q^(hw, .) for an integral eps-highest weight."""
    def pair(g):
        return field.qpow(dot(hw, g))
    return pair


def lambda_oracle(field):
    def pair(g):
        return lambda_pairing(field, g)
    return pair


def cartan_bracket(field, unit, level=1):
    """(u - u^-1)/(q^level - q^-level): the Cartan bracket at unit u = q^(w,alpha)."""
    return (unit - 1 / unit) / (field.qpow(level) - field.qpow(-level))


# -- serialization ------------------------------------------------------------------------

def weight_text(abc, plus_lambda=False):
    s = f"[{abc[0]},{abc[1]},{abc[2]}]"
    return s + "+lambda" if plus_lambda else s


def parse_weight(text):
    """Inverse of weight_text: returns ((a, b, c), plus_lambda)."""
    t = text.strip()
    plus = t.endswith("+lambda")
    if plus:
        t = t[:-len("+lambda")]
    if not (t.startswith("[") and t.endswith("]")):
        raise ValueError(f"malformed weight text: {text!r}")
    parts = t[1:-1].split(",")
    if len(parts) != 3:
        raise ValueError(f"malformed weight text: {text!r}")
    return tuple(int(p) for p in parts), plus


def eps_text(g):
    """Readable eps-coordinate form, e.g. 'e1-e3', '2e2', '-e1'."""
    parts = []
    for k, c in enumerate(g, start=1):
        if not c:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(("-" if c < 0 else ("+" if parts else "")) + mag + f"e{k}")
    return "".join(parts) if parts else "0"
