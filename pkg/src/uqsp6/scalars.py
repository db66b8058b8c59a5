"""Exact scalar arithmetic over the field Q(i)(q).

Every coefficient produced by the algebra engines lives in the field of
rational functions in one variable q over the Gaussian rationals Q(i).
Two representations are provided:

* :class:`GaussRat` -- a Gaussian rational (a + b*i)/d held as three
  integers.  Invariant: gcd(a, b, d) == 1 and d > 0 (zero is (0, 0, 1)).
  These are the coefficients of polynomials and also the values obtained
  when q is specialized at a probe point.

* :class:`QScalar` -- a canonical Laurent fraction

      q**shift * num(q) / den(q)

  where num and den are tuples of GaussRat coefficients indexed by the
  power of q.  Invariants: num and den have nonzero constant and leading
  coefficients (any overall power of q is folded into ``shift``), they are
  coprime in Q(i)[q], den is monic in its leading coefficient, and the
  zero element is exactly (0, (), (1,)).  Canonical form makes equality
  structural and hashing cheap.

The q-number conventions used throughout the package:

    [n]_q      = (q**n - q**-n) / (q - q**-1)          (level 1)
    [n]_{q^2}  = (q**2n - q**-2n) / (q**2 - q**-2)     (level 2)
    [n]_q!     = [1]_q [2]_q ... [n]_q

Scalars serialize to a plain textual form such as ``(q^2+1+q^-2)/(q-q^-1)``
with the imaginary unit written ``i``; :func:`parse_scalar` round-trips the
output of :func:`QScalar.to_text` bit-exactly.

>>> qint(3).to_text()
'q^2+1+q^-2'
>>> x = parse_scalar('(q^2+1+q^-2)/(q-q^-1)')
>>> x == qint(3) / (QScalar.q() - QScalar.q(-1))
True
>>> parse_scalar(x.to_text()) == x
True
"""

from __future__ import annotations

from math import gcd as _igcd


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

class GaussRat:
    """(a + b*i)/d with integer a, b, d; gcd(a, b, d) == 1, d > 0."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=1, _normalized=False):
        if not _normalized:
            if d == 0:
                raise ZeroDivisionError("zero denominator")
            if d < 0:
                a, b, d = -a, -b, -d
            g = _igcd(_igcd(abs(a), abs(b)), d)
            if g > 1:
                a //= g
                b //= g
                d //= g
        self.a = a
        self.b = b
        self.d = d

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(n):
        return GaussRat(n, 0, 1, _normalized=True)

    @staticmethod
    def iota():
        return GaussRat(0, 1, 1, _normalized=True)

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_one(self):
        return self.a == 1 and self.b == 0 and self.d == 1

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = GaussRat.from_int(other)
        elif not isinstance(other, GaussRat):
            return NotImplemented
        return GaussRat(self.a * other.d + other.a * self.d,
                        self.b * other.d + other.b * self.d,
                        self.d * other.d)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.a, -self.b, self.d, _normalized=True)

    def __sub__(self, other):
        if isinstance(other, int):
            other = GaussRat.from_int(other)
        elif not isinstance(other, GaussRat):
            return NotImplemented
        return GaussRat(self.a * other.d - other.a * self.d,
                        self.b * other.d - other.b * self.d,
                        self.d * other.d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = GaussRat.from_int(other)
        elif not isinstance(other, GaussRat):
            return NotImplemented
        return GaussRat(self.a * other.a - self.b * other.b,
                        self.a * other.b + self.b * other.a,
                        self.d * other.d)

    __rmul__ = __mul__

    def inv(self):
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("zero denominator")
        return GaussRat(self.a * self.d, -self.b * self.d, n)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = GaussRat.from_int(other)
        elif not isinstance(other, GaussRat):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = GaussRat.from_int(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self.d == 1 and self.b == 0 and self.a == other
        if not isinstance(other, GaussRat):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    # -- text ---------------------------------------------------------------

    def to_text(self):
        """Deterministic textual form, e.g. ``-3``, ``5/2``, ``2i/3``, ``(1-2i)/3``."""
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return f"{a}" if d == 1 else f"{a}/{d}"
        if a == 0:
            if b == 1:
                s = "i"
            elif b == -1:
                s = "-i"
            else:
                s = f"{b}i"
            return s if d == 1 else f"{s}/{d}"
        core = f"({a}{'+' if b > 0 else '-'}{'' if abs(b) == 1 else abs(b)}i)"
        return core if d == 1 else f"{core}/{d}"

    def __repr__(self):
        return f"GaussRat({self.to_text()})"


_GR_ZERO = GaussRat.from_int(0)
_GR_ONE = GaussRat.from_int(1)


# ---------------------------------------------------------------------------
# dense polynomial helpers over GaussRat (tuples, index = power of q)
# ---------------------------------------------------------------------------
# A polynomial is a tuple with nonzero last entry; () is the zero polynomial.

def _ptrim(cs):
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


def _padd(p, r):
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for k, c in enumerate(r):
        out[k] = out[k] + c
    return _ptrim(out)


def _pneg(p):
    return tuple(-c for c in p)


def _pmul(p, r):
    if not p or not r:
        return ()
    out = [_GR_ZERO] * (len(p) + len(r) - 1)
    for j, cj in enumerate(p):
        if not cj:
            continue
        for k, ck in enumerate(r):
            if ck:
                out[j + k] = out[j + k] + cj * ck
    return _ptrim(out)


def _pscale(p, c):
    if not c:
        return ()
    return tuple(x * c for x in p)


def _pdivmod(p, r):
    """Euclidean division in Q(i)[q]; r must be nonzero."""
    if not r:
        raise ZeroDivisionError("zero denominator")
    rem = list(p)
    lead = r[-1].inv()
    dq = len(p) - len(r)
    if dq < 0:
        return (), p
    quo = [_GR_ZERO] * (dq + 1)
    for k in range(dq, -1, -1):
        c = rem[k + len(r) - 1] * lead
        if c:
            quo[k] = c
            for j, rj in enumerate(r):
                rem[k + j] = rem[k + j] - c * rj
    return _ptrim(quo), _ptrim(rem)


def _pgcd(p, r):
    """Monic gcd in Q(i)[q] (monic in the leading coefficient)."""
    while r:
        p, r = r, _pdivmod(p, r)[1]
    if not p:
        return ()
    return _pscale(p, p[-1].inv())


# ---------------------------------------------------------------------------
# canonical Laurent fractions
# ---------------------------------------------------------------------------

class QScalar:
    """Canonical element q**shift * num(q)/den(q) of Q(i)(q).

    See the module docstring for the invariants.  All arithmetic keeps the
    canonical form, so ``==`` is structural and instances are hashable.
    """

    __slots__ = ("shift", "num", "den")

    def __init__(self, shift, num, den, _normalized=False):
        if _normalized:
            self.shift = shift
            self.num = num
            self.den = den
            return
        num = _ptrim(num)
        den = _ptrim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.shift, self.num, self.den = 0, (), (_GR_ONE,)
            return
        # fold powers of q out of num and den into the shift
        k = 0
        while not num[k]:
            k += 1
        if k:
            num = num[k:]
            shift += k
        k = 0
        while not den[k]:
            k += 1
        if k:
            den = den[k:]
            shift -= k
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        u = den[-1].inv()
        if not u.is_one():
            num = _pscale(num, u)
            den = _pscale(den, u)
        self.shift = shift
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return _Q_ZERO

    @staticmethod
    def one():
        return _Q_ONE

    @staticmethod
    def from_int(n):
        if n == 0:
            return _Q_ZERO
        return QScalar(0, (GaussRat.from_int(n),), (_GR_ONE,), _normalized=True)

    @staticmethod
    def from_gauss(c):
        if not c:
            return _Q_ZERO
        return QScalar(0, (c,), (_GR_ONE,), _normalized=True)

    @staticmethod
    def iota():
        return QScalar.from_gauss(GaussRat.iota())

    @staticmethod
    def q(k=1):
        """The monomial q**k."""
        return QScalar(k, (_GR_ONE,), (_GR_ONE,), _normalized=True)

    # -- predicates ----------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.shift == 0 and self.den == (_GR_ONE,) and \
            len(self.num) == 1 and self.num[0].is_one()

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, QScalar):
            return x
        if isinstance(x, int):
            return QScalar.from_int(x)
        if isinstance(x, GaussRat):
            return QScalar.from_gauss(x)
        return None

    def __add__(self, other):
        o = QScalar._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num:
            return o
        if not o.num:
            return self
        m = min(self.shift, o.shift)
        p1 = self.num if self.shift == m else \
            (_GR_ZERO,) * (self.shift - m) + self.num
        p2 = o.num if o.shift == m else (_GR_ZERO,) * (o.shift - m) + o.num
        if self.den == o.den:
            return QScalar(m, _padd(p1, p2), self.den)
        return QScalar(m, _padd(_pmul(p1, o.den), _pmul(p2, self.den)),
                       _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return QScalar(self.shift, _pneg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        o = QScalar._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = QScalar._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return _Q_ZERO
        return QScalar(self.shift + o.shift, _pmul(self.num, o.num),
                       _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("zero denominator")
        return QScalar(-self.shift, self.den, self.num)

    def __truediv__(self, other):
        o = QScalar._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = _Q_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        o = QScalar._coerce(other)
        if o is None:
            return NotImplemented
        return self.shift == o.shift and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.shift, self.num, self.den))

    # -- specialization ---------------------------------------------------------

    def eval_probe(self, q0):
        """Value at q = q0 (a nonzero GaussRat).

        Raises ZeroDivisionError("denominator vanishes at probe point") when
        den(q0) == 0.
        """
        if not isinstance(q0, GaussRat):
            q0 = GaussRat.from_int(q0)
        dv = _GR_ZERO
        for c in reversed(self.den):
            dv = dv * q0 + c
        if not dv:
            raise ZeroDivisionError("denominator vanishes at probe point")
        nv = _GR_ZERO
        for c in reversed(self.num):
            nv = nv * q0 + c
        return nv * (q0 ** self.shift) / dv

    # -- text ------------------------------------------------------------------

    def _laurent_terms(self):
        out = []
        for k in range(len(self.num) - 1, -1, -1):
            c = self.num[k]
            if c:
                out.append((k + self.shift, c))
        return out

    def to_text(self):
        """Canonical textual form; ``parse_scalar`` inverts it bit-exactly."""
        if not self.num:
            return "0"
        num_terms = self._laurent_terms()
        ns = _terms_to_text(num_terms)
        if self.den == (_GR_ONE,):
            return ns
        ds = _terms_to_text([(k, c) for k, c in
                             ((k, self.den[k]) for k in
                              range(len(self.den) - 1, -1, -1)) if c])
        if len(num_terms) > 1 or ns.startswith("-"):
            ns = f"({ns})"
        return f"{ns}/({ds})"

    def __repr__(self):
        return f"QScalar({self.to_text()})"


_Q_ZERO = QScalar(0, (), (_GR_ONE,), _normalized=True)
_Q_ONE = QScalar(0, (_GR_ONE,), (_GR_ONE,), _normalized=True)


def _qpow_text(k):
    if k == 0:
        return ""
    if k == 1:
        return "q"
    return f"q^{k}"


def _terms_to_text(terms):
    parts = []
    for k, c in terms:
        qs = _qpow_text(k)
        if not qs:
            cs = c.to_text()
        elif c.is_one():
            cs = qs
        elif c == GaussRat.from_int(-1):
            cs = f"-{qs}"
        else:
            cs = f"{c.to_text()}*{qs}"
        if parts and not cs.startswith("-"):
            parts.append("+")
        parts.append(cs)
    return "".join(parts)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Scan:
    def __init__(self, s):
        self.s = s.replace(" ", "")
        self.k = 0

    def peek(self):
        return self.s[self.k] if self.k < len(self.s) else ""

    def take(self):
        c = self.peek()
        self.k += 1
        return c

    def expect(self, c):
        if self.take() != c:
            raise ValueError(f"malformed scalar text at position {self.k}: {self.s!r}")

    def int_(self):
        j = self.k
        if self.peek() in ("+", "-"):
            self.k += 1
        while self.peek().isdigit():
            self.k += 1
        if self.k == j or not self.s[self.k - 1].isdigit():
            raise ValueError(f"malformed scalar text at position {j}: {self.s!r}")
        return int(self.s[j:self.k])


def _parse_coeff(sc, sign):
    """Parse a coefficient (everything before an optional * q-power)."""
    if sc.peek() == "(":
        sc.take()
        a = sc.int_()
        bsign = 1 if sc.take() == "+" else -1
        b = 1
        if sc.peek().isdigit():
            b = sc.int_()
        sc.expect("i")
        sc.expect(")")
        num = GaussRat(a, bsign * b)
    elif sc.peek() == "i":
        sc.take()
        num = GaussRat.iota()
    else:
        a = sc.int_()
        if sc.peek() == "i":
            sc.take()
            num = GaussRat(0, a)
        else:
            num = GaussRat.from_int(a)
    if sc.peek() == "/" and sc.k + 1 < len(sc.s) and sc.s[sc.k + 1].isdigit():
        sc.take()
        num = num / sc.int_()
    if sign < 0:
        num = -num
    return num


def _parse_laurent(sc):
    """Parse a sum of terms into a QScalar."""
    total = _Q_ZERO
    first = True
    while True:
        c = sc.peek()
        if c == "" or c == ")" or c == "/":
            if first:
                raise ValueError(f"malformed scalar text at position {sc.k}: {sc.s!r}")
            return total
        sign = 1
        if c in "+-":
            sc.take()
            sign = -1 if c == "-" else 1
        elif not first:
            raise ValueError(f"malformed scalar text at position {sc.k}: {sc.s!r}")
        first = False
        if sc.peek() == "q":
            coeff = GaussRat.from_int(sign)
        else:
            coeff = _parse_coeff(sc, sign)
            if sc.peek() == "*":
                sc.take()
            elif sc.peek() == "q":
                raise ValueError(f"malformed scalar text at position {sc.k}: {sc.s!r}")
            else:
                total = total + QScalar.from_gauss(coeff)
                continue
        sc.expect("q")
        k = 1
        if sc.peek() == "^":
            sc.take()
            k = sc.int_()
        total = total + QScalar.from_gauss(coeff) * QScalar.q(k)


def parse_scalar(text):
    """Parse the textual form produced by QScalar.to_text (and near variants).

    Accepts a Laurent expression or a ratio ``<laurent>/(<laurent>)`` where
    the numerator is parenthesized whenever it has several terms.
    """
    sc = _Scan(text)
    if sc.peek() == "(":
        # could be a parenthesized numerator or a complex coefficient; try ratio
        depth = 0
        for j, ch in enumerate(sc.s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    if j + 2 < len(sc.s) and sc.s[j + 1] == "/" and sc.s[j + 2] == "(":
                        inner = _Scan(sc.s[1:j])
                        num = _parse_laurent(inner)
                        if inner.peek():
                            break
                        sc.k = j + 2
                        sc.expect("(")
                        den = _parse_laurent(sc)
                        sc.expect(")")
                        if sc.peek():
                            raise ValueError(
                                f"malformed scalar text at position {sc.k}: {sc.s!r}")
                        return num / den
                    break
        sc.k = 0
    num = _parse_laurent(sc)
    if sc.peek() == "/" and sc.k + 1 < len(sc.s) and sc.s[sc.k + 1] == "(":
        sc.take()
        sc.expect("(")
        den = _parse_laurent(sc)
        sc.expect(")")
        num = num / den
    if sc.peek():
        raise ValueError(f"malformed scalar text at position {sc.k}: {sc.s!r}")
    return num


# ---------------------------------------------------------------------------
# q-numbers
# ---------------------------------------------------------------------------

def qint(n, level=1):
    """[n]_{q^level} = (q**(level*n) - q**(-level*n))/(q**level - q**(-level)).

    For n >= 0 this is the Laurent polynomial sum_{k=0..n-1} q**(level*(n-1-2k));
    [−n] = −[n].
    """
    if n < 0:
        return -qint(-n, level)
    out = _Q_ZERO
    for k in range(n):
        out = out + QScalar.q(level * (n - 1 - 2 * k))
    return out


def qfact(n, level=1):
    """[n]_{q^level}! = [1][2]...[n] at the given bracket level."""
    out = _Q_ONE
    for k in range(2, n + 1):
        out = out * qint(k, level)
    return out


def qnum_plus(n, level=1):
    """q**(level*n) + q**(-level*n); the building block of balanced ratios."""
    return QScalar.q(level * n) + QScalar.q(-level * n)


# ---------------------------------------------------------------------------
# field contexts: exact vs probe
# ---------------------------------------------------------------------------
# Engines take a "field" object and use only this tiny protocol, so the same
# code runs with exact QScalar coefficients or with fast GaussRat values at a
# fixed probe point q = q0.

class ExactField:
    """Field context producing exact QScalar values."""

    name = "exact"

    zero = _Q_ZERO
    one = _Q_ONE

    def from_int(self, n):
        return QScalar.from_int(n)

    def iota(self):
        return QScalar.iota()

    def qpow(self, k):
        return QScalar.q(k)

    def qint(self, n, level=1):
        return qint(n, level)

    def to_exact(self, x):
        return x


class ProbeField:
    """Field context evaluating everything at a fixed probe point q = q0."""

    name = "probe"

    def __init__(self, q0):
        if isinstance(q0, int):
            q0 = GaussRat.from_int(q0)
        if not q0:
            raise ZeroDivisionError("denominator vanishes at probe point")
        self.q0 = q0
        self.zero = _GR_ZERO
        self.one = _GR_ONE
        self._qi = {}

    def from_int(self, n):
        return GaussRat.from_int(n)

    def iota(self):
        return GaussRat.iota()

    def qpow(self, k):
        return self.q0 ** k

    def qint(self, n, level=1):
        key = (n, level)
        v = self._qi.get(key)
        if v is None:
            v = qint(n, level).eval_probe(self.q0)
            self._qi[key] = v
        return v

    def to_exact(self, x):
        raise TypeError("probe values cannot be promoted to exact scalars")


# ---------------------------------------------------------------------------
# half-power field contexts
# ---------------------------------------------------------------------------
# The six-dimensional module cannot be given an orthonormal weight basis over
# Q(i)(q): the contravariant transport forces edge scalars a with a^2 = -q on
# four of its five arrows (and a^2 = -q^2 on the fifth), independently of any
# basis rescaling by +-1.  The tensor-product machinery therefore runs over
# the quadratic extension Q(i)(q^(1/2)), realized by reading the internal
# variable s of a QScalar as q^(1/2).  ``qpow``/``qint`` keep their q-meaning
# (even internal exponents), ``half_qpow`` exposes the square root, and the
# embeddings below move values between the two exponent lattices.

def double_exponents(x):
    """Reindex an exact scalar through q = s**2 (q^k becomes s^(2k)).

    Embeds a value computed over :class:`ExactField` into the half-power
    lattice of :class:`HalfExactField` so the two can be compared exactly.
    """
    if not isinstance(x, QScalar):
        raise TypeError("double_exponents expects an exact scalar")
    return QScalar(2 * x.shift, _pstretch(x.num), _pstretch(x.den))


def halve_exponents(x):
    """Inverse of :func:`double_exponents`; fails on genuine half powers."""
    if not isinstance(x, QScalar):
        raise TypeError("halve_exponents expects an exact scalar")
    if x.shift % 2 or any(c for c in x.num[1::2]) or any(c for c in x.den[1::2]):
        raise ValueError("scalar has odd half-power exponents")
    return QScalar(x.shift // 2, x.num[::2], x.den[::2])


def _pstretch(p):
    out = []
    for c in p:
        out.append(c)
        out.append(_GR_ZERO)
    return tuple(out[:-1]) if out else ()


class HalfExactField(ExactField):
    """Exact field with the internal variable read as s = q^(1/2)."""

    name = "exact-half"

    def qpow(self, k):
        return QScalar.q(2 * k)

    def qint(self, n, level=1):
        return qint(n, 2 * level)

    def half_qpow(self, k):
        return QScalar.q(k)


class HalfProbeField(ProbeField):
    """Probe field at q = s0**2 for a rational probe point s0 of s = q^(1/2)."""

    name = "probe-half"

    def __init__(self, s0):
        if isinstance(s0, int):
            s0 = GaussRat.from_int(s0)
        super().__init__(s0 * s0)
        self.s0 = s0

    def half_qpow(self, k):
        return self.s0 ** k
