"""The two models of the degree-0 K-theory operation algebra.

* Series model: Z[[x]] with the composition product, determined by
  (1-x)^-k o (1-x)^-l = (1-x)^-kl, together with omega(f) = (1-x) df/dx.
  The full operation ring is a beta-twisted Laurent algebra over the
  inverse limit along omega, modeled here by finite towers
  (f_0, ..., f_D) with omega(f_{j+1}) = f_j; the twist is b^-1 a b = omega(a).

* Sequence model: Q^Z with pointwise multiplication, windowed to a finite
  index range; the twist is b^-1 a b = sigma(a) with sigma the shift
  (a_n) -> (a_{n+1}).

The Adams transform (a_n) -> sum a_n/n! (-log(1-x))^n is an isomorphism
between the models carrying sigma to omega; the k-th Adams operation is the
tower (k^-n (1-x)^-k)_n, equivalently the sequence (k^n)_n.

The composition product is always evaluated through the transform; when both
factors are integral the result is asserted integral (closure of Z[[x]]
under o is a theorem being monitored, not assumed).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    InsufficientDepth,
    IntegralityViolation,
    ModelMismatch,
    NonInvertibleK,
    RingMismatch,
    WindowMiss,
)
from .rings import Integers, Rationals
from .series import TruncatedSeries1

_Z = Integers()
_Q = Rationals()


def _to_rational(f: TruncatedSeries1) -> TruncatedSeries1:
    if f.ring == _Q:
        return f
    if f.ring == _Z:
        return TruncatedSeries1.from_fractions(
            _Q, [Fraction(c.payload) for c in f.coeffs], f.precision
        )
    raise RingMismatch("composition series live over Z or Q")


def _try_integral(f: TruncatedSeries1):
    """Demote a rational series to Z when every coefficient is integral."""
    if f.ring == _Z:
        return f
    if all(c.payload.denominator == 1 for c in f.coeffs):
        return TruncatedSeries1.from_ints(
            _Z, [c.payload.numerator for c in f.coeffs], f.precision
        )
    return None


def geometric_power(k: int, precision: int, ring=None) -> TruncatedSeries1:
    """(1-x)^-k for any integer k (a polynomial when k <= 0)."""
    if ring is None:
        ring = _Z
    coeffs = []
    c = Fraction(1)
    for n in range(precision + 1):
        coeffs.append(c)
        c = c * Fraction(k + n, n + 1)
    assert all(v.denominator == 1 for v in coeffs)
    if ring == _Z:
        return TruncatedSeries1.from_ints(ring, [v.numerator for v in coeffs], precision)
    return TruncatedSeries1.from_fractions(ring, coeffs, precision)


def omega(f: TruncatedSeries1) -> TruncatedSeries1:
    """(1-x) * df/dx, at precision N-1."""
    df = f.derive()
    one_minus_x = TruncatedSeries1(f.ring, [f.ring.one(), -f.ring.one()], df.precision)
    return one_minus_x * df


def omega_solve(f: TruncatedSeries1, constant_term=None) -> TruncatedSeries1:
    """A g with omega(g) = f through index N, at precision N+1.

    The kernel of omega is the constants; the solution is normalized by the
    given constant term (default 0).  The triangular recurrence
    (n+1) g_{n+1} = f_n + n g_n needs exact division by n+1, so a non-Q
    coefficient ring raises Inconsistent when a division fails.
    """
    from .series import _div_coeff

    ring = f.ring
    g = [constant_term if constant_term is not None else ring.zero()]
    for n in range(f.precision + 1):
        g.append(_div_coeff(f.coeffs[n] + g[n] * n, n + 1))
    return TruncatedSeries1(ring, g, f.precision + 1)


# -- the Adams transform -------------------------------------------------------


def _factorials(n: int):
    out = [1]
    for k in range(1, n + 1):
        out.append(out[-1] * k)
    return out


def _exp_complement(precision: int) -> TruncatedSeries1:
    """1 - exp(-y) over Q."""
    fact = _factorials(precision)
    coeffs = [Fraction(0)]
    for n in range(1, precision + 1):
        coeffs.append(Fraction((-1) ** (n + 1), fact[n]))
    return TruncatedSeries1.from_fractions(_Q, coeffs, precision)


def _neg_log_complement(precision: int) -> TruncatedSeries1:
    """-log(1-x) over Q."""
    coeffs = [Fraction(0)] + [Fraction(1, n) for n in range(1, precision + 1)]
    return TruncatedSeries1.from_fractions(_Q, coeffs, precision)


# Matrices of the transform and its inverse, built once per precision from
# the defining series (powers of 1 - exp(-y), resp. of -log(1-x)).  Both
# have integer entries, so each transform is an integer matrix product.
_FWD_CACHE: dict = {}
_INV_CACHE: dict = {}


def _forward_matrix(precision: int):
    """fwd[n][k] = n! [y^n] (1 - exp(-y))^k."""
    cached = _FWD_CACHE.get(precision)
    if cached is not None:
        return cached
    u = _exp_complement(precision)
    fact = _factorials(precision)
    power = TruncatedSeries1.constant(_Q, _Q.one(), precision)
    matrix = []
    for _ in range(precision + 1):
        matrix.append([fact[n] * power.coeffs[n].payload for n in range(precision + 1)])
        power = power * u
    assert all(v.denominator == 1 for col in matrix for v in col)
    fwd = [[matrix[k][n].numerator for k in range(precision + 1)] for n in range(precision + 1)]
    _FWD_CACHE[precision] = fwd
    return fwd


def _inverse_matrix(precision: int):
    """inv[m][n] = m! [x^m] (-log(1-x))^n / n!."""
    cached = _INV_CACHE.get(precision)
    if cached is not None:
        return cached
    log = _neg_log_complement(precision)
    fact = _factorials(precision)
    power = TruncatedSeries1.constant(_Q, _Q.one(), precision)
    matrix = []
    for n in range(precision + 1):
        col = [fact[m] * power.coeffs[m].payload / fact[n] for m in range(precision + 1)]
        matrix.append(col)
        power = power * log
    assert all(v.denominator == 1 for col in matrix for v in col)
    inv = [[matrix[n][m].numerator for n in range(precision + 1)] for m in range(precision + 1)]
    _INV_CACHE[precision] = inv
    return inv


class AdamsSequence:
    """A rational sequence on a finite window [lo, hi] of integer indices."""

    __slots__ = ("lo", "values")

    def __init__(self, lo: int, values):
        self.lo = lo
        self.values = tuple(Fraction(v) for v in values)

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    @property
    def window(self):
        return (self.lo, self.hi)

    def value(self, n: int) -> Fraction:
        if not self.lo <= n <= self.hi:
            raise WindowMiss(f"index {n} outside window [{self.lo}, {self.hi}]")
        return self.values[n - self.lo]

    def restrict(self, lo: int, hi: int) -> "AdamsSequence":
        if lo < self.lo or hi > self.hi:
            raise WindowMiss(f"[{lo}, {hi}] exceeds window [{self.lo}, {self.hi}]")
        return AdamsSequence(lo, [self.value(n) for n in range(lo, hi + 1)])

    def shift(self, j: int) -> "AdamsSequence":
        """sigma^j: n -> value(n + j); the window moves to [lo-j, hi-j]."""
        return AdamsSequence(self.lo - j, self.values)

    def _meet(self, other):
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if hi < lo:
            raise WindowMiss("windows do not overlap")
        return lo, hi

    def __add__(self, other):
        lo, hi = self._meet(other)
        return AdamsSequence(
            lo, [self.value(n) + other.value(n) for n in range(lo, hi + 1)]
        )

    def __sub__(self, other):
        lo, hi = self._meet(other)
        return AdamsSequence(
            lo, [self.value(n) - other.value(n) for n in range(lo, hi + 1)]
        )

    def __mul__(self, other):
        if isinstance(other, AdamsSequence):
            lo, hi = self._meet(other)
            return AdamsSequence(
                lo, [self.value(n) * other.value(n) for n in range(lo, hi + 1)]
            )
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "AdamsSequence":
        c = Fraction(c)
        return AdamsSequence(self.lo, [c * v for v in self.values])

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def agrees_on_overlap(self, other: "AdamsSequence") -> bool:
        """Equality of values on the intersection of the two windows."""
        lo, hi = self._meet(other)
        return all(self.value(n) == other.value(n) for n in range(lo, hi + 1))

    def __eq__(self, other):
        if not isinstance(other, AdamsSequence):
            return NotImplemented
        return self.lo == other.lo and self.values == other.values

    def __hash__(self):
        return hash((self.lo, self.values))

    def __repr__(self):
        vals = ", ".join(str(v) for v in self.values)
        return f"<sequence [{self.lo}..{self.hi}]: {vals}>"


def adams_transform(f: TruncatedSeries1) -> AdamsSequence:
    """a_n = n! [y^n] f(1 - exp(-y)), on the window [0, N].

    A ring isomorphism onto its image: products under o map to pointwise
    products, and omega maps to the shift.
    """
    if f.ring not in (_Z, _Q):
        raise RingMismatch("composition series live over Z or Q")
    coeffs = [c.payload for c in f.coeffs]
    fwd = _forward_matrix(f.precision)
    values = []
    for n in range(f.precision + 1):
        row = fwd[n]
        values.append(sum(row[k] * coeffs[k] for k in range(n + 1)))
    return AdamsSequence(0, values)


def adams_transform_inv(seq: AdamsSequence) -> TruncatedSeries1:
    """sum_n a_n/n! (-log(1-x))^n at precision hi; the window must start at 0."""
    if seq.lo != 0:
        raise WindowMiss("inverse transform needs a window starting at 0")
    precision = seq.hi
    inv = _inverse_matrix(precision)
    fact = _factorials(precision)
    coeffs = []
    for m in range(precision + 1):
        row = inv[m]
        total = sum(row[n] * seq.values[n] for n in range(m + 1))
        coeffs.append(total / fact[m])
    return TruncatedSeries1.from_fractions(_Q, coeffs, precision)


def circ_compose(f: TruncatedSeries1, g: TruncatedSeries1) -> TruncatedSeries1:
    """The composition product, evaluated through the Adams transform.

    Integral inputs must produce integral output; a violation signals an
    implementation bug, not a property of the inputs.
    """
    n = min(f.precision, g.precision)
    product = adams_transform(f.truncate(n)) * adams_transform(g.truncate(n))
    result = adams_transform_inv(product)
    if f.ring == _Z and g.ring == _Z:
        integral = _try_integral(result)
        if integral is None:
            raise IntegralityViolation(
                "integral composition series produced a non-integral coefficient"
            )
        return integral
    return result


class CompositionSeries:
    """An element of the composition ring (Z[[x]] or Q[[x]] with o)."""

    __slots__ = ("series",)

    def __init__(self, series: TruncatedSeries1):
        if series.ring not in (_Z, _Q):
            raise RingMismatch("composition series live over Z or Q")
        self.series = series

    @classmethod
    def geometric(cls, k: int, precision: int, ring=None) -> "CompositionSeries":
        return cls(geometric_power(k, precision, ring))

    @property
    def precision(self):
        return self.series.precision

    def circ(self, other: "CompositionSeries") -> "CompositionSeries":
        return CompositionSeries(circ_compose(self.series, other.series))

    def transform(self) -> AdamsSequence:
        return adams_transform(self.series)

    def __eq__(self, other):
        if not isinstance(other, CompositionSeries):
            return NotImplemented
        a, b = self.series, other.series
        if a.ring != b.ring:
            fa, fb = _to_rational(a), _to_rational(b)
            return fa == fb
        return a == b

    def __hash__(self):
        return hash(self.series)

    def __repr__(self):
        return f"<composition {self.series!r}>"


# -- towers ---------------------------------------------------------------------


class OmegaTower:
    """Levels f_0..f_D at a common precision with omega(f_{j+1}) = f_j.

    The tower relation is verified through coefficient index N-1 (the
    derivative inside omega drops one order of information).
    """

    __slots__ = ("levels", "precision")

    def __init__(self, levels):
        levels = list(levels)
        if not levels:
            raise ValueError("a tower needs at least one level")
        precision = min(f.precision for f in levels)
        levels = [f.truncate(precision) for f in levels]
        if precision >= 1:  # at precision 0 the relation carries no content
            for j in range(len(levels) - 1):
                lhs = omega(levels[j + 1])
                if lhs != levels[j].truncate(precision - 1):
                    raise ValueError(f"omega(level {j + 1}) != level {j}")
        self.levels = tuple(levels)
        self.precision = precision

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def level(self, j: int) -> TruncatedSeries1:
        return self.levels[j]

    def omega_shift(self, j: int) -> "OmegaTower":
        """The twist omega^j; j < 0 consumes depth, j > 0 costs precision."""
        tower = self
        if j >= 0:
            for _ in range(j):
                new_top = omega(tower.levels[0])
                levels = [new_top] + [
                    f.truncate(new_top.precision) for f in tower.levels[:-1]
                ]
                tower = OmegaTower(levels)
            return tower
        if -j > tower.depth:
            raise InsufficientDepth(
                f"twist by beta^{j} needs depth > {-j - 1}, have {tower.depth}"
            )
        return OmegaTower(tower.levels[-j:])

    def circ(self, other: "OmegaTower") -> "OmegaTower":
        depth = min(self.depth, other.depth)
        precision = min(self.precision, other.precision)
        return OmegaTower(
            [
                circ_compose(
                    self.levels[j].truncate(precision),
                    other.levels[j].truncate(precision),
                )
                for j in range(depth + 1)
            ]
        )

    def __add__(self, other):
        depth = min(self.depth, other.depth)
        precision = min(self.precision, other.precision)
        return OmegaTower(
            [
                self.levels[j].truncate(precision) + other.levels[j].truncate(precision)
                for j in range(depth + 1)
            ]
        )

    def scale(self, c) -> "OmegaTower":
        return OmegaTower([f.scale(_coerce(f.ring, c)) for f in self.levels])

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.levels)

    def __eq__(self, other):
        if not isinstance(other, OmegaTower):
            return NotImplemented
        return self.levels == other.levels

    def __hash__(self):
        return hash(self.levels)

    def __repr__(self):
        return f"<tower depth {self.depth} precision {self.precision}>"


def _coerce(ring, c):
    if isinstance(c, int):
        return ring.from_int(c)
    return ring.from_fraction(Fraction(c))


# -- the twisted Laurent algebra ----------------------------------------------------


class TwistedLaurent:
    """A finite sum of beta^j * a_j in normal form (beta powers on the left).

    model = "sequence": a_j are AdamsSequences, twist a.beta = beta.sigma(a).
    model = "tower":    a_j are OmegaTowers,   twist a.beta = beta.omega(a).
    """

    __slots__ = ("model", "terms")

    def __init__(self, model: str, terms: dict):
        if model not in ("sequence", "tower"):
            raise ValueError(f"unknown model {model!r}")
        self.model = model
        self.terms = {int(j): a for j, a in terms.items() if not a.is_zero()}

    @classmethod
    def from_component(cls, model, beta_exponent, component):
        return cls(model, {beta_exponent: component})

    def component(self, j: int):
        return self.terms.get(j)

    def beta_exponents(self):
        return sorted(self.terms)

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if not isinstance(other, TwistedLaurent):
            raise ModelMismatch("expected a twisted Laurent element")
        if other.model != self.model:
            raise ModelMismatch(f"{self.model} vs {other.model}")

    def _twist(self, a, j: int):
        """beta^-j a beta^j: sigma^j in the sequence model, omega^j in the tower."""
        if j == 0:
            return a
        if self.model == "sequence":
            return a.shift(j)
        return a.omega_shift(j)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for j, a in other.terms.items():
            out[j] = out[j] + a if j in out else a
        return TwistedLaurent(self.model, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TwistedLaurent):
            self._check(other)
            out = {}
            for i, a in self.terms.items():
                for j, b in other.terms.items():
                    twisted = self._twist(a, j)
                    prod = twisted * b if self.model == "sequence" else twisted.circ(b)
                    key = i + j
                    out[key] = out[key] + prod if key in out else prod
            return TwistedLaurent(self.model, out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        return TwistedLaurent(self.model, {j: a.scale(c) for j, a in self.terms.items()})

    def agrees_with(self, other: "TwistedLaurent") -> bool:
        """Componentwise equality on common windows (resp. common depth and
        precision); the honest equality notion when operands went through
        twists that shrink their domains differently."""
        self._check(other)
        if set(self.terms) != set(other.terms):
            return False
        for j, a in self.terms.items():
            b = other.terms[j]
            if self.model == "sequence":
                if not a.agrees_on_overlap(b):
                    return False
            else:
                depth = min(a.depth, b.depth)
                precision = min(a.precision, b.precision)
                for k in range(depth + 1):
                    if a.level(k).truncate(precision) != b.level(k).truncate(precision):
                        return False
        return True

    def __eq__(self, other):
        if not isinstance(other, TwistedLaurent):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.model, tuple(sorted(self.terms))))

    def __repr__(self):
        parts = [f"beta^{j}*{a!r}" for j, a in sorted(self.terms.items())]
        return f"<{self.model}: {' + '.join(parts) or '0'}>"


def twisted_laurent_multiply(u: TwistedLaurent, v: TwistedLaurent) -> TwistedLaurent:
    """Normal-form product; exposed as a named operation besides ``*``."""
    return u * v


# -- named elements --------------------------------------------------------------


def adams_operation_tower(k: int, depth: int, precision: int, ring=None) -> TwistedLaurent:
    """psi^k in the tower model: level n is k^-n (1-x)^-k.

    k must be invertible in the coefficient ring: any nonzero k over Q,
    k = +-1 over Z.
    """
    if k == 0:
        raise NonInvertibleK("psi^0 has no tower model (0 is not invertible)")
    if ring is None:
        ring = _Z if k in (1, -1) else _Q
    if ring == _Z and k not in (1, -1):
        raise NonInvertibleK(f"{k} is not invertible over Z")
    if ring not in (_Z, _Q):
        raise NonInvertibleK("towers live over Z or Q")
    base = geometric_power(k, precision, ring)
    levels = []
    for n in range(depth + 1):
        factor = Fraction(1, 1) / Fraction(k) ** n
        levels.append(base.scale(_coerce(ring, factor)))
    return TwistedLaurent.from_component("tower", 0, OmegaTower(levels))


def adams_operation_sequence(k: int, window) -> TwistedLaurent:
    """psi^k in the sequence model: (k^n) on the window.

    For k = 0 the rank-projector convention applies: psi^0 is the
    characteristic function of 0 (0^0 = 1, and 0 at negative indices).
    """
    lo, hi = window
    if k == 0:
        values = [1 if n == 0 else 0 for n in range(lo, hi + 1)]
    else:
        values = [Fraction(k) ** n for n in range(lo, hi + 1)]
    return TwistedLaurent.from_component("sequence", 0, AdamsSequence(lo, values))


def idempotent_sequence(n: int, window) -> AdamsSequence:
    """The characteristic function of n on the window."""
    lo, hi = window
    if not lo <= n <= hi:
        raise WindowMiss(f"{n} outside window [{lo}, {hi}]")
    return AdamsSequence(lo, [1 if m == n else 0 for m in range(lo, hi + 1)])


def idempotent_element(n: int, window) -> TwistedLaurent:
    return TwistedLaurent.from_component("sequence", 0, idempotent_sequence(n, window))


def unit_sequence(window) -> AdamsSequence:
    lo, hi = window
    return AdamsSequence(lo, [1] * (hi - lo + 1))


def beta_power_sequence(j: int, window) -> TwistedLaurent:
    """beta^j (times the unit) in the sequence model."""
    return TwistedLaurent.from_component("sequence", j, unit_sequence(window))


def beta_power_tower(j: int, depth: int, precision: int, ring=None) -> TwistedLaurent:
    """beta^j (times the o-unit tower, all levels (1-x)^-1)."""
    if ring is None:
        ring = _Z
    unit = geometric_power(1, precision, ring)
    return TwistedLaurent.from_component(
        "tower", j, OmegaTower([unit] * (depth + 1))
    )


# -- the isomorphism between the models --------------------------------------------


def tower_to_sequence(element: TwistedLaurent) -> TwistedLaurent:
    """Transport along the Adams transform: degree-0 data maps levelwise,
    with index -k read from level k; beta maps to beta.

    The resulting windows are [-depth, precision] per component.
    """
    if element.model != "tower":
        raise ModelMismatch("expected a tower-model element")
    terms = {}
    for j, tower in element.terms.items():
        head = adams_transform(tower.level(0))
        negative = [
            adams_transform(tower.level(k)).value(0) for k in range(tower.depth, 0, -1)
        ]
        terms[j] = AdamsSequence(-tower.depth, negative + list(head.values))
    return TwistedLaurent("sequence", terms)


def sequence_to_tower(element: TwistedLaurent, depth: int | None = None) -> TwistedLaurent:
    """The inverse transport: level k is the inverse transform of the
    sequence shifted down by k, so the requested depth cannot exceed the
    available negative window."""
    if element.model != "sequence":
        raise ModelMismatch("expected a sequence-model element")
    terms = {}
    for j, seq in element.terms.items():
        available = -seq.lo
        want = available if depth is None else depth
        if want < 0 or want > available or seq.lo > 0:
            raise InsufficientDepth(
                f"depth {want} needs window down to {-want}, have [{seq.lo}, {seq.hi}]"
            )
        levels = []
        for k in range(want + 1):
            shifted = AdamsSequence(0, [seq.value(n - k) for n in range(0, seq.hi + 1)])
            levels.append(adams_transform_inv(shifted))
        terms[j] = OmegaTower(levels)
    return TwistedLaurent("tower", terms)


def mult_add_iso(element: TwistedLaurent, depth: int | None = None) -> TwistedLaurent:
    """The isomorphism between the models, in whichever direction applies."""
    if element.model == "tower":
        return tower_to_sequence(element)
    return sequence_to_tower(element, depth)


def eigenspace_action(element: TwistedLaurent, m: int) -> dict:
    """The action on the rank-one test module Q[beta^±1]: beta^m maps to
    sum_j a_j(m) beta^(m+j); returned as an exponent -> coefficient map."""
    if element.model != "sequence":
        raise ModelMismatch("the eigenspace action reads the sequence model")
    out = {}
    for j, seq in element.terms.items():
        c = seq.value(m)
        if c:
            out[m + j] = out.get(m + j, Fraction(0)) + c
    return {e: c for e, c in out.items() if c}
