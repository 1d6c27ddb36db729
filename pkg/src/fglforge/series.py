"""Exact truncated power series in one and several variables.

One-variable series are dense lists of coefficients c_0..c_N (x^{N+1} and
beyond are unknown, not zero).  Multivariable series are sparse maps from
exponent tuples to coefficients, truncated by total degree.  Every operation
computes its exact output precision: sums and products keep the minimum of
the operand precisions and the derivative drops one order.

Coefficients can live in any ring object following the RingElement
interface (the closed coefficient-ring family or a graded polynomial ring).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    Inconsistent,
    InsufficientPrecision,
    NonUnitLinearCoefficient,
    NonzeroConstantTerm,
    RingMismatch,
)


def _div_coeff(c, n: int):
    """Exact division of a coefficient by a positive integer."""
    ring = c.ring
    if ring.is_q_algebra():
        return c * ring.from_fraction(Fraction(1, n))
    payload = c.payload
    if isinstance(payload, int):
        q, r = divmod(payload, n)
        if r:
            raise Inconsistent(f"{payload} is not divisible by {n}")
        return ring.element(q)
    if isinstance(payload, dict):  # Laurent-type payloads: divide coefficientwise
        return ring.element({e: _div_coeff(x, n) for e, x in payload.items()})
    raise Inconsistent(f"no exact division by {n} in {ring}")


def _coerce_scalar(ring, c):
    if isinstance(c, int):
        return ring.from_int(c)
    if isinstance(c, Fraction):
        return ring.from_fraction(c)
    if c.ring != ring:
        raise RingMismatch("scalar lives in a different ring")
    return c


class TruncatedSeries1:
    """A power series in one variable, exact modulo x^{N+1}."""

    __slots__ = ("ring", "precision", "coeffs")

    def __init__(self, ring, coeffs, precision=None):
        if precision is None:
            precision = len(coeffs) - 1
        if precision < 0:
            raise ValueError("precision must be nonnegative")
        zero = ring.zero()
        coeffs = list(coeffs[: precision + 1])
        coeffs += [zero] * (precision + 1 - len(coeffs))
        self.ring = ring
        self.precision = precision
        self.coeffs = tuple(coeffs)

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, ring, precision):
        return cls(ring, [], precision)

    @classmethod
    def constant(cls, ring, value, precision):
        return cls(ring, [value], precision)

    @classmethod
    def x(cls, ring, precision):
        return cls(ring, [ring.zero(), ring.one()], precision)

    @classmethod
    def from_ints(cls, ring, ints, precision=None):
        return cls(ring, [ring.from_int(n) for n in ints], precision)

    @classmethod
    def from_fractions(cls, ring, values, precision=None):
        return cls(ring, [ring.from_fraction(Fraction(v)) for v in values], precision)

    # -- basic access -----------------------------------------------------
    def coefficient(self, n: int):
        if n > self.precision:
            raise IndexError(f"coefficient {n} beyond precision {self.precision}")
        return self.coeffs[n]

    def truncate(self, precision: int) -> "TruncatedSeries1":
        if precision > self.precision:
            raise ValueError("cannot raise precision")
        return TruncatedSeries1(self.ring, self.coeffs, precision)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def _check(self, other):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return min(self.precision, other.precision)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        n = self._check(other)
        return TruncatedSeries1(
            self.ring, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n
        )

    def __sub__(self, other):
        n = self._check(other)
        return TruncatedSeries1(
            self.ring, [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n
        )

    def __neg__(self):
        return TruncatedSeries1(self.ring, [-c for c in self.coeffs], self.precision)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries1):
            n = self._check(other)
            zero = self.ring.zero()
            out = [zero] * (n + 1)
            for i in range(n + 1):
                a = self.coeffs[i]
                if a.is_zero():
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return TruncatedSeries1(self.ring, out, n)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        c = _coerce_scalar(self.ring, c)
        return TruncatedSeries1(self.ring, [c * a for a in self.coeffs], self.precision)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries1):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.precision == other.precision
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.precision))

    # -- calculus ----------------------------------------------------------
    def derive(self) -> "TruncatedSeries1":
        """d/dx, at precision N-1."""
        if self.precision == 0:
            raise InsufficientPrecision(
                "the derivative of a precision-0 series carries no information"
            )
        out = [self.coeffs[n + 1] * (n + 1) for n in range(self.precision)]
        return TruncatedSeries1(self.ring, out, self.precision - 1)

    def integrate(self) -> "TruncatedSeries1":
        """Antiderivative with zero constant term, at precision N+1."""
        out = [self.ring.zero()]
        for n, c in enumerate(self.coeffs):
            out.append(_div_coeff(c, n + 1))
        return TruncatedSeries1(self.ring, out, self.precision + 1)

    # -- composition and friends ---------------------------------------
    def compose(self, inner) -> "TruncatedSeries1":
        """self(inner); inner must vanish at the origin."""
        return compose_series(self, inner)

    def inverse(self) -> "TruncatedSeries1":
        """Multiplicative inverse 1/f for f with unit constant term."""
        c0 = self.coeffs[0]
        if not c0.is_unit():
            raise NonUnitLinearCoefficient("constant term is not a unit")
        c0i = c0.inverse()
        out = [c0i]
        for n in range(1, self.precision + 1):
            acc = self.ring.zero()
            for k in range(1, n + 1):
                if not self.coeffs[k].is_zero():
                    acc = acc + self.coeffs[k] * out[n - k]
            out.append(-(c0i * acc))
        return TruncatedSeries1(self.ring, out, self.precision)

    def revert(self) -> "TruncatedSeries1":
        """Compositional inverse g with f(g(x)) = x = g(f(x)).

        Solved coefficient by coefficient; only the linear coefficient is
        inverted, so this works over any commutative ring where it is a unit.
        """
        if not self.coeffs[0].is_zero():
            raise NonzeroConstantTerm("reversion needs f(0) = 0")
        if self.precision < 1 or not self.coeffs[1].is_unit():
            raise NonUnitLinearCoefficient("reversion needs f'(0) to be a unit")
        f1_inv = self.coeffs[1].inverse()
        n = self.precision
        g = [self.ring.zero()] * (n + 1)
        g[1] = f1_inv
        for m in range(2, n + 1):
            partial = TruncatedSeries1(self.ring, g, m)
            err = compose_series(self.truncate(m), partial).coeffs[m]
            g[m] = -(f1_inv * err)
        return TruncatedSeries1(self.ring, g, n)

    def __repr__(self):
        from .iojson import series1_to_text

        return f"<series {series1_to_text(self, 'x')} + O(x^{self.precision + 1})>"


class TruncatedSeriesN:
    """A sparse series in several variables, exact modulo total degree > N."""

    __slots__ = ("ring", "nvars", "precision", "coeffs")

    def __init__(self, ring, nvars, coeffs, precision):
        self.ring = ring
        self.nvars = nvars
        self.precision = precision
        self.coeffs = {
            tuple(k): c
            for k, c in coeffs.items()
            if sum(k) <= precision and not c.is_zero()
        }

    @classmethod
    def zero(cls, ring, nvars, precision):
        return cls(ring, nvars, {}, precision)

    @classmethod
    def constant(cls, ring, nvars, value, precision):
        return cls(ring, nvars, {(0,) * nvars: value}, precision)

    @classmethod
    def variable(cls, ring, nvars, index, precision):
        key = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(ring, nvars, {key: ring.one()}, precision)

    def coefficient(self, key):
        key = tuple(key)
        if sum(key) > self.precision:
            raise IndexError(f"degree {sum(key)} beyond precision {self.precision}")
        return self.coeffs.get(key, self.ring.zero())

    def truncate(self, precision):
        if precision > self.precision:
            raise ValueError("cannot raise precision")
        return type(self)(self.ring, self.nvars, self.coeffs, precision)

    def is_zero(self):
        return not self.coeffs

    def constant_term(self):
        return self.coeffs.get((0,) * self.nvars, self.ring.zero())

    def _set_constant(self, value):
        key = (0,) * self.nvars
        coeffs = dict(self.coeffs)
        if value.is_zero():
            coeffs.pop(key, None)
        else:
            coeffs[key] = value
        return type(self)(self.ring, self.nvars, coeffs, self.precision)

    def _check(self, other):
        if other.ring != self.ring or other.nvars != self.nvars:
            raise RingMismatch("series are not over the same ring and variables")
        return min(self.precision, other.precision)

    def __add__(self, other):
        n = self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out[k] + c if k in out else c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return type(self)(self.ring, self.nvars, out, n)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)(
            self.ring,
            self.nvars,
            {k: -c for k, c in self.coeffs.items()},
            self.precision,
        )

    def __mul__(self, other):
        if isinstance(other, TruncatedSeriesN):
            n = self._check(other)
            out = {}
            for k1, c1 in self.coeffs.items():
                d1 = sum(k1)
                if d1 > n:
                    continue
                for k2, c2 in other.coeffs.items():
                    if d1 + sum(k2) > n:
                        continue
                    k = tuple(a + b for a, b in zip(k1, k2))
                    p = c1 * c2
                    if k in out:
                        p = out[k] + p
                    if p.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = p
            return type(self)(self.ring, self.nvars, out, n)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        c = _coerce_scalar(self.ring, c)
        return type(self)(
            self.ring,
            self.nvars,
            {k: c * v for k, v in self.coeffs.items()},
            self.precision,
        )

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeriesN):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.nvars == other.nvars
            and self.precision == other.precision
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.nvars, self.precision, len(self.coeffs)))

    def __repr__(self):
        terms = len(self.coeffs)
        return f"<series in {self.nvars} vars, {terms} terms, prec {self.precision}>"


class TruncatedSeries2(TruncatedSeriesN):
    """Two-variable series, the body type of formal group laws."""

    def __init__(self, ring, nvars, coeffs, precision):
        if nvars != 2:
            raise ValueError("TruncatedSeries2 has exactly two variables")
        super().__init__(ring, 2, coeffs, precision)

    @classmethod
    def make(cls, ring, coeffs, precision):
        return cls(ring, 2, coeffs, precision)

    @classmethod
    def from_entries(cls, ring, entries, precision):
        """entries: iterable of (i, j, coefficient)."""
        coeffs = {}
        for i, j, c in entries:
            coeffs[(i, j)] = coeffs.get((i, j), ring.zero()) + c
        return cls(ring, 2, coeffs, precision)

    def at(self, i, j):
        return self.coefficient((i, j))

    def swap(self) -> "TruncatedSeries2":
        return TruncatedSeries2(
            self.ring, 2, {(j, i): c for (i, j), c in self.coeffs.items()}, self.precision
        )

    def eval_y0(self) -> TruncatedSeries1:
        """F(x, 0) as a one-variable series."""
        out = [self.ring.zero()] * (self.precision + 1)
        for (i, j), c in self.coeffs.items():
            if j == 0:
                out[i] = c
        return TruncatedSeries1(self.ring, out, self.precision)

    def eval_x0(self) -> TruncatedSeries1:
        return self.swap().eval_y0()

    def partial_y_at_zero(self) -> TruncatedSeries1:
        """(dF/dy)(x, 0), at precision N-1."""
        out = [self.ring.zero()] * self.precision
        for (i, j), c in self.coeffs.items():
            if j == 1 and i <= self.precision - 1:
                out[i] = c
        return TruncatedSeries1(self.ring, out, self.precision - 1)


# -- substitution -------------------------------------------------------------


def _is_multi(series) -> bool:
    return isinstance(series, TruncatedSeriesN)


def compose_series(outer: TruncatedSeries1, inner):
    """outer(inner) for an inner series (1 or n variables) vanishing at 0."""
    if _is_multi(inner):
        if not inner.constant_term().is_zero():
            raise NonzeroConstantTerm("inner series must vanish at the origin")
        n = min(outer.precision, inner.precision)
        inner = inner.truncate(n)
        acc = type(inner)(inner.ring, inner.nvars, {}, n)
        acc = acc._set_constant(outer.coeffs[n])
        for k in range(n - 1, -1, -1):
            acc = acc * inner
            acc = acc._set_constant(acc.constant_term() + outer.coeffs[k])
        return acc
    if not inner.coeffs[0].is_zero():
        raise NonzeroConstantTerm("inner series must vanish at the origin")
    n = min(outer.precision, inner.precision)
    inner = inner.truncate(n)
    acc = TruncatedSeries1.constant(outer.ring, outer.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        acc = acc * inner
        acc = TruncatedSeries1(
            acc.ring, [acc.coeffs[0] + outer.coeffs[k]] + list(acc.coeffs[1:]), n
        )
    return acc


def substitute_pair(body: TruncatedSeries2, u, v):
    """body(u, v) for series u, v of a common shape vanishing at the origin.

    The result has the shape of u.  Powers of u and v are cached; sparse
    representations keep single-variable substituends cheap.
    """
    if _is_multi(u):
        if not (u.constant_term().is_zero() and v.constant_term().is_zero()):
            raise NonzeroConstantTerm("substituted series must vanish at the origin")
        n = min(body.precision, u.precision, v.precision)
        one = type(u)(u.ring, u.nvars, {(0,) * u.nvars: u.ring.one()}, n)
    else:
        if not (u.coeffs[0].is_zero() and v.coeffs[0].is_zero()):
            raise NonzeroConstantTerm("substituted series must vanish at the origin")
        n = min(body.precision, u.precision, v.precision)
        one = TruncatedSeries1.constant(u.ring, u.ring.one(), n)
    u = u.truncate(n)
    v = v.truncate(n)
    u_pows = {0: one}
    v_pows = {0: one}

    def power(cache, base, k):
        while k not in cache:
            top = max(cache)
            cache[top + 1] = cache[top] * base
        return cache[k]

    acc = None
    for (i, j), c in sorted(body.coeffs.items()):
        if i + j > n:
            continue
        term = (power(u_pows, u, i) * power(v_pows, v, j)).scale(c)
        acc = term if acc is None else acc + term
    if acc is None:
        if _is_multi(u):
            return type(u)(u.ring, u.nvars, {}, n)
        return TruncatedSeries1.zero(u.ring, n)
    return acc


def embed2(body: TruncatedSeries2, nvars: int, positions) -> TruncatedSeriesN:
    """View a two-variable series inside an nvars-variable series ring."""
    p0, p1 = positions
    out = {}
    for (i, j), c in body.coeffs.items():
        key = [0] * nvars
        key[p0] = i
        key[p1] = j
        out[tuple(key)] = c
    return TruncatedSeriesN(body.ring, nvars, out, body.precision)
