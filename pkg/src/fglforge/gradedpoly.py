"""Graded polynomial rings over Q, truncated by total weighted degree.

These carry the rational Lazard-type coefficient rings Q[m_1, m_2, ...] and
Q[m_*, b_*]: finitely many named generators with positive integer degrees,
exact rational coefficients, and every monomial of degree above the
configured truncation identified with zero.  Truncation by degree is an
ideal, so the result is an honest ring and all arithmetic stays exact below
the cut.

Monomials are packed exponent vectors (one fixed-width field per generator),
so monomial products are single integer additions.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import RingMismatch, Unsupported
from .rings import CoefficientRing, RingElement

_BITS = 6
_MASK = (1 << _BITS) - 1


def _norm_coeff(c):
    """Keep integer-valued coefficients as ints for speed."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class GradedPolynomialRing(CoefficientRing):
    """Q[g_1, ..., g_k] with deg(g_i) > 0, truncated above max_degree."""

    kind = "graded_polynomial"

    def __init__(self, generators, max_degree: int):
        """generators: iterable of (name, degree) with positive degrees."""
        gens = [(str(name), int(degree)) for name, degree in generators]
        if any(d < 1 for _, d in gens):
            raise ValueError("generator degrees must be positive")
        if len(set(name for name, _ in gens)) != len(gens):
            raise ValueError("generator names must be distinct")
        if not 0 <= max_degree <= _MASK:
            raise ValueError(f"max_degree must lie in [0, {_MASK}]")
        self.gens = tuple(gens)
        self.names = tuple(name for name, _ in gens)
        self.degrees = tuple(d for _, d in gens)
        self.max_degree = max_degree
        self._index = {name: i for i, (name, _) in enumerate(gens)}
        self._deg_memo = {0: 0}

    # -- monomial keys ----------------------------------------------------
    def pack(self, exponents) -> int:
        key = 0
        for i, e in enumerate(exponents):
            key |= int(e) << (i * _BITS)
        return key

    def unpack(self, key: int):
        out = []
        for _ in self.gens:
            out.append(key & _MASK)
            key >>= _BITS
        return tuple(out)

    def key_degree(self, key: int) -> int:
        memo = self._deg_memo
        d = memo.get(key)
        if d is None:
            exps = self.unpack(key)
            d = sum(e * w for e, w in zip(exps, self.degrees))
            memo[key] = d
        return d

    def monomial_keys_of_degree(self, d: int):
        """All packed monomials of exact weighted degree d, sorted."""
        keys = []

        def rec(i, remaining, key):
            if remaining == 0:
                keys.append(key)
                return
            if i == len(self.gens):
                return
            w = self.degrees[i]
            e = 0
            while e * w <= remaining:
                rec(i + 1, remaining - e * w, key | (e << (i * _BITS)))
                e += 1

        rec(0, d, 0)
        return sorted(keys)

    # -- element construction ----------------------------------------------
    def from_int(self, n):
        return RingElement(self, {0: n} if n else {})

    def from_fraction(self, q):
        q = _norm_coeff(Fraction(q))
        return RingElement(self, {0: q} if q else {})

    def generator(self, name: str) -> RingElement:
        i = self._index[name]
        if self.degrees[i] > self.max_degree:
            return RingElement(self, {})
        return RingElement(self, {1 << (i * _BITS): 1})

    def monomial(self, exponents, coeff=1) -> RingElement:
        key = self.pack(exponents)
        if self.key_degree(key) > self.max_degree:
            return RingElement(self, {})
        c = _norm_coeff(Fraction(coeff))
        return RingElement(self, {key: c} if c else {})

    def _canonical(self, payload):
        out = {}
        for key, c in payload.items():
            c = _norm_coeff(c)
            if c and self.key_degree(key) <= self.max_degree:
                out[key] = c
        return out

    # -- payload arithmetic -------------------------------------------------
    def _add(self, a, b):
        out = dict(a)
        for k, c in b.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm_coeff(s)
            else:
                out.pop(k, None)
        return out

    def _neg(self, a):
        return {k: -c for k, c in a.items()}

    def _mul(self, a, b):
        out = {}
        max_degree = self.max_degree
        deg = self.key_degree
        for k1, c1 in a.items():
            d1 = deg(k1)
            for k2, c2 in b.items():
                if d1 + deg(k2) > max_degree:
                    continue
                k = k1 + k2
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        for k in [k for k, c in out.items() if isinstance(c, Fraction)]:
            out[k] = _norm_coeff(out[k])
        return out

    def _is_zero(self, a):
        return not a

    def _freeze(self, a):
        return tuple(sorted(a.items()))

    # -- structure ----------------------------------------------------------
    def is_unit(self, elt):
        # positive-degree generators are nilpotent below the truncation cut
        return bool(elt.payload.get(0))

    def invert(self, elt):
        c0 = elt.payload.get(0)
        if not c0:
            raise Unsupported("element has zero constant term; not a unit")
        c0_inv = Fraction(1, 1) / c0
        scaled = RingElement(self, self._canonical({k: c * c0_inv for k, c in elt.payload.items()}))
        one = self.one()
        n = scaled - one
        inv = one
        power = one
        sign = -1
        while True:
            power = power * n
            if power.is_zero():
                break
            inv = inv + (power if sign > 0 else -power)
            sign = -sign
        return inv * self.from_fraction(c0_inv)

    def is_nilpotent(self, elt):
        return 0 not in elt.payload

    def is_q_algebra(self):
        return True

    def generators(self):
        return {name: self.generator(name) for name in self.names}

    def generator_degrees(self):
        return {name: d for name, d in self.gens}

    # -- graded structure -----------------------------------------------------
    def homogeneous_component(self, elt: RingElement, d: int) -> RingElement:
        return RingElement(
            self, {k: c for k, c in elt.payload.items() if self.key_degree(k) == d}
        )

    def degrees_present(self, elt: RingElement):
        return sorted({self.key_degree(k) for k in elt.payload})

    def evaluate(self, elt: RingElement, assignment: dict, target: CoefficientRing):
        """Substitute ring elements for the generators.

        Every generator must be assigned; the target must be a Q-algebra
        whenever a non-integer coefficient occurs.
        """
        missing = [n for n in self.names if n not in assignment]
        if missing:
            raise Unsupported(f"no value assigned to {missing}")
        values = [assignment[n] for n in self.names]
        for v in values:
            if v.ring != target:
                raise RingMismatch("assignment values must live in the target ring")
        total = target.zero()
        for key, c in elt.payload.items():
            term = (
                target.from_int(c)
                if isinstance(c, int)
                else target.from_fraction(c)
            )
            for i, e in enumerate(self.unpack(key)):
                if e:
                    term = term * values[i] ** e
            total = total + term
        return total

    def __eq__(self, other):
        return (
            isinstance(other, GradedPolynomialRing)
            and other.gens == self.gens
            and other.max_degree == self.max_degree
        )

    def __hash__(self):
        return hash(("GradedPoly", self.gens, self.max_degree))

    def __repr__(self):
        return f"Q[{', '.join(self.names)}]<=deg {self.max_degree}"


def lazard_base_ring(n: int, max_degree: int | None = None) -> GradedPolynomialRing:
    """Q[m_1..m_n] with |m_i| = i (the rational Lazard ring, truncated)."""
    if max_degree is None:
        max_degree = n
    return GradedPolynomialRing([(f"m{i}", i) for i in range(1, n + 1)], max_degree)


def coordinate_change_ring(n: int, max_degree: int | None = None) -> GradedPolynomialRing:
    """Q[b_1..b_n] with |b_i| = i."""
    if max_degree is None:
        max_degree = n
    return GradedPolynomialRing([(f"b{i}", i) for i in range(1, n + 1)], max_degree)


def split_payload(ring: GradedPolynomialRing, payload: dict, first_count: int):
    """Split a payload over gens = A-gens + B-gens into {B-key: A-payload}.

    Both blocks keep the packed layout, so the pieces are directly valid in
    rings whose generator lists are the corresponding prefixes/suffixes.
    """
    shift = first_count * _BITS
    mask = (1 << shift) - 1
    out = {}
    for key, c in payload.items():
        b_key = key >> shift
        a_key = key & mask
        out.setdefault(b_key, {})[a_key] = c
    return out


def join_keys(a_key: int, b_key: int, first_count: int) -> int:
    return a_key | (b_key << (first_count * _BITS))
