"""The operation algebra: omega, the transform, towers, sequences, twists."""

import random
from fractions import Fraction

import pytest

from fglforge.adams import (
    AdamsSequence,
    CompositionSeries,
    OmegaTower,
    TwistedLaurent,
    adams_operation_sequence,
    adams_operation_tower,
    adams_transform,
    adams_transform_inv,
    beta_power_sequence,
    beta_power_tower,
    circ_compose,
    eigenspace_action,
    geometric_power,
    idempotent_element,
    idempotent_sequence,
    mult_add_iso,
    omega,
    omega_solve,
    sequence_to_tower,
    tower_to_sequence,
    twisted_laurent_multiply,
    unit_sequence,
)
from fglforge.errors import (
    InsufficientDepth,
    ModelMismatch,
    NonInvertibleK,
    WindowMiss,
)
from fglforge.rings import Integers, Rationals
from fglforge.series import TruncatedSeries1

Z = Integers()
Q = Rationals()


def zser(ints, precision=None):
    return TruncatedSeries1.from_ints(Z, ints, precision)


# -- omega -----------------------------------------------------------------------


def test_omega_examples():
    # omega((1-x)^-k) = k (1-x)^-k
    for k in (-3, -1, 1, 2, 5):
        f = geometric_power(k, 9)
        assert omega(f) == f.truncate(8).scale(k)
    assert omega(TruncatedSeries1.x(Z, 5)) == zser([1, -1], 4)
    assert omega(TruncatedSeries1.constant(Z, Z.one(), 5)).is_zero()


def test_omega_solve():
    # inverse of the omega(x) example
    g = omega_solve(TruncatedSeries1.from_fractions(Q, [1, -1], 4))
    assert g == TruncatedSeries1.from_fractions(Q, [0, 1], 5)
    # eigenfunction: solving 2(1-x)^-2 gives (1-x)^-2 up to the kernel constant
    f = geometric_power(2, 8, Q).scale(Q.from_int(2)).truncate(7)
    sol = omega_solve(f)
    diff = sol - geometric_power(2, 8, Q)
    assert all(c.is_zero() for c in diff.coeffs[1:])
    assert omega_solve(TruncatedSeries1.zero(Q, 5)).is_zero()
    # the kernel constant is configurable
    sol2 = omega_solve(TruncatedSeries1.zero(Q, 3), constant_term=Q.from_int(7))
    assert sol2.coeffs[0] == Q.from_int(7)
    # omega o solve = id on the solved range
    rng = random.Random(2)
    for _ in range(20):
        f = TruncatedSeries1.from_fractions(
            Q, [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(9)], 8
        )
        assert omega(omega_solve(f)) == f


# -- the transform -----------------------------------------------------------------


def test_transform_of_geometric_series():
    for k in (-4, -1, 0, 1, 2, 7):
        seq = adams_transform(geometric_power(k, 12))
        assert list(seq.values) == [Fraction(k**n if k or n == 0 else 0) for n in range(13)]


def test_transform_of_x():
    seq = adams_transform(TruncatedSeries1.x(Z, 8))
    assert list(seq.values) == [0, 1, -1, 1, -1, 1, -1, 1, -1]


def test_inverse_transform_examples():
    # (k^n) -> (1-x)^-k
    for k in (-2, 0, 1, 3):
        seq = AdamsSequence(0, [Fraction(k) ** n if k else (1 if n == 0 else 0) for n in range(11)])
        got = adams_transform_inv(seq)
        assert got == adams_transform_inv(adams_transform(geometric_power(k, 10)))
        assert adams_transform(got) == adams_transform(geometric_power(k, 10))
    assert adams_transform_inv(AdamsSequence(0, [1] + [0] * 8)) == TruncatedSeries1.constant(
        Q, Q.one(), 8
    )
    with pytest.raises(WindowMiss):
        adams_transform_inv(AdamsSequence(-1, [1, 2, 3]))


def test_transform_is_ring_isomorphism():
    rng = random.Random(123)
    for _ in range(60):
        f = zser([rng.randint(-4, 4) for _ in range(17)], 16)
        g = zser([rng.randint(-4, 4) for _ in range(17)], 16)
        tf, tg = adams_transform(f), adams_transform(g)
        assert adams_transform(circ_compose(f, g)) == tf * tg
        assert adams_transform(f + g) == tf + tg
        back = adams_transform_inv(tf)
        assert adams_transform(back) == tf


def test_intertwining():
    rng = random.Random(321)
    for _ in range(40):
        f = zser([rng.randint(-5, 5) for _ in range(13)], 12)
        left = adams_transform(omega(f))
        right = adams_transform(f)
        for n in range(12):
            assert left.value(n) == right.value(n + 1)


def test_transform_substitution_is_the_multiplicative_exponential():
    # the series 1 - exp(-y) substituted by the transform is the exponential
    # of x + y - xy, whose logarithm is -log(1-t) = sum t^n/n
    from fglforge.adams import _exp_complement, _neg_log_complement
    from fglforge.fgl import FormalGroupLaw, logarithm
    from fglforge.series import TruncatedSeries2

    body = TruncatedSeries2.from_entries(
        Q, [(1, 0, Q.one()), (0, 1, Q.one()), (1, 1, Q.from_int(-1))], 10
    )
    law = FormalGroupLaw(Q, 10, body)
    log = logarithm(law)
    assert log == _neg_log_complement(10)
    assert log.revert() == _exp_complement(10)


# -- the composition product ---------------------------------------------------------


def test_circ_unit_and_constants():
    unit = geometric_power(1, 16)
    rng = random.Random(5)
    for _ in range(10):
        f = zser([rng.randint(-3, 3) for _ in range(17)], 16)
        assert circ_compose(unit, f) == f
        assert circ_compose(f, unit) == f
    one = geometric_power(0, 16)
    assert circ_compose(one, one) == one


def test_circ_commutative_associative_integral():
    rng = random.Random(2024)
    pool = [zser([rng.randint(-3, 3) for _ in range(17)], 16) for _ in range(60)]
    for i in range(0, 60, 2):
        assert circ_compose(pool[i], pool[i + 1]) == circ_compose(pool[i + 1], pool[i])
    for i in range(0, 57, 3):
        f, g, h = pool[i], pool[i + 1], pool[i + 2]
        assert circ_compose(circ_compose(f, g), h) == circ_compose(f, circ_compose(g, h))
    for i in range(0, 20, 2):
        assert circ_compose(pool[i], pool[i + 1]).ring == Z


def test_composition_series_wrapper():
    f = CompositionSeries.geometric(-2, 16)
    g = CompositionSeries.geometric(-3, 16)
    assert f.circ(g) == CompositionSeries.geometric(6, 16)
    assert f.transform().value(2) == 4
    from fglforge.errors import RingMismatch
    from fglforge.rings import LaurentExtension

    with pytest.raises(RingMismatch):
        CompositionSeries(TruncatedSeries1.x(LaurentExtension(Z, "beta", 1), 4))


# -- sequences ------------------------------------------------------------------------


def test_sequence_windows():
    e0 = idempotent_sequence(0, (-2, 2))
    assert list(e0.values) == [0, 0, 1, 0, 0]
    with pytest.raises(WindowMiss):
        idempotent_sequence(5, (-2, 2))
    with pytest.raises(WindowMiss):
        e0.value(3)
    s = AdamsSequence(-1, [1, 2, 3])
    t = AdamsSequence(0, [5, 7, 11])
    assert (s * t).window == (0, 1)
    assert (s + t).window == (0, 1)
    assert s.shift(1).window == (-2, 0)
    assert s.shift(1).value(-1) == s.value(0)
    assert s.restrict(0, 1).values == (2, 3)
    with pytest.raises(WindowMiss):
        s.restrict(-2, 0)


def test_idempotent_relations():
    w = (-6, 6)
    for n in range(-6, 7):
        for m in range(-6, 7):
            prod = idempotent_sequence(n, w) * idempotent_sequence(m, w)
            if n == m:
                assert prod == idempotent_sequence(n, w)
            else:
                assert prod.is_zero()
    total = unit_sequence(w)
    acc = AdamsSequence(w[0], [0] * 13)
    for n in range(-6, 7):
        acc = acc + idempotent_sequence(n, w)
    assert acc == total


def test_adams_operation_sequences():
    psi = adams_operation_sequence(2, (-3, 3))
    assert [str(v) for v in psi.component(0).values] == [
        "1/8",
        "1/4",
        "1/2",
        "1",
        "2",
        "4",
        "8",
    ]
    assert adams_operation_sequence(1, (-4, 4)).component(0) == unit_sequence((-4, 4))
    # psi^0 is the rank projector e_0 (0^0 = 1 convention)
    assert adams_operation_sequence(0, (0, 3)).component(0) == AdamsSequence(
        0, [1, 0, 0, 0]
    )
    assert adams_operation_sequence(0, (-2, 3)).component(0) == idempotent_sequence(
        0, (-2, 3)
    )


def test_psi_multiplicativity_both_models():
    w = (-8, 8)
    for k in range(-4, 5):
        for l in range(-4, 5):
            lhs = adams_operation_sequence(k, w) * adams_operation_sequence(l, w)
            assert lhs == adams_operation_sequence(k * l, w)
    nonzero = [k for k in range(-4, 5) if k]
    for k in nonzero:
        for l in nonzero:
            product = adams_operation_tower(k, 2, 10) * adams_operation_tower(l, 2, 10)
            assert product == adams_operation_tower(k * l, 2, 10)
            # the isomorphism carries the tower product to the sequence product
            transported = tower_to_sequence(product)
            direct = adams_operation_sequence(k, (-2, 10)) * adams_operation_sequence(
                l, (-2, 10)
            )
            assert transported.agrees_with(direct)


def test_beta_twist_relations():
    w = (-8, 8)
    wide = (-9, 9)
    for k in [k for k in range(-4, 5) if k]:
        conj = (
            beta_power_sequence(-1, wide)
            * adams_operation_sequence(k, w)
            * beta_power_sequence(1, wide)
        )
        assert conj.agrees_with(adams_operation_sequence(k, w).scale(k))
    for n in range(-8, 8):
        lhs = idempotent_element(n + 1, w) * beta_power_sequence(1, w)
        rhs = beta_power_sequence(1, w) * idempotent_element(n, w)
        assert lhs.agrees_with(rhs)
    be0 = beta_power_sequence(1, w) * idempotent_element(0, w)
    assert (be0 * be0).is_zero()


def test_beta_twist_in_tower_model():
    # beta^-1 psi^k beta = k psi^k through the omega twist
    for k in (2, -3):
        psi = adams_operation_tower(k, 3, 10)
        conj = beta_power_tower(-1, 3, 10) * psi * beta_power_tower(1, 3, 10)
        assert conj.agrees_with(psi.scale(Fraction(k)))


def test_twisted_laurent_normal_form_and_errors():
    w = (-5, 5)
    a = beta_power_sequence(2, w) * idempotent_element(1, w)
    assert a.beta_exponents() == [2]
    with pytest.raises(ModelMismatch):
        a * adams_operation_tower(2, 2, 6)
    assert twisted_laurent_multiply(a, beta_power_sequence(-2, w)).beta_exponents() == [0]
    total = a + beta_power_sequence(2, w) * idempotent_element(1, w).scale(-1)
    assert total.is_zero()


def test_tower_invariant_validation():
    # constant unit towers satisfy omega(f) = f for f = (1-x)^-1
    good = OmegaTower([geometric_power(1, 8), geometric_power(1, 8)])
    assert good.depth == 1
    # levels that break omega(f_{j+1}) = f_j are rejected
    with pytest.raises(ValueError):
        OmegaTower([geometric_power(2, 8), geometric_power(3, 8)])
    with pytest.raises(ValueError):
        OmegaTower([geometric_power(2, 8), geometric_power(2, 8)])
    # psi^2 levels satisfy it by the eigenfunction identity
    psi = adams_operation_tower(2, 4, 8)
    tower = psi.component(0)
    assert tower.depth == 4 and tower.precision == 8


def test_tower_omega_shift_costs():
    psi = adams_operation_tower(2, 3, 8).component(0)
    up = psi.omega_shift(1)
    assert up.precision == 7
    assert up.level(1) == psi.level(0).truncate(7)
    down = psi.omega_shift(-1)
    assert down.depth == 2
    assert down.level(0) == psi.level(1)
    with pytest.raises(InsufficientDepth):
        psi.omega_shift(-4)


def test_nonintegral_tower_rejected():
    with pytest.raises(NonInvertibleK):
        adams_operation_tower(2, 2, 6, ring=Z)
    with pytest.raises(NonInvertibleK):
        adams_operation_tower(0, 2, 6)
    tower = adams_operation_tower(-1, 3, 6, ring=Z)
    assert tower.component(0).level(2) == geometric_power(-1, 6)
    # k = 1: every level is the composition unit (1-x)^-1
    unit = adams_operation_tower(1, 3, 6, ring=Z).component(0)
    assert all(unit.level(j) == geometric_power(1, 6) for j in range(4))


# -- the isomorphism between the models ------------------------------------------------


def test_iso_on_adams_operations():
    psi = adams_operation_tower(2, 3, 8)
    seq = mult_add_iso(psi)
    comp = seq.component(0)
    assert comp.window == (-3, 8)
    for n in range(-3, 9):
        assert comp.value(n) == Fraction(2) ** n
    assert sequence_to_tower(seq) == psi


def test_iso_round_trip_random():
    rng = random.Random(31415)
    for _ in range(100):
        lo = -rng.randint(0, 3)
        width = rng.randint(4, 9)
        values = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(width)]
        seq = TwistedLaurent(
            "sequence", {rng.randint(-2, 2): AdamsSequence(lo, values)}
        )
        tower = sequence_to_tower(seq)
        back = tower_to_sequence(tower)
        assert back == seq


def test_iso_is_ring_homomorphism():
    rng = random.Random(2718)
    for _ in range(100):
        def rand_elt():
            lo = -2
            values = [Fraction(rng.randint(-4, 4)) for _ in range(9)]
            return TwistedLaurent(
                "sequence", {rng.randint(-1, 1): AdamsSequence(lo, values)}
            )

        a, b = rand_elt(), rand_elt()
        ta, tb = sequence_to_tower(a), sequence_to_tower(b)
        assert tower_to_sequence(ta * tb).agrees_with(a * b)
        assert tower_to_sequence(ta + tb).agrees_with(a + b)


def test_iso_beta_goes_to_beta():
    b = beta_power_tower(2, 2, 6)
    assert tower_to_sequence(b).beta_exponents() == [2]
    with pytest.raises(InsufficientDepth):
        sequence_to_tower(beta_power_sequence(0, (1, 5)))
    with pytest.raises(InsufficientDepth):
        sequence_to_tower(beta_power_sequence(0, (-1, 5)), depth=3)
    with pytest.raises(ModelMismatch):
        tower_to_sequence(beta_power_sequence(0, (-1, 5)))


def test_e0_tower_levels_are_log_powers():
    # level k of e_0 under the iso is (-log(1-x))^k / k!
    e0 = idempotent_element(0, (-3, 6))
    tower = sequence_to_tower(e0).component(0)
    from fglforge.adams import _neg_log_complement

    log = _neg_log_complement(6)
    power = TruncatedSeries1.constant(Q, Q.one(), 6)
    fact = 1
    for k in range(4):
        assert tower.level(k) == power.scale(Q.from_fraction(Fraction(1, fact)))
        power = power * log
        fact *= k + 1


# -- the eigenspace action ----------------------------------------------------------


def test_eigenspace_action():
    w = (-8, 8)
    for k in (-3, 2, 5):
        psi = adams_operation_sequence(k, w)
        for n in range(-8, 9):
            assert eigenspace_action(psi, n) == {n: Fraction(k) ** n}
    for n in range(-4, 5):
        for m in range(-4, 5):
            got = eigenspace_action(idempotent_element(n, w), m)
            assert got == ({m: Fraction(1)} if n == m else {})
    be0 = beta_power_sequence(1, w) * idempotent_element(0, w)
    assert eigenspace_action(be0, 0) == {1: Fraction(1)}
    with pytest.raises(WindowMiss):
        eigenspace_action(adams_operation_sequence(2, (-2, 2)), 5)
    with pytest.raises(ModelMismatch):
        eigenspace_action(adams_operation_tower(2, 2, 6), 0)
