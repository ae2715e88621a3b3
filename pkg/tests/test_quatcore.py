import math

import numpy as np
import pytest

from quatspec.errors import QuatspecError
from quatspec.quatcore import (ONE, QI, QJ, QK, CassiniBall, Quaternion,
                               SpherePoint, cassini_u, cassini_u_axial,
                               point_at_cassini_distance, qinv, qmul, qpow,
                               random_unit_imag, same_sphere, sphere_of,
                               spherical_power, spherical_power_sderiv,
                               triangle)

TOL = 1e-12


def rand_quat(rng, box=2.0):
    c = rng.uniform(-box, box, size=4)
    return Quaternion(float(c[0]), float(c[1]), float(c[2]), float(c[3]))


def test_unit_table():
    assert QI * QJ == QK
    assert QJ * QK == QI
    assert QK * QI == QJ
    assert QJ * QI == -QK
    assert QI * QI == -ONE
    assert QJ * QJ == -ONE
    assert QK * QK == -ONE


def test_mul_associative_and_norm_multiplicative():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a, b, c = (rand_quat(rng) for _ in range(3))
        lhs = qmul(qmul(a, b), c)
        rhs = qmul(a, qmul(b, c))
        assert abs(lhs - rhs) <= 1e-13 * (1.0 + abs(a) * abs(b) * abs(c))
        assert abs(abs(qmul(a, b)) - abs(a) * abs(b)) <= \
            1e-13 * (1.0 + abs(a) * abs(b))


def test_conj_antihomomorphism():
    rng = np.random.default_rng(12)
    for _ in range(100):
        a, b = rand_quat(rng), rand_quat(rng)
        assert abs(qmul(a, b).conj() - qmul(b.conj(), a.conj())) <= 1e-13 * (
            1.0 + abs(a) * abs(b))


def test_qinv():
    rng = np.random.default_rng(13)
    for _ in range(100):
        q = rand_quat(rng)
        if abs(q) < 1e-3:
            continue
        assert abs(qmul(q, qinv(q)) - ONE) <= 1e-13
        assert abs(qmul(qinv(q), q) - ONE) <= 1e-13
    with pytest.raises(ZeroDivisionError):
        qinv(Quaternion(0.0))


def test_triangle_example():
    # center 2j, argument 1+i
    got = triangle(Quaternion(0, 0, 2, 0), Quaternion(1, 1, 0, 0))
    assert got == Quaternion(4.0, 2.0, 0.0, 0.0)


def test_triangle_vanishes_at_center():
    # the characteristic value of a point on its own sphere is zero
    rng = np.random.default_rng(14)
    for _ in range(500):
        q = rand_quat(rng, box=5.0)
        assert abs(triangle(q, q)) <= 1e-13 * (1.0 + abs(q)) ** 2


def test_triangle_depends_only_on_sphere_of_center():
    rng = np.random.default_rng(15)
    for _ in range(100):
        q, p = rand_quat(rng), rand_quat(rng)
        assert triangle(q, p) == triangle(q.conj(), p)


def test_cassini_symmetry_bitwise():
    rng = np.random.default_rng(16)
    for _ in range(300):
        p, q = rand_quat(rng, 4.0), rand_quat(rng, 4.0)
        assert cassini_u(p, q) == cassini_u(q, p)


def test_cassini_same_sphere_vanishes_exactly():
    # exact same-sphere companions: conjugation, sign flips of imaginary
    # slots, and the x<->y swap all preserve (Re, |Im|) bit-for-bit
    rng = np.random.default_rng(17)
    for _ in range(200):
        q = rand_quat(rng, 3.0)
        for p in (q, q.conj(), Quaternion(q.w, -q.x, q.y, -q.z),
                  Quaternion(q.w, q.y, q.x, q.z)):
            assert cassini_u(p, q) == 0.0
            assert same_sphere(p, q)


def test_cassini_example():
    assert abs(cassini_u(Quaternion(1, 1, 0, 0), Quaternion(0, 0, 2, 0))
               - 20.0 ** 0.25) <= 1e-14


def test_cassini_matches_triangle_modulus():
    rng = np.random.default_rng(18)
    for _ in range(300):
        p, q = rand_quat(rng, 4.0), rand_quat(rng, 4.0)
        assert abs(cassini_u(p, q) ** 2 - abs(triangle(q, p))) <= 1e-11 * (
            1.0 + abs(triangle(q, p)))


def test_cassini_triangle_inequality():
    rng = np.random.default_rng(19)
    for _ in range(2000):
        a, b, c = (rand_quat(rng, 4.0) for _ in range(3))
        assert cassini_u(a, c) <= cassini_u(a, b) + cassini_u(b, c) + TOL


def test_sphere_point_and_membership():
    q = Quaternion(1.0, 0.0, 3.0, 4.0)
    assert sphere_of(q) == SpherePoint(1.0, 5.0)
    ball = CassiniBall(Quaternion(2.0), 1.0)
    assert ball.contains(Quaternion(2.5))
    assert not ball.contains(Quaternion(3.5))
    # membership agrees with the metric near the boundary
    rng = np.random.default_rng(20)
    center = Quaternion(1.0, 0.5, -0.25, 0.0)
    ball = CassiniBall(center, 1.5)
    for _ in range(300):
        p = rand_quat(rng, 3.0)
        u = cassini_u(p, center)
        if abs(u - 1.5) > 1e-9:
            assert ball.contains(p) == (u < 1.5)


def test_spherical_power_against_direct_products():
    rng = np.random.default_rng(21)
    for _ in range(50):
        q0, q = rand_quat(rng), rand_quat(rng)
        t = triangle(q0, q)
        for k in range(4):
            even = spherical_power(q0, 2 * k, q)
            odd = spherical_power(q0, 2 * k + 1, q)
            assert abs(even - qpow(t, k)) == 0.0
            assert abs(odd - qmul(q - q0, qpow(t, k))) == 0.0
    assert spherical_power(Quaternion(1.0), 0, Quaternion(2.0)) == ONE
    with pytest.raises(QuatspecError):
        spherical_power(ONE, -1, ONE)


def test_sderiv_quadratic_example():
    # n = 2: the derivative collapses to 2*Re(q) - 2*Re(q0) for every q
    rng = np.random.default_rng(22)
    for _ in range(100):
        q0, q = rand_quat(rng), rand_quat(rng)
        got = spherical_power_sderiv(q0, 2, q)
        want = Quaternion(2.0 * q.w - 2.0 * q0.w)
        assert abs(got - want) <= 1e-11 * (1.0 + abs(q) + abs(q0))


def test_sderiv_is_real_valued_slice_invariant():
    # the spherical derivative of a slice-preserving polynomial takes the
    # same value at every point of a sphere
    rng = np.random.default_rng(23)
    for _ in range(50):
        q0 = rand_quat(rng)
        r, s = 0.7, 1.3
        for n in range(6):
            vals = []
            for direction in (QI, QJ, random_unit_imag(rng)):
                q = Quaternion(r, s * direction.x, s * direction.y,
                               s * direction.z)
                vals.append(spherical_power_sderiv(q0, n, q))
            for v in vals[1:]:
                assert abs(v - vals[0]) <= 1e-10 * (1.0 + abs(vals[0]))


def test_sderiv_continuous_across_axis_gate():
    # quotient branch just above the cutoff vs exact real-axis branch
    q0 = Quaternion(0.3, 0.8, 0.0, 0.0)
    r = 1.7
    for n in range(1, 8):
        on_axis = spherical_power_sderiv(q0, n, Quaternion(r))
        near = spherical_power_sderiv(q0, n, Quaternion(r, 1e-6, 0, 0))
        assert abs(near - on_axis) <= 1e-4 * (1.0 + abs(on_axis))
    assert spherical_power_sderiv(q0, 0, Quaternion(r)) == Quaternion(0.0)
    assert spherical_power_sderiv(q0, 1, Quaternion(r)) == ONE


def test_point_at_cassini_distance_real_center_exact():
    q0 = Quaternion(2.0)
    got = point_at_cassini_distance(q0, 0.75, QJ, 0.0)
    assert got == Quaternion(2.75)
    got = point_at_cassini_distance(q0, 0.75, QJ, math.pi / 2.0)
    assert got.w == 2.0 and got.y == 0.75


def test_point_at_cassini_distance_lands_on_level_set():
    rng = np.random.default_rng(24)
    for _ in range(300):
        q0 = rand_quat(rng, 2.0)
        d = float(rng.uniform(0.05, 3.0))
        ang = float(rng.uniform(0.0, 2.0 * math.pi))
        p = point_at_cassini_distance(q0, d, random_unit_imag(rng), ang)
        assert abs(cassini_u(p, q0) - d) <= 1e-9 * (1.0 + d + abs(q0)) ** 2


def test_axial_metric_zero_iff_same_axial_pair():
    a = SpherePoint(0.25, 1.5)
    assert cassini_u_axial(a, a) == 0.0
    assert cassini_u_axial(a, SpherePoint(0.25, 1.5 + 1e-9)) > 0.0
    assert cassini_u_axial(a, SpherePoint(0.25 + 1e-9, 1.5)) > 0.0
