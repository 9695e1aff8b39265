"""Lattice geometry: canonical bases, duality, sums, intersections, transport.

The independent oracle for lattice equality here is mutual inclusion
checked through membership of generators, which exercises a different
code path (linear solve + valuations) than canonical-form comparison.
"""

import random
from fractions import Fraction

import pytest

from qpadic.lattice import (
    STANDARD_J,
    Lattice,
    Mat2,
    Vec2,
    standard_lattice,
    sympl,
    symplectic_transport,
)
from qpadic.padic import padic_norm, valuation

from conftest import (
    PRIMES,
    rand_basis,
    rand_lattice,
    rand_rational,
    rand_symplectic,
    rand_unimodular,
    rand_vector,
)


def mutually_included(a: Lattice, b: Lattice) -> bool:
    return a.issubset(b) and b.issubset(a)


def is_p_power(q: Fraction, p: int) -> bool:
    if q <= 0:
        return False
    v = valuation(q, p)
    return q == (Fraction(p**v) if v >= 0 else Fraction(1, p**-v))


class TestVecMat:
    def test_parse_and_str_round_trip(self):
        v = Vec2.parse("3/2,−1")
        assert (v.x, v.y) == (Fraction(3, 2), Fraction(-1))
        assert Vec2.parse(str(v)) == v
        m = Mat2.parse("1,1/2;0,5")
        assert Mat2.parse(str(m)) == m

    def test_parse_rejects(self):
        with pytest.raises(ValueError):
            Vec2.parse("1,2,3")
        with pytest.raises(ValueError):
            Mat2.parse("1,2;3")
        with pytest.raises(ValueError):
            Mat2.parse("1,2")

    def test_inverse_and_adjugate(self):
        rng = random.Random(7)
        for _ in range(50):
            m = rand_basis(rng, 3)
            assert m @ m.inverse() == Mat2.identity()
            assert m @ m.adjugate() == Mat2.identity().scaled(m.det())
        with pytest.raises(ValueError):
            Mat2(1, 2, 2, 4).inverse()

    def test_matvec(self):
        m = Mat2(1, 2, 3, 4)
        assert m @ Vec2(5, 6) == Vec2(17, 39)

    def test_sympl_is_standard_form(self):
        rng = random.Random(8)
        for _ in range(50):
            u, v = rand_vector(rng, 5), rand_vector(rng, 5)
            jv = STANDARD_J @ v
            assert sympl(u, v) == u.x * jv.x + u.y * jv.y
            assert sympl(u, v) == -sympl(v, u)
        assert sympl(Vec2(1, 0), Vec2(0, 1)) == 1


class TestCanonicalForm:
    def test_pinned_reductions(self):
        assert str(Lattice(Mat2.parse("3,3;0,3"), 3).canonical) == "3,0;0,3"
        assert str(Lattice(Mat2.parse("1,0;1/2,1"), 2).canonical) == "1,0;1/2,1"
        assert str(Lattice(Mat2.parse("1/2,0;0,4"), 2).canonical) == "1/2,0;0,4"
        assert str(standard_lattice(7).canonical) == "1,0;0,1"

    def test_pinned_measures(self):
        assert Lattice(Mat2.parse("3,0;0,1"), 3).measure == Fraction(1, 3)
        assert Lattice(Mat2.parse("1/2,0;0,4"), 2).measure == Fraction(1, 2)
        assert standard_lattice(11).measure == 1

    def test_column_order_is_irrelevant(self):
        a = Lattice(Mat2.parse("0,3;3,0"), 3)
        assert str(a.canonical) == "3,0;0,3"

    def test_shape(self):
        rng = random.Random(9)
        for p in PRIMES:
            for _ in range(60):
                lat = rand_lattice(rng, p)
                k = lat.canonical
                assert k.b == 0
                assert is_p_power(k.a, p) and is_p_power(k.d, p)
                # corner is the canonical residue: reducing again is a no-op
                assert Lattice(k, p).canonical == k
                # det valuation is basis independent
                assert valuation(k.det(), p) == valuation(lat.basis.det(), p)

    def test_invariant_under_right_unimodular_action(self):
        rng = random.Random(10)
        for p in PRIMES:
            for _ in range(40):
                b = rand_basis(rng, p)
                u = rand_unimodular(rng, p)
                assert Lattice(b @ u, p) == Lattice(b, p)

    def test_equality_agrees_with_mutual_inclusion(self):
        rng = random.Random(11)
        for p in (2, 3, 5):
            lats = [rand_lattice(rng, p) for _ in range(12)]
            for a in lats:
                for b in lats:
                    assert (a == b) == mutually_included(a, b)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            Lattice(Mat2.parse("1,2;2,4"), 3)
        with pytest.raises(ValueError):
            Lattice(Mat2.identity(), 4)
        with pytest.raises(ValueError):
            standard_lattice(3).issubset(standard_lattice(5))


class TestDuality:
    def test_pinned_dual(self):
        d = Lattice(Mat2.parse("3,0;0,1"), 3).dual()
        assert str(d.canonical) == "1,0;0,1/3"
        assert d.measure == 3

    def test_self_dual_standard(self):
        for p in PRIMES:
            assert standard_lattice(p).is_self_dual()

    def test_involution_and_measure_product(self):
        rng = random.Random(12)
        for p in PRIMES:
            for _ in range(60):
                lat = rand_lattice(rng, p)
                dd = lat.dual().dual()
                assert dd == lat
                assert lat.measure * lat.dual().measure == 1

    def test_dual_by_pairing_membership(self):
        # u is in the dual iff it pairs integrally with both generators
        rng = random.Random(13)
        for _ in range(40):
            lat = rand_lattice(rng, 3)
            dual = lat.dual()
            u, v = lat.canonical.columns()
            w = rand_vector(rng, 3)
            pairs_integrally = (
                valuation(sympl(w, u), 3) >= 0 and valuation(sympl(w, v), 3) >= 0
            )
            assert dual.contains(w) == pairs_integrally

    def test_self_duality_both_routes(self):
        rng = random.Random(14)
        for p in (2, 3, 7):
            for _ in range(30):
                s = rand_symplectic(rng, p)
                lat = standard_lattice(p).transformed(s)
                assert lat.measure == 1
                assert lat.dual() == lat
                assert lat.is_self_dual()
        # and a measure != 1 lattice is never self-dual
        for p in (2, 3, 7):
            for _ in range(30):
                lat = rand_lattice(rng, p)
                if lat.measure != 1:
                    assert lat.dual() != lat
                    assert not lat.is_self_dual()


class TestSumIntersection:
    def test_pinned_examples(self):
        a = Lattice(Mat2.parse("3,0;0,1"), 3)
        b = Lattice(Mat2.parse("1,0;0,3"), 3)
        assert (a + b) == standard_lattice(3)
        meet = a & b
        assert str(meet.canonical) == "3,0;0,3"
        assert meet.measure == Fraction(1, 9)

    def test_lattice_order(self):
        rng = random.Random(15)
        for p in PRIMES:
            for _ in range(40):
                a, b = rand_lattice(rng, p), rand_lattice(rng, p)
                join, meet = a + b, a & b
                assert a.issubset(join) and b.issubset(join)
                assert meet.issubset(a) and meet.issubset(b)
                assert meet.measure <= min(a.measure, b.measure)
                assert join.measure >= max(a.measure, b.measure)
                # modular identity for measures in rank 2
                assert join.measure * meet.measure == a.measure * b.measure

    def test_membership_oracle(self):
        rng = random.Random(16)
        for _ in range(30):
            a, b = rand_lattice(rng, 2), rand_lattice(rng, 2)
            meet = a & b
            for _ in range(8):
                w = rand_vector(rng, 2)
                assert meet.contains(w) == (a.contains(w) and b.contains(w))

    def test_de_morgan_duality(self):
        rng = random.Random(17)
        for p in (3, 5):
            for _ in range(30):
                a, b = rand_lattice(rng, p), rand_lattice(rng, p)
                assert (a & b).dual() == a.dual() + b.dual()
                assert (a + b).dual() == a.dual() & b.dual()

    def test_algebraic_laws(self):
        rng = random.Random(18)
        for _ in range(20):
            a, b, c = (rand_lattice(rng, 3) for _ in range(3))
            assert a + b == b + a and (a & b) == (b & a)
            assert (a + b) + c == a + (b + c)
            assert (a & b) & c == a & (b & c)
            assert a + a == a and (a & a) == a
            assert a + (a & b) == a and (a & (a + b)) == a


class TestScalingTransforms:
    def test_scaled_measure(self):
        rng = random.Random(19)
        for p in PRIMES:
            for _ in range(20):
                lat = rand_lattice(rng, p)
                for n in (-2, -1, 0, 1, 3):
                    scale = Fraction(p**n) if n >= 0 else Fraction(1, p**-n)
                    assert lat.scaled(n).measure == lat.measure * scale ** (-2)
                assert lat.scaled(0) == lat
                assert lat.scaled(1).scaled(2) == lat.scaled(3)
                assert lat.scaled(1).issubset(lat) and lat.issubset(lat.scaled(-1))

    def test_transformed_measure_and_composition(self):
        rng = random.Random(20)
        for p in (2, 3, 7):
            for _ in range(30):
                lat = rand_lattice(rng, p)
                g, h = rand_basis(rng, p), rand_basis(rng, p)
                assert lat.transformed(g).measure == padic_norm(g.det(), p) * lat.measure
                assert lat.transformed(g).transformed(h) == lat.transformed(h @ g)
        with pytest.raises(ValueError):
            standard_lattice(3).transformed(Mat2(1, 1, 1, 1))

    def test_symplectic_invariance_of_measure(self):
        rng = random.Random(21)
        for p in PRIMES:
            for _ in range(20):
                lat = rand_lattice(rng, p)
                s = rand_symplectic(rng, p)
                assert lat.transformed(s).measure == lat.measure


class TestSymplecticStructure:
    def test_symplectic_basis(self):
        rng = random.Random(22)
        for p in (2, 3, 5):
            for _ in range(25):
                lat = standard_lattice(p).transformed(rand_symplectic(rng, p))
                u, v = lat.symplectic_basis()
                assert sympl(u, v) == 1
                assert Lattice(Mat2.from_columns(u, v), p) == lat
        with pytest.raises(ValueError):
            Lattice(Mat2.diagonal(3, 1), 3).symplectic_basis()

    def test_diagonalization(self):
        rng = random.Random(23)
        for p in (2, 3, 5, 7):
            for _ in range(40):
                lat = rand_lattice(rng, p)
                s, n = lat.symplectic_diagonalization()
                assert s.det() == 1
                scale = Fraction(p**n) if n >= 0 else Fraction(1, p**-n)
                assert lat.measure == 1 / scale
                model = Lattice(Mat2.diagonal(scale, 1), p)
                assert model.transformed(s) == lat

    def test_transport(self):
        rng = random.Random(24)
        for p in (2, 3, 5):
            for _ in range(25):
                src = rand_lattice(rng, p)
                dst = src.transformed(rand_symplectic(rng, p))
                s = symplectic_transport(src, dst)
                assert s.det() == 1
                assert src.transformed(s) == dst

    def test_transport_requires_equal_measure(self):
        a = Lattice(Mat2.diagonal(3, 1), 3)
        with pytest.raises(ValueError):
            symplectic_transport(a, standard_lattice(3))

    def test_haar_weight_alias(self):
        lat = Lattice(Mat2.diagonal(9, 1), 3)
        assert lat.haar_weight() == lat.measure == Fraction(1, 9)


class TestContainment:
    def test_generator_membership(self):
        rng = random.Random(25)
        for p in (2, 3, 11):
            for _ in range(30):
                lat = rand_lattice(rng, p)
                u, v = lat.canonical.columns()
                assert lat.contains(u) and lat.contains(v)
                assert lat.contains(u + v) and lat.contains(u - v.scaled(3))
                # leaving the lattice: dividing a pivot generator by p
                assert not lat.contains(u.scaled(Fraction(1, p)))

    def test_integral_combinations_stay_inside(self):
        rng = random.Random(26)
        for _ in range(30):
            lat = rand_lattice(rng, 5)
            u, v = lat.canonical.columns()
            a = rand_rational(rng, 5, 0, 3)
            b = rand_rational(rng, 5, 0, 3)
            assert lat.contains(u.scaled(a) + v.scaled(b))
