"""Tests for instances.py."""

import itertools
import unittest

import numpy as np

from zorn import core, instances, lex, realizers

IN = instances.MEMBER_IN
OUT = instances.MEMBER_OUT


def _brute_force_ideal(members, d):
    """Whether a set of integers is a proper ideal, up to codes below d."""
    encode = instances.zigzag_encode
    elements = [instances.zigzag_decode(c) for c in range(d)]
    if 0 not in members or 1 in members:
        return False
    for a in members:
        for b in members:
            if encode(a + b) < d and a + b not in members:
                return False
        for s in elements:
            if encode(s * a) < d and s * a not in members:
                return False
    return True


class SubsetSignatureTest(unittest.TestCase):
    def setUp(self):
        self.sig = instances.subset_signature()

    def test_examples(self):
        step = lex.LexStep(5, instances.characteristic((5,)))
        self.assertEqual(self.sig.extend(instances.EMPTY_SET, step).at(5), 1)
        self.assertFalse(self.sig.admits(instances.characteristic((5,)), step))
        self.assertTrue(self.sig.admits(instances.EMPTY_SET, step))
        self.assertEqual(
            self.sig.approx(instances.characteristic((1, 3)), 4), (0, 1, 0, 1))

    def test_union(self):
        x = instances.characteristic((0, 2))
        y = lex.Seq.generated(lambda i: i % 2)
        self.assertEqual(instances.union(x, y).take(5), (1, 1, 1, 1, 0))
        filled = lex.Seq((0,), lex.ConstFill(1))
        self.assertEqual(instances.union(x, filled).take(4), (1, 1, 1, 1))

    def test_subset_less(self):
        x = instances.characteristic((1,))
        self.assertTrue(
            instances.subset_less(x, instances.characteristic((1, 4))))
        self.assertFalse(instances.subset_less(x, x))
        self.assertFalse(
            instances.subset_less(x, instances.characteristic((2, 3))))


class TruncationDirectionTest(unittest.TestCase):
    def test_fill_with_one(self):
        """Check that truncating with ones keeps the implication."""
        for n in range(1, 6):
            check = instances.check_truncation_direction(n, 1)
            self.assertTrue(check.premise)
            self.assertTrue(check.holds)

    def test_fill_with_zero(self):
        """Check that truncating with zeros loses the implication."""
        for n in range(1, 6):
            check = instances.check_truncation_direction(n, 0)
            self.assertTrue(check.premise)
            self.assertFalse(check.conclusion)
            self.assertFalse(check.holds)


class DivergenceTest(unittest.TestCase):
    def test_exhausted(self):
        for fuel in [10 ** 3, 10 ** 4, 10 ** 5]:
            outcome = instances.divergence_demo(fuel)
            self.assertTrue(core.is_exhausted(outcome))

    def test_trace_climbs_the_chain(self):
        """Check that the trace shows the set growing one member at a time."""
        outcome = instances.divergence_demo(100)
        self.assertEqual(outcome.reason, "fuel")
        self.assertEqual(
            [frame.prefix[:3] for frame in outcome.trace[:4]],
            [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)])
        self.assertEqual(outcome.unfoldings, 101)

    def test_adjoin(self):
        self.assertEqual(instances.adjoin_demo(5, 10), core.Value(1))


class ZigzagRingTest(unittest.TestCase):
    def setUp(self):
        self.ring = instances.zigzag_ring_z()

    def test_coding(self):
        self.assertEqual(
            [instances.zigzag_encode(v) for v in [0, -1, 1, -2, 2]],
            [0, 1, 2, 3, 4])
        for c in range(50):
            self.assertEqual(
                instances.zigzag_encode(instances.zigzag_decode(c)), c)

    def test_operations(self):
        encode = instances.zigzag_encode
        self.assertEqual(self.ring.add(encode(1), encode(-1)), encode(0))
        self.assertEqual(self.ring.mul(encode(2), encode(3)), encode(6))
        self.assertEqual(self.ring.code0, 0)
        self.assertEqual(self.ring.code1, 2)

    def test_overflow(self):
        """Check that only the ring operations refuse large codes."""
        ring = instances.zigzag_ring_z(size_hint=10)
        with self.assertRaises(instances.DomainOverflow):
            ring.mul(8, 8)
        self.assertTrue(instances.proper_ideal_q(ring, [1] + [0] * 10))
        self.assertFalse(instances.proper_ideal_q(ring, [1, 0] * 6))

    def test_ring_from_name(self):
        self.assertEqual(instances.ring_from_name("z").code1, 2)
        with self.assertRaises(ValueError):
            instances.ring_from_name("q")


class ProperIdealTest(unittest.TestCase):
    def setUp(self):
        self.ring = instances.zigzag_ring_z()

    def test_examples(self):
        self.assertTrue(instances.proper_ideal_q(self.ring, []))
        evens = [1 if instances.zigzag_decode(c) % 2 == 0 else 0
                 for c in range(10)]
        self.assertTrue(instances.proper_ideal_q(self.ring, evens))
        self.assertFalse(instances.proper_ideal_q(self.ring, [1, 0, 1]))
        self.assertFalse(instances.proper_ideal_q(self.ring, [0]))

    def test_agrees_with_brute_force(self):
        """Check every 12-entry approximation against integer arithmetic."""
        d = 12
        for u in itertools.product([0, 1], repeat=d):
            members = set(instances.zigzag_decode(c)
                          for c in range(d) if u[c] == 1)
            self.assertEqual(
                instances.proper_ideal_q(self.ring, list(u)),
                _brute_force_ideal(members, d),
                msg="u={}".format(u))

    def test_violations_persist(self):
        """Check that extending a failed approximation never repairs it."""
        rng = np.random.RandomState(12)
        for _ in range(300):
            u = [int(v) for v in rng.randint(0, 2, size=8)]
            if instances.proper_ideal_q(self.ring, u):
                continue
            longer = u + [int(v) for v in rng.randint(0, 2, size=4)]
            self.assertFalse(instances.proper_ideal_q(self.ring, longer))

    def test_membership_predicate(self):
        q = instances.membership_predicate(self.ring)
        self.assertTrue(q([IN, OUT, OUT]))
        self.assertFalse(q([IN, OUT, IN]))


class MaximalIdealTest(unittest.TestCase):
    def setUp(self):
        self.ring = instances.zigzag_ring_z()
        self.pairs = instances.challenger_pairs(self.ring)

    def test_zero_ideal(self):
        self.assertEqual(
            instances.zero_ideal(self.ring).take(4), (IN, OUT, OUT, OUT))

    def test_all_pairs(self):
        self.assertEqual(
            list(self.pairs), ["constant", "depth-1", "adversarial"])
        for name, pair in self.pairs.items():
            report = instances.maximal_ideal_demo(
                self.ring, pair.F, pair.G, 100000)
            self.assertEqual(report.status, realizers.STATUS_OK, msg=name)
            self.assertTrue(report.q_x_r, msg=name)
            self.assertTrue(report.q_s, msg=name)
            self.assertTrue(report.rp_ok, msg=name)

    def test_constant_pair_adjoins_the_evens(self):
        pair = self.pairs["constant"]
        report = instances.maximal_ideal_demo(
            self.ring, pair.F, pair.G, 100000)
        self.assertEqual(report.gamma_len, 2)
        self.assertEqual(report.s_prefix[:7], (IN, OUT, OUT, IN, IN, OUT, OUT))

    def test_adversarial_pair_is_refused(self):
        """Check that a proposal breaking additive closure ends the chain."""
        pair = self.pairs["adversarial"]
        report = instances.maximal_ideal_demo(
            self.ring, pair.F, pair.G, 100000)
        self.assertTrue(report.c_holds)
        self.assertEqual(report.gamma_len, 1)
        self.assertEqual(report.s_prefix[:7], (IN,) + (OUT,) * 6)

    def test_sizes_beyond_the_ring_codes(self):
        """Check that a size above the size hint still yields a report."""
        ring = instances.zigzag_ring_z(size_hint=64)
        pair = instances.challenger_pairs(ring)["adversarial"]
        report = instances.maximal_ideal_demo(
            ring, lambda y, h: 100, pair.G, 100000)
        self.assertEqual(report.status, realizers.STATUS_OK)
        self.assertTrue(report.q_x_r)
        self.assertTrue(report.q_s)

    def test_zero_size(self):
        report = instances.maximal_ideal_demo(
            self.ring, lambda y, h: 0, self.pairs["constant"].G, 1000)
        self.assertEqual(report.r, 0)
        self.assertTrue(report.q_x_r)
        self.assertEqual(report.status, realizers.STATUS_OK)


if __name__ == "__main__":
    unittest.main()
