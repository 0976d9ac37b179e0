"""Tests for generators.py."""

import unittest

import numpy as np

from harness import campaign, generators
from zorn import core, lex


def _positions(formula):
    kind = formula[0]
    if kind == "eq":
        return [formula[1]]
    if kind == "lt":
        return [formula[1], formula[2]]
    if kind == "not":
        return _positions(formula[1])
    if kind in ("and", "or"):
        return _positions(formula[1]) + _positions(formula[2])
    return []


def _depth(formula):
    kind = formula[0]
    if kind == "not":
        return 1 + _depth(formula[1])
    if kind in ("and", "or"):
        return 1 + max(_depth(formula[1]), _depth(formula[2]))
    return 0


def _probe_h(a):
    return a.n + a.y.at(a.n)


class FormulaTest(unittest.TestCase):
    def test_constant(self):
        self.assertTrue(generators.evaluate_formula(("const", True), [1]))
        self.assertFalse(generators.evaluate_formula(("const", False), []))

    def test_atoms(self):
        atom = ("eq", 2, 7)
        self.assertTrue(generators.evaluate_formula(atom, [7, 7, 7]))
        self.assertTrue(generators.evaluate_formula(atom, [7, 7]))
        self.assertFalse(generators.evaluate_formula(atom, [7, 7, 3]))
        self.assertTrue(generators.evaluate_formula(("lt", 0, 1), [1, 2]))
        self.assertFalse(generators.evaluate_formula(("lt", 1, 0), [1, 2]))
        self.assertTrue(generators.evaluate_formula(("lt", 1, 4), [1, 2]))

    def test_connectives(self):
        formula = ("or", ("not", ("eq", 0, 1)), ("eq", 1, 2))
        self.assertTrue(generators.evaluate_formula(formula, [0, 0]))
        self.assertTrue(generators.evaluate_formula(formula, [1, 2]))
        self.assertFalse(generators.evaluate_formula(formula, [1, 0]))
        self.assertEqual(
            generators.format_formula(formula),
            "(not (u[0] = 1) or u[1] = 2)")

    def test_unknown_node(self):
        """Check that an unknown formula node is rejected."""
        with self.assertRaises(ValueError):
            generators.evaluate_formula(("xor",), [])


class GenPredicateTest(unittest.TestCase):
    def setUp(self):
        self.cfg = campaign.make_config(q_depth=3, elem_max=4)

    def test_bounds(self):
        rng = np.random.RandomState(1)
        constants = 0
        for _ in range(200):
            formula = generators.gen_formula(rng, self.cfg)
            if formula[0] == "const":
                constants += 1
            self.assertLessEqual(_depth(formula), 3)
            for position in _positions(formula):
                self.assertLess(position, self.cfg.q_depth)
        self.assertGreater(constants, 0)

    def test_deterministic(self):
        for seed in range(50):
            self.assertEqual(
                generators.gen_formula(np.random.RandomState(seed), self.cfg),
                generators.gen_formula(np.random.RandomState(seed), self.cfg))

    def test_predicate(self):
        predicate = generators.gen_predicate(
            np.random.RandomState(3), self.cfg)
        self.assertIn(predicate([0, 1, 2]), (True, False))


class GenChallengersTest(unittest.TestCase):
    def setUp(self):
        self.cfg = campaign.make_config(f_depth=2, elem_max=3)

    def test_replay(self):
        rng = np.random.RandomState(9)
        carriers = [generators.gen_carrier(rng, self.cfg) for _ in range(100)]
        for seed in range(10):
            first = generators.gen_challengers(
                np.random.RandomState(seed), self.cfg)
            second = generators.gen_challengers(
                np.random.RandomState(seed), self.cfg)
            for y in carriers:
                self.assertEqual(first.F(y, _probe_h), second.F(y, _probe_h))
                a, b = first.G(y, _probe_h), second.G(y, _probe_h)
                self.assertEqual(a.n, b.n)
                self.assertEqual(a.y.take(8), b.y.take(8))

    def test_query_bound(self):
        rng = np.random.RandomState(4)
        y = lex.Seq.of([3, 2, 1])
        for _ in range(100):
            pair = generators.gen_challengers(rng, self.cfg)
            budget = core.Budget(self.cfg.f_depth * self.cfg.scan_cap * 16)
            queries = []

            def h(a):
                core.spend(budget)
                queries.append(a)
                return _probe_h(a)

            size = pair.F(y, h)
            self.assertLessEqual(len(queries), self.cfg.f_depth)
            self.assertLessEqual(size, self.cfg.elem_max)
            queries[:] = []
            pair.G(y, h)
            self.assertLessEqual(len(queries), self.cfg.f_depth)

    def test_constant_tree(self):
        F = generators.SizeChallenger(("size", 2), 3)
        self.assertEqual(F(lex.Seq.zeros(), None), 2)
        succ = generators.SizeChallenger(
            ("query", ("rel", 0, 1, ("zero",)), 1, (("succ",),)), 3)
        self.assertEqual(succ(lex.Seq.constant(2), lambda a: 1), 2)
        self.assertEqual(succ(lex.Seq.constant(2), lambda a: 9), 3)


class StepTest(unittest.TestCase):
    def test_relative_step(self):
        y = lex.Seq.of([3, 2, 1])
        a = generators.make_step(("rel", 1, 1, ("const", 4)), y)
        self.assertEqual(a.n, 1)
        self.assertEqual(a.y.take(4), (3, 1, 4, 4))
        self.assertTrue(lex.lex_signature().admits(y, a))

    def test_relative_step_at_zero(self):
        """Check that a relative step never goes below zero."""
        y = lex.Seq.of([3])
        a = generators.make_step(("rel", 1, 2, ("zero",)), y)
        self.assertFalse(lex.lex_signature().admits(y, a))

    def test_absolute_step(self):
        a = generators.make_step(("abs", 2, (1, 1), ("const", 3)), None)
        self.assertEqual(a.y.take(4), (1, 1, 3, 3))


class GenCarrierTest(unittest.TestCase):
    def test_bounds(self):
        cfg = campaign.make_config(q_depth=3, elem_max=2)
        rng = np.random.RandomState(0)
        for _ in range(100):
            x = generators.gen_carrier(rng, cfg)
            self.assertLessEqual(len(x.prefix), 3)
            for e in x.take(6):
                self.assertIn(e, (0, 1, 2))


if __name__ == "__main__":
    unittest.main()
