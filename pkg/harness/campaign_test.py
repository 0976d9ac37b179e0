"""Tests for campaign.py."""

import json
import os
import shutil
import tempfile
import unittest

from harness import campaign
from zorn import core, lex, realizers


class ConfigTest(unittest.TestCase):
    def test_defaults(self):
        cfg = campaign.make_config()
        self.assertEqual(cfg.seed, 42)
        self.assertEqual(cfg.cases, 100)
        self.assertEqual(cfg.fuel, 1000000)
        self.assertEqual(cfg.scheme, campaign.Scheme.LEX)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            campaign.make_config(q_depth=0)
        with self.assertRaises(ValueError):
            campaign.make_config(fuel=-1)
        with self.assertRaises(ValueError):
            campaign.make_config(scheme="spector")

    def test_scheme(self):
        self.assertEqual(
            campaign.Scheme.from_string("zero-fill"),
            campaign.Scheme.ZERO_FILL)
        cfg = campaign.make_config(scheme="identity")
        self.assertIsInstance(
            cfg.scheme.to_scheme_object(cfg), realizers.IdentityScheme)
        self.assertIsInstance(
            campaign.Scheme.LEX.to_scheme_object(cfg), lex.LexScheme)


class SubSeedTest(unittest.TestCase):
    def test_sub_seed(self):
        first = campaign.derive_sub_seed(42, 0)
        self.assertEqual(first, campaign.derive_sub_seed(42, 0))
        self.assertNotEqual(first, campaign.derive_sub_seed(42, 1))
        self.assertNotEqual(first, campaign.derive_sub_seed(43, 0))
        self.assertLess(first, 2 ** 63)


class BudgetMonotonicityTest(unittest.TestCase):
    def _chain(self, sig, outcome):
        if core.is_exhausted(outcome):
            return None
        return [tuple(sig.approx(y, 16)) for y in outcome.value]

    def test_values_survive_more_fuel(self):
        """Check that a value found at some fuel is found again at more."""
        cfg = campaign.make_config(seed=11)
        sig = lex.lex_signature(lex.NAT_ELEMS)
        scheme = cfg.scheme.to_scheme_object(cfg)
        values = 0
        for case_id in range(30):
            predicate, pair, x = campaign.generate_case(
                campaign.derive_sub_seed(cfg.seed, case_id), cfg)
            for fuel in [20, 200, 2000]:
                omega = realizers.omega_e(sig, scheme, pair.F, x, fuel)
                chain = self._chain(sig, realizers.gamma_e(
                    sig, scheme, predicate, pair.F, pair.G, x, fuel))
                for more in [2 * fuel, 10 * fuel]:
                    if core.is_value(omega):
                        values += 1
                        self.assertEqual(
                            realizers.omega_e(
                                sig, scheme, pair.F, x, more), omega)
                    if chain is not None:
                        self.assertEqual(
                            self._chain(sig, realizers.gamma_e(
                                sig, scheme, predicate, pair.F, pair.G, x,
                                more)),
                            chain)
        self.assertGreater(values, 0)


class RunCampaignTest(unittest.TestCase):
    def setUp(self):
        self._temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self._temp_dir)

    def test_no_violations(self):
        """Check that generated cases never violate the goal."""
        cfg = campaign.make_config(seed=42, cases=40, fuel=100000)
        records = campaign.run_campaign(cfg)
        self.assertEqual([r.case_id for r in records], list(range(40)))
        counts = campaign.summarize(records)
        self.assertEqual(counts[realizers.STATUS_VIOLATED], 0)
        self.assertEqual(counts["rp_failed"], 0)
        self.assertEqual(counts["chain_failed"], 0)
        self.assertGreater(counts[realizers.STATUS_OK], 0)
        for record in records:
            report = record.report
            if report.status == realizers.STATUS_OK:
                self.assertTrue(report.chain_ok)
                self.assertFalse(
                    report.q_x_r and not (report.q_s and report.c_holds))

    def test_no_fuel(self):
        cfg = campaign.make_config(cases=5, fuel=0)
        counts = campaign.summarize(campaign.run_campaign(cfg))
        self.assertEqual(counts[realizers.STATUS_EXHAUSTED], 5)

    def test_deterministic_report(self):
        """Check that a seed gives a byte-identical report."""
        cfg = campaign.make_config(seed=42, cases=5, fuel=100000)
        paths = []
        for name in ["a.jsonl", "b.jsonl"]:
            path = os.path.join(self._temp_dir, name)
            campaign.write_jsonl(campaign.run_campaign(cfg), path)
            paths.append(path)
        with open(paths[0]) as f:
            first = f.read()
        with open(paths[1]) as f:
            second = f.read()
        self.assertEqual(first, second)

        lines = first.splitlines()
        self.assertEqual(len(lines), 5)
        self.assertEqual(
            list(json.loads(lines[0])),
            ["case_id", "sub_seed", "status", "r", "s_prefix", "gamma_len",
             "q_x_r", "q_s", "c_holds", "rp_ok", "budget_spent", "chain_ok"])

    def test_replay(self):
        cfg = campaign.make_config(seed=7, cases=3, fuel=100000)
        records = campaign.run_campaign(cfg)
        replayed = campaign.run_case(cfg, 0, sub_seed=records[2].sub_seed)
        self.assertEqual(
            campaign.record_to_json(replayed)["s_prefix"],
            campaign.record_to_json(records[2])["s_prefix"])
        self.assertEqual(replayed.report.status, records[2].report.status)
        self.assertEqual(replayed.wall_steps, records[2].wall_steps)

    def test_workers(self):
        """Check that a worker pool reports what a serial run does."""
        cfg = campaign.make_config(seed=3, cases=4, fuel=100000)
        serial = campaign.run_campaign(cfg)
        parallel = campaign.run_campaign(cfg._replace(workers=2))
        self.assertEqual(
            [campaign.format_record(r) for r in serial],
            [campaign.format_record(r) for r in parallel])

    def test_zero_fill_is_reported(self):
        """Check that a broken truncation shows up as RP failures."""
        cfg = campaign.make_config(
            seed=42, cases=30, fuel=100000, scheme="zero-fill")
        counts = campaign.summarize(campaign.run_campaign(cfg))
        self.assertGreater(counts["rp_failed"], 0)


if __name__ == "__main__":
    unittest.main()
