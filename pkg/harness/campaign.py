"""Seeded fuzz campaigns over the goal checker.

For usage see README.md.
"""

import collections
import enum
import hashlib
import json
import multiprocessing

import glog
import numpy as np
from tqdm import tqdm

from harness import generators
from zorn import core, lex, realizers

DEFAULT_SEED = 42
DEFAULT_CASES = 100
DEFAULT_FUEL = 1000000
DEFAULT_Q_DEPTH = 4
DEFAULT_F_DEPTH = 2
DEFAULT_ELEM_MAX = 3
DEFAULT_SCAN_CAP = 64
DEFAULT_WORKERS = 1

GenConfig = collections.namedtuple(
    "GenConfig",
    [
        "seed",
        "cases",
        "fuel",
        "q_depth",
        "f_depth",
        "elem_max",
        "scan_cap",
        "trace_prefix_len",
        "workers",
        "scheme",
    ]
)

CaseRecord = collections.namedtuple(
    "CaseRecord", ["case_id", "sub_seed", "report", "wall_steps"])


class Scheme(enum.Enum):
    LEX = 1

    # Schemes for exercising the checker itself.
    IDENTITY = 2
    ZERO_FILL = 3

    def to_scheme_object(self, cfg):
        """Convert the enum to an instance of `core.TruncationScheme`."""
        if self == self.LEX:
            return lex.LexScheme(lex.NAT_ELEMS, cfg.scan_cap)
        elif self == self.IDENTITY:
            return realizers.IdentityScheme()
        elif self == self.ZERO_FILL:
            return lex.ZeroFillScheme(lex.NAT_ELEMS)
        raise ValueError("Unknown scheme {}".format(self))

    def __str__(self):
        return self.name

    @staticmethod
    def from_string(s):
        """Convert a command line string to an enum instance."""
        try:
            return Scheme[s.upper().replace("-", "_")]
        except KeyError:
            raise ValueError("Unknown scheme {}".format(s))


def make_config(seed=DEFAULT_SEED, cases=DEFAULT_CASES, fuel=DEFAULT_FUEL,
                q_depth=DEFAULT_Q_DEPTH, f_depth=DEFAULT_F_DEPTH,
                elem_max=DEFAULT_ELEM_MAX, scan_cap=DEFAULT_SCAN_CAP,
                trace_prefix_len=core.DEFAULT_TRACE_PREFIX_LEN,
                workers=DEFAULT_WORKERS, scheme=Scheme.LEX):
    """Build a validated `GenConfig`.

    Raises:
        ValueError: if a count is negative or a cap is below 1.
    """
    for name, value in [("cases", cases), ("fuel", fuel),
                        ("trace_prefix_len", trace_prefix_len)]:
        if value < 0:
            raise ValueError(
                "{} must be non-negative, {} was passed.".format(name, value))
    for name, value in [("q_depth", q_depth), ("f_depth", f_depth),
                        ("elem_max", elem_max), ("scan_cap", scan_cap),
                        ("workers", workers)]:
        if value < 1:
            raise ValueError(
                "{} must be at least 1, {} was passed.".format(name, value))
    if not isinstance(scheme, Scheme):
        scheme = Scheme.from_string(scheme)
    return GenConfig(
        seed=int(seed),
        cases=cases,
        fuel=fuel,
        q_depth=q_depth,
        f_depth=f_depth,
        elem_max=elem_max,
        scan_cap=scan_cap,
        trace_prefix_len=trace_prefix_len,
        workers=workers,
        scheme=scheme,
    )


def derive_sub_seed(seed, case_id):
    """A 63 bit seed for one case, independent of the other cases."""
    md5 = hashlib.md5()
    md5.update("{}:{}".format(seed, case_id).encode("utf-8"))
    return int(md5.hexdigest(), 16) % (2 ** 63)


def generate_case(sub_seed, cfg):
    """Regenerate the `(Q, F, G, x)` instance of a sub seed."""
    rng = np.random.RandomState(sub_seed % (2 ** 32))
    predicate = generators.gen_predicate(rng, cfg)
    challengers = generators.gen_challengers(rng, cfg)
    x = generators.gen_carrier(rng, cfg)
    return predicate, challengers, x


def run_case(cfg, case_id, sub_seed=None):
    """Run the goal checker on one generated case.

    Completed chains are re-verified by an independent evaluation with the
    same fuel, and the result stored as the report's `chain_ok`.

    Args:
        cfg: the `GenConfig`.
        case_id: the index of the case in its campaign.
        sub_seed: (optional) the case's seed, derived from `cfg.seed` and
            `case_id` if not given.

    Returns:
        a `CaseRecord`.
    """
    if sub_seed is None:
        sub_seed = derive_sub_seed(cfg.seed, case_id)
    predicate, challengers, x = generate_case(sub_seed, cfg)
    sig = lex.lex_signature(lex.NAT_ELEMS)
    scheme = cfg.scheme.to_scheme_object(cfg)
    budget = core.Budget(cfg.fuel, trace_prefix_len=cfg.trace_prefix_len)
    report = realizers.check_goal(
        sig, scheme, predicate, challengers.F, challengers.G, x, budget,
        prefix_len=cfg.trace_prefix_len)

    chain_ok = None
    if report.status != realizers.STATUS_EXHAUSTED:
        outcome = realizers.check_chain_laws(
            sig, scheme, predicate, challengers.F, challengers.G, x,
            list(report.chain), core.Budget(cfg.fuel))
        if core.is_value(outcome):
            chain_ok = outcome.value
        if chain_ok is False:
            glog.warning("Case %i: chain laws failed.", case_id)

    glog.debug("Case %i (%s): %s.", case_id, predicate, report.status)
    return CaseRecord(
        case_id=case_id,
        sub_seed=sub_seed,
        report=report._replace(chain_ok=chain_ok, chain=()),
        wall_steps=report.budget_spent,
    )


def _run_case_star(args):
    return run_case(*args)


def summarize(records):
    """Count the records by status, and the failed relevant part checks."""
    counts = collections.OrderedDict([
        (realizers.STATUS_OK, 0),
        (realizers.STATUS_EXHAUSTED, 0),
        (realizers.STATUS_VIOLATED, 0),
        ("rp_failed", 0),
        ("chain_failed", 0),
    ])
    for record in records:
        counts[record.report.status] += 1
        if not record.report.rp_ok:
            counts["rp_failed"] += 1
        if record.report.chain_ok is False:
            counts["chain_failed"] += 1
    return counts


def run_campaign(cfg):
    """Run every case of a campaign.

    Returns:
        the list of `CaseRecord`s, in `case_id` order.
    """
    glog.info("Running %i cases with seed %i and fuel %i.",
              cfg.cases, cfg.seed, cfg.fuel)
    args = [(cfg, case_id) for case_id in range(cfg.cases)]
    if cfg.workers > 1:
        pool = multiprocessing.Pool(cfg.workers)
        try:
            records = list(tqdm(
                pool.imap(_run_case_star, args), total=cfg.cases))
        finally:
            pool.close()
            pool.join()
    else:
        records = [_run_case_star(a) for a in tqdm(args)]

    counts = summarize(records)
    glog.info("Campaign finished: %s.", ", ".join(
        "{}={}".format(k, v) for k, v in counts.items()))
    if counts[realizers.STATUS_VIOLATED]:
        glog.warning("%i cases violated the goal.",
                     counts[realizers.STATUS_VIOLATED])
    return records


def record_to_json(record):
    """The JSON object of one record, with keys in schema order."""
    fields = realizers.report_to_json(record.report)
    result = collections.OrderedDict([
        ("case_id", record.case_id),
        ("sub_seed", record.sub_seed),
    ])
    for key in ["status", "r", "s_prefix", "gamma_len", "q_x_r", "q_s",
                "c_holds", "rp_ok", "budget_spent", "chain_ok"]:
        result[key] = fields[key]
    return result


def format_record(record):
    return json.dumps(record_to_json(record), separators=(",", ":"))


def write_jsonl(records, path):
    """Write one JSON object per line, in `case_id` order."""
    with open(path, "w") as f:
        for record in sorted(records, key=lambda r: r.case_id):
            f.write(format_record(record))
            f.write("\n")
    glog.info("Wrote %i records to %s.", len(records), path)
