# -*- coding: utf-8 -*-
"""Command line utilities for the recursion schemes and the goal checker.

Usage:

To run a fuzz campaign over the lexicographic instance and write a JSONL
report:

    python -m tools.zlutil fuzz --cases 100 --seed 7 --fuel 100000 \
        --report report.jsonl

To re-run a single case of a campaign from its sub seed:

    python -m tools.zlutil replay --sub-seed 1234567

To run a demo, e.g. the diverging simple recursion:

    python -m tools.zlutil demo diverge --fuel 1000

The environment variable ZL_SEED overrides --seed when set. The exit code is
1 when any case violates the goal, and 2 on usage errors.
"""

import os
import sys

import click

from harness import campaign
from zorn import core, instances, realizers, recursors

_SEED_ENV = "ZL_SEED"
_DEMO_FUEL = 100000
_PRINTED_FRAMES = 8


def _config_options(f):
    """The options shared by `fuzz` and `replay`."""
    options = [
        click.option("--seed", type=int, default=campaign.DEFAULT_SEED,
                     help="Campaign seed, overridden by $ZL_SEED."),
        click.option("--fuel", type=click.IntRange(min=0),
                     default=campaign.DEFAULT_FUEL,
                     help="Recursor unfoldings permitted per case."),
        click.option("--q-depth", type=click.IntRange(min=1),
                     default=campaign.DEFAULT_Q_DEPTH,
                     help="Positions a generated predicate may read."),
        click.option("--f-depth", type=click.IntRange(min=1),
                     default=campaign.DEFAULT_F_DEPTH,
                     help="Queries a generated challenger may make."),
        click.option("--elem-max", type=click.IntRange(min=1),
                     default=campaign.DEFAULT_ELEM_MAX,
                     help="Largest generated element and size."),
        click.option("--scan-cap", type=click.IntRange(min=1),
                     default=campaign.DEFAULT_SCAN_CAP,
                     help="Largest truncation point the search probes."),
        click.option("--trace-prefix-len", type=click.IntRange(min=0),
                     default=core.DEFAULT_TRACE_PREFIX_LEN,
                     help="Carrier prefix length kept in reports."),
        click.option("--scheme", type=click.Choice(
                         [s.name.lower().replace("_", "-")
                          for s in campaign.Scheme]),
                     default="lex", help="The truncation scheme."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _seed(seed):
    value = os.environ.get(_SEED_ENV)
    if not value:
        return seed
    try:
        seed = int(value)
    except ValueError:
        seed = -1
    if seed < 0:
        raise click.BadParameter(
            "{} must be a non-negative integer, {!r} was set.".format(
                _SEED_ENV, value),
            param_hint="--seed")
    return seed


@click.group()
def _cli():
    """Recursion schemes over chain-bounded orders, and their checker."""
    pass


@_cli.command(name="fuzz")
@_config_options
@click.option("--cases", type=click.IntRange(min=0),
              default=campaign.DEFAULT_CASES, help="Number of cases.")
@click.option("--workers", type=click.IntRange(min=1),
              default=campaign.DEFAULT_WORKERS,
              help="Worker processes to run cases on.")
@click.option("--report", type=click.Path(dir_okay=False), default=None,
              help="Optional path of the JSONL report.")
@click.pass_context
def _fuzz(ctx, seed, fuel, q_depth, f_depth, elem_max, scan_cap,
          trace_prefix_len, scheme, cases, workers, report):
    """Run a seeded campaign over the goal checker."""
    cfg = campaign.make_config(
        seed=_seed(seed), cases=cases, fuel=fuel, q_depth=q_depth,
        f_depth=f_depth, elem_max=elem_max, scan_cap=scan_cap,
        trace_prefix_len=trace_prefix_len, workers=workers, scheme=scheme)
    records = campaign.run_campaign(cfg)
    if report is not None:
        campaign.write_jsonl(records, report)

    counts = campaign.summarize(records)
    for name, count in counts.items():
        click.echo("%-12s %i" % (name, count))
    if counts[realizers.STATUS_VIOLATED]:
        ctx.exit(1)


@_cli.command(name="replay")
@_config_options
@click.option("--sub-seed", type=click.IntRange(min=0), required=True,
              help="The sub seed of the case to re-run.")
@click.pass_context
def _replay(ctx, seed, fuel, q_depth, f_depth, elem_max, scan_cap,
            trace_prefix_len, scheme, sub_seed):
    """Re-run one case from its sub seed."""
    cfg = campaign.make_config(
        seed=_seed(seed), cases=1, fuel=fuel, q_depth=q_depth,
        f_depth=f_depth, elem_max=elem_max, scan_cap=scan_cap,
        trace_prefix_len=trace_prefix_len, scheme=scheme)
    predicate, _, x = campaign.generate_case(sub_seed, cfg)
    record = campaign.run_case(cfg, 0, sub_seed=sub_seed)
    _print_field("Q", str(predicate))
    _print_field("x", repr(x))
    _print_report(record.report)
    click.echo(campaign.format_record(record))
    if record.report.status == realizers.STATUS_VIOLATED:
        ctx.exit(1)


@_cli.group(name="demo")
def _demo():
    """Worked examples of the recursion schemes."""
    pass


@_demo.command(name="subset-phi")
@click.option("--fuel", type=click.IntRange(min=0), default=_DEMO_FUEL)
def _subset_phi(fuel):
    """Simple recursion adjoining 5 to the empty set."""
    _print_outcome(instances.adjoin_demo(5, fuel))


@_demo.command(name="diverge")
@click.option("--fuel", type=click.IntRange(min=0), default=_DEMO_FUEL)
def _diverge(fuel):
    """The unbounded counting recursion, which exhausts every budget."""
    _print_outcome(instances.divergence_demo(fuel))


@_demo.command(name="bounded")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--fuel", type=click.IntRange(min=0), default=_DEMO_FUEL)
def _bounded(n, fuel):
    """The counting recursion cut off at N."""
    _print_outcome(recursors.simple_rec_bounded_demo(n, fuel))


@_demo.command(name="omega-n")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--position", type=click.IntRange(min=0), default=3,
              help="The position the body reads.")
@click.option("--fuel", type=click.IntRange(min=0), default=_DEMO_FUEL)
def _omega_n(n, position, fuel):
    """Controlled recursion with the controller keeping N entries."""
    _print_outcome(recursors.omega_n(
        n, instances.read_body(position), instances.EMPTY_SET, fuel))


@_demo.command(name="maximal-ideal")
@click.option("--ring", type=click.Choice(sorted(instances.RING_CODES)),
              default="z")
@click.option("--fuel", type=click.IntRange(min=0), default=_DEMO_FUEL)
@click.pass_context
def _maximal_ideal(ctx, ring, fuel):
    """Approximate maximal ideals against the fixed challenger pairs."""
    ring_code = instances.ring_from_name(ring)
    violated = False
    for name, pair in instances.challenger_pairs(ring_code).items():
        click.echo("Challengers %s\n--------" % name)
        report = instances.maximal_ideal_demo(
            ring_code, pair.F, pair.G, core.Budget(fuel))
        _print_membership(report.s_prefix)
        _print_report(report)
        click.echo("--------\n")
        violated = violated or report.status == realizers.STATUS_VIOLATED
    if violated:
        ctx.exit(1)


@_demo.command(name="truncation")
@click.option("--n", "n", type=click.IntRange(min=1), default=3)
def _truncation(n):
    """Compare filling with 1 and with 0 after the first N entries."""
    for fill in (1, 0):
        check = instances.check_truncation_direction(n, fill)
        click.echo("fill=%i premise=%s conclusion=%s holds=%s" % (
            check.fill, check.premise, check.conclusion, check.holds))


def _print_field(name, content):
    click.echo("[%s]:" % name)
    click.echo("\t%s" % content)


def _print_outcome(outcome):
    """Print a value, or the head of an exhausted trace."""
    if core.is_value(outcome):
        _print_field("Value", outcome.value)
        return
    _print_field("Exhausted", "reason=%s unfoldings=%i" % (
        outcome.reason, outcome.unfoldings))
    for frame in outcome.trace[:_PRINTED_FRAMES]:
        click.echo("\t%s %s" % (frame.recursor, list(frame.prefix)))
    if outcome.unfoldings > _PRINTED_FRAMES:
        click.echo("\t... %i more" % (outcome.unfoldings - _PRINTED_FRAMES))


def _print_membership(s_prefix):
    if s_prefix is None:
        return
    click.echo("code  member")
    for code, elem in enumerate(s_prefix):
        click.echo("%4i  %s" % (
            code, "in" if elem == instances.MEMBER_IN else "out"))


def _print_report(report):
    for key, value in realizers.report_to_json(report).items():
        click.echo("%-12s %s" % (key, value))


def cli_main(argv=None):
    """Run the command line with `argv` and return the exit code."""
    try:
        _cli.main(args=argv, prog_name="zlutil")
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 1
    return 0


if __name__ == "__main__":
    sys.exit(cli_main())
