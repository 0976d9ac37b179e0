"""Realizers for the functional interpretation of the maximality axiom.

Given a size challenger `F`, an extension challenger `G` and a start carrier
`x`, the realizers compute a size `r`, a carrier `s` and a procedure `t` such
that

    Q(|x|_r) -> Q(|s|_{F s t}) and C(G, s, t)

where `C(G, y, h)` says that if `G y h` is admitted at `y`, then `Q` fails on
the approximation of `y (+) G y h` of size `h(G y h)`.

All realizers are parametrised by a `core.TruncationScheme` `e`.
"""

import collections

import glog

from zorn import core, recursors

STATUS_OK = "ok"
STATUS_VIOLATED = "violated"
STATUS_EXHAUSTED = "exhausted"

DEFAULT_COMPARE_LEN = 64
DEFAULT_MAX_RP_RECORDS = 32

# The realizing terms. `chain` is the list computed by `gamma_e`.
Realizer = collections.namedtuple("Realizer", ["r", "s", "t", "chain"])

# One instance of the relevant part axiom: the approximation of `x` of the
# given size equals that of its truncation.
RPCheck = collections.namedtuple("RPCheck", ["prefix", "size", "holds"])

GoalReport = collections.namedtuple(
    "GoalReport",
    [
        "r",
        "s_prefix",
        "gamma_len",
        "q_x_r",
        "q_s",
        "c_holds",
        "fst",
        "t_probes",
        "rp_checks",
        "rp_ok",
        "chain_ok",
        "budget_spent",
        "status",
        "chain",
    ]
)


class IdentityScheme(core.TruncationScheme):
    """The trivial truncation `e F x p := x`."""

    def truncate(self, F, x, p, budget):
        return x


class RelevantPartMonitor(object):
    """Checks the relevant part axiom on every `omega_e` evaluation.

    Args:
        sig: the `core.ZLSignature`.
        prefix_len: the carrier prefix length kept in each record.
        max_records: the number of records kept. Violations are always
            counted, and recorded while there is room.
    """

    def __init__(self, sig, prefix_len=core.DEFAULT_TRACE_PREFIX_LEN,
                 max_records=DEFAULT_MAX_RP_RECORDS):
        """Create a new `RelevantPartMonitor` object."""
        self._sig = sig
        self._prefix_len = prefix_len
        self._max_records = max_records
        self.records = []
        self.checked = 0
        self.violations = 0

    def record(self, x, x_tilde, size):
        """Record whether `|x|_size = |x_tilde|_size`."""
        holds = (tuple(self._sig.approx(x, size))
                 == tuple(self._sig.approx(x_tilde, size)))
        self.checked += 1
        if not holds:
            self.violations += 1
            glog.debug("Relevant part violated at size %i.", size)
        if len(self.records) < self._max_records:
            self.records.append(RPCheck(
                prefix=tuple(self._sig.approx(x, self._prefix_len)),
                size=size,
                holds=holds,
            ))
        return holds

    @property
    def ok(self):
        return self.violations == 0


def omega_guard(sig, scheme, F, x, budget, monitor=None):
    """The procedure `Omega_{e,F,x}`.

    It maps a step `a` to `Omega_e F (x (+) a)` when `a` is admitted at `x`,
    and to `sig.zero_out` otherwise.
    """

    def guarded(a):
        if sig.admits(x, a):
            return _omega_e(sig, scheme, F, sig.extend(x, a), budget, monitor)
        return sig.zero_out

    return guarded


def _contd(sig, scheme, F, x, budget, monitor=None):
    return scheme.truncate(
        F, x, omega_guard(sig, scheme, F, x, budget, monitor), budget)


def _omega_e(sig, scheme, F, x, budget, monitor=None):
    with budget.unfolding("omega_e", x, sig.approx):
        x_tilde = _contd(sig, scheme, F, x, budget, monitor)
        size = F(x_tilde,
                 omega_guard(sig, scheme, F, x_tilde, budget, monitor))
    if monitor is not None:
        monitor.record(x, x_tilde, size)
    return size


def _cond_c(sig, Q, G, y, h):
    """Evaluate `C(G, y, h)`, also returning the step `G y h`."""
    a = G(y, h)
    if not sig.admits(y, a):
        return True, a
    return not Q(sig.approx(sig.extend(y, a), h(a))), a


def _gamma_e(sig, scheme, Q, F, G, x, budget, monitor=None):
    chain = []
    while True:
        with budget.unfolding("gamma_e", x, sig.approx):
            y = _contd(sig, scheme, F, x, budget, monitor)
            chain.append(y)
            holds, a = _cond_c(
                sig, Q, G, y, omega_guard(sig, scheme, F, y, budget, monitor))
        if holds:
            return chain
        x = sig.extend(y, a)


def _realizer_rst(sig, scheme, Q, F, G, x, budget, monitor=None):
    r = _omega_e(sig, scheme, F, x, budget, monitor)
    chain = _gamma_e(sig, scheme, Q, F, G, x, budget, monitor)
    # The last element; the empty list never arises from gamma_e.
    s = chain[-1] if chain else sig.zero_carrier
    t = omega_guard(sig, scheme, F, s, budget, monitor)
    return Realizer(r=r, s=s, t=t, chain=chain)


def cond_C(sig, Q, G, y, h, budget):
    """Evaluate `C(G, y, h) := G y h > y -> not Q(|y (+) G y h|_{h(G y h)})`.

    Returns:
        `core.Value(True)` iff either `G y h` is not admitted at `y`, or `Q`
        fails on the extended approximation.
    """
    budget = core.as_budget(budget)
    return core.evaluate(
        budget, lambda: _cond_c(sig, Q, G, y, h)[0])


def omega_e(sig, scheme, F, x, budget, monitor=None):
    """Evaluate `Omega_e F x = F x~ Omega_{e,F,x~}`.

    Here `x~ = e F x Omega_{e,F,x}` is the truncation of `x`.

    Returns:
        `core.Value` of the size, or `core.Exhausted`.
    """
    budget = core.as_budget(budget)
    return core.evaluate(budget, _omega_e, sig, scheme, F, x, budget, monitor)


def contd_e(sig, scheme, F, x, budget):
    """Evaluate the truncation `x~ = e F x Omega_{e,F,x}`."""
    budget = core.as_budget(budget)
    return core.evaluate(budget, _contd, sig, scheme, F, x, budget)


def gamma_e(sig, scheme, Q, F, G, x, budget):
    """Evaluate the chain `Gamma_e F G x`.

    With `y := x~`, the chain is `[y]` when `C(G, y, Omega_{e,F,y})` holds,
    and `y :: Gamma_e F G (y (+) G y Omega_{e,F,y})` otherwise.

    Returns:
        `core.Value` of the list of carriers, or `core.Exhausted` when the
        chain does not terminate within the budget.
    """
    budget = core.as_budget(budget)
    return core.evaluate(
        budget, _gamma_e, sig, scheme, Q, F, G, x, budget)


def realizer_rst(sig, scheme, Q, F, G, x, budget):
    """Compute the realizing terms `r`, `s` and `t`.

    `r := Omega_e F x`, `s` is the last element of `Gamma_e F G x` (the zero
    carrier for an empty list), and `t := Omega_{e,F,s}`.

    Returns:
        `core.Value` of a `Realizer`, or `core.Exhausted`.
    """
    budget = core.as_budget(budget)
    return core.evaluate(
        budget, _realizer_rst, sig, scheme, Q, F, G, x, budget)


def check_rp(sig, scheme, F, x, budget):
    """Check the relevant part axiom `|x|_r = |x~|_r` for `r = Omega_e F x`."""
    budget = core.as_budget(budget)

    def check():
        size = _omega_e(sig, scheme, F, x, budget)
        x_tilde = _contd(sig, scheme, F, x, budget)
        return (tuple(sig.approx(x, size))
                == tuple(sig.approx(x_tilde, size)))

    return core.evaluate(budget, check)


def _probed(t, probes):
    """Wrap `t` so that the answers it gives are recorded."""

    def probed(a):
        answer = t(a)
        probes.append(answer)
        return answer

    return probed


def _goal(sig, scheme, Q, F, G, x, budget, monitor, fields, prefix_len):
    realizer = _realizer_rst(sig, scheme, Q, F, G, x, budget, monitor)
    fields["r"] = realizer.r
    fields["gamma_len"] = len(realizer.chain)
    fields["chain"] = tuple(realizer.chain)
    s = realizer.s
    fields["s_prefix"] = tuple(sig.approx(s, prefix_len))
    fields["q_x_r"] = Q(sig.approx(x, realizer.r))
    t = _probed(realizer.t, fields["t_probes"])
    fst = F(s, t)
    fields["fst"] = fst
    fields["q_s"] = Q(sig.approx(s, fst))
    fields["c_holds"] = _cond_c(sig, Q, G, s, t)[0]


def check_goal(sig, scheme, Q, F, G, x, budget,
               prefix_len=core.DEFAULT_TRACE_PREFIX_LEN):
    """Check one instance of `Q(|x|_r) -> Q(|s|_{F s t}) and C(G, s, t)`.

    Args:
        sig: the `core.ZLSignature`.
        scheme: the `core.TruncationScheme`.
        Q: the predicate on approximations.
        F: the size challenger.
        G: the extension challenger.
        x: the start carrier.
        budget: a `core.Budget` or a fuel count.
        prefix_len: the length of the carrier prefixes kept in the report.

    Returns:
        a `GoalReport`. Its status is `violated` iff `q_x_r` holds and
        either `q_s` or `c_holds` fails, and `exhausted` when the budget ran
        out before all components were computed.
    """
    budget = core.as_budget(budget)
    monitor = RelevantPartMonitor(sig, prefix_len)
    fields = dict(
        r=None, s_prefix=None, gamma_len=None, q_x_r=None, q_s=None,
        c_holds=None, fst=None, t_probes=[], chain=())
    outcome = core.evaluate(
        budget, _goal, sig, scheme, Q, F, G, x, budget, monitor, fields,
        prefix_len)

    if core.is_exhausted(outcome):
        status = STATUS_EXHAUSTED
    elif fields["q_x_r"] and not (fields["q_s"] and fields["c_holds"]):
        status = STATUS_VIOLATED
    else:
        status = STATUS_OK
    if status == STATUS_VIOLATED:
        glog.warning("Goal violated: r=%s, F s t=%s.",
                     fields["r"], fields["fst"])

    return GoalReport(
        r=fields["r"],
        s_prefix=fields["s_prefix"],
        gamma_len=fields["gamma_len"],
        q_x_r=fields["q_x_r"],
        q_s=fields["q_s"],
        c_holds=fields["c_holds"],
        fst=fields["fst"],
        t_probes=tuple(fields["t_probes"]),
        rp_checks=tuple(monitor.records),
        rp_ok=monitor.ok,
        chain_ok=None,
        budget_spent=budget.spent,
        status=status,
        chain=fields["chain"],
    )


def report_to_json(report):
    """The JSON-serializable fields of a `GoalReport`, in schema order."""
    s_prefix = report.s_prefix
    return collections.OrderedDict([
        ("status", report.status),
        ("r", report.r),
        ("s_prefix", list(s_prefix) if s_prefix is not None else None),
        ("gamma_len", report.gamma_len),
        ("q_x_r", report.q_x_r),
        ("q_s", report.q_s),
        ("c_holds", report.c_holds),
        ("rp_ok", report.rp_ok),
        ("budget_spent", report.budget_spent),
        ("chain_ok", report.chain_ok),
    ])


def _chain_laws(sig, scheme, Q, F, G, x, chain, budget, compare_len):

    def agree(y, z):
        return (tuple(sig.approx(y, compare_len))
                == tuple(sig.approx(z, compare_len)))

    if not chain:
        return False
    if not agree(_contd(sig, scheme, F, x, budget), chain[0]):
        return False
    for i, y in enumerate(chain):
        h = omega_guard(sig, scheme, F, y, budget)
        holds, a = _cond_c(sig, Q, G, y, h)
        if i == len(chain) - 1:
            if not holds:
                return False
            break
        if holds:
            return False
        following = _contd(sig, scheme, F, sig.extend(y, a), budget)
        if not agree(following, chain[i + 1]):
            return False
    if len(chain) == 1:
        s = chain[0]
        r = _omega_e(sig, scheme, F, x, budget)
        return r == F(s, omega_guard(sig, scheme, F, s, budget))
    return True


def check_chain_laws(sig, scheme, Q, F, G, x, chain, budget,
                     compare_len=DEFAULT_COMPARE_LEN):
    """Re-verify a chain computed by `gamma_e` by independent evaluation.

    Checks that the chain starts at `x~`, that every link but the last fails
    `C` and is followed by the truncation of its extension, that `C` holds at
    the last element, and that a singleton chain satisfies `r = F(s, t)`.
    Carriers are compared through approximations of length `compare_len`.

    Returns:
        `core.Value` of a bool, or `core.Exhausted`.
    """
    budget = core.as_budget(budget)
    return core.evaluate(
        budget, _chain_laws, sig, scheme, Q, F, G, x, chain, budget,
        compare_len)


def omega_via_controlled(sig, scheme, F, x, budget):
    """Compute `Omega_e F x` as controlled recursion `Psi (e F) F x`."""
    budget = core.as_budget(budget)

    def controller(y, p):
        return scheme.truncate(F, y, p, budget)

    return recursors.controlled_rec(sig, controller, F, x, budget)


def gamma_via_controlled(sig, scheme, Q, F, G, x, budget):
    """Compute `Gamma_e F G x` as controlled recursion over lists.

    The controller is `omega F x p := x~` and the body is
    `f F G x p := x :: ([] if C(G, x, h) else p(G x h))` for
    `h = Omega_{e,F,x}`,
    with the empty list as the zero of the output type.

    Returns:
        `core.Value` of the list of carriers, or `core.Exhausted`.
    """
    budget = core.as_budget(budget)
    list_sig = sig._replace(zero_out=())

    def controller(y, p):
        return _contd(sig, scheme, F, y, budget)

    def body(y, p):
        holds, a = _cond_c(
            sig, Q, G, y, omega_guard(sig, scheme, F, y, budget))
        if holds:
            return (y,)
        return (y,) + tuple(p(a))

    outcome = recursors.controlled_rec(list_sig, controller, body, x, budget)
    if core.is_value(outcome):
        return core.Value(list(outcome.value))
    return outcome
