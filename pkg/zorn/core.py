"""Signatures, fuel budgets and evaluation outcomes shared by every recursor.

Every recursor in this package is evaluated under a `Budget`. A budget counts
recursor unfoldings: each recursive call to a recursor, and each step of a
bounded search, spends exactly one unit. Running out of fuel is an observable
outcome of an evaluation, reported as `Exhausted`, never a wrong value.
"""

import abc
import collections
import sys
import threading

import glog

DEFAULT_TRACE_PREFIX_LEN = 16
DEFAULT_MAX_FRAMES = 64
DEFAULT_MAX_DEPTH = 1000

# Interpreter frames allowed for each active unfolding.
_FRAMES_PER_UNFOLDING = 12

_BASE_RECURSION_LIMIT = sys.getrecursionlimit()
_RECURSION_LIMIT_LOCK = threading.Lock()

# The parameter bundle (|.|, (+), <) of the axiom, plus the canonical zero of
# the recursor's output type and of the carrier type.
ZLSignature = collections.namedtuple(
    "ZLSignature",
    [
        "approx",
        "extend",
        "admits",
        "zero_out",
        "zero_carrier",
    ]
)

# The size challenger F and the extension challenger G.
CounterexamplePair = collections.namedtuple(
    "CounterexamplePair", ["F", "G"])

# One recorded unfolding: the recursor name and a bounded approximation of
# the carrier it was called at.
Frame = collections.namedtuple("Frame", ["recursor", "prefix"])

Value = collections.namedtuple("Value", ["value"])

Exhausted = collections.namedtuple(
    "Exhausted", ["trace", "reason", "unfoldings"])


class Predicate(collections.namedtuple("Predicate", ["q", "description"])):
    """A decidable test on approximations, callable as `Q(u)`."""
    __slots__ = ()

    def __call__(self, u):
        return bool(self.q(u))

    def __str__(self):
        return self.description


def make_signature(approx, extend, admits, zero_out, zero_carrier):
    """Bundle the parameters of a recursion scheme.

    No validation beyond arity is performed: purity and determinism of the
    three procedures are the caller's contract.

    Args:
        approx: (carrier, size) -> approximation, the map |x|_d.
        extend: (carrier, step) -> carrier, the map x (+) a.
        admits: (carrier, step) -> bool, the test a > x.
        zero_out: the canonical zero of the recursor's output type.
        zero_carrier: the canonical zero carrier.

    Returns:
        a `ZLSignature`.
    """
    return ZLSignature(
        approx=approx,
        extend=extend,
        admits=admits,
        zero_out=zero_out,
        zero_carrier=zero_carrier,
    )


class BudgetExhausted(Exception):
    """Signals that an evaluation ran out of fuel, depth or search room."""

    def __init__(self, reason):
        super(BudgetExhausted, self).__init__(
            "Evaluation budget exhausted ({}).".format(reason))
        self.reason = reason


def snapshot(carrier, n, recursor="", approx=None):
    """Record the first `n` approximation entries of `carrier`.

    Args:
        carrier: the carrier to read.
        n: the number of entries to keep.
        recursor: (optional) the name of the recursor the frame belongs to.
        approx: (optional) the approximation map to read through. Defaults
            to reading `carrier.at(i)` for `i < n`.

    Returns:
        a `Frame`.
    """
    if n < 0:
        raise ValueError("Snapshot length must be non-negative, {} was "
                         "passed.".format(n))
    if approx is not None:
        prefix = tuple(approx(carrier, n))
    else:
        prefix = tuple(carrier.at(i) for i in range(n))
    return Frame(recursor=recursor, prefix=prefix)


class Budget(object):
    """A mutable handle on the fuel of one evaluation.

    The handle is threaded through every closure an evaluation creates, so
    queries made by challengers pay fuel too. Unfoldings are logged in call
    order; only the first `max_frames` are kept, and carriers are only
    snapshotted when the log is turned into an `Exhausted` trace.

    Args:
        remaining: the number of permitted recursor unfoldings.
        max_depth: the maximum number of simultaneously active unfoldings.
        trace_prefix_len: the approximation length kept per trace frame.
        max_frames: the number of frames kept in an `Exhausted` trace.
    """

    def __init__(self, remaining, max_depth=DEFAULT_MAX_DEPTH,
                 trace_prefix_len=DEFAULT_TRACE_PREFIX_LEN,
                 max_frames=DEFAULT_MAX_FRAMES):
        """Create a new `Budget` object."""
        if remaining < 0:
            raise ValueError(
                "Budget must be non-negative, {} was passed.".format(
                    remaining))
        self.remaining = remaining
        self.spent = 0
        self.max_depth = max_depth
        self.trace_prefix_len = trace_prefix_len
        self.max_frames = max_frames
        self._depth = 0
        self._log = []
        self._logged = 0

    def spend(self):
        """Spend one unit of fuel."""
        if self.remaining == 0:
            raise BudgetExhausted("fuel")
        self.remaining -= 1
        self.spent += 1
        return self

    def unfolding(self, recursor, carrier, approx=None):
        """Account for one unfolding of `recursor` at `carrier`.

        Use the result as a context manager around the body of the
        unfolding, so that the nesting depth is tracked:

            with budget.unfolding("simple_rec", x, sig.approx):
                ...

        The frame is logged before fuel is spent, so an exhausted trace
        always names the unfolding that could not be paid for.
        """
        if self._logged < self.max_frames:
            self._log.append((recursor, carrier, approx))
        self._logged += 1
        self.spend()
        if self._depth >= self.max_depth:
            raise BudgetExhausted("depth")
        return self

    def __enter__(self):
        self._depth += 1
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self._depth -= 1
        return False

    @property
    def depth(self):
        """The number of currently active unfoldings."""
        return self._depth

    def trace(self):
        """Snapshot the logged unfoldings, in call order."""
        return tuple(
            snapshot(carrier, self.trace_prefix_len, recursor=recursor,
                     approx=approx)
            for recursor, carrier, approx in self._log)

    def exhausted(self, reason):
        """Build the `Exhausted` outcome for the current log."""
        trace = self.trace()
        if not trace:
            trace = (Frame(recursor="evaluate", prefix=()),)
        return Exhausted(
            trace=trace, reason=reason, unfoldings=max(self._logged, 1))


def as_budget(budget):
    """Accept either a `Budget` or a plain fuel count."""
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))


def spend(budget):
    """Decrement `budget` by one unfolding.

    Returns:
        the same budget handle, for chaining.

    Raises:
        BudgetExhausted: when no fuel remains. Callers propagate it unchanged
            up to `evaluate`.
    """
    return budget.spend()


def reserve_stack(budget):
    """Raise the interpreter recursion limit to what `budget` may need.

    The limit is process-wide and is never lowered here.
    """
    needed = (_BASE_RECURSION_LIMIT
              + budget.max_depth * _FRAMES_PER_UNFOLDING)
    with _RECURSION_LIMIT_LOCK:
        if sys.getrecursionlimit() < needed:
            sys.setrecursionlimit(needed)


def evaluate(budget, fn, *args, **kwargs):
    """Run `fn(*args, **kwargs)` under `budget` and wrap the result.

    Returns:
        `Value(result)`, or `Exhausted` when the evaluation ran out of fuel,
        depth or search room, or overflowed the interpreter stack.
    """
    reserve_stack(budget)
    try:
        return Value(fn(*args, **kwargs))
    except BudgetExhausted as e:
        glog.debug("Evaluation exhausted: {}".format(e.reason))
        return budget.exhausted(e.reason)
    except RecursionError:
        glog.debug("Evaluation overflowed the interpreter stack.")
        return budget.exhausted("recursion")


def is_value(outcome):
    return isinstance(outcome, Value)


def is_exhausted(outcome):
    return isinstance(outcome, Exhausted)


class TruncationScheme(abc.ABC):
    """A closed term `e` that truncates a carrier ahead of a size challenger.

    Subclasses realise `e F x p`, the carrier the realizers recurse from.
    """

    @abc.abstractmethod
    def truncate(self, F, x, p, budget):
        """Truncate `x` with respect to the challenger `F`.

        Args:
            F: the size challenger, `(carrier, step -> size) -> size`.
            x: the carrier to truncate.
            p: the guarded recursive call `step -> size` at `x`.
            budget: the `Budget` of the running evaluation. Queries to `p`
                pay fuel through it.

        Returns:
            the truncated carrier.
        """
        pass
