"""The lexicographic instance: sequences ordered lexicographically.

Carriers are sequences `x : N -> Elem`, represented structurally as a finite
prefix plus a tail descriptor so that splicing and prefix reads are exact.
Steps are pairs `(n, y)`; `x (+) (n, y)` keeps the first `n` entries of `x`
and continues with `y`, and the step is admitted when `y(n)` is below `x(n)`.
"""

import collections
import itertools
import operator

from zorn import core

DEFAULT_SCAN_CAP = 4096

# Decidable equality, the relation `lt` on elements, and the canonical zero,
# which must be `lt`-minimal.
ElemOps = collections.namedtuple("ElemOps", ["eq", "lt", "zero"])

NAT_ELEMS = ElemOps(eq=operator.eq, lt=operator.lt, zero=0)

# Tail descriptors. A `Generator` tail reads `fn(j + offset)` at the j-th
# position after the prefix.
ZeroFill = collections.namedtuple("ZeroFill", ["zero"])
ConstFill = collections.namedtuple("ConstFill", ["elem"])
Generator = collections.namedtuple("Generator", ["fn", "offset"])

# The step a = (n, y).
LexStep = collections.namedtuple("LexStep", ["n", "y"])


class Seq(object):
    """An immutable sequence given by a finite prefix and a tail.

    Args:
        prefix: the explicit leading entries.
        tail: a `ZeroFill`, `ConstFill` or `Generator` describing the rest.
    """
    __slots__ = ("prefix", "tail")

    def __init__(self, prefix, tail):
        """Create a new `Seq` object."""
        self.prefix = tuple(prefix)
        self.tail = tail

    @classmethod
    def of(cls, prefix, zero=0):
        """The sequence `prefix` followed by zeros."""
        return cls(prefix, ZeroFill(zero))

    @classmethod
    def zeros(cls, zero=0):
        return cls((), ZeroFill(zero))

    @classmethod
    def constant(cls, elem):
        return cls((), ConstFill(elem))

    @classmethod
    def generated(cls, fn):
        """The sequence `i -> fn(i)`."""
        return cls((), Generator(fn, 0))

    def at(self, i):
        """The entry at position `i`."""
        if i < len(self.prefix):
            return self.prefix[i]
        tail = self.tail
        if isinstance(tail, Generator):
            return tail.fn(i - len(self.prefix) + tail.offset)
        if isinstance(tail, ConstFill):
            return tail.elem
        return tail.zero

    def fill(self):
        """The repeated tail element, or None for a generated tail."""
        if isinstance(self.tail, ConstFill):
            return self.tail.elem
        if isinstance(self.tail, ZeroFill):
            return self.tail.zero
        return None

    def take(self, n):
        """The tuple of the first `n` entries."""
        if n <= len(self.prefix):
            return self.prefix[:n]
        return self.prefix + tuple(
            self.at(i) for i in range(len(self.prefix), n))

    def splice(self, n, y):
        """The sequence `<self(0), ..., self(n-1)> @ y`.

        Positions of `y` are absolute: the result reads `y(i)` at `i >= n`.
        """
        head = self.take(n)
        if len(y.prefix) > n:
            return Seq(head + y.prefix[n:], y.tail)
        tail = y.tail
        if isinstance(tail, Generator):
            tail = Generator(tail.fn, tail.offset + n - len(y.prefix))
        return Seq(head, tail)

    def agrees(self, other, k, eq=operator.eq):
        """Whether the two sequences agree on positions `[0, k)`."""
        return all(eq(self.at(i), other.at(i)) for i in range(k))

    def __repr__(self):
        if isinstance(self.tail, Generator):
            tail = "generated"
        else:
            tail = "fill={!r}".format(self.fill())
        return "Seq({!r}, {})".format(list(self.prefix), tail)


def lex_signature(elem=NAT_ELEMS, zero_out=0):
    """The signature of the lexicographic instance over `elem`.

    Args:
        elem: the `ElemOps` of the element type.
        zero_out: the zero of the recursor output, 0 for size indices.

    Returns:
        a `core.ZLSignature` with
            approx(x, n) = <x(0), ..., x(n-1)>,
            extend(x, (n, y)) = approx(x, n) @ y,
            admits(x, (n, y)) = lt(y(n), x(n)).
    """

    def approx(x, n):
        return x.take(n)

    def extend(x, a):
        return x.splice(a.n, a.y)

    def admits(x, a):
        return elem.lt(a.y.at(a.n), x.at(a.n))

    return core.make_signature(
        approx=approx,
        extend=extend,
        admits=admits,
        zero_out=zero_out,
        zero_carrier=Seq.zeros(elem.zero),
    )


def ext(x, n, zero=0):
    """Keep the first `n` entries of `x` and fill the rest with zero."""
    if n < 0:
        raise ValueError(
            "Extension length must be non-negative, {} was passed.".format(n))
    return Seq(x.take(n), ZeroFill(zero))


def _eta(phi, x, k, budget, zero):
    for i in range(k + 1):
        with budget.unfolding("eta", x, None):
            if phi(ext(x, i, zero)) < i:
                return zero
    return x.at(k)


def eta(phi, x, k, budget, zero=0):
    """The bounded search functional at position `k`.

    Returns zero if some `i <= k` has `phi(ext(x, i)) < i`, else `x(k)`. The
    search visits `i = 0, 1, ..., k` in order and stops at the first witness;
    each probe spends one unit of budget.

    Returns:
        a `core.Value` of the element, or `core.Exhausted`.
    """
    budget = core.as_budget(budget)
    return core.evaluate(budget, _eta, phi, x, k, budget, zero)


def least_truncation_point(phi, x, budget, scan_cap=DEFAULT_SCAN_CAP, zero=0):
    """The least `m` with `phi(ext(x, m)) < m`.

    Raises:
        core.BudgetExhausted: when no such `m <= scan_cap` exists, or when
            the probes run out of fuel.
    """
    for i in itertools.count():
        if i > scan_cap:
            raise core.BudgetExhausted("scan")
        candidate = ext(x, i, zero)
        with budget.unfolding("eta", candidate, None):
            if phi(candidate) < i:
                return i


def restrict(p, y, elem=NAT_ELEMS):
    """The restriction `p|_y` of `p` to steps admitted at `y`.

    The returned procedure maps `(n, z)` to `p((n, z))` when `z(n)` is below
    `y(n)`, and to 0 otherwise.
    """

    def restricted(step):
        if elem.lt(step.y.at(step.n), y.at(step.n)):
            return p(step)
        return 0

    return restricted


class LexScheme(core.TruncationScheme):
    """The truncation `e F x p := eta(lambda y. F y (p|_y)) x`.

    The result is computed structurally as `ext(x, m)` for the least `m` the
    search finds.

    Args:
        elem: the `ElemOps` of the element type.
        scan_cap: the largest truncation point the search will probe.
    """

    def __init__(self, elem=NAT_ELEMS, scan_cap=DEFAULT_SCAN_CAP):
        """Create a new `LexScheme` object."""
        self._elem = elem
        self._scan_cap = scan_cap

    def truncate(self, F, x, p, budget):
        elem = self._elem

        def phi(y):
            return F(y, restrict(p, y, elem))

        m = least_truncation_point(phi, x, budget, self._scan_cap, elem.zero)
        return ext(x, m, elem.zero)


class ZeroFillScheme(core.TruncationScheme):
    """A deliberately broken truncation that forgets all of `x`.

    It does not satisfy the relevant part axiom, and exists to exercise the
    negative path of the checker.
    """

    def __init__(self, elem=NAT_ELEMS):
        """Create a new `ZeroFillScheme` object."""
        self._elem = elem

    def truncate(self, F, x, p, budget):
        return Seq.zeros(self._elem.zero)


def e_lex(F, x, p, budget, elem=NAT_ELEMS, scan_cap=DEFAULT_SCAN_CAP):
    """Evaluate the lexicographic truncation scheme once.

    Returns:
        a `core.Value` holding `ext(x, m)` for the least `m` found, or
        `core.Exhausted` when the search exceeds `scan_cap` or the fuel.
    """
    budget = core.as_budget(budget)
    scheme = LexScheme(elem, scan_cap)
    return core.evaluate(budget, scheme.truncate, F, x, p, budget)


def lex_less(x, y, bound, elem=NAT_ELEMS):
    """Bounded test of `x < y`, i.e. `y` is lexicographically smaller.

    True iff some `n < bound` has equal prefixes of length `n` and
    `lt(y(n), x(n))`. False only means no witness was found below `bound`.
    """
    for n in range(bound):
        x_n = x.at(n)
        y_n = y.at(n)
        if elem.lt(y_n, x_n):
            return True
        if not elem.eq(x_n, y_n):
            return False
    return False
