"""Concrete instances: subsets of the naturals, and ideals of a coded ring.

The subset instance has carriers `x : N -> {0, 1}`, extension by union, and
admits a step `(n, y)` at `x` when `n` is not yet in `x` but is in `y`. It is
used by the simple and controlled recursion demos.

The maximal-ideal demo runs the realizers on the lexicographic instance over
the two membership values `MEMBER_IN < MEMBER_OUT`, with `MEMBER_IN` as the
zero, so that zero-filling an approximation puts every later code in.
"""

import collections
import operator

from zorn import core, lex, realizers, recursors

MEMBER_IN = 0
MEMBER_OUT = 1

MEMBERSHIP_ELEMS = lex.ElemOps(
    eq=operator.eq, lt=operator.lt, zero=MEMBER_IN)

DEFAULT_SIZE_HINT = 4096
DEFAULT_SUBSET_BOUND = 64

# A countable ring with its elements coded as natural numbers.
RingCode = collections.namedtuple(
    "RingCode", ["add", "mul", "code0", "code1", "size_hint"])

TruncationCheck = collections.namedtuple(
    "TruncationCheck", ["fill", "premise", "conclusion", "holds"])


class DomainOverflow(ValueError):
    """A ring operation left the range of codes the ring supports."""
    pass


def zero_function(n):
    return 0


def union(x, y):
    """The pointwise union `x (+) y` of two subset carriers."""
    fill_x, fill_y = x.fill(), y.fill()
    if fill_x is None or fill_y is None:
        return lex.Seq.generated(lambda i: max(x.at(i), y.at(i)))
    length = max(len(x.prefix), len(y.prefix))
    prefix = tuple(max(x.at(i), y.at(i)) for i in range(length))
    fill = max(fill_x, fill_y)
    if fill == 0:
        return lex.Seq(prefix, lex.ZeroFill(0))
    return lex.Seq(prefix, lex.ConstFill(fill))


def characteristic(members):
    """The characteristic sequence of a finite set of naturals."""
    members = frozenset(members)
    if not members:
        return lex.Seq.zeros()
    return lex.Seq.of(
        [1 if i in members else 0 for i in range(max(members) + 1)])


EMPTY_SET = characteristic(())


def subset_signature():
    """The signature of the subset instance.

    `approx` reads a prefix, `extend(x, (n, y))` is the union of `x` and `y`,
    and `(n, y)` is admitted at `x` iff `x(n) = 0` and `y(n) = 1`.
    """

    def approx(x, n):
        return x.take(n)

    def extend(x, a):
        return union(x, a.y)

    def admits(x, a):
        return x.at(a.n) == 0 and a.y.at(a.n) == 1

    return core.make_signature(
        approx=approx,
        extend=extend,
        admits=admits,
        zero_out=0,
        zero_carrier=EMPTY_SET,
    )


def counting_body(bound=None):
    """The body `f x p := lambda n. 1 + p(n, {n})(n + 1)`.

    With a `bound`, the returned function is 0 from `n = bound` on. Without
    one, applying the result of simple recursion diverges.
    """

    def body(x, p):

        def count(n):
            if bound is not None and n >= bound:
                return 0
            return 1 + p(lex.LexStep(n, characteristic((n,))))(n + 1)

        return count

    return body


def adjoin_body(n):
    """The body `f x p := 0 if x(n) = 1 else 1 + p(n, {n})`."""

    def body(x, p):
        if x.at(n) == 1:
            return 0
        return 1 + p(lex.LexStep(n, characteristic((n,))))

    return body


def read_body(i):
    """The body `f x p := x(i)`."""

    def body(x, p):
        return x.at(i)

    return body


def adjoin_demo(n, budget):
    """Simple recursion of `adjoin_body(n)` from the empty set, which is 1."""
    return recursors.simple_rec(
        subset_signature(), adjoin_body(n), EMPTY_SET, budget)


def subset_less(x, y, bound=DEFAULT_SUBSET_BOUND):
    """Bounded test of the strict subset order `x < y`.

    True iff `x(j) <= y(j)` for every `j < bound` and some `j < bound` has
    `x(j) = 0` and `y(j) = 1`.
    """
    witness = False
    for j in range(bound):
        x_j, y_j = x.at(j), y.at(j)
        if x_j > y_j:
            return False
        if x_j == 0 and y_j == 1:
            witness = True
    return witness


def check_truncation_direction(n, fill, y=None, bound=DEFAULT_SUBSET_BOUND):
    """Test `t < y -> x < y` for `x = {n}` and its truncation `t`.

    The truncation keeps positions below `n` and sets every later one to
    `fill`. Filling with 1 satisfies the implication; filling with 0 does
    not, as `y` defaults to the union of `t` and `{0, ..., n - 1}`.

    Returns:
        a `TruncationCheck`.
    """
    if n < 0:
        raise ValueError("n must be non-negative, {} was passed.".format(n))
    bound = max(bound, n + 2)
    x = characteristic((n,))
    truncated = recursors.fill_controller(n, fill)(x, None)
    if y is None:
        y = union(truncated, characteristic(range(n)))
    premise = subset_less(truncated, y, bound)
    conclusion = subset_less(x, y, bound)
    return TruncationCheck(
        fill=fill,
        premise=premise,
        conclusion=conclusion,
        holds=not premise or conclusion,
    )


def divergence_demo(budget):
    """Evaluate the unbounded counting body at the empty set, applied to 0.

    Every finite budget is exhausted: the recursion climbs through the
    strictly growing chain `{}, {0}, {0, 1}, ...`.
    """
    budget = core.as_budget(budget)
    sig = subset_signature()._replace(zero_out=zero_function)
    outcome = recursors.simple_rec(sig, counting_body(), EMPTY_SET, budget)
    if core.is_exhausted(outcome):
        return outcome
    return core.evaluate(budget, outcome.value, 0)


def zigzag_encode(v):
    """Code the integers 0, -1, 1, -2, 2, ... as 0, 1, 2, 3, 4, ..."""
    return 2 * v if v >= 0 else -2 * v - 1


def zigzag_decode(c):
    return c // 2 if c % 2 == 0 else -(c + 1) // 2


def zigzag_ring_z(size_hint=DEFAULT_SIZE_HINT):
    """The ring of integers under the zigzag coding.

    Args:
        size_hint: the first code the ring operations refuse to produce.

    Returns:
        a `RingCode`. Its operations raise `DomainOverflow` for results
        coded at or above `size_hint`.
    """

    def lift(op):

        def coded(a, b):
            c = zigzag_encode(op(zigzag_decode(a), zigzag_decode(b)))
            if c >= size_hint:
                raise DomainOverflow(
                    "Ring code {} is beyond the size hint {}.".format(
                        c, size_hint))
            return c

        return coded

    return RingCode(
        add=lift(operator.add),
        mul=lift(operator.mul),
        code0=zigzag_encode(0),
        code1=zigzag_encode(1),
        size_hint=size_hint,
    )


RING_CODES = {
    "z": zigzag_ring_z,
}


def ring_from_name(name):
    """Build the `RingCode` registered under `name`."""
    if name not in RING_CODES:
        raise ValueError("Unknown ring {}, expected one of {}.".format(
            name, sorted(RING_CODES)))
    return RING_CODES[name]()


def _coded(op, a, b):
    """`op(a, b)`, or None when the result overflows the ring codes."""
    try:
        return op(a, b)
    except DomainOverflow:
        return None


def proper_ideal_q(ring, u):
    """Whether `u` is the approximation of a proper ideal.

    `u[c] = 1` says the element coded `c` is a member. All conditions are
    bounded by `d = len(u)`: `0` is in, `1` is out, and the members are
    closed under addition and under multiplication on both sides by any
    element, wherever the result is coded below `d`. Results beyond the
    ring's codes are out of range.
    """
    d = len(u)

    def member(c):
        return c is not None and c < d and u[c] == 1

    def out_of_range(c):
        return c is None or c >= d

    if ring.code0 < d and not member(ring.code0):
        return False
    if member(ring.code1):
        return False
    members = [c for c in range(d) if u[c] == 1]
    for a in members:
        for b in members:
            c = _coded(ring.add, a, b)
            if not out_of_range(c) and not member(c):
                return False
    for a in members:
        for s in range(d):
            for c in (_coded(ring.mul, s, a), _coded(ring.mul, a, s)):
                if not out_of_range(c) and not member(c):
                    return False
    return True


def membership_predicate(ring):
    """`proper_ideal_q` read through the membership values."""

    def q(u):
        return proper_ideal_q(
            ring, [1 if e == MEMBER_IN else 0 for e in u])

    return core.Predicate(q=q, description="proper ideal")


def membership_seq(members):
    """The membership sequence with the given codes in and all others out."""
    members = frozenset(members)
    length = max(members) + 1 if members else 0
    return lex.Seq(
        [MEMBER_IN if c in members else MEMBER_OUT for c in range(length)],
        lex.ConstFill(MEMBER_OUT))


def zero_ideal(ring):
    """The membership sequence of the ideal `{0}`."""
    return membership_seq((ring.code0,))


def principal_ideal(ring, generator, limit=64):
    """The membership sequence of `c * generator` for `c < limit`."""
    members = [_coded(ring.mul, c, generator) for c in range(limit)]
    return membership_seq(c for c in members if c is not None)


def challenger_pairs(ring):
    """Three fixed challenger pairs for `maximal_ideal_demo`.

    - constant: `F` is 6 and `G` proposes the multiples of 2 from the least
      nonzero one on.
    - depth-1: `F` and `G` query `h` once at the same proposal and branch on
      the answer.
    - adversarial: `F` is 6 and `G` proposes adding 2 and the element coded
      after it, which breaks additive closure.

    Returns:
        an `OrderedDict` from pair name to `core.CounterexamplePair`.
    """
    two = ring.add(ring.code1, ring.code1)
    evens = principal_ideal(ring, two)
    least = min(c for c in range(len(evens.prefix))
                if c != ring.code0 and evens.at(c) == MEMBER_IN)
    propose_evens = lex.LexStep(least, evens)
    propose_two = lex.LexStep(two, membership_seq((two,)))
    break_closure = lex.LexStep(two, membership_seq((two, two + 1)))

    def constant_size(y, h):
        return 6

    def depth_one_size(y, h):
        return 3 + h(propose_evens) % 3

    def depth_one_step(y, h):
        if h(propose_evens) % 2 == 0:
            return propose_evens
        return propose_two

    return collections.OrderedDict([
        ("constant", core.CounterexamplePair(
            F=constant_size, G=lambda y, h: propose_evens)),
        ("depth-1", core.CounterexamplePair(
            F=depth_one_size, G=depth_one_step)),
        ("adversarial", core.CounterexamplePair(
            F=constant_size, G=lambda y, h: break_closure)),
    ])


def membership_signature():
    return lex.lex_signature(MEMBERSHIP_ELEMS)


def maximal_ideal_demo(ring, F, G, budget,
                       prefix_len=core.DEFAULT_TRACE_PREFIX_LEN,
                       scan_cap=lex.DEFAULT_SCAN_CAP):
    """Approximate a maximal ideal of `ring` against the challengers `F, G`.

    Runs `realizers.check_goal` on the lexicographic instance over
    membership values, from the zero ideal, with `Q` the proper ideal test.

    Returns:
        a `realizers.GoalReport`; `s_prefix` is the approximate maximal ideal
        in membership values.
    """
    return realizers.check_goal(
        membership_signature(),
        lex.LexScheme(MEMBERSHIP_ELEMS, scan_cap),
        membership_predicate(ring),
        F,
        G,
        zero_ideal(ring),
        budget,
        prefix_len=prefix_len,
    )
