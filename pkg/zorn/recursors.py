"""Simple and controlled recursion over the order induced by (+) and <.

A recursion body `f(x, p)` receives the current carrier and a guarded
recursive call `p`: `p(a)` recurses at `x (+) a` when the step `a` is
admitted at `x`, and returns the signature's `zero_out` otherwise. Controlled
recursion additionally runs a controller `omega(x, p)` first, and recurses
from the carrier it returns.
"""

from zorn import core, lex


def simple_guard(sig, f, x, budget):
    """The guarded recursive call at `x` used by `simple_rec`."""

    def guarded(a):
        if sig.admits(x, a):
            return _simple_rec(sig, f, sig.extend(x, a), budget)
        return sig.zero_out

    return guarded


def _simple_rec(sig, f, x, budget):
    with budget.unfolding("simple_rec", x, sig.approx):
        return f(x, simple_guard(sig, f, x, budget))


def simple_rec(sig, f, x, budget):
    """Evaluate `Phi f x = f x (lambda a. Phi f (x (+) a) if a > x else 0)`.

    Args:
        sig: the `core.ZLSignature`.
        f: the body, `(carrier, step -> out) -> out`.
        x: the carrier to start from.
        budget: a `core.Budget` or a fuel count.

    Returns:
        `core.Value` of the result, or `core.Exhausted`. Non-wellfounded
        instances are expected to exhaust.
    """
    budget = core.as_budget(budget)
    return core.evaluate(budget, _simple_rec, sig, f, x, budget)


def simple_rec_bounded_demo(N, budget):
    """Count the admitted unfoldings of the bounded counting body.

    Evaluates `simple_rec` on the subset instance with body
    `f x p := lambda n. 1 + p(n, {n})(n + 1) if n < N else 0` at the empty
    set, applied to 0.
    """
    # Imported here, the instances module builds on this one.
    from zorn import instances

    if N < 0:
        raise ValueError("N must be non-negative, {} was passed.".format(N))
    budget = core.as_budget(budget)
    sig = instances.subset_signature()._replace(
        zero_out=instances.zero_function)
    outcome = simple_rec(
        sig, instances.counting_body(N), instances.EMPTY_SET, budget)
    if core.is_exhausted(outcome):
        return outcome
    return core.evaluate(budget, outcome.value, 0)


def controlled_guard(sig, omega, f, x, budget, observer=None):
    """The guarded recursive call at `x` used by `controlled_rec`."""

    def guarded(a):
        if sig.admits(x, a):
            return _controlled_rec(
                sig, omega, f, sig.extend(x, a), budget, observer)
        return sig.zero_out

    return guarded


def _controlled_rec(sig, omega, f, x, budget, observer=None):
    with budget.unfolding("controlled_rec", x, sig.approx):
        x_tilde = omega(
            x, controlled_guard(sig, omega, f, x, budget, observer))
        if observer is not None:
            observer(x, x_tilde)
        return f(
            x_tilde,
            controlled_guard(sig, omega, f, x_tilde, budget, observer))


def controlled_rec(sig, omega, f, x, budget, observer=None):
    """Evaluate controlled recursion `Psi omega f x`.

    With `x~ := omega(x, Psi_x)`, the result is `f(x~, Psi_x~)`, where
    `Psi_y(a)` recurses at `y (+) a` when `a` is admitted at `y` and is
    `zero_out` otherwise.

    Args:
        sig: the `core.ZLSignature`.
        omega: the controller, `(carrier, step -> out) -> carrier`.
        f: the body, `(carrier, step -> out) -> out`.
        x: the carrier to start from.
        budget: a `core.Budget` or a fuel count.
        observer: (optional) called as `observer(x, x_tilde)` on every
            unfolding, to expose the controlled carriers.

    Returns:
        `core.Value` of the result, or `core.Exhausted`.
    """
    budget = core.as_budget(budget)
    return core.evaluate(
        budget, _controlled_rec, sig, omega, f, x, budget, observer)


def fill_controller(n, fill=1):
    """The controller keeping the first `n` entries and filling the rest.

    `fill_controller(n, 1)` is the controller `c n` of the subset instance:
    `c n x p := lambda i. x(i) if i < n else 1`.
    """

    def controller(x, p):
        return lex.Seq(x.take(n), lex.ConstFill(fill))

    return controller


def omega_n(n, f, x, budget):
    """Evaluate `Omega n f x`, controlled recursion with controller `c n`.

    The carrier must belong to the subset instance.
    """
    # Imported here, the instances module builds on this one.
    from zorn import instances

    return controlled_rec(
        instances.subset_signature(), fill_controller(n, 1), f, x, budget)
