"""Random predicates, challengers and carriers over the lex/nat instance.

Generators draw from a `numpy.random.RandomState` and return plain data:
formula trees for predicates and decision trees for challengers. The data is
then wrapped in callables, so two draws from equally seeded generators behave
identically.

Predicates read at most `q_depth` positions of their argument. A test on a
position beyond the end of the approximation is vacuously satisfied.
"""

import functools

from zorn import core, lex

MAX_PREDICATE_DEPTH = 3
MAX_BRANCHING = 3

# The chance that an inner formula node is an atom.
_ATOM_PROBABILITY = 0.3


def _randint(rng, low, high):
    """A python int drawn uniformly from `[low, high]`."""
    return int(rng.randint(low, high + 1))


def _gen_atom(rng, cfg):
    if cfg.q_depth > 1 and rng.rand() < 0.5:
        first = _randint(rng, 0, cfg.q_depth - 1)
        second = _randint(rng, 0, cfg.q_depth - 1)
        return ("lt", first, second)
    return ("eq", _randint(rng, 0, cfg.q_depth - 1),
            _randint(rng, 0, cfg.elem_max))


def _gen_formula(rng, cfg, depth):
    if depth == 0 or rng.rand() < _ATOM_PROBABILITY:
        return _gen_atom(rng, cfg)
    connective = ("and", "or", "not")[_randint(rng, 0, 2)]
    if connective == "not":
        return ("not", _gen_formula(rng, cfg, depth - 1))
    return (connective,
            _gen_formula(rng, cfg, depth - 1),
            _gen_formula(rng, cfg, depth - 1))


def evaluate_formula(formula, u):
    """Evaluate a generated formula on the approximation `u`."""
    kind = formula[0]
    if kind == "const":
        return formula[1]
    if kind == "eq":
        _, position, elem = formula
        return position >= len(u) or u[position] == elem
    if kind == "lt":
        _, first, second = formula
        if first >= len(u) or second >= len(u):
            return True
        return u[first] < u[second]
    if kind == "not":
        return not evaluate_formula(formula[1], u)
    if kind == "and":
        return (evaluate_formula(formula[1], u)
                and evaluate_formula(formula[2], u))
    if kind == "or":
        return (evaluate_formula(formula[1], u)
                or evaluate_formula(formula[2], u))
    raise ValueError("Unknown formula node {}".format(kind))


def format_formula(formula):
    kind = formula[0]
    if kind == "const":
        return "true" if formula[1] else "false"
    if kind == "eq":
        return "u[{}] = {}".format(formula[1], formula[2])
    if kind == "lt":
        return "u[{}] < u[{}]".format(formula[1], formula[2])
    if kind == "not":
        return "not ({})".format(format_formula(formula[1]))
    return "({} {} {})".format(
        format_formula(formula[1]), kind, format_formula(formula[2]))


def predicate_from_formula(formula):
    return core.Predicate(
        q=functools.partial(evaluate_formula, formula),
        description=format_formula(formula))


def gen_formula(rng, cfg):
    """Draw a formula tree of depth at most `MAX_PREDICATE_DEPTH`.

    A depth 0 draw is a constant.
    """
    depth = _randint(rng, 0, MAX_PREDICATE_DEPTH)
    if depth == 0:
        return ("const", bool(rng.rand() < 0.5))
    return _gen_formula(rng, cfg, depth)


def gen_predicate(rng, cfg):
    """Draw a decidable predicate on approximations.

    Args:
        rng: a seeded `numpy.random.RandomState`.
        cfg: the campaign configuration; `q_depth` bounds the positions read
            and `elem_max` the elements compared against.

    Returns:
        a `core.Predicate`.
    """
    return predicate_from_formula(gen_formula(rng, cfg))


def _gen_tail(rng, cfg):
    if rng.rand() < 0.5:
        return ("zero",)
    return ("const", _randint(rng, 0, cfg.elem_max))


def gen_step_spec(rng, cfg):
    """Draw the description of a step built from the queried carrier.

    A relative step lowers the entry at `n` by `delta` and keeps the
    carrier below it; an absolute step proposes a fixed sequence.
    """
    n = _randint(rng, 0, cfg.q_depth - 1)
    tail = _gen_tail(rng, cfg)
    if rng.rand() < 0.7:
        return ("rel", n, _randint(rng, 1, cfg.elem_max), tail)
    values = tuple(
        _randint(rng, 0, cfg.elem_max) for _ in range(_randint(rng, 0, n + 1)))
    return ("abs", n, values, tail)


def _tail_of(tail):
    if tail[0] == "zero":
        return lex.ZeroFill(0)
    return lex.ConstFill(tail[1])


def make_step(spec, y):
    """Build the step `(n, z)` a spec describes at the carrier `y`."""
    if spec[0] == "rel":
        _, n, delta, tail = spec
        prefix = y.take(n) + (max(y.at(n) - delta, 0),)
        return lex.LexStep(n, lex.Seq(prefix, _tail_of(tail)))
    _, n, values, tail = spec
    return lex.LexStep(n, lex.Seq(values, _tail_of(tail)))


def _gen_tree(rng, cfg, depth, gen_leaf):
    if depth == 0:
        return gen_leaf(rng, cfg)
    modulus = _randint(rng, 1, MAX_BRANCHING)
    return ("query", gen_step_spec(rng, cfg), modulus, tuple(
        _gen_tree(rng, cfg, depth - 1, gen_leaf) for _ in range(modulus)))


def _gen_size_leaf(rng, cfg):
    if rng.rand() < 0.5:
        return ("succ",)
    return ("size", _randint(rng, 0, cfg.elem_max))


def _gen_step_leaf(rng, cfg):
    return ("step", gen_step_spec(rng, cfg))


def run_tree(tree, y, h):
    """Walk a decision tree at carrier `y`, querying `h` at each node.

    Returns:
        the leaf reached and the last answer `h` gave, 0 if none.
    """
    answer = 0
    node = tree
    while node[0] == "query":
        _, spec, modulus, children = node
        answer = h(make_step(spec, y))
        node = children[answer % modulus]
    return node, answer


class SizeChallenger(object):
    """A size challenger `F y h` given by a decision tree."""

    def __init__(self, tree, elem_max):
        """Create a new `SizeChallenger` object."""
        self.tree = tree
        self._elem_max = elem_max

    def __call__(self, y, h):
        leaf, answer = run_tree(self.tree, y, h)
        if leaf[0] == "succ":
            return min(answer + 1, self._elem_max)
        return leaf[1]


class StepChallenger(object):
    """An extension challenger `G y h` given by a decision tree."""

    def __init__(self, tree):
        """Create a new `StepChallenger` object."""
        self.tree = tree

    def __call__(self, y, h):
        leaf, _ = run_tree(self.tree, y, h)
        return make_step(leaf[1], y)


def gen_challengers(rng, cfg):
    """Draw a pair of total continuous challengers.

    `F` and `G` are decision trees of depth at most `f_depth`. Each inner
    node queries `h` at a generated step and branches on the answer modulo
    a small constant. `F` leaves give a size at most `elem_max`; `G` leaves
    give a step.

    Returns:
        a `core.CounterexamplePair`.
    """
    size_tree = _gen_tree(
        rng, cfg, _randint(rng, 0, cfg.f_depth), _gen_size_leaf)
    step_tree = _gen_tree(
        rng, cfg, _randint(rng, 0, cfg.f_depth), _gen_step_leaf)
    return core.CounterexamplePair(
        F=SizeChallenger(size_tree, cfg.elem_max),
        G=StepChallenger(step_tree))


def gen_carrier(rng, cfg):
    """Draw a nat sequence: up to `q_depth` entries, then a constant tail."""
    prefix = tuple(
        _randint(rng, 0, cfg.elem_max)
        for _ in range(_randint(rng, 0, cfg.q_depth)))
    return lex.Seq(prefix, _tail_of(_gen_tail(rng, cfg)))
