# Matching modulo A/AC with units, at the root and below it
#
# The matcher is a backtracking search: it proposes solutions and every solution it surfaces is
# re-checked against the normaliser (normalize.eq_ac), which is the trusted part of the engine.

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator, List, NamedTuple, Optional

from engine.exceptions import TrivialPattern, UnsoundSolution
from engine.normalize import class_key, eq_ac, norm
from engine.signature import Signature
from engine.term import (HOLE, ACNode, ANode, App, Context, Position, Substitution, Term, UnitLeaf, Var,
                         apply_subst, build_a, build_ac, check_ground, compose, context_at, expand_multiset,
                         head_op, plug, subterm_positions, vars_of)

logger = logging.getLogger(__name__)

# reserved names for the extension variables; '%' cannot be written in rule text
EXTENSION_LEFT = '%ext'
EXTENSION_RIGHT = '%ext_r'


class SolutionStream:
    """
    A finite, replayable sequence of solutions. Each iteration re-runs the producer, so streams can
    be traversed more than once and always in the same order.
    """

    def __init__(self, produce: Callable[[], Iterator]):
        self._produce = produce

    def __iter__(self):
        return self._produce()

    @staticmethod
    def empty() -> 'SolutionStream':
        return SolutionStream(lambda: iter(()))

    @staticmethod
    def singleton(value) -> 'SolutionStream':
        return SolutionStream(lambda: iter((value,)))

    @staticmethod
    def of(values: Iterable) -> 'SolutionStream':
        values = list(values)
        return SolutionStream(lambda: iter(values))

    def bind(self, continuation: Callable[..., Iterable]) -> 'SolutionStream':
        """Feed every solution to continuation and concatenate the resulting streams"""
        return SolutionStream(lambda: (result for value in self for result in continuation(value)))

    def alt(self, other: 'SolutionStream') -> 'SolutionStream':
        def produce():
            yield from self
            yield from other
        return SolutionStream(produce)

    def unique(self) -> 'SolutionStream':
        """Drop structural repeats, keeping the first occurrence"""
        def produce():
            seen = set()
            for value in self:
                if value not in seen:
                    seen.add(value)
                    yield value
        return SolutionStream(produce)

    def first(self):
        return next(iter(self), None)

    def __bool__(self):
        return self.first() is not None


@dataclass(frozen=True)
class MatchSolution:
    context: Context
    subst: Substitution
    position: Position
    used_extension: bool = False
    extension_value: Optional[Term] = None


class MatchResult(NamedTuple):
    solutions: List[MatchSolution]
    warning: bool


def split_ac(sig: Signature, op: int, t: Term) -> SolutionStream:
    """
    Every way of writing t as t1 op t2 modulo AC and the unit of op: (unit, t) first, then the
    ordered two-block partitions of t's multiset when t is headed by op, then (t, unit).
    Partitions are enumerated with the left block taking as many copies of the smallest keys as possible.
    """
    unit = sig.unit_of(op)

    def produce():
        if unit is not None:
            yield UnitLeaf(unit), t
        if isinstance(t, ACNode) and t.op == op:
            for counts in product(*(range(mult, -1, -1) for _, mult in t.items)):
                left = [(key, c) for (key, _), c in zip(t.items, counts) if c]
                right = [(key, mult - c) for (key, mult), c in zip(t.items, counts) if mult - c]
                if left and right:
                    yield build_ac(op, left), build_ac(op, right)
        if unit is not None:
            yield t, UnitLeaf(unit)

    return SolutionStream(produce).unique()


def split_a(sig: Signature, op: int, t: Term) -> SolutionStream:
    """(unit, t), every internal cut of t's sequence when t is headed by op, then (t, unit)"""
    unit = sig.unit_of(op)

    def produce():
        if unit is not None:
            yield UnitLeaf(unit), t
        if isinstance(t, ANode) and t.op == op:
            for cut in range(1, len(t.items)):
                yield build_a(op, t.items[:cut]), build_a(op, t.items[cut:])
        if unit is not None:
            yield t, UnitLeaf(unit)

    return SolutionStream(produce).unique()


def _peel_order(pairs):
    """Expanded items of an AC pattern: non-variable items in term order first, then variables by name"""
    items = expand_multiset(pairs)
    fixed = [item for item in items if not isinstance(item, Var)]
    variables = sorted((item for item in items if isinstance(item, Var)), key=lambda v: v.name)
    return fixed + variables


def mtch(sig: Signature, pattern: Term, t: Term, subst: Substitution = Substitution()) -> SolutionStream:
    """
    Substitutions extending subst under which pattern equals t modulo the axioms. t must be ground;
    pattern and t are expected flattened, and t normalised for the enumeration to be complete.
    """
    check_ground(t, 'subject')
    return _mtch(sig, pattern, t, subst, lambda u, v: eq_ac(sig, u, v))


def _normal_forms_equal(u, v):
    # both sides are subterms of a normal form
    return u == v


def _mtch(sig, pattern, t, subst, same):
    if isinstance(pattern, Var):
        if pattern.name in subst:
            if same(subst[pattern.name], t):
                return SolutionStream.singleton(subst)
            return SolutionStream.empty()
        return SolutionStream.singleton(subst.bind(pattern.name, t))

    if isinstance(pattern, UnitLeaf):
        if same(t, pattern):
            return SolutionStream.singleton(subst)
        return SolutionStream.empty()

    if isinstance(pattern, App):
        if not isinstance(t, App) or t.sym != pattern.sym or len(t.args) != len(pattern.args):
            return SolutionStream.empty()
        stream = SolutionStream.singleton(subst)
        for p_arg, t_arg in zip(pattern.args, t.args):
            stream = stream.bind(lambda s, p_arg=p_arg, t_arg=t_arg: _mtch(sig, p_arg, t_arg, s, same))
        return stream

    if isinstance(pattern, ACNode):
        items = _peel_order(pattern.items)
        first, rest = items[0], build_ac(pattern.op, ((item, 1) for item in items[1:]))
        splits = split_ac(sig, pattern.op, t)
    elif isinstance(pattern, ANode):
        first, rest = pattern.items[0], build_a(pattern.op, pattern.items[1:])
        splits = split_a(sig, pattern.op, t)
    else:
        raise TrivialPattern('cannot match %r' % (pattern,))

    return splits.bind(
        lambda halves: _mtch(sig, first, halves[0], subst, same).bind(
            lambda s: _mtch(sig, rest, halves[1], s, same)))


def _extended_patterns(sig, pattern, op):
    """Patterns with fresh variables adjoined next to the pattern under op, to absorb sibling items"""
    left, right = Var(EXTENSION_LEFT), Var(EXTENSION_RIGHT)
    if sig.is_ac(op):
        return [build_ac(op, [(left, 1), (pattern, 1)])]
    return [
        build_a(op, [left, pattern]),
        build_a(op, [pattern, right]),
        build_a(op, [left, pattern, right]),
    ]


def _drop_unit(sig, op, value):
    unit = sig.unit_of(op)
    if value is None or (unit is not None and norm(sig, value) == UnitLeaf(unit)):
        return None
    return value


def _solutions_at(sig, pattern, position, s, subject):
    """Plain and extended solutions of pattern at the subterm s of subject, in enumeration order"""
    outer = context_at(subject, position)
    names = vars_of(pattern)

    for subst in _mtch(sig, pattern, s, Substitution(), _normal_forms_equal):
        yield MatchSolution(outer, subst, position)

    # the pattern head, and the head of s: an instance may lose its head to unit elimination and
    # then sit among the items of a node of another operation
    ops = []
    for op in (head_op(pattern), head_op(s)):
        if op is not None and op not in ops:
            ops.append(op)

    for op in ops:
        for extended in _extended_patterns(sig, pattern, op):
            for subst in _mtch(sig, extended, s, Substitution(), _normal_forms_equal):
                left = _drop_unit(sig, op, subst.get(EXTENSION_LEFT))
                right = _drop_unit(sig, op, subst.get(EXTENSION_RIGHT))
                subst = subst.restrict(names)
                if left is None and right is None:
                    yield MatchSolution(outer, subst, position)
                    continue

                items = [item for item in (left, HOLE, right) if item is not None]
                if sig.is_ac(op):
                    inner = build_ac(op, ((item, 1) for item in items))
                else:
                    inner = build_a(op, items)
                yield MatchSolution(compose(sig, outer, Context(inner)), subst, position, True, left)


def _instantiates_unit(sig, pattern):
    return any(_mtch(sig, pattern, UnitLeaf(unit_id), Substitution(), _normal_forms_equal) for unit_id in range(len(sig.units)))


def match_subterms(sig: Signature, pattern: Term, t: Term, verify: bool = True) -> MatchResult:
    """
    Find every context C and substitution s with C[pattern.s] equal to t modulo the axioms, up to
    the pairs whose instance is a unit: those come in infinite families and are rejected, setting
    the warning flag instead.

    :param sig: the signature
    :param pattern: pattern, headed by something other than a variable
    :param t: ground subject
    :param verify: re-check every solution with the normaliser before returning it
    :return: (solutions ordered by position and then by enumeration, warning)
    :raises TrivialPattern: if the pattern is a bare variable
    :raises UnsoundSolution: if a proposed solution fails the check
    """
    if isinstance(pattern, Var):
        raise TrivialPattern('the pattern ?%s matches every subterm' % pattern.name)
    check_ground(t, 'subject')
    pattern = norm(sig, pattern)
    if isinstance(pattern, Var):
        raise TrivialPattern('the pattern reduces to ?%s, which matches every subterm' % pattern.name)
    subject = norm(sig, t)

    if not verify:
        logger.warning('match solutions are not being verified')

    warning = _instantiates_unit(sig, pattern)
    seen = set()
    solutions = []
    for position, s in subterm_positions(subject):
        for solution in _solutions_at(sig, pattern, position, s, subject):
            instance = norm(sig, apply_subst(sig, solution.subst, pattern))
            if isinstance(instance, UnitLeaf):
                warning = True
                continue

            key = class_key(sig, solution.context, solution.subst)
            if key in seen:
                continue
            seen.add(key)

            if verify and not eq_ac(sig, plug(sig, solution.context, instance), subject):
                logger.error('matcher proposed an unsound solution %r', solution)
                raise UnsoundSolution('solution at position %r does not rebuild the subject' % (solution.position,))
            solutions.append(solution)

    if warning:
        logger.warning('solutions whose instance is a unit were rejected; instantiate the rule explicitly to use them')
    logger.debug('%d solutions found', len(solutions))
    return MatchResult(solutions, warning)


@dataclass
class Occurrence:
    """Solutions sharing one context, i.e. one place in the subject"""
    context: Context
    position: Position
    solutions: List[MatchSolution] = field(default_factory=list)


def count_occurrences(solutions: Iterable[MatchSolution]) -> List[Occurrence]:
    """Group solutions by context, occurrences and solutions both kept in first-seen order"""
    occurrences = {}
    for solution in solutions:
        if solution.context not in occurrences:
            occurrences[solution.context] = Occurrence(solution.context, solution.position)
        occurrences[solution.context].solutions.append(solution)
    return list(occurrences.values())
