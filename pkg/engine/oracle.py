# Independent test oracles
#
# - evaluation of terms in concrete models, with two stock models
# - a bounded closure under the A, C and U axioms on strictly binary terms, giving a brute-force
#   equality oracle
# - a brute-force matching oracle that enumerates candidate substitutions and contexts
#
# None of this is used by the rewriting pipeline; it exists to check the normaliser and the matcher
# at desk scale. The closure is exponential in the size of its input.

import functools
import logging
import random
from collections import deque
from dataclasses import dataclass, field
from itertools import product, zip_longest
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple, Union

from engine.exceptions import MissingInterpretation
from engine.normalize import class_key, norm
from engine.signature import OpKind, Signature
from engine.term import (HOLE, ACNode, ANode, App, Context, Substitution, Term, UnitLeaf, apply_subst,
                         build_a, build_ac, check_ground, compose, context_at, expand_multiset, mk_app, mk_bin,
                         plug, subterm_positions, vars_of)

logger = logging.getLogger(__name__)

CLOSURE_SLACK = 2


@dataclass
class Interpretation:
    """A model: functions for symbols and operations, values for units"""
    name: str
    symbols: Dict[int, Callable[..., Any]] = field(default_factory=dict)
    ops: Dict[int, Callable[[Any, Any], Any]] = field(default_factory=dict)
    units: Dict[int, Any] = field(default_factory=dict)


def evaluate(interp: Interpretation, t: Term) -> Any:
    """
    Homomorphic evaluation of a ground term. Items of A/AC nodes are folded from the left, each AC
    item repeated according to its multiplicity.
    """
    if isinstance(t, UnitLeaf):
        if t.unit not in interp.units:
            raise MissingInterpretation('%s has no value for unit %d' % (interp.name, t.unit))
        return interp.units[t.unit]

    if isinstance(t, App):
        if t.sym not in interp.symbols:
            raise MissingInterpretation('%s has no function for symbol %d' % (interp.name, t.sym))
        return interp.symbols[t.sym](*(evaluate(interp, arg) for arg in t.args))

    if isinstance(t, (ANode, ACNode)):
        if t.op not in interp.ops:
            raise MissingInterpretation('%s has no function for operation %d' % (interp.name, t.op))
        items = t.items if isinstance(t, ANode) else expand_multiset(t.items)
        return functools.reduce(interp.ops[t.op], (evaluate(interp, item) for item in items))

    raise MissingInterpretation('cannot evaluate %r' % (t,))


class _RandomTable:
    """A function given by a random table, filled in on demand"""

    def __init__(self, rng, make_value):
        self.rng = rng
        self.make_value = make_value
        self.table = {}

    def __call__(self, *args):
        if args not in self.table:
            self.table[args] = self.make_value(self.rng)
        return self.table[args]


def _elementwise(combine):
    return lambda x, y: tuple(combine(pair) for pair in zip_longest(x, y, fillvalue=0))


def integer_model(sig: Signature, seed: int = 0) -> Interpretation:
    """
    Model over tuples of natural numbers, short tuples padded with zeros where needed: AC operations
    are elementwise sum or elementwise maximum (alternately, in declaration order), A operations are
    concatenation, every unit is the empty tuple, and free symbols are random tables of singletons.
    """
    rng = random.Random(seed)
    interp = Interpretation('integer model')
    ac_seen = 0
    for sym_id in range(len(sig.symbols)):
        interp.symbols[sym_id] = _RandomTable(rng, lambda r: (r.randrange(1, 10 ** 9),))
    for op_id, op in enumerate(sig.ops):
        if op.kind == OpKind.AC:
            interp.ops[op_id] = _elementwise(sum if ac_seen % 2 == 0 else max)
            ac_seen += 1
        else:
            interp.ops[op_id] = lambda x, y: x + y
    for unit_id in range(len(sig.units)):
        interp.units[unit_id] = ()
    return interp


def _mat_add(p):
    return lambda x, y: tuple((a + b) % p for a, b in zip(x, y))


def _mat_mul(p):
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)
    return mul


def modular_model(sig: Signature, prime: int = 10007, seed: int = 0) -> Interpretation:
    """
    Noncommutative model over 2x2 matrices with entries modulo a prime: AC operations are matrix
    addition, A operations matrix product, free symbols random tables of matrices. A unit must serve
    operations of a single kind (zero matrix for AC, identity for A).
    """
    rng = random.Random(seed)
    interp = Interpretation('modular model (p=%d)' % prime)
    for sym_id in range(len(sig.symbols)):
        interp.symbols[sym_id] = _RandomTable(rng, lambda r: tuple(r.randrange(prime) for _ in range(4)))
    for op_id, op in enumerate(sig.ops):
        interp.ops[op_id] = _mat_add(prime) if op.kind == OpKind.AC else _mat_mul(prime)
    for unit_id, unit in enumerate(sig.units):
        kinds = {sig.op(op_id).kind for op_id in unit.ops}
        if len(kinds) > 1:
            raise MissingInterpretation('unit %s serves both A and AC operations; no matrix value fits' % unit.name)
        interp.units[unit_id] = (0, 0, 0, 0) if OpKind.AC in kinds else (1, 0, 0, 1)
    return interp


def check_laws(sig: Signature, interp: Interpretation, samples: List[Any]) -> List[str]:
    """
    Spot-check the algebraic laws the signature asks of the interpretation on the given carrier values

    :return: list of laws found to fail
    """
    problems = []
    for op_id, op in enumerate(sig.ops):
        fn = interp.ops[op_id]
        for x, y, z in product(samples, repeat=3):
            if fn(fn(x, y), z) != fn(x, fn(y, z)):
                problems.append('%s is not associative in %s' % (op.name, interp.name))
                break
        if op.kind == OpKind.AC:
            for x, y in product(samples, repeat=2):
                if fn(x, y) != fn(y, x):
                    problems.append('%s is not commutative in %s' % (op.name, interp.name))
                    break
        if op.unit is not None:
            u = interp.units[op.unit]
            for x in samples:
                if fn(x, u) != x or fn(u, x) != x:
                    problems.append('%s is not neutral for %s in %s' % (sig.unit(op.unit).name, op.name, interp.name))
                    break
    return problems


# Strictly binary terms. The three tuple shapes have different lengths, so values of different
# kinds never compare equal.

class RawUnit(NamedTuple):
    unit: int


class RawApp(NamedTuple):
    sym: int
    args: Tuple[Any, ...]


class RawNode(NamedTuple):
    op: int
    left: Any
    right: Any


RawTerm = Union[RawUnit, RawApp, RawNode]


def to_raw(sig: Signature, t: Term) -> RawTerm:
    """A binary representation of a ground term, chains associated to the left"""
    check_ground(t)
    if isinstance(t, UnitLeaf):
        return RawUnit(t.unit)
    if isinstance(t, App):
        return RawApp(t.sym, tuple(to_raw(sig, arg) for arg in t.args))
    items = t.items if isinstance(t, ANode) else expand_multiset(t.items)
    result = to_raw(sig, items[0])
    for item in items[1:]:
        result = RawNode(t.op, result, to_raw(sig, item))
    return result


def from_raw(sig: Signature, r: RawTerm) -> Term:
    if isinstance(r, RawNode):
        return mk_bin(sig, r.op, from_raw(sig, r.left), from_raw(sig, r.right))
    if isinstance(r, RawApp):
        return mk_app(sig, r.sym, [from_raw(sig, arg) for arg in r.args])
    return UnitLeaf(r.unit)


def raw_size(r: RawTerm) -> int:
    if isinstance(r, RawNode):
        return 1 + raw_size(r.left) + raw_size(r.right)
    if isinstance(r, RawApp):
        return 1 + sum(raw_size(arg) for arg in r.args)
    return 1


def _root_steps(sig, r, slack, unit_ops):
    """Axiom applications at the root of r, both directions"""
    if isinstance(r, RawNode):
        op, left, right = r
        if sig.is_ac(op):
            yield RawNode(op, right, left)
        if isinstance(left, RawNode) and left.op == op:
            yield RawNode(op, left.left, RawNode(op, left.right, right))
        if isinstance(right, RawNode) and right.op == op:
            yield RawNode(op, RawNode(op, left, right.left), right.right)
        unit = sig.unit_of(op)
        if unit is not None:
            if left == RawUnit(unit):
                yield right
            if right == RawUnit(unit):
                yield left
    if slack >= 2:
        for op, unit in unit_ops:
            yield RawNode(op, r, RawUnit(unit))
            yield RawNode(op, RawUnit(unit), r)


def _steps(sig, r, slack, unit_ops):
    yield from _root_steps(sig, r, slack, unit_ops)
    if isinstance(r, RawNode):
        for left in _steps(sig, r.left, slack, unit_ops):
            yield RawNode(r.op, left, r.right)
        for right in _steps(sig, r.right, slack, unit_ops):
            yield RawNode(r.op, r.left, right)
    elif isinstance(r, RawApp):
        for index, arg in enumerate(r.args):
            for new_arg in _steps(sig, arg, slack, unit_ops):
                yield RawApp(r.sym, r.args[:index] + (new_arg,) + r.args[index + 1:])


def neighbours(sig: Signature, r: RawTerm, size_bound: int) -> List[RawTerm]:
    """Raw terms one axiom application away from r, none larger than size_bound"""
    unit_ops = [(op_id, op.unit) for op_id, op in enumerate(sig.ops) if op.unit is not None]
    slack = size_bound - raw_size(r)
    return [n for n in _steps(sig, r, slack, unit_ops) if n != r]


def ac_closure(sig: Signature, r: RawTerm, size_bound: int) -> FrozenSet[RawTerm]:
    """Every raw term reachable from r by the axioms without exceeding size_bound (breadth-first)"""
    seen = {r}
    queue = deque([r])
    while queue:
        current = queue.popleft()
        for n in neighbours(sig, current, size_bound):
            if n not in seen:
                seen.add(n)
                queue.append(n)
    return frozenset(seen)


def closure_components(sig: Signature, roots: Iterable[RawTerm], size_bound: int) -> Dict[RawTerm, int]:
    """
    Label every raw term reachable from the roots with the index of its closure class. The
    relation is symmetric within a fixed bound, so each breadth-first search yields a whole class.
    """
    component = {}
    label = 0
    for root in roots:
        if root in component:
            continue
        for member in ac_closure(sig, root, size_bound):
            component[member] = label
        label += 1
    return component


def oracle_eq(sig: Signature, t: Term, u: Term, size_bound: Optional[int] = None) -> bool:
    rt, ru = to_raw(sig, t), to_raw(sig, u)
    if size_bound is None:
        size_bound = raw_size(rt) + raw_size(ru) + CLOSURE_SLACK
    if rt == ru:
        return True

    seen = {rt}
    queue = deque([rt])
    while queue:
        current = queue.popleft()
        for n in neighbours(sig, current, size_bound):
            if n == ru:
                return True
            if n not in seen:
                seen.add(n)
                queue.append(n)
    return False


# Matching oracle

class OracleSolution(NamedTuple):
    context: Context
    subst: Substitution


def _sub_multisets(pairs):
    """Every non-empty sub-multiset, as (chosen, remainder) pairs of multiset lists"""
    for counts in product(*(range(mult + 1) for _, mult in pairs)):
        chosen = [(key, c) for (key, _), c in zip(pairs, counts) if c]
        remainder = [(key, mult - c) for (key, mult), c in zip(pairs, counts) if mult - c]
        if chosen:
            yield chosen, remainder


def candidate_values(sig: Signature, t: Term) -> List[Term]:
    """
    Brute-force candidates for the value of a pattern variable: every subterm, every sub-multiset of
    an AC node, every contiguous part of an A node, and every unit. Deduplicated modulo the axioms.
    """
    values = []
    for _, s in subterm_positions(t):
        values.append(s)
        if isinstance(s, ACNode):
            for chosen, _ in _sub_multisets(s.items):
                values.append(build_ac(s.op, chosen))
        elif isinstance(s, ANode):
            for i in range(len(s.items)):
                for j in range(i + 1, len(s.items) + 1):
                    values.append(build_a(s.op, s.items[i:j]))
    values.extend(UnitLeaf(unit_id) for unit_id in range(len(sig.units)))

    unique = {}
    for value in values:
        unique.setdefault(norm(sig, value), value)
    return list(unique)


def candidate_contexts(sig: Signature, t: Term) -> List[Context]:
    """
    Brute-force hole placements: every position, every remainder split inside an A or AC node, and
    a unit wrapped around every position for each operation that has a unit.
    """
    contexts = []
    unit_ops = [op_id for op_id, op in enumerate(sig.ops) if op.unit is not None]

    for position, s in subterm_positions(t):
        outer = context_at(t, position)
        contexts.append(outer)

        if isinstance(s, ACNode):
            for _, remainder in _sub_multisets(s.items):
                if remainder:
                    contexts.append(compose(sig, outer, Context(build_ac(s.op, remainder + [(HOLE, 1)]))))
        elif isinstance(s, ANode):
            n = len(s.items)
            for i in range(n):
                for j in range(i + 1, n + 1):
                    if j - i < n:
                        inner = build_a(s.op, s.items[:i] + (HOLE,) + s.items[j:])
                        contexts.append(compose(sig, outer, Context(inner)))

        for op_id in unit_ops:
            contexts.append(compose(sig, outer, Context(mk_bin(sig, op_id, s, HOLE))))
            if not sig.is_ac(op_id):
                contexts.append(compose(sig, outer, Context(mk_bin(sig, op_id, HOLE, s))))

    return contexts


def oracle_match(sig: Signature, pattern: Term, t: Term) -> List[OracleSolution]:
    """
    Every (context, substitution) pair with plug(context, pattern.subst) equal to t modulo the
    axioms, drawn from the brute-force candidates, one representative per class.
    """
    check_ground(t, 'subject')
    target = norm(sig, t)
    names = vars_of(pattern)
    values = candidate_values(sig, target)
    contexts = candidate_contexts(sig, target)

    found = {}
    for combo in product(values, repeat=len(names)):
        subst = Substitution(zip(names, combo))
        instance = apply_subst(sig, subst, pattern)
        for context in contexts:
            if norm(sig, plug(sig, context, instance)) == target:
                key = class_key(sig, context, subst)
                if key not in found:
                    found[key] = OracleSolution(context, subst)

    logger.debug('oracle found %d solution classes from %d values and %d contexts', len(found), len(values), len(contexts))
    return list(found.values())
