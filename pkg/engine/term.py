# Flattened terms: unit leaves, variables, applications of free symbols, A nodes over sequences and
# AC nodes over sorted multisets. Also the total order on terms, substitutions, contexts and positions.
#
# Terms are immutable. The constructors in this module merge a child headed by the same operation into
# its parent, so every A/AC node has at least two items and every AC node keeps its keys strictly
# increasing under compare(). Unit elimination is left to normalize.norm().

from collections.abc import Mapping
from dataclasses import dataclass
from enum import IntEnum
from functools import cmp_to_key
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple, Union

from engine.exceptions import ArityMismatch, InternalSizeZero, InvalidContext, SubjectNotGround, UnboundVariable
from engine.signature import Signature


@dataclass(frozen=True)
class UnitLeaf:
    unit: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    sym: int
    args: Tuple['Term', ...] = ()


@dataclass(frozen=True)
class ANode:
    op: int
    items: Tuple['Term', ...]


@dataclass(frozen=True)
class ACNode:
    op: int
    items: Tuple[Tuple['Term', int], ...]


@dataclass(frozen=True)
class Hole:
    pass


Term = Union[UnitLeaf, Var, App, ANode, ACNode, Hole]

# A selector is an argument index (App), an item index (ANode) or a multiset key (ACNode)
Position = Tuple[Union[int, Term], ...]

HOLE = Hole()


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


# node kind ranks for the total order; holes only occur in contexts and sort last
_RANK = {UnitLeaf: 0, Var: 1, App: 2, ANode: 3, ACNode: 4, Hole: 5}


def _cmp(x, y):
    return Ordering.LT if x < y else Ordering.GT if x > y else Ordering.EQ


def _compare_seq(xs, ys, item_cmp):
    for x, y in zip(xs, ys):
        c = item_cmp(x, y)
        if c != Ordering.EQ:
            return c
    return _cmp(len(xs), len(ys))


def _compare_pair(x, y):
    c = compare(x[0], y[0])
    return c if c != Ordering.EQ else _cmp(x[1], y[1])


def compare(t: Term, u: Term) -> Ordering:
    """
    Total order on terms: node kind first (UnitLeaf < Var < App < ANode < ACNode < Hole), then the
    symbol, operation or unit id - ids are handed out in declaration order - then the children
    lexicographically. Variables compare by name. EQ coincides with structural equality.
    """
    if t is u:
        return Ordering.EQ
    rank_t, rank_u = _RANK[type(t)], _RANK[type(u)]
    if rank_t != rank_u:
        return _cmp(rank_t, rank_u)

    if isinstance(t, UnitLeaf):
        return _cmp(t.unit, u.unit)
    if isinstance(t, Var):
        return _cmp(t.name, u.name)
    if isinstance(t, Hole):
        return Ordering.EQ
    if isinstance(t, App):
        c = _cmp(t.sym, u.sym)
        return c if c != Ordering.EQ else _compare_seq(t.args, u.args, compare)
    c = _cmp(t.op, u.op)
    if c != Ordering.EQ:
        return c
    if isinstance(t, ANode):
        return _compare_seq(t.items, u.items, compare)
    return _compare_seq(t.items, u.items, _compare_pair)


term_key = cmp_to_key(compare)


# Multisets are tuples of (term, multiplicity) sorted by key

def sort_multiset(pairs: Iterable[Tuple[Term, int]]) -> Tuple[Tuple[Term, int], ...]:
    result = []
    for key, mult in sorted(pairs, key=lambda p: term_key(p[0])):
        if result and result[-1][0] == key:
            result[-1] = (key, result[-1][1] + mult)
        else:
            result.append((key, mult))
    return tuple(result)


def merge_multisets(m1, m2) -> Tuple[Tuple[Term, int], ...]:
    """Linear merge of two sorted multisets, adding multiplicities of equal keys"""
    result = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        c = compare(m1[i][0], m2[j][0])
        if c == Ordering.LT:
            result.append(m1[i])
            i += 1
        elif c == Ordering.GT:
            result.append(m2[j])
            j += 1
        else:
            result.append((m1[i][0], m1[i][1] + m2[j][1]))
            i += 1
            j += 1
    result.extend(m1[i:])
    result.extend(m2[j:])
    return tuple(result)


def multiset_size(pairs) -> int:
    return sum(mult for _, mult in pairs)


def expand_multiset(pairs) -> List[Term]:
    return [key for key, mult in pairs for _ in range(mult)]


def build_ac(op: int, pairs: Iterable[Tuple[Term, int]]) -> Term:
    """
    Build an AC node, splicing in the items of children headed by the same operation. A multiset of
    total size one yields its only element.
    """
    flat = []
    for key, mult in pairs:
        if isinstance(key, ACNode) and key.op == op:
            flat.extend((k, m * mult) for k, m in key.items)
        else:
            flat.append((key, mult))
    if not flat:
        raise InternalSizeZero('empty AC node')
    items = sort_multiset(flat)
    if multiset_size(items) == 1:
        return items[0][0]
    return ACNode(op, items)


def build_a(op: int, items: Iterable[Term]) -> Term:
    """Build an A node, splicing in the items of children headed by the same operation"""
    flat = []
    for item in items:
        if isinstance(item, ANode) and item.op == op:
            flat.extend(item.items)
        else:
            flat.append(item)
    if not flat:
        raise InternalSizeZero('empty A node')
    if len(flat) == 1:
        return flat[0]
    return ANode(op, tuple(flat))


def build_node(sig: Signature, op: int, items: Iterable[Term]) -> Term:
    """Build a node for op from a sequence of items, whatever the kind of the operation"""
    if sig.is_ac(op):
        return build_ac(op, ((item, 1) for item in items))
    return build_a(op, items)


def mk_app(sig: Signature, sym: int, args: Iterable[Term] = ()) -> App:
    args = tuple(args)
    info = sig.symbol(sym)
    if len(args) != info.arity:
        raise ArityMismatch('%s expects %d argument(s), got %d' % (info.name, info.arity, len(args)))
    return App(sym, args)


def mk_bin(sig: Signature, op: int, left: Term, right: Term) -> Term:
    if sig.is_ac(op):
        return build_ac(op, [(left, 1), (right, 1)])
    return build_a(op, [left, right])


def children(t: Term) -> Tuple[Term, ...]:
    if isinstance(t, App):
        return t.args
    if isinstance(t, ANode):
        return t.items
    if isinstance(t, ACNode):
        return tuple(key for key, _ in t.items)
    return ()


def iter_nodes(t: Term) -> Iterator[Term]:
    yield t
    for child in children(t):
        yield from iter_nodes(child)


def is_ground(t: Term) -> bool:
    return not any(isinstance(node, Var) for node in iter_nodes(t))


def check_ground(t: Term, what='term'):
    if not is_ground(t):
        raise SubjectNotGround('%s must not contain variables' % what)


def vars_of(t: Term) -> List[str]:
    """Variable names of t, sorted"""
    return sorted({node.name for node in iter_nodes(t) if isinstance(node, Var)})


def term_size(t: Term) -> int:
    """Number of nodes, counting each copy of a repeated AC item"""
    if isinstance(t, ACNode):
        return 1 + sum(term_size(key) * mult for key, mult in t.items)
    return 1 + sum(term_size(child) for child in children(t))


def head_op(t: Term) -> Optional[int]:
    return t.op if isinstance(t, (ANode, ACNode)) else None


def rebuild(sig: Signature, t: Term, leaf: Callable[[Term], Optional[Term]]) -> Term:
    """
    Rebuild t bottom-up, replacing every leaf for which leaf() returns a term, and merging nodes
    so that the result satisfies the flattening invariants again. Unchanged subterms are shared.
    """
    if isinstance(t, (UnitLeaf, Var, Hole)):
        replacement = leaf(t)
        return t if replacement is None else replacement
    if isinstance(t, App):
        args = tuple(rebuild(sig, a, leaf) for a in t.args)
        return t if all(a is b for a, b in zip(args, t.args)) else App(t.sym, args)
    if isinstance(t, ANode):
        items = [rebuild(sig, item, leaf) for item in t.items]
        if all(a is b for a, b in zip(items, t.items)):
            return t
        return build_a(t.op, items)
    pairs = [(rebuild(sig, key, leaf), mult) for key, mult in t.items]
    if all(a is b for (a, _), (b, _) in zip(pairs, t.items)):
        return t
    return build_ac(t.op, pairs)


class Substitution(Mapping):
    """Immutable finite map from variable names to ground terms"""

    __slots__ = ('_map',)

    def __init__(self, bindings: Union[Dict[str, Term], Iterable[Tuple[str, Term]]] = ()):
        self._map = dict(bindings)
        for name, value in self._map.items():
            check_ground(value, 'value of ?%s' % name)

    def __getitem__(self, name):
        return self._map[name]

    def __iter__(self):
        return iter(sorted(self._map))

    def __len__(self):
        return len(self._map)

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        return 'Substitution(%r)' % {name: self._map[name] for name in self}

    def bind(self, name: str, value: Term) -> 'Substitution':
        if name in self._map:
            raise ValueError('?%s is already bound' % name)
        check_ground(value, 'value of ?%s' % name)
        extended = Substitution.__new__(Substitution)
        extended._map = dict(self._map)
        extended._map[name] = value
        return extended

    def restrict(self, names: Iterable[str]) -> 'Substitution':
        names = set(names)
        return Substitution({name: value for name, value in self._map.items() if name in names})


def apply_subst(sig: Signature, subst: Substitution, pattern: Term) -> Term:
    def leaf(t):
        if isinstance(t, Var):
            if t.name not in subst:
                raise UnboundVariable('?%s is not bound' % t.name)
            return subst[t.name]
        return None

    return rebuild(sig, pattern, leaf)


@dataclass(frozen=True)
class Context:
    """A term with exactly one hole"""
    term: Term

    def __post_init__(self):
        holes = sum(1 for node in iter_nodes(self.term) if isinstance(node, Hole))
        if holes != 1:
            raise InvalidContext('a context needs exactly one hole, found %d' % holes)


EMPTY_CONTEXT = Context(HOLE)


def plug(sig: Signature, context: Context, t: Term) -> Term:
    return rebuild(sig, context.term, lambda leaf: t if isinstance(leaf, Hole) else None)


def compose(sig: Signature, outer: Context, inner: Context) -> Context:
    return Context(plug(sig, outer, inner.term))


def subterm_positions(t: Term) -> List[Tuple[Position, Term]]:
    """
    Depth-first, left-to-right enumeration of every node of t, root first. An AC node contributes
    one entry per distinct key, not one per copy.
    """
    result = []

    def walk(node, path):
        result.append((path, node))
        if isinstance(node, (App, ANode)):
            for index, child in enumerate(children(node)):
                walk(child, path + (index,))
        elif isinstance(node, ACNode):
            for key, _ in node.items:
                walk(key, path + (key,))

    walk(t, ())
    return result


def subterm_at(t: Term, position: Position) -> Term:
    for selector in position:
        if isinstance(t, ACNode):
            if not any(key == selector for key, _ in t.items):
                raise KeyError('no key %r in AC node' % (selector,))
            t = selector
        else:
            t = children(t)[selector]
    return t


def _replace_at(t, position, replacement):
    if not position:
        return replacement
    selector, rest = position[0], position[1:]
    if isinstance(t, App):
        args = list(t.args)
        args[selector] = _replace_at(args[selector], rest, replacement)
        return App(t.sym, tuple(args))
    if isinstance(t, ANode):
        items = list(t.items)
        items[selector] = _replace_at(items[selector], rest, replacement)
        return ANode(t.op, tuple(items))
    if isinstance(t, ACNode):
        pairs = []
        for key, mult in t.items:
            if key == selector:
                if mult > 1:
                    pairs.append((key, mult - 1))
                pairs.append((_replace_at(key, rest, replacement), 1))
            else:
                pairs.append((key, mult))
        return ACNode(t.op, sort_multiset(pairs))
    raise KeyError('position does not resolve')


def context_at(t: Term, position: Position) -> Context:
    """
    The context around the node at position. For an AC key, the hole takes the place of one copy
    and the remaining copies stay in the context.
    """
    return Context(_replace_at(t, position, HOLE))
