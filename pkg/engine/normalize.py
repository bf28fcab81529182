# Normal forms modulo associativity, commutativity and units - the trusted checker
#
# norm() flattens A/AC nodes, sorts AC items, and removes the unit of each operation from its
# items. Two terms are equal modulo the axioms iff their normal forms are structurally equal.

from typing import List, Sequence, Tuple, Union

from engine.exceptions import InternalSizeZero
from engine.signature import Signature
from engine.term import (ACNode, ANode, App, Ordering, Term, UnitLeaf, compare, merge_multisets, multiset_size)


def smart_bin_ac(sig: Signature, op: int, pairs: Sequence[Tuple[Term, int]]) -> Term:
    """
    Build an AC node from a sorted multiset of normalised items, dropping the unit of op. Collapses to the single
    remaining item, or to the unit itself when every item was a unit.
    """
    if not pairs:
        raise InternalSizeZero('smart_bin_ac called with no items')

    unit = sig.unit_of(op)
    if unit is not None:
        unit_leaf = UnitLeaf(unit)
        kept = [(key, mult) for key, mult in pairs if key != unit_leaf]
        if not kept:
            return unit_leaf
    else:
        kept = list(pairs)

    kept = tuple(kept)
    if multiset_size(kept) == 1:
        return kept[0][0]
    return ACNode(op, kept)


def smart_bin_a(sig: Signature, op: int, items: Sequence[Term]) -> Term:
    if not items:
        raise InternalSizeZero('smart_bin_a called with no items')

    unit = sig.unit_of(op)
    if unit is not None:
        unit_leaf = UnitLeaf(unit)
        kept = [item for item in items if item != unit_leaf]
        if not kept:
            return unit_leaf
    else:
        kept = list(items)

    if len(kept) == 1:
        return kept[0]
    return ANode(op, tuple(kept))


def extract_same_op(sig: Signature, op: int, t: Term) -> Union[Tuple[Tuple[Term, int], ...], Tuple[Term, ...]]:
    """
    The items of t seen as an argument of op: its own items when t is headed by op, otherwise t
    alone. AC operations get a multiset, A operations a sequence.
    """
    if sig.is_ac(op):
        if isinstance(t, ACNode) and t.op == op:
            return t.items
        return ((t, 1),)
    if isinstance(t, ANode) and t.op == op:
        return t.items
    return (t,)


def norm(sig: Signature, t: Term) -> Term:
    if isinstance(t, App):
        if not t.args:
            return t
        return App(t.sym, tuple(norm(sig, arg) for arg in t.args))

    if isinstance(t, ANode):
        items = []
        for item in t.items:
            items.extend(extract_same_op(sig, t.op, norm(sig, item)))
        return smart_bin_a(sig, t.op, items)

    if isinstance(t, ACNode):
        pairs = ()
        for key, mult in t.items:
            part = tuple((k, m * mult) for k, m in extract_same_op(sig, t.op, norm(sig, key)))
            pairs = merge_multisets(pairs, part)
        return smart_bin_ac(sig, t.op, pairs)

    # unit leaves, variables and holes are atoms
    return t


def eq_ac(sig: Signature, t: Term, u: Term) -> bool:
    return norm(sig, t) == norm(sig, u)


def validate_nf(sig: Signature, t: Term) -> List[str]:
    """
    Check that t is in normal form

    :return: a list of problems, empty if t is a normal form
    """
    problems = []

    def check(node):
        if isinstance(node, App):
            if len(node.args) != sig.symbol(node.sym).arity:
                problems.append('arity of %s not respected' % sig.symbol(node.sym).name)
            for arg in node.args:
                check(arg)
            return
        if not isinstance(node, (ANode, ACNode)):
            return

        name = sig.op(node.op).name
        unit = sig.unit_of(node.op)
        if isinstance(node, ANode):
            if sig.is_ac(node.op):
                problems.append('A node for AC operation %s' % name)
            keys = node.items
            if len(keys) < 2:
                problems.append('A node %s with fewer than two items' % name)
        else:
            if not sig.is_ac(node.op):
                problems.append('AC node for A operation %s' % name)
            keys = [key for key, _ in node.items]
            if any(mult < 1 for _, mult in node.items):
                problems.append('AC node %s with a non-positive multiplicity' % name)
            if multiset_size(node.items) < 2:
                problems.append('AC node %s with fewer than two items' % name)
            for k1, k2 in zip(keys, keys[1:]):
                if compare(k1, k2) != Ordering.LT:
                    problems.append('AC node %s keys not strictly increasing' % name)

        for key in keys:
            if isinstance(key, (ANode, ACNode)) and key.op == node.op:
                problems.append('%s node directly under %s node' % (name, name))
            if unit is not None and key == UnitLeaf(unit):
                problems.append('unit of %s left under %s' % (name, name))
            check(key)

    check(t)
    return problems


def class_key(sig: Signature, context, subst) -> Tuple[Term, Tuple[Tuple[str, Term], ...]]:
    """Key identifying a (context, substitution) pair modulo the axioms"""
    return norm(sig, context.term), tuple((name, norm(sig, subst[name])) for name in subst)
