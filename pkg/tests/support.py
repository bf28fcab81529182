# Signatures, enumerators and random generators shared by the test modules

from engine.oracle import from_raw, neighbours, raw_size, to_raw
from engine.signature import OP, SYMBOL, UNIT, parse_signature
from engine.term import UnitLeaf, Var, mk_app, mk_bin

SEED = 20240710

# cases per randomized property
PROPERTY_CASES = 10000

SIGNATURES = {
    # ?x+?y+?y in a+a+b+b
    'plus': """
        sym a 0
        sym b 0
        op + : AC
    """,
    # subterm matching, no units
    'nounits': """
        sym a 0
        sym b 0
        sym c 0
        sym f 1
        op + : AC
        op * : A
    """,
    # subterm matching with units for both operations
    'units': """
        sym a 0
        sym b 0
        sym c 0
        sym f 1
        op + : AC
        op * : A
        unit 0 : +
        unit 1 : *
    """,
    # ?x + n(?x) = 0
    'intro': """
        sym a 0
        sym b 0
        sym c 0
        sym n 1
        op + : AC
        unit 0 : +
    """,
    # distributivity and idempotence
    'lattice': """
        sym a 0
        sym b 0
        sym c 0
        sym d 0
        op & : AC
        op | : AC
    """,
    # one unit shared by two AC operations, one of them written in call form
    'max': """
        sym a 0
        sym b 0
        op + : AC
        op max : AC
        op * : A
        unit 0 : + max
        unit 1 : *
    """,
    # associative only, with unit
    'dot': """
        sym a 0
        sym b 0
        sym p 1
        op . : A
        unit 1 : .
    """,
    # uninterpreted symbols over AC operations
    'free': """
        sym x 0
        sym y 0
        sym z 0
        sym f 1
        sym g 1
        op & : AC
        op | : AC
        unit e : |
    """,
    # exhaustive agreement: 2 constants, 1 AC operation with unit, 1 A operation
    'small': """
        sym a 0
        sym b 0
        op + : AC
        op * : A
        unit 0 : +
    """,
}


def signature(name):
    return parse_signature(SIGNATURES[name])


def ident(sig, name):
    """id of a declared name, whatever its namespace"""
    return sig.resolve(name)[1]


def enumerate_trees(max_size, leaves, unary=(), binary=()):
    """
    Every tree up to max_size nodes, smallest first

    :param leaves: trees of size one
    :param unary: constructors taking one tree
    :param binary: constructors taking two trees
    """
    by_size = {1: list(leaves)}
    for size in range(2, max_size + 1):
        trees = []
        for make in unary:
            trees.extend(make(arg) for arg in by_size[size - 1])
        for make in binary:
            for left_size in range(1, size - 1):
                for left in by_size[left_size]:
                    for right in by_size[size - 1 - left_size]:
                        trees.append(make(left, right))
        by_size[size] = trees
    return [tree for size in sorted(by_size) for tree in by_size[size]]


def term_trees(sig, max_size, leaf_names=None, variables=()):
    """Flattened terms built from every binary tree over the signature, up to max_size raw nodes"""
    leaves = []
    for name, (namespace, index) in sig.names.items():
        if leaf_names is not None and name not in leaf_names:
            continue
        if namespace == SYMBOL and sig.symbol(index).arity == 0:
            leaves.append(mk_app(sig, index, ()))
        elif namespace == UNIT:
            leaves.append(UnitLeaf(index))
    leaves.extend(Var(v) for v in variables)

    unary = [lambda arg, sym=index: mk_app(sig, sym, (arg,))
             for index, info in enumerate(sig.symbols) if info.arity == 1]
    binary = [lambda l, r, op=index: mk_bin(sig, op, l, r) for index in range(len(sig.ops))]
    return enumerate_trees(max_size, leaves, unary, binary)


def random_term(sig, rng, size, variables=()):
    """A random flattened term of roughly the given number of raw nodes"""
    constants = [mk_app(sig, index, ()) for index, info in enumerate(sig.symbols) if info.arity == 0]
    constants += [UnitLeaf(index) for index in range(len(sig.units))]
    constants += [Var(v) for v in variables]

    if size <= 1 or rng.random() < 0.15:
        return rng.choice(constants)

    functions = [(SYMBOL, index) for index, info in enumerate(sig.symbols) if info.arity > 0]
    functions += [(OP, index) for index in range(len(sig.ops))]
    namespace, index = rng.choice(functions)

    if namespace == OP:
        left_size = rng.randint(1, max(1, size - 2))
        return mk_bin(sig, index,
                      random_term(sig, rng, left_size, variables),
                      random_term(sig, rng, max(1, size - 1 - left_size), variables))

    arity = sig.symbol(index).arity
    return mk_app(sig, index, [random_term(sig, rng, max(1, (size - 1) // arity), variables) for _ in range(arity)])


def axiom_walk(sig, rng, t, steps):
    """A term equal to ground t modulo the axioms, reached by random single axiom applications"""
    r = to_raw(sig, t)
    bound = raw_size(r) + 2
    for _ in range(steps):
        options = neighbours(sig, r, bound)
        if not options:
            break
        r = rng.choice(options)
    return from_raw(sig, r)
