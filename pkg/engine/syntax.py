# Parser and printer for terms, patterns, contexts and equations
#
# Grammar: one precedence level. A chain of infix operators must use a single token; distinct
# operators need parentheses. Operations declared with identifier names are written in call form,
# max(a, b, c). Variables (?x) are only accepted in patterns and equations.

from typing import Tuple

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from engine.exceptions import ArityMismatch, MixedInfix, TermParseError
from engine.signature import OP, SYMBOL, Signature
from engine.term import (HOLE, ACNode, ANode, App, Context, Hole, Substitution, Term, UnitLeaf, Var,
                         expand_multiset, mk_app, mk_bin)

term_grammar = r"""
    term: expr
    equation: expr "=" expr

    expr: atom (INFIX atom)*

    ?atom: NAME                           -> name
         | NAME "(" expr ("," expr)* ")"  -> call
         | VAR                            -> var
         | HOLE                           -> hole
         | "(" expr ")"

    INFIX: /[+\-*\/.&|^@]{1,2}/
    NAME: /[A-Za-z_][A-Za-z0-9_']*|[0-9]+/
    VAR: /\?[A-Za-z_][A-Za-z0-9_']*/
    HOLE: "[]"

    %import common.WS
    %ignore WS
"""


class TermParser:
    def __init__(self):
        self.parser = Lark(term_grammar, start=['term', 'equation'], parser='lalr')

    def parse(self, text, start):
        try:
            return self.parser.parse(text, start=start)
        except UnexpectedInput as e:
            line, column = getattr(e, 'line', -1), getattr(e, 'column', -1)
            if line is None or line < 0:
                raise TermParseError('unexpected end of input')
            raise TermParseError('unexpected input', line, column)


_parser = None


def _get_parser():
    global _parser
    if _parser is None:
        _parser = TermParser()
    return _parser


class TermBuilder(Transformer):
    """Turns a parse tree into a flattened term over the given signature"""

    def __init__(self, sig, allow_vars=False, allow_hole=False):
        super().__init__()
        self.sig = sig
        self.allow_vars = allow_vars
        self.allow_hole = allow_hole

    def _error(self, message, token):
        return TermParseError(message, getattr(token, 'line', None), getattr(token, 'column', None))

    def term(self, children):
        return children[0]

    def equation(self, children):
        return children[0], children[1]

    def name(self, children):
        token = children[0]
        namespace, index = self.sig.resolve(str(token))
        if namespace == SYMBOL:
            return mk_app(self.sig, index, ())
        if namespace == OP:
            raise self._error('operation %s used as a constant' % token, token)
        return UnitLeaf(index)

    def call(self, children):
        token, args = children[0], children[1:]
        namespace, index = self.sig.resolve(str(token))
        if namespace == SYMBOL:
            return mk_app(self.sig, index, args)
        if namespace == OP:
            if len(args) < 2:
                raise ArityMismatch('operation %s needs at least two arguments' % token)
            result = args[0]
            for arg in args[1:]:
                result = mk_bin(self.sig, index, result, arg)
            return result
        raise self._error('unit %s cannot be applied' % token, token)

    def var(self, children):
        token = children[0]
        if not self.allow_vars:
            raise self._error('variable %s is only allowed in rules' % token, token)
        return Var(str(token)[1:])

    def hole(self, children):
        if not self.allow_hole:
            raise self._error('hole is only allowed in contexts', children[0])
        return HOLE

    def expr(self, children):
        result = children[0]
        if len(children) == 1:
            return result

        tokens = children[1::2]
        first = str(tokens[0])
        for token in tokens[1:]:
            if str(token) != first:
                raise MixedInfix('%s and %s chained without parentheses' % (first, token),
                                 token.line, token.column)
        namespace, index = self.sig.resolve(first)
        if namespace != OP:
            raise self._error('%s is not an operation' % first, tokens[0])

        for operand in children[2::2]:
            result = mk_bin(self.sig, index, result, operand)
        return result


def _build(sig, text, start, allow_vars=False, allow_hole=False):
    tree = _get_parser().parse(text, start)
    try:
        return TermBuilder(sig, allow_vars, allow_hole).transform(tree)
    except VisitError as e:
        raise e.orig_exc


def parse_term(sig: Signature, text: str) -> Term:
    """Parse a ground term"""
    return _build(sig, text, 'term')


def parse_pattern(sig: Signature, text: str) -> Term:
    return _build(sig, text, 'term', allow_vars=True)


def parse_context(sig: Signature, text: str) -> Context:
    return Context(_build(sig, text, 'term', allow_hole=True))


def parse_equation(sig: Signature, text: str) -> Tuple[Term, Term]:
    return _build(sig, text, 'equation', allow_vars=True)


def _infix_node(sig, t):
    return isinstance(t, (ANode, ACNode)) and sig.op(t.op).infix


def print_term(sig: Signature, t: Term) -> str:
    """
    Canonical text of a term: chains printed flat, AC items in term order, parentheses only around
    infix chains nested in another chain.
    """
    if isinstance(t, UnitLeaf):
        return sig.unit(t.unit).name
    if isinstance(t, Var):
        return '?' + t.name
    if isinstance(t, Hole):
        return '[]'
    if isinstance(t, App):
        name = sig.symbol(t.sym).name
        if not t.args:
            return name
        return '%s(%s)' % (name, ', '.join(print_term(sig, arg) for arg in t.args))

    items = t.items if isinstance(t, ANode) else expand_multiset(t.items)
    op = sig.op(t.op)
    if not op.infix:
        return '%s(%s)' % (op.name, ', '.join(print_term(sig, item) for item in items))

    parts = []
    for item in items:
        text = print_term(sig, item)
        parts.append('(%s)' % text if _infix_node(sig, item) else text)
    return op.name.join(parts)


def print_context(sig: Signature, context: Context) -> str:
    return print_term(sig, context.term)


def print_subst(sig: Signature, subst: Substitution) -> str:
    return '{%s}' % ', '.join('?%s := %s' % (name, print_term(sig, subst[name])) for name in subst)
