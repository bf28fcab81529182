import pytest

from engine.exceptions import ArityMismatch, MixedInfix, TermParseError, UnknownIdentifier
from engine.signature import parse_signature
from engine.syntax import parse_context, parse_equation, parse_pattern, parse_term, print_subst, print_term
from engine.term import App, Substitution, Var
from tests.support import PROPERTY_CASES, random_term, signature

NAMED = parse_signature("""
    sym a 0
    sym b 0
    sym s 1
    sym plus 2
    sym times 2
    sym minus 2
""")


def test_named_symbols_round_trip():
    text = 'minus(times(a, s(plus(b, b))), b)'
    t = parse_term(NAMED, text)
    assert isinstance(t, App)
    assert print_term(NAMED, t) == text
    assert print_term(NAMED, parse_term(NAMED, 'minus( times(a,s(plus(b,b))) , b )')) == text


def test_mixed_infix(sig_units):
    with pytest.raises(MixedInfix) as excinfo:
        parse_term(sig_units, 'a + b * c')
    assert excinfo.value.line == 1
    assert excinfo.value.column == 7
    assert print_term(sig_units, parse_term(sig_units, 'a + (b * c)')) == 'a+(b*c)'


def test_parse_errors(sig_units):
    with pytest.raises(TermParseError):
        parse_term(sig_units, 'a +')
    with pytest.raises(TermParseError):
        parse_term(sig_units, 'f(a')
    with pytest.raises(TermParseError) as excinfo:
        parse_term(sig_units, 'a ) b')
    assert excinfo.value.column == 3
    with pytest.raises(UnknownIdentifier):
        parse_term(sig_units, 'a + q')
    with pytest.raises(ArityMismatch):
        parse_term(sig_units, 'f')
    with pytest.raises(TermParseError):
        parse_term(sig_units, '+(a, b)')


def test_variables_only_in_rules(sig_units):
    with pytest.raises(TermParseError):
        parse_term(sig_units, 'a + ?x')
    assert parse_pattern(sig_units, 'a + ?x') == parse_pattern(sig_units, '?x+a')
    lhs, rhs = parse_equation(sig_units, '?x + f(?x) = 0')
    assert rhs == parse_term(sig_units, '0')
    assert Var('x') in [key for key, _ in lhs.items]


def test_hole_only_in_contexts(sig_units):
    with pytest.raises(TermParseError):
        parse_term(sig_units, 'a + []')
    assert print_term(sig_units, parse_context(sig_units, '[] + a').term) == 'a+[]'


def test_operations_misused(sig_units, sig_max):
    with pytest.raises(TermParseError):
        parse_term(sig_units, 'a 0 b')
    with pytest.raises(ArityMismatch):
        parse_term(sig_max, 'max(a)')
    with pytest.raises(TermParseError):
        parse_term(sig_max, 'a + max')
    with pytest.raises(TermParseError):
        parse_term(sig_units, '0(a)')


def test_printing(sig_units, sig_max):
    assert print_term(sig_units, parse_term(sig_units, '(b+a)*(c*f(a+b))')) == '(a+b)*c*f(a+b)'
    assert print_term(sig_units, parse_term(sig_units, '((a))')) == 'a'
    assert print_term(sig_max, parse_term(sig_max, 'max(a, b*1) + 0')) == '0+max(a, b*1)'
    subst = Substitution({'y': parse_term(sig_units, 'b'), 'x': parse_term(sig_units, 'a+a')})
    assert print_subst(sig_units, subst) == '{?x := a+a, ?y := b}'


@pytest.mark.slow
@pytest.mark.parametrize('name', ['units', 'max', 'free', 'lattice'])
def test_print_parse_round_trip(name, rng):
    sig = signature(name)
    for _ in range(PROPERTY_CASES):
        t = random_term(sig, rng, rng.randint(1, 14))
        assert parse_term(sig, print_term(sig, t)) == t
