import pytest

from engine.exceptions import InternalSizeZero
from engine.normalize import eq_ac, extract_same_op, norm, smart_bin_a, smart_bin_ac, validate_nf
from engine.syntax import parse_term, print_term
from engine.term import ACNode, ANode, UnitLeaf, mk_app, mk_bin
from tests.support import PROPERTY_CASES, axiom_walk, ident, random_term, signature


def nf(sig, text):
    return print_term(sig, norm(sig, parse_term(sig, text)))


@pytest.mark.parametrize('text, expected', [
    ('b+0', 'b'),
    ('(b+a)+a', 'a+a+b'),
    ('0+0', '0'),
    ('f(a*1)*1', 'f(a)'),
    ('(a*1)*(b*(1*c))', 'a*b*c'),
    ('f(b+0+a)', 'f(a+b)'),
    ('(a+0)*(0+b)', 'a*b'),
])
def test_normal_forms(sig_units, text, expected):
    assert nf(sig_units, text) == expected


def test_shared_unit(sig_max):
    assert eq_ac(sig_max, parse_term(sig_max, 'max(0, b*1) + a'), parse_term(sig_max, 'a + b'))
    assert nf(sig_max, 'max(0, b*1)+a') == nf(sig_max, 'a+b')
    assert nf(sig_max, 'max(b, a, b)') == 'max(a, b, b)'


def test_uninterpreted_symbols(sig_free):
    assert eq_ac(sig_free, parse_term(sig_free, 'f(x&y) | g(e|z)'), parse_term(sig_free, 'g(z) | f(y&x)'))
    assert not eq_ac(sig_free, parse_term(sig_free, 'f(x&y)'), parse_term(sig_free, 'f(x|y)'))


def test_not_commutative(sig_units):
    assert not eq_ac(sig_units, parse_term(sig_units, 'a*b'), parse_term(sig_units, 'b*a'))
    assert eq_ac(sig_units, parse_term(sig_units, '(a*b)*c'), parse_term(sig_units, 'a*(b*c)'))


def test_smart_constructors(sig_units):
    plus, times = ident(sig_units, '+'), ident(sig_units, '*')
    zero, one = UnitLeaf(ident(sig_units, '0')), UnitLeaf(ident(sig_units, '1'))
    a, b = parse_term(sig_units, 'a'), parse_term(sig_units, 'b')

    assert smart_bin_ac(sig_units, plus, [(zero, 2)]) == zero
    assert smart_bin_ac(sig_units, plus, [(zero, 1), (a, 1)]) == a
    assert smart_bin_ac(sig_units, plus, [(zero, 1), (a, 1), (b, 1)]) == ACNode(plus, ((a, 1), (b, 1)))
    assert smart_bin_a(sig_units, times, [one, a, one, b]) == ANode(times, (a, b))
    assert smart_bin_a(sig_units, times, [one]) == one
    # a unit of another operation is an ordinary item
    assert smart_bin_a(sig_units, times, [zero, a]) == ANode(times, (zero, a))

    with pytest.raises(InternalSizeZero):
        smart_bin_ac(sig_units, plus, [])
    with pytest.raises(InternalSizeZero):
        smart_bin_a(sig_units, times, [])


def test_extract_same_op(sig_units):
    plus, times = ident(sig_units, '+'), ident(sig_units, '*')
    t = parse_term(sig_units, 'a+a+b')
    assert extract_same_op(sig_units, plus, t) == t.items
    assert extract_same_op(sig_units, times, t) == (t,)
    assert extract_same_op(sig_units, plus, parse_term(sig_units, 'a*b')) == ((parse_term(sig_units, 'a*b'), 1),)


def test_validate_nf(sig_units):
    plus = ident(sig_units, '+')
    zero, a = UnitLeaf(ident(sig_units, '0')), parse_term(sig_units, 'a')
    assert validate_nf(sig_units, norm(sig_units, parse_term(sig_units, 'f(a+0)*(b+a)'))) == []
    assert validate_nf(sig_units, ACNode(plus, ((zero, 1), (a, 1)))) != []
    assert validate_nf(sig_units, ACNode(plus, ((a, 1),))) != []
    assert validate_nf(sig_units, ANode(plus, (a, a))) != []


@pytest.mark.slow
@pytest.mark.parametrize('name', ['units', 'max', 'free', 'small'])
def test_norm_idempotent_and_canonical(name, rng):
    sig = signature(name)
    for _ in range(PROPERTY_CASES):
        t = random_term(sig, rng, rng.randint(1, 12))
        n = norm(sig, t)
        assert norm(sig, n) == n
        assert validate_nf(sig, n) == []
        assert eq_ac(sig, t, n)


def test_norm_merges_nested_items(sig_units):
    plus = ident(sig_units, '+')
    a, b = parse_term(sig_units, 'a'), parse_term(sig_units, 'b')
    nested = ACNode(plus, ((b, 1), (ACNode(plus, ((a, 1), (b, 1))), 2)))
    assert norm(sig_units, nested) == ACNode(plus, ((a, 2), (b, 3)))


@pytest.mark.slow
@pytest.mark.parametrize('name', ['units', 'free'])
def test_equality_is_a_congruence(name, rng):
    sig = signature(name)
    unary = [index for index, info in enumerate(sig.symbols) if info.arity == 1]
    for _ in range(PROPERTY_CASES // 5):
        t = random_term(sig, rng, rng.randint(1, 6))
        u = axiom_walk(sig, rng, t, rng.randint(1, 4))
        w = axiom_walk(sig, rng, u, rng.randint(1, 4))
        other = random_term(sig, rng, rng.randint(1, 6))

        assert eq_ac(sig, t, t)
        assert eq_ac(sig, t, u) and eq_ac(sig, u, t)
        assert eq_ac(sig, t, w)
        assert eq_ac(sig, t, other) == eq_ac(sig, other, t)

        f = rng.choice(unary)
        assert eq_ac(sig, mk_app(sig, f, [t]), mk_app(sig, f, [u]))
        op = rng.randrange(len(sig.ops))
        assert eq_ac(sig, mk_bin(sig, op, t, other), mk_bin(sig, op, u, other))
        assert eq_ac(sig, mk_bin(sig, op, other, t), mk_bin(sig, op, other, w))
