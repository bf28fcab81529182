# Symbol tables for free symbols, binary A/AC operations and their units
#
# A Signature is filled in by the declare_* functions (or read from a signature file) and is
# treated as read-only once construction is complete.

import hashlib
import logging
import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from engine.exceptions import DuplicateName, EmptyOpSet, OpAlreadyHasUnit, SignatureError, UnknownIdentifier

logger = logging.getLogger(__name__)

IDENTIFIER = re.compile(r"(?:[A-Za-z_][A-Za-z0-9_']*|[0-9]+)$")
INFIX_TOKEN = re.compile(r"[+\-*/.&|^@]{1,2}$")

# namespaces
SYMBOL = 'sym'
OP = 'op'
UNIT = 'unit'


class OpKind(Enum):
    A = 'A'
    AC = 'AC'


@dataclass(frozen=True)
class SymbolInfo:
    name: str
    arity: int


@dataclass(frozen=True)
class OpInfo:
    name: str
    kind: OpKind
    unit: Optional[int] = None

    @property
    def infix(self):
        return INFIX_TOKEN.match(self.name) is not None


@dataclass(frozen=True)
class UnitInfo:
    name: str
    ops: FrozenSet[int]


class Signature:
    def __init__(self):
        self.symbols: List[SymbolInfo] = []
        self.ops: List[OpInfo] = []
        self.units: List[UnitInfo] = []
        self.names: Dict[str, Tuple[str, int]] = {}
        self.order: List[Tuple[str, int]] = []

    def symbol(self, sym_id: int) -> SymbolInfo:
        return self.symbols[sym_id]

    def op(self, op_id: int) -> OpInfo:
        return self.ops[op_id]

    def unit(self, unit_id: int) -> UnitInfo:
        return self.units[unit_id]

    def unit_of(self, op_id: int) -> Optional[int]:
        return self.ops[op_id].unit

    def is_ac(self, op_id: int) -> bool:
        return self.ops[op_id].kind == OpKind.AC

    def resolve(self, name: str) -> Tuple[str, int]:
        """
        Find the namespace and id of a declared name

        :param name: the name to look up
        :return: (namespace, id), namespace being one of SYMBOL, OP, UNIT
        :raises UnknownIdentifier: if the name is not declared
        """
        if name not in self.names:
            raise UnknownIdentifier('%s is not declared in the signature' % name)
        return self.names[name]

    def __repr__(self):
        return 'Signature(%d symbols, %d ops, %d units)' % (len(self.symbols), len(self.ops), len(self.units))


def _claim_name(sig, name, namespace, index):
    if name in sig.names:
        raise DuplicateName('%s is already declared' % name)
    sig.names[name] = (namespace, index)
    sig.order.append((namespace, index))


def declare_symbol(sig: Signature, name: str, arity: int) -> int:
    if not IDENTIFIER.match(name):
        raise SignatureError('%s is not a valid symbol name' % name)
    if arity < 0:
        raise SignatureError('arity of %s must be a natural number' % name)
    _claim_name(sig, name, SYMBOL, len(sig.symbols))
    sig.symbols.append(SymbolInfo(name, arity))
    return len(sig.symbols) - 1


def declare_op(sig: Signature, name: str, kind: OpKind) -> int:
    if not (INFIX_TOKEN.match(name) or IDENTIFIER.match(name)):
        raise SignatureError('%s is not a valid operation token' % name)
    _claim_name(sig, name, OP, len(sig.ops))
    sig.ops.append(OpInfo(name, OpKind(kind)))
    return len(sig.ops) - 1


def declare_unit(sig: Signature, name: str, ops: Iterable[int]) -> int:
    """
    Declare a unit (neutral element) for one or more operations

    :param sig: the signature being built
    :param name: name of the unit constant
    :param ops: ids of the operations the constant is neutral for
    :return: the id of the new unit
    :raises EmptyOpSet: if no operation is given
    :raises UnknownIdentifier: if an operation id is not declared
    :raises OpAlreadyHasUnit: if one of the operations already has a different unit
    """
    ops = frozenset(ops)
    if not ops:
        raise EmptyOpSet('unit %s must be declared for at least one operation' % name)
    if not IDENTIFIER.match(name):
        raise SignatureError('%s is not a valid unit name' % name)
    for op_id in ops:
        if not 0 <= op_id < len(sig.ops):
            raise UnknownIdentifier('unit %s names operation %r, which is not declared' % (name, op_id))
    for op_id in ops:
        if sig.ops[op_id].unit is not None:
            raise OpAlreadyHasUnit('operation %s already has unit %s' % (sig.ops[op_id].name, sig.units[sig.ops[op_id].unit].name))

    unit_id = len(sig.units)
    _claim_name(sig, name, UNIT, unit_id)
    sig.units.append(UnitInfo(name, ops))
    for op_id in ops:
        sig.ops[op_id] = replace(sig.ops[op_id], unit=unit_id)
    return unit_id


def validate_signature(sig: Signature) -> List[str]:
    """
    Check the cross references between units and operations

    :return: list of problems found - empty if the signature is consistent
    """
    problems = []
    for op_id, op in enumerate(sig.ops):
        if op.unit is not None and op_id not in sig.units[op.unit].ops:
            problems.append('operation %s names unit %s, which does not list it' % (op.name, sig.units[op.unit].name))
    for unit_id, unit in enumerate(sig.units):
        if not unit.ops:
            problems.append('unit %s serves no operation' % unit.name)
        for op_id in unit.ops:
            if sig.ops[op_id].unit != unit_id:
                problems.append('unit %s lists operation %s, which does not name it' % (unit.name, sig.ops[op_id].name))
    for name, (namespace, index) in sig.names.items():
        table = {SYMBOL: sig.symbols, OP: sig.ops, UNIT: sig.units}[namespace]
        if table[index].name != name:
            problems.append('name table entry %s is stale' % name)
    return problems


# Signature files
#
# sym <name> <arity>
# op <token> : A|AC
# unit <name> : <op-token> [<op-token> ...]
# '#' starts a comment

def parse_signature(text: str) -> Signature:
    sig = Signature()

    for line_no, row in enumerate(text.splitlines(), start=1):
        row = row.split('#', 1)[0].strip()
        if not row:
            continue

        fields = row.replace(':', ' : ').split()
        try:
            if fields[0] == 'sym' and len(fields) == 3:
                if not fields[2].isdigit():
                    raise SignatureError('arity must be a natural number', line_no)
                declare_symbol(sig, fields[1], int(fields[2]))
            elif fields[0] == 'op' and len(fields) == 4 and fields[2] == ':':
                if fields[3] not in ('A', 'AC'):
                    raise SignatureError('operation kind must be A or AC', line_no)
                declare_op(sig, fields[1], OpKind(fields[3]))
            elif fields[0] == 'unit' and len(fields) >= 3 and fields[2] == ':':
                ops = []
                for token in fields[3:]:
                    namespace, op_id = sig.resolve(token)
                    if namespace != OP:
                        raise SignatureError('%s is not an operation' % token, line_no)
                    ops.append(op_id)
                declare_unit(sig, fields[1], ops)
            else:
                raise SignatureError('unrecognised declaration: %s' % row, line_no)
        except SignatureError as e:
            if e.line is None:
                raise SignatureError(str(e), line_no)
            raise
        except (DuplicateName, OpAlreadyHasUnit, EmptyOpSet, UnknownIdentifier) as e:
            raise SignatureError('%s: %s' % (type(e).__name__, e), line_no)

    problems = validate_signature(sig)
    if problems:
        raise SignatureError('; '.join(problems))

    logger.debug('read %r', sig)
    return sig


def read_signature(filename: str) -> Signature:
    with open(filename, 'r') as fi:
        return parse_signature(fi.read())


def dump_signature(sig: Signature) -> str:
    rows = []
    for namespace, index in sig.order:
        if namespace == SYMBOL:
            rows.append('sym %s %d' % (sig.symbols[index].name, sig.symbols[index].arity))
        elif namespace == OP:
            rows.append('op %s : %s' % (sig.ops[index].name, sig.ops[index].kind.value))
        else:
            ops = sorted(sig.units[index].ops)
            rows.append('unit %s : %s' % (sig.units[index].name, ' '.join(sig.ops[o].name for o in ops)))
    return '\n'.join(rows) + '\n'


def signature_hash(sig: Signature) -> str:
    return hashlib.sha256(dump_signature(sig).encode('utf-8')).hexdigest()
