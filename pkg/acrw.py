# Command line front end: equality checking, normalisation, instance listing and rewriting of
# terms modulo associativity, commutativity and units
#
# python acrw.py check -s sig.txt "max(0, b*1)+a" "a+b"
# python acrw.py rewrite -s sig.txt --rule "?x + n(?x) = 0" "a+b+c+n(c+a)"

import argparse
import json
import logging
import os
import sys

from flask import Config

import custom_logging
from engine.exceptions import (AcrwError, ArityMismatch, ChainStepError, ConfigError, NoMatch, SelectionOutOfRange,
                               SignatureError, TermParseError, UnknownIdentifier)
from engine.matcher import match_subterms
from engine.normalize import class_key, eq_ac, norm
from engine.oracle import oracle_eq, oracle_match, raw_size, to_raw
from engine.rewrite import Direction, Equation, StepOptions, chain, format_instances, list_instances
from engine.signature import Signature, read_signature, signature_hash
from engine.syntax import parse_equation, parse_term, print_context, print_term
from engine.term import UnitLeaf, apply_subst
from schema.models import CheckResult, CommandOutput, RewriteResult, Solution, StepRecord

BASE_DIR = os.path.dirname(os.path.abspath(__file__))

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2
EXIT_SELECTION = 3

logger = logging.getLogger('acrw')


def load_config(path=None):
    """
    Read config.cfg, then local.cfg if present, then the file given with --config

    :raises ConfigError: if the named file cannot be read
    """
    config = Config(BASE_DIR)
    config.from_pyfile('config.cfg')
    config.from_pyfile('local.cfg', silent=True)
    if path is not None:
        try:
            config.from_pyfile(os.path.abspath(path))
        except OSError as e:
            raise ConfigError('cannot read configuration file %s: %s' % (path, e.strerror))
    return config


class Workspace:
    def __init__(self, signature: Signature, options: argparse.Namespace, config: Config):
        self.signature = signature
        self.options = options
        self.config = config

    def output(self, command, solutions=(), warning=False, result=None):
        return CommandOutput(command=command, signature_hash=signature_hash(self.signature),
                             solutions=list(solutions), warning=warning, result=result)

    def emit(self, text, output):
        if self.options.json:
            print(json.dumps(output.to_json_dict(), indent=self.config['JSON_INDENT']))
        else:
            print(text)

    def equation(self):
        lhs, rhs = parse_equation(self.signature, self.options.rule)
        return Equation(lhs, rhs)

    @property
    def direction(self):
        return Direction.RTOL if self.options.rtl else Direction.LTOR


def cmd_check(ws: Workspace) -> int:
    sig = ws.signature
    t1, t2 = (parse_term(sig, text) for text in ws.options.terms)
    equal = eq_ac(sig, t1, t2)

    if ws.options.oracle:
        bound = raw_size(to_raw(sig, t1)) + raw_size(to_raw(sig, t2)) + int(ws.config['CLOSURE_SLACK'])
        if oracle_eq(sig, t1, t2, bound) != equal:
            logger.error('closure oracle disagrees with the normaliser on %s and %s', print_term(sig, t1), print_term(sig, t2))
            return EXIT_ERROR

    normal_forms = [print_term(sig, norm(sig, t)) for t in (t1, t2)]
    text = 'EQUAL' if equal else 'NOT EQUAL\n%s\n%s' % tuple(normal_forms)
    ws.emit(text, ws.output('check', result=CheckResult(equal=equal, normal_forms=normal_forms)))
    return EXIT_OK if equal else EXIT_NEGATIVE


def cmd_normalize(ws: Workspace) -> int:
    sig = ws.signature
    text = print_term(sig, norm(sig, parse_term(sig, ws.options.terms[0])))
    ws.emit(text, ws.output('normalize', result=text))
    return EXIT_OK


def _cross_check(ws, eq, t):
    """Compare the matcher with the brute-force matching oracle; True if they agree"""
    sig = ws.signature
    lhs = eq.oriented(ws.direction).lhs
    solutions, warning = match_subterms(sig, lhs, t)
    found = {class_key(sig, s.context, s.subst) for s in solutions}

    agree = True
    for solution in oracle_match(sig, lhs, t):
        if isinstance(norm(sig, apply_subst(sig, solution.subst, lhs)), UnitLeaf):
            if not warning:
                logger.error('unit instance in %s not reported', print_context(sig, solution.context))
                agree = False
        elif class_key(sig, solution.context, solution.subst) not in found:
            logger.error('oracle solution in %s not found by the matcher', print_context(sig, solution.context))
            agree = False
    return agree


def cmd_instances(ws: Workspace) -> int:
    sig = ws.signature
    eq = ws.equation()
    t = parse_term(sig, ws.options.terms[0])
    listing = list_instances(sig, eq, t, ws.direction)

    if ws.options.oracle and not _cross_check(ws, eq, t):
        return EXIT_ERROR

    solutions = []
    for occ_index, occurrence in enumerate(listing.occurrences):
        for sub_index, solution in enumerate(occurrence.solutions):
            solutions.append(Solution(
                occurrence=occ_index,
                substitution_index=sub_index,
                context=print_context(sig, solution.context),
                bindings={'?' + name: print_term(sig, solution.subst[name]) for name in solution.subst},
            ))

    ws.emit(format_instances(sig, listing), ws.output('instances', solutions, listing.warning))
    return EXIT_OK


def _selection(values, index):
    return values[index] if values and index < len(values) else 0


def cmd_rewrite(ws: Workspace) -> int:
    sig = ws.signature
    opts = ws.options
    t = parse_term(sig, opts.terms[0])

    steps = []
    for index, rule in enumerate(opts.rule):
        lhs, rhs = parse_equation(sig, rule)
        steps.append((Equation(lhs, rhs), StepOptions(_selection(opts.occ, index), _selection(opts.subst, index),
                                                      ws.direction, opts.post_normalize)))

    transcript = chain(sig, steps, t)
    records = transcript.records(sig)
    solutions = [
        Solution(occurrence=options.occ, substitution_index=options.sub, context=record['context'],
                 bindings=record['substitution'])
        for (_, options), record in zip(steps, records)
    ]
    term = print_term(sig, transcript.final)
    result = RewriteResult(term=term, steps=[StepRecord(**record) for record in records])
    ws.emit(term, ws.output('rewrite', solutions, result=result))
    return EXIT_OK


COMMANDS = {
    'check': cmd_check,
    'normalize': cmd_normalize,
    'instances': cmd_instances,
    'rewrite': cmd_rewrite,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-s', '--signature', required=True, help='signature file')
    common.add_argument('--json', action='store_true', help='machine-readable output')
    common.add_argument('--config', help='additional configuration file')

    parser = argparse.ArgumentParser(description='Equality checking and rewriting modulo associativity, commutativity and units')
    commands = parser.add_subparsers(dest='command', required=True)

    p = commands.add_parser('check', parents=[common], help='decide whether two terms are equal')
    p.add_argument('terms', nargs=2, metavar='term')
    p.add_argument('--oracle', action='store_true', help=argparse.SUPPRESS)

    p = commands.add_parser('normalize', parents=[common], help='print the normal form of a term')
    p.add_argument('terms', nargs=1, metavar='term')

    p = commands.add_parser('instances', parents=[common], help='list the instances of a rule in a term')
    p.add_argument('--rule', required=True, help='equation "lhs = rhs"')
    p.add_argument('--rtl', action='store_true', help='use the rule right to left')
    p.add_argument('--oracle', action='store_true', help=argparse.SUPPRESS)
    p.add_argument('terms', nargs=1, metavar='term')

    p = commands.add_parser('rewrite', parents=[common], help='rewrite a term once with each rule in turn')
    p.add_argument('--rule', required=True, action='append', help='equation "lhs = rhs", may be repeated')
    p.add_argument('--occ', type=int, action='append', help='occurrence to rewrite, one per rule (default 0)')
    p.add_argument('--subst', type=int, action='append', help='substitution to use, one per rule (default 0)')
    p.add_argument('--rtl', action='store_true', help='use the rules right to left')
    p.add_argument('--post-normalize', action='store_true', help='normalise the result')
    p.add_argument('terms', nargs=1, metavar='term')

    return parser


def _load_signature(filename):
    try:
        return read_signature(filename)
    except OSError as e:
        raise SignatureError('cannot read signature file %s: %s' % (filename, e.strerror))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args.config)
    except ConfigError as e:
        print('ERROR: %s' % e, file=sys.stderr)
        return EXIT_ERROR

    custom_logging.init_logging(config)
    custom_logging.set_command(args.command)

    try:
        ws = Workspace(_load_signature(args.signature), args, config)
        return COMMANDS[args.command](ws)
    except (TermParseError, SignatureError, UnknownIdentifier, ArityMismatch) as e:
        logger.error(str(e))
        return EXIT_ERROR
    except ChainStepError as e:
        return _exit_status(e.cause, str(e))
    except AcrwError as e:
        return _exit_status(e, str(e))
    except Exception:
        logger.exception('unexpected error')
        return EXIT_ERROR
    finally:
        custom_logging.set_command(None)


def _exit_status(e, message):
    logger.error(message)
    if isinstance(e, NoMatch):
        return EXIT_NEGATIVE
    if isinstance(e, SelectionOutOfRange):
        return EXIT_SELECTION
    return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
