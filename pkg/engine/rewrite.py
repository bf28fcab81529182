# One-step rewriting modulo A/AC with units
#
# A step picks a solution of the left-hand side, rebuilds the subject with the instantiated
# right-hand side in the same context, and checks with the normaliser that the context filled with
# the left-hand side instance really is the subject. Unverified steps are never returned.

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Sequence, Tuple

from engine.exceptions import (AcrwError, ChainStepError, IllFormedEquation, NoMatch, SelectionOutOfRange,
                               VerificationFailed)
from engine.matcher import MatchSolution, Occurrence, count_occurrences, match_subterms
from engine.normalize import eq_ac, norm
from engine.signature import Signature
from engine.syntax import print_context, print_subst, print_term
from engine.term import Term, Var, apply_subst, check_ground, plug, vars_of

logger = logging.getLogger(__name__)

NO_MATCH_WARNING = ('only solutions whose instance is a unit were found; '
                    'such solutions are rejected, instantiate the rule explicitly to use one')


class Direction(Enum):
    LTOR = 'LtoR'
    RTOL = 'RtoL'


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    @property
    def vars(self) -> List[str]:
        return sorted(set(vars_of(self.lhs)) | set(vars_of(self.rhs)))

    def flipped(self) -> 'Equation':
        return Equation(self.rhs, self.lhs)

    def oriented(self, direction: Direction) -> 'Equation':
        return self if direction == Direction.LTOR else self.flipped()


def check_equation(sig: Signature, eq: Equation):
    """
    Check that eq can be used left to right

    :raises IllFormedEquation: if the left-hand side is (or normalises to) a variable, or the
        right-hand side has variables the left-hand side does not bind
    """
    if isinstance(norm(sig, eq.lhs), Var):
        raise IllFormedEquation('the left-hand side is a bare variable')
    unbound = set(vars_of(eq.rhs)) - set(vars_of(eq.lhs))
    if unbound:
        raise IllFormedEquation('variables %s of the right-hand side do not occur on the left'
                                % ', '.join('?' + name for name in sorted(unbound)))


@dataclass
class RewriteStep:
    original: Term
    intermediate: Term
    result: Term
    solution: MatchSolution
    instance: Term
    verified: bool

    def record(self, sig: Signature) -> Dict[str, object]:
        return {
            'original': print_term(sig, self.original),
            'context': print_context(sig, self.solution.context),
            'substitution': {'?' + name: print_term(sig, self.solution.subst[name]) for name in self.solution.subst},
            'instance': print_term(sig, self.instance),
            'result': print_term(sig, self.result),
            'verified': self.verified,
        }


def _select(occurrences: List[Occurrence], occ: int, sub: int) -> MatchSolution:
    if not 0 <= occ < len(occurrences):
        raise SelectionOutOfRange('occurrence %d requested, %d found' % (occ, len(occurrences)))
    solutions = occurrences[occ].solutions
    if not 0 <= sub < len(solutions):
        raise SelectionOutOfRange('substitution %d requested, occurrence %d has %d' % (sub, occ, len(solutions)))
    return solutions[sub]


def rewrite_step(sig: Signature, eq: Equation, t: Term, occ: int = 0, sub: int = 0,
                 direction: Direction = Direction.LTOR, post_normalize: bool = False, verify: bool = True) -> RewriteStep:
    """
    Rewrite t once with eq

    :param sig: the signature
    :param eq: the equation; with RTOL it is flipped before anything else
    :param t: ground subject
    :param occ: index of the occurrence, as numbered by count_occurrences
    :param sub: index of the substitution within that occurrence
    :param direction: LTOR or RTOL
    :param post_normalize: normalise the result
    :param verify: passed on to the matcher
    :return: the verified step
    """
    check_ground(t, 'subject')
    eq = eq.oriented(direction)
    check_equation(sig, eq)

    solutions, warning = match_subterms(sig, eq.lhs, t, verify)
    occurrences = count_occurrences(solutions)
    if not occurrences:
        raise NoMatch(NO_MATCH_WARNING if warning else 'the left-hand side does not occur in the term', warning)

    solution = _select(occurrences, occ, sub)
    instance = apply_subst(sig, solution.subst, eq.lhs)
    intermediate = plug(sig, solution.context, instance)
    if not eq_ac(sig, t, intermediate):
        logger.error('rewrite of %s could not be verified', print_term(sig, t))
        raise VerificationFailed('%s is not equal to %s' % (print_term(sig, t), print_term(sig, intermediate)))

    result = plug(sig, solution.context, apply_subst(sig, solution.subst, eq.rhs))
    if post_normalize:
        result = norm(sig, result)

    logger.info('rewrote %s to %s', print_term(sig, t), print_term(sig, result))
    return RewriteStep(t, intermediate, result, solution, instance, True)


@dataclass
class InstanceListing:
    occurrences: List[Occurrence]
    warning: bool


def list_instances(sig: Signature, eq: Equation, t: Term, direction: Direction = Direction.LTOR,
                   verify: bool = True) -> InstanceListing:
    check_ground(t, 'subject')
    eq = eq.oriented(direction)
    check_equation(sig, eq)
    solutions, warning = match_subterms(sig, eq.lhs, t, verify)
    return InstanceListing(count_occurrences(solutions), warning)


def format_instances(sig: Signature, listing: InstanceListing) -> str:
    rows = []
    for occ_index, occurrence in enumerate(listing.occurrences):
        rows.append('occurrence %d: %s' % (occ_index, print_context(sig, occurrence.context)))
        for sub_index, solution in enumerate(occurrence.solutions):
            rows.append('  substitution %d: %s' % (sub_index, print_subst(sig, solution.subst)))
    if not listing.occurrences:
        rows.append('no instances')
    if listing.warning:
        rows.append('warning: solutions whose instance is a unit were rejected')
    return '\n'.join(rows)


@dataclass
class StepOptions:
    occ: int = 0
    sub: int = 0
    direction: Direction = Direction.LTOR
    post_normalize: bool = False


@dataclass
class Transcript:
    initial: Term
    steps: List[RewriteStep] = field(default_factory=list)

    @property
    def final(self) -> Term:
        return self.steps[-1].result if self.steps else self.initial

    def records(self, sig: Signature) -> List[Dict[str, object]]:
        return [step.record(sig) for step in self.steps]


def chain(sig: Signature, steps: Sequence[Tuple[Equation, StepOptions]], t: Term, verify: bool = True) -> Transcript:
    """Apply the steps in turn, each to the result of the previous one"""
    transcript = Transcript(t)
    for index, (eq, options) in enumerate(steps):
        try:
            step = rewrite_step(sig, eq, transcript.final, options.occ, options.sub, options.direction,
                                options.post_normalize, verify)
        except AcrwError as e:
            raise ChainStepError(index, e) from e
        transcript.steps.append(step)
    return transcript
