# Exceptions raised by the rewriting engine


class AcrwError(Exception):
    """Base class for all errors raised by the engine"""
    pass


class ConfigError(AcrwError):
    """Raised when a configuration file named on the command line cannot be read"""
    pass


class SignatureError(AcrwError):
    """Raised when a signature file cannot be read"""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = 'line %d: %s' % (line, message)
        super().__init__(message)


class DuplicateName(AcrwError):
    """Raised when a name is declared twice in one signature"""
    pass


class OpAlreadyHasUnit(AcrwError):
    """Raised when a second unit is declared for an operation"""
    pass


class EmptyOpSet(AcrwError):
    """Raised when a unit is declared for no operation"""
    pass


class UnknownIdentifier(AcrwError):
    """Raised when a name does not resolve in the signature"""
    pass


class ArityMismatch(AcrwError):
    """Raised when a symbol is applied to the wrong number of arguments"""
    pass


class UnboundVariable(AcrwError):
    """Raised when a substitution does not bind a variable of the pattern"""
    pass


class SubjectNotGround(AcrwError):
    """Raised when a term that must be ground contains variables"""
    pass


class InvalidContext(AcrwError):
    """Raised when a context does not contain exactly one hole"""
    pass


class InternalSizeZero(AcrwError):
    """Raised when a smart constructor is given no items. This is a programming error."""
    pass


class MissingInterpretation(AcrwError):
    """Raised when an interpretation has no value for a symbol, operation or unit"""
    pass


class TrivialPattern(AcrwError):
    """Raised when a pattern headed by a bare variable is used for subterm matching"""
    pass


class UnsoundSolution(AcrwError):
    """Raised when the trusted checker rejects a solution proposed by the matcher"""
    pass


class NoMatch(AcrwError):
    """Raised when a rewrite finds no occurrence of the left-hand side"""

    def __init__(self, message, warning=False):
        self.warning = warning
        super().__init__(message)


class SelectionOutOfRange(AcrwError):
    """Raised when the requested occurrence or substitution does not exist"""
    pass


class IllFormedEquation(AcrwError):
    """Raised when an equation cannot be used for rewriting in the requested direction"""
    pass


class VerificationFailed(AcrwError):
    """Raised when the trusted checker cannot relate the original term and the rewrite intermediate"""
    pass


class ChainStepError(AcrwError):
    """Raised when one step of a rewrite chain fails"""

    def __init__(self, index, cause):
        self.index = index
        self.cause = cause
        super().__init__('step %d: %s' % (index, cause))


class TermParseError(AcrwError):
    """Raised when term, pattern or equation text is not well formed"""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = '%s (line %d, column %d)' % (message, line, column)
        super().__init__(message)


class MixedInfix(TermParseError):
    """Raised when distinct infix operators are chained without parentheses"""
    pass
