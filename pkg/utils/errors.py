class Error(Exception):
    """Base class for exceptions"""
    def __init__(self, message):
        super().__init__(message)
        self.message = message


class ValidationError(Error):
    """Invalid input: a document, a table, a relation or a parameter."""
    pass


class AlgebraFormatError(ValidationError):
    pass


class ArityError(ValidationError):
    pass


class PreconditionError(ValidationError):
    pass


class NotNilpotentError(PreconditionError):
    pass


class BudgetExceededError(Error):
    def __init__(self, message, reached: int = 0):
        """
        A closure or enumeration outgrew its budget. The result is incomplete
        and must not be used as if it were exact.

        Args:
            message: description of the computation that overflowed
            reached: number of members generated before stopping
        """
        super().__init__(f'incomplete closure: {message}')
        self.reached = reached


class NotFoundError(Error):
    pass


class SupernilpotenceCapError(Error):
    pass


class VerificationError(Error):
    pass
