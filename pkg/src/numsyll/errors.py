"""Exception types shared across the package."""


class SyllogisticError(Exception):
    """Base class for all errors raised by numsyll."""


class BoundError(SyllogisticError, ValueError):
    """A numerical subscript lies outside the range allowed by the language."""


class InputError(SyllogisticError, ValueError):
    """A precondition on the arguments of an operation does not hold."""


class ParseError(SyllogisticError, ValueError):
    """Malformed text input.

    ``line`` and ``column`` are 1-based and may be ``None`` when unknown.
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        elif column is not None:
            loc = f"column {column}: "
        super().__init__(loc + message)


class DocumentParseError(ParseError):
    """One or more lines of a multi-line document failed to parse."""

    def __init__(self, errors):
        self.errors = list(errors)
        first = self.errors[0]
        extra = f" (and {len(self.errors) - 1} more)" if len(self.errors) > 1 else ""
        super().__init__(first.message + extra, first.line, first.column)


class ResourceLimitError(SyllogisticError):
    """A search exceeded its configured node budget."""

    def __init__(self, message, nodes=None):
        self.nodes = nodes
        super().__init__(message)


class UnsoundRuleError(SyllogisticError):
    """A rule expected to be sound has a countermodel."""

    def __init__(self, rule, countermodel):
        self.rule = rule
        self.countermodel = countermodel
        super().__init__(f"rule {rule.name!r} is unsound")
