"""Exception hierarchy shared by every module of the package."""


class CharMorphError(Exception):
    """Base class for all library errors."""


class MixedFields(CharMorphError, TypeError):
    """Operands live over different fields."""


class DivisionByZero(CharMorphError, ZeroDivisionError):
    pass


class NoSuchRoot(CharMorphError, ValueError):
    """The field has no primitive root of unity of the requested order."""


class DimensionMismatch(CharMorphError, ValueError):
    pass


class ParseError(CharMorphError, ValueError):
    def __init__(self, message, line=None, position=None):
        self.line = line
        self.position = position
        where = ""
        if line is not None:
            where = f"line {line}"
            if position is not None:
                where += f", position {position}"
            where += ": "
        super().__init__(where + message)


class FieldMismatch(ParseError):
    """A scalar is well formed but does not belong to the declared field."""


class CharacteristicTooSmall(CharMorphError, ValueError):
    pass


class NTooSmall(CharMorphError, ValueError):
    pass


class BadParams(CharMorphError, ValueError):
    pass


class SearchSpaceTooLarge(CharMorphError, ValueError):
    pass


class NoSuchMode(CharMorphError, ValueError):
    pass
