"""Exception types raised across the package."""


class SiegridError(Exception):
    """Base class for all package errors."""


class UnassignedSymbolError(SiegridError, KeyError):
    def __init__(self, symbol):
        super().__init__(symbol)
        self.symbol = symbol

    def __str__(self):
        return f"no value assigned to symbol {self.symbol!r}"


class ParseError(SiegridError, ValueError):
    def __init__(self, message, position=None):
        where = "" if position is None else f" at position {position}"
        super().__init__(f"{message}{where}")
        self.position = position


class UnknownAtomError(ParseError):
    pass


class WindowOverflowError(SiegridError, ValueError):
    pass


class WindowMismatchError(SiegridError, ValueError):
    pass


class EmptyKernelError(SiegridError, ValueError):
    pass


class DivisibilityError(SiegridError, ValueError):
    pass


class RegionError(SiegridError, ValueError):
    """Vertex outside the validity region of a grid."""


class SymbolicIndexError(SiegridError, TypeError):
    """An operation needs a concrete integer index but got a symbolic one."""


class MissingArrowError(SiegridError, KeyError):
    pass


class DegenerateArrowError(SiegridError, ZeroDivisionError):
    pass
