"""Exception types shared across the package."""


class PanopticonError(Exception):
    """Base class for every error raised by this package."""


class MachineError(PanopticonError, ValueError):
    """A machine description violates a structural invariant."""


class MachineSyntaxError(MachineError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DuplicateRule(MachineError):
    def __init__(self, state: str, symbol: str):
        self.state = state
        self.symbol = symbol
        super().__init__(f"duplicate rule for ({state}, {symbol})")


class UndeclaredIdentifier(MachineError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"undeclared identifier {name!r}")


class PanFinalOverlap(MachineError):
    def __init__(self, state: str):
        self.state = state
        super().__init__(f"state {state!r} is both a pan state and a final state")


class PanWritesTape(MachineError):
    def __init__(self, state: str, symbol: str):
        self.state = state
        self.symbol = symbol
        super().__init__(f"pan state {state!r} rewrites symbol {symbol!r}")


class AlphabetError(MachineError):
    pass


class FinalStateHasRules(MachineError):
    def __init__(self, state: str):
        self.state = state
        super().__init__(f"final state {state!r} has outgoing rules")


class MalformedEncoding(PanopticonError, ValueError):
    def __init__(self, offset: int, message: str = "malformed encoding"):
        self.offset = offset
        super().__init__(f"{message} at bit offset {offset}")


class InputAlphabetViolation(PanopticonError, ValueError):
    def __init__(self, position: int, symbol: str = ""):
        self.position = position
        self.symbol = symbol
        super().__init__(f"input symbol {symbol!r} at position {position} is not in the input alphabet")


class UnknownName(PanopticonError, KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"unknown zoo entry {self.name!r}"
