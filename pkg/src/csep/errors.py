"""Exception hierarchy shared by every csep module."""


class CsepError(Exception):
    """Base class for all csep errors."""


class ContractViolation(CsepError, ValueError):
    """A caller broke an operation's precondition."""


class ArityError(CsepError, ValueError):
    """A symbol was used with two different arities in one problem."""


class OccursCheckError(CsepError, ValueError):
    """A binding x -> t where t contains x."""


class ResourceLimit(CsepError):
    """A configured enumeration or search cap was exceeded."""


class ExtensionImpossible(CsepError):
    """The pending boundary literal has no complementary partner in the offered clause."""


class ExtensionRejected(CsepError):
    """The extension unified but broke a boundary constraint afterwards."""


class SoundnessError(CsepError, AssertionError):
    """Internal invariant failure; the result must not be emitted."""


class ParseError(CsepError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class UnsupportedFeature(ParseError):
    """Input uses a construct outside the supported TPTP CNF subset."""
