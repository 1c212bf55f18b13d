"""Exception types shared across the package."""


class EquicolorError(Exception):
    """Base class for all library errors."""


class ParseError(EquicolorError):
    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class InvalidEdge(ParseError):
    pass


class UnknownVertex(EquicolorError):
    pass


class EmptyGraph(EquicolorError):
    pass


class PureCycleComponent(EquicolorError):
    """Raised when a component has no branch vertex; carries the component."""

    def __init__(self, component):
        self.component = frozenset(component)
        super().__init__(f"component {sorted(component)} is a pure cycle")


class NotBranchVertex(EquicolorError):
    pass


class ThreadCycle(EquicolorError):
    pass


class NotOneThreadPair(EquicolorError):
    pass


class InvalidColorCount(EquicolorError):
    pass


class IncompleteColoring(EquicolorError):
    pass


class VertexCollision(EquicolorError):
    pass


class ColorCountMismatch(EquicolorError):
    pass


class PreconditionViolated(EquicolorError):
    pass


class ExceptionCase(EquicolorError):
    """The one excluded pattern of the 4/5-thread extension (m=4, t=5, x in {y2, y4})."""


class ShapeMismatch(EquicolorError):
    pass


class HypothesisViolation(EquicolorError):
    pass


class NoConfigFound(EquicolorError):
    """Internal error: the reduction engine must always find a configuration."""


class ExtensionFailed(EquicolorError):
    """Internal error: a proof-mandated extension step produced an invalid coloring."""


class Infeasible(EquicolorError):
    pass


class TooLarge(EquicolorError):
    pass


class UnknownFamily(EquicolorError):
    pass


class GenerationFailed(EquicolorError):
    pass
