"""Exception hierarchy shared by all modules."""


class GraphProductError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(GraphProductError, ValueError):
    pass


class MalformedTable(InvalidInput):
    pass


class NoIdentity(InvalidInput):
    pass


class NoInverse(InvalidInput):
    pass


class NonAssociative(InvalidInput):
    def __init__(self, witness):
        self.witness = witness
        g, h, k = witness
        super().__init__(f"table is not associative: ({g}*{h})*{k} != {g}*({h}*{k})")


class GroupMismatch(InvalidInput):
    pass


class LoopEdge(InvalidInput):
    pass


class DuplicateEdge(InvalidInput):
    pass


class UnknownVertex(InvalidInput, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class TrivialVertexGroup(InvalidInput):
    pass


class VertexGroupMismatch(InvalidInput):
    pass


class GraphMismatch(InvalidInput):
    pass


class ActionInvalid(InvalidInput):
    pass


class ActionMismatch(InvalidInput):
    pass


class NotInStabilizer(InvalidInput):
    pass


class NotInLink(InvalidInput):
    pass


class Unreachable(GraphProductError):
    pass


class CapExceeded(GraphProductError):
    """Raised when a hard budget is hit and no partial answer makes sense."""
