"""Exception hierarchy shared by every module of the toolkit."""


class TtransError(Exception):
    """Base class for all toolkit errors."""


class GraphParseError(TtransError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StructureError(TtransError):
    """The input graph does not have the shape an operation requires."""


class PartitionStructureError(TtransError):
    """A partition does not cover the vertex set exactly once with non-empty parts."""


class InfeasibleError(TtransError):
    """The requested invariant is undefined for the input (e.g. an isolated vertex)."""


class CeilingExceededError(TtransError):
    pass


class NotSplitError(TtransError):
    def __init__(self, witness_kind, witness):
        self.witness_kind = witness_kind
        self.witness = tuple(witness)
        super().__init__(f"graph is not split: induced {witness_kind} on {list(self.witness)}")


class CapExceededError(TtransError):
    pass


class ClaimViolation(TtransError):
    def __init__(self, vertex, part_index):
        self.vertex = vertex
        self.part_index = part_index
        super().__init__(
            f"claim-violation: {vertex} sits in part {part_index} > 3"
        )
