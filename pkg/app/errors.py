"""Exception hierarchy shared by every module of the laboratory."""
from typing import Any, Optional


class LabError(Exception):
    """Root of all input and construction errors (CLI exit code 2)."""


# Ordinals
class OrdinalError(LabError):
    pass


class OrdinalSyntaxError(OrdinalError):
    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class OrdinalDepthExceeded(OrdinalError):
    pass


# Trees
class TreeError(LabError):
    pass


class CycleDetected(TreeError):
    pass


class DanglingParent(TreeError):
    pass


class LevelMismatch(TreeError):
    pass


class DuplicateNode(TreeError):
    pass


class WeightOnInternalNode(TreeError):
    pass


class NodeNotFound(TreeError):
    pass


class MapNotTotal(TreeError):
    pass


# Sequences of equivalence relations
class SequenceError(LabError):
    pass


class NotAPartition(SequenceError):
    pass


class NotDecreasing(SequenceError):
    pass


class NotEventuallyDiscrete(SequenceError):
    pass


class NotInjective(SequenceError):
    pass


class NotAReduction(SequenceError):
    def __init__(self, level: int, witness: Any):
        super().__init__(f"not a reduction at level {level}: witness pair {witness}")
        self.level = level
        self.witness = witness


class NotSurjective(SequenceError):
    pass


class NotClassSurjective(SequenceError):
    def __init__(self, level: int, cls: Any):
        super().__init__(f"class image mismatch at level {level}: {cls}")
        self.level = level
        self.cls = cls


class NotAHomomorphism(SequenceError):
    pass


# Permutation groups
class GroupError(LabError):
    pass


class BudgetExceeded(GroupError):
    def __init__(self, budget: int):
        super().__init__(f"closure exceeds the element budget of {budget}")
        self.budget = budget


class NotASubgroup(GroupError):
    def __init__(self, index: Optional[int] = None, message: str = ""):
        where = f" at chain level {index}" if index is not None else ""
        super().__init__(message or f"not a subgroup of the previous level{where}")
        self.index = index


class ChainNotTrivialAtEnd(GroupError):
    pass


class IndexOutOfRange(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NoInterleaving(GroupError):
    pass


class InvalidAction(GroupError):
    pass


class InvalidPermutation(GroupError):
    pass


# Symbolic expressions
class ExpressionError(LabError):
    pass


class WreathOperandUnsupported(ExpressionError):
    pass


class LimitHypothesisFails(ExpressionError):
    pass


class DepthBudgetExceeded(ExpressionError):
    pass


# Spec files
class SpecError(LabError):
    pass


class DslSyntaxError(SpecError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownName(SpecError):
    pass


class DuplicateName(SpecError):
    pass


class ValidationError(SpecError):
    pass


class EmbeddingCheckFailed(LabError):
    """A constructed tree map failed its own verification."""
