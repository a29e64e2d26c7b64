"""Exception hierarchy.

Everything raised deliberately by the package derives from
:class:`ScissorsError`.  Errors meaning "the input pair cannot be
processed" (unequal areas, non-convex input, a stuck reduction, ...)
derive from :class:`InfeasibleInput`; the command line maps those to
exit code 3.
"""


class ScissorsError(Exception):
    pass


class InfeasibleInput(ScissorsError):
    pass


class DegenerateInput(InfeasibleInput):
    pass


class SingularMap(InfeasibleInput):
    pass


class NotConvex(InfeasibleInput):
    pass


class TooFewVertices(InfeasibleInput):
    pass


class StepInfeasible(InfeasibleInput):
    pass


class ReductionStuck(InfeasibleInput):
    pass


class AreaMismatch(InfeasibleInput):
    pass


class AreaSumMismatch(InfeasibleInput):
    pass


class TotalAreaMismatch(InfeasibleInput):
    pass


class NonPositiveTarget(InfeasibleInput):
    pass


class MassMismatch(InfeasibleInput):
    pass


class NotConvexSupport(InfeasibleInput):
    pass


class DomainMismatch(ScissorsError):
    pass


class OutsideDomain(ScissorsError):
    pass


# 3D meshes

class OpenMesh(InfeasibleInput):
    pass


class InconsistentOrientation(InfeasibleInput):
    pass


# Grothendieck ring calculator

class DimensionMismatch(ScissorsError):
    pass


class DuplicateRule(ScissorsError):
    pass


class NonTermination(ScissorsError):
    pass


class UnassignedAtom(ScissorsError):
    pass


class InconsistentAssignment(ScissorsError):
    def __init__(self, message, relation=None):
        super().__init__(message)
        self.relation = relation


class ParseError(ScissorsError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
