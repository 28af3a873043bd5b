# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers


#####
# Scenario Validation Exceptions
#####


class InvalidScenarioError(Exception):
    def __init__(self, errors):
        super(InvalidScenarioError, self).__init__(
            "Validation errors were found.")
        self.errors = errors

    def __str__(self):
        output = "\n"
        for e in self.errors:
            output += "\t{0}: {1}\n".format(e.__class__.__name__, e)
        # Strip last newline
        return output[:-1]


class ScenarioError(Exception):
    pass


class InvalidDomainSpecError(ScenarioError):
    pass


class InvalidObjectiveSpecError(ScenarioError):
    pass


class InvalidEngineSpecError(ScenarioError):
    def __init__(self, message, section):
        super(InvalidEngineSpecError, self).__init__(message)
        self.section = section


#####
# Loader Exceptions
#####

class LoadScenarioError(Exception):
    pass


#####
# Engine Exceptions
#####

class BaseDiscError(Exception):
    pass


class DimensionMismatchError(BaseDiscError):
    pass


class DomainError(BaseDiscError):
    pass


class GridError(BaseDiscError):
    pass


class ExpressionError(BaseDiscError):
    pass


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, message, column):
        super(ExpressionSyntaxError, self).__init__(
            "{0} (column {1})".format(message, column))
        self.column = column


class UnknownIdentifierError(ExpressionError):
    pass


class ArityError(ExpressionError):
    pass


class IndeterminateFormError(ExpressionError):
    pass


class ExpressionDivisionError(ExpressionError):
    pass


class ObjectiveError(BaseDiscError):
    pass


class ClosureError(ObjectiveError):
    pass


class QuadratureError(BaseDiscError):
    pass


class InfeasibleDiscError(BaseDiscError):
    pass


class SearchError(BaseDiscError):
    pass


class RelaxationError(BaseDiscError):
    pass


class ThinnessQueryError(BaseDiscError):
    pass


class PshCertificationError(BaseDiscError):
    pass
