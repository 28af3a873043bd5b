# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

import numpy as np
import pytest

from discenvelope.errors import (
    ArityError, DimensionMismatchError, ExpressionDivisionError,
    ExpressionError, ExpressionSyntaxError, IndeterminateFormError,
    UnknownIdentifierError
)
from discenvelope.expressions import (
    Call, Const, Neg, Pow, eval_expr, parse_expr, to_text, tokenize
)


def test_constants():
    assert parse_expr("2") == Const(2.0)
    assert parse_expr("-1") == Const(-1.0)
    assert parse_expr("1.5e-3") == Const(1.5e-3)
    assert eval_expr(parse_expr("inf"), [0]) == np.inf


def test_max_node():
    e = parse_expr("max(-1, log(abs(z1))/0.693147)")
    assert isinstance(e, Call)
    assert e.func == "max"
    assert len(e.args) == 2


def test_power_binds_tighter_than_minus():
    e = parse_expr("-re(z1)^2")
    assert isinstance(e, Neg)
    assert isinstance(e.operand, Pow)
    assert eval_expr(e, [2]) == -4.0


@pytest.mark.parametrize("text,point,expected", [
    ("abs2(z1)", [0.6 + 0.8j], 1.0),
    ("re(z1)^2 - im(z1)^2", [1 + 2j], -3.0),
    ("abs(z1)", [3 - 4j], 5.0),
    ("2*re(z1) + 3*im(z2)", [1, 2j], 8.0),
    ("re(z1)^-2", [2], 0.25),
    ("exp(0)", [0], 1.0),
    ("min(re(z1), im(z1), 0.5)", [1 + 2j], 0.5),
    ("(1 + 2) * 3 - 4 / 2", [0], 7.0),
])
def test_eval(text, point, expected):
    assert eval_expr(parse_expr(text), point) == pytest.approx(expected)


def test_log_of_zero():
    assert eval_expr(parse_expr("log(abs(z1))"), [0]) == -np.inf


def test_minus_infinity_absorbed_by_max():
    e = parse_expr("max(log(abs(z1)), -1)")
    assert eval_expr(e, [0]) == -1.0
    e = parse_expr("log(abs(z1)) + 2")
    assert eval_expr(e, [0]) == -np.inf


def test_vectorized():
    e = parse_expr("abs2(z1)")
    values = eval_expr(e, [[1], [2j], [1 + 1j]])
    assert isinstance(values, np.ndarray)
    assert np.allclose(values, [1.0, 4.0, 2.0])


def test_to_text_reparses():
    e = parse_expr("-re(z1)^2 + 3*im(z1) - max(abs(z1), 0.1)")
    again = parse_expr(to_text(e))
    for p in ([0.3 + 0.1j], [-0.7j], [2]):
        assert eval_expr(again, p) == pytest.approx(eval_expr(e, p))


def test_tokenize_columns():
    tokens = tokenize("re(z1) + 2")
    assert [t.column for t in tokens] == [1, 3, 4, 6, 8, 10, 11]
    assert tokens[-1].kind == "end"


#####
# Errors
#####

def test_syntax_error_column():
    with pytest.raises(ExpressionSyntaxError) as e:
        parse_expr("2 +* z1")
    assert e.value.column == 4
    assert str(e.value) == "Unexpected '*' (column 4)"


@pytest.mark.parametrize("text", [
    "", "   ", "z1", "log(z1)", "re(z1", "re(w1)", "2 3", "re(z1)^1.5",
    "#",
])
def test_syntax_errors(text):
    with pytest.raises(ExpressionSyntaxError):
        parse_expr(text)


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as e:
        parse_expr("sin(re(z1))")
    assert "sin" in str(e.value)


@pytest.mark.parametrize("text", [
    "max(re(z1))", "exp(re(z1), 1)", "re(z1, z2)", "log()",
])
def test_arity(text):
    with pytest.raises((ArityError, ExpressionSyntaxError)):
        parse_expr(text)


def test_arity_messages():
    with pytest.raises(ArityError) as e:
        parse_expr("max(re(z1))")
    assert e.value.args == ("max() takes at least 2 argument(s), got 1",)


def test_indeterminate_forms():
    with pytest.raises(IndeterminateFormError):
        eval_expr(parse_expr("inf - inf"), [0])
    with pytest.raises(IndeterminateFormError):
        eval_expr(parse_expr("0 * log(abs(z1))"), [0])
    with pytest.raises(IndeterminateFormError):
        eval_expr(parse_expr("log(re(z1))"), [-1])


def test_division_by_zero():
    with pytest.raises(ExpressionDivisionError):
        eval_expr(parse_expr("1/re(z1)"), [0])
    with pytest.raises(ExpressionDivisionError):
        eval_expr(parse_expr("abs(z1)^-1"), [0])


def test_variable_beyond_dimension():
    with pytest.raises(DimensionMismatchError):
        eval_expr(parse_expr("re(z2)"), [1])


def test_text_too_long():
    with pytest.raises(ExpressionError):
        parse_expr("1+" * 40000 + "1")


def test_max_index():
    assert parse_expr("2").max_index() == 0
    assert parse_expr("abs2(z1) + re(z2)").max_index() == 2
