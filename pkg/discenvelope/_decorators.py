# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

from .errors import ScenarioError


def collecterrors(func):
    def func_wrapper(inst, attr, value):
        try:
            func(inst, attr, value)
        except ScenarioError as e:
            inst.errors.append(e)

    return func_wrapper
