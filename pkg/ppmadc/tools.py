# -*- coding: utf-8 -*-

import inspect


def get_parameters(method):
    return [parameter.name
            for parameter in inspect.signature(method).parameters.values()
            if parameter.kind == parameter.POSITIONAL_OR_KEYWORD]


def run_with_view(method, view):
    """Calls ``method`` with the view attributes named by its parameters."""
    return method(*[getattr(view, parameter)
                    for parameter in get_parameters(method)
                    if parameter != "self"])
