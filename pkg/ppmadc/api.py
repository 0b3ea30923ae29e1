# -*- coding: utf-8 -*-

from abc import ABCMeta, abstractmethod

from .tools import get_parameters


CONDITIONS = []


class ConditionMeta(ABCMeta):
    def __new__(cls, name, bases, namespace, **kwargs):
        instance = super().__new__(cls, name, bases, namespace, **kwargs)
        cls.__register_condition(instance)
        return instance

    @classmethod
    def __register_condition(cls, condition):
        params = get_parameters(condition.check)

        if len(params) <= 1 or condition.code is None:
            return condition

        if all(type(registered) is not condition
               for registered in CONDITIONS):
            CONDITIONS.append(condition())

        return condition


class BaseCondition(metaclass=ConditionMeta):
    """
    Encapsulates one of the defining conditions of a placement delivery
    array.
    """
    code = None

    @abstractmethod
    def check(self):
        """
        Checks an array against the condition.

        This method is dynamically called by :func:`collect_violations`.
        Possible arguments are all attributes of class:: ArrayView, looked
        up by parameter name.

        This method must yield a ConditionViolation for each offending
        witness, in row-major order of the witnesses.
        """
