# -*- coding: utf-8 -*-

import sys
from abc import ABC, abstractmethod
from collections import namedtuple
from enum import Enum


class Category(Enum):
    RESULT = 1
    WARNING = 2
    VIOLATION = 3
    FAILURE = 4
    FATAL = 5
    SEPARATOR = 6


FAILING = (Category.VIOLATION, Category.FAILURE, Category.FATAL)


Message = namedtuple(
    "Message", ["category", "code", "location", "message"])


class BaseReporter(ABC):
    """Messages are written to ``stream``, stderr unless given."""
    def __init__(self, stream=None):
        self.stream = stream if stream else sys.stderr
        self.target = None
        self.messages = []
        self.found_issues = {
            Category.RESULT: 0,
            Category.WARNING: 0,
            Category.VIOLATION: 0,
            Category.FAILURE: 0,
            Category.FATAL: 0
        }

    def start_target(self, target):
        self.target = target
        self.messages = []

    def finalize_target(self):
        if self.messages:
            self.handle_new_target()

            for message in self.messages:
                handle = getattr(
                    self, "handle_" + message.category.name.lower())
                handle(message)

        self.target = None

    @abstractmethod
    def finalize(self):
        pass

    def report(self, message):
        self.found_issues[message.category] += 1
        self.messages.append(message)

    @property
    def failed(self):
        return any(self.found_issues[category] for category in FAILING)

    @abstractmethod
    def handle_new_target(self):
        pass

    @abstractmethod
    def handle_result(self, message):
        pass

    @abstractmethod
    def handle_warning(self, message):
        pass

    @abstractmethod
    def handle_violation(self, message):
        pass

    @abstractmethod
    def handle_failure(self, message):
        pass

    @abstractmethod
    def handle_fatal(self, message):
        pass

    @property
    def max_location(self):
        return max(len(message.location) for message in self.messages)


class MemoryReporter(BaseReporter):
    """Keeps every message of the run, for tests."""
    def __init__(self, stream=None):
        super().__init__(stream)
        self.history = []

    def report(self, message):
        super().report(message)
        self.history.append(message)

    def finalize(self):
        pass

    def handle_new_target(self):
        pass

    def handle_result(self, message):
        pass

    def handle_warning(self, message):
        pass

    def handle_violation(self, message):
        pass

    def handle_failure(self, message):
        pass

    def handle_fatal(self, message):
        pass


class TextReporter(BaseReporter):
    SUMMARY = (
        (Category.RESULT, "results"),
        (Category.WARNING, "warnings"),
        (Category.VIOLATION, "condition violations"),
        (Category.FAILURE, "failures"),
        (Category.FATAL, "fatal errors"),
    )

    def _print(self, text):
        print(text, file=self.stream)

    def handle_new_target(self):
        self._print(f"***** {self.target}")

    def finalize(self):
        self._print(20 * "-")
        self._print("Result:")
        for category, name in self.SUMMARY:
            self._print(f"{self.found_issues[category]} {name}")

    def handle_result(self, message):
        self.handle_message(message)

    def handle_warning(self, message):
        self.handle_message(message)

    def handle_violation(self, message):
        self.handle_message(message)

    def handle_failure(self, message):
        self.handle_message(message)

    def handle_fatal(self, message):
        self.handle_message(message)

    def handle_message(self, message):
        self._print(
            f"{message.location:<{self.max_location}}: "
            f"{message.message} [{message.code}]")


class ColorizedTextReporter(TextReporter):
    PREFIX = "\033["
    END = "m"
    RESET = PREFIX + "0" + END

    STYLES = {
        "bold": "1",
        "italic": "3",
        "underline": "4",
        "inverse": "7"
    }

    COLORS = {
        "black": "30",
        "red": "31",
        "green": "32",
        "yellow": "33",
        "magenta": "35"
    }

    RESULT = ("green", None)
    WARNING = ("magenta", None)
    VIOLATION = ("red", ["bold"])
    FAILURE = ("red", ["bold"])
    FATAL = ("red", ["inverse", "bold"])
    SEPARATOR = ("yellow", ["inverse"])

    def __init__(self, stream=None):
        from colorama import init
        init()
        super().__init__(stream)

    def handle_new_target(self):
        self._print(self._colorize(f"***** {self.target}", self.SEPARATOR))

    def handle_result(self, message):
        self.handle_message(message, self.RESULT)

    def handle_warning(self, message):
        self.handle_message(message, self.WARNING)

    def handle_violation(self, message):
        self.handle_message(message, self.VIOLATION)

    def handle_failure(self, message):
        self.handle_message(message, self.FAILURE)

    def handle_fatal(self, message):
        self.handle_message(message, self.FATAL)

    def handle_message(self, message, style):
        self._print(
            f"{message.location:<{self.max_location}}: "
            f"{self._colorize(message.message, style)} [{message.code}]")

    @classmethod
    def _colorize(cls, message, style):
        return cls._get_ansi_code(*style) + message + cls.RESET

    @classmethod
    def _get_ansi_code(cls, foreground=None, styles=None):
        code = []

        if foreground:
            code.append(cls.COLORS[foreground])
        if styles:
            for style in styles:
                code.append(cls.STYLES[style])

        if code:
            return cls.PREFIX + ";".join(code) + cls.END
        return ""
