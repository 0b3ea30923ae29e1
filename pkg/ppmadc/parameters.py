# -*- coding: utf-8 -*-

import os
from math import comb

from .errors import ConfigError


OUTPUT_DIR_VARIABLE = "PPMADC_OUTPUT_DIR"

MODELS = ("connect", "cyclic")

RANDOMIZED = ("simulate", "audit")


def parse_range(value):
    """
    "4" -> [4], "2..5" -> [2, 3, 4, 5], "3,5,7" -> [3, 5, 7]. None and "all"
    stand for every admissible value and give None.
    """
    if value is None or value == "all":
        return None
    if isinstance(value, int):
        return [value]

    try:
        values = []
        for part in str(value).split(","):
            if ".." in part:
                low, high = part.split("..", 1)
                values.extend(range(int(low), int(high) + 1))
            else:
                values.append(int(part))
    except ValueError:
        raise ConfigError(f"invalid parameter range {value!r}") from None

    if not values:
        raise ConfigError(f"empty parameter range {value!r}")
    return values


def admissible_alphas(model, inner):
    if model == "connect":
        return list(range(1, inner))
    return [alpha for alpha in range(1, (inner + 1) // 2)
            if 2 * alpha < inner and (inner + alpha) % 2 == 0]


class ExperimentConfig:
    """
    Configuration module attributes (lower-cased) overridden by every
    command-line flag that was given.
    """
    def __init__(self, config, cli_args=None):
        for attr, value in config.__dict__.items():
            if not attr.startswith("_") and attr.isupper():
                setattr(self, attr.lower(), value)

        self.mode = getattr(cli_args, "command", None)
        for attr, value in (vars(cli_args) if cli_args else {}).items():
            if value is not None and attr not in ("command", "config"):
                setattr(self, attr, value)

        self._validate()

    def _validate(self):
        models = MODELS + (("both",) if self.mode == "sweep" else ())
        if self.model not in models:
            raise ConfigError(f"unknown model {self.model!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown report format {self.format!r}")
        if self.mode in RANDOMIZED and self.seed is None:
            raise ConfigError(f"a seed is required for {self.mode}")
        for name in ("k", "f", "q", "alpha", "functions"):
            parse_range(getattr(self, name, None))

    @property
    def models(self):
        return MODELS if self.model == "both" else (self.model,)

    def values(self, name):
        return parse_range(getattr(self, name, None))

    def single(self, name):
        values = self.values(name)
        if values is None:
            return None
        if len(values) != 1:
            raise ConfigError(f"{name.upper()} must be a single value")
        return values[0]

    def points(self):
        """
        (model, K, inner, alpha) parameter points in sorted order. Ranges
        silently skip inadmissible alphas; a single explicit point is kept
        as given so that its precondition failure surfaces.
        """
        ks = self.values("k") or [None]
        points = []
        for model in self.models:
            inners = self.values("f" if model == "connect" else "q")
            if inners is None:
                raise ConfigError(
                    f"{'F' if model == 'connect' else 'Q'} is required")
            alphas = self.values("alpha")
            single = len(ks) == len(inners) == 1 and alphas is not None \
                and len(alphas) == 1
            for inner in inners:
                admissible = admissible_alphas(model, inner)
                for alpha in alphas or admissible:
                    if single or alpha in admissible:
                        points.extend((model, K, inner, alpha) for K in ks)

        if not points:
            raise ConfigError("the parameter ranges contain no valid point")
        return sorted(points, key=lambda point: (
            point[0], point[1] or 0, point[2], point[3]))

    @staticmethod
    def function_count(model, inner, alpha):
        return comb(inner, alpha) if model == "connect" else inner

    @property
    def output_path(self):
        output = getattr(self, "output", None)
        if output is None:
            return None
        directory = os.environ.get(OUTPUT_DIR_VARIABLE)
        if directory and not os.path.isabs(output):
            return os.path.join(directory, output)
        return output
