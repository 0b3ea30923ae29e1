#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import sys

from ppmadc import Experiment
from ppmadc.errors import ConfigError, ParamError, PpmadcError


def main():
    try:
        experiment = Experiment()
        return experiment.run()
    except (ConfigError, ParamError) as ex:
        print(f"Error: {str(ex)}", file=sys.stderr)
        return 2
    except PpmadcError as ex:
        print(f"Error: {str(ex)}", file=sys.stderr)
        return 1

if __name__ == "__main__":
    sys.exit(main())
