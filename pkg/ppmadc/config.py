# -*- coding: utf-8 -*-

"""
ppmadc configuration
"""

from ppmadc.reporter import TextReporter, ColorizedTextReporter

# Connectivity model: "connect" or "cyclic"
MODEL = "connect"

# Parameter points. Each value is an int, a range "2..5" or a list "3,5,7".
# K = None builds the unextended PDAs (construct, sweep); ALPHA = "all"
# ranges over every admissible alpha.
# F is used by the connect model, Q by the cyclic model.
K = None
F = "3"
Q = "6"
ALPHA = "2"

# Files per batch
ETA = 1

# Bit-length of an intermediate value; None means 8*(K-1)
BETA = None

# Bit-length of a reducer output; None means BETA
B_OUT = None

# Bit-length of an input file (recorded only, files are never materialized)
D_FILE = 64

# Rounds per parameter point and the base seed every point derives from
TRIALS = 1
SEED = 2024

# Report format ("csv" or "json") and path; None writes to stdout.
# Relative paths are resolved against $PPMADC_OUTPUT_DIR when it is set.
FORMAT = "csv"
OUTPUT = None

# Quantile of the chi-square threshold used by the sampling privacy audit
QUANTILE = 0.999

# Largest Q audited by exact enumeration
EXACT_LIMIT = 6

# Largest number of Q! cells the sampling audit may bin
MAX_CELLS = 1000000

# Q values audited directly, bypassing the parameter points; None derives
# them from MODEL, F or Q and ALPHA
FUNCTIONS = None

# Parallel workers for sweeps (1 runs in-process)
WORKERS = 1

# PDA conditions skipped by "verify" (A1, A2, A3)
DISABLE = []

# Reporter to be used to display results
# Available reporters are:
#   - TextReporter
#   - ColorizedTextReporter
REPORTER = ColorizedTextReporter
