"""Runtime switches."""

import os

# When set, constructions that skip validation for speed re-validate their
# output with the full axiom check.
DEBUG = bool(os.environ.get("CELLCX_DEBUG"))


def set_debug(flag):
    global DEBUG
    DEBUG = bool(flag)
