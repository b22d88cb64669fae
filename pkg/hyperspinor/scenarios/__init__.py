#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

"""Verification scenarios, one per acceptance criterion. Scenarios are
selected by id in the configuration and on the command line; run
``hyperspinor --helpscenarios`` for their settings."""
