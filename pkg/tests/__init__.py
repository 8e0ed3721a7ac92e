# =============================================================================
# Apery Congruences - Tests Package
# =============================================================================
#   - unit/: one file per library module, oracles and property tests
#   - integration/: sweeps, resume and the command line end to end
# =============================================================================
