# =============================================================================
# Apery Congruences - Unit Tests Package
# =============================================================================
