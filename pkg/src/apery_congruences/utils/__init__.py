# =============================================================================
# Apery Congruences - Utilities Package
# =============================================================================
# Number-theoretic helpers used throughout the library.
#
# Modules:
#   - exact_arith.py: binomials, modular arithmetic, residue types
#   - primes.py: sieving, primality, x^2 + 2y^2 representations
#   - validators.py: range / list / sign parsing for the CLI and config files
# =============================================================================
