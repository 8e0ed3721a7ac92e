# =============================================================================
# Apery Congruences - Integration Tests Package
# =============================================================================
# Full sweeps through the harness and the CLI, writing into tmp_path.
# =============================================================================
