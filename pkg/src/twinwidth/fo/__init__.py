"""First-order model checking along contraction sequences."""
