"""Linear inequalities over the probability simplex, extraction and synthesis."""
