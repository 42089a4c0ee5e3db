"""Formula trees, parser, printer, fragment labels and abbreviations."""
