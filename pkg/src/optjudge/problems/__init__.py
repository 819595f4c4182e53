"""The six contest problems: formats, judges, exact oracles, and generators."""
