"""Solution sets of one-variable equations over free groups."""
