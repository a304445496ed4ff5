"""Log and result-table formatters."""
