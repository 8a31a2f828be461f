"""Shared record of acceptance criterion outcomes (criterion -> (ok, seconds, detail))."""

RESULTS = {}
