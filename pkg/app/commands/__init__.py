# app/commands/__init__.py
"""Command handlers behind `python -m app.main`.

Handlers return a CommandResult and never raise for bad input: domain
exceptions are translated into the exit codes below.
"""
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_TARGET_MISSED = 3
