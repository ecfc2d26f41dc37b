"""python -m ssps dispatches to the CLI."""

from .cli import entry

entry()
