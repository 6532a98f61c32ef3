"""Module entry point: python -m sinegap <command> ..."""

from .cli import console_main

console_main()
