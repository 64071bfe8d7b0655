"""
Command-line interface for rankstore

Subcommands: plan, encode, decode, run, lrc.
"""

from .commands import cmd_plan, cmd_encode, cmd_decode, cmd_run, cmd_lrc
from .main import build_parser, main

__all__ = [
    'cmd_plan',
    'cmd_encode',
    'cmd_decode',
    'cmd_run',
    'cmd_lrc',
    'build_parser',
    'main'
]
