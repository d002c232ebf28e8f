"""
Commands module for dtors.

This module exports the runner behind each command-line subcommand.
"""

from commands.order_command import run_order
from commands.sweep_command import run_sweep
from commands.certificate_command import run_certificate
from commands.lemma_audit_command import run_lemma_audit

__all__ = [
    "run_order",
    "run_sweep",
    "run_certificate",
    "run_lemma_audit",
]
