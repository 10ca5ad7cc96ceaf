"""
This module contains helpers that resolve the system named on the command line.
"""

from helpers.system_loader import SystemResolver, resolve_system

__all__ = [
    'SystemResolver',
    'resolve_system'
]
