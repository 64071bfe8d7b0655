"""
Storage package for node files of encoded data
"""

from .file_storage import NodeStore, decode_bytes

__all__ = [
    'NodeStore',
    'decode_bytes'
]
