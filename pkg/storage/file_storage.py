"""
Node file storage

Writes the node contents of an encoded file to a directory, one text file per
node plus a manifest, and reads any subset of them back for decoding.

Layout:
    manifest.yaml     code, parameters, stripe count, byte length and sha256
    node_<j>.txt      one line per stripe: alpha symbols as '.'-joined digits
"""

import hashlib
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import yaml

from coding.array_codes import ArrayCode, ac_by_name
from coding.concat import file_from_bytes, file_to_bytes, store
from coding.errors import ParameterError
from coding.ff import get_field, vector_from_text, vector_to_text
from models.params import SystemParams

logger = logging.getLogger(__name__)

MANIFEST = 'manifest.yaml'


class NodeStore:
    """Node files for one encoded file"""

    def __init__(self, base_path: str):
        """
        Initialize node storage

        Args:
            base_path: Directory holding the manifest and node files
        """
        self.base_path = Path(base_path)

    def _node_path(self, node: int) -> Path:
        return self.base_path / f'node_{node}.txt'

    def _get_hash(self, data: bytes) -> str:
        return hashlib.sha256(data).hexdigest()

    def save_file(self, data: bytes, params: SystemParams, code: ArrayCode) -> Dict[str, Any]:
        """
        Encode bytes and write every node file

        Args:
            data: File contents
            params: Storage parameters
            code: Inner array code matching params

        Returns:
            The manifest that was written
        """
        self.base_path.mkdir(parents=True, exist_ok=True)
        stripes = file_from_bytes(params, data)
        contents = [store(params, stripe, code) for stripe in stripes]

        for j in range(1, params.n + 1):
            lines = [vector_to_text(stripe_contents[j - 1]) for stripe_contents in contents]
            self._node_path(j).write_text('\n'.join(lines) + '\n', encoding='utf-8')

        manifest = {
            'code': code.name.split('_')[0],
            'q': params.q,
            'params': params.model_dump(mode='json'),
            'stripes': len(stripes),
            'length': len(data),
            'sha256': self._get_hash(data),
        }
        (self.base_path / MANIFEST).write_text(
            yaml.safe_dump(manifest, sort_keys=False), encoding='utf-8'
        )
        logger.info(f"Stored {len(data)} bytes as {len(stripes)} stripes on {params.n} nodes "
                    f"in {self.base_path}")
        return manifest

    def load_manifest(self) -> Dict[str, Any]:
        path = self.base_path / MANIFEST
        if not path.exists():
            raise ParameterError(f"no manifest in {self.base_path}")
        return yaml.safe_load(path.read_text(encoding='utf-8'))

    def load_system(self):
        """(params, code) recorded in the manifest"""
        manifest = self.load_manifest()
        params = SystemParams.model_validate(manifest['params'])
        code = ac_by_name(manifest['code'], manifest['q'])
        return params, code

    def available_nodes(self) -> List[int]:
        return sorted(
            int(p.stem.split('_')[1]) for p in self.base_path.glob('node_*.txt')
        )

    def load_nodes(self, params: SystemParams, nodes: Sequence[int]) -> List[Dict[int, Any]]:
        """Per stripe, {node: content} for the requested nodes"""
        GF = get_field(params.q, params.N).ext
        manifest = self.load_manifest()
        stripes: List[Dict[int, Any]] = [{} for _ in range(manifest['stripes'])]
        for j in nodes:
            path = self._node_path(j)
            if not path.exists():
                raise ParameterError(f"node file {path.name} not found")
            lines = path.read_text(encoding='utf-8').splitlines()
            if len(lines) != len(stripes):
                raise ParameterError(f"{path.name} holds {len(lines)} stripes, expected {len(stripes)}")
            for s, line in enumerate(lines):
                content = vector_from_text(GF, line)
                if content.size != params.alpha:
                    raise ParameterError(f"{path.name} stripe {s} has {content.size} symbols")
                stripes[s][j] = content
        logger.debug(f"Loaded nodes {sorted(nodes)} from {self.base_path}")
        return stripes

    def write_node(self, params: SystemParams, node: int, stripe_contents: Sequence[Any]):
        """Overwrite one node file"""
        lines = [vector_to_text(c) for c in stripe_contents]
        self._node_path(node).write_text('\n'.join(lines) + '\n', encoding='utf-8')

    def verify_bytes(self, data: bytes) -> bool:
        """Whether data matches the stored length and sha256"""
        manifest = self.load_manifest()
        return len(data) == manifest['length'] and self._get_hash(data) == manifest['sha256']

    def delete(self, node: Optional[int] = None) -> bool:
        """Remove one node file, or the whole directory when node is None"""
        if node is not None:
            path = self._node_path(node)
            if path.exists():
                path.unlink()
                logger.info(f"Deleted {path}")
                return True
            return False
        if not self.base_path.exists():
            return False
        for path in self.base_path.iterdir():
            path.unlink()
        self.base_path.rmdir()
        logger.info(f"Deleted {self.base_path}")
        return True


def decode_bytes(params: SystemParams, stripes) -> bytes:
    """Bytes from recovered stripes"""
    return file_to_bytes(params, stripes)
