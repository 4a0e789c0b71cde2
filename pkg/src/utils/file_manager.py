"""
File Manager module for Adjust
Reads and writes graph, query, BN and report files
"""

import json
import logging
from pathlib import Path
from typing import Dict, Optional, Union

from src.config import Config
from src.errors import ParseError
from src.graphs.dag import Dag
from src.graphs.ugraph import UGraph
from src.oracle.discrete_bn import DiscreteBN
from src.utils.formats import (
    QuerySpec,
    dump_bn_text,
    dump_graph_json,
    dump_graph_text,
    dump_ugraph_text,
    parse_bn_text,
    parse_graph_json,
    parse_graph_text,
    parse_query_text,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class FileManager:
    """File Manager for graph, query, BN and report files"""

    def __init__(self, output_dir: Optional[PathLike] = None):
        self.output_dir = Path(output_dir or Config.OUTPUT_DIR)

    def _ensure_output_dir(self):
        self.output_dir.mkdir(parents=True, exist_ok=True)
        logger.info(f"📁 Output directory ensured: {self.output_dir}")

    def get_output_path(self, filename: str) -> Path:
        """Reports without a directory land in the output directory"""
        path = Path(filename)
        if path.parent == Path('.'):
            self._ensure_output_dir()
            return self.output_dir / path
        return path

    def read_file_content(self, file_path: PathLike) -> Optional[str]:
        """Read content from a file"""
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                content = f.read()
            logger.info(f"📖 Read {len(content)} characters from {file_path}")
            return content
        except Exception as e:
            logger.error(f"❌ Failed to read {file_path}: {str(e)}")
            return None

    def write_file_content(self, file_path: PathLike, content: str) -> bool:
        """Write content to a file"""
        try:
            path = Path(file_path)
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', encoding='utf-8') as f:
                f.write(content)
            logger.info(f"📝 Wrote {len(content)} characters to {file_path}")
            return True
        except Exception as e:
            logger.error(f"❌ Failed to write {file_path}: {str(e)}")
            return False

    def load_graph(self, file_path: PathLike) -> Optional[Dag]:
        """
        Load a graph file, text or JSON by suffix

        Returns:
            The Dag, or None when the file cannot be read; parse errors propagate
        """
        content = self.read_file_content(file_path)
        if content is None:
            return None
        try:
            if Path(file_path).suffix.lower() == '.json':
                return parse_graph_json(content)
            return parse_graph_text(content)
        except ParseError as e:
            logger.error(f"❌ {file_path}: {e}")
            raise

    def save_graph(self, g: Dag, file_path: PathLike) -> bool:
        if Path(file_path).suffix.lower() == '.json':
            return self.write_file_content(file_path, dump_graph_json(g))
        return self.write_file_content(file_path, dump_graph_text(g))

    def load_query(self, file_path: PathLike) -> Optional[QuerySpec]:
        content = self.read_file_content(file_path)
        if content is None:
            return None
        return parse_query_text(content)

    def load_bn(self, file_path: PathLike, dag: Dag) -> Optional[DiscreteBN]:
        content = self.read_file_content(file_path)
        if content is None:
            return None
        return parse_bn_text(content, dag)

    def save_bn(self, bn: DiscreteBN, file_path: PathLike) -> bool:
        return self.write_file_content(file_path, dump_bn_text(bn))

    def export_ugraph(self, h: UGraph, file_path: PathLike) -> bool:
        return self.write_file_content(file_path, dump_ugraph_text(h))

    def write_report(self, report: Dict[str, object], filename: str) -> Optional[Path]:
        """Write a JSON report; returns its path or None on failure"""
        path = self.get_output_path(filename)
        if self.write_file_content(path, json.dumps(report, indent=2, ensure_ascii=False) + '\n'):
            return path
        return None
