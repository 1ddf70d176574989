'''
    Rootflow  root dynamics of real-rooted polynomials under repeated
    differentiation
    Copyright (C) 2026  Rootflow developers

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU General Public License as published by
    the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.

    This program is distributed in the hope that it will be useful,
    but WITHOUT ANY WARRANTY; without even the implied warranty of
    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
    GNU General Public License for more details.

    You should have received a copy of the GNU General Public License
    along with this program.  If not, see <https://www.gnu.org/licenses/>.
'''

import io
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence
import numpy as np
from .model import RootSet, Histogram
from .exceptions import ArgumentError


def _atomic_write(path: Path, text: str) -> Path:
    # write next to the target so the final rename stays on one file system
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path

class RootsRepository:
    """Repository for root sets stored as CSV with a single `root` column."""

    def save(self, path: Path, roots: RootSet) -> Path:
        """
        Write roots atomically, one value per line with 17 significant digits.

        Args:
            path (Path): Target file.
            roots (RootSet): Roots to store.

        Returns:
            Path: The written file.
        """
        buf = io.StringIO()
        np.savetxt(buf, roots.roots, fmt='%.17g', header='root', comments='')
        return _atomic_write(path, buf.getvalue())

    def load(self, path: Path) -> RootSet:
        """
        Read a roots CSV, as written by save.

        Raises:
            ArgumentError: The file is missing, malformed, or not a valid root set.
        """
        path = Path(path)
        try:
            with open(path, encoding='utf-8') as f:
                header = f.readline().strip()
                if header != 'root':
                    raise ArgumentError(f"{path}: expected header 'root', got '{header}'")
                values = np.loadtxt(f, dtype=float, ndmin=1)
        except OSError as e:
            raise ArgumentError(f"Cannot read roots from {path}: {e}") from e
        except ValueError as e:
            if isinstance(e, ArgumentError):
                raise
            raise ArgumentError(f"Malformed roots file {path}: {e}") from e
        return RootSet.from_unsorted(values)

class ReportRepository:
    """Repository for JSON reports, histograms and per-trial tables."""

    def save_json(self, path: Path, report: Mapping[str, Any]) -> Path:
        """Write a report as sorted, indented JSON."""
        return _atomic_write(path, json.dumps(report, indent=2, sort_keys=True) + '\n')

    def save_histogram(self, path: Path, histogram: Histogram) -> Path:
        """Write a histogram as CSV rows bin_left,bin_right,count."""
        edges = histogram.bin_edges
        lines = ['bin_left,bin_right,count']
        lines += [
            f"{left:.17g},{right:.17g},{count}"
            for left, right, count in zip(edges[:-1], edges[1:], histogram.counts.tolist())
        ]
        return _atomic_write(path, '\n'.join(lines) + '\n')

    def save_table(self, path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        """Write rows of numbers as CSV; floats keep 17 significant digits."""
        def cell(value):
            if isinstance(value, (float, np.floating)):
                return f"{float(value):.17g}"
            return str(value)
        lines = [','.join(columns)]
        lines += [','.join(cell(v) for v in row) for row in rows]
        return _atomic_write(path, '\n'.join(lines) + '\n')
