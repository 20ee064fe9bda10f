"""
Table Service
Recomputes the published rank-2 and rank-3 tables through the recursion
and compares them with the embedded golden values
"""

import json
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import TypeAdapter

from realbetti.config import settings
from realbetti.engine.curves import validate_topology
from realbetti.engine.errors import GoldenMismatch, InvalidInput
from realbetti.engine.recursion import RecursionEngine, get_engine
from realbetti.schemas import GoldenRow, TableRow
from realbetti.utils.logger import logger

_golden_adapter = TypeAdapter(Dict[str, List[GoldenRow]])


class TableService:
    """
    Service class for golden-table reproduction

    Responsibilities:
    - Load golden tables from the data file
    - Recompute each row through the recursion (never the closed form)
    - Flag mismatches
    """

    def __init__(self, engine: Optional[RecursionEngine] = None, path: Optional[Path] = None):
        self.engine = engine or get_engine()
        self.path = Path(path) if path is not None else settings.golden_tables_path
        self._tables: Optional[Dict[str, List[GoldenRow]]] = None

    def load_golden(self) -> Dict[str, List[GoldenRow]]:
        """Golden tables keyed by section name"""
        if self._tables is None:
            raw = json.loads(self.path.read_text(encoding="utf-8"))
            self._tables = _golden_adapter.validate_python(raw)
            logger.debug(f"Loaded {len(self._tables)} golden tables from {self.path}")
        return self._tables

    @property
    def sections(self) -> List[str]:
        return list(self.load_golden())

    def reproduce(self, section: str) -> List[TableRow]:
        """
        Recompute every row of a golden table

        Raises:
            InvalidInput: unknown section
        """
        tables = self.load_golden()
        if section not in tables:
            raise InvalidInput(f"unknown table {section!r}; choose from {', '.join(tables)}")

        rows = []
        for golden in tables[section]:
            topo = validate_topology(golden.genus, golden.circles)
            result = self.engine.moduli_betti(golden.rank, golden.degree, topo)
            computed = list(result.polynomial.coefficients)
            matches = computed == golden.coeffs
            if not matches:
                logger.error(
                    f"{section} g={golden.genus} a={golden.circles}: got {computed}, expected {golden.coeffs}"
                )
            rows.append(TableRow(golden=golden, computed=computed, matches=matches))
        return rows

    def check(self, section: str) -> List[TableRow]:
        """reproduce(), raising GoldenMismatch on the first differing row"""
        rows = self.reproduce(section)
        for row in rows:
            if not row.matches:
                raise GoldenMismatch(
                    f"{section} r={row.golden.rank} g={row.golden.genus} a={row.golden.circles}: "
                    f"computed {row.computed}, published {row.golden.coeffs}"
                )
        return rows
