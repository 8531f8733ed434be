"""
Published Table Loader
"""
import json
import logging

import pandas as pd

logger = logging.getLogger(__name__)

TABLE2_ROWS = ('Dx', 'Dy', 'Dz', 'Dt', 'Du', 'F', 'Bx', 'C31111', 'E11111')


class TableFormatError(ValueError):
    """Raised when a published-table data file is malformed"""


class TableLoader:
    def __init__(self, config=None):
        data = (config or {}).get('data', {})
        self.table1_path = data.get('table1', 'config/table1.txt')
        self.correction_path = data.get('table1_correction', 'config/table1_correction.txt')
        self.table2_path = data.get('table2', 'config/table2.json')

    def load_coefficients(self, filepath):
        """
        Load an "n a_n" coefficient file

        Args:
            filepath: plain text file, two base-10 integers per line, '#' comments

        Returns:
            dict degree -> coefficient
        """
        try:
            df = pd.read_csv(filepath, sep=r'\s+', comment='#', header=None,
                             names=['degree', 'coefficient'], dtype=str)
        except pd.errors.EmptyDataError:
            return {}
        except pd.errors.ParserError as e:
            raise TableFormatError(f"{filepath}: {e}") from e

        coefficients = {}
        for row in df.itertuples(index=False):
            if pd.isna(row.coefficient) or not row.degree.isdigit() or not row.coefficient.isdigit():
                raise TableFormatError(f"{filepath}: bad line '{row.degree} {row.coefficient}'")
            degree = int(row.degree)
            if degree in coefficients:
                raise TableFormatError(f"{filepath}: degree {degree} listed twice")
            coefficients[degree] = int(row.coefficient)

        logger.info(f"Loaded {len(coefficients)} coefficients from {filepath}")
        return coefficients

    def load_table1(self):
        """Verbatim numerator table and its correction layer"""
        return self.load_coefficients(self.table1_path), self.load_coefficients(self.correction_path)

    def load_table2(self):
        """Published covariant table as {'states': [...], 'rows': {row: ['x'|'0', ...]}}"""
        try:
            with open(self.table2_path, 'r') as f:
                table = json.load(f)
        except json.JSONDecodeError as e:
            raise TableFormatError(f"{self.table2_path}: invalid JSON ({e})") from e

        states = table.get('states')
        rows = table.get('rows')
        if not isinstance(states, list) or not isinstance(rows, dict):
            raise TableFormatError(f"{self.table2_path}: needs 'states' list and 'rows' object")
        for row in TABLE2_ROWS:
            cells = rows.get(row)
            if not isinstance(cells, list) or len(cells) != len(states) or set(cells) - {'x', '0'}:
                raise TableFormatError(f"{self.table2_path}: row {row} must hold one 'x'/'0' per state")
        logger.info(f"Loaded covariant table for states {states}")
        return table
