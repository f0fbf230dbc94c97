import os
import re
from typing import Optional

import numpy as np
import pandas as pd
from pandas.errors import EmptyDataError, ParserError

from config.settings import settings
from gp_core import History
from utils.errors import HistoryParseError
from utils.logger import setup_logger

logger = setup_logger(__name__)

_PANDAS_LINE = re.compile(r"line (\d+)")
# 17 significant digits round-trip every double
HISTORY_FLOAT_FORMAT = '%.17g'


class FileManager:
    def __init__(self, base_dir: Optional[str] = None):
        self.base_dir = base_dir or settings.RESULTS_DIR

    def ensure_output_dir(self, path: Optional[str] = None) -> str:
        """Create (if needed) and return an output directory"""
        target = path or self.base_dir
        os.makedirs(target, exist_ok=True)
        return target

    def read_history(self, path: str, dim: int) -> History:
        """
        Parse a history CSV: a header line, then rows x_1,...,x_d,y.

        Line numbers in errors are 1-based file lines, the header being line 1.
        """
        if not os.path.exists(path):
            raise HistoryParseError(f"history file not found: {path}")
        try:
            frame = pd.read_csv(path, dtype=str, skip_blank_lines=False, keep_default_na=False, encoding='utf-8')
        except EmptyDataError:
            raise HistoryParseError("missing header line", line=1)
        except ParserError as e:
            match = _PANDAS_LINE.search(str(e))
            raise HistoryParseError(f"expected {dim + 1} columns", line=int(match.group(1)) if match else None)
        except UnicodeDecodeError as e:
            raise HistoryParseError(f"file is not valid UTF-8: {e}")

        if frame.shape[1] != dim + 1:
            raise HistoryParseError(f"header has {frame.shape[1]} columns, expected {dim + 1} (x_1..x_{dim}, y)", line=1)

        values = np.empty(frame.shape, dtype=float)
        for row, record in enumerate(frame.itertuples(index=False)):
            line = row + 2
            cells = [c.strip() if isinstance(c, str) else '' for c in record]
            if any(c == '' for c in cells):
                raise HistoryParseError(f"expected {dim + 1} values", line=line)
            try:
                values[row] = [float(c) for c in cells]
            except ValueError:
                raise HistoryParseError(f"non-numeric value in {cells}", line=line)
            if not np.all(np.isfinite(values[row])):
                raise HistoryParseError("non-finite value", line=line)

        logger.debug(f"Read {len(frame)} history rows from {path}")
        return History(values[:, :dim], values[:, dim])

    def write_history(self, path: str, history: History):
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        self._history_frame(history.points, history.values).to_csv(
            path, index=False, float_format=HISTORY_FLOAT_FORMAT, encoding='utf-8', lineterminator='\n')

    def append_observation(self, path: str, x, y: float):
        """Append one row, writing the header first when the file is new"""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        self._history_frame(x[None, :], [float(y)]).to_csv(
            path, mode='a', header=not os.path.exists(path), index=False,
            float_format=HISTORY_FLOAT_FORMAT, encoding='utf-8', lineterminator='\n')

    @staticmethod
    def _history_frame(points, values) -> pd.DataFrame:
        points = np.asarray(points, dtype=float)
        columns = [f"x_{i + 1}" for i in range(points.shape[1])] + ['y']
        return pd.DataFrame(np.column_stack([points, np.asarray(values, dtype=float)]), columns=columns)
