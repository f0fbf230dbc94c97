"""
Bench outputs and their re-aggregation.

rounds.csv is the raw record; summary.csv and the regret curves are derived
from it with the same reductions run_suite uses, so a report of a bench
directory reproduces bench's own summary exactly.
"""

import json
import os
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from benchmarks import SuiteStats, curve_summary, minima_summary
from config.settings import settings
from utils.errors import ReportInputError
from utils.logger import setup_logger

logger = setup_logger(__name__)

ROUND_COLUMNS_HEAD = ['acquisition', 'function_id', 't']
ROUND_COLUMNS_TAIL = ['y', 'simple_regret', 'cumulative_regret', 'm_hat', 'nu_t']
SUMMARY_COLUMNS = ['acquisition', 'T_min_mean', 'T_min_median', 'r_min_mean', 'r_min_median', 'n_runs']
CURVE_COLUMNS = ['round', 'mean', 'std']


def _nan_if_none(value):
    return np.nan if value is None else value


class ReportGenerator:
    def __init__(self):
        self.float_format = settings.FLOAT_FORMAT

    def _write_csv(self, frame: pd.DataFrame, path: str):
        frame.to_csv(path, index=False, float_format=self.float_format, na_rep='', lineterminator='\n')

    def rounds_frame(self, stats: SuiteStats) -> pd.DataFrame:
        dim = stats.spec.family.dim
        x_cols = [f"x_{i + 1}" for i in range(dim)]
        rows = []
        for suite_run in stats.runs:
            for record in suite_run.result.records:
                rows.append([suite_run.label, suite_run.function_id, record.t, *record.x.tolist(), record.y,
                             record.simple_regret, record.cumulative_regret,
                             _nan_if_none(record.m_hat), _nan_if_none(record.nu_t)])
        frame = pd.DataFrame(rows, columns=ROUND_COLUMNS_HEAD + x_cols + ROUND_COLUMNS_TAIL)
        return frame.astype({'m_hat': float, 'nu_t': float})

    def summary_frame(self, stats: SuiteStats) -> pd.DataFrame:
        rows = [{
            'acquisition': a.label,
            'T_min_mean': a.T_min_mean,
            'T_min_median': a.T_min_median,
            'r_min_mean': a.r_min_mean,
            'r_min_median': a.r_min_median,
            'n_runs': a.n_runs,
        } for a in stats.acquisitions]
        return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)

    def write_bench_outputs(self, stats: SuiteStats, out_dir: str) -> Dict[str, str]:
        """rounds.csv, summary.csv and suite.json; contents depend only on the resolved config"""
        os.makedirs(out_dir, exist_ok=True)
        paths = {
            'rounds': os.path.join(out_dir, 'rounds.csv'),
            'summary': os.path.join(out_dir, 'summary.csv'),
            'suite': os.path.join(out_dir, 'suite.json'),
        }
        self._write_csv(self.rounds_frame(stats), paths['rounds'])
        self._write_csv(self.summary_frame(stats), paths['summary'])
        with open(paths['suite'], 'w', encoding='utf-8') as f:
            json.dump({**stats.spec.to_dict(), 'labels': stats.spec.labels, 'n_failed': stats.n_failed}, f, indent=2, sort_keys=True)
            f.write("\n")
        logger.info(f"Bench outputs written to {out_dir}")
        return paths

    def load_rounds(self, path: str) -> pd.DataFrame:
        if not os.path.exists(path):
            raise ReportInputError(f"rounds file not found: {path}")
        try:
            frame = pd.read_csv(path)
        except pd.errors.EmptyDataError:
            raise ReportInputError(f"{path}: no data rows")
        except (pd.errors.ParserError, UnicodeDecodeError) as e:
            raise ReportInputError(f"{path}: {e}")
        missing = [c for c in ROUND_COLUMNS_HEAD + ['simple_regret', 'cumulative_regret'] if c not in frame.columns]
        if missing:
            raise ReportInputError(f"{path}: missing column(s) {', '.join(missing)}")
        if frame.empty:
            raise ReportInputError(f"{path}: no data rows")
        for column in ['function_id', 't', 'simple_regret', 'cumulative_regret']:
            if not pd.api.types.is_numeric_dtype(frame[column]) or frame[column].isna().any():
                raise ReportInputError(f"{path}: column '{column}' must be numeric on every row")
        frame['acquisition'] = frame['acquisition'].astype(str)
        return frame

    def load_label_order(self, rounds_path: str) -> Optional[List[str]]:
        """Acquisition order recorded by bench in the suite.json beside rounds.csv, if any"""
        path = os.path.join(os.path.dirname(os.path.abspath(rounds_path)), 'suite.json')
        if not os.path.exists(path):
            return None
        try:
            with open(path, encoding='utf-8') as f:
                labels = json.load(f).get('labels')
        except (OSError, ValueError, AttributeError) as e:
            logger.warning(f"Ignoring unreadable {path}: {e}")
            return None
        return [str(label) for label in labels] if isinstance(labels, list) else None

    def summarize_rounds(self, frame: pd.DataFrame, label_order: Optional[List[str]] = None
                         ) -> Tuple[pd.DataFrame, Dict[str, Dict[str, pd.DataFrame]]]:
        """
        Per-acquisition minima summary and regret curves from raw round rows.

        Rows follow label_order; labels it does not list come after, in order of first appearance.
        """
        present = list(pd.unique(frame['acquisition']))
        known = [label for label in (label_order or []) if label in present]
        summary_rows: List[dict] = []
        curves: Dict[str, Dict[str, pd.DataFrame]] = {}
        for label in known + [label for label in present if label not in known]:
            mine = frame[frame['acquisition'] == label]
            t_mins, r_mins, simple, cumulative = [], [], [], []
            for _, run_rows in sorted(mine.groupby('function_id'), key=lambda item: item[0]):
                run_rows = run_rows.sort_values('t', kind='stable')
                rounds = run_rows['t'].to_numpy(dtype=int)
                regret = run_rows['simple_regret'].to_numpy(dtype=float)
                r_min = float(np.min(regret))
                r_mins.append(r_min)
                t_mins.append(int(rounds[np.argmax(regret == r_min)]))
                simple.append(regret)
                cumulative.append(run_rows['cumulative_regret'].to_numpy(dtype=float) / rounds)
            summary_rows.append({'acquisition': label, **minima_summary(t_mins, r_mins)})

            lengths = {c.size for c in simple}
            if len(lengths) != 1:
                logger.warning(f"{label}: runs have different lengths; curves truncated to the shortest")
                n = min(lengths)
                simple = [c[:n] for c in simple]
                cumulative = [c[:n] for c in cumulative]
            curves[label] = {
                'simple_regret': self._curve_frame(*curve_summary(simple)),
                'cumulative_regret': self._curve_frame(*curve_summary(cumulative)),
            }
        return pd.DataFrame(summary_rows, columns=SUMMARY_COLUMNS), curves

    @staticmethod
    def _curve_frame(mean: np.ndarray, std: np.ndarray) -> pd.DataFrame:
        return pd.DataFrame({'round': np.arange(1, mean.size + 1), 'mean': mean, 'std': std}, columns=CURVE_COLUMNS)

    def write_report(self, summary: pd.DataFrame, curves: Dict[str, Dict[str, pd.DataFrame]], out_dir: str) -> List[str]:
        os.makedirs(out_dir, exist_ok=True)
        written = []
        for label, by_kind in curves.items():
            for kind, frame in by_kind.items():
                path = os.path.join(out_dir, f"{label}_{kind}.csv")
                self._write_csv(frame, path)
                written.append(path)
        summary_path = os.path.join(out_dir, 'report_summary.csv')
        self._write_csv(summary, summary_path)
        written.append(summary_path)
        logger.info(f"Wrote {len(written)} report file(s) to {out_dir}")
        return written

    def render_table(self, summary: pd.DataFrame) -> str:
        """Plain-text table in the minimum-regret layout"""
        table = summary.rename(columns={
            'T_min_mean': 'T_min (mean)', 'T_min_median': 'T_min (median)',
            'r_min_mean': 'r_min (mean)', 'r_min_median': 'r_min (median)',
        })
        return table.to_string(index=False, float_format=lambda v: f"{v:.4f}")
