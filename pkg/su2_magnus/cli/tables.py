import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional

import orjson
import pandas as pd
import pendulum
import tqdm
from tqdm.contrib.concurrent import process_map

from su2_magnus.cli.config import SweepConfig

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.10g"


def run_rows(row: Callable, items: Iterable, workers: int = 1, display: bool = True, desc: str = None) -> List[dict]:
    """Evaluate ``row`` for every item, in parallel processes when ``workers > 1``; results keep the input order."""
    items = list(items)
    if workers > 1:
        return process_map(row, items, max_workers=workers, chunksize=1, disable=not display, desc=desc)
    results = []
    pbar = tqdm.tqdm(items, disable=not display)
    for item in pbar:
        pbar.set_description(f"{desc} {item:.6g}" if desc else None)
        results.append(row(item))
    return results


def header_lines(header: Dict[str, str]) -> List[str]:
    return [f"# {key}: {value}" for key, value in header.items()]


def write_table(df: pd.DataFrame, header: Dict[str, str], out: Optional[Path] = None):
    """Write a '#'-prefixed metadata block followed by the table as CSV, to ``out`` or stdout."""
    text = "\n".join(header_lines(header)) + "\n" + df.to_csv(index=False, float_format=FLOAT_FORMAT)
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text)
    logger.info("Wrote %d rows to %s", len(df), out)


def column_summary(df: pd.DataFrame) -> Dict[str, Dict[str, float]]:
    summary = {}
    for column in df.select_dtypes("number").columns:
        values = df[column].dropna()
        if values.empty:
            continue
        summary[column] = {"min": float(values.min()), "max": float(values.max()), "mean": float(values.mean())}
    return summary


def sidecar_path(out: Path) -> Path:
    return Path(f"{out}.json")


def write_sidecar(out: Path, config: SweepConfig, df: pd.DataFrame = None, extra: dict = None) -> Path:
    """Run summary next to the table: configuration, column statistics and a creation timestamp."""
    summary = {
        "created": pendulum.now().to_iso8601_string(),
        "config": orjson.loads(config.json()),
        "columns": column_summary(df) if df is not None else {},
    }
    if extra:
        summary.update(extra)
    path = sidecar_path(out)
    path.write_bytes(orjson.dumps(summary, option=orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY))
    return path
