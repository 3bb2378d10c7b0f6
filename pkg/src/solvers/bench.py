"""
Corpus benchmarking: run the approximation pipelines over a directory of
``*.nzg`` instances and tabulate certificates, optionally as a spreadsheet.
"""

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor, wait
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from core.config import get_config
from core.exceptions import InvalidParameterError, NZFlowError
from core.formats import format_fraction, read_graph
from core.graph import CostFunction, Graph
from core.models import BenchRow

from .approx import ApproxCertificate, swnzf_local_search, wcbo_bicriteria, wnzf_bicriteria

logger = logging.getLogger(__name__)

BENCH_COLUMNS = [
    "instance",
    "algorithm",
    "lp_value",
    "output_cost",
    "ratio",
    "flow_bound",
    "runtime_seconds",
    "error",
]

Pipeline = Callable[[Graph, CostFunction], ApproxCertificate]

BENCH_K = 6


def _pipelines(c: CostFunction) -> List[Tuple[str, Pipeline]]:
    pipelines: List[Tuple[str, Pipeline]] = [
        ("wnzf", lambda g, c: wnzf_bicriteria(g, c, BENCH_K)[1]),
        ("wcbo", lambda g, c: wcbo_bicriteria(g, c, BENCH_K)[1]),
    ]
    if c.is_symmetric():
        pipelines.append(("swnzf", lambda g, c: swnzf_local_search(g, c)[1]))
    return pipelines


def _row(instance: str, algorithm: str, run: Pipeline, g: Graph, c: CostFunction) -> BenchRow:
    start = time.perf_counter()
    try:
        cert = run(g, c)
    except NZFlowError as e:
        logger.warning(f"{instance}/{algorithm} failed: {e}")
        return BenchRow(
            instance=instance,
            algorithm=algorithm,
            lp_value="",
            runtime_seconds=time.perf_counter() - start,
            error=str(e),
        )
    ratio = cert.ratio
    return BenchRow(
        instance=instance,
        algorithm=algorithm,
        lp_value=format_fraction(cert.lp_value),
        output_cost=cert.output_cost,
        ratio=format_fraction(ratio) if ratio is not None else None,
        flow_bound=cert.flow_bound,
        runtime_seconds=round(time.perf_counter() - start, 6),
    )


def bench_instance(path: Path) -> List[BenchRow]:
    """Run every applicable pipeline on one graph file."""
    try:
        g, c = read_graph(path.read_text(encoding="utf-8"), source=str(path))
    except NZFlowError as e:
        return [BenchRow(instance=path.stem, algorithm="read", lp_value="", error=str(e))]
    return [_row(path.stem, name, run, g, c) for name, run in _pipelines(c)]


def run_bench(corpus_dir: str, workers: Optional[int] = None) -> List[BenchRow]:
    """Benchmark all ``*.nzg`` files in corpus_dir.

    Instances run concurrently; rows come back ordered by instance name and
    then algorithm, independent of completion order. bench.timeout_seconds
    is one deadline for the whole run, counted from submission: instances
    still queued or running then get a "timeout" row and the call returns
    without waiting for them.

    Raises:
        InvalidParameterError: If corpus_dir is not a directory.
    """
    root = Path(corpus_dir).expanduser()
    if not root.is_dir():
        raise InvalidParameterError("corpus_dir", corpus_dir, "an existing directory")
    config = get_config()
    workers = workers or config.bench.workers
    paths = sorted(root.glob("*.nzg"))
    logger.info(f"Benchmarking {len(paths)} instances from {root} with {workers} workers")

    rows: List[BenchRow] = []
    pool = ThreadPoolExecutor(max_workers=workers)
    try:
        futures = {path: pool.submit(bench_instance, path) for path in paths}
        done, _ = wait(futures.values(), timeout=config.bench.timeout_seconds)
        for path, future in futures.items():
            if future in done:
                rows.extend(future.result())
            else:
                logger.warning(f"{path.stem} not finished within {config.bench.timeout_seconds}s")
                rows.append(BenchRow(instance=path.stem, algorithm="*", lp_value="", error="timeout"))
    finally:
        pool.shutdown(wait=False, cancel_futures=True)
    rows.sort(key=lambda r: (r.instance, r.algorithm))
    return rows


def format_bench_table(rows: List[BenchRow]) -> str:
    """Tab-separated table with a header line."""
    lines = ["\t".join(BENCH_COLUMNS)]
    for row in rows:
        data = row.model_dump()
        lines.append("\t".join("" if data[col] is None else str(data[col]) for col in BENCH_COLUMNS))
    return "\n".join(lines) + "\n"


# ========== Spreadsheet Export ==========


def export_bench_excel(rows: List[BenchRow], filename: str) -> Dict[str, Any]:
    """Write bench rows to an .xlsx file inside the configured output directory.

    Returns:
        {"success", "count", "message", "path"} or {"success": False, "error"}.
    """
    from openpyxl import Workbook
    from openpyxl.styles import Alignment, Font, PatternFill
    from openpyxl.utils import get_column_letter

    config = get_config()
    output_dir = Path(config.output.directory).expanduser().resolve()

    file_obj = Path(filename)
    dir_part = str(file_obj.parent)
    export_dir = Path(dir_part).expanduser().resolve() if dir_part and dir_part != "." else output_dir

    try:
        export_dir.relative_to(output_dir)
    except ValueError:
        logger.error(
            f"Security: Attempted export outside output directory. "
            f"Requested: {export_dir}, Allowed: {output_dir}"
        )
        return {"success": False, "error": "Invalid output directory"}

    export_dir.mkdir(parents=True, exist_ok=True)
    full_filepath = export_dir / file_obj.name

    workbook = Workbook()
    worksheet = workbook.active
    if worksheet is None:
        return {"success": False, "error": "Failed to create worksheet"}
    worksheet.title = "Bench"

    header_fill = PatternFill(start_color="4472C4", end_color="4472C4", fill_type="solid")
    header_font = Font(bold=True, color="FFFFFF")
    for col_idx, col_name in enumerate(BENCH_COLUMNS, 1):
        cell = worksheet.cell(row=1, column=col_idx, value=col_name)
        cell.fill = header_fill
        cell.font = header_font
        cell.alignment = Alignment(horizontal="center", vertical="center")

    for row_idx, row in enumerate(rows, 2):
        data = row.model_dump()
        for col_idx, col_name in enumerate(BENCH_COLUMNS, 1):
            cell = worksheet.cell(row=row_idx, column=col_idx, value=data[col_name])
            cell.alignment = Alignment(horizontal="left", vertical="center")
            if col_name == "runtime_seconds":
                cell.number_format = "0.000"

    for col_idx, col_name in enumerate(BENCH_COLUMNS, 1):
        max_length = len(col_name)
        for row_idx in range(2, len(rows) + 2):
            max_length = max(max_length, len(str(worksheet.cell(row=row_idx, column=col_idx).value or "")))
        worksheet.column_dimensions[get_column_letter(col_idx)].width = min(max_length + 2, 50)

    worksheet.freeze_panes = "A2"
    workbook.save(str(full_filepath))
    logger.info(f"Exported {len(rows)} bench rows to {full_filepath}")
    return {
        "success": True,
        "count": len(rows),
        "message": f"Exported {len(rows)} bench rows to {filename}",
        "path": str(full_filepath),
    }


def export_bench_json(rows: List[BenchRow]) -> str:
    return json.dumps([row.model_dump() for row in rows], indent=2)
