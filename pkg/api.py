#!/usr/bin/env python3
"""
HTTP API for the Heterophily Gauge.

Every endpoint takes the path of a bundle manifest or binary cache on the
server plus the same run options the command line accepts, and returns the
same documents:

- POST /stats      dataset statistics
- POST /metapaths  metapath set (optionally materialized)
- POST /metrics    full metric report
- POST /split      train/val/test mask document
"""

import logging
import os
import sys
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from heterophily_gauge import HeterophilyGauge, __version__
from heterophily_gauge.config import build_run_config
from heterophily_gauge.core.gauge import MetapathListing
from heterophily_gauge.errors import DataError, DegenerateComputationError, HeterophilyGaugeError, UsageError
from heterophily_gauge.metrics.report import MetricReport
from heterophily_gauge.splits import SplitMasks
from heterophily_gauge.stats import GraphStats

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title="Heterophily Gauge API",
    description="Heterophily metrics, metapaths, splits and statistics for heterogeneous graphs",
    version=__version__,
)


class GaugeRequest(BaseModel):
    graph: str
    target: Optional[str] = None
    lengths: Optional[List[int]] = None
    agg: Optional[str] = None
    metapaths: Optional[List[str]] = None
    expectation: Optional[str] = None
    count_multiplicity: Optional[bool] = None
    keep_self_loops: Optional[bool] = None
    directed: Optional[bool] = None
    profile: Optional[str] = None
    seed: Optional[int] = None
    threads: Optional[int] = None
    sample_size: Optional[int] = None
    null_trials: Optional[int] = None
    materialize: Optional[bool] = None


class SplitRequest(GaugeRequest):
    strategy: Optional[str] = None
    ratios: Optional[List[float]] = None
    boundaries: Optional[List[int]] = None


class StatsRequest(GaugeRequest):
    masks: Optional[str] = None


STATUS_BY_ERROR = (
    (UsageError, 400),
    (DegenerateComputationError, 409),
    (DataError, 422),
)


def to_http_error(error: HeterophilyGaugeError) -> HTTPException:
    """Map a gauge error to 400 (usage), 409 (degenerate) or 422 (data)."""
    for kind, status in STATUS_BY_ERROR:
        if isinstance(error, kind):
            return HTTPException(status_code=status, detail=str(error))
    return HTTPException(status_code=500, detail=str(error))


def open_gauge(request: GaugeRequest, subcommand: str) -> HeterophilyGauge:
    overrides: Dict[str, Any] = request.model_dump(exclude_none=True, exclude={"masks"})
    overrides.update(subcommand=subcommand, quiet=True)
    config = build_run_config(overrides)
    return HeterophilyGauge.from_path(request.graph, config)


@app.get("/health")
async def health_check():
    """
    Health check endpoint.
    """
    return {
        "status": "healthy",
        "service": "Heterophily Gauge API",
        "version": __version__,
    }


@app.post("/stats", response_model=GraphStats)
def stats(request: StatsRequest):
    """
    Dataset statistics, with split sizes when a mask document is given.
    """
    try:
        gauge = open_gauge(request, "stats")
        masks = SplitMasks.from_file(request.masks) if request.masks else None
        return gauge.stats(masks)
    except HeterophilyGaugeError as e:
        raise to_http_error(e)


@app.post("/metapaths", response_model=MetapathListing)
def metapaths(request: GaugeRequest):
    """
    The metapath set for the target type.
    """
    try:
        return open_gauge(request, "metapaths").list_metapaths()
    except HeterophilyGaugeError as e:
        raise to_http_error(e)


@app.post("/metrics", response_model=MetricReport)
def metrics(request: GaugeRequest):
    """
    Full metric report: per-metapath H_edge, H_node, H_adj plus MLH and H².
    """
    try:
        return open_gauge(request, "metrics").compute_metrics()
    except HeterophilyGaugeError as e:
        logger.warning(f"⚠️ Metrics request failed: {e}")
        raise to_http_error(e)


@app.post("/split")
def split(request: SplitRequest):
    """
    Train/val/test mask document.
    """
    try:
        gauge = open_gauge(request, "split")
        return gauge.split().to_document(config=gauge.config.echo())
    except HeterophilyGaugeError as e:
        raise to_http_error(e)


@app.post("/metric-info")
def metric_info(request: GaugeRequest):
    """
    Describe the metrics computed for a graph.
    """
    try:
        gauge = open_gauge(request, "metrics")
        return {"graph": gauge.get_graph_info(), "metrics": gauge.get_metric_info()}
    except HeterophilyGaugeError as e:
        raise to_http_error(e)


if __name__ == "__main__":
    import uvicorn

    host = os.getenv("HGAUGE_HOST", "0.0.0.0")
    port = int(os.getenv("HGAUGE_PORT", "8000"))
    print("📐 Starting Heterophily Gauge API...")
    print(f"📚 API documentation available at: http://localhost:{port}/docs")

    uvicorn.run(app, host=host, port=port)
