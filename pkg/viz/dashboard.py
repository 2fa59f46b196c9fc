"""Subtree index dashboard.

Loads the JSON-lines records written by ``bench --records`` and
``stats --records`` and plots them.
"""

import json
import sys
from pathlib import Path

import streamlit as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.models.records import BenchReport, IndexStats  # noqa: E402
from src.tools.charts import (  # noqa: E402
    index_bytes,
    joins_by_size,
    latency_by_bin,
    latency_by_size,
    postings_by_size,
)


def load_records(path: Path) -> tuple[list[BenchReport], list[IndexStats]]:
    reports: list[BenchReport] = []
    stats: list[IndexStats] = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        if "by_bin" in record:
            reports.append(BenchReport.model_validate(record))
        elif "key_bit_bound" in record:
            stats.append(IndexStats.model_validate(record))
    return reports, stats


st.set_page_config(page_title="Subtree Index Dashboard", layout="wide")
st.title("Subtree Index Dashboard")

st.sidebar.header("Records")
records_path = st.sidebar.text_input("JSON-lines file", value="./data/records.jsonl")

path = Path(records_path)
if not path.exists():
    st.info(f"No records at {path}. Run `bench --records` or `stats --records` first.")
    st.stop()

try:
    reports, stats = load_records(path)
except (json.JSONDecodeError, ValueError) as e:
    st.error(f"Failed to read {path}: {e}")
    st.stop()

col1, col2, col3 = st.columns(3)
with col1:
    st.metric("Bench reports", len(reports))
with col2:
    st.metric("Index reports", len(stats))
with col3:
    st.metric("Queries timed", sum(len(r.queries) for r in reports))

if reports:
    st.header("Latency")
    left, right = st.columns(2)
    with left:
        st.plotly_chart(latency_by_bin(reports), use_container_width=True)
    with right:
        st.plotly_chart(latency_by_size(reports), use_container_width=True)
    st.plotly_chart(joins_by_size(reports), use_container_width=True)

if stats:
    st.header("Index size")
    left, right = st.columns(2)
    with left:
        st.plotly_chart(postings_by_size(stats), use_container_width=True)
    with right:
        st.plotly_chart(index_bytes(stats), use_container_width=True)
