"""Plotly figures over bench and stats records."""

from collections.abc import Sequence

import plotly.graph_objects as go

from src.models.records import MATCH_BINS, BenchReport, IndexStats


def _label(scheme: str, mss: int) -> str:
    return f"{scheme} mss={mss}"


def latency_by_bin(reports: Sequence[BenchReport]) -> go.Figure:
    """Mean latency (ms) per match-count bin, one bar group per report."""
    fig = go.Figure()
    for report in reports:
        rows = {b.bucket: b.mean * 1000 for b in report.by_bin}
        buckets = [b for b in MATCH_BINS if b in rows]
        fig.add_trace(go.Bar(name=_label(report.scheme, report.mss), x=buckets, y=[rows[b] for b in buckets]))
    fig.update_layout(
        title="Query latency by number of matches",
        xaxis_title="Matches",
        yaxis_title="Mean latency (ms)",
        barmode="group",
    )
    return fig


def latency_by_size(reports: Sequence[BenchReport]) -> go.Figure:
    fig = go.Figure()
    for report in reports:
        sizes = sorted(report.by_size, key=lambda b: int(b.bucket))
        fig.add_trace(
            go.Scatter(
                name=_label(report.scheme, report.mss),
                x=[int(b.bucket) for b in sizes],
                y=[b.mean * 1000 for b in sizes],
                mode="lines+markers",
            )
        )
    fig.update_layout(title="Query latency by query size", xaxis_title="Query nodes", yaxis_title="Mean latency (ms)")
    return fig


def joins_by_size(reports: Sequence[BenchReport]) -> go.Figure:
    """Average join count of the benchmarked queries per query size."""
    fig = go.Figure()
    for report in reports:
        per_size: dict[int, list[int]] = {}
        for q in report.queries:
            per_size.setdefault(q.size, []).append(q.joins)
        sizes = sorted(per_size)
        fig.add_trace(
            go.Scatter(
                name=_label(report.scheme, report.mss),
                x=sizes,
                y=[sum(per_size[s]) / len(per_size[s]) for s in sizes],
                mode="lines+markers",
            )
        )
    fig.update_layout(title="Joins per query", xaxis_title="Query nodes", yaxis_title="Joins")
    return fig


def postings_by_size(stats: Sequence[IndexStats]) -> go.Figure:
    fig = go.Figure()
    for s in stats:
        fig.add_trace(
            go.Bar(name=_label(s.scheme, s.mss), x=[b.size for b in s.by_size], y=[b.postings for b in s.by_size])
        )
    fig.update_layout(
        title="Postings per subtree size", xaxis_title="Subtree size", yaxis_title="Postings", barmode="group"
    )
    return fig


def index_bytes(stats: Sequence[IndexStats]) -> go.Figure:
    """Index file size per (scheme, mss)."""
    fig = go.Figure()
    for scheme in sorted({s.scheme for s in stats}):
        rows = sorted((s for s in stats if s.scheme == scheme), key=lambda s: s.mss)
        fig.add_trace(
            go.Scatter(name=scheme, x=[s.mss for s in rows], y=[s.bytes / 1024 for s in rows], mode="lines+markers")
        )
    fig.update_layout(title="Index size", xaxis_title="mss", yaxis_title="Size (KiB)")
    return fig
