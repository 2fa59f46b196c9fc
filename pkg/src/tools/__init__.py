from .bench import BenchmarkTool
from .charts import index_bytes, joins_by_size, latency_by_bin, latency_by_size, postings_by_size
from .oracle_check import OracleCheckTool, OracleDiff

__all__ = [
    "BenchmarkTool",
    "OracleCheckTool",
    "OracleDiff",
    "index_bytes",
    "joins_by_size",
    "latency_by_bin",
    "latency_by_size",
    "postings_by_size",
]
