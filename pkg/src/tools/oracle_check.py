from dataclasses import dataclass
from pathlib import Path

from src.corpus.datafile import DataFileReader
from src.execution.bindings import MatchSet
from src.execution.oracle import oracle_union
from src.query.layout import QueryTree
from src.query.nodes import MatchBinding, QueryNode
from src.query.parser import parse_query
from src.utils.logger import logger


@dataclass(frozen=True)
class OracleDiff:
    expected: MatchSet
    missing: tuple[MatchBinding, ...]
    extra: tuple[MatchBinding, ...]

    @property
    def equal(self) -> bool:
        return not self.missing and not self.extra

    def lines(self) -> list[str]:
        if self.equal:
            return ["MATCH-SET EQUAL"]
        out = [f"MATCH-SET DIFF: {len(self.missing)} missing, {len(self.extra)} extra"]
        out.extend(f"- {m.line()}" for m in self.missing)
        out.extend(f"+ {m.line()}" for m in self.extra)
        return out


class OracleCheckTool:
    """Cross-checks an executed match set against brute-force matching of every stored tree."""

    def __init__(self, data: DataFileReader | str | Path):
        """Initialize the checker.

        Args:
            data: Data file holding the indexed corpus

        """
        self.data = data if isinstance(data, DataFileReader) else DataFileReader(data)

    def __call__(self, query: str | QueryNode | QueryTree, matches: MatchSet) -> OracleDiff:
        """Compare ``matches`` with the oracle answer for ``query``.

        Returns:
            OracleDiff listing bindings the engine missed and bindings it invented

        """
        q = parse_query(query) if isinstance(query, str) else query
        expected = oracle_union(q, self.data)
        diff = OracleDiff(
            expected=expected,
            missing=tuple(sorted(expected.difference(matches))),
            extra=tuple(sorted(matches.difference(expected))),
        )
        if diff.equal:
            logger.info(f"Oracle agrees on {len(expected)} matches")
        else:
            logger.warning(f"Oracle disagrees: {len(diff.missing)} missing, {len(diff.extra)} extra")
        return diff
