import pyparsing as pp

from src.query.nodes import EdgeType, QueryNode
from src.utils.errors import QuerySyntaxError

LPAR, RPAR = map(pp.Suppress, "()")
# A "/" may sit between label characters; "//" only opens a group
label = pp.Regex(r"[^\s()/]+(?:/[^\s()/]+)*").set_name("label")
axis = pp.Literal("//")

node = pp.Forward()
group = pp.Group(LPAR + pp.Opt(axis) + node + RPAR)
node <<= pp.Group(label + pp.ZeroOrMore(group))

Parsed = list["str | Parsed"]


def _build(parsed: Parsed) -> QueryNode:
    text = parsed[0]
    assert isinstance(text, str)
    children: list[tuple[EdgeType, QueryNode]] = []
    for grp in parsed[1:]:
        assert isinstance(grp, list)
        if grp[0] == "//":
            child = grp[1]
            edge = EdgeType.DESCENDANT
        else:
            child = grp[0]
            edge = EdgeType.CHILD
        assert isinstance(child, list)
        children.append((edge, _build(child)))
    return QueryNode(text, tuple(children))


def parse_query(text: str) -> QueryNode:
    """Parse ``node := LABEL group*``, ``group := '(' ['//'] node ')'``.

    Raises:
        QuerySyntaxError: malformed text or an empty label, with the character position.
    """
    if not text.strip():
        raise QuerySyntaxError("empty query", len(text))
    try:
        parsed = node.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise QuerySyntaxError(f"invalid query {text!r}: {e.msg}", e.loc) from e
    except RecursionError as e:
        raise QuerySyntaxError("query nested too deeply", 0) from e
    return _build(parsed.as_list()[0])
