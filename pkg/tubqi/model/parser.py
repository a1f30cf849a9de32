"""Lexer and parser for the .tub presentation language.

    file        := (line)*
    line        := comment | vertex-decl | edge-decl | blank
    vertex-decl := "vertex" NAME
    edge-decl   := "edge" NAME ":" NAME vec "->" NAME vec
    vec         := "(" INT "," INT ")"

"vertex" and "edge" are keywords only as the first word of a line, so they
are also valid names. Whitespace between tokens is optional.
"""

import logging
from threading import Lock
from typing import List, Optional

import ply.lex as lex
import ply.yacc as yacc

from .graph import Edge, EdgeEnd, GraphOfGroups
from ..utils.exceptions import (
    DuplicateNameError,
    ParseError,
    UnknownVertexError,
    ZeroVectorError,
)

logger = logging.getLogger(__name__)


def _column(text: str, lexpos: int) -> int:
    return lexpos - (text.rfind("\n", 0, lexpos) + 1) + 1


class _Grammar:
    """ply lexer and grammar rules; instantiated once per process."""

    # recognised only at the start of a line
    reserved = {"vertex": "VERTEX", "edge": "EDGE"}

    tokens = [
        "NAME",
        "INT",
        "COLON",
        "COMMA",
        "LPAREN",
        "RPAREN",
        "ARROW",
        "NEWLINE",
    ] + list(reserved.values())

    t_COLON = r":"
    t_COMMA = r","
    t_LPAREN = r"\("
    t_RPAREN = r"\)"
    t_ARROW = r"->"
    t_ignore = " \t"
    t_ignore_COMMENT = r"\#[^\n]*"

    def t_NAME(self, t):
        r"[A-Za-z_][A-Za-z0-9_]*"
        t.type = self.reserved.get(t.value, "NAME") if t.lexer.at_line_start else "NAME"
        t.lexer.at_line_start = False
        return t

    def t_INT(self, t):
        r"-?[0-9]+"
        t.value = int(t.value)
        return t

    def t_NEWLINE(self, t):
        r"\n"
        t.lexer.lineno += 1
        t.lexer.at_line_start = True
        return t

    def t_error(self, t):
        text = t.lexer.lexdata
        raise ParseError(
            f"unexpected character {t.value[0]!r}", t.lineno, _column(text, t.lexpos)
        )

    def p_document(self, p):
        "document : lines"
        p[0] = p[1]

    def p_lines_more(self, p):
        "lines : lines line"
        p[0] = p[1] + ([p[2]] if p[2] is not None else [])

    def p_lines_empty(self, p):
        "lines :"
        p[0] = []

    def p_line_blank(self, p):
        "line : NEWLINE"
        p[0] = None

    def p_line_decl(self, p):
        "line : decl NEWLINE"
        p[0] = p[1]

    def p_decl_vertex(self, p):
        "decl : VERTEX NAME"
        p[0] = ("vertex", p[2], p.lineno(2), p.lexpos(2))

    def p_decl_edge(self, p):
        "decl : EDGE NAME COLON NAME vec ARROW NAME vec"
        p[0] = (
            "edge",
            p[2],
            p.lineno(2),
            p.lexpos(2),
            (p[4], p[5], p.lineno(4), p.lexpos(4)),
            (p[7], p[8], p.lineno(7), p.lexpos(7)),
        )

    def p_vec(self, p):
        "vec : LPAREN INT COMMA INT RPAREN"
        p[0] = (p[2], p[4])

    def p_error(self, p):
        if p is None:
            raise ParseError("unexpected end of input")
        text = p.lexer.lexdata
        shown = "end of line" if p.type == "NEWLINE" else repr(p.value)
        raise ParseError(f"unexpected {shown}", p.lineno, _column(text, p.lexpos))

    def __init__(self):
        self.lexer = lex.lex(module=self)
        self.lexer.at_line_start = True
        self.parser = yacc.yacc(
            module=self,
            start="document",
            write_tables=False,
            debug=False,
            errorlog=yacc.NullLogger(),
        )


_grammar: Optional[_Grammar] = None
_grammar_lock = Lock()


def _parse_declarations(text: str) -> List[tuple]:
    global _grammar
    with _grammar_lock:
        if _grammar is None:
            _grammar = _Grammar()
        lexer = _grammar.lexer.clone()
        lexer.lineno = 1
        lexer.at_line_start = True
        return _grammar.parser.parse(text, lexer=lexer)


def parse_graph(text: str) -> GraphOfGroups:
    """
    Parse a presentation document.

    Args:
        text: UTF-8 document; LF or CRLF line endings.

    Returns:
        The presentation with vertices and edges in declaration order.

    Raises:
        ParseError: On syntax errors (with line and column).
        DuplicateNameError: If a vertex or edge name is declared twice.
        UnknownVertexError: If an edge names an undeclared vertex.
        ZeroVectorError: If an attaching vector is (0,0).
    """
    text = text.replace("\r\n", "\n")
    if not text.endswith("\n"):
        text += "\n"

    declarations = _parse_declarations(text)

    vertices: List[str] = []
    edges: List[Edge] = []
    locations = {}
    pending_refs = []
    for decl in declarations:
        kind, name, line, pos = decl[:4]
        column = _column(text, pos)
        if kind == "vertex":
            if name in vertices:
                raise DuplicateNameError(f"duplicate vertex {name!r}", line, column)
            vertices.append(name)
            locations[name] = line
            continue

        if any(e.name == name for e in edges):
            raise DuplicateNameError(f"duplicate edge {name!r}", line, column)
        ends = []
        for vertex, vector, vline, vpos in decl[4:]:
            if vector == (0, 0):
                raise ZeroVectorError(
                    f"edge {name!r} has a zero attaching vector at {vertex!r}",
                    vline,
                    _column(text, vpos),
                )
            pending_refs.append((vertex, vline, _column(text, vpos)))
            ends.append(EdgeEnd(vertex, vector))
        edges.append(Edge(name, ends[0], ends[1]))
        locations[f"edge:{name}"] = line

    declared = set(vertices)
    for vertex, line, column in pending_refs:
        if vertex not in declared:
            raise UnknownVertexError(f"unknown vertex {vertex!r}", line, column)

    logger.debug(f"Parsed {len(vertices)} vertices and {len(edges)} edges")
    return GraphOfGroups(tuple(vertices), tuple(edges), locations)
