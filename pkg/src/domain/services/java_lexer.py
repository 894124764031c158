"""Regex-driven Java lexer.

Comments and whitespace are skipped; string, text-block and char literals
come out as single tokens; operators use maximal munch.
"""

import re
from collections.abc import Iterator
from dataclasses import dataclass

from domain.exceptions import LexError

KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue default do
    double else enum extends final finally float for goto if implements import instanceof
    int interface long native new package private protected public return short static
    strictfp super switch synchronized this throw throws transient try void volatile while
    true false null var record yield sealed permits
    """.split()
)

# Longest first so alternation realises maximal munch.
OPERATORS = (
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||",
    "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=",
    "<<", ">>",
    "=", ">", "<", "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
    "@", ".", ",", ";", "(", ")", "{", "}", "[", "]",
)  # fmt: skip

_EXPONENT = r"(?:[eE][+-]?\d[\d_]*)"
_NUMBER = "|".join(
    (
        r"0[xX][0-9a-fA-F_]+(?:\.[0-9a-fA-F_]*)?(?:[pP][+-]?\d+)?[lLfFdD]?",
        r"0[bB][01_]+[lL]?",
        rf"(?:\d[\d_]*\.[\d_]*|\.\d[\d_]*){_EXPONENT}?[fFdD]?",
        rf"\d[\d_]*{_EXPONENT}[fFdD]?",
        r"\d[\d_]*[lLfFdD]?",
    )
)

_MASTER = re.compile(
    "|".join(
        (
            r"(?P<space>\s+)",
            r"(?P<line_comment>//[^\r\n]*)",
            r"(?P<block_comment>/\*.*?\*/)",
            r"(?P<open_comment>/\*)",
            r'(?P<text_block>"""[ \t\f]*\r?\n(?:[^\\]|\\.)*?""")',
            r'(?P<open_text_block>""")',
            r'(?P<string>"(?:[^"\\\r\n]|\\.)*")',
            r'(?P<open_string>")',
            r"(?P<char>'(?:[^'\\\r\n]|\\.)+')",
            r"(?P<open_char>')",
            rf"(?P<number>{_NUMBER})",
            r"(?P<identifier>(?:[^\W\d]|\$)[\w$]*)",
            "(?P<operator>" + "|".join(re.escape(op) for op in OPERATORS) + ")",
            r"(?P<other>\S)",
        )
    ),
    re.DOTALL,
)

_SKIPPED = frozenset({"space", "line_comment", "block_comment"})
_UNTERMINATED = {
    "open_comment": "Unterminated block comment",
    "open_text_block": "Unterminated text block",
    "open_string": "Unterminated string literal",
    "open_char": "Unterminated char literal",
}


@dataclass(frozen=True, slots=True)
class Token:
    """A lexeme with its kind and start offset."""

    kind: str
    text: str
    offset: int


def _position(source: str, offset: int) -> tuple[int, int]:
    line = source.count("\n", 0, offset) + 1
    column = offset - (source.rfind("\n", 0, offset) + 1) + 1
    return line, column


def iter_tokens(source: str) -> Iterator[Token]:
    """Yield tokens of ``source`` in order.

    Identifiers that are reserved words come out with kind ``keyword``.

    Raises:
        LexError: on an unterminated comment or literal
    """
    pos = 0
    while pos < len(source):
        match = _MASTER.match(source, pos)
        if match is None:  # pragma: no cover - the "other" branch matches any non-space
            line, column = _position(source, pos)
            raise LexError("Unexpected input", pos, line, column)
        kind = match.lastgroup or "other"
        if kind in _UNTERMINATED:
            line, column = _position(source, pos)
            raise LexError(_UNTERMINATED[kind], pos, line, column)
        if kind not in _SKIPPED:
            text = match.group()
            if kind == "identifier" and text in KEYWORDS:
                kind = "keyword"
            yield Token(kind=kind, text=text, offset=pos)
        pos = match.end()


def tokenize_java(source: str) -> list[str]:
    """Token texts of ``source``, e.g. ``int x = 1;`` -> ``[int, x, =, 1, ;]``."""
    return [token.text for token in iter_tokens(source)]
