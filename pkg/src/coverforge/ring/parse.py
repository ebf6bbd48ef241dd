"""Parsing of ring descriptions and ASCII ring elements.

Ring grammar::

    ring    := base suffix*
    base    := "ZZ" | "QQ" | "GF(" prime ")"
    suffix  := "[" name ("," name)* "]"     polynomial ring
             | "/(" poly ")"                quotient of the last univariate layer
             | "[1/" element "]"            localization at one element

Elements use ``^`` for powers; ``*`` may be omitted (``27s^4``).
"""

from __future__ import annotations

import ast
import re

from coverforge.ring.base import GF, QQ, ZZ, Elem, Ring

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message, text="", column=None):
        self.text = text
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{where}: {text!r}" if text else message)


def _to_python(text: str) -> str:
    out = []
    prev = None
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", text, pos + 1)
        num, name, op = m.groups()
        kind = "num" if num else "name" if name else op
        if prev in ("num", "name", ")") and kind in ("num", "name", "("):
            out.append("*")
        if op == "^":
            out.append("**")
        else:
            out.append(num or name or op)
        prev = kind
        pos = m.end()
    return " ".join(out)


def parse_element(ring: Ring, text: str) -> Elem:
    """Evaluate an ASCII expression in ``ring``."""
    src = _to_python(text)
    if not src:
        raise ParseError("empty expression", text, 1)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError("syntax error", text, exc.offset) from None
    names = ring.gens()

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return ring(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ParseError(f"unknown symbol {node.id!r} in {ring.describe()}", text)
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ParseError("exponents must be integer literals", text)
                return ev(node.left) ** node.right.value
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ParseError("unsupported expression", text)

    return ev(tree)


_BASE = re.compile(r"\s*(ZZ|QQ|GF\(\s*(\d+)\s*\))")


def _matching(text: str, start: int, open_ch: str, close_ch: str) -> int:
    depth = 0
    for i in range(start, len(text)):
        if text[i] == open_ch:
            depth += 1
        elif text[i] == close_ch:
            depth -= 1
            if depth == 0:
                return i
    raise ParseError(f"unbalanced {open_ch!r}", text, start + 1)


def parse_ring(text: str) -> Ring:
    from coverforge.ring.extensions import Localization, QuotientRing
    from coverforge.ring.poly import PolynomialRing

    m = _BASE.match(text)
    if not m:
        raise ParseError("expected ZZ, QQ or GF(p)", text, 1)
    if m.group(2):
        try:
            ring: Ring = GF(int(m.group(2)))
        except ValueError as exc:
            raise ParseError(str(exc), text, 1) from None
    else:
        ring = ZZ if m.group(1) == "ZZ" else QQ
    pos = m.end()
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "[":
            end = _matching(text, pos, "[", "]")
            inner = text[pos + 1:end].strip()
            if inner.startswith("1/"):
                ring = Localization(ring, parse_element(ring, inner[2:]))
            else:
                names = [n.strip() for n in inner.split(",")]
                if not all(re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n) for n in names):
                    raise ParseError("bad variable list", text, pos + 2)
                ring = PolynomialRing(ring, names)
            pos = end + 1
        elif text.startswith("/(", pos):
            end = _matching(text, pos + 1, "(", ")")
            if not isinstance(ring, PolynomialRing) or ring.nvars != 1:
                raise ParseError("a quotient must follow a univariate polynomial layer", text, pos + 1)
            modulus = parse_element(ring, text[pos + 2:end])
            try:
                ring = QuotientRing(ring.base, ring.names[0], modulus)
            except ValueError as exc:
                raise ParseError(str(exc), text, pos + 1) from None
            pos = end + 1
        else:
            raise ParseError("unexpected character", text, pos + 1)
    return ring
