"""S-expression reader that keeps source positions for error messages."""

from __future__ import annotations

__all__ = ["Sym", "SList", "PDDLSyntaxError", "read_sexpr"]


class PDDLSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


class Sym(str):
    """Atom token; compares as a plain (lower-cased) string."""

    line: int = 0
    col: int = 0

    def __new__(cls, text: str, line: int = 0, col: int = 0):
        obj = super().__new__(cls, text.lower())
        obj.line = line
        obj.col = col
        return obj


class SList(list):
    line: int = 0
    col: int = 0

    def __init__(self, items=(), line: int = 0, col: int = 0):
        super().__init__(items)
        self.line = line
        self.col = col


def _tokens(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
        elif ch.isspace():
            i += 1
            col += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            yield ch, line, col
            i += 1
            col += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            yield text[i:j], line, col
            col += j - i
            i = j
    yield None, line, col


def read_sexpr(text: str) -> SList:
    """Parse exactly one top-level list."""
    stack: list[SList] = []
    result = None
    for tok, line, col in _tokens(text):
        if tok is None:
            if stack:
                raise PDDLSyntaxError("unbalanced '(': missing ')'", stack[-1].line, stack[-1].col)
            if result is None:
                raise PDDLSyntaxError("empty input", line, col)
            return result
        if result is not None:
            raise PDDLSyntaxError(f"unexpected {tok!r} after end of definition", line, col)
        if tok == "(":
            stack.append(SList(line=line, col=col))
        elif tok == ")":
            if not stack:
                raise PDDLSyntaxError("unexpected ')'", line, col)
            done = stack.pop()
            if stack:
                stack[-1].append(done)
            else:
                result = done
        else:
            if not stack:
                raise PDDLSyntaxError(f"unexpected atom {tok!r} outside parentheses", line, col)
            stack[-1].append(Sym(tok, line, col))
    raise AssertionError("unreachable")
