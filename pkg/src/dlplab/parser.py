"""Text grammar for ground programs and its deterministic renderer.

Grammar (one statement per ``.``)::

    stmt    := head ":-" body "." | head "." | ":-" body "." | "#update."
    head    := literal
    body    := literal ("," literal)*
    literal := "not"* "-"? atom
    atom    := identifier, optionally with a parenthesised ground argument list

``%`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import ParseError
from .syntax import Dlp, Literal, ObjLit, Program, Rule, RuleOccurrence

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<update>\#update\b)
  | (?P<if>:-|<-|←)
  | (?P<comma>,)
  | (?P<disj>[;|])
  | (?P<dot>\.)
  | (?P<minus>-|¬)
  | (?P<tilde>~)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*(?:\([A-Za-z0-9_, ]*\))?)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                if kind == "ident":
                    value = re.sub(r"\s+", "", value)
                    if value == "not":
                        kind = "not"
                tokens.append((kind, value, line, col))
            col += len(m.group())
        pos = m.end()
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int, int]:
        return self.tokens[self.i]

    def take(self, kind: str | None = None) -> tuple[str, str, int, int]:
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            expected = {"dot": "'.'", "ident": "an atom"}.get(kind, kind)
            got = tok[1] or "end of input"
            raise ParseError(f"expected {expected}, got {got!r}", tok[2], tok[3])
        self.i += 1
        return tok

    def literal(self) -> Literal:
        naf = False
        while self.peek()[0] in ("not", "tilde"):
            self.take()
            naf = not naf
        negative = False
        if self.peek()[0] == "minus":
            self.take()
            negative = True
        name = self.take("ident")[1]
        return Literal(ObjLit(name, negative), naf)

    def body(self) -> list[Literal]:
        lits = [self.literal()]
        while self.peek()[0] == "comma":
            self.take()
            lits.append(self.literal())
        return lits

    def statements(self) -> list[list[Rule]]:
        """Return the rules grouped into layers split at ``#update.``."""
        layers: list[list[Rule]] = [[]]
        while self.peek()[0] != "eof":
            kind, _, line, col = self.peek()
            if kind == "update":
                self.take()
                self.take("dot")
                layers.append([])
                continue
            head: list[Literal] = []
            if kind != "if":
                head.append(self.literal())
                # a second head literal is a disjunction, which is not supported
                if self.peek()[0] in ("comma", "disj"):
                    tok = self.peek()
                    raise ParseError("disjunctive heads are not supported "
                                     "(at most one head literal per rule)", tok[2], tok[3])
            body: list[Literal] = []
            if self.peek()[0] == "if":
                self.take()
                if self.peek()[0] != "dot":
                    body = self.body()
            elif not head:
                raise ParseError("empty statement", line, col)
            self.take("dot")
            layers[-1].append(Rule(frozenset(head), frozenset(body)))
        return layers


def _parse_layers(text: str) -> list[list[Rule]]:
    return _Parser(text).statements()


def parse_program(text: str, alphabet_hint: Iterable[str] = (), layer: int = 0) -> Program:
    """Parse one program; occurrence ids follow textual order."""
    layers = _parse_layers(text)
    if len(layers) > 1:
        tok = next(t for t in _tokenize(text) if t[0] == "update")
        raise ParseError("'#update.' separates DLP layers; use parse_dlp", tok[2], tok[3])
    return Program.of(layers[0], layer=layer, alphabet=alphabet_hint)


def parse_rule(text: str) -> Rule:
    rules = _parse_layers(text if text.strip().endswith(".") else text + ".")
    if len(rules) != 1 or len(rules[0]) != 1:
        raise ParseError("expected exactly one rule", 1, 1)
    return rules[0][0]


def parse_dlp(texts: str | Sequence[str], alphabet_hint: Iterable[str] = ()) -> Dlp:
    """Parse a DLP from a list of layer texts, or one text using ``#update.``.

    Each list element may itself contain ``#update.`` separators.
    """
    if isinstance(texts, str):
        texts = [texts]
    groups: list[list[Rule]] = []
    for t in texts:
        groups.extend(_parse_layers(t))
    layers = [Program.of(rules, layer=i) for i, rules in enumerate(groups)]
    return Dlp(tuple(layers), frozenset(alphabet_hint))


def render_rule(rule: Rule) -> str:
    return str(rule)


def render_program(program: Program | Iterable[Rule | RuleOccurrence]) -> str:
    rules = program.rules if isinstance(program, Program) else program
    lines = [str(r.rule if isinstance(r, RuleOccurrence) else r) for r in rules]
    return "\n".join(lines) + ("\n" if lines else "")


def render_dlp(dlp: Dlp) -> str:
    return "#update.\n".join(render_program(p) for p in dlp.layers)
