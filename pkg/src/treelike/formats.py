"""Plain-text input formats and their parser / serializer.

Three kinds of document, told apart by the first keyword::

    SEMILATTICE n        INVSGP n             BLOCKS alphabet=ab
    <n rows of n ints>   <n rows of n ints>   UNIVERSE a b
                         ZERO z               BLOCK X1: a
                                              BLOCK X2: b
                                              MAP a -> aa
                                              MAP b -> ab

Lines starting with ``#`` and blank lines are ignored.  In BLOCKS files
``.`` spells the empty word and the alphabet may be given as letters
(``abc``) or as a range (``a-c``).
"""

from __future__ import annotations

import hashlib
import re
import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import blocks as blk
from . import cylinders as cyl
from .errors import TreelikeError, ValidationError
from .lattice import FiniteSemilattice, validate_semilattice
from .semigroup import FiniteInverseSemigroup, adjoin_zero, validate_inverse_semigroup

KINDS = ("SEMILATTICE", "INVSGP", "BLOCKS")


class DocumentError(TreelikeError):
    """A parse or validation failure, located in the source text."""

    def __init__(self, kind: str, message: str, line: int | None = None,
                 column: int | None = None, lines: tuple[int, ...] = ()):
        self.kind, self.message, self.line, self.column = kind, message, line, column
        self.lines = lines or ((line,) if line is not None else ())
        where = f"line {line}" + (f", column {column}" if column is not None else "") if line else ""
        super().__init__(f"{kind}: {message}" + (f" ({where})" if where else ""))

    def as_dict(self) -> dict:
        return {
            "error": self.kind,
            "message": self.message,
            "line": self.line,
            "column": self.column,
            "lines": list(self.lines),
        }


@dataclass(frozen=True)
class InputDocument:
    kind: str
    payload: Any
    source: str = field(default="<string>", compare=False)
    digest: str = field(default="", compare=False)
    warnings: tuple[str, ...] = field(default=(), compare=False)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        yield no, raw, s


def _column(raw: str, token: str) -> int:
    return raw.find(token) + 1


def _parse_int_rows(body, n: int, header_line: int) -> tuple[list[list[int]], list]:
    rows = []
    rest = []
    for no, raw, s in body:
        if len(rows) < n:
            row = []
            for tok in s.split():
                try:
                    row.append(int(tok))
                except ValueError:
                    raise DocumentError("SyntaxError", f"not an integer: {tok!r}", no,
                                        _column(raw, tok)) from None
            if len(row) != n:
                raise DocumentError("SyntaxError", f"expected {n} entries, found {len(row)}", no)
            rows.append(row)
        else:
            rest.append((no, raw, s))
    if len(rows) < n:
        raise DocumentError("SyntaxError", f"expected {n} rows, found {len(rows)}", header_line)
    return rows, rest


def _header_size(no: int, raw: str, parts: list[str]) -> int:
    if len(parts) != 2:
        raise DocumentError("SyntaxError", f"header must be '{parts[0]} n'", no)
    try:
        n = int(parts[1])
    except ValueError:
        raise DocumentError("SyntaxError", f"bad size {parts[1]!r}", no, _column(raw, parts[1])) from None
    if n < 1:
        raise DocumentError("SyntaxError", "size must be positive", no)
    return n


def _validation(exc: ValidationError, line: int | None = None, lines=()) -> DocumentError:
    return DocumentError(type(exc).__name__, str(exc), line, None, tuple(lines))


def _parse_semilattice(header, body) -> FiniteSemilattice:
    no, raw, parts = header
    n = _header_size(no, raw, parts)
    rows, rest = _parse_int_rows(body, n, no)
    if rest:
        raise DocumentError("SyntaxError", "unexpected content after the table", rest[0][0])
    try:
        return validate_semilattice(rows)
    except ValidationError as exc:
        raise _validation(exc, no) from exc


def _parse_invsgp(header, body, adjoin: bool) -> FiniteInverseSemigroup:
    no, raw, parts = header
    n = _header_size(no, raw, parts)
    rows, rest = _parse_int_rows(body, n, no)
    zero = 0
    zero_given = False
    for lno, lraw, s in rest:
        toks = s.split()
        if toks[0] != "ZERO" or len(toks) != 2 or zero_given:
            raise DocumentError("SyntaxError", f"unexpected line {s!r}", lno)
        try:
            zero = int(toks[1])
        except ValueError:
            raise DocumentError("SyntaxError", f"bad zero {toks[1]!r}", lno,
                                _column(lraw, toks[1])) from None
        zero_given = True
    if adjoin:
        if zero_given:
            raise DocumentError("SyntaxError", "--adjoin-zero given but the file declares ZERO", no)
        rows, zero = adjoin_zero(rows)
    try:
        return validate_inverse_semigroup(rows, zero)
    except ValidationError as exc:
        raise _validation(exc, no) from exc


_ALPHA = re.compile(r"^alphabet=(\S+)$")


def parse_alphabet(text: str) -> str:
    m = re.fullmatch(r"([A-Za-z])-([A-Za-z])", text)
    if m:
        lo, hi = m.group(1), m.group(2)
        letters = string.ascii_letters
        if lo.islower() != hi.islower() or lo > hi:
            raise ValueError(f"bad letter range {text!r}")
        return "".join(c for c in letters if lo <= c <= hi)
    if not all(c in string.ascii_letters for c in text):
        raise ValueError(f"alphabet must consist of ASCII letters: {text!r}")
    return text


def _word(tok: str) -> str:
    return "" if tok == "." else tok


def _spell(w: str) -> str:
    return w if w else "."


def _parse_blocks(header, body) -> tuple[blk.BlockSystem, list[str]]:
    no, raw, parts = header
    if len(parts) != 2 or not _ALPHA.match(parts[1]):
        raise DocumentError("SyntaxError", "header must be 'BLOCKS alphabet=<letters>'", no)
    try:
        alphabet = cyl.check_alphabet(parse_alphabet(_ALPHA.match(parts[1]).group(1)))
    except (ValueError, ValidationError) as exc:
        raise DocumentError("SyntaxError", str(exc), no, _column(raw, parts[1])) from None
    universe: list[str] | None = None
    universe_line = no
    block_names: list[str] = []
    block_words: list[list[str]] = []
    block_lines: list[int] = []
    pairs: list[tuple[str, str]] = []
    pair_lines: list[int] = []
    warnings: list[str] = []

    def words(lno, lraw, toks):
        out = []
        for t in toks:
            w = _word(t)
            for c in w:
                if c not in alphabet:
                    raise DocumentError("BadLetter", f"letter {c!r} not in alphabet {alphabet!r}",
                                        lno, _column(lraw, t))
            out.append(w)
        return out

    for lno, lraw, s in body:
        key, _, rest = s.partition(" ")
        if key == "UNIVERSE":
            if universe is not None:
                raise DocumentError("SyntaxError", "second UNIVERSE line", lno)
            universe = words(lno, lraw, rest.split())
            universe_line = lno
        elif key == "BLOCK":
            name, colon, ws = rest.partition(":")
            name = name.strip()
            if not colon or not name or " " in name:
                raise DocumentError("SyntaxError", "expected 'BLOCK <name>: words'", lno)
            if name in block_names:
                raise DocumentError("SyntaxError", f"duplicate block name {name!r}", lno)
            block_names.append(name)
            block_words.append(words(lno, lraw, ws.split()))
            block_lines.append(lno)
        elif key == "MAP":
            toks = rest.split()
            if len(toks) != 3 or toks[1] != "->":
                raise DocumentError("SyntaxError", "expected 'MAP u -> v'", lno)
            u, v = words(lno, lraw, [toks[0], toks[2]])
            pairs.append((u, v))
            pair_lines.append(lno)
        else:
            raise DocumentError("SyntaxError", f"unknown directive {key!r}", lno, _column(lraw, key))
    if universe is None:
        raise DocumentError("SyntaxError", "missing UNIVERSE line", no)
    for label, ws, lno in [("UNIVERSE", universe, universe_line)] + list(
        zip(block_names, block_words, block_lines)
    ):
        _, redundant = cyl.normalize(alphabet, ws)
        for w in redundant:
            warnings.append(f"line {lno}: word {_spell(w)} in {label} is covered by a shorter word")

    def map_lines(*us):
        return tuple(pair_lines[i] for i, (u, _) in enumerate(pairs) if u in us)

    def image_lines(*vs):
        return tuple(pair_lines[i] for i, (_, v) in enumerate(pairs) if v in vs)

    try:
        system = blk.validate_system(alphabet, universe, block_words, pairs, block_names)
    except cyl.DomainNotPrefixFree as exc:
        lines = map_lines(*exc.witness)
        raise DocumentError("NotPrefixFree",
                            f"MAP domain words {_spell(exc.witness[0])} and {_spell(exc.witness[1])} overlap",
                            lines[0] if lines else None, None, lines) from exc
    except cyl.NotInjective as exc:
        lines = image_lines(*exc.witness)
        raise DocumentError("NotInjective",
                            f"MAP image words {_spell(exc.witness[0])} and {_spell(exc.witness[1])} overlap",
                            lines[0] if lines else None, None, lines) from exc
    except blk.BlocksOverlap as exc:
        i, j = exc.witness
        lines = (block_lines[i], block_lines[j])
        raise DocumentError("BlocksOverlap", f"blocks {block_names[i]} and {block_names[j]} overlap",
                            lines[0], None, lines) from exc
    except blk.EmptyBlock as exc:
        i = exc.witness[0]
        if isinstance(i, int):
            raise DocumentError("EmptyBlock", f"block {block_names[i]} is empty", block_lines[i]) from exc
        raise DocumentError("EmptyBlock", "no BLOCK lines", no) from exc
    except ValidationError as exc:
        raise _validation(exc, no) from exc
    return system, warnings


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def parse_text(text: str, source: str = "<string>", adjoin_zero: bool = False) -> InputDocument:
    body = list(_lines(text))
    if not body:
        raise DocumentError("SyntaxError", "empty document")
    no, raw, s = body[0]
    parts = s.split()
    kind = parts[0]
    if kind not in KINDS:
        raise DocumentError("UnknownHeader", f"unknown header {kind!r}", no, _column(raw, kind))
    if adjoin_zero and kind != "INVSGP":
        raise DocumentError("SyntaxError", "--adjoin-zero applies to INVSGP documents only", no)
    header = (no, raw, parts)
    warnings: list[str] = []
    if kind == "SEMILATTICE":
        payload = _parse_semilattice(header, body[1:])
    elif kind == "INVSGP":
        payload = _parse_invsgp(header, body[1:], adjoin_zero)
    else:
        payload, warnings = _parse_blocks(header, body[1:])
    return InputDocument(kind, payload, source, digest_bytes(text.encode()), tuple(warnings))


def parse(path: str | Path, adjoin_zero: bool = False) -> InputDocument:
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise DocumentError("IOError", str(exc)) from exc
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DocumentError("SyntaxError", f"not UTF-8: {exc}") from exc
    doc = parse_text(text, str(p), adjoin_zero)
    return InputDocument(doc.kind, doc.payload, str(p), digest_bytes(data), doc.warnings)


def _table_lines(table) -> list[str]:
    width = max(len(str(len(table) - 1)), 1)
    return [" ".join(str(x).rjust(width) for x in row) for row in table]


def dump(doc: InputDocument) -> str:
    """Serialize a document; parsing the result gives an equal document."""
    p = doc.payload
    if doc.kind == "SEMILATTICE":
        lines = [f"SEMILATTICE {p.size}"] + _table_lines(p.table)
    elif doc.kind == "INVSGP":
        lines = [f"INVSGP {p.size}"] + _table_lines(p.product) + [f"ZERO {p.zero}"]
    elif doc.kind == "BLOCKS":
        lines = [f"BLOCKS alphabet={p.alphabet}",
                 "UNIVERSE " + " ".join(_spell(w) for w in p.universe.sorted_words())]
        for name, X in zip(p.names, p.blocks):
            lines.append(f"BLOCK {name}: " + " ".join(_spell(w) for w in X.sorted_words()))
        for u, v in p.map.pairs:
            lines.append(f"MAP {_spell(u)} -> {_spell(v)}")
    else:
        raise ValueError(f"unknown kind {doc.kind!r}")
    return "\n".join(lines) + "\n"
