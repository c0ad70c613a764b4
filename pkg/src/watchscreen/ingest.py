"""Extraction of screenable text from SWIFT MT style messages."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

DEFAULT_TAGS = ("50A", "50F", "50K", "59", "70")

_BLOCK_OPEN = re.compile(r"\{([0-9A-Za-z]+):")
_TAG_LINE = re.compile(r":([0-9]{2}[A-Z]?):")
_CODE_WORD = re.compile(r"^/[A-Z0-9]{1,8}/")


class MtParseError(ValueError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        super().__init__(f"{message} (offset {offset})" if offset is not None else message)


@dataclass
class MtField:
    tag: str
    value: str
    lines: List[str] = field(default_factory=list)


@dataclass
class MtMessage:
    blocks: Dict[str, str]
    fields: List[MtField]

    def get(self, tag: str) -> str | None:
        for f in self.fields:
            if f.tag == tag:
                return f.value
        return None


def _closing_brace(raw: str, start: int) -> int:
    depth = 1
    for i in range(start, len(raw)):
        if raw[i] == "{":
            depth += 1
        elif raw[i] == "}":
            depth -= 1
            if depth == 0:
                return i
    raise MtParseError("unterminated block", start)


def _parse_fields(content: str, base: int) -> List[MtField]:
    fields: List[MtField] = []
    offset = base
    for line in content.splitlines(keepends=True):
        text = line.rstrip("\r\n")
        if text.startswith(":"):
            m = _TAG_LINE.match(text)
            if m is None:
                raise MtParseError(f"malformed tag in {text[:12]!r}", offset)
            fields.append(MtField(m.group(1), "", [text[m.end():]]))
        elif text.strip():
            if not fields:
                raise MtParseError("text before the first field tag", offset)
            fields[-1].lines.append(text)
        offset += len(line)
    for f in fields:
        f.value = " ".join(part.strip() for part in f.lines if part.strip())
    return fields


def parse_mt(raw: str) -> MtMessage:
    """Split an MT message into its ``{n:...}`` blocks and block-4 fields.

    Block 4 runs until a line starting with ``-}``; field values spanning
    several lines are joined with single spaces.
    """
    blocks: Dict[str, str] = {}
    fields: List[MtField] = []
    pos = 0
    while True:
        brace = raw.find("{", pos)
        if brace < 0:
            break
        m = _BLOCK_OPEN.match(raw, brace)
        if m is None:
            raise MtParseError("malformed block header", brace)
        block_id = m.group(1)
        start = m.end()
        if block_id == "4":
            end = raw.find("\n-}", start)
            if end < 0:
                raise MtParseError("block 4 is not terminated by '-}'", start)
            content = raw[start:end + 1]
            fields = _parse_fields(content, start)
            pos = end + 3
        else:
            end = _closing_brace(raw, start)
            content = raw[start:end]
            pos = end + 1
        blocks[block_id] = content
    if "4" not in blocks:
        raise MtParseError("message has no block 4")
    return MtMessage(blocks, fields)


def _strip_codes(lines: Iterable[str]) -> List[str]:
    kept = []
    for line in lines:
        line = line.strip()
        if line.startswith("/"):
            if " " not in line:
                # whole line is an account number or reference code
                continue
            line = _CODE_WORD.sub("", line, count=1)
        if line:
            kept.append(line)
    return kept


def screenable_fields(msg: MtMessage, tags: Iterable[str] = DEFAULT_TAGS) -> List[Tuple[str, str]]:
    wanted = set(tags)
    out = []
    for f in msg.fields:
        if f.tag in wanted:
            text = " ".join(_strip_codes(f.lines))
            if text:
                out.append((f.tag, text))
    return out


def screenable_text(payload: str, fmt: str = "text", tags: Iterable[str] = DEFAULT_TAGS) -> str:
    """Text to screen for a payload; ``mt`` payloads contribute their whitelisted fields."""
    if fmt == "text":
        return payload
    if fmt == "mt":
        return "\n".join(text for _, text in screenable_fields(parse_mt(payload), tags))
    raise ValueError(f"unknown format {fmt!r}, expected 'mt' or 'text'")
