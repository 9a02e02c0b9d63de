"""Reading clinical transcript markup and token/tag files.

Transcribers mark dysfluencies inline::

    the= the mother pl- the cleaning uh d- um # I forget what you call it

``=`` after a word flags a repetition, a trailing ``-`` a partial word, and a
standalone ``#`` the end of a restart. The markup is applied inconsistently
in real data; it is read as written and never repaired.

Tagged files hold one ``token<TAB>tag`` pair per line with a blank line
between sentences. Tags are opaque strings, so ``DT_RE``, ``PT`` and ``#``
pass through untouched.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO

RESTART_MARK = "#"
REPETITION_MARK = "="


@dataclass(frozen=True)
class MarkedToken:
    surface: str
    tag: Optional[str] = None
    is_repetition: bool = False
    is_partial: bool = False
    is_restart_end: bool = False

    @property
    def token(self) -> str:
        """The token as it was written, markup included."""
        if self.is_restart_end:
            return RESTART_MARK + (REPETITION_MARK if self.is_repetition else "")
        return self.surface + (REPETITION_MARK if self.is_repetition else "")


def parse_token(token: str, tag: Optional[str] = None) -> MarkedToken:
    rep = False
    body = token
    if len(body) >= 2 and body.endswith(REPETITION_MARK):
        rep = True
        body = body[:-1]
    if body == RESTART_MARK:
        return MarkedToken("", tag, is_repetition=rep, is_restart_end=True)
    partial = len(body) >= 2 and body.endswith("-")
    return MarkedToken(body, tag, is_repetition=rep, is_partial=partial)


def parse_transcript_line(line: str) -> list[MarkedToken]:
    return [parse_token(tok) for tok in line.split()]


def read_transcript(text: str) -> list[list[MarkedToken]]:
    """One utterance per line; blank lines are skipped."""
    return [parse_transcript_line(line) for line in text.splitlines() if line.strip()]


class TaggedFileError(ValueError):
    pass


def read_tagged_file(text: str) -> list[list[MarkedToken]]:
    sentences: list[list[MarkedToken]] = []
    current: list[MarkedToken] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            if current:
                sentences.append(current)
                current = []
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0] or not fields[1]:
            raise TaggedFileError(
                f"line {lineno}: expected 'token<TAB>tag', got {len(fields)} field(s)"
            )
        current.append(parse_token(fields[0], fields[1]))
    if current:
        sentences.append(current)
    return sentences


def format_tagged(sentences: Iterable[Sequence[MarkedToken]]) -> str:
    blocks = []
    for sent in sentences:
        blocks.append("".join(f"{tok.token}\t{tok.tag or ''}\n" for tok in sent))
    return "\n".join(blocks)


def write_tagged_file(sentences: Iterable[Sequence[MarkedToken]], fh: TextIO) -> None:
    fh.write(format_tagged(sentences))


@dataclass(frozen=True)
class CorpusStats:
    sentences: int
    tokens: int
    mean_length: Optional[float]
    std_length: Optional[float]

    def as_row(self) -> str:
        if self.mean_length is None:
            return f"{self.sentences}\t{self.tokens}\t-"
        return f"{self.sentences:,}\t{self.tokens:,}\t{self.mean_length:.2f} ({self.std_length:.2f})"


def corpus_stats(sentences: Sequence[Sequence]) -> CorpusStats:
    """Sentence/token counts plus mean and population std of sentence length."""
    lengths = [len(s) for s in sentences]
    if not lengths:
        return CorpusStats(0, 0, None, None)
    return CorpusStats(
        len(lengths), sum(lengths), statistics.fmean(lengths), statistics.pstdev(lengths)
    )
