"""Document and gold-reference data model, plus the JSON-lines file formats.

Documents arrive pre-tokenized and POS-tagged, one JSON object per line::

    {"id": "d1", "tokens": [{"w": "inverse", "p": "JJ", "s": 0}, ...]}

Word offsets are implicit (1-based position in the token array).
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping


class CorpusFormatError(ValueError):
    """Raised when a document, gold or tag-map file cannot be parsed."""


class Coarse(enum.Enum):
    NOUN = "N"
    ADJECTIVE = "A"
    OTHER = "O"


DEFAULT_TAG_PREFIXES = {"NN": Coarse.NOUN, "JJ": Coarse.ADJECTIVE}


@dataclass(frozen=True)
class TagMap:
    """Maps fine-grained POS tags to coarse categories by longest prefix.

    Tags matching no prefix map to ``Coarse.OTHER``, so the map is total.
    """

    prefixes: Mapping[str, Coarse] = field(
        default_factory=lambda: dict(DEFAULT_TAG_PREFIXES)
    )

    def coarse(self, pos_tag: str) -> Coarse:
        best = None
        for prefix in self.prefixes:
            if pos_tag.startswith(prefix) and (best is None or len(prefix) > len(best)):
                best = prefix
        return Coarse.OTHER if best is None else self.prefixes[best]

    @classmethod
    def from_json(cls, fp: IO) -> "TagMap":
        try:
            raw = json.load(fp)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"tag map is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise CorpusFormatError("tag map must be a JSON object")
        prefixes = {}
        for prefix, value in raw.items():
            try:
                prefixes[prefix] = Coarse(value)
            except ValueError:
                raise CorpusFormatError(
                    f"tag map value for {prefix!r} must be one of N, A, O, got {value!r}"
                ) from None
        return cls(prefixes)


DEFAULT_TAG_MAP = TagMap()


def map_pos(pos_tag: str, tag_map: TagMap = DEFAULT_TAG_MAP) -> Coarse:
    return tag_map.coarse(pos_tag)


@dataclass(frozen=True)
class Token:
    surface: str
    pos_tag: str
    coarse: Coarse
    sentence_index: int
    offset: int


@dataclass(frozen=True)
class Document:
    id: str
    tokens: tuple[Token, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    @classmethod
    def from_tagged(
        cls,
        doc_id: str,
        tagged: Iterable[tuple[str, str, int]],
        tag_map: TagMap = DEFAULT_TAG_MAP,
    ) -> "Document":
        """Build a document from ``(word, pos_tag, sentence_index)`` triples."""
        tokens = tuple(
            Token(w, p, tag_map.coarse(p), s, i)
            for i, (w, p, s) in enumerate(tagged, start=1)
        )
        _check_document(doc_id, tokens)
        return cls(doc_id, tokens)


def _check_document(doc_id: str, tokens: tuple[Token, ...]) -> None:
    if not isinstance(doc_id, str) or not doc_id:
        raise CorpusFormatError("document id must be a non-empty string")
    if not tokens:
        raise CorpusFormatError(f"document {doc_id!r} has an empty token list")
    prev = 0
    for tok in tokens:
        if tok.sentence_index < prev:
            raise CorpusFormatError(
                f"document {doc_id!r}: sentence index decreases at offset {tok.offset}"
            )
        prev = tok.sentence_index


def _parse_token(raw, doc_id: str, offset: int, tag_map: TagMap) -> Token:
    if not isinstance(raw, dict):
        raise CorpusFormatError(f"document {doc_id!r}: token {offset} is not an object")
    for name in ("w", "p", "s"):
        if name not in raw:
            raise CorpusFormatError(
                f"document {doc_id!r}: token {offset} is missing field {name!r}"
            )
    w, p, s = raw["w"], raw["p"], raw["s"]
    if not isinstance(w, str) or not w:
        raise CorpusFormatError(f"document {doc_id!r}: token {offset} has a bad word")
    if not isinstance(p, str):
        raise CorpusFormatError(f"document {doc_id!r}: token {offset} has a bad tag")
    if isinstance(s, bool) or not isinstance(s, int) or s < 0:
        raise CorpusFormatError(
            f"document {doc_id!r}: token {offset} has a bad sentence index"
        )
    return Token(w, p, tag_map.coarse(p), s, offset)


def parse_documents(stream: IO[bytes] | Iterable[bytes], tag_map: TagMap = DEFAULT_TAG_MAP) -> list[Document]:
    """Parse a JSON-lines document stream.

    Blank lines are ignored. Errors carry the 1-based line number.
    """
    docs = []
    seen = set()
    for lineno, line in enumerate(stream, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"line {lineno}: malformed record ({exc.msg})") from exc
        if not isinstance(record, dict):
            raise CorpusFormatError(f"line {lineno}: record is not a JSON object")
        for name in ("id", "tokens"):
            if name not in record:
                raise CorpusFormatError(f"line {lineno}: missing required field {name!r}")
        doc_id, raw_tokens = record["id"], record["tokens"]
        if not isinstance(doc_id, str) or not doc_id:
            raise CorpusFormatError(f"line {lineno}: id must be a non-empty string")
        if doc_id in seen:
            raise CorpusFormatError(f"line {lineno}: duplicate document id {doc_id!r}")
        if not isinstance(raw_tokens, list):
            raise CorpusFormatError(f"line {lineno}: tokens must be an array")
        try:
            tokens = tuple(
                _parse_token(t, doc_id, i, tag_map)
                for i, t in enumerate(raw_tokens, start=1)
            )
            _check_document(doc_id, tokens)
        except CorpusFormatError as exc:
            raise CorpusFormatError(f"line {lineno}: {exc}") from None
        seen.add(doc_id)
        docs.append(Document(doc_id, tokens))
    return docs


def serialize_documents(docs: Iterable[Document]) -> bytes:
    lines = []
    for doc in docs:
        record = {
            "id": doc.id,
            "tokens": [
                {"w": t.surface, "p": t.pos_tag, "s": t.sentence_index}
                for t in doc.tokens
            ],
        }
        lines.append(json.dumps(record, ensure_ascii=False) + "\n")
    return "".join(lines).encode("utf-8")


def normalize_phrase(phrase: str) -> str:
    return " ".join(phrase.split()).lower()


@dataclass(frozen=True)
class GoldReferences:
    by_doc: Mapping[str, tuple[str, ...]]

    def __getitem__(self, doc_id: str) -> tuple[str, ...]:
        return self.by_doc[doc_id]

    def __contains__(self, doc_id: object) -> bool:
        return doc_id in self.by_doc


def parse_gold(stream: IO[bytes] | bytes | str) -> GoldReferences:
    """Parse the gold file: one JSON object mapping document id to phrases."""
    data = stream if isinstance(stream, (bytes, str)) else stream.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(f"gold file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise CorpusFormatError("gold file must be a JSON object")
    by_doc = {}
    for doc_id, phrases in raw.items():
        if not isinstance(phrases, list):
            raise CorpusFormatError(f"gold entry for {doc_id!r} must be an array")
        cleaned = []
        for phrase in phrases:
            if not isinstance(phrase, str):
                raise CorpusFormatError(f"gold entry for {doc_id!r} holds a non-string")
            norm = normalize_phrase(phrase)
            if not norm:
                raise CorpusFormatError(f"gold entry for {doc_id!r} holds an empty phrase")
            cleaned.append(norm)
        if not cleaned:
            raise CorpusFormatError(f"gold entry for {doc_id!r} is empty")
        by_doc[doc_id] = tuple(cleaned)
    return GoldReferences(by_doc)
