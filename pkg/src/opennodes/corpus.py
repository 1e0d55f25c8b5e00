"""Corpus ingestion, length filtering, per-sentence loads, aggregation.

Input is one sentence per line: either JSONL objects carrying an `id`,
a `group`, and exactly one of `tree` (nested arrays, leaves are words)
or `bracketed` (labeled bracketed text), or plain bracketed lines.  For
every sentence the pipeline computes the load of its given tree and of
the left-branching baseline over the same word count, filters outliers
by the 1.5 IQR sentence-length rule, and aggregates per-group curves.

Quartiles interpolate linearly between order statistics (the numpy /
R type-7 convention); spreads use the population denominator.  All
emitted tables are sorted, so results do not depend on input order or
worker count.
"""
from __future__ import annotations

import io
import json
import unicodedata
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import metrics, trees
from .errors import EmptyAfterFilter, EmptyInput, IngestError, OpenNodesError
from .generate import LINEAR, closed_form_theta
from .metrics import MetricConfig


@dataclass(frozen=True)
class CorpusDocument:
    id: str
    group: str
    tree: trees.SyntaxTree

    def __post_init__(self):
        if not self.group:
            raise ValueError("group must be non-empty")

    @property
    def tokens(self) -> list[str]:
        return self.tree.leaves()


@dataclass(frozen=True)
class SentenceRecord:
    id: str
    group: str
    length: int
    theta_hier: float
    theta_linear: float
    entropy_bits: float
    kept: bool


@dataclass(frozen=True)
class FilterBounds:
    q1: float
    q3: float
    iqr: float
    lower: float
    upper: float

    def contains(self, length: float) -> bool:
        return self.lower <= length <= self.upper


@dataclass(frozen=True)
class PerLengthRow:
    length: int
    mean_theta_hier: float
    mean_theta_linear: float
    count: int


@dataclass(frozen=True)
class GroupSummary:
    group: str
    sentence_count: int
    mean_length: float
    sd_length: float
    mean_theta_hier: float
    mean_theta_linear: float
    per_length: tuple


@dataclass(frozen=True)
class GroupStats:
    group: str
    count: int
    mean_length: float
    sd_length: float
    min_length: int
    max_length: int
    q1_length: float
    q3_length: float


# ---------------------------------------------------------------------------
# Ingestion.
# ---------------------------------------------------------------------------


def _is_punct(token: str) -> bool:
    return len(token) > 0 and all(
        unicodedata.category(ch).startswith("P") for ch in token)


def _prune_punct(node):
    """Drop all-punctuation leaves; empty internal nodes vanish with them."""
    if isinstance(node, str):
        return None if _is_punct(node) else node
    kept = tuple(c for c in (_prune_punct(child) for child in node) if c is not None)
    return kept if kept else None


def drop_punct_leaves(tree: trees.SyntaxTree) -> trees.SyntaxTree:
    pruned = _prune_punct(tree.root)
    if pruned is None:
        raise EmptyInput("no tokens left after punctuation removal")
    if isinstance(pruned, str):
        pruned = (pruned,)
    return trees.SyntaxTree(pruned)


def _document_from_json(obj: dict, line_no: int, group_key: str,
                        strip_labels: bool, collapse_unary: bool) -> CorpusDocument:
    if not isinstance(obj, dict):
        raise IngestError(line_no, "line is not a JSON object")
    doc_id = obj.get("id")
    group = obj.get(group_key)
    if not isinstance(doc_id, str) or not doc_id:
        raise IngestError(line_no, "missing or non-string 'id'")
    if not isinstance(group, str) or not group:
        raise IngestError(line_no, f"missing or non-string {group_key!r}")
    has_tree = "tree" in obj
    has_bracketed = "bracketed" in obj
    if has_tree == has_bracketed:
        raise IngestError(line_no, "need exactly one of 'tree' or 'bracketed'")
    try:
        if has_tree:
            tree = trees.SyntaxTree.from_nested(obj["tree"])
        else:
            tree = trees.parse_bracketed(obj["bracketed"],
                                         strip_labels=strip_labels,
                                         collapse_unary=collapse_unary)
    except (OpenNodesError, ValueError) as exc:
        raise IngestError(line_no, str(exc)) from exc
    return CorpusDocument(doc_id, group, tree)


def ingest(lines: Iterable[str], format: str = "jsonl",
           strip_labels: bool = True, collapse_unary: bool = True,
           drop_punct: bool = False, group_key: str = "group",
           default_group: str = "all") -> list[CorpusDocument]:
    """Read corpus lines into documents, in input order.

    format "jsonl" expects the JSONL schema; "bracketed" expects one
    bracketed tree per line, ids are the 1-based line numbers and every
    document lands in default_group.
    """
    if format not in ("jsonl", "bracketed"):
        raise ValueError(f"unknown format {format!r}")
    documents: list[CorpusDocument] = []
    seen_ids: set[str] = set()
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if format == "jsonl":
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(line_no, f"invalid JSON ({exc.msg})") from exc
            doc = _document_from_json(obj, line_no, group_key,
                                      strip_labels, collapse_unary)
        else:
            try:
                tree = trees.parse_bracketed(line, strip_labels=strip_labels,
                                             collapse_unary=collapse_unary)
            except OpenNodesError as exc:
                raise IngestError(line_no, str(exc)) from exc
            doc = CorpusDocument(str(line_no), default_group, tree)
        if drop_punct:
            try:
                doc = CorpusDocument(doc.id, doc.group, drop_punct_leaves(doc.tree))
            except EmptyInput as exc:
                raise IngestError(line_no, str(exc)) from exc
        if doc.id in seen_ids:
            raise IngestError(line_no, f"duplicate id {doc.id!r}")
        seen_ids.add(doc.id)
        documents.append(doc)
    return documents


# ---------------------------------------------------------------------------
# Length filter.
# ---------------------------------------------------------------------------


def _quartile(sorted_values: Sequence[float], p: float) -> float:
    """Linear interpolation between closest order statistics (type 7)."""
    n = len(sorted_values)
    if n == 1:
        return float(sorted_values[0])
    h = (n - 1) * p
    lo = int(h)
    frac = h - lo
    if lo + 1 >= n:
        return float(sorted_values[-1])
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo])


def iqr_filter(lengths: Sequence[int]) -> FilterBounds:
    """Bounds [Q1 - 1.5 IQR, Q3 + 1.5 IQR] over the given lengths."""
    if len(lengths) == 0:
        raise EmptyInput("no lengths to filter")
    ordered = sorted(float(v) for v in lengths)
    q1 = _quartile(ordered, 0.25)
    q3 = _quartile(ordered, 0.75)
    iqr = q3 - q1
    return FilterBounds(q1, q3, iqr, q1 - 1.5 * iqr, q3 + 1.5 * iqr)


# ---------------------------------------------------------------------------
# Per-sentence analysis and aggregation.
# ---------------------------------------------------------------------------


def _sentence_metrics(tree: trees.SyntaxTree) -> tuple[int, float, float]:
    profile = trees.open_node_counts(tree)
    theta = float(metrics.theta_mle(profile))
    entropy = float(metrics.shannon_entropy(profile))
    return profile.n, theta, entropy


def analyze(documents: Sequence[CorpusDocument],
            bounds: FilterBounds | None = None,
            cfg: MetricConfig = MetricConfig(),
            apply_filter: bool = True,
            workers: int = 1) -> list[SentenceRecord]:
    """Per-sentence records in document order.

    With apply_filter on and no explicit bounds, bounds are computed
    from these documents' lengths (one-pass cleaning: the filter never
    re-runs on its own survivors).
    """
    if not documents:
        raise EmptyInput("no documents to analyze")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            computed = list(pool.map(_sentence_metrics,
                                     [d.tree for d in documents], chunksize=64))
    else:
        computed = [_sentence_metrics(d.tree) for d in documents]
    if apply_filter and bounds is None:
        bounds = iqr_filter([n for n, _, _ in computed])
    records = []
    for doc, (n, theta_hier, entropy) in zip(documents, computed):
        kept = bounds.contains(n) if apply_filter else True
        records.append(SentenceRecord(
            doc.id, doc.group, n, theta_hier,
            closed_form_theta(LINEAR, n), entropy, kept))
    return records


def _mean_sd(values: Sequence[float]) -> tuple[float, float]:
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / n
    return mean, var ** 0.5


def _kept_by_group(records: Sequence[SentenceRecord]) -> dict[str, list[SentenceRecord]]:
    if not records:
        raise EmptyInput("no records")
    groups: dict[str, list[SentenceRecord]] = {}
    for rec in records:
        if rec.kept:
            groups.setdefault(rec.group, []).append(rec)
    if not groups:
        raise EmptyAfterFilter("every record was filtered out")
    return groups


def aggregate(records: Sequence[SentenceRecord]) -> list[GroupSummary]:
    """Per-group means and per-length curves over kept records."""
    summaries = []
    for group in sorted(_kept_by_group(records)):
        recs = [r for r in records if r.kept and r.group == group]
        mean_len, sd_len = _mean_sd([r.length for r in recs])
        by_length: dict[int, list[SentenceRecord]] = {}
        for r in recs:
            by_length.setdefault(r.length, []).append(r)
        per_length = tuple(
            PerLengthRow(
                length,
                sum(r.theta_hier for r in rows) / len(rows),
                sum(r.theta_linear for r in rows) / len(rows),
                len(rows))
            for length, rows in sorted(by_length.items()))
        summaries.append(GroupSummary(
            group, len(recs), mean_len, sd_len,
            sum(r.theta_hier for r in recs) / len(recs),
            sum(r.theta_linear for r in recs) / len(recs),
            per_length))
    return summaries


def descriptive_stats(records: Sequence[SentenceRecord]) -> list[GroupStats]:
    """Length distribution per group over kept records."""
    out = []
    for group, recs in sorted(_kept_by_group(records).items()):
        lengths = [r.length for r in recs]
        mean_len, sd_len = _mean_sd(lengths)
        ordered = sorted(float(v) for v in lengths)
        out.append(GroupStats(group, len(recs), mean_len, sd_len,
                              min(lengths), max(lengths),
                              _quartile(ordered, 0.25), _quartile(ordered, 0.75)))
    return out


# ---------------------------------------------------------------------------
# CSV emission (6 significant digits, sorted rows).
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.6g}"


SENTENCES_HEADER = "id,group,length,theta_hier,theta_linear,entropy_bits,kept"
SUMMARY_HEADER = "group,count,mean_length,sd_length,mean_theta_hier,mean_theta_linear"
CURVES_HEADER = "group,length,mean_theta_hier,mean_theta_linear,count"
STATS_HEADER = ("group,count,mean_length,sd_length,min_length,max_length,"
                "q1_length,q3_length")


def sentences_to_csv(records: Sequence[SentenceRecord]) -> str:
    buf = io.StringIO()
    buf.write(SENTENCES_HEADER + "\n")
    for r in sorted(records, key=lambda r: (r.group, r.id)):
        buf.write(f"{r.id},{r.group},{r.length},{_fmt(r.theta_hier)},"
                  f"{_fmt(r.theta_linear)},{_fmt(r.entropy_bits)},"
                  f"{'true' if r.kept else 'false'}\n")
    return buf.getvalue()


def summary_to_csv(summaries: Sequence[GroupSummary]) -> str:
    buf = io.StringIO()
    buf.write(SUMMARY_HEADER + "\n")
    for s in summaries:
        buf.write(f"{s.group},{s.sentence_count},{_fmt(s.mean_length)},"
                  f"{_fmt(s.sd_length)},{_fmt(s.mean_theta_hier)},"
                  f"{_fmt(s.mean_theta_linear)}\n")
    return buf.getvalue()


def curves_to_csv(summaries: Sequence[GroupSummary]) -> str:
    buf = io.StringIO()
    buf.write(CURVES_HEADER + "\n")
    for s in summaries:
        for row in s.per_length:
            buf.write(f"{s.group},{row.length},{_fmt(row.mean_theta_hier)},"
                      f"{_fmt(row.mean_theta_linear)},{row.count}\n")
    return buf.getvalue()


def stats_to_csv(stats: Sequence[GroupStats]) -> str:
    buf = io.StringIO()
    buf.write(STATS_HEADER + "\n")
    for s in stats:
        buf.write(f"{s.group},{s.count},{_fmt(s.mean_length)},{_fmt(s.sd_length)},"
                  f"{s.min_length},{s.max_length},{_fmt(s.q1_length)},"
                  f"{_fmt(s.q3_length)}\n")
    return buf.getvalue()
