"""Sentence scoring, ranking, selection and summary assembly.

Selection seeds with the top-ranked sentence, then repeatedly pulls the
candidate with the highest Jaccard stem overlap to the anchor sentence,
strictly from the top half of the ranking.  The anchor is the most
recently selected sentence by default ("latest") or always the seed
("first").  If the limit outruns the top half, remaining picks follow
rank order.  All ties break toward the better-ranked candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .document import ProcessedDocument, RawDocument, Sentence
from .features import (
    FeatureConfig,
    SentenceFeatureMatrix,
    build_feature_matrix,
    normalize_columns,
)
from .preprocess import preprocess
from .rbm import EnhancedMatrix, TrainConfig, stack_enhance


@dataclass(frozen=True)
class RankedSentence:
    doc_index: int
    score: float


@dataclass(frozen=True)
class SummaryConfig:
    """Summary length: an absolute sentence count or a fraction of N."""

    limit_sentences: int | None = None
    limit_ratio: float | None = None

    def __post_init__(self):
        if self.limit_sentences is not None and self.limit_ratio is not None:
            raise ValueError("set either limit_sentences or limit_ratio, not both")
        if self.limit_sentences is not None and self.limit_sentences < 1:
            raise ValueError("limit_sentences must be >= 1")
        if self.limit_ratio is not None and not 0.0 < self.limit_ratio <= 1.0:
            raise ValueError("limit_ratio must be in (0, 1]")

    def effective_limit(self, n_sentences: int) -> int:
        if self.limit_sentences is not None:
            limit = self.limit_sentences
        else:
            ratio = self.limit_ratio if self.limit_ratio is not None else 0.33
            limit = math.ceil(ratio * n_sentences)
        return max(1, min(limit, n_sentences))


@dataclass(frozen=True)
class Summary:
    selected: tuple[int, ...]  # doc indices, ascending
    text: str
    scores: tuple[RankedSentence, ...]  # full ranking, best first


def score_sentences(enhanced: EnhancedMatrix) -> list[RankedSentence]:
    """Sum each enhanced row into a sentence score."""
    return [
        RankedSentence(doc_index=i, score=float(row.sum()))
        for i, row in enumerate(enhanced.values)
    ]


def rank(scores: list[RankedSentence]) -> list[RankedSentence]:
    """Descending score; equal scores keep document order."""
    return sorted(scores, key=lambda r: (-r.score, r.doc_index))


def jaccard(a: Sentence, b: Sentence) -> float:
    """Set overlap of non-stopword stems; empty-vs-empty counts as 0."""
    sa = set(a.content_stems())
    sb = set(b.content_stems())
    union = sa | sb
    if not union:
        return 0.0
    return len(sa & sb) / len(union)


def select(
    ranked: list[RankedSentence],
    doc: ProcessedDocument,
    config: SummaryConfig | None = None,
    anchor: str = "latest",
) -> list[int]:
    """Pick sentence indices, in selection order."""
    if anchor not in ("latest", "first"):
        raise ValueError("anchor must be 'latest' or 'first'")
    config = config or SummaryConfig()
    n = len(ranked)
    limit = config.effective_limit(n)
    top_half = ranked[: math.ceil(n / 2)]

    selected = [ranked[0].doc_index]
    pool = [r.doc_index for r in top_half[1:]]
    while len(selected) < limit and pool:
        anchor_idx = selected[-1] if anchor == "latest" else selected[0]
        anchor_sentence = doc.sentences[anchor_idx]
        best = pool[0]
        best_sim = -1.0
        for idx in pool:  # rank order, so the first maximum wins ties
            sim = jaccard(doc.sentences[idx], anchor_sentence)
            if sim > best_sim:
                best, best_sim = idx, sim
        selected.append(best)
        pool.remove(best)
    for r in ranked[math.ceil(n / 2):]:
        if len(selected) >= limit:
            break
        selected.append(r.doc_index)
    return selected


def assemble(
    selected: list[int], doc: ProcessedDocument, ranked: list[RankedSentence]
) -> Summary:
    """Re-arrange picks into document order and join their text."""
    ordered = sorted(selected)
    text = " ".join(doc.sentences[i].original_text for i in ordered)
    return Summary(selected=tuple(ordered), text=text, scores=tuple(ranked))


@dataclass(frozen=True)
class PipelineResult:
    """Every intermediate stage of one summarization run."""

    doc: ProcessedDocument
    raw_matrix: SentenceFeatureMatrix
    normalized: SentenceFeatureMatrix
    enhanced: EnhancedMatrix
    ranked: tuple[RankedSentence, ...]
    summary: Summary


def run_pipeline(
    raw: RawDocument,
    feature_config: FeatureConfig | None = None,
    train_config: TrainConfig | None = None,
    summary_config: SummaryConfig | None = None,
    layers: int = 1,
    anchor: str = "latest",
    lexicons=None,
) -> PipelineResult:
    doc = preprocess(raw, lexicons)
    raw_matrix = build_feature_matrix(doc, feature_config)
    normalized = normalize_columns(raw_matrix)
    enhanced = stack_enhance(normalized, train_config, layers)
    ranked = rank(score_sentences(enhanced))
    picks = select(ranked, doc, summary_config, anchor)
    return PipelineResult(
        doc=doc,
        raw_matrix=raw_matrix,
        normalized=normalized,
        enhanced=enhanced,
        ranked=tuple(ranked),
        summary=assemble(picks, doc, ranked),
    )


def summarize(
    raw: RawDocument,
    feature_config: FeatureConfig | None = None,
    train_config: TrainConfig | None = None,
    summary_config: SummaryConfig | None = None,
    layers: int = 1,
    anchor: str = "latest",
    lexicons=None,
) -> Summary:
    """Full pipeline: preprocess, featurize, enhance, select, assemble."""
    return run_pipeline(
        raw, feature_config, train_config, summary_config, layers, anchor, lexicons
    ).summary
