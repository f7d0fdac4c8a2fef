"""Precision/recall/F-measure against reference extracts.

References either name sentence indices directly or carry literal
sentence strings, which are matched to document sentences by equality
of their non-stopword stem multisets.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .assets import Lexicons, default_lexicons
from .document import ProcessedDocument, RawDocument
from .errors import EmptyReference, EmptySystemSummary, MissingReference
from .features import FeatureConfig
from .preprocess import build_tokens, filter_stopwords, tokenize
from .rbm import TrainConfig
from .summarizer import SummaryConfig, run_pipeline


@dataclass(frozen=True)
class ReferenceSummary:
    """Reference extract: sentence indices, or the sentences themselves."""

    source_id: str
    selected: frozenset[int] | None = None
    sentences: tuple[str, ...] | None = None

    def __post_init__(self):
        if (self.selected is None) == (self.sentences is None):
            raise ValueError("provide exactly one of selected or sentences")
        if self.selected is not None and not self.selected:
            raise ValueError("reference index set is empty")
        if self.sentences is not None and not self.sentences:
            raise ValueError("reference sentence list is empty")


@dataclass(frozen=True)
class EvalScores:
    precision: float
    recall: float
    f_measure: float


def precision(system: frozenset[int], reference: frozenset[int]) -> float:
    if not system:
        raise EmptySystemSummary("system summary has no sentences")
    return len(system & reference) / len(system)


def recall(system: frozenset[int], reference: frozenset[int]) -> float:
    if not reference:
        raise EmptyReference("reference has no sentences")
    return len(system & reference) / len(reference)


def f_measure(p: float, r: float) -> float:
    """Harmonic mean, defined as 0 when both inputs are 0."""
    if p + r == 0.0:
        return 0.0
    return 2.0 * p * r / (p + r)


def score_sets(system: frozenset[int], reference: frozenset[int]) -> EvalScores:
    p = precision(system, reference)
    r = recall(system, reference)
    return EvalScores(precision=p, recall=r, f_measure=f_measure(p, r))


def _stem_multiset(text: str, lexicons: Lexicons) -> tuple[tuple[str, int], ...]:
    tokens = filter_stopwords(build_tokens(tokenize(text)), lexicons.stopwords)
    counts = Counter(t.stem for t in tokens if not t.is_stopword)
    return tuple(sorted(counts.items()))


def resolve_reference(
    reference: ReferenceSummary,
    doc: ProcessedDocument,
    lexicons: Lexicons | None = None,
) -> frozenset[int]:
    """Turn a reference into a set of sentence indices for ``doc``."""
    n = doc.n_sentences
    if reference.selected is not None:
        bad = [i for i in reference.selected if not 0 <= i < n]
        if bad:
            raise ValueError(
                f"reference {reference.source_id!r} has out-of-range indices {sorted(bad)}"
            )
        return reference.selected
    lex = lexicons or default_lexicons()
    by_stems: dict[tuple, int] = {}
    for sentence in doc.sentences:
        key = tuple(sorted(Counter(sentence.content_stems()).items()))
        by_stems.setdefault(key, sentence.doc_index)
    indices = set()
    for text in reference.sentences:
        key = _stem_multiset(text, lex)
        if key not in by_stems:
            raise ValueError(
                f"reference sentence not found in {reference.source_id!r}: {text!r}"
            )
        indices.add(by_stems[key])
    return frozenset(indices)


@dataclass(frozen=True)
class DocumentScore:
    source_id: str
    scores: EvalScores


@dataclass(frozen=True)
class CorpusEvaluation:
    per_document: tuple[DocumentScore, ...]
    mean: EvalScores


def _mean_scores(scores: list[EvalScores]) -> EvalScores:
    n = len(scores)
    return EvalScores(
        precision=sum(s.precision for s in scores) / n,
        recall=sum(s.recall for s in scores) / n,
        f_measure=sum(s.f_measure for s in scores) / n,
    )


def evaluate_corpus(
    entries: list[tuple[RawDocument, ReferenceSummary | None]],
    feature_config: FeatureConfig | None = None,
    train_config: TrainConfig | None = None,
    summary_config: SummaryConfig | None = None,
    layers: int = 1,
    anchor: str = "latest",
    lexicons: Lexicons | None = None,
) -> CorpusEvaluation:
    """Summarize every document and score it against its reference."""
    if not entries:
        raise ValueError("corpus is empty")
    per_document = []
    for raw, reference in entries:
        if reference is None:
            raise MissingReference(f"no reference for document {raw.source_id!r}")
        result = run_pipeline(
            raw, feature_config, train_config, summary_config, layers, anchor, lexicons
        )
        ref_indices = resolve_reference(reference, result.doc, lexicons)
        system = frozenset(result.summary.selected)
        per_document.append(
            DocumentScore(source_id=raw.source_id, scores=score_sets(system, ref_indices))
        )
    return CorpusEvaluation(
        per_document=tuple(per_document),
        mean=_mean_scores([d.scores for d in per_document]),
    )


@dataclass(frozen=True)
class ModeComparison:
    proposed_1layer: EvalScores
    existing_2layer: EvalScores


def compare_modes(
    entries: list[tuple[RawDocument, ReferenceSummary | None]],
    feature_config: FeatureConfig | None = None,
    train_config: TrainConfig | None = None,
    summary_config: SummaryConfig | None = None,
    anchor: str = "latest",
    lexicons: Lexicons | None = None,
) -> ModeComparison:
    """Mean scores for the single-layer mode next to the stacked mode."""
    one = evaluate_corpus(
        entries, feature_config, train_config, summary_config, 1, anchor, lexicons
    )
    two = evaluate_corpus(
        entries, feature_config, train_config, summary_config, 2, anchor, lexicons
    )
    return ModeComparison(proposed_1layer=one.mean, existing_2layer=two.mean)


def render_metrics_csv(result: CorpusEvaluation) -> str:
    """Per-document rows plus a MEAN row, six decimal places."""
    lines = ["source_id,precision,recall,f_measure"]
    for entry in result.per_document:
        s = entry.scores
        lines.append(
            f"{entry.source_id},{s.precision:.6f},{s.recall:.6f},{s.f_measure:.6f}"
        )
    m = result.mean
    lines.append(f"MEAN,{m.precision:.6f},{m.recall:.6f},{m.f_measure:.6f}")
    return "\n".join(lines) + "\n"


def render_comparison_csv(comparison: ModeComparison) -> str:
    one = comparison.proposed_1layer
    two = comparison.existing_2layer
    lines = ["metric,proposed_1layer,existing_2layer"]
    for name in ("precision", "recall", "f_measure"):
        lines.append(
            f"{name},{getattr(one, name):.6f},{getattr(two, name):.6f}"
        )
    return "\n".join(lines) + "\n"


def load_corpus(directory: str | Path) -> list[tuple[RawDocument, ReferenceSummary]]:
    """Read ``<id>.txt`` / ``<id>.ref`` sibling pairs from a directory.

    A ``.ref`` file of integers (one per line) names 0-based sentence
    indices; anything else is read as literal reference sentences.
    """
    directory = Path(directory)
    entries = []
    for txt_path in sorted(directory.glob("*.txt")):
        source_id = txt_path.stem
        ref_path = txt_path.with_suffix(".ref")
        if not ref_path.exists():
            raise MissingReference(f"no reference file for document {source_id!r}")
        raw = RawDocument(text=txt_path.read_text("utf-8"), source_id=source_id)
        lines = [
            line.strip()
            for line in ref_path.read_text("utf-8").splitlines()
            if line.strip()
        ]
        if not lines:
            raise MissingReference(f"reference file for {source_id!r} is empty")
        if all(_is_int(line) for line in lines):
            reference = ReferenceSummary(
                source_id=source_id, selected=frozenset(int(x) for x in lines)
            )
        else:
            reference = ReferenceSummary(source_id=source_id, sentences=tuple(lines))
        entries.append((raw, reference))
    if not entries:
        raise ValueError(f"no .txt documents found in {directory}")
    return entries


def _is_int(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True
