"""BLEU / ROUGE-L scoring of generated descriptions against references.

Variant pins (recorded so corpus numbers are reproducible per config):
BLEU-4 with uniform 0.25 weights, clipped modified n-gram precisions, brevity
penalty min(1, e^(1-r/c)), and zero precisions floored at ``EPSILON`` before
the geometric mean. ROUGE-L is the F1 (beta=1) form over the token-level
longest common subsequence. Tokenization casefolds, keeps diacritics, splits
punctuation into separate tokens, and collapses whitespace. No stemming.
"""
from __future__ import annotations

import csv
import json
import logging
import math
import re
import statistics
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .domain import RockType
from .errors import EmptyInputError, ParseError, SchemaError

logger = logging.getLogger(__name__)

EPSILON = 1e-9
BLEU_ORDER = 4
HISTOGRAM_BINS = 10

_TOKEN_RE = re.compile(r"\w+|[^\w\s]", re.UNICODE)


def tokenize(text: str) -> list[str]:
    return [t.casefold() for t in _TOKEN_RE.findall(text)]


def _ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def bleu(candidate: list[str], reference: list[str],
         max_order: int = BLEU_ORDER, epsilon: float = EPSILON) -> float:
    """BLEU over tokenized candidate/reference texts, in [0, 1]."""
    if not candidate:
        logger.warning("bleu: empty candidate scores 0")
        return 0.0
    if not reference:
        logger.warning("bleu: empty reference scores 0")
        return 0.0

    log_sum = 0.0
    for n in range(1, max_order + 1):
        total = max(len(candidate) - n + 1, 0)
        if total == 0:
            precision = 0.0
        else:
            ref_counts = _ngram_counts(reference, n)
            cand_counts = _ngram_counts(candidate, n)
            matched = sum(min(count, ref_counts[gram])
                          for gram, count in cand_counts.items())
            precision = matched / total
        log_sum += math.log(max(precision, epsilon))

    brevity = min(1.0, math.exp(1.0 - len(reference) / len(candidate)))
    return min(brevity * math.exp(log_sum / max_order), 1.0)


def lcs_length(a: list[str], b: list[str]) -> int:
    """Longest common subsequence length, O(len(a)*len(b)) two-row DP."""
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for token in a:
        current = [0] * (len(b) + 1)
        for j, other in enumerate(b, start=1):
            if token == other:
                current[j] = previous[j - 1] + 1
            else:
                current[j] = max(previous[j], current[j - 1])
        previous = current
    return previous[-1]


def rouge_l_f1(candidate: list[str], reference: list[str]) -> float:
    """LCS-based F1: precision L/|candidate|, recall L/|reference|."""
    if not candidate or not reference:
        logger.warning("rouge_l_f1: empty text scores 0")
        return 0.0
    lcs = lcs_length(candidate, reference)
    precision = lcs / len(candidate)
    recall = lcs / len(reference)
    if precision == 0.0 and recall == 0.0:
        return 0.0
    return min(2.0 * precision * recall / (precision + recall), 1.0)


@dataclass
class EvaluationPair:
    id: str
    category: RockType
    candidate: str
    reference: str


@dataclass
class MetricScores:
    bleu: float
    rouge_l_f1: float


@dataclass
class CorpusStats:
    per_item: list[tuple[str, MetricScores]] = field(default_factory=list)
    mean_bleu: float = 0.0
    median_bleu: float = 0.0
    mean_rouge: float = 0.0
    median_rouge: float = 0.0
    histogram_bleu: list[int] = field(default_factory=list)
    histogram_rouge: list[int] = field(default_factory=list)
    slope: float = 0.0
    intercept: float = 0.0
    r_squared: float = 0.0

    def to_dict(self) -> dict:
        return {
            "per_item": [
                {"id": item_id, "bleu": scores.bleu, "rouge_l_f1": scores.rouge_l_f1}
                for item_id, scores in self.per_item
            ],
            "mean_bleu": self.mean_bleu,
            "median_bleu": self.median_bleu,
            "mean_rouge": self.mean_rouge,
            "median_rouge": self.median_rouge,
            "histogram_bleu": list(self.histogram_bleu),
            "histogram_rouge": list(self.histogram_rouge),
            "regression": {
                "slope": self.slope,
                "intercept": self.intercept,
                "r_squared": self.r_squared,
            },
        }


def histogram(values: list[float], bins: int = HISTOGRAM_BINS) -> list[int]:
    """Counts over equal-width bins on [0, 1]; 1.0 falls in the last bin."""
    counts = [0] * bins
    for v in values:
        idx = min(int(math.floor(v * bins)), bins - 1)
        counts[idx] += 1
    return counts


def evaluate_corpus(pairs: list[EvaluationPair]) -> CorpusStats:
    """Per-pair scores plus corpus statistics, ordered by pair id."""
    if not pairs:
        raise EmptyInputError("no evaluation pairs supplied")

    per_item: list[tuple[str, MetricScores]] = []
    for pair in sorted(pairs, key=lambda p: p.id):
        cand = tokenize(pair.candidate)
        ref = tokenize(pair.reference)
        per_item.append((pair.id, MetricScores(bleu=bleu(cand, ref),
                                               rouge_l_f1=rouge_l_f1(cand, ref))))

    bleus = [s.bleu for _, s in per_item]
    rouges = [s.rouge_l_f1 for _, s in per_item]

    slope, intercept, r_squared = _regression(bleus, rouges)
    return CorpusStats(
        per_item=per_item,
        mean_bleu=statistics.fmean(bleus),
        median_bleu=float(statistics.median(bleus)),
        mean_rouge=statistics.fmean(rouges),
        median_rouge=float(statistics.median(rouges)),
        histogram_bleu=histogram(bleus),
        histogram_rouge=histogram(rouges),
        slope=slope,
        intercept=intercept,
        r_squared=r_squared,
    )


def _regression(x: list[float], y: list[float]) -> tuple[float, float, float]:
    """Least squares of y on x; r^2 is the squared Pearson correlation."""
    n = len(x)
    if n < 2:
        return 0.0, y[0] if y else 0.0, 0.0
    mean_x = statistics.fmean(x)
    mean_y = statistics.fmean(y)
    sxx = sum((xi - mean_x) ** 2 for xi in x)
    syy = sum((yi - mean_y) ** 2 for yi in y)
    sxy = sum((xi - mean_x) * (yi - mean_y) for xi, yi in zip(x, y))
    if sxx == 0.0:
        return 0.0, mean_y, 0.0
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    r_squared = 0.0 if syy == 0.0 else (sxy * sxy) / (sxx * syy)
    # squared Pearson correlation is in [0, 1]; clamp float drift at the top
    return slope, intercept, min(r_squared, 1.0)


# ---------------------------------------------------------------------------
# Pair ingestion (CSV and JSON forms share the same column/key names)

PAIR_FIELDS = ("id", "category", "candidate", "reference")


def _pair_from_record(record: dict, where: str) -> EvaluationPair:
    for key in PAIR_FIELDS:
        if key not in record or record[key] is None:
            raise SchemaError(key, f"{where}: missing field {key!r}")
    try:
        category = RockType(record["category"])
    except ValueError as exc:
        raise SchemaError("category", f"{where}: {exc}") from exc
    if not str(record["candidate"]).strip() or not str(record["reference"]).strip():
        raise SchemaError("candidate", f"{where}: candidate and reference must be non-empty")
    return EvaluationPair(
        id=str(record["id"]),
        category=category,
        candidate=str(record["candidate"]),
        reference=str(record["reference"]),
    )


def load_pairs(path: str | Path) -> list[EvaluationPair]:
    """Read evaluation pairs from a .csv or .json file."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        try:
            records = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(str(path), f"invalid JSON: {exc}") from exc
        if not isinstance(records, list):
            raise ParseError(str(path), "expected a JSON array of pair objects")
        return [_pair_from_record(r, f"{path.name}[{i}]") for i, r in enumerate(records)]

    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        header = set(reader.fieldnames or [])
        for key in PAIR_FIELDS:
            if key not in header:
                raise SchemaError(key)
        return [_pair_from_record(row, f"{path.name} row {i}")
                for i, row in enumerate(reader, start=2)]
