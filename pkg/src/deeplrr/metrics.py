"""Clustering evaluation: optimal-assignment accuracy, NMI, pairwise F-score.

All three are invariant under independent relabeling of either partition.
NMI uses natural-log entropies normalized by sqrt(H(U) * H(V)); F-score is
the pairwise (co-clustering) variant.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment


@dataclass
class MetricReport:
    acc: float
    nmi: float
    f_score: float
    confusion: np.ndarray


def contingency_table(truth, pred):
    """k x k' count matrix over the distinct labels of each partition."""
    truth = np.asarray(truth).ravel()
    pred = np.asarray(pred).ravel()
    if truth.shape != pred.shape:
        raise ValueError(f"length mismatch: {truth.shape} vs {pred.shape}")
    if truth.size == 0:
        raise ValueError("empty label vectors")
    _, ti = np.unique(truth, return_inverse=True)
    _, pi = np.unique(pred, return_inverse=True)
    table = np.zeros((ti.max() + 1, pi.max() + 1), dtype=np.int64)
    np.add.at(table, (ti, pi), 1)
    return table


def accuracy(truth, pred):
    """Fraction matched under the best one-to-one label assignment
    (Hungarian on the contingency table)."""
    table = contingency_table(truth, pred)
    rows, cols = linear_sum_assignment(table, maximize=True)
    return float(table[rows, cols].sum() / np.asarray(truth).size)


def nmi(truth, pred):
    """Mutual information over sqrt of the entropy product.

    Both partitions trivial (single cluster) gives 1; exactly one trivial
    gives 0.
    """
    table = contingency_table(truth, pred).astype(np.float64)
    total = table.sum()
    joint = table / total
    pu = joint.sum(axis=1)
    pv = joint.sum(axis=0)
    hu = float(-np.sum(pu[pu > 0] * np.log(pu[pu > 0])))
    hv = float(-np.sum(pv[pv > 0] * np.log(pv[pv > 0])))
    if hu == 0.0 and hv == 0.0:
        return 1.0
    if hu == 0.0 or hv == 0.0:
        return 0.0
    outer = pu[:, None] * pv[None, :]
    nz = joint > 0
    mutual = float(np.sum(joint[nz] * np.log(joint[nz] / outer[nz])))
    return mutual / float(np.sqrt(hu * hv))


def f_score(truth, pred):
    """Harmonic mean of pairwise co-clustering precision and recall.

    Zero-denominator precision/recall are 0, and F is 0 when P + R = 0.
    """
    table = contingency_table(truth, pred)
    if np.asarray(truth).size < 2:
        raise ValueError("pairwise F-score needs at least two samples")

    def pair_count(counts):
        counts = counts.astype(np.int64)
        return int(np.sum(counts * (counts - 1) // 2))

    tp = pair_count(table)
    pred_pairs = pair_count(table.sum(axis=0))
    truth_pairs = pair_count(table.sum(axis=1))
    precision = tp / pred_pairs if pred_pairs > 0 else 0.0
    recall = tp / truth_pairs if truth_pairs > 0 else 0.0
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def evaluate(truth, pred):
    """All three scores plus the contingency table."""
    return MetricReport(
        acc=accuracy(truth, pred),
        nmi=nmi(truth, pred),
        f_score=f_score(truth, pred),
        confusion=contingency_table(truth, pred),
    )
