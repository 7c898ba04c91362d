"""Violation records returned by every checker.

A checker returns a list of :class:`Violation`; an empty list means the
identity holds.  Witnesses use 1-based basis indices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Violation:
    check: str
    witness: tuple[int, ...]
    residual: tuple

    def __str__(self) -> str:
        res = ", ".join(str(v) for v in self.residual)
        where = ", ".join(str(i) for i in self.witness)
        return f"{self.check} at ({where}): residual [{res}]"


def collect(check: str, residual: np.ndarray, nargs: int, offset: int = 1) -> list[Violation]:
    """Turn a residual tensor into violations.

    The first ``nargs`` axes index basis tuples; the remaining axes hold the
    residual value (a vector or a flattened matrix).  Ordering is
    lexicographic in the witness tuple.
    """
    residual = np.asarray(residual, dtype=object)
    if residual.size == 0:
        return []
    lead = residual.shape[:nargs]
    flat = residual.reshape(lead + (-1,))
    out = []
    for idx in np.ndindex(*lead):
        vals = flat[idx]
        if any(v != 0 for v in vals):
            out.append(Violation(check, tuple(i + offset for i in idx), tuple(vals)))
    return out


def format_report(title: str, violations: list[Violation], limit: int | None = 20) -> str:
    if not violations:
        return f"{title}: OK"
    lines = [f"{title}: {len(violations)} violation(s)"]
    shown = violations if limit is None else violations[:limit]
    lines.extend(f"  {v}" for v in shown)
    if limit is not None and len(violations) > limit:
        lines.append(f"  ... {len(violations) - limit} more")
    return "\n".join(lines)
