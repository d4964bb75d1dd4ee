"""Sparse reduced row echelon form over the rationals.

Vectors are dicts ``{column: Fraction}`` with no zero entries.  The pivot of
a new row is its largest column under ``key``; rows are kept fully reduced,
so reducing a vector is a single pass over its pivot columns.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, Hashable, Optional


class Echelon:
    def __init__(self, key: Optional[Callable] = None):
        self.key = key
        self.rows: Dict[Hashable, Dict[Hashable, Fraction]] = {}
        # column -> pivots of the rows that contain it (pivot columns excluded)
        self._occ: Dict[Hashable, set] = defaultdict(set)

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self):
        return self.rows.keys()

    def reduce(self, v: Dict) -> Dict:
        rows = self.rows
        hits = [c for c in v if c in rows]
        if not hits:
            return dict(v)
        out = dict(v)
        for p in hits:
            a = out.pop(p)
            for col, x in rows[p].items():
                if col == p:
                    continue
                nx = out.get(col, 0) - a * x
                if nx:
                    out[col] = nx
                else:
                    del out[col]
        return out

    def add(self, v: Dict) -> bool:
        """Insert v; returns False when v is already in the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = max(r, key=self.key) if self.key else max(r)
        inv = 1 / r[p]
        if inv != 1:
            r = {c: x * inv for c, x in r.items()}
        for q in list(self._occ.pop(p, ())):
            row = self.rows[q]
            a = row.pop(p)
            for col, x in r.items():
                if col == p:
                    continue
                nx = row.get(col, 0) - a * x
                if nx:
                    if col not in row:
                        self._occ[col].add(q)
                    row[col] = nx
                else:
                    del row[col]
                    self._occ[col].discard(q)
        for col in r:
            if col != p:
                self._occ[col].add(p)
        self.rows[p] = r
        return True

    def contains(self, v: Dict) -> bool:
        return not self.reduce(v)
