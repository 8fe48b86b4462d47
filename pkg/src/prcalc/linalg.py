"""Sparse exact elimination over Gaussian rationals (span membership with certificates)."""

from __future__ import annotations

from .scalars import GaussRat

__all__ = ["SpanReducer"]


def _axpy(target: dict, source: dict, c: GaussRat):
    for k, v in source.items():
        s = target.get(k)
        s = -(c * v) if s is None else s - c * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


class SpanReducer:
    """Incremental echelon basis of sparse vectors ``{coord: GaussRat}``.

    Every basis row remembers which inserted vectors it is built from, so a
    successful membership test returns an explicit linear combination.
    """

    def __init__(self):
        self._rows: dict = {}  # pivot coord -> (vector, combo)
        self._count = 0

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: dict):
        v = dict(vec)
        combo: dict = {}
        changed = True
        while changed and v:
            changed = False
            for coord in sorted(v, key=repr):
                row = self._rows.get(coord)
                if row is None:
                    continue
                c = v[coord] / row[0][coord]
                _axpy(v, row[0], c)
                _axpy(combo, row[1], c)
                changed = True
                break
        return v, combo

    def add(self, vec: dict) -> int:
        """Insert a vector; returns its source index."""
        idx = self._count
        self._count += 1
        v, combo = self.reduce(vec)
        combo[idx] = combo.get(idx, GaussRat(0)) + GaussRat(1)
        if v:
            pivot = min(v, key=repr)
            self._rows[pivot] = (v, combo)
        return idx

    def express(self, vec: dict):
        """Return ``{source index: coeff}`` with ``vec = sum coeff * source`` or None."""
        rest, combo = self.reduce(vec)
        if rest:
            return None
        return {k: -c for k, c in combo.items() if c}
