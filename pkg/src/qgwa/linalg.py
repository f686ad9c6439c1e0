"""Sparse exact Gaussian elimination over Q(z_N).

Vectors are dicts mapping hashable coordinate keys to FieldElements; absent
keys are zero.
"""
from __future__ import annotations


def _axpy(target, scale, source):
    """target -= scale * source, in place."""
    for k, v in source.items():
        cur = target.get(k)
        val = -(scale * v) if cur is None else cur - scale * v
        if val.is_zero():
            target.pop(k, None)
        else:
            target[k] = val


class Echelon:
    """Incrementally maintained row echelon form of a set of vectors.

    Each stored row carries the combination of inserted vectors producing
    it, which is what :func:`kernel` uses.
    """

    def __init__(self, track=False):
        self.rows = {}  # pivot key -> (row, combo)
        self.track = track
        self._count = 0

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec, combo=None):
        vec = dict(vec)
        # stored rows are fully reduced, so one pass over the pivots suffices
        for key in [k for k in vec if k in self.rows]:
            c = vec.get(key)
            if c is None:
                continue
            row, rcombo = self.rows[key]
            _axpy(vec, c, row)
            if combo is not None:
                _axpy(combo, c, rcombo)
        return vec

    def add(self, vec):
        """Insert ``vec``; return True when it was independent of the rows so far."""
        idx = self._count
        self._count += 1
        combo = None
        if self.track:
            combo = {idx: _one_like(vec)} if vec else {}
        red = self.reduce(vec, combo)
        if not red:
            self._last_dependency = (idx, combo)
            return False
        key = min(red)
        inv = red[key].inverse()
        red = {k: v * inv for k, v in red.items()}
        if combo is not None:
            combo = {k: v * inv for k, v in combo.items()}
        for row, rcombo in self.rows.values():
            c = row.get(key)
            if c is not None:
                _axpy(row, c, red)
                if rcombo is not None:
                    _axpy(rcombo, c, combo)
        self.rows[key] = (red, combo)
        return True

    def contains(self, vec):
        return not self.reduce(vec)


def _one_like(vec):
    v = next(iter(vec.values()))
    return (v - v) + 1


def rank(vectors):
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def kernel(vectors, one):
    """Basis of {c : sum_i c_i vectors[i] = 0}, as dicts index -> coefficient.

    ``one`` is the field's unit, used for zero input vectors.
    """
    ech = Echelon(track=True)
    out = []
    for i, v in enumerate(vectors):
        if not v:
            out.append({i: one})
            ech._count += 1
            continue
        if not ech.add(v):
            idx, combo = ech._last_dependency
            combo = dict(combo)
            # combo expresses the reduced remainder (zero) in terms of inputs
            out.append(combo)
    return out


def same_span(first, second):
    """True when two lists of vectors span the same space."""
    ech = Echelon()
    for v in first:
        ech.add(v)
    r1 = ech.rank
    for v in second:
        ech.add(v)
    return r1 == ech.rank == rank(second)
