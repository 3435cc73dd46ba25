"""Small exact linear algebra: sparse Gaussian elimination over Q and a
Smith normal form for modest integer matrices.

Vectors are dicts mapping hashable column labels to Fractions/ints; the
echelon structure keeps one pivot per column label.
"""

from fractions import Fraction


class SparseEchelon:
    """Incremental row space over Q with membership queries."""

    def __init__(self):
        self.pivots = {}  # column label -> reduced row (dict), pivot coeff 1

    def _reduce(self, vec):
        """Full normal form modulo the row space (canonical, hence linear)."""
        vec = {k: Fraction(c) for k, c in vec.items() if c}
        while True:
            hit = [k for k in vec if k in self.pivots]
            if not hit:
                break
            lead = min(hit, key=_label_key)
            row = self.pivots[lead]
            coef = vec[lead]
            for k, c in row.items():
                nc = vec.get(k, 0) - coef * c
                if nc:
                    vec[k] = nc
                else:
                    vec.pop(k, None)
        if not vec:
            return None, {}
        return min(vec, key=_label_key), vec

    def add(self, vec):
        """Insert a vector; returns True if it enlarged the span."""
        lead, red = self._reduce(vec)
        if lead is None:
            return False
        inv = Fraction(1) / red[lead]
        self.pivots[lead] = {k: c * inv for k, c in red.items()}
        return True

    def contains(self, vec):
        lead, _ = self._reduce(vec)
        return lead is None

    @property
    def rank(self):
        return len(self.pivots)


def _label_key(label):
    return repr(label)


def rank_of(vectors):
    ech = SparseEchelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


class TrackedEchelon:
    """Row space that remembers how each pivot row combines the inserts.

    Used to express vectors as combinations of a chosen generating set.
    """

    def __init__(self):
        self.pivots = {}   # label -> (row vec, coord vec over insert indices)
        self.count = 0

    def _reduce(self, vec, coords):
        vec = {k: Fraction(c) for k, c in vec.items() if c}
        coords = dict(coords)
        while True:
            hit = [k for k in vec if k in self.pivots]
            if not hit:
                break
            lead = min(hit, key=_label_key)
            row, rc = self.pivots[lead]
            coef = vec[lead]
            for k, c in row.items():
                nc = vec.get(k, 0) - coef * c
                if nc:
                    vec[k] = nc
                else:
                    vec.pop(k, None)
            for k, c in rc.items():
                nc = coords.get(k, 0) + coef * c
                if nc:
                    coords[k] = nc
                else:
                    coords.pop(k, None)
        if not vec:
            return None, {}, coords
        return min(vec, key=_label_key), vec, coords

    def add(self, vec):
        """Insert; returns True when the row is new (independent)."""
        idx = self.count
        lead, red, coords = self._reduce(vec, {})
        if lead is None:
            return False
        # red = insert_idx - sum coords[k]*insert_k, normalised to pivot 1
        inv = Fraction(1) / red[lead]
        rc = {k: -c * inv for k, c in coords.items()}
        rc[idx] = rc.get(idx, 0) + inv
        self.pivots[lead] = ({k: c * inv for k, c in red.items()},
                             {k: c for k, c in rc.items() if c})
        self.count += 1
        return True

    def express(self, vec):
        """Coefficients over the inserted rows, or None if not in span."""
        lead, _, coords = self._reduce(vec, {})
        if lead is not None:
            return None
        return {k: c for k, c in coords.items() if c}


def smith_normal_form(rows):
    """Diagonal entries of the Smith normal form of an integer matrix.

    Plain elimination with Euclidean reduction; fine for the small
    matrices used in the basis unimodularity checks.
    """
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return []
    nr, nc = len(m), len(m[0])
    diag = []
    top = 0
    while top < min(nr, nc):
        # find a nonzero entry with minimal absolute value
        best = None
        for i in range(top, nr):
            for j in range(top, nc):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        again = False
        for i in range(top + 1, nr):
            if m[i][top]:
                q = m[i][top] // m[top][top]
                for j in range(top, nc):
                    m[i][j] -= q * m[top][j]
                if m[i][top]:
                    again = True
        for j in range(top + 1, nc):
            if m[top][j]:
                q = m[top][j] // m[top][top]
                for i in range(top, nr):
                    m[i][j] -= q * m[i][top]
                if m[top][j]:
                    again = True
        if again:
            continue
        # ensure divisibility into the remaining block
        fixed = True
        for i in range(top + 1, nr):
            for j in range(top + 1, nc):
                if m[i][j] % m[top][top]:
                    for jj in range(top, nc):
                        m[top][jj] += m[i][jj]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        diag.append(abs(m[top][top]))
        top += 1
    return diag
