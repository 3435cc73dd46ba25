"""q-characters in the quantum shuffle algebra, the bilinear form on the
free algebra, and the graded dimension formula.

A Character is a finitely supported map word -> LaurentSeries; the shuffle
product twists each interleaving by q^{-sum(i_j . i_k)} over pairs where a
letter of the right factor ends up before a letter of the left factor.
The pairing on the free algebra is computed by the coproduct recursion
and lives in truncated series (it has denominators 1/(1-q_i^2)).
"""

from .laurent import LaurentSeries, l_pi


class Character:
    """weight in Q_+ together with terms {word: LaurentSeries}."""

    def __init__(self, datum, terms):
        self.datum = datum
        self.terms = {w: c for w, c in terms.items() if c}
        self.weight = None
        for w in self.terms:
            wt = datum.weight(w)
            if self.weight is None:
                self.weight = wt
            elif self.weight != wt:
                raise ValueError("mixed weights in character")

    @staticmethod
    def from_word(datum, word, coeff=None):
        return Character(datum, {tuple(word): coeff or LaurentSeries.one()})

    def coeff(self, word):
        return self.terms.get(tuple(word), LaurentSeries.zero())

    def shift(self, n):
        """Grading shift by n: multiplies every coefficient by q^n."""
        qn = LaurentSeries.monomial(n)
        return Character(self.datum, {w: c * qn for w, c in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, LaurentSeries.zero()) + c
        return Character(self.datum, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, LaurentSeries.zero()) - c
        return Character(self.datum, out)

    def __eq__(self, other):
        return self.terms == other.terms

    def total(self):
        """Sum of all coefficients: the full graded dimension."""
        out = LaurentSeries.zero()
        for c in self.terms.values():
            out = out + c
        return out

    def evaluate_total(self, q=1):
        return sum(c.evaluate(q) for c in self.terms.values())

    def is_bar_invariant(self):
        return all(c.is_bar_invariant() for c in self.terms.values())

    def highest_word(self):
        return max(self.terms) if self.terms else None

    def to_json(self):
        return {"".join(map(str, w)): c.to_json()
                for w, c in sorted(self.terms.items())}

    def __repr__(self):
        bits = [f"({''.join(map(str, w))}): {c!r}"
                for w, c in sorted(self.terms.items())]
        return "Character{" + ", ".join(bits) + "}"


def _shuffle_words(datum, a_word, b_word):
    """All interleavings of a and b with their q-exponents.

    The exponent collects -(i_j . i_k) over pairs j < k where position j
    holds a letter of b and position k a letter of a.
    """
    pair = datum.letters_pairing
    # DP over states (ka, kb) -> {word so far: {exponent: multiplicity}}
    states = {(0, 0): {(): {0: 1}}}
    for step in range(len(a_word) + len(b_word)):
        nxt = {}
        for (ka, kb), words in states.items():
            if ka < len(a_word):
                x = a_word[ka]
                # letters of b already placed: kb of them occur before x
                delta = -sum(pair(b_word[t], x) for t in range(kb))
                dst = nxt.setdefault((ka + 1, kb), {})
                for w, exps in words.items():
                    d2 = dst.setdefault(w + (x,), {})
                    for e, m in exps.items():
                        d2[e + delta] = d2.get(e + delta, 0) + m
            if kb < len(b_word):
                x = b_word[kb]
                dst = nxt.setdefault((ka, kb + 1), {})
                for w, exps in words.items():
                    d2 = dst.setdefault(w + (x,), {})
                    for e, m in exps.items():
                        d2[e] = d2.get(e, 0) + m
        states = nxt
    return states[(len(a_word), len(b_word))]


def shuffle_product(a, b):
    """Quantum shuffle product of two characters."""
    datum = a.datum
    out = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            coeff = ca * cb
            for word, exps in _shuffle_words(datum, wa, wb).items():
                add = coeff * LaurentSeries(exps)
                out[word] = out.get(word, LaurentSeries.zero()) + add
    return Character(datum, out)


def shuffle_coefficient(datum, a_char, b_char, target):
    """Coefficient of one fixed word in a_char o b_char, without expanding.

    Walks the target word with a DP over (how many letters of which a-word /
    b-word are consumed); feasible even when the full support is huge.
    """
    target = tuple(target)
    pair = datum.letters_pairing
    total = LaurentSeries.zero()
    for wa, ca in a_char.terms.items():
        for wb, cb in b_char.terms.items():
            if len(wa) + len(wb) != len(target):
                continue
            states = {(0, 0): {0: 1}}
            for k, x in enumerate(target):
                nxt = {}
                for (ka, kb), exps in states.items():
                    if ka < len(wa) and wa[ka] == x:
                        delta = -sum(pair(wb[t], x) for t in range(kb))
                        d2 = nxt.setdefault((ka + 1, kb), {})
                        for e, m in exps.items():
                            d2[e + delta] = d2.get(e + delta, 0) + m
                    if kb < len(wb) and wb[kb] == x:
                        d2 = nxt.setdefault((ka, kb + 1), {})
                        for e, m in exps.items():
                            d2[e] = d2.get(e, 0) + m
                states = nxt
                if not states:
                    break
            exps = states.get((len(wa), len(wb)))
            if exps:
                total = total + ca * cb * LaurentSeries(exps)
    return total


class FreeAlgebraElement:
    """Homogeneous element of the free algebra: {word: LaurentSeries}."""

    def __init__(self, datum, terms):
        self.datum = datum
        self.terms = {tuple(w): c for w, c in terms.items() if c}

    @staticmethod
    def monomial(datum, word, coeff=None):
        return FreeAlgebraElement(datum, {tuple(word): coeff or LaurentSeries.one()})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, LaurentSeries.zero()) + c
        return FreeAlgebraElement(self.datum, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, LaurentSeries.zero()) - c
        return FreeAlgebraElement(self.datum, out)

    def scale(self, series):
        return FreeAlgebraElement(self.datum,
                                  {w: c * series for w, c in self.terms.items()})


def lusztig_pairing(x, y, cutoff):
    """The symmetric bilinear form with (theta_i, theta_j) = d_ij/(1-q_i^2).

    Recursion: (theta_w, theta_i theta_v) peels the first letter of the
    right argument through the coproduct of the left one.
    """
    datum = x.datum
    cache = {}

    def pair_words(w, v):
        if len(w) != len(v):
            return LaurentSeries.zero(cutoff)
        if not w:
            return LaurentSeries.one(cutoff)
        key = (w, v)
        hit = cache.get(key)
        if hit is not None:
            return hit
        i = v[0]
        rest = v[1:]
        total = LaurentSeries.zero(cutoff)
        geom = LaurentSeries.geometric(datum.norm(i), cutoff)
        pairf = datum.letters_pairing
        for k, letter in enumerate(w):
            if letter != i:
                continue
            exp = -sum(pairf(w[t], i) for t in range(k))
            sub = pair_words(w[:k] + w[k + 1:], rest)
            total = total + LaurentSeries.monomial(exp) * geom * sub
        cache[key] = total
        return total

    out = LaurentSeries.zero(cutoff)
    for w, cw in x.terms.items():
        for v, cv in y.terms.items():
            p = pair_words(w, v)
            if p:
                out = out + cw * cv * p
    return out


def dimension_formula(datum, i_word, j_word, cutoff, standard_chars):
    """Corollary-style graded dimension of e(i) R e(j).

    standard_chars: list of (RootPartition, Character) covering Pi(alpha).
    """
    i_word, j_word = tuple(i_word), tuple(j_word)
    out = LaurentSeries.zero(cutoff)
    for pi, ch in standard_chars:
        ci = ch.coeff(i_word)
        if not ci:
            continue
        cj = ch.coeff(j_word)
        if not cj:
            continue
        out = out + ci * cj * l_pi(pi, cutoff)
    return out
