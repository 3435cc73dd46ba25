"""The KLR algebra R_alpha as a normal-form rewriting engine.

Elements are integer combinations of basis symbols psi_w y^m e(i), where w
is stored as its canonical (lex-min) reduced word, m is a tuple of y
exponents and i a word of weight alpha.  The canonical words are
suffix-closed, so psi_w e(i) is literally the product of its letters and
the cheap primitive is LEFT multiplication by one generator:

* y_t psi_w ... walks the letter past each crossing; the commutation
  defect of (R6) drops one crossing and lands on a suffix, which is
  already canonical.
* psi_r psi_w ... either extends the canonical word (when r is the new
  minimal descent), collapses by the quadratic relation (R4), or is
  straightened through an explicit braid-move script; each braid move
  emits the (R7) correction, which has fewer crossings and is normalised
  recursively.

Everything else (products, tau, parabolic embeddings, nilHecke elements)
is phrased through these primitives.
"""

from functools import lru_cache

from . import perms
from .cartan import build_cartan


@lru_cache(maxsize=None)
def _perm_of(word, d):
    return perms.word_to_perm(word, d)


@lru_cache(maxsize=None)
def _act(w, letters):
    return perms.apply_perm_to_word(w, letters)


def _multiset_words(alpha):
    letters = []
    for i, c in enumerate(alpha, start=1):
        letters.extend([i] * c)
    seen = set()

    def rec(remaining, prefix):
        if not remaining:
            yield tuple(prefix)
            return
        used = set()
        for k, x in enumerate(remaining):
            if x in used:
                continue
            used.add(x)
            yield from rec(remaining[:k] + remaining[k + 1:], prefix + [x])
    return list(rec(letters, []))


class Algebra:
    """Context for R_alpha: caches and the generator calculus."""

    def __init__(self, datum, alpha):
        self.datum = datum
        self.alpha = tuple(alpha)
        self.d = sum(alpha)
        self._word_nf_cache = {}
        self._key_product_cache = {}
        self._words = None

    def key_product(self, k1, k2):
        """Product of two basis keys, cached (the ideal spans reuse pairs)."""
        ck = (k1, k2)
        hit = self._key_product_cache.get(ck)
        if hit is None:
            hit = (self.element({k1: 1}) * self.element({k2: 1})).terms
            self._key_product_cache[ck] = hit
        return hit

    @property
    def words(self):
        if self._words is None:
            self._words = _multiset_words(self.alpha)
        return self._words

    # -- term helpers ----------------------------------------------------

    def zero(self):
        return KlrElement(self, {})

    def element(self, terms):
        return KlrElement(self, {k: c for k, c in terms.items() if c})

    def term_degree(self, key):
        word, yexp, idem = key
        w = _perm_of(word, self.d)
        pair = self.datum.letters_pairing
        deg = 0
        for a in range(self.d):
            for b in range(a + 1, self.d):
                if w[a] > w[b]:
                    deg -= pair(idem[a], idem[b])
        for r in range(self.d):
            deg += yexp[r] * pair(idem[r], idem[r])
        return deg

    def left_word(self, key):
        word, _, idem = key
        return _act(_perm_of(word, self.d), idem)

    # -- the engine -------------------------------------------------------

    def _left_mul_y(self, t, key, coeff, out):
        word, yexp, idem = key
        if not word:
            ny = list(yexp)
            ny[t - 1] += 1
            _bump(out, (word, tuple(ny), idem), coeff)
            return
        a = word[0]
        tail = word[1:]
        right = _act(_perm_of(tail, self.d), idem)
        if right[a - 1] == right[a]:
            if t == a + 1:
                _bump(out, (tail, yexp, idem), coeff)
            elif t == a:
                _bump(out, (tail, yexp, idem), -coeff)
        t2 = a + 1 if t == a else a if t == a + 1 else t
        inner = {}
        self._left_mul_y(t2, (tail, yexp, idem), coeff, inner)
        for k2, c2 in inner.items():
            self._left_mul_psi(a, k2, c2, out)

    def _left_mul_poly(self, monomials, key, coeff, out):
        """monomials: list of (coeff, ((position, exponent), ...))."""
        for mc, powers in monomials:
            cur = {key: coeff * mc}
            for (pos, exp) in powers:
                for _ in range(exp):
                    nxt = {}
                    for k2, c2 in cur.items():
                        self._left_mul_y(pos, k2, c2, nxt)
                    cur = nxt
            for k2, c2 in cur.items():
                _bump(out, k2, c2)

    def _left_mul_psi(self, r, key, coeff, out):
        word, yexp, idem = key
        d = self.d
        w = _perm_of(word, d)
        if not perms.is_left_descent(r, w):
            v = perms.left_mul_simple(r, w)
            if perms.min_left_descent(v) == r:
                _bump(out, ((r,) + word, yexp, idem), coeff)
                return
            raw = (r,) + word
            script = perms.canonicalize_script(raw, d)
            final = self._apply_script(raw, script, yexp, idem, coeff, out)
            _bump(out, final[0], final[1])
            return
        # descent: bring r to the front, then collapse the square
        if word[0] == r:
            self._collapse_square(r, word[1:], yexp, idem, coeff, out)
            return
        script = perms.left_transform_script(word, r)
        pending = {}
        (moved, mcoeff) = self._apply_script(word, script, yexp, idem, coeff, pending)
        mword = moved[0]
        self._collapse_square(r, mword[1:], yexp, idem, mcoeff, out)
        # script corrections still carry the psi_r waiting on the left
        for k2, c2 in pending.items():
            self._left_mul_psi(r, k2, c2, out)

    def _collapse_square(self, r, rest, yexp, idem, coeff, out):
        """psi_r psi_r psi_rest y^m e(i) via (R4)."""
        right = _act(_perm_of(rest, self.d), idem)
        q = self.datum.q_poly(right[r - 1], right[r])
        if not q:
            return
        monomials = [(c, ((r, eu), (r + 1, ev))) for (eu, ev), c in q.items()]
        base = self._word_nf(rest, idem)
        for k2, c2 in base.items():
            w2, y2, i2 = k2
            merged = (w2, tuple(a + b for a, b in zip(y2, yexp)), i2)
            self._left_mul_poly(monomials, merged, c2 * coeff, out)

    def _apply_script(self, raw, script, yexp, idem, coeff, out):
        """Apply word moves; braid corrections go to `out`, main term returned."""
        d = self.d
        cur = raw
        for move in script:
            kind, k = move
            if kind == 'b':
                x, y = cur[k], cur[k + 1]
                rr = min(x, y)
                sign = 1 if x > y else -1
                suffix = cur[k + 3:]
                right = _act(_perm_of(suffix, d), idem)
                corr = self._braid_correction(rr, right)
                if corr:
                    base = self._word_nf(suffix, idem)
                    for k2, c2 in base.items():
                        w2, y2, i2 = k2
                        merged = (w2, tuple(a + b for a, b in zip(y2, yexp)), i2)
                        mid = {}
                        self._left_mul_poly(corr, merged, c2 * coeff * sign, mid)
                        for k3, c3 in mid.items():
                            for k4, c4 in self._prepend_word(cur[:k], k3, c3).items():
                                _bump(out, k4, c4)
            cur = perms.apply_move(cur, move)
        return ((cur, yexp, idem), coeff)

    def _braid_correction(self, r, right):
        """(R7) defect for the braid on generators r, r+1 over right word."""
        i, j, k = right[r - 1], right[r], right[r + 1]
        if i != k:
            return []
        if i == j:
            return []
        a_ij = self.datum.cartan(i, j)
        if a_ij == 0:
            return []
        e = self.datum.eps(i, j)
        deg = -a_ij
        return [(e, ((r, t), (r + 2, deg - 1 - t))) for t in range(deg)]

    def _prepend_word(self, letters, key, coeff):
        cur = {key: coeff}
        for r in reversed(letters):
            nxt = {}
            for k2, c2 in cur.items():
                self._left_mul_psi(r, k2, c2, nxt)
            cur = nxt
        return cur

    def _word_nf(self, word, idem):
        """Normal form of psi_word e(idem) for an arbitrary letter string."""
        ck = (word, idem)
        hit = self._word_nf_cache.get(ck)
        if hit is not None:
            return hit
        zeros = (0,) * self.d
        cur = {(tuple(), zeros, idem): 1}
        for r in reversed(word):
            nxt = {}
            for k2, c2 in cur.items():
                self._left_mul_psi(r, k2, c2, nxt)
            cur = {k: c for k, c in nxt.items() if c}
        self._word_nf_cache[ck] = cur
        return cur

    # -- public constructors ----------------------------------------------

    def e(self, idem):
        idem = tuple(idem)
        if self.datum.weight(idem) != self.alpha:
            raise ValueError("word has the wrong weight")
        zeros = (0,) * self.d
        return self.element({(tuple(), zeros, idem): 1})

    def y(self, r, idem):
        if not 1 <= r <= self.d:
            raise IndexError("y index out of range")
        idem = tuple(idem)
        yexp = tuple(1 if k == r - 1 else 0 for k in range(self.d))
        return self.element({(tuple(), yexp, idem): 1})

    def psi(self, r, idem):
        if not 1 <= r <= self.d - 1:
            raise IndexError("psi index out of range")
        return self.element(self._word_nf((r,), tuple(idem)))

    def psi_word(self, letters, idem):
        return self.element(self._word_nf(tuple(letters), tuple(idem)))

    def unit(self):
        zeros = (0,) * self.d
        return self.element({(tuple(), zeros, tuple(i)): 1 for i in self.words})

    def sum_over_words(self, maker):
        out = self.zero()
        for i in self.words:
            out = out + maker(tuple(i))
        return out

    def from_atoms(self, psi_letters, y_powers, idem, coeff=1):
        """psi_{letters} * y^{powers} * e(idem), normalised."""
        idem = tuple(idem)
        base = self._word_nf(tuple(psi_letters), idem)
        out = {}
        for (w2, y2, i2), c2 in base.items():
            merged = tuple(a + b for a, b in zip(y2, y_powers))
            _bump(out, (w2, merged, i2), c2 * coeff)
        return self.element(out)


def _bump(d, k, c):
    nc = d.get(k, 0) + c
    if nc:
        d[k] = nc
    else:
        d.pop(k, None)


class KlrElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, KlrElement) and self.terms == other.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _bump(out, k, c)
        return KlrElement(self.algebra, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _bump(out, k, -c)
        return KlrElement(self.algebra, out)

    def __neg__(self):
        return KlrElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def scale(self, n):
        if n == 0:
            return self.algebra.zero()
        return KlrElement(self.algebra, {k: n * c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        alg = self.algebra
        out = {}
        by_left = {}
        for k2, c2 in other.terms.items():
            by_left.setdefault(alg.left_word(k2), []).append((k2, c2))
        for (w1, y1, i1), c1 in self.terms.items():
            bucket = by_left.get(i1)
            if not bucket:
                continue
            cur = {}
            for k2, c2 in bucket:
                _bump(cur, k2, c1 * c2)
            for t in range(alg.d, 0, -1):
                for _ in range(y1[t - 1]):
                    nxt = {}
                    for k2, c2 in cur.items():
                        alg._left_mul_y(t, k2, c2, nxt)
                    cur = nxt
            for r in reversed(w1):
                nxt = {}
                for k2, c2 in cur.items():
                    alg._left_mul_psi(r, k2, c2, nxt)
                cur = nxt
            for k2, c2 in cur.items():
                _bump(out, k2, c2)
        return KlrElement(alg, out)

    __rmul__ = __mul__

    def _check(self, other):
        if self.algebra.alpha != other.algebra.alpha:
            raise ValueError("weight mismatch")

    def tau(self):
        """The anti-automorphism fixing all generators.

        tau(psi_w y^m e(i)) = e(i) y^m psi_{reversed word}, a product whose
        right idempotent word is w(i); it is assembled by left-multiplying
        the atoms right-to-left (crossings first, then the dots).
        """
        alg = self.algebra
        out = {}
        for (word, yexp, idem), c in self.terms.items():
            w = _perm_of(word, alg.d)
            new_idem = _act(w, idem)
            cur = {((), (0,) * alg.d, new_idem): c}
            for r in word:  # rightmost letter of reversed(word) first
                nxt = {}
                for k2, c2 in cur.items():
                    alg._left_mul_psi(r, k2, c2, nxt)
                cur = nxt
            for t in range(1, alg.d + 1):
                for _ in range(yexp[t - 1]):
                    nxt = {}
                    for k2, c2 in cur.items():
                        alg._left_mul_y(t, k2, c2, nxt)
                    cur = nxt
            for k2, c2 in cur.items():
                _bump(out, k2, c2)
        return KlrElement(alg, out)

    def degree(self):
        """Degree of a homogeneous element (None for 0); raises if mixed."""
        deg = None
        for k in self.terms:
            dk = self.algebra.term_degree(k)
            if deg is None:
                deg = dk
            elif deg != dk:
                raise ValueError("element is not homogeneous")
        return deg

    def is_homogeneous(self):
        try:
            self.degree()
            return True
        except ValueError:
            return False

    def coeff(self, word, yexp, idem):
        return self.terms.get((tuple(word), tuple(yexp), tuple(idem)), 0)

    def text(self):
        """Canonical text form, deterministic for golden tests."""
        if not self.terms:
            return "0"
        bits = []
        for (word, yexp, idem) in sorted(self.terms):
            c = self.terms[(word, yexp, idem)]
            s = f"{c:+d}*"
            if word:
                s += "psi[" + ",".join(map(str, word)) + "] "
            if any(yexp):
                s += "y^(" + ",".join(map(str, yexp)) + ") "
            s += "e(" + ",".join(map(str, idem)) + ")"
            bits.append(s)
        return " ".join(bits)

    def to_json(self):
        return [
            {"psi": list(word), "y": list(yexp), "e": list(idem), "coeff": c}
            for (word, yexp, idem), c in sorted(self.terms.items())
        ]

    def __repr__(self):
        return self.text()


# -- algebra registry ------------------------------------------------------

_REGISTRY = {}


def algebra(datum, alpha):
    key = (datum.type_letter, datum.rank, tuple(alpha))
    alg = _REGISTRY.get(key)
    if alg is None:
        alg = Algebra(datum, alpha)
        _REGISTRY[key] = alg
    return alg


# -- spec-level operations --------------------------------------------------

def generator_e(datum, idem):
    alg = algebra(datum, datum.weight(tuple(idem)))
    return alg.e(idem)


def generator_y(datum, r, alpha):
    alg = algebra(datum, alpha)
    return alg.sum_over_words(lambda i: alg.y(r, i))


def generator_psi(datum, r, alpha):
    alg = algebra(datum, alpha)
    return alg.sum_over_words(lambda i: alg.psi(r, i))


def multiply(a, b):
    return a * b


def tau(a):
    return a.tau()


def psi_w(datum, w, alpha):
    alg = algebra(datum, alpha)
    word = perms.canonical_word(w)
    return alg.sum_over_words(lambda i: alg.psi_word(word, i))


class ParabolicEmbedding:
    """iota_{gamma_1,...,gamma_l}: R_{gamma_1} x ... -> R_alpha."""

    def __init__(self, datum, parts):
        self.datum = datum
        self.parts = [tuple(p) for p in parts]
        self.alpha = tuple(sum(xs) for xs in zip(*self.parts))
        self.offsets = []
        acc = 0
        for p in self.parts:
            self.offsets.append(acc)
            acc += sum(p)

    def target(self):
        return algebra(self.datum, self.alpha)

    def idempotent(self):
        """1_{gamma_1,...,gamma_l} = sum over concatenated words."""
        target = self.target()
        out = target.zero()
        for combo in _part_word_combos(self.parts):
            out = out + target.e(sum(combo, ()))
        return out


def _part_word_combos(parts):
    from itertools import product
    pools = [_multiset_words(p) for p in parts]
    return [tuple(ws) for ws in product(*pools)]


def iota(embedding, elements):
    """Image of a pure tensor of KLR elements under the embedding."""
    if len(elements) != len(embedding.parts):
        raise ValueError("one element per part required")
    for el, p in zip(elements, embedding.parts):
        if el.algebra.alpha != tuple(p):
            raise ValueError("weight mismatch with embedding part")
    target = embedding.target()
    d = target.d
    out = target.zero()
    from itertools import product
    term_lists = [list(el.terms.items()) for el in elements]
    for combo in product(*term_lists):
        coeff = 1
        letters = []
        ypows = [0] * d
        idem = []
        for (key, c), off in zip(combo, embedding.offsets):
            word, yexp, part_idem = key
            coeff *= c
            letters.extend(r + off for r in word)
            for k, m in enumerate(yexp):
                ypows[off + k] += m
            idem.extend(part_idem)
        out = out + target.from_atoms(tuple(letters), tuple(ypows), tuple(idem), coeff)
    return out


def graded_component_basis(datum, alpha, i_word, j_word, n):
    """All basis keys psi_w y^m e(j) with w*j = i and total degree n."""
    alg = algebra(datum, alpha)
    d = alg.d
    i_word, j_word = tuple(i_word), tuple(j_word)
    out = []
    norms = [datum.norm(x) for x in j_word]
    for w in perms.all_perms(d):
        if _act(w, j_word) != i_word:
            continue
        base = alg.term_degree((perms.canonical_word(w), (0,) * d, j_word))
        rem = n - base
        if rem < 0:
            continue
        for m in _bounded_monomials(norms, rem):
            out.append((perms.canonical_word(w), m, j_word))
    return out


def min_psi_degree(datum, alpha):
    """Lower bound for degrees of basis elements of R_alpha."""
    letters = []
    for i, c in enumerate(alpha, start=1):
        letters.extend([i] * c)
    pair = datum.letters_pairing
    return -sum(abs(pair(letters[a], letters[b]))
                for a in range(len(letters)) for b in range(a + 1, len(letters)))


def _bounded_monomials(weights, total):
    if total == 0:
        yield (0,) * len(weights)
        return
    if not weights:
        return
    w0 = weights[0]
    for k in range(total // w0 + 1):
        for rest in _bounded_monomials(weights[1:], total - k * w0):
            yield (k,) + rest


def nilhecke_algebra(d):
    """R_{d*alpha_1} in type A_1: the d-th nilHecke algebra."""
    datum = build_cartan("A", 1)
    return algebra(datum, (d,))


def nilhecke_elements(d):
    """(delta_d, e_d, psi_{w_0}) with e_d = psi_{w0} delta_d."""
    if d < 1:
        raise ValueError("d >= 1 required")
    alg = nilhecke_algebra(d)
    idem = (1,) * d
    ypows = tuple(range(d))  # y_2 y_3^2 ... y_d^{d-1}
    delta = alg.from_atoms((), ypows, idem)
    w0 = perms.longest_element(d)
    psi_w0 = alg.psi_word(perms.canonical_word(w0), idem)
    e_d = psi_w0 * delta
    return delta, e_d, psi_w0
