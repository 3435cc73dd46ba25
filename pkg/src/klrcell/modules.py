"""Irreducible modules: word graphs and homogeneous representations,
cuspidal characters for all finite types, root partitions and proper
standard characters.

Cuspidal characters come from three routes: the word-graph module for
simply-laced roots, closed formulas for the B/C families, and a
degreewise realization L(beta) = Delta(beta)/(y_beta image) computed in
the algebra over Q for everything else (G2, the non-chain F4 roots).
The highest root of E8 is only exposed word-by-word; its full support
is far beyond desk scale.
"""

from dataclasses import dataclass
from functools import lru_cache

from . import klr, perms
from .cartan import build_cartan, lyndon_order, lyndon_word, positive_roots
from .characters import Character, shuffle_product, shuffle_coefficient
from .laurent import LaurentSeries, l_pi
from .linalg import SparseEchelon, TrackedEchelon


# -- word graphs and homogeneous modules ---------------------------------

def admissible(datum, word, r):
    return word[r - 1] != word[r] and datum.cartan(word[r - 1], word[r]) == 0


def word_graph_components(datum, alpha):
    """Connected components of the word graph, with homogeneity flags."""
    words = sorted(klr._multiset_words(alpha))
    seen = set()
    out = []
    for start in words:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            w = stack.pop()
            for r in range(1, len(w)):
                if admissible(datum, w, r):
                    w2 = w[:r - 1] + (w[r], w[r - 1]) + w[r:]
                    if w2 not in comp:
                        comp.add(w2)
                        stack.append(w2)
        seen |= comp
        out.append((tuple(sorted(comp)), _is_homogeneous(datum, start)))
    return out


def _is_homogeneous(datum, word):
    """Condition: repeated letters need two strict -1 neighbours between."""
    for r in range(len(word)):
        for s in range(r + 1, len(word)):
            if word[r] == word[s]:
                mid = [t for t in range(r + 1, s)
                       if datum.cartan(word[r], word[t]) == -1]
                if len(mid) < 2:
                    return False
    return True


class HomogeneousModule:
    """L(C) for a homogeneous component: psi moves along edges, y acts 0."""

    def __init__(self, datum, component):
        self.datum = datum
        self.basis = tuple(sorted(component))
        self.index = {w: k for k, w in enumerate(self.basis)}
        self.d = len(self.basis[0])
        if not _is_homogeneous(datum, self.basis[0]):
            raise ValueError("component is not homogeneous")

    @property
    def dim(self):
        return len(self.basis)

    def matrix_e(self, word):
        word = tuple(word)
        return [[1 if (i == j and self.basis[i] == word) else 0
                 for j in range(self.dim)] for i in range(self.dim)]

    def matrix_y(self, r):
        return [[0] * self.dim for _ in range(self.dim)]

    def matrix_psi(self, r):
        m = [[0] * self.dim for _ in range(self.dim)]
        for j, w in enumerate(self.basis):
            if admissible(self.datum, w, r):
                w2 = w[:r - 1] + (w[r], w[r - 1]) + w[r:]
                if w2 in self.index:
                    m[self.index[w2]][j] = 1
        return m

    def character(self):
        return Character(self.datum, {w: LaurentSeries.one() for w in self.basis})

    def admissible_elements(self, word):
        """All w in S_d reachable by admissible transpositions from `word`.

        Returns {target word: permutation}, one per vertex (Lemma-style:
        admissible w is determined by w*word).
        """
        word = tuple(word)
        out = {word: perms.identity(self.d)}
        stack = [word]
        while stack:
            w = stack.pop()
            for r in range(1, self.d):
                if admissible(self.datum, w, r):
                    w2 = w[:r - 1] + (w[r], w[r - 1]) + w[r:]
                    if w2 not in out:
                        out[w2] = perms.compose(perms.simple(r, self.d), out[w])
                        stack.append(w2)
        return out


# -- root partitions -------------------------------------------------------

@dataclass(frozen=True)
class RootPartition:
    mults: tuple           # multiplicities against order.roots_desc
    order: object          # ConvexOrder

    @property
    def parts(self):
        """Nonzero (root, multiplicity) pairs, largest root first."""
        return [(self.order.roots_desc[k], p)
                for k, p in enumerate(self.mults) if p]

    def weight(self):
        n = len(self.order.roots_desc[0].coeffs)
        v = [0] * n
        for root, p in self.parts:
            for j in range(n):
                v[j] += p * root.coeffs[j]
        return tuple(v)

    def i_word(self, datum):
        w = ()
        for root, p in self.parts:
            w += lyndon_word(datum, root) * p
        return w

    def sh(self):
        return sum((root.norm * p * (p - 1)) // 4 for root, p in self.parts)

    def __repr__(self):
        return "RP(" + ",".join(f"{root.coeffs}^{p}" for root, p in self.parts) + ")"


def leq_l(a, b):
    if a.mults == b.mults:
        return True
    for pa, pb in zip(a.mults, b.mults):
        if pa != pb:
            return pa < pb
    return True


def leq_r(a, b):
    if a.mults == b.mults:
        return True
    for pa, pb in zip(reversed(a.mults), reversed(b.mults)):
        if pa != pb:
            return pa < pb
    return True


def bilex_leq(a, b):
    return leq_l(a, b) and leq_r(a, b)


def root_partitions(datum, alpha, order=None):
    """All root partitions of alpha, sorted maximal-first by <_l."""
    if order is None:
        order = lyndon_order(datum)
    roots = order.roots_desc
    rank = len(alpha)
    out = []

    def rec(k, rem, acc):
        if k == len(roots):
            if all(x == 0 for x in rem):
                out.append(RootPartition(tuple(acc), order))
            return
        c = roots[k].coeffs
        top = min(rem[j] // c[j] for j in range(rank) if c[j])
        for p in range(top, -1, -1):
            rem2 = tuple(rem[j] - p * c[j] for j in range(rank))
            if min(rem2) >= 0:
                rec(k + 1, rem2, acc + [p])
    rec(0, tuple(alpha), [])
    out.sort(key=lambda rp: rp.mults, reverse=True)
    return out


# -- cuspidal characters ----------------------------------------------------

def _chain_word(i, j):
    return tuple(range(i, j + 1))


def _formula_character(datum, beta):
    """The closed-form cuspidal characters printed for types B, C, F4."""
    t, l = datum.type_letter, datum.rank
    word = lyndon_word(datum, beta)
    c = beta.coeffs
    if t == "A" or t == "D" or t == "E":
        return None
    if t == "B":
        if max(c) == 1:  # alpha_i + ... + alpha_j
            return Character.from_word(datum, word)
        # alpha_i+...+alpha_{j-1}+2alpha_j+...+2alpha_l
        return Character(datum, {word: LaurentSeries({1: 1, -1: 1})})
    if t == "C":
        if max(c) == 1:
            return Character.from_word(datum, word)
        i = next(k for k in range(l) if c[k])
        if c[i] == 1:  # middle family: ...+2a_j+...+2a_{l-1}+a_l
            return Character.from_word(datum, word)
        # doubled family: 2a_i+...+2a_{l-1}+a_l
        piece = Character.from_word(datum, _chain_word(i + 1, l - 1))
        sq = shuffle_product(piece, piece)
        out = {w + (l,): coeff * LaurentSeries.monomial(1)
               for w, coeff in sq.terms.items()}
        return Character(datum, out)
    if t == "F":
        if c[3] == 0:
            # B3 subsystem with the same order
            if max(c) == 1:
                return Character.from_word(datum, word)
            return Character(datum, {word: LaurentSeries({1: 1, -1: 1})})
        if max(c) == 1:  # chain alpha_i + ... + alpha_4
            return Character.from_word(datum, word)
        return None
    if t == "G":
        if beta.height == 1:
            return Character.from_word(datum, word)
        return None
    return None


_CUSPIDAL_CACHE = {}


def cuspidal_character(datum, beta):
    """ch_q L(beta); raises for the E8 highest root (use e8 helpers)."""
    key = (datum.type_letter, datum.rank, beta.coeffs)
    hit = _CUSPIDAL_CACHE.get(key)
    if hit is not None:
        return hit
    t = datum.type_letter
    if t in "ADE":
        if (t, datum.rank) == ("E", 8) and beta.coeffs == (2, 3, 4, 5, 6, 4, 2, 3):
            raise ValueError("E8 highest root: use e8_theta_coefficient")
        word = lyndon_word(datum, beta)
        comp = _component_of(datum, word)
        ch = Character(datum, {w: LaurentSeries.one() for w in comp})
    else:
        ch = _formula_character(datum, beta)
        if ch is None:
            ch = counted_cuspidal_character(datum, beta)
    _CUSPIDAL_CACHE[key] = ch
    return ch


def counted_cuspidal_character(datum, beta):
    """ch L(beta) recovered from graded dimension counts.

    The (beta)-layer of e(j) R e(i_beta) has graded dimension
    ch_j ch_{i_beta} / (1 - q_beta^2); subtracting the higher layers
    (known recursively) from the combinatorial basis count isolates it,
    and an exact square root / division recovers the character.  Every
    step (square root, divisions, positivity, bar symmetry) is exact, so
    an inconsistent layer prediction cannot slip through.
    """
    from .cellular import component_dim
    from .laurent import sqrt_polynomial
    i_beta = lyndon_word(datum, beta)
    alpha = datum.weight(i_beta)
    sigmas = [rp for rp in root_partitions(datum, alpha)
              if len(rp.parts) > 1 or rp.parts[0][0] != beta]
    lo = klr.min_psi_degree(datum, alpha)
    norm = beta.norm
    margin = 2 * norm + 4
    N = max(8, -2 * lo)
    while True:
        def leftover(j, upto):
            vals = {n: component_dim(datum, j, i_beta, n)
                    for n in range(lo, upto + 1)}
            for rp in sigmas:
                ser = layer_dim_series(datum, rp, j, i_beta, upto)
                for n in vals:
                    vals[n] -= ser.coeff(n)
            if any(v < 0 for v in vals.values()):
                raise RuntimeError("higher layers exceed the component count")
            return LaurentSeries({n: v for n, v in vals.items() if v})
        F = leftover(i_beta, N)
        G = F * LaurentSeries({0: 1, norm: -1})
        G = LaurentSeries({n: c for n, c in G.coeffs.items() if n <= N})
        if not G:
            raise RuntimeError("empty cuspidal character")
        top = G.max_degree()
        if top > N - margin:
            N += 2 * margin
            continue
        ch_ib = sqrt_polynomial(G)
        words = klr._multiset_words(alpha)
        terms = {tuple(i_beta): ch_ib}
        for j in words:
            j = tuple(j)
            if j == tuple(i_beta):
                continue
            Fj = leftover(j, N)
            Gj = Fj * LaurentSeries({0: 1, norm: -1})
            Gj = LaurentSeries({n: c for n, c in Gj.coeffs.items() if n <= N})
            if not Gj:
                continue
            if Gj.max_degree() > N - margin:
                raise RuntimeError("word series not settled inside the window")
            terms[j] = Gj.exact_div(ch_ib)
        ch = Character(datum, terms)
        if not ch.is_bar_invariant():
            raise RuntimeError("counted cuspidal character is not bar-symmetric")
        if any(c.coeffs and min(c.coeffs.values()) < 0 for c in ch.terms.values()):
            raise RuntimeError("negative multiplicities in cuspidal character")
        if ch.highest_word() != tuple(i_beta):
            raise RuntimeError("highest word is not i_beta")
        return ch


_STANDARD_CACHE = {}


def cached_standard_character(datum, pi):
    key = (datum.type_letter, datum.rank, pi.mults)
    hit = _STANDARD_CACHE.get(key)
    if hit is None:
        hit = proper_standard_character(datum, pi)
        _STANDARD_CACHE[key] = hit
    return hit


def layer_dim_series(datum, pi, j_word, i_word, cutoff):
    """[q^n] of ch(pi)_j ch(pi)_i l_pi for n <= cutoff: the layer dimension
    of e(j) (I_pi/I_{>pi}) e(i) predicted by the graded dimension formula."""
    ch = cached_standard_character(datum, pi)
    cj, ci = ch.coeff(tuple(j_word)), ch.coeff(tuple(i_word))
    if not cj or not ci:
        return LaurentSeries.zero(cutoff)
    prod = cj * ci
    pad = max(0, -(prod.min_degree() or 0))
    if cutoff + pad < 0:
        return LaurentSeries.zero(cutoff)
    return (prod * l_pi(pi, cutoff + pad)).truncate(cutoff)


def _component_of(datum, word):
    comp = {word}
    stack = [word]
    while stack:
        w = stack.pop()
        for r in range(1, len(w)):
            if admissible(datum, w, r):
                w2 = w[:r - 1] + (w[r], w[r - 1]) + w[r:]
                if w2 not in comp:
                    comp.add(w2)
                    stack.append(w2)
    return comp


def homogeneous_module(datum, component):
    return HomogeneousModule(datum, component)


# -- degreewise realization of a cuspidal module ----------------------------

class CuspidalRealization:
    """L(beta) = Delta(beta)/(image of y_beta), degree by degree over Q.

    Delta(beta) is the projective cover (R_beta/I_{>(beta)}) e_beta; all its
    composition factors are L(beta), and quotienting by the image of the
    degree-raising endomorphism y_beta leaves exactly L(beta).
    Components are computed per (degree, left word); each holds chosen
    representative keys and an echelon for expressing vectors.
    """

    def __init__(self, datum, beta, cell_datum=None):
        from . import cellular
        self.datum = datum
        self.beta = beta
        self.i_beta = lyndon_word(datum, beta)
        self.alpha = datum.weight(self.i_beta)
        self.alg = klr.algebra(datum, self.alpha)
        self.d = beta.height
        if cell_datum is None:
            cell_datum = cellular.cell_datum(datum, beta)
        self.cd = cell_datum
        self.e_beta = cell_datum.e
        self.y_beta = cell_datum.y
        self._sigmas = [rp for rp in root_partitions(datum, self.alpha)
                        if len(rp.parts) > 1 or rp.parts[0][0] != beta]
        self._ideal_slices = {}
        self._components = {}
        self._build()

    # ideal I_{>(beta)} restricted to right word i_beta, per (degree, left word)
    def _predicted_rank(self, n, j):
        """Layer dimensions above (beta), from the graded dimension formula.

        Used only to stop the spanning enumeration early; a mismatch with
        the achieved rank raises, so the prediction is re-verified on
        every slice.
        """
        total = 0
        for rp in self._sigmas:
            total += layer_dim_series(self.datum, rp, j, self.i_beta, n).coeff(n)
        return total

    def _ideal_slice(self, n, j):
        key = (n, j)
        hit = self._ideal_slices.get(key)
        if hit is not None:
            return hit
        ech = SparseEchelon()
        lo = klr.min_psi_degree(self.datum, self.alpha)
        target = self._predicted_rank(n, j)
        done = ech.rank >= target
        for rp in self._sigmas:
            if done:
                break
            i_sigma = rp.i_word(self.datum)
            for n1 in range(lo, n - lo + 1):
                if done:
                    break
                n2 = n - n1
                lefts = klr.graded_component_basis(self.datum, self.alpha, j, i_sigma, n1)
                if not lefts:
                    continue
                rights = klr.graded_component_basis(
                    self.datum, self.alpha, i_sigma, self.i_beta, n2)
                for ka in lefts:
                    for kb in rights:
                        terms = self.alg.key_product(ka, kb)
                        if terms and ech.add(terms) and ech.rank >= target:
                            done = True
                            break
                    if done:
                        break
        if ech.rank != target:
            raise RuntimeError(
                f"ideal slice rank {ech.rank} != predicted {target} at {(n, j)}")
        self._ideal_slices[key] = ech
        return ech

    def _component(self, n, j):
        key = (n, j)
        hit = self._components.get(key)
        if hit is not None:
            return hit
        keys = klr.graded_component_basis(self.datum, self.alpha, j, self.i_beta, n)
        if not keys:
            comp = _Component([], None, None)
            self._components[key] = comp
            return comp
        ideal = self._ideal_slice(n, j)
        rel = SparseEchelon()
        for row in ideal.pivots.values():
            rel.add(dict(row))
        # image of y_beta: x e_beta y_beta for x of lower degree
        ydeg = self.y_beta.degree()
        ey = self.e_beta * self.y_beta
        for kx in klr.graded_component_basis(
                self.datum, self.alpha, j, self.i_beta, n - ydeg):
            v = self.alg.element({kx: 1}) * ey
            if v.terms:
                rel.add(v.terms)
        reps = []
        solver = TrackedEchelon()
        for kx in keys:
            v = self.alg.element({kx: 1}) * self.e_beta
            if not v.terms:
                continue
            lead, red = rel._reduce(v.terms)
            if lead is None:
                continue
            if solver.add(red):
                reps.append(v)
        comp = _Component(reps, rel, solver)
        self._components[key] = comp
        return comp

    def _build(self):
        """The degree window comes from the character (counted or closed
        form); the realization then only touches a handful of degrees.

        Degree 0 carries the class of e_beta itself, i.e. v^-: the lowest
        vector of the i_beta word space; the other word spaces may dip
        below it.
        """
        base = cuspidal_character(self.datum, self.beta)
        lows = [c.min_degree() for c in base.terms.values()]
        highs = [c.max_degree() for c in base.terms.values()]
        anchor = base.coeff(self.i_beta).min_degree()
        if anchor is None:
            raise RuntimeError("i_beta missing from the cuspidal character")
        self._expected = base
        self._centre_shift = anchor
        self.bot = min(lows) - anchor
        self.top = max(highs) - anchor

    def verify_dims(self):
        """Recompute every component dimension by linear algebra and compare
        with the character; includes a vanishing check just above the top."""
        got = self.dims()
        want = {}
        for j, c in self._expected.terms.items():
            for n, v in c.coeffs.items():
                want[(n - self._centre_shift, j)] = v
        if got != want:
            raise RuntimeError(f"realized dims {got} != character dims {want}")
        for j in self.alg.words:
            if self._component(self.top + 1, tuple(j)).dim:
                raise RuntimeError("module does not vanish above its top degree")
        return True

    def dims(self):
        out = {}
        for n in range(self.bot, self.top + 1):
            for j in self.alg.words:
                d = self._component(n, j).dim
                if d:
                    out[(n, tuple(j))] = d
        return out

    def character(self):
        """ch_q L(beta) recomputed from the realized components (normalised
        so the centre of symmetry sits at degree 0), with a vanishing check
        above the top."""
        terms = {}
        for (n, j), dim in self.dims().items():
            terms[j] = terms.get(j, LaurentSeries.zero()) + LaurentSeries(
                {n + self._centre_shift: dim})
        for j in self.alg.words:
            if self._component(self.top + 1, tuple(j)).dim:
                raise RuntimeError("module does not vanish above its top degree")
        return Character(self.datum, terms)

    # -- vectors and the action ------------------------------------------

    def _extreme_vector(self, degrees):
        for n in degrees:
            comp = self._component(n, self.i_beta)
            if comp.dim:
                if comp.dim != 1:
                    raise RuntimeError("extreme i_beta space is not one-dimensional")
                return ModuleVector(self, n, {(n, self.i_beta): comp.reps},
                                    {(n, self.i_beta): [1]})
        raise RuntimeError("empty i_beta word space")

    def lowest_vector(self):
        return self._extreme_vector(range(self.bot, self.top + 1))

    def highest_vector(self):
        return self._extreme_vector(range(self.top, self.bot - 1, -1))

    def act(self, element, vector):
        """Left action of a homogeneous KlrElement on a ModuleVector."""
        edeg = element.degree()
        if edeg is None:
            return ModuleVector(self, vector.degree, {}, {})
        n = vector.degree + edeg
        pieces = {}
        for key, reps in vector.reps.items():
            for rep, c in zip(reps, vector.coords[key]):
                if not c:
                    continue
                img = element * rep
                for (w, m, i), cc in img.terms.items():
                    j = self.alg.left_word((w, m, i))
                    slot = pieces.setdefault(j, {})
                    kk = (w, m, i)
                    slot[kk] = slot.get(kk, 0) + c * cc
        out_reps, out_coords = {}, {}
        for j, vec in pieces.items():
            comp = self._component(n, tuple(j))
            coords = comp.express(vec)
            if coords and any(coords):
                out_reps[(n, tuple(j))] = comp.reps
                out_coords[(n, tuple(j))] = coords
        return ModuleVector(self, n, out_reps, out_coords)


class _Component:
    def __init__(self, reps, rel, solver):
        self.reps = reps
        self.rel = rel
        self.solver = solver

    @property
    def dim(self):
        return len(self.reps)

    def express(self, vec):
        """Coordinates of a vector (terms dict) in the chosen basis."""
        if not self.reps:
            if self.rel is None:
                if vec:
                    raise RuntimeError("vector misses the component")
                return []
            lead, _ = self.rel._reduce(vec)
            if lead is not None:
                raise RuntimeError("vector misses the component")
            return []
        lead, red = self.rel._reduce(vec)
        if lead is None:
            return [0] * self.dim
        coords = self.solver.express(red)
        if coords is None:
            raise RuntimeError("vector not in the span of the basis")
        return [coords.get(k, 0) for k in range(self.dim)]


class ModuleVector:
    """Sum of component vectors of a CuspidalRealization."""

    def __init__(self, module, degree, reps, coords):
        self.module = module
        self.degree = degree
        self.reps = reps
        self.coords = coords

    def is_zero(self):
        return all(not any(cs) for cs in self.coords.values())

    def components(self):
        return {key: list(cs) for key, cs in self.coords.items() if any(cs)}

    def proportional_to(self, other):
        """Returns the scalar c with self = c*other, or None."""
        a, b = self.components(), other.components()
        if set(a) != set(b):
            return None
        scalar = None
        for key in a:
            for x, y in zip(a[key], b[key]):
                if (x == 0) != (y == 0):
                    return None
                if y:
                    from fractions import Fraction
                    c = Fraction(x, y)
                    if scalar is None:
                        scalar = c
                    elif scalar != c:
                        return None
        return scalar


# -- proper standard characters ---------------------------------------------

def proper_standard_character(datum, pi, cuspidal=None):
    """ch Dbar(pi) = q^{sh(pi)} * shuffle of cuspidal characters."""
    if cuspidal is None:
        cuspidal = {}
    ch = None
    for root, p in pi.parts:
        if root.coeffs not in cuspidal:
            cuspidal[root.coeffs] = cuspidal_character(datum, root)
        piece = cuspidal[root.coeffs]
        for _ in range(p):
            ch = piece if ch is None else shuffle_product(ch, piece)
    if ch is None:
        raise ValueError("empty root partition has no character here")
    return ch.shift(pi.sh())


def standard_characters(datum, alpha, cuspidal=None):
    """[(pi, ch Dbar(pi))] over all root partitions of alpha."""
    if cuspidal is None:
        cuspidal = {}
    return [(pi, proper_standard_character(datum, pi, cuspidal))
            for pi in root_partitions(datum, alpha)]


# -- E8 highest root ---------------------------------------------------------

@lru_cache(maxsize=1)
def _e8_pieces():
    datum = build_cartan("E", 8)
    th1 = datum.root((1, 1, 1, 2, 3, 2, 1, 2))
    th2 = datum.root((1, 2, 3, 3, 3, 2, 1, 1))
    return datum, cuspidal_character(datum, th1), cuspidal_character(datum, th2)


def e8_theta_numerator(word):
    """ch L(th2) o ch L(th1) - q ch L(th1) o ch L(th2), at one word."""
    datum, ch1, ch2 = _e8_pieces()
    a = shuffle_coefficient(datum, ch2, ch1, word)
    b = shuffle_coefficient(datum, ch1, ch2, word)
    return a - LaurentSeries.monomial(1) * b


def e8_theta_coefficient(word):
    """Coefficient of `word` in ch L(theta): numerator / (1 - q^2), exact."""
    num = e8_theta_numerator(word)
    if not num:
        return num
    return num.exact_div(LaurentSeries({0: 1, 2: -1}))
