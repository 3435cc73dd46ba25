"""Finite-type Cartan data, positive roots, Lyndon words and convex orders.

Conventions follow the usual Dynkin labelings: chains 1..rank, with the
branch node attached to rank-2 (D) or rank-3 (E); in B the last node is
short, in C the last node is long, in F4 nodes 3,4 are short, in G2 node 1
is short.  Short roots have i.i = 2, so long roots have i.i = 4 (6 in G2).
Signs eps_ij are +1 for i < j.
"""

from dataclasses import dataclass
from functools import lru_cache


class UnsupportedTypeError(ValueError):
    pass


_RANK_RANGE = {
    "A": lambda l: l >= 1,
    "B": lambda l: l >= 2,
    "C": lambda l: l >= 3,
    "D": lambda l: l >= 4,
    "E": lambda l: l in (6, 7, 8),
    "F": lambda l: l == 4,
    "G": lambda l: l == 2,
}


@dataclass(frozen=True)
class Root:
    coeffs: tuple
    norm: int

    @property
    def height(self):
        return sum(self.coeffs)

    def __add__(self, other):
        raise TypeError("use CartanDatum.add_roots to stay inside Phi+")

    def to_json(self):
        return list(self.coeffs)


@dataclass(frozen=True)
class ConvexOrder:
    roots_desc: tuple  # beta_1 > beta_2 > ... > beta_N

    def index(self, root):
        return self.roots_desc.index(root)

    def __len__(self):
        return len(self.roots_desc)


class CartanDatum:
    def __init__(self, type_letter, rank, form):
        self.type_letter = type_letter
        self.rank = rank
        self.index_set = tuple(range(1, rank + 1))
        self.form = form  # dict (i,j) -> i.j

    def pairing(self, i, j):
        return self.form[(i, j)]

    def norm(self, i):
        return self.form[(i, i)]

    def cartan(self, i, j):
        return 2 * self.pairing(i, j) // self.norm(i)

    def eps(self, i, j):
        if i == j or self.cartan(i, j) == 0:
            raise ValueError("eps only defined on edges")
        return 1 if i < j else -1

    def q_poly(self, i, j):
        """Q_{ij}(u, v) as a dict {(u_exp, v_exp): coeff}."""
        if i == j:
            return {}
        a_ij = self.cartan(i, j)
        if a_ij == 0:
            return {(0, 0): 1}
        a_ji = self.cartan(j, i)
        e = self.eps(i, j)
        return {(-a_ij, 0): e, (0, -a_ji): -e}

    def weight(self, letters):
        v = [0] * self.rank
        for i in letters:
            v[i - 1] += 1
        return tuple(v)

    def coeffs_pairing(self, a, b):
        return sum(a[i] * b[j] * self.form[(i + 1, j + 1)]
                   for i in range(self.rank) for j in range(self.rank))

    def root(self, coeffs):
        coeffs = tuple(coeffs)
        return Root(coeffs, self.coeffs_pairing(coeffs, coeffs))

    def simple_root(self, i):
        return self.root(tuple(1 if k == i else 0 for k in self.index_set))

    def add_roots(self, a, b):
        return self.root(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def letters_pairing(self, i, j):
        return self.form[(i, j)]

    def __repr__(self):
        return f"CartanDatum({self.type_letter}{self.rank})"


def _edges(type_letter, rank):
    edges = [(i, i + 1) for i in range(1, rank)]
    if type_letter == "D":
        edges[-1] = (rank - 2, rank)
    elif type_letter == "E":
        edges[-1] = (rank - 3, rank)
    return edges


def _norms(type_letter, rank):
    norms = {i: 2 for i in range(1, rank + 1)}
    if type_letter == "B":
        for i in range(1, rank):
            norms[i] = 4
    elif type_letter == "C":
        norms[rank] = 4
    elif type_letter == "F":
        norms[1] = norms[2] = 4
    elif type_letter == "G":
        norms[2] = 6
    return norms


def build_cartan(type_letter, rank):
    type_letter = type_letter.upper()
    if type_letter not in _RANK_RANGE or not _RANK_RANGE[type_letter](rank):
        raise UnsupportedTypeError(f"unsupported type {type_letter}_{rank}")
    norms = _norms(type_letter, rank)
    form = {}
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            form[(i, j)] = norms[i] if i == j else 0
    for (i, j) in _edges(type_letter, rank):
        # adjacent pairing: i.j = -max(norm)/2 except the G2 triple edge
        val = -3 if type_letter == "G" else -max(norms[i], norms[j]) // 2
        form[(i, j)] = form[(j, i)] = val
    datum = CartanDatum(type_letter, rank, form)
    # finite-type sanity
    for i in datum.index_set:
        assert datum.norm(i) in (2, 4, 6)
        for j in datum.index_set:
            if i != j:
                assert datum.cartan(i, j) in (0, -1, -2, -3)
    return datum


def positive_roots(datum):
    """All positive roots, by closing the simple roots along root strings."""
    by_height = {1: [datum.simple_root(i) for i in datum.index_set]}
    seen = {r.coeffs for r in by_height[1]}
    h = 1
    while by_height.get(h):
        nxt = []
        for beta in by_height[h]:
            for i in datum.index_set:
                alpha = datum.simple_root(i)
                # p = how far the alpha_i-string continues below beta
                p = 0
                down = list(beta.coeffs)
                while True:
                    down[i - 1] -= 1
                    if min(down) < 0 or tuple(down) not in seen:
                        break
                    p += 1
                pair = 2 * datum.coeffs_pairing(beta.coeffs, alpha.coeffs) // alpha.norm
                if p - pair > 0:
                    gamma = datum.add_roots(beta, alpha)
                    if gamma.coeffs not in seen:
                        seen.add(gamma.coeffs)
                        nxt.append(gamma)
        h += 1
        if nxt:
            by_height[h] = nxt
    out = []
    for h in sorted(by_height):
        out.extend(sorted(by_height[h], key=lambda r: r.coeffs))
    return out


@lru_cache(maxsize=None)
def _lyndon_table(type_letter, rank):
    datum = build_cartan(type_letter, rank)
    roots = positive_roots(datum)
    root_set = {r.coeffs for r in roots}
    words = {}
    for beta in roots:  # positive_roots is sorted by height
        if beta.height == 1:
            words[beta.coeffs] = (beta.coeffs.index(1) + 1,)
            continue
        best = None
        for gamma in roots:
            if gamma.height >= beta.height:
                break
            delta = tuple(b - g for b, g in zip(beta.coeffs, gamma.coeffs))
            if min(delta) < 0 or delta not in root_set:
                continue
            wg, wd = words[gamma.coeffs], words[delta]
            if wg < wd:
                cand = wg + wd
                if best is None or cand > best:
                    best = cand
        assert best is not None, f"no costandard factorization for {beta}"
        words[beta.coeffs] = best
    return words


def lyndon_word(datum, beta):
    words = _lyndon_table(datum.type_letter, datum.rank)
    if beta.coeffs not in words:
        raise ValueError(f"{beta} is not a positive root")
    return words[beta.coeffs]


def is_lyndon(word):
    return all(word < word[k:] for k in range(1, len(word)))


def lyndon_order(datum):
    roots = positive_roots(datum)
    roots.sort(key=lambda b: lyndon_word(datum, b), reverse=True)
    return ConvexOrder(tuple(roots))


def check_convexity(datum, order):
    """beta < gamma with beta+gamma in Phi+ forces beta < beta+gamma < gamma."""
    desc = order.roots_desc
    pos = {r.coeffs: k for k, r in enumerate(desc)}
    n = len(desc)
    for a in range(n):
        for b in range(a + 1, n):
            # desc[a] > desc[b]: gamma = desc[a], beta = desc[b]
            s = tuple(x + y for x, y in zip(desc[a].coeffs, desc[b].coeffs))
            if s in pos:
                if not (a < pos[s] < b):
                    return False
    return True
