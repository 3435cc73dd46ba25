"""Symmetric group combinatorics used by the normal-form engine.

Permutations are tuples ``w`` with ``w[k-1] = w(k)`` (1-based values).
Products compose right-to-left: ``(u*v)(k) = u(v(k))``, so a word
``(r_1, ..., r_m)`` stands for ``s_{r_1} * ... * s_{r_m}`` and acts on
positions with ``s_{r_m}`` applied first.

Every permutation has a canonical reduced word: the lexicographically
smallest one, obtained by peeling the minimal left descent.  These words
are suffix-closed (the tail of a canonical word is the canonical word of
its own permutation), which the rewriting engine in `klr` relies on.
"""

from functools import lru_cache


def identity(d):
    return tuple(range(1, d + 1))


def simple(r, d):
    """The transposition s_r in S_d (1 <= r <= d-1)."""
    w = list(range(1, d + 1))
    w[r - 1], w[r] = w[r], w[r - 1]
    return tuple(w)


def compose(u, v):
    """u*v, i.e. apply v first."""
    return tuple(u[v[k] - 1] for k in range(len(v)))


def inverse(w):
    inv = [0] * len(w)
    for k, wk in enumerate(w):
        inv[wk - 1] = k + 1
    return tuple(inv)


def left_mul_simple(r, w):
    """s_r * w: swap the values r, r+1 in w."""
    return tuple(r + 1 if x == r else r if x == r + 1 else x for x in w)


def right_mul_simple(w, r):
    """w * s_r: swap positions r, r+1."""
    x = list(w)
    x[r - 1], x[r] = x[r], x[r - 1]
    return tuple(x)


def length(w):
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def is_left_descent(r, w):
    """True iff l(s_r w) < l(w), i.e. r appears after r+1 in w."""
    return w.index(r + 1) < w.index(r)


def is_right_descent(w, r):
    return w[r - 1] > w[r]


def min_left_descent(w):
    """Smallest r with l(s_r w) < l(w); None for the identity."""
    pos = inverse(w)
    for r in range(1, len(w)):
        if pos[r] < pos[r - 1]:
            return r
    return None


@lru_cache(maxsize=None)
def canonical_word(w):
    """Lexicographically smallest reduced word of w."""
    word = []
    while True:
        r = min_left_descent(w)
        if r is None:
            return tuple(word)
        word.append(r)
        w = left_mul_simple(r, w)


def word_to_perm(word, d):
    w = identity(d)
    for r in reversed(word):
        w = left_mul_simple(r, w)
    return w


def is_reduced(word, d):
    return length(word_to_perm(word, d)) == len(word)


def apply_perm_to_word(w, letters):
    """Place permutation: (w i)_{w(k)} = i_k."""
    out = [None] * len(letters)
    for k in range(len(letters)):
        out[w[k] - 1] = letters[k]
    return tuple(out)


def all_perms(d):
    from itertools import permutations
    return [tuple(p) for p in permutations(range(1, d + 1))]


def longest_element(d):
    return tuple(range(d, 0, -1))


# -- parabolic subgroups ------------------------------------------------

def block_starts(sizes):
    starts, acc = [], 0
    for s in sizes:
        starts.append(acc)
        acc += s
    return starts, acc


def block_embed(perms, sizes):
    """Block-diagonal permutation from one permutation per block."""
    starts, d = block_starts(sizes)
    out = [0] * d
    for (p, s, start) in zip(perms, sizes, starts):
        for k in range(s):
            out[start + k] = start + p[k]
    return tuple(out)


def min_coset_reps(sizes):
    """Minimal length representatives of S_d / (S_{sizes[0]} x ...).

    These are the permutations increasing on each block of positions;
    they are enumerated by the choice of image set for each block.
    """
    from itertools import combinations
    starts, d = block_starts(sizes)

    def rec(remaining, blocks):
        if not blocks:
            yield []
            return
        s = blocks[0]
        for chosen in combinations(sorted(remaining), s):
            rest = remaining - set(chosen)
            for tail in rec(rest, blocks[1:]):
                yield list(chosen) + tail
    reps = []
    for assignment in rec(set(range(1, d + 1)), list(sizes)):
        reps.append(tuple(assignment))
    return reps


def block_transposition(r, p, d):
    """w_{beta,r}: swap the r-th and (r+1)-st d-blocks inside S_{p*d}."""
    n = p * d
    w = list(range(1, n + 1))
    for k in range(1, d + 1):
        a = (r - 1) * d + k
        b = r * d + k
        w[a - 1], w[b - 1] = w[b - 1], w[a - 1]
    return tuple(w)


def palindromic_longest_word(p):
    """Reduced word of w_0 in S_p equal to its own reverse (p <= 3)."""
    if p == 1:
        return ()
    if p == 2:
        return (1,)
    if p == 3:
        return (1, 2, 1)
    raise ValueError("no palindromic reduced word of w_0 exists for p=%d" % p)


# -- reduced word surgery -----------------------------------------------
#
# Scripts are lists of moves transforming one reduced word into another:
#   ('c', k): swap commuting letters at positions k, k+1
#   ('b', k): braid (a, b, a) -> (b, a, b) at positions k, k+1, k+2
# Applying a script to a psi-product is what creates correction terms in
# the KLR algebra; here we only do the word-level bookkeeping.


def apply_move(word, move):
    kind, k = move
    w = list(word)
    if kind == 'c':
        w[k], w[k + 1] = w[k + 1], w[k]
    else:
        a, b, a2 = w[k], w[k + 1], w[k + 2]
        assert a == a2 and abs(a - b) == 1
        w[k], w[k + 1], w[k + 2] = b, a, b
    return tuple(w)


def apply_script(word, script):
    for move in script:
        word = apply_move(word, move)
    return word


def left_transform_script(word, r):
    """Moves turning the reduced word into one starting with r.

    Requires r to be a left descent of the word's permutation.  Recursive
    on word length; the dihedral case spends one braid move.
    """
    if word[0] == r:
        return []
    c = word[0]
    tail = word[1:]
    if abs(c - r) >= 2:
        script = [(kind, k + 1) for (kind, k) in left_transform_script(tail, r)]
        script.append(('c', 0))
        return script
    # dihedral: the {r,c}-part of the permutation must be the full s_r s_c s_r,
    # so the word can be brought to start (c, r, c) and then braided.
    sub1 = left_transform_script(tail, r)
    new_tail = apply_script(tail, sub1)
    sub2 = left_transform_script(new_tail[1:], c)
    script = [(kind, k + 1) for (kind, k) in sub1]
    script += [(kind, k + 2) for (kind, k) in sub2]
    script.append(('b', 0))
    return script


def right_transform_script(word, r):
    """Moves turning the reduced word into one ending with r.

    Mirror of `left_transform_script` (requires r to be a right descent).
    """
    rev = tuple(reversed(word))
    n = len(word)
    out = []
    for kind, k in left_transform_script(rev, r):
        if kind == 'c':
            out.append(('c', n - 2 - k))
        else:
            out.append(('b', n - 3 - k))
    return out


@lru_cache(maxsize=None)
def canonicalize_script(word, d):
    """Moves turning an arbitrary reduced word into the canonical one."""
    if not word:
        return ()
    w = word_to_perm(word, d)
    target = canonical_word(w)
    if word == target:
        return ()
    a = target[0]
    script = list(left_transform_script(word, a))
    word2 = apply_script(word, script)
    assert word2[0] == a
    script += [(kind, k + 1) for (kind, k) in canonicalize_script(word2[1:], d)]
    return tuple(script)
