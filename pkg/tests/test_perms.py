from klrcell import perms


def all_reduced_words(w):
    if w == tuple(sorted(w)):
        yield ()
        return
    for r in range(1, len(w)):
        if perms.is_left_descent(r, w):
            for rest in all_reduced_words(perms.left_mul_simple(r, w)):
                yield (r,) + rest


def test_canonical_words_lex_min_and_suffix_closed():
    for d in (2, 3, 4):
        for w in perms.all_perms(d):
            cw = perms.canonical_word(w)
            assert perms.word_to_perm(cw, d) == w
            assert len(cw) == perms.length(w)
            assert cw == min(all_reduced_words(w))
            if cw:
                assert cw[1:] == perms.canonical_word(
                    perms.left_mul_simple(cw[0], w))


def test_transform_scripts():
    d = 4
    for w in perms.all_perms(d):
        words = list(all_reduced_words(w))
        for word in words:
            sc = perms.canonicalize_script(word, d)
            assert perms.apply_script(word, sc) == perms.canonical_word(w)
        for r in range(1, d):
            if perms.is_left_descent(r, w):
                for word in words:
                    out = perms.apply_script(
                        word, perms.left_transform_script(word, r))
                    assert out[0] == r and perms.word_to_perm(out, d) == w
            if perms.is_right_descent(w, r):
                for word in words:
                    out = perms.apply_script(
                        word, perms.right_transform_script(word, r))
                    assert out[-1] == r and perms.word_to_perm(out, d) == w


def test_coset_reps():
    reps = perms.min_coset_reps((2, 2))
    assert len(reps) == 6
    for w in reps:
        assert w[0] < w[1] and w[2] < w[3]
    assert len(set(reps)) == 6


def test_block_transposition_and_embedding():
    w = perms.block_transposition(1, 2, 3)
    assert w == (4, 5, 6, 1, 2, 3)
    assert perms.length(w) == 9
    u = perms.block_embed([(2, 1), (1, 3, 2)], [2, 3])
    assert u == (2, 1, 3, 5, 4)


def test_palindromic_longest_words():
    assert perms.palindromic_longest_word(2) == (1,)
    w = perms.palindromic_longest_word(3)
    assert w == tuple(reversed(w))
    assert perms.word_to_perm(w, 3) == (3, 2, 1)
