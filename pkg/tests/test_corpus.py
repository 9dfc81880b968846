import pytest

from attractors.corpus import corpus, fibonacci_word, periodic, random_string, thue_morse


def test_fibonacci_words():
    assert [fibonacci_word(k) for k in range(1, 7)] == ["b", "a", "ab", "aba", "abaab", "abaababa"]
    assert len(fibonacci_word(20)) == 6765
    with pytest.raises(ValueError):
        fibonacci_word(0)


def test_thue_morse_prefix():
    assert thue_morse(16) == "abbabaabbaababba"


def test_periodic_and_random():
    assert periodic("abc", 7) == "abcabca"
    assert random_string(50, 3, 7) == random_string(50, 3, 7)
    assert set(random_string(200, 3, 1)) == set("abc")


def test_corpus_shape():
    items = corpus()
    names = [name for name, _ in items]
    lengths = [len(s) for _, s in items]
    assert len(items) >= 30 and len(set(names)) == len(names)
    assert min(lengths) == 1 and max(lengths) == 2000
    for family in ("random", "periodic", "fib", "thue-morse"):
        assert any(name.startswith(family) for name in names)
    assert all(len(s) <= 100 for _, s in corpus(max_len=100))
