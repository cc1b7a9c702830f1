from math import comb

from gonlab.compositions import compositions_colex, compositions_colex_slice, count_compositions


def test_counts():
    assert count_compositions(0, 3) == 1
    assert count_compositions(5, 1) == 1
    assert count_compositions(6, 18) == comb(23, 17)


def test_enumeration_complete_and_ordered():
    seen = list(compositions_colex(4, 3))
    assert len(seen) == count_compositions(4, 3)
    assert len(set(seen)) == len(seen)
    assert all(sum(c) == 4 for c in seen)
    assert seen[0] == (4, 0, 0)
    # ascending colex: last differing coordinate increases
    for a, b in zip(seen, seen[1:]):
        j = max(i for i in range(3) if a[i] != b[i])
        assert a[j] < b[j]


def test_slices_concatenate_to_full():
    total = count_compositions(5, 4)
    full = list(compositions_colex(5, 4))
    cuts = [0, 7, 20, 33, total]
    glued = []
    for lo, hi in zip(cuts, cuts[1:]):
        glued.extend(compositions_colex_slice(5, 4, lo, hi))
    assert glued == full


def test_empty_slice():
    assert list(compositions_colex_slice(3, 3, 5, 5)) == []
