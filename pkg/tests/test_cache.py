from cyclic_workbench.cache import DiffCache
from cyclic_workbench.linalg import RationalMatrix


def test_put_get_round_trip(tmp_path):
    cache = DiffCache(tmp_path)
    m = RationalMatrix.from_dense([[1, 0], [0, "1/3"]])
    assert cache.get("abc", "b", 2, True) is None
    cache.put("abc", "b", 2, True, m)
    assert cache.get("abc", "b", 2, True) == m
    assert cache.get("abc", "b", 2, False) is None
    assert (cache.hits, cache.misses) == (1, 2)
    assert not list(tmp_path.glob("*.tmp"))


def test_corrupt_entry_is_a_miss(tmp_path):
    cache = DiffCache(tmp_path)
    cache.put("abc", "B", 1, True, RationalMatrix.identity(2))
    (path,) = tmp_path.glob("*.pkl")
    path.write_bytes(b"")
    assert cache.get("abc", "B", 1, True) is None
