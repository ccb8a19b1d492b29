"""Tests for the ordered parallel map"""

from simplest_cubic.field_core import FieldElement
from simplest_cubic.indecomposables import is_indecomposable_bruteforce
from simplest_cubic.parallel import default_threads, parallel_map


def test_in_process_keeps_order():
    assert parallel_map(abs, [3, -1, -2], threads=1) == [3, 1, 2]


def test_process_pool_keeps_order():
    items = list(range(-20, 20))
    assert parallel_map(abs, items, threads=2) == [abs(x) for x in items]


def test_results_do_not_depend_on_thread_count():
    elements = [FieldElement.rational(21, n) for n in (1, 2, 3)]
    serial = [r.indecomposable for r in parallel_map(is_indecomposable_bruteforce, elements, threads=1)]
    pooled = [r.indecomposable for r in parallel_map(is_indecomposable_bruteforce, elements, threads=2)]
    assert serial == pooled == [True, False, False]


def test_default_threads(monkeypatch):
    monkeypatch.delenv("SC_THREADS", raising=False)
    assert default_threads() == 1
    monkeypatch.setenv("SC_THREADS", "4")
    assert default_threads() == 4
    monkeypatch.setenv("SC_THREADS", "many")
    assert default_threads() == 1
