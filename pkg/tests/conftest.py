from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from lowkey.graph import MultiDigraph

DATA = Path(__file__).parent / "data"


def graph_from(n, edges, weight_kind="count"):
    g = MultiDigraph([f"n{i}" for i in range(n)], weight_kind=weight_kind)
    for u, v, w in edges:
        g.add_edge(u, v, w)
    return g


def random_edges(rng, n, p=0.4, weighted=False):
    edges = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                w = int(rng.integers(1, 6)) if weighted else 1
                edges.append((u, v, w))
    return edges


@st.composite
def digraphs(draw, max_n=8, weighted=True, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    if weighted:
        ws = draw(st.lists(st.integers(1, 9), min_size=len(chosen), max_size=len(chosen)))
    else:
        ws = [1] * len(chosen)
    return n, [(u, v, w) for (u, v), w in zip(chosen, ws)]


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL/SKIP line per acceptance criterion."""
    labels = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP", "error": "ERROR"}
    lines = {}
    for outcome, label in labels.items():
        for rep in terminalreporter.stats.get(outcome, []):
            crit = dict(getattr(rep, "user_properties", None) or []).get("criterion")
            if crit is None or (outcome == "passed" and rep.when != "call"):
                continue
            reason = ""
            if outcome == "skipped" and isinstance(rep.longrepr, tuple):
                reason = f"  [{rep.longrepr[2]}]"
            lines[crit] = f"{label:5s} {crit}{reason}"
    if lines:
        terminalreporter.section("acceptance criteria")
        for crit in sorted(lines, key=lambda c: int(c.split(".")[0])):
            terminalreporter.write_line(lines[crit])
