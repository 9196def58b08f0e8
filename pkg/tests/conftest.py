import pytest
from hypothesis import strategies as st

from radzero.quiver import Arrow, ValuedQuiver, Valuation


def chain(n):
    """Linear quiver 1 -> 2 -> ... -> n."""
    return ValuedQuiver.from_pairs(n, [(k, k + 1) for k in range(1, n)])


Q_POINT = ValuedQuiver(1)
Q_LOOP = ValuedQuiver.from_pairs(1, [(1, 1)])
Q_A3 = chain(3)
Q_LOOPTAIL = ValuedQuiver.from_pairs(3, [(1, 1), (1, 2), (2, 3)])
Q_KRON = ValuedQuiver.from_pairs(2, [(1, 2)], {(1, 2): (2, 2)})
Q_2CYCLE = ValuedQuiver.from_pairs(2, [(1, 2), (2, 1)])

FIXTURES = {
    "point": Q_POINT,
    "loop": Q_LOOP,
    "a3": Q_A3,
    "looptail": Q_LOOPTAIL,
    "kron": Q_KRON,
    "2cycle": Q_2CYCLE,
}


@st.composite
def quivers(draw, max_vertices=5, max_val=3):
    n = draw(st.integers(1, max_vertices))
    pairs = [(t, h) for t in range(1, n + 1) for h in range(1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    val = st.integers(1, max_val)
    arrows = [Arrow(t, h, Valuation(draw(val), draw(val))) for t, h in chosen]
    return ValuedQuiver(n, tuple(arrows))


def all_paths(q, length):
    """Every walk with exactly ``length`` arrows, by brute force over vertex tuples."""
    from itertools import product

    out = []
    for walk in product(q.vertices, repeat=length + 1):
        if all((a, b) in q.pairs for a, b in zip(walk, walk[1:])):
            out.append(walk)
    return out


@pytest.fixture(params=sorted(FIXTURES))
def fixture_quiver(request):
    return FIXTURES[request.param]


ACCEPTANCE_LINES = []


def record_criterion(label, passed, detail):
    ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
