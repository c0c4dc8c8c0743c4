import random

import pytest

from pfladder import kernels
from pfladder.ladder import LadderSpec, cells, normalize, validate

GOLDEN = LadderSpec(7, [(1, 2), (1, 4), (3, 4), (3, 6), (4, 7)], (1, 2, 1, 2, 2))

# the generators printed for the golden example, in the text format
GOLDEN_LISTED = [
    "x[1,2]",
    "-x[1,3]*x[2,4] + x[1,4]*x[2,3]",
    "x[3,4]",
    "-x[3,5]*x[4,6] + x[3,6]*x[4,5]",
    "x[4,5]*x[6,7] - x[4,6]*x[5,7] + x[4,7]*x[5,6]",
]


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    """Run a test once per available kernel backend."""
    with kernels.use(request.param) as mod:
        yield mod


def random_specs(seed, count, n_range=(2, 9), max_corners=4, max_vars=None, normalized=False):
    """Random valid ladder specs (monotone corners, bounded sizes)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(*n_range)
        s = rng.randint(1, max_corners)
        a = sorted(rng.randint(1, n) for _ in range(s))
        b = sorted(rng.randint(1, n) for _ in range(s))
        t = [rng.randint(1, max(1, n // 2)) for _ in range(s)]
        spec = LadderSpec(n, list(zip(a, b)), t)
        if not validate(spec).ok:
            continue
        if max_vars is not None and len(cells(spec)) > max_vars:
            continue
        if normalized:
            spec = normalize(spec)
            if spec.is_empty():
                continue
        out.append(spec)
    return out


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance
    lines = test_acceptance.format_results()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
