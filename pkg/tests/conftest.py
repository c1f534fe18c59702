import pytest
from hypothesis import settings

from toricvf import cone

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

QUADRANT = [(1, 0), (0, 1)]
A1 = [(1, 0), (1, 2)]
A2 = [(1, 0), (1, 3)]
V52 = [(1, 0), (2, 5)]
OCTANT = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
SIMPLEX_112 = [(1, 0, 0), (0, 1, 0), (1, 1, 2)]
SQUARE = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]

CORPUS = {
    "quadrant": QUADRANT,
    "A1": A1,
    "A2": A2,
    "V52": V52,
    "octant": OCTANT,
    "simplex112": SIMPLEX_112,
    "square": SQUARE,
}


@pytest.fixture(params=sorted(CORPUS))
def corpus_cone(request):
    return cone(CORPUS[request.param])
