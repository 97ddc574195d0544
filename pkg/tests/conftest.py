import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def parks(seq):
    """Car i prefers spot seq[i] and takes the first free spot at or after it."""
    n = len(seq)
    taken = [False] * (n + 2)
    for pref in seq:
        spot = pref
        while spot <= n and taken[spot]:
            spot += 1
        if spot > n:
            return False
        taken[spot] = True
    return True


@pytest.fixture
def parking_oracle():
    return parks
