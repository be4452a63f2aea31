import numpy as np
import pytest

from sketchface.models.generator import GeneratorSpec, build_generator
from sketchface.probe.receptive import PROBE_BORDER_MARGIN

# interior window preserved in locality pairs: covers the L1 receptive field
# of the probe point for either parity, with one pixel to spare
PRESERVE_HALF = 5


def random_binary_sketch(rng, size=128):
    density = rng.uniform(0.05, 0.4)
    return (rng.random((size, size)) >= density).astype(np.float32)


def locality_pair(rng, size=128):
    """Two random sketches identical on an 11x11 window around an interior point."""
    m = PROBE_BORDER_MARGIN + 1
    x = int(rng.integers(m, size - m))
    y = int(rng.integers(m, size - m))
    a = random_binary_sketch(rng, size)
    b = random_binary_sketch(rng, size)
    b[y - PRESERVE_HALF: y + PRESERVE_HALF + 1,
      x - PRESERVE_HALF: x + PRESERVE_HALF + 1] = \
        a[y - PRESERVE_HALF: y + PRESERVE_HALF + 1,
          x - PRESERVE_HALF: x + PRESERVE_HALF + 1]
    return a, b, (x, y)


@pytest.fixture(scope="session")
def small_spec():
    return GeneratorSpec(base_channels=8, n_resblocks=1)


@pytest.fixture(scope="session")
def small_generator(small_spec):
    return build_generator(small_spec, seed=11)


@pytest.fixture(scope="session")
def default_generator():
    # full-width generator; building it is slow, share across tests
    return build_generator(GeneratorSpec(), seed=0)
