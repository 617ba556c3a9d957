import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from fibrifier.corpus import GenConfig, gen_category, gen_fibration, random_functor  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TINY = GenConfig(seed=0, max_objects=3, max_morphisms=6, fibre_size_bound=2, base_size_bound=2)


@st.composite
def tiny_categories(draw, max_objects=3, max_morphisms=6):
    seed = draw(st.integers(0, 2**32 - 1))
    cfg = GenConfig(seed=seed, max_objects=max_objects, max_morphisms=max_morphisms)
    return gen_category(cfg, cfg.rng(), max_objects, max_morphisms)


@st.composite
def tiny_functors(draw, max_objects=3, max_morphisms=6):
    seed = draw(st.integers(0, 2**32 - 1))
    cfg = GenConfig(seed=seed)
    rng = cfg.rng()
    A = gen_category(cfg, rng, max_objects, max_morphisms)
    B = gen_category(cfg, rng, max_objects, max_morphisms)
    return random_functor(rng, A, B)


@st.composite
def small_fibrations(draw, loop_free=False):
    seed = draw(st.integers(0, 2**32 - 1))
    cfg = GenConfig(seed=seed, max_objects=6, max_morphisms=24, fibre_size_bound=2,
                    base_size_bound=3)
    return gen_fibration(cfg, cfg.rng(), loop_free=loop_free).functor


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
