import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from numsyll.syntax import AT_MOST, MORE_THAN, Formula, Literal  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def literals(atoms):
    return st.builds(Literal, st.sampled_from(atoms), st.booleans())


def formulas(atoms=("p", "q", "r"), max_bound=2, double_negative=True):
    f = st.builds(
        Formula,
        st.sampled_from([AT_MOST, MORE_THAN]),
        st.integers(0, max_bound),
        literals(list(atoms)),
        literals(list(atoms)),
    )
    if not double_negative:
        f = f.filter(lambda phi: phi.args[0].positive or phi.args[1].positive)
    return f


def formula_sets(atoms=("p", "q", "r"), max_bound=2, max_size=4, double_negative=True):
    return st.frozensets(formulas(atoms, max_bound, double_negative), min_size=0, max_size=max_size)
