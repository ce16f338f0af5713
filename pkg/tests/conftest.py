import dataclasses

import pytest

from ntnvec.scenario import Config, Kind


def make_config(k=None, c_gv=None, n_ul=None, **platform_changes):
    """Bundled defaults with the usual knobs turned (SI units)."""
    config = Config()
    sc_changes = {name: v for name, v in (("k", k), ("n_ul", n_ul)) if v is not None}
    if sc_changes:
        config = config.replace(scenario=dataclasses.replace(config.scenario, **sc_changes))
    platforms = dict(config.platforms)
    if c_gv is not None:
        platforms[Kind.GV] = dataclasses.replace(platforms[Kind.GV], capacity=c_gv)
    for kind, changes in platform_changes.items():
        platforms[Kind(kind)] = dataclasses.replace(platforms[Kind(kind)], **changes)
    return config.replace(platforms=platforms)


@pytest.fixture
def default_config():
    return Config()
