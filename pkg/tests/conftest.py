import random

import pytest

from wbcorr import FormalPairModel, LocalModel

# Pair model over two base sectors: an untwisted one and an order-2 one
# whose normal model is the standard (r=2, beta=(1,2), alpha=(1,1)) chart.
PAIR_MODEL_B = {
    "s_sectors": [
        {"name": "t0", "bar": "t0", "basis": [{"name": "u0", "deg": 0}]},
        {"name": "t1", "bar": "t1", "basis": [{"name": "v1", "deg": 0}, {"name": "v2", "deg": 2}]},
    ],
    "z_sectors": [
        {
            "name": "s0",
            "bar": "s0",
            "pi": "t0",
            "phase": "0",
            "local_model": {"r": 1, "beta": [1, 1], "alpha": [1, 1]},
        },
        {
            "name": "sa",
            "bar": "sa",
            "pi": "t1",
            "phase": "1/2",
            "local_model": {"r": 2, "beta": [1, 2], "alpha": [1, 1]},
        },
        {
            "name": "sb",
            "bar": "sb",
            "pi": "t1",
            "phase": "0",
            "local_model": {"r": 2, "beta": [1, 2], "alpha": [1, 1]},
        },
    ],
    "k_classes": ["one_X", "H2_X"],
    "lattice": {"rank": 2, "F": [0, 1], "FZ": [0, 0], "Z_pairing": [0, 1], "kappa_push": [[1, 0]]},
}

# Trivial-isotropy model whose single label window is doubly covered, so the
# H-power range is nontrivial (two-dimensional sector over the base point).
PAIR_MODEL_A = {
    "s_sectors": [
        {"name": "t", "bar": "t", "basis": [{"name": "p1", "deg": 0}, {"name": "p2", "deg": 4}]}
    ],
    "z_sectors": [
        {
            "name": "s",
            "bar": "s",
            "pi": "t",
            "phase": "0",
            "local_model": {"r": 1, "beta": [1, 1], "alpha": [1, 1]},
        }
    ],
    "k_classes": ["one_X"],
    "lattice": {"rank": 2, "F": [0, 1], "FZ": [0, 0], "Z_pairing": [0, 1], "kappa_push": [[1, 0]]},
}

# Order-3 model with a non-self-inverse distinguished sector; the partner base
# sector carries the conjugate local model.
PAIR_MODEL_C = {
    "s_sectors": [
        {"name": "t1", "bar": "t1b", "basis": [{"name": "w1", "deg": 0}, {"name": "w2", "deg": 2}]},
        {"name": "t1b", "bar": "t1", "basis": [{"name": "w1d", "deg": 0}, {"name": "w2d", "deg": 2}]},
    ],
    "z_sectors": [
        {
            "name": "s1",
            "bar": "s1b",
            "pi": "t1",
            "phase": "1/6",
            "local_model": {"r": 3, "beta": [1, 2, 3], "alpha": [2, 1, 1]},
        },
        {
            "name": "s2",
            "bar": "s2b",
            "pi": "t1",
            "phase": "2/3",
            "local_model": {"r": 3, "beta": [1, 2, 3], "alpha": [2, 1, 1]},
        },
        {
            "name": "s3",
            "bar": "s3b",
            "pi": "t1",
            "phase": "0",
            "local_model": {"r": 3, "beta": [1, 2, 3], "alpha": [2, 1, 1]},
        },
        {
            "name": "s1b",
            "bar": "s1",
            "pi": "t1b",
            "phase": "5/6",
            "local_model": {"r": 3, "beta": [2, 1, 3], "alpha": [2, 1, 1]},
        },
        {
            "name": "s2b",
            "bar": "s2",
            "pi": "t1b",
            "phase": "1/3",
            "local_model": {"r": 3, "beta": [2, 1, 3], "alpha": [2, 1, 1]},
        },
        {
            "name": "s3b",
            "bar": "s3",
            "pi": "t1b",
            "phase": "0",
            "local_model": {"r": 3, "beta": [2, 1, 3], "alpha": [2, 1, 1]},
        },
    ],
    "k_classes": ["one_X"],
    "lattice": {"rank": 2, "F": [0, 1], "FZ": [0, 0], "Z_pairing": [0, 1], "kappa_push": [[1, 0]]},
}

# Codimension-1 model: rank-1 normal direction with weight-2 blowup; the
# fiber class is torsion downstairs and declared zero here.
PAIR_MODEL_CODIM1 = {
    "s_sectors": [{"name": "t", "bar": "t", "basis": [{"name": "q1", "deg": 0}]}],
    "z_sectors": [
        {
            "name": "sHalf",
            "bar": "sHalf",
            "pi": "t",
            "phase": "1/2",
            "local_model": {"r": 1, "beta": [1], "alpha": [2]},
        },
        {
            "name": "sInt",
            "bar": "sInt",
            "pi": "t",
            "phase": "0",
            "local_model": {"r": 1, "beta": [1], "alpha": [2]},
        },
    ],
    "k_classes": ["one_X"],
    "lattice": {"rank": 1, "F": [0], "FZ": [0], "Z_pairing": [2], "kappa_push": [[1]]},
}


@pytest.fixture(scope="session")
def pm_a():
    return FormalPairModel.from_json(PAIR_MODEL_A)


@pytest.fixture(scope="session")
def pm_b():
    return FormalPairModel.from_json(PAIR_MODEL_B)


@pytest.fixture(scope="session")
def pm_c():
    return FormalPairModel.from_json(PAIR_MODEL_C)


@pytest.fixture(scope="session")
def pm_codim1():
    return FormalPairModel.from_json(PAIR_MODEL_CODIM1)


def random_local_model(rng: random.Random, max_n=5, max_r=6, max_alpha=4) -> LocalModel:
    n = rng.randint(1, max_n)
    r = rng.randint(1, max_r)
    return LocalModel(
        r=r,
        beta=tuple(rng.randint(1, r) for _ in range(n)),
        alpha=tuple(rng.randint(1, max_alpha) for _ in range(n)),
    )
