import pytest

import hierlabel as hl


@pytest.fixture
def mammal_graph():
    """Tiny hierarchy: three specific mammals under one coarse parent, car apart."""
    lemmas = {
        "aquatic_mammal.n.01": ["aquatic_mammal"],
        "seal.n.09": ["seal"],
        "dolphin.n.02": ["dolphin"],
        "walrus.n.01": ["walrus"],
        "car.n.01": ["car", "auto"],
    }
    edges = [
        ("seal.n.09", "aquatic_mammal.n.01"),
        ("dolphin.n.02", "aquatic_mammal.n.01"),
        ("walrus.n.01", "aquatic_mammal.n.01"),
    ]
    return hl.make_graph(lemmas, edges)


@pytest.fixture
def mammal_vocab():
    return hl.Vocabulary(
        (
            ("aquatic_mammal", "aquatic_mammal.n.01"),
            ("seal", "seal.n.09"),
            ("dolphin", "dolphin.n.02"),
            ("walrus", "walrus.n.01"),
            ("car", "car.n.01"),
        )
    )
