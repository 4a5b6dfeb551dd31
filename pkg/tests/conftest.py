import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from tppb.cli import parse_group_spec, realize_group_spec
from tppb.lattice import enumerate_subgroups

# Builtin test catalog: cyclic, dihedral, dicyclic, sym:3/4, alt, elementary
# abelian, and products thereof, spanning orders 1..100.
CATALOG_SPECS = [
    "cyclic:1",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "cyclic:5",
    "cyclic:6",
    "cyclic:7",
    "cyclic:8",
    "cyclic:9",
    "cyclic:10",
    "cyclic:11",
    "cyclic:12",
    "cyclic:16",
    "cyclic:20",
    "cyclic:24",
    "cyclic:30",
    "cyclic:32",
    "cyclic:36",
    "cyclic:48",
    "cyclic:63",
    "cyclic:64",
    "cyclic:97",
    "cyclic:100",
    "dihedral:8",
    "dihedral:10",
    "dihedral:12",
    "dihedral:16",
    "dihedral:24",
    "dihedral:36",
    "dihedral:48",
    "dihedral:98",
    "dihedral:100",
    "dicyclic:8",
    "dicyclic:12",
    "dicyclic:16",
    "dicyclic:24",
    "dicyclic:32",
    "dicyclic:48",
    "dicyclic:100",
    "sym:3",
    "sym:4",
    "alt:4",
    "alt:5",
    "elem_abelian:2^2",
    "elem_abelian:2^3",
    "elem_abelian:2^4",
    "elem_abelian:2^5",
    "elem_abelian:2^6",
    "elem_abelian:3^2",
    "elem_abelian:3^3",
    "elem_abelian:3^4",
    "elem_abelian:5^2",
    "elem_abelian:7^2",
    "product(cyclic:2,cyclic:3)",
    "product(sym:3,cyclic:2)",
    "product(sym:3,cyclic:4)",
    "product(sym:3,sym:3)",
    "product(sym:4,cyclic:2)",
    "product(alt:4,cyclic:2)",
    "product(cyclic:3,dihedral:8)",
    "product(cyclic:3,dicyclic:8)",
    "product(dihedral:8,cyclic:2)",
    "product(elem_abelian:2^2,cyclic:4)",
    "product(cyclic:4,cyclic:4)",
    "product(cyclic:5,dihedral:10)",
    "product(cyclic:25,cyclic:4)",
]


@pytest.fixture(scope="session")
def catalog():
    """All catalog groups as (spec text, Group), realized once per session."""
    return [
        (text, realize_group_spec(parse_group_spec(text), order_limit=20000))
        for text in CATALOG_SPECS
    ]


@pytest.fixture(scope="session")
def catalog_lattices(catalog):
    return {name: enumerate_subgroups(G) for name, G in catalog}
