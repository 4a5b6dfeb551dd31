"""Upper bounds on the triple-product-property subgroup capacity of
finite groups: subgroup lattices, character degrees, exact search, and
a batch catalog CLI."""

__version__ = "0.1.0"
