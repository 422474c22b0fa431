"""Hypothesis strategies for edge sums."""

from hypothesis import strategies as st

from roquette.edges import EdgeSum
from roquette.rtype import RoquetteType as R

TYPES = {
    2: [R.trivial(2)] + [R.cyclic(2, m) for m in range(1, 7)]
       + [R.dihedral(m) for m in range(4, 8)] + [R.quaternion(m) for m in range(3, 8)]
       + [R.semidihedral(m) for m in range(4, 8)],
    3: [R.trivial(3)] + [R.cyclic(3, m) for m in range(1, 6)],
}


def edge_sums(p, *, max_types=6, max_mult=10):
    return st.dictionaries(st.sampled_from(TYPES[p]), st.integers(1, max_mult),
                           max_size=max_types).map(lambda terms: EdgeSum(p, terms))


def edge_sum_triples():
    return st.sampled_from([2, 3]).flatmap(
        lambda p: st.tuples(edge_sums(p), edge_sums(p), edge_sums(p)))
