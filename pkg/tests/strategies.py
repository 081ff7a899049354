from hypothesis import strategies as st

from dalpha import build_digraph


@st.composite
def digraphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return build_digraph(n, arcs)


@st.composite
def sc_digraphs(draw, min_n=2, max_n=6):
    """A Hamiltonian cycle plus random extra arcs, randomly relabeled."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    extra = draw(st.sets(st.sampled_from(pairs)))
    perm = draw(st.permutations(range(n)))
    arcs = {(perm[i], perm[(i + 1) % n]) for i in range(n)} | extra
    return build_digraph(n, arcs)
