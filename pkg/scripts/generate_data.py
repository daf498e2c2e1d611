#!/usr/bin/env python3
"""Regenerate the shipped data files: the 288-class basis and the homology
generator X at 6 loops / 12 edges, normalized against the bracket cocycles.

Run from the repository root:  python3 scripts/generate_data.py
Takes a few minutes (dominated by the 8-vertex/13-edge enumeration).
"""

import os
import sys
import time
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from gc3 import chains as C
from gc3 import exact
from gc3 import graphs as G

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "gc3", "data")


def main():
    t0 = time.time()
    basis66 = C.basis(6, -6)
    print(f"(6,-6) basis: {len(basis66)} classes  [{time.time()-t0:.0f}s]")
    with open(os.path.join(DATA, "graphs_6_12.txt"), "w") as fh:
        fh.write("# canonical representatives of the 288 classes at 6 loops, "
                 "12 edges\n")
        for i, key in enumerate(basis66):
            fh.write(f"{G.serialize_adjacency(key.graph())}\n")

    index = {key: i for i, key in enumerate(basis66)}

    # kernel of the boundary map out of (6,-6)
    rows_out, ncols = C.boundary_matrix(6, -6)
    transpose = [{} for _ in range(ncols)]
    for i, row in enumerate(rows_out):
        for j, v in row.items():
            transpose[j][i] = v
    kernel = exact.kernel_of_rows(transpose, len(basis66))
    print(f"kernel of d: dim {len(kernel)}  [{time.time()-t0:.0f}s]")

    # image of the boundary map from (6,-5)
    rows_in, _ = C.boundary_matrix(6, -5)
    im_rank = exact.rank_of_rows([dict(r) for r in rows_in])
    print(f"image rank: {im_rank}  [{time.time()-t0:.0f}s]")

    # a kernel vector outside the image spans the 1-dimensional homology
    pivots, reduced = exact.rref_of_rows([dict(r) for r in rows_in],
                                         len(basis66))
    pivot_set = dict(zip(pivots, reduced))
    x_vec = None
    for vec in kernel:
        resid = {i: v for i, v in enumerate(vec) if v}
        for pcol, prow in pivot_set.items():
            f = resid.get(pcol)
            if f:
                for c, v in prow.items():
                    w = resid.get(c, Fraction(0)) - f * v
                    if w:
                        resid[c] = w
                    else:
                        resid.pop(c, None)
        if resid:
            x_vec = resid
            break
    assert x_vec is not None, "no homology generator found"
    x = C.Chain({basis66[i]: v for i, v in x_vec.items()})
    assert not C.boundary(x), "generator is not a cycle"

    # normalize: <[K4,K4], X> = 384 (independent of any orientation choices)
    k4k4 = C.bracket(C.k4_chain(), C.k4_chain())
    c = C.pairing(k4k4, x)
    assert c != 0, "candidate pairs trivially with [K4,K4]"
    x = x.scale(Fraction(384) / c)
    print(f"normalized: <[K4,K4],X> = {C.pairing(k4k4, x)},"
          f" support {len(x.coeffs)}  [{time.time()-t0:.0f}s]")

    # the prism orientation is pinned by <[Y3,D3],X> = -192
    for flip in (False, True):
        y3d3 = C.bracket(C.prism_chain(flip), C.theta_chain())
        val = C.pairing(y3d3, x)
        print(f"prism flip={flip}: <[Y3,D3],X> = {val}")
        if val == -192:
            print(f"  -> prism orientation: flip_first_edge={flip}")

    with open(os.path.join(DATA, "cycle_x.txt"), "w") as fh:
        fh.write("# generator of the 6-loop homology in degree -6,\n"
                 "# normalized so that <[K4,K4], X> = 384\n")
        fh.write(C.serialize_chain(x))
    print(f"done  [{time.time()-t0:.0f}s]")


if __name__ == "__main__":
    main()
