"""Numeric period basis for the six-loop integrals, and the Table-4 data.

The seven basis numbers multiplying the integer vectors lambda_1..lambda_7;
constants are hard-coded to 30 digits (ample next to Monte Carlo errors).
"""

import json
import math
from fractions import Fraction
from importlib import resources

ZETA3 = 1.202056903159594285399738161511
CATALAN = 0.915965594177219015054603514932
IM_LI4_I = 0.988944551741105336135121632309   # sum (-1)^n/(2n+1)^4
LI4_HALF = 0.517479061673899386330758161898
LN2 = math.log(2.0)
PI = math.pi


def period_basis_values():
    return (
        10.0 / 3.0,
        10.0 / 9.0 * PI ** 2,
        10.0 * ZETA3,
        10.0 / 6.0 * (2 * PI ** 2 * LN2 - 21 * ZETA3),
        10.0 / 180.0 * PI ** 4,
        10.0 / 3.0 * (LN2 ** 4 + 24 * LI4_HALF),
        10.0 / 9.0 * (PI ** 2 * CATALAN + 24 * IM_LI4_I),
    )


def value_from_lambdas(lambdas):
    basis = period_basis_values()
    return sum(float(l) * b for l, b in zip(lambdas, basis))


def tau1_of_x_closed_form():
    """40 (13 zeta(3) - 2 pi^2 ln 2), the exact value on the homology cycle."""
    return 40.0 * (13.0 * ZETA3 - 2.0 * PI ** 2 * LN2)


def load_table4():
    """Rows of the six-loop integral table as parsed dictionaries."""
    text = resources.files("gc3.data").joinpath("table4.json").read_text()
    data = json.loads(text)
    for row in data["rows"]:
        row["lambda"] = [int(v) for v in row["lambda"]]
    return data["rows"]


def lambda_cochains():
    """The seven integer coefficient vectors as chains over canonical keys."""
    from .chains import Chain
    from .graphs import canonical_key, parse_adjacency
    rows = load_table4()
    cochains = [Chain() for _ in range(7)]
    for row in rows:
        g = parse_adjacency(row["edges"])
        key, sign = canonical_key(g)
        if sign == 0:
            raise AssertionError(f"{row['name']} has an odd automorphism")
        for i in range(7):
            lam = row["lambda"][i]
            if lam:
                cochains[i] = cochains[i] + Chain({key: Fraction(lam * sign)})
    return cochains


def load_x_cycle():
    """The shipped 6-loop homology generator, as a Chain."""
    from .chains import parse_chain
    text = resources.files("gc3.data").joinpath("cycle_x.txt").read_text()
    return parse_chain(text)


def load_basis_graphs():
    """The 288 canonical adjacency strings at 6 loops and 12 edges."""
    from .graphs import parse_graph_file
    text = resources.files("gc3.data").joinpath("graphs_6_12.txt").read_text()
    return parse_graph_file(text)
