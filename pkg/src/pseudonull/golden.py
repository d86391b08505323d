"""Reference transcription of the first five members of the geometric hierarchy.

Expressions are written in the package grammar, keeping the grouping of the
printed listing; the pseudo-curvature flows are given with the integration
constant ``d`` set to zero.  ``canonical_listing`` normalizes them.
"""

from __future__ import annotations

from .expr import parse

HIERARCHY = (
    {
        "n": 0,
        "field": "1;0;0",
        "tau_flow": "t1",
        "k_flow": "k1",
    },
    {
        "n": 1,
        "field": "0;1;0",
        "tau_flow": "t2 + 2*t*t1",
        "k_flow": "k2 + G*k",
    },
    {
        "n": 2,
        "field": "0;t;0",
        "tau_flow": "t3 + 3*t*t2 + 3*t1^2 + (G + 3*t^2)*t1",
        "k_flow": "k3 + G*k1",
    },
    {
        "n": 3,
        "field": "0;t1 + t^2;0",
        "tau_flow": "t4 + 4*t*t3 + (G + 10*t1 + 6*t^2)*t2 + 12*t*t1^2 + (2*G*t + 4*t^3)*t1",
        "k_flow": "k4 + G*k2",
    },
    {
        "n": 4,
        "field": "0;t2 + 3*t*t1 + t^3;0",
        "tau_flow": (
            "t5 + 5*t*t4 + (G + 15*t1 + 10*t^2)*t3"
            " + 10*t2^2 + (3*G*t + 50*t*t1 + 10*t^3)*t2"
            " + 15*t1^3 + (3*G + 30*t^2)*t1^2 + (3*G*t^2 + 5*t^4)*t1"
        ),
        "k_flow": "k5 + G*k3",
    },
)


def _canon_field(text: str, G=None) -> str:
    parts = []
    for piece in text.split(";"):
        p = parse(piece)
        parts.append((p if G is None else p.substitute_G(G)).format())
    return ";".join(parts)


def canonical_listing(levels: int = 5, G=None) -> list[dict]:
    """Canonical strings for the first ``levels`` transcribed members."""
    if levels > len(HIERARCHY):
        raise ValueError(f"only {len(HIERARCHY)} levels are transcribed")
    out = []
    for row in HIERARCHY[:levels]:
        tau = parse(row["tau_flow"])
        k = parse(row["k_flow"])
        if G is not None:
            tau, k = tau.substitute_G(G), k.substitute_G(G)
        out.append(
            {"n": row["n"], "field": _canon_field(row["field"], G), "tau_flow": tau.format(), "k_flow": k.format()}
        )
    return out


# Round-trip corpus: the printed members, their sub-expressions, and assorted
# canonical and non-canonical inputs over both generators.
CORPUS = (
    [row["tau_flow"] for row in HIERARCHY]
    + [row["k_flow"] for row in HIERARCHY]
    + [piece for row in HIERARCHY for piece in row["field"].split(";")]
    + [
        "t",
        "t0",
        "k",
        "G",
        "0",
        "1/2",
        "-3/4*t^2",
        "G*t1 + 3*t^2*t1",
        "t2 + 2*t*t1",
        "t1 + t^2",
        "t2 + 3*t*t1 + t^3",
        "t3 + 3*t*t2 + 3*t1^2 + (G + 3*t^2)*t1",
        "(t1 + t^2)^2",
        "(G + 1)^3*t",
        "G^2*t1 - G*t2 + 7",
        "-2*t1^2 - 2*t^2*t1",
        "t*t1*t2*t3*t4",
        "t10 - t9",
        "1/3*t^3 + 1/2*t1^2",
        "(t - 1)*(t + 1)",
        "2*(t2 + G*t)",
        "-(t1)",
        "-t + t",
        "k2 + G*k",
        "k5 + G*k3",
        "k1*k - 1/2*k^2",
        "(k1 + G)^2",
        "G*k",
        "3*G^2*k2^3",
        "t2^2 + 10*t1*t3",
        "12*t*t1^2 + (2*G*t + 4*t^3)*t1",
        "(3*G + 30*t^2)*t1^2",
        "t^5 - 5*t^3*t1 + G",
        "  t1   +   2 * t ",
        "100/7*t3 - 22/5",
        "((t))",
    ]
)
