"""Built-in classification tree for problem domains.

The tree is rooted at a single node and classification chains are paths from
the root.  A chain may end in the literal ``Other`` when no leaf fits; every
other node must follow a tree edge.  Labels are not globally unique (one
branch reuses its parent's name), so validation walks paths instead of
looking labels up in a flat map.
"""

from __future__ import annotations

from .. import errors

ROOT = "Mathematics"
OTHER = "Other"

TREE: dict = {
    ROOT: {
        "Applied Mathematics": {
            "Math Word Problems": {},
            "Statistics": {
                "Mathematical Statistics": {},
                "Probability": {
                    "Counting Methods": {
                        "Permutations": {},
                        "Combinations": {},
                    },
                },
            },
        },
        "Algebra": {
            "Prealgebra": {
                "Integers": {},
                "Fractions": {},
                "Decimals": {},
                "Simple Equations": {},
            },
            "Algebra": {
                "Algebraic Expressions": {},
                "Equations and Inequalities": {},
                "Factoring": {},
                "Polynomial Operations": {},
            },
            "Intermediate Algebra": {
                "Quadratic Functions": {},
                "Exponential Functions": {},
                "Logarithmic Functions": {},
                "Complex Numbers": {},
            },
            "Linear Algebra": {
                "Vectors": {},
                "Matrices": {},
                "Determinants": {},
                "Linear Transformations": {},
            },
            "Abstract Algebra": {
                "Group Theory": {},
                "Ring Theory": {},
                "Field Theory": {},
            },
        },
        "Geometry": {
            "Plane Geometry": {
                "Polygons": {},
                "Angles": {},
                "Area": {},
                "Triangulations": {},
                "Perimeter": {},
            },
            "Solid Geometry": {
                "3D Shapes": {},
                "Volume": {},
                "Surface Area": {},
            },
            "Differential Geometry": {
                "Curvature": {},
                "Manifolds": {},
                "Geodesics": {},
            },
            "Non-Euclidean Geometry": {
                "Spherical Geometry": {},
                "Hyperbolic Geometry": {},
            },
        },
        "Number Theory": {
            "Prime Numbers": {},
            "Factorization": {},
            "Congruences": {},
            "Greatest Common Divisors (GCD)": {},
            "Least Common Multiples (LCM)": {},
        },
        "Precalculus": {
            "Functions": {},
            "Limits": {},
            "Trigonometric Functions": {},
        },
        "Calculus": {
            "Differential Calculus": {
                "Derivatives": {},
                "Applications of Derivatives": {},
                "Related Rates": {},
            },
            "Integral Calculus": {
                "Integrals": {},
                "Applications of Integrals": {},
                "Techniques of Integration": {
                    "Single-variable": {},
                    "Multi-variable": {},
                },
            },
        },
        "Differential Equations": {
            "Ordinary Differential Equations (ODEs)": {},
            "Partial Differential Equations (PDEs)": {},
        },
        "Discrete Mathematics": {
            "Graph Theory": {},
            "Combinatorics": {},
            "Logic": {},
            "Algorithms": {},
        },
    },
}


class InvalidChainError(errors.ProvebenchError):
    """A classification chain breaks the tree grammar."""


class TaxonomyNodeError(InvalidChainError):
    """A chain names a node the tree does not contain at that position."""

    def __init__(self, node: str, parent: str):
        self.node = node
        self.parent = parent
        super().__init__(f"unknown node {node!r} under {parent!r}")


def top_level_domains() -> tuple[str, ...]:
    """Labels directly under the root, in tree order."""
    return tuple(TREE[ROOT])


def validate_chain(nodes: tuple[str, ...]) -> None:
    """Check that ``nodes`` is a root-anchored tree path.

    The last node may instead be the literal ``Other``.  Raises
    InvalidChainError or TaxonomyNodeError, never returns a value.
    """
    if len(nodes) < 2:
        raise InvalidChainError(
            f"chain needs the root plus at least one classification node, got {list(nodes)!r}"
        )
    if nodes[0] != ROOT:
        raise InvalidChainError(f"chain must start at {ROOT!r}, got {nodes[0]!r}")
    cursor = TREE[ROOT]
    parent = ROOT
    for index, node in enumerate(nodes[1:], start=1):
        last = index == len(nodes) - 1
        if node in cursor:
            parent, cursor = node, cursor[node]
        elif node == OTHER:
            if not last:
                raise InvalidChainError(f"only the last node may be {OTHER!r}: {list(nodes)!r}")
        else:
            raise TaxonomyNodeError(node, parent)


def render_tree() -> str:
    """Indented text form of the tree, used inside classification prompts."""
    lines: list[str] = []

    def walk(label: str, children: dict, depth: int) -> None:
        lines.append(f"{'    ' * depth}- {label}")
        for child, grandchildren in children.items():
            walk(child, grandchildren, depth + 1)

    walk(ROOT, TREE[ROOT], 0)
    return "\n".join(lines)
