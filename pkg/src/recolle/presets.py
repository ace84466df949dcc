"""Built-in presentations of the benchmark algebras.

These mirror the JSON files in quivers/; tests and scripts use them so they
do not depend on the working directory.
"""

from __future__ import annotations

from .algebra import QuiverPresentation, presentation
from .fields import Field, QQ


def bridge_loop(field: Field = QQ) -> QuiverPresentation:
    """dim 4: an arrow 2 -> 1 plus a square-zero loop at 2 killing the
    composite; P1 = 1/2, P2 = 2/2."""
    return presentation(
        ["1", "2"],
        [("a", "2", "1"), ("b", "2", "2")],
        [["b", "b"], ["b", "a"]],
        field,
    )


def two_cycle(field: Field = QQ) -> QuiverPresentation:
    """dim 5, global dimension 2 (quasi-hereditary): arrows 1 -> 2 -> 1 with
    the cycle through vertex 2 killed."""
    return presentation(
        ["1", "2"],
        [("a", "1", "2"), ("b", "2", "1")],
        [["b", "a"]],
        field,
    )


def double_loops_dim14(field: Field = QQ) -> QuiverPresentation:
    """dim 14: loops at both vertices plus a 2-cycle; both corners are the
    4-dimensional noncommutative local algebra."""
    return presentation(
        ["1", "2"],
        [("a", "1", "1"), ("g", "1", "2"), ("b", "2", "1"), ("d", "2", "2")],
        [["b", "g", "b"], ["a", "a"], ["a", "g"], ["d", "d"], ["g", "d"]],
        field,
    )


def radical_square_zero(field: Field = QQ) -> QuiverPresentation:
    """dim 5, radical square zero: loops at both vertices and one bridge."""
    return presentation(
        ["1", "2"],
        [("g", "1", "1"), ("a", "2", "1"), ("b", "2", "2")],
        [["g", "g"], ["a", "g"], ["b", "a"], ["b", "b"]],
        field,
    )


def loop_bridges_dim10(field: Field = QQ) -> QuiverPresentation:
    """dim 10: loop at vertex 1 and a 2-cycle; its two stratifications have
    different simple factors."""
    return presentation(
        ["1", "2"],
        [("a", "1", "1"), ("g", "1", "2"), ("b", "2", "1")],
        [["b", "g", "b"], ["a", "a"], ["a", "g"]],
        field,
    )


def point(field: Field = QQ) -> QuiverPresentation:
    return presentation(["1"], [], [], field)


def dual_numbers(field: Field = QQ) -> QuiverPresentation:
    return presentation(["1"], [("x", "1", "1")], [["x", "x"]], field)


def fat_point_dim4(field: Field = QQ) -> QuiverPresentation:
    """k<x,y>/(x^2, y^2, xy): local, dim 4, noncommutative."""
    return presentation(
        ["1"],
        [("x", "1", "1"), ("y", "1", "1")],
        [["x", "x"], ["y", "y"], ["y", "x"]],
        field,
    )


def commutative_fat_point(field: Field = QQ) -> QuiverPresentation:
    """k[x,y]/(x^2, y^2, xy): local, dim 3, commutative."""
    return presentation(
        ["1"],
        [("x", "1", "1"), ("y", "1", "1")],
        [["x", "x"], ["y", "y"], ["y", "x"], ["x", "y"]],
        field,
    )


def semisimple_pair(field: Field = QQ) -> QuiverPresentation:
    return presentation(["1", "2"], [], [], field)


def arrow(field: Field = QQ) -> QuiverPresentation:
    """Path algebra of a single arrow 1 -> 2; hereditary, dim 3."""
    return presentation(["1", "2"], [("a", "1", "2")], [], field)


ALL = {
    "bridge_loop": bridge_loop,
    "two_cycle": two_cycle,
    "double_loops_dim14": double_loops_dim14,
    "radical_square_zero": radical_square_zero,
    "loop_bridges_dim10": loop_bridges_dim10,
    "point": point,
    "dual_numbers": dual_numbers,
    "fat_point_dim4": fat_point_dim4,
    "semisimple_pair": semisimple_pair,
    "arrow": arrow,
}
