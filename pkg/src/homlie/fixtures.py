"""Small named algebras used throughout the tests and shipped as documents."""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

from .algebra import HomLieSuperalgebra
from .linalg import Matrix

FIXTURE_NAMES = ("A2", "H3", "Rlambda2", "GL11", "OSP12")


def a2() -> HomLieSuperalgebra:
    """Abelian, one even and one odd vector, identity twist."""
    return HomLieSuperalgebra.from_brackets(["e", "f"], [0, 1], {}, name="A2")


def h3() -> HomLieSuperalgebra:
    """``[f1, f1] = [f2, f2] = z`` with z even, f1 and f2 odd."""
    return HomLieSuperalgebra.from_brackets(
        ["z", "f1", "f2"], [0, 1, 1],
        {(1, 1): {0: 1}, (2, 2): {0: 1}},
        name="H3",
    )


def r_lambda(lam=2) -> HomLieSuperalgebra:
    """``[e, f] = f`` with twist ``e -> e, f -> lam f``."""
    lam = Fraction(lam)
    return HomLieSuperalgebra.from_brackets(
        ["e", "f"], [0, 1], {(0, 1): {1: 1}},
        alpha=Matrix.diag([1, lam]),
        name=f"Rlambda{lam}",
    )


def gl11() -> HomLieSuperalgebra:
    """gl(1|1): even a = E11, d = E22; odd b = E12, c = E21."""
    return HomLieSuperalgebra.from_brackets(
        ["a", "d", "b", "c"], [0, 0, 1, 1],
        {
            (0, 2): {2: 1}, (0, 3): {3: -1},
            (1, 2): {2: -1}, (1, 3): {3: 1},
            (2, 3): {0: 1, 1: 1},
        },
        name="GL11",
    )


def osp12() -> HomLieSuperalgebra:
    """osp(1|2): even h, e, f spanning sl(2); odd x, y with ``[x, x] = 2e``,
    ``[y, y] = -2f``, ``[x, y] = h``."""
    return HomLieSuperalgebra.from_brackets(
        ["h", "e", "f", "x", "y"], [0, 0, 0, 1, 1],
        {
            (0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1},
            (0, 3): {3: 1}, (0, 4): {4: -1}, (1, 4): {3: -1}, (2, 3): {4: -1},
            (3, 3): {1: 2}, (4, 4): {2: -2}, (3, 4): {0: 1},
        },
        name="OSP12",
    )


def by_name(name: str) -> HomLieSuperalgebra:
    table = {"A2": a2, "H3": h3, "Rlambda2": lambda: r_lambda(2), "GL11": gl11, "OSP12": osp12}
    try:
        return table[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}") from None


def document_text(name: str) -> str:
    """The shipped JSON document for a fixture."""
    return resources.files("homlie").joinpath("data", f"{name}.json").read_text("utf-8")
