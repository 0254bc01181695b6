import enum
import typing


class Family(enum.Enum):
    """
    The two 3-graded families handled by equiquant
    """

    orthogonal = "o"
    symplectic = "sp"


AlgebraSpec = typing.NamedTuple(
    "AlgebraSpec",
    [("family", Family), ("n", int), ("d", int), ("dim_g", int), ("dim_h0", int)],
)

Truncation = typing.NamedTuple("Truncation", [("K", int), ("M", int)])

# Exponent vector of a monomial in x1..xd, xi1..xid
Monomial = typing.Tuple[int, ...]

WeightVector = typing.NewType("WeightVector", tuple)

GradedDiagram = typing.NamedTuple(
    "GradedDiagram", [("diagram", tuple), ("degree", int)]
)

Witness = typing.NamedTuple(
    "Witness", [("upper", GradedDiagram), ("lower", GradedDiagram)]
)

CriticalReport = typing.NamedTuple(
    "CriticalReport",
    [("delta", typing.Any), ("critical", bool), ("witnesses", typing.Tuple[Witness, ...])],
)

TildeTree = typing.NamedTuple(
    "TildeTree",
    [
        ("root", tuple),
        ("degree", int),
        ("levels", typing.Tuple[typing.Tuple[tuple, ...], ...]),
        # per level, (child, parents) pairs; empty for level 0
        ("links", typing.Tuple[typing.Tuple[typing.Tuple[tuple, tuple], ...], ...]),
    ],
)

Violation = typing.NamedTuple(
    "Violation", [("element", int), ("monomial", str)]
)

EquivarianceReport = typing.NamedTuple(
    "EquivarianceReport",
    [("checked", int), ("violations", typing.Tuple[Violation, ...])],
)
