"""Stalks of intersection cohomology complexes on nilpotent orbit closures."""

from .decmatrix import decomposition_case  # noqa: F401
from .gradedz import CoefficientSpec, FGAbGroup, GradedGroup  # noqa: F401
from .partitions import Partition  # noqa: F401
from .stalkcalc import CaseId, CaseKind, ic_stalk_table  # noqa: F401
