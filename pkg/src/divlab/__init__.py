"""Exact verification of intersecting set families and their diversity."""

from .errors import BudgetExceeded, ConstructionError, DivlabError, FamilyError, SfamParseError
from .setfam import (
    DegreeProfile,
    DiversityResult,
    Family,
    SubsetWord,
    complement,
    complement_family,
    degree_profile,
    diversity,
    family_difference,
    family_union,
    is_intersecting,
    is_regular,
    is_upset,
    subset_from_elements,
)
from .sfam import format_sfam, parse_sfam, read_sfam, write_sfam

__version__ = "0.1.0"
