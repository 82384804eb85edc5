from . import syntax
from .beta import beta
from .check import InnerTypeError, check_term, check_unit
from .pretty import AGDA, ASCII, show_definition, show_term, show_unit
from .reader import ReadError, canonical, read_term

__all__ = ["syntax", "beta", "InnerTypeError", "check_term", "check_unit",
           "AGDA", "ASCII", "show_definition", "show_term", "show_unit",
           "ReadError", "canonical", "read_term"]
