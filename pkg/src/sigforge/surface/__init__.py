from .parser import parse, parse_expr
from .printer import show, show_file
from .syntax import SigFile

__all__ = ["parse", "parse_expr", "show", "show_file", "SigFile"]
