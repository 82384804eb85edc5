from .algebra import AlgebraSpec, DispAlgebraSpec, Expr, compile_expr, load_json
from .evaluate import (MAX_NODES, apply_expr, eval_eliminator, eval_recursor, flatten,
                       implementations, kernel)
from .terms import TermValue, arities, count_terms, enumerate_terms, parse_term, random_term

__all__ = [
    "AlgebraSpec", "DispAlgebraSpec", "Expr", "compile_expr", "load_json",
    "MAX_NODES", "apply_expr", "eval_eliminator", "eval_recursor", "flatten",
    "implementations", "kernel",
    "TermValue", "arities", "count_terms", "enumerate_terms", "parse_term", "random_term",
]
