from .check import Checker, CoreCtx, check_ctx, infer, small_j_beta
from .nbe import NbE, conv, normalize
from .subst import CoreSub, inst, shift, subst

__all__ = [
    "Checker", "CoreCtx", "check_ctx", "infer", "small_j_beta", "NbE", "conv", "normalize",
    "CoreSub", "inst", "shift", "subst",
]
