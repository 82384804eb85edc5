"""Which core formers each profile admits."""
from __future__ import annotations

from ..profile import Profile
from . import syntax as C

SIMPLE, FQII, STRICT, WEAK = Profile.SIMPLE, Profile.FQII, Profile.HIIT_STRICT, Profile.HIIT_WEAK
_HIIT = frozenset({STRICT, WEAK})
_NONSIMPLE = frozenset({FQII, STRICT, WEAK})

ALLOWED: dict[type, frozenset[Profile]] = {
    C.TIota: frozenset({SIMPLE}),
    C.TSArr: frozenset({SIMPLE}),
    C.Var: frozenset(Profile),
    C.App: frozenset(Profile),
    C.TU: _NONSIMPLE,
    C.TEl: _NONSIMPLE,
    C.TPi: _NONSIMPLE,
    C.TPiExt: _NONSIMPLE,
    C.TExt: _NONSIMPLE,
    C.Lam: _NONSIMPLE,
    C.AppE: _NONSIMPLE,
    C.LamE: _NONSIMPLE,
    C.EConst: _NONSIMPLE,
    C.EApp: _NONSIMPLE,
    C.TIdL: frozenset({FQII}),
    C.Refl: frozenset({FQII, STRICT, WEAK}),
    C.Top: _HIIT,
    C.Tt: _HIIT,
    C.Sg: _HIIT,
    C.Pair: _HIIT,
    C.Proj1: _HIIT,
    C.Proj2: _HIIT,
    C.IdS: _HIIT,
    C.PiS: _HIIT,
    C.AppS: _HIIT,
    C.LamS: _HIIT,
    C.TIDL: frozenset({WEAK}),
    C.ReflL: frozenset({WEAK}),
    C.JL: frozenset({WEAK}),
    C.JS: frozenset({WEAK}),
}

DESCRIPTION: dict[type, str] = {
    C.TIota: "the simple sort iota",
    C.TSArr: "simple arrows out of iota",
    C.TU: "the universe U",
    C.TEl: "El",
    C.TPi: "internal products",
    C.TPiExt: "external products",
    C.TIdL: "large strict Id",
    C.Top: "the unit code Top",
    C.Tt: "tt",
    C.Sg: "Sigma codes",
    C.Pair: "pairs",
    C.Proj1: "proj1",
    C.Proj2: "proj2",
    C.IdS: "small Id",
    C.PiS: "small external products",
    C.AppS: "small external application",
    C.LamS: "small external abstraction",
    C.TIDL: "large weak ID",
    C.ReflL: "refl on ID",
    C.JL: "J on ID",
    C.JS: "J on small Id",
}


def allowed(profile: Profile, cls: type) -> bool:
    return profile in ALLOWED.get(cls, frozenset())
