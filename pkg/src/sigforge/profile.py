from __future__ import annotations

import enum


class Profile(enum.Enum):
    SIMPLE = "simple"
    FQII = "fqii"
    HIIT_STRICT = "hiit-strict"
    HIIT_WEAK = "hiit-weak"

    @classmethod
    def parse(cls, text: str) -> "Profile | None":
        for p in cls:
            if p.value == text:
                return p
        return None

    @property
    def is_hiit(self) -> bool:
        return self in (Profile.HIIT_STRICT, Profile.HIIT_WEAK)
