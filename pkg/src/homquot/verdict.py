"""Three-valued certified verdicts and decision modes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import UnsupportedMode
from .exalg import Field, Subspace


class Truth(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


class Method(enum.Enum):
    EXHAUSTIVE = "exhaustive"
    DERIVED = "derived"
    WITNESS = "witness"
    STRUCTURAL = "structural"


class Mode(enum.Enum):
    EXHAUSTIVE = "exhaustive"
    DERIVED = "derived"
    WITNESS = "witness"
    STRUCTURAL = "structural"
    AUTO = "auto"


def resolve_mode(field: Field, mode: Mode | str = Mode.AUTO) -> Mode:
    """Turn ``auto`` into a concrete mode; reject exhaustive scans over Q."""
    mode = Mode(mode)
    if mode is Mode.AUTO:
        return Mode.EXHAUSTIVE if field.is_finite else Mode.DERIVED
    if mode is Mode.EXHAUSTIVE and not field.is_finite:
        raise UnsupportedMode("exhaustive mode needs a finite field")
    return mode


@dataclass(frozen=True)
class Verdict:
    """Result of a decision procedure.

    False verdicts always carry a witness that can be re-checked independently.
    """

    value: Truth
    method: Method
    witness: Any = None
    note: str = ""

    @classmethod
    def true(cls, method, witness=None, note=""):
        return cls(Truth.TRUE, Method(method), witness, note)

    @classmethod
    def false(cls, method, witness, note=""):
        return cls(Truth.FALSE, Method(method), witness, note)

    @classmethod
    def unknown(cls, method, note="", witness=None):
        return cls(Truth.UNKNOWN, Method(method), witness, note)

    @property
    def is_true(self) -> bool:
        return self.value is Truth.TRUE

    @property
    def is_false(self) -> bool:
        return self.value is Truth.FALSE

    @property
    def is_unknown(self) -> bool:
        return self.value is Truth.UNKNOWN

    def __bool__(self):
        raise TypeError("use .is_true / .is_false on a Verdict")

    def to_json(self, field: Field) -> dict:
        out = {"value": self.value.value, "method": self.method.value}
        if self.witness is not None:
            out["witness"] = to_jsonable(self.witness, field)
        if self.note:
            out["note"] = self.note
        return out


def to_jsonable(obj, field: Field):
    """Convert witnesses (vectors, subspaces, verdicts, dicts) to JSON values.

    Tuples whose entries are scalars are written as lists of scalar strings.
    """
    if isinstance(obj, Verdict):
        return obj.to_json(field)
    if isinstance(obj, Subspace):
        return {"dim": obj.dim, "basis": [[field.format(x) for x in row] for row in obj.basis]}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, field) for k, v in obj.items()}
    if isinstance(obj, tuple) and obj and all(
        isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in obj
    ):
        return [field.format(x) for x in obj]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x, field) for x in obj]
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return field.format(obj)
    return obj
