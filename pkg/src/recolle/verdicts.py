"""Tri-valued verdicts and resolution termination statuses.

Every True/False carries a serializable certificate; Unknown records how far
the bounded computation got.  No verdict is ever extrapolated past the
computed depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class TriBool:
    value: bool | None  # None = Unknown
    evidence: Any = None

    @staticmethod
    def yes(evidence=None) -> "TriBool":
        return TriBool(True, evidence)

    @staticmethod
    def no(evidence=None) -> "TriBool":
        return TriBool(False, evidence)

    @staticmethod
    def unknown(evidence=None) -> "TriBool":
        return TriBool(None, evidence)

    @property
    def is_true(self) -> bool:
        return self.value is True

    @property
    def is_false(self) -> bool:
        return self.value is False

    @property
    def is_unknown(self) -> bool:
        return self.value is None

    def and_(self, other: "TriBool") -> "TriBool":
        """Kleene conjunction; evidence points at the deciding conjunct."""
        if self.is_false:
            return self
        if other.is_false:
            return other
        if self.is_unknown:
            return self
        if other.is_unknown:
            return other
        return TriBool(True, [self.evidence, other.evidence])

    def json(self):
        val = {True: "true", False: "false", None: "unknown"}[self.value]
        return {"value": val, "evidence": _ev_json(self.evidence)}

    def __repr__(self):
        return {True: "True*", False: "False*", None: "Unknown"}[self.value]


def _ev_json(ev):
    if ev is None or isinstance(ev, (str, int, bool, float)):
        return ev
    if isinstance(ev, (list, tuple)):
        return [_ev_json(e) for e in ev]
    if isinstance(ev, dict):
        return {str(k): _ev_json(v) for k, v in sorted(ev.items(), key=lambda kv: str(kv[0]))}
    if hasattr(ev, "json"):
        return ev.json()
    return repr(ev)


# -- projective dimension statuses ---------------------------------------


@dataclass(frozen=True)
class Finite:
    n: int

    def json(self):
        return {"kind": "Finite", "n": self.n}

    def __repr__(self):
        return f"Finite({self.n})"


@dataclass(frozen=True)
class Periodic:
    pre: int
    period: int

    def json(self):
        return {"kind": "Periodic", "pre": self.pre, "period": self.period}

    def __repr__(self):
        return f"Periodic({self.pre},{self.period})"


@dataclass(frozen=True)
class DepthExceeded:
    depth: int

    def json(self):
        return {"kind": "DepthExceeded", "depth": self.depth}

    def __repr__(self):
        return f"DepthExceeded({self.depth})"


PdStatus = Finite | Periodic | DepthExceeded


def pd_finite(status: PdStatus) -> TriBool:
    """Is the projective dimension finite, as a tri-valued verdict."""
    if isinstance(status, Finite):
        return TriBool.yes(status)
    if isinstance(status, Periodic):
        return TriBool.no(status)
    return TriBool.unknown(status)


# -- global dimension ------------------------------------------------------


@dataclass(frozen=True)
class GldimStatus:
    kind: str  # "Finite" | "Infinite" | "Unknown"
    n: int | None = None
    witness: Any = None

    def json(self):
        return {"kind": self.kind, "n": self.n}

    def __repr__(self):
        return f"Gldim.{self.kind}" + (f"({self.n})" if self.n is not None else "")
