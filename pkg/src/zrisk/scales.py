"""Linguistic scales and Z-number to TFN conversion by term code."""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .exceptions import ScaleLookupError, ValidationError
from .fuzzy import ONE, TFN, ZNumber, z_to_tfn


@dataclass(frozen=True)
class LinguisticScale:
    name: str
    entries: Mapping[str, TFN]
    labels: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))
        object.__setattr__(self, "labels", MappingProxyType(dict(self.labels)))

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(self.entries)

    def __contains__(self, code) -> bool:
        return code in self.entries

    def __getitem__(self, code: str) -> TFN:
        try:
            return self.entries[code]
        except KeyError:
            raise ScaleLookupError(
                f"unknown {self.name} term {code!r}; valid codes: {', '.join(self.codes)}"
            ) from None

    def index(self, code: str) -> int:
        """Position of ``code`` in ascending scale order."""
        self[code]
        return self.codes.index(code)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "entries": {
                k: {"label": self.labels.get(k, k), "tfn": list(v.as_tuple())}
                for k, v in self.entries.items()
            },
        }


# Ordered from most to least important.
WEIGHTING = LinguisticScale(
    "weighting-importance",
    {
        "EI": TFN(1, 1, 1),
        "MOL": TFN(2 / 3, 1, 3 / 2),
        "LI": TFN(2 / 5, 1 / 2, 2 / 3),
        "VLI": TFN(2 / 7, 1 / 3, 2 / 5),
        "MUL": TFN(2 / 9, 1 / 4, 2 / 7),
    },
    {
        "EI": "Equally important",
        "MOL": "Moderately less important",
        "LI": "Less important",
        "VLI": "Very less important",
        "MUL": "Much less important",
    },
)

RELIABILITY = LinguisticScale(
    "reliability",
    {
        "VW": TFN(0, 0, 0.25),
        "W": TFN(0.2, 0.35, 0.5),
        "M": TFN(0.35, 0.5, 0.75),
        "H": TFN(0.5, 0.75, 0.9),
        "VH": TFN(0.75, 1, 1),
    },
    {"VW": "Very weak", "W": "Weak", "M": "Medium", "H": "High", "VH": "Very high"},
)

RATING = LinguisticScale(
    "rating",
    {
        "VP": TFN(0, 1, 2),
        "P": TFN(1, 2, 3),
        "MP": TFN(2, 3.5, 5),
        "F": TFN(4, 5, 6),
        "MG": TFN(5, 6.5, 8),
        "G": TFN(7, 8, 9),
        "VG": TFN(8, 9, 10),
    },
    {
        "VP": "Very poor",
        "P": "Poor",
        "MP": "Medium poor",
        "F": "Fair",
        "MG": "Medium good",
        "G": "Good",
        "VG": "Very good",
    },
)

SCALES = {s.name: s for s in (WEIGHTING, RELIABILITY, RATING)}

EI_MODES = ("table", "computed")


def weighting_term_to_tfn(importance: str, reliability: str, mode: str = "table") -> TFN:
    """Convert a (importance, reliability) judgment to its weighted TFN.

    In ``table`` mode an "equally important" judgment always maps to
    ``(1, 1, 1)`` whatever its reliability; ``computed`` mode applies the
    square-root reliability weighting uniformly.
    """
    if mode not in EI_MODES:
        raise ValidationError(f"ei mode must be one of {EI_MODES}, got {mode!r}")
    restriction = WEIGHTING[importance]
    rel = RELIABILITY[reliability]
    if mode == "table" and importance == "EI":
        return ONE
    return z_to_tfn(ZNumber(restriction, rel))


def rating_term_to_tfn(rating: str, reliability: str) -> TFN:
    return z_to_tfn(ZNumber(RATING[rating], RELIABILITY[reliability]))


def scales_as_dict() -> dict:
    return {name: s.to_dict() for name, s in SCALES.items()}
