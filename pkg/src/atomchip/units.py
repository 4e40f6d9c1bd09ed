"""Unit conversions at the file/CLI boundary.

Layout documents and CLI flags use micrometers, amperes, gauss and degrees;
everything in memory is SI (meters, tesla). Serialized micrometer/gauss
values are written on a 1e-9 decimal lattice: nine decimals, trailing zeros
trimmed. float(str) of such a literal is exact to ~3e-16 relative, far below
half a lattice step for on-chip magnitudes, so parse -> serialize -> parse
is the identity for every document the serializer can emit.
"""

from __future__ import annotations

UM = 1e-6
GAUSS = 1e-4

_DECIMALS = 9


def fmt_quantity(value: float) -> str:
    """Format a boundary-unit value (um, G, A, deg) on the decimal lattice."""
    if value != value:  # NaN has no place in a layout document
        raise ValueError("cannot serialize NaN")
    text = f"{value:.{_DECIMALS}f}"
    text = text.rstrip("0").rstrip(".")
    if text in ("-0", ""):
        text = "0"
    return text


def um_to_m(value_um: float) -> float:
    return value_um * UM


def m_to_um(value_m: float) -> float:
    return value_m / UM


def gauss_to_tesla(value_g: float) -> float:
    return value_g * GAUSS


def tesla_to_gauss(value_t: float) -> float:
    return value_t / GAUSS


# longest suffixes first: "10nm" must not match the bare-meter suffix
_LENGTH_SUFFIXES = {"um": UM, "mm": 1e-3, "nm": 1e-9, "m": 1.0}


def parse_length(text: str, default_unit: str = "um") -> float:
    """Parse a CLI length like '10um', '0.5mm' or bare '10' (default um)."""
    text = text.strip()
    for suffix, factor in _LENGTH_SUFFIXES.items():
        if text.endswith(suffix):
            return float(text[: -len(suffix)]) * factor
    return float(text) * _LENGTH_SUFFIXES[default_unit]


def parse_current(text: str) -> float:
    """Parse a CLI current like '1A', '250mA' or bare amperes."""
    text = text.strip()
    if text.endswith("mA"):
        return float(text[:-2]) * 1e-3
    if text.endswith("A"):
        return float(text[:-1])
    return float(text)


def parse_field(text: str) -> float:
    """Parse a CLI field like '20G', '2e-3T' or bare gauss; returns tesla."""
    text = text.strip()
    if text.endswith("G"):
        return float(text[:-1]) * GAUSS
    if text.endswith("T"):
        return float(text[:-1])
    return float(text) * GAUSS
