"""Parameter-domain checks raising ValidationError"""
import math

from core.exceptions import ValidationError

def validate_positive(name: str, value: float) -> float:
    """value > 0 and finite"""
    if not (math.isfinite(value) and value > 0):
        raise ValidationError(message=f"{name} must be positive", details={name: value})
    return value

def validate_open_interval(name: str, value: float, lower: float, upper: float) -> float:
    """lower < value < upper"""
    if not (lower < value < upper):
        raise ValidationError(
            message=f"{name} must lie in ({lower:g}, {upper:g})",
            details={name: value, "lower": lower, "upper": upper}
        )
    return value

def validate_bracket(lo: float, hi: float) -> None:
    """lo < hi"""
    if not lo < hi:
        raise ValidationError(message="bracket_lo must be below bracket_hi", details={"bracket": (lo, hi)})
