"""
Output formatting and file writing for the command line
"""

import os
import tempfile
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Callable, Union

from src.errors import OutputPathError

SIGNIFICANT_DIGITS = 12


def format_decimal(value: Union[Fraction, float, int], digits: int = SIGNIFICANT_DIGITS) -> str:
    """
    Fixed-point decimal with `digits` significant digits, round-half-even.

    Example:
        >>> format_decimal(Fraction(1, 20))
        '0.0500000000000'
        >>> format_decimal(1)
        '1.00000000000'
    """
    with localcontext() as ctx:
        ctx.prec = 60
        if isinstance(value, float):
            exact = Decimal(value)
        else:
            frac = Fraction(value)
            exact = Decimal(frac.numerator) / Decimal(frac.denominator)
        if exact == 0:
            return "0." + "0" * (digits - 1)
        places = digits - 1 - exact.adjusted()
        rounded = exact.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)
        if rounded.adjusted() != exact.adjusted():
            # rounding carried into a new leading digit
            places -= 1
            rounded = exact.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)
        return f"{rounded:f}"


def format_exact(value: Fraction) -> str:
    """'p/q = decimal'"""
    return f"{value} = {format_decimal(value)}"


def check_writable(path: Union[str, Path]) -> Path:
    """Fail early when the output directory is missing or read-only"""
    target = Path(path)
    parent = target.parent if str(target.parent) else Path(".")
    if not parent.is_dir() or not os.access(parent, os.W_OK):
        raise OutputPathError(f"cannot write to {target}: directory {parent} is missing or not writable")
    if target.exists() and (target.is_dir() or not os.access(target, os.W_OK)):
        raise OutputPathError(f"cannot write to {target}")
    return target


def atomic_write(path: Union[str, Path], write: Callable[[str], None]) -> None:
    """Call write(temp_path) and move the result into place; nothing is left behind on failure"""
    target = check_writable(path)
    fd, temp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    os.close(fd)
    try:
        write(temp)
        os.replace(temp, target)
    except OSError as e:
        raise OutputPathError(f"cannot write to {target}: {e}")
    finally:
        if os.path.exists(temp):
            os.unlink(temp)


def atomic_write_text(path: Union[str, Path], text: str) -> None:
    def write(temp: str) -> None:
        with open(temp, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)

    atomic_write(path, write)
